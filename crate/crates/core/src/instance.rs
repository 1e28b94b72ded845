//! Line-oriented instance files.
//!
//! ```text
//! # comment
//! n 7
//! e 1 2
//! l 3
//! x 0101000
//! ```
//!
//! `n` comes first; `e u v` adds an edge, `l v` a loop, and at most one
//! `x` line gives the configuration (character i is vertex i). Vertices are
//! 1-based in files and 0-based in memory.

use crate::bits;
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub config: Configuration,
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_vertex(tok: Option<&str>, n: usize, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| perr(line, "missing vertex"))?;
    let v: usize = tok
        .parse()
        .map_err(|_| perr(line, format!("bad vertex {tok:?}")))?;
    if v == 0 || v > n {
        return Err(perr(line, format!("vertex {v} out of range 1..={n}")));
    }
    Ok(v - 1)
}

/// Parses an instance. A missing `x` line means the all-off configuration.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut graph: Option<Graph> = None;
    let mut config: Option<Configuration> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let key = toks.next().unwrap();
        let Some(g) = graph.as_mut() else {
            if key != "n" {
                return Err(perr(line, "first line must be `n <count>`"));
            }
            let tok = toks.next().ok_or_else(|| perr(line, "missing vertex count"))?;
            let n: usize = tok
                .parse()
                .map_err(|_| perr(line, format!("bad vertex count {tok:?}")))?;
            graph = Some(Graph::new(n).map_err(|e| perr(line, e.to_string()))?);
            if toks.next().is_some() {
                return Err(perr(line, "trailing tokens"));
            }
            continue;
        };
        let n = g.n();
        match key {
            "e" => {
                let u = parse_vertex(toks.next(), n, line)?;
                let v = parse_vertex(toks.next(), n, line)?;
                g.add_edge(u, v).map_err(|e| perr(line, e.to_string()))?;
            }
            "l" => {
                let v = parse_vertex(toks.next(), n, line)?;
                if g.has_loop(v) {
                    return Err(perr(line, format!("duplicate loop at {}", v + 1)));
                }
                g.set_loop(v, true)?;
            }
            "x" => {
                if config.is_some() {
                    return Err(perr(line, "more than one configuration line"));
                }
                let s = toks.next().unwrap_or("");
                let x = Configuration::from_bitstring(s).map_err(|_| perr(line, "configuration must be a 0/1 string"))?;
                if x.len() != n {
                    return Err(perr(
                        line,
                        format!("configuration has length {}, expected {n}", x.len()),
                    ));
                }
                config = Some(x);
            }
            "n" => return Err(perr(line, "repeated `n` line")),
            other => return Err(perr(line, format!("unknown key {other:?}"))),
        }
        if toks.next().is_some() {
            return Err(perr(line, "trailing tokens"));
        }
    }
    let graph = graph.ok_or_else(|| perr(0, "empty instance"))?;
    let config = config.unwrap_or_else(|| Configuration::zeros(graph.n()));
    Ok(Instance { graph, config })
}

/// Serializes with keys in the order n, e (sorted), l (sorted), x.
pub fn serialize_instance(g: &Graph, x: Option<&Configuration>) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    for v in bits::ones(g.loop_mask()) {
        out.push_str(&format!("l {}\n", v + 1));
    }
    if let Some(x) = x {
        out.push_str(&format!("x {}\n", x.to_bitstring()));
    }
    out
}
