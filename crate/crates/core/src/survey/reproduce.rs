//! Recomputes the worked examples exactly and compares each stated value.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::config::Configuration;
use crate::constructive::solve_tree;
use crate::error::{Error, Result};
use crate::family::{build_family, FamilyKind, FamilySpec};
use crate::graph::Graph;
use crate::search::{gap_profile, ml_litonly, ml_regular, Caps};

use super::scan::ScanWitness;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleId {
    /// `K_{m,m,m}` with the first part off, `m <= 2`.
    Tripartite(usize),
    /// Loopless `K_{2m}` and its weight-`m` configurations, `m <= 3`.
    Complete(usize),
    Fig1,
    Fig2,
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExampleId::Tripartite(m) => write!(f, "tripartite:{m}"),
            ExampleId::Complete(m) => write!(f, "complete:{m}"),
            ExampleId::Fig1 => f.write_str("fig1"),
            ExampleId::Fig2 => f.write_str("fig2"),
        }
    }
}

impl FromStr for ExampleId {
    type Err = Error;

    /// `tripartite:m`, `complete:m`, `fig1`, `fig2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFamily(format!("unknown example {s:?}"));
        let param = |t: &str| t.parse::<usize>().map_err(|_| bad());
        match s.split_once(':') {
            Some(("tripartite", m)) => Ok(ExampleId::Tripartite(param(m)?)),
            Some(("complete", m)) => Ok(ExampleId::Complete(param(m)?)),
            None if s == "fig1" => Ok(ExampleId::Fig1),
            None if s == "fig2" => Ok(ExampleId::Fig2),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quantity {
    pub name: String,
    pub expected: usize,
    pub computed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleReport {
    pub example: String,
    pub pass: bool,
    pub quantities: Vec<Quantity>,
    pub witnesses: Vec<ScanWitness>,
    /// Final light of the tree solver's certificate, where it applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver_final_light: Option<usize>,
}

impl ExampleReport {
    fn new(id: ExampleId) -> Self {
        ExampleReport {
            example: id.to_string(),
            pass: true,
            quantities: Vec::new(),
            witnesses: Vec::new(),
            solver_final_light: None,
        }
    }

    fn expect(&mut self, name: impl Into<String>, expected: usize, computed: usize) {
        self.pass &= expected == computed;
        self.quantities.push(Quantity {
            name: name.into(),
            expected,
            computed,
        });
    }
}

fn example_graph(kind: FamilyKind) -> Result<(Graph, Configuration)> {
    let (g, x) = build_family(&FamilySpec::new(kind))?;
    Ok((g, x.expect("the example family carries a configuration")))
}

fn witness(label: &str, g: &Graph, x: Configuration) -> Result<ScanWitness> {
    ScanWitness::build("example", label, g, x, Caps::default())
}

/// Computes every quantity the example states and compares exactly.
pub fn reproduce_example(id: ExampleId) -> Result<ExampleReport> {
    let mut rep = ExampleReport::new(id);
    let caps = Caps::default();
    let label = id.to_string();
    match id {
        ExampleId::Tripartite(m) => {
            if !(1..=2).contains(&m) {
                return Err(Error::InvalidFamily(format!("tripartite needs 1 <= m <= 2, got {m}")));
            }
            let (g, x) = example_graph(FamilyKind::CompleteTripartite(m))?;
            let w = witness(&label, &g, x)?;
            rep.expect("ML(x)", 0, w.ml.value);
            rep.expect("ML*(x)", 2 * m, w.mlstar.value);
            let p = gap_profile(&g, caps)?;
            rep.expect("ML(G)", 3 * m / 2, p.graph_ml);
            rep.expect("ML*(G)", 2 * m, p.graph_mlstar);
            rep.witnesses.push(w);
        }
        ExampleId::Complete(m) => {
            if !(1..=3).contains(&m) {
                return Err(Error::InvalidFamily(format!("complete needs 1 <= m <= 3, got {m}")));
            }
            let (g, _) = build_family(&FamilySpec::new(FamilyKind::Complete(2 * m)))?;
            let mut worst = (0, usize::MAX);
            let mut count = 0;
            for b in 0u64..1 << (2 * m) {
                if b.count_ones() as usize != m {
                    continue;
                }
                count += 1;
                let x = Configuration::new(2 * m, b)?;
                let (ml, star) = (ml_regular(&g, &x, caps.rank)?.value, ml_litonly(&g, &x, caps.states)?.value);
                worst = (worst.0.max(ml), worst.1.min(star));
                if ml != 0 || star != m {
                    rep.expect(format!("ML(x) at {x}"), 0, ml);
                    rep.expect(format!("ML*(x) at {x}"), m, star);
                }
            }
            rep.expect("weight-m configurations", (1..=2 * m).product::<usize>() / (1..=m).product::<usize>().pow(2), count);
            rep.expect("max ML(x) over weight m", 0, worst.0);
            rep.expect("min ML*(x) over weight m", m, worst.1);
            let p = gap_profile(&g, caps)?;
            rep.expect("ML(G)", 0, p.graph_ml);
            rep.expect("ML*(G)", m, p.graph_mlstar);
            rep.witnesses.push(witness(&label, &g, Configuration::new(2 * m, crate::bits::full(m))?)?);
        }
        ExampleId::Fig1 => {
            let (g, x) = example_graph(FamilyKind::Fig1)?;
            let w = witness(&label, &g, x)?;
            rep.expect("ML(x)", 1, w.ml.value);
            rep.expect("ML*(x)", 2, w.mlstar.value);
            rep.witnesses.push(w);
        }
        ExampleId::Fig2 => {
            let (g, x) = example_graph(FamilyKind::Fig2)?;
            let w = witness(&label, &g, x)?;
            rep.expect("ML(x)", 0, w.ml.value);
            rep.expect("ML*(x)", 2, w.mlstar.value);
            let cert = solve_tree(&g, &x)?;
            rep.expect("solver final light", 2, cert.final_light());
            rep.solver_final_light = Some(cert.final_light());
            let mut w = w;
            w.certificate = Some(cert);
            w.verify()?;
            rep.witnesses.push(w);
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_examples_reproduce() {
        for id in ["tripartite:1", "tripartite:2", "complete:1", "complete:2", "complete:3", "fig1", "fig2"] {
            let rep = reproduce_example(id.parse().unwrap()).unwrap();
            assert!(rep.pass, "{id}: {:?}", rep.quantities);
        }
    }

    #[test]
    fn tripartite_one_values() {
        let rep = reproduce_example(ExampleId::Tripartite(1)).unwrap();
        let got: Vec<(String, usize)> = rep.quantities.iter().map(|q| (q.name.clone(), q.computed)).collect();
        assert_eq!(
            got,
            vec![("ML(x)".into(), 0), ("ML*(x)".into(), 2), ("ML(G)".into(), 1), ("ML*(G)".into(), 2)]
        );
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(reproduce_example(ExampleId::Tripartite(3)).is_err());
        assert!(reproduce_example(ExampleId::Complete(0)).is_err());
        assert!("fig3".parse::<ExampleId>().is_err());
        assert_eq!("complete:2".parse::<ExampleId>().unwrap(), ExampleId::Complete(2));
    }
}
