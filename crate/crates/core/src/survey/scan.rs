//! Exhaustive sweeps that check a bound on every (graph, loop mask,
//! configuration) triple of a family and report the extremes with
//! replayable witnesses.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bits;
use crate::config::Configuration;
use crate::constructive::{solve_rake, solve_theorem8, PendantPlant, RakeView, Reference, SolveCertificate, TreeSolver};
use crate::error::{Error, Result};
use crate::family;
use crate::graph::Graph;
use crate::instance::{parse_instance, serialize_instance};
use crate::moves::{apply_move_set, replay};
use crate::search::{ml_litonly, ml_regular, ml_table, mlstar_table, Caps, MlResult, MlStarResult};

use super::enumerate::{
    enumerate_all_graphs, enumerate_grids, enumerate_planted, enumerate_rakes, enumerate_trees, enumerate_unicyclic,
    MAX_ALL_GRAPHS_ORDER,
};

/// Violation entries kept in a report; the count is always exact.
pub const MAX_REPORTED_VIOLATIONS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    /// Per-configuration gap at most 2 on decorated trees.
    Thm9,
    /// Per-configuration gap at most 3 on unicyclic graphs.
    Thm4,
    /// Per-configuration gap at most 3 on decorated grids.
    Thm5,
    /// Per-graph gap in {0, 1} on decorated trees (conjectured).
    Conj1,
    /// Per-graph gap at most |V|/2 (conjectured).
    Conj2,
    /// Per-configuration gap at most the maximum degree (conjectured).
    MaxDeg,
    /// Loops everywhere: ML* = ML for every configuration.
    Ex24,
    /// Leaf bounds on trees: ML(G') <= floor(l/2), loopless ML*(G) <= ceil(l/2).
    Ex25,
    /// Rakes: per-configuration gap at most 1, and the rake solver meets ML+1.
    Re24,
    /// Planted cores: ML*_G(x) <= ML_{G1}(x1) + 2, certified constructively.
    RemThm8,
    /// The tree solver's certificates meet ML+2 on every configuration.
    Cert,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::Thm9,
        Check::Thm4,
        Check::Thm5,
        Check::Conj1,
        Check::Conj2,
        Check::MaxDeg,
        Check::Ex24,
        Check::Ex25,
        Check::Re24,
        Check::RemThm8,
        Check::Cert,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Check::Thm9 => "thm9",
            Check::Thm4 => "thm4",
            Check::Thm5 => "thm5",
            Check::Conj1 => "conj1",
            Check::Conj2 => "conj2",
            Check::MaxDeg => "maxdeg",
            Check::Ex24 => "ex24",
            Check::Ex25 => "ex25",
            Check::Re24 => "re24",
            Check::RemThm8 => "rem-thm8",
            Check::Cert => "cert",
        }
    }

    /// Conjecture checks report findings instead of failing.
    pub fn is_conjecture(self) -> bool {
        matches!(self, Check::Conj1 | Check::Conj2 | Check::MaxDeg)
    }

    pub fn default_family(self) -> SurveyFamily {
        match self {
            Check::Thm9 | Check::Conj1 | Check::Ex25 | Check::Cert => SurveyFamily::Trees,
            Check::Thm4 => SurveyFamily::Unicyclic,
            Check::Thm5 => SurveyFamily::Grids,
            Check::Conj2 | Check::MaxDeg | Check::Ex24 => SurveyFamily::AllGraphs,
            Check::Re24 => SurveyFamily::Rakes,
            Check::RemThm8 => SurveyFamily::Planted,
        }
    }

    pub fn default_loops(self) -> LoopPolicy {
        match self {
            Check::Ex24 => LoopPolicy::Full,
            Check::MaxDeg => LoopPolicy::None,
            _ => LoopPolicy::All,
        }
    }

    /// Families on which the checked bound is claimed.
    fn accepts(self, f: SurveyFamily) -> bool {
        match self {
            Check::Conj2 | Check::MaxDeg | Check::Ex24 => true,
            _ => self.default_family() == f,
        }
    }

    fn bound(self) -> &'static str {
        match self {
            Check::Thm9 | Check::Cert => "ML* - ML <= 2 per configuration",
            Check::Thm4 | Check::Thm5 => "ML* - ML <= 3 per configuration",
            Check::Conj1 => "ML*(G) - ML(G) <= 1",
            Check::Conj2 => "2 (ML*(G) - ML(G)) <= |V|",
            Check::MaxDeg => "ML* - ML <= max degree per configuration",
            Check::Ex24 => "ML* = ML per configuration",
            Check::Ex25 => "ML(G') <= floor(l/2); loopless ML*(G) <= ceil(l/2)",
            Check::Re24 => "ML* - ML <= 1 per configuration",
            Check::RemThm8 => "ML* <= ML_core + 2 per configuration",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::InvalidFamily(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurveyFamily {
    /// Trees up to isomorphism.
    Trees,
    /// Connected graphs with one cycle, up to isomorphism.
    Unicyclic,
    /// `r x c` grids with `2 <= r <= c`.
    Grids,
    /// All loopless graphs up to isomorphism.
    AllGraphs,
    /// Rakes `P_{n,k}`.
    Rakes,
    /// Connected cores with two pendant paths at a pivot.
    Planted,
    /// Loopless complete graphs.
    Complete,
}

impl SurveyFamily {
    pub const ALL: [SurveyFamily; 7] = [
        SurveyFamily::Trees,
        SurveyFamily::Unicyclic,
        SurveyFamily::Grids,
        SurveyFamily::AllGraphs,
        SurveyFamily::Rakes,
        SurveyFamily::Planted,
        SurveyFamily::Complete,
    ];

    pub fn id(self) -> &'static str {
        match self {
            SurveyFamily::Trees => "trees",
            SurveyFamily::Unicyclic => "unicyclic",
            SurveyFamily::Grids => "grids",
            SurveyFamily::AllGraphs => "all-graphs",
            SurveyFamily::Rakes => "rakes",
            SurveyFamily::Planted => "planted",
            SurveyFamily::Complete => "complete",
        }
    }
}

impl fmt::Display for SurveyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for SurveyFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SurveyFamily::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::InvalidFamily(format!("unknown survey family {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopPolicy {
    /// Loopless only.
    None,
    /// Every one of the `2^n` loop masks.
    All,
    /// A loop at every vertex.
    Full,
}

impl LoopPolicy {
    pub fn id(self) -> &'static str {
        match self {
            LoopPolicy::None => "none",
            LoopPolicy::All => "all",
            LoopPolicy::Full => "full",
        }
    }

    fn masks(self, n: usize) -> Vec<u64> {
        match self {
            LoopPolicy::None => vec![0],
            LoopPolicy::All => (0..=bits::full(n)).collect(),
            LoopPolicy::Full => vec![bits::full(n)],
        }
    }
}

impl FromStr for LoopPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(LoopPolicy::None),
            "all" => Ok(LoopPolicy::All),
            "full" => Ok(LoopPolicy::Full),
            _ => Err(Error::InvalidFamily(format!("unknown loop policy {s:?}"))),
        }
    }
}

/// One base graph of a family, with the structure some checks need.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub graph: Graph,
    pub label: String,
    pub rake: Option<RakeView>,
    pub plant: Option<PendantPlant>,
}

impl FamilyMember {
    fn plain(graph: Graph, label: String) -> Self {
        FamilyMember {
            graph,
            label,
            rake: None,
            plant: None,
        }
    }
}

/// Base graphs of a family with `min_n <= |V| <= max_n`, smallest first.
pub fn enumerate_family(kind: SurveyFamily, min_n: usize, max_n: usize) -> Result<Vec<FamilyMember>> {
    let min_n = min_n.max(1);
    let mut out = Vec::new();
    match kind {
        SurveyFamily::Trees => {
            for n in min_n..=max_n {
                for (i, t) in enumerate_trees(n)?.into_iter().enumerate() {
                    out.push(FamilyMember::plain(t, format!("tree:{n}#{i}")));
                }
            }
        }
        SurveyFamily::Unicyclic => {
            for n in min_n.max(3)..=max_n {
                for (i, g) in enumerate_unicyclic(n)?.into_iter().enumerate() {
                    out.push(FamilyMember::plain(g, format!("unicyclic:{n}#{i}")));
                }
            }
        }
        SurveyFamily::Grids => {
            for (r, c, g) in enumerate_grids(max_n) {
                if r * c >= min_n {
                    out.push(FamilyMember::plain(g, format!("grid:{r},{c}")));
                }
            }
        }
        SurveyFamily::AllGraphs => {
            if max_n > MAX_ALL_GRAPHS_ORDER {
                return Err(Error::InvalidFamily(format!(
                    "all graphs are enumerated up to n = {MAX_ALL_GRAPHS_ORDER}, got {max_n}"
                )));
            }
            for n in min_n..=max_n {
                for (i, g) in enumerate_all_graphs(n)?.into_iter().enumerate() {
                    out.push(FamilyMember::plain(g, format!("graph:{n}#{i}")));
                }
            }
        }
        SurveyFamily::Rakes => {
            for (g, r) in enumerate_rakes(max_n) {
                if g.n() >= min_n {
                    let label = format!("rake:{},{}", r.handle().len(), r.teeth().len());
                    out.push(FamilyMember {
                        graph: g,
                        label,
                        rake: Some(r),
                        plant: None,
                    });
                }
            }
        }
        SurveyFamily::Planted => {
            for (i, (g, p)) in enumerate_planted(max_n)?.into_iter().enumerate() {
                if g.n() >= min_n {
                    out.push(FamilyMember {
                        graph: g,
                        label: format!("planted#{i}"),
                        rake: None,
                        plant: Some(p),
                    });
                }
            }
        }
        SurveyFamily::Complete => {
            for n in min_n..=max_n {
                out.push(FamilyMember::plain(family::complete(n)?, format!("complete:{n}")));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub check: Check,
    pub family: SurveyFamily,
    pub loops: LoopPolicy,
    pub min_n: usize,
    pub max_n: usize,
    /// Worker threads; `None` uses the available parallelism.
    pub jobs: Option<usize>,
    pub caps: Caps,
    /// Record wall time in the report (off by default for byte-stable output).
    pub timing: bool,
}

impl ScanOptions {
    pub fn new(check: Check, max_n: usize) -> Self {
        ScanOptions {
            check,
            family: check.default_family(),
            loops: check.default_loops(),
            min_n: 1,
            max_n,
            jobs: None,
            caps: Caps::default(),
            timing: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanStatus {
    Pass,
    Finding,
    Fail,
}

/// A configuration with exact, replay-checked ML and ML* witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct ScanWitness {
    pub kind: String,
    pub label: String,
    /// Instance file text, configuration included.
    pub instance: String,
    pub config: Configuration,
    pub gap: usize,
    pub ml: MlResult,
    pub mlstar: MlStarResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<SolveCertificate>,
}

impl ScanWitness {
    pub(crate) fn build(kind: &str, label: &str, g: &Graph, x: Configuration, caps: Caps) -> Result<Self> {
        let ml = ml_regular(g, &x, caps.rank)?;
        let mlstar = ml_litonly(g, &x, caps.states)?;
        let w = ScanWitness {
            kind: kind.to_string(),
            label: label.to_string(),
            instance: serialize_instance(g, Some(&x)),
            config: x,
            gap: mlstar.value - ml.value,
            ml,
            mlstar,
            certificate: None,
        };
        w.verify()?;
        Ok(w)
    }

    /// Re-parses the instance and replays every witness it carries.
    pub fn verify(&self) -> Result<()> {
        let inst = parse_instance(&self.instance)?;
        let (g, x) = (&inst.graph, &inst.config);
        let bad = |m: String| Err(Error::Internal(format!("witness for {}: {m}", self.label)));
        if *x != self.config {
            return bad("instance configuration differs".into());
        }
        if apply_move_set(g, x, self.ml.move_set)? != self.ml.witness_config
            || self.ml.witness_config.light_number() != self.ml.value
        {
            return bad("regular witness does not replay".into());
        }
        if replay(g, x, &self.mlstar.witness_sequence, true)? != self.mlstar.witness_config
            || self.mlstar.witness_config.light_number() != self.mlstar.value
        {
            return bad("valid-move witness does not replay".into());
        }
        if self.mlstar.value < self.ml.value || self.gap != self.mlstar.value - self.ml.value {
            return bad("gap does not match the witnesses".into());
        }
        if let Some(c) = &self.certificate {
            if c.input != *x {
                return bad("certificate starts elsewhere".into());
            }
            if replay(g, x, &c.sequence, true)? != c.final_config {
                return bad("certificate does not replay".into());
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub detail: String,
    pub witness: ScanWitness,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub check: String,
    pub family: String,
    pub loops: LoopPolicy,
    pub min_n: usize,
    pub max_n: usize,
    pub bound: String,
    pub graphs_checked: u64,
    /// Sum over (graph, loop mask) of `2^n`.
    pub instances_checked: u64,
    pub max_config_gap: usize,
    pub max_graph_gap: usize,
    /// Largest `final light - ML` over constructive certificates, for the
    /// checks that run a solver.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_certificate_excess: Option<usize>,
    pub status: ScanStatus,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    pub witnesses: Vec<ScanWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<String>,
    pub elapsed_ms: Option<u64>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.status == ScanStatus::Pass
    }
}

#[derive(Clone, Debug, Default)]
struct TaskOutcome {
    configs: u64,
    max_gap: usize,
    max_gap_x: u64,
    graph_ml: usize,
    graph_mlstar: usize,
    ml_x: u64,
    mlstar_x: u64,
    excess: Option<(usize, SolveCertificate)>,
    violation_count: u64,
    violations: Vec<(u64, String, Option<SolveCertificate>)>,
}

impl TaskOutcome {
    fn violate(&mut self, x: u64, detail: String, cert: Option<SolveCertificate>) {
        self.violation_count += 1;
        if self.violations.len() < MAX_REPORTED_VIOLATIONS {
            self.violations.push((x, detail, cert));
        }
    }

    fn record_excess(&mut self, cert: SolveCertificate) {
        let e = cert.final_light().saturating_sub(cert.ml);
        if self.excess.as_ref().is_none_or(|(best, _)| e > *best) {
            self.excess = Some((e, cert));
        }
    }

    fn graph_gap(&self) -> usize {
        self.graph_mlstar - self.graph_ml
    }
}

fn argmax(t: &[u8]) -> (usize, u64) {
    let mut best = 0;
    for (i, &v) in t.iter().enumerate() {
        if v > t[best] {
            best = i;
        }
    }
    (t[best] as usize, best as u64)
}

fn run_task(check: Check, m: &FamilyMember, mask: u64, caps: Caps) -> Result<TaskOutcome> {
    let g = m.graph.with_loops(mask);
    let n = g.n();
    let ml = ml_table(&g, caps.states)?;
    let star = mlstar_table(&g, caps.states)?;
    let mut out = TaskOutcome {
        configs: ml.len() as u64,
        ..TaskOutcome::default()
    };
    for (i, (&a, &b)) in ml.iter().zip(&star).enumerate() {
        let gap = (b - a) as usize;
        if gap > out.max_gap {
            out.max_gap = gap;
            out.max_gap_x = i as u64;
        }
    }
    (out.graph_ml, out.ml_x) = argmax(&ml);
    (out.graph_mlstar, out.mlstar_x) = argmax(&star);

    let per_config_limit = match check {
        Check::Thm9 | Check::Cert => Some(2),
        Check::Thm4 | Check::Thm5 => Some(3),
        Check::MaxDeg => Some(g.max_degree()),
        Check::Ex24 => Some(0),
        Check::Re24 => Some(1),
        _ => None,
    };
    if let Some(limit) = per_config_limit {
        for (i, (&a, &b)) in ml.iter().zip(&star).enumerate() {
            let gap = (b - a) as usize;
            if gap > limit {
                out.violate(i as u64, format!("ML* - ML = {gap} exceeds {limit}"), None);
            }
        }
    }

    match check {
        Check::Conj1 if out.graph_gap() > 1 => {
            let detail = format!("ML*(G) - ML(G) = {} exceeds 1", out.graph_gap());
            out.violate(out.mlstar_x, detail, None);
        }
        Check::Conj2 if 2 * out.graph_gap() > n => {
            let detail = format!("ML*(G) - ML(G) = {} exceeds |V|/2 = {n}/2", out.graph_gap());
            out.violate(out.mlstar_x, detail, None);
        }
        Check::Ex25 => {
            let l = g.leaves().count_ones() as usize;
            if l >= 2 {
                if out.graph_ml > l / 2 {
                    let detail = format!("ML(G') = {} exceeds floor({l}/2)", out.graph_ml);
                    out.violate(out.ml_x, detail, None);
                }
                if mask == 0 && out.graph_mlstar > l.div_ceil(2) {
                    let detail = format!("ML*(G) = {} exceeds ceil({l}/2)", out.graph_mlstar);
                    out.violate(out.mlstar_x, detail, None);
                }
            }
        }
        Check::Cert => {
            let solver = TreeSolver::new(&g)?;
            for xb in 0..ml.len() as u64 {
                let x = Configuration::new(n, xb)?;
                match solver.solve(&x) {
                    Ok(c) => {
                        if c.ml != ml[xb as usize] as usize {
                            return Err(Error::Internal(format!("{}: solver ML disagrees with the table", m.label)));
                        }
                        out.record_excess(c);
                    }
                    Err(Error::BoundViolation(c)) => {
                        out.violate(xb, "certificate exceeds ML + 2".into(), Some((*c).clone()));
                        out.record_excess(*c);
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        Check::Re24 => {
            let r = m.rake.as_ref().ok_or_else(|| Error::InvalidFamily("rake check needs rakes".into()))?;
            for xb in 0..ml.len() as u64 {
                let x = Configuration::new(n, xb)?;
                match solve_rake(&g, r, &x) {
                    Ok(c) => out.record_excess(c),
                    Err(Error::BoundViolation(c)) => {
                        out.violate(xb, "rake certificate exceeds ML + 1".into(), Some((*c).clone()));
                        out.record_excess(*c);
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        Check::RemThm8 => {
            let p = m.plant.as_ref().ok_or_else(|| Error::InvalidFamily("planted check needs plants".into()))?;
            let core_mask = p.core_mask(&g);
            let (core, map) = g.induced(core_mask);
            let core_ml = ml_table(&core, caps.states)?;
            for xb in 0..ml.len() as u64 {
                let x = Configuration::new(n, xb)?;
                if !p.proviso(&g, &x) {
                    continue;
                }
                let x1 = map.iter().enumerate().fold(0usize, |acc, (i, &v)| acc | ((xb >> v & 1) as usize) << i);
                let limit = core_ml[x1] as usize + 2;
                if star[xb as usize] as usize > limit {
                    let detail = format!("ML* = {} exceeds ML_core + 2 = {limit}", star[xb as usize]);
                    out.violate(xb, detail, None);
                }
                match solve_theorem8(&g, p, &x, Reference::Core) {
                    Ok(c) => out.record_excess(c),
                    Err(Error::BoundViolation(c)) => {
                        out.violate(xb, "certificate exceeds ML_core + 2".into(), Some((*c).clone()));
                        out.record_excess(*c);
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        _ => {}
    }
    Ok(out)
}

/// Runs a check over every (graph, loop mask, configuration) of a family.
pub fn scan(opts: &ScanOptions) -> Result<ScanReport> {
    let start = Instant::now();
    let check = opts.check;
    if !check.accepts(opts.family) {
        return Err(Error::InvalidFamily(format!(
            "check {check} is not claimed on family {}",
            opts.family
        )));
    }
    if check == Check::Ex24 && opts.loops != LoopPolicy::Full {
        return Err(Error::InvalidFamily("ex24 needs loops everywhere (--loops full)".into()));
    }
    let members = enumerate_family(opts.family, opts.min_n, opts.max_n)?;
    let tasks: Vec<(usize, u64)> = members
        .iter()
        .enumerate()
        .flat_map(|(i, m)| opts.loops.masks(m.graph.n()).into_iter().map(move |mask| (i, mask)))
        .collect();
    let jobs = opts
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()))
        .max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let outcomes: Vec<TaskOutcome> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(i, mask)| run_task(check, &members[i], mask, opts.caps))
            .collect::<Result<_>>()
    })?;

    let graph_of = |t: usize| members[tasks[t].0].graph.with_loops(tasks[t].1);
    let label_of = |t: usize| members[tasks[t].0].label.clone();
    let mut report = ScanReport {
        check: check.id().into(),
        family: opts.family.id().into(),
        loops: opts.loops,
        min_n: opts.min_n,
        max_n: opts.max_n,
        bound: check.bound().into(),
        graphs_checked: tasks.len() as u64,
        instances_checked: outcomes.iter().map(|o| o.configs).sum(),
        max_config_gap: 0,
        max_graph_gap: 0,
        max_certificate_excess: None,
        status: ScanStatus::Pass,
        violation_count: outcomes.iter().map(|o| o.violation_count).sum(),
        violations: Vec::new(),
        witnesses: Vec::new(),
        scope: (check == Check::Conj2).then(|| {
            format!(
                "exhaustive over {} up to n = {}; the bound is only tight on complete-graph-like \
                 instances beyond exhaustive reach, so run the complete family for the parametric check",
                opts.family, opts.max_n
            )
        }),
        elapsed_ms: None,
    };

    // first task (in enumeration order) attaining each maximum
    let first_max = |key: &dyn Fn(&TaskOutcome) -> usize| -> Option<usize> {
        let mut best: Option<usize> = None;
        for (t, o) in outcomes.iter().enumerate() {
            if best.is_none_or(|b| key(o) > key(&outcomes[b])) {
                best = Some(t);
            }
        }
        best
    };
    let caps = opts.caps;
    if let Some(t) = first_max(&|o| o.max_gap) {
        let (g, o) = (graph_of(t), &outcomes[t]);
        report.max_config_gap = o.max_gap;
        let x = Configuration::new(g.n(), o.max_gap_x)?;
        report.witnesses.push(ScanWitness::build("max-config-gap", &label_of(t), &g, x, caps)?);
    }
    if let Some(t) = first_max(&|o| o.graph_gap()) {
        let (g, o) = (graph_of(t), &outcomes[t]);
        report.max_graph_gap = o.graph_gap();
        if matches!(check, Check::Conj1 | Check::Conj2 | Check::Ex25) {
            let label = label_of(t);
            report.witnesses.push(ScanWitness::build("graph-ml", &label, &g, Configuration::new(g.n(), o.ml_x)?, caps)?);
            report.witnesses.push(ScanWitness::build("graph-mlstar", &label, &g, Configuration::new(g.n(), o.mlstar_x)?, caps)?);
        }
    }
    let excess = outcomes
        .iter()
        .enumerate()
        .filter_map(|(t, o)| o.excess.as_ref().map(|(e, c)| (t, *e, c)))
        .fold(None::<(usize, usize, &SolveCertificate)>, |acc, cur| match acc {
            Some(a) if a.1 >= cur.1 => Some(a),
            _ => Some(cur),
        });
    if let Some((t, e, c)) = excess {
        report.max_certificate_excess = Some(e);
        let g = graph_of(t);
        let mut w = ScanWitness::build("max-certificate-excess", &label_of(t), &g, c.input, caps)?;
        w.certificate = Some(c.clone());
        w.verify()?;
        report.witnesses.push(w);
    }

    'outer: for (t, o) in outcomes.iter().enumerate() {
        for (x, detail, cert) in &o.violations {
            if report.violations.len() >= MAX_REPORTED_VIOLATIONS {
                break 'outer;
            }
            let g = graph_of(t);
            let mut w = ScanWitness::build("violation", &label_of(t), &g, Configuration::new(g.n(), *x)?, caps)?;
            w.certificate = cert.clone();
            w.verify()?;
            report.violations.push(Violation {
                detail: detail.clone(),
                witness: w,
            });
        }
    }
    report.status = match (report.violation_count, check.is_conjecture()) {
        (0, _) => ScanStatus::Pass,
        (_, true) => ScanStatus::Finding,
        (_, false) => ScanStatus::Fail,
    };
    if opts.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}
