//! Certified lit-only solvers: planted pendant paths, rakes, decorated
//! trees and trees planted on a connected graph.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::basis::NeighborhoodBasis;
use crate::bits;
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::moves::{replay, MoveSequence};
use crate::search::{ml_litonly, DEFAULT_RANK_CAP, MAX_STATE_BITS};

use super::anatomy::{tree_anatomy, TreeAnatomy};
use super::nylen::nylen_in;
use super::path::path_normalize_in;
use super::rake::{rake_engine, RakeView};
use super::realize::{realize_in, PlantedSetup};
use super::{check_len, walk_path, Walk};

/// A lit-only move sequence with a machine-checked light bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveCertificate {
    pub input: Configuration,
    pub sequence: MoveSequence,
    pub final_config: Configuration,
    pub bound: usize,
    /// The reference minimum light number the bound is measured against.
    pub ml: usize,
}

impl SolveCertificate {
    /// Replays `sequence` strictly and checks `L(z) <= ml + bound`. A
    /// violation is returned as [`Error::BoundViolation`] carrying the
    /// whole trace.
    pub fn new(g: &Graph, input: Configuration, sequence: MoveSequence, bound: usize, ml: usize) -> Result<Self> {
        let final_config = replay(g, &input, &sequence, true)?;
        let cert = SolveCertificate {
            input,
            sequence,
            final_config,
            bound,
            ml,
        };
        if cert.final_light() > ml + bound {
            return Err(Error::BoundViolation(Box::new(cert)));
        }
        Ok(cert)
    }

    pub fn final_light(&self) -> usize {
        self.final_config.light_number()
    }

    /// Re-checks the certificate against `g`.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let z = replay(g, &self.input, &self.sequence, true)?;
        if z != self.final_config {
            return Err(Error::Internal("recorded final configuration does not replay".into()));
        }
        if self.final_light() > self.ml + self.bound {
            return Err(Error::BoundViolation(Box::new(self.clone())));
        }
        Ok(())
    }
}

impl Serialize for SolveCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SolveCertificate", 5)?;
        st.serialize_field("bound", &self.bound)?;
        st.serialize_field("final_config", &self.final_config)?;
        st.serialize_field("final_light", &self.final_light())?;
        st.serialize_field("ml", &self.ml)?;
        st.serialize_field("sequence", &self.sequence.labels())?;
        st.end()
    }
}

/// What the bound of a planted-path certificate is measured against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Reference {
    /// `ML_G(x)`.
    #[default]
    Whole,
    /// `ML_{G1}(x restricted to G1)`, where `G1` is `G` minus both paths.
    Core,
}

/// Two pendant paths hanging at a pivot `v`: `p1 = [v11, .., v1n1]` and
/// `p2 = [v21, .., v2n2]`, ordered away from `v`. Only their first vertices
/// touch the rest of the graph, and only at `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PendantPlant {
    pub v: usize,
    pub p1: Vec<usize>,
    pub p2: Vec<usize>,
}

impl PendantPlant {
    pub fn pendant_mask(&self) -> u64 {
        bits::of(self.p1.iter().chain(&self.p2).copied())
    }

    /// Vertex set of the core `G1`.
    pub fn core_mask(&self, g: &Graph) -> u64 {
        g.vertex_mask() & !self.pendant_mask()
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |m: &str| Err(Error::Precondition(format!("not a planted pair of paths: {m}")));
        g.check(self.v)?;
        for p in [&self.p1, &self.p2] {
            if p.is_empty() {
                return bad("empty pendant path");
            }
            if !is_pendant_path(g, self.v, p) {
                return bad("a pendant path must be an induced path attached to the pivot at its first vertex only");
            }
        }
        let (m1, m2) = (bits::of(self.p1.iter().copied()), bits::of(self.p2.iter().copied()));
        if m1 & m2 != 0 || bits::has(m1 | m2, self.v) {
            return bad("paths must be disjoint and avoid the pivot");
        }
        if !g.induces_connected(self.core_mask(g)) {
            return bad("the core must be connected");
        }
        Ok(())
    }

    /// `max(n1, n2) >= 2`, a loop at `v11` or `v21`, or `x(v11) != x(v21)`.
    pub fn proviso(&self, g: &Graph, x: &Configuration) -> bool {
        let (a, b) = (self.p1[0], self.p2[0]);
        self.p1.len().max(self.p2.len()) >= 2 || g.has_loop(a) || g.has_loop(b) || x.get(a) != x.get(b)
    }

    /// The first pair of pendant paths at `v` (smallest vertices first)
    /// satisfying the proviso for `x`.
    pub fn detect(g: &Graph, v: usize, x: &Configuration) -> Result<Self> {
        g.check(v)?;
        check_len(g, x)?;
        let paths: Vec<Vec<usize>> = g
            .components(g.vertex_mask() & !(1 << v))
            .into_iter()
            .filter_map(|c| {
                let attach = g.adjacent(v) & c;
                if attach.count_ones() != 1 {
                    return None;
                }
                let p = walk_path(g, attach.trailing_zeros() as usize, c);
                (bits::of(p.iter().copied()) == c && is_pendant_path(g, v, &p)).then_some(p)
            })
            .collect();
        for i in 0..paths.len() {
            for j in i + 1..paths.len() {
                let plant = PendantPlant {
                    v,
                    p1: paths[i].clone(),
                    p2: paths[j].clone(),
                };
                if plant.proviso(g, x) && plant.validate(g).is_ok() {
                    return Ok(plant);
                }
            }
        }
        Err(Error::Precondition(format!(
            "no pair of pendant paths at v{} satisfies the proviso",
            v + 1
        )))
    }
}

fn is_pendant_path(g: &Graph, v: usize, p: &[usize]) -> bool {
    let mask = bits::of(p.iter().copied());
    if mask.count_ones() as usize != p.len() {
        return false;
    }
    p.iter().enumerate().all(|(i, &w)| {
        let mut expect = if i == 0 { 1u64 << v } else { 1 << p[i - 1] };
        if i + 1 < p.len() {
            expect |= 1 << p[i + 1];
        }
        g.adjacent(w) == expect
    })
}

fn zero_certificate(g: &Graph, x: &Configuration, bound: usize, ml: usize) -> Result<SolveCertificate> {
    SolveCertificate::new(g, *x, MoveSequence::new(), bound, ml)
}

/// Certificate with bound 2 for a core graph with two pendant paths.
///
/// A minimum-light target `y` is realized inside the core up to junk moves
/// on the paths (pivot `v`, `a = v11`, `b = v21`), then each path with the
/// pivot on top is normalized to at most one light.
pub fn solve_theorem8(g: &Graph, plant: &PendantPlant, x: &Configuration, reference: Reference) -> Result<SolveCertificate> {
    check_len(g, x)?;
    plant.validate(g)?;
    if !plant.proviso(g, x) {
        return Err(Error::Precondition(
            "the proviso fails: both paths are loopless singletons in equal states".into(),
        ));
    }
    let (ml, m) = match reference {
        Reference::Whole => {
            let (best, m) = NeighborhoodBasis::new(g).coset_min(x.bits(), DEFAULT_RANK_CAP)?;
            (best.count_ones() as usize, m)
        }
        Reference::Core => {
            let (core, map) = g.induced(plant.core_mask(g));
            let x1 = bits::ones(x.bits() & plant.core_mask(g))
                .map(|v| 1u64 << map.iter().position(|&w| w == v).unwrap())
                .fold(0, |a, b| a | b);
            let (best, m1) = NeighborhoodBasis::new(&core).coset_min(x1, DEFAULT_RANK_CAP)?;
            (best.count_ones() as usize, bits::ones(m1).map(|i| 1u64 << map[i]).fold(0, |a, b| a | b))
        }
    };
    if x.is_zero() {
        return zero_certificate(g, x, 2, ml);
    }
    let mut walk = Walk::new(g, x.bits());
    theorem8_in(&mut walk, plant, m)?;
    SolveCertificate::new(g, *x, walk.sequence(), 2, ml)
}

fn theorem8_in(walk: &mut Walk, plant: &PendantPlant, m: u64) -> Result<()> {
    let g = walk.g;
    let setup = PlantedSetup {
        a: plant.p1[0],
        b: plant.p2[0],
        c: plant.v,
        s: plant.core_mask(g) & !(1 << plant.v),
    };
    realize_in(walk, &setup, m)?;
    for p in [&plant.p1, &plant.p2] {
        let mut path = vec![plant.v];
        path.extend_from_slice(p);
        path_normalize_in(walk, &path)?;
    }
    Ok(())
}

/// Certificate with bound 1 on a rake: the optimal move set, top included,
/// is driven by the rake engine.
pub fn solve_rake(g: &Graph, r: &RakeView, x: &Configuration) -> Result<SolveCertificate> {
    check_len(g, x)?;
    if r.mask() != g.vertex_mask() {
        return Err(Error::Precondition("the rake must span the whole graph".into()));
    }
    let r = RakeView::new(g, r.handle().to_vec(), r.teeth().to_vec())?;
    let (best, m) = NeighborhoodBasis::new(g).coset_min(x.bits(), DEFAULT_RANK_CAP)?;
    let mut walk = Walk::new(g, x.bits());
    rake_engine(&mut walk, &r, m, true)?;
    SolveCertificate::new(g, *x, walk.sequence(), 1, best.count_ones() as usize)
}

/// Certificate with bound 2 for a decorated tree.
pub fn solve_tree(g: &Graph, x: &Configuration) -> Result<SolveCertificate> {
    TreeSolver::new(g)?.solve(x)
}

/// [`solve_tree`] with the graph-only work (anatomy, basis, rake shape)
/// done once for many configurations.
#[derive(Clone, Debug)]
pub struct TreeSolver<'g> {
    g: &'g Graph,
    basis: NeighborhoodBasis,
    anatomy: TreeAnatomy,
    /// The whole tree read as a rake, when it is one.
    rake: Option<RakeView>,
}

impl<'g> TreeSolver<'g> {
    pub fn new(g: &'g Graph) -> Result<Self> {
        let anatomy = tree_anatomy(g)?;
        let rake = (0..g.n()).find_map(|t| RakeView::detect(g, t, g.vertex_mask()).ok());
        Ok(TreeSolver {
            g,
            basis: NeighborhoodBasis::new(g),
            anatomy,
            rake,
        })
    }

    pub fn solve(&self, x: &Configuration) -> Result<SolveCertificate> {
        let g = self.g;
        check_len(g, x)?;
        let (best, m) = self.basis.coset_min(x.bits(), DEFAULT_RANK_CAP)?;
        let ml = best.count_ones() as usize;
        if x.is_zero() {
            return zero_certificate(g, x, 2, ml);
        }
        if g.n() <= 2 {
            let r = ml_litonly(g, x, MAX_STATE_BITS)?;
            return SolveCertificate::new(g, *x, r.witness_sequence, 2, ml);
        }
        let mut walk = Walk::new(g, x.bits());
        self.plan(&mut walk, x, m)?;
        SolveCertificate::new(g, *x, walk.sequence(), 2, ml)
    }

    fn plan(&self, walk: &mut Walk, x: &Configuration, m: u64) -> Result<()> {
        let g = self.g;
        let a = &self.anatomy;
        // a pair of good components at an appropriate vertex that allows
        // the pendant-path construction
        if let Some(plant) = find_plant(g, x, bits::ones(a.appropriate).map(|v| {
            let comps: Vec<u64> = a.good_components(v).map(|c| c.mask).collect();
            (v, comps)
        })) {
            return theorem8_in(walk, &plant, m);
        }
        // every good component is now a loopless singleton, in the same
        // state as its siblings
        if a.branch.count_ones() <= 1 {
            let r = self
                .rake
                .as_ref()
                .ok_or_else(|| Error::Internal("a tree with one branch vertex left is not a rake".into()))?;
            return rake_engine(walk, r, m, true);
        }
        let h = reduced_tree(g.vertex_mask(), bits::ones(a.appropriate).map(|v| {
            let comps: Vec<u64> = a.good_components(v).map(|c| c.mask).collect();
            comps
        }));
        let parts = nylen_in(g, h, None)?;
        match parts.center {
            Some(u) => {
                let arm = |p: &Vec<usize>| g.reach(p[0], g.vertex_mask() & !(1 << u));
                arms_route(walk, u, arm(&parts.arms.0), arm(&parts.arms.1), m)
            }
            None => self.two_branch_path(walk, x, h, &parts.arms.0),
        }
    }

    /// The reduced tree is a path `u1 .. up` whose second and second-last
    /// vertices are the two branch vertices of the tree. Dropping the extra
    /// leaves at `u2` leaves a rake topped at `u1`.
    fn two_branch_path(&self, walk: &mut Walk, x: &Configuration, h: u64, path: &[usize]) -> Result<()> {
        let g = self.g;
        let p = path.len();
        if p < 4 || self.anatomy.branch != (1 << path[1] | 1 << path[p - 2]) {
            return Err(Error::Internal("unexpected shape for the two-branch path case".into()));
        }
        let (u1, u2) = (path[0], path[1]);
        let mut teeth = vec![path[p - 1]];
        teeth.extend(bits::ones(g.adjacent(path[p - 2]) & !h));
        let view = RakeView::unchecked(path[..p - 1].to_vec(), teeth);
        let gens = view.mask() & !(1 << u1);
        let (_, m) = NeighborhoodBasis::from_generators(g, gens).coset_min(x.bits(), DEFAULT_RANK_CAP)?;
        rake_engine(walk, &view, m, false)?;
        // The leaves dropped at u2 always share the state of u1; if they
        // are the only lights left, hand them back through u2.
        if walk.on(u1) && walk.cur & view.mask() & !(1 << u1) == 0 {
            walk.mv(u1)?;
            walk.mv(u2)?;
        }
        Ok(())
    }
}

/// First pendant-path pair among the candidate components (given per
/// vertex, in order) that satisfies the proviso.
fn find_plant(g: &Graph, x: &Configuration, candidates: impl Iterator<Item = (usize, Vec<u64>)>) -> Option<PendantPlant> {
    for (v, comps) in candidates {
        for i in 0..comps.len() {
            for j in i + 1..comps.len() {
                let path = |c: u64| walk_path(g, (g.adjacent(v) & c).trailing_zeros() as usize, c);
                let plant = PendantPlant {
                    v,
                    p1: path(comps[i]),
                    p2: path(comps[j]),
                };
                if plant.proviso(g, x) {
                    return Some(plant);
                }
            }
        }
    }
    None
}

/// Keeps only the smallest of each vertex's sibling singleton components.
fn reduced_tree(all: u64, groups: impl Iterator<Item = Vec<u64>>) -> u64 {
    let mut h = all;
    for comps in groups {
        for &c in comps.iter().skip(1) {
            h &= !c;
        }
    }
    h
}

/// Realizes `m` around `u` with the neighbors of `u` in the two arms as
/// `a` and `b`, then normalizes each arm as a rake topped at `u`.
fn arms_route(walk: &mut Walk, u: usize, arm_a: u64, arm_b: u64, m: u64) -> Result<()> {
    let g = walk.g;
    let (ra, rb) = (RakeView::detect(g, u, arm_a)?, RakeView::detect(g, u, arm_b)?);
    let setup = PlantedSetup {
        a: ra.handle().get(1).copied().unwrap_or_else(|| ra.teeth()[0]),
        b: rb.handle().get(1).copied().unwrap_or_else(|| rb.teeth()[0]),
        c: u,
        s: g.vertex_mask() & !(arm_a | arm_b | 1 << u),
    };
    let junk = realize_in(walk, &setup, m)?;
    rake_engine(walk, &ra, junk & arm_a, false)?;
    rake_engine(walk, &rb, junk & arm_b, false)
}

/// A tree `G[v1]` planted on a connected graph `G[v2]` at the shared
/// vertex `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlantedPartition {
    pub v1: u64,
    pub v2: u64,
    pub v: usize,
}

impl PlantedPartition {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |m: String| Err(Error::Precondition(format!("invalid planted partition: {m}")));
        g.check(self.v)?;
        if self.v1 & self.v2 != 1 << self.v {
            return bad("the parts must meet exactly in the pivot".into());
        }
        if self.v1 | self.v2 != g.vertex_mask() {
            return bad("the parts must cover the graph".into());
        }
        let (t1, _) = g.induced(self.v1);
        if !t1.is_tree() {
            return bad("the first part must induce a tree".into());
        }
        if !g.induces_connected(self.v2) {
            return bad("the second part must induce a connected graph".into());
        }
        let (a, b) = (self.v1 & !(1 << self.v), self.v2 & !(1 << self.v));
        if bits::ones(a).any(|w| g.adjacent(w) & b != 0) {
            return bad("an edge crosses between the parts".into());
        }
        if self.v2 != 1 << self.v && t1.branch_vertices().count_ones() < 3 {
            return bad(format!(
                "the tree part has {} branch vertices, at least three are needed",
                t1.branch_vertices().count_ones()
            ));
        }
        Ok(())
    }
}

/// Certificate with bound 2 for a tree planted on a connected graph.
///
/// Follows the tree pipeline with components taken inside the tree part
/// and away from the pivot: pendant-path pairs first, then two rake arms
/// around a vertex of the tree, found through a Nylen path avoiding the
/// pivot when the pivot is a leaf of the reduced tree, or by direct search.
pub fn solve_planted_tree(g: &Graph, part: &PlantedPartition, x: &Configuration) -> Result<SolveCertificate> {
    check_len(g, x)?;
    part.validate(g)?;
    if part.v2 == 1 << part.v {
        return solve_tree(g, x);
    }
    let (best, m) = NeighborhoodBasis::new(g).coset_min(x.bits(), DEFAULT_RANK_CAP)?;
    let ml = best.count_ones() as usize;
    if x.is_zero() {
        return zero_certificate(g, x, 2, ml);
    }
    let mut walk = Walk::new(g, x.bits());
    planted_plan(&mut walk, part, x, m)?;
    SolveCertificate::new(g, *x, walk.sequence(), 2, ml)
}

fn planted_plan(walk: &mut Walk, part: &PlantedPartition, x: &Configuration, m: u64) -> Result<()> {
    let g = walk.g;
    let v1 = part.v1;
    let deg1 = |w: usize| (g.adjacent(w) & v1).count_ones();
    let branch1 = bits::of(bits::ones(v1).filter(|&w| deg1(w) >= 3));
    // components of the tree part minus w, away from the pivot, without
    // branch vertices: pendant paths of the whole graph
    let free = |w: usize| -> Vec<u64> {
        g.components(v1 & !(1 << w))
            .into_iter()
            .filter(|&c| !bits::has(c, part.v) && c & branch1 == 0)
            .collect()
    };
    if let Some(plant) = find_plant(g, x, bits::ones(v1).map(|w| (w, free(w)))) {
        return theorem8_in(walk, &plant, m);
    }
    let h = reduced_tree(v1, bits::ones(v1).map(free).filter(|c| c.len() >= 2));
    let deg_h = |w: usize| (g.adjacent(w) & h).count_ones();
    let leaves_h = bits::ones(h).filter(|&w| deg_h(w) == 1).count();
    if deg_h(part.v) == 1 && leaves_h >= 3 {
        if let Ok(parts) = nylen_in(g, h, Some(part.v)) {
            if let Some(u) = parts.center {
                let arm = |p: &Vec<usize>| g.reach(p[0], g.vertex_mask() & !(1 << u));
                let (a, b) = (arm(&parts.arms.0), arm(&parts.arms.1));
                if usable_arms(g, x, u, a, b) {
                    return arms_route(walk, u, a, b, m);
                }
            }
        }
    }
    let away = v1 & !(1 << part.v);
    for u in bits::ones(v1) {
        let arms: Vec<u64> = g
            .components(g.vertex_mask() & !(1 << u))
            .into_iter()
            .filter(|&c| c & !away == 0)
            .collect();
        for i in 0..arms.len() {
            for j in i + 1..arms.len() {
                if usable_arms(g, x, u, arms[i], arms[j]) {
                    return arms_route(walk, u, arms[i], arms[j], m);
                }
            }
        }
    }
    Err(Error::Internal("no pair of rake arms found in the tree part".into()))
}

/// Both arms are rakes topped at `u` and their first vertices can be
/// driven into different states.
fn usable_arms(g: &Graph, x: &Configuration, u: usize, a: u64, b: u64) -> bool {
    let (Ok(ra), Ok(rb)) = (RakeView::detect(g, u, a), RakeView::detect(g, u, b)) else {
        return false;
    };
    let first = |r: &RakeView| r.handle().get(1).copied().unwrap_or_else(|| r.teeth()[0]);
    let (fa, fb) = (first(&ra), first(&rb));
    x.get(fa) != x.get(fb) || g.nbhd(fa) != g.nbhd(fb)
}
