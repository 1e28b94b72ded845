//! Family enumeration, exhaustive bound checks and example reproduction.

mod enumerate;
mod reproduce;
mod scan;

pub use enumerate::{
    canonical_form, decorate_loops, enumerate_all_graphs, enumerate_grids, enumerate_planted, enumerate_rakes,
    enumerate_trees, enumerate_unicyclic, tree_code, CanonicalKey, MAX_ALL_GRAPHS_ORDER, MAX_TREE_ORDER,
    MAX_UNICYCLIC_ORDER,
};
pub use reproduce::{reproduce_example, ExampleId, ExampleReport, Quantity};
pub use scan::{
    enumerate_family, scan, Check, FamilyMember, LoopPolicy, ScanOptions, ScanReport, ScanStatus, ScanWitness,
    SurveyFamily, Violation, MAX_REPORTED_VIOLATIONS,
};
