//! Sigma-game and lit-only sigma-game on graphs with loops.
//!
//! A move at `v` toggles every neighbor of `v` (including `v` itself when it
//! carries a loop); a lit-only move is only allowed at an on vertex. This
//! crate computes the minimum light numbers ML and ML* exactly, builds
//! certified valid-move sequences on trees and related graphs, and sweeps
//! graph families to check gap bounds.

pub mod basis;
pub mod bits;
pub mod config;
pub mod constructive;
pub mod error;
pub mod family;
pub mod graph;
pub mod instance;
pub mod moves;
pub mod search;
pub mod survey;

pub use config::Configuration;
pub use error::{Error, Result};
pub use graph::Graph;
pub use instance::{parse_instance, serialize_instance, Instance};
pub use moves::{Move, MoveKind, MoveSequence};
