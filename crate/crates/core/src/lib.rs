//! Families of pairwise graph-different permutations.
//!
//! Two equal-length rows over the vertices of a graph `G` (with optional blank
//! spaces) are `G`-different when some position holds two adjacent vertices.
//! This crate builds such families, verifies them, computes the largest ones
//! exactly for small graphs, and emits re-checkable certificates for the
//! exact values with unlimited blanks on one and two disjoint edges.
//!
//! - [`graph`]: graphs, bipartitions and the named generators
//! - [`perm`]: blanked permutations, families, projection and concatenation
//! - [`collision`] and [`clique`]: collision graphs and exact clique/independence numbers
//! - [`construct`]: the explicit family constructions
//! - [`search`]: exhaustive `F` / `F_b`, column merging, the single-edge bound
//! - [`certificate`]: certificates for one and two disjoint edges
//! - [`bounds`]: closed-form bounds and consistency checks
//! - [`io`], [`report`]: DIMACS and family files, JSON reports
//! - [`combinatorics`], [`sample`]: partitioned subset sweeps, seeded random suites

pub mod bitset;
pub mod bounds;
pub mod certificate;
pub mod clique;
pub mod collision;
pub mod combinatorics;
pub mod construct;
pub mod error;
pub mod graph;
pub mod io;
pub mod perm;
pub mod report;
pub mod sample;
pub mod search;

pub use error::{Error, Result};
pub use graph::{Bipartition, Graph, Vertex};
pub use perm::{BlankedPermutation, Family, Verdict};
