//! Completely independent Steiner trees in multigraphs, and their
//! arborescence analogue in digraphs.
//!
//! The crate verifies, constructs, transforms and bounds families of
//! R-Steiner trees, with brute-force oracles that certify the constructions
//! on small inputs.

pub mod bounds;
pub mod cli;
pub mod construct;
pub mod darbor;
pub mod digraph;
pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
mod matching;
pub mod solver;
pub mod transform;
pub mod tree;
pub mod verify;

pub use digraph::{Arborescence, ArcIx, DiGraph, InteriorRule};
pub use error::{Error, Result};
pub use graph::{Edge, EdgeIx, MultiGraph, NodeIx, TerminalSet};
pub use tree::{SteinerCheck, SteinerTree, TreeFamily, TreeKind};
