//! Finite orthomodular lattices, their linear maps, the Foulis
//! m-semilattice `Lin(X)` with its lattice of Sasaki projections, and
//! module actions over it, all checked exhaustively on explicit tables.

pub mod catalog;
pub mod cli;
pub mod dot;
pub mod format;
pub mod foulis;
pub mod linmap;
pub mod module_action;
pub mod oml;
pub mod report;
pub mod verify;

pub use linmap::{LatMap, LinMap};
pub use oml::{Elem, LatticeData, Oml, OmlError, Ortholattice};
pub use report::Report;
