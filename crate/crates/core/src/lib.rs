//! Exact arithmetic for weighted K3 surfaces: Du Val baskets of weighted
//! complete intersections, the Betti numbers and moduli counts of their
//! Sasakian links, and an integer lattice toolkit.

pub mod census;
pub mod cli;
pub mod error;
pub mod exactgeom;
pub mod intlin;
pub mod k3inv;
pub mod quadlattice;
pub mod report;
pub mod stratum;
pub mod wps;

pub use error::AnalysisError;
pub use k3inv::K3Record;
pub use stratum::{analyze, Basket, BasketEntry, WeightSystem};
pub use wps::WeightVector;
