//! Exact computations on the Kummer surface of a genus-2 curve and its
//! desingularization, a K3 surface cut out by three quadrics in P^5.

pub mod algebra;
pub mod automorphisms;
pub mod curve;
pub mod curvefile;
pub mod duality;
pub mod error;
pub mod kummer;
pub mod linecomplex;
pub mod lines;
pub mod sampling;
pub mod surface;
pub mod twists;
pub mod verify;

pub use curve::{DivisorPair, Genus2Curve};
pub use error::{Error, Result};
