//! Generic rigidity, stress-linked vertex pairs and generic stress matroids,
//! decided with randomized exact linear algebra over F_p, p = 2^61 - 1.

pub mod catalog;
pub mod cli;
pub mod combinatorial;
pub mod error;
pub mod families;
pub mod field;
pub mod graph;
pub mod matrix;
pub mod matroid;
pub mod pebble;
pub mod rigidity;
pub mod rng;
pub mod sampling;
pub mod stress;
pub mod stress_matroid;
pub mod verify;

pub use error::{Error, ParseErrorKind, Result};
pub use field::Fp;
pub use graph::Graph;
pub use matrix::{FieldMatrix, LinearSubspace};
pub use matroid::{Matroid, MatroidOracle};
pub use rigidity::Framework;
pub use rng::Rng;
