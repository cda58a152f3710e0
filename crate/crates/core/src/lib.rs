//! Exact computations around diagram automorphisms of quivers: folding of
//! Cartan data, split and quotient quivers, branching of representations,
//! and framed modules over preprojective algebras twisted by the
//! automorphism.
//!
//! All arithmetic is exact, over [`Q`] or a small prime field.

pub mod corpus;
pub mod dims;
pub mod error;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod iso;
pub mod lie_fold;
pub mod module_lab;
pub mod quiver;
pub mod rep;
pub mod split;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, Fp, F2, F3, Q};
pub use matrix::Matrix;
pub use module_lab::{FramedEmbedding, FramedModule};
pub use quiver::{DiagramAutomorphism, DoubledQuiver, FramedQuiver, OrbitData, Quiver};
