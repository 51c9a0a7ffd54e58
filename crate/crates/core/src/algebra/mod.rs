//! Exact arithmetic: scalars, polynomials, residues mod F, matrices, projective points.

pub mod field;
pub mod matrix;
pub mod modf;
pub mod mpoly;
pub mod poly;
pub mod proj;
pub mod roots;

pub use field::{Field, FieldElement};
pub use matrix::Matrix;
pub use modf::{poly_mul_mod, ModFElement};
pub use mpoly::MPoly;
pub use poly::UniPoly;
pub use proj::ProjPoint;
pub use roots::find_roots_split;
