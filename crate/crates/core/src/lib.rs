//! Exact polynomial-matrix algebra over finite fields, aimed at maximum
//! distance profile (MDP) convolutional codes.
//!
//! The crate is layered bottom-up:
//!
//! * [`field`], [`poly`], [`linalg`]: scalar arithmetic in GF(p^m), `F[z]`
//!   and dense matrices over the field;
//! * [`poly_matrix`]: matrices over `F[z]` with determinants, Smith form,
//!   row reduction and three independent left-primeness tests;
//! * [`code`]: code parameters, sliding matrices, the MDP minor criterion
//!   and brute-force column distances;
//! * [`theorems`]: stacked coefficient matrices whose full row rank certifies
//!   left primeness, plus the parameter-feasibility analysis;
//! * [`constructions`]: fixtures, Cauchy matrices, the `L = 0`
//!   counterexample family and small-field MDP search.

pub mod code;
pub mod constructions;
pub mod error;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod poly_matrix;
pub mod theorems;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use linalg::Matrix;
pub use poly::Poly;
pub use poly_matrix::PolyMatrix;
