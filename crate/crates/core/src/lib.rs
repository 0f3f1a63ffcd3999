//! Exact Schur-type determinants, pseudo-pfaffians, their tableau and
//! lattice-path formulas, and the type A and type C operators acting on them.

pub mod det;
pub mod pfaffian;
pub mod error;
pub mod lgv;
pub mod operators;
pub mod ring;
pub mod schubert;
pub mod schur;
pub mod series;
pub mod shapes;
pub mod tableaux;
pub mod verify;

pub use error::{Error, Result};
pub use ring::{Integer, Monomial, Poly, Var};
pub use series::ChernSeries;
