//! The gl_N Gaudin model at desk scale. The Bethe algebra acts on `V^{⊗n}`;
//! its eigenvectors come from critical points of the master function, and
//! those match points of a Schubert cell.
//!
//! Numeric types are generic over a real scalar `R: Real` (`f32` or `f64`);
//! the aliases at the crate root fix `R = f64`. Graded characters use exact
//! integer q-series generic over the integer type.

pub mod averaging;
pub mod bethe;
pub mod characters;
pub mod error;
pub mod json;
pub mod linalg;
pub mod master;
pub mod poly;
pub mod ratfn;
pub mod repr;
pub mod scalar;
pub mod schubert;
pub mod weightfn;

pub use error::{GaudinError, Result};
pub use scalar::{Cx, Real};

pub type C64 = Cx<f64>;
pub type Polynomial64 = poly::Polynomial<f64>;
pub type RationalFn64 = ratfn::RationalFn<f64>;
pub type SymPoly64 = averaging::SymPolyF<f64>;
