//! Exact combinatorics of adsorbing prudent walks on the square lattice:
//! enumeration, generating functions built by the iterated kernel method,
//! directed reference models and the numerical phase analysis built on them.

pub mod baselines;
pub mod error;
pub mod io;
pub mod kernel;
pub mod phase;
pub mod poly;
pub mod prudent;
pub mod series;
pub mod weight;

pub use error::{AlgebraError, ComputeError, LimitError};
pub use poly::{Monomial, Poly, Rational, Var};
pub use weight::Weight;
pub use series::Series;
