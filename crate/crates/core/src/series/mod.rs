//! Exact polynomial and power-series algebra, the degree-raising operators on
//! homogeneous bivariate polynomials, and verifiers for the generating-function
//! identities satisfied by the Eulerian triangles.

mod bivariate;
mod poly;
mod truncated;
pub mod verify;

pub use bivariate::{apply_operator, HomogeneousBivariate, Operator};
pub use poly::{ExactPolynomial, PolynomialJson};
pub use truncated::{series_inverse_power, TruncatedSeries};
pub use verify::{Mismatch, Verification};

/// Default truncation order for `u`-series.
pub const DEFAULT_ORDER: usize = 32;

/// Default bound on `k` for coefficient checks in `t`-series.
pub const DEFAULT_COEFF_BOUND: usize = 24;
