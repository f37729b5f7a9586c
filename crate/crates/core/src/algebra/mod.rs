//! Exact coefficient arithmetic: marker polynomials, truncated series in `x`,
//! and the series solvers behind every closed form.

mod poly;
mod series;
mod solve;

pub use poly::{Marker, Monomial, MultiPoly};
pub(crate) use poly::rat;
pub use series::TruncatedSeries;
pub use solve::{catalan_series, quadratic_residual, solve_poly_functional, solve_quadratic};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 24;
