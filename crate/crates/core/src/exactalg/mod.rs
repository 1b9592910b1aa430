//! Exact arithmetic: rationals, Laurent polynomials in `v`, multivariate
//! Laurent polynomials over them, and truncated power series in `Y`.

mod coeff;
mod json;
mod linalg;
mod series;
mod sym;
mod vlaurent;

pub use coeff::Coeff;
pub use json::{rational_vec, SymTermJson, VLaurentJson};
pub use linalg::{det, det_rational, rank_over_fraction_field};
pub use series::TruncSeries;
pub use sym::SymLaurent;
pub use vlaurent::{format_rational, parse_rational, rational_powi as rational_pow, VLaurent};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for a small rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
