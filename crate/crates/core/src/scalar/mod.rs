//! Exact coefficient arithmetic in `Q(i)(q)` and quantum combinatorics.

mod field;
mod gaussian;
mod laurent;
mod parse;
mod qnum;

pub use field::Scalar;
pub use gaussian::GaussianRational;
pub use laurent::LaurentPoly;
pub use qnum::{parse_sample_point, qbinom, qfact, qint, qint_signed, HodgeMode};
