//! Exact symbolic Kähler geometry on the fiber exterior algebra of the
//! covariant differential calculus over quantum projective space.

pub mod error;
pub mod fiber;
pub mod hodge;
pub mod lefschetz;
pub mod linalg;
pub mod operator;
pub mod scalar;
pub mod sl2;
pub mod su2;
pub mod verify;

pub use error::{Error, Result};
pub use fiber::{BasisMonomial, FiberForm};
pub use scalar::{GaussianRational, HodgeMode, LaurentPoly, Scalar};
