//! The quantum exterior algebra `V(n)` spanned by `e+_I ^ e-_J`.

mod form;
mod monomial;
mod rewrite;

pub use form::{check_rank, FiberForm};
pub use monomial::{basis_all, basis_bidegree, basis_degree, bidegrees_of_degree, BasisMonomial, MAX_RANK};
