//! Shared fixtures for the benchmarks.

use qkahler::fiber::basis_degree;
use qkahler::{FiberForm, Scalar};

/// Sum of every monomial of degree `k` with coefficients `q^i`, a dense
/// input for wedge and Hodge benchmarks.
pub fn dense_form(n: usize, k: usize) -> FiberForm {
    let mut out = FiberForm::zero(n);
    for (i, m) in basis_degree(n, k).into_iter().enumerate() {
        out.add_term(m, Scalar::q_pow(i as i64 % 5 - 2));
    }
    out
}
