//! Counting operators, the deformed Lefschetz identities and the
//! decomposition of `V(n)` into `U_h(sl2)` strings.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fiber::{basis_degree, check_rank, FiberForm};
use crate::hodge::{dual_lefschetz_operator, lefschetz_operator, metric};
use crate::lefschetz::{lefschetz_pow, primitive_basis, primitive_basis_degree, LefschetzComponents};
use crate::operator::GradedOperator;
use crate::scalar::{qint_signed, HodgeMode, Scalar};

/// `H = [k - n]_h` on `V^k`.
pub fn counting_h(n: usize, mode: &HodgeMode) -> GradedOperator {
    GradedOperator::diagonal(n, |(a, b)| qint_signed((a + b) as i64 - n as i64, mode))
}

/// `K = h^(k - n)` on `V^k`.
pub fn counting_k(n: usize, mode: &HodgeMode) -> GradedOperator {
    GradedOperator::diagonal(n, |(a, b)| mode.h_pow((a + b) as i64 - n as i64))
}

pub fn counting_k_inverse(n: usize, mode: &HodgeMode) -> GradedOperator {
    GradedOperator::diagonal(n, |(a, b)| mode.h_pow(n as i64 - (a + b) as i64))
}

/// How a relation relates to the reference statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// Checked exactly as stated.
    Stated,
    /// A corrected form, derived from the quantum-integer arithmetic.
    Corrected,
}

/// Outcome of one operator identity on one source degree.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub relation: &'static str,
    pub kind: RelationKind,
    pub degree: usize,
    pub holds: bool,
    /// `(input, lhs, rhs)` on the first basis monomial where the sides differ.
    pub witness: Option<(FiberForm, FiberForm, FiberForm)>,
}

pub const REL_HL: &str = "[H,L]_{h^-2} = [2]_h L K";
pub const REL_LLAMBDA: &str = "[L,Lambda] = H";
pub const REL_HLAMBDA: &str = "[H,Lambda]_{h^2} = -[2]_{h^2} K Lambda";
pub const REL_HLAMBDA_CORRECTED: &str = "[H,Lambda]_{h^2} = -h^2 [2]_h K Lambda";
pub const REL_KE: &str = "K E K^-1 = h^2 E";
pub const REL_KF: &str = "K F K^-1 = h^-2 F";
pub const REL_EF: &str = "[E,F] = (K - K^-1)/(h - h^-1)";

fn check_by_degree(
    n: usize,
    relation: &'static str,
    kind: RelationKind,
    lhs: &GradedOperator,
    rhs: &GradedOperator,
    out: &mut Vec<RelationCheck>,
) {
    for k in 0..=2 * n {
        let l = lhs.restrict_degree(k);
        let r = rhs.restrict_degree(k);
        let holds = l == r;
        let witness = if holds { None } else { l.witness_difference(&r) };
        out.push(RelationCheck { relation, kind, degree: k, holds, witness });
    }
}

/// The three Lefschetz identities, the corrected third identity, and the
/// `U_h(sl2)` relations for `E = L`, `F = Lambda`, each checked as an exact
/// matrix identity on every source degree. The commutator relation `[E,F]`
/// is skipped when `h = 1`.
pub fn verify_lefschetz_identities(n: usize, mode: &HodgeMode) -> Result<Vec<RelationCheck>> {
    check_rank(n)?;
    let l = lefschetz_operator(n)?;
    let lam = dual_lefschetz_operator(n, mode)?;
    let h = counting_h(n, mode);
    let k = counting_k(n, mode);
    let k_inv = counting_k_inverse(n, mode);
    let two = qint_signed(2, mode);
    let h2 = mode.h_pow(2);
    let hm2 = mode.h_pow(-2);
    let two_h2 = &h2 + &hm2;
    let mut out = Vec::new();

    let lhs = h.compose(&l).sub(&l.compose(&h).scale(&hm2));
    check_by_degree(n, REL_HL, RelationKind::Stated, &lhs, &l.compose(&k).scale(&two), &mut out);

    let lhs = l.compose(&lam).sub(&lam.compose(&l));
    check_by_degree(n, REL_LLAMBDA, RelationKind::Stated, &lhs, &h, &mut out);

    let lhs = h.compose(&lam).sub(&lam.compose(&h).scale(&h2));
    let k_lam = k.compose(&lam);
    check_by_degree(n, REL_HLAMBDA, RelationKind::Stated, &lhs, &k_lam.scale(&-two_h2), &mut out);
    check_by_degree(n, REL_HLAMBDA_CORRECTED, RelationKind::Corrected, &lhs, &k_lam.scale(&-(&h2 * &two)), &mut out);

    let lhs = k.compose(&l).compose(&k_inv);
    check_by_degree(n, REL_KE, RelationKind::Stated, &lhs, &l.scale(&h2), &mut out);
    let lhs = k.compose(&lam).compose(&k_inv);
    check_by_degree(n, REL_KF, RelationKind::Stated, &lhs, &lam.scale(&hm2), &mut out);
    if !mode.is_classical() {
        let lhs = l.compose(&lam).sub(&lam.compose(&l));
        let denom = &mode.h() - &mode.h_pow(-1);
        let rhs = k.sub(&k_inv).scale(&denom.inv()?);
        check_by_degree(n, REL_EF, RelationKind::Stated, &lhs, &rhs, &mut out);
    }
    Ok(out)
}

/// An irreducible string `{L^j seed : 0 <= j <= n - k}`.
#[derive(Clone, Debug)]
pub struct Sl2String {
    pub seed: FiberForm,
    pub bidegree: (usize, usize),
    pub degree: usize,
    pub members: Vec<FiberForm>,
}

impl Sl2String {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Gram-Schmidt in the metric; the inputs must span a space on which the
/// metric is nondegenerate.
pub fn orthogonalize(forms: &[FiberForm], mode: &HodgeMode) -> Result<Vec<FiberForm>> {
    let mut out: Vec<(FiberForm, Scalar)> = Vec::new();
    for v in forms {
        let mut w = v.clone();
        for (u, norm) in &out {
            let c = metric(v, u, mode)?.checked_div(norm)?;
            w = &w - &u.scale(&c);
        }
        let norm = metric(&w, &w, mode)?;
        if norm.is_zero() {
            return Err(Error::SingularGram(w.len(), 0));
        }
        out.push((w, norm));
    }
    Ok(out.into_iter().map(|(w, _)| w).collect())
}

/// Strings seeded on metric-orthogonalised primitive bases.
pub fn string_decomposition(n: usize, mode: &HodgeMode) -> Result<Vec<Sl2String>> {
    check_rank(n)?;
    let mut out = Vec::new();
    for k in 0..=n {
        for (a, b) in crate::fiber::bidegrees_of_degree(n, k) {
            let prim = primitive_basis(n, a, b)?;
            for seed in orthogonalize(&prim, mode)? {
                let members = (0..=n - k).map(|j| lefschetz_pow(&seed, j)).collect();
                out.push(Sl2String { seed, bidegree: (a, b), degree: k, members });
            }
        }
    }
    Ok(out)
}

/// `prod_{t=1..m} [t]_h [n - t - k + 1]_h`, the scalar with
/// `Lambda^m L^m a = c a` for primitive `a` of degree `k`.
pub fn extraction_constant(n: usize, m: usize, k: usize, mode: &HodgeMode) -> Scalar {
    (1..=m)
        .map(|t| &qint_signed(t as i64, mode) * &qint_signed(n as i64 - t as i64 - k as i64 + 1, mode))
        .product()
}

/// Lefschetz decomposition by repeated application of `Lambda`, from the
/// highest level down.
pub fn decompose_via_lambda(u: &FiberForm, mode: &HodgeMode) -> Result<LefschetzComponents> {
    let n = u.rank();
    check_rank(n)?;
    let k = u.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let lam: Arc<GradedOperator> = dual_lefschetz_operator(n, mode)?;
    let mut residual = u.clone();
    let mut parts = Vec::new();
    let lowest = k.saturating_sub(n);
    for m in (lowest..=k / 2).rev() {
        let mut w = residual.clone();
        for _ in 0..m {
            w = lam.apply(&w)?;
        }
        let c = extraction_constant(n, m, k - 2 * m, mode);
        let alpha = w.scale(&c.inv()?);
        if !alpha.is_zero() {
            residual = &residual - &lefschetz_pow(&alpha, m);
            parts.push((m, alpha));
        }
    }
    if !residual.is_zero() {
        return Err(Error::NotHomogeneous);
    }
    parts.reverse();
    Ok(LefschetzComponents { rank: n, degree: k, parts })
}

/// One failed instance of `Lambda L^j a = [j]_h [n-j-k+1]_h L^(j-1) a`.
#[derive(Clone, Debug)]
pub struct LambdaLjFailure {
    pub alpha: FiberForm,
    pub j: usize,
    pub lhs: FiberForm,
    pub rhs: FiberForm,
}

/// Checks the formula on every primitive basis vector; returns the number of
/// instances checked and any failures.
pub fn verify_lambda_lj(n: usize, mode: &HodgeMode) -> Result<(usize, Vec<LambdaLjFailure>)> {
    let lam = dual_lefschetz_operator(n, mode)?;
    let mut count = 0;
    let mut failures = Vec::new();
    for k in 0..=n {
        for alpha in primitive_basis_degree(n, k)? {
            for j in 1..=n - k {
                let lhs = lam.apply(&lefschetz_pow(&alpha, j))?;
                let c = &qint_signed(j as i64, mode) * &qint_signed((n - j - k + 1) as i64, mode);
                let rhs = lefschetz_pow(&alpha, j - 1).scale(&c);
                count += 1;
                if lhs != rhs {
                    failures.push(LambdaLjFailure { alpha: alpha.clone(), j, lhs, rhs });
                }
            }
        }
    }
    Ok((count, failures))
}

/// Per degree: `(k, dim ker Lambda|V^k, dim P^k, Lambda kills the primitive basis)`.
pub fn primitive_kernel_table(n: usize, mode: &HodgeMode) -> Result<Vec<(usize, usize, usize, bool)>> {
    let lam = dual_lefschetz_operator(n, mode)?;
    let mut out = Vec::new();
    for k in 0..=2 * n {
        let dim = basis_degree(n, k).len();
        let ker = if k < 2 {
            dim
        } else {
            dim - lam.degree_matrix(k, k - 2).rank()
        };
        let prim = if k <= n { primitive_basis_degree(n, k)? } else { Vec::new() };
        let killed = prim.iter().map(|p| lam.apply(p)).collect::<Result<Vec<_>>>()?.iter().all(FiberForm::is_zero);
        out.push((k, ker, prim.len(), killed));
    }
    Ok(out)
}
