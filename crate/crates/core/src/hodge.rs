//! The Hodge map, `vol`, the metric, Gram blocks and adjoints.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fiber::{basis_bidegree, check_rank, BasisMonomial, FiberForm};
use crate::lefschetz::{lefschetz, lefschetz_decompose, lefschetz_pow};
use crate::linalg::{ldl_hermitian, LdlCertificate, Matrix};
use crate::operator::{Bidegree, GradedOperator};
use crate::scalar::{qfact, HodgeMode, Scalar};

fn parity_sign(e: usize) -> Scalar {
    if e.is_multiple_of(2) {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    }
}

/// The coefficient in `*(L^j a) = c L^(n-j-k) a` for primitive `a` of
/// bidegree `(a, b)`, `k = a + b`.
pub fn weil_coefficient(n: usize, j: usize, a: usize, b: usize, mode: &HodgeMode) -> Scalar {
    let k = a + b;
    let sign = parity_sign(k * (k + 1) / 2);
    let phase = Scalar::i_pow(a as i64 - b as i64);
    let ratio = qfact(j as i64, mode).unwrap().checked_div(&qfact((n - j - k) as i64, mode).unwrap()).unwrap();
    &(&sign * &phase) * &ratio
}

/// The Hodge map, computed from the Lefschetz decomposition of each
/// bidegree component.
pub fn hodge(u: &FiberForm, mode: &HodgeMode) -> Result<FiberForm> {
    let n = u.rank();
    check_rank(n)?;
    let mut out = FiberForm::zero(n);
    for (_, part) in u.bidegree_split() {
        for (j, alpha) in lefschetz_decompose(&part)?.parts {
            let (a, b) = alpha.homogeneous_bidegree().expect("primitive parts are bihomogeneous");
            let k = a + b;
            let c = weil_coefficient(n, j, a, b, mode);
            out = &out + &lefschetz_pow(&alpha, n - j - k).scale(&c);
        }
    }
    Ok(out)
}

/// `*^-1 = (-1)^k *` on `V^k`.
pub fn hodge_inverse(u: &FiberForm, mode: &HodgeMode) -> Result<FiberForm> {
    let mut out = FiberForm::zero(u.rank());
    for (k, part) in u.degree_split() {
        out = &out + &hodge(&part, mode)?.scale(&parity_sign(k));
    }
    Ok(out)
}

/// Top coefficient times `i^-(n mod 2)`; only defined on `V^2n`.
pub fn vol(u: &FiberForm) -> Result<Scalar> {
    let n = u.rank();
    if !u.is_zero() {
        match u.homogeneous_degree() {
            Some(d) if d == 2 * n => {}
            Some(d) => return Err(Error::WrongDegree { expected: 2 * n, found: d }),
            None => return Err(Error::NotHomogeneous),
        }
    }
    Ok(&u.top_coeff() * &Scalar::i_pow(-((n % 2) as i64)))
}

/// `g(u, v) = vol(u ^ *(v^*))`, taken on the top-degree part so that forms
/// of different degrees pair to zero.
pub fn metric(u: &FiberForm, v: &FiberForm, mode: &HodgeMode) -> Result<Scalar> {
    if u.rank() != v.rank() {
        return Err(Error::RankMismatch(u.rank(), v.rank()));
    }
    let n = u.rank();
    let w = u.wedge(&hodge(&v.star(), mode)?)?;
    Ok(&w.top_coeff() * &Scalar::i_pow(-((n % 2) as i64)))
}

/// The Gram matrix of the metric on one bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramBlock {
    pub n: usize,
    pub bidegree: Bidegree,
    pub basis: Vec<BasisMonomial>,
    pub matrix: Matrix,
}

impl GramBlock {
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<Vec<String>> = (0..self.matrix.rows())
            .map(|i| (0..self.matrix.cols()).map(|j| self.matrix.get(i, j).to_string()).collect())
            .collect();
        json!({
            "bidegree": [self.bidegree.0, self.bidegree.1],
            "basis": self.basis.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "entries": entries,
        })
    }

    /// `G_rs = conj(G_sr)`, exactly.
    pub fn is_conjugate_symmetric(&self) -> bool {
        self.matrix == self.matrix.conj_transpose()
    }
}

type ModeKey = (usize, HodgeMode);
type GramCache = Mutex<HashMap<(usize, Bidegree, HodgeMode), Arc<GramBlock>>>;
type OperatorCache = Mutex<HashMap<(&'static str, ModeKey), Arc<GradedOperator>>>;

fn gram_cache() -> &'static GramCache {
    static CACHE: OnceLock<GramCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn gram(n: usize, a: usize, b: usize, mode: &HodgeMode) -> Result<Arc<GramBlock>> {
    check_rank(n)?;
    if a > n || b > n {
        return Err(Error::BidegreeOutOfRange(a, b));
    }
    let key = (n, (a, b), mode.clone());
    if let Some(hit) = gram_cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let basis = basis_bidegree(n, a, b);
    let forms: Vec<FiberForm> = basis.iter().map(|m| FiberForm::monomial(n, *m, Scalar::one())).collect();
    let images: Vec<FiberForm> = forms.iter().map(|v| hodge(&v.star(), mode)).collect::<Result<_>>()?;
    let sign = Scalar::i_pow(-((n % 2) as i64));
    let mut matrix = Matrix::zeros(basis.len(), basis.len());
    for (r, u) in forms.iter().enumerate() {
        for (s, w) in images.iter().enumerate() {
            let top = u.wedge(w)?.top_coeff();
            matrix.set(r, s, &top * &sign);
        }
    }
    let block = Arc::new(GramBlock { n, bidegree: (a, b), basis, matrix });
    gram_cache().lock().unwrap().insert(key, block.clone());
    Ok(block)
}

/// Exact positive-definiteness certificate of a Gram block at `q = q0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosdefCertificate {
    pub bidegree: Bidegree,
    pub q0: BigRational,
    pub ldl: LdlCertificate,
}

impl PosdefCertificate {
    pub fn verdict(&self) -> bool {
        self.ldl.positive_definite
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "bidegree": [self.bidegree.0, self.bidegree.1],
            "q0": self.q0.to_string(),
            "pivots": self.ldl.pivots.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "verdict": self.ldl.positive_definite,
        })
    }
}

pub fn certify_posdef(block: &GramBlock, q0: &BigRational) -> Result<PosdefCertificate> {
    let values = block.matrix.evaluate(q0)?;
    Ok(PosdefCertificate { bidegree: block.bidegree, q0: q0.clone(), ldl: ldl_hermitian(&values)? })
}

fn operator_cache() -> &'static OperatorCache {
    static CACHE: OnceLock<OperatorCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached_operator(
    name: &'static str,
    n: usize,
    mode: &HodgeMode,
    build: impl FnOnce() -> Result<GradedOperator>,
) -> Result<Arc<GradedOperator>> {
    check_rank(n)?;
    let key = (name, (n, mode.clone()));
    if let Some(hit) = operator_cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let op = Arc::new(build()?);
    operator_cache().lock().unwrap().insert(key, op.clone());
    Ok(op)
}

/// The Hodge map as a graded operator.
pub fn hodge_operator(n: usize, mode: &HodgeMode) -> Result<Arc<GradedOperator>> {
    cached_operator("hodge", n, mode, || GradedOperator::try_from_fn(n, |u| hodge(u, mode)))
}

/// The Lefschetz operator `L` as a graded operator; independent of the mode.
pub fn lefschetz_operator(n: usize) -> Result<Arc<GradedOperator>> {
    cached_operator("L", n, &HodgeMode::HEqOne, || Ok(GradedOperator::from_fn(n, lefschetz)))
}

/// `Lambda = *^-1 L *`.
pub fn dual_lefschetz_operator(n: usize, mode: &HodgeMode) -> Result<Arc<GradedOperator>> {
    cached_operator("Lambda", n, mode, || {
        let star = hodge_operator(n, mode)?;
        let inv = star.scale_source(|(a, b)| parity_sign(a + b));
        let l = lefschetz_operator(n)?;
        Ok(inv.compose(&l.compose(&star)))
    })
}

pub fn dual_lefschetz(u: &FiberForm, mode: &HodgeMode) -> Result<FiberForm> {
    dual_lefschetz_operator(u.rank(), mode)?.apply(u)
}

/// The metric adjoint `M^+`, `<M u, v> = <u, M^+ v>`, block by block:
/// `B = conj(G_src^-1 A^T G_tgt)` for a block `A: V^src -> V^tgt`.
pub fn adjoint(m: &GradedOperator, mode: &HodgeMode) -> Result<GradedOperator> {
    let n = m.rank();
    let mut out = GradedOperator::zero(n);
    for ((src, tgt), a) in m.blocks() {
        let gs = gram(n, src.0, src.1, mode)?;
        let gt = gram(n, tgt.0, tgt.1, mode)?;
        let gs_inv = gs.matrix.inverse().map_err(|_| Error::SingularGram(src.0, src.1))?;
        let b = (&(&gs_inv * &a.transpose()) * &gt.matrix).conj();
        let prev = out.block(*tgt, *src).cloned();
        let b = match prev {
            Some(p) => &p + &b,
            None => b,
        };
        out.insert(*tgt, *src, b);
    }
    Ok(out)
}
