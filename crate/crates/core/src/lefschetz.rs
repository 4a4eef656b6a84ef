//! The Lefschetz operator, primitive forms and the Lefschetz decomposition.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::fiber::{basis_bidegree, basis_degree, check_rank, BasisMonomial, FiberForm};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// `L(u) = kappa ^ u`.
pub fn lefschetz(u: &FiberForm) -> FiberForm {
    FiberForm::kappa(u.rank()).wedge(u).expect("same rank")
}

/// `L^j(u)`.
pub fn lefschetz_pow(u: &FiberForm, j: usize) -> FiberForm {
    let mut out = u.clone();
    for _ in 0..j {
        if out.is_zero() {
            break;
        }
        out = lefschetz(&out);
    }
    out
}

/// Matrix of a linear map from `src` to `tgt`, one column per source monomial.
pub fn operator_matrix(
    n: usize,
    src: &[BasisMonomial],
    tgt: &[BasisMonomial],
    f: impl Fn(&FiberForm) -> FiberForm,
) -> Matrix {
    let cols: Vec<Vec<Scalar>> =
        src.iter().map(|m| f(&FiberForm::monomial(n, *m, Scalar::one())).coords(tgt)).collect();
    Matrix::from_columns(tgt.len(), &cols)
}

type PrimKey = (usize, usize, usize);

fn primitive_cache() -> &'static Mutex<HashMap<PrimKey, Arc<Vec<FiberForm>>>> {
    static CACHE: OnceLock<Mutex<HashMap<PrimKey, Arc<Vec<FiberForm>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Basis of `P^(a,b) = ker L^(n-k+1)` on `V^(a,b)`, `k = a + b`.
///
/// Each vector comes from the reduced echelon form of the matrix of
/// `L^(n-k+1)` (pivots in monomial order) and is scaled so that its first
/// nonzero coefficient is 1. Empty when `a + b > n`.
pub fn primitive_basis(n: usize, a: usize, b: usize) -> Result<Arc<Vec<FiberForm>>> {
    check_rank(n)?;
    if a > n || b > n {
        return Err(Error::BidegreeOutOfRange(a, b));
    }
    let key = (n, a, b);
    if let Some(hit) = primitive_cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let k = a + b;
    let basis = if k > n {
        Vec::new()
    } else {
        let power = n - k + 1;
        let src = basis_bidegree(n, a, b);
        let tgt = basis_bidegree(n, a + power, b + power);
        let m = operator_matrix(n, &src, &tgt, |u| lefschetz_pow(u, power));
        m.kernel().iter().map(|v| FiberForm::from_coords(n, &src, v)).collect()
    };
    let basis = Arc::new(basis);
    primitive_cache().lock().unwrap().insert(key, basis.clone());
    Ok(basis)
}

/// Primitive basis of total degree `k`, concatenated over bidegrees.
pub fn primitive_basis_degree(n: usize, k: usize) -> Result<Vec<FiberForm>> {
    let mut out = Vec::new();
    for (a, b) in crate::fiber::bidegrees_of_degree(n, k) {
        out.extend(primitive_basis(n, a, b)?.iter().cloned());
    }
    Ok(out)
}

/// `dim P^(a,b)` for every bidegree with `a + b <= n`.
pub fn primitive_dims(n: usize) -> Result<BTreeMap<(usize, usize), usize>> {
    let mut out = BTreeMap::new();
    for k in 0..=n {
        for (a, b) in crate::fiber::bidegrees_of_degree(n, k) {
            out.insert((a, b), primitive_basis(n, a, b)?.len());
        }
    }
    Ok(out)
}

/// The pieces `(j, alpha_j)` of a form `u = sum_j L^j(alpha_j)` with each
/// `alpha_j` primitive. Zero pieces are omitted; levels increase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzComponents {
    pub rank: usize,
    pub degree: usize,
    pub parts: Vec<(usize, FiberForm)>,
}

impl LefschetzComponents {
    /// `sum_j L^j(alpha_j)`.
    pub fn recombine(&self) -> FiberForm {
        let mut out = FiberForm::zero(self.rank);
        for (j, alpha) in &self.parts {
            out = &out + &lefschetz_pow(alpha, *j);
        }
        out
    }

    pub fn level(&self, j: usize) -> FiberForm {
        self.parts.iter().find(|(l, _)| *l == j).map(|(_, a)| a.clone()).unwrap_or_else(|| FiberForm::zero(self.rank))
    }
}

/// Change of basis on `V^(a,b)` to `{L^j p}` with `p` running over the
/// primitive bases of `P^(a-j,b-j)`.
struct DecompositionBlock {
    /// `(j, primitive form)` for each new basis vector, in column order.
    columns: Vec<(usize, FiberForm)>,
    /// Inverse of the matrix whose columns are the `L^j p` in monomial coordinates.
    inverse: Matrix,
}

fn block_cache() -> &'static Mutex<HashMap<PrimKey, Arc<DecompositionBlock>>> {
    static CACHE: OnceLock<Mutex<HashMap<PrimKey, Arc<DecompositionBlock>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The pairs `(j, primitive bidegree)` that contribute to `V^(a,b)`.
pub fn lefschetz_levels(n: usize, a: usize, b: usize) -> Vec<(usize, (usize, usize))> {
    (0..=a.min(b))
        .filter_map(|j| {
            let (pa, pb) = (a - j, b - j);
            let k = pa + pb;
            (k <= n && j <= n - k).then_some((j, (pa, pb)))
        })
        .collect()
}

fn decomposition_block(n: usize, a: usize, b: usize) -> Result<Arc<DecompositionBlock>> {
    let key = (n, a, b);
    if let Some(hit) = block_cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let basis = basis_bidegree(n, a, b);
    let mut columns = Vec::new();
    let mut coords = Vec::new();
    for (j, (pa, pb)) in lefschetz_levels(n, a, b) {
        for p in primitive_basis(n, pa, pb)?.iter() {
            coords.push(lefschetz_pow(p, j).coords(&basis));
            columns.push((j, p.clone()));
        }
    }
    if columns.len() != basis.len() {
        return Err(Error::RankMismatch(columns.len(), basis.len()));
    }
    let inverse = Matrix::from_columns(basis.len(), &coords).inverse()?;
    let block = Arc::new(DecompositionBlock { columns, inverse });
    block_cache().lock().unwrap().insert(key, block.clone());
    Ok(block)
}

/// Lefschetz decomposition of a form homogeneous in degree.
pub fn lefschetz_decompose(u: &FiberForm) -> Result<LefschetzComponents> {
    let n = u.rank();
    check_rank(n)?;
    let k = u.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let mut levels: BTreeMap<usize, FiberForm> = BTreeMap::new();
    for ((a, b), part) in u.bidegree_split() {
        let block = decomposition_block(n, a, b)?;
        let basis = basis_bidegree(n, a, b);
        let c = block.inverse.mul_vec(&part.coords(&basis));
        for ((j, p), x) in block.columns.iter().zip(c) {
            if x.is_zero() {
                continue;
            }
            let slot = levels.entry(*j).or_insert_with(|| FiberForm::zero(n));
            *slot = &*slot + &p.scale(&x);
        }
    }
    let parts = levels.into_iter().filter(|(_, f)| !f.is_zero()).collect();
    Ok(LefschetzComponents { rank: n, degree: k, parts })
}

/// Outcome of checking that `L^(n-k): V^k -> V^(2n-k)` is invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoReport {
    pub n: usize,
    pub k: usize,
    pub dim: usize,
    pub rank: usize,
    pub determinant: Scalar,
}

impl IsoReport {
    pub fn full_rank(&self) -> bool {
        self.rank == self.dim
    }
}

pub fn verify_lefschetz_iso(n: usize, k: usize) -> Result<IsoReport> {
    check_rank(n)?;
    if k >= n {
        return Err(Error::WrongDegree { expected: n.saturating_sub(1), found: k });
    }
    let src = basis_degree(n, k);
    let tgt = basis_degree(n, 2 * n - k);
    let m = operator_matrix(n, &src, &tgt, |u| lefschetz_pow(u, n - k));
    let e = m.echelon();
    let determinant = m.determinant()?;
    Ok(IsoReport { n, k, dim: src.len(), rank: e.rank(), determinant })
}
