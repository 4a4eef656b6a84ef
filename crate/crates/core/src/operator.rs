//! Linear maps on `V(n)` stored as blocks between bidegrees.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fiber::{basis_all, basis_bidegree, basis_degree, BasisMonomial, FiberForm};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub type Bidegree = (usize, usize);

/// A linear map on `V(n)`. The block at `(src, tgt)` has one column per
/// monomial of `V^src` and one row per monomial of `V^tgt`; zero blocks are
/// not stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedOperator {
    n: usize,
    blocks: BTreeMap<(Bidegree, Bidegree), Matrix>,
}

impl GradedOperator {
    pub fn zero(n: usize) -> Self {
        Self { n, blocks: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(n, |_| Scalar::one())
    }

    /// `c(a,b) * id` on each `V^(a,b)`.
    pub fn diagonal(n: usize, c: impl Fn(Bidegree) -> Scalar) -> Self {
        let mut out = Self::zero(n);
        for a in 0..=n {
            for b in 0..=n {
                let s = c((a, b));
                let dim = basis_bidegree(n, a, b).len();
                out.insert((a, b), (a, b), Matrix::identity(dim).scale(&s));
            }
        }
        out
    }

    /// Tabulate `f` on every basis monomial.
    pub fn from_fn(n: usize, f: impl Fn(&FiberForm) -> FiberForm) -> Self {
        Self::try_from_fn(n, |u| Ok(f(u))).expect("infallible")
    }

    pub fn try_from_fn(n: usize, f: impl Fn(&FiberForm) -> Result<FiberForm>) -> Result<Self> {
        let mut images: BTreeMap<Bidegree, Vec<FiberForm>> = BTreeMap::new();
        for m in basis_all(n) {
            images.entry(m.bidegree()).or_default().push(f(&FiberForm::monomial(n, m, Scalar::one()))?);
        }
        let mut out = Self::zero(n);
        for (src, imgs) in images {
            let mut targets: BTreeMap<Bidegree, Vec<Vec<Scalar>>> = BTreeMap::new();
            for img in &imgs {
                for tgt in img.bidegree_split().keys() {
                    targets.entry(*tgt).or_default();
                }
            }
            for (tgt, cols) in targets.iter_mut() {
                let tb = basis_bidegree(n, tgt.0, tgt.1);
                for img in &imgs {
                    cols.push(img.coords(&tb));
                }
                out.insert(src, *tgt, Matrix::from_columns(tb.len(), cols));
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Store a block; zero blocks are dropped.
    pub fn insert(&mut self, src: Bidegree, tgt: Bidegree, m: Matrix) {
        if m.is_zero() {
            self.blocks.remove(&(src, tgt));
        } else {
            self.blocks.insert((src, tgt), m);
        }
    }

    pub fn block(&self, src: Bidegree, tgt: Bidegree) -> Option<&Matrix> {
        self.blocks.get(&(src, tgt))
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&(Bidegree, Bidegree), &Matrix)> {
        self.blocks.iter()
    }

    pub fn apply(&self, u: &FiberForm) -> Result<FiberForm> {
        if u.rank() != self.n {
            return Err(Error::RankMismatch(self.n, u.rank()));
        }
        let mut out = FiberForm::zero(self.n);
        for (src, part) in u.bidegree_split() {
            let x = part.coords(&basis_bidegree(self.n, src.0, src.1));
            for ((_, tgt), m) in self.blocks.range((src, (0, 0))..=(src, (usize::MAX, usize::MAX))) {
                let y = m.mul_vec(&x);
                out = &out + &FiberForm::from_coords(self.n, &basis_bidegree(self.n, tgt.0, tgt.1), &y);
            }
        }
        Ok(out)
    }

    /// `self o other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "rank mismatch");
        let mut acc: BTreeMap<(Bidegree, Bidegree), Matrix> = BTreeMap::new();
        for ((s, m), b) in &other.blocks {
            for ((_, t), a) in self.blocks.range((*m, (0, 0))..=(*m, (usize::MAX, usize::MAX))) {
                let p = a * b;
                match acc.get_mut(&(*s, *t)) {
                    Some(x) => *x = &*x + &p,
                    None => {
                        acc.insert((*s, *t), p);
                    }
                }
            }
        }
        let mut out = Self::zero(self.n);
        for ((s, t), m) in acc {
            out.insert(s, t, m);
        }
        out
    }

    fn combine(&self, other: &Self, sign: &Scalar) -> Self {
        assert_eq!(self.n, other.n, "rank mismatch");
        let mut out = self.clone();
        for (key, m) in &other.blocks {
            let m = m.scale(sign);
            let new = match out.blocks.get(key) {
                Some(x) => x + &m,
                None => m,
            };
            out.insert(key.0, key.1, new);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, &Scalar::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, &Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        for ((s, t), m) in &self.blocks {
            out.insert(*s, *t, m.scale(c));
        }
        out
    }

    /// Right multiplication by a map that is scalar on each bidegree:
    /// `self o diag(c)`.
    pub fn scale_source(&self, c: impl Fn(Bidegree) -> Scalar) -> Self {
        let mut out = Self::zero(self.n);
        for ((s, t), m) in &self.blocks {
            out.insert(*s, *t, m.scale(&c(*s)));
        }
        out
    }

    /// `diag(c) o self`.
    pub fn scale_target(&self, c: impl Fn(Bidegree) -> Scalar) -> Self {
        let mut out = Self::zero(self.n);
        for ((s, t), m) in &self.blocks {
            out.insert(*s, *t, m.scale(&c(*t)));
        }
        out
    }

    /// The restriction to sources of total degree `k`.
    pub fn restrict_degree(&self, k: usize) -> Self {
        let mut out = Self::zero(self.n);
        for ((s, t), m) in &self.blocks {
            if s.0 + s.1 == k {
                out.insert(*s, *t, m.clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The map `V^k -> V^l` as one matrix over the degree bases.
    pub fn degree_matrix(&self, k: usize, l: usize) -> Matrix {
        let src = basis_degree(self.n, k);
        let tgt = basis_degree(self.n, l);
        let row_of: BTreeMap<BasisMonomial, usize> = tgt.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let col_of: BTreeMap<BasisMonomial, usize> = src.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut out = Matrix::zeros(tgt.len(), src.len());
        for ((s, t), m) in &self.blocks {
            if s.0 + s.1 != k || t.0 + t.1 != l {
                continue;
            }
            let sb = basis_bidegree(self.n, s.0, s.1);
            let tb = basis_bidegree(self.n, t.0, t.1);
            for (j, sm) in sb.iter().enumerate() {
                for (i, tm) in tb.iter().enumerate() {
                    out.set(row_of[tm], col_of[sm], m.get(i, j).clone());
                }
            }
        }
        out
    }

    /// A basis monomial on which `self` and `other` differ, with both images.
    pub fn witness_difference(&self, other: &Self) -> Option<(FiberForm, FiberForm, FiberForm)> {
        for m in basis_all(self.n) {
            let u = FiberForm::monomial(self.n, m, Scalar::one());
            let x = self.apply(&u).ok()?;
            let y = other.apply(&u).ok()?;
            if x != y {
                return Some((u, x, y));
            }
        }
        None
    }
}

impl fmt::Display for GradedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((s, t), m) in &self.blocks {
            writeln!(f, "{s:?} -> {t:?}:")?;
            write!(f, "{m}")?;
        }
        Ok(())
    }
}
