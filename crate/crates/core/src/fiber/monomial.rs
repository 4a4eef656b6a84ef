//! Ordered basis monomials `e+_I ^ e-_J` and their weights.

use std::cmp::Ordering;
use std::fmt;

/// Largest supported rank.
pub const MAX_RANK: usize = 6;

/// `e+_{i1} ^ ... ^ e+_{ia} ^ e-_{j1} ^ ... ^ e-_{jb}` with strictly
/// increasing indices, stored as bitmasks (bit `i - 1` for index `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct BasisMonomial {
    plus: u16,
    minus: u16,
}

pub(crate) fn mask_indices(mask: u16) -> impl Iterator<Item = usize> {
    (0..16).filter(move |b| mask & (1 << b) != 0).map(|b| b + 1)
}

pub(crate) fn mask_of(indices: &[usize]) -> u16 {
    indices.iter().fold(0, |m, &i| m | (1 << (i - 1)))
}

impl BasisMonomial {
    /// The empty product `1`.
    pub const ONE: BasisMonomial = BasisMonomial { plus: 0, minus: 0 };

    pub(crate) fn from_masks(plus: u16, minus: u16) -> Self {
        Self { plus, minus }
    }

    /// From index lists; indices must be in `1..=16`. Duplicates collapse.
    pub fn new(plus: &[usize], minus: &[usize]) -> Self {
        Self { plus: mask_of(plus), minus: mask_of(minus) }
    }

    pub fn plus_mask(&self) -> u16 {
        self.plus
    }

    pub fn minus_mask(&self) -> u16 {
        self.minus
    }

    pub fn plus_indices(&self) -> Vec<usize> {
        mask_indices(self.plus).collect()
    }

    pub fn minus_indices(&self) -> Vec<usize> {
        mask_indices(self.minus).collect()
    }

    /// `(|I|, |J|)`.
    pub fn bidegree(&self) -> (usize, usize) {
        (self.plus.count_ones() as usize, self.minus.count_ones() as usize)
    }

    pub fn degree(&self) -> usize {
        (self.plus.count_ones() + self.minus.count_ones()) as usize
    }

    /// Highest index used, 0 for `1`.
    pub fn max_index(&self) -> usize {
        16 - (self.plus | self.minus).leading_zeros() as usize
    }

    /// `sum_{i in I} (u_i + 1^n) - sum_{j in J} (u_j + 1^n)`.
    pub fn weight(&self, n: usize) -> Vec<i64> {
        let shift = self.plus.count_ones() as i64 - self.minus.count_ones() as i64;
        let mut w = vec![shift; n];
        for i in mask_indices(self.plus) {
            w[i - 1] += 1;
        }
        for j in mask_indices(self.minus) {
            w[j - 1] -= 1;
        }
        w
    }
}

fn cmp_index_lists(a: u16, b: u16) -> Ordering {
    mask_indices(a).cmp(mask_indices(b))
}

impl Ord for BasisMonomial {
    /// Degree first, then more `e+` factors first, then index lists
    /// lexicographically (`e+` block, then `e-` block).
    fn cmp(&self, other: &Self) -> Ordering {
        let (a1, b1) = self.bidegree();
        let (a2, b2) = other.bidegree();
        (a1 + b1)
            .cmp(&(a2 + b2))
            .then(a2.cmp(&a1))
            .then_with(|| cmp_index_lists(self.plus, other.plus))
            .then_with(|| cmp_index_lists(self.minus, other.minus))
    }
}

impl PartialOrd for BasisMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisMonomial {
    /// `e+[1,3]^e-[2]`; both blocks always printed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |m: u16| mask_indices(m).map(|i| i.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "e+[{}]^e-[{}]", join(self.plus), join(self.minus))
    }
}

/// All subsets of `{1..n}` of size `k`, as masks in lexicographic order of
/// their index lists.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<u16> {
    let mut out: Vec<u16> = (0u16..(1 << n)).filter(|m| m.count_ones() as usize == k).collect();
    out.sort_by(|a, b| cmp_index_lists(*a, *b));
    out
}

/// Basis of `V^(a,b)` in monomial order.
pub fn basis_bidegree(n: usize, a: usize, b: usize) -> Vec<BasisMonomial> {
    if a > n || b > n {
        return Vec::new();
    }
    let plus = subsets(n, a);
    let minus = subsets(n, b);
    let mut out = Vec::with_capacity(plus.len() * minus.len());
    for &p in &plus {
        for &m in &minus {
            out.push(BasisMonomial::from_masks(p, m));
        }
    }
    out
}

/// Basis of `V^k` in monomial order.
pub fn basis_degree(n: usize, k: usize) -> Vec<BasisMonomial> {
    let mut out = Vec::new();
    for a in (0..=k.min(n)).rev() {
        if k - a <= n {
            out.extend(basis_bidegree(n, a, k - a));
        }
    }
    out
}

/// Basis of all of `V`, in monomial order.
pub fn basis_all(n: usize) -> Vec<BasisMonomial> {
    (0..=2 * n).flat_map(|k| basis_degree(n, k)).collect()
}

/// The bidegrees `(a, b)` with `a + b = k` that occur in `V^k`.
pub fn bidegrees_of_degree(n: usize, k: usize) -> Vec<(usize, usize)> {
    (0..=k.min(n)).rev().filter(|a| k - a <= n).map(|a| (a, k - a)).collect()
}
