//! Normal-form rewriting for products of basis monomials.
//!
//! The defining relations, read left to right as rewrite rules:
//!
//! ```text
//! e-_i e+_j -> -q   e+_j e-_i                                  (i != j)
//! e-_i e+_i -> -q^2 e+_i e-_i - (q^2 - 1) sum_{a > i} e+_a e-_a
//! e-_i e-_h -> -q^-1 e-_h e-_i                                 (h < i)
//! e+_i e+_h -> -q   e+_h e+_i                                  (h < i)
//! e+_i e+_i -> 0,   e-_i e-_i -> 0
//! ```
//!
//! Every product of two ordered monomials reduces to
//! `e+_I . (e-_J e+_K) . e-_L`; only the middle factor needs real work and
//! is memoised per `(n, J, K)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::monomial::{mask_indices, BasisMonomial};
use crate::scalar::Scalar;

/// A normal-form expansion: `(plus mask, minus mask, coefficient)` triples.
type Expansion = Vec<(u16, u16, Scalar)>;

fn count_inversions(left: u16, right: u16) -> u32 {
    // pairs (x in left, y in right) with y < x
    mask_indices(right).map(|y| (left >> y).count_ones()).sum()
}

/// `e+_I ^ e+_A`: zero on overlap, otherwise `(-q)^inv e+_{I u A}`.
pub(crate) fn plus_concat(i: u16, a: u16) -> Option<(u16, Scalar)> {
    if i & a != 0 {
        return None;
    }
    let inv = count_inversions(i, a) as i64;
    let sign = if inv % 2 == 0 { 1 } else { -1 };
    Some((i | a, Scalar::monomial(sign, inv)))
}

/// `e-_B ^ e-_J`: zero on overlap, otherwise `(-q^-1)^inv e-_{B u J}`.
pub(crate) fn minus_concat(b: u16, j: u16) -> Option<(u16, Scalar)> {
    if b & j != 0 {
        return None;
    }
    let inv = count_inversions(b, j) as i64;
    let sign = if inv % 2 == 0 { 1 } else { -1 };
    Some((b | j, Scalar::monomial(sign, -inv)))
}

fn push(out: &mut HashMap<(u16, u16), Scalar>, key: (u16, u16), c: Scalar) {
    if c.is_zero() {
        return;
    }
    let slot = out.entry(key).or_insert_with(Scalar::zero);
    *slot += &c;
}

fn collect(map: HashMap<(u16, u16), Scalar>) -> Expansion {
    let mut v: Expansion = map.into_iter().filter(|(_, c)| !c.is_zero()).map(|((p, m), c)| (p, m, c)).collect();
    v.sort_by_key(|(p, m, _)| (*p, *m));
    v
}

type MemoKey = (usize, u16, u16);

fn memo() -> &'static RwLock<HashMap<MemoKey, Arc<Expansion>>> {
    static MEMO: OnceLock<RwLock<HashMap<MemoKey, Arc<Expansion>>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Single swap `e-_j e+_k`.
fn swap_one(n: usize, j: usize, k: usize) -> Expansion {
    let bit = |x: usize| 1u16 << (x - 1);
    if j != k {
        return vec![(bit(k), bit(j), Scalar::monomial(-1, 1))];
    }
    let mut out = vec![(bit(k), bit(k), Scalar::monomial(-1, 2))];
    let tail = &Scalar::one() - &Scalar::q_pow(2);
    for a in k + 1..=n {
        out.push((bit(a), bit(a), tail.clone()));
    }
    out
}

/// Normal form of `e-_J ^ e+_K`.
pub(crate) fn minus_plus(n: usize, j: u16, k: u16) -> Arc<Expansion> {
    if j == 0 || k == 0 {
        return Arc::new(vec![(k, j, Scalar::one())]);
    }
    let key = (n, j, k);
    if let Some(hit) = memo().read().unwrap().get(&key) {
        return hit.clone();
    }
    let mut out = HashMap::new();
    if k.count_ones() > 1 {
        // e-_J e+_{k1} e+_{K'}
        let first = k & k.wrapping_neg();
        let rest = k & !first;
        for (a, b, c) in minus_plus(n, j, first).iter() {
            for (a2, b2, c2) in minus_plus(n, *b, rest).iter() {
                if let Some((a3, s)) = plus_concat(*a, *a2) {
                    push(&mut out, (a3, *b2), c * c2 * s);
                }
            }
        }
    } else {
        // e-_{J'} (e-_{j_last} e+_k)
        let top = 15 - j.leading_zeros() as usize;
        let j_last = top + 1;
        let rest = j & !(1 << top);
        let kk = k.trailing_zeros() as usize + 1;
        for (x, y, c) in swap_one(n, j_last, kk) {
            for (a, b, c2) in minus_plus(n, rest, x).iter() {
                if let Some((b3, s)) = minus_concat(*b, y) {
                    push(&mut out, (*a, b3), &c * c2 * s);
                }
            }
        }
    }
    let result = Arc::new(collect(out));
    memo().write().unwrap().insert(key, result.clone());
    result
}

/// Normal form of the product of two basis monomials of rank `n`.
pub(crate) fn multiply_monomials(n: usize, left: BasisMonomial, right: BasisMonomial) -> Vec<(BasisMonomial, Scalar)> {
    let mut out = Vec::new();
    for (a, b, c) in minus_plus(n, left.minus_mask(), right.plus_mask()).iter() {
        let Some((p, s1)) = plus_concat(left.plus_mask(), *a) else { continue };
        let Some((m, s2)) = minus_concat(*b, right.minus_mask()) else { continue };
        out.push((BasisMonomial::from_masks(p, m), c * &s1 * &s2));
    }
    out
}
