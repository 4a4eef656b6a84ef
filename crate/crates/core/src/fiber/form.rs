//! Elements of the fiber exterior algebra `V(n)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::monomial::{mask_indices, BasisMonomial, MAX_RANK};
use super::rewrite::multiply_monomials;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A finite linear combination of ordered basis monomials of rank `n`.
///
/// Zero coefficients are never stored. `+` and `-` panic on a rank
/// mismatch; [`FiberForm::wedge`] reports it as an error.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiberForm {
    n: usize,
    terms: BTreeMap<BasisMonomial, Scalar>,
}

impl FiberForm {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    /// The unit `1` in `V^0`.
    pub fn one(n: usize) -> Self {
        Self::monomial(n, BasisMonomial::ONE, Scalar::one())
    }

    pub fn monomial(n: usize, m: BasisMonomial, c: Scalar) -> Self {
        let mut f = Self::zero(n);
        f.add_term(m, c);
        f
    }

    /// `e+_I ^ e-_J` with coefficient 1. Indices must lie in `1..=n`.
    pub fn basis(n: usize, plus: &[usize], minus: &[usize]) -> Result<Self> {
        for &i in plus.iter().chain(minus) {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
        }
        let mut sorted_p = plus.to_vec();
        let mut sorted_m = minus.to_vec();
        sorted_p.sort_unstable();
        sorted_m.sort_unstable();
        sorted_p.dedup();
        sorted_m.dedup();
        if sorted_p.len() != plus.len() || sorted_m.len() != minus.len() {
            return Ok(Self::zero(n));
        }
        // Unsorted input is reduced through the product, not reordered silently.
        let mut out = Self::one(n);
        for &i in plus {
            out = out.wedge(&Self::e_plus(n, i))?;
        }
        for &j in minus {
            out = out.wedge(&Self::e_minus(n, j))?;
        }
        Ok(out)
    }

    /// The generator `e+_a`.
    pub fn e_plus(n: usize, a: usize) -> Self {
        assert!(a >= 1 && a <= n, "index {a} out of range for rank {n}");
        Self::monomial(n, BasisMonomial::new(&[a], &[]), Scalar::one())
    }

    /// The generator `e-_a`.
    pub fn e_minus(n: usize, a: usize) -> Self {
        assert!(a >= 1 && a <= n, "index {a} out of range for rank {n}");
        Self::monomial(n, BasisMonomial::new(&[], &[a]), Scalar::one())
    }

    /// The Kähler form `i * sum_a e+_a ^ e-_a`.
    pub fn kappa(n: usize) -> Self {
        let mut f = Self::zero(n);
        for a in 1..=n {
            f.add_term(BasisMonomial::new(&[a], &[a]), Scalar::i());
        }
        f
    }

    /// The top monomial `e+_1 ^ ... ^ e+_n ^ e-_1 ^ ... ^ e-_n`.
    pub fn top_monomial(n: usize) -> BasisMonomial {
        let all: Vec<usize> = (1..=n).collect();
        BasisMonomial::new(&all, &all)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &BasisMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: BasisMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.max_index() <= self.n);
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self { n: self.n, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    /// The wedge product, reduced to normal form.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.degree() + m2.degree() > 2 * self.n {
                    continue;
                }
                let c12 = c1 * c2;
                for (m, c) in multiply_monomials(self.n, *m1, *m2) {
                    out.add_term(m, &c12 * &c);
                }
            }
        }
        Ok(out)
    }

    /// The conjugate-linear involution with `(e+_a)* = q^(-2(a+1)) e-_a`,
    /// `(e-_a)* = q^(2(a+1)) e+_a` and `(w ^ v)* = (-1)^(kl) v* ^ w*`.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let (img, factor) = star_monomial(m);
            out.add_term(img, &c.conj() * &factor);
        }
        out
    }

    /// Components by bidegree; keys are exactly the nonzero components.
    pub fn bidegree_split(&self) -> BTreeMap<(usize, usize), FiberForm> {
        let mut out: BTreeMap<(usize, usize), FiberForm> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.bidegree()).or_insert_with(|| Self::zero(self.n)).add_term(*m, c.clone());
        }
        out
    }

    /// Components by total degree.
    pub fn degree_split(&self) -> BTreeMap<usize, FiberForm> {
        let mut out: BTreeMap<usize, FiberForm> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_insert_with(|| Self::zero(self.n)).add_term(*m, c.clone());
        }
        out
    }

    /// The common degree of all terms, `None` for mixed degrees. Zero is
    /// homogeneous of every degree and reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => Some(0),
            Some(d) => degs.all(|e| e == d).then_some(d),
        }
    }

    pub fn homogeneous_bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|m| m.bidegree());
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    /// Coefficients against an explicit list of monomials. Terms outside
    /// the list are ignored.
    pub fn coords(&self, basis: &[BasisMonomial]) -> Vec<Scalar> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    pub fn from_coords(n: usize, basis: &[BasisMonomial], coeffs: &[Scalar]) -> Self {
        assert_eq!(basis.len(), coeffs.len(), "coordinate length");
        let mut f = Self::zero(n);
        for (m, c) in basis.iter().zip(coeffs) {
            f.add_term(*m, c.clone());
        }
        f
    }

    /// Coefficient of `e+_1...e+_n e-_1...e-_n`.
    pub fn top_coeff(&self) -> Scalar {
        self.coeff(&Self::top_monomial(self.n))
    }

    /// Serialise as `[{"I": [...], "J": [...], "coeff": "..."}]`.
    pub fn to_json(&self) -> serde_json::Value {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(m, c)| TermRecord { plus: m.plus_indices(), minus: m.minus_indices(), coeff: c.to_string() })
            .collect();
        serde_json::to_value(records).expect("term records serialise")
    }

    pub fn from_json(n: usize, value: &serde_json::Value) -> Result<Self> {
        let records: Vec<TermRecord> =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = Self::zero(n);
        for r in records {
            let c: Scalar = r.coeff.parse()?;
            let b = Self::basis(n, &r.plus, &r.minus)?;
            out = out.try_add(&b.scale(&c))?;
        }
        Ok(out)
    }

    /// Parse the `Display` form, e.g. `(q)*e+[1]^e-[2] + e+[]^e-[]`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let mut out = Self::zero(n);
        if s == "0" {
            return Ok(out);
        }
        for chunk in split_top_level(s, " + ") {
            let (coeff, mono) = match chunk.rfind("*e+[") {
                Some(pos) => (chunk[..pos].trim().parse::<Scalar>()?, &chunk[pos + 1..]),
                None => (Scalar::one(), chunk),
            };
            let (plus, minus) = parse_monomial(mono)?;
            let b = Self::basis(n, &plus, &minus)?;
            out = out.try_add(&b.scale(&coeff))?;
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    #[serde(rename = "I")]
    plus: Vec<usize>,
    #[serde(rename = "J")]
    minus: Vec<usize>,
    coeff: String,
}

fn split_top_level<'a>(s: &'a str, sep: &str) -> Vec<&'a str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut k = 0;
    while k < bytes.len() {
        match bytes[k] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && s[k..].starts_with(sep) {
            out.push(&s[start..k]);
            k += sep.len();
            start = k;
            continue;
        }
        k += 1;
    }
    out.push(&s[start..]);
    out
}

fn parse_index_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index '{t}'"))))
        .collect()
}

fn parse_monomial(s: &str) -> Result<(Vec<usize>, Vec<usize>)> {
    let bad = || Error::Parse(format!("bad monomial '{s}'"));
    let rest = s.trim().strip_prefix("e+[").ok_or_else(bad)?;
    let (plus, rest) = rest.split_once(']').ok_or_else(bad)?;
    let rest = rest.strip_prefix("^e-[").ok_or_else(bad)?;
    let (minus, rest) = rest.split_once(']').ok_or_else(bad)?;
    if !rest.trim().is_empty() {
        return Err(bad());
    }
    Ok((parse_index_list(plus)?, parse_index_list(minus)?))
}

/// Image of a basis monomial under the `*`-map, as `(monomial, factor)`; the
/// coefficient of the input is conjugated separately.
fn star_monomial(m: &BasisMonomial) -> (BasisMonomial, Scalar) {
    let (a, b) = m.bidegree();
    let k = (a + b) as i64;
    let mut qexp: i64 = 0;
    for i in mask_indices(m.plus_mask()) {
        qexp -= 2 * (i as i64 + 1);
    }
    for j in mask_indices(m.minus_mask()) {
        qexp += 2 * (j as i64 + 1);
    }
    // Reversing a block of b distinct e+ (resp. a distinct e-) factors.
    let rev_plus = (b * b.saturating_sub(1) / 2) as i64;
    let rev_minus = (a * a.saturating_sub(1) / 2) as i64;
    qexp += rev_plus - rev_minus;
    let sign_exp = k * (k - 1) / 2 + rev_plus + rev_minus;
    let sign = if sign_exp % 2 == 0 { 1 } else { -1 };
    (BasisMonomial::from_masks(m.minus_mask(), m.plus_mask()), Scalar::monomial(sign, qexp))
}

impl Add<&FiberForm> for &FiberForm {
    type Output = FiberForm;
    fn add(self, rhs: &FiberForm) -> FiberForm {
        self.try_add(rhs).expect("rank mismatch in form addition")
    }
}

impl Sub<&FiberForm> for &FiberForm {
    type Output = FiberForm;
    fn sub(self, rhs: &FiberForm) -> FiberForm {
        self + &(-rhs)
    }
}

impl Neg for &FiberForm {
    type Output = FiberForm;
    fn neg(self) -> FiberForm {
        FiberForm { n: self.n, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Add for FiberForm {
    type Output = FiberForm;
    fn add(self, rhs: FiberForm) -> FiberForm {
        &self + &rhs
    }
}

impl Sub for FiberForm {
    type Output = FiberForm;
    fn sub(self, rhs: FiberForm) -> FiberForm {
        &self - &rhs
    }
}

impl fmt::Display for FiberForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if c.is_one() {
                    return m.to_string();
                }
                let c = c.to_string();
                if is_single_group(&c) {
                    format!("{c}*{m}")
                } else {
                    format!("({c})*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// True when `s` is one parenthesised group, like `(i)` but not `(1)/(q)`.
fn is_single_group(s: &str) -> bool {
    if !s.starts_with('(') {
        return false;
    }
    let mut depth = 0;
    for (k, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return k == s.len() - 1;
                }
            }
            _ => {}
        }
    }
    false
}

/// Validate a rank for the algebra constructions.
pub fn check_rank(n: usize) -> Result<()> {
    if n == 0 || n > MAX_RANK {
        return Err(Error::RankOutOfRange(n));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ep(n: usize, a: usize) -> FiberForm {
        FiberForm::e_plus(n, a)
    }
    fn em(n: usize, a: usize) -> FiberForm {
        FiberForm::e_minus(n, a)
    }

    #[test]
    fn defining_relations() {
        // e-_1 ^ e+_2 = -q e+_2 ^ e-_1
        let lhs = em(2, 1).wedge(&ep(2, 2)).unwrap();
        let rhs = FiberForm::basis(2, &[2], &[1]).unwrap().scale(&Scalar::monomial(-1, 1));
        assert_eq!(lhs, rhs);
        // n = 1: e-_1 ^ e+_1 = -q^2 e+_1 ^ e-_1
        let lhs = em(1, 1).wedge(&ep(1, 1)).unwrap();
        assert_eq!(lhs, FiberForm::basis(1, &[1], &[1]).unwrap().scale(&Scalar::monomial(-1, 2)));
        // e+_1 ^ e+_1 = 0
        assert!(ep(2, 1).wedge(&ep(2, 1)).unwrap().is_zero());
        // n = 2: e-_1 ^ e+_1 = -q^2 e+_1 e-_1 - (q^2 - 1) e+_2 e-_2
        let lhs = em(2, 1).wedge(&ep(2, 1)).unwrap();
        let rhs = &FiberForm::basis(2, &[1], &[1]).unwrap().scale(&Scalar::monomial(-1, 2))
            - &FiberForm::basis(2, &[2], &[2]).unwrap().scale(&(&Scalar::q_pow(2) - &Scalar::one()));
        assert_eq!(lhs, rhs);
        // e+_2 ^ e+_1 = -q e+_1 ^ e+_2 and e-_2 ^ e-_1 = -q^-1 e-_1 ^ e-_2
        assert_eq!(ep(2, 2).wedge(&ep(2, 1)).unwrap(), FiberForm::basis(2, &[1, 2], &[]).unwrap().scale(&Scalar::monomial(-1, 1)));
        assert_eq!(em(2, 2).wedge(&em(2, 1)).unwrap(), FiberForm::basis(2, &[], &[1, 2]).unwrap().scale(&Scalar::monomial(-1, -1)));
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        assert_eq!(ep(2, 1).wedge(&ep(3, 1)), Err(Error::RankMismatch(2, 3)));
        assert!(FiberForm::basis(2, &[3], &[]).is_err());
    }

    #[test]
    fn star_on_generators() {
        assert_eq!(ep(2, 1).star(), em(2, 1).scale(&Scalar::q_pow(-4)));
        assert_eq!(em(1, 1).star(), ep(1, 1).scale(&Scalar::q_pow(4)));
        assert_eq!(FiberForm::kappa(3).star(), FiberForm::kappa(3));
    }

    #[test]
    fn bidegree_split_cases() {
        let u = &ep(2, 1) + &em(2, 1);
        let parts = u.bidegree_split();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&(1, 0)], ep(2, 1));
        assert_eq!(parts[&(0, 1)], em(2, 1));
        let k = FiberForm::kappa(2).bidegree_split();
        assert_eq!(k.keys().copied().collect::<Vec<_>>(), vec![(1, 1)]);
        assert!(FiberForm::zero(2).bidegree_split().is_empty());
    }

    #[test]
    fn text_and_json_forms() {
        let u = &FiberForm::basis(3, &[1, 3], &[2]).unwrap().scale(&Scalar::q()) + &FiberForm::one(3).scale(&Scalar::i());
        let s = u.to_string();
        assert_eq!(s, "(i)*e+[]^e-[] + (q)*e+[1,3]^e-[2]");
        assert_eq!(FiberForm::parse(3, &s).unwrap(), u);
        let j = u.to_json();
        assert_eq!(j[1]["I"], serde_json::json!([1, 3]));
        assert_eq!(FiberForm::from_json(3, &j).unwrap(), u);
    }
}
