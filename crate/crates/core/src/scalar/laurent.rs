//! Laurent polynomials in `q` with Gaussian-rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::One;

use super::gaussian::GaussianRational;

/// `sum_k coeffs[k] * q^(low + k)`, stored densely.
///
/// Invariant: either `coeffs` is empty (the zero polynomial) or both its
/// first and last entries are nonzero. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<GaussianRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^exp`.
    pub fn monomial(c: GaussianRational, exp: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { low: exp, coeffs: vec![c] }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(GaussianRational::one(), 1)
    }

    pub fn from_dense(low: i64, coeffs: Vec<GaussianRational>) -> Self {
        let mut p = Self { low, coeffs };
        p.trim();
        p
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, GaussianRational)>>(terms: I) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![GaussianRational::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += &c;
        }
        Self::from_dense(low, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Exponent span `high - low`; the degree once normalised to a polynomial.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// True when the polynomial is a single term `c q^k`, i.e. a unit.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn coeff(&self, exp: i64) -> GaussianRational {
        let idx = exp - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            GaussianRational::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn lowest_coeff(&self) -> Option<&GaussianRational> {
        self.coeffs.first()
    }

    pub fn leading_coeff(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    /// Nonzero terms in descending exponent order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn conj(&self) -> Self {
        Self { low: self.low, coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_real())
    }

    /// Substitute `q -> 1/q`.
    pub fn bar(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self { low: -self.high(), coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact evaluation at a rational point. Negative powers of zero panic;
    /// callers check the point first.
    pub fn evaluate(&self, q0: &BigRational) -> GaussianRational {
        if self.is_zero() {
            return GaussianRational::zero();
        }
        // Horner on the dense coefficients, then the q^low factor.
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(q0);
            acc += c;
        }
        let factor = rational_pow(q0, self.low);
        acc.scale(&factor)
    }

    /// Split as `q^k * p` with `p` a polynomial whose constant term is nonzero.
    pub(crate) fn split_power(&self) -> (i64, Self) {
        if self.is_zero() {
            return (0, Self::zero());
        }
        (self.low, Self { low: 0, coeffs: self.coeffs.clone() })
    }

    fn make_monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.inv().unwrap();
                self.scale(&inv)
            }
        }
    }

    /// Polynomial division with remainder on the dense coefficient vectors,
    /// treating both operands as polynomials in `q` after shifting to `low = 0`.
    /// The quotient's and remainder's exponents are relative to the shifted inputs.
    fn poly_divrem(num: &[GaussianRational], den: &[GaussianRational]) -> (Vec<GaussianRational>, Vec<GaussianRational>) {
        let dn = den.len();
        if num.len() < dn {
            return (Vec::new(), num.to_vec());
        }
        let mut rem = num.to_vec();
        let lead_inv = den[dn - 1].inv().expect("zero divisor");
        let mut quot = vec![GaussianRational::zero(); num.len() - dn + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dn - 1] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in den.iter().enumerate() {
                if !d.is_zero() {
                    let t = &c * d;
                    rem[k + j] -= &t;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dn - 1);
        (quot, rem)
    }

    /// Monic gcd of two polynomials (inputs taken as polynomials with `low = 0`).
    pub(crate) fn poly_gcd(a: &Self, b: &Self) -> Self {
        let (_, mut x) = a.split_power();
        let (_, mut y) = b.split_power();
        if x.is_zero() {
            return y.make_monic();
        }
        if y.is_zero() {
            return x.make_monic();
        }
        if x.span() < y.span() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            if y.span() == 0 {
                return Self::one();
            }
            let (_, r) = Self::poly_divrem(&x.coeffs, &y.coeffs);
            let r = Self::from_dense(0, r).make_monic();
            x = y;
            y = r;
        }
        x.make_monic()
    }

    /// Exact quotient `self / d` in the Laurent ring, or `None` if `d` does not divide.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.is_monomial() {
            let inv = d.coeffs[0].inv().unwrap();
            return Some(Self { low: self.low - d.low, coeffs: self.coeffs.iter().map(|c| c * &inv).collect() });
        }
        let (q, r) = Self::poly_divrem(&self.coeffs, &d.coeffs);
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(self.low - d.low, q))
    }
}

pub(crate) fn rational_pow(base: &BigRational, exp: i64) -> BigRational {
    if exp == 0 {
        return BigRational::one();
    }
    let p = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp > 0 {
        p
    } else {
        p.recip()
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let mut coeffs = vec![GaussianRational::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + k] += c;
        }
        LaurentPoly::from_dense(low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        LaurentPoly::from_dense(self.low + rhs.low, coeffs)
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending powers of `q`, e.g. `q^2 + 1 + q^-2`, `(i)*q^3`, `-2*q - 1/3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms_desc() {
            let (negative, mag) = if c.is_negative_real() { (true, -c) } else { (false, c.clone()) };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let qpart = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            if qpart.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{qpart}")?;
            } else {
                write!(f, "{mag}*{qpart}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, GaussianRational::from_int(c))))
    }

    #[test]
    fn trims_and_displays() {
        let x = p(&[(2, 1), (0, 1), (-2, 1), (5, 0)]);
        assert_eq!(x.to_string(), "q^2 + 1 + q^-2");
        assert_eq!(x.low(), -2);
        assert_eq!(x.high(), 2);
        assert_eq!(p(&[(1, -2), (0, -1)]).to_string(), "-2*q - 1");
        assert_eq!(LaurentPoly::monomial(GaussianRational::i(), 3).to_string(), "(i)*q^3");
    }

    #[test]
    fn gcd_and_exact_division() {
        // (q - 1)(q + 2) and (q - 1)(q^2 + 1)
        let a = p(&[(2, 1), (1, 1), (0, -2)]);
        let b = p(&[(3, 1), (2, -1), (1, 1), (0, -1)]);
        assert_eq!(LaurentPoly::poly_gcd(&a, &b), p(&[(1, 1), (0, -1)]));
        let quotient = a.exact_div(&p(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(quotient, p(&[(1, 1), (0, 2)]));
        assert!(a.exact_div(&p(&[(1, 1), (0, 5)])).is_none());
    }

    #[test]
    fn evaluate_and_bar() {
        let x = p(&[(2, 1), (0, 1), (-2, 1)]);
        let v = x.evaluate(&BigRational::from_integer(2.into()));
        assert_eq!(v, GaussianRational::from_ratio(21, 4));
        assert_eq!(p(&[(3, 1), (1, 2)]).bar(), p(&[(-3, 1), (-1, 2)]));
    }
}
