//! The coefficient field `Q(i)(q)`: reduced quotients of Laurent polynomials.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::gaussian::GaussianRational;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// An element `num / den` of `Q(i)(q)` in canonical form.
///
/// `gcd(num, den) = 1` over `Q(i)[q, 1/q]`, and `den` is an ordinary
/// polynomial whose constant term is exactly `1`. Units and powers of `q`
/// live in `num`, so two equal field elements have identical fields and
/// `==` is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_laurent(LaurentPoly::constant(GaussianRational::from_int(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_laurent(LaurentPoly::constant(GaussianRational::from_ratio(num, den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_gaussian(GaussianRational::from_real(r))
    }

    pub fn from_gaussian(c: GaussianRational) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn from_laurent(num: LaurentPoly) -> Self {
        Self { num, den: LaurentPoly::one() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_gaussian(GaussianRational::i())
    }

    /// `i^k`.
    pub fn i_pow(k: i64) -> Self {
        Self::from_gaussian(GaussianRational::i_pow(k))
    }

    /// The deformation parameter `q`.
    pub fn q() -> Self {
        Self::from_laurent(LaurentPoly::q())
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        Self::from_laurent(LaurentPoly::monomial(GaussianRational::one(), k))
    }

    /// `c * q^k`.
    pub fn monomial(c: i64, k: i64) -> Self {
        Self::from_laurent(LaurentPoly::monomial(GaussianRational::from_int(c), k))
    }

    /// Build `num / den`, reducing to canonical form.
    pub fn from_fraction(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (s, mut p) = num.split_power();
        let (t, mut d) = den.split_power();
        if d.span() > 0 && p.span() > 0 {
            let g = LaurentPoly::poly_gcd(&p, &d);
            if !g.is_one() {
                p = p.exact_div(&g).expect("gcd divides numerator");
                d = d.exact_div(&g).expect("gcd divides denominator");
            }
        }
        let c = d.lowest_coeff().expect("nonzero denominator").clone();
        if !c.is_one() {
            let inv = c.inv().unwrap();
            p = p.scale(&inv);
            d = d.scale(&inv);
        }
        Self { num: p.shift(s - t), den: d }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when the value lies in the Laurent ring (denominator 1).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// True for `c * q^k`, `c != 0`: the units of the Laurent ring.
    pub fn is_laurent_unit(&self) -> bool {
        self.den.is_one() && self.num.is_monomial()
    }

    /// Complex conjugation `i -> -i`, fixing `q`.
    pub fn conj(&self) -> Self {
        // Conjugating both parts keeps the denominator's constant term 1 and
        // preserves coprimality.
        Self { num: self.num.conj(), den: self.den.conj() }
    }

    pub fn is_real(&self) -> bool {
        self.num.is_real() && self.den.is_real()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return Self::one();
        }
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        // Powers of a reduced fraction stay reduced.
        let mut out = Self { num: base.num.pow(e), den: base.den.pow(e) };
        if !out.den.lowest_coeff().is_some_and(|c| c.is_one()) {
            out = Self::reduce(out.num, out.den);
        }
        out
    }

    /// Exact substitution `q = q0` for rational `q0 > 0`.
    pub fn evaluate(&self, q0: &BigRational) -> Result<GaussianRational> {
        if !q0.is_positive() {
            return Err(Error::NonPositivePoint(q0.to_string()));
        }
        let d = self.den.evaluate(q0);
        if d.is_zero() {
            return Err(Error::Pole(q0.to_string()));
        }
        Ok(&self.num.evaluate(q0) / &d)
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { num: self.num.shift(k), den: self.den.clone() }
    }

    /// Rough size used to rank pivots: term count plus exponent span of both parts.
    pub fn complexity(&self) -> usize {
        self.num.term_count() + self.num.span() + self.den.term_count() + self.den.span()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_laurent(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Scalar::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Scalar::reduce(num, &self.den * &rhs.den)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_laurent(&self.num * &rhs.num);
        }
        // A unit factor c*q^k cannot share a factor with the other denominator.
        if self.is_laurent_unit() {
            return Scalar { num: &self.num * &rhs.num, den: rhs.den.clone() };
        }
        if rhs.is_laurent_unit() {
            return Scalar { num: &self.num * &rhs.num, den: self.den.clone() };
        }
        Scalar::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| &acc + &x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| &acc * &x)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}
