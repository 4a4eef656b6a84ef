//! Exact arithmetic in the Gaussian rationals `Q(i)`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `re + im * i` with arbitrary-precision rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_real(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    /// Squared modulus `re^2 + im^2`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self { re: &self.re * r, im: &self.im * r }
    }

    /// True when the value is a negative real number.
    pub fn is_negative_real(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// Real values print bare (`3/4`); anything with an imaginary part is
    /// parenthesised (`(i)`, `(1-2/3i)`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let im = if self.im.abs().is_one() {
            String::new()
        } else {
            fmt_rational(&self.im.abs())
        };
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            write!(f, "({sign}{im}i)")
        } else {
            write!(f, "({}{sign}{im}i)", fmt_rational(&self.re))
        }
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_real(&self.re * &rhs.re);
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        if rhs.im.is_zero() {
            return GaussianRational { re: &self.re / &rhs.re, im: &self.im / &rhs.re };
        }
        self * &rhs.inv().expect("division by zero Gaussian rational")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}
