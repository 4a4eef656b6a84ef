//! Quantum integers, factorials and Gaussian binomials, with the Hodge
//! parameter `h` fixed by a [`HodgeMode`].

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::field::Scalar;
use super::laurent::rational_pow;
use crate::error::{Error, Result};

/// How the Hodge parameter `h` is specialised.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HodgeMode {
    /// `h = q`, kept symbolic.
    HEqQ,
    /// `h = 1`, the undeformed Weil formula.
    HEqOne,
    /// `h = h0` a positive rational; `q0` is the default sample point for
    /// numeric certificates in this mode.
    Numeric { q0: BigRational, h0: BigRational },
}

impl HodgeMode {
    pub fn numeric(q0: BigRational, h0: BigRational) -> Result<Self> {
        if !q0.is_positive() {
            return Err(Error::NonPositivePoint(q0.to_string()));
        }
        if !h0.is_positive() {
            return Err(Error::NonPositivePoint(h0.to_string()));
        }
        Ok(HodgeMode::Numeric { q0, h0 })
    }

    /// The Hodge parameter as a field element.
    pub fn h(&self) -> Scalar {
        match self {
            HodgeMode::HEqQ => Scalar::q(),
            HodgeMode::HEqOne => Scalar::one(),
            HodgeMode::Numeric { h0, .. } => Scalar::from_rational(h0.clone()),
        }
    }

    /// `h^k`.
    pub fn h_pow(&self, k: i64) -> Scalar {
        match self {
            HodgeMode::HEqQ => Scalar::q_pow(k),
            HodgeMode::HEqOne => Scalar::one(),
            HodgeMode::Numeric { h0, .. } => Scalar::from_rational(rational_pow(h0, k)),
        }
    }

    /// True when `h` is identically 1, where `(K - K^-1)/(h - h^-1)` is undefined.
    pub fn is_classical(&self) -> bool {
        match self {
            HodgeMode::HEqOne => true,
            HodgeMode::Numeric { h0, .. } => h0.is_one(),
            HodgeMode::HEqQ => false,
        }
    }
}

impl fmt::Display for HodgeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HodgeMode::HEqQ => write!(f, "h=q"),
            HodgeMode::HEqOne => write!(f, "h=1"),
            HodgeMode::Numeric { q0, h0 } => write!(f, "numeric:{q0}:{h0}"),
        }
    }
}

fn parse_positive_rational(s: &str) -> Result<BigRational> {
    let r = if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
        let b: BigInt = b.trim().parse().map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
        if b == BigInt::from(0) {
            return Err(Error::Parse(format!("zero denominator in '{s}'")));
        }
        BigRational::new(a, b)
    } else {
        let a: BigInt = s.trim().parse().map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
        BigRational::from_integer(a)
    };
    if !r.is_positive() {
        return Err(Error::NonPositivePoint(r.to_string()));
    }
    Ok(r)
}

/// Parse a positive rational such as `9/10` or `2`.
pub fn parse_sample_point(s: &str) -> Result<BigRational> {
    parse_positive_rational(s)
}

impl FromStr for HodgeMode {
    type Err = Error;

    /// Accepts `hq`, `h=q`, `h1`, `h=1`, `numeric:Q0` and `numeric:Q0:H0`
    /// (with `H0` defaulting to `Q0`).
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "hq" | "h=q" => Ok(HodgeMode::HEqQ),
            "h1" | "h=1" => Ok(HodgeMode::HEqOne),
            other => {
                let rest = other
                    .strip_prefix("numeric:")
                    .ok_or_else(|| Error::Parse(format!("unknown Hodge mode '{other}'")))?;
                let mut parts = rest.split(':');
                let q0 = parse_positive_rational(parts.next().unwrap_or(""))?;
                let h0 = match parts.next() {
                    Some(h) => parse_positive_rational(h)?,
                    None => q0.clone(),
                };
                if parts.next().is_some() {
                    return Err(Error::Parse(format!("too many fields in '{other}'")));
                }
                HodgeMode::numeric(q0, h0)
            }
        }
    }
}

thread_local! {
    static QINT_CACHE: RefCell<HashMap<(HodgeMode, i64), Scalar>> = RefCell::new(HashMap::new());
}

/// `[m]_h = h^(m-1) + h^(m-3) + ... + h^(1-m)` for any integer `m`, using
/// `[-m]_h = -[m]_h`.
pub fn qint_signed(m: i64, mode: &HodgeMode) -> Scalar {
    if m < 0 {
        return -qint_signed(-m, mode);
    }
    if m == 0 {
        return Scalar::zero();
    }
    let key = (mode.clone(), m);
    if let Some(v) = QINT_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return v;
    }
    let v: Scalar = (0..m).map(|t| mode.h_pow(m - 1 - 2 * t)).sum();
    QINT_CACHE.with(|c| c.borrow_mut().insert(key, v.clone()));
    v
}

/// The quantum integer `[m]_h`, `m >= 0`.
pub fn qint(m: i64, mode: &HodgeMode) -> Result<Scalar> {
    if m < 0 {
        return Err(Error::NegativeQuantumInteger(m));
    }
    Ok(qint_signed(m, mode))
}

/// `[m]_h! = [1]_h [2]_h ... [m]_h`.
pub fn qfact(m: i64, mode: &HodgeMode) -> Result<Scalar> {
    if m < 0 {
        return Err(Error::NegativeQuantumInteger(m));
    }
    Ok((1..=m).map(|j| qint_signed(j, mode)).product())
}

/// The Gaussian binomial `[a]! / ([b]! [a-b]!)`.
pub fn qbinom(a: i64, b: i64, mode: &HodgeMode) -> Result<Scalar> {
    if b < 0 || a < 0 || b > a {
        return Err(Error::BinomialRange { top: a, bottom: b });
    }
    let num = qfact(a, mode)?;
    let den = &qfact(b, mode)? * &qfact(a - b, mode)?;
    num.checked_div(&den)
}
