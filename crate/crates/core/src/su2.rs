//! The Hopf algebra `C_q[SU_2]` in the normal form `a^x b^y c^z d^w` with
//! `x * w = 0`, plus the zero-form Laplacian eigenvalue computation on
//! `C_q[CP^1]`.
//!
//! Generators `a = u11`, `b = u12`, `c = u21`, `d = u22` with
//!
//! ```text
//! ab = q ba, ac = q ca, bd = q db, cd = q dc, bc = cb,
//! ad = 1 + q bc, da = 1 + q^-1 bc.
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::json;

use crate::scalar::Scalar;

/// Exponents `(a, b, c, d)`; at most one of the `a`, `d` exponents is nonzero.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Pbw {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl Pbw {
    pub const ONE: Pbw = Pbw { a: 0, b: 0, c: 0, d: 0 };

    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Option<Self> {
        (a == 0 || d == 0).then_some(Self { a, b, c, d })
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b + self.c + self.d
    }

    /// All normal monomials of total degree at most `max`.
    pub fn all_up_to(max: u32) -> Vec<Pbw> {
        let mut out = Vec::new();
        for a in 0..=max {
            for b in 0..=max - a {
                for c in 0..=max - a - b {
                    let dmax = if a > 0 { 0 } else { max - b - c };
                    for d in 0..=dmax {
                        out.push(Pbw { a, b, c, d });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Pbw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// A generator `u^i_j`, `i, j` in `{1, 2}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Generator {
    A,
    B,
    C,
    D,
}

impl Generator {
    /// `u^i_j`.
    pub fn u(i: usize, j: usize) -> Self {
        match (i, j) {
            (1, 1) => Generator::A,
            (1, 2) => Generator::B,
            (2, 1) => Generator::C,
            (2, 2) => Generator::D,
            _ => panic!("matrix coefficient index out of range: u^{i}_{j}"),
        }
    }
}

/// A finite linear combination of normal monomials.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SU2Element {
    terms: BTreeMap<Pbw, Scalar>,
}

fn push(terms: &mut BTreeMap<Pbw, Scalar>, m: Pbw, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let slot = terms.entry(m).or_insert_with(Scalar::zero);
    *slot += &c;
    if slot.is_zero() {
        terms.remove(&m);
    }
}

/// `m * g` in normal form.
fn times_generator(m: Pbw, g: Generator) -> Vec<(Pbw, Scalar)> {
    let Pbw { a, b, c, d } = m;
    match g {
        Generator::B => vec![(Pbw { b: b + 1, ..m }, Scalar::q_pow(-(d as i64)))],
        Generator::C => vec![(Pbw { c: c + 1, ..m }, Scalar::q_pow(-(d as i64)))],
        Generator::A if d == 0 => vec![(Pbw { a: a + 1, ..m }, Scalar::q_pow(-((b + c) as i64)))],
        Generator::A => vec![
            (Pbw { d: d - 1, ..m }, Scalar::one()),
            (Pbw { b: b + 1, c: c + 1, d: d - 1, ..m }, Scalar::q_pow(1 - 2 * d as i64)),
        ],
        Generator::D if a == 0 => vec![(Pbw { d: d + 1, ..m }, Scalar::one())],
        Generator::D => {
            let s = (b + c) as i64;
            vec![
                (Pbw { a: a - 1, ..m }, Scalar::q_pow(s)),
                (Pbw { a: a - 1, b: b + 1, c: c + 1, ..m }, Scalar::q_pow(s + 1)),
            ]
        }
    }
}

fn word(m: Pbw) -> impl Iterator<Item = Generator> {
    std::iter::repeat_n(Generator::A, m.a as usize)
        .chain(std::iter::repeat_n(Generator::B, m.b as usize))
        .chain(std::iter::repeat_n(Generator::C, m.c as usize))
        .chain(std::iter::repeat_n(Generator::D, m.d as usize))
}

impl SU2Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Pbw::ONE, Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::monomial(Pbw::ONE, c)
    }

    pub fn monomial(m: Pbw, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        push(&mut terms, m, c);
        Self { terms }
    }

    pub fn generator(g: Generator) -> Self {
        let m = match g {
            Generator::A => Pbw { a: 1, ..Pbw::ONE },
            Generator::B => Pbw { b: 1, ..Pbw::ONE },
            Generator::C => Pbw { c: 1, ..Pbw::ONE },
            Generator::D => Pbw { d: 1, ..Pbw::ONE },
        };
        Self::monomial(m, Scalar::one())
    }

    /// `u^i_j`.
    pub fn u(i: usize, j: usize) -> Self {
        Self::generator(Generator::u(i, j))
    }

    /// The product of a word in the generators.
    pub fn from_word(w: &[Generator]) -> Self {
        w.iter().fold(Self::one(), |acc, g| acc.times(*g))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Pbw, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Pbw) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut terms = BTreeMap::new();
        for (m, x) in &self.terms {
            push(&mut terms, *m, x * c);
        }
        Self { terms }
    }

    /// Right multiplication by a generator.
    pub fn times(&self, g: Generator) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            for (m2, c2) in times_generator(*m, g) {
                push(&mut terms, m2, c * &c2);
            }
        }
        Self { terms }
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &other.terms {
            let mut part = self.clone();
            for g in word(*m) {
                part = part.times(g);
            }
            out = &out + &part.scale(c);
        }
        out
    }

    /// `eps(a) = eps(d) = 1`, `eps(b) = eps(c) = 0`.
    pub fn counit(&self) -> Scalar {
        self.terms.iter().filter(|(m, _)| m.b == 0 && m.c == 0).map(|(_, c)| c.clone()).sum()
    }

    /// Anti-multiplicative extension of `S(a) = d`, `S(b) = -q^-1 b`,
    /// `S(c) = -q c`, `S(d) = a`.
    pub fn antipode(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let gens: Vec<Generator> = word(*m).collect();
            let mut acc = Self::scalar(c.clone());
            for g in gens.iter().rev() {
                acc = acc.multiply(&antipode_generator(*g));
            }
            out = &out + &acc;
        }
        out
    }

    pub fn coproduct(&self) -> Tensor {
        let mut out = Tensor::zero(2);
        for (m, c) in &self.terms {
            let mut acc = Tensor::unit(2).scale(c);
            for g in word(*m) {
                acc = acc.multiply(&coproduct_generator(g));
            }
            out = out.add(&acc);
        }
        out
    }

    /// `(Delta (x) id) Delta`.
    pub fn coproduct2(&self) -> Tensor {
        self.coproduct().apply_coproduct_at(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| json!({"a": m.a, "b": m.b, "c": m.c, "d": m.d, "coeff": c.to_string()}))
                .collect(),
        )
    }
}

fn antipode_generator(g: Generator) -> SU2Element {
    match g {
        Generator::A => SU2Element::generator(Generator::D),
        Generator::D => SU2Element::generator(Generator::A),
        Generator::B => SU2Element::generator(Generator::B).scale(&Scalar::monomial(-1, -1)),
        Generator::C => SU2Element::generator(Generator::C).scale(&Scalar::monomial(-1, 1)),
    }
}

fn coproduct_generator(g: Generator) -> Tensor {
    // Delta(u^i_j) = sum_k u^i_k (x) u^k_j
    let (i, j) = match g {
        Generator::A => (1, 1),
        Generator::B => (1, 2),
        Generator::C => (2, 1),
        Generator::D => (2, 2),
    };
    let mut out = Tensor::zero(2);
    for k in 1..=2 {
        out = out.add(&Tensor::pure(&[SU2Element::u(i, k), SU2Element::u(k, j)]));
    }
    out
}

impl Add<&SU2Element> for &SU2Element {
    type Output = SU2Element;
    fn add(self, rhs: &SU2Element) -> SU2Element {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            push(&mut terms, *m, c.clone());
        }
        SU2Element { terms }
    }
}

impl Sub<&SU2Element> for &SU2Element {
    type Output = SU2Element;
    fn sub(self, rhs: &SU2Element) -> SU2Element {
        self + &(-rhs)
    }
}

impl Neg for &SU2Element {
    type Output = SU2Element;
    fn neg(self) -> SU2Element {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Mul<&SU2Element> for &SU2Element {
    type Output = SU2Element;
    fn mul(self, rhs: &SU2Element) -> SU2Element {
        self.multiply(rhs)
    }
}

impl fmt::Display for SU2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| match (c.is_one(), *m == Pbw::ONE) {
                (true, _) => m.to_string(),
                (false, true) => format!("({c})"),
                (false, false) => format!("({c})*{m}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An element of the `legs`-fold tensor power, in the product of normal bases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor {
    legs: usize,
    terms: BTreeMap<Vec<Pbw>, Scalar>,
}

impl Tensor {
    pub fn zero(legs: usize) -> Self {
        Self { legs, terms: BTreeMap::new() }
    }

    pub fn unit(legs: usize) -> Self {
        let mut t = Self::zero(legs);
        t.terms.insert(vec![Pbw::ONE; legs], Scalar::one());
        t
    }

    /// `x_1 (x) x_2 (x) ...`.
    pub fn pure(factors: &[SU2Element]) -> Self {
        let mut out = Self::unit(0);
        for f in factors {
            let mut next = Self::zero(out.legs + 1);
            for (k, c) in &out.terms {
                for (m, d) in &f.terms {
                    let mut key = k.clone();
                    key.push(*m);
                    next.push(key, c * d);
                }
            }
            out = next;
        }
        out
    }

    fn push(&mut self, key: Vec<Pbw>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Pbw>, &Scalar)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.legs);
        for (k, x) in &self.terms {
            out.push(k.clone(), x * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.legs, other.legs, "tensor legs");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.push(k.clone(), c.clone());
        }
        out
    }

    /// Legwise product.
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.legs, other.legs, "tensor legs");
        let mut out = Self::zero(self.legs);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let mut partial = Self::unit(0).scale(&(c1 * c2));
                for (m1, m2) in k1.iter().zip(k2) {
                    let prod = SU2Element::monomial(*m1, Scalar::one()).multiply(&SU2Element::monomial(*m2, Scalar::one()));
                    partial = partial.append(&prod);
                }
                out = out.add(&partial);
            }
        }
        out
    }

    fn append(&self, x: &SU2Element) -> Self {
        let mut out = Self::zero(self.legs + 1);
        for (k, c) in &self.terms {
            for (m, d) in &x.terms {
                let mut key = k.clone();
                key.push(*m);
                out.push(key, c * d);
            }
        }
        out
    }

    /// Apply `f` to leg `i`, replacing it by `f`'s output legs.
    fn map_leg(&self, i: usize, out_legs: usize, f: impl Fn(&Pbw) -> Tensor) -> Self {
        let mut out = Self::zero(self.legs - 1 + out_legs);
        for (k, c) in &self.terms {
            for (mid, d) in &f(&k[i]).terms {
                let mut key: Vec<Pbw> = k[..i].to_vec();
                key.extend(mid.iter().copied());
                key.extend(k[i + 1..].iter().copied());
                out.push(key, c * d);
            }
        }
        out
    }

    pub fn apply_coproduct_at(&self, i: usize) -> Self {
        self.map_leg(i, 2, |m| SU2Element::monomial(*m, Scalar::one()).coproduct())
    }

    pub fn apply_counit_at(&self, i: usize) -> Self {
        self.map_leg(i, 0, |m| Tensor::unit(0).scale(&SU2Element::monomial(*m, Scalar::one()).counit()))
    }

    pub fn apply_antipode_at(&self, i: usize) -> Self {
        self.map_leg(i, 1, |m| Tensor::pure(&[SU2Element::monomial(*m, Scalar::one()).antipode()]))
    }

    /// Multiply all legs together, left to right.
    pub fn multiply_out(&self) -> SU2Element {
        let mut out = SU2Element::zero();
        for (k, c) in &self.terms {
            let mut acc = SU2Element::scalar(c.clone());
            for m in k {
                acc = acc.multiply(&SU2Element::monomial(*m, Scalar::one()));
            }
            out = &out + &acc;
        }
        out
    }

    /// A one-leg tensor as an element.
    pub fn into_element(self) -> SU2Element {
        assert_eq!(self.legs, 1, "not a single leg");
        let mut terms = BTreeMap::new();
        for (k, c) in self.terms {
            push(&mut terms, k[0], c);
        }
        SU2Element { terms }
    }
}

/// `z_ij = u^i_1 S(u^1_j)`.
pub fn z(i: usize, j: usize) -> SU2Element {
    SU2Element::u(i, 1).multiply(&SU2Element::u(1, j).antipode())
}

/// The nonzero values of `X(u^a_b S(u^y_x)) Y(u^b_1 S(u^1_y))`, keyed by `(a, b, x, y)`.
pub fn xy_table() -> BTreeMap<(usize, usize, usize, usize), Scalar> {
    BTreeMap::from([((1, 1, 1, 2), Scalar::monomial(-1, 2)), ((2, 1, 2, 2), Scalar::one())])
}

/// `-sum_{a,b,x,y} XY(a,b,x,y) u^i_a S(u^x_j)`.
pub fn laplacian0_cp1(i: usize, j: usize) -> SU2Element {
    let mut out = SU2Element::zero();
    for ((a, _b, x, _y), c) in xy_table() {
        let term = SU2Element::u(i, a).multiply(&SU2Element::u(x, j).antipode());
        out = &out - &term.scale(&c);
    }
    out
}
