//! Dense exact linear algebra over [`Scalar`].
//!
//! Rank, echelon form and kernels use fraction-free (Bareiss) elimination in
//! the Laurent ring after clearing row denominators; field division is only
//! done during back substitution. Inverses use Gauss-Jordan in the field.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, LaurentPoly, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Fraction-free row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Nonzero rows, in the Laurent ring.
    pub rows: Vec<Vec<LaurentPoly>>,
    /// Pivot column of each row, increasing.
    pub pivots: Vec<usize>,
    /// Parity of the row permutation applied.
    pub odd_permutation: bool,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::conj).collect() }
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row-by-row Laurent form: each row multiplied by the lcm of its denominators.
    fn laurent_rows(&self) -> Vec<Vec<LaurentPoly>> {
        self.row_scales()
            .into_iter()
            .enumerate()
            .map(|(i, l)| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter()
                    .map(|x| {
                        if x.is_zero() {
                            LaurentPoly::zero()
                        } else if x.is_laurent() {
                            x.numer() * &l
                        } else {
                            x.numer() * &l.exact_div(x.denom()).expect("lcm is a multiple")
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Fraction-free echelon form. Pivot columns are taken left to right;
    /// within a column the pivot row is the entry of least size.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.laurent_rows();
        let mut prev = LaurentPoly::one();
        let mut r = 0;
        let mut pivots = Vec::new();
        let mut odd = false;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let best = (r..self.rows)
                .filter(|&i| !m[i][c].is_zero())
                .min_by_key(|&i| (m[i][c].term_count() + m[i][c].span(), i));
            let Some(p) = best else { continue };
            if p != r {
                m.swap(p, r);
                odd = !odd;
            }
            let (top, rest) = m.split_at_mut(r + 1);
            let prow = &top[r];
            for row in rest.iter_mut() {
                let lead = std::mem::replace(&mut row[c], LaurentPoly::zero());
                for j in c + 1..self.cols {
                    let v = &(&prow[c] * &row[j]) - &(&lead * &prow[j]);
                    row[j] = v.exact_div(&prev).expect("Bareiss division is exact");
                }
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        Echelon { rows: m, pivots, odd_permutation: odd }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::WrongDegree { expected: self.rows, found: self.cols });
        }
        if self.rows == 0 {
            return Ok(Scalar::one());
        }
        let e = self.echelon();
        if e.rank() < self.rows {
            return Ok(Scalar::zero());
        }
        // The last Bareiss pivot is det(D M) for the row scaling D.
        let mut d = Scalar::from_laurent(e.rows[self.rows - 1][self.cols - 1].clone());
        for s in self.row_scales() {
            d = d.checked_div(&Scalar::from_laurent(s))?;
        }
        Ok(if e.odd_permutation { -d } else { d })
    }

    fn row_scales(&self) -> Vec<LaurentPoly> {
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let mut l = LaurentPoly::one();
                for x in row.iter().filter(|x| !x.is_laurent()) {
                    let g = LaurentPoly::poly_gcd(&l, x.denom());
                    l = (&l * x.denom()).exact_div(&g).expect("gcd divides");
                }
                l
            })
            .collect()
    }

    /// Kernel basis, one vector per non-pivot column `f`, with entry 1 at `f`
    /// and 0 at the other free columns, then rescaled so that its first
    /// nonzero entry is 1.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let e = self.echelon();
        let rows: Vec<Vec<Scalar>> =
            e.rows.iter().map(|r| r.iter().map(|x| Scalar::from_laurent(x.clone())).collect()).collect();
        let mut free = vec![true; self.cols];
        for &p in &e.pivots {
            free[p] = false;
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&f| free[f]) {
            let mut x = vec![Scalar::zero(); self.cols];
            x[f] = Scalar::one();
            for t in (0..e.rank()).rev() {
                let pc = e.pivots[t];
                let mut acc = Scalar::zero();
                for j in pc + 1..self.cols {
                    if !x[j].is_zero() && !rows[t][j].is_zero() {
                        acc += &(&rows[t][j] * &x[j]);
                    }
                }
                x[pc] = -(&acc / &rows[t][pc]);
            }
            let lead = x.iter().find(|v| !v.is_zero()).cloned().expect("kernel vector is nonzero");
            if !lead.is_one() {
                let inv = lead.inv().expect("nonzero");
                for v in &mut x {
                    *v = &*v * &inv;
                }
            }
            out.push(x);
        }
        out
    }

    /// Inverse by Gauss-Jordan elimination in the field.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::WrongDegree { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n)
                .filter(|&i| !a.get(i, c).is_zero())
                .min_by_key(|&i| (a.get(i, c).complexity(), i))
                .ok_or(Error::SingularGram(n, n))?;
            if p != c {
                a.swap_rows(p, c);
                inv.swap_rows(p, c);
            }
            let pinv = a.get(c, c).inv()?;
            a.scale_row(c, &pinv);
            inv.scale_row(c, &pinv);
            for i in 0..n {
                if i == c || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                a.add_row_multiple(i, c, &f);
                inv.add_row_multiple(i, c, &f);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn scale_row(&mut self, i: usize, s: &Scalar) {
        for c in 0..self.cols {
            let v = self.get(i, c) * s;
            self.set(i, c, v);
        }
    }

    /// row_i -= f * row_j
    fn add_row_multiple(&mut self, i: usize, j: usize, f: &Scalar) {
        for c in 0..self.cols {
            let rj = self.get(j, c);
            if rj.is_zero() {
                continue;
            }
            let v = self.get(i, c) - &(f * rj);
            self.set(i, c, v);
        }
    }

    /// Exact substitution `q = q0` in every entry.
    pub fn evaluate(&self, q0: &BigRational) -> Result<Vec<Vec<GaussianRational>>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).evaluate(q0)).collect()).collect()
    }

    /// First entry where two equally sized matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        (0..self.rows * self.cols).find(|&k| self.data[k] != other.data[k]).map(|k| (k / self.cols, k % self.cols))
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of a Hermitian LDL* factorisation at a sample point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LdlCertificate {
    /// Diagonal pivots in elimination order (real for Hermitian input).
    pub pivots: Vec<BigRational>,
    pub positive_definite: bool,
}

/// LDL* with symmetric pivoting on the largest remaining diagonal entry.
/// Stops at the first non-positive pivot.
pub fn ldl_hermitian(a: &[Vec<GaussianRational>]) -> Result<LdlCertificate> {
    let n = a.len();
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(Error::WrongDegree { expected: n, found: row.len() });
        }
        for j in 0..n {
            if a[j][i] != row[j].conj() {
                return Err(Error::NotHomogeneous);
            }
        }
    }
    let mut m: Vec<Vec<GaussianRational>> = a.to_vec();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::with_capacity(n);
    while !remaining.is_empty() {
        let (pos, &p) = remaining
            .iter()
            .enumerate()
            .max_by(|(_, &x), (_, &y)| m[x][x].re.cmp(&m[y][y].re))
            .expect("nonempty");
        let d = m[p][p].re.clone();
        pivots.push(d.clone());
        if !d.is_positive() {
            return Ok(LdlCertificate { pivots, positive_definite: false });
        }
        remaining.remove(pos);
        for &i in &remaining {
            if m[i][p].is_zero() {
                continue;
            }
            let li = m[i][p].scale(&d.recip());
            for &j in &remaining {
                if m[p][j].is_zero() {
                    continue;
                }
                let t = &li * &m[p][j];
                m[i][j] -= &t;
            }
        }
    }
    Ok(LdlCertificate { pivots, positive_definite: true })
}
