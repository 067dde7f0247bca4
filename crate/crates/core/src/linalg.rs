//! Exact linear algebra: Gauss-Jordan over fields, Bareiss over polynomials.

use num::{BigRational, One, Zero};

use crate::error::FieldError;
use crate::field::{Polynomial, Scalar};

pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Inverse of a nonzero element.
    fn inv(&self) -> Self;
    /// Pivot preference: smaller is simpler.
    fn weight(&self) -> usize {
        0
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        Scalar::inv(self).expect("pivot is nonzero")
    }
    fn weight(&self) -> usize {
        self.numerator().num_terms() + self.denominator().num_terms()
    }
}

pub type Matrix<F> = Vec<Vec<F>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].weight()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                if !m[r][j].is_zero() {
                    let t = f.mul(&m[r][j]);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// A basis of `{x : m x = 0}`, where `m` has `cols` columns.
pub fn nullspace<F: Field>(m: &Matrix<F>, cols: usize) -> Vec<Vec<F>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (r, &pc) in pivots.iter().enumerate() {
            if !a[r][free].is_zero() {
                v[pc] = F::zero().sub(&a[r][free]);
            }
        }
        basis.push(v);
    }
    basis
}

/// Fraction-free determinant over the polynomial ring.
pub fn bareiss_det(m: &Matrix<Polynomial>) -> Result<Polynomial, FieldError> {
    let n = m.len();
    if n == 0 {
        return Ok(Polynomial::one());
    }
    let mut a = m.clone();
    let mut prev = Polynomial::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Polynomial::zero());
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][k] = Polynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}

/// Rank over the fraction field of the polynomial ring, by fraction-free
/// elimination.
pub fn bareiss_rank(m: &Matrix<Polynomial>) -> Result<usize, FieldError> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let mut prev = Polynomial::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].num_terms()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &(&a[r][c] * &a[i][j]) - &(&a[i][c] * &a[r][j]);
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][c] = Polynomial::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    Ok(r)
}

/// Entries of a matrix of scalars as polynomials, when every denominator is 1.
pub fn as_polynomial_matrix(m: &Matrix<Scalar>) -> Option<Matrix<Polynomial>> {
    m.iter()
        .map(|row| row.iter().map(|x| x.as_polynomial().cloned()).collect())
        .collect()
}
