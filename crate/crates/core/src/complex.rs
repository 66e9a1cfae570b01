//! Complex coordinate vectors and matrices.
//!
//! Both serialize complex entries as `[re, im]` pairs.

use std::ops::{Add, Index, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Absolute tolerance under which two coordinates are treated as the same point.
pub const COORD_TOL: f64 = 1e-14;

/// A point of ℂⁿ. Always non-empty with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector(Vec<Complex64>);

impl CVector {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::MalformedInput("vector must have at least one coordinate".into()));
        }
        if coords.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::MalformedInput("vector has a non-finite coordinate".into()));
        }
        Ok(Self(coords))
    }

    /// Builds a vector from real coordinates (imaginary parts zero).
    pub fn from_real(coords: &[f64]) -> Result<Self> {
        Self::new(coords.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Builds a vector from `[re, im]` pairs.
    pub fn from_pairs(pairs: &[[f64; 2]]) -> Result<Self> {
        Self::new(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect())
    }

    /// The origin of ℂⁿ.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "zero-dimensional vector");
        Self(vec![Complex64::new(0.0, 0.0); n])
    }

    /// Unit vector along coordinate `j`, scaled by `t`.
    pub fn axis(n: usize, j: usize, t: f64) -> Self {
        let mut v = Self::zeros(n);
        v.0[j] = Complex64::new(t, 0.0);
        v
    }

    /// Wraps coordinates without validation. Used internally where the values
    /// come from arithmetic on already validated vectors.
    pub(crate) fn from_vec_unchecked(coords: Vec<Complex64>) -> Self {
        Self(coords)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex64> {
        self.0.iter()
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest coordinate modulus (the polydisk gauge).
    pub fn max_modulus(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Hermitian inner product `⟨self, other⟩ = Σ selfᵢ·conj(otherᵢ)`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b.conj()).sum()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self(self.0.iter().map(|z| z * c).collect())
    }

    pub fn scale_complex(&self, c: Complex64) -> Self {
        Self(self.0.iter().map(|z| z * c).collect())
    }

    /// Coordinates `start..start+len` as a new vector.
    pub fn block(&self, start: usize, len: usize) -> Self {
        Self(self.0[start..start + len].to_vec())
    }

    /// Concatenates blocks into one vector.
    pub fn concat<'a>(blocks: impl IntoIterator<Item = &'a CVector>) -> Self {
        Self(blocks.into_iter().flat_map(|b| b.0.iter().copied()).collect())
    }

    /// True when every coordinate differs by at most [`COORD_TOL`].
    pub fn coincides(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| (a.re - b.re).abs() <= COORD_TOL && (a.im - b.im).abs() <= COORD_TOL)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// `[re, im]` pairs, the wire encoding.
    pub fn to_pairs(&self) -> Vec<[f64; 2]> {
        self.0.iter().map(|c| [c.re, c.im]).collect()
    }
}

impl Index<usize> for CVector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl Add for &CVector {
    type Output = CVector;
    fn add(self, rhs: &CVector) -> CVector {
        CVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &CVector {
    type Output = CVector;
    fn sub(self, rhs: &CVector) -> CVector {
        CVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<f64> for &CVector {
    type Output = CVector;
    fn mul(self, rhs: f64) -> CVector {
        self.scale(rhs)
    }
}

impl Serialize for CVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_pairs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        CVector::from_pairs(&pairs).map_err(serde::de::Error::custom)
    }
}

/// A dense complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::MalformedInput("matrix must have positive shape".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::MalformedInput(format!(
                "matrix data has {} entries, shape {}x{} needs {}",
                data.len(),
                rows,
                cols,
                rows * cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: rhs.rows });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Largest entrywise deviation from `Zᵀ = sign·Z`.
    pub fn transpose_defect(&self, sign: f64) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i) * sign).norm());
            }
        }
        worst
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// `I − Z·conj(Z)ᵀ`.
    pub fn identity_minus_gram(&self) -> Self {
        let mut h = self.matmul(&self.adjoint()).expect("shapes agree");
        for v in h.data.iter_mut() {
            *v = -*v;
        }
        for i in 0..h.rows {
            let d = h.get(i, i);
            h.set(i, i, d + 1.0);
        }
        h
    }

    /// Smallest eigenvalue of a Hermitian matrix.
    ///
    /// Only the lower triangle is read, as usual for Hermitian solvers.
    pub fn hermitian_min_eigenvalue(&self) -> f64 {
        let n = self.rows;
        let m = DMatrix::from_fn(n, n, |i, j| self.get(i, j));
        let eig = nalgebra::linalg::SymmetricEigen::new(m);
        eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }
}
