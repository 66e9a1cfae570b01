//! Oracles and generators shared by the integration tests.

#![allow(dead_code)]

use num_complex::Complex64;
use polysqueeze::{CMatrix, CVector, DomainSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det(rows: usize, entries: impl Fn(usize, usize) -> Complex64) -> Complex64 {
    let mut a: Vec<Vec<Complex64>> = (0..rows).map(|i| (0..rows).map(|j| entries(i, j)).collect()).collect();
    let mut d = c(1.0, 0.0);
    for k in 0..rows {
        let p = (k..rows).max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm())).unwrap();
        if a[p][k].norm() == 0.0 {
            return c(0.0, 0.0);
        }
        if p != k {
            a.swap(p, k);
            d = -d;
        }
        d *= a[k][k];
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest {
            let f = row[k] / pivot[k];
            for (x, v) in row[k..].iter_mut().zip(&pivot[k..]) {
                *x -= f * v;
            }
        }
    }
    d
}

/// Sylvester's criterion: every leading principal minor is positive.
pub fn minors_positive(h: &CMatrix) -> bool {
    (1..=h.rows()).all(|k| det(k, |i, j| h.get(i, j)).re > 0.0)
}

/// Random Hermitian matrix with entries of size about `scale`, shifted by `shift·I`.
pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize, scale: f64, shift: f64) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, c(shift + scale * rng.random_range(-1.0..1.0), 0.0));
        for j in i + 1..n {
            let v = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * scale;
            m.set(i, j, v);
            m.set(j, i, v.conj());
        }
    }
    m
}

/// Random full matrix for a Cartan I–III domain, roughly half of them inside.
pub fn random_cartan_matrix(rng: &mut ChaCha8Rng, d: &DomainSpec) -> CMatrix {
    let (rows, cols, sign) = match d {
        DomainSpec::CartanI { r, s } => (*r, *s, 0.0),
        DomainSpec::CartanII { p } => (*p, *p, 1.0),
        DomainSpec::CartanIII { q } => (*q, *q, -1.0),
        _ => panic!("not a matrix domain"),
    };
    let scale = rng.random_range(0.0..1.6) / (rows.max(cols) as f64).sqrt();
    let mut a = CMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            a.set(i, j, c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * scale);
        }
    }
    if sign == 0.0 {
        return a;
    }
    let mut m = CMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, (a.get(i, j) + a.get(j, i) * sign) * 0.5);
        }
    }
    m
}

/// Uniform-ish point of `Bⁿ(0, radius)`.
pub fn random_in_ball(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> CVector {
    loop {
        let v = CVector::new((0..n).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect())
            .unwrap();
        if v.norm() < 1.0 {
            return v.scale(radius);
        }
    }
}

/// Point of the polydisk `𝔻ⁿ(0, radius)`.
pub fn random_in_polydisk(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> CVector {
    CVector::new(
        (0..n)
            .map(|_| {
                let rho = rng.random::<f64>().sqrt() * radius;
                Complex64::from_polar(rho, rng.random_range(0.0..std::f64::consts::TAU))
            })
            .collect(),
    )
    .unwrap()
}

/// The matrix-domain variants with sizes up to 4.
pub fn small_matrix_domains() -> Vec<DomainSpec> {
    let mut v = Vec::new();
    for r in 1..=4 {
        for s in r..=4 {
            v.push(DomainSpec::cartan1(r, s).unwrap());
        }
    }
    for p in 1..=4 {
        v.push(DomainSpec::cartan2(p).unwrap());
    }
    for q in 2..=4 {
        v.push(DomainSpec::cartan3(q).unwrap());
    }
    v
}
