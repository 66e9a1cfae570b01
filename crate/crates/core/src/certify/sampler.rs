//! Sample points of the closed unit polydisk, scaled radially at each trial.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::CVector;

/// Rotation numbers of the `d`-dimensional golden-ratio (R_d) sequence:
/// `α_j = φ_d^{-(j+1)}`, where `φ_d` is the positive root of `x^{d+1} = x + 1`.
pub fn rd_rotations(d: usize) -> Vec<f64> {
    let mut phi = 2.0_f64;
    for _ in 0..64 {
        phi = (1.0 + phi).powf(1.0 / (d as f64 + 1.0));
    }
    (0..d).map(|j| phi.powi(-(j as i32 + 1)).fract()).collect()
}

fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * theta)
}

fn uniform_disk(rng: &mut ChaCha8Rng) -> Complex64 {
    let rho = rng.random::<f64>().sqrt();
    Complex64::from_polar(rho, TAU * rng.random::<f64>())
}

/// Point set in the closed unit polydisk. Scaling by `r` gives the test
/// points for the polydisk of radius `r`.
#[derive(Debug, Clone)]
pub struct UnitSamples {
    pub torus: Vec<CVector>,
    pub faces: Vec<CVector>,
    pub interior: Vec<CVector>,
}

impl UnitSamples {
    /// `boundary` low-discrepancy points on the torus `|w_j| = 1`, half as
    /// many spread over the faces `|w_j| = 1`, and `interior` uniform points.
    pub fn generate(n: usize, boundary: usize, interior: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alpha = rd_rotations(n);
        let shift: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        let torus = (0..boundary)
            .map(|k| {
                let coords = (0..n).map(|j| unit((shift[j] + (k as f64 + 1.0) * alpha[j]).fract())).collect();
                CVector::from_vec_unchecked(coords)
            })
            .collect();

        let per_face = (boundary / 2).div_ceil(n);
        let mut faces = Vec::with_capacity(per_face * n);
        for j in 0..n {
            for _ in 0..per_face {
                let coords =
                    (0..n).map(|i| if i == j { unit(rng.random::<f64>()) } else { uniform_disk(&mut rng) }).collect();
                faces.push(CVector::from_vec_unchecked(coords));
            }
        }

        let interior = (0..interior)
            .map(|_| CVector::from_vec_unchecked((0..n).map(|_| uniform_disk(&mut rng)).collect()))
            .collect();
        Self { torus, faces, interior }
    }

    /// All points in evaluation order: torus, faces, interior.
    pub fn all(&self) -> Vec<CVector> {
        self.torus.iter().chain(&self.faces).chain(&self.interior).cloned().collect()
    }
}
