//! Poincaré and Kobayashi distances on disks, polydisks, balls and their
//! products.
//!
//! Normalization: `K_𝔻(0, x) = σ(x) = log((1 + x)/(1 − x))`, so that
//! `σ⁻¹ ∘ K` recovers the modulus of the automorphic image directly.

use num_complex::Complex64;
use serde::Serialize;

use crate::complex::CVector;
use crate::domains::DomainSpec;
use crate::error::{Error, Result};

/// A Kobayashi distance, possibly `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct DistanceValue(f64);

impl DistanceValue {
    pub const ZERO: Self = Self(0.0);
    pub const INFINITY: Self = Self(f64::INFINITY);

    pub fn new(v: f64) -> Result<Self> {
        if v.is_nan() || v < 0.0 {
            return Err(Error::Range(format!("distance must be nonnegative, got {v}")));
        }
        Ok(Self(v))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

/// `σ(x) = log((1 + x)/(1 − x))` for `0 ≤ x < 1`.
pub fn sigma(x: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Range(format!("sigma expects x in [0, 1), got {x}")));
    }
    Ok(x.ln_1p() - (-x).ln_1p())
}

/// `σ⁻¹(y) = tanh(y/2)`, clamped below 1 so huge arguments stay in `[0, 1)`.
pub fn sigma_inv(y: f64) -> Result<f64> {
    if y.is_nan() || y < 0.0 {
        return Err(Error::Range(format!("sigma_inv expects y >= 0, got {y}")));
    }
    Ok((y / 2.0).tanh().min(ONE_MINUS_ULP))
}

const ONE_MINUS_ULP: f64 = 1.0 - f64::EPSILON / 2.0;

/// Ball distance from the Gram data of two points.
///
/// With `D = (1 − ‖a‖²)(1 − ‖b‖²)/|1 − ⟨a,b⟩|² = 1 − t²`, where `t = ‖φ_a(b)‖`,
/// the distance is `σ(t) = 2·log(1 + t) − log D`. The numerator of `t²` is
/// `‖a − b‖² − (‖a‖²‖b‖² − |⟨a,b⟩|²)`, which is symmetric in `a`, `b` and
/// vanishes at `a = b`.
fn ball_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let na: f64 = a.iter().map(|c| c.norm_sqr()).sum();
    let nb: f64 = b.iter().map(|c| c.norm_sqr()).sum();
    let ab: Complex64 = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
    let diff: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let mut lagrange = 0.0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            lagrange += (a[i] * b[j] - a[j] * b[i]).norm_sqr();
        }
    }
    let den = (Complex64::new(1.0, 0.0) - ab).norm_sqr();
    let t2 = ((diff - lagrange) / den).clamp(0.0, 1.0);
    let t = t2.sqrt();
    let d = (1.0 - na) * (1.0 - nb) / den;
    2.0 * t.ln_1p() - d.ln()
}

/// Poincaré distance on the unit disk.
pub fn poincare_disk(a: Complex64, b: Complex64) -> f64 {
    ball_distance(&[a], &[b])
}

/// Kobayashi distance between two points of `d`.
///
/// Supported: balls, polydisks (any radii), and products of supported domains.
pub fn kobayashi(d: &DomainSpec, a: &CVector, b: &CVector) -> Result<DistanceValue> {
    for p in [a, b] {
        if !d.contains(p)? {
            return Err(Error::ContractViolation(format!("point is not a member of {d}")));
        }
    }
    kobayashi_unchecked(d, a, b).map(DistanceValue)
}

fn kobayashi_unchecked(d: &DomainSpec, a: &CVector, b: &CVector) -> Result<f64> {
    match d {
        DomainSpec::Ball { .. } => Ok(ball_distance(a.as_slice(), b.as_slice())),
        DomainSpec::Polydisk { radii, .. } => Ok(a
            .iter()
            .zip(b.iter())
            .enumerate()
            .map(|(j, (x, y))| {
                let r = radii.as_ref().map_or(1.0, |r| r[j]);
                poincare_disk(x / r, y / r)
            })
            .fold(0.0, f64::max)),
        DomainSpec::Product { factors } => {
            let pa = d.split_point(a)?;
            let pb = d.split_point(b)?;
            let mut worst: f64 = 0.0;
            for ((f, x), y) in factors.iter().zip(&pa).zip(&pb) {
                worst = worst.max(kobayashi_unchecked(f, x, y)?);
            }
            Ok(worst)
        }
        other => Err(Error::UnsupportedDomain(format!("no Kobayashi distance formula for {}", other.kind_name()))),
    }
}

/// Whether [`kobayashi`] has a formula for `d`.
pub fn kobayashi_supported(d: &DomainSpec) -> bool {
    match d {
        DomainSpec::Ball { .. } | DomainSpec::Polydisk { .. } => true,
        DomainSpec::Product { factors } => factors.iter().all(kobayashi_supported),
        _ => false,
    }
}

/// Distance from `z` to a finite set of points of `ambient`.
pub fn kobayashi_to_set(ambient: &DomainSpec, z: &CVector, set: &[CVector]) -> Result<DistanceValue> {
    if set.is_empty() {
        return Err(Error::ContractViolation("distance to an empty set".into()));
    }
    if !kobayashi_supported(ambient) {
        return Err(Error::UnsupportedDomain(format!("no Kobayashi distance formula for {}", ambient.kind_name())));
    }
    let mut best = DistanceValue::INFINITY;
    for a in set {
        let k = kobayashi(ambient, z, a)?;
        if k < best {
            best = k;
        }
    }
    Ok(best)
}
