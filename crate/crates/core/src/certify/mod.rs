//! Sampling-based estimates of the largest centered polydisk inside the
//! image of an embedding.
//!
//! An estimate is validated on finitely many points and is never a proof:
//! reports say `SAMPLED_OK` or `WITNESS_FOUND`, nothing stronger.

mod sampler;
mod search;

use rayon::prelude::*;
use serde::Serialize;

pub use sampler::{rd_rotations, UnitSamples};
pub use search::{search_family, MapFamily};

use crate::bounds::{self, BoundInterval};
use crate::complex::CVector;
use crate::domains::DomainSpec;
use crate::error::{Error, Result};
use crate::maps::{candidate_embedding, Descriptor, HoloMap};

/// Sampling budget and bisection settings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifyConfig {
    pub boundary_samples: usize,
    pub interior_samples: usize,
    pub bisection_tol: f64,
    pub max_bisections: usize,
    pub rng_seed: u64,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        Self { boundary_samples: 20_000, interior_samples: 5_000, bisection_tol: 1e-3, max_bisections: 40, rng_seed: 0 }
    }
}

impl CertifyConfig {
    pub const MIN_SAMPLES: usize = 100;

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.boundary_samples < Self::MIN_SAMPLES || self.interior_samples < Self::MIN_SAMPLES {
            return Err(Error::Range(format!(
                "sample counts must be at least {}, got boundary {} and interior {}",
                Self::MIN_SAMPLES,
                self.boundary_samples,
                self.interior_samples
            )));
        }
        if !(self.bisection_tol > 0.0 && self.bisection_tol < 1.0) {
            return Err(Error::Range(format!("bisection_tol must lie in (0, 1), got {}", self.bisection_tol)));
        }
        if self.max_bisections == 0 {
            return Err(Error::Range("max_bisections must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertificateStatus {
    /// Every sample at every tried radius stayed in the image.
    SampledOk,
    /// Some sample escaped; the witness replays the failure.
    WitnessFound,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    /// Largest radius whose samples all lie in the image.
    pub radius_estimate: f64,
    /// Smallest radius at which a sample failed (1 if none did).
    pub radius_upper: f64,
    pub status: CertificateStatus,
    /// A point of the trial polydisk outside the image, at `radius_upper`.
    pub witness: Option<CVector>,
    pub samples_used: usize,
    pub construction: Descriptor,
    pub seed: u64,
    pub bisection_tol: f64,
    /// False when the bisection budget ran out before the bracket shrank to
    /// `bisection_tol`.
    pub tolerance_met: bool,
    /// Proven bounds on `T` at the same point, when known.
    pub bounds: Option<BoundInterval>,
}

/// Whether `w` lies in `f(source)`, decided through the inverse.
pub fn image_contains(f: &HoloMap, w: &CVector) -> Result<bool> {
    match f.inverse(w)? {
        Some(z) => f.source().contains(&z),
        None => Ok(false),
    }
}

/// Estimates `sup{r : 𝔻ⁿ(0, r) ⊆ f(source)}` by bisection on sampled points.
pub fn inscribed_radius(f: &HoloMap, cfg: &CertifyConfig) -> Result<CertificateReport> {
    cfg.validate()?;
    if !f.has_inverse() {
        return Err(Error::UnsupportedMap(format!("{} has no inverse", f.descriptor())));
    }
    let samples = UnitSamples::generate(f.dimension(), cfg.boundary_samples, cfg.interior_samples, cfg.rng_seed).all();
    Ok(bisect(f, &samples, cfg))
}

/// First point of `r·(holes ∪ samples)` outside the image, with the number of
/// points examined. Holes are checked unscaled: a hole fails once it lies
/// inside the open polydisk of radius `r`.
fn first_failure(f: &HoloMap, holes: &[CVector], samples: &[CVector], r: f64) -> (Option<CVector>, usize) {
    if let Some(i) = holes.iter().position(|h| h.max_modulus() < r) {
        return (Some(holes[i].clone()), i + 1);
    }
    let inside = |u: &CVector| {
        let w = u.scale(r);
        matches!(image_contains(f, &w), Ok(true))
    };
    match samples.par_iter().position_first(|u| !inside(u)) {
        Some(i) => (Some(samples[i].scale(r)), holes.len() + i + 1),
        None => (None, holes.len() + samples.len()),
    }
}

pub(crate) fn bisect(f: &HoloMap, samples: &[CVector], cfg: &CertifyConfig) -> CertificateReport {
    let holes = f.hole_images();
    let mut used = 0;
    let mut lo = 0.0;
    let mut hi = 1.0;
    let (fail, k) = first_failure(f, &holes, samples, 1.0);
    used += k;
    let mut witness = fail;
    let mut steps = 1;
    if witness.is_some() {
        while hi - lo > cfg.bisection_tol && steps < cfg.max_bisections {
            let mid = 0.5 * (lo + hi);
            let (fail, k) = first_failure(f, &holes, samples, mid);
            used += k;
            steps += 1;
            match fail {
                Some(w) => {
                    hi = mid;
                    witness = Some(w);
                }
                None => lo = mid,
            }
        }
    } else {
        lo = 1.0;
    }
    CertificateReport {
        radius_estimate: lo,
        radius_upper: hi,
        status: if witness.is_some() { CertificateStatus::WitnessFound } else { CertificateStatus::SampledOk },
        witness,
        samples_used: used,
        construction: f.descriptor(),
        seed: cfg.rng_seed,
        bisection_tol: cfg.bisection_tol,
        tolerance_met: hi - lo <= cfg.bisection_tol,
        bounds: None,
    }
}

/// Certifies the explicit embedding built for `(d, z)`.
pub fn certify_inclusion(d: &DomainSpec, z: &CVector, cfg: &CertifyConfig) -> Result<CertificateReport> {
    let f = candidate_embedding(d, z)?;
    let mut report = inscribed_radius(&f, cfg)?;
    report.bounds = Some(bounds::evaluate_t(d, z)?);
    Ok(report)
}

/// Replays a witness: true when its preimage is outside the source (or the
/// inverse is undefined there).
pub fn witness_replays(f: &HoloMap, w: &CVector) -> Result<bool> {
    Ok(!image_contains(f, w)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::scale_map;

    fn small() -> CertifyConfig {
        CertifyConfig { boundary_samples: 2000, interior_samples: 500, ..CertifyConfig::default() }
    }

    #[test]
    fn config_validation() {
        assert!(CertifyConfig::default().validate().is_ok());
        let bad = CertifyConfig { boundary_samples: 99, ..CertifyConfig::default() };
        assert!(matches!(bad.validate(), Err(Error::Range(_))));
        let bad = CertifyConfig { bisection_tol: 0.0, ..CertifyConfig::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn image_contains_examples() {
        let id = HoloMap::identity(DomainSpec::polydisk(2));
        assert!(image_contains(&id, &CVector::from_real(&[0.5, 0.5]).unwrap()).unwrap());
        let s = scale_map(2, 0.5f64.sqrt()).unwrap();
        assert!(!image_contains(&s, &CVector::axis(2, 0, 0.8)).unwrap());
        let d = DomainSpec::puncture(DomainSpec::ball(2), vec![CVector::zeros(2)]).unwrap();
        let z = CVector::axis(2, 0, 0.3);
        let f = candidate_embedding(&d, &z).unwrap();
        let hole = f.hole_images().remove(0);
        assert!(!image_contains(&f, &hole).unwrap());
    }

    #[test]
    fn identity_polydisk_radius() {
        let id = HoloMap::identity(DomainSpec::polydisk(2));
        let r = inscribed_radius(&id, &small()).unwrap();
        assert!(r.radius_estimate >= 0.995 && r.radius_estimate < 1.0);
        assert!(r.tolerance_met);
        assert_eq!(r.status, CertificateStatus::WitnessFound);
        assert!(witness_replays(&id, r.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn scaled_ball_radius() {
        let s = scale_map(2, 0.5f64.sqrt()).unwrap();
        let r = inscribed_radius(&s, &small()).unwrap();
        assert!((r.radius_estimate - 0.5).abs() < 0.01, "{}", r.radius_estimate);
    }

    #[test]
    fn budget_too_small_widens() {
        let id = HoloMap::identity(DomainSpec::polydisk(2));
        let cfg = CertifyConfig { max_bisections: 3, ..small() };
        let r = inscribed_radius(&id, &cfg).unwrap();
        assert!(!r.tolerance_met);
        assert!(r.radius_upper - r.radius_estimate > cfg.bisection_tol);
    }

    #[test]
    fn needs_inverse() {
        let d = DomainSpec::polydisk(1);
        let f = HoloMap::custom("square", d.clone(), d, |z| z.clone(), None).unwrap();
        assert!(matches!(inscribed_radius(&f, &small()), Err(Error::UnsupportedMap(_))));
    }

    #[test]
    fn punctured_ball_inclusion() {
        let d = DomainSpec::puncture(DomainSpec::ball(2), vec![CVector::zeros(2)]).unwrap();
        let r = certify_inclusion(&d, &CVector::axis(2, 0, 0.3), &small()).unwrap();
        assert!(r.radius_estimate >= 0.29 && r.radius_estimate <= 0.301, "{}", r.radius_estimate);
        let b = r.bounds.unwrap();
        assert!(r.radius_estimate <= b.upper + r.bisection_tol);
    }
}
