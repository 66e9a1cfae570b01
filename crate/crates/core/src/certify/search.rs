//! Derivative-free search over parametric embedding families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{bisect, CertificateReport, CertifyConfig, UnitSamples};
use crate::bounds;
use crate::complex::CVector;
use crate::domains::DomainSpec;
use crate::error::{Error, Result};
use crate::maps::{
    ball_automorphism, recenter, scale_map, unitary_from_params, unitary_map, unitary_param_count, HoloMap,
};

/// Members whose value at the base point exceeds this are recentered.
const CENTER_TOL: f64 = 1e-12;
const INITIAL_STEP: f64 = 1.0;
const MIN_STEP: f64 = 1e-3;
const MAX_STARTS: usize = 4;

/// A family of embeddings of `d` indexed by real parameters.
#[derive(Debug, Clone)]
pub enum MapFamily {
    /// A single map.
    Fixed(HoloMap),
    /// `c·φ_a ∘ φ_z` on a ball, possibly punctured: `2n` parameters for `a`
    /// (squashed into `‖a‖ < 1/2`) and one for `c = e^{−|p|}`.
    BallAutomorphismScaling,
    /// `φ_{Uz} ∘ U` on a ball, possibly punctured, with `U` unitary (`n²`
    /// parameters).
    AutomorphismAfterUnitary,
    /// `U ∘ base` for a base map into the unit ball.
    UnitaryAfter(HoloMap),
}

impl MapFamily {
    pub fn param_count(&self, n: usize) -> usize {
        match self {
            Self::Fixed(_) => 0,
            Self::BallAutomorphismScaling => 2 * n + 1,
            Self::AutomorphismAfterUnitary | Self::UnitaryAfter(_) => unitary_param_count(n),
        }
    }

    /// The member at `params`, sending `z` to the origin.
    pub fn member(&self, d: &DomainSpec, z: &CVector, params: &[f64]) -> Result<HoloMap> {
        let n = d.dimension();
        if params.len() != self.param_count(n) {
            return Err(Error::DimensionMismatch { expected: self.param_count(n), got: params.len() });
        }
        let raw = match self {
            Self::Fixed(f) => f.clone(),
            Self::BallAutomorphismScaling => {
                require_ball_base(d, "ball automorphism family")?;
                let v = CVector::from_pairs(&params[..2 * n].chunks(2).map(|p| [p[0], p[1]]).collect::<Vec<_>>())?;
                let a = v.scale(0.5 / (1.0 + v.norm()));
                let c = (-params[2 * n].abs()).exp();
                scale_map(n, c)?
                    .compose(&ball_automorphism(&a)?.compose(&ball_automorphism(z)?)?)?
                    .restrict(d.clone())?
            }
            Self::AutomorphismAfterUnitary => {
                require_ball_base(d, "unitary automorphism family")?;
                let u = unitary_map(unitary_from_params(n, params)?)?;
                let uz = u.forward(z)?;
                ball_automorphism(&uz)?.compose(&u)?.restrict(d.clone())?
            }
            Self::UnitaryAfter(base) => {
                if base.dimension() != n {
                    return Err(Error::DimensionMismatch { expected: n, got: base.dimension() });
                }
                if !matches!(base.target(), DomainSpec::Ball { .. }) {
                    return Err(Error::UnsupportedMap("unitary family needs a base map into the unit ball".into()));
                }
                unitary_map(unitary_from_params(n, params)?)?.compose(base)?
            }
        };
        let offset = raw.forward(z)?.max_modulus();
        if offset > CENTER_TOL {
            recenter(&raw, z, offset * (1.0 + 1e-9) + f64::MIN_POSITIVE)
        } else {
            Ok(raw)
        }
    }
}

fn require_ball_base(d: &DomainSpec, what: &str) -> Result<()> {
    let base = d.puncture_base().map_or(d, |(b, _)| b);
    if matches!(base, DomainSpec::Ball { .. } | DomainSpec::CartanI { r: 1, .. }) {
        Ok(())
    } else {
        Err(Error::UnsupportedDomain(format!("{what} needs a ball, got {}", d.kind_name())))
    }
}

/// Maximizes the sampled inscribed radius over `family` with multi-start
/// coordinate search and step halving. `budget` caps the number of radius
/// estimates. The result is a lower-bound witness, not the supremum.
pub fn search_family(
    d: &DomainSpec,
    z: &CVector,
    family: &MapFamily,
    cfg: &CertifyConfig,
    budget: usize,
) -> Result<CertificateReport> {
    if budget < 1 {
        return Err(Error::Range("search budget must be at least 1".into()));
    }
    cfg.validate()?;
    if !d.contains(z)? {
        return Err(Error::ContractViolation(format!("point is not a member of {d}")));
    }
    let n = d.dimension();
    let k = family.param_count(n);
    let samples = UnitSamples::generate(n, cfg.boundary_samples, cfg.interior_samples, cfg.rng_seed).all();

    let score = |params: &[f64]| -> Result<Option<CertificateReport>> {
        let f = match family.member(d, z, params) {
            Ok(f) => f,
            Err(Error::ContractViolation(_)) | Err(Error::Range(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        Ok(Some(bisect(&f, &samples, cfg)))
    };

    let mut best: Option<CertificateReport> = None;
    let better = |r: &CertificateReport, than: &Option<CertificateReport>| {
        than.as_ref().is_none_or(|b| r.radius_estimate > b.radius_estimate)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed ^ 0x5eed_5eed);
    let mut used = 0;
    for start in 0..MAX_STARTS {
        if used >= budget {
            break;
        }
        let mut p: Vec<f64> = if start == 0 {
            vec![0.0; k]
        } else {
            (0..k).map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)).collect()
        };
        let mut current = score(&p)?;
        used += 1;
        let mut current_r = current.as_ref().map_or(f64::NEG_INFINITY, |r| r.radius_estimate);
        let mut step = INITIAL_STEP;
        while k > 0 && step >= MIN_STEP && used < budget {
            let mut improved = false;
            'coords: for i in 0..k {
                for sign in [1.0, -1.0] {
                    if used >= budget {
                        break 'coords;
                    }
                    let mut q = p.clone();
                    q[i] += sign * step;
                    let r = score(&q)?;
                    used += 1;
                    if let Some(r) = r {
                        if r.radius_estimate > current_r {
                            current_r = r.radius_estimate;
                            current = Some(r);
                            p = q;
                            improved = true;
                            break;
                        }
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        if let Some(r) = current {
            if better(&r, &best) {
                best = Some(r);
            }
        }
        if k == 0 {
            break;
        }
    }
    let mut report = best.ok_or_else(|| Error::UnsupportedMap("no family member could be built".into()))?;
    report.bounds = bounds::evaluate_t(d, z).ok();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> CertifyConfig {
        CertifyConfig { boundary_samples: 1000, interior_samples: 300, ..CertifyConfig::default() }
    }

    #[test]
    fn singleton_family() {
        let d = DomainSpec::polydisk(2);
        let id = HoloMap::identity(d.clone());
        let z = CVector::zeros(2);
        let r = search_family(&d, &z, &MapFamily::Fixed(id.clone()), &small(), 5).unwrap();
        let direct = super::super::inscribed_radius(&id, &small()).unwrap();
        assert_eq!(r.radius_estimate, direct.radius_estimate);
        assert!(search_family(&d, &z, &MapFamily::Fixed(id), &small(), 0).is_err());
    }

    #[test]
    fn members_send_base_point_to_origin() {
        let d = DomainSpec::puncture(DomainSpec::ball(2), vec![CVector::zeros(2)]).unwrap();
        let z = CVector::from_real(&[0.3, -0.4]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for fam in [MapFamily::BallAutomorphismScaling, MapFamily::AutomorphismAfterUnitary] {
            for _ in 0..20 {
                let p: Vec<f64> = (0..fam.param_count(2)).map(|_| rng.random_range(-2.0..2.0)).collect();
                let f = fam.member(&d, &z, &p).unwrap();
                assert!(f.forward(&z).unwrap().max_modulus() < 1e-12);
            }
        }
    }

    #[test]
    fn punctured_ball_search_lands_in_band() {
        let d = DomainSpec::puncture(DomainSpec::ball(2), vec![CVector::zeros(2)]).unwrap();
        let z = CVector::axis(2, 0, 0.8);
        let r = search_family(&d, &z, &MapFamily::AutomorphismAfterUnitary, &small(), 30).unwrap();
        assert!(r.radius_estimate >= 0.8 / 2f64.sqrt() - 0.02);
        assert!(r.radius_estimate <= 0.5f64.sqrt() + r.bisection_tol);
    }

    #[test]
    fn wrong_family_for_domain() {
        let d = DomainSpec::polydisk(2);
        let z = CVector::zeros(2);
        assert!(matches!(
            search_family(&d, &z, &MapFamily::AutomorphismAfterUnitary, &small(), 3),
            Err(Error::UnsupportedDomain(_))
        ));
    }
}
