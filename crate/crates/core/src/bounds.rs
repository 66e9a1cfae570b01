//! Interval bounds for the squeezing functions `T` (polydisk target) and `S`
//! (ball target), assembled from closed-form rules.
//!
//! Every rule yields an interval `[lower, upper] ⊆ [0, 1]` or nothing. Direct
//! rules are applied once, then the two transfer rules run to a fixed point
//! because each consults the other function's current interval.
//!
//! | rule | statement |
//! |------|-----------|
//! | `EXACT_POLYDISK` | polydisk: `T = 1`, `S = 1/√n` |
//! | `EXACT_BALL` | ball (and `R_I(1,s)`): `T = 1/√n`, `S = 1` |
//! | `PUNCTURED_BALL_T` | ball minus one point `a`: `T = ρ` for `ρ ≤ 1/√n`, `ρ = ‖φ_a(z)‖` |
//! | `PUNCTURED_BALL_S` | ball minus one point `a`: `S = ρ` |
//! | `LEMMA_RELATE_A` | `T ≥ S/√n` |
//! | `LEMMA_RELATE_B` | `S ≥ T/√n` |
//! | `ALEXANDER_UPPER` | ball minus finitely many points: `T ≤ 1/√n` |
//! | `EXTENSION_UPPER` | `Ω' ∖ A`, `A` finite: `T ≤ σ⁻¹(K_{Ω'}(z, A))` |
//! | `CARTAN_T` | Cartan domain with `m` polydisk directions: `1/√(nm) ≤ T ≤ 1/√m` |
//! | `CARTAN_S` | Cartan domain: `S = 1/√m` |
//! | `PRODUCT_S_LOWER` | `S ≥ (Σ S_i⁻²)^(−1/2)` over factors |
//! | `PRODUCT_T_LOWER` | `T ≥ min T_i` over factors |
//! | `CARTAN_PRODUCT` | products of balls, polydisks and Cartan domains: `S = s(D) = (Σ s_i⁻²)^(−1/2)`, `s(D)/√n ≤ T`, and `T ≤ s(D)` for two irreducible factors of dimension ≥ 2 |
//! | `TRIVIAL_RANGE` | `0 ≤ T, S ≤ 1` |

use std::fmt;

use serde::Serialize;

use crate::complex::CVector;
use crate::domains::DomainSpec;
use crate::error::{Error, Result};
use crate::maps::ball_automorphism;
use crate::metrics::{kobayashi_supported, kobayashi_to_set, sigma_inv};

/// Largest allowed overlap violation before intersection reports an error.
pub const CONSISTENCY_TOL: f64 = 1e-12;
/// Endpoints closer than this collapse to a single value.
pub const COLLAPSE_TOL: f64 = 1e-14;
/// Transfer passes stop once no endpoint moves by more than this.
pub const FIXED_POINT_TOL: f64 = 1e-15;
/// Tolerance for [`equality_flags`].
pub const EQUALITY_TOL: f64 = 1e-12;

const MAX_PASSES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RuleId {
    ExactPolydisk,
    ExactBall,
    PuncturedBallT,
    PuncturedBallS,
    LemmaRelateA,
    LemmaRelateB,
    AlexanderUpper,
    ExtensionUpper,
    CartanT,
    CartanS,
    ProductSLower,
    ProductTLower,
    CartanProduct,
    TrivialRange,
}

impl RuleId {
    pub const ALL: [RuleId; 14] = [
        RuleId::ExactPolydisk,
        RuleId::ExactBall,
        RuleId::PuncturedBallT,
        RuleId::PuncturedBallS,
        RuleId::LemmaRelateA,
        RuleId::LemmaRelateB,
        RuleId::AlexanderUpper,
        RuleId::ExtensionUpper,
        RuleId::CartanT,
        RuleId::CartanS,
        RuleId::ProductSLower,
        RuleId::ProductTLower,
        RuleId::CartanProduct,
        RuleId::TrivialRange,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::ExactPolydisk => "EXACT_POLYDISK",
            RuleId::ExactBall => "EXACT_BALL",
            RuleId::PuncturedBallT => "PUNCTURED_BALL_T",
            RuleId::PuncturedBallS => "PUNCTURED_BALL_S",
            RuleId::LemmaRelateA => "LEMMA_RELATE_A",
            RuleId::LemmaRelateB => "LEMMA_RELATE_B",
            RuleId::AlexanderUpper => "ALEXANDER_UPPER",
            RuleId::ExtensionUpper => "EXTENSION_UPPER",
            RuleId::CartanT => "CARTAN_T",
            RuleId::CartanS => "CARTAN_S",
            RuleId::ProductSLower => "PRODUCT_S_LOWER",
            RuleId::ProductTLower => "PRODUCT_T_LOWER",
            RuleId::CartanProduct => "CARTAN_PRODUCT",
            RuleId::TrivialRange => "TRIVIAL_RANGE",
        }
    }

    /// The statement the rule encodes.
    pub fn statement(self) -> &'static str {
        match self {
            RuleId::ExactPolydisk => "polydisk: T = 1, S = 1/sqrt(n)",
            RuleId::ExactBall => "ball: T = 1/sqrt(n), S = 1",
            RuleId::PuncturedBallT => "ball minus a point: T = rho on rho <= 1/sqrt(n)",
            RuleId::PuncturedBallS => "ball minus a point: S = rho",
            RuleId::LemmaRelateA => "T >= S/sqrt(n)",
            RuleId::LemmaRelateB => "S >= T/sqrt(n)",
            RuleId::AlexanderUpper => "ball minus finitely many points: T <= 1/sqrt(n)",
            RuleId::ExtensionUpper => "T <= tanh(K(z, A)/2) for a removed finite set A",
            RuleId::CartanT => "Cartan domain: 1/sqrt(nm) <= T <= 1/sqrt(m)",
            RuleId::CartanS => "Cartan domain: S = 1/sqrt(m)",
            RuleId::ProductSLower => "product: S >= (sum S_i^-2)^(-1/2)",
            RuleId::ProductTLower => "product: T >= min T_i",
            RuleId::CartanProduct => "product of symmetric factors: S = s(D), s(D)/sqrt(n) <= T",
            RuleId::TrivialRange => "0 <= T, S <= 1",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which squeezing function a bound refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Squeezing {
    /// Polydisk target.
    T,
    /// Ball target.
    S,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundInterval {
    pub lower: f64,
    pub upper: f64,
    pub provenance: Vec<RuleId>,
    pub exact: bool,
}

impl BoundInterval {
    /// `[lower, upper]` with a single rule as provenance. Endpoints are
    /// clamped into `[0, 1]`.
    pub fn new(lower: f64, upper: f64, rule: RuleId) -> Self {
        let lower = lower.clamp(0.0, 1.0);
        let upper = upper.clamp(0.0, 1.0);
        Self { lower, upper, provenance: vec![rule], exact: lower == upper }
    }

    pub fn point(v: f64, rule: RuleId) -> Self {
        Self::new(v, v, rule)
    }

    pub fn trivial() -> Self {
        Self::new(0.0, 1.0, RuleId::TrivialRange)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, v: f64, tol: f64) -> bool {
        v >= self.lower - tol && v <= self.upper + tol
    }
}

impl fmt::Display for BoundInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rules: Vec<_> = self.provenance.iter().map(|r| r.name()).collect();
        write!(f, "[{}, {}] ({})", self.lower, self.upper, rules.join(", "))
    }
}

/// Intersects intervals, crediting every rule that attains an endpoint.
///
/// Endpoints within [`COLLAPSE_TOL`] of each other (in either order) collapse
/// to one value, preferring the value of an exact input.
pub fn intersect(intervals: &[BoundInterval]) -> Result<BoundInterval> {
    if intervals.is_empty() {
        return Err(Error::ContractViolation("intersect needs at least one interval".into()));
    }
    let lo = intervals.iter().map(|b| b.lower).fold(f64::NEG_INFINITY, f64::max);
    let hi = intervals.iter().map(|b| b.upper).fold(f64::INFINITY, f64::min);
    if lo > hi + CONSISTENCY_TOL {
        let describe: Vec<String> = intervals.iter().map(ToString::to_string).collect();
        return Err(Error::Inconsistency(format!("lower {lo} exceeds upper {hi}: {}", describe.join("; "))));
    }
    let (lower, upper) = if hi - lo <= COLLAPSE_TOL {
        let v = intervals
            .iter()
            .find(|b| b.exact && (b.lower - lo).abs() <= CONSISTENCY_TOL && (b.lower - hi).abs() <= CONSISTENCY_TOL)
            .map_or(lo, |b| b.lower);
        (v, v)
    } else {
        (lo, hi)
    };

    // A bound of 0 from below or 1 from above carries no information, so it
    // is credited only when no informative bound attains the endpoint.
    let attains_lower = |b: &BoundInterval| (b.lower - lower).abs() <= COLLAPSE_TOL;
    let attains_upper = |b: &BoundInterval| (b.upper - upper).abs() <= COLLAPSE_TOL;
    let informative_lower = |b: &&BoundInterval| b.lower > 0.0;
    let informative_upper = |b: &&BoundInterval| b.upper < 1.0;
    let lower_informed = intervals.iter().filter(informative_lower).any(attains_lower);
    let upper_informed = intervals.iter().filter(informative_upper).any(attains_upper);

    let mut provenance = Vec::new();
    for b in intervals {
        let credit_lower = attains_lower(b) && (b.lower > 0.0 || !lower_informed);
        let credit_upper = attains_upper(b) && (b.upper < 1.0 || !upper_informed);
        if credit_lower || credit_upper {
            for r in &b.provenance {
                if !provenance.contains(r) {
                    provenance.push(*r);
                }
            }
        }
    }
    Ok(BoundInterval { lower, upper, provenance, exact: lower == upper })
}

/// Bounds on both squeezing functions at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluation {
    #[serde(rename = "T")]
    pub t: BoundInterval,
    #[serde(rename = "S")]
    pub s: BoundInterval,
}

/// Whether the two transfer inequalities hold with equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EqualityFlags {
    #[serde(rename = "relateA_equality")]
    pub relate_a_equality: bool,
    #[serde(rename = "relateB_equality")]
    pub relate_b_equality: bool,
}

/// Evaluates both functions at `z ∈ d`.
pub fn evaluate(d: &DomainSpec, z: &CVector) -> Result<Evaluation> {
    if !d.contains(z)? {
        return Err(Error::ContractViolation(format!("point is not a member of {d}")));
    }
    evaluate_member(d, z)
}

pub fn evaluate_t(d: &DomainSpec, z: &CVector) -> Result<BoundInterval> {
    evaluate(d, z).map(|e| e.t)
}

pub fn evaluate_s(d: &DomainSpec, z: &CVector) -> Result<BoundInterval> {
    evaluate(d, z).map(|e| e.s)
}

fn evaluate_member(d: &DomainSpec, z: &CVector) -> Result<Evaluation> {
    let mut t_rules = Vec::new();
    let mut s_rules = Vec::new();
    for rule in RuleId::ALL {
        if matches!(rule, RuleId::LemmaRelateA | RuleId::LemmaRelateB) {
            continue;
        }
        if let Some(b) = apply_rule(rule, Squeezing::T, d, z, None)? {
            t_rules.push(b);
        }
        if let Some(b) = apply_rule(rule, Squeezing::S, d, z, None)? {
            s_rules.push(b);
        }
    }
    let mut t = intersect(&t_rules)?;
    let mut s = intersect(&s_rules)?;

    for _ in 0..MAX_PASSES {
        let t_next = with_transfer(&t_rules, apply_rule(RuleId::LemmaRelateA, Squeezing::T, d, z, Some(&s))?)?;
        let s_next = with_transfer(&s_rules, apply_rule(RuleId::LemmaRelateB, Squeezing::S, d, z, Some(&t_next))?)?;
        let moved = (t_next.lower - t.lower)
            .abs()
            .max((t_next.upper - t.upper).abs())
            .max((s_next.lower - s.lower).abs())
            .max((s_next.upper - s.upper).abs());
        let settled =
            moved <= FIXED_POINT_TOL && t_next.provenance == t.provenance && s_next.provenance == s.provenance;
        t = t_next;
        s = s_next;
        if settled {
            return Ok(Evaluation { t, s });
        }
    }
    Err(Error::Inconsistency(format!("transfer rules did not settle within {MAX_PASSES} passes on {d}")))
}

fn with_transfer(direct: &[BoundInterval], transfer: Option<BoundInterval>) -> Result<BoundInterval> {
    let mut all = direct.to_vec();
    all.extend(transfer);
    intersect(&all)
}

/// Applies one rule to the function `which` at `z ∈ d`.
///
/// `other` is the current interval of the other function and is only read by
/// the transfer rules, which return nothing without it.
pub fn apply_rule(
    rule: RuleId,
    which: Squeezing,
    d: &DomainSpec,
    z: &CVector,
    other: Option<&BoundInterval>,
) -> Result<Option<BoundInterval>> {
    let n = d.dimension() as f64;
    let root_n = n.sqrt();
    Ok(match rule {
        RuleId::TrivialRange => Some(BoundInterval::trivial()),
        RuleId::ExactPolydisk => match d {
            DomainSpec::Polydisk { .. } => Some(match which {
                Squeezing::T => BoundInterval::point(1.0, rule),
                Squeezing::S => BoundInterval::point(1.0 / root_n, rule),
            }),
            _ => None,
        },
        RuleId::ExactBall => {
            if is_ball_like(d) {
                Some(match which {
                    Squeezing::T => BoundInterval::point(1.0 / root_n, rule),
                    Squeezing::S => BoundInterval::point(1.0, rule),
                })
            } else {
                None
            }
        }
        RuleId::PuncturedBallT | RuleId::PuncturedBallS => {
            let wanted = if rule == RuleId::PuncturedBallT { Squeezing::T } else { Squeezing::S };
            if which != wanted {
                return Ok(None);
            }
            let Some(rho) = punctured_ball_radius(d, z)? else {
                return Ok(None);
            };
            match which {
                Squeezing::S => Some(BoundInterval::point(rho, rule)),
                Squeezing::T if rho <= 1.0 / root_n + FIXED_POINT_TOL => Some(BoundInterval::point(rho, rule)),
                Squeezing::T => None,
            }
        }
        RuleId::LemmaRelateA | RuleId::LemmaRelateB => {
            let wanted = if rule == RuleId::LemmaRelateA { Squeezing::T } else { Squeezing::S };
            match other {
                Some(o) if which == wanted => Some(BoundInterval::new(o.lower / root_n, 1.0, rule)),
                _ => None,
            }
        }
        RuleId::AlexanderUpper => match (which, d.puncture_base()) {
            (Squeezing::T, Some((base, _))) if is_ball_like(base) => Some(BoundInterval::new(0.0, 1.0 / root_n, rule)),
            _ => None,
        },
        RuleId::ExtensionUpper => match (which, d.puncture_base()) {
            (Squeezing::T, Some((base, points))) if kobayashi_supported(base) => {
                let set: Vec<CVector> = points.into_iter().cloned().collect();
                let k = kobayashi_to_set(base, z, &set)?;
                Some(BoundInterval::new(0.0, sigma_inv(k.value())?, rule))
            }
            _ => None,
        },
        RuleId::CartanT => match (which, cartan_m(d)) {
            (Squeezing::T, Some(m)) if cartan_t_applies(d) => {
                let m = m as f64;
                Some(BoundInterval::new(1.0 / (root_n * m.sqrt()), 1.0 / m.sqrt(), rule))
            }
            _ => None,
        },
        RuleId::CartanS => match (which, d.is_cartan()) {
            (Squeezing::S, true) => known_s_value(d).map(|s| BoundInterval::point(s, rule)),
            _ => None,
        },
        RuleId::ProductSLower => match (which, d) {
            (Squeezing::S, DomainSpec::Product { .. }) => {
                let lowers = factor_lowers(d, z, Squeezing::S)?;
                if lowers.iter().all(|&s| s > 0.0) {
                    let sum: f64 = lowers.iter().map(|s| s.powi(-2)).sum();
                    Some(BoundInterval::new(sum.powf(-0.5), 1.0, rule))
                } else {
                    None
                }
            }
            _ => None,
        },
        RuleId::ProductTLower => match (which, d) {
            (Squeezing::T, DomainSpec::Product { .. }) => {
                let lowers = factor_lowers(d, z, Squeezing::T)?;
                Some(BoundInterval::new(lowers.iter().copied().fold(1.0, f64::min), 1.0, rule))
            }
            _ => None,
        },
        RuleId::CartanProduct => {
            let Some(s_d) = product_s_value(d) else {
                return Ok(None);
            };
            match which {
                Squeezing::S => Some(BoundInterval::point(s_d, rule)),
                Squeezing::T => {
                    let upper = if two_irreducible_factors(d) { s_d } else { 1.0 };
                    Some(BoundInterval::new(s_d / root_n, upper, rule))
                }
            }
        }
    })
}

/// Diagnostic check of which transfer inequality is an equality.
///
/// `None` when either function is only known up to an interval.
pub fn equality_flags(d: &DomainSpec, z: &CVector) -> Result<Option<EqualityFlags>> {
    let e = evaluate(d, z)?;
    Ok(flags_for(d, &e))
}

/// Same as [`equality_flags`] for an evaluation already at hand.
pub fn flags_for(d: &DomainSpec, e: &Evaluation) -> Option<EqualityFlags> {
    if !e.t.exact || !e.s.exact {
        return None;
    }
    let root_n = (d.dimension() as f64).sqrt();
    Some(EqualityFlags {
        relate_a_equality: (e.t.lower - e.s.lower / root_n).abs() <= EQUALITY_TOL,
        relate_b_equality: (e.s.lower - e.t.lower / root_n).abs() <= EQUALITY_TOL,
    })
}

/// Raw interval `[1/√(nm), 1/√m]` for a Cartan domain, without any
/// tightening from other rules.
pub fn cartan_t_interval(d: &DomainSpec) -> Result<(f64, f64)> {
    let m = d.polydisk_direction_count()? as f64;
    let n = d.dimension() as f64;
    Ok((1.0 / (n * m).sqrt(), 1.0 / m.sqrt()))
}

/// Balls in disguise: `Bⁿ` and `R_I(1, s) = Bˢ`.
fn is_ball_like(d: &DomainSpec) -> bool {
    matches!(d, DomainSpec::Ball { .. } | DomainSpec::CartanI { r: 1, .. })
}

fn cartan_m(d: &DomainSpec) -> Option<usize> {
    d.polydisk_direction_count().ok()
}

/// `R_IV(1)` is a disk and `R_IV(2)` a bidisk, where `T = 1`.
fn cartan_t_applies(d: &DomainSpec) -> bool {
    !matches!(d, DomainSpec::CartanIV { n } if *n <= 2)
}

/// The constant `S` of a symmetric building block, when known.
fn known_s_value(d: &DomainSpec) -> Option<f64> {
    match d {
        DomainSpec::Ball { .. } => Some(1.0),
        DomainSpec::Polydisk { n, .. } => Some(1.0 / (*n as f64).sqrt()),
        DomainSpec::CartanIV { n: 1 } => Some(1.0),
        _ if d.is_cartan() => cartan_m(d).map(|m| 1.0 / (m as f64).sqrt()),
        _ => None,
    }
}

/// `s(D) = (Σ s_i⁻²)^(−1/2)` when every flattened factor has a known `s`.
fn product_s_value(d: &DomainSpec) -> Option<f64> {
    if !matches!(d, DomainSpec::Product { .. }) {
        return None;
    }
    let mut sum = 0.0;
    for f in d.flat_factors() {
        sum += known_s_value(f)?.powi(-2);
    }
    Some(sum.powf(-0.5))
}

fn two_irreducible_factors(d: &DomainSpec) -> bool {
    let factors = d.flat_factors();
    factors.len() == 2
        && factors.iter().all(|f| {
            f.dimension() >= 2
                && match f {
                    DomainSpec::Ball { .. } => true,
                    DomainSpec::CartanIV { n } => *n >= 3,
                    other => other.is_cartan(),
                }
        })
}

/// `ρ = ‖φ_a(z)‖` for a ball with exactly one point `a` removed.
fn punctured_ball_radius(d: &DomainSpec, z: &CVector) -> Result<Option<f64>> {
    let Some((base, points)) = d.puncture_base() else {
        return Ok(None);
    };
    if !is_ball_like(base) || points.len() != 1 {
        return Ok(None);
    }
    let a = points[0];
    if a.is_zero() {
        return Ok(Some(z.norm()));
    }
    Ok(Some(ball_automorphism(a)?.forward(z)?.norm()))
}

fn factor_lowers(d: &DomainSpec, z: &CVector, which: Squeezing) -> Result<Vec<f64>> {
    let DomainSpec::Product { factors } = d else {
        return Ok(Vec::new());
    };
    let blocks = d.split_point(z)?;
    factors
        .iter()
        .zip(&blocks)
        .map(|(f, zf)| {
            let e = evaluate_member(f, zf)?;
            Ok(match which {
                Squeezing::T => e.t.lower,
                Squeezing::S => e.s.lower,
            })
        })
        .collect()
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12
    }

    fn punctured_ball(n: usize) -> DomainSpec {
        DomainSpec::puncture(DomainSpec::ball(n), vec![CVector::zeros(n)]).unwrap()
    }

    #[test]
    fn exact_polydisk_and_ball() {
        for n in 1..=6 {
            let z = CVector::zeros(n);
            let p = evaluate(&DomainSpec::polydisk(n), &z).unwrap();
            assert_eq!((p.t.lower, p.t.upper), (1.0, 1.0));
            assert_eq!(p.s.lower, 1.0 / (n as f64).sqrt());
            let b = evaluate(&DomainSpec::ball(n), &z).unwrap();
            assert_eq!((b.t.lower, b.t.upper), (1.0 / (n as f64).sqrt(), 1.0 / (n as f64).sqrt()));
            assert_eq!((b.s.lower, b.s.upper), (1.0, 1.0));
        }
        let t = evaluate_t(&DomainSpec::ball(4), &CVector::from_real(&[0.1, 0.2, 0.0, -0.3]).unwrap()).unwrap();
        assert_eq!((t.lower, t.upper), (0.5, 0.5));
        assert!(t.provenance.contains(&RuleId::ExactBall));
    }

    #[test]
    fn punctured_ball_regions() {
        let d = punctured_ball(2);
        let t = evaluate_t(&d, &CVector::axis(2, 0, 0.3)).unwrap();
        assert!(t.exact && t.lower == 0.3, "{t}");
        assert!(t.provenance.contains(&RuleId::PuncturedBallT));
        let t = evaluate_t(&d, &CVector::axis(2, 0, 0.8)).unwrap();
        assert!(close(t.lower, 0.8 / 2f64.sqrt()) && close(t.upper, 0.5f64.sqrt()), "{t}");
        assert!(t.provenance.contains(&RuleId::LemmaRelateA));
        assert!(t.provenance.contains(&RuleId::AlexanderUpper));
        let s = evaluate_s(&d, &CVector::axis(2, 0, 0.5)).unwrap();
        assert!(s.exact && s.lower == 0.5);
    }

    #[test]
    fn punctured_ball_off_center() {
        let a = CVector::from_real(&[0.2, 0.1]).unwrap();
        let d = DomainSpec::puncture(DomainSpec::ball(2), vec![a.clone()]).unwrap();
        let z = CVector::from_real(&[0.1, -0.2]).unwrap();
        let rho = ball_automorphism(&a).unwrap().forward(&z).unwrap().norm();
        let e = evaluate(&d, &z).unwrap();
        assert!(close(e.s.lower, rho) && e.s.exact);
        assert!(rho < 0.5f64.sqrt());
        assert!(close(e.t.lower, rho) && e.t.exact);
    }

    #[test]
    fn extension_matches_exact_value() {
        let d = punctured_ball(3);
        let z = CVector::from_real(&[0.2, 0.1, -0.3]).unwrap();
        let ext = apply_rule(RuleId::ExtensionUpper, Squeezing::T, &d, &z, None).unwrap().unwrap();
        assert!((ext.upper - z.norm()).abs() < 1e-10);
    }

    #[test]
    fn cartan_rules() {
        let d = DomainSpec::cartan3(4).unwrap();
        let z = CVector::zeros(6);
        let b = apply_rule(RuleId::CartanT, Squeezing::T, &d, &z, None).unwrap().unwrap();
        assert!(close(b.lower, 1.0 / 12f64.sqrt()) && close(b.upper, 0.5f64.sqrt()));
        let s = evaluate_s(&d, &z).unwrap();
        assert!(s.exact && close(s.lower, 0.5f64.sqrt()));
        assert!(apply_rule(RuleId::CartanT, Squeezing::T, &DomainSpec::cartan4(2).unwrap(), &CVector::zeros(2), None)
            .unwrap()
            .is_none());
    }

    #[test]
    fn product_rules() {
        let d = DomainSpec::product(vec![DomainSpec::ball(3), DomainSpec::ball(2)]).unwrap();
        let z = CVector::zeros(5);
        let t = evaluate_t(&d, &z).unwrap();
        assert!(close(t.lower, 1.0 / 3f64.sqrt()));
        assert!(t.lower > 1.0 / 5f64.sqrt());
        assert!(t.provenance.contains(&RuleId::ProductTLower));
        let s = evaluate_s(&d, &z).unwrap();
        assert!(close(s.lower, 0.5f64.sqrt()));
        let ps = apply_rule(RuleId::ProductSLower, Squeezing::S, &d, &z, None).unwrap().unwrap();
        assert!(close(ps.lower, 0.5f64.sqrt()));

        let c =
            DomainSpec::product(vec![DomainSpec::cartan1(1, 3).unwrap(), DomainSpec::cartan1(1, 2).unwrap()]).unwrap();
        let b = apply_rule(RuleId::CartanProduct, Squeezing::T, &c, &z, None).unwrap().unwrap();
        assert!(close(b.lower, 1.0 / 10f64.sqrt()) && close(b.upper, 0.5f64.sqrt()));
    }

    #[test]
    fn polydisk_factor_never_lowers_product_t() {
        let base = DomainSpec::product(vec![DomainSpec::ball(3), DomainSpec::ball(2)]).unwrap();
        let more = DomainSpec::product(vec![base.clone(), DomainSpec::polydisk(2)]).unwrap();
        let a = apply_rule(RuleId::ProductTLower, Squeezing::T, &base, &CVector::zeros(5), None).unwrap().unwrap();
        let b = apply_rule(RuleId::ProductTLower, Squeezing::T, &more, &CVector::zeros(7), None).unwrap().unwrap();
        assert!(b.lower >= a.lower);
    }

    #[test]
    fn intersect_cases() {
        let a = BoundInterval::trivial();
        let b = BoundInterval::point(0.3, RuleId::PuncturedBallT);
        let r = intersect(&[a, b]).unwrap();
        assert_eq!((r.lower, r.upper), (0.3, 0.3));
        assert_eq!(r.provenance, vec![RuleId::PuncturedBallT]);

        let r = intersect(&[
            BoundInterval::new(0.5657, 1.0, RuleId::LemmaRelateA),
            BoundInterval::new(0.0, 0.7071, RuleId::AlexanderUpper),
        ])
        .unwrap();
        assert_eq!((r.lower, r.upper), (0.5657, 0.7071));
        assert_eq!(r.provenance.len(), 2);

        let err = intersect(&[
            BoundInterval::new(0.6, 1.0, RuleId::LemmaRelateA),
            BoundInterval::new(0.0, 0.5, RuleId::AlexanderUpper),
        ]);
        assert!(matches!(err, Err(Error::Inconsistency(_))));
        assert!(intersect(&[]).is_err());
    }

    #[test]
    fn flags_pattern() {
        for n in 2..=5 {
            let z = CVector::zeros(n);
            let b = equality_flags(&DomainSpec::ball(n), &z).unwrap().unwrap();
            assert!(b.relate_a_equality && !b.relate_b_equality);
            let p = equality_flags(&DomainSpec::polydisk(n), &z).unwrap().unwrap();
            assert!(!p.relate_a_equality && p.relate_b_equality);
        }
        let d = punctured_ball(2);
        assert!(equality_flags(&d, &CVector::axis(2, 0, 0.9)).unwrap().is_none());
    }

    #[test]
    fn non_member_is_rejected() {
        let d = punctured_ball(2);
        assert!(matches!(evaluate(&d, &CVector::zeros(2)), Err(Error::ContractViolation(_))));
    }

    #[test]
    fn rule_names_serialize() {
        assert_eq!(serde_json::to_string(&RuleId::PuncturedBallT).unwrap(), "\"PUNCTURED_BALL_T\"");
        for r in RuleId::ALL {
            assert_eq!(serde_json::to_string(&r).unwrap(), format!("\"{}\"", r.name()));
        }
    }
}
