//! Explicit holomorphic embeddings as composable values.
//!
//! A [`HoloMap`] carries its declared source and target domains, a forward
//! formula, an inverse formula where one exists, and a symbolic descriptor.
//! Formulas are defined on the whole ambient space where they make sense, so
//! a map restricted to a punctured domain still evaluates at the removed
//! points; certification relies on that to locate the holes of an image.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::bounds;
use crate::complex::{CMatrix, CVector};
use crate::domains::DomainSpec;
use crate::error::{Error, Result};

type MapFn = Arc<dyn Fn(&CVector) -> CVector + Send + Sync>;

/// Boxed inverse accepted by [`HoloMap::custom`].
pub type BoxedMapFn = Box<dyn Fn(&CVector) -> CVector + Send + Sync>;

/// Symbolic tag tree naming how a map was built.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Descriptor {
    pub tag: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Descriptor>,
}

impl Descriptor {
    fn leaf(tag: impl Into<String>) -> Self {
        Self { tag: tag.into(), children: Vec::new() }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)?;
        if !self.children.is_empty() {
            write!(f, "[")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

enum MapKind {
    Identity,
    PolydiskAutomorphism { centers: Vec<Complex64>, radii: Vec<f64> },
    BallAutomorphism { a: CVector },
    Scale { c: f64 },
    Unitary { u: CMatrix },
    Recenter { inner: HoloMap, shift: CVector, eps: f64 },
    Product { maps: Vec<HoloMap>, weights: Vec<f64> },
    Compose { outer: HoloMap, inner: HoloMap },
    Custom { name: String, forward: MapFn, inverse: Option<MapFn> },
}

/// A holomorphic map with declared source and target.
#[derive(Clone)]
pub struct HoloMap {
    source: DomainSpec,
    target: DomainSpec,
    kind: Arc<MapKind>,
}

impl fmt::Debug for HoloMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HoloMap")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("descriptor", &self.descriptor().to_string())
            .finish()
    }
}

fn mobius(a: Complex64, z: Complex64) -> Complex64 {
    (z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z)
}

fn ball_aut_apply(a: &CVector, z: &CVector) -> CVector {
    let aa = a.norm_sqr();
    if aa == 0.0 {
        return z.scale(-1.0);
    }
    let za = z.inner(a);
    let s = (1.0 - aa).sqrt();
    let den = Complex64::new(1.0, 0.0) - za;
    let coef = za / aa;
    let out = a
        .iter()
        .zip(z.iter())
        .map(|(ai, zi)| {
            let p = coef * ai;
            (ai - p - (zi - p) * s) / den
        })
        .collect();
    CVector::from_vec_unchecked(out)
}

fn matvec(u: &CMatrix, z: &CVector) -> CVector {
    let n = u.rows();
    CVector::from_vec_unchecked((0..n).map(|i| (0..u.cols()).map(|j| u.get(i, j) * z[j]).sum()).collect())
}

impl HoloMap {
    fn build(source: DomainSpec, target: DomainSpec, kind: MapKind) -> Self {
        Self { source, target, kind: Arc::new(kind) }
    }

    /// Identity on `source`. The target is `source` itself when it is a unit
    /// ball or polydisk, otherwise the unit polydisk of the same dimension.
    pub fn identity(source: DomainSpec) -> Self {
        let n = source.dimension();
        let target = match &source {
            DomainSpec::Ball { .. } | DomainSpec::Polydisk { radii: None, .. } => source.clone(),
            _ => DomainSpec::polydisk(n),
        };
        Self::build(source, target, MapKind::Identity)
    }

    /// A user-supplied map. `inverse` may be absent, in which case
    /// certification refuses the map.
    pub fn custom(
        name: impl Into<String>,
        source: DomainSpec,
        target: DomainSpec,
        forward: impl Fn(&CVector) -> CVector + Send + Sync + 'static,
        inverse: Option<BoxedMapFn>,
    ) -> Result<Self> {
        check_dims(&source, &target)?;
        Ok(Self::build(
            source,
            target,
            MapKind::Custom { name: name.into(), forward: Arc::new(forward), inverse: inverse.map(Arc::from) },
        ))
    }

    pub fn source(&self) -> &DomainSpec {
        &self.source
    }

    pub fn target(&self) -> &DomainSpec {
        &self.target
    }

    pub fn dimension(&self) -> usize {
        self.source.dimension()
    }

    pub fn has_inverse(&self) -> bool {
        match &*self.kind {
            MapKind::Custom { inverse, .. } => inverse.is_some(),
            MapKind::Recenter { inner, .. } => inner.has_inverse(),
            MapKind::Product { maps, .. } => maps.iter().all(HoloMap::has_inverse),
            MapKind::Compose { outer, inner } => outer.has_inverse() && inner.has_inverse(),
            _ => true,
        }
    }

    /// Same formula, different declared source of equal dimension.
    pub fn restrict(&self, source: DomainSpec) -> Result<Self> {
        if source.dimension() != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), got: source.dimension() });
        }
        Ok(Self { source, target: self.target.clone(), kind: Arc::clone(&self.kind) })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &HoloMap) -> Result<Self> {
        if inner.target.dimension() != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), got: inner.target.dimension() });
        }
        Ok(Self::build(
            inner.source.clone(),
            self.target.clone(),
            MapKind::Compose { outer: self.clone(), inner: inner.clone() },
        ))
    }

    /// Evaluates the map. No membership check is made on `z`.
    pub fn forward(&self, z: &CVector) -> Result<CVector> {
        if z.len() != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), got: z.len() });
        }
        Ok(self.fwd(z))
    }

    /// Evaluates the inverse formula at `w`.
    ///
    /// `Ok(None)` when the formula is undefined at `w` (non-finite result);
    /// [`Error::UnsupportedMap`] when the map has no inverse.
    pub fn inverse(&self, w: &CVector) -> Result<Option<CVector>> {
        if w.len() != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), got: w.len() });
        }
        if !self.has_inverse() {
            return Err(Error::UnsupportedMap(format!("{} has no inverse", self.descriptor())));
        }
        Ok(self.inv(w).filter(CVector::is_finite))
    }

    pub(crate) fn fwd(&self, z: &CVector) -> CVector {
        match &*self.kind {
            MapKind::Identity => z.clone(),
            MapKind::PolydiskAutomorphism { centers, radii } => CVector::from_vec_unchecked(
                z.iter().zip(centers).zip(radii).map(|((zj, aj), r)| mobius(aj / r, zj / r)).collect(),
            ),
            MapKind::BallAutomorphism { a } => ball_aut_apply(a, z),
            MapKind::Scale { c } => z.scale(*c),
            MapKind::Unitary { u } => matvec(u, z),
            MapKind::Recenter { inner, shift, eps } => (&inner.fwd(z) - shift).scale(1.0 / (1.0 + eps)),
            MapKind::Product { maps, weights } => {
                let mut offset = 0;
                let blocks: Vec<CVector> = maps
                    .iter()
                    .zip(weights)
                    .map(|(m, w)| {
                        let k = m.dimension();
                        let b = m.fwd(&z.block(offset, k)).scale(*w);
                        offset += k;
                        b
                    })
                    .collect();
                CVector::concat(&blocks)
            }
            MapKind::Compose { outer, inner } => outer.fwd(&inner.fwd(z)),
            MapKind::Custom { forward, .. } => forward(z),
        }
    }

    fn inv(&self, w: &CVector) -> Option<CVector> {
        Some(match &*self.kind {
            MapKind::Identity => w.clone(),
            MapKind::PolydiskAutomorphism { centers, radii } => CVector::from_vec_unchecked(
                w.iter().zip(centers).zip(radii).map(|((wj, aj), r)| mobius(-aj / r, *wj) * r).collect(),
            ),
            MapKind::BallAutomorphism { a } => ball_aut_apply(a, w),
            MapKind::Scale { c } => w.scale(1.0 / c),
            MapKind::Unitary { u } => matvec(&u.adjoint(), w),
            MapKind::Recenter { inner, shift, eps } => inner.inv(&(&w.scale(1.0 + eps) + shift))?,
            MapKind::Product { maps, weights } => {
                let mut offset = 0;
                let mut blocks = Vec::with_capacity(maps.len());
                for (m, wt) in maps.iter().zip(weights) {
                    let k = m.dimension();
                    blocks.push(m.inv(&w.block(offset, k).scale(1.0 / wt))?);
                    offset += k;
                }
                CVector::concat(&blocks)
            }
            MapKind::Compose { outer, inner } => inner.inv(&outer.inv(w)?)?,
            MapKind::Custom { inverse, .. } => inverse.as_ref()?(w),
        })
    }

    /// Images of the points removed from the source, i.e. points of the
    /// target that the image is known to miss.
    ///
    /// For product maps each factor's holes are padded with zeros in the other
    /// blocks, which are image points whenever the factor maps are centered.
    pub fn hole_images(&self) -> Vec<CVector> {
        if let Some((_, points)) = self.source.puncture_base() {
            return points.into_iter().map(|p| self.fwd(p)).collect();
        }
        match &*self.kind {
            MapKind::Product { maps, weights } => {
                let n = self.dimension();
                let mut out = Vec::new();
                let mut offset = 0;
                for (m, w) in maps.iter().zip(weights) {
                    let k = m.dimension();
                    for h in m.hole_images() {
                        let mut coords = vec![Complex64::new(0.0, 0.0); n];
                        for (j, c) in h.iter().enumerate() {
                            coords[offset + j] = c * w;
                        }
                        out.push(CVector::from_vec_unchecked(coords));
                    }
                    offset += k;
                }
                out
            }
            MapKind::Compose { outer, inner } => inner.hole_images().iter().map(|h| outer.fwd(h)).collect(),
            MapKind::Recenter { inner, shift, eps } => {
                inner.hole_images().iter().map(|h| (h - shift).scale(1.0 / (1.0 + eps))).collect()
            }
            _ => Vec::new(),
        }
    }

    pub fn descriptor(&self) -> Descriptor {
        let fmt_c = |c: &Complex64| {
            if c.im == 0.0 {
                format!("{}", c.re)
            } else {
                format!("{}{:+}i", c.re, c.im)
            }
        };
        let fmt_v = |v: &[Complex64]| v.iter().map(fmt_c).collect::<Vec<_>>().join(",");
        match &*self.kind {
            MapKind::Identity => Descriptor::leaf("identity"),
            MapKind::PolydiskAutomorphism { centers, radii } => {
                if radii.iter().all(|r| *r == 1.0) {
                    Descriptor::leaf(format!("polydisk_automorphism(a=[{}])", fmt_v(centers)))
                } else {
                    Descriptor::leaf(format!("polydisk_automorphism(a=[{}], radii={radii:?})", fmt_v(centers)))
                }
            }
            MapKind::BallAutomorphism { a } => {
                Descriptor::leaf(format!("ball_automorphism(a=[{}])", fmt_v(a.as_slice())))
            }
            MapKind::Scale { c } => Descriptor::leaf(format!("scale(c={c})")),
            MapKind::Unitary { u } => Descriptor::leaf(format!("unitary(n={})", u.rows())),
            MapKind::Recenter { inner, eps, .. } => {
                Descriptor { tag: format!("recenter(eps={eps})"), children: vec![inner.descriptor()] }
            }
            MapKind::Product { maps, weights } => Descriptor {
                tag: format!("product(weights={weights:?})"),
                children: maps.iter().map(HoloMap::descriptor).collect(),
            },
            MapKind::Compose { outer, inner } => {
                Descriptor { tag: "compose".into(), children: vec![outer.descriptor(), inner.descriptor()] }
            }
            MapKind::Custom { name, .. } => Descriptor::leaf(format!("custom({name})")),
        }
    }
}

fn check_dims(source: &DomainSpec, target: &DomainSpec) -> Result<()> {
    if source.dimension() != target.dimension() {
        return Err(Error::DimensionMismatch { expected: source.dimension(), got: target.dimension() });
    }
    Ok(())
}

/// Disk automorphism `ζ ↦ (ζ − a)/(1 − ā·ζ)` on the unit disk.
pub fn mobius_disk(a: Complex64) -> Result<HoloMap> {
    if !(a.norm() < 1.0) {
        return Err(Error::Range(format!("mobius center must satisfy |a| < 1, got {}", a.norm())));
    }
    Ok(HoloMap::build(
        DomainSpec::polydisk(1),
        DomainSpec::polydisk(1),
        MapKind::PolydiskAutomorphism { centers: vec![a], radii: vec![1.0] },
    ))
}

/// Coordinatewise Möbius maps sending `a` to the origin. `source` must be a
/// polydisk (any radii); the target is the unit polydisk.
pub fn polydisk_automorphism(source: &DomainSpec, a: &CVector) -> Result<HoloMap> {
    let DomainSpec::Polydisk { n, radii } = source else {
        return Err(Error::UnsupportedDomain(format!("{} is not a polydisk", source.kind_name())));
    };
    if !source.contains(a)? {
        return Err(Error::Range("polydisk automorphism center must lie in the polydisk".into()));
    }
    let radii = radii.clone().unwrap_or_else(|| vec![1.0; *n]);
    Ok(HoloMap::build(
        source.clone(),
        DomainSpec::polydisk(*n),
        MapKind::PolydiskAutomorphism { centers: a.as_slice().to_vec(), radii },
    ))
}

/// The involutive ball automorphism
/// `φ_a(w) = (a − P_a w − √(1 − ‖a‖²)(w − P_a w))/(1 − ⟨w, a⟩)`,
/// `P_a` the orthogonal projection onto `span(a)`; `φ_0 = −id`.
pub fn ball_automorphism(a: &CVector) -> Result<HoloMap> {
    if !(a.norm() < 1.0) {
        return Err(Error::Range(format!("ball automorphism center must satisfy ‖a‖ < 1, got {}", a.norm())));
    }
    let n = a.len();
    Ok(HoloMap::build(DomainSpec::ball(n), DomainSpec::ball(n), MapKind::BallAutomorphism { a: a.clone() }))
}

/// `z ↦ c·z` on `Bⁿ`.
pub fn scale_map(n: usize, c: f64) -> Result<HoloMap> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Range(format!("scale factor must be positive, got {c}")));
    }
    if n == 0 {
        return Err(Error::Range("dimension must be positive".into()));
    }
    Ok(HoloMap::build(DomainSpec::ball(n), DomainSpec::ball(n), MapKind::Scale { c }))
}

/// Linear map by a unitary matrix on `Bⁿ`.
pub fn unitary_map(u: CMatrix) -> Result<HoloMap> {
    if !u.is_square() {
        return Err(Error::MalformedInput("unitary must be square".into()));
    }
    let defect = unitary_defect(&u);
    if defect > 1e-10 {
        return Err(Error::MalformedInput(format!("matrix is not unitary (defect {defect:e})")));
    }
    let n = u.rows();
    Ok(HoloMap::build(DomainSpec::ball(n), DomainSpec::ball(n), MapKind::Unitary { u }))
}

fn unitary_defect(u: &CMatrix) -> f64 {
    let g = u.adjoint().matmul(u).expect("square");
    let id = CMatrix::identity(u.rows());
    g.data().iter().zip(id.data()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

/// A unitary sending `v` to `‖v‖·e₁` (identity for `v = 0`).
pub fn unitary_aligning(v: &CVector) -> CMatrix {
    let n = v.len();
    let norm = v.norm();
    if norm == 0.0 {
        return CMatrix::identity(n);
    }
    // Householder reflection to α·e₁ with α = −e^{i·arg v₁}‖v‖, then a phase
    // on the first row to make the result real positive.
    let phase = if v[0].norm() == 0.0 { Complex64::new(1.0, 0.0) } else { v[0] / v[0].norm() };
    let alpha = -phase * norm;
    let mut u: Vec<Complex64> = v.iter().copied().collect();
    u[0] -= alpha;
    let uu: f64 = u.iter().map(|c| c.norm_sqr()).sum();
    let mut h = CMatrix::identity(n);
    if uu > 0.0 {
        for i in 0..n {
            for j in 0..n {
                let val = h.get(i, j) - u[i] * u[j].conj() * (2.0 / uu);
                h.set(i, j, val);
            }
        }
    }
    let fix = (alpha / alpha.norm()).conj();
    for j in 0..n {
        let val = h.get(0, j) * fix;
        h.set(0, j, val);
    }
    h
}

/// Number of real parameters taken by [`unitary_from_params`].
pub fn unitary_param_count(n: usize) -> usize {
    n * n
}

/// A unitary built from `n²` real parameters: one Givens rotation (angle and
/// phase) per coordinate pair followed by a diagonal phase. All-zero
/// parameters give the identity.
pub fn unitary_from_params(n: usize, params: &[f64]) -> Result<CMatrix> {
    if params.len() != unitary_param_count(n) {
        return Err(Error::DimensionMismatch { expected: unitary_param_count(n), got: params.len() });
    }
    let mut u = CMatrix::identity(n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            let (theta, phi) = (params[k], params[k + 1]);
            k += 2;
            let (s, c) = theta.sin_cos();
            let e = Complex64::from_polar(1.0, phi);
            // Rows i and j of G·U.
            for col in 0..n {
                let ui = u.get(i, col);
                let uj = u.get(j, col);
                u.set(i, col, ui * c - e.conj() * uj * s);
                u.set(j, col, e * ui * s + uj * c);
            }
        }
    }
    for i in 0..n {
        let e = Complex64::from_polar(1.0, params[k + i]);
        for col in 0..n {
            let v = u.get(i, col) * e;
            u.set(i, col, v);
        }
    }
    Ok(u)
}

/// `z ↦ (f(z) − f(w))/(1 + ε)`, sending `w` to the origin.
///
/// Requires `f` to land in the unit polydisk (a unit-ball target qualifies)
/// and `|f_j(w)| < ε` for every coordinate, which keeps the result inside the
/// unit polydisk.
pub fn recenter(f: &HoloMap, w: &CVector, eps: f64) -> Result<HoloMap> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::Range(format!("recenter epsilon must be positive, got {eps}")));
    }
    match f.target() {
        DomainSpec::Ball { .. } | DomainSpec::Polydisk { radii: None, .. } => {}
        other => {
            return Err(Error::ContractViolation(format!(
                "recenter needs a unit ball or unit polydisk target, got {other}"
            )))
        }
    }
    let shift = f.forward(w)?;
    let worst = shift.max_modulus();
    if !(worst < eps) {
        return Err(Error::ContractViolation(format!(
            "recenter needs |f_j(w)| < eps for all j, got max {worst} with eps {eps}"
        )));
    }
    let n = f.dimension();
    Ok(HoloMap::build(f.source().clone(), DomainSpec::polydisk(n), MapKind::Recenter { inner: f.clone(), shift, eps }))
}

/// How per-factor scalings are chosen for a product of embeddings, from
/// per-factor radii `rᵢ` (reciprocals of the factors' inscribed radii).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightPolicy {
    /// `wᵢ = rᵢ/√(Σ r_j²)`: a product of ball embeddings lands in the ball.
    Ball,
    /// `wᵢ = rᵢ/max_j r_j`: a product of polydisk embeddings lands in the polydisk.
    Polydisk,
}

impl WeightPolicy {
    pub fn weights(self, radii: &[f64]) -> Result<Vec<f64>> {
        if radii.is_empty() || radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return Err(Error::Range("weight radii must be positive and finite".into()));
        }
        let denom = match self {
            Self::Ball => radii.iter().map(|r| r * r).sum::<f64>().sqrt(),
            Self::Polydisk => radii.iter().copied().fold(0.0, f64::max),
        };
        Ok(radii.iter().map(|r| r / denom).collect())
    }
}

/// Block-diagonal map `(z₁, …, z_k) ↦ (w₁f₁(z₁), …, w_k f_k(z_k))`.
pub fn product_map(maps: &[HoloMap], weights: &[f64]) -> Result<HoloMap> {
    if maps.is_empty() {
        return Err(Error::ContractViolation("product of zero maps".into()));
    }
    if maps.len() != weights.len() {
        return Err(Error::DimensionMismatch { expected: maps.len(), got: weights.len() });
    }
    if weights.iter().any(|w| !(*w > 0.0 && *w <= 1.0)) {
        return Err(Error::Range("product weights must lie in (0, 1]".into()));
    }
    if maps.iter().any(|m| !m.has_inverse()) {
        return Err(Error::UnsupportedMap("product factors need inverses".into()));
    }
    if maps.len() == 1 && weights[0] == 1.0 {
        return Ok(maps[0].clone());
    }
    let n: usize = maps.iter().map(HoloMap::dimension).sum();
    let source = if maps.len() == 1 {
        maps[0].source().clone()
    } else {
        DomainSpec::Product { factors: maps.iter().map(|m| m.source().clone()).collect() }
    };
    let all_ball = maps.iter().all(|m| matches!(m.target(), DomainSpec::Ball { .. }));
    let target = if all_ball && weights.iter().map(|w| w * w).sum::<f64>() <= 1.0 + 1e-12 {
        DomainSpec::ball(n)
    } else {
        DomainSpec::polydisk(n)
    };
    Ok(HoloMap::build(source, target, MapKind::Product { maps: maps.to_vec(), weights: weights.to_vec() }))
}

/// The explicit embedding `f: d → 𝔻ⁿ` with `f(z) = 0` used for `(d, z)`.
///
/// * polydisk: coordinatewise Möbius maps (identity at the origin of the unit polydisk);
/// * ball, or `R_I(1, s)`: the ball automorphism `φ_z`;
/// * ball or polydisk minus finitely many points: the automorphism of the
///   ambient centered at `z`; for the ball it is followed by the unitary that
///   turns the image of the nearest removed point onto the first axis, so the
///   excluded point sits as far out in the polydisk gauge as possible;
/// * product: factor embeddings combined with [`WeightPolicy::Polydisk`],
///   radii taken from the factors' construction-backed lower bounds.
pub fn candidate_embedding(d: &DomainSpec, z: &CVector) -> Result<HoloMap> {
    if !d.contains(z)? {
        return Err(Error::ContractViolation(format!("point is not a member of {d}")));
    }
    match d {
        DomainSpec::Polydisk { radii: None, n } if z.is_zero() => Ok(HoloMap::identity(DomainSpec::polydisk(*n))),
        DomainSpec::Polydisk { .. } => polydisk_automorphism(d, z),
        DomainSpec::Ball { .. } => ball_automorphism(z),
        DomainSpec::CartanI { r: 1, .. } => ball_automorphism(z)?.restrict(d.clone()),
        DomainSpec::Puncture { .. } => {
            let (base, points) = d.puncture_base().expect("puncture");
            match base {
                DomainSpec::Ball { .. } | DomainSpec::CartanI { r: 1, .. } => {
                    let phi = ball_automorphism(z)?;
                    let nearest = points
                        .iter()
                        .map(|p| phi.fwd(p))
                        .min_by(|a, b| a.norm().total_cmp(&b.norm()))
                        .expect("punctures are non-empty");
                    let rot = unitary_map(unitary_aligning(&nearest))?;
                    rot.compose(&phi)?.restrict(d.clone())
                }
                DomainSpec::Polydisk { .. } => polydisk_automorphism(base, z)?.restrict(d.clone()),
                other => {
                    Err(Error::UnsupportedDomain(format!("no explicit embedding for punctured {}", other.kind_name())))
                }
            }
        }
        DomainSpec::Product { factors } => {
            let blocks = d.split_point(z)?;
            let mut maps = Vec::with_capacity(factors.len());
            let mut radii = Vec::with_capacity(factors.len());
            for (f, zf) in factors.iter().zip(&blocks) {
                maps.push(candidate_embedding(f, zf)?);
                let t = bounds::evaluate_t(f, zf)?.lower;
                if !(t > 0.0) {
                    return Err(Error::UnsupportedDomain(format!("factor {f} has no positive lower bound")));
                }
                radii.push(1.0 / t);
            }
            let weights = WeightPolicy::Polydisk.weights(&radii)?;
            product_map(&maps, &weights)
        }
        other => Err(Error::UnsupportedDomain(format!("no explicit embedding for {}", other.kind_name()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_in_ball(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> CVector {
        loop {
            let v = CVector::new((0..n).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect())
                .unwrap();
            if v.norm() < 1.0 {
                return v.scale(radius);
            }
        }
    }

    fn close(a: &CVector, b: &CVector, tol: f64) -> bool {
        (a - b).max_modulus() <= tol
    }

    #[test]
    fn mobius_basics() {
        let id = mobius_disk(c(0.0, 0.0)).unwrap();
        let z = CVector::new(vec![c(0.3, -0.2)]).unwrap();
        assert_eq!(id.forward(&z).unwrap(), z);
        let a = c(0.4, 0.3);
        let m = mobius_disk(a).unwrap();
        assert!(m.forward(&CVector::new(vec![a]).unwrap()).unwrap().max_modulus() < 1e-16);
        let half = mobius_disk(c(0.5, 0.0)).unwrap();
        assert_eq!(half.forward(&CVector::zeros(1)).unwrap()[0], c(-0.5, 0.0));
        assert!(mobius_disk(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn ball_automorphism_swaps_center_and_origin() {
        let a = CVector::new(vec![c(0.3, 0.1), c(-0.2, 0.4)]).unwrap();
        let phi = ball_automorphism(&a).unwrap();
        assert!(phi.forward(&a).unwrap().max_modulus() < 1e-12);
        assert!(close(&phi.forward(&CVector::zeros(2)).unwrap(), &a, 1e-12));
        // At the origin the closed form degenerates to −id.
        let phi0 = ball_automorphism(&CVector::zeros(2)).unwrap();
        assert_eq!(phi0.forward(&a).unwrap(), a.scale(-1.0));
        assert!(ball_automorphism(&CVector::axis(2, 0, 1.0)).is_err());
    }

    #[test]
    fn ball_automorphism_is_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let a = random_in_ball(&mut rng, 3, 0.95);
            let w = random_in_ball(&mut rng, 3, 0.95);
            let phi = ball_automorphism(&a).unwrap();
            let back = phi.forward(&phi.forward(&w).unwrap()).unwrap();
            assert!(close(&back, &w, 1e-10));
        }
    }

    #[test]
    fn ball_automorphism_matches_distance_identity() {
        // 1 − ‖φ_a(w)‖² = (1 − ‖a‖²)(1 − ‖w‖²)/|1 − ⟨w,a⟩|².
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let a = random_in_ball(&mut rng, 3, 0.9);
            let w = random_in_ball(&mut rng, 3, 0.9);
            let lhs = 1.0 - ball_automorphism(&a).unwrap().forward(&w).unwrap().norm_sqr();
            let rhs = (1.0 - a.norm_sqr()) * (1.0 - w.norm_sqr()) / (c(1.0, 0.0) - w.inner(&a)).norm_sqr();
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn scale_map_basics() {
        let id = scale_map(2, 1.0).unwrap();
        let z = CVector::from_real(&[0.3, 0.4]).unwrap();
        assert_eq!(id.forward(&z).unwrap(), z);
        let s = scale_map(2, 1.0 / 2f64.sqrt()).unwrap();
        let w = s.forward(&CVector::axis(2, 0, 1.0)).unwrap();
        assert!((w.norm() - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        let back = s.inverse(&s.forward(&z).unwrap()).unwrap().unwrap();
        assert!(close(&back, &z, 1e-15));
        assert!(scale_map(2, 0.0).is_err());
        assert!(scale_map(2, -1.0).is_err());
    }

    #[test]
    fn recenter_basics() {
        let id = HoloMap::identity(DomainSpec::polydisk(2));
        let r = recenter(&id, &CVector::zeros(2), 0.1).unwrap();
        let z = CVector::from_real(&[0.5, -0.2]).unwrap();
        assert!(close(&r.forward(&z).unwrap(), &z.scale(1.0 / 1.1), 1e-16));

        let w = CVector::from_real(&[0.05, 0.02]).unwrap();
        let r = recenter(&id, &w, 0.1).unwrap();
        assert!(r.forward(&w).unwrap().max_modulus() == 0.0);
        assert!(recenter(&id, &w, 0.01).is_err());
        assert!(recenter(&id, &w, 0.0).is_err());
        assert_eq!(r.target(), &DomainSpec::polydisk(2));
    }

    #[test]
    fn recenter_stays_in_polydisk() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let f = polydisk_automorphism(&DomainSpec::polydisk(2), &CVector::from_real(&[0.3, -0.6]).unwrap()).unwrap();
        let w = CVector::from_real(&[0.32, -0.61]).unwrap();
        let eps = f.forward(&w).unwrap().max_modulus() * 1.01;
        let r = recenter(&f, &w, eps).unwrap();
        for _ in 0..1000 {
            let z = CVector::new((0..2).map(|_| c(rng.random_range(-0.999..0.999), 0.0)).collect()).unwrap();
            assert!(r.forward(&z).unwrap().max_modulus() < 1.0);
        }
    }

    #[test]
    fn weight_policies() {
        let w = WeightPolicy::Polydisk.weights(&[3f64.sqrt(), 2f64.sqrt()]).unwrap();
        assert!((w[0] - 1.0).abs() < 1e-15);
        assert!((w[1] - 2f64.sqrt() / 3f64.sqrt()).abs() < 1e-15);
        let w = WeightPolicy::Ball.weights(&[1.0, 1.0]).unwrap();
        assert!((w[0] - 1.0 / 2f64.sqrt()).abs() < 1e-15 && (w[1] - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!(WeightPolicy::Ball.weights(&[0.0]).is_err());
    }

    #[test]
    fn product_map_blocks() {
        let f = ball_automorphism(&CVector::from_real(&[0.2, 0.1]).unwrap()).unwrap();
        let single = product_map(std::slice::from_ref(&f), &[1.0]).unwrap();
        let z = CVector::from_real(&[0.1, -0.3]).unwrap();
        assert_eq!(single.forward(&z).unwrap(), f.forward(&z).unwrap());

        let g = mobius_disk(c(0.5, 0.0)).unwrap();
        let p = product_map(&[f.clone(), g.clone()], &[0.5, 1.0]).unwrap();
        assert_eq!(p.source().dimension(), 3);
        let z3 = CVector::from_real(&[0.1, -0.3, 0.7]).unwrap();
        let out = p.forward(&z3).unwrap();
        let b0 = f.forward(&z3.block(0, 2)).unwrap().scale(0.5);
        assert_eq!(out.block(0, 2), b0);
        assert_eq!(out.block(2, 1), g.forward(&z3.block(2, 1)).unwrap());
        let back = p.inverse(&out).unwrap().unwrap();
        assert!(close(&back, &z3, 1e-14));
        assert!(product_map(&[f, g], &[0.5]).is_err());
    }

    #[test]
    fn ball_policy_lands_in_ball() {
        let f = ball_automorphism(&CVector::from_real(&[0.2, 0.1]).unwrap()).unwrap();
        let g = ball_automorphism(&CVector::from_real(&[0.0, 0.3, 0.1]).unwrap()).unwrap();
        let w = WeightPolicy::Ball.weights(&[1.0, 1.0]).unwrap();
        let p = product_map(&[f, g], &w).unwrap();
        assert_eq!(p.target(), &DomainSpec::ball(5));
    }

    #[test]
    fn aligning_unitary() {
        let v = CVector::new(vec![c(0.1, 0.2), c(-0.3, 0.05), c(0.0, 0.4)]).unwrap();
        let u = unitary_aligning(&v);
        assert!(unitary_defect(&u) < 1e-14);
        let w = matvec(&u, &v);
        assert!((w[0] - c(v.norm(), 0.0)).norm() < 1e-15);
        assert!(w[1].norm() < 1e-15 && w[2].norm() < 1e-15);
        // Already aligned, or with a zero first coordinate.
        for v in [CVector::axis(2, 0, 0.5), CVector::axis(2, 1, 0.5)] {
            let w = matvec(&unitary_aligning(&v), &v);
            assert!((w[0] - c(0.5, 0.0)).norm() < 1e-15 && w[1].norm() < 1e-15);
        }
    }

    #[test]
    fn parametrized_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=4 {
            assert_eq!(unitary_from_params(n, &vec![0.0; n * n]).unwrap(), CMatrix::identity(n));
            let p: Vec<f64> = (0..n * n).map(|_| rng.random_range(-3.0..3.0)).collect();
            assert!(unitary_defect(&unitary_from_params(n, &p).unwrap()) < 1e-13);
        }
    }

    #[test]
    fn candidates_center_the_point() {
        let pd = candidate_embedding(&DomainSpec::polydisk(2), &CVector::zeros(2)).unwrap();
        assert_eq!(pd.descriptor().tag, "identity");

        let punct = DomainSpec::puncture(DomainSpec::ball(2), vec![CVector::zeros(2)]).unwrap();
        let z = CVector::axis(2, 0, 0.3);
        let f = candidate_embedding(&punct, &z).unwrap();
        assert!(f.forward(&z).unwrap().max_modulus() < 1e-12);
        let holes = f.hole_images();
        assert_eq!(holes.len(), 1);
        assert!((holes[0][0] - c(0.3, 0.0)).norm() < 1e-12);

        // Off-axis point: the hole is rotated onto the first axis.
        let z = CVector::new(vec![c(0.2, 0.0), c(0.0, 0.2)]).unwrap();
        let f = candidate_embedding(&punct, &z).unwrap();
        let h = &f.hole_images()[0];
        assert!((h.max_modulus() - z.norm()).abs() < 1e-12);

        let ball = DomainSpec::ball(3);
        let z = CVector::from_real(&[0.1, 0.5, -0.2]).unwrap();
        let f = candidate_embedding(&ball, &z).unwrap();
        assert!(f.forward(&z).unwrap().max_modulus() < 1e-12);

        let prod = DomainSpec::product(vec![DomainSpec::ball(3), DomainSpec::ball(2)]).unwrap();
        let f = candidate_embedding(&prod, &CVector::zeros(5)).unwrap();
        assert_eq!(f.target(), &DomainSpec::polydisk(5));
        assert!(f.forward(&CVector::zeros(5)).unwrap().max_modulus() < 1e-15);

        let cartan = DomainSpec::cartan2(2).unwrap();
        assert!(matches!(candidate_embedding(&cartan, &CVector::zeros(3)), Err(Error::UnsupportedDomain(_))));
    }

    #[test]
    fn compose_order() {
        let f = scale_map(2, 0.5).unwrap();
        let g = ball_automorphism(&CVector::from_real(&[0.3, 0.0]).unwrap()).unwrap();
        let fg = f.compose(&g).unwrap();
        let z = CVector::from_real(&[0.1, 0.2]).unwrap();
        assert_eq!(fg.forward(&z).unwrap(), f.forward(&g.forward(&z).unwrap()).unwrap());
        assert!(f.compose(&scale_map(3, 0.5).unwrap()).is_err());
    }

    #[test]
    fn custom_without_inverse() {
        let m = HoloMap::custom(
            "square",
            DomainSpec::polydisk(1),
            DomainSpec::polydisk(1),
            |z: &CVector| CVector::new(vec![z[0] * z[0]]).unwrap(),
            None,
        )
        .unwrap();
        assert!(!m.has_inverse());
        assert!(matches!(m.inverse(&CVector::zeros(1)), Err(Error::UnsupportedMap(_))));
    }
}
