//! The domain algebra: balls, polydisks, the four Cartan classical domains,
//! finite punctures and products.
//!
//! Cartan II and III points are stored in packed triangle layout (row-major
//! upper triangle, with the diagonal for II and without it for III) so that
//! the vector length equals the complex dimension.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex::{CMatrix, CVector};
use crate::error::{Error, Result};

/// Margin used to decide Hermitian positive definiteness. Points whose smallest
/// eigenvalue of `I − Z·conj(Z)ᵀ` is within this margin count as outside.
pub const PD_MARGIN: f64 = 1e-10;

/// Tolerance for the symmetry / skew-symmetry check on full matrix input.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// A bounded domain in ℂⁿ built from the supported pieces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", try_from = "RawDomain", into = "RawDomain")]
pub enum DomainSpec {
    /// Unit ball Bⁿ.
    Ball { n: usize },
    /// Polydisk with per-coordinate radii (unit when `radii` is `None`).
    Polydisk { n: usize, radii: Option<Vec<f64>> },
    /// `{Z ∈ ℂ^{r×s} : I − Z·Z* > 0}`, `r ≤ s`.
    CartanI { r: usize, s: usize },
    /// Symmetric `p×p` matrices with `I − Z·Z* > 0`.
    CartanII { p: usize },
    /// Skew-symmetric `q×q` matrices with `I − Z·Z* > 0`, `q ≥ 2`.
    CartanIII { q: usize },
    /// The Lie ball `{1 + |zzᵀ|² − 2‖z‖² > 0, |zzᵀ| < 1}`.
    CartanIV { n: usize },
    /// Ambient domain with finitely many points removed.
    Puncture { ambient: Box<DomainSpec>, points: Vec<CVector> },
    /// Cartesian product of at least two domains.
    Product { factors: Vec<DomainSpec> },
}

impl DomainSpec {
    pub fn ball(n: usize) -> Self {
        Self::Ball { n }
    }

    pub fn polydisk(n: usize) -> Self {
        Self::Polydisk { n, radii: None }
    }

    pub fn polydisk_with_radii(radii: Vec<f64>) -> Result<Self> {
        let d = Self::Polydisk { n: radii.len(), radii: Some(radii) };
        d.validate()?;
        Ok(d)
    }

    pub fn cartan1(r: usize, s: usize) -> Result<Self> {
        let d = Self::CartanI { r, s };
        d.validate()?;
        Ok(d)
    }

    pub fn cartan2(p: usize) -> Result<Self> {
        let d = Self::CartanII { p };
        d.validate()?;
        Ok(d)
    }

    pub fn cartan3(q: usize) -> Result<Self> {
        let d = Self::CartanIII { q };
        d.validate()?;
        Ok(d)
    }

    pub fn cartan4(n: usize) -> Result<Self> {
        let d = Self::CartanIV { n };
        d.validate()?;
        Ok(d)
    }

    pub fn puncture(ambient: DomainSpec, points: Vec<CVector>) -> Result<Self> {
        let d = Self::Puncture { ambient: Box::new(ambient), points };
        d.validate()?;
        Ok(d)
    }

    pub fn product(factors: Vec<DomainSpec>) -> Result<Self> {
        let d = Self::Product { factors };
        d.validate()?;
        Ok(d)
    }

    /// Checks every structural invariant, recursively.
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: usize| {
            if v == 0 {
                Err(Error::MalformedInput(format!("field `{name}` must be a positive integer")))
            } else {
                Ok(())
            }
        };
        match self {
            Self::Ball { n } => positive("n", *n),
            Self::Polydisk { n, radii } => {
                positive("n", *n)?;
                if let Some(radii) = radii {
                    if radii.len() != *n {
                        return Err(Error::MalformedInput(format!(
                            "field `radii` has {} entries, expected n = {}",
                            radii.len(),
                            n
                        )));
                    }
                    if radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
                        return Err(Error::MalformedInput("field `radii` must contain positive finite values".into()));
                    }
                }
                Ok(())
            }
            Self::CartanI { r, s } => {
                positive("r", *r)?;
                positive("s", *s)?;
                if r > s {
                    return Err(Error::MalformedInput(format!("cartan1 requires r <= s, got r={r}, s={s}")));
                }
                Ok(())
            }
            Self::CartanII { p } => positive("p", *p),
            Self::CartanIII { q } => {
                if *q < 2 {
                    return Err(Error::MalformedInput(format!("field `q` must be at least 2, got {q}")));
                }
                Ok(())
            }
            Self::CartanIV { n } => positive("n", *n),
            Self::Puncture { ambient, points } => {
                ambient.validate()?;
                if points.is_empty() {
                    return Err(Error::MalformedInput("field `points` must not be empty".into()));
                }
                for (i, p) in points.iter().enumerate() {
                    if !ambient.contains(p)? {
                        return Err(Error::MalformedInput(format!(
                            "field `points`: entry {i} is not a member of the ambient domain"
                        )));
                    }
                    if points[..i].iter().any(|q| q.coincides(p)) {
                        return Err(Error::MalformedInput(format!("field `points`: entry {i} is a duplicate")));
                    }
                }
                Ok(())
            }
            Self::Product { factors } => {
                if factors.len() < 2 {
                    return Err(Error::MalformedInput("field `factors` needs at least two domains".into()));
                }
                factors.iter().try_for_each(DomainSpec::validate)
            }
        }
    }

    /// Complex dimension.
    pub fn dimension(&self) -> usize {
        match self {
            Self::Ball { n } | Self::Polydisk { n, .. } | Self::CartanIV { n } => *n,
            Self::CartanI { r, s } => r * s,
            Self::CartanII { p } => p * (p + 1) / 2,
            Self::CartanIII { q } => q * (q - 1) / 2,
            Self::Puncture { ambient, .. } => ambient.dimension(),
            Self::Product { factors } => factors.iter().map(DomainSpec::dimension).sum(),
        }
    }

    /// True for the four Cartan families.
    pub fn is_cartan(&self) -> bool {
        matches!(self, Self::CartanI { .. } | Self::CartanII { .. } | Self::CartanIII { .. } | Self::CartanIV { .. })
    }

    /// Number of coordinate directions along which the domain contains a
    /// unit polydisk whose circles lie on the boundary.
    pub fn polydisk_direction_count(&self) -> Result<usize> {
        match self {
            Self::CartanI { r, .. } => Ok(*r),
            Self::CartanII { p } => Ok(*p),
            Self::CartanIII { q } => Ok(q / 2),
            Self::CartanIV { .. } => Ok(2),
            other => Err(Error::UnsupportedDomain(format!(
                "polydisk direction count is defined for Cartan domains only, got {}",
                other.kind_name()
            ))),
        }
    }

    /// Whether the automorphism group acts transitively.
    pub fn is_homogeneous(&self) -> bool {
        match self {
            Self::Puncture { .. } => false,
            Self::Product { factors } => factors.iter().all(DomainSpec::is_homogeneous),
            _ => true,
        }
    }

    /// Short tag used in messages and reports.
    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Ball { .. } => "ball",
            Self::Polydisk { .. } => "polydisk",
            Self::CartanI { .. } => "cartan1",
            Self::CartanII { .. } => "cartan2",
            Self::CartanIII { .. } => "cartan3",
            Self::CartanIV { .. } => "cartan4",
            Self::Puncture { .. } => "puncture",
            Self::Product { .. } => "product",
        }
    }

    /// Membership test for the open domain.
    pub fn contains(&self, z: &CVector) -> Result<bool> {
        let dim = self.dimension();
        if z.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: z.len() });
        }
        if !z.is_finite() {
            return Ok(false);
        }
        Ok(match self {
            Self::Ball { .. } => z.norm_sqr() < 1.0,
            Self::Polydisk { radii: None, .. } => z.iter().all(|c| c.norm_sqr() < 1.0),
            Self::Polydisk { radii: Some(radii), .. } => z.iter().zip(radii).all(|(c, r)| c.norm() < *r),
            Self::CartanI { .. } | Self::CartanII { .. } | Self::CartanIII { .. } => {
                let m = self.unpack_matrix(z)?;
                m.identity_minus_gram().hermitian_min_eigenvalue() > PD_MARGIN
            }
            Self::CartanIV { .. } => {
                let u: Complex64 = z.iter().map(|c| c * c).sum();
                let v = z.norm_sqr();
                let un = u.norm();
                1.0 + un * un - 2.0 * v > 0.0 && 1.0 - un > 0.0
            }
            Self::Puncture { ambient, points } => ambient.contains(z)? && points.iter().all(|p| !p.coincides(z)),
            Self::Product { factors } => {
                let mut offset = 0;
                for f in factors {
                    let k = f.dimension();
                    if !f.contains(&z.block(offset, k))? {
                        return Ok(false);
                    }
                    offset += k;
                }
                true
            }
        })
    }

    /// Membership for a Cartan I–III point given as a full matrix. The matrix
    /// must have the right shape and (skew-)symmetry.
    pub fn contains_matrix(&self, m: &CMatrix) -> Result<bool> {
        let z = self.pack_matrix(m)?;
        self.contains(&z)
    }

    /// Rebuilds the matrix a Cartan I–III point encodes.
    pub fn unpack_matrix(&self, z: &CVector) -> Result<CMatrix> {
        let dim = self.dimension();
        if z.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: z.len() });
        }
        match self {
            Self::CartanI { r, s } => CMatrix::new(*r, *s, z.as_slice().to_vec()),
            Self::CartanII { p } => {
                let mut m = CMatrix::zeros(*p, *p);
                let mut k = 0;
                for i in 0..*p {
                    for j in i..*p {
                        m.set(i, j, z[k]);
                        m.set(j, i, z[k]);
                        k += 1;
                    }
                }
                Ok(m)
            }
            Self::CartanIII { q } => {
                let mut m = CMatrix::zeros(*q, *q);
                let mut k = 0;
                for i in 0..*q {
                    for j in i + 1..*q {
                        m.set(i, j, z[k]);
                        m.set(j, i, -z[k]);
                        k += 1;
                    }
                }
                Ok(m)
            }
            other => Err(Error::UnsupportedDomain(format!("{} points are not matrices", other.kind_name()))),
        }
    }

    /// Packs a full matrix into the coordinate layout of this Cartan domain.
    pub fn pack_matrix(&self, m: &CMatrix) -> Result<CVector> {
        let shape_err = |want: String| {
            Err(Error::MalformedInput(format!("matrix has shape {}x{}, expected {want}", m.rows(), m.cols())))
        };
        match self {
            Self::CartanI { r, s } => {
                if m.rows() != *r || m.cols() != *s {
                    return shape_err(format!("{r}x{s}"));
                }
                CVector::new(m.data().to_vec())
            }
            Self::CartanII { p } => {
                if m.rows() != *p || m.cols() != *p {
                    return shape_err(format!("{p}x{p}"));
                }
                let defect = m.transpose_defect(1.0);
                if defect > SYMMETRY_TOL {
                    return Err(Error::MalformedInput(format!("cartan2 matrix is not symmetric (defect {defect:e})")));
                }
                let mut out = Vec::with_capacity(self.dimension());
                for i in 0..*p {
                    for j in i..*p {
                        out.push(m.get(i, j));
                    }
                }
                CVector::new(out)
            }
            Self::CartanIII { q } => {
                if m.rows() != *q || m.cols() != *q {
                    return shape_err(format!("{q}x{q}"));
                }
                let defect = m.transpose_defect(-1.0);
                if defect > SYMMETRY_TOL {
                    return Err(Error::MalformedInput(format!(
                        "cartan3 matrix is not skew-symmetric (defect {defect:e})"
                    )));
                }
                let mut out = Vec::with_capacity(self.dimension());
                for i in 0..*q {
                    for j in i + 1..*q {
                        out.push(m.get(i, j));
                    }
                }
                CVector::new(out)
            }
            other => Err(Error::UnsupportedDomain(format!("{} points are not matrices", other.kind_name()))),
        }
    }

    /// Splits a product point into its factor blocks.
    pub fn split_point(&self, z: &CVector) -> Result<Vec<CVector>> {
        let Self::Product { factors } = self else {
            return Err(Error::UnsupportedDomain(format!("{} is not a product", self.kind_name())));
        };
        let dim = self.dimension();
        if z.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: z.len() });
        }
        let mut offset = 0;
        Ok(factors
            .iter()
            .map(|f| {
                let k = f.dimension();
                let b = z.block(offset, k);
                offset += k;
                b
            })
            .collect())
    }

    /// For a (possibly nested) puncture, the innermost ambient domain and the
    /// union of all removed points.
    pub fn puncture_base(&self) -> Option<(&DomainSpec, Vec<&CVector>)> {
        let Self::Puncture { ambient, points } = self else {
            return None;
        };
        let mut all: Vec<&CVector> = points.iter().collect();
        let mut base: &DomainSpec = ambient;
        while let Self::Puncture { ambient, points } = base {
            all.extend(points.iter());
            base = ambient;
        }
        Some((base, all))
    }

    /// Factors of a product with nested products expanded.
    pub fn flat_factors(&self) -> Vec<&DomainSpec> {
        match self {
            Self::Product { factors } => factors.iter().flat_map(DomainSpec::flat_factors).collect(),
            other => vec![other],
        }
    }

    /// Parses the JSON wire form.
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::MalformedInput(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("domain serializes")
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ball { n } => write!(f, "B^{n}"),
            Self::Polydisk { n, radii: None } => write!(f, "D^{n}"),
            Self::Polydisk { n, radii: Some(r) } => write!(f, "D^{n}{r:?}"),
            Self::CartanI { r, s } => write!(f, "R_I({r},{s})"),
            Self::CartanII { p } => write!(f, "R_II({p})"),
            Self::CartanIII { q } => write!(f, "R_III({q})"),
            Self::CartanIV { n } => write!(f, "R_IV({n})"),
            Self::Puncture { ambient, points } => write!(f, "{ambient} minus {} point(s)", points.len()),
            Self::Product { factors } => {
                for (i, d) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "{d}")?;
                }
                Ok(())
            }
        }
    }
}

/// Unvalidated serde mirror of [`DomainSpec`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum RawDomain {
    Ball {
        n: usize,
    },
    Polydisk {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radii: Option<Vec<f64>>,
    },
    Cartan1 {
        r: usize,
        s: usize,
    },
    Cartan2 {
        p: usize,
    },
    Cartan3 {
        q: usize,
    },
    Cartan4 {
        n: usize,
    },
    Puncture {
        ambient: Box<RawDomain>,
        points: Vec<CVector>,
    },
    Product {
        factors: Vec<RawDomain>,
    },
}

impl RawDomain {
    fn build(self) -> DomainSpec {
        match self {
            Self::Ball { n } => DomainSpec::Ball { n },
            Self::Polydisk { n, radii } => DomainSpec::Polydisk { n, radii },
            Self::Cartan1 { r, s } => DomainSpec::CartanI { r, s },
            Self::Cartan2 { p } => DomainSpec::CartanII { p },
            Self::Cartan3 { q } => DomainSpec::CartanIII { q },
            Self::Cartan4 { n } => DomainSpec::CartanIV { n },
            Self::Puncture { ambient, points } => DomainSpec::Puncture { ambient: Box::new(ambient.build()), points },
            Self::Product { factors } => {
                DomainSpec::Product { factors: factors.into_iter().map(RawDomain::build).collect() }
            }
        }
    }
}

impl TryFrom<RawDomain> for DomainSpec {
    type Error = Error;
    fn try_from(raw: RawDomain) -> Result<Self> {
        let d = raw.build();
        d.validate()?;
        Ok(d)
    }
}

impl From<DomainSpec> for RawDomain {
    fn from(d: DomainSpec) -> Self {
        match d {
            DomainSpec::Ball { n } => Self::Ball { n },
            DomainSpec::Polydisk { n, radii } => Self::Polydisk { n, radii },
            DomainSpec::CartanI { r, s } => Self::Cartan1 { r, s },
            DomainSpec::CartanII { p } => Self::Cartan2 { p },
            DomainSpec::CartanIII { q } => Self::Cartan3 { q },
            DomainSpec::CartanIV { n } => Self::Cartan4 { n },
            DomainSpec::Puncture { ambient, points } => Self::Puncture { ambient: Box::new((*ambient).into()), points },
            DomainSpec::Product { factors } => Self::Product { factors: factors.into_iter().map(Into::into).collect() },
        }
    }
}

/// Membership test; see [`DomainSpec::contains`].
pub fn membership(d: &DomainSpec, z: &CVector) -> Result<bool> {
    d.contains(z)
}
