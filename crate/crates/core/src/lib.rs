//! Bounds and sampled certificates for the polydisk squeezing function `T`
//! and the ball squeezing function `S` of bounded domains in ℂⁿ.
//!
//! Domains are built from balls, polydisks, the four classical Cartan
//! families, finite punctures and products ([`DomainSpec`]). For a point of
//! such a domain, [`bounds::evaluate`] returns intervals for `T` and `S` with
//! the rules that produced them, and [`certify`] estimates how large a
//! centered polydisk fits inside the image of an explicit embedding.
//!
//! ```
//! use polysqueeze::{bounds, CVector, DomainSpec};
//!
//! let d = DomainSpec::puncture(DomainSpec::ball(2), vec![CVector::zeros(2)])?;
//! let t = bounds::evaluate_t(&d, &CVector::axis(2, 0, 0.3))?;
//! assert!(t.exact && t.lower == 0.3);
//! # Ok::<(), polysqueeze::Error>(())
//! ```
//!
//! The `examples/` directory has one runnable program per capability:
//! `domains`, `distances`, `embeddings`, `bounds`, `cartan_table`,
//! `certify_punctured_ball` and `search_family`.

// `!(x < y)` comparisons deliberately reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod certify;
pub mod cli;
pub mod complex;
pub mod domains;
pub mod error;
pub mod maps;
pub mod metrics;

pub use bounds::{BoundInterval, Evaluation, RuleId};
pub use certify::{CertificateReport, CertifyConfig};
pub use complex::{CMatrix, CVector};
pub use domains::DomainSpec;
pub use error::{Error, Result};
pub use maps::HoloMap;
