//! Searching a family of embeddings for a larger inscribed polydisk.

use polysqueeze::certify::{certify_inclusion, search_family, MapFamily};
use polysqueeze::{CVector, CertifyConfig, DomainSpec};

fn main() -> polysqueeze::Result<()> {
    let d = DomainSpec::puncture(DomainSpec::ball(2), vec![CVector::zeros(2)])?;
    let z = CVector::axis(2, 0, 0.85);
    let cfg = CertifyConfig { boundary_samples: 2000, interior_samples: 500, ..CertifyConfig::default() };

    let fixed = certify_inclusion(&d, &z, &cfg)?;
    println!("fixed construction: {:.4}", fixed.radius_estimate);
    for (name, family) in [
        ("automorphism after unitary", MapFamily::AutomorphismAfterUnitary),
        ("scaled automorphisms", MapFamily::BallAutomorphismScaling),
    ] {
        let r = search_family(&d, &z, &family, &cfg, 40)?;
        let b = r.bounds.as_ref().expect("bounds attached");
        println!("{name}: {:.4} (T proven in [{:.4}, {:.4}])", r.radius_estimate, b.lower, b.upper);
        println!("  best map: {}", r.construction);
    }
    Ok(())
}
