//! Sampled inscribed radius of the explicit embedding of a punctured ball,
//! compared with the proven bounds along a ray.

use polysqueeze::certify::{certify_inclusion, witness_replays};
use polysqueeze::maps::candidate_embedding;
use polysqueeze::{CVector, CertifyConfig, DomainSpec};

fn main() -> polysqueeze::Result<()> {
    let d = DomainSpec::puncture(DomainSpec::ball(2), vec![CVector::zeros(2)])?;
    let cfg = CertifyConfig { boundary_samples: 4000, interior_samples: 1000, ..CertifyConfig::default() };
    println!("{:>6} {:>10} {:>10} {:>10}", "‖z‖", "estimate", "T lower", "T upper");
    for k in 1..=9 {
        let z = CVector::axis(2, 0, k as f64 / 10.0);
        let r = certify_inclusion(&d, &z, &cfg)?;
        let b = r.bounds.as_ref().expect("bounds attached");
        println!("{:>6.2} {:>10.4} {:>10.4} {:>10.4}", z.norm(), r.radius_estimate, b.lower, b.upper);
        if let Some(w) = &r.witness {
            assert!(witness_replays(&candidate_embedding(&d, &z)?, w)?);
        }
    }
    Ok(())
}
