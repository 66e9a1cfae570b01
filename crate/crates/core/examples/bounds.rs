//! Interval bounds on T and S with the rules that produced them.

use polysqueeze::bounds::{equality_flags, evaluate, RuleId};

fn names(rules: &[RuleId]) -> String {
    rules.iter().map(|r| r.name()).collect::<Vec<_>>().join(", ")
}
use polysqueeze::{CVector, DomainSpec};

fn main() -> polysqueeze::Result<()> {
    let cases = [
        (DomainSpec::polydisk(3), CVector::zeros(3)),
        (DomainSpec::ball(3), CVector::from_real(&[0.1, 0.2, 0.3])?),
        (DomainSpec::cartan4(4)?, CVector::zeros(4)),
        (DomainSpec::product(vec![DomainSpec::ball(3), DomainSpec::ball(2)])?, CVector::zeros(5)),
        (DomainSpec::puncture(DomainSpec::ball(2), vec![CVector::zeros(2)])?, CVector::axis(2, 0, 0.5)),
        (DomainSpec::puncture(DomainSpec::ball(2), vec![CVector::zeros(2)])?, CVector::axis(2, 0, 0.9)),
    ];
    for (d, z) in &cases {
        let e = evaluate(d, z)?;
        println!("{d} at {:?}", z.to_pairs());
        println!("  T ∈ [{:.6}, {:.6}] via {}", e.t.lower, e.t.upper, names(&e.t.provenance));
        println!("  S ∈ [{:.6}, {:.6}] via {}", e.s.lower, e.s.upper, names(&e.s.provenance));
        if let Some(f) = equality_flags(d, z)? {
            println!("  equalities: {f:?}");
        }
    }
    println!();
    for rule in RuleId::ALL {
        println!("{:<22} {}", rule.name(), rule.statement());
    }
    Ok(())
}
