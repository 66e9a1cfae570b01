//! Building domains, testing membership and round-tripping through JSON.

use num_complex::Complex64;
use polysqueeze::{CMatrix, CVector, DomainSpec};

fn main() -> polysqueeze::Result<()> {
    let domains = vec![
        DomainSpec::ball(3),
        DomainSpec::polydisk(2),
        DomainSpec::cartan1(2, 3)?,
        DomainSpec::cartan2(2)?,
        DomainSpec::cartan3(4)?,
        DomainSpec::cartan4(3)?,
        DomainSpec::puncture(DomainSpec::ball(2), vec![CVector::zeros(2)])?,
        DomainSpec::product(vec![DomainSpec::ball(3), DomainSpec::ball(2)])?,
    ];
    for d in &domains {
        let z = CVector::axis(d.dimension(), 0, 0.5);
        let homogeneous = if d.is_homogeneous() { "homogeneous" } else { "not homogeneous" };
        println!("{d}: dim {}, {homogeneous}, contains 0.5·e₁: {}", d.dimension(), d.contains(&z)?);
        assert_eq!(&DomainSpec::from_json(&d.to_json())?, d);
    }

    // Matrix points of R_I(2, 2): inside iff I − Z*Z is positive definite.
    let d = DomainSpec::cartan1(2, 2)?;
    let c = |re| Complex64::new(re, 0.0);
    let inside = CMatrix::new(2, 2, vec![c(0.5), c(0.3), c(0.0), c(0.5)])?;
    let outside = CMatrix::new(2, 2, vec![c(0.8), c(0.8), c(0.0), c(0.1)])?;
    println!("R_I(2,2): {} / {}", d.contains_matrix(&inside)?, d.contains_matrix(&outside)?);

    // Removed points are not members; everything else is.
    let p = &domains[6];
    println!(
        "punctured ball at 0: {}, at 1e-3·e₁: {}",
        p.contains(&CVector::zeros(2))?,
        p.contains(&CVector::axis(2, 0, 1e-3))?
    );
    Ok(())
}
