//! Kobayashi distances on the disk, ball, polydisk and products.

use num_complex::Complex64;
use polysqueeze::metrics::{kobayashi, kobayashi_to_set, poincare_disk, sigma, sigma_inv};
use polysqueeze::{CVector, DomainSpec};

fn main() -> polysqueeze::Result<()> {
    let half = Complex64::new(0.5, 0.0);
    println!("disk: K(0, 1/2) = {:.6} = σ(1/2) = {:.6}", poincare_disk(Complex64::new(0.0, 0.0), half), sigma(0.5)?);

    let ball = DomainSpec::ball(2);
    let z = CVector::from_real(&[0.3, 0.4])?;
    let k = kobayashi(&ball, &z, &CVector::zeros(2))?.value();
    println!("ball: K(z, 0) = {k:.6}, σ⁻¹ of it = {:.6} = ‖z‖", sigma_inv(k)?);

    let pd = DomainSpec::polydisk(2);
    let a = CVector::from_real(&[0.2, -0.6])?;
    let b = CVector::from_real(&[0.1, 0.5])?;
    println!("polydisk: K(a, b) = {:.6} (largest coordinate distance)", kobayashi(&pd, &a, &b)?.value());

    let prod = DomainSpec::product(vec![DomainSpec::ball(2), DomainSpec::polydisk(1)])?;
    let p = CVector::from_real(&[0.3, 0.4, 0.1])?;
    let q = CVector::from_real(&[0.0, 0.0, 0.9])?;
    println!("product: K(p, q) = {:.6}", kobayashi(&prod, &p, &q)?.value());

    let holes = [CVector::zeros(2), CVector::axis(2, 1, 0.7)];
    let to_set = kobayashi_to_set(&ball, &z, &holes)?.value();
    println!("distance from z to the removed set: {to_set:.6}");
    Ok(())
}
