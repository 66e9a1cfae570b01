//! Holomorphic maps: automorphisms, unitaries, composition and the explicit
//! embeddings used for certification.

use polysqueeze::maps::{
    ball_automorphism, candidate_embedding, product_map, recenter, scale_map, unitary_aligning, unitary_map,
    WeightPolicy,
};
use polysqueeze::{CVector, DomainSpec};

fn main() -> polysqueeze::Result<()> {
    let a = CVector::from_real(&[0.3, 0.4])?;
    let phi = ball_automorphism(&a)?;
    let w = CVector::from_real(&[-0.2, 0.1])?;
    let image = phi.forward(&w)?;
    let back = phi.inverse(&image)?.expect("automorphisms are invertible");
    println!("φ_a(a) = {:?}", phi.forward(&a)?.to_pairs());
    println!("φ_a(w) = {:?}, back to {:?}", image.to_pairs(), back.to_pairs());

    // Rotate a onto the first axis, then shrink.
    let f = scale_map(2, 0.5)?.compose(&unitary_map(unitary_aligning(&a))?)?;
    println!("{} sends a to {:?}", f.descriptor(), f.forward(&a)?.to_pairs());

    let g = recenter(&phi, &w, phi.forward(&w)?.max_modulus() * 1.01)?;
    println!("recentered at w: g(w) = {:?}", g.forward(&w)?.to_pairs());

    let weights = WeightPolicy::Ball.weights(&[3f64.sqrt(), 2f64.sqrt()])?;
    let prod =
        product_map(&[ball_automorphism(&CVector::zeros(3))?, ball_automorphism(&CVector::zeros(2))?], &weights)?;
    println!("product of ball maps lands in {}", prod.target());

    let d = DomainSpec::puncture(DomainSpec::ball(2), vec![CVector::zeros(2)])?;
    let z = CVector::axis(2, 0, 0.3);
    let e = candidate_embedding(&d, &z)?;
    println!("embedding for the punctured ball: {}", e.descriptor());
    for h in e.hole_images() {
        println!("  removed point lands at {:?}", h.to_pairs());
    }
    Ok(())
}
