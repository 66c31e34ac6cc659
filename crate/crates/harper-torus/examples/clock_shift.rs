//! Clock-and-shift representations of rational noncommutative tori and
//! evaluation of torus matrices.
//!
//! ```bash
//! cargo run --example clock_shift
//! ```

use harper_torus::exact::q;
use harper_torus::harper_model::build_theta;
use harper_torus::lattice_graph::Preset;
use harper_torus::nct_rep::{build_rep, characters, evaluate, relation_defect};
use harper_torus::spectral::eigenvalues;
use harper_torus::torus_poly::ThetaSpec;
use harper_torus::Real;

fn main() -> Result<(), harper_torus::Error> {
    for (n, entries) in [(2, vec![q(1, 3)]), (3, vec![q(1, 2), q(1, 2), q(1, 2)]), (3, vec![q(1, 5), q(1, 7), q(1, 11)])] {
        let theta = ThetaSpec::rational(n, &entries)?;
        let rep = build_rep(&theta, &vec![0.37; n])?;
        println!("θ = {:?}: d = {}, relation defect {:.1e}", theta.labels(), rep.d, relation_defect(&rep));
    }

    // the gyroid Harper operator at the character (A, B, C) ↦ (−1, 1, −1)
    let gy = build_theta(Preset::Gyroid, &[Real::zero(); 3])?;
    let chars = characters(&gy.theta, 2)?;
    let chi = chars
        .iter()
        .find(|r| {
            let v: Vec<f64> = r.gens.iter().map(|g| g.phase[0].re).collect();
            v.iter().zip([-1.0, 1.0, -1.0]).all(|(a, b)| (a - b).abs() < 1e-12)
        })
        .expect("the M = 2 grid contains every sign character");
    println!("\ngyroid H at (−1, 1, −1): eigenvalues {:?}", eigenvalues(&evaluate(&gy.h, chi)?)?);
    Ok(())
}
