//! Symbolic replays of the elementary-matrix chains that show the
//! Harper algebra is the full matrix algebra over the torus.
//!
//! ```bash
//! cargo run --example proof_chains
//! ```

use harper_torus::algebra_gen::replay_proof_chain;
use harper_torus::exact::q;
use harper_torus::harper_model::{build, build_theta};
use harper_torus::lattice_graph::{Preset, TreeChoice};
use harper_torus::magnetic::SkewForm;
use harper_torus::Real;

fn main() -> Result<(), harper_torus::Error> {
    let ex = |v: &[(i64, i64)]| -> Vec<Real> { v.iter().map(|&(a, b)| Real::Exact(q(a, b))).collect() };
    let models = vec![
        build_theta(Preset::Honeycomb, &ex(&[(1, 5)]))?,
        build_theta(Preset::Honeycomb, &[Real::Approx(0.2137)])?,
        build(Preset::Honeycomb, &SkewForm::honeycomb_phi(Real::Exact(q(1, 6))), &TreeChoice::Default)?,
        build(Preset::Honeycomb, &SkewForm::honeycomb_phi(Real::Exact(q(1, 2))), &TreeChoice::Default)?,
        build_theta(Preset::Gyroid, &ex(&[(1, 5), (1, 7), (1, 11)]))?,
        build_theta(Preset::Gyroid, &ex(&[(1, 5), (12, 35), (1, 7)]))?,
    ];
    for m in &models {
        let r = replay_proof_chain(m)?;
        println!("{} at θ = {:?}: {}", r.chain, r.theta, if r.ok { "pass" } else { "FAIL" });
        for c in &r.checks {
            println!("    {:<48} residual {:.1e}", c.name, c.residual);
        }
    }
    // outside its hypotheses a chain is refused
    let commutative = build_theta(Preset::Honeycomb, &[Real::zero()])?;
    println!("\nθ = 0: {}", replay_proof_chain(&commutative).unwrap_err());
    Ok(())
}
