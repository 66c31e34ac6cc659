//! Symbolic Harper operators over the noncommutative torus and the
//! representation of the symmetry translations.
//!
//! ```bash
//! cargo run --example harper_operator
//! ```

use harper_torus::exact::q;
use harper_torus::harper_model::{build, build_theta};
use harper_torus::lattice_graph::{Preset, TreeChoice};
use harper_torus::magnetic::{classify_case, SkewForm};
use harper_torus::Real;

fn main() -> Result<(), harper_torus::Error> {
    // honeycomb with φ = 1/6, so θ = −1/2 and q = −1
    let hc = build(Preset::Honeycomb, &SkewForm::honeycomb_phi(Real::Exact(q(1, 6))), &TreeChoice::Default)?;
    println!("honeycomb θ = {:?}, case {:?}", hc.theta.labels(), hc.params.as_ref().map(classify_case));
    println!("H =\n{}", hc.h.pretty(&hc.names));
    for (name, r) in hc.names.iter().zip(&hc.rho) {
        println!("ρ({name}) =\n{}", r.pretty(&hc.names));
    }

    // gyroid at θ = (1/5, 1/7, 1/11): a generic Φ ≠ 1 point
    let theta: Vec<Real> = [q(1, 5), q(1, 7), q(1, 11)].into_iter().map(Real::Exact).collect();
    let gy = build_theta(Preset::Gyroid, &theta)?;
    println!("\ngyroid case {:?}", gy.params.as_ref().map(classify_case));
    println!("H =\n{}", gy.h.pretty(&gy.names));
    for c in gy.verify_displacements()? {
        println!("{}: word {:<12} displacement {:?} ok={}", c.generator, c.word, c.displacement, c.ok);
    }
    Ok(())
}
