//! Dimensions of the algebras generated by the evaluated Harper operator and
//! the symmetry translations, compared with the case table.
//!
//! ```bash
//! cargo run --release --example algebra_dimensions
//! ```

use harper_torus::algebra_gen::{bh_report, clifford_point_check, ramified_ideal_check};
use harper_torus::exact::{q, qi};
use harper_torus::harper_model::build_theta;
use harper_torus::lattice_graph::Preset;
use harper_torus::nct_rep::build_rep;
use harper_torus::{Real, Q};

fn report(p: Preset, theta: &[Q], twist: &[f64]) -> Result<(), harper_torus::Error> {
    let th: Vec<Real> = theta.iter().map(|&x| Real::Exact(x)).collect();
    let m = build_theta(p, &th)?;
    let rep = build_rep(&m.theta, twist)?;
    let r = bh_report(&m, &rep, 1)?;
    println!(
        "{:<10} θ={:<22} dim {:>8} / {:<8} {:<12} expected {:?} agrees {:?}",
        r.preset,
        format!("{:?}", m.theta.labels()),
        r.dimension.map_or("?".into(), |d| d.to_string()),
        r.ambient,
        r.method,
        r.expected,
        r.agrees
    );
    Ok(())
}

fn main() -> Result<(), harper_torus::Error> {
    // commutative gyroid at the trivial character: φ = (1,1,1), (1,−1,−1), (1,i,−i)
    for theta in [[qi(0), qi(0), qi(0)], [qi(0), qi(2), qi(2)], [qi(0), qi(-1), qi(-1)]] {
        report(Preset::Gyroid, &theta, &[0.0; 3])?;
    }
    report(Preset::Honeycomb, &[q(1, 3)], &[0.3, 0.7])?;
    report(Preset::Gyroid, &[q(1, 5), q(1, 7), q(1, 11)], &[0.1, 0.2, 0.3])?;

    let c = clifford_point_check()?;
    println!(
        "\nClifford point: dim {} / {}, χ⁴ ≠ 1 point: dim {} / {}",
        c.clifford_dimension, c.clifford_ambient, c.cube_root_dimension, c.cube_root_ambient
    );
    let r = ramified_ideal_check(3)?;
    for p in &r.points {
        println!("character {:?}: |1+U+V| = {:.3}, dim {}", p.k, p.f_abs, p.dimension);
    }
    Ok(())
}
