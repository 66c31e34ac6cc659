//! Spectral gaps of the honeycomb Harper operator at θ = 1/5 and their
//! labels in ℤ + θℤ.
//!
//! ```bash
//! cargo run --release --example gap_labels
//! ```

use harper_torus::exact::q;
use harper_torus::harper_model::build_theta;
use harper_torus::lattice_graph::Preset;
use harper_torus::spectral::{default_resolution, detect_gaps, gap_labels, gaps_stable, persistent_gaps, theta_f64, twist_sweep};
use harper_torus::Real;

fn main() -> Result<(), harper_torus::Error> {
    let m = build_theta(Preset::Honeycomb, &[Real::Exact(q(1, 5))])?;
    let coarse = twist_sweep(&m, 64)?;
    let delta = default_resolution(&coarse);
    let raw = detect_gaps(&coarse, delta);
    let g128 = detect_gaps(&twist_sweep(&m, 128)?, delta);
    let g256 = detect_gaps(&twist_sweep(&m, 256)?, delta);
    // Sampling holes around the band touching at E = 0 shrink with the grid.
    let gaps = persistent_gaps(&raw, &g128);
    println!("raw gaps at 64²: {}, persisting at 128²: {}\n", raw.len(), gaps.len());

    println!("{:>10} {:>10} {:>8} {:>4} {:>4} {:>9}", "lower", "upper", "IDS", "m", "n", "residual");
    for g in gap_labels(&gaps, &theta_f64(&m), 5) {
        println!(
            "{:>10.5} {:>10.5} {:>8.4} {:>4} {:>4} {:>9.1e}",
            g.lower, g.upper, g.ids, g.label.m, g.label.n[0], g.residual
        );
    }

    let refined = persistent_gaps(&g128, &g256);
    println!("\nstable under grid refinement: {}", gaps_stable(&gaps, &refined));
    Ok(())
}
