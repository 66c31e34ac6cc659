//! Band structure of the commutative honeycomb model and its Dirac points.
//!
//! ```bash
//! cargo run --release --example honeycomb_bands
//! ```

use harper_torus::harper_model::build_theta;
use harper_torus::lattice_graph::Preset;
use harper_torus::spectral::{band_sweep, cluster_points, degeneracy_locus, refine_degeneracy, spectrum_at};
use harper_torus::Real;

fn main() -> Result<(), harper_torus::Error> {
    let m = build_theta(Preset::Honeycomb, &[Real::zero()])?;

    let bands = band_sweep(&m, 8)?;
    println!("{} characters, {} bands", bands.sample_count(), bands.k);
    println!("trivial character: {:?}", spectrum_at(&m, &[0.0, 0.0])?);

    let grid = 120;
    let points = degeneracy_locus(&m, grid, 0.1)?;
    let clusters = cluster_points(&points, grid);
    println!("\n{} near-degenerate grid points in {} clusters", points.len(), clusters.len());
    for c in &clusters {
        let (k, gap) = refine_degeneracy(&m, &c.best.k, 0.05)?;
        println!(
            "cluster of {:>3}: refined to ({:.6}, {:.6}), spacing {:.1e}",
            c.size, k[0], k[1], gap
        );
    }
    Ok(())
}
