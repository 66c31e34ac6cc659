//! Hofstadter-style butterfly of the square lattice, written as CSV rows
//! `flux_num,flux_den,eigenvalue`.
//!
//! ```bash
//! cargo run --release --example butterfly > butterfly.csv
//! ```

use harper_torus::lattice_graph::Preset;
use harper_torus::spectral::{butterfly, farey_path, write_butterfly_csv};

fn main() -> Result<(), harper_torus::Error> {
    let q_max = 12;
    let rows = butterfly(Preset::Zn(2), &farey_path(q_max), &[1], q_max, 16)?;
    eprintln!("{} rows over {} fluxes", rows.len(), farey_path(q_max).len());
    write_butterfly_csv(&rows, std::io::stdout().lock())
}
