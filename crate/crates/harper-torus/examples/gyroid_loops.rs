//! Minimal lifting loops of the gyroid quotient graph and their effective
//! normal vectors.
//!
//! ```bash
//! cargo run --example gyroid_loops
//! ```

use harper_torus::exact::fmt_qvec;
use harper_torus::lattice_graph::{enumerate_minimal_lifting_loops, maximal, Preset};
use harper_torus::magnetic::effective_normal;

/// Six generating loops as edge words, split into blocks at the base vertex.
const GENERATING_LOOPS: [&str; 6] = [
    "e2 -e4 e5 e6 -e2 e3 e4 -e6 -e5 -e3",
    "e1 -e5 e4 -e6 -e1 e3 e5 e6 -e4 -e3",
    "e1 -e5 e4 -e6 -e1 e2 -e4 e5 e6 -e2",
    "e1 -e5 -e3 e2 -e6 -e1 e3 e5 e6 -e2",
    "e1 e6 -e2 e3 e4 -e6 -e1 e2 -e4 -e3",
    "e1 -e5 e4 -e2 e3 e5 -e1 e2 -e4 -e3",
];

fn main() -> Result<(), harper_torus::Error> {
    let q = maximal(Preset::Gyroid)?;
    let base = q.vertex_index("A").expect("gyroid quotient has vertex A");

    let loops = enumerate_minimal_lifting_loops(&q, base);
    println!("{} oriented minimal loops of length {}", loops.len(), loops[0].len());

    println!("\n{:<42} {:>12} {:>12}", "loop", "N_eff", "reversed");
    for word in GENERATING_LOOPS {
        let w = q.parse_word(base, word)?;
        let n = effective_normal(&q, &w)?;
        let r = effective_normal(&q, &w.inverse(&q))?;
        println!("{:<42} {:>12} {:>12}", word, fmt_qvec(&n).join(","), fmt_qvec(&r).join(","));
        for rot in w.block_rotations(&q) {
            assert_eq!(effective_normal(&q, &rot)?, n, "block rotation changed N_eff");
        }
    }
    Ok(())
}
