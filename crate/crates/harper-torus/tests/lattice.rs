use harper_torus::exact::{is_zero_vec, rank, vadd, vzero};
use harper_torus::lattice_graph::{
    all_spanning_trees, basis_loops, cycle_rank, enumerate_minimal_lifting_loops, loop_lifts, maximal, preset,
    spanning_tree, Preset, TreeChoice,
};
use harper_torus::Error;

const PRESETS: [Preset; 5] = [Preset::Zn(2), Preset::Zn(3), Preset::Triangular, Preset::Honeycomb, Preset::Gyroid];

#[test]
fn presets_validate() {
    for p in PRESETS {
        preset(p).unwrap().validate().unwrap();
    }
}

#[test]
fn preset_names_round_trip() {
    for p in PRESETS {
        assert_eq!(p.name().parse::<Preset>().unwrap(), p);
    }
    assert_eq!("zn(4)".parse::<Preset>().unwrap(), Preset::Zn(4));
    assert!(matches!("kagome".parse::<Preset>(), Err(Error::UnknownPreset(_))));
    assert!(matches!("zn0".parse::<Preset>(), Err(Error::Validation(_))));
}

#[test]
fn quotient_sizes() {
    // (vertices, undirected edges) of the maximal quotients
    let want = [(1, 2), (1, 3), (1, 3), (2, 3), (4, 6)];
    for (p, (v, e)) in PRESETS.iter().zip(want) {
        let q = maximal(*p).unwrap();
        assert_eq!((q.n_vertices(), q.n_undirected()), (v, e), "{p}");
    }
}

#[test]
fn quotient_is_regular_with_expected_degree() {
    for (p, deg) in [(Preset::Honeycomb, 3), (Preset::Gyroid, 3), (Preset::Triangular, 6), (Preset::Zn(3), 6)] {
        let q = maximal(p).unwrap();
        for v in 0..q.n_vertices() {
            assert_eq!(q.out_edges(v).count(), deg, "{p} vertex {v}");
        }
    }
}

#[test]
fn gyroid_quotient_is_complete_graph_on_four_vertices() {
    let q = maximal(Preset::Gyroid).unwrap();
    let mut pairs: Vec<(usize, usize)> = q
        .directed_edges
        .iter()
        .map(|e| (e.tail.min(e.head), e.tail.max(e.head)))
        .collect();
    pairs.sort();
    pairs.dedup();
    assert_eq!(pairs.len(), 6);
    assert!(pairs.iter().all(|(a, b)| a != b));
}

#[test]
fn cycle_rank_equals_first_betti_number() {
    for p in PRESETS {
        let q = maximal(p).unwrap();
        let t = spanning_tree(&q, &TreeChoice::Default).unwrap();
        assert_eq!(cycle_rank(&q, &t), q.n_undirected() - q.n_vertices() + 1, "{p}");
    }
}

#[test]
fn basis_loops_span_the_translation_lattice() {
    for p in PRESETS {
        let q = maximal(p).unwrap();
        let t = spanning_tree(&q, &TreeChoice::Default).unwrap();
        let b = basis_loops(&q, &t);
        let vs: Vec<_> = b.loops.iter().map(|l| l.vector.clone()).collect();
        // the lattice has full rank in the ambient space
        assert_eq!(rank(&vs), q.ambient_dim, "{p}");
        for l in &b.loops {
            assert_eq!(l.word.base, t.root);
        }
    }
}

#[test]
fn tree_paths_match_their_edge_words() {
    let q = maximal(Preset::Gyroid).unwrap();
    for t in all_spanning_trees(&q, 1) {
        for v in 0..q.n_vertices() {
            let sum = t.path_words[v].iter().fold(vzero(3), |acc, &id| vadd(&acc, &q.directed_edges[id].disp));
            assert_eq!(sum, t.paths[v]);
        }
    }
}

#[test]
fn spanning_tree_counts() {
    // Kirchhoff: K4 has 16 spanning trees, the honeycomb theta graph 3
    assert_eq!(all_spanning_trees(&maximal(Preset::Gyroid).unwrap(), 0).len(), 16);
    assert_eq!(all_spanning_trees(&maximal(Preset::Honeycomb).unwrap(), 0).len(), 3);
}

#[test]
fn explicit_tree_with_a_cycle_is_rejected() {
    let q = maximal(Preset::Gyroid).unwrap();
    // three edges among the same three vertices form a triangle
    let mut tri = Vec::new();
    for (k, e) in q.directed_edges.iter().step_by(2).enumerate() {
        if e.tail < 3 && e.head < 3 {
            tri.push(k);
        }
    }
    assert_eq!(tri.len(), 3);
    assert!(spanning_tree(&q, &TreeChoice::Explicit { root: 0, edges: tri }).is_err());
}

#[test]
fn minimal_loops_close_up_and_do_not_backtrack() {
    for p in [Preset::Honeycomb, Preset::Gyroid] {
        let q = maximal(p).unwrap();
        for base in 0..q.n_vertices() {
            let loops = enumerate_minimal_lifting_loops(&q, base);
            assert!(!loops.is_empty());
            for w in &loops {
                assert!(loop_lifts(&q, w));
                assert!(is_zero_vec(&w.displacement(&q)));
                for pair in w.edges.windows(2) {
                    assert_ne!(q.directed_edges[pair[0]].reverse, pair[1]);
                }
            }
        }
    }
}

#[test]
fn gyroid_loop_count_is_the_same_at_every_vertex() {
    let q = maximal(Preset::Gyroid).unwrap();
    for base in 0..4 {
        let loops = enumerate_minimal_lifting_loops(&q, base);
        assert_eq!(loops.len(), 30);
        // closed under reversal
        for w in &loops {
            assert!(loops.contains(&w.inverse(&q)));
        }
    }
}

#[test]
fn triangular_minimal_loops_are_triangles() {
    let q = maximal(Preset::Triangular).unwrap();
    let loops = enumerate_minimal_lifting_loops(&q, 0);
    assert!(loops.iter().all(|w| w.len() == 3));
    // six oriented triangles at a point, each counted once per starting edge
    assert_eq!(loops.len(), 12);
}

#[test]
fn parse_word_rejects_broken_paths() {
    let q = maximal(Preset::Gyroid).unwrap();
    let base = q.vertex_index("A").unwrap();
    assert!(q.parse_word(base, "e1 e1").is_err());
    assert!(q.parse_word(base, "e9").is_err());
}
