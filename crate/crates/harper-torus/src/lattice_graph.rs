//! Exact periodic graphs for the four lattice presets, their finite quotient
//! graphs, rooted spanning trees, loop lifting and minimal-loop search.
//!
//! Coordinates are exact rationals. The honeycomb is stored in the oblique
//! basis `b1 = (1,0)`, `b2 = (1/2, √3/2)` so that every vector is rational;
//! the skew forms in [`crate::magnetic`] are expressed in the same basis.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exact::*;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Preset {
    Zn(usize),
    Triangular,
    Honeycomb,
    Gyroid,
}

impl Preset {
    pub fn name(&self) -> String {
        match self {
            Preset::Zn(n) => format!("zn{n}"),
            Preset::Triangular => "triangular".into(),
            Preset::Honeycomb => "honeycomb".into(),
            Preset::Gyroid => "gyroid".into(),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;
    /// Accepts `gyroid`, `honeycomb`, `triangular`, `zn2`, `zn(2)`, `z2`.
    fn from_str(s: &str) -> Result<Preset, Error> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "gyroid" => return Ok(Preset::Gyroid),
            "honeycomb" | "hex" => return Ok(Preset::Honeycomb),
            "triangular" => return Ok(Preset::Triangular),
            _ => {}
        }
        let digits = t
            .strip_prefix("zn")
            .or_else(|| t.strip_prefix('z'))
            .map(|r| r.trim_matches(|c| c == '(' || c == ')'));
        match digits.and_then(|d| d.parse::<usize>().ok()) {
            Some(n) if n >= 1 => Ok(Preset::Zn(n)),
            Some(_) => Err(Error::Validation("zn(n) needs n >= 1".into())),
            None => Err(Error::UnknownPreset(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeOrbit {
    pub tail: usize,
    pub head: usize,
    pub disp: QVec,
}

/// Periodic graph given by vertex and edge orbit representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedPeriodicGraph {
    pub preset: Preset,
    pub ambient_dim: usize,
    pub vertex_orbits: Vec<QVec>,
    pub vertex_names: Vec<String>,
    /// Generators of the maximal translation group L.
    pub symmetry_generators: Vec<QVec>,
    /// Translation group of the crystallographic quotient, where defined.
    pub crystal_generators: Option<Vec<QVec>>,
    pub edge_orbits: Vec<EdgeOrbit>,
    /// Orbit representatives (by vertex index) fixing the vertex order of the
    /// maximal quotient.
    pub maximal_order: Vec<usize>,
    /// Names of the maximal-quotient vertices.
    pub maximal_names: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Crystal,
    Maximal,
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Flavor, Error> {
        match s {
            "crystal" => Ok(Flavor::Crystal),
            "maximal" => Ok(Flavor::Maximal),
            _ => Err(Error::Validation(format!("unknown quotient flavor {s:?}"))),
        }
    }
}

/// Directed edge of a quotient graph. Undirected edge `k` has directed ids
/// `2k` (stored orientation) and `2k+1` (reverse).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectedEdge {
    pub tail: usize,
    pub head: usize,
    pub disp: QVec,
    pub reverse: usize,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuotientGraph {
    pub preset: Preset,
    pub flavor: Flavor,
    pub ambient_dim: usize,
    pub vertices: Vec<String>,
    pub directed_edges: Vec<DirectedEdge>,
    /// Translation group the quotient was taken by.
    pub lattice: Vec<QVec>,
}

impl QuotientGraph {
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_undirected(&self) -> usize {
        self.directed_edges.len() / 2
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Directed id by name, e.g. `"e3"` or `"-e3"`.
    pub fn edge_by_name(&self, name: &str) -> Option<usize> {
        self.directed_edges.iter().position(|e| e.name == name)
    }

    /// Outgoing directed edges of `v`, in id order.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.directed_edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.tail == v)
            .map(|(i, _)| i)
    }

    /// Parse a whitespace separated word such as `"e2 -e4 e5"`.
    pub fn parse_word(&self, base: usize, word: &str) -> Result<LoopWord, Error> {
        let edges = word
            .split_whitespace()
            .map(|t| {
                self.edge_by_name(t)
                    .ok_or_else(|| Error::Validation(format!("unknown edge {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        LoopWord::new(self, base, edges)
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// The exact preset graphs.
pub fn preset(p: Preset) -> Result<EmbeddedPeriodicGraph, Error> {
    match p {
        Preset::Zn(n) => {
            if n == 0 {
                return Err(Error::Validation("zn(n) needs n >= 1".into()));
            }
            let units: Vec<QVec> = (0..n)
                .map(|i| (0..n).map(|j| qi((i == j) as i64)).collect())
                .collect();
            Ok(EmbeddedPeriodicGraph {
                preset: p,
                ambient_dim: n,
                vertex_orbits: vec![vzero(n)],
                vertex_names: vec!["O".into()],
                symmetry_generators: units.clone(),
                crystal_generators: None,
                edge_orbits: units
                    .iter()
                    .map(|u| EdgeOrbit { tail: 0, head: 0, disp: u.clone() })
                    .collect(),
                maximal_order: vec![0],
                maximal_names: vec!["O".into()],
            })
        }
        Preset::Triangular => {
            // oblique basis e1 = (1,0), e2 = (1/2, √3/2)
            let e1 = qvec(&[(1, 1), (0, 1)]);
            let e2 = qvec(&[(0, 1), (1, 1)]);
            let e12 = vsub(&e1, &e2);
            Ok(EmbeddedPeriodicGraph {
                preset: p,
                ambient_dim: 2,
                vertex_orbits: vec![vzero(2)],
                vertex_names: vec!["O".into()],
                symmetry_generators: vec![e1.clone(), e2.clone()],
                crystal_generators: None,
                edge_orbits: vec![
                    EdgeOrbit { tail: 0, head: 0, disp: e1 },
                    EdgeOrbit { tail: 0, head: 0, disp: e2 },
                    EdgeOrbit { tail: 0, head: 0, disp: e12 },
                ],
                maximal_order: vec![0],
                maximal_names: vec!["O".into()],
            })
        }
        Preset::Honeycomb => {
            // basis b1 = -e1 = (1,0), b2 = e2 = (1/2, √3/2) in Cartesian terms
            let e1 = qvec(&[(-1, 1), (0, 1)]);
            let e2 = qvec(&[(0, 1), (1, 1)]);
            let e3 = qvec(&[(1, 1), (-1, 1)]);
            let f2 = vsub(&e2, &e1);
            let f3 = vsub(&e3, &e1);
            Ok(EmbeddedPeriodicGraph {
                preset: p,
                ambient_dim: 2,
                // A is the orbit of the Cartesian point (1,0); B = A + e1
                vertex_orbits: vec![qvec(&[(1, 1), (0, 1)]), vzero(2)],
                vertex_names: vec!["A".into(), "B".into()],
                symmetry_generators: vec![f2, f3],
                crystal_generators: None,
                edge_orbits: vec![
                    EdgeOrbit { tail: 0, head: 1, disp: e1 },
                    EdgeOrbit { tail: 0, head: 1, disp: e2 },
                    EdgeOrbit { tail: 0, head: 1, disp: e3 },
                ],
                maximal_order: vec![0, 1],
                maximal_names: vec!["A".into(), "B".into()],
            })
        }
        Preset::Gyroid => {
            let v = |a: i64, b: i64, c: i64| qvec(&[(a, 8), (b, 8), (c, 8)]);
            let vertices = vec![
                v(5, 5, 5),
                v(3, 7, 5),
                v(3, 1, 7),
                v(5, 3, 7),
                v(7, 5, 3),
                v(1, 7, 3),
                v(1, 1, 1),
                v(7, 3, 1),
            ];
            let tx = [qi(1), qi(0), qi(0)];
            let ty = [qi(0), qi(1), qi(0)];
            let tz = [qi(0), qi(0), qi(1)];
            let zero = [qi(0), qi(0), qi(0)];
            let list: [(usize, usize, &[Q; 3]); 12] = [
                (0, 1, &zero),
                (0, 3, &zero),
                (0, 4, &zero),
                (2, 3, &zero),
                (4, 7, &zero),
                (1, 5, &zero),
                (4, 5, &tx),
                (7, 6, &tx),
                (1, 2, &ty),
                (5, 6, &ty),
                (2, 6, &tz),
                (3, 7, &tz),
            ];
            let edge_orbits = list
                .iter()
                .map(|&(t, h, shift)| EdgeOrbit {
                    tail: t,
                    head: h,
                    disp: vsub(&vadd(&vertices[h], shift), &vertices[t]),
                })
                .collect();
            let unit: Vec<QVec> = vec![tx.to_vec(), ty.to_vec(), tz.to_vec()];
            Ok(EmbeddedPeriodicGraph {
                preset: p,
                ambient_dim: 3,
                vertex_orbits: vertices,
                vertex_names: names("v", 8),
                symmetry_generators: bcc_f(),
                crystal_generators: Some(unit),
                edge_orbits,
                maximal_order: vec![0, 1, 3, 2],
                maximal_names: vec!["A".into(), "B".into(), "C".into(), "D".into()],
            })
        }
    }
}

/// bcc generators f1 = (1,0,0), f2 = (0,1,0), f3 = ½(1,1,1).
pub fn bcc_f() -> Vec<QVec> {
    vec![
        qvec(&[(1, 1), (0, 1), (0, 1)]),
        qvec(&[(0, 1), (1, 1), (0, 1)]),
        qvec(&[(1, 2), (1, 2), (1, 2)]),
    ]
}

/// bcc generators g1 = ½(1,−1,1), g2 = ½(−1,1,1), g3 = ½(1,1,−1).
pub fn bcc_g() -> Vec<QVec> {
    vec![
        qvec(&[(1, 2), (-1, 2), (1, 2)]),
        qvec(&[(-1, 2), (1, 2), (1, 2)]),
        qvec(&[(1, 2), (1, 2), (-1, 2)]),
    ]
}

impl EmbeddedPeriodicGraph {
    /// Check the type invariants: independent generators and displacements
    /// compatible with the vertex positions.
    pub fn validate(&self) -> Result<(), Error> {
        if rank(&self.symmetry_generators) != self.symmetry_generators.len() {
            return Err(Error::Validation("symmetry generators are dependent".into()));
        }
        let group = self.crystal_generators.as_ref().unwrap_or(&self.symmetry_generators);
        for e in &self.edge_orbits {
            let diff = vsub(
                &vsub(&self.vertex_orbits[e.head], &self.vertex_orbits[e.tail]),
                &e.disp,
            );
            if lattice_coords(group, &diff).is_none() {
                return Err(Error::Validation(format!(
                    "edge {}→{} displacement incompatible with positions",
                    e.tail, e.head
                )));
            }
        }
        Ok(())
    }

    /// JSON export `{ambient_dim, vertices, edges:[{tail, head, disp}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ambient_dim": self.ambient_dim,
            "vertices": self.vertex_orbits.iter().map(|v| fmt_qvec(v)).collect::<Vec<_>>(),
            "edges": self.edge_orbits.iter().map(|e| serde_json::json!({
                "tail": e.tail, "head": e.head, "disp": fmt_qvec(&e.disp)
            })).collect::<Vec<_>>(),
        })
    }
}

impl QuotientGraph {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ambient_dim": self.ambient_dim,
            "flavor": self.flavor,
            "vertices": self.vertices,
            "edges": self.directed_edges.iter().map(|e| serde_json::json!({
                "name": e.name, "tail": e.tail, "head": e.head,
                "disp": fmt_qvec(&e.disp), "reverse": e.reverse
            })).collect::<Vec<_>>(),
        })
    }
}

/// Quotient of the periodic graph by the crystal or maximal translation
/// group. Undirected edges keep the orientation and order of their first
/// orbit representative.
pub fn quotient(g: &EmbeddedPeriodicGraph, flavor: Flavor) -> Result<QuotientGraph, Error> {
    let (group, reps, names): (Vec<QVec>, Vec<usize>, Vec<String>) = match flavor {
        Flavor::Crystal => {
            let group = g.crystal_generators.clone().ok_or_else(|| {
                Error::Validation(format!("{} has no crystal quotient", g.preset))
            })?;
            let n = g.vertex_orbits.len();
            (group, (0..n).collect(), g.vertex_names.clone())
        }
        Flavor::Maximal => (
            g.symmetry_generators.clone(),
            g.maximal_order.clone(),
            g.maximal_names.clone(),
        ),
    };
    let same = |a: &QVec, b: &QVec| lattice_coords(&group, &vsub(a, b)).is_some();
    let class_of = |v: usize| -> Result<usize, Error> {
        reps.iter()
            .position(|&r| same(&g.vertex_orbits[r], &g.vertex_orbits[v]))
            .ok_or_else(|| Error::Validation(format!("vertex {v} has no class representative")))
    };
    let mut directed: Vec<DirectedEdge> = Vec::new();
    for e in &g.edge_orbits {
        let (t, h) = (class_of(e.tail)?, class_of(e.head)?);
        let dup = directed.iter().any(|d| d.tail == t && d.head == h && d.disp == e.disp);
        if dup {
            continue;
        }
        let k = directed.len() / 2;
        let name = format!("e{}", k + 1);
        directed.push(DirectedEdge {
            tail: t,
            head: h,
            disp: e.disp.clone(),
            reverse: 2 * k + 1,
            name: name.clone(),
        });
        directed.push(DirectedEdge {
            tail: h,
            head: t,
            disp: vneg(&e.disp),
            reverse: 2 * k,
            name: format!("-{name}"),
        });
    }
    Ok(QuotientGraph {
        preset: g.preset,
        flavor,
        ambient_dim: g.ambient_dim,
        vertices: names,
        directed_edges: directed,
        lattice: group,
    })
}

/// Convenience: the maximal quotient of a preset.
pub fn maximal(p: Preset) -> Result<QuotientGraph, Error> {
    quotient(&preset(p)?, Flavor::Maximal)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootedSpanningTree {
    pub root: usize,
    /// Undirected edge indices.
    pub edges: Vec<usize>,
    /// Path vector root → v along tree edges.
    pub paths: Vec<QVec>,
    /// Directed edge ids along the tree path root → v.
    pub path_words: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default)]
pub enum TreeChoice {
    /// Breadth-first from vertex 0 taking edges in id order.
    #[default]
    Default,
    /// Explicit root and undirected edge indices.
    Explicit { root: usize, edges: Vec<usize> },
}

pub fn spanning_tree(q: &QuotientGraph, choice: &TreeChoice) -> Result<RootedSpanningTree, Error> {
    let nv = q.n_vertices();
    let (root, allowed): (usize, Option<Vec<usize>>) = match choice {
        TreeChoice::Default => (0, None),
        TreeChoice::Explicit { root, edges } => {
            if *root >= nv {
                return Err(Error::Validation("tree root out of range".into()));
            }
            if edges.iter().any(|&k| k >= q.n_undirected()) {
                return Err(Error::Validation("tree edge out of range".into()));
            }
            if edges.len() + 1 != nv {
                return Err(Error::Validation(format!(
                    "{} edges cannot span {} vertices",
                    edges.len(),
                    nv
                )));
            }
            (*root, Some(edges.clone()))
        }
    };
    let mut paths: Vec<Option<QVec>> = vec![None; nv];
    let mut words: Vec<Vec<usize>> = vec![Vec::new(); nv];
    let mut used = Vec::new();
    paths[root] = Some(vzero(q.ambient_dim));
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for id in q.out_edges(v) {
            let e = &q.directed_edges[id];
            let k = id / 2;
            if let Some(a) = &allowed {
                if !a.contains(&k) {
                    continue;
                }
            }
            if paths[e.head].is_some() {
                continue;
            }
            let p = vadd(paths[v].as_ref().unwrap(), &e.disp);
            paths[e.head] = Some(p);
            let mut w = words[v].clone();
            w.push(id);
            words[e.head] = w;
            used.push(k);
            queue.push_back(e.head);
        }
    }
    if paths.iter().any(|p| p.is_none()) {
        return Err(Error::Validation("edge set does not span the quotient".into()));
    }
    if let Some(a) = &allowed {
        let mut s = a.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() != a.len() || used.len() != a.len() {
            return Err(Error::Validation("edge set is not a tree".into()));
        }
    }
    used.sort_unstable();
    Ok(RootedSpanningTree {
        root,
        edges: used,
        paths: paths.into_iter().map(Option::unwrap).collect(),
        path_words: words,
    })
}

/// All spanning trees rooted at `root` (small graphs only).
pub fn all_spanning_trees(q: &QuotientGraph, root: usize) -> Vec<RootedSpanningTree> {
    let m = q.n_undirected();
    let k = q.n_vertices() - 1;
    let mut out = Vec::new();
    let mut pick = Vec::new();
    fn rec(
        q: &QuotientGraph,
        root: usize,
        start: usize,
        m: usize,
        k: usize,
        pick: &mut Vec<usize>,
        out: &mut Vec<RootedSpanningTree>,
    ) {
        if pick.len() == k {
            let c = TreeChoice::Explicit { root, edges: pick.clone() };
            if let Ok(t) = spanning_tree(q, &c) {
                out.push(t);
            }
            return;
        }
        for e in start..m {
            pick.push(e);
            rec(q, root, e + 1, m, k, pick, out);
            pick.pop();
        }
    }
    rec(q, root, 0, m, k, &mut pick, &mut out);
    out
}

pub fn cycle_rank(q: &QuotientGraph, t: &RootedSpanningTree) -> usize {
    q.n_undirected() - t.edges.len()
}

/// Based closed edge word on a quotient graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LoopWord {
    pub base: usize,
    pub edges: Vec<usize>,
}

impl LoopWord {
    /// Builds a word after checking incidence and closure.
    pub fn new(q: &QuotientGraph, base: usize, edges: Vec<usize>) -> Result<LoopWord, Error> {
        let mut at = base;
        for &id in &edges {
            let e = q
                .directed_edges
                .get(id)
                .ok_or_else(|| Error::Validation(format!("edge id {id} out of range")))?;
            if e.tail != at {
                return Err(Error::Validation(format!(
                    "edge {} does not start at {}",
                    e.name, q.vertices[at]
                )));
            }
            at = e.head;
        }
        if at != base {
            return Err(Error::Validation("word is not closed on the quotient".into()));
        }
        Ok(LoopWord { base, edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn displacement(&self, q: &QuotientGraph) -> QVec {
        self.edges
            .iter()
            .fold(vzero(q.ambient_dim), |acc, &id| vadd(&acc, &q.directed_edges[id].disp))
    }

    /// Prefix sums f_1..f_n with f_j the sum of the first j displacements.
    pub fn partial_sums(&self, q: &QuotientGraph) -> Vec<QVec> {
        let mut acc = vzero(q.ambient_dim);
        self.edges
            .iter()
            .map(|&id| {
                acc = vadd(&acc, &q.directed_edges[id].disp);
                acc.clone()
            })
            .collect()
    }

    /// Reversed word with every edge flipped.
    pub fn inverse(&self, q: &QuotientGraph) -> LoopWord {
        LoopWord {
            base: self.base,
            edges: self.edges.iter().rev().map(|&id| q.directed_edges[id].reverse).collect(),
        }
    }

    /// Split at every return to the base vertex.
    pub fn blocks(&self, q: &QuotientGraph) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        for &id in &self.edges {
            cur.push(id);
            if q.directed_edges[id].head == self.base {
                out.push(std::mem::take(&mut cur));
            }
        }
        if !cur.is_empty() {
            out.push(cur);
        }
        out
    }

    /// All cyclic rotations of the block decomposition (the word itself first).
    pub fn block_rotations(&self, q: &QuotientGraph) -> Vec<LoopWord> {
        let b = self.blocks(q);
        (0..b.len())
            .map(|s| LoopWord {
                base: self.base,
                edges: (0..b.len()).flat_map(|i| b[(s + i) % b.len()].clone()).collect(),
            })
            .collect()
    }

    pub fn format(&self, q: &QuotientGraph) -> String {
        self.edges
            .iter()
            .map(|&id| q.directed_edges[id].name.clone())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Signed traversal count per undirected edge.
    pub fn edge_balance(&self, q: &QuotientGraph) -> Vec<i64> {
        let mut c = vec![0i64; q.n_undirected()];
        for &id in &self.edges {
            c[id / 2] += if id % 2 == 0 { 1 } else { -1 };
        }
        c
    }
}

/// True iff the loop closes up in the periodic graph (zero displacement).
pub fn loop_lifts(q: &QuotientGraph, w: &LoopWord) -> bool {
    is_zero_vec(&w.displacement(q))
}

#[derive(Clone, Debug)]
pub struct BasisLoop {
    pub word: LoopWord,
    pub off_tree_edge: usize,
    pub vector: QVec,
}

#[derive(Clone, Debug)]
pub struct BasisLoops {
    pub loops: Vec<BasisLoop>,
    pub independent: bool,
}

/// One loop per off-tree undirected edge (stored orientation), closed through
/// the tree.
pub fn basis_loops(q: &QuotientGraph, t: &RootedSpanningTree) -> BasisLoops {
    let mut loops = Vec::new();
    for k in 0..q.n_undirected() {
        if t.edges.contains(&k) {
            continue;
        }
        let id = 2 * k;
        let e = &q.directed_edges[id];
        let mut edges = t.path_words[e.tail].clone();
        edges.push(id);
        edges.extend(t.path_words[e.head].iter().rev().map(|&x| q.directed_edges[x].reverse));
        let word = LoopWord { base: t.root, edges };
        let vector = word.displacement(q);
        loops.push(BasisLoop { word, off_tree_edge: k, vector });
    }
    let vs: Vec<QVec> = loops.iter().map(|l| l.vector.clone()).collect();
    let independent = !vs.is_empty() && rank(&vs) == vs.len();
    BasisLoops { loops, independent }
}

/// Based minimal-length closed words with zero displacement and no immediate
/// backtracking, by iterative deepening. Sorted as edge sequences.
pub fn enumerate_minimal_lifting_loops(q: &QuotientGraph, base: usize) -> Vec<LoopWord> {
    enumerate_minimal_lifting_loops_bounded(q, base, 32)
}

pub fn enumerate_minimal_lifting_loops_bounded(
    q: &QuotientGraph,
    base: usize,
    max_len: usize,
) -> Vec<LoopWord> {
    let out_edges: Vec<Vec<usize>> = (0..q.n_vertices()).map(|v| q.out_edges(v).collect()).collect();
    for len in 1..=max_len {
        let mut found = Vec::new();
        let mut stack = Vec::with_capacity(len);
        search(q, &out_edges, base, base, len, &vzero(q.ambient_dim), &mut stack, &mut found);
        if !found.is_empty() {
            found.sort();
            found.dedup();
            return found;
        }
    }
    Vec::new()
}

#[allow(clippy::too_many_arguments)]
fn search(
    q: &QuotientGraph,
    out_edges: &[Vec<usize>],
    base: usize,
    at: usize,
    remaining: usize,
    disp: &QVec,
    stack: &mut Vec<usize>,
    found: &mut Vec<LoopWord>,
) {
    if remaining == 0 {
        if at == base && is_zero_vec(disp) {
            found.push(LoopWord { base, edges: stack.clone() });
        }
        return;
    }
    for &id in &out_edges[at] {
        if let Some(&last) = stack.last() {
            if q.directed_edges[last].reverse == id {
                continue;
            }
        }
        let e = &q.directed_edges[id];
        stack.push(id);
        search(q, out_edges, base, e.head, remaining - 1, &vadd(disp, &e.disp), stack, found);
        stack.pop();
    }
}

/// A letter of the free group on the basis loops: (loop index, ±1).
pub type Letter = (usize, i32);

/// Free-group word read off an edge word: each off-tree edge contributes its
/// basis-loop letter. Freely reduced.
pub fn free_word(q: &QuotientGraph, t: &RootedSpanningTree, edges: &[usize]) -> Vec<Letter> {
    let off: BTreeMap<usize, usize> = basis_loops(q, t)
        .loops
        .iter()
        .enumerate()
        .map(|(i, l)| (l.off_tree_edge, i))
        .collect();
    let letters: Vec<Letter> = edges
        .iter()
        .filter_map(|&id| off.get(&(id / 2)).map(|&i| (i, if id % 2 == 0 { 1 } else { -1 })))
        .collect();
    reduce_letters(&letters)
}

pub fn reduce_letters(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for &l in w {
        match out.last() {
            Some(&(i, s)) if i == l.0 && s == -l.1 => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

/// Commutator `[a,b] = a b a⁻¹ b⁻¹` of two basis loops.
pub fn commutator(a: Letter, b: Letter) -> Vec<Letter> {
    vec![a, b, (a.0, -a.1), (b.0, -b.1)]
}

/// Minimal edge-word length of the π₁ element given by `target` (letters in
/// the basis loops). In a graph each homotopy class of based loops has a
/// unique reduced representative, obtained by expanding the letters through
/// the tree and cancelling backtracks. `None` if longer than `radius`.
pub fn word_length_in_edges(
    q: &QuotientGraph,
    t: &RootedSpanningTree,
    target: &[Letter],
    radius: usize,
) -> Option<usize> {
    let basis = basis_loops(q, t);
    let mut edges: Vec<usize> = Vec::new();
    for &(i, s) in target {
        let w = &basis.loops.get(i)?.word;
        let seg = if s > 0 { w.clone() } else { w.inverse(q) };
        for id in seg.edges {
            match edges.last() {
                Some(&last) if q.directed_edges[last].reverse == id => {
                    edges.pop();
                }
                _ => edges.push(id),
            }
        }
    }
    (edges.len() <= radius).then_some(edges.len())
}
