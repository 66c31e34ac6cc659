//! Dimensions of the matrix *-algebras generated by the evaluated Harper
//! operator and symmetry translations, classification against the case
//! table, and symbolic replays of the elementary-matrix proof chains.
//!
//! Two routes compute dimensions. Span closure orthonormalizes flattened
//! matrices and adds pairwise products until nothing new appears; it is used
//! for small sizes. For large sizes the commutant is computed in the
//! eigenbasis of a random Hermitian element of the algebra: when that element
//! has simple spectrum the commutant consists of diagonal matrices constant on
//! the connected components of the coupling graph, and the algebra is the
//! direct sum of full blocks on those components.

use faer::Side;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exact::*;
use crate::harper_model::{build, field_from_theta, HarperModel};
use crate::lattice_graph::{Preset, TreeChoice};
use crate::magnetic::{
    classify_case, CaseId, GyroidCase, GyroidParams, HoneycombCase, HoneycombParams,
    PhaseParams, SkewForm,
};
use crate::nct_rep::{build_rep, evaluate, CMat, Representation};
use crate::torus_poly::{TorusElement, TorusMatrix};
use crate::Error;

/// Relative rank tolerance of the span closure.
pub const SPAN_TOL: f64 = 1e-9;
/// Iteration cap of the span closure.
pub const MAX_ITER: usize = 20;
/// Largest matrix size handled by span closure in [`algebra_dimension`].
pub const SPAN_MAX_N: usize = 16;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn identity(n: usize) -> CMat {
    CMat::from_fn(n, n, |i, j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) })
}

fn adjoint(m: &CMat) -> CMat {
    m.adjoint().to_owned()
}

fn flatten(m: &CMat) -> Vec<Complex64> {
    let n = m.nrows();
    let mut v = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            v.push(m[(i, j)]);
        }
    }
    v
}

fn unflatten(v: &[Complex64], n: usize) -> CMat {
    CMat::from_fn(n, n, |i, j| v[i * n + j])
}

fn vnorm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormal basis of a matrix subspace (flattened, row-major).
#[derive(Clone, Debug)]
pub struct Span {
    pub n: usize,
    pub basis: Vec<Vec<Complex64>>,
}

impl Span {
    pub fn new(n: usize) -> Span {
        Span { n, basis: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Component of `v` orthogonal to the span (two Gram–Schmidt passes).
    pub fn residual(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut r = v.to_vec();
        for _ in 0..2 {
            for b in &self.basis {
                let dot: Complex64 = b.iter().zip(&r).map(|(x, y)| x.conj() * y).sum();
                for (ri, bi) in r.iter_mut().zip(b) {
                    *ri -= dot * bi;
                }
            }
        }
        r
    }

    /// Adds `m` if it is independent at relative tolerance `tol`.
    pub fn try_add(&mut self, m: &CMat, tol: f64) -> bool {
        if self.dim() >= self.n * self.n {
            return false;
        }
        let v = flatten(m);
        let nv = vnorm(&v);
        if nv == 0.0 {
            return false;
        }
        let r = self.residual(&v);
        let nr = vnorm(&r);
        // candidates are products of unit-norm elements, so the floor of 1
        // makes the tolerance relative to the scale of the whole set
        if nr <= tol * nv.max(1.0) {
            return false;
        }
        self.basis.push(r.iter().map(|x| x / nr).collect());
        true
    }

    /// Relative distance of `m` from the span.
    pub fn membership_residual(&self, m: &CMat) -> f64 {
        let v = flatten(m);
        let nv = vnorm(&v);
        if nv == 0.0 {
            return 0.0;
        }
        vnorm(&self.residual(&v)) / nv
    }

    pub fn element(&self, i: usize) -> CMat {
        unflatten(&self.basis[i], self.n)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureResult {
    pub dimension: usize,
    pub iterations: usize,
    pub converged: bool,
}

/// Span closure of the unital *-algebra generated by `gens`.
pub fn generated_span(gens: &[CMat], tol: f64) -> Result<(Span, ClosureResult), Error> {
    let n = gens.first().map_or(0, |g| g.nrows());
    if gens.iter().any(|g| g.nrows() != n || g.ncols() != n) {
        return Err(Error::Validation("generators must be square and of equal size".into()));
    }
    let n = n.max(1);
    let mut span = Span::new(n);
    span.try_add(&identity(n), tol);
    // a common rescaling leaves the algebra unchanged and puts the largest
    // generator at unit Frobenius norm
    let scale = gens.iter().map(|g| vnorm(&flatten(g))).fold(0.0f64, f64::max);
    for g in gens {
        if scale > 0.0 {
            let g = g * faer::Scale(c(1.0 / scale, 0.0));
            span.try_add(&g, tol);
            span.try_add(&adjoint(&g), tol);
        }
    }
    let full = n * n;
    let mut frontier: Vec<usize> = (0..span.dim()).collect();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < MAX_ITER {
        iterations += 1;
        let before = span.dim();
        let elems: Vec<CMat> = (0..before).map(|i| span.element(i)).collect();
        'outer: for &i in &frontier {
            for b in &elems {
                for p in [&elems[i] * b, b * &elems[i]] {
                    span.try_add(&p, tol);
                    if span.dim() == full {
                        break 'outer;
                    }
                }
            }
        }
        if span.dim() == before || span.dim() == full {
            converged = true;
            break;
        }
        frontier = (before..span.dim()).collect();
    }
    if span.dim() == full {
        converged = true;
    }
    let r = ClosureResult { dimension: span.dim(), iterations, converged };
    Ok((span, r))
}

/// Dimension of the generated unital *-algebra by span closure.
pub fn generated_dimension(gens: &[CMat], tol: f64) -> Result<usize, Error> {
    let (_, r) = generated_span(gens, tol)?;
    if !r.converged {
        return Err(Error::Assertion(format!(
            "span closure did not stabilize within {MAX_ITER} iterations"
        )));
    }
    Ok(r.dimension)
}

/// Nullspace dimension of a Hermitian positive semidefinite matrix, relative
/// to its largest eigenvalue.
fn psd_nullity(g: &CMat, tol: f64) -> Result<(usize, Vec<f64>, CMat), Error> {
    let e = g
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Assertion(format!("eigensolver failed: {e:?}")))?;
    let s: Vec<f64> = (0..g.nrows()).map(|i| e.S().column_vector()[i].re).collect();
    let top = s.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs())).max(1e-300);
    let null = s.iter().filter(|&&x| x.abs() <= tol * top).count();
    Ok((null, s, e.U().to_owned()))
}

/// Basis of the commutant `{X : XG = GX for all G, G*}` by a direct
/// nullspace computation with `n²` unknowns (small `n` only).
pub fn commutant_basis(gens: &[CMat], tol: f64) -> Result<Vec<CMat>, Error> {
    let n = gens.first().map_or(1, |g| g.nrows());
    let nn = n * n;
    let mut all: Vec<CMat> = Vec::new();
    for g in gens {
        all.push(g.clone());
        all.push(adjoint(g));
    }
    // Gram matrix Σ K*K with K vec(X) = vec(GX − XG), row-major vec
    let mut gram = CMat::zeros(nn, nn);
    for g in &all {
        let k = CMat::from_fn(nn, nn, |row, col| {
            let (a, b) = (row / n, row % n);
            let (cc, d) = (col / n, col % n);
            let mut v = c(0.0, 0.0);
            if d == b {
                v += g[(a, cc)];
            }
            if cc == a {
                v -= g[(d, b)];
            }
            v
        });
        gram = &gram + &(k.adjoint() * &k);
    }
    let (null, _s, u) = psd_nullity(&gram, tol)?;
    // eigenvalues ascend, so the nullspace is the first `null` columns
    Ok((0..null)
        .map(|col| CMat::from_fn(n, n, |i, j| u[(i * n + j, col)]))
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutantReport {
    pub n: usize,
    pub commutant_dimension: usize,
    /// Whether the random Hermitian probe had simple spectrum.
    pub multiplicity_free: bool,
    /// Sizes of the coupled blocks (multiplicity-free case).
    pub blocks: Vec<usize>,
    /// Algebra dimension when it can be inferred.
    pub algebra_dimension: Option<usize>,
    pub full: bool,
    pub seed: u64,
}

/// Commutant of the *-algebra generated by `gens` through the eigenbasis of
/// a random Hermitian element.
pub fn commutant_route(gens: &[CMat], tol: f64, seed: u64) -> Result<CommutantReport, Error> {
    let n = gens.first().map_or(1, |g| g.nrows());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // random Hermitian element: generators, their adjoints and pairwise products
    let mut h = CMat::zeros(n, n);
    let mut herm_parts: Vec<CMat> = Vec::new();
    for g in gens {
        herm_parts.push(g + &adjoint(g));
        herm_parts.push(CMat::from_fn(n, n, |i, j| c(0.0, 1.0) * (g[(i, j)] - g[(j, i)].conj())));
    }
    for (i, a) in gens.iter().enumerate() {
        for b in gens.iter().skip(i + 1) {
            let p = a * b;
            herm_parts.push(&p + &adjoint(&p));
        }
    }
    for part in &herm_parts {
        let r: f64 = rng.gen_range(-1.0..1.0);
        h = &h + &(part * faer::Scale(c(r, 0.0)));
    }
    let e = h
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Assertion(format!("eigensolver failed: {e:?}")))?;
    let ev: Vec<f64> = (0..n).map(|i| e.S().column_vector()[i].re).collect();
    let scale = ev.iter().fold(1.0f64, |a, b| a.max(b.abs()));
    // clusters of numerically equal eigenvalues
    let mut clusters: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || ev[i] - ev[i - 1] > 10.0 * tol * scale {
            clusters.push((start, i));
            start = i;
        }
    }
    let u = e.U().to_owned();
    let ua = adjoint(&u);
    let transformed: Vec<CMat> = gens.iter().map(|g| &(&ua * g) * &u).collect();
    let gnorm = transformed
        .iter()
        .map(|g| (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).fold(0.0f64, |a, (i, j)| a.max(g[(i, j)].norm())))
        .fold(0.0f64, f64::max)
        .max(1e-300);
    let thresh = 10.0 * tol * gnorm;
    let multiplicity_free = clusters.iter().all(|(a, b)| b - a == 1);
    // union-find over clusters coupled by any generator block
    let cl_of: Vec<usize> = {
        let mut v = vec![0; n];
        for (ci, &(a, b)) in clusters.iter().enumerate() {
            for x in v.iter_mut().take(b).skip(a) {
                *x = ci;
            }
        }
        v
    };
    let mut parent: Vec<usize> = (0..clusters.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for g in &transformed {
        for i in 0..n {
            for j in 0..n {
                if g[(i, j)].norm() > thresh {
                    let (a, b) = (find(&mut parent, cl_of[i]), find(&mut parent, cl_of[j]));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for ci in 0..clusters.len() {
        let r = find(&mut parent, ci);
        groups.entry(r).or_default().push(ci);
    }
    if multiplicity_free {
        let blocks: Vec<usize> = groups.values().map(|g| g.len()).collect();
        let dim: usize = blocks.iter().map(|b| b * b).sum();
        return Ok(CommutantReport {
            n,
            commutant_dimension: blocks.len(),
            multiplicity_free,
            full: blocks.len() == 1,
            blocks,
            algebra_dimension: Some(dim),
            seed,
        });
    }
    // block linear system: X = ⊕ X_c over clusters, X_c G_{cc'} = G_{cc'} X_{c'}
    let mut commutant_dim = 0;
    for members in groups.values() {
        let offs: Vec<usize> = {
            let mut o = Vec::new();
            let mut acc = 0;
            for &ci in members {
                o.push(acc);
                let m = clusters[ci].1 - clusters[ci].0;
                acc += m * m;
            }
            o
        };
        let unknowns: usize = members.iter().map(|&ci| (clusters[ci].1 - clusters[ci].0).pow(2)).sum();
        if unknowns > 4096 {
            return Err(Error::Assertion(format!(
                "degenerate probe spectrum needs {unknowns} unknowns; rerun with another seed"
            )));
        }
        let mut gram = CMat::zeros(unknowns, unknowns);
        let mut g_all: Vec<CMat> = transformed.clone();
        g_all.extend(transformed.iter().map(adjoint));
        for g in &g_all {
            for (pa, &ca) in members.iter().enumerate() {
                for (pb, &cb) in members.iter().enumerate() {
                    let (a0, a1) = clusters[ca];
                    let (b0, b1) = clusters[cb];
                    let (ma, mb) = (a1 - a0, b1 - b0);
                    // rows: entries (r, s) of X_a G_ab − G_ab X_b, r<ma, s<mb
                    let mut rows: Vec<Vec<(usize, Complex64)>> = Vec::new();
                    for r in 0..ma {
                        for s in 0..mb {
                            let mut row = Vec::new();
                            for t in 0..ma {
                                let v = g[(a0 + t, b0 + s)];
                                if v.norm() > thresh {
                                    row.push((offs[pa] + r * ma + t, v));
                                }
                            }
                            for t in 0..mb {
                                let v = g[(a0 + r, b0 + t)];
                                if v.norm() > thresh {
                                    row.push((offs[pb] + t * mb + s, -v));
                                }
                            }
                            if !row.is_empty() {
                                rows.push(row);
                            }
                        }
                    }
                    for row in rows {
                        for &(i, vi) in &row {
                            for &(j, vj) in &row {
                                gram[(i, j)] += vi.conj() * vj;
                            }
                        }
                    }
                }
            }
        }
        let (null, _, _) = psd_nullity(&gram, 1e-10)?;
        commutant_dim += null;
    }
    Ok(CommutantReport {
        n,
        commutant_dimension: commutant_dim,
        multiplicity_free,
        blocks: Vec::new(),
        full: commutant_dim == 1,
        algebra_dimension: (commutant_dim == 1).then_some(n * n),
        seed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionResult {
    pub dimension: Option<usize>,
    pub method: String,
    pub commutant_dimension: Option<usize>,
    pub iterations: Option<usize>,
}

/// Dimension by span closure for `n ≤ SPAN_MAX_N`, by the commutant route
/// beyond.
pub fn algebra_dimension(gens: &[CMat], seed: u64) -> Result<DimensionResult, Error> {
    let n = gens.first().map_or(1, |g| g.nrows());
    if n <= SPAN_MAX_N {
        let (_, r) = generated_span(gens, SPAN_TOL)?;
        if !r.converged {
            return Err(Error::Assertion("span closure did not stabilize".into()));
        }
        return Ok(DimensionResult {
            dimension: Some(r.dimension),
            method: "span-closure".into(),
            commutant_dimension: None,
            iterations: Some(r.iterations),
        });
    }
    let r = commutant_route(gens, SPAN_TOL, seed)?;
    Ok(DimensionResult {
        dimension: r.algebra_dimension,
        method: "commutant".into(),
        commutant_dimension: Some(r.commutant_dimension),
        iterations: None,
    })
}

/// Dimension of the bicommutant `A''` (small `n`), which equals the algebra
/// dimension for a *-closed generating set.
pub fn bicommutant_dimension(gens: &[CMat], tol: f64) -> Result<usize, Error> {
    let comm = commutant_basis(gens, tol)?;
    Ok(commutant_basis(&comm, tol)?.len())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Full,
    Proper { dimension: usize },
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "expect", rename_all = "lowercase")]
pub enum Expectation {
    /// Full image at an irreducible representation.
    Full,
    /// Exact dimension at this evaluation.
    Dimension { dimension: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratedAlgebraReport {
    pub preset: String,
    pub case: Option<CaseId>,
    pub representation: serde_json::Value,
    pub irreducible: Option<bool>,
    pub generators: Vec<String>,
    pub dimension: Option<usize>,
    pub ambient: usize,
    pub method: String,
    pub verdict: Verdict,
    pub expected: Option<Expectation>,
    pub agrees: Option<bool>,
    pub note: String,
}

/// Dimension `D` of the irreducible representations at rational Θ:
/// `D² = [ℤⁿ : {a : Θa ∈ ℤⁿ}]`. Counted directly; `None` if too large.
pub fn irreducible_dimension(theta: &crate::torus_poly::ThetaSpec) -> Option<usize> {
    let n = theta.n;
    let mut l: i64 = 1;
    for x in &theta.entries {
        let t = x.exact()?;
        l = num_integer::lcm(l, *t.denom());
    }
    let total = (l as u128).checked_pow(n as u32)?;
    if total > 200_000_000 {
        return None;
    }
    // integer matrix L·Θ
    let m: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let t = theta.get(i, j).exact().unwrap() * qi(l);
                    t.to_integer()
                })
                .collect()
        })
        .collect();
    let mut count: u128 = 0;
    let mut a = vec![0i64; n];
    loop {
        if (0..n).all(|i| (0..n).map(|j| m[i][j] * a[j]).sum::<i64>().rem_euclid(l) == 0) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                let index = total / count;
                let d = (index as f64).sqrt().round() as usize;
                return Some(d);
            }
            a[k] += 1;
            if a[k] < l {
                break;
            }
            a[k] = 0;
            k += 1;
        }
    }
}

fn case_expectation(
    case: &CaseId,
    params: &PhaseParams,
    rep: &Representation,
    f_at_rep: Option<Complex64>,
    irreducible: Option<bool>,
) -> Option<Expectation> {
    let trivial_twist = rep.twist.iter().all(|k| *k == 0.0);
    let full_if_irr = || (irreducible == Some(true)).then_some(Expectation::Full);
    match (case, params) {
        (CaseId::Honeycomb(h), _) => match h {
            HoneycombCase::Generic | HoneycombCase::QMinusOneChi4NotOne => full_if_irr(),
            HoneycombCase::QMinusOneChi4One => {
                // the Clifford evaluation kills the ideal ⟨1+U², 1+V²⟩
                clifford_rep(rep).then_some(Expectation::Dimension { dimension: 8 })
            }
            HoneycombCase::QOneChiReal => f_at_rep.map(|f| Expectation::Dimension {
                dimension: if f.norm() > 1e-9 { 2 } else { 1 },
            }),
            HoneycombCase::QOneChiNotReal => f_at_rep.map(|f| Expectation::Dimension {
                dimension: if f.norm() > 1e-9 { 4 } else { 2 },
            }),
        },
        (CaseId::Gyroid(g), PhaseParams::Gyroid(p)) => match g {
            GyroidCase::PhiNotOne | GyroidCase::PhiOneNonRealAlpha => full_if_irr(),
            GyroidCase::PhiOneAlphaReal { distinct_phis: 3 } => full_if_irr(),
            GyroidCase::PhiOneAlphaReal { .. } => None,
            GyroidCase::PhiOneAlphaTrivial { .. } if trivial_twist && rep.d == 1 => {
                gyroid_trivial_dimension(p).map(|d| Expectation::Dimension { dimension: d })
            }
            GyroidCase::PhiOneAlphaTrivial { .. } => None,
        },
        _ => None,
    }
}

/// Dimensions at the trivial character for the all-α-trivial gyroid cases:
/// all φ = 1 gives 2, two φ = −1 gives 6, φ = (1, i, −i) up to symmetry
/// gives 10.
pub fn gyroid_trivial_dimension(p: &GyroidParams) -> Option<usize> {
    let ones = p.phi.iter().filter(|f| f.is_one()).count();
    let reals = p.phi.iter().filter(|f| f.is_real()).count();
    match (ones, reals) {
        (3, 3) => Some(2),
        (1, 3) => Some(6),
        (1, 1) => Some(10),
        _ => None,
    }
}

/// Whether both honeycomb generators square to −I in this representation.
fn clifford_rep(rep: &Representation) -> bool {
    rep.n() == 2
        && rep.gens.iter().all(|g| {
            let sq = g.mul(g);
            (0..sq.dim()).all(|j| sq.perm[j] == j && (sq.phase[j] + 1.0).norm() < 1e-12)
        })
}

/// Lower-left entry `1 + U + V` of the honeycomb Harper operator evaluated
/// at a character.
pub fn honeycomb_coupling(m: &HarperModel, rep: &Representation) -> Result<Complex64, Error> {
    if m.preset != Preset::Honeycomb || rep.d != 1 {
        return Err(Error::Validation("coupling is defined for the honeycomb at a character".into()));
    }
    Ok(rep.eval_element(m.h.get(1, 0))?[(0, 0)])
}

/// Evaluated generators `H, ρ(G_1), …` of the Bellissard–Harper algebra.
pub fn bh_generators(m: &HarperModel, rep: &Representation) -> Result<Vec<CMat>, Error> {
    let mut v = vec![evaluate(&m.h, rep)?];
    for r in &m.rho {
        v.push(evaluate(r, rep)?);
    }
    Ok(v)
}

/// Generated algebra of the evaluated Harper operator and symmetries,
/// compared with the case table.
pub fn bh_report(m: &HarperModel, rep: &Representation, seed: u64) -> Result<GeneratedAlgebraReport, Error> {
    let gens = bh_generators(m, rep)?;
    let n = gens[0].nrows();
    let dim = algebra_dimension(&gens, seed)?;
    let ambient = n * n;
    let verdict = match dim.dimension {
        Some(d) if d == ambient => Verdict::Full,
        Some(d) => Verdict::Proper { dimension: d },
        None => Verdict::Unknown,
    };
    let case = m.params.as_ref().map(classify_case);
    let irreducible = irreducible_dimension(&m.theta).map(|d| d == rep.d);
    let f_at_rep = if m.preset == Preset::Honeycomb && rep.d == 1 {
        Some(honeycomb_coupling(m, rep)?)
    } else {
        None
    };
    let expected = match (&case, &m.params) {
        (Some(cs), Some(p)) => case_expectation(cs, p, rep, f_at_rep, irreducible),
        _ => None,
    };
    let agrees = expected.as_ref().map(|e| match e {
        Expectation::Full => verdict == Verdict::Full,
        Expectation::Dimension { dimension } => dim.dimension == Some(*dimension),
    });
    let mut names = vec!["H".to_string()];
    names.extend(m.names.iter().map(|g| format!("rho({g})")));
    Ok(GeneratedAlgebraReport {
        preset: m.preset.name(),
        case,
        representation: rep.descriptor(),
        irreducible,
        generators: names,
        dimension: dim.dimension,
        ambient,
        method: dim.method,
        verdict,
        expected,
        agrees,
        note: "representation-level evidence: a full image at an irreducible representation is \
               consistent with the full matrix algebra over the torus, and a proper image at any \
               evaluation shows properness"
            .into(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CliffordReport {
    pub clifford_dimension: usize,
    pub clifford_ambient: usize,
    pub squares_to_minus_one: bool,
    pub ideal_generators_vanish: bool,
    pub cube_root_dimension: usize,
    pub cube_root_ambient: usize,
    /// Largest relative distance of sampled `(a, b; b̂, â)` matrices from
    /// the computed Clifford-point algebra.
    pub hat_form_membership: f64,
    /// Distance of `E₁₁` from that algebra (positive: not a member).
    pub e11_residual: f64,
    pub ok: bool,
}

/// Honeycomb at q = −1: the Clifford evaluation (χ = i, U² = V² = −I) gives
/// an 8-dimensional image, the χ⁴ ≠ 1 case a full 16-dimensional one.
pub fn clifford_point_check() -> Result<CliffordReport, Error> {
    let twist = vec![std::f64::consts::FRAC_PI_2; 2];
    let cliff = build(Preset::Honeycomb, &SkewForm::honeycomb_phi(Real::Exact(q(1, 2))), &TreeChoice::Default)?;
    let rep = build_rep(&cliff.theta, &twist)?;
    let gens = bh_generators(&cliff, &rep)?;
    let (span, r) = generated_span(&gens, SPAN_TOL)?;
    let th = &cliff.theta;
    let u2 = evaluate(&TorusMatrix::diag(th, vec![TorusElement::generator(th, 0).pow(2)]), &rep)?;
    let v2 = evaluate(&TorusMatrix::diag(th, vec![TorusElement::generator(th, 1).pow(2)]), &rep)?;
    let minus_one = |m: &CMat| {
        (0..m.nrows()).all(|i| {
            (0..m.ncols()).all(|j| (m[(i, j)] - if i == j { c(-1.0, 0.0) } else { c(0.0, 0.0) }).norm() < 1e-12)
        })
    };
    let squares = minus_one(&u2) && minus_one(&v2);
    let one = TorusElement::one(th);
    let ideal_zero = [0usize, 1].iter().all(|&i| {
        let x = &one + &TorusElement::generator(th, i).pow(2);
        rep.eval_element(&x).map(|m| flatten(&m).iter().all(|z| z.norm() < 1e-12)).unwrap_or(false)
    });
    // (a, b; b̂, â) = ρ(a) + ρ(b)(E12 + E21), with the hat read off from
    // ρ(x) = diag(x, x̂) in the gauge of the model
    let swap = &TorusMatrix::elementary(th, 2, 0, 1) + &TorusMatrix::elementary(th, 2, 1, 0);
    let mut worst: f64 = 0.0;
    let samples: [(&[i32], &[i32]); 4] = [(&[0, 0], &[0, 0]), (&[1, 0], &[0, 1]), (&[1, 1], &[-1, 0]), (&[0, -1], &[2, 1])];
    for (a, b) in samples {
        let ea = TorusElement::monomial(th, a.to_vec(), c(0.7, 0.2));
        let eb = TorusElement::monomial(th, b.to_vec(), c(-0.3, 0.5));
        let mat = &cliff.rho_of(&ea) + &(&cliff.rho_of(&eb) * &swap);
        worst = worst.max(span.membership_residual(&evaluate(&mat, &rep)?));
    }
    // E11 has no (a, b; b̂, â) form, so it must stay outside
    let outside = span.membership_residual(&evaluate(&TorusMatrix::elementary(th, 2, 0, 0), &rep)?);
    let cube = build(Preset::Honeycomb, &SkewForm::honeycomb_phi(Real::Exact(q(1, 6))), &TreeChoice::Default)?;
    let rep3 = build_rep(&cube.theta, &twist)?;
    let d3 = generated_dimension(&bh_generators(&cube, &rep3)?, SPAN_TOL)?;
    let n1 = gens[0].nrows();
    let n3 = rep3.d * 2;
    Ok(CliffordReport {
        clifford_dimension: r.dimension,
        clifford_ambient: n1 * n1,
        squares_to_minus_one: squares,
        ideal_generators_vanish: ideal_zero,
        cube_root_dimension: d3,
        cube_root_ambient: n3 * n3,
        hat_form_membership: worst,
        e11_residual: outside,
        ok: r.dimension == 8 && d3 == 16 && squares && ideal_zero && worst < 1e-9 && outside > 1e-3,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RamifiedPoint {
    pub k: Vec<f64>,
    pub f_abs: f64,
    pub dimension: usize,
    pub expected_full: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RamifiedReport {
    pub phi: String,
    pub grid: usize,
    pub points: Vec<RamifiedPoint>,
    pub vanishing_points: usize,
    pub ok: bool,
}

/// Honeycomb at q = 1, χ² a primitive cube root: over the character grid the
/// generated algebra is M₂ exactly where `1 + χ(U) + χ(V) ≠ 0`.
pub fn ramified_ideal_check(grid: usize) -> Result<RamifiedReport, Error> {
    let phi = q(1, 3);
    let m = build(Preset::Honeycomb, &SkewForm::honeycomb_phi(Real::Exact(phi)), &TreeChoice::Default)?;
    let reps = crate::nct_rep::characters(&m.theta, grid)?;
    let mut points = Vec::new();
    for rep in &reps {
        let f = honeycomb_coupling(&m, rep)?;
        let dim = generated_dimension(&bh_generators(&m, rep)?, SPAN_TOL)?;
        let expected_full = f.norm() > 1e-9;
        let ok = if expected_full { dim == 4 } else { dim < 4 };
        points.push(RamifiedPoint { k: rep.twist.clone(), f_abs: f.norm(), dimension: dim, expected_full, ok });
    }
    let vanishing = points.iter().filter(|p| !p.expected_full).count();
    Ok(RamifiedReport {
        phi: fmt_rational(&phi),
        grid,
        ok: points.iter().all(|p| p.ok),
        vanishing_points: vanishing,
        points,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub name: String,
    pub terms: usize,
    pub max_norm: f64,
    pub pretty: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub chain: String,
    pub case: CaseId,
    pub theta: Vec<String>,
    pub steps: Vec<ChainStep>,
    /// Identities checked at the end, with residuals.
    pub checks: Vec<ChainCheck>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainCheck {
    pub name: String,
    pub residual: f64,
    pub ok: bool,
}

/// Tolerance of the chain identities.
pub const CHAIN_TOL: f64 = 1e-10;

struct Chain<'a> {
    m: &'a HarperModel,
    steps: Vec<ChainStep>,
    checks: Vec<ChainCheck>,
}

impl<'a> Chain<'a> {
    fn new(m: &'a HarperModel) -> Chain<'a> {
        Chain { m, steps: Vec::new(), checks: Vec::new() }
    }

    fn record(&mut self, name: &str, x: &TorusMatrix) {
        self.steps.push(ChainStep {
            name: name.into(),
            terms: x.entries.iter().map(|e| e.terms.len()).sum(),
            max_norm: x.max_norm(),
            pretty: x.pretty(&self.m.names),
        });
    }

    fn check(&mut self, name: &str, residual: f64) {
        self.checks.push(ChainCheck { name: name.into(), residual, ok: residual < CHAIN_TOL });
    }

    fn rho(&self, word: &str) -> Result<TorusMatrix, Error> {
        self.m.rho_word(word)
    }

    /// `ρ(w)·y·ρ(w)*`
    fn conj(&self, word: &str, y: &TorusMatrix) -> Result<TorusMatrix, Error> {
        y.conj_by(&self.rho(word)?)
    }

    fn finish(self, name: &str, case: CaseId) -> ChainReport {
        let ok = self.checks.iter().all(|c| c.ok);
        ChainReport {
            chain: name.into(),
            case,
            theta: self.m.theta.labels(),
            steps: self.steps,
            checks: self.checks,
            ok,
        }
    }
}

fn diff_norm(a: &TorusMatrix, b: &TorusMatrix) -> f64 {
    (a - b).max_norm()
}

/// Which chain applies to a case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainKind {
    HoneycombGeneric,
    HoneycombQMinusOne,
    HoneycombClifford,
    GyroidPhiNotOne,
    GyroidPhiOne,
}

/// Replay the elementary-matrix chain matching the model's case. Refuses
/// when the case hypotheses do not hold.
pub fn replay_proof_chain(m: &HarperModel) -> Result<ChainReport, Error> {
    let params = m
        .params
        .as_ref()
        .ok_or_else(|| Error::Hypothesis(format!("no proof chain for {}", m.preset)))?;
    let case = classify_case(params);
    match (params, case) {
        (PhaseParams::Honeycomb(p), CaseId::Honeycomb(HoneycombCase::Generic)) => honeycomb_generic_chain(m, p, case),
        (PhaseParams::Honeycomb(p), CaseId::Honeycomb(HoneycombCase::QMinusOneChi4NotOne)) => {
            honeycomb_q_minus_one_chain(m, p, case)
        }
        (PhaseParams::Honeycomb(p), CaseId::Honeycomb(HoneycombCase::QMinusOneChi4One)) => {
            honeycomb_clifford_chain(m, p, case)
        }
        (PhaseParams::Gyroid(p), CaseId::Gyroid(GyroidCase::PhiNotOne)) => gyroid_phi_not_one_chain(m, p, case),
        (PhaseParams::Gyroid(p), CaseId::Gyroid(GyroidCase::PhiOneNonRealAlpha)) => gyroid_phi_one_chain(m, p, case),
        _ => Err(Error::Hypothesis(format!("no elementary-matrix chain for case {case:?}"))),
    }
}

/// Replay a named chain, checking that the model satisfies its hypotheses.
pub fn replay_chain_kind(m: &HarperModel, kind: ChainKind) -> Result<ChainReport, Error> {
    let params = m.params.as_ref().ok_or_else(|| Error::Hypothesis("model has no phase parameters".into()))?;
    let case = classify_case(params);
    let expected = match kind {
        ChainKind::HoneycombGeneric => CaseId::Honeycomb(HoneycombCase::Generic),
        ChainKind::HoneycombQMinusOne => CaseId::Honeycomb(HoneycombCase::QMinusOneChi4NotOne),
        ChainKind::HoneycombClifford => CaseId::Honeycomb(HoneycombCase::QMinusOneChi4One),
        ChainKind::GyroidPhiNotOne => CaseId::Gyroid(GyroidCase::PhiNotOne),
        ChainKind::GyroidPhiOne => CaseId::Gyroid(GyroidCase::PhiOneNonRealAlpha),
    };
    if case != expected {
        return Err(Error::Hypothesis(format!("chain {kind:?} needs case {expected:?}, got {case:?}")));
    }
    replay_proof_chain(m)
}

fn ph(x: PiPhase) -> Complex64 {
    x.value()
}

/// q ≠ ±1: X = ρ(χ̄²U)ρ(χ̄²V*)Hρ(V)ρ(U*), then five steps down to E₁₂.
fn honeycomb_generic_chain(m: &HarperModel, p: &HoneycombParams, case: CaseId) -> Result<ChainReport, Error> {
    let mut ch = Chain::new(m);
    let th = &m.theta;
    let chi = ph(p.chi);
    let qv = ph(p.q);
    let qb = qv.conj();
    let one = c(1.0, 0.0);
    let h = &m.h;
    let x = ch.conj("U V*", h)?.scale(chi.conj().powi(4));
    ch.record("X", &x);
    let x1 = (h - &x.scale(qb)).scale(one / (one - qb));
    ch.record("X1", &x1);
    let ll = x1.get(1, 0);
    let r1 = (ll - &TorusElement::one(th)).max_norm();
    ch.check("X1 lower-left entry is 1", r1);
    let rho_f = &(&TorusMatrix::identity(th, 2) + &m.rho[0]) + &m.rho[1];
    let x2 = h - &(&x1 * &rho_f);
    ch.record("X2", &x2);
    let lower = [x2.get(0, 0), x2.get(1, 0), x2.get(1, 1)].iter().map(|e| e.max_norm()).fold(0.0, f64::max);
    ch.check("X2 is strictly upper triangular", lower);
    let x3 = &ch.conj("U", &x2)? - &x2.scale(chi.conj().powi(2));
    ch.record("X3", &x3);
    let x4 = &ch.conj("V", &x3)? - &x3.scale(chi.powi(2));
    ch.record("X4", &x4);
    let x5 = &ch.conj("U", &x4)? - &x4.scale(chi.conj().powi(2) * qv);
    ch.record("X5", &x5);
    let g = chi.powi(2) * (chi.powi(4) - one) / (one - chi.powi(6));
    let cc = qv * g * chi.conj().powi(2) * (one - qb).powi(2) * (qb - qv);
    let e12 = (&ch.rho("V U*")? * &x5).scale(one / cc);
    ch.record("E12", &e12);
    ch.check("E12", diff_norm(&e12, &TorusMatrix::elementary(th, 2, 0, 1)));
    Ok(ch.finish("honeycomb q != ±1", case))
}

/// q = −1, χ⁴ ≠ 1: X̃₂ = X̃₁ − χ²ρ(U)X̃₁ρ(U)*, X̃₃ = X̃₂ + χ²ρ(U)X̃₂ρ(U)*.
fn honeycomb_q_minus_one_chain(m: &HarperModel, p: &HoneycombParams, case: CaseId) -> Result<ChainReport, Error> {
    let mut ch = Chain::new(m);
    let th = &m.theta;
    let chi = ph(p.chi);
    let one = c(1.0, 0.0);
    let h = &m.h;
    let x = ch.conj("U V*", h)?.scale(chi.conj().powi(4));
    let x1 = (h + &x).scale(c(0.5, 0.0));
    ch.record("X~1", &x1);
    let x2 = &x1 - &ch.conj("U", &x1)?.scale(chi.powi(2));
    ch.record("X~2", &x2);
    let x3 = &x2 + &ch.conj("U", &x2)?.scale(chi.powi(2));
    ch.record("X~3", &x3);
    let e21 = x3.scale(one / ((one - chi.powi(4)) * (one + chi.powi(4))));
    ch.record("E21", &e21);
    ch.check("E21", diff_norm(&e21, &TorusMatrix::elementary(th, 2, 1, 0)));
    Ok(ch.finish("honeycomb q = -1, chi^4 != 1", case))
}

/// q = −1, χ⁴ = 1: X₁ = E₁₂ + E₂₁, X₂ = H − X₁ρ(1+U+V), then
/// Y₃ = (0, 1+U²; 0, 0) and Ỹ₃ = (0, 1+V²; 0, 0).
fn honeycomb_clifford_chain(m: &HarperModel, p: &HoneycombParams, case: CaseId) -> Result<ChainReport, Error> {
    let mut ch = Chain::new(m);
    let th = &m.theta;
    let chi = ph(p.chi);
    let h = &m.h;
    let half = c(0.5, 0.0);
    let x = ch.conj("U V*", h)?.scale(chi.conj().powi(4));
    let x1 = (h + &x).scale(half);
    ch.record("X1", &x1);
    let swap = &TorusMatrix::elementary(th, 2, 0, 1) + &TorusMatrix::elementary(th, 2, 1, 0);
    ch.check("X1 = E12 + E21", diff_norm(&x1, &swap));
    let rho_f = &(&TorusMatrix::identity(th, 2) + &m.rho[0]) + &m.rho[1];
    let x2 = h - &(&x1 * &rho_f);
    ch.record("X2", &x2);
    let zero = TorusElement::zero(th);
    let upper = |e: TorusElement| TorusMatrix::from_rows(th, vec![vec![zero.clone(), e], vec![zero.clone(), zero.clone()]]);
    let u = TorusElement::generator(th, 0);
    let v = TorusElement::generator(th, 1);
    let x2_target = upper(&(&(&u + &v) + &u.adjoint()) + &v.adjoint());
    ch.check("X2 = (0, U+V+U*+V*; 0, 0)", diff_norm(&x2, &x2_target));
    let cx2 = ch.conj("U", &x2)?;
    let y3 = (&ch.rho("U")? * &(&x2 - &cx2)).scale(half);
    ch.record("Y3", &y3);
    let one = TorusElement::one(th);
    ch.check("Y3 = (0, 1+U^2; 0, 0)", diff_norm(&y3, &upper(&one + &u.pow(2))));
    let y3t = (&ch.rho("V")? * &(&x2 + &cx2)).scale(half);
    ch.record("Y~3", &y3t);
    ch.check("Y~3 = (0, 1+V^2; 0, 0)", diff_norm(&y3t, &upper(&one + &v.pow(2))));
    Ok(ch.finish("honeycomb q = -1, chi^4 = 1", case))
}

/// The printed six-factor scalar of the Φ ≠ 1 chain.
pub fn gyroid_printed_scalar(p: &GyroidParams) -> Complex64 {
    let one = c(1.0, 0.0);
    let f = ph(p.big_phi);
    let fb = f.conj();
    let [a1, a2, a3] = p.alpha.map(ph);
    (one - fb * fb * a2 * a3)
        * (one - f * a3.conj())
        * (one - fb * a2)
        * (f * a1.conj() - fb * fb * a2 * a3)
        * (fb * a3 - f * a3.conj())
        * (f * a2.conj() - fb * a2)
}

/// Φ ≠ 1 with α₁ ≠ Φ², α₂ ≠ Φ, α₃ ≠ Φ: six conjugation steps isolate the
/// (4,3) entry.
fn gyroid_phi_not_one_chain(m: &HarperModel, p: &GyroidParams, case: CaseId) -> Result<ChainReport, Error> {
    let fphi = p.big_phi;
    if p.alpha[0].eq_phase(fphi.pow(2)) || p.alpha[1].eq_phase(fphi) || p.alpha[2].eq_phase(fphi) {
        return Err(Error::Hypothesis("chain needs α₁ ≠ Φ², α₂ ≠ Φ, α₃ ≠ Φ".into()));
    }
    let mut ch = Chain::new(m);
    let th = &m.theta;
    let f = ph(fphi);
    let [a1, a2, a3] = p.alpha.map(ph);
    let h = &m.h;
    let x1 = h - &ch.conj("A B*", h)?;
    ch.record("X1", &x1);
    let x2 = &x1 - &ch.conj("B C*", &x1)?;
    ch.record("X2", &x2);
    let x3 = &x2 - &ch.conj("A C*", &x2)?;
    ch.record("X3", &x3);
    let x4 = &x3.scale(f * a1.conj()) - &ch.conj("A B*", &x3)?;
    ch.record("X4", &x4);
    let x5 = &x4.scale(f.conj() * a3) - &ch.conj("B C*", &x4)?;
    ch.record("X5", &x5);
    let x6 = &x5.scale(f * a2.conj()) - &ch.conj("A C*", &x5)?;
    ch.record("X6", &x6);
    let printed = gyroid_printed_scalar(p);
    match x6.single_monomial(CHAIN_TOL * printed.norm().max(1.0)) {
        Some((3, 2, exps, coef)) if exps == vec![0, 0, -1] => {
            ch.check("X6 = c·C*·E43 with c the printed scalar", (coef - printed).norm());
            // right multiplication by ρ(C) turns C* into a phase
            let e43 = &x6 * &ch.rho("C")?;
            let (is_e, s) = e43.is_elementary(3, 2, CHAIN_TOL);
            let unit = TorusMatrix::elementary(th, 4, 3, 2);
            let norm = if is_e { diff_norm(&e43.scale(c(1.0, 0.0) / s), &unit) } else { f64::INFINITY };
            ch.check("X6·rho(C) is a multiple of E43", norm);
        }
        other => {
            let desc = format!("{other:?}");
            ch.checks.push(ChainCheck { name: format!("X6 single monomial at (4,3), got {desc}"), residual: f64::INFINITY, ok: false });
        }
    }
    Ok(ch.finish("gyroid Phi != 1", case))
}

/// Factor by which `ρ(w)·(x E_ij)·ρ(w)*` rescales a single monomial entry.
pub fn conj_factor(m: &HarperModel, word: &str, i: usize, j: usize, exps: &[i32]) -> Result<Complex64, Error> {
    let th = &m.theta;
    let mut e = TorusMatrix::zeros(th, m.k());
    e.set(i, j, TorusElement::monomial(th, exps.to_vec(), c(1.0, 0.0)));
    let r = e.conj_by(&m.rho_word(word)?)?;
    match r.single_monomial(1e-12) {
        Some((a, b, ex, coef)) if a == i && b == j && ex == exps => Ok(coef),
        _ => Err(Error::Assertion("conjugation does not preserve the monomial entry".into())),
    }
}

/// Φ = 1, α₃ ≠ 1, α₂ non-real: Y₁ = H − ρ(BC*)Hρ(CB*), Y₂ = α₂Y₁ − ρ(AC*)Y₁ρ(CA*)
/// leaves three monomial entries; conjugations by ρ(C) and ρ(A) then isolate
/// the C entry at (3,4).
fn gyroid_phi_one_chain(m: &HarperModel, p: &GyroidParams, case: CaseId) -> Result<ChainReport, Error> {
    if p.alpha[2].is_one() || p.alpha[1].is_real() {
        return Err(Error::Hypothesis("chain needs α₃ ≠ 1 and α₂ non-real".into()));
    }
    let mut ch = Chain::new(m);
    let th = &m.theta;
    let a2 = ph(p.alpha[1]);
    let h = &m.h;
    let y1 = h - &ch.conj("B C*", h)?;
    ch.record("Y1", &y1);
    let y2 = &y1.scale(a2) - &ch.conj("A C*", &y1)?;
    ch.record("Y2", &y2);
    // (2,3) A, (3,4) C, (4,2) B in 1-based positions
    let terms: [(usize, usize, Vec<i32>); 3] = [(1, 2, vec![1, 0, 0]), (2, 3, vec![0, 0, 1]), (3, 1, vec![0, 1, 0])];
    let mut expect = TorusMatrix::zeros(th, 4);
    let c0 = y2.get(2, 3).coeff(&[0, 0, 1]);
    for (i, j, ex) in &terms {
        expect.set(*i, *j, TorusElement::monomial(th, ex.clone(), c0));
    }
    ch.check("Y2 = c0·(A E23 + C E34 + B E42)", diff_norm(&y2, &expect) / c0.norm().max(1e-300));
    let [f1, f2, f3] = p.phi.map(ph);
    let fc: Vec<Complex64> = terms.iter().map(|(i, j, ex)| conj_factor(m, "C", *i, *j, ex)).collect::<Result<_, _>>()?;
    let fa: Vec<Complex64> = terms.iter().map(|(i, j, ex)| conj_factor(m, "A", *i, *j, ex)).collect::<Result<_, _>>()?;
    let closed_c = [f2 * f2 * f3.conj(), f2 * f3.conj(), f2 * f3.conj() * f3.conj()];
    let closed_a = [f1 * f2.conj(), f1 * f2.conj() * f2.conj(), f1 * f1 * f2.conj()];
    let factor_err = fc.iter().zip(closed_c).chain(fa.iter().zip(closed_a)).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    ch.check("conjugation factors match the φ monomials", factor_err);
    let lambda = fc[0];
    let y3 = &y2.scale(lambda) - &ch.conj("C", &y2)?;
    ch.record("Y3", &y3);
    let mu = fa[2];
    let y4 = &y3.scale(mu) - &ch.conj("A", &y3)?;
    ch.record("Y4", &y4);
    let predicted = c0 * (lambda - fc[1]) * (mu - fa[1]);
    if predicted.norm() < 1e-9 {
        return Err(Error::Hypothesis("degenerate sub-case: φ₁ = φ₂ or φ₂ = φ₃".into()));
    }
    match y4.single_monomial(CHAIN_TOL * predicted.norm().max(1.0)) {
        Some((2, 3, ex, coef)) if ex == vec![0, 0, 1] => {
            ch.check("Y4 = c·C·E34 with the predicted scalar", (coef - predicted).norm());
            let e34 = &y4 * &ch.rho("C")?.adjoint();
            let (is_e, s) = e34.is_elementary(2, 3, CHAIN_TOL);
            let norm = if is_e {
                diff_norm(&e34.scale(c(1.0, 0.0) / s), &TorusMatrix::elementary(th, 4, 2, 3))
            } else {
                f64::INFINITY
            };
            ch.check("Y4·rho(C)* is a multiple of E34", norm);
        }
        other => {
            let desc = format!("{other:?}");
            ch.checks.push(ChainCheck { name: format!("Y4 single monomial at (3,4), got {desc}"), residual: f64::INFINITY, ok: false });
        }
    }
    Ok(ch.finish("gyroid Phi = 1, alpha_2 non-real", case))
}

#[derive(Clone, Debug, Serialize)]
pub struct RealAlphaReport {
    pub theta: Vec<String>,
    pub case: CaseId,
    pub ambient: usize,
    pub dimensions: Vec<(Vec<f64>, usize)>,
    pub proper_everywhere: bool,
}

/// Gyroid with Φ = 1, real α not all 1 and coinciding φ's: generated
/// dimension at a set of twists, reporting whether every image is proper.
pub fn gyroid_real_alpha_check(theta: &[Q], twists: &[Vec<f64>]) -> Result<RealAlphaReport, Error> {
    let th: Vec<Real> = theta.iter().map(|&x| Real::Exact(x)).collect();
    let m = build(Preset::Gyroid, &field_from_theta(Preset::Gyroid, &th)?, &TreeChoice::Default)?;
    let case = classify_case(m.params.as_ref().expect("gyroid has phase parameters"));
    if !matches!(case, CaseId::Gyroid(GyroidCase::PhiOneAlphaReal { .. })) {
        return Err(Error::Hypothesis(format!("expected Φ = 1 with real α, got {case:?}")));
    }
    let mut dims = Vec::new();
    let mut ambient = 0;
    for k in twists {
        let rep = build_rep(&m.theta, k)?;
        let gens = bh_generators(&m, &rep)?;
        ambient = gens[0].nrows().pow(2);
        let d = algebra_dimension(&gens, 7)?.dimension.unwrap_or(ambient);
        dims.push((k.clone(), d));
    }
    Ok(RealAlphaReport {
        theta: m.theta.labels(),
        case,
        ambient,
        proper_everywhere: dims.iter().all(|(_, d)| *d < ambient),
        dimensions: dims,
    })
}

/// Random unitary (QR of a Gaussian matrix), for invariance tests.
pub fn random_unitary(n: usize, seed: u64) -> CMat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = CMat::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    g.qr().compute_Q()
}
