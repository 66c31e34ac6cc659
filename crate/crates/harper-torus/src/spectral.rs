//! Hermitian eigensolves, band and twist sweeps, flux butterflies, gap
//! detection with the integrated density of states, gap labels in
//! `ℤ + Σ θᵢⱼ ℤ`, and the degeneracy locus of commutative band structures.
//!
//! Sweeps run in parallel over sample points and collect in sample order, so
//! results do not depend on the thread count.

use std::f64::consts::PI;
use std::io::Write;

use faer::Side;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::exact::*;
use crate::harper_model::{build_theta, HarperModel};
use crate::lattice_graph::Preset;
use crate::nct_rep::{build_rep, evaluate, grid_points, CMat};
use crate::Error;

/// Hermiticity tolerance for evaluated operators.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Largest entry of `m − m*`.
pub fn hermitian_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Ascending eigenvalues of a Hermitian matrix; rejects non-Hermitian input.
pub fn eigenvalues(m: &CMat) -> Result<Vec<f64>, Error> {
    let defect = hermitian_defect(m);
    if defect > HERMITIAN_TOL {
        return Err(Error::Assertion(format!("operator is not Hermitian (defect {defect:e})")));
    }
    let mut ev = m
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Assertion(format!("eigensolver failed: {e:?}")))?;
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumResult {
    pub model: String,
    pub theta: Vec<String>,
    /// Matrix size over the torus.
    pub k: usize,
    /// Representation dimension.
    pub d: usize,
    /// Twist or character angles per sample.
    pub samples: Vec<Vec<f64>>,
    /// Ascending eigenvalues per sample (`k·d` each).
    pub eigenvalues: Vec<Vec<f64>>,
}

impl SpectrumResult {
    pub fn sample_count(&self) -> usize {
        self.samples.len()
    }

    /// Sorted union of all sample spectra.
    pub fn aggregate(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self.eigenvalues.iter().flatten().copied().collect();
        all.sort_by(f64::total_cmp);
        all
    }

    /// Band rows `k1,…,kn,E_1..E_kd`.
    pub fn write_band_csv<W: Write>(&self, w: W) -> Result<(), Error> {
        let mut wr = csv::Writer::from_writer(w);
        let n = self.samples.first().map_or(0, |s| s.len());
        let mut header: Vec<String> = (1..=n).map(|i| format!("k{i}")).collect();
        header.extend((1..=self.k * self.d).map(|i| format!("E_{i}")));
        wr.write_record(&header).map_err(csv_err)?;
        for (s, e) in self.samples.iter().zip(&self.eigenvalues) {
            let row: Vec<String> = s.iter().chain(e).map(|x| format!("{x:.15e}")).collect();
            wr.write_record(&row).map_err(csv_err)?;
        }
        wr.flush()?;
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e.to_string()))
}

/// Spectra of the evaluated Harper operator at the given twists.
pub fn sample_spectrum(m: &HarperModel, twists: &[Vec<f64>]) -> Result<SpectrumResult, Error> {
    let eig: Vec<Vec<f64>> = twists
        .par_iter()
        .map(|k| {
            let r = build_rep(&m.theta, k)?;
            eigenvalues(&evaluate(&m.h, &r)?)
        })
        .collect::<Result<_, _>>()?;
    let d = build_rep(&m.theta, &vec![0.0; m.theta.n])?.d;
    Ok(SpectrumResult {
        model: m.preset.name(),
        theta: m.theta.labels(),
        k: m.k(),
        d,
        samples: twists.to_vec(),
        eigenvalues: eig,
    })
}

/// Band structure over the `Mⁿ` character grid (commutative torus only).
pub fn band_sweep(m: &HarperModel, grid: usize) -> Result<SpectrumResult, Error> {
    if !m.theta.is_commutative() {
        return Err(Error::Validation("band sweep needs Θ = 0; use a twist sweep".into()));
    }
    sample_spectrum(m, &grid_points(m.theta.n, grid))
}

/// Union spectrum over a uniform twist grid at rational Θ.
pub fn twist_sweep(m: &HarperModel, grid: usize) -> Result<SpectrumResult, Error> {
    if grid == 0 {
        return Err(Error::Validation("grid size must be at least 1".into()));
    }
    sample_spectrum(m, &grid_points(m.theta.n, grid))
}

/// All reduced fractions `p/q` in `[0,1]` with `q ≤ q_max`, ascending.
pub fn farey_path(q_max: i64) -> Vec<Q> {
    let mut v: Vec<Q> = (1..=q_max).flat_map(|d| (0..=d).map(move |n| q(n, d))).collect();
    v.sort();
    v.dedup();
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct ButterflyRow {
    pub flux_num: i64,
    pub flux_den: i64,
    pub eigenvalue: f64,
}

/// Hofstadter-style sweep: for each flux `t` the phases are `t·direction`
/// (one entry per generator pair) and the union spectrum over the twist grid
/// is emitted, deduplicated to 1e-9 within each flux.
pub fn butterfly(
    preset: Preset,
    fluxes: &[Q],
    direction: &[i64],
    q_max: i64,
    grid: usize,
) -> Result<Vec<ButterflyRow>, Error> {
    let mut rows = Vec::new();
    for &t in fluxes {
        if *t.denom() > q_max {
            return Err(Error::Validation(format!(
                "flux {} exceeds q_max = {q_max}",
                fmt_rational(&t)
            )));
        }
        let theta: Vec<Real> = direction.iter().map(|&c| Real::Exact(t * qi(c))).collect();
        let m = build_theta(preset, &theta)?;
        let mut all = twist_sweep(&m, grid)?.aggregate();
        all.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        rows.extend(all.into_iter().map(|e| ButterflyRow {
            flux_num: *t.numer(),
            flux_den: *t.denom(),
            eigenvalue: e,
        }));
    }
    Ok(rows)
}

pub fn write_butterfly_csv<W: Write>(rows: &[ButterflyRow], w: W) -> Result<(), Error> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["flux_num", "flux_den", "eigenvalue"]).map_err(csv_err)?;
    for r in rows {
        wr.write_record([r.flux_num.to_string(), r.flux_den.to_string(), format!("{:.15e}", r.eigenvalue)])
            .map_err(csv_err)?;
    }
    wr.flush()?;
    Ok(())
}

/// Spectral gap with the integrated density of states below it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Gap {
    pub lower: f64,
    pub upper: f64,
    /// Normalized eigenvalue count below the gap, in `[0, k]`.
    pub ids: f64,
}

/// Default resolution: `1e-3 ×` the width of the aggregate spectrum.
pub fn default_resolution(s: &SpectrumResult) -> f64 {
    let a = s.aggregate();
    match (a.first(), a.last()) {
        (Some(lo), Some(hi)) => 1e-3 * (hi - lo),
        _ => 0.0,
    }
}

/// Maximal eigenvalue-free intervals wider than `delta` inside the
/// aggregate spectrum.
pub fn detect_gaps(s: &SpectrumResult, delta: f64) -> Vec<Gap> {
    let a = s.aggregate();
    let norm = (s.sample_count() * s.d) as f64;
    a.windows(2)
        .enumerate()
        .filter(|(_, w)| w[1] - w[0] > delta)
        .map(|(i, w)| Gap { lower: w[0], upper: w[1], ids: (i + 1) as f64 / norm })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GapLabel {
    pub lower: f64,
    pub upper: f64,
    pub ids: f64,
    pub label: Label,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Label {
    pub m: i64,
    pub n: Vec<i64>,
}

/// Best `m + Σ nᵢⱼθᵢⱼ` for a value, with `|nᵢⱼ| ≤ n_bound`. Ties within 1e-9
/// prefer the smallest `Σ|n|`, then the smallest `|m|`.
pub fn best_label(t: f64, theta: &[f64], n_bound: i64) -> (Label, f64) {
    let r = theta.len();
    let side = (2 * n_bound + 1) as usize;
    let total = side.pow(r as u32);
    let mut best: Option<(f64, i64, i64, Label)> = None;
    for mut idx in 0..total {
        let mut n = vec![0i64; r];
        for slot in n.iter_mut() {
            *slot = (idx % side) as i64 - n_bound;
            idx /= side;
        }
        let shift: f64 = n.iter().zip(theta).map(|(a, b)| *a as f64 * b).sum();
        let m = (t - shift).round() as i64;
        let res = (t - shift - m as f64).abs();
        let cost = n.iter().map(|x| x.abs()).sum::<i64>();
        let better = match &best {
            None => true,
            Some((br, bc, bm, _)) => {
                if res < br - 1e-9 {
                    true
                } else if res <= br + 1e-9 {
                    (cost, m.abs()) < (*bc, bm.abs())
                } else {
                    false
                }
            }
        };
        if better {
            best = Some((res, cost, m, Label { m, n }));
        }
    }
    let (res, _, _, label) = best.expect("label search space is nonempty");
    (label, res)
}

pub fn gap_labels(gaps: &[Gap], theta: &[f64], n_bound: i64) -> Vec<GapLabel> {
    gaps.iter()
        .map(|g| {
            let (label, residual) = best_label(g.ids, theta, n_bound);
            GapLabel { lower: g.lower, upper: g.upper, ids: g.ids, label, residual }
        })
        .collect()
}

/// Whether every gap at the coarse grid persists (same IDS to 1e-9 and
/// overlapping interval) at the fine grid, and vice versa.
pub fn gaps_stable(coarse: &[Gap], fine: &[Gap]) -> bool {
    let matches = |a: &Gap, b: &Gap| (a.ids - b.ids).abs() < 1e-9 && a.lower < b.upper && b.lower < a.upper;
    coarse.len() == fine.len()
        && coarse.iter().all(|a| fine.iter().any(|b| matches(a, b)))
        && fine.iter().all(|b| coarse.iter().any(|a| matches(a, b)))
}

/// Minimum fraction of its width a gap must keep when the grid doubles.
pub const PERSISTENCE_RATIO: f64 = 0.75;

/// Coarse-grid gaps that survive refinement. A survivor has a fine-grid gap
/// with the same IDS that overlaps it and keeps at least
/// [`PERSISTENCE_RATIO`] of its width. Sampling holes near band touchings
/// shrink in proportion to the grid spacing, so doubling the grid roughly
/// halves them, whereas a true gap converges to a positive width.
pub fn persistent_gaps(coarse: &[Gap], fine: &[Gap]) -> Vec<Gap> {
    coarse
        .iter()
        .filter(|a| {
            fine.iter().any(|b| {
                (a.ids - b.ids).abs() < 1e-9
                    && a.lower < b.upper
                    && b.lower < a.upper
                    && (b.upper - b.lower) >= PERSISTENCE_RATIO * (a.upper - a.lower)
            })
        })
        .cloned()
        .collect()
}

/// Float phase entries of a model, for labeling.
pub fn theta_f64(m: &HarperModel) -> Vec<f64> {
    m.theta.entries.iter().map(|x| x.to_f64()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DegeneratePoint {
    pub index: Vec<usize>,
    pub k: Vec<f64>,
    /// Smallest adjacent eigenvalue spacing at the point.
    pub gap: f64,
}

/// Smallest spacing between adjacent sorted eigenvalues.
pub fn min_spacing(ev: &[f64]) -> f64 {
    ev.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

/// Grid points of the character grid where adjacent eigenvalues come within
/// `tol` of each other.
pub fn degeneracy_locus(m: &HarperModel, grid: usize, tol: f64) -> Result<Vec<DegeneratePoint>, Error> {
    let s = band_sweep(m, grid)?;
    let n = m.theta.n;
    Ok(s.samples
        .iter()
        .zip(&s.eigenvalues)
        .enumerate()
        .filter_map(|(flat, (k, ev))| {
            let gap = min_spacing(ev);
            (gap < tol).then(|| {
                let mut index = vec![0; n];
                let mut rest = flat;
                for j in (0..n).rev() {
                    index[j] = rest % grid;
                    rest /= grid;
                }
                DegeneratePoint { index, k: k.clone(), gap }
            })
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct Cluster {
    pub size: usize,
    /// Circular mean of the member angles.
    pub center: Vec<f64>,
    /// Member with the smallest spacing.
    pub best: DegeneratePoint,
}

/// Connected components of grid points under periodic adjacency (including
/// diagonal neighbours).
pub fn cluster_points(points: &[DegeneratePoint], grid: usize) -> Vec<Cluster> {
    let n = points.first().map_or(0, |p| p.index.len());
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let nx = p[c];
            p[c] = r;
            c = nx;
        }
        r
    }
    let near = |a: &[usize], b: &[usize]| {
        (0..n).all(|j| {
            let d = (a[j] as i64 - b[j] as i64).rem_euclid(grid as i64);
            d <= 1 || d == grid as i64 - 1
        })
    };
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if near(&points[i].index, &points[j].index) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[b.max(a)] = a.min(b);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..points.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups
        .values()
        .map(|members| {
            let center = (0..n)
                .map(|j| {
                    let (s, c) = members
                        .iter()
                        .fold((0.0, 0.0), |(s, c), &i| (s + points[i].k[j].sin(), c + points[i].k[j].cos()));
                    s.atan2(c).rem_euclid(2.0 * PI)
                })
                .collect();
            let best = members
                .iter()
                .map(|&i| &points[i])
                .min_by(|a, b| a.gap.total_cmp(&b.gap))
                .cloned()
                .expect("cluster is nonempty");
            Cluster { size: members.len(), center, best }
        })
        .collect()
}

/// Eigenvalues of the Harper operator at one character / twist.
pub fn spectrum_at(m: &HarperModel, k: &[f64]) -> Result<Vec<f64>, Error> {
    eigenvalues(&evaluate(&m.h, &build_rep(&m.theta, k)?)?)
}

/// Pattern search from `k0` minimizing the smallest eigenvalue spacing;
/// returns the final point and spacing.
pub fn refine_degeneracy(m: &HarperModel, k0: &[f64], step0: f64) -> Result<(Vec<f64>, f64), Error> {
    let mut k = k0.to_vec();
    let mut best = min_spacing(&spectrum_at(m, &k)?);
    let mut step = step0;
    while step > 1e-12 && best > 1e-13 {
        let mut improved = false;
        for j in 0..k.len() {
            for s in [-1.0, 1.0] {
                let mut t = k.clone();
                t[j] += s * step;
                let v = min_spacing(&spectrum_at(m, &t)?);
                if v < best {
                    best = v;
                    k = t;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok((k, best))
}

/// Denominators of the phase entries (for sizing twist grids).
pub fn theta_denominators(m: &HarperModel) -> Vec<i64> {
    m.theta
        .entries
        .iter()
        .filter_map(|x| x.exact().map(|t| *(t - t.floor()).denom()))
        .collect()
}

/// `f64` value of an exact rational (utility for callers assembling θ).
pub fn qf(x: Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
