//! Constant magnetic fields as skew forms, the magnetic 2-cocycle, loop fluxes
//! through effective normal vectors and the derived phase parameters.
//!
//! Field units: a [`SkewForm`] stores `w` with `ω = π·w`, where `ω(m,m')`
//! is the radian phase `B⃗·(m×m')` in three dimensions. The cocycle is
//! `α(m,m') = e^{iπ·w(m,m')/2}`, so rational `w` keeps every phase exact.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::exact::*;
use crate::lattice_graph::{bcc_g, LoopWord, QuotientGraph};
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct SkewForm {
    pub dim: usize,
    /// Antisymmetric matrix in units of π (row-major).
    pub w: Vec<Vec<Real>>,
}

impl SkewForm {
    pub fn zero(dim: usize) -> SkewForm {
        SkewForm { dim, w: vec![vec![Real::zero(); dim]; dim] }
    }

    /// From a three-dimensional field vector in radian-phase units.
    pub fn from_field(b: [f64; 3]) -> SkewForm {
        let p = std::f64::consts::PI;
        let mut s = SkewForm::zero(3);
        let set = |s: &mut SkewForm, i: usize, j: usize, x: f64| {
            s.w[i][j] = Real::Approx(x / p);
            s.w[j][i] = Real::Approx(-x / p);
        };
        set(&mut s, 1, 2, b[0]);
        set(&mut s, 2, 0, b[1]);
        set(&mut s, 0, 1, b[2]);
        s
    }

    /// From an antisymmetric matrix already in units of π.
    pub fn from_pi_matrix(w: Vec<Vec<Real>>) -> Result<SkewForm, Error> {
        let dim = w.len();
        for (i, row) in w.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Validation("skew form must be square".into()));
            }
            for j in 0..dim {
                let s = row[j] + w[j][i];
                let bad = match s {
                    Real::Exact(x) => !x.is_zero(),
                    Real::Approx(x) => x.abs() > 1e-14,
                };
                if bad {
                    return Err(Error::Validation("skew form must be antisymmetric".into()));
                }
            }
        }
        Ok(SkewForm { dim, w })
    }

    /// The unique form with `w(g_i, g_j) = 2θ_ij` on the lattice basis `g`,
    /// i.e. `ε(g_i,g_j) = e^{2πiθ_ij}`. Exact when θ is.
    pub fn from_theta(basis: &[QVec], theta: &[Real]) -> Result<SkewForm, Error> {
        let n = basis.len();
        if theta.len() != n * (n - 1) / 2 {
            return Err(Error::Validation(format!(
                "expected {} phase entries, got {}",
                n * (n - 1) / 2,
                theta.len()
            )));
        }
        // dual basis: rows of G^{-1}
        let unit = |k: usize| -> QVec { (0..n).map(|i| qi((i == k) as i64)).collect() };
        let cols: Vec<QVec> = (0..n)
            .map(|k| solve_columns(basis, &unit(k)).ok_or_else(|| Error::Validation("dependent basis".into())))
            .collect::<Result<_, _>>()?;
        // cols[k] = coordinates of unit vector k in the g basis: G^{-1} e_k
        let mut wg = vec![vec![Real::zero(); n]; n];
        let mut idx = 0;
        for i in 0..n {
            for j in i + 1..n {
                wg[i][j] = theta[idx].scale(qi(2));
                wg[j][i] = -wg[i][j];
                idx += 1;
            }
        }
        // w_ab = Σ_ij (G^{-1})_{ia} wg_ij (G^{-1})_{jb}
        let mut w = vec![vec![Real::zero(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let mut acc = Real::zero();
                for i in 0..n {
                    for j in 0..n {
                        let c = cols[a][i] * cols[b][j];
                        if !c.is_zero() {
                            acc = acc + wg[i][j].scale(c);
                        }
                    }
                }
                w[a][b] = acc;
            }
        }
        SkewForm::from_pi_matrix(w)
    }

    /// Honeycomb form with `B_Θ(−e1,e2) = φ` in the preset's oblique basis,
    /// where the cocycle is `e^{iπB_Θ}`.
    pub fn honeycomb_phi(phi: Real) -> SkewForm {
        let x = phi.scale(qi(2));
        SkewForm { dim: 2, w: vec![vec![Real::zero(), x], vec![-x, Real::zero()]] }
    }

    pub fn is_exact(&self) -> bool {
        self.w.iter().flatten().all(|x| x.is_exact())
    }

    /// `w(m, m')` in units of π.
    pub fn eval(&self, m: &[Q], mp: &[Q]) -> Real {
        let mut acc = Real::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let c = m[i] * mp[j];
                if !c.is_zero() {
                    acc = acc + self.w[i][j].scale(c);
                }
            }
        }
        acc
    }

    /// Field vector `B⃗` in radians (dimension 3 only).
    pub fn field(&self) -> Option<[f64; 3]> {
        (self.dim == 3).then(|| {
            let p = std::f64::consts::PI;
            [self.w[1][2].to_f64() * p, self.w[2][0].to_f64() * p, self.w[0][1].to_f64() * p]
        })
    }
}

/// `α(m,m') = exp(i·½·B(m,m'))` as an exact phase.
pub fn cocycle(b: &SkewForm, m: &[Q], mp: &[Q]) -> Result<PiPhase, Error> {
    if m.len() != b.dim || mp.len() != b.dim {
        return Err(Error::Validation("dimension mismatch in cocycle".into()));
    }
    Ok(PiPhase(b.eval(m, mp).scale(q(1, 2))))
}

pub fn cocycle_phase(b: &SkewForm, m: &[Q], mp: &[Q]) -> Result<Complex64, Error> {
    Ok(cocycle(b, m, mp)?.value())
}

/// Commutator phase `ε(l,l') = α(l,l')/α(l',l) = e^{iB(l,l')}`.
pub fn commutator_phase(b: &SkewForm, l: &[Q], lp: &[Q]) -> PiPhase {
    PiPhase(b.eval(l, lp))
}

/// `N_eff = Σ_j f_j × e_{j+1}` for a lifting loop in three dimensions.
pub fn effective_normal(q: &QuotientGraph, w: &LoopWord) -> Result<QVec, Error> {
    if q.ambient_dim != 3 {
        return Err(Error::Validation("effective normal needs ambient dimension 3".into()));
    }
    if !crate::lattice_graph::loop_lifts(q, w) {
        return Err(Error::Validation("loop does not lift".into()));
    }
    let f = w.partial_sums(q);
    let mut n = vzero(3);
    for j in 0..w.len().saturating_sub(1) {
        n = vadd(&n, &cross(&f[j], &q.directed_edges[w.edges[j + 1]].disp));
    }
    Ok(n)
}

/// Flux `½ B⃗·N_eff` in radians.
pub fn flux(b: &SkewForm, q: &QuotientGraph, w: &LoopWord) -> Result<f64, Error> {
    let n = effective_normal(q, w)?;
    let f = b.field().ok_or_else(|| Error::Validation("flux needs a 3d field".into()))?;
    Ok(0.5 * (0..3).map(|i| f[i] * n[i].to_f64().unwrap_or(f64::NAN)).sum::<f64>())
}

#[derive(Clone, Debug, Serialize)]
pub struct HoneycombParams {
    /// φ = B_Θ(−e1,e2); χ = e^{iπφ}
    pub phi: Real,
    pub chi: PiPhase,
    /// θ = B_Θ(f2,f3) = −3φ; q = e^{2πiθ}
    pub theta: Real,
    pub q: PiPhase,
}

#[derive(Clone, Debug, Serialize)]
pub struct GyroidParams {
    pub theta12: Real,
    pub theta13: Real,
    pub theta23: Real,
    pub alpha: [PiPhase; 3],
    pub phi: [PiPhase; 3],
    pub big_phi: PiPhase,
    /// Scalars attaching A, B, C to U_{g1}, U_{g2}, U_{g3}.
    pub a_prime: PiPhase,
    pub b_prime: PiPhase,
    pub c_prime: PiPhase,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "preset", rename_all = "lowercase")]
#[allow(clippy::large_enum_variant)]
pub enum PhaseParams {
    Honeycomb(HoneycombParams),
    Gyroid(GyroidParams),
}

/// Honeycomb edge vectors in the preset basis.
pub fn honeycomb_e() -> [QVec; 3] {
    [qvec(&[(-1, 1), (0, 1)]), qvec(&[(0, 1), (1, 1)]), qvec(&[(1, 1), (-1, 1)])]
}

/// Gyroid edge vectors e1..e6.
pub fn gyroid_e() -> [QVec; 6] {
    let v = |a: i64, b: i64, c: i64| qvec(&[(a, 4), (b, 4), (c, 4)]);
    [v(-1, 1, 0), v(0, -1, 1), v(1, 0, -1), v(1, 1, 0), v(0, -1, -1), v(-1, 0, -1)]
}

pub fn honeycomb_params(b: &SkewForm) -> Result<HoneycombParams, Error> {
    if b.dim != 2 {
        return Err(Error::Validation("honeycomb needs a 2d form".into()));
    }
    let [e1, e2, e3] = honeycomb_e();
    // B_Θ = w/2 in these units
    let phi = b.eval(&vneg(&e1), &e2).scale(q(1, 2));
    let f2 = vsub(&e2, &e1);
    let f3 = vsub(&e3, &e1);
    let theta = b.eval(&f2, &f3).scale(q(1, 2));
    Ok(HoneycombParams { phi, chi: PiPhase(phi), theta, q: PiPhase(theta.scale(qi(2))) })
}

pub fn gyroid_params(b: &SkewForm) -> Result<GyroidParams, Error> {
    if b.dim != 3 {
        return Err(Error::Validation("gyroid needs a 3d form".into()));
    }
    let g = bcc_g();
    let th = |i: usize, j: usize| b.eval(&g[i], &g[j]).scale(q(1, 2));
    let (t12, t13, t23) = (th(0, 1), th(0, 2), th(1, 2));
    let alpha = [
        PiPhase(t12.scale(qi(2))),
        PiPhase(t13.scale(qi(-2))),
        PiPhase(t23.scale(qi(2))),
    ];
    let phi = [
        PiPhase(t12.scale(q(1, 2))),
        PiPhase(t13.scale(q(-1, 2))),
        PiPhase(t23.scale(q(1, 2))),
    ];
    let e = gyroid_e();
    let a = |x: &QVec, y: &QVec| cocycle(b, x, y).unwrap();
    let (e1, e2, e3, e4, e5, e6) = (&e[0], &e[1], &e[2], &e[3], &e[4], &e[5]);
    let a_prime = a(&vneg(e1), &vneg(e6)) * a(&vsub(&vneg(e1), e6), e2);
    let b_prime = a(&vneg(e3), &vneg(e5)) * a(&vsub(&vneg(e3), e5), e1);
    let c_prime = a(&vneg(e2), e4) * a(&vadd(&vneg(e2), e4), e3);
    Ok(GyroidParams {
        theta12: t12,
        theta13: t13,
        theta23: t23,
        alpha,
        phi,
        big_phi: phi[0] * phi[1] * phi[2],
        a_prime,
        b_prime,
        c_prime,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HoneycombCase {
    /// q ≠ ±1
    Generic,
    /// q = −1, χ⁴ ≠ 1
    QMinusOneChi4NotOne,
    /// q = −1, χ⁴ = 1
    QMinusOneChi4One,
    /// q = 1, χ = ±1
    QOneChiReal,
    /// q = 1, χ ≠ ±1
    QOneChiNotReal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GyroidCase {
    /// Φ ≠ 1
    PhiNotOne,
    /// Φ = 1 and some α_i non-real
    PhiOneNonRealAlpha,
    /// Φ = 1, all α_i = 1; the φ pattern counts how many φ_i differ from 1
    PhiOneAlphaTrivial { phis_not_one: u8, phis_real: bool },
    /// Φ = 1, α_i real, not all 1; whether the non-trivial φ's coincide
    PhiOneAlphaReal { distinct_phis: u8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "preset", content = "case", rename_all = "lowercase")]
pub enum CaseId {
    Honeycomb(HoneycombCase),
    Gyroid(GyroidCase),
}

pub fn classify_honeycomb(p: &HoneycombParams) -> HoneycombCase {
    let q = p.q;
    if q.is_one() {
        if p.chi.is_real() {
            HoneycombCase::QOneChiReal
        } else {
            HoneycombCase::QOneChiNotReal
        }
    } else if q.eq_phase(PiPhase::from_q(qi(1))) {
        if p.chi.pow(4).is_one() {
            HoneycombCase::QMinusOneChi4One
        } else {
            HoneycombCase::QMinusOneChi4NotOne
        }
    } else {
        HoneycombCase::Generic
    }
}

pub fn classify_gyroid(p: &GyroidParams) -> GyroidCase {
    if !p.big_phi.is_one() {
        return GyroidCase::PhiNotOne;
    }
    if p.alpha.iter().any(|a| !a.is_real()) {
        return GyroidCase::PhiOneNonRealAlpha;
    }
    if p.alpha.iter().all(|a| a.is_one()) {
        let not_one = p.phi.iter().filter(|f| !f.is_one()).count() as u8;
        return GyroidCase::PhiOneAlphaTrivial {
            phis_not_one: not_one,
            phis_real: p.phi.iter().all(|f| f.is_real()),
        };
    }
    let mut distinct: Vec<PiPhase> = Vec::new();
    for f in p.phi {
        if !distinct.iter().any(|d| d.eq_phase(f)) {
            distinct.push(f);
        }
    }
    GyroidCase::PhiOneAlphaReal { distinct_phis: distinct.len() as u8 }
}

pub fn classify_case(p: &PhaseParams) -> CaseId {
    match p {
        PhaseParams::Honeycomb(h) => CaseId::Honeycomb(classify_honeycomb(h)),
        PhaseParams::Gyroid(g) => CaseId::Gyroid(classify_gyroid(g)),
    }
}

/// Flux through the lifted polygon by summing `½B⃗·(f_j × f_{j+1})` over the
/// fan from the base point. Independent of [`effective_normal`].
pub fn polygon_flux(b: &SkewForm, q: &QuotientGraph, w: &LoopWord) -> Option<f64> {
    let f = b.field()?;
    let pts = w.partial_sums(q);
    let mut acc = 0.0;
    for j in 0..pts.len().saturating_sub(1) {
        let c = cross(&pts[j], &pts[j + 1]);
        acc += 0.5 * (0..3).map(|i| f[i] * c[i].to_f64().unwrap_or(f64::NAN)).sum::<f64>();
    }
    Some(acc)
}
