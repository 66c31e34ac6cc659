//! Finite-dimensional representations of the noncommutative torus at rational
//! phases (clock and shift with twists), characters of the commutative torus,
//! and evaluation of torus matrices to dense complex matrices.
//!
//! Every generator image is a monomial matrix (a permutation with phases), so
//! images and their products are stored in that form and only densified when
//! a torus matrix is evaluated.

use std::f64::consts::PI;

use faer::Mat;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::exact::*;
use crate::torus_poly::{ThetaSpec, TorusElement, TorusMatrix};
use crate::Error;

pub type CMat = Mat<Complex64>;

/// Monomial matrix `M e_j = phase[j]·e_{perm[j]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonoMat {
    pub perm: Vec<usize>,
    pub phase: Vec<Complex64>,
}

impl MonoMat {
    pub fn identity(d: usize) -> MonoMat {
        MonoMat { perm: (0..d).collect(), phase: vec![Complex64::new(1.0, 0.0); d] }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// `self · o`
    pub fn mul(&self, o: &MonoMat) -> MonoMat {
        let d = self.dim();
        let mut perm = vec![0; d];
        let mut phase = vec![Complex64::zero(); d];
        for j in 0..d {
            let m = o.perm[j];
            perm[j] = self.perm[m];
            phase[j] = o.phase[j] * self.phase[m];
        }
        MonoMat { perm, phase }
    }

    pub fn adjoint(&self) -> MonoMat {
        let d = self.dim();
        let mut perm = vec![0; d];
        let mut phase = vec![Complex64::zero(); d];
        for j in 0..d {
            perm[self.perm[j]] = j;
            phase[self.perm[j]] = self.phase[j].conj();
        }
        MonoMat { perm, phase }
    }

    pub fn pow(&self, k: i32) -> MonoMat {
        let base = if k >= 0 { self.clone() } else { self.adjoint() };
        let mut out = MonoMat::identity(self.dim());
        for _ in 0..k.unsigned_abs() {
            out = base.mul(&out);
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> MonoMat {
        MonoMat { perm: self.perm.clone(), phase: self.phase.iter().map(|p| p * s).collect() }
    }

    pub fn to_dense(&self) -> CMat {
        let d = self.dim();
        let mut m = CMat::zeros(d, d);
        for j in 0..d {
            m[(self.perm[j], j)] = self.phase[j];
        }
        m
    }

    /// Add `c·self` into the `d×d` block of `out` at `(r0, c0)`.
    pub fn add_into(&self, out: &mut CMat, r0: usize, c0: usize, c: Complex64) {
        for j in 0..self.dim() {
            out[(r0 + self.perm[j], c0 + j)] += c * self.phase[j];
        }
    }
}

/// One tensor factor `ℂ^q` for the pair `(i, j)`, `i < j`.
#[derive(Clone, Debug, Serialize)]
pub struct ClockFactor {
    pub i: usize,
    pub j: usize,
    pub p: i64,
    pub q: i64,
}

#[derive(Clone, Debug)]
pub struct Representation {
    pub theta: ThetaSpec,
    pub factors: Vec<ClockFactor>,
    pub d: usize,
    pub twist: Vec<f64>,
    pub gens: Vec<MonoMat>,
}

impl Representation {
    pub fn n(&self) -> usize {
        self.theta.n
    }

    pub fn descriptor(&self) -> serde_json::Value {
        serde_json::json!({
            "theta": self.theta.labels(),
            "d": self.d,
            "factors": self.factors,
            "twist": self.twist,
        })
    }

    /// Image of the monomial `U^a` (normal ordered).
    pub fn monomial(&self, a: &[i32]) -> MonoMat {
        let mut m = MonoMat::identity(self.d);
        for (i, &ai) in a.iter().enumerate() {
            if ai != 0 {
                m = m.mul(&self.gens[i].pow(ai));
            }
        }
        m
    }

    /// Dense image of a torus element.
    pub fn eval_element(&self, x: &TorusElement) -> Result<CMat, Error> {
        self.check(&x.theta)?;
        let mut out = CMat::zeros(self.d, self.d);
        for (a, c) in &x.terms {
            self.monomial(a).add_into(&mut out, 0, 0, *c);
        }
        Ok(out)
    }

    fn check(&self, t: &ThetaSpec) -> Result<(), Error> {
        if *t != self.theta {
            return Err(Error::ThetaMismatch);
        }
        Ok(())
    }
}

/// Clock-and-shift representation at rational Θ with twist angles.
///
/// Each pair `i<j` with `θ_ij = p/q (mod 1)` contributes a factor `ℂ^q`. On
/// it, generator `i` acts by the clock `diag(ω^m)`, `ω = e^{2πip/q}`, and
/// generator `j` by the cyclic shift `e_m ↦ e_{m+1}`; all other generators act
/// trivially. Generator `i` is finally multiplied by `e^{ik_i}`.
pub fn build_rep(theta: &ThetaSpec, twist: &[f64]) -> Result<Representation, Error> {
    let n = theta.n;
    if twist.len() != n {
        return Err(Error::Validation(format!("twist needs {n} angles, got {}", twist.len())));
    }
    let mut factors = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let t = theta.get(i, j).exact().ok_or(Error::NonRational)?;
            let t = t - t.floor();
            let (p, q) = (*t.numer(), *t.denom());
            if q > 1 {
                factors.push(ClockFactor { i, j, p, q });
            }
        }
    }
    let d: usize = factors.iter().map(|f| f.q as usize).product();
    // mixed radix: factor 0 is the most significant digit
    let radix: Vec<usize> = factors.iter().map(|f| f.q as usize).collect();
    let mut stride = vec![1usize; radix.len()];
    for k in (0..radix.len().saturating_sub(1)).rev() {
        stride[k] = stride[k + 1] * radix[k + 1];
    }
    let gens = (0..n)
        .map(|g| {
            let mut perm = vec![0; d];
            let mut phase = vec![Complex64::zero(); d];
            for idx in 0..d {
                let mut target = idx;
                let mut ph = Complex64::from_polar(1.0, twist[g]);
                for (k, f) in factors.iter().enumerate() {
                    let digit = (idx / stride[k]) % radix[k];
                    if f.i == g {
                        let ang = 2.0 * PI * ((f.p * digit as i64) % f.q) as f64 / f.q as f64;
                        ph *= Complex64::from_polar(1.0, ang);
                    } else if f.j == g {
                        let nd = (digit + 1) % radix[k];
                        target = target - digit * stride[k] + nd * stride[k];
                    }
                }
                perm[idx] = target;
                phase[idx] = ph;
            }
            MonoMat { perm, phase }
        })
        .collect();
    Ok(Representation { theta: theta.clone(), factors, d, twist: twist.to_vec(), gens })
}

/// Character grid of the commutative torus: `k_j = 2π m_j / M`.
pub fn characters(theta: &ThetaSpec, m: usize) -> Result<Vec<Representation>, Error> {
    if !theta.is_commutative() {
        return Err(Error::Validation("characters need a commutative torus".into()));
    }
    if m == 0 {
        return Err(Error::Validation("grid size must be at least 1".into()));
    }
    grid_points(theta.n, m)
        .iter()
        .map(|k| build_rep(theta, k))
        .collect()
}

/// Uniform grid `2π m_j / M` in `n` dimensions, last index fastest.
pub fn grid_points(n: usize, m: usize) -> Vec<Vec<f64>> {
    let total = m.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut k = vec![0.0; n];
            for j in (0..n).rev() {
                k[j] = 2.0 * PI * (idx % m) as f64 / m as f64;
                idx /= m;
            }
            k
        })
        .collect()
}

/// Dense `(k·d) × (k·d)` image of a torus matrix.
pub fn evaluate(x: &TorusMatrix, r: &Representation) -> Result<CMat, Error> {
    r.check(&x.theta)?;
    let (k, d) = (x.k, r.d);
    let mut out = CMat::zeros(k * d, k * d);
    for i in 0..k {
        for j in 0..k {
            for (a, c) in &x.get(i, j).terms {
                r.monomial(a).add_into(&mut out, i * d, j * d, *c);
            }
        }
    }
    Ok(out)
}

/// Smallest dimension of the clock representation for given phases.
pub fn rep_dimension(theta: &ThetaSpec) -> Result<usize, Error> {
    let mut d = 1usize;
    for x in &theta.entries {
        let t = x.exact().ok_or(Error::NonRational)?;
        d *= (t - t.floor()).denom().to_usize().unwrap_or(1);
    }
    Ok(d)
}

/// Largest `|UᵢUⱼ − e^{2πiθᵢⱼ}UⱼUᵢ|` entry and largest unitarity defect.
pub fn relation_defect(r: &Representation) -> f64 {
    let n = r.n();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let g = r.gens[i].to_dense();
        let gg = &g * g.adjoint();
        for a in 0..r.d {
            for b in 0..r.d {
                let e = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((gg[(a, b)] - e).norm());
            }
        }
        for j in i + 1..n {
            let h = r.gens[j].to_dense();
            let w = PiPhase(r.theta.get(i, j).scale(qi(2))).value();
            let lhs = &g * &h;
            let rhs = &h * &g;
            for a in 0..r.d {
                for b in 0..r.d {
                    worst = worst.max((lhs[(a, b)] - w * rhs[(a, b)]).norm());
                }
            }
        }
    }
    worst
}

/// Lowest common denominator of the phase entries (used for sizing).
pub fn common_denominator(theta: &ThetaSpec) -> Option<i64> {
    theta
        .entries
        .iter()
        .try_fold(1i64, |acc, x| x.exact().map(|t| acc.lcm(t.denom())))
}
