//! Laurent polynomials in the generators of the noncommutative torus 𝕋ⁿ_Θ and
//! matrices over them.
//!
//! Monomials are normal ordered as `U₁^{a₁}···Uₙ^{aₙ}`. The relations are
//! `UᵢUⱼ = e^{2πiθᵢⱼ}UⱼUᵢ`, which gives the product rule
//! `U^a·U^b = exp(−2πi Σ_{i<j} θᵢⱼ bᵢaⱼ)·U^{a+b}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::Serialize;

use crate::exact::*;
use crate::Error;

/// Coefficients below this are dropped.
pub const PRUNE: f64 = 1e-14;

pub type Exps = Vec<i32>;

/// Upper-triangular phase exponents θᵢⱼ, i<j, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaSpec {
    pub n: usize,
    pub entries: Vec<Real>,
}

impl ThetaSpec {
    pub fn new(n: usize, entries: Vec<Real>) -> Result<ThetaSpec, Error> {
        if entries.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::Validation(format!(
                "{} generators need {} phase entries, got {}",
                n,
                n * n.saturating_sub(1) / 2,
                entries.len()
            )));
        }
        Ok(ThetaSpec { n, entries })
    }

    pub fn zero(n: usize) -> ThetaSpec {
        ThetaSpec { n, entries: vec![Real::zero(); n * n.saturating_sub(1) / 2] }
    }

    pub fn rational(n: usize, entries: &[Q]) -> Result<ThetaSpec, Error> {
        ThetaSpec::new(n, entries.iter().map(|&x| Real::Exact(x)).collect())
    }

    fn index(&self, i: usize, j: usize) -> usize {
        // position of (i,j), i<j, in lexicographic order
        i * self.n - i * (i + 1) / 2 + (j - i - 1)
    }

    /// θᵢⱼ with θⱼᵢ = −θᵢⱼ and θᵢᵢ = 0.
    pub fn get(&self, i: usize, j: usize) -> Real {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.entries[self.index(i, j)],
            Greater => -self.entries[self.index(j, i)],
            Equal => Real::zero(),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.entries.iter().all(|x| x.is_exact())
    }

    pub fn is_commutative(&self) -> bool {
        self.entries.iter().all(|&x| PiPhase(x.scale(qi(2))).is_one())
    }

    /// Phase of `U^a·U^b` relative to `U^{a+b}`, as e^{iπ·x}.
    pub fn product_phase(&self, a: &[i32], b: &[i32]) -> PiPhase {
        let mut acc = Real::zero();
        for i in 0..self.n {
            if b[i] == 0 {
                continue;
            }
            for j in i + 1..self.n {
                let c = b[i] as i64 * a[j] as i64;
                if c != 0 {
                    acc = acc + self.get(i, j).scale(qi(-2 * c));
                }
            }
        }
        PiPhase(acc)
    }

    pub fn labels(&self) -> Vec<String> {
        self.entries.iter().map(|x| x.label()).collect()
    }
}

/// Finite sum of monomials with complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusElement {
    pub theta: ThetaSpec,
    pub terms: BTreeMap<Exps, Complex64>,
}

fn cplx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl TorusElement {
    pub fn zero(theta: &ThetaSpec) -> TorusElement {
        TorusElement { theta: theta.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(theta: &ThetaSpec, c: Complex64) -> TorusElement {
        TorusElement::monomial(theta, vec![0; theta.n], c)
    }

    pub fn one(theta: &ThetaSpec) -> TorusElement {
        TorusElement::scalar(theta, cplx(1.0))
    }

    pub fn monomial(theta: &ThetaSpec, a: Exps, c: Complex64) -> TorusElement {
        let mut e = TorusElement::zero(theta);
        if c.norm() > PRUNE {
            e.terms.insert(a, c);
        }
        e
    }

    /// Generator `Uᵢ` (0-based).
    pub fn generator(theta: &ThetaSpec, i: usize) -> TorusElement {
        let mut a = vec![0; theta.n];
        a[i] = 1;
        TorusElement::monomial(theta, a, cplx(1.0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient modulus.
    pub fn max_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// ℓ² norm of the coefficients (the trace norm of the element).
    pub fn norm2(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn coeff(&self, a: &[i32]) -> Complex64 {
        self.terms.get(a).copied().unwrap_or_default()
    }

    fn add_term(&mut self, a: Exps, c: Complex64) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(a) {
            Entry::Vacant(v) => {
                if c.norm() > PRUNE {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().norm() <= PRUNE {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: Complex64) -> TorusElement {
        let mut out = TorusElement::zero(&self.theta);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), c * s);
        }
        out
    }

    fn check(&self, o: &TorusElement) -> Result<(), Error> {
        if self.theta != o.theta {
            return Err(Error::ThetaMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, o: &TorusElement) -> Result<TorusElement, Error> {
        self.check(o)?;
        let mut out = self.clone();
        for (a, c) in &o.terms {
            out.add_term(a.clone(), *c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, o: &TorusElement) -> Result<TorusElement, Error> {
        self.check(o)?;
        let mut out = TorusElement::zero(&self.theta);
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                let ph = self.theta.product_phase(a, b).value();
                let s: Exps = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(s, c * d * ph);
            }
        }
        Ok(out)
    }

    /// `(cU^a)* = c̄·exp(−2πi Σ_{i<j} θᵢⱼ aᵢaⱼ)·U^{−a}`.
    pub fn adjoint(&self) -> TorusElement {
        let mut out = TorusElement::zero(&self.theta);
        for (a, c) in &self.terms {
            let neg: Exps = a.iter().map(|x| -x).collect();
            // U^{-a}U^{a} = p·1 with p = product_phase(-a, a); (U^a)* = p̄ U^{-a}
            let p = self.theta.product_phase(&neg, a).conj().value();
            out.add_term(neg, c.conj() * p);
        }
        out
    }

    pub fn pow(&self, k: i32) -> TorusElement {
        let base = if k >= 0 { self.clone() } else { self.adjoint() };
        let mut out = TorusElement::one(&self.theta);
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// Apply an algebra map given on generators: `Σ c·Π f(Uᵢ)^{aᵢ}`.
    pub fn substitute<T, F, M, A>(&self, zero: T, one: T, image: F, mul: M, add: A) -> T
    where
        T: Clone,
        F: Fn(usize, i32) -> T,
        M: Fn(&T, &T) -> T,
        A: Fn(&T, &T, Complex64) -> T,
    {
        let mut acc = zero;
        for (a, c) in &self.terms {
            let mut m = one.clone();
            for (i, &ai) in a.iter().enumerate() {
                if ai != 0 {
                    m = mul(&m, &image(i, ai));
                }
            }
            acc = add(&acc, &m, *c);
        }
        acc
    }

    /// Hat map of the q = −1 torus: Û = −V, V̂ = −U (linear, multiplicative).
    pub fn hat(&self) -> Result<TorusElement, Error> {
        if self.theta.n != 2 {
            return Err(Error::Validation("hat map is defined for two generators".into()));
        }
        // needs ÛV̂ = e^{2πiθ}V̂Û, i.e. e^{4πiθ} = 1
        if !PiPhase(self.theta.get(0, 1).scale(qi(4))).is_one() {
            return Err(Error::Validation("hat map needs θ ∈ {0, 1/2} mod 1".into()));
        }
        let th = &self.theta;
        let u_hat = TorusElement::generator(th, 1).scale(cplx(-1.0));
        let v_hat = TorusElement::generator(th, 0).scale(cplx(-1.0));
        Ok(self.substitute(
            TorusElement::zero(th),
            TorusElement::one(th),
            |i, k| if i == 0 { u_hat.pow(k) } else { v_hat.pow(k) },
            |x, y| x * y,
            |acc, m, c| acc + &m.scale(c),
        ))
    }

    /// Signed monomial sum, e.g. `1+U*+V*`.
    pub fn pretty(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<(&Exps, &Complex64)> = self.terms.iter().collect();
        terms.sort_by_key(|(a, _)| term_key(a));
        let mut s = String::new();
        for (i, (a, c)) in terms.iter().enumerate() {
            let mono = format_monomial(a, names);
            let (sign, coef) = format_coeff(**c);
            if i > 0 || sign == "-" {
                s.push_str(sign);
            }
            match (coef.as_str(), mono.is_empty()) {
                ("", true) => s.push('1'),
                ("", false) => s.push_str(&mono),
                (k, _) => {
                    s.push_str(k);
                    s.push_str(&mono);
                }
            }
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut terms: Vec<(&Exps, &Complex64)> = self.terms.iter().collect();
        terms.sort_by_key(|(a, _)| term_key(a));
        serde_json::Value::Array(
            terms
                .iter()
                .map(|(a, c)| serde_json::json!({"exp": a, "re": c.re, "im": c.im}))
                .collect(),
        )
    }
}

fn term_key(a: &[i32]) -> (i32, usize, Vec<i32>) {
    let deg = a.iter().map(|x| x.abs()).sum();
    let first = a.iter().position(|&x| x != 0).unwrap_or(0);
    (deg, first, a.iter().map(|x| -x).collect())
}

fn format_monomial(a: &[i32], names: &[String]) -> String {
    let mut s = String::new();
    for (i, &k) in a.iter().enumerate() {
        let name = names.get(i).cloned().unwrap_or_else(|| format!("U{}", i + 1));
        match k {
            0 => {}
            1 => s.push_str(&name),
            -1 => s.push_str(&format!("{name}*")),
            k if k > 1 => s.push_str(&format!("{name}^{k}")),
            k => s.push_str(&format!("{name}*^{}", -k)),
        }
    }
    s
}

fn trim_num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// Split into sign and magnitude text; unit coefficients print as "".
fn format_coeff(c: Complex64) -> (&'static str, String) {
    const EPS: f64 = 1e-12;
    if c.im.abs() < EPS {
        let sign = if c.re < 0.0 { "-" } else { "+" };
        let m = c.re.abs();
        if (m - 1.0).abs() < EPS {
            return (sign, String::new());
        }
        return (sign, trim_num(m));
    }
    if c.re.abs() < EPS {
        let sign = if c.im < 0.0 { "-" } else { "+" };
        let m = c.im.abs();
        if (m - 1.0).abs() < EPS {
            return (sign, "i".into());
        }
        return (sign, format!("{}i", trim_num(m)));
    }
    ("+", format!("({}{}{}i)", trim_num(c.re), if c.im < 0.0 { "-" } else { "+" }, trim_num(c.im.abs())))
}

impl Add for &TorusElement {
    type Output = TorusElement;
    fn add(self, o: &TorusElement) -> TorusElement {
        self.try_add(o).expect("theta mismatch")
    }
}

impl Sub for &TorusElement {
    type Output = TorusElement;
    fn sub(self, o: &TorusElement) -> TorusElement {
        self.try_add(&o.scale(cplx(-1.0))).expect("theta mismatch")
    }
}

impl Neg for &TorusElement {
    type Output = TorusElement;
    fn neg(self) -> TorusElement {
        self.scale(cplx(-1.0))
    }
}

impl Mul for &TorusElement {
    type Output = TorusElement;
    fn mul(self, o: &TorusElement) -> TorusElement {
        self.try_mul(o).expect("theta mismatch")
    }
}

/// Free mul for the operation table; errors on ThetaSpec mismatch.
pub fn mul(x: &TorusElement, y: &TorusElement) -> Result<TorusElement, Error> {
    x.try_mul(y)
}

/// k×k matrix over the torus.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusMatrix {
    pub k: usize,
    pub theta: ThetaSpec,
    /// Row-major entries.
    pub entries: Vec<TorusElement>,
}

impl TorusMatrix {
    pub fn zeros(theta: &ThetaSpec, k: usize) -> TorusMatrix {
        TorusMatrix { k, theta: theta.clone(), entries: vec![TorusElement::zero(theta); k * k] }
    }

    pub fn identity(theta: &ThetaSpec, k: usize) -> TorusMatrix {
        let mut m = TorusMatrix::zeros(theta, k);
        for i in 0..k {
            m.entries[i * k + i] = TorusElement::one(theta);
        }
        m
    }

    /// Matrix unit E_ij (0-based).
    pub fn elementary(theta: &ThetaSpec, k: usize, i: usize, j: usize) -> TorusMatrix {
        let mut m = TorusMatrix::zeros(theta, k);
        m.entries[i * k + j] = TorusElement::one(theta);
        m
    }

    pub fn diag(theta: &ThetaSpec, d: Vec<TorusElement>) -> TorusMatrix {
        let k = d.len();
        let mut m = TorusMatrix::zeros(theta, k);
        for (i, e) in d.into_iter().enumerate() {
            m.entries[i * k + i] = e;
        }
        m
    }

    pub fn from_rows(theta: &ThetaSpec, rows: Vec<Vec<TorusElement>>) -> TorusMatrix {
        let k = rows.len();
        TorusMatrix { k, theta: theta.clone(), entries: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &TorusElement {
        &self.entries[i * self.k + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: TorusElement) {
        self.entries[i * self.k + j] = e;
    }

    pub fn scale(&self, s: Complex64) -> TorusMatrix {
        TorusMatrix {
            k: self.k,
            theta: self.theta.clone(),
            entries: self.entries.iter().map(|e| e.scale(s)).collect(),
        }
    }

    pub fn try_add(&self, o: &TorusMatrix) -> Result<TorusMatrix, Error> {
        if self.k != o.k {
            return Err(Error::Validation("matrix size mismatch".into()));
        }
        Ok(TorusMatrix {
            k: self.k,
            theta: self.theta.clone(),
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a.try_add(b))
                .collect::<Result<_, _>>()?,
        })
    }

    pub fn try_mul(&self, o: &TorusMatrix) -> Result<TorusMatrix, Error> {
        if self.k != o.k {
            return Err(Error::Validation("matrix size mismatch".into()));
        }
        let k = self.k;
        let mut out = TorusMatrix::zeros(&self.theta, k);
        for i in 0..k {
            for j in 0..k {
                let mut acc = TorusElement::zero(&self.theta);
                for l in 0..k {
                    let (a, b) = (self.get(i, l), o.get(l, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.try_add(&a.try_mul(b)?)?;
                }
                out.entries[i * k + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> TorusMatrix {
        let k = self.k;
        let mut out = TorusMatrix::zeros(&self.theta, k);
        for i in 0..k {
            for j in 0..k {
                out.entries[j * k + i] = self.get(i, j).adjoint();
            }
        }
        out
    }

    /// Largest coefficient modulus over all entries.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.max_norm()).fold(0.0, f64::max)
    }

    /// True when every nonzero entry is on the diagonal and is a single
    /// monomial (so the matrix is unitary up to the scalars).
    pub fn is_monomial_diagonal(&self) -> bool {
        (0..self.k).all(|i| {
            (0..self.k).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.terms.len() == 1 && e.terms.values().all(|c| c.norm() > PRUNE)
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// `g·x·g*` for a monomial-diagonal `g`.
    pub fn conj_by(&self, g: &TorusMatrix) -> Result<TorusMatrix, Error> {
        if !g.is_monomial_diagonal() {
            return Err(Error::Validation("conjugating matrix is not monomial-diagonal".into()));
        }
        g.try_mul(self)?.try_mul(&g.adjoint())
    }

    /// General triple product `a·x·b`.
    pub fn triple(a: &TorusMatrix, x: &TorusMatrix, b: &TorusMatrix) -> Result<TorusMatrix, Error> {
        a.try_mul(x)?.try_mul(b)
    }

    /// Whether `self = c·E_ij`; returns c (0 when false).
    pub fn is_elementary(&self, i: usize, j: usize, tol: f64) -> (bool, Complex64) {
        let zero = vec![0; self.theta.n];
        let e = self.get(i, j);
        let c = e.coeff(&zero);
        let entry_ok = c.norm() > tol && (e.max_norm() <= tol || e.terms.len() == 1);
        let entry_only_scalar = e.terms.iter().all(|(a, v)| *a == zero || v.norm() <= tol);
        let others_small = (0..self.k).all(|r| {
            (0..self.k).all(|s| (r, s) == (i, j) || self.get(r, s).max_norm() <= tol)
        });
        let ok = entry_ok && entry_only_scalar && others_small;
        (ok, if ok { c } else { Complex64::default() })
    }

    /// If exactly one entry is (numerically) nonzero and it is a single
    /// monomial, return its position, exponents and coefficient.
    pub fn single_monomial(&self, tol: f64) -> Option<(usize, usize, Exps, Complex64)> {
        let mut found = None;
        for r in 0..self.k {
            for s in 0..self.k {
                for (a, c) in &self.get(r, s).terms {
                    if c.norm() > tol {
                        if found.is_some() {
                            return None;
                        }
                        found = Some((r, s, a.clone(), *c));
                    }
                }
            }
        }
        found
    }

    pub fn pretty(&self, names: &[String]) -> String {
        let cells: Vec<Vec<String>> = (0..self.k)
            .map(|i| (0..self.k).map(|j| self.get(i, j).pretty(names)).collect())
            .collect();
        let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
        cells
            .iter()
            .map(|row| {
                let r: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                format!("[ {} ]", r.join("  "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        serde_json::json!({
            "k": self.k,
            "theta": self.theta.labels(),
            "generators": names,
            "pretty": (0..self.k).map(|i| (0..self.k).map(|j| self.get(i, j).pretty(names)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "entries": (0..self.k).map(|i| (0..self.k).map(|j| self.get(i, j).to_json()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

impl Add for &TorusMatrix {
    type Output = TorusMatrix;
    fn add(self, o: &TorusMatrix) -> TorusMatrix {
        self.try_add(o).expect("matrix add")
    }
}

impl Sub for &TorusMatrix {
    type Output = TorusMatrix;
    fn sub(self, o: &TorusMatrix) -> TorusMatrix {
        self.try_add(&o.scale(cplx(-1.0))).expect("matrix sub")
    }
}

impl Mul for &TorusMatrix {
    type Output = TorusMatrix;
    fn mul(self, o: &TorusMatrix) -> TorusMatrix {
        self.try_mul(o).expect("matrix mul")
    }
}

impl fmt::Display for TorusMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.theta.n).map(|i| format!("U{}", i + 1)).collect();
        f.write_str(&self.pretty(&names))
    }
}
