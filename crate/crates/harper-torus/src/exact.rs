//! Exact rational plumbing shared by every module: rationals, rational
//! vectors, reals that stay exact when they can, and unit phases stored as
//! exponents of `e^{iπ·x}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::Error;

/// Rational number used for coordinates and exact phase exponents.
pub type Q = Ratio<i64>;

/// Tolerance used when a phase is only known as a float.
pub const PHASE_TOL: f64 = 1e-12;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

/// Parse `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Q, Error> {
    let t = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

pub fn fmt_rational(x: &Q) -> String {
    if x.is_integer() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exact rational vector.
pub type QVec = Vec<Q>;

pub fn qvec(xs: &[(i64, i64)]) -> QVec {
    xs.iter().map(|&(n, d)| Q::new(n, d)).collect()
}

pub fn vadd(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vneg(a: &[Q]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn vscale(a: &[Q], s: Q) -> QVec {
    a.iter().map(|x| x * s).collect()
}

pub fn vzero(n: usize) -> QVec {
    vec![Q::zero(); n]
}

pub fn is_zero_vec(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn cross(a: &[Q], b: &[Q]) -> QVec {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn to_f64_vec(a: &[Q]) -> Vec<f64> {
    a.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
}

pub fn fmt_qvec(a: &[Q]) -> Vec<String> {
    a.iter().map(fmt_rational).collect()
}

/// Solve `cols · x = v` for x where `cols` are the column vectors of a square
/// nonsingular rational matrix. Returns `None` if singular.
pub fn solve_columns(cols: &[QVec], v: &[Q]) -> Option<QVec> {
    let n = cols.len();
    if n == 0 || v.len() != n {
        return None;
    }
    // augmented row-major matrix
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|r| {
            let mut row: Vec<Q> = cols.iter().map(|c| c[r]).collect();
            row.push(v[r]);
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let piv = m[c][c];
        for x in m[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c];
                for k in c..=n {
                    let t = m[c][k] * f;
                    m[r][k] -= t;
                }
            }
        }
    }
    Some(m.iter().map(|row| row[n]).collect())
}

/// Rank of a list of rational vectors (Gaussian elimination).
pub fn rank(vectors: &[QVec]) -> usize {
    let mut rows: Vec<QVec> = vectors.to_vec();
    let ncol = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncol {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let piv = rows[rank][c];
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c] / piv;
                for k in c..ncol {
                    let t = rows[rank][k] * f;
                    rows[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Coordinates of `v` in the lattice spanned by `basis`, if they are all
/// integers.
pub fn lattice_coords(basis: &[QVec], v: &[Q]) -> Option<Vec<i64>> {
    let x = solve_columns(basis, v)?;
    x.iter()
        .map(|c| if c.is_integer() { Some(c.to_integer()) } else { None })
        .collect()
}

/// A real number that is exact when built from rationals and degrades to a
/// float as soon as a float enters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Real {
    Exact(Q),
    Approx(f64),
}

impl Real {
    pub fn zero() -> Real {
        Real::Exact(Q::zero())
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Real::Exact(x) => x.to_f64().unwrap_or(f64::NAN),
            Real::Approx(x) => x,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Real::Exact(_))
    }

    pub fn exact(self) -> Option<Q> {
        match self {
            Real::Exact(x) => Some(x),
            Real::Approx(_) => None,
        }
    }

    pub fn scale(self, s: Q) -> Real {
        match self {
            Real::Exact(x) => Real::Exact(x * s),
            Real::Approx(x) => Real::Approx(x * s.to_f64().unwrap_or(f64::NAN)),
        }
    }

    /// Rational part reduced to `[0,1)`; float part likewise.
    pub fn frac(self) -> Real {
        match self {
            Real::Exact(x) => Real::Exact(x - x.floor()),
            Real::Approx(x) => Real::Approx(x - x.floor()),
        }
    }

    pub fn label(self) -> String {
        match self {
            Real::Exact(x) => fmt_rational(&x),
            Real::Approx(x) => format!("{x}"),
        }
    }
}

impl From<Q> for Real {
    fn from(x: Q) -> Real {
        Real::Exact(x)
    }
}

impl From<f64> for Real {
    fn from(x: f64) -> Real {
        Real::Approx(x)
    }
}

impl Add for Real {
    type Output = Real;
    fn add(self, o: Real) -> Real {
        match (self, o) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a + b),
            (a, b) => Real::Approx(a.to_f64() + b.to_f64()),
        }
    }
}

impl Sub for Real {
    type Output = Real;
    fn sub(self, o: Real) -> Real {
        self + (-o)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        match self {
            Real::Exact(a) => Real::Exact(-a),
            Real::Approx(a) => Real::Approx(-a),
        }
    }
}

impl Mul for Real {
    type Output = Real;
    fn mul(self, o: Real) -> Real {
        match (self, o) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a * b),
            (a, b) => Real::Approx(a.to_f64() * b.to_f64()),
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Unit complex number `e^{iπ·x}` stored through its exponent `x`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiPhase(pub Real);

impl PiPhase {
    pub fn one() -> PiPhase {
        PiPhase(Real::zero())
    }

    pub fn from_q(x: Q) -> PiPhase {
        PiPhase(Real::Exact(x))
    }

    /// Exponent reduced to `[0,2)`.
    pub fn exponent(self) -> Real {
        match self.0 {
            Real::Exact(x) => {
                let two = qi(2);
                let r = x - (x / two).floor() * two;
                Real::Exact(r)
            }
            Real::Approx(x) => Real::Approx(x.rem_euclid(2.0)),
        }
    }

    pub fn value(self) -> Complex64 {
        match self.exponent() {
            // exact quarter turns are returned exactly
            Real::Exact(x) if (x * qi(2)).is_integer() => {
                match (x * qi(2)).to_integer() {
                    0 => Complex64::new(1.0, 0.0),
                    1 => Complex64::new(0.0, 1.0),
                    2 => Complex64::new(-1.0, 0.0),
                    _ => Complex64::new(0.0, -1.0),
                }
            }
            e => Complex64::from_polar(1.0, std::f64::consts::PI * e.to_f64()),
        }
    }

    pub fn conj(self) -> PiPhase {
        PiPhase(-self.0)
    }

    pub fn pow(self, k: i64) -> PiPhase {
        PiPhase(self.0.scale(qi(k)))
    }

    /// Exact when the exponent is rational, otherwise tolerance-based.
    pub fn is_one(self) -> bool {
        match self.exponent() {
            Real::Exact(x) => x.is_zero(),
            Real::Approx(_) => (self.value() - 1.0).norm() < PHASE_TOL,
        }
    }

    pub fn eq_phase(self, o: PiPhase) -> bool {
        (self * o.conj()).is_one()
    }

    /// True when the value is real (±1).
    pub fn is_real(self) -> bool {
        self.pow(2).is_one()
    }
}

impl Mul for PiPhase {
    type Output = PiPhase;
    // phases multiply by adding their exponents
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, o: PiPhase) -> PiPhase {
        PiPhase(self.0 + o.0)
    }
}

impl fmt::Display for PiPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^(iπ·{})", self.exponent())
    }
}

/// gcd helper used for reducing clock denominators.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Absolute value for rationals (used in sorting by size).
pub fn qabs(x: Q) -> Q {
    x.abs()
}

pub fn is_one_q(x: &Q) -> bool {
    x.is_one()
}
