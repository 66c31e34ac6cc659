//! The symbolic matrix Harper operator over the noncommutative torus and the
//! symmetry representation ρ, built from a quotient graph, a rooted spanning
//! tree and a constant magnetic field.
//!
//! Magnetic translations satisfy `U_m U_{m'} = α(m,m') U_{m+m'}`. With tree
//! paths `p_v`, the entry of H at `(w, v)` collects `U_{p_w}^* U_e U_{p_v}`
//! over the edges `e: v → w`, which is `c·U_l` with `l = −p_w + e + p_v` and
//! `c = α(−p_w, e)·α(e − p_w, p_v)`. Each `U_l` is then written in canonical
//! generators `G_i = s_i U_{g_i}`, whose scalars `s_i` are fixed by the
//! preset and the field (never by the tree), so that the default tree gives
//! the familiar matrices and other trees give conjugate ones.

use num_complex::Complex64;
use serde::Serialize;

use crate::exact::*;
use crate::lattice_graph::{
    bcc_g, maximal, spanning_tree, Preset, QuotientGraph, RootedSpanningTree, TreeChoice,
};
use crate::magnetic::{
    cocycle, gyroid_e, gyroid_params, honeycomb_params, PhaseParams, SkewForm,
};
use crate::torus_poly::{Exps, ThetaSpec, TorusElement, TorusMatrix};
use crate::Error;

/// Lattice basis `g_i` behind the canonical generators of each preset.
pub fn canonical_basis(p: Preset) -> Vec<QVec> {
    match p {
        Preset::Zn(n) => (0..n).map(|i| (0..n).map(|j| qi((i == j) as i64)).collect()).collect(),
        Preset::Triangular => vec![qvec(&[(1, 1), (0, 1)]), qvec(&[(0, 1), (1, 1)])],
        // f2 = e2 − e1, f3 = e3 − e1
        Preset::Honeycomb => vec![qvec(&[(1, 1), (1, 1)]), qvec(&[(2, 1), (-1, 1)])],
        Preset::Gyroid => bcc_g(),
    }
}

/// Display names of the canonical generators.
pub fn generator_names(p: Preset) -> Vec<String> {
    let n = match p {
        Preset::Zn(n) => n,
        Preset::Triangular | Preset::Honeycomb => 2,
        Preset::Gyroid => return vec!["A".into(), "B".into(), "C".into()],
    };
    if n <= 3 {
        ["U", "V", "W"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("U{i}")).collect()
    }
}

/// Skew form realizing the phase entries θ_ij on the canonical basis, i.e.
/// `G_iG_j = e^{2πiθ_ij} G_jG_i`. For the honeycomb this is `φ = −θ/3`.
pub fn field_from_theta(p: Preset, theta: &[Real]) -> Result<SkewForm, Error> {
    let basis = canonical_basis(p);
    if basis.len() == 1 {
        if !theta.is_empty() {
            return Err(Error::Validation("a single generator takes no phase entries".into()));
        }
        return Ok(SkewForm::zero(1));
    }
    SkewForm::from_theta(&basis, theta)
}

/// Phase entries θ_ij on the canonical basis for a given field.
pub fn theta_of(p: Preset, field: &SkewForm) -> ThetaSpec {
    let g = canonical_basis(p);
    let n = g.len();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            entries.push(field.eval(&g[i], &g[j]).scale(q(1, 2)));
        }
    }
    ThetaSpec { n, entries }
}

/// Scalars `s_i` with `G_i = s_i U_{g_i}`, read off from the anchor edges of
/// the default tree: for the gyroid `C→B`, `B→D`, `D→C` (giving a′, b′, c′),
/// for the honeycomb `e2` and `e3` (giving χ and χ̄).
pub fn anchor_scalars(p: Preset, field: &SkewForm) -> Result<Vec<PiPhase>, Error> {
    Ok(match p {
        Preset::Zn(n) => vec![PiPhase::one(); n],
        Preset::Triangular => vec![PiPhase::one(); 2],
        Preset::Honeycomb => {
            let h = honeycomb_params(field)?;
            vec![h.chi, h.chi.conj()]
        }
        Preset::Gyroid => {
            let g = gyroid_params(field)?;
            vec![g.a_prime, g.b_prime, g.c_prime]
        }
    })
}

#[derive(Clone, Debug)]
pub struct HarperModel {
    pub preset: Preset,
    pub quotient: QuotientGraph,
    pub tree: RootedSpanningTree,
    pub field: SkewForm,
    /// Lattice basis `g_i`.
    pub basis: Vec<QVec>,
    /// `G_i = s_i U_{g_i}`.
    pub scalars: Vec<PiPhase>,
    pub theta: ThetaSpec,
    pub names: Vec<String>,
    pub h: TorusMatrix,
    /// ρ on the canonical generators.
    pub rho: Vec<TorusMatrix>,
    pub params: Option<PhaseParams>,
}

/// Build the Harper model on the maximal quotient.
pub fn build(p: Preset, field: &SkewForm, tree: &TreeChoice) -> Result<HarperModel, Error> {
    let qg = maximal(p)?;
    if field.dim != qg.ambient_dim {
        return Err(Error::Validation(format!(
            "{} needs a {}-dimensional field, got {}",
            p, qg.ambient_dim, field.dim
        )));
    }
    let t = spanning_tree(&qg, tree)?;
    let basis = canonical_basis(p);
    let scalars = anchor_scalars(p, field)?;
    let theta = theta_of(p, field);
    let params = match p {
        Preset::Honeycomb => Some(PhaseParams::Honeycomb(honeycomb_params(field)?)),
        Preset::Gyroid => Some(PhaseParams::Gyroid(gyroid_params(field)?)),
        _ => None,
    };
    let mut m = HarperModel {
        preset: p,
        quotient: qg,
        tree: t,
        field: field.clone(),
        basis,
        scalars,
        theta: theta.clone(),
        names: generator_names(p),
        h: TorusMatrix::zeros(&theta, 0),
        rho: Vec::new(),
        params,
    };
    m.h = m.harper_matrix()?;
    m.rho = (0..m.basis.len()).map(|i| m.rho_generator(i)).collect::<Result<_, _>>()?;
    Ok(m)
}

/// Convenience: default tree, field given by θ on the canonical basis.
pub fn build_theta(p: Preset, theta: &[Real]) -> Result<HarperModel, Error> {
    build(p, &field_from_theta(p, theta)?, &TreeChoice::Default)
}

#[derive(Clone, Debug, Serialize)]
pub struct DisplacementCheck {
    pub generator: String,
    pub word: String,
    pub displacement: Vec<String>,
    pub expected: Vec<String>,
    pub ok: bool,
}

impl HarperModel {
    pub fn k(&self) -> usize {
        self.quotient.n_vertices()
    }

    fn alpha(&self, m: &[Q], mp: &[Q]) -> Result<PiPhase, Error> {
        cocycle(&self.field, m, mp)
    }

    /// `U_l = c·G^n` with `G^n = G₁^{n₁}···G_r^{n_r}`; returns `(n, c)`.
    pub fn translation(&self, l: &[Q]) -> Result<(Exps, PiPhase), Error> {
        let n = lattice_coords(&self.basis, l).ok_or_else(|| {
            Error::Validation(format!("{:?} is not a lattice vector", fmt_qvec(l)))
        })?;
        // G^n = s^n·κ·U_l, κ = Π_k α(Σ_{i<k} n_i g_i, n_k g_k)
        let mut kappa = PiPhase::one();
        let mut acc = vzero(self.field.dim);
        for (k, &nk) in n.iter().enumerate() {
            let step = vscale(&self.basis[k], qi(nk));
            kappa = kappa * self.alpha(&acc, &step)?;
            acc = vadd(&acc, &step);
        }
        let mut s = PiPhase::one();
        for (si, &ni) in self.scalars.iter().zip(&n) {
            s = s * si.pow(ni);
        }
        Ok((n.iter().map(|&x| x as i32).collect(), (s * kappa).conj()))
    }

    /// Magnetic translation `U_l` as a torus element.
    pub fn translation_element(&self, l: &[Q]) -> Result<TorusElement, Error> {
        let (n, c) = self.translation(l)?;
        Ok(TorusElement::monomial(&self.theta, n, c.value()))
    }

    /// Monomial and phase of the entry contributed by directed edge `id`.
    pub fn edge_term(&self, id: usize) -> Result<(usize, usize, Exps, PiPhase), Error> {
        let e = &self.quotient.directed_edges[id];
        let (v, w) = (e.tail, e.head);
        let pv = &self.tree.paths[v];
        let pw = &self.tree.paths[w];
        let l = vadd(&vsub(&e.disp, pw), pv);
        let c = self.alpha(&vneg(pw), &e.disp)? * self.alpha(&vsub(&e.disp, pw), pv)?;
        let (n, s) = self.translation(&l)?;
        Ok((w, v, n, c * s))
    }

    fn harper_matrix(&self) -> Result<TorusMatrix, Error> {
        let k = self.k();
        let mut h = TorusMatrix::zeros(&self.theta, k);
        for id in 0..self.quotient.directed_edges.len() {
            let (w, v, n, c) = self.edge_term(id)?;
            let term = TorusElement::monomial(&self.theta, n, c.value());
            let cur = h.get(w, v).clone();
            h.set(w, v, &cur + &term);
        }
        Ok(h)
    }

    /// Diagonal phases of ρ(G_i): `e^{iπ·w(g_i, p_v)}` at vertex v.
    pub fn lambda(&self, i: usize) -> Vec<PiPhase> {
        self.tree
            .paths
            .iter()
            .map(|p| PiPhase(self.field.eval(&self.basis[i], p)))
            .collect()
    }

    fn rho_generator(&self, i: usize) -> Result<TorusMatrix, Error> {
        let g = TorusElement::generator(&self.theta, i);
        Ok(TorusMatrix::diag(
            &self.theta,
            self.lambda(i).iter().map(|ph| g.scale(ph.value())).collect(),
        ))
    }

    /// ρ extended multiplicatively: `ρ(Σ c G^a) = Σ c Π ρ(G_i)^{a_i}`.
    pub fn rho_of(&self, x: &TorusElement) -> TorusMatrix {
        let k = self.k();
        let pow = |i: usize, e: i32| {
            let base = if e >= 0 { self.rho[i].clone() } else { self.rho[i].adjoint() };
            let mut m = TorusMatrix::identity(&self.theta, k);
            for _ in 0..e.unsigned_abs() {
                m = &m * &base;
            }
            m
        };
        x.substitute(
            TorusMatrix::zeros(&self.theta, k),
            TorusMatrix::identity(&self.theta, k),
            pow,
            |a, b| a * b,
            |acc, m, c| acc + &m.scale(c),
        )
    }

    /// ρ of a word in the generators and their adjoints, e.g. `"A B*"`.
    pub fn rho_word(&self, word: &str) -> Result<TorusMatrix, Error> {
        Ok(self.rho_of(&self.word(word)?))
    }

    /// Parse a monomial word such as `"A B*"` or `"U V^2"` into an element.
    pub fn word(&self, word: &str) -> Result<TorusElement, Error> {
        let mut x = TorusElement::one(&self.theta);
        for tok in word.split_whitespace() {
            let (body, power) = match tok.split_once('^') {
                Some((b, p)) => (
                    b,
                    p.parse::<i32>().map_err(|_| Error::Parse(format!("bad power in {tok:?}")))?,
                ),
                None => (tok, 1),
            };
            let (name, sign) = match body.strip_suffix('*') {
                Some(n) => (n, -1),
                None => (body, 1),
            };
            let i = self
                .names
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
            x = &x * &TorusElement::generator(&self.theta, i).pow(sign * power);
        }
        Ok(x)
    }

    /// `Λ_i Λ_j^*` as diagonal phases.
    pub fn lambda_ratio(&self, i: usize, j: usize) -> Vec<PiPhase> {
        self.lambda(i).iter().zip(self.lambda(j)).map(|(a, b)| *a * b.conj()).collect()
    }

    /// Exact check that the gyroid generator edge words land on g₁, g₂, g₃:
    /// A ↦ −e1−e6+e2, B ↦ −e3−e5+e1, C ↦ −e2+e4+e3.
    pub fn verify_displacements(&self) -> Result<Vec<DisplacementCheck>, Error> {
        if self.preset != Preset::Gyroid {
            return Err(Error::Validation("displacement check is defined for the gyroid".into()));
        }
        Ok(gyroid_displacements())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vname = |v: usize| self.quotient.vertices[v].clone();
        serde_json::json!({
            "preset": self.preset.name(),
            "vertices": self.quotient.vertices,
            "tree": {
                "root": vname(self.tree.root),
                "edges": self.tree.edges.iter().map(|&k| self.quotient.directed_edges[2 * k].name.clone()).collect::<Vec<_>>(),
                "paths": self.tree.paths.iter().map(|p| fmt_qvec(p)).collect::<Vec<_>>(),
            },
            "generators": self.names,
            "theta": self.theta.labels(),
            "scalars": self.scalars.iter().map(|s| s.exponent().label()).collect::<Vec<_>>(),
            "H": self.h.to_json(&self.names),
            "rho": self.names.iter().zip(&self.rho).map(|(n, r)| serde_json::json!({"generator": n, "matrix": r.to_json(&self.names)})).collect::<Vec<_>>(),
            "params": self.params,
        })
    }
}

/// The three gyroid displacement identities, computed from the edge vectors.
pub fn gyroid_displacements() -> Vec<DisplacementCheck> {
    let e = gyroid_e();
    let g = bcc_g();
    type Word = (&'static str, &'static str, [(usize, i64); 3]);
    let words: [Word; 3] = [
        ("A", "-e1 -e6 e2", [(0, -1), (5, -1), (1, 1)]),
        ("B", "-e3 -e5 e1", [(2, -1), (4, -1), (0, 1)]),
        ("C", "-e2 e4 e3", [(1, -1), (3, 1), (2, 1)]),
    ];
    words
        .iter()
        .enumerate()
        .map(|(i, (name, word, terms))| {
            let mut d = vzero(3);
            for &(k, s) in terms {
                d = vadd(&d, &vscale(&e[k], qi(s)));
            }
            DisplacementCheck {
                generator: name.to_string(),
                word: word.to_string(),
                displacement: fmt_qvec(&d),
                expected: fmt_qvec(&g[i]),
                ok: d == g[i],
            }
        })
        .collect()
}

/// Phase list as complex numbers.
pub fn phases_to_complex(ph: &[PiPhase]) -> Vec<Complex64> {
    ph.iter().map(|p| p.value()).collect()
}
