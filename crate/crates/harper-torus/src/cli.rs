//! Command-line front end. Every command writes one JSON document or one CSV
//! file whose first line is `# ` followed by the header object
//! `{command, config, artifact_version}`. With `--out DIR` the output goes to
//! `DIR/<command>.json` or `DIR/<command>.csv`, otherwise to stdout.
//!
//! Exit codes: 0 on success, 2 on invalid input, 3 when a case hypothesis is
//! violated or a verification fails.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra_gen::{self, bh_report, replay_proof_chain};
use crate::exact::*;
use crate::harper_model::{build, canonical_basis, field_from_theta, gyroid_displacements, HarperModel};
use crate::lattice_graph::{
    basis_loops, cycle_rank, enumerate_minimal_lifting_loops_bounded, maximal, preset, spanning_tree,
    Preset, TreeChoice,
};
use crate::magnetic::{effective_normal, SkewForm};
use crate::nct_rep::build_rep;
use crate::spectral::{
    butterfly, default_resolution, detect_gaps, farey_path, gap_labels, gaps_stable, persistent_gaps, sample_spectrum, Gap,
    theta_f64, write_butterfly_csv,
};
use crate::Error;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug, Serialize)]
#[command(name = "harper-torus", version, about = "Periodic wire networks, Harper operators and their algebras")]
pub struct Cli {
    /// Directory for output files (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Graph descriptions.
    Lattice {
        #[command(subcommand)]
        action: LatticeAction,
    },
    /// Minimal lifting loops at a base vertex.
    Loops {
        preset: String,
        /// Base vertex name (default: the first vertex).
        #[arg(long)]
        base: Option<String>,
        #[arg(long, default_value_t = 32)]
        max_len: usize,
    },
    /// Symbolic Harper operator and symmetry representation.
    Harper {
        preset: String,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        tree: TreeArgs,
    },
    /// Band rows over a character or twist grid.
    Spectrum {
        preset: String,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        tree: TreeArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Hofstadter-style sweep over a Farey path of fluxes.
    Butterfly {
        preset: String,
        #[arg(long, default_value_t = 8)]
        q_max: i64,
        /// Integer direction `c_ij`, so that θ_ij = t·c_ij (default all 1).
        #[arg(long)]
        direction: Option<String>,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Gaps, integrated density of states and gap labels.
    Gaps {
        preset: String,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        /// Gap resolution (default 1e-3 times the spectral width).
        #[arg(long)]
        resolution: Option<f64>,
        #[arg(long, default_value_t = 10)]
        n_bound: i64,
        /// Keep gaps persisting at twice the grid and check that set is stable
        /// at the next doubling.
        #[arg(long)]
        refine: bool,
    },
    /// Generated-algebra dimension at a representation.
    CheckAlgebra {
        /// Preset (ignored by the clifford and ramified checks).
        preset: Option<String>,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = AlgebraCheck::Bh)]
        check: AlgebraCheck,
        /// Twist angles in radians, comma separated (default all 0).
        #[arg(long)]
        twist: Option<String>,
        /// Character grid indices m_i (angles 2π m_i / char-grid).
        #[arg(long)]
        character: Option<String>,
        #[arg(long, default_value_t = 3)]
        char_grid: usize,
        /// Seed of the random probe used for large matrices.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Replay the elementary-matrix chain of the model's case.
    VerifyProps {
        preset: String,
        #[command(flatten)]
        field: FieldArgs,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeAction {
    /// Embedding, quotient, default tree and basis loops.
    Describe { preset: String },
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraCheck {
    Bh,
    Clifford,
    Ramified,
}

#[derive(Args, Debug, Serialize, Default)]
pub struct FieldArgs {
    /// Field in radian-phase units: `bx,by,bz` in 3d, a single value in 2d.
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Phase entries θ_ij (i<j) as rationals `p/q`, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Honeycomb φ as a rational (θ = −3φ).
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<String>,
}

#[derive(Args, Debug, Serialize, Default)]
pub struct TreeArgs {
    /// Root vertex of an explicit spanning tree.
    #[arg(long)]
    pub tree_root: Option<String>,
    /// Undirected edge names of an explicit spanning tree, e.g. `e1,e2,e3`.
    #[arg(long)]
    pub tree_edges: Option<String>,
}

#[derive(Args, Debug, Serialize, Default)]
pub struct SamplingArgs {
    /// Grid size per dimension (default 32 for n ≤ 2, 8 for n = 3).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Seed for additional pseudo-random twists.
    #[arg(long)]
    pub twist_seed: Option<u64>,
    /// Number of seeded random twists added to the grid.
    #[arg(long, default_value_t = 0)]
    pub random_samples: usize,
}

/// One output document.
#[derive(Debug)]
pub struct Output {
    pub name: String,
    pub body: String,
    /// Verification outcome for `verify-props`.
    pub failed: bool,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Lattice { .. } => "lattice-describe",
        Command::Loops { .. } => "loops",
        Command::Harper { .. } => "harper",
        Command::Spectrum { .. } => "spectrum",
        Command::Butterfly { .. } => "butterfly",
        Command::Gaps { .. } => "gaps",
        Command::CheckAlgebra { .. } => "check-algebra",
        Command::VerifyProps { .. } => "verify-props",
    }
}

fn header(cli: &Cli) -> Value {
    json!({
        "command": command_name(&cli.command),
        "config": serde_json::to_value(cli).unwrap_or(Value::Null),
        "artifact_version": ARTIFACT_VERSION,
    })
}

fn parse_preset(s: &str) -> Result<Preset, Error> {
    s.parse()
}

fn split(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty())
}

fn parse_floats(s: &str) -> Result<Vec<f64>, Error> {
    split(s)
        .map(|x| x.parse::<f64>().map_err(|_| Error::Parse(format!("not a number: {x:?}"))))
        .collect()
}

fn parse_rationals(s: &str) -> Result<Vec<Q>, Error> {
    split(s).map(parse_rational).collect()
}

/// Skew form from the field flags (zero field when none is given).
pub fn field_from_args(p: Preset, f: &FieldArgs) -> Result<SkewForm, Error> {
    let given = [f.b.is_some(), f.theta.is_some(), f.phi.is_some()].iter().filter(|x| **x).count();
    if given > 1 {
        return Err(Error::Validation("give at most one of --B, --theta, --phi".into()));
    }
    let dim = canonical_basis(p).first().map_or(1, |v| v.len());
    if let Some(b) = &f.b {
        let v = parse_floats(b)?;
        return match (dim, v.len()) {
            (3, 3) => Ok(SkewForm::from_field([v[0], v[1], v[2]])),
            (2, 1) => {
                let x = Real::Approx(v[0] / std::f64::consts::PI);
                SkewForm::from_pi_matrix(vec![vec![Real::zero(), x], vec![-x, Real::zero()]])
            }
            (1, _) => Err(Error::Validation("a one-dimensional lattice carries no field".into())),
            _ => Err(Error::Validation(format!("--B needs {} component(s) in dimension {dim}", dim * (dim - 1) / 2))),
        };
    }
    if let Some(phi) = &f.phi {
        if p != Preset::Honeycomb {
            return Err(Error::Validation("--phi applies to the honeycomb only".into()));
        }
        return Ok(SkewForm::honeycomb_phi(Real::Exact(parse_rational(phi)?)));
    }
    let n = canonical_basis(p).len();
    let theta: Vec<Real> = match &f.theta {
        Some(t) => parse_rationals(t)?.into_iter().map(Real::Exact).collect(),
        None => vec![Real::zero(); n * (n - 1) / 2],
    };
    field_from_theta(p, &theta)
}

fn tree_from_args(p: Preset, t: &TreeArgs) -> Result<TreeChoice, Error> {
    match (&t.tree_root, &t.tree_edges) {
        (None, None) => Ok(TreeChoice::Default),
        (root, Some(edges)) => {
            let q = maximal(p)?;
            let root = match root {
                Some(r) => q.vertex_index(r).ok_or_else(|| Error::Validation(format!("unknown vertex {r:?}")))?,
                None => 0,
            };
            let edges = split(edges)
                .map(|e| {
                    q.edge_by_name(e)
                        .map(|id| id / 2)
                        .ok_or_else(|| Error::Validation(format!("unknown edge {e:?}")))
                })
                .collect::<Result<_, _>>()?;
            Ok(TreeChoice::Explicit { root, edges })
        }
        (Some(_), None) => Err(Error::Validation("--tree-root needs --tree-edges".into())),
    }
}

fn model(p: &str, f: &FieldArgs, t: &TreeArgs) -> Result<HarperModel, Error> {
    let p = parse_preset(p)?;
    build(p, &field_from_args(p, f)?, &tree_from_args(p, t)?)
}

fn default_grid(n: usize) -> usize {
    if n <= 2 {
        32
    } else {
        8
    }
}

fn samples(n: usize, s: &SamplingArgs) -> Result<Vec<Vec<f64>>, Error> {
    let grid = s.grid.unwrap_or_else(|| default_grid(n));
    if grid == 0 {
        return Err(Error::Validation("grid size must be at least 1".into()));
    }
    let mut pts = crate::nct_rep::grid_points(n, grid);
    if s.random_samples > 0 {
        let seed = s
            .twist_seed
            .ok_or_else(|| Error::Validation("--random-samples needs --twist-seed".into()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..s.random_samples {
            pts.push((0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect());
        }
    }
    Ok(pts)
}

fn json_doc(h: &Value, body: Value) -> String {
    let mut doc = serde_json::Map::new();
    doc.insert("header".into(), h.clone());
    if let Value::Object(m) = body {
        doc.extend(m);
    } else {
        doc.insert("result".into(), body);
    }
    serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable") + "\n"
}

fn csv_doc(h: &Value, write: impl FnOnce(&mut Vec<u8>) -> Result<(), Error>) -> Result<String, Error> {
    let mut buf = format!("# {}\n", serde_json::to_string(h).expect("serializable")).into_bytes();
    write(&mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Parse(e.to_string()))
}

/// Runs one parsed command and returns its output document.
pub fn execute(cli: &Cli) -> Result<Output, Error> {
    let h = header(cli);
    let name = command_name(&cli.command).to_string();
    let mut failed = false;
    let (ext, body) = match &cli.command {
        Command::Lattice { action: LatticeAction::Describe { preset: ps } } => {
            let p = parse_preset(ps)?;
            let g = preset(p)?;
            g.validate()?;
            let q = maximal(p)?;
            let t = spanning_tree(&q, &TreeChoice::Default)?;
            let bl = basis_loops(&q, &t);
            let mut body = json!({
                "preset": p.name(),
                "embedded": g.to_json(),
                "quotient": q.to_json(),
                "tree": {
                    "root": q.vertices[t.root],
                    "edges": t.edges.iter().map(|&k| q.directed_edges[2 * k].name.clone()).collect::<Vec<_>>(),
                    "paths": t.paths.iter().map(|v| fmt_qvec(v)).collect::<Vec<_>>(),
                },
                "cycle_rank": cycle_rank(&q, &t),
                "basis_loops": bl.loops.iter().map(|l| json!({
                    "word": l.word.format(&q),
                    "vector": fmt_qvec(&l.vector),
                })).collect::<Vec<_>>(),
                "basis_loops_independent": bl.independent,
                "generators": canonical_basis(p).iter().map(|v| fmt_qvec(v)).collect::<Vec<_>>(),
            });
            if p == Preset::Gyroid {
                body["displacements"] = serde_json::to_value(gyroid_displacements()).expect("serializable");
            }
            ("json", json_doc(&h, body))
        }
        Command::Loops { preset: ps, base, max_len } => {
            let p = parse_preset(ps)?;
            let q = maximal(p)?;
            let b = match base {
                Some(v) => q.vertex_index(v).ok_or_else(|| Error::Validation(format!("unknown vertex {v:?}")))?,
                None => 0,
            };
            let loops = enumerate_minimal_lifting_loops_bounded(&q, b, *max_len);
            let entries: Vec<Value> = loops
                .iter()
                .map(|w| {
                    let n_eff = effective_normal(&q, w).ok().map(|v| fmt_qvec(&v));
                    json!({ "word": w.format(&q), "length": w.len(), "n_eff": n_eff })
                })
                .collect();
            let body = json!({
                "preset": p.name(),
                "base": q.vertices[b],
                "count": loops.len(),
                "undirected_count": loops.len() / 2,
                "length": loops.first().map(|w| w.len()),
                "loops": entries,
            });
            ("json", json_doc(&h, body))
        }
        Command::Harper { preset: ps, field, tree } => {
            let m = model(ps, field, tree)?;
            ("json", json_doc(&h, m.to_json()))
        }
        Command::Spectrum { preset: ps, field, tree, sampling } => {
            let m = model(ps, field, tree)?;
            let pts = samples(m.theta.n, sampling)?;
            let s = sample_spectrum(&m, &pts)?;
            ("csv", csv_doc(&h, |buf| s.write_band_csv(buf))?)
        }
        Command::Butterfly { preset: ps, q_max, direction, grid } => {
            let p = parse_preset(ps)?;
            let n = canonical_basis(p).len();
            let pairs = n * (n - 1) / 2;
            if pairs == 0 {
                return Err(Error::Validation("a butterfly needs at least two generators".into()));
            }
            if *q_max < 1 {
                return Err(Error::Validation("q_max must be at least 1".into()));
            }
            let dir: Vec<i64> = match direction {
                Some(d) => split(d)
                    .map(|x| x.parse::<i64>().map_err(|_| Error::Parse(format!("not an integer: {x:?}"))))
                    .collect::<Result<_, _>>()?,
                None => vec![1; pairs],
            };
            if dir.len() != pairs {
                return Err(Error::Validation(format!("direction needs {pairs} entries")));
            }
            let rows = butterfly(p, &farey_path(*q_max), &dir, *q_max, grid.unwrap_or_else(|| default_grid(n)))?;
            ("csv", csv_doc(&h, |buf| write_butterfly_csv(&rows, buf))?)
        }
        Command::Gaps { preset: ps, field, sampling, resolution, n_bound, refine } => {
            let m = model(ps, field, &TreeArgs::default())?;
            let pts = samples(m.theta.n, sampling)?;
            let s = sample_spectrum(&m, &pts)?;
            let delta = resolution.unwrap_or_else(|| default_resolution(&s));
            if delta <= 0.0 {
                return Err(Error::Validation("resolution must be positive".into()));
            }
            let gaps = detect_gaps(&s, delta);
            let th = theta_f64(&m);
            let labels = gap_labels(&gaps, &th, *n_bound);
            let mut body = json!({
                "preset": m.preset.name(),
                "theta": m.theta.labels(),
                "k": s.k,
                "d": s.d,
                "samples": s.sample_count(),
                "resolution": delta,
                "gap_count": labels.len(),
                "gaps": labels,
            });
            if *refine {
                // Gaps at grid g are those persisting at 2g; stability compares
                // that set with the gaps at 2g persisting at 4g.
                let base = sampling.grid.unwrap_or_else(|| default_grid(m.theta.n));
                let sweep = |g: usize| -> Result<Vec<Gap>, Error> {
                    let args = SamplingArgs {
                        grid: Some(g),
                        twist_seed: sampling.twist_seed,
                        random_samples: sampling.random_samples,
                    };
                    Ok(detect_gaps(&sample_spectrum(&m, &samples(m.theta.n, &args)?)?, delta))
                };
                let g2 = sweep(2 * base)?;
                let g4 = sweep(4 * base)?;
                let kept = persistent_gaps(&gaps, &g2);
                let kept_fine = persistent_gaps(&g2, &g4);
                body["persistent_gap_count"] = json!(kept.len());
                body["persistent_gaps"] = json!(gap_labels(&kept, &th, *n_bound));
                body["refined_persistent_gap_count"] = json!(kept_fine.len());
                body["stable"] = json!(gaps_stable(&kept, &kept_fine));
            }
            ("json", json_doc(&h, body))
        }
        Command::CheckAlgebra { preset: ps, field, check, twist, character, char_grid, seed } => match check {
            AlgebraCheck::Clifford => {
                let r = algebra_gen::clifford_point_check()?;
                failed = !r.ok;
                ("json", json_doc(&h, serde_json::to_value(r).expect("serializable")))
            }
            AlgebraCheck::Ramified => {
                let r = algebra_gen::ramified_ideal_check(*char_grid)?;
                failed = !r.ok;
                ("json", json_doc(&h, serde_json::to_value(r).expect("serializable")))
            }
            AlgebraCheck::Bh => {
                let ps = ps.as_deref().ok_or_else(|| Error::Validation("check-algebra bh needs a preset".into()))?;
                let m = model(ps, field, &TreeArgs::default())?;
                let n = m.theta.n;
                let k = match (twist, character) {
                    (Some(_), Some(_)) => return Err(Error::Validation("give --twist or --character, not both".into())),
                    (Some(t), None) => parse_floats(t)?,
                    (None, Some(c)) => {
                        if *char_grid == 0 {
                            return Err(Error::Validation("char-grid must be at least 1".into()));
                        }
                        split(c)
                            .map(|x| {
                                x.parse::<i64>()
                                    .map(|mi| std::f64::consts::TAU * mi as f64 / *char_grid as f64)
                                    .map_err(|_| Error::Parse(format!("not an integer: {x:?}")))
                            })
                            .collect::<Result<_, _>>()?
                    }
                    (None, None) => vec![0.0; n],
                };
                let rep = build_rep(&m.theta, &k)?;
                let r = bh_report(&m, &rep, *seed)?;
                ("json", json_doc(&h, serde_json::to_value(r).expect("serializable")))
            }
        },
        Command::VerifyProps { preset: ps, field } => {
            let m = model(ps, field, &TreeArgs::default())?;
            let r = replay_proof_chain(&m)?;
            failed = !r.ok;
            let mut body = serde_json::to_value(&r).expect("serializable");
            body["status"] = json!(if r.ok { "pass" } else { "fail" });
            ("json", json_doc(&h, body))
        }
    };
    Ok(Output { name: format!("{name}.{ext}"), body, failed })
}

fn error_report(h: &Value, e: &Error) -> String {
    let kind = match e {
        Error::Parse(_) => "parse",
        Error::Validation(_) => "validation",
        Error::UnknownPreset(_) => "unknown-preset",
        Error::ThetaMismatch => "theta-mismatch",
        Error::NonRational => "non-rational",
        Error::Hypothesis(_) => "hypothesis",
        Error::Assertion(_) => "assertion",
        Error::Io(_) => "io",
    };
    json_doc(h, json!({ "error": { "kind": kind, "message": e.to_string() } }))
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Hypothesis(_) | Error::Assertion(_) => 3,
        _ => 2,
    }
}

fn emit(out: &Option<PathBuf>, name: &str, body: &str) -> Result<(), Error> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(name), body)?;
        }
        None => print!("{body}"),
    }
    Ok(())
}

/// Parses `argv` (including the program name), runs the command, writes the
/// output and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            if let Err(e) = emit(&cli.out, &o.name, &o.body) {
                eprintln!("{e}");
                return 2;
            }
            if o.failed {
                eprintln!("verification failed");
                3
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("{e}");
            let report = error_report(&header(&cli), &e);
            let _ = emit(&cli.out, "error.json", &report);
            exit_code(&e)
        }
    }
}
