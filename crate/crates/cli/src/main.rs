//! `findim`: homological invariants of finite-dimensional algebras from JSON inputs.
//!
//! Every run prints one JSON report (or writes it to `--out`). Exit status is
//! 0 when the command ran and its checks held, 1 when a verification failed
//! and 2 for parse errors and unmet hypotheses.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use findim_core::algebra::SCAlgebra;
use findim_core::endo::{end_algebra, gldim_endo_test, tensor_syzygy_audit};
use findim_core::igusa_todorov::{
    auslander_generator, bound_audit, check_gen_cogen, endo_bound, idealized_bound, omega2_finite_type_probe,
    opposite_pipeline, psi_report, repdim_upper,
};
use findim_core::io::{
    parse_algebra, parse_embedding, parse_module, Algebra, AlgebraFile, EnumerationLimits, ModuleFile,
};
use findim_core::krull_schmidt::{decompose, enumerate_indecomposables, Registry};
use findim_core::module::{hom_basis, ActionModule};
use findim_core::resolution::{findim_rep_finite, gldim, is_projective, proj_dim, syzygy};
use findim_core::Error;

#[derive(Parser)]
#[command(
    name = "findim",
    version,
    about = "Syzygies, endomorphism algebras and finitistic dimension bounds over GF(p)"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Serialize)]
struct Opts {
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Longest resolution or closure computed before giving up.
    #[arg(long, global = true, default_value_t = 20)]
    cutoff: usize,
    /// Number of sampled modules in audits.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    /// Largest dimension enumerated when listing indecomposables.
    #[arg(long = "dim-cap", global = true, default_value_t = 4)]
    dim_cap: usize,
    /// Largest number of candidate representations per dimension vector.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    budget: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    #[serde(skip)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Basis, idempotents and radical of an algebra.
    Build { algebra: PathBuf },
    /// Basis of Hom(X, Y).
    Hom { algebra: PathBuf, x: PathBuf, y: PathBuf },
    /// Krull-Schmidt decomposition.
    Decompose { algebra: PathBuf, module: PathBuf },
    /// Projective dimension.
    Pd { algebra: PathBuf, module: PathBuf },
    /// A syzygy of a module.
    Syzygy {
        algebra: PathBuf,
        module: PathBuf,
        #[arg(long, default_value_t = 1)]
        index: usize,
    },
    /// Global dimension.
    Gldim { algebra: PathBuf },
    /// All indecomposables up to --dim-cap, with the finitistic dimension when complete.
    Enumerate { algebra: PathBuf },
    /// The sum of all indecomposables and the global dimension of its endomorphism algebra.
    Auslander { algebra: PathBuf },
    /// The endomorphism algebra of a module.
    Endo { algebra: PathBuf, module: PathBuf },
    /// Igusa-Todorov functions of a module.
    Psi { algebra: PathBuf, module: PathBuf },
    /// Both sides of the add V coresolution criterion for gd End(V).
    Coresolution {
        algebra: PathBuf,
        v: PathBuf,
        #[arg(long = "n", default_values_t = [0usize, 1])]
        n: Vec<usize>,
    },
    /// Second syzygies over End(M) against Hom(M, Y) on sampled modules.
    TensorSyzygy { algebra: PathBuf, m: PathBuf },
    /// Finitistic dimension bound over End(M) and its sampled audit.
    Bound { algebra: PathBuf, v: PathBuf, m: PathBuf },
    /// The bound over the opposite algebra with dual modules.
    OpBound { algebra: PathBuf, v: PathBuf, m: PathBuf },
    /// Whether rad A is a left ideal of R for an embedding A in R.
    Idealized { embedding: PathBuf },
    /// Indecomposable summands of second syzygies.
    Probe { algebra: PathBuf },
    /// Bound over End(M) for projective M over a left idealized subalgebra.
    IdealizedBound {
        embedding: PathBuf,
        /// Projective module over the subalgebra.
        m: PathBuf,
        /// Module over the ambient algebra.
        v: PathBuf,
        /// Also try the finite-type route using an enumeration of the ambient algebra.
        #[arg(long)]
        probe: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Build { .. } => "build",
            Command::Hom { .. } => "hom",
            Command::Decompose { .. } => "decompose",
            Command::Pd { .. } => "pd",
            Command::Syzygy { .. } => "syzygy",
            Command::Gldim { .. } => "gldim",
            Command::Enumerate { .. } => "enumerate",
            Command::Auslander { .. } => "auslander",
            Command::Endo { .. } => "endo",
            Command::Psi { .. } => "psi",
            Command::Coresolution { .. } => "coresolution",
            Command::TensorSyzygy { .. } => "tensor-syzygy",
            Command::Bound { .. } => "bound",
            Command::OpBound { .. } => "op-bound",
            Command::Idealized { .. } => "idealized",
            Command::Probe { .. } => "probe",
            Command::IdealizedBound { .. } => "idealized-bound",
        }
    }

    fn inputs(&self) -> Vec<&Path> {
        match self {
            Command::Build { algebra }
            | Command::Gldim { algebra }
            | Command::Enumerate { algebra }
            | Command::Auslander { algebra }
            | Command::Probe { algebra } => vec![algebra],
            Command::Hom { algebra, x, y } => vec![algebra, x, y],
            Command::Decompose { algebra, module }
            | Command::Pd { algebra, module }
            | Command::Syzygy { algebra, module, .. }
            | Command::Endo { algebra, module }
            | Command::Psi { algebra, module } => vec![algebra, module],
            Command::Coresolution { algebra, v, .. } => vec![algebra, v],
            Command::TensorSyzygy { algebra, m } => vec![algebra, m],
            Command::Bound { algebra, v, m } | Command::OpBound { algebra, v, m } => vec![algebra, v, m],
            Command::Idealized { embedding } => vec![embedding],
            Command::IdealizedBound { embedding, m, v, .. } => vec![embedding, m, v],
        }
        .into_iter()
        .map(PathBuf::as_path)
        .collect()
    }
}

/// Result of a command: its payload and whether its checks held.
struct Outcome {
    result: Value,
    passed: bool,
}

fn ok(result: Value) -> Outcome {
    Outcome { result, passed: true }
}

struct Failure {
    error: Error,
    /// The file that could not be read, when that is the problem.
    input: Option<PathBuf>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, input: None }
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Run<String> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        error: Error::Parse(format!("{}: {e}", path.display())),
        input: Some(path.to_path_buf()),
    })
}

fn in_file<T>(path: &Path, r: findim_core::Result<T>) -> Run<T> {
    r.map_err(|error| Failure {
        error,
        input: Some(path.to_path_buf()),
    })
}

struct Ctx<'a> {
    opts: &'a Opts,
}

impl Ctx<'_> {
    fn limits(&self) -> EnumerationLimits {
        EnumerationLimits {
            dim_cap: self.opts.dim_cap,
            budget: self.opts.budget as u128,
        }
    }

    fn algebra(&self, path: &Path) -> Run<Algebra> {
        let file = in_file(path, parse_algebra(&read(path)?))?;
        in_file(path, file.load(self.opts.seed))
    }

    fn module(&self, alg: &Algebra, path: &Path) -> Run<ActionModule> {
        let file = in_file(path, parse_module(&read(path)?))?;
        in_file(path, file.load(alg, self.limits()))
    }

    fn registry(&self, a: &Arc<SCAlgebra>) -> Run<Registry> {
        Ok(enumerate_indecomposables(
            a,
            self.opts.dim_cap,
            self.opts.budget as u128,
        )?)
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn module_json(x: &ActionModule) -> Value {
    json!({
        "dim": x.dim(),
        "dim_vector": x.dim_vector(),
        "module": ModuleFile::from_action(x),
    })
}

fn execute(ctx: &Ctx, command: &Command) -> Run<Outcome> {
    let o = ctx.opts;
    match command {
        Command::Build { algebra } => {
            let alg = ctx.algebra(algebra)?;
            let a = alg.sc();
            let mut out = json!({
                "field": a.p(),
                "dim": a.dim(),
                "fingerprint": a.fingerprint(),
                "basis": a.basis_labels(),
                "idempotents": a.idempotents().map(|i| i.elements.len()),
                "radical_dim": a.radical().map(|r| r.cols()),
                "structure_constants": AlgebraFile::from_sc(a),
            });
            if let Some(q) = alg.quiver() {
                out["monomial"] = json!(q.is_monomial());
                out["degree_dims"] = json!(q.degree_dims());
            }
            Ok(ok(out))
        }
        Command::Hom { algebra, x, y } => {
            let alg = ctx.algebra(algebra)?;
            let (x, y) = (ctx.module(&alg, x)?, ctx.module(&alg, y)?);
            let basis = hom_basis(&x, &y)?;
            let rows: Vec<_> = basis.iter().map(|f| f.to_rows()).collect();
            Ok(ok(json!({ "field": alg.sc().p(), "dim": basis.len(), "basis": rows })))
        }
        Command::Decompose { algebra, module } => {
            let alg = ctx.algebra(algebra)?;
            let x = ctx.module(&alg, module)?;
            let d = decompose(&x, o.seed)?;
            let mut classes = Vec::new();
            for c in &d.classes {
                let mut entry = module_json(&c.representative);
                entry["multiplicity"] = json!(c.multiplicity);
                entry["fingerprint"] = to_value(&c.fingerprint);
                entry["projective"] = json!(is_projective(&c.representative)?);
                classes.push(entry);
            }
            Ok(ok(json!({
                "dim": x.dim(),
                "summands": d.summands.len(),
                "indecomposable": d.is_indecomposable(),
                "classes": classes,
            })))
        }
        Command::Pd { algebra, module } => {
            let alg = ctx.algebra(algebra)?;
            let x = ctx.module(&alg, module)?;
            let pd = proj_dim(&x, o.cutoff)?;
            Ok(ok(json!({ "dim": x.dim(), "pd": pd, "display": pd.to_string() })))
        }
        Command::Syzygy { algebra, module, index } => {
            let alg = ctx.algebra(algebra)?;
            let x = ctx.module(&alg, module)?;
            let s = syzygy(&x, *index)?;
            Ok(ok(json!({ "index": index, "syzygy": module_json(&s) })))
        }
        Command::Gldim { algebra } => {
            let alg = ctx.algebra(algebra)?;
            let gd = gldim(alg.sc(), o.cutoff)?;
            Ok(ok(json!({ "gldim": gd, "display": gd.to_string() })))
        }
        Command::Enumerate { algebra } => {
            let alg = ctx.algebra(algebra)?;
            let reg = ctx.registry(alg.sc())?;
            let findim = if reg.complete {
                Some(findim_rep_finite(&reg, o.cutoff)?)
            } else {
                None
            };
            Ok(ok(
                json!({ "count": reg.len(), "registry": reg.to_json(), "findim": findim }),
            ))
        }
        Command::Auslander { algebra } => {
            let alg = ctx.algebra(algebra)?;
            let reg = ctx.registry(alg.sc())?;
            let v = auslander_generator(&reg)?;
            let pkg = end_algebra(&v)?;
            let gd = repdim_upper(&v, o.cutoff)?;
            Ok(ok(json!({
                "classes": reg.len(),
                "generator": module_json(&v),
                "end_dim": pkg.dim(),
                "end_gldim": gd,
                "repdim_upper_bound": gd.to_string(),
            })))
        }
        Command::Endo { algebra, module } => {
            let alg = ctx.algebra(algebra)?;
            let m = ctx.module(&alg, module)?;
            let pkg = end_algebra(&m)?;
            let gd = gldim(&pkg.e, o.cutoff)?;
            let mults: Vec<usize> = pkg.decomposition.classes.iter().map(|c| c.multiplicity).collect();
            Ok(ok(json!({
                "end_dim": pkg.dim(),
                "fingerprint": pkg.e.fingerprint(),
                "summand_multiplicities": mults,
                "radical_dim": pkg.e.radical().map(|r| r.cols()),
                "gldim": gd,
                "generator": findim_core::endo::is_generator(&pkg)?,
                "gen_cogen": check_gen_cogen(&m)?,
                "structure_constants": AlgebraFile::from_sc(&pkg.e),
            })))
        }
        Command::Psi { algebra, module } => {
            let alg = ctx.algebra(algebra)?;
            let x = ctx.module(&alg, module)?;
            let r = psi_report(&x, o.cutoff)?;
            Ok(ok(json!({ "psi": r, "pd": proj_dim(&x, o.cutoff)? })))
        }
        Command::Coresolution { algebra, v, n } => {
            let alg = ctx.algebra(algebra)?;
            let v = ctx.module(&alg, v)?;
            let reg = ctx.registry(alg.sc())?;
            let mut reports = Vec::new();
            let mut passed = true;
            for &k in n {
                let r = gldim_endo_test(&v, &reg, k, o.cutoff)?;
                passed &= r.agree && r.inexact.is_empty();
                reports.push(r);
            }
            Ok(Outcome {
                result: json!({ "registry_size": reg.len(), "scope": "exhaustive over a complete registry", "tests": reports }),
                passed,
            })
        }
        Command::TensorSyzygy { algebra, m } => {
            let alg = ctx.algebra(algebra)?;
            let m = ctx.module(&alg, m)?;
            let r = tensor_syzygy_audit(&end_algebra(&m)?, o.samples, o.seed)?;
            Ok(Outcome {
                passed: r.passed(),
                result: to_value(&r),
            })
        }
        Command::Bound { algebra, v, m } => {
            let alg = ctx.algebra(algebra)?;
            let (v, m) = (ctx.module(&alg, v)?, ctx.module(&alg, m)?);
            let t = endo_bound(&v, &m, o.cutoff)?;
            let r = bound_audit(&v, &m, o.samples, o.seed, o.cutoff)?;
            Ok(Outcome {
                passed: r.passed(),
                result: json!({ "bound": t, "audit": r }),
            })
        }
        Command::OpBound { algebra, v, m } => {
            let alg = ctx.algebra(algebra)?;
            let (v, m) = (ctx.module(&alg, v)?, ctx.module(&alg, m)?);
            let r = opposite_pipeline(&v, &m, o.samples, o.seed, o.cutoff)?;
            Ok(Outcome {
                passed: r.report.passed() && r.end_check.anti_isomorphic,
                result: to_value(&r),
            })
        }
        Command::Idealized { embedding } => {
            let file = in_file(embedding, parse_embedding(&read(embedding)?))?;
            let e = in_file(embedding, file.load(o.seed))?;
            let verdict = e.embedding.idealized_extension_check()?;
            Ok(ok(json!({
                "ambient": e.ambient.fingerprint(),
                "subalgebra": e.sub.fingerprint(),
                "verdict": verdict,
            })))
        }
        Command::Probe { algebra } => {
            let alg = ctx.algebra(algebra)?;
            let reg = ctx.registry(alg.sc())?;
            let r = omega2_finite_type_probe(&reg)?;
            let classes: Vec<Value> = r
                .classes
                .iter()
                .zip(&r.projective)
                .map(|(x, &proj)| {
                    let mut v = module_json(x);
                    v["projective"] = json!(proj);
                    v
                })
                .collect();
            Ok(ok(json!({
                "classes": classes,
                "only_projectives": r.only_projectives(),
                "stabilization": if r.exhaustive { "exhaustive" } else { "empirical only" },
            })))
        }
        Command::IdealizedBound { embedding, m, v, probe } => {
            let file = in_file(embedding, parse_embedding(&read(embedding)?))?;
            let e = in_file(embedding, file.load(o.seed))?;
            let sub = Algebra::Sc(e.sub.clone());
            let ambient = Algebra::Sc(e.ambient.clone());
            let m = ctx.module(&sub, m)?;
            let v = ctx.module(&ambient, v)?;
            let reg = if *probe { Some(ctx.registry(&e.ambient)?) } else { None };
            let r = idealized_bound(&e.embedding, &e.sub, &m, &v, reg.as_ref(), o.samples, o.seed, o.cutoff)?;
            Ok(Outcome {
                passed: r.report.passed(),
                result: to_value(&r),
            })
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) | Error::InvalidQuiver(_) | Error::InvalidRelation { .. } | Error::InvalidAlgebra(_) => "parse",
        Error::InvalidModule(_) | Error::RelationViolation { .. } | Error::InvalidEmbedding(_) | Error::NotPrime(_) => {
            "parse"
        }
        Error::Hypothesis(_) | Error::NotGenerator | Error::NotGenCogen | Error::NotInAdd(_) => "hypothesis",
        Error::IncompleteRegistry(_) | Error::BudgetExceeded { .. } | Error::CutoffExceeded { .. } => "limit",
        _ => "computation",
    }
}

/// The inputs as they were read: parsed JSON when possible, raw text otherwise.
fn input_dump(paths: &[&Path]) -> BTreeMap<String, Value> {
    paths
        .iter()
        .map(|p| {
            let v = match std::fs::read_to_string(p) {
                Ok(text) => serde_json::from_str(&text).unwrap_or(Value::String(text)),
                Err(e) => Value::String(format!("unreadable: {e}")),
            };
            (p.display().to_string(), v)
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { opts: &cli.opts };
    let inputs = cli.command.inputs();
    let mut report = json!({
        "tool": "findim",
        "version": env!("CARGO_PKG_VERSION"),
        "command": cli.command.name(),
        "config": cli.opts,
        "inputs": inputs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
    });
    let code = match execute(&ctx, &cli.command) {
        Ok(out) => {
            report["status"] = json!(if out.passed { "ok" } else { "verification_failed" });
            report["result"] = out.result;
            if out.passed {
                0
            } else {
                1
            }
        }
        Err(f) => {
            report["status"] = json!("error");
            let offending: Vec<&Path> = match &f.input {
                Some(p) => vec![p.as_path()],
                None => inputs.clone(),
            };
            report["error"] = json!({
                "kind": error_kind(&f.error),
                "message": f.error.to_string(),
                "offending_inputs": input_dump(&offending),
            });
            2
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    match &cli.opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
