//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Inputs come from the bundled `corpus/` files, so the file formats are
//! exercised along with the algorithms.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;

use findim_core::algebra::{radical_by_enumeration, radical_sc, SCAlgebra};
use findim_core::endo::{end_algebra, gldim_endo_test, tensor_syzygy_audit};
use findim_core::igusa_todorov::{
    bound_audit, endo_bound, harvest_sequences, idealized_bound, omega2_finite_type_probe, opposite_pipeline, phi, psi,
    sample_seed, IdealizedRoute,
};
use findim_core::io::{parse_algebra, parse_embedding, parse_module, Algebra, EnumerationLimits, LoadedEmbedding};
use findim_core::krull_schmidt::{enumerate_indecomposables, Registry};
use findim_core::linalg::{span_sum, FieldMat};
use findim_core::module::{direct_sum, power, ActionModule};
use findim_core::resolution::{findim_rep_finite, gldim, proj_dim, simples, PdResult};

const CUTOFF: usize = 20;
const SAMPLES: usize = 100;
const LIMITS: EnumerationLimits = EnumerationLimits {
    dim_cap: 4,
    budget: 1 << 24,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn corpus(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel)
}

fn algebra(name: &str) -> Algebra {
    let text = std::fs::read_to_string(corpus(&format!("algebras/{name}.json"))).unwrap();
    parse_algebra(&text).unwrap().load(0).unwrap()
}

fn module(alg: &Algebra, name: &str) -> ActionModule {
    let text = std::fs::read_to_string(corpus(&format!("modules/{name}.json"))).unwrap();
    parse_module(&text).unwrap().load(alg, LIMITS).unwrap()
}

fn embedding(name: &str) -> LoadedEmbedding {
    let text = std::fs::read_to_string(corpus(&format!("embeddings/{name}.json"))).unwrap();
    parse_embedding(&text).unwrap().load(0).unwrap()
}

fn registry(a: &Arc<SCAlgebra>) -> Registry {
    enumerate_indecomposables(a, LIMITS.dim_cap, LIMITS.budget).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `count` registry members chosen by the bits of `s`.
fn pick(reg: &[ActionModule], s: u64, count: usize) -> Vec<ActionModule> {
    (0..count)
        .map(|j| reg[((s >> (8 * j + 8)) % reg.len() as u64) as usize].clone())
        .collect()
}

fn sum(a: &Arc<SCAlgebra>, xs: &[ActionModule]) -> ActionModule {
    direct_sum(a, xs).unwrap().module
}

const IT_CORPUS: [&str; 5] = ["a2", "a3_sink", "trunc2", "trunc3", "a2_auslander"];

fn criterion_1() -> Check {
    let (mut members, mut sums, mut pairs, mut seqs) = (0, 0, 0, 0);
    for name in IT_CORPUS {
        let alg = algebra(name);
        let a = alg.sc();
        let reg = registry(a);
        ensure(reg.complete, || format!("{name}: registry incomplete"))?;
        let mods = reg.modules();
        for x in &mods {
            if let Some(pd) = proj_dim(x, CUTOFF).unwrap().exact() {
                let v = psi(x, CUTOFF).unwrap();
                ensure(v == pd, || format!("{name}: psi {v} != pd {pd} on a registry member"))?;
                members += 1;
            }
        }
        if gldim(a, CUTOFF).unwrap().is_finite() {
            for i in 0..200 {
                let s = sample_seed(1, i);
                let x = sum(a, &pick(&mods, s, 1 + (s % 3) as usize));
                let pd = proj_dim(&x, CUTOFF).unwrap().exact().unwrap();
                let v = psi(&x, CUTOFF).unwrap();
                ensure(v == pd, || format!("{name}: psi {v} != pd {pd} on seeded sum {i}"))?;
                sums += 1;
            }
        }
        for i in 0..200 {
            let s = sample_seed(2, i);
            let base = pick(&mods, s, 1 + (s % 2) as usize);
            let extra = pick(&mods, s >> 24, 1 + ((s >> 4) % 2) as usize);
            let x = sum(a, &base);
            let y = sum(a, &[base, extra].concat());
            let (px, py) = (psi(&x, CUTOFF).unwrap(), psi(&y, CUTOFF).unwrap());
            ensure(px <= py, || {
                format!("{name}: psi not monotone on pair {i} ({px} > {py})")
            })?;
            let k = 2 + (s >> 2) as usize % 2;
            let pk = psi(&power(&x, k), CUTOFF).unwrap();
            ensure(px == pk, || {
                format!("{name}: psi(x) {px} != psi(x^{k}) {pk} on pair {i}")
            })?;
            pairs += 1;
        }
        let reg_a = ActionModule::regular(a);
        let gens: Vec<ActionModule> = simples(a)
            .unwrap()
            .into_iter()
            .map(|s| sum(a, &[reg_a.clone(), s]))
            .collect();
        for x in &mods {
            for ses in harvest_sequences(x, &gens).unwrap() {
                if let Some((pd, bound)) = ses.psi_bound(CUTOFF).unwrap() {
                    ensure(pd <= bound, || format!("{name}: pd Z = {pd} > psi(X+Y)+1 = {bound}"))?;
                    seqs += 1;
                }
            }
        }
    }
    Ok(format!(
        "psi = pd on {members} registry members and {sums} sums; {pairs} monotone pairs; {seqs} sequences"
    ))
}

fn criterion_2() -> Check {
    let alg = algebra("a3_sink");
    let m = module(&alg, "a3_sink_s1_s2");
    let (f, p) = (phi(&m, CUTOFF).unwrap(), psi(&m, CUTOFF).unwrap());
    ensure((f, p) == (1, 1), || format!("1->3<-2: Phi {f}, Psi {p}"))?;
    let alg = algebra("trunc2");
    let s = module(&alg, "simple");
    let p = psi(&s, CUTOFF).unwrap();
    ensure(p == 0, || format!("dual numbers: Psi(S) = {p}"))?;
    Ok("Phi(S1+S2) = 1, Psi(S1+S2) = 1, Psi(S) = 0".into())
}

fn criterion_3() -> Check {
    let mut out = Vec::new();
    for (name, dim) in [("a2", 5), ("trunc2", 5), ("trunc3", 14)] {
        let alg = algebra(name);
        let g = module(&alg, "generator");
        let pkg = end_algebra(&g).unwrap();
        let gd = gldim(&pkg.e, CUTOFF).unwrap();
        ensure(pkg.dim() == dim, || format!("{name}: dim End = {}", pkg.dim()))?;
        ensure(gd == PdResult::Exact { value: 2 }, || {
            format!("{name}: gldim End = {gd}")
        })?;
        out.push(format!("{name} {dim}"));
    }
    Ok(format!("dim End(generator): {}; gldim 2", out.join(", ")))
}

fn criterion_4() -> Check {
    let mut runs = 0;
    for name in ["a2", "trunc2", "trunc3"] {
        let alg = algebra(name);
        let reg = registry(alg.sc());
        for v in ["generator", "regular_plus_dual"] {
            let v = module(&alg, v);
            for n in [0, 1] {
                let r = gldim_endo_test(&v, &reg, n, CUTOFF).unwrap();
                ensure(r.agree && r.inexact.is_empty(), || {
                    format!(
                        "{name} n={n}: gldim side {} vs coresolution side {}, inexact {:?}",
                        r.gldim_side, r.coresolution_side, r.inexact
                    )
                })?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} runs, both sides agree"))
}

fn criterion_5() -> Check {
    let mut total = 0;
    for (name, m) in [
        ("a2", "generator"),
        ("trunc2", "regular_plus_simple"),
        ("trunc3", "trunc3_m2_m3"),
    ] {
        let alg = algebra(name);
        let r = tensor_syzygy_audit(&end_algebra(&module(&alg, m)).unwrap(), SAMPLES, 0).unwrap();
        ensure(r.failures.is_empty(), || {
            format!("{name}: {} failures", r.failures.len())
        })?;
        ensure(r.inconclusive == 0, || {
            format!("{name}: {} inconclusive", r.inconclusive)
        })?;
        total += r.samples.len();
    }
    ensure(total >= 300, || format!("only {total} samples"))?;
    Ok(format!("{total} samples, 0 failures, 0 inconclusive"))
}

/// `(algebra, V, M)` for the bound audits.
const BOUND_SETUPS: [(&str, &str, &str); 4] = [
    ("trunc2", "regular_plus_simple", "regular_plus_simple"),
    ("trunc2", "regular_plus_simple", "regular"),
    ("trunc3", "generator", "trunc3_m2_m3"),
    ("a2", "generator", "a2_p1_s1"),
];

fn criterion_6() -> Check {
    let mut notes = Vec::new();
    for (name, v, m) in BOUND_SETUPS {
        let alg = algebra(name);
        let (v, m) = (module(&alg, v), module(&alg, m));
        let t = endo_bound(&v, &m, CUTOFF).unwrap();
        let r = bound_audit(&v, &m, SAMPLES, 0, CUTOFF).unwrap();
        ensure(r.passed(), || format!("{name}: {} violations", r.violations.len()))?;
        ensure(r.samples.len() == SAMPLES && r.bound == t.bound, || {
            format!("{name}: malformed report")
        })?;
        let gd_e = gldim(&end_algebra(&m).unwrap().e, CUTOFF).unwrap();
        if gd_e == (PdResult::Exact { value: 2 }) {
            let top = r.max_exact().unwrap_or(0);
            ensure(top <= 2, || {
                format!("{name}: Exact pd {top} over a gldim-2 endo-algebra")
            })?;
        }
        notes.push(format!("{name} bound {} (gd E {gd_e})", r.bound));
    }
    Ok(format!("0 violations; {}", notes.join(", ")))
}

fn criterion_7() -> Check {
    let mut notes = Vec::new();
    for (name, v, m) in BOUND_SETUPS {
        let alg = algebra(name);
        let (v, m) = (module(&alg, v), module(&alg, m));
        let r = opposite_pipeline(&v, &m, SAMPLES, 0, CUTOFF).unwrap();
        ensure(r.report.passed(), || {
            format!("{name}: {} violations", r.report.violations.len())
        })?;
        let c = &r.end_check;
        ensure(c.anti_isomorphic && c.end_dim == c.dual_end_dim, || {
            format!(
                "{name}: End(m)^op vs End(Dm) failed ({} vs {})",
                c.end_dim, c.dual_end_dim
            )
        })?;
        notes.push(format!("{name} op bound {}", r.report.bound));
    }
    Ok(format!(
        "anti-isomorphisms verified, 0 violations; {}",
        notes.join(", ")
    ))
}

fn criterion_8() -> Check {
    let mut out = Vec::new();
    for (name, want) in [("a2", 3), ("a3_sink", 6), ("trunc2", 2), ("trunc3", 3), ("trunc4", 4)] {
        let reg = registry(algebra(name).sc());
        ensure(reg.len() == want, || {
            format!("{name}: {} classes, expected {want}", reg.len())
        })?;
        ensure(reg.complete, || format!("{name}: completeness not witnessed"))?;
        out.push(format!("{name} {want}"));
    }
    Ok(format!("complete registries: {}", out.join(", ")))
}

fn criterion_9() -> Check {
    let fd = |name: &str| findim_rep_finite(&registry(algebra(name).sc()), CUTOFF).unwrap();
    let (a2, dual, aus) = (fd("a2"), fd("trunc2"), fd("a2_auslander"));
    ensure(a2 == 1, || format!("A2: findim {a2}"))?;
    ensure(dual == 0, || format!("dual numbers: findim {dual}"))?;
    let gd = gldim(algebra("a2_auslander").sc(), CUTOFF).unwrap();
    ensure(aus <= 2 && gd.exact() == Some(aus), || {
        format!("A2-Auslander: findim {aus}, gldim {gd}")
    })?;
    Ok(format!("findim A2 = {a2}, dual numbers = {dual}, A2-Auslander = {aus}"))
}

fn criterion_10() -> Check {
    let good = embedding("dual_numbers_in_upper_triangular");
    let bad = embedding("upper_triangular_in_matrix2");
    ensure(good.embedding.idealized_extension_check().unwrap().holds, || {
        "{1, e12} in UT not idealized".into()
    })?;
    let verdict = bad.embedding.idealized_extension_check().unwrap();
    let w = verdict.witness.as_ref().ok_or("UT in M2: no witness")?;
    ensure(!verdict.holds, || "UT in M2 reported idealized".into())?;
    let sub = Algebra::Sc(good.sub.clone());
    let ambient = Algebra::Sc(good.ambient.clone());
    let v_r = module(&ambient, "generator");
    for m in ["regular", "regular_squared"] {
        let m = module(&sub, m);
        let r = idealized_bound(&good.embedding, &good.sub, &m, &v_r, None, SAMPLES, 0, CUTOFF).unwrap();
        ensure(r.route == IdealizedRoute::RepdimAtMostThree, || {
            "unexpected route".into()
        })?;
        ensure(r.report.passed(), || {
            format!("idealized bound: {} violations", r.report.violations.len())
        })?;
    }
    let probe = omega2_finite_type_probe(&registry(algebra("a2_auslander").sc())).unwrap();
    ensure(probe.exhaustive && probe.only_projectives(), || {
        "probe found non-projective second syzygies".into()
    })?;
    Ok(format!(
        "idealized true / false (witness {} * rad = {:?}); idealized bound 0 violations; probe: only projectives",
        w.ambient_element, w.product
    ))
}

fn same_span(x: &FieldMat, y: &FieldMat) -> bool {
    x.rank() == y.rank() && span_sum(x.p(), x, y).cols() == x.rank()
}

fn criterion_11() -> Check {
    let mut algebras: Vec<(String, Arc<SCAlgebra>)> = Vec::new();
    for name in ["a2", "trunc2", "trunc3", "trunc4", "upper_triangular", "matrix2"] {
        algebras.push((name.into(), algebra(name).sc().clone()));
    }
    for name in ["dual_numbers_in_upper_triangular", "upper_triangular_in_matrix2"] {
        algebras.push((format!("sub of {name}"), embedding(name).sub));
    }
    let mut checked = Vec::new();
    for (name, a) in algebras {
        if a.p() != 2 || a.dim() > 4 {
            continue;
        }
        let fast = radical_sc(&a).unwrap();
        let brute = radical_by_enumeration(&a).unwrap();
        ensure(same_span(&fast, &brute), || format!("{name}: radicals differ"))?;
        checked.push(format!("{name} {}", brute.cols()));
    }
    let m2 = radical_sc(algebra("matrix2").sc()).unwrap();
    ensure(m2.cols() == 0, || "rad M2 nonzero".into())?;
    let ut = radical_sc(algebra("upper_triangular").sc()).unwrap();
    let e12 = FieldMat::from_columns(2, 3, &[vec![0, 1, 0]]);
    ensure(same_span(&ut, &e12), || "rad UT is not span{e12}".into())?;
    Ok(format!("radical dims agree: {}", checked.join(", ")))
}

fn run_cli(args: &[String]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_findim")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_12() -> Check {
    let c = |rel: &str| corpus(rel).display().to_string();
    let (alg, m) = (
        |n: &str| c(&format!("algebras/{n}.json")),
        |n: &str| c(&format!("modules/{n}.json")),
    );
    let commands: Vec<Vec<String>> = vec![
        vec!["enumerate".into(), alg("a3_sink")],
        vec!["psi".into(), alg("a3_sink"), m("a3_sink_s1_s2")],
        vec!["auslander".into(), alg("trunc3")],
        vec!["coresolution".into(), alg("a2"), m("regular_plus_dual")],
        vec![
            "tensor-syzygy".into(),
            alg("trunc3"),
            m("trunc3_m2_m3"),
            "--samples".into(),
            "30".into(),
        ],
        vec![
            "bound".into(),
            alg("trunc2"),
            m("regular_plus_simple"),
            m("regular_plus_simple"),
        ],
        vec![
            "op-bound".into(),
            alg("a2"),
            m("generator"),
            m("a2_p1_s1"),
            "--seed".into(),
            "7".into(),
        ],
        vec!["idealized".into(), c("embeddings/upper_triangular_in_matrix2.json")],
        vec!["probe".into(), alg("a2_auslander")],
        vec![
            "idealized-bound".into(),
            c("embeddings/dual_numbers_in_upper_triangular.json"),
            m("regular_squared"),
            m("generator"),
        ],
    ];
    let dir = tempfile::tempdir().unwrap();
    for (i, args) in commands.iter().enumerate() {
        let (code1, first) = run_cli(args);
        let (code2, second) = run_cli(args);
        ensure(code1 == 0 && code2 == 0, || {
            format!("`{}` exited {code1}/{code2}", args[0])
        })?;
        ensure(first == second, || format!("`{}` output differs between runs", args[0]))?;
        let path = dir.path().join(format!("{i}.json"));
        let mut with_out = args.clone();
        with_out.extend(["--out".into(), path.display().to_string()]);
        let (code3, _) = run_cli(&with_out);
        let written = std::fs::read(&path).unwrap();
        ensure(code3 == 0 && written == first, || {
            format!("`{}` --out differs from stdout", args[0])
        })?;
        let report: serde_json::Value = serde_json::from_slice(&first).unwrap();
        ensure(
            report["config"]["seed"].is_u64() && report["config"]["cutoff"].is_u64() && report["version"].is_string(),
            || format!("`{}` report lacks config", args[0]),
        )?;
    }
    Ok(format!("{} commands byte-identical across reruns", commands.len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("Igusa-Todorov conformance", criterion_1),
        ("fixed Phi/Psi values", criterion_2),
        ("Auslander algebra constants", criterion_3),
        ("coresolution criterion for gd End V", criterion_4),
        ("second syzygy over End M", criterion_5),
        ("finitistic dimension bound audit", criterion_6),
        ("opposite pipeline", criterion_7),
        ("enumeration counts", criterion_8),
        ("finitistic dimension of rep-finite algebras", criterion_9),
        ("idealized extensions", criterion_10),
        ("radical oracle", criterion_11),
        ("determinism", criterion_12),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
