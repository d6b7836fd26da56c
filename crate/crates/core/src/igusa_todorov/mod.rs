//! Igusa-Todorov functions, the finitistic dimension bound over endomorphism
//! algebras, Auslander generators and the idealized-extension variant.
//!
//! `K` is the free abelian group on isomorphism classes of non-projective
//! indecomposables met while closing the summands of a module under syzygies;
//! projective classes are zero in `K`. The syzygy acts on `K` by `L[X] = [Omega X]`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Embedding, SCAlgebra};
use crate::endo::{add_approximation, coker_module, end_algebra, hom_transport, sample_presentation, EndoPackage};
use crate::error::{Error, Result};
use crate::io::ModuleFile;
use crate::krull_schmidt::{decompose, fingerprint, indecomposables_isomorphic, Fingerprint, Registry};
use crate::linalg::{integer_rank, ColumnBasis, FieldMat, IntMat};
use crate::module::{direct_sum, kernel, same_algebra, ActionModule};
use crate::resolution::{gldim, is_projective, proj_dim, projectives, syzygy, syzygy_step, PdResult};

/// Syzygy action on the classes reachable from the summands of a module.
#[derive(Clone, Debug)]
pub struct ITState {
    /// Non-projective indecomposable classes, generators of `K`.
    pub classes: Vec<ActionModule>,
    /// Column `j`: multiplicities of `[Omega classes[j]]`.
    pub omega: IntMat,
    /// Columns: the distinct non-projective summands of the module.
    pub generators: IntMat,
}

struct ClassList {
    classes: Vec<ActionModule>,
    prints: Vec<Fingerprint>,
    depth: Vec<usize>,
}

impl ClassList {
    /// Index of the class of an indecomposable, registering it if new; `None` if projective.
    fn register(&mut self, x: &ActionModule, depth: usize, cutoff: usize) -> Result<Option<usize>> {
        if is_projective(x)? {
            return Ok(None);
        }
        let fp = fingerprint(x);
        for (i, c) in self.classes.iter().enumerate() {
            if self.prints[i] == fp && indecomposables_isomorphic(c, x)?.is_some() {
                return Ok(Some(i));
            }
        }
        if depth > cutoff {
            return Err(Error::CutoffExceeded {
                cutoff,
                during: "closing summands under syzygies",
            });
        }
        self.classes.push(x.clone());
        self.prints.push(fp);
        self.depth.push(depth);
        Ok(Some(self.classes.len() - 1))
    }
}

pub fn it_state(m: &ActionModule, cutoff: usize) -> Result<ITState> {
    let mut list = ClassList {
        classes: Vec::new(),
        prints: Vec::new(),
        depth: Vec::new(),
    };
    let mut gens = Vec::new();
    if !m.is_zero() {
        for c in decompose(m, 0)?.classes {
            if let Some(i) = list.register(&c.representative, 0, cutoff)? {
                if !gens.contains(&i) {
                    gens.push(i);
                }
            }
        }
    }
    let mut columns: Vec<Vec<(usize, i64)>> = Vec::new();
    let mut j = 0;
    while j < list.classes.len() {
        let omega = syzygy_step(&list.classes[j])?.0;
        let d = list.depth[j] + 1;
        let mut col = Vec::new();
        if !omega.is_zero() {
            for c in decompose(&omega, 0)?.classes {
                if let Some(i) = list.register(&c.representative, d, cutoff)? {
                    col.push((i, c.multiplicity as i64));
                }
            }
        }
        columns.push(col);
        j += 1;
    }
    let n = list.classes.len();
    let mut omega = IntMat::zeros(n, n);
    for (j, col) in columns.iter().enumerate() {
        for &(i, k) in col {
            omega.set(i, j, omega.get(i, j) + k);
        }
    }
    let gen_cols: Vec<Vec<i64>> = gens
        .iter()
        .map(|&g| (0..n).map(|i| i64::from(i == g)).collect())
        .collect();
    Ok(ITState {
        classes: list.classes,
        omega,
        generators: IntMat::from_columns(n, &gen_cols),
    })
}

impl ITState {
    /// `rank(L^k G)` for `k = 0..=n` where `n` is the number of classes.
    pub fn ranks(&self) -> Vec<usize> {
        let n = self.classes.len();
        let mut cur = self.generators.clone();
        let mut out = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            out.push(integer_rank(&cur));
            cur = self.omega.mul(&cur);
        }
        out
    }

    /// Least `k` after which `rank(L^k G)` never changes again.
    ///
    /// `L` is nilpotent on the kernel part of its Fitting decomposition with
    /// index at most `n` and invertible on the image part, so the rank is
    /// constant from `n` on.
    pub fn phi(&self) -> usize {
        let r = self.ranks();
        let last = *r.last().expect("at least one rank");
        r.iter().position(|&x| x == last).expect("last rank occurs")
    }

    /// Classes occurring in `Omega^k` of the generators.
    pub fn support_after(&self, k: usize) -> Vec<usize> {
        let mut cur = self.generators.clone();
        for _ in 0..k {
            cur = self.omega.mul(&cur);
        }
        (0..cur.rows())
            .filter(|&i| (0..cur.cols()).any(|j| cur.get(i, j) != 0))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PsiReport {
    pub phi: usize,
    pub psi: usize,
    /// Some summand hit the cutoff and was treated as having infinite projective dimension.
    pub censored: bool,
    pub classes: usize,
}

pub fn phi(m: &ActionModule, cutoff: usize) -> Result<usize> {
    Ok(it_state(m, cutoff)?.phi())
}

pub fn psi(m: &ActionModule, cutoff: usize) -> Result<usize> {
    Ok(psi_report(m, cutoff)?.psi)
}

/// `Phi(m)` plus the largest finite projective dimension among the summands of `Omega^Phi(m)`.
pub fn psi_report(m: &ActionModule, cutoff: usize) -> Result<PsiReport> {
    let st = it_state(m, cutoff)?;
    let phi = st.phi();
    let mut top = 0;
    let mut censored = false;
    for i in st.support_after(phi) {
        match proj_dim(&st.classes[i], cutoff)? {
            PdResult::Exact { value } => top = top.max(value),
            PdResult::AtLeast { .. } => censored = true,
            PdResult::Infinite { .. } => {}
        }
    }
    Ok(PsiReport {
        phi,
        psi: phi + top,
        censored,
        classes: st.classes.len(),
    })
}

/// A short exact sequence `0 -> kernel -> middle -> end -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub kernel: ActionModule,
    pub middle: ActionModule,
    pub end: ActionModule,
}

impl ShortExact {
    /// `pd end <= psi(kernel + middle) + 1` when `pd end` is finite; `None` otherwise.
    pub fn psi_bound(&self, cutoff: usize) -> Result<Option<(usize, usize)>> {
        let Some(pd) = proj_dim(&self.end, cutoff)?.exact() else {
            return Ok(None);
        };
        let sum = direct_sum(self.end.alg(), &[self.kernel.clone(), self.middle.clone()])?.module;
        Ok(Some((pd, psi(&sum, cutoff)? + 1)))
    }
}

/// The syzygy sequence of `x` and, for each generator `v`, the kernel sequence
/// of the minimal right `add v`-approximation of `x`.
pub fn harvest_sequences(x: &ActionModule, generators: &[ActionModule]) -> Result<Vec<ShortExact>> {
    let (k, cover, _) = syzygy_step(x)?;
    let mut out = vec![ShortExact {
        kernel: k,
        middle: cover.module,
        end: x.clone(),
    }];
    for v in generators {
        let ap = add_approximation(v, x)?;
        if !ap.map.is_surjective() {
            return Err(Error::NotGenerator);
        }
        let (k, _) = kernel(&ap.map)?;
        out.push(ShortExact {
            kernel: k,
            middle: ap.module,
            end: x.clone(),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct EndoBound {
    pub end_v_gldim: PdResult,
    pub end_dim: usize,
    pub psi: PsiReport,
    pub bound: usize,
}

fn endo_bound_parts(v: &ActionModule, m: &ActionModule, cutoff: usize) -> Result<(EndoPackage, EndoBound)> {
    if !same_algebra(v.alg(), m.alg()) {
        return Err(Error::AlgebraMismatch);
    }
    let pv = end_algebra(v)?;
    let gd = gldim(&pv.e, cutoff)?;
    if !matches!(gd, PdResult::Exact { value } if value <= 3) {
        return Err(Error::Hypothesis(format!("gd(End V) > 3 (computed {gd})")));
    }
    if !pv.in_add(m)? {
        return Err(Error::NotInAdd("M is not in add V".into()));
    }
    let pkg = end_algebra(m)?;
    let x = hom_transport(&pkg, v)?;
    let psi = psi_report(&x, cutoff)?;
    let t = EndoBound {
        end_v_gldim: gd,
        end_dim: pkg.dim(),
        psi,
        bound: psi.psi + 3,
    };
    Ok((pkg, t))
}

/// `Psi_E(Hom_A(m, v)) + 3` for `E = End_A(m)`.
pub fn endo_bound(v: &ActionModule, m: &ActionModule, cutoff: usize) -> Result<EndoBound> {
    Ok(endo_bound_parts(v, m, cutoff)?.1)
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleRecord {
    pub index: usize,
    pub seed: u64,
    pub dim: usize,
    pub pd: PdResult,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub index: usize,
    pub seed: u64,
    pub pd: PdResult,
    pub module: ModuleFile,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub algebra: String,
    pub end_algebra: String,
    pub end_dim: usize,
    pub seed: u64,
    pub cutoff: usize,
    pub end_v_gldim: Option<PdResult>,
    pub psi: PsiReport,
    pub bound: usize,
    pub sample_count: usize,
    pub samples: Vec<SampleRecord>,
    pub violations: Vec<Violation>,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn max_exact(&self) -> Option<usize> {
        self.samples.iter().filter_map(|s| s.pd.exact()).max()
    }
}

/// Seed of sample `i` in a run seeded with `seed`.
pub fn sample_seed(seed: u64, i: usize) -> u64 {
    seed ^ (i as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn audit(
    pkg: &EndoPackage,
    bound: usize,
    samples: usize,
    seed: u64,
    cutoff: usize,
) -> Result<(Vec<SampleRecord>, Vec<Violation>)> {
    let mut records = Vec::with_capacity(samples);
    let mut violations = Vec::new();
    for index in 0..samples {
        let s = sample_seed(seed, index);
        let g = sample_presentation(pkg, s)?;
        let x = coker_module(pkg, &g)?;
        let pd = proj_dim(&x, cutoff)?;
        if matches!(pd, PdResult::Exact { value } if value > bound) {
            violations.push(Violation {
                index,
                seed: s,
                pd,
                module: ModuleFile::from_action(&x),
            });
        }
        records.push(SampleRecord {
            index,
            seed: s,
            dim: x.dim(),
            pd,
        });
    }
    Ok((records, violations))
}

/// Checks `pd_E X <= bound` on sampled finitely presented `E`-modules.
pub fn bound_audit(
    v: &ActionModule,
    m: &ActionModule,
    samples: usize,
    seed: u64,
    cutoff: usize,
) -> Result<BoundReport> {
    let (pkg, t) = endo_bound_parts(v, m, cutoff)?;
    let (records, violations) = audit(&pkg, t.bound, samples, seed, cutoff)?;
    Ok(BoundReport {
        algebra: m.alg().fingerprint(),
        end_algebra: pkg.e.fingerprint(),
        end_dim: pkg.dim(),
        seed,
        cutoff,
        end_v_gldim: Some(t.end_v_gldim),
        psi: t.psi,
        bound: t.bound,
        sample_count: samples,
        samples: records,
        violations,
    })
}

/// One representative per registry class.
pub fn auslander_generator(reg: &Registry) -> Result<ActionModule> {
    if !reg.complete {
        return Err(Error::IncompleteRegistry(
            "the registry does not witness representation-finiteness".into(),
        ));
    }
    Ok(direct_sum(reg.alg(), &reg.modules())?.module)
}

/// Indecomposable injectives `D(e A)`, as duals of the projectives of the opposite algebra.
pub fn injectives(alg: &Arc<SCAlgebra>) -> Result<Vec<ActionModule>> {
    let op = Arc::new(alg.opposite());
    Ok(projectives(&op)?.into_iter().map(|q| q.dual_over(alg)).collect())
}

fn contains_all(v: &ActionModule, xs: &[ActionModule]) -> Result<bool> {
    let classes = if v.is_zero() {
        Vec::new()
    } else {
        decompose(v, 0)?.classes
    };
    'outer: for x in xs {
        let fp = fingerprint(x);
        for c in &classes {
            if c.fingerprint == fp && indecomposables_isomorphic(&c.representative, x)?.is_some() {
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Whether every indecomposable projective and injective is a summand of `v`.
pub fn check_gen_cogen(v: &ActionModule) -> Result<bool> {
    let alg = v.alg();
    let mut needed = projectives(alg)?;
    needed.extend(injectives(alg)?);
    contains_all(v, &needed)
}

/// `gd End(v)`, an upper bound for the representation dimension.
pub fn repdim_upper(v: &ActionModule, cutoff: usize) -> Result<PdResult> {
    if !check_gen_cogen(v)? {
        return Err(Error::NotGenCogen);
    }
    gldim(&end_algebra(v)?.e, cutoff)
}

/// Whether transposition `f -> f^T` is an anti-isomorphism `End(m) -> End(D m)`.
#[derive(Clone, Debug, Serialize)]
pub struct DualEndCheck {
    pub end_dim: usize,
    pub dual_end_dim: usize,
    pub anti_isomorphic: bool,
}

pub fn dual_end_check(pkg: &EndoPackage, dual: &EndoPackage) -> DualEndCheck {
    let p = pkg.m.p();
    let n = pkg.m.dim();
    let mut out = DualEndCheck {
        end_dim: pkg.dim(),
        dual_end_dim: dual.dim(),
        anti_isomorphic: false,
    };
    if pkg.dim() != dual.dim() || dual.m.dim() != n {
        return out;
    }
    let flat: Vec<Vec<u32>> = dual.basis.iter().map(|f| f.vectorize()).collect();
    let coords = ColumnBasis::new(FieldMat::from_columns(p, n * n, &flat));
    let mut cols = Vec::with_capacity(pkg.dim());
    for f in &pkg.basis {
        match coords.coords(&f.transpose().vectorize()) {
            Some(c) => cols.push(c),
            None => return out,
        }
    }
    let t = FieldMat::from_columns(p, dual.dim(), &cols);
    if !t.is_invertible() {
        return out;
    }
    for i in 0..pkg.dim() {
        for j in 0..pkg.dim() {
            let lhs = t.mul_vec(pkg.e.product_of_basis(i, j));
            let rhs = dual.e.mul(&t.col(j), &t.col(i));
            if lhs != rhs {
                return out;
            }
        }
    }
    out.anti_isomorphic = true;
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct OppositeReport {
    pub end_check: DualEndCheck,
    pub report: BoundReport,
}

/// The bound and its audit for `A^op` with `D v` and `D m`.
pub fn opposite_pipeline(
    v: &ActionModule,
    m: &ActionModule,
    samples: usize,
    seed: u64,
    cutoff: usize,
) -> Result<OppositeReport> {
    let op = Arc::new(v.alg().opposite());
    let dv = v.dual_over(&op);
    let dm = m.dual_over(&op);
    let report = bound_audit(&dv, &dm, samples, seed, cutoff)?;
    let end_check = dual_end_check(&end_algebra(m)?, &end_algebra(&dm)?);
    Ok(OppositeReport { end_check, report })
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub classes: Vec<ActionModule>,
    pub projective: Vec<bool>,
    /// Every module of the category was covered, not just a sample.
    pub exhaustive: bool,
}

impl ProbeReport {
    pub fn only_projectives(&self) -> bool {
        self.projective.iter().all(|&b| b)
    }
}

/// Indecomposable summands of the second syzygies of `modules`.
pub fn omega2_probe(modules: &[ActionModule], exhaustive: bool) -> Result<ProbeReport> {
    let mut classes: Vec<ActionModule> = Vec::new();
    let mut prints: Vec<Fingerprint> = Vec::new();
    for x in modules {
        let o2 = syzygy(x, 2)?;
        if o2.is_zero() {
            continue;
        }
        'next: for c in decompose(&o2, 0)?.classes {
            for (i, k) in classes.iter().enumerate() {
                if prints[i] == c.fingerprint && indecomposables_isomorphic(k, &c.representative)?.is_some() {
                    continue 'next;
                }
            }
            prints.push(c.fingerprint);
            classes.push(c.representative);
        }
    }
    let projective = classes.iter().map(is_projective).collect::<Result<_>>()?;
    Ok(ProbeReport {
        classes,
        projective,
        exhaustive,
    })
}

/// Second syzygies of every registry member; exhaustive when the registry is complete.
pub fn omega2_finite_type_probe(reg: &Registry) -> Result<ProbeReport> {
    omega2_probe(&reg.modules(), reg.complete)
}

/// Which hypothesis on `R` licensed the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealizedRoute {
    RepdimAtMostThree,
    SecondSyzygiesFiniteType,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealizedBoundReport {
    pub route: IdealizedRoute,
    pub report: BoundReport,
}

/// Bound for `End_A(m)` with `m` projective over a subalgebra `A` of `R`,
/// using an `R`-module `v_r` restricted to `A`.
///
/// `probe` is the registry of `R` used for the finite-type route when `v_r`
/// is not a generator-cogenerator with `gd End(v_r) <= 3`.
#[allow(clippy::too_many_arguments)]
pub fn idealized_bound(
    emb: &Embedding,
    sub: &Arc<SCAlgebra>,
    m: &ActionModule,
    v_r: &ActionModule,
    probe: Option<&Registry>,
    samples: usize,
    seed: u64,
    cutoff: usize,
) -> Result<IdealizedBoundReport> {
    let verdict = emb.idealized_extension_check()?;
    if !verdict.holds {
        return Err(Error::Hypothesis("not a left idealized extension".into()));
    }
    if **sub != emb.subalgebra() || !same_algebra(m.alg(), sub) {
        return Err(Error::AlgebraMismatch);
    }
    if !same_algebra(v_r.alg(), emb.ambient()) {
        return Err(Error::AlgebraMismatch);
    }
    if proj_dim(m, cutoff)? != (PdResult::Exact { value: 0 }) {
        return Err(Error::Hypothesis("M is not a projective A-module".into()));
    }
    let route = if check_gen_cogen(v_r)?
        && matches!(gldim(&end_algebra(v_r)?.e, cutoff)?, PdResult::Exact { value } if value <= 3)
    {
        IdealizedRoute::RepdimAtMostThree
    } else {
        let finite_type = match probe {
            Some(reg) if reg.complete => {
                let n = omega2_finite_type_probe(reg)?;
                let mut needed = projectives(emb.ambient())?;
                needed.extend(n.classes);
                contains_all(v_r, &needed)?
            }
            _ => false,
        };
        if !finite_type {
            return Err(Error::Hypothesis(
                "neither repdim R <= 3 nor finite type of the second syzygies was verified for V_R".into(),
            ));
        }
        IdealizedRoute::SecondSyzygiesFiniteType
    };
    let v = v_r.restrict(emb, sub)?;
    let pkg = end_algebra(m)?;
    let psi = psi_report(&hom_transport(&pkg, &v)?, cutoff)?;
    let bound = psi.psi + 3;
    let (records, violations) = audit(&pkg, bound, samples, seed, cutoff)?;
    Ok(IdealizedBoundReport {
        route,
        report: BoundReport {
            algebra: sub.fingerprint(),
            end_algebra: pkg.e.fingerprint(),
            end_dim: pkg.dim(),
            seed,
            cutoff,
            end_v_gldim: None,
            psi,
            bound,
            sample_count: samples,
            samples: records,
            violations,
        },
    })
}
