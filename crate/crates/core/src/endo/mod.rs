//! Endomorphism algebras `E = End_A(M)` and the passage between `A`-modules and `E`-modules.
//!
//! Elements of `E` are matrices on `M`. The product is `f * g = g o f`, so that
//! `Hom_A(M, X)` is a left `E`-module under precomposition, `e . h = h o e`,
//! and `M` is a right `E`-module under evaluation, `m . e = e(m)`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{radical_sc, Idempotents, SCAlgebra};
use crate::error::{Error, Result};
use crate::krull_schmidt::{
    composition_algebra, decompose, indecomposables_isomorphic, is_isomorphic, DecompReport, DEFAULT_ISO_BUDGET,
};
use crate::linalg::{span_sum, ColumnBasis, FieldMat};
use crate::module::{
    direct_sum, hom_basis, hom_induced_exactness, is_exact, kernel, same_algebra, ActionModule, ExactSeq, ModMorphism,
};
use crate::resolution::{cover_generators, gldim, is_projective, projective_cover, PdResult};

/// `E = End_A(m)` with its idempotent and radical data.
#[derive(Clone, Debug)]
pub struct EndoPackage {
    pub m: ActionModule,
    pub e: Arc<SCAlgebra>,
    /// Basis element `k` of `e` acts on `m` as `basis[k]`.
    pub basis: Vec<FieldMat>,
    pub decomposition: DecompReport,
    /// `Hom_A(m, m_i)` for each indecomposable summand `m_i`, in summand order.
    pub projectives: Vec<ActionModule>,
}

/// An `E`-module `Hom_A(m, x)` together with the maps its coordinates refer to.
#[derive(Clone, Debug)]
pub struct Transported {
    pub module: ActionModule,
    pub basis: Vec<FieldMat>,
}

fn span_of(p: u32, rows: usize, cols: usize, mats: &[FieldMat]) -> ColumnBasis {
    let flat: Vec<Vec<u32>> = mats.iter().map(|f| f.vectorize()).collect();
    ColumnBasis::new(FieldMat::from_columns(p, rows * cols, &flat))
}

/// Builds `End_A(m)` on a basis of blocks `Hom(m_s, m_t)` between summands.
///
/// Blocks between non-isomorphic summands lie in the radical; a block between
/// isomorphic summands contributes the non-invertible maps. The result is
/// compared against the generic radical computation.
pub fn end_algebra(m: &ActionModule) -> Result<EndoPackage> {
    let p = m.p();
    let n = m.dim();
    let decomposition = decompose(m, 0)?;
    let sums = &decomposition.summands;
    let mut basis = Vec::new();
    let mut rad_mats = Vec::new();
    let mut local_rad: Vec<Option<Vec<FieldMat>>> = vec![None; decomposition.classes.len()];
    for s in sums {
        for t in sums {
            let block = hom_basis(&s.module, &t.module)?;
            for h in &block {
                basis.push(t.inclusion.mul(h).mul(&s.projection));
            }
            if s.class != t.class {
                for h in &block {
                    rad_mats.push(t.inclusion.mul(h).mul(&s.projection));
                }
                continue;
            }
            if local_rad[s.class].is_none() {
                let rep = &decomposition.classes[s.class].representative;
                let end_basis = hom_basis(rep, rep)?;
                let local = composition_algebra(p, rep.dim(), &end_basis);
                let r = radical_sc(&local)?;
                let d = rep.dim();
                local_rad[s.class] = Some(
                    (0..r.cols())
                        .map(|j| FieldMat::combination(p, d, d, &r.col(j), &end_basis))
                        .collect(),
                );
            }
            let rep = &decomposition.classes[s.class].representative;
            let into_s = indecomposables_isomorphic(rep, &s.module)?.expect("summand lies in its class");
            let into_t = indecomposables_isomorphic(rep, &t.module)?.expect("summand lies in its class");
            let from_s = into_s.inverse().expect("isomorphism");
            for r in local_rad[s.class].as_ref().expect("filled above") {
                let h = into_t.mul(r).mul(&from_s);
                rad_mats.push(t.inclusion.mul(&h).mul(&s.projection));
            }
        }
    }
    let coords = span_of(p, n, n, &basis);
    let sc = composition_algebra(p, n, &basis);
    let block_rad: Vec<Vec<u32>> = rad_mats
        .iter()
        .map(|f| coords.coords(&f.vectorize()).expect("block lies in End"))
        .collect();
    let block_rad = FieldMat::from_columns(p, basis.len(), &block_rad).column_space();
    let generic = radical_sc(&sc)?;
    if generic.cols() != block_rad.cols() || span_sum(p, &generic, &block_rad).cols() != generic.cols() {
        return Err(Error::RadicalCheck(format!(
            "block formula gives dimension {}, generic computation {}",
            block_rad.cols(),
            generic.cols()
        )));
    }
    let elements = sums
        .iter()
        .map(|s| {
            let eps = s.inclusion.mul(&s.projection);
            coords.coords(&eps.vectorize()).expect("idempotent lies in End")
        })
        .collect();
    let idem = Idempotents {
        elements,
        classes: sums.iter().map(|s| s.class).collect(),
        labels: (0..decomposition.classes.len()).map(|c| format!("M{c}")).collect(),
    };
    let e = Arc::new(sc.with_idempotents(idem)?.with_radical(block_rad)?);
    let mut pkg = EndoPackage {
        m: m.clone(),
        e,
        basis,
        decomposition,
        projectives: Vec::new(),
    };
    pkg.projectives = pkg
        .decomposition
        .summands
        .iter()
        .map(|s| hom_transport(&pkg, &s.module))
        .collect::<Result<_>>()?;
    Ok(pkg)
}

impl EndoPackage {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Hom_A(m, x)` with its basis of maps.
    pub fn transport(&self, x: &ActionModule) -> Result<Transported> {
        if !same_algebra(self.m.alg(), x.alg()) {
            return Err(Error::AlgebraMismatch);
        }
        let p = x.p();
        let hs = hom_basis(&self.m, x)?;
        if hs.is_empty() {
            return Ok(Transported {
                module: ActionModule::zero(&self.e),
                basis: hs,
            });
        }
        let coords = span_of(p, x.dim(), self.m.dim(), &hs);
        let actions = self
            .basis
            .iter()
            .map(|f| {
                let cols: Vec<Vec<u32>> = hs
                    .iter()
                    .map(|h| {
                        coords
                            .coords(&h.mul(f).vectorize())
                            .expect("precomposition stays in Hom")
                    })
                    .collect();
                FieldMat::from_columns(p, hs.len(), &cols)
            })
            .collect();
        Ok(Transported {
            module: ActionModule::new_unchecked(self.e.clone(), hs.len(), actions),
            basis: hs,
        })
    }

    /// `Hom_A(m, g)` between the transported modules.
    pub fn transport_map(&self, g: &ModMorphism) -> Result<ModMorphism> {
        let src = self.transport(&g.source)?;
        let dst = self.transport(&g.target)?;
        let p = self.m.p();
        let matrix = if src.basis.is_empty() || dst.basis.is_empty() {
            FieldMat::zeros(p, dst.basis.len(), src.basis.len())
        } else {
            let coords = span_of(p, g.target.dim(), self.m.dim(), &dst.basis);
            let cols: Vec<Vec<u32>> = src
                .basis
                .iter()
                .map(|h| {
                    coords
                        .coords(&g.matrix.mul(h).vectorize())
                        .expect("composite is a morphism")
                })
                .collect();
            FieldMat::from_columns(p, dst.basis.len(), &cols)
        };
        Ok(ModMorphism::new_unchecked(src.module, dst.module, matrix))
    }

    /// Whether `x` is a direct sum of summands of `m`.
    pub fn in_add(&self, x: &ActionModule) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        for c in decompose(x, 0)?.classes {
            let mut hit = false;
            for own in &self.decomposition.classes {
                if own.fingerprint == c.fingerprint
                    && indecomposables_isomorphic(&own.representative, &c.representative)?.is_some()
                {
                    hit = true;
                    break;
                }
            }
            if !hit {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Index of the summand standing for each idempotent class.
    fn class_summands(&self) -> Vec<usize> {
        self.e
            .idempotents()
            .expect("package algebras carry idempotents")
            .representatives()
    }
}

pub fn hom_transport(pkg: &EndoPackage, x: &ActionModule) -> Result<ActionModule> {
    Ok(pkg.transport(x)?.module)
}

/// `m (x)_E y` as a quotient of `m (x)_k y`, coordinates `i * dim y + j`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub module: ActionModule,
    /// `m (x)_k y -> m (x)_E y`
    pub projection: FieldMat,
    /// A right inverse of the projection.
    pub section: FieldMat,
}

pub fn tensor_over_end(pkg: &EndoPackage, y: &ActionModule) -> Result<Tensor> {
    if !same_algebra(y.alg(), &pkg.e) {
        return Err(Error::AlgebraMismatch);
    }
    let p = y.p();
    let (dm, dy) = (pkg.m.dim(), y.dim());
    let total = dm * dy;
    let id_m = FieldMat::identity(p, dm);
    let id_y = FieldMat::identity(p, dy);
    let actions = pkg.m.actions().iter().map(|a| a.kron(&id_y)).collect();
    let plain = ActionModule::new_unchecked(pkg.m.alg().clone(), total, actions);
    let rels: Vec<FieldMat> = pkg
        .basis
        .iter()
        .enumerate()
        .map(|(k, f)| f.kron(&id_y).sub(&id_m.kron(y.action(k))))
        .collect();
    let refs: Vec<&FieldMat> = rels.iter().collect();
    let span = FieldMat::hstack(p, total, &refs).column_space();
    let (module, projection) = plain.quotient(&span)?;
    let section = projection
        .solve(&FieldMat::identity(p, module.dim()))?
        .expect("quotient maps are onto");
    Ok(Tensor {
        module,
        projection,
        section,
    })
}

/// `m (x)_E phi` for an `E`-linear map `phi: y -> y'`.
pub fn tensor_map(pkg: &EndoPackage, phi: &ModMorphism, src: &Tensor, dst: &Tensor) -> ModMorphism {
    let p = phi.matrix.p();
    let lifted = FieldMat::identity(p, pkg.m.dim()).kron(&phi.matrix);
    let matrix = dst.projection.mul(&lifted).mul(&src.section);
    ModMorphism::new_unchecked(src.module.clone(), dst.module.clone(), matrix)
}

/// `sigma_y: y -> Hom_A(m, m (x)_E y)`, `w -> (t -> t (x) w)`.
pub fn canonical_map(pkg: &EndoPackage, y: &ActionModule) -> Result<ModMorphism> {
    let t = tensor_over_end(pkg, y)?;
    let target = pkg.transport(&t.module)?;
    let p = y.p();
    let dm = pkg.m.dim();
    let id_m = FieldMat::identity(p, dm);
    let matrix = if target.basis.is_empty() || y.is_zero() {
        FieldMat::zeros(p, target.basis.len(), y.dim())
    } else {
        let coords = span_of(p, t.module.dim(), dm, &target.basis);
        let cols: Vec<Vec<u32>> = (0..y.dim())
            .map(|j| {
                let w = FieldMat::from_fn(p, y.dim(), 1, |i, _| u32::from(i == j));
                let map = t.projection.mul(&id_m.kron(&w));
                coords.coords(&map.vectorize()).expect("t -> t (x) w is A-linear")
            })
            .collect();
        FieldMat::from_columns(p, target.basis.len(), &cols)
    };
    Ok(ModMorphism::new_unchecked(y.clone(), target.module, matrix))
}

/// A right `add v`-approximation `module -> x`.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub module: ActionModule,
    pub map: ModMorphism,
    /// Summand of `v` used for each block, by index in the decomposition of `v`.
    pub summands: Vec<usize>,
}

/// Minimal right approximation: the projective cover of `Hom_A(v, x)` over
/// `End(v)` read back through projectivization.
pub fn approximation(pkg: &EndoPackage, x: &ActionModule) -> Result<Approximation> {
    let alg = x.alg();
    let p = x.p();
    let tr = pkg.transport(x)?;
    let reps = pkg.class_summands();
    let mut modules = Vec::new();
    let mut blocks = Vec::new();
    let mut used = Vec::new();
    if !tr.module.is_zero() {
        for (c, w) in cover_generators(&tr.module)? {
            let k = reps[c];
            let s = &pkg.decomposition.summands[k];
            let h = FieldMat::combination(p, x.dim(), pkg.m.dim(), &w, &tr.basis);
            blocks.push(h.mul(&s.inclusion));
            modules.push(s.module.clone());
            used.push(k);
        }
    }
    let sum = direct_sum(alg, &modules)?;
    let refs: Vec<&FieldMat> = blocks.iter().collect();
    let matrix = FieldMat::hstack(p, x.dim(), &refs);
    Ok(Approximation {
        map: ModMorphism::new_unchecked(sum.module.clone(), x.clone(), matrix),
        module: sum.module,
        summands: used,
    })
}

pub fn add_approximation(v: &ActionModule, x: &ActionModule) -> Result<Approximation> {
    approximation(&end_algebra(v)?, x)
}

/// Whether every indecomposable projective is a summand of `v`.
pub fn is_generator(pkg: &EndoPackage) -> Result<bool> {
    for pr in crate::resolution::projectives(pkg.m.alg())? {
        if !pkg.in_add(&pr)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct CoresolutionResult {
    pub success: bool,
    /// Number of approximation steps taken.
    pub depth: usize,
    /// `V_0, ..., V_depth` on success.
    pub terms: Vec<ActionModule>,
    /// `V_depth -> ... -> V_0 -> x` on success.
    pub chain: Option<ExactSeq>,
    pub exact: bool,
    pub hom_exact: bool,
    /// The kernel outside `add v` on failure.
    pub failing_kernel: Option<ActionModule>,
}

pub fn coresolution_add_v(v: &ActionModule, x: &ActionModule, n: usize) -> Result<CoresolutionResult> {
    let pkg = end_algebra(v)?;
    if !is_generator(&pkg)? {
        return Err(Error::NotGenerator);
    }
    coresolution_with(&pkg, x, n)
}

/// Iterated minimal approximations; succeeds once a kernel lies in `add v`.
pub fn coresolution_with(pkg: &EndoPackage, x: &ActionModule, n: usize) -> Result<CoresolutionResult> {
    let mut terms: Vec<ActionModule> = Vec::new();
    // maps V_i -> K_i, and inclusions K_{i+1} -> V_i
    let mut approx: Vec<ModMorphism> = Vec::new();
    let mut incl: Vec<FieldMat> = Vec::new();
    let mut cur = x.clone();
    for depth in 0..=n {
        if pkg.in_add(&cur)? {
            terms.push(cur.clone());
            let chain = build_chain(x, &terms, &approx, &incl)?;
            let exact = is_exact(&chain)?;
            let hom_exact = hom_induced_exactness(&chain, &pkg.m)?;
            return Ok(CoresolutionResult {
                success: true,
                depth,
                terms,
                chain: Some(chain),
                exact,
                hom_exact,
                failing_kernel: None,
            });
        }
        if depth == n {
            break;
        }
        let a = approximation(pkg, &cur)?;
        let (k, inc) = kernel(&a.map)?;
        terms.push(a.module.clone());
        approx.push(a.map);
        incl.push(inc);
        cur = k;
    }
    Ok(CoresolutionResult {
        success: false,
        depth: n,
        terms: Vec::new(),
        chain: None,
        exact: false,
        hom_exact: false,
        failing_kernel: Some(cur),
    })
}

fn build_chain(
    x: &ActionModule,
    terms: &[ActionModule],
    approx: &[ModMorphism],
    incl: &[FieldMat],
) -> Result<ExactSeq> {
    let j = terms.len() - 1;
    if j == 0 {
        return ExactSeq::new(vec![ModMorphism::identity(x)]);
    }
    let mut maps = Vec::with_capacity(j + 1);
    // V_j = K_j sits inside V_{j-1}
    maps.push(ModMorphism::new_unchecked(
        terms[j].clone(),
        terms[j - 1].clone(),
        incl[j - 1].clone(),
    ));
    for i in (1..j).rev() {
        let d = incl[i - 1].mul(&approx[i].matrix);
        maps.push(ModMorphism::new_unchecked(terms[i].clone(), terms[i - 1].clone(), d));
    }
    maps.push(approx[0].clone());
    ExactSeq::new(maps)
}

/// Both sides of the global dimension criterion for `End(v)`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct EndoTestReport {
    pub n: usize,
    pub end_dim: usize,
    pub gldim: PdResult,
    /// `gd End(v) <= n + 2`
    pub gldim_side: bool,
    /// every registry member has an `add v` coresolution of length `n`
    pub coresolution_side: bool,
    pub agree: bool,
    /// Registry ids whose coresolution failed.
    pub failures: Vec<usize>,
    /// Registry ids whose chain failed an exactness check.
    pub inexact: Vec<usize>,
}

pub fn gldim_endo_test(
    v: &ActionModule,
    reg: &crate::krull_schmidt::Registry,
    n: usize,
    cutoff: usize,
) -> Result<EndoTestReport> {
    if !reg.complete {
        return Err(Error::IncompleteRegistry(
            "coresolutions were only checked on a sample".into(),
        ));
    }
    if !crate::igusa_todorov::check_gen_cogen(v)? {
        return Err(Error::NotGenCogen);
    }
    let pkg = end_algebra(v)?;
    let gd = gldim(&pkg.e, cutoff)?;
    let gldim_side = matches!(gd, PdResult::Exact { value } if value <= n + 2);
    let mut failures = Vec::new();
    let mut inexact = Vec::new();
    for entry in reg.entries() {
        let r = coresolution_with(&pkg, &entry.module.rebase(v.alg())?, n)?;
        if !r.success {
            failures.push(entry.id);
        } else if !(r.exact && r.hom_exact) {
            inexact.push(entry.id);
        }
    }
    let coresolution_side = failures.is_empty();
    Ok(EndoTestReport {
        n,
        end_dim: pkg.dim(),
        gldim: gd,
        gldim_side,
        coresolution_side,
        agree: gldim_side == coresolution_side,
        failures,
        inexact,
    })
}

/// `coker(Hom_A(m, g))` for `g: m_1 -> m_0` with both ends in `add m`.
pub fn coker_module(pkg: &EndoPackage, g: &ModMorphism) -> Result<ActionModule> {
    for (end, x) in [("source", &g.source), ("target", &g.target)] {
        if !pkg.in_add(x)? {
            return Err(Error::NotInAdd(format!("{end} of dimension {}", x.dim())));
        }
    }
    let hg = pkg.transport_map(g)?;
    Ok(hg.target.quotient(&hg.matrix.column_space())?.0)
}

/// A seeded random morphism between direct sums of summands of `m`.
pub fn sample_presentation(pkg: &EndoPackage, seed: u64) -> Result<ModMorphism> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alg = pkg.m.alg();
    let p = pkg.m.p();
    let classes = &pkg.decomposition.classes;
    let mut pick = |min_total: usize| -> Vec<ActionModule> {
        loop {
            let mut out = Vec::new();
            for c in classes {
                for _ in 0..rng.gen_range(0..=2usize) {
                    out.push(c.representative.clone());
                }
            }
            if out.len() >= min_total {
                return out;
            }
        }
    };
    let m1 = direct_sum(alg, &pick(0))?.module;
    let m0 = direct_sum(alg, &pick(1))?.module;
    let hs = hom_basis(&m1, &m0)?;
    let matrix = if hs.is_empty() {
        FieldMat::zeros(p, m0.dim(), m1.dim())
    } else {
        let coeffs: Vec<u32> = hs.iter().map(|_| rng.gen_range(0..p)).collect();
        FieldMat::combination(p, m0.dim(), m1.dim(), &coeffs, &hs)
    };
    Ok(ModMorphism::new_unchecked(m1, m0, matrix))
}

/// Direct sum of the non-projective indecomposable summands.
pub fn strip_projectives(x: &ActionModule) -> Result<ActionModule> {
    if x.is_zero() {
        return Ok(x.clone());
    }
    let mut keep = Vec::new();
    for s in decompose(x, 0)?.summands {
        if !is_projective(&s.module)? {
            keep.push(s.module);
        }
    }
    Ok(direct_sum(x.alg(), &keep)?.module)
}

#[derive(Clone, Debug)]
pub struct TensorSyzygyWitness {
    pub y: ActionModule,
    pub omega2: ActionModule,
    pub hom_y: ActionModule,
    pub verdict: bool,
}

/// `y = ker(m (x) E_1 -> m (x) E_0)` for a minimal presentation `E_1 -> E_0 -> x`,
/// compared with the second syzygy of `x` after discarding projective summands.
pub fn tensor_syzygy_witness(pkg: &EndoPackage, x: &ActionModule) -> Result<TensorSyzygyWitness> {
    if !same_algebra(x.alg(), &pkg.e) {
        return Err(Error::AlgebraMismatch);
    }
    let c0 = projective_cover(x)?;
    let (k1, inc1) = kernel(&c0.epi)?;
    let c1 = projective_cover(&k1)?;
    let (omega2, _) = kernel(&c1.epi)?;
    let d1 = ModMorphism::new_unchecked(c1.module.clone(), c0.module.clone(), inc1.mul(&c1.epi.matrix));
    let t1 = tensor_over_end(pkg, &c1.module)?;
    let t0 = tensor_over_end(pkg, &c0.module)?;
    let md = tensor_map(pkg, &d1, &t1, &t0);
    let (y, _) = kernel(&md)?;
    let hom_y = hom_transport(pkg, &y)?;
    let a = strip_projectives(&omega2)?;
    let b = strip_projectives(&hom_y)?;
    let verdict = is_isomorphic(&a, &b, DEFAULT_ISO_BUDGET)?;
    Ok(TensorSyzygyWitness {
        y,
        omega2,
        hom_y,
        verdict,
    })
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct TensorSyzygyRecord {
    pub index: usize,
    pub seed: u64,
    pub dim: usize,
    pub omega2_dim: usize,
    pub hom_y_dim: usize,
    /// `None` when the isomorphism test ran out of budget.
    pub verdict: Option<bool>,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct TensorSyzygyReport {
    pub end_dim: usize,
    pub seed: u64,
    pub sample_count: usize,
    pub samples: Vec<TensorSyzygyRecord>,
    pub failures: Vec<crate::io::ModuleFile>,
    pub inconclusive: usize,
}

impl TensorSyzygyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.inconclusive == 0
    }
}

/// [`tensor_syzygy_witness`] on `samples` seeded cokernels of maps in `add m`.
pub fn tensor_syzygy_audit(pkg: &EndoPackage, samples: usize, seed: u64) -> Result<TensorSyzygyReport> {
    let mut report = TensorSyzygyReport {
        end_dim: pkg.dim(),
        seed,
        sample_count: samples,
        samples: Vec::with_capacity(samples),
        failures: Vec::new(),
        inconclusive: 0,
    };
    for index in 0..samples {
        let s = crate::igusa_todorov::sample_seed(seed, index);
        let x = coker_module(pkg, &sample_presentation(pkg, s)?)?;
        let (verdict, omega2_dim, hom_y_dim) = match tensor_syzygy_witness(pkg, &x) {
            Ok(w) => (Some(w.verdict), w.omega2.dim(), w.hom_y.dim()),
            Err(Error::Inconclusive { .. }) => (None, 0, 0),
            Err(e) => return Err(e),
        };
        match verdict {
            Some(false) => report.failures.push(crate::io::ModuleFile::from_action(&x)),
            None => report.inconclusive += 1,
            Some(true) => {}
        }
        report.samples.push(TensorSyzygyRecord {
            index,
            seed: s,
            dim: x.dim(),
            omega2_dim,
            hom_y_dim,
            verdict,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
