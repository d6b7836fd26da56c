//! Projective covers, syzygies and homological dimensions.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{ProjectiveData, SCAlgebra};
use crate::error::{Error, Result};
use crate::krull_schmidt::{decompose, is_isomorphic, Registry, DEFAULT_ISO_BUDGET};
use crate::linalg::{ColumnBasis, FieldMat};
use crate::module::{direct_sum, kernel, ActionModule, ModMorphism};

pub const DEFAULT_CUTOFF: usize = 20;

/// Projective dimension: exact, bounded below by the cutoff, or infinite with
/// a pair `i < j` such that the `i`-th and `j`-th syzygies are isomorphic and nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PdResult {
    Exact { value: usize },
    AtLeast { cutoff: usize },
    Infinite { i: usize, j: usize },
}

impl PdResult {
    pub fn exact(&self) -> Option<usize> {
        match self {
            PdResult::Exact { value } => Some(*value),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, PdResult::Exact { .. })
    }

    /// Supremum of two dimensions: infinite dominates, then censored, then exact.
    pub fn max(self, other: PdResult) -> PdResult {
        use PdResult::*;
        match (self, other) {
            (Infinite { .. }, _) => self,
            (_, Infinite { .. }) => other,
            (AtLeast { cutoff: a }, AtLeast { cutoff: b }) => AtLeast { cutoff: a.max(b) },
            (AtLeast { .. }, _) => self,
            (_, AtLeast { .. }) => other,
            (Exact { value: a }, Exact { value: b }) => Exact { value: a.max(b) },
        }
    }
}

impl std::fmt::Display for PdResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PdResult::Exact { value } => write!(f, "{value}"),
            PdResult::AtLeast { cutoff } => write!(f, ">= {cutoff}"),
            PdResult::Infinite { i, j } => write!(f, "infinite (syzygies {i} and {j} agree)"),
        }
    }
}

/// Indecomposable projectives `A e`, one per idempotent class.
pub fn projective_data(alg: &SCAlgebra) -> Result<&[ProjectiveData]> {
    alg.cache
        .projectives
        .get_or_init(|| compute_projectives(alg))
        .as_deref()
        .map_err(Clone::clone)
}

fn compute_projectives(alg: &SCAlgebra) -> Result<Vec<ProjectiveData>> {
    let idem = alg.require_idempotents()?;
    alg.require_radical()?;
    let p = alg.p();
    let mut out = Vec::with_capacity(idem.class_count());
    for (class, &rep) in idem.representatives().iter().enumerate() {
        let e = &idem.elements[rep];
        let basis = alg.right_mult_by(e).column_space();
        let coords = ColumnBasis::new(basis.clone());
        let actions: Vec<FieldMat> = alg
            .left_mult()
            .iter()
            .map(|l| coords.coords_matrix(&l.mul(&basis)).expect("A e is a left ideal"))
            .collect();
        let n = basis.cols();
        let module = ActionModule::new_unchecked(Arc::new(alg.clone()), n, actions.clone());
        let (top, _) = module.quotient(&module.radical_submodule()?)?;
        let top_end_dim = top.act(e).rank();
        let dim_vector = idem
            .elements
            .iter()
            .map(|f| FieldMat::combination(p, n, n, f, &actions).rank())
            .collect();
        out.push(ProjectiveData {
            class,
            idempotent: e.clone(),
            basis,
            actions,
            top_end_dim,
            dim_vector,
        });
    }
    Ok(out)
}

/// The indecomposable projective of class `c`.
pub fn indecomposable_projective(alg: &Arc<SCAlgebra>, c: usize) -> Result<ActionModule> {
    let data = &projective_data(alg)?[c];
    Ok(ActionModule::new_unchecked(
        alg.clone(),
        data.basis.cols(),
        data.actions.clone(),
    ))
}

/// The simple top of the indecomposable projective of class `c`.
pub fn simple_module(alg: &Arc<SCAlgebra>, c: usize) -> Result<ActionModule> {
    let pc = indecomposable_projective(alg, c)?;
    Ok(pc.quotient(&pc.radical_submodule()?)?.0)
}

/// All indecomposable projectives, one per class.
pub fn projectives(alg: &Arc<SCAlgebra>) -> Result<Vec<ActionModule>> {
    (0..projective_data(alg)?.len())
        .map(|c| indecomposable_projective(alg, c))
        .collect()
}

pub fn simples(alg: &Arc<SCAlgebra>) -> Result<Vec<ActionModule>> {
    (0..projective_data(alg)?.len())
        .map(|c| simple_module(alg, c))
        .collect()
}

#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub module: ActionModule,
    pub epi: ModMorphism,
    /// Class of each indecomposable summand, in order.
    pub classes: Vec<usize>,
}

impl ProjectiveCover {
    pub fn multiplicities(&self) -> Vec<usize> {
        let n = self.classes.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![0; n];
        for &c in &self.classes {
            out[c] += 1;
        }
        out
    }
}

/// Generators of a minimal cover: pairs `(class, w)` with `w` in `e_c x`,
/// one per copy of the simple `S_c` in the top of `x`.
pub fn cover_generators(x: &ActionModule) -> Result<Vec<(usize, Vec<u32>)>> {
    let p = x.p();
    let data = projective_data(x.alg())?;
    let r = x.radical_submodule()?;
    let (top, pi) = x.quotient(&r)?;
    let mut covered = FieldMat::zeros(p, top.dim(), 0);
    let mut pieces: Vec<(usize, Vec<u32>)> = Vec::new();
    for (c, d) in data.iter().enumerate() {
        if covered.cols() == top.dim() {
            break;
        }
        let ex = x.act(&d.idempotent).column_space();
        for j in 0..ex.cols() {
            let w = ex.col(j);
            let tw = pi.mul_vec(&w);
            let inside = if covered.cols() == 0 {
                tw.iter().all(|&v| v == 0)
            } else {
                ColumnBasis::new(covered.clone()).contains(&tw)
            };
            if inside {
                continue;
            }
            pieces.push((c, w));
            let with = FieldMat::hstack(p, top.dim(), &[&covered, &FieldMat::column_vector(p, &tw)]);
            covered = top.generated_submodule(&with);
        }
    }
    Ok(pieces)
}

/// Minimal projective cover built on [`cover_generators`].
pub fn projective_cover(x: &ActionModule) -> Result<ProjectiveCover> {
    let alg = x.alg();
    let p = x.p();
    let data = projective_data(alg)?;
    let pieces = cover_generators(x)?;
    let mut modules = Vec::with_capacity(pieces.len());
    let mut blocks = Vec::with_capacity(pieces.len());
    for (c, w) in &pieces {
        let d = &data[*c];
        modules.push(indecomposable_projective(alg, *c)?);
        let cols: Vec<Vec<u32>> = (0..d.basis.cols()).map(|k| x.act(&d.basis.col(k)).mul_vec(w)).collect();
        blocks.push(FieldMat::from_columns(p, x.dim(), &cols));
    }
    let sum = direct_sum(alg, &modules)?;
    let refs: Vec<&FieldMat> = blocks.iter().collect();
    let epi = FieldMat::hstack(p, x.dim(), &refs);
    debug_assert_eq!(epi.rank(), x.dim());
    Ok(ProjectiveCover {
        epi: ModMorphism::new_unchecked(sum.module.clone(), x.clone(), epi),
        module: sum.module,
        classes: pieces.iter().map(|(c, _)| *c).collect(),
    })
}

/// First syzygy with its inclusion into the cover.
pub fn syzygy_step(x: &ActionModule) -> Result<(ActionModule, ProjectiveCover, FieldMat)> {
    let cover = projective_cover(x)?;
    let (k, inc) = kernel(&cover.epi)?;
    Ok((k, cover, inc))
}

/// `i`-th syzygy.
pub fn syzygy(x: &ActionModule, i: usize) -> Result<ActionModule> {
    let mut cur = x.clone();
    for _ in 0..i {
        if cur.is_zero() {
            break;
        }
        cur = syzygy_step(&cur)?.0;
    }
    Ok(cur)
}

pub fn is_projective(x: &ActionModule) -> Result<bool> {
    Ok(projective_cover(x)?.module.dim() == x.dim())
}

/// Projective dimension with cycle detection among the syzygies seen so far.
pub fn proj_dim(x: &ActionModule, cutoff: usize) -> Result<PdResult> {
    let mut seen: Vec<ActionModule> = Vec::new();
    let mut cur = x.clone();
    for n in 0..cutoff.max(1) {
        if cur.is_zero() {
            return Ok(PdResult::Exact {
                value: n.saturating_sub(1),
            });
        }
        let (next, cover, _) = syzygy_step(&cur)?;
        if cover.module.dim() == cur.dim() {
            return Ok(PdResult::Exact { value: n });
        }
        for (i, prev) in seen.iter().enumerate() {
            if prev.dim() == cur.dim() && is_isomorphic(prev, &cur, DEFAULT_ISO_BUDGET)? {
                return Ok(PdResult::Infinite { i, j: n });
            }
        }
        seen.push(cur);
        cur = next;
    }
    Ok(PdResult::AtLeast { cutoff: cutoff.max(1) })
}

/// Minimal projective resolution up to `len` steps.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub covers: Vec<ProjectiveCover>,
    /// `syzygies[i]` is the `i`-th syzygy, starting with the module itself.
    pub syzygies: Vec<ActionModule>,
    /// Inclusion of `syzygies[i + 1]` into `covers[i]`.
    pub inclusions: Vec<FieldMat>,
}

impl Resolution {
    /// Differential `P_{i+1} -> P_i`.
    pub fn differential(&self, i: usize) -> FieldMat {
        self.inclusions[i].mul(&self.covers[i + 1].epi.matrix)
    }
}

pub fn resolution(x: &ActionModule, len: usize) -> Result<Resolution> {
    let mut res = Resolution {
        covers: Vec::new(),
        syzygies: vec![x.clone()],
        inclusions: Vec::new(),
    };
    for _ in 0..len {
        let cur = res.syzygies.last().expect("nonempty");
        if cur.is_zero() {
            break;
        }
        let (k, cover, inc) = syzygy_step(cur)?;
        res.covers.push(cover);
        res.inclusions.push(inc);
        res.syzygies.push(k);
    }
    Ok(res)
}

/// Supremum of the projective dimensions of the simple modules.
pub fn gldim(alg: &Arc<SCAlgebra>, cutoff: usize) -> Result<PdResult> {
    let mut best = PdResult::Exact { value: 0 };
    for s in simples(alg)? {
        best = best.max(proj_dim(&s, cutoff)?);
    }
    Ok(best)
}

/// Injective dimension, as the projective dimension of the dual over the opposite algebra.
pub fn inj_dim(x: &ActionModule, cutoff: usize) -> Result<PdResult> {
    proj_dim(&x.dual(), cutoff)
}

/// Largest finite projective dimension among the registry members.
pub fn findim_rep_finite(reg: &Registry, cutoff: usize) -> Result<usize> {
    if !reg.complete {
        return Err(Error::IncompleteRegistry(
            "registry is not closed under syzygies".into(),
        ));
    }
    let mut best = 0;
    for x in reg.modules() {
        let mut cur = x.clone();
        for _ in 0..cutoff {
            if cur.is_zero() {
                break;
            }
            for s in decompose(&cur, 0)?.classes {
                if reg.find(&s.representative)?.is_none() {
                    return Err(Error::IncompleteRegistry(format!(
                        "a syzygy summand of dimension {} is missing",
                        s.representative.dim()
                    )));
                }
            }
            cur = syzygy_step(&cur)?.0;
        }
        if let PdResult::Exact { value } = proj_dim(&x, cutoff)? {
            best = best.max(value);
        }
    }
    Ok(best)
}
