//! Modules given by action matrices, their morphisms and Hom spaces.
//!
//! Matrices act on column vectors. For an algebra with basis `b_0..b_{d-1}` a
//! module of dimension `m` stores one `m x m` matrix per basis element.

mod exact;
mod rep;

use std::sync::{Arc, OnceLock};

use crate::algebra::{Embedding, SCAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{ColumnBasis, FieldMat};

pub use exact::{hom_induced_exactness, is_exact, linear_exact, ExactSeq};
pub use rep::QuiverRep;

#[derive(Default)]
struct ModuleCache {
    generator_actions: OnceLock<Vec<FieldMat>>,
    adapted: OnceLock<Option<Adapted>>,
}

/// Basis adapted to the idempotent decomposition `x = sum_k e_k x`.
struct Adapted {
    change: FieldMat,
    change_inv: FieldMat,
    /// `(offset, size)` of each `e_k x`.
    blocks: Vec<(usize, usize)>,
}

#[derive(Clone)]
pub struct ActionModule {
    alg: Arc<SCAlgebra>,
    dim: usize,
    actions: Arc<Vec<FieldMat>>,
    cache: Arc<ModuleCache>,
}

impl std::fmt::Debug for ActionModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ActionModule")
            .field("dim", &self.dim)
            .field("actions", &self.actions)
            .finish()
    }
}

pub fn same_algebra(a: &Arc<SCAlgebra>, b: &Arc<SCAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl ActionModule {
    /// Checks the module axioms on every pair of basis elements.
    pub fn new(alg: Arc<SCAlgebra>, dim: usize, actions: Vec<FieldMat>) -> Result<Self> {
        let x = Self::new_unchecked(alg, dim, actions);
        x.check_axioms()?;
        Ok(x)
    }

    pub(crate) fn new_unchecked(alg: Arc<SCAlgebra>, dim: usize, actions: Vec<FieldMat>) -> Self {
        debug_assert_eq!(actions.len(), alg.dim());
        ActionModule {
            alg,
            dim,
            actions: Arc::new(actions),
            cache: Arc::new(ModuleCache::default()),
        }
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(alg: &Arc<SCAlgebra>) -> Self {
        let actions = alg.left_mult().to_vec();
        Self::new_unchecked(alg.clone(), alg.dim(), actions)
    }

    pub fn zero(alg: &Arc<SCAlgebra>) -> Self {
        let p = alg.p();
        Self::new_unchecked(alg.clone(), 0, vec![FieldMat::zeros(p, 0, 0); alg.dim()])
    }

    pub fn check_axioms(&self) -> Result<()> {
        let a = &self.alg;
        let (p, d, m) = (a.p(), a.dim(), self.dim);
        if self.actions.len() != d {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dim {d}",
                self.actions.len()
            )));
        }
        for (i, x) in self.actions.iter().enumerate() {
            if x.rows() != m || x.cols() != m || x.p() != p {
                return Err(Error::InvalidModule(format!(
                    "action {i} has the wrong shape or modulus"
                )));
            }
        }
        if !self.act(a.unit()).is_identity() {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = self.actions[i].mul(&self.actions[j]);
                let rhs = self.act(a.product_of_basis(i, j));
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action of b{i} b{j} differs from the composite of actions"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn alg(&self) -> &Arc<SCAlgebra> {
        &self.alg
    }

    pub fn p(&self) -> u32 {
        self.alg.p()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn actions(&self) -> &[FieldMat] {
        &self.actions
    }

    pub fn action(&self, i: usize) -> &FieldMat {
        &self.actions[i]
    }

    /// Action of an arbitrary algebra element.
    pub fn act(&self, a: &[u32]) -> FieldMat {
        FieldMat::combination(self.p(), self.dim, self.dim, a, &self.actions)
    }

    /// Actions of the algebra generators, in the order of `SCAlgebra::generators`.
    pub fn generator_actions(&self) -> &[FieldMat] {
        self.cache
            .generator_actions
            .get_or_init(|| self.alg.generators().iter().map(|g| self.act(g)).collect())
    }

    /// Same underlying module (not merely isomorphic).
    pub fn same_as(&self, other: &ActionModule) -> bool {
        same_algebra(&self.alg, &other.alg)
            && self.dim == other.dim
            && (Arc::ptr_eq(&self.actions, &other.actions) || self.actions == other.actions)
    }

    fn adapted(&self) -> Option<&Adapted> {
        self.cache
            .adapted
            .get_or_init(|| {
                let idem = self.alg.idempotents()?;
                let p = self.p();
                let mut cols = Vec::new();
                let mut blocks = Vec::new();
                let mut off = 0;
                for e in &idem.elements {
                    let img = self.act(e).column_space();
                    blocks.push((off, img.cols()));
                    off += img.cols();
                    cols.push(img);
                }
                let refs: Vec<&FieldMat> = cols.iter().collect();
                let change = FieldMat::hstack(p, self.dim, &refs);
                let change_inv = change.inverse()?;
                Some(Adapted {
                    change,
                    change_inv,
                    blocks,
                })
            })
            .as_ref()
    }

    /// `T^{-1} X T` for every basis element.
    pub fn conjugate(&self, t: &FieldMat) -> Result<ActionModule> {
        let inv = t.inverse().ok_or_else(|| Error::ShapeMismatch {
            op: "conjugate",
            detail: "matrix is not invertible".into(),
        })?;
        if t.rows() != self.dim {
            return Err(Error::ShapeMismatch {
                op: "conjugate",
                detail: "wrong size".into(),
            });
        }
        let actions = self.actions.iter().map(|x| inv.mul(x).mul(t)).collect();
        Ok(Self::new_unchecked(self.alg.clone(), self.dim, actions))
    }

    /// Whether the column span of `sub` is invariant under the action.
    pub fn is_submodule(&self, sub: &FieldMat) -> bool {
        if sub.cols() == 0 {
            return true;
        }
        let span = ColumnBasis::spanning(sub);
        self.generator_actions()
            .iter()
            .all(|g| span.coords_matrix(&g.mul(span.basis())).is_some())
    }

    /// Submodule spanned by the columns of `sub` and its inclusion.
    pub fn submodule(&self, sub: &FieldMat) -> Result<(ActionModule, FieldMat)> {
        let basis = sub.column_space();
        let span = ColumnBasis::new(basis.clone());
        let mut actions = Vec::with_capacity(self.actions.len());
        for x in self.actions.iter() {
            let c = span
                .coords_matrix(&x.mul(&basis))
                .ok_or_else(|| Error::InvalidModule("subspace is not a submodule".into()))?;
            actions.push(c);
        }
        Ok((Self::new_unchecked(self.alg.clone(), basis.cols(), actions), basis))
    }

    /// Submodule generated by the columns of `gens`.
    pub fn generated_submodule(&self, gens: &FieldMat) -> FieldMat {
        let p = self.p();
        let mut span = gens.column_space();
        loop {
            let mut parts = vec![span.clone()];
            for g in self.generator_actions() {
                parts.push(g.mul(&span));
            }
            let refs: Vec<&FieldMat> = parts.iter().collect();
            let next = FieldMat::hstack(p, self.dim, &refs).column_space();
            if next.cols() == span.cols() {
                return span;
            }
            span = next;
        }
    }

    /// Quotient by the submodule spanned by `sub`, with the projection.
    pub fn quotient(&self, sub: &FieldMat) -> Result<(ActionModule, FieldMat)> {
        let p = self.p();
        let m = self.dim;
        let basis = sub.column_space();
        if !self.is_submodule(&basis) {
            return Err(Error::InvalidModule("subspace is not a submodule".into()));
        }
        let comp = crate::linalg::complement(p, &basis);
        let full = FieldMat::hstack(p, m, &[&basis, &comp]);
        let inv = full.inverse().expect("basis plus complement is invertible");
        let k = basis.cols();
        let q = comp.cols();
        let proj = inv.block(k, 0, q, m);
        let actions = self.actions.iter().map(|x| proj.mul(x).mul(&comp)).collect();
        Ok((Self::new_unchecked(self.alg.clone(), q, actions), proj))
    }

    /// `(rad A) x`.
    pub fn radical_submodule(&self) -> Result<FieldMat> {
        let rad = self.alg.require_radical()?;
        let p = self.p();
        let parts: Vec<FieldMat> = (0..rad.cols()).map(|j| self.act(&rad.col(j))).collect();
        let refs: Vec<&FieldMat> = parts.iter().collect();
        Ok(FieldMat::hstack(p, self.dim, &refs).column_space())
    }

    /// Elements killed by `rad A`.
    pub fn socle_submodule(&self) -> Result<FieldMat> {
        let rad = self.alg.require_radical()?;
        let p = self.p();
        let parts: Vec<FieldMat> = (0..rad.cols()).map(|j| self.act(&rad.col(j))).collect();
        let refs: Vec<&FieldMat> = parts.iter().collect();
        let stacked = FieldMat::vstack(p, self.dim, &refs);
        Ok(stacked.kernel_basis())
    }

    /// Vector space dual over the opposite algebra.
    pub fn dual(&self) -> ActionModule {
        self.dual_over(&Arc::new(self.alg.opposite()))
    }

    /// Dual over a caller-supplied copy of the opposite algebra.
    pub fn dual_over(&self, op: &Arc<SCAlgebra>) -> ActionModule {
        let actions = self.actions.iter().map(|x| x.transpose()).collect();
        Self::new_unchecked(op.clone(), self.dim, actions)
    }

    /// Restriction along a subalgebra embedding; `sub` is the subalgebra itself.
    pub fn restrict(&self, emb: &Embedding, sub: &Arc<SCAlgebra>) -> Result<ActionModule> {
        if !same_algebra(&self.alg, emb.ambient()) {
            return Err(Error::AlgebraMismatch);
        }
        let sb = emb.sub_basis();
        let actions = (0..sb.cols()).map(|j| self.act(&sb.col(j))).collect();
        Ok(Self::new_unchecked(sub.clone(), self.dim, actions))
    }

    /// Same module viewed over an equal copy of its algebra.
    pub fn rebase(&self, alg: &Arc<SCAlgebra>) -> Result<ActionModule> {
        if !same_algebra(&self.alg, alg) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(ActionModule {
            alg: alg.clone(),
            dim: self.dim,
            actions: self.actions.clone(),
            cache: Arc::new(ModuleCache::default()),
        })
    }

    /// Dimension of `e_v x` for each idempotent.
    pub fn dim_vector(&self) -> Option<Vec<usize>> {
        let idem = self.alg.idempotents()?;
        Some(idem.elements.iter().map(|e| self.act(e).rank()).collect())
    }
}

/// Direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: ActionModule,
    pub injections: Vec<FieldMat>,
    pub projections: Vec<FieldMat>,
}

pub fn direct_sum(alg: &Arc<SCAlgebra>, xs: &[ActionModule]) -> Result<DirectSum> {
    let p = alg.p();
    for x in xs {
        if !same_algebra(alg, x.alg()) {
            return Err(Error::AlgebraMismatch);
        }
    }
    let total: usize = xs.iter().map(|x| x.dim()).sum();
    let actions = (0..alg.dim())
        .map(|i| {
            let blocks: Vec<&FieldMat> = xs.iter().map(|x| x.action(i)).collect();
            FieldMat::block_diag(p, &blocks)
        })
        .collect();
    let mut injections = Vec::with_capacity(xs.len());
    let mut projections = Vec::with_capacity(xs.len());
    let mut off = 0;
    for x in xs {
        let n = x.dim();
        injections.push(FieldMat::from_fn(p, total, n, |i, j| u32::from(i == off + j)));
        projections.push(FieldMat::from_fn(p, n, total, |i, j| u32::from(j == off + i)));
        off += n;
    }
    Ok(DirectSum {
        module: ActionModule::new_unchecked(alg.clone(), total, actions),
        injections,
        projections,
    })
}

/// `x` repeated `n` times.
pub fn power(x: &ActionModule, n: usize) -> ActionModule {
    direct_sum(x.alg(), &vec![x.clone(); n]).expect("same algebra").module
}

#[derive(Clone, Debug)]
pub struct ModMorphism {
    pub source: ActionModule,
    pub target: ActionModule,
    pub matrix: FieldMat,
}

impl ModMorphism {
    /// Checks shape and that the matrix intertwines every basis action.
    pub fn new(source: ActionModule, target: ActionModule, matrix: FieldMat) -> Result<Self> {
        if !same_algebra(source.alg(), target.alg()) {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::ShapeMismatch {
                op: "morphism",
                detail: format!(
                    "{}x{} matrix for {} -> {}",
                    matrix.rows(),
                    matrix.cols(),
                    source.dim(),
                    target.dim()
                ),
            });
        }
        for i in 0..source.alg().dim() {
            if matrix.mul(source.action(i)) != target.action(i).mul(&matrix) {
                return Err(Error::NotMorphism { basis_element: i });
            }
        }
        Ok(ModMorphism { source, target, matrix })
    }

    pub(crate) fn new_unchecked(source: ActionModule, target: ActionModule, matrix: FieldMat) -> Self {
        ModMorphism { source, target, matrix }
    }

    pub fn identity(x: &ActionModule) -> Self {
        Self::new_unchecked(x.clone(), x.clone(), FieldMat::identity(x.p(), x.dim()))
    }

    pub fn zero(x: &ActionModule, y: &ActionModule) -> Self {
        Self::new_unchecked(x.clone(), y.clone(), FieldMat::zeros(x.p(), y.dim(), x.dim()))
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &ModMorphism) -> ModMorphism {
        Self::new_unchecked(
            first.source.clone(),
            self.target.clone(),
            self.matrix.mul(&first.matrix),
        )
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }
}

/// Basis of `Hom_A(x, y)` as matrices.
pub fn hom_basis(x: &ActionModule, y: &ActionModule) -> Result<Vec<FieldMat>> {
    if !same_algebra(x.alg(), y.alg()) {
        return Err(Error::AlgebraMismatch);
    }
    let p = x.p();
    let (mx, my) = (x.dim(), y.dim());
    if mx == 0 || my == 0 {
        return Ok(Vec::new());
    }
    let alg = x.alg();
    match (x.adapted(), y.adapted()) {
        (Some(ax), Some(ay)) => {
            let n_idem = alg.idempotents().map_or(0, |i| i.elements.len());
            let gx: Vec<FieldMat> = x.generator_actions()[n_idem..]
                .iter()
                .map(|g| ax.change_inv.mul(g).mul(&ax.change))
                .collect();
            let gy: Vec<FieldMat> = y.generator_actions()[n_idem..]
                .iter()
                .map(|g| ay.change_inv.mul(g).mul(&ay.change))
                .collect();
            let mut start = Vec::new();
            for (&(ox, dx), &(oy, dy)) in ax.blocks.iter().zip(&ay.blocks) {
                for a in 0..dy {
                    for b in 0..dx {
                        let mut f = FieldMat::zeros(p, my, mx);
                        f.set(oy + a, ox + b, 1);
                        start.push(f);
                    }
                }
            }
            let sols = intertwiners(p, start, &gx, &gy);
            Ok(sols
                .into_iter()
                .map(|f| ay.change.mul(&f).mul(&ax.change_inv))
                .collect())
        }
        _ => {
            let mut start = Vec::with_capacity(mx * my);
            for a in 0..my {
                for b in 0..mx {
                    let mut f = FieldMat::zeros(p, my, mx);
                    f.set(a, b, 1);
                    start.push(f);
                }
            }
            Ok(intertwiners(p, start, x.generator_actions(), y.generator_actions()))
        }
    }
}

/// Cuts the span of `start` down to matrices `F` with `F gx = gy F` for all pairs.
fn intertwiners(p: u32, start: Vec<FieldMat>, gx: &[FieldMat], gy: &[FieldMat]) -> Vec<FieldMat> {
    let mut sols = start;
    for (a, b) in gx.iter().zip(gy) {
        if sols.is_empty() {
            break;
        }
        let (rows, cols) = (sols[0].rows(), sols[0].cols());
        let defects: Vec<Vec<u32>> = sols.iter().map(|f| f.mul(a).sub(&b.mul(f)).vectorize()).collect();
        let c = FieldMat::from_columns(p, rows * cols, &defects);
        let ker = c.kernel_basis();
        sols = (0..ker.cols())
            .map(|k| FieldMat::combination(p, rows, cols, &ker.col(k), &sols))
            .collect();
    }
    sols
}

pub fn hom_space(x: &ActionModule, y: &ActionModule) -> Result<Vec<ModMorphism>> {
    Ok(hom_basis(x, y)?
        .into_iter()
        .map(|m| ModMorphism::new_unchecked(x.clone(), y.clone(), m))
        .collect())
}

pub fn hom_dim(x: &ActionModule, y: &ActionModule) -> Result<usize> {
    Ok(hom_basis(x, y)?.len())
}

#[derive(Clone, Debug)]
pub struct MorParts {
    pub kernel: ActionModule,
    /// kernel -> source
    pub kernel_inclusion: FieldMat,
    pub image: ActionModule,
    /// image -> target
    pub image_inclusion: FieldMat,
    /// source -> image
    pub coimage_map: FieldMat,
    pub cokernel: ActionModule,
    /// target -> cokernel
    pub cokernel_projection: FieldMat,
}

pub fn mor_parts(f: &ModMorphism) -> Result<MorParts> {
    let (kernel, kernel_inclusion) = f.source.submodule(&f.matrix.kernel_basis())?;
    let (image, image_inclusion) = f.target.submodule(&f.matrix)?;
    let coimage_map = ColumnBasis::new(image_inclusion.clone())
        .coords_matrix(&f.matrix)
        .expect("image contains every column");
    let (cokernel, cokernel_projection) = f.target.quotient(&image_inclusion)?;
    Ok(MorParts {
        kernel,
        kernel_inclusion,
        image,
        image_inclusion,
        coimage_map,
        cokernel,
        cokernel_projection,
    })
}

/// Kernel submodule of a morphism together with its inclusion.
pub fn kernel(f: &ModMorphism) -> Result<(ActionModule, FieldMat)> {
    f.source.submodule(&f.matrix.kernel_basis())
}

#[derive(Clone, Debug)]
pub struct RadTopSoc {
    pub rad: ActionModule,
    pub rad_inclusion: FieldMat,
    pub top: ActionModule,
    pub top_projection: FieldMat,
    pub soc: ActionModule,
    pub soc_inclusion: FieldMat,
}

pub fn radical_top_socle(x: &ActionModule) -> Result<RadTopSoc> {
    let r = x.radical_submodule()?;
    let (rad, rad_inclusion) = x.submodule(&r)?;
    let (top, top_projection) = x.quotient(&r)?;
    let (soc, soc_inclusion) = x.submodule(&x.socle_submodule()?)?;
    Ok(RadTopSoc {
        rad,
        rad_inclusion,
        top,
        top_projection,
        soc,
        soc_inclusion,
    })
}
