//! Krull-Schmidt decompositions, isomorphism tests and iso-class registries.

mod enumerate;
mod iso;
mod local;
mod registry;
mod structure;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::SCAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{ColumnBasis, FieldMat};
use crate::module::{hom_basis, ActionModule, ModMorphism};

pub use enumerate::{enumerate_indecomposables, QuiverPresentation};
pub use iso::{find_isomorphism, indecomposables_isomorphic, is_isomorphic, DEFAULT_ISO_BUDGET};
pub use local::{is_irreducible, min_poly, LocalityCertificate};
pub use registry::{Registry, RegistryEntry};
pub use structure::compute_structure;

/// Cheap isomorphism invariants.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub dim_vector: Vec<usize>,
    /// Rank of the action of every algebra basis element.
    pub action_ranks: Vec<usize>,
}

pub fn fingerprint(x: &ActionModule) -> Fingerprint {
    Fingerprint {
        dim: x.dim(),
        dim_vector: x.dim_vector().unwrap_or_default(),
        action_ranks: x.actions().iter().map(|a| a.rank()).collect(),
    }
}

/// `End(x)` as a structure-constant algebra on a Hom basis, with `f * g = g o f`.
pub fn end_algebra_sc(x: &ActionModule) -> Result<(SCAlgebra, Vec<FieldMat>)> {
    let basis = hom_basis(x, x)?;
    let sc = composition_algebra(x.p(), x.dim(), &basis);
    Ok((sc, basis))
}

/// Structure constants of a composition-closed space of square matrices, `f * g = g o f`.
pub(crate) fn composition_algebra(p: u32, m: usize, basis: &[FieldMat]) -> SCAlgebra {
    let h = basis.len();
    let flat: Vec<Vec<u32>> = basis.iter().map(|f| f.vectorize()).collect();
    let coords = ColumnBasis::new(FieldMat::from_columns(p, m * m, &flat));
    let mut table = vec![0u32; h * h * h];
    for i in 0..h {
        for j in 0..h {
            let prod = basis[j].mul(&basis[i]).vectorize();
            let c = coords.coords(&prod).expect("composition stays in End");
            table[(i * h + j) * h..(i * h + j + 1) * h].copy_from_slice(&c);
        }
    }
    let unit = coords
        .coords(&FieldMat::identity(p, m).vectorize())
        .expect("identity is an endomorphism");
    SCAlgebra::from_flat(p, h, table, unit)
}

/// A direct sum decomposition `x = a (+) b` with structure maps.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub parts: [ActionModule; 2],
    pub inclusions: [FieldMat; 2],
    pub projections: [FieldMat; 2],
}

fn split_along(x: &ActionModule, k: &FieldMat, i: &FieldMat) -> Result<Splitting> {
    let p = x.p();
    let (a, ka) = x.submodule(k)?;
    let (b, ib) = x.submodule(i)?;
    let change = FieldMat::hstack(p, x.dim(), &[&ka, &ib]);
    let inv = change
        .inverse()
        .ok_or_else(|| Error::InvalidModule("parts do not span".into()))?;
    let pa = inv.block(0, 0, a.dim(), x.dim());
    let pb = inv.block(a.dim(), 0, b.dim(), x.dim());
    Ok(Splitting {
        parts: [a, b],
        inclusions: [ka, ib],
        projections: [pa, pb],
    })
}

/// Fitting decomposition `x = ker f^N (+) im f^N` when both parts are nonzero.
pub fn fitting_split(x: &ActionModule, f: &ModMorphism) -> Result<Option<Splitting>> {
    fitting_matrix(x, &f.matrix)
}

fn fitting_matrix(x: &ActionModule, f: &FieldMat) -> Result<Option<Splitting>> {
    let n = x.dim();
    if n == 0 {
        return Ok(None);
    }
    let fnn = f.pow(n as u64);
    let r = fnn.rank();
    if r == 0 || r == n {
        return Ok(None);
    }
    Ok(Some(split_along(x, &fnn.kernel_basis(), &fnn.column_space())?))
}

/// One indecomposable summand of a decomposition.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: ActionModule,
    /// summand -> input
    pub inclusion: FieldMat,
    /// input -> summand
    pub projection: FieldMat,
    pub class: usize,
}

#[derive(Clone, Debug)]
pub struct SummandClass {
    pub representative: ActionModule,
    pub multiplicity: usize,
    pub fingerprint: Fingerprint,
    pub certificate: LocalityCertificate,
}

#[derive(Clone, Debug)]
pub struct DecompReport {
    pub summands: Vec<Summand>,
    pub classes: Vec<SummandClass>,
}

impl DecompReport {
    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(|s| s.module.dim()).sum()
    }

    pub fn is_indecomposable(&self) -> bool {
        self.summands.len() == 1
    }

    /// `(class dim, multiplicity)` pairs, for quick comparisons.
    pub fn multiset(&self) -> Vec<(Fingerprint, usize)> {
        self.classes
            .iter()
            .map(|c| (c.fingerprint.clone(), c.multiplicity))
            .collect()
    }
}

enum Step {
    Split(Splitting),
    Leaf(LocalityCertificate),
}

const EARLY_RANDOM: usize = 24;
const LATE_RANDOM: usize = 400;
const PRODUCT_SPAN: usize = 8;

fn random_combination(p: u32, basis: &[FieldMat], rng: &mut ChaCha8Rng) -> FieldMat {
    let coeffs: Vec<u32> = basis.iter().map(|_| rng.gen_range(0..p)).collect();
    let (r, c) = (basis[0].rows(), basis[0].cols());
    FieldMat::combination(p, r, c, &coeffs, basis)
}

fn step(x: &ActionModule, rng: &mut ChaCha8Rng) -> Result<Step> {
    let p = x.p();
    let basis = hom_basis(x, x)?;
    if basis.len() == 1 {
        return Ok(Step::Leaf(local::trivial_certificate(p)));
    }
    for f in &basis {
        if let Some(s) = fitting_matrix(x, f)? {
            return Ok(Step::Split(s));
        }
    }
    let t = basis.len().min(PRODUCT_SPAN);
    for i in 0..t {
        for j in 0..t {
            if let Some(s) = fitting_matrix(x, &basis[i].mul(&basis[j]))? {
                return Ok(Step::Split(s));
            }
        }
    }
    for _ in 0..EARLY_RANDOM {
        if let Some(s) = fitting_matrix(x, &random_combination(p, &basis, rng))? {
            return Ok(Step::Split(s));
        }
    }
    let end = composition_algebra(p, x.dim(), &basis);
    if let Some(cert) = local::certify_local(&end, rng)? {
        return Ok(Step::Leaf(cert));
    }
    for _ in 0..LATE_RANDOM {
        if let Some(s) = fitting_matrix(x, &random_combination(p, &basis, rng))? {
            return Ok(Step::Split(s));
        }
    }
    Err(Error::UncertifiedLeaf { dim: x.dim() })
}

/// Whether `x` is nonzero with local endomorphism ring; certificate on success.
pub fn locality(x: &ActionModule, seed: u64) -> Result<Option<LocalityCertificate>> {
    if x.is_zero() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match step(x, &mut rng)? {
        Step::Split(_) => Ok(None),
        Step::Leaf(c) => Ok(Some(c)),
    }
}

pub fn is_indecomposable(x: &ActionModule) -> Result<bool> {
    Ok(locality(x, 0)?.is_some())
}

/// Splits `x` into indecomposables with locality certificates.
pub fn decompose(x: &ActionModule, seed: u64) -> Result<DecompReport> {
    let p = x.p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = FieldMat::identity(p, x.dim());
    let mut stack = vec![(x.clone(), id.clone(), id)];
    let mut leaves: Vec<(ActionModule, FieldMat, FieldMat, LocalityCertificate)> = Vec::new();
    while let Some((y, inc, proj)) = stack.pop() {
        if y.is_zero() {
            continue;
        }
        match step(&y, &mut rng)? {
            Step::Leaf(cert) => leaves.push((y, inc, proj, cert)),
            Step::Split(s) => {
                let [a, b] = s.parts;
                let [ia, ib] = s.inclusions;
                let [pa, pb] = s.projections;
                stack.push((b, inc.mul(&ib), pb.mul(&proj)));
                stack.push((a, inc.mul(&ia), pa.mul(&proj)));
            }
        }
    }
    let mut classes: Vec<SummandClass> = Vec::new();
    let mut summands = Vec::with_capacity(leaves.len());
    for (module, inclusion, projection, certificate) in leaves {
        let fp = fingerprint(&module);
        let mut found = None;
        for (ci, c) in classes.iter().enumerate() {
            if c.fingerprint == fp && indecomposables_isomorphic(&c.representative, &module)?.is_some() {
                found = Some(ci);
                break;
            }
        }
        let class = match found {
            Some(ci) => {
                classes[ci].multiplicity += 1;
                ci
            }
            None => {
                classes.push(SummandClass {
                    representative: module.clone(),
                    multiplicity: 1,
                    fingerprint: fp,
                    certificate,
                });
                classes.len() - 1
            }
        };
        summands.push(Summand {
            module,
            inclusion,
            projection,
            class,
        });
    }
    // stable order by fingerprint
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by(|&a, &b| classes[a].fingerprint.cmp(&classes[b].fingerprint));
    let mut rank = vec![0; classes.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let mut sorted_classes: Vec<Option<SummandClass>> = classes.into_iter().map(Some).collect();
    let classes: Vec<SummandClass> = order
        .iter()
        .map(|&i| sorted_classes[i].take().expect("each class moved once"))
        .collect();
    for s in &mut summands {
        s.class = rank[s.class];
    }
    summands.sort_by_key(|s| s.class);
    Ok(DecompReport { summands, classes })
}

#[cfg(test)]
mod tests;
