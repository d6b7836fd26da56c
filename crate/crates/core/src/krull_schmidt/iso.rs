use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::FieldMat;
use crate::module::{hom_basis, same_algebra, ActionModule};

use super::{decompose, fingerprint};

pub const DEFAULT_ISO_BUDGET: usize = 256;
const EXHAUSTIVE_LIMIT: u64 = 1 << 20;

/// Isomorphism between modules already known to be indecomposable.
///
/// Decisive: for local `End(x)` some composite `g o f` of Hom basis elements is
/// invertible exactly when `x` and `y` are isomorphic, and then `f` is an isomorphism.
pub fn indecomposables_isomorphic(x: &ActionModule, y: &ActionModule) -> Result<Option<FieldMat>> {
    if x.dim() != y.dim() {
        return Ok(None);
    }
    let fs = hom_basis(x, y)?;
    for f in &fs {
        if f.is_invertible() {
            return Ok(Some(f.clone()));
        }
    }
    if fs.is_empty() {
        return Ok(None);
    }
    let gs = hom_basis(y, x)?;
    for f in &fs {
        for g in &gs {
            if g.mul(f).is_invertible() {
                return Ok(Some(f.clone()));
            }
        }
    }
    Ok(None)
}

pub fn is_isomorphic(x: &ActionModule, y: &ActionModule, budget: usize) -> Result<bool> {
    Ok(find_isomorphism(x, y, budget)?.is_some())
}

/// An isomorphism `x -> y` if one exists.
///
/// Tries Hom basis elements and `budget` seeded random combinations, then
/// compares Krull-Schmidt decompositions; falls back to scanning all of
/// `Hom(x, y)` when it is small enough, and otherwise reports inconclusive.
pub fn find_isomorphism(x: &ActionModule, y: &ActionModule, budget: usize) -> Result<Option<FieldMat>> {
    if !same_algebra(x.alg(), y.alg()) {
        return Err(Error::AlgebraMismatch);
    }
    if x.dim() != y.dim() || fingerprint(x) != fingerprint(y) {
        return Ok(None);
    }
    let p = x.p();
    if x.is_zero() {
        return Ok(Some(FieldMat::zeros(p, 0, 0)));
    }
    let hs = hom_basis(x, y)?;
    if hs.is_empty() {
        return Ok(None);
    }
    for h in &hs {
        if h.is_invertible() {
            return Ok(Some(h.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    let n = x.dim();
    for _ in 0..budget {
        let c: Vec<u32> = hs.iter().map(|_| rng.gen_range(0..p)).collect();
        let h = FieldMat::combination(p, n, n, &c, &hs);
        if h.is_invertible() {
            return Ok(Some(h));
        }
    }
    match by_decomposition(x, y) {
        Ok(r) => Ok(r),
        Err(_)
            if (p as u64)
                .checked_pow(hs.len() as u32)
                .is_some_and(|t| t <= EXHAUSTIVE_LIMIT) =>
        {
            Ok(exhaustive(p, n, &hs))
        }
        Err(_) => Err(Error::Inconclusive {
            dim: n,
            hom_dim: hs.len(),
        }),
    }
}

fn by_decomposition(x: &ActionModule, y: &ActionModule) -> Result<Option<FieldMat>> {
    let p = x.p();
    let dx = decompose(x, 0)?;
    let dy = decompose(y, 0)?;
    if dx.classes.len() != dy.classes.len() {
        return Ok(None);
    }
    let mut used = vec![false; dy.classes.len()];
    let mut matching = vec![0usize; dx.classes.len()];
    let mut maps = Vec::with_capacity(dx.classes.len());
    for (i, cx) in dx.classes.iter().enumerate() {
        let mut hit = None;
        for (j, cy) in dy.classes.iter().enumerate() {
            if used[j] || cy.fingerprint != cx.fingerprint || cy.multiplicity != cx.multiplicity {
                continue;
            }
            if let Some(f) = indecomposables_isomorphic(&cx.representative, &cy.representative)? {
                hit = Some((j, f));
                break;
            }
        }
        let Some((j, f)) = hit else { return Ok(None) };
        used[j] = true;
        matching[i] = j;
        maps.push(f);
    }
    // assemble: x-summand s of class i goes to the next y-summand of class matching[i]
    let mut iso = FieldMat::zeros(p, y.dim(), x.dim());
    let mut next_y: Vec<Vec<usize>> = vec![Vec::new(); dy.classes.len()];
    for (k, s) in dy.summands.iter().enumerate().rev() {
        next_y[s.class].push(k);
    }
    for s in &dx.summands {
        let j = matching[s.class];
        let t = &dy.summands[next_y[j].pop().expect("multiplicities agree")];
        // rep_x -> s and rep_y -> t
        let to_s = indecomposables_isomorphic(&dx.classes[s.class].representative, &s.module)?
            .expect("summand is in its class");
        let inv_to_s = to_s.inverse().expect("isomorphism");
        let to_t =
            indecomposables_isomorphic(&dy.classes[j].representative, &t.module)?.expect("summand is in its class");
        let phi = to_t.mul(&maps[s.class]).mul(&inv_to_s);
        iso = iso.add(&t.inclusion.mul(&phi).mul(&s.projection));
    }
    debug_assert!(iso.is_invertible());
    Ok(Some(iso))
}

fn exhaustive(p: u32, n: usize, hs: &[FieldMat]) -> Option<FieldMat> {
    let k = hs.len();
    let mut c = vec![0u32; k];
    loop {
        let h = FieldMat::combination(p, n, n, &c, hs);
        if h.is_invertible() {
            return Some(h);
        }
        let mut i = 0;
        while i < k {
            c[i] += 1;
            if c[i] < p {
                break;
            }
            c[i] = 0;
            i += 1;
        }
        if i == k {
            return None;
        }
    }
}
