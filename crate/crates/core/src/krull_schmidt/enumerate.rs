//! Exhaustive enumeration of indecomposables of bounded dimension.

use std::sync::Arc;

use crate::algebra::SCAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{ColumnBasis, FieldMat};
use crate::module::{radical_top_socle, ActionModule};
use crate::resolution::projective_cover;

use super::{decompose, locality, Registry};

#[derive(Clone, Debug)]
struct Word {
    start: usize,
    end: usize,
    /// Parent word and the arrow appended to it.
    parent: Option<(usize, usize)>,
}

/// Quiver of a basic split algebra: vertices are the primitive idempotents and
/// arrows from `u` to `v` lift a basis of `e_v (rad / rad^2) e_u`.
#[derive(Clone, Debug)]
pub struct QuiverPresentation {
    alg: Arc<SCAlgebra>,
    pub vertex_count: usize,
    /// `(source, target, algebra element)`.
    pub arrows: Vec<(usize, usize, Vec<u32>)>,
    words: Vec<Word>,
    /// Column `k`: basis element `b_k` in word coordinates.
    basis_in_words: FieldMat,
    /// `(arrow, word, product in word coordinates)` identities to verify.
    checks: Vec<(usize, usize, Vec<u32>)>,
}

impl QuiverPresentation {
    pub fn new(alg: &Arc<SCAlgebra>) -> Result<Self> {
        let idem = alg.require_idempotents()?;
        let rad = alg.require_radical()?;
        let p = alg.p();
        let d = alg.dim();
        let nv = idem.elements.len();
        if idem.class_count() != nv {
            return Err(Error::Unsupported("enumeration needs a basic algebra".into()));
        }
        let es = &idem.elements;
        let rad2 = alg.product_space(rad, rad);
        let corner = |u: usize, v: usize, space: &FieldMat| -> FieldMat {
            let cols: Vec<Vec<u32>> = (0..space.cols())
                .map(|j| alg.mul(&alg.mul(&es[v], &space.col(j)), &es[u]))
                .collect();
            FieldMat::from_columns(p, d, &cols).column_space()
        };
        for v in 0..nv {
            let whole = alg.right_mult_by(&es[v]).mul(&alg.left_mult_by(&es[v])).column_space();
            let r = corner(v, v, rad);
            if whole.cols() - r.cols() != 1 {
                return Err(Error::Unsupported(format!(
                    "simple module at vertex {v} has a nontrivial endomorphism field"
                )));
            }
        }
        let mut arrows = Vec::new();
        for u in 0..nv {
            for v in 0..nv {
                let w = corner(u, v, rad);
                let w2 = corner(u, v, &rad2);
                let mut span = w2.clone();
                for j in 0..w.cols() {
                    let c = w.col(j);
                    let inside = span.cols() > 0 && ColumnBasis::new(span.clone()).contains(&c);
                    if !inside {
                        arrows.push((u, v, c.clone()));
                        span = FieldMat::hstack(p, d, &[&span, &FieldMat::column_vector(p, &c)]);
                    }
                }
            }
        }
        // words in the arrows spanning A, level by level
        let mut words = Vec::new();
        let mut values: Vec<Vec<u32>> = Vec::new();
        let mut frontier = Vec::new();
        for (v, e) in es.iter().enumerate() {
            words.push(Word {
                start: v,
                end: v,
                parent: None,
            });
            values.push(e.clone());
            frontier.push(words.len() - 1);
        }
        let mut accepted = ColumnBasis::new(FieldMat::from_columns(p, d, &values));
        while !frontier.is_empty() && accepted.dim() < d {
            let mut next = Vec::new();
            for &wi in &frontier {
                for (ai, (s, t, a)) in arrows.iter().enumerate() {
                    if *s != words[wi].end {
                        continue;
                    }
                    let val = alg.mul(a, &values[wi]);
                    if accepted.contains(&val) {
                        continue;
                    }
                    words.push(Word {
                        start: words[wi].start,
                        end: *t,
                        parent: Some((wi, ai)),
                    });
                    values.push(val);
                    accepted = ColumnBasis::new(FieldMat::from_columns(p, d, &values));
                    next.push(words.len() - 1);
                }
            }
            frontier = next;
        }
        if accepted.dim() < d {
            return Err(Error::InvalidAlgebra("arrows do not generate the radical".into()));
        }
        let c = FieldMat::from_columns(p, d, &values);
        let cinv = c.inverse().expect("word values form a basis");
        let mut checks = Vec::new();
        for (ai, (s, _, a)) in arrows.iter().enumerate() {
            for (wi, w) in words.iter().enumerate() {
                if w.end != *s {
                    continue;
                }
                if words.iter().any(|x| x.parent == Some((wi, ai))) {
                    continue;
                }
                let prod = alg.mul(a, &values[wi]);
                checks.push((ai, wi, cinv.mul_vec(&prod)));
            }
        }
        Ok(QuiverPresentation {
            alg: alg.clone(),
            vertex_count: nv,
            arrows,
            words,
            basis_in_words: cinv,
            checks,
        })
    }

    /// Builds the module with the given vertex dimensions and arrow matrices
    /// (`dims[target] x dims[source]`), or `None` if a relation fails.
    pub fn module(&self, dims: &[usize], maps: &[FieldMat]) -> Option<ActionModule> {
        let p = self.alg.p();
        let m: usize = dims.iter().sum();
        let mut offsets = Vec::with_capacity(dims.len());
        let mut off = 0;
        for &d in dims {
            offsets.push(off);
            off += d;
        }
        let padded: Vec<FieldMat> = self
            .arrows
            .iter()
            .zip(maps)
            .map(|((s, t, _), a)| {
                let mut full = FieldMat::zeros(p, m, m);
                full.set_block(offsets[*t], offsets[*s], a);
                full
            })
            .collect();
        let mut word_actions: Vec<FieldMat> = Vec::with_capacity(self.words.len());
        for w in &self.words {
            let x = match w.parent {
                None => FieldMat::from_fn(p, m, m, |i, j| {
                    u32::from(i == j && i >= offsets[w.start] && i < offsets[w.start] + dims[w.start])
                }),
                Some((parent, arrow)) => padded[arrow].mul(&word_actions[parent]),
            };
            word_actions.push(x);
        }
        for (ai, wi, coords) in &self.checks {
            let lhs = padded[*ai].mul(&word_actions[*wi]);
            let rhs = FieldMat::combination(p, m, m, coords, &word_actions);
            if lhs != rhs {
                return None;
            }
        }
        let actions = (0..self.alg.dim())
            .map(|k| FieldMat::combination(p, m, m, &self.basis_in_words.col(k), &word_actions))
            .collect();
        Some(ActionModule::new_unchecked(self.alg.clone(), m, actions))
    }
}

fn dim_vectors(n: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            if cur.iter().any(|&d| d > 0) {
                out.push(cur.clone());
            }
            return;
        }
        for d in 0..=left {
            cur[i] = d;
            rec(i + 1, left - d, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, cap, &mut cur, &mut out);
    out.sort_by_key(|v| (v.iter().sum::<usize>(), v.clone()));
    out
}

/// All indecomposables of total dimension at most `dim_cap`, up to isomorphism.
///
/// The completeness flag is set when covers, syzygies, radicals and socle
/// quotients of every member decompose into members.
pub fn enumerate_indecomposables(alg: &Arc<SCAlgebra>, dim_cap: usize, budget: u128) -> Result<Registry> {
    let pres = QuiverPresentation::new(alg)?;
    let p = alg.p();
    let vectors = dim_vectors(pres.vertex_count, dim_cap);
    let entry_count = |dv: &[usize]| -> usize { pres.arrows.iter().map(|(s, t, _)| dv[*s] * dv[*t]).sum() };
    for dv in &vectors {
        let needed = (p as u128).checked_pow(entry_count(dv) as u32).unwrap_or(u128::MAX);
        if needed > budget {
            return Err(Error::BudgetExceeded {
                needed,
                budget,
                dim_vector: dv.clone(),
            });
        }
    }
    let mut reg = Registry::new(alg.clone());
    for dv in &vectors {
        let e = entry_count(dv);
        let mut entries = vec![0u32; e];
        loop {
            let mut maps = Vec::with_capacity(pres.arrows.len());
            let mut k = 0;
            for (s, t, _) in &pres.arrows {
                let n = dv[*s] * dv[*t];
                maps.push(FieldMat::from_vec(p, dv[*t], dv[*s], entries[k..k + n].to_vec()));
                k += n;
            }
            if let Some(x) = pres.module(dv, &maps) {
                if locality(&x, 0)?.is_some() {
                    reg.insert(x)?;
                }
            }
            let mut i = 0;
            while i < e {
                entries[i] += 1;
                if entries[i] < p {
                    break;
                }
                entries[i] = 0;
                i += 1;
            }
            if i == e {
                break;
            }
        }
    }
    reg.complete = closure_holds(&reg)?;
    Ok(reg)
}

fn closure_holds(reg: &Registry) -> Result<bool> {
    for x in reg.modules() {
        let mut related = Vec::new();
        let cover = projective_cover(&x)?;
        let omega = crate::module::kernel(&cover.epi)?.0;
        let rts = radical_top_socle(&x)?;
        let (mod_soc, _) = x.quotient(&rts.soc_inclusion)?;
        related.push(cover.module);
        related.push(omega);
        related.push(rts.rad);
        related.push(mod_soc);
        for y in related {
            if y.is_zero() {
                continue;
            }
            for s in decompose(&y, 0)?.classes {
                if reg.find(&s.representative)?.is_none() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
