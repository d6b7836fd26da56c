use std::sync::Arc;

use crate::algebra::{radical_sc, Idempotents, SCAlgebra};
use crate::error::Result;
use crate::module::ActionModule;

use super::decompose;

/// Attaches primitive idempotents and the radical when they are missing.
///
/// The regular module splits as `A = (+) A e_j`; the idempotent endomorphism
/// projecting onto `A e_j` is right multiplication by `e_j`, so `e_j` is its
/// value on the unit.
pub fn compute_structure(a: &SCAlgebra, seed: u64) -> Result<SCAlgebra> {
    let mut out = a.clone();
    if out.radical().is_none() {
        let rad = radical_sc(a)?;
        out = out.with_radical(rad)?;
    }
    if out.idempotents().is_none() {
        let bare = Arc::new(a.clone().without_structure());
        let report = decompose(&ActionModule::regular(&bare), seed)?;
        let elements = report
            .summands
            .iter()
            .map(|s| s.inclusion.mul(&s.projection).mul_vec(a.unit()))
            .collect();
        let classes = report.summands.iter().map(|s| s.class).collect();
        let labels = (0..report.classes.len()).map(|c| format!("P{c}")).collect();
        out = out.with_idempotents(Idempotents {
            elements,
            classes,
            labels,
        })?;
    }
    Ok(out)
}
