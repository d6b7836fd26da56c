use crate::error::{Error, Result};
use crate::linalg::{ColumnBasis, FieldMat};

use super::{hom_basis, ActionModule, ModMorphism};

/// A chain `X_0 -> X_1 -> ... -> X_k`, read as `0 -> X_0 -> ... -> X_k -> 0`.
#[derive(Clone, Debug)]
pub struct ExactSeq {
    pub maps: Vec<ModMorphism>,
}

impl ExactSeq {
    pub fn new(maps: Vec<ModMorphism>) -> Result<Self> {
        for (i, w) in maps.windows(2).enumerate() {
            if !w[0].target.same_as(&w[1].source) {
                return Err(Error::NotComposable { position: i });
            }
        }
        Ok(ExactSeq { maps })
    }

    /// The nodes `X_0, ..., X_k`.
    pub fn objects(&self) -> Vec<&ActionModule> {
        let mut out: Vec<&ActionModule> = self.maps.iter().map(|f| &f.source).collect();
        if let Some(last) = self.maps.last() {
            out.push(&last.target);
        }
        out
    }
}

/// Exactness of `0 -> V_0 -> ... -> V_k -> 0` for linear maps `maps[i]: V_i -> V_{i+1}`.
pub fn linear_exact(dims: &[usize], maps: &[FieldMat]) -> bool {
    debug_assert_eq!(dims.len(), maps.len() + 1);
    let ranks: Vec<usize> = maps.iter().map(|m| m.rank()).collect();
    for (i, &d) in dims.iter().enumerate() {
        let incoming = if i == 0 { 0 } else { ranks[i - 1] };
        let outgoing = ranks.get(i).copied().unwrap_or(0);
        if incoming + outgoing != d {
            return false;
        }
    }
    maps.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
}

/// Exactness of the chain padded with zeros at both ends.
pub fn is_exact(s: &ExactSeq) -> Result<bool> {
    let s = ExactSeq::new(s.maps.clone())?;
    let dims: Vec<usize> = s.objects().iter().map(|x| x.dim()).collect();
    let mats: Vec<FieldMat> = s.maps.iter().map(|f| f.matrix.clone()).collect();
    Ok(linear_exact(&dims, &mats))
}

/// Whether `Hom_A(v, -)` applied to the chain is exact.
pub fn hom_induced_exactness(s: &ExactSeq, v: &ActionModule) -> Result<bool> {
    let s = ExactSeq::new(s.maps.clone())?;
    let p = v.p();
    let homs: Vec<Vec<FieldMat>> = s.objects().iter().map(|x| hom_basis(v, x)).collect::<Result<_>>()?;
    let dims: Vec<usize> = homs.iter().map(|h| h.len()).collect();
    let mut induced = Vec::with_capacity(s.maps.len());
    for (i, f) in s.maps.iter().enumerate() {
        let (src, dst) = (&homs[i], &homs[i + 1]);
        if src.is_empty() || dst.is_empty() {
            induced.push(FieldMat::zeros(p, dst.len(), src.len()));
            continue;
        }
        let flat: Vec<Vec<u32>> = dst.iter().map(|h| h.vectorize()).collect();
        let coords = ColumnBasis::new(FieldMat::from_columns(p, flat[0].len(), &flat));
        let cols: Vec<Vec<u32>> = src
            .iter()
            .map(|h| {
                coords
                    .coords(&f.matrix.mul(h).vectorize())
                    .expect("composite is a homomorphism")
            })
            .collect();
        induced.push(FieldMat::from_columns(p, dst.len(), &cols));
    }
    Ok(linear_exact(&dims, &induced))
}
