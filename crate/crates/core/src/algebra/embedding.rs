use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ColumnBasis, FieldMat};

use super::radical::radical_sc;
use super::sc::SCAlgebra;

/// A unital subalgebra `A` of `R`, given by coordinates of a basis of `A` inside `R`.
#[derive(Clone, Debug)]
pub struct Embedding {
    ambient: Arc<SCAlgebra>,
    /// `dim R x dim A`, columns are the basis of `A`.
    sub_basis: FieldMat,
}

/// Outcome of the left-idealized-extension test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealizedVerdict {
    pub holds: bool,
    pub sub_radical_dim: usize,
    /// Radical of the subalgebra in ambient coordinates (columns).
    #[serde(skip)]
    pub sub_radical: FieldMat,
    pub witness: Option<IdealWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealWitness {
    pub ambient_basis_index: usize,
    pub ambient_element: String,
    pub radical_element: Vec<u32>,
    pub product: Vec<u32>,
}

impl Embedding {
    pub fn new(ambient: Arc<SCAlgebra>, sub_basis: FieldMat) -> Result<Self> {
        if sub_basis.rows() != ambient.dim() {
            return Err(Error::InvalidEmbedding(
                "sub-basis vectors have the wrong length".into(),
            ));
        }
        if sub_basis.rank() != sub_basis.cols() {
            return Err(Error::InvalidEmbedding("sub-basis is linearly dependent".into()));
        }
        let span = ColumnBasis::new(sub_basis.clone());
        if !span.contains(ambient.unit()) {
            return Err(Error::InvalidEmbedding(
                "subalgebra does not contain the unit of the ambient algebra".into(),
            ));
        }
        for i in 0..sub_basis.cols() {
            for j in 0..sub_basis.cols() {
                let prod = ambient.mul(&sub_basis.col(i), &sub_basis.col(j));
                if !span.contains(&prod) {
                    return Err(Error::InvalidEmbedding(format!(
                        "sub-basis not closed under multiplication (elements {i}, {j})"
                    )));
                }
            }
        }
        Ok(Embedding { ambient, sub_basis })
    }

    pub fn ambient(&self) -> &Arc<SCAlgebra> {
        &self.ambient
    }

    pub fn sub_basis(&self) -> &FieldMat {
        &self.sub_basis
    }

    /// The subalgebra as a structure-constant algebra in sub-basis coordinates.
    pub fn subalgebra(&self) -> SCAlgebra {
        let r = &self.ambient;
        let span = ColumnBasis::new(self.sub_basis.clone());
        let n = self.sub_basis.cols();
        let mut table = vec![0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                let prod = r.mul(&self.sub_basis.col(i), &self.sub_basis.col(j));
                let c = span.coords_unchecked(&prod);
                table[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(&c);
            }
        }
        let unit = span.coords_unchecked(r.unit());
        SCAlgebra::from_flat(r.p(), n, table, unit)
    }

    /// Whether the radical of the subalgebra is a left ideal of the ambient algebra.
    pub fn idealized_extension_check(&self) -> Result<IdealizedVerdict> {
        let sub = self.subalgebra();
        let rad_sub = radical_sc(&sub)?;
        let rad = self.sub_basis.mul(&rad_sub);
        let span = (rad.cols() > 0).then(|| ColumnBasis::new(rad.clone()));
        let r = &self.ambient;
        for i in 0..r.dim() {
            let ri = r.basis_vector(i);
            for k in 0..rad.cols() {
                let x = rad.col(k);
                let prod = r.mul(&ri, &x);
                let inside = match &span {
                    Some(s) => s.contains(&prod),
                    None => prod.iter().all(|&c| c == 0),
                };
                if !inside {
                    return Ok(IdealizedVerdict {
                        holds: false,
                        sub_radical_dim: rad.cols(),
                        sub_radical: rad.clone(),
                        witness: Some(IdealWitness {
                            ambient_basis_index: i,
                            ambient_element: r.basis_labels()[i].clone(),
                            radical_element: x,
                            product: prod,
                        }),
                    });
                }
            }
        }
        Ok(IdealizedVerdict {
            holds: true,
            sub_radical_dim: rad.cols(),
            sub_radical: rad,
            witness: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Upper triangular 2x2 over GF(2): basis e11, e12, e22.
    pub(crate) fn upper_triangular() -> SCAlgebra {
        let mut t = vec![vec![vec![0u32; 3]; 3]; 3];
        t[0][0] = vec![1, 0, 0]; // e11 e11
        t[0][1] = vec![0, 1, 0]; // e11 e12
        t[1][2] = vec![0, 1, 0]; // e12 e22
        t[2][2] = vec![0, 0, 1]; // e22 e22
        SCAlgebra::new(2, 3, t, vec![1, 0, 1])
            .unwrap()
            .with_labels(vec!["e11".into(), "e12".into(), "e22".into()])
    }

    fn m2() -> SCAlgebra {
        let idx = |i: usize, j: usize| i * 2 + j;
        let mut t = vec![vec![vec![0u32; 4]; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    t[idx(i, j)][idx(j, l)][idx(i, l)] = 1;
                }
            }
        }
        SCAlgebra::new(2, 4, t, vec![1, 0, 0, 1]).unwrap().with_labels(vec![
            "e11".into(),
            "e12".into(),
            "e21".into(),
            "e22".into(),
        ])
    }

    #[test]
    fn dual_numbers_inside_upper_triangular() {
        let r = Arc::new(upper_triangular());
        let sub = FieldMat::from_columns(2, 3, &[vec![1, 0, 1], vec![0, 1, 0]]);
        let e = Embedding::new(r, sub).unwrap();
        let v = e.idealized_extension_check().unwrap();
        assert!(v.holds);
        assert_eq!(v.sub_radical_dim, 1);
        assert_eq!(v.sub_radical.col(0), vec![0, 1, 0]);
    }

    #[test]
    fn upper_triangular_inside_m2_fails() {
        let r = Arc::new(m2());
        let sub = FieldMat::from_columns(2, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 1]]);
        let e = Embedding::new(r, sub).unwrap();
        let v = e.idealized_extension_check().unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert_eq!(w.ambient_element, "e21");
        assert_eq!(w.radical_element, vec![0, 1, 0, 0]);
        assert_eq!(w.product, vec![0, 0, 0, 1]);
    }

    #[test]
    fn whole_algebra_is_always_idealized() {
        for r in [upper_triangular(), m2()] {
            let d = r.dim();
            let e = Embedding::new(Arc::new(r), FieldMat::identity(2, d)).unwrap();
            assert!(e.idealized_extension_check().unwrap().holds);
        }
    }

    #[test]
    fn rejects_non_unital_subspace() {
        let r = Arc::new(upper_triangular());
        let sub = FieldMat::from_columns(2, 3, &[vec![1, 0, 0]]);
        assert!(matches!(Embedding::new(r, sub), Err(Error::InvalidEmbedding(_))));
    }
}
