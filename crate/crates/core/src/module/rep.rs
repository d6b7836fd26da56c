use crate::algebra::{Path, QuiverAlgebra};
use crate::error::{Error, Result};
use crate::linalg::FieldMat;

use super::ActionModule;

/// Representation of a bound quiver: a space per vertex and a `target x source` matrix per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    pub dims: Vec<usize>,
    pub maps: Vec<FieldMat>,
}

impl QuiverRep {
    pub fn zero(qa: &QuiverAlgebra) -> Self {
        let q = qa.quiver();
        QuiverRep {
            dims: vec![0; q.vertices().len()],
            maps: vec![FieldMat::zeros(qa.p(), 0, 0); q.arrows().len()],
        }
    }

    pub fn simple(qa: &QuiverAlgebra, v: usize) -> Self {
        let q = qa.quiver();
        let mut dims = vec![0; q.vertices().len()];
        dims[v] = 1;
        let maps = q
            .arrows()
            .iter()
            .map(|a| FieldMat::zeros(qa.p(), dims[a.target], dims[a.source]))
            .collect();
        QuiverRep { dims, maps }
    }

    fn check_shapes(&self, qa: &QuiverAlgebra) -> Result<()> {
        let q = qa.quiver();
        if self.dims.len() != q.vertices().len() || self.maps.len() != q.arrows().len() {
            return Err(Error::InvalidModule("representation does not match the quiver".into()));
        }
        for (a, m) in q.arrows().iter().zip(&self.maps) {
            if m.rows() != self.dims[a.target] || m.cols() != self.dims[a.source] {
                return Err(Error::InvalidModule(format!(
                    "arrow {} needs a {}x{} matrix",
                    a.name, self.dims[a.target], self.dims[a.source]
                )));
            }
        }
        Ok(())
    }

    /// Composite of arrow matrices along a path (vertex space to vertex space).
    pub fn evaluate(&self, qa: &QuiverAlgebra, path: &Path) -> FieldMat {
        let q = qa.quiver();
        let mut m = FieldMat::identity(qa.p(), self.dims[path.source()]);
        for &a in &path.arrows {
            m = self.maps[a].mul(&m);
        }
        debug_assert_eq!(m.rows(), self.dims[path.target(q)]);
        m
    }

    pub fn check_relations(&self, qa: &QuiverAlgebra) -> Result<()> {
        self.check_shapes(qa)?;
        let (p, q) = (qa.p(), qa.quiver());
        for (index, r) in qa.relations().iter().enumerate() {
            let first = &r.terms[0].1;
            let mut acc = FieldMat::zeros(p, self.dims[first.target(q)], self.dims[first.source()]);
            for (c, path) in &r.terms {
                acc.add_scaled(c % p, &self.evaluate(qa, path));
            }
            if !acc.is_zero() {
                return Err(Error::RelationViolation { index });
            }
        }
        Ok(())
    }

    /// The module over the structure-constant algebra of `qa`; vertex spaces in vertex order.
    pub fn to_action(&self, qa: &QuiverAlgebra) -> Result<ActionModule> {
        self.check_relations(qa)?;
        let p = qa.p();
        let q = qa.quiver();
        let total: usize = self.dims.iter().sum();
        let mut offsets = Vec::with_capacity(self.dims.len());
        let mut off = 0;
        for &d in &self.dims {
            offsets.push(off);
            off += d;
        }
        let actions = qa
            .basis()
            .iter()
            .map(|b| {
                let mut m = FieldMat::zeros(p, total, total);
                let block = self.evaluate(qa, b);
                m.set_block(offsets[b.target(q)], offsets[b.source()], &block);
                m
            })
            .collect();
        Ok(ActionModule::new_unchecked(qa.to_sc(), total, actions))
    }

    /// Recovers vertex spaces and arrow maps from a module over `qa`.
    pub fn from_action(x: &ActionModule, qa: &QuiverAlgebra) -> Result<Self> {
        let q = qa.quiver();
        let nv = q.vertices().len();
        let p = qa.p();
        let mut bases = Vec::with_capacity(nv);
        for v in 0..nv {
            bases.push(x.action(v).column_space());
        }
        let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let mut maps = Vec::with_capacity(q.arrows().len());
        for (ai, a) in q.arrows().iter().enumerate() {
            let idx = qa
                .basis()
                .iter()
                .position(|b| b.arrows == [ai])
                .ok_or_else(|| Error::InvalidAlgebra(format!("arrow {} is not a basis element", a.name)))?;
            let img = x.action(idx).mul(&bases[a.source]);
            let m = if dims[a.target] == 0 {
                FieldMat::zeros(p, 0, dims[a.source])
            } else {
                crate::linalg::ColumnBasis::new(bases[a.target].clone())
                    .coords_matrix(&img)
                    .ok_or_else(|| Error::InvalidModule("arrow action leaves its target vertex".into()))?
            };
            maps.push(m);
        }
        Ok(QuiverRep { dims, maps })
    }
}
