//! JSON formats for algebras, embeddings and modules. Matrices are arrays of rows.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Embedding, Quiver, QuiverAlgebra, Relation, SCAlgebra, DEFAULT_DEGREE_CAP};
use crate::error::{Error, Result};
use crate::igusa_todorov::{auslander_generator, injectives};
use crate::krull_schmidt::{compute_structure, enumerate_indecomposables};
use crate::linalg::FieldMat;
use crate::module::{direct_sum, ActionModule, QuiverRep};
use crate::resolution::{projectives, simples};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowEntry {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermEntry {
    #[serde(default = "one")]
    pub coeff: u32,
    /// Arrow names in traversal order.
    pub path: Vec<String>,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverFile {
    pub field: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowEntry>,
    #[serde(default)]
    pub relations: Vec<Vec<TermEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScFile {
    pub field: u32,
    pub dim: usize,
    pub unit: Vec<u32>,
    /// `table[i][j]` are the coordinates of `b_i b_j`.
    pub table: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// Quiver files are recognised by a `vertices` key, structure constants by `table`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraFile {
    Quiver(QuiverFile),
    Sc(ScFile),
}

/// A parsed algebra; structure-constant inputs get idempotents and radical attached.
#[derive(Clone, Debug)]
pub enum Algebra {
    Quiver(QuiverAlgebra),
    Sc(Arc<SCAlgebra>),
}

impl Algebra {
    pub fn sc(&self) -> &Arc<SCAlgebra> {
        match self {
            Algebra::Quiver(q) => q.sc(),
            Algebra::Sc(a) => a,
        }
    }

    pub fn quiver(&self) -> Option<&QuiverAlgebra> {
        match self {
            Algebra::Quiver(q) => Some(q),
            Algebra::Sc(_) => None,
        }
    }
}

impl AlgebraFile {
    pub fn load(&self, seed: u64) -> Result<Algebra> {
        match self {
            AlgebraFile::Quiver(QuiverFile {
                field: p,
                vertices,
                arrows,
                relations,
                degree_cap,
            }) => {
                let q = Quiver::new(
                    vertices.clone(),
                    arrows
                        .iter()
                        .map(|a| (a.name.clone(), a.from.clone(), a.to.clone()))
                        .collect(),
                )?;
                let mut rels = Vec::with_capacity(relations.len());
                for (index, r) in relations.iter().enumerate() {
                    let mut terms = Vec::with_capacity(r.len());
                    for t in r {
                        let names: Vec<&str> = t.path.iter().map(String::as_str).collect();
                        let path = q.path(&names).map_err(|e| Error::InvalidRelation {
                            index,
                            reason: e.to_string(),
                        })?;
                        terms.push((t.coeff, path));
                    }
                    rels.push(Relation::new(terms));
                }
                let cap = degree_cap.unwrap_or(DEFAULT_DEGREE_CAP);
                Ok(Algebra::Quiver(QuiverAlgebra::build(q, rels, *p, cap)?))
            }
            AlgebraFile::Sc(ScFile {
                field: p,
                dim,
                table,
                unit,
                labels,
            }) => {
                let mut a = SCAlgebra::new(*p, *dim, table.clone(), unit.clone())?;
                if let Some(l) = labels {
                    if l.len() != *dim {
                        return Err(Error::Parse(format!("{} labels for dimension {dim}", l.len())));
                    }
                    a = a.with_labels(l.clone());
                }
                Ok(Algebra::Sc(Arc::new(compute_structure(&a, seed)?)))
            }
        }
    }

    pub fn from_sc(a: &SCAlgebra) -> Self {
        AlgebraFile::Sc(ScFile {
            field: a.p(),
            dim: a.dim(),
            unit: a.unit().to_vec(),
            table: a.table(),
            labels: Some(a.basis_labels().to_vec()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingFile {
    pub ambient: AlgebraFile,
    /// Coordinates in the ambient algebra of each basis element of the subalgebra.
    pub sub_basis: Vec<Vec<u32>>,
}

/// An embedding with structured copies of both algebras.
#[derive(Clone, Debug)]
pub struct LoadedEmbedding {
    pub embedding: Embedding,
    pub ambient: Arc<SCAlgebra>,
    pub sub: Arc<SCAlgebra>,
}

impl EmbeddingFile {
    pub fn load(&self, seed: u64) -> Result<LoadedEmbedding> {
        let ambient = self.ambient.load(seed)?.sc().clone();
        let n = ambient.dim();
        if self.sub_basis.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidEmbedding(format!(
                "sub-basis vectors must have length {n}"
            )));
        }
        let sub_basis = FieldMat::from_columns(ambient.p(), n, &self.sub_basis);
        let embedding = Embedding::new(ambient.clone(), sub_basis)?;
        let sub = Arc::new(compute_structure(&embedding.subalgebra(), seed)?);
        Ok(LoadedEmbedding {
            embedding,
            ambient,
            sub,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    Regular,
    /// `D(A_A)`, the sum of the indecomposable injectives with multiplicities.
    DualRegular,
    Simple,
    Projective,
    Injective,
    /// One representative of every indecomposable, from enumeration.
    Generator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleFile {
    Rep {
        dims: BTreeMap<String, usize>,
        #[serde(default)]
        maps: BTreeMap<String, Vec<Vec<u32>>>,
    },
    Actions {
        dim: usize,
        actions: Vec<Vec<Vec<u32>>>,
    },
    Sum {
        sum: Vec<ModuleFile>,
    },
    Builtin {
        builtin: Builtin,
        #[serde(default)]
        index: usize,
    },
}

/// Parameters needed by the `generator` builtin.
#[derive(Clone, Copy, Debug)]
pub struct EnumerationLimits {
    pub dim_cap: usize,
    pub budget: u128,
}

fn matrix(p: u32, rows: &[Vec<u32>], r: usize, c: usize, what: &str) -> Result<FieldMat> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(Error::Parse(format!("{what} must be a {r}x{c} matrix")));
    }
    FieldMat::from_rows(p, rows, c)
}

impl ModuleFile {
    pub fn load(&self, alg: &Algebra, limits: EnumerationLimits) -> Result<ActionModule> {
        let a = alg.sc();
        let p = a.p();
        match self {
            ModuleFile::Rep { dims, maps } => {
                let qa = alg
                    .quiver()
                    .ok_or_else(|| Error::Parse("representation given for a structure-constant algebra".into()))?;
                let q = qa.quiver();
                for name in dims.keys() {
                    if q.vertex_index(name).is_none() {
                        return Err(Error::Parse(format!("unknown vertex {name}")));
                    }
                }
                for name in maps.keys() {
                    if q.arrow_index(name).is_none() {
                        return Err(Error::Parse(format!("unknown arrow {name}")));
                    }
                }
                let d: Vec<usize> = q.vertices().iter().map(|v| dims.get(v).copied().unwrap_or(0)).collect();
                let mut ms = Vec::with_capacity(q.arrows().len());
                for arrow in q.arrows() {
                    let (r, c) = (d[arrow.target], d[arrow.source]);
                    let m = match maps.get(&arrow.name) {
                        Some(rows) if !(r == 0 || c == 0) || !rows.is_empty() => {
                            matrix(p, rows, r, c, &format!("map of arrow {}", arrow.name))?
                        }
                        _ => FieldMat::zeros(p, r, c),
                    };
                    ms.push(m);
                }
                QuiverRep { dims: d, maps: ms }.to_action(qa)
            }
            ModuleFile::Actions { dim, actions } => {
                if actions.len() != a.dim() {
                    return Err(Error::Parse(format!("expected {} action matrices", a.dim())));
                }
                let ms = actions
                    .iter()
                    .enumerate()
                    .map(|(i, rows)| matrix(p, rows, *dim, *dim, &format!("action {i}")))
                    .collect::<Result<Vec<_>>>()?;
                ActionModule::new(a.clone(), *dim, ms)
            }
            ModuleFile::Sum { sum } => {
                let parts = sum.iter().map(|f| f.load(alg, limits)).collect::<Result<Vec<_>>>()?;
                Ok(direct_sum(a, &parts)?.module)
            }
            ModuleFile::Builtin { builtin, index } => {
                let pick = |xs: Vec<ActionModule>| -> Result<ActionModule> {
                    let n = xs.len();
                    xs.into_iter()
                        .nth(*index)
                        .ok_or_else(|| Error::Parse(format!("index {index} out of range for {n} classes")))
                };
                match builtin {
                    Builtin::Regular => Ok(ActionModule::regular(a)),
                    Builtin::DualRegular => {
                        let op = Arc::new(a.opposite());
                        Ok(ActionModule::regular(&op).dual_over(a))
                    }
                    Builtin::Simple => pick(simples(a)?),
                    Builtin::Projective => pick(projectives(a)?),
                    Builtin::Injective => pick(injectives(a)?),
                    Builtin::Generator => {
                        let reg = enumerate_indecomposables(a, limits.dim_cap, limits.budget)?;
                        auslander_generator(&reg)
                    }
                }
            }
        }
    }

    pub fn from_action(x: &ActionModule) -> Self {
        ModuleFile::Actions {
            dim: x.dim(),
            actions: x.actions().iter().map(|m| m.to_rows()).collect(),
        }
    }
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_algebra(text: &str) -> Result<AlgebraFile> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(parse_err)?;
    algebra_from_value(v)
}

fn algebra_from_value(v: serde_json::Value) -> Result<AlgebraFile> {
    if v.get("vertices").is_some() {
        Ok(AlgebraFile::Quiver(serde_json::from_value(v).map_err(parse_err)?))
    } else if v.get("table").is_some() {
        Ok(AlgebraFile::Sc(serde_json::from_value(v).map_err(parse_err)?))
    } else {
        Err(Error::Parse("algebra needs either `vertices` or `table`".into()))
    }
}

pub fn parse_embedding(text: &str) -> Result<EmbeddingFile> {
    let mut v: serde_json::Value = serde_json::from_str(text).map_err(parse_err)?;
    let ambient = v
        .get_mut("ambient")
        .map(serde_json::Value::take)
        .ok_or_else(|| Error::Parse("embedding needs `ambient`".into()))?;
    let sub_basis = v
        .get_mut("sub_basis")
        .map(serde_json::Value::take)
        .ok_or_else(|| Error::Parse("embedding needs `sub_basis`".into()))?;
    Ok(EmbeddingFile {
        ambient: algebra_from_value(ambient)?,
        sub_basis: serde_json::from_value(sub_basis).map_err(parse_err)?,
    })
}

pub fn parse_module(text: &str) -> Result<ModuleFile> {
    serde_json::from_str(text).map_err(parse_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quiver_file_round_trip() {
        let text = r#"{"field":2,"vertices":["1","2"],
            "arrows":[{"name":"a","from":"1","to":"2"}]}"#;
        let f = parse_algebra(text).unwrap();
        let alg = f.load(0).unwrap();
        assert_eq!(alg.sc().dim(), 3);
        let limits = EnumerationLimits {
            dim_cap: 2,
            budget: 1 << 20,
        };
        let m = parse_module(r#"{"dims":{"1":1,"2":1},"maps":{"a":[[1]]}}"#).unwrap();
        let x = m.load(&alg, limits).unwrap();
        assert_eq!(x.dim(), 2);
        let back = ModuleFile::from_action(&x);
        let y = parse_module(&serde_json::to_string(&back).unwrap())
            .unwrap()
            .load(&alg, limits)
            .unwrap();
        assert_eq!(x.actions(), y.actions());
        let g = parse_module(r#"{"builtin":"generator"}"#)
            .unwrap()
            .load(&alg, limits)
            .unwrap();
        assert_eq!(g.dim(), 4);
    }

    #[test]
    fn non_parallel_relation_is_rejected() {
        let text = r#"{"field":2,"vertices":["1","2","3"],
            "arrows":[{"name":"a","from":"1","to":"2"},{"name":"b","from":"2","to":"3"},
                      {"name":"c","from":"1","to":"2"},{"name":"d","from":"2","to":"2"}],
            "relations":[[{"path":["a","b"]},{"path":["c","d"]}]]}"#;
        let err = parse_algebra(text).unwrap().load(0).unwrap_err();
        assert!(matches!(err, Error::InvalidRelation { index: 0, .. }), "{err}");
    }

    #[test]
    fn sc_files_get_structure() {
        let f = AlgebraFile::from_sc(&crate::samples::upper_triangular(2));
        let text = serde_json::to_string(&f).unwrap();
        let alg = parse_algebra(&text).unwrap().load(0).unwrap();
        assert!(alg.sc().idempotents().is_some());
        assert_eq!(alg.sc().radical().unwrap().cols(), 1);
    }
}
