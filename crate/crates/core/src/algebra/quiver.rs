use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{check_prime, neg_mod, FieldMat};

use super::sc::{Idempotents, SCAlgebra};

pub const DEFAULT_DEGREE_CAP: usize = 64;
const MAX_PATHS_PER_DEGREE: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v}")));
            }
        }
        let mut names = HashMap::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (name, from, to) in arrows {
            if seen.contains_key(&name) || names.insert(name.clone(), ()).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate name {name}")));
            }
            let source = *seen
                .get(&from)
                .ok_or_else(|| Error::InvalidQuiver(format!("arrow {name}: unknown source {from}")))?;
            let target = *seen
                .get(&to)
                .ok_or_else(|| Error::InvalidQuiver(format!("arrow {name}: unknown target {to}")))?;
            out.push(Arrow { name, source, target });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Builds a path from arrow names in traversal order.
    pub fn path(&self, arrows: &[&str]) -> Result<Path> {
        let idx: Vec<usize> = arrows
            .iter()
            .map(|n| {
                self.arrow_index(n)
                    .ok_or_else(|| Error::InvalidQuiver(format!("unknown arrow {n}")))
            })
            .collect::<Result<_>>()?;
        let first = *idx
            .first()
            .ok_or_else(|| Error::InvalidQuiver("empty arrow path".into()))?;
        let p = Path {
            start: self.arrows[first].source,
            arrows: idx,
        };
        if !p.is_valid(self) {
            return Err(Error::InvalidQuiver(format!("arrows {arrows:?} do not compose")));
        }
        Ok(p)
    }
}

/// A path in traversal order (first arrow first). A trivial path sits at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            start: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> usize {
        self.start
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrows[a].target)
    }

    pub fn is_valid(&self, q: &Quiver) -> bool {
        let mut at = self.start;
        for &a in &self.arrows {
            if q.arrows[a].source != at {
                return false;
            }
            at = q.arrows[a].target;
        }
        true
    }

    /// `self` followed by `next`, if they meet.
    pub fn then(&self, next: &Path, q: &Quiver) -> Option<Path> {
        if self.target(q) != next.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(Path {
            start: self.start,
            arrows,
        })
    }

    pub fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", q.vertices[self.start])
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// Linear combination of parallel paths of equal length >= 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(u32, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(u32, Path)>) -> Self {
        Relation { terms }
    }

    pub fn validate(&self, q: &Quiver, p: u32, index: usize) -> Result<()> {
        let err = |reason: String| Error::InvalidRelation { index, reason };
        let first = &self.terms.first().ok_or_else(|| err("no terms".into()))?.1;
        let (s, t, len) = (first.source(), first.target(q), first.len());
        if len < 2 {
            return Err(err(format!("path of length {len}; relations need length >= 2")));
        }
        for (k, (_, path)) in self.terms.iter().enumerate() {
            if !path.is_valid(q) {
                return Err(err(format!("term {k} is not a path")));
            }
            if path.len() != len {
                return Err(err(format!("term {k} has length {}, expected {len}", path.len())));
            }
            if path.source() != s || path.target(q) != t {
                return Err(err(format!("term {k} is not parallel to term 0")));
            }
        }
        if self.terms.iter().all(|(c, _)| c % p == 0) {
            return Err(err("all coefficients vanish".into()));
        }
        Ok(())
    }

    pub fn is_monomial(&self, p: u32) -> bool {
        self.terms.iter().filter(|(c, _)| c % p != 0).count() == 1
    }
}

/// Graded piece of `kQ/I`: basis paths plus normal forms of every path of this degree.
#[derive(Clone, Debug)]
struct Degree {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    /// For each path of this degree, its class as `(global basis index, coefficient)` pairs.
    normal_forms: Vec<Vec<(usize, u32)>>,
}

/// Bound quiver algebra `kQ/I` with a path basis.
#[derive(Clone, Debug)]
pub struct QuiverAlgebra {
    p: u32,
    quiver: Quiver,
    relations: Vec<Relation>,
    basis: Vec<Path>,
    degrees: Vec<Degree>,
    sc: Arc<SCAlgebra>,
}

impl QuiverAlgebra {
    pub fn build(quiver: Quiver, relations: Vec<Relation>, p: u32, degree_cap: usize) -> Result<Self> {
        check_prime(p)?;
        for (i, r) in relations.iter().enumerate() {
            r.validate(&quiver, p, i)?;
        }
        let mut degrees: Vec<Degree> = Vec::new();
        let mut basis: Vec<Path> = Vec::new();
        let mut all_paths: Vec<Vec<Path>> = Vec::new();
        let mut level: Vec<Path> = (0..quiver.vertices.len()).map(Path::trivial).collect();
        let mut deg = 0;
        loop {
            if level.is_empty() {
                break;
            }
            if level.len() > MAX_PATHS_PER_DEGREE {
                return Err(Error::Unsupported(format!("{} paths in degree {deg}", level.len())));
            }
            let index: HashMap<Path, usize> = level.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
            let n = level.len();
            // consequences u r w landing in this degree
            let mut rows: Vec<Vec<u32>> = Vec::new();
            for r in &relations {
                let rlen = r.terms[0].1.len();
                if rlen > deg {
                    continue;
                }
                let (rs, rt) = (r.terms[0].1.source(), r.terms[0].1.target(&quiver));
                for a in 0..=deg - rlen {
                    let b = deg - rlen - a;
                    let prefixes: Vec<&Path> = all_paths[a].iter().filter(|u| u.target(&quiver) == rs).collect();
                    let suffixes: Vec<&Path> = all_paths[b].iter().filter(|w| w.source() == rt).collect();
                    for u in &prefixes {
                        for w in &suffixes {
                            let mut row = vec![0u32; n];
                            for (c, path) in &r.terms {
                                let full = u
                                    .then(path, &quiver)
                                    .and_then(|x| x.then(w, &quiver))
                                    .expect("composable");
                                let j = index[&full];
                                row[j] = (row[j] + c) % p;
                            }
                            rows.push(row);
                        }
                    }
                }
            }
            let rel = FieldMat::from_rows(p, &rows, n)?;
            let rr = rel.rref();
            let mut is_pivot = vec![false; n];
            for &c in &rr.pivots {
                is_pivot[c] = true;
            }
            let offset = basis.len();
            let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
            let global: HashMap<usize, usize> = free.iter().enumerate().map(|(k, &j)| (j, offset + k)).collect();
            let mut normal_forms = vec![Vec::new(); n];
            for &j in &free {
                normal_forms[j] = vec![(global[&j], 1 % p)];
            }
            for (row, &c) in rr.pivots.iter().enumerate() {
                normal_forms[c] = free
                    .iter()
                    .filter_map(|&f| {
                        let v = rr.reduced.get(row, f);
                        (v != 0).then(|| (global[&f], neg_mod(v, p)))
                    })
                    .collect();
            }
            basis.extend(free.iter().map(|&j| level[j].clone()));
            degrees.push(Degree {
                paths: level.clone(),
                index,
                normal_forms,
            });
            all_paths.push(level.clone());
            if free.is_empty() {
                break;
            }
            if deg >= degree_cap {
                return Err(Error::NotAdmissible {
                    cap: degree_cap,
                    remaining: free.len(),
                });
            }
            let mut next = Vec::new();
            for path in &level {
                let t = path.target(&quiver);
                for (ai, a) in quiver.arrows.iter().enumerate() {
                    if a.source == t {
                        let mut arrows = path.arrows.clone();
                        arrows.push(ai);
                        next.push(Path {
                            start: path.start,
                            arrows,
                        });
                    }
                }
            }
            level = next;
            deg += 1;
        }
        let sc = Self::structure_constants(p, &quiver, &basis, &degrees)?;
        Ok(QuiverAlgebra {
            p,
            quiver,
            relations,
            basis,
            degrees,
            sc: Arc::new(sc),
        })
    }

    fn structure_constants(p: u32, q: &Quiver, basis: &[Path], degrees: &[Degree]) -> Result<SCAlgebra> {
        let d = basis.len();
        let mut table = vec![0u32; d * d * d];
        for (i, bi) in basis.iter().enumerate() {
            for (j, bj) in basis.iter().enumerate() {
                // b_i b_j: traverse b_j first, then b_i
                let Some(path) = bj.then(bi, q) else { continue };
                let Some(deg) = degrees.get(path.len()) else { continue };
                let Some(&idx) = deg.index.get(&path) else { continue };
                for &(k, c) in &deg.normal_forms[idx] {
                    table[(i * d + j) * d + k] = c;
                }
            }
        }
        let nv = q.vertices.len();
        let mut unit = vec![0u32; d];
        unit[..nv].iter_mut().for_each(|u| *u = 1 % p);
        let labels = basis.iter().map(|b| b.label(q)).collect();
        let idem = Idempotents {
            elements: (0..nv)
                .map(|v| {
                    let mut e = vec![0; d];
                    e[v] = 1 % p;
                    e
                })
                .collect(),
            classes: (0..nv).collect(),
            labels: q.vertices.clone(),
        };
        let radical = FieldMat::from_fn(p, d, d - nv, |i, j| u32::from(i == nv + j));
        SCAlgebra::from_flat(p, d, table, unit)
            .with_labels(labels)
            .with_idempotents(idem)?
            .with_radical(radical)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Dimension of each graded piece.
    pub fn degree_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.degrees.len()];
        for b in &self.basis {
            dims[b.len()] += 1;
        }
        dims
    }

    pub fn sc(&self) -> &Arc<SCAlgebra> {
        &self.sc
    }

    pub fn to_sc(&self) -> Arc<SCAlgebra> {
        self.sc.clone()
    }

    pub fn is_monomial(&self) -> bool {
        self.relations.iter().all(|r| r.is_monomial(self.p))
    }

    /// Class of an arbitrary path in the algebra.
    pub fn path_class(&self, path: &Path) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        if let Some(deg) = self.degrees.get(path.len()) {
            if let Some(&idx) = deg.index.get(path) {
                for &(k, c) in &deg.normal_forms[idx] {
                    v[k] = c;
                }
            }
        }
        v
    }

    /// Number of paths of each length that were considered.
    pub fn path_counts(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.paths.len()).collect()
    }
}
