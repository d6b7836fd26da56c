//! Small standard algebras used throughout the tests and the bundled corpus.

use std::sync::Arc;

use crate::algebra::{Quiver, QuiverAlgebra, Relation, SCAlgebra, DEFAULT_DEGREE_CAP};
use crate::linalg::FieldMat;

fn build(p: u32, vertices: &[&str], arrows: &[(&str, &str, &str)], relations: &[&[&str]]) -> QuiverAlgebra {
    let q = Quiver::new(
        vertices.iter().map(|s| s.to_string()).collect(),
        arrows
            .iter()
            .map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string()))
            .collect(),
    )
    .expect("valid quiver");
    let rels = relations
        .iter()
        .map(|r| Relation::new(vec![(1, q.path(r).expect("valid path"))]))
        .collect();
    QuiverAlgebra::build(q, rels, p, DEFAULT_DEGREE_CAP).expect("admissible")
}

/// `1 -> 2` with arrow `a`.
pub fn a2(p: u32) -> QuiverAlgebra {
    build(p, &["1", "2"], &[("a", "1", "2")], &[])
}

/// `1 -> 3 <- 2`.
pub fn a3_sink(p: u32) -> QuiverAlgebra {
    build(p, &["1", "2", "3"], &[("a", "1", "3"), ("b", "2", "3")], &[])
}

/// `k[x]/(x^n)` as a one-loop quiver.
pub fn truncated(p: u32, n: usize) -> QuiverAlgebra {
    let word = vec!["x"; n];
    build(p, &["0"], &[("x", "0", "0")], &[&word])
}

/// `1 -> 2 -> 3` with the length-two path killed; the Auslander algebra of `A_2`.
pub fn a2_auslander(p: u32) -> QuiverAlgebra {
    build(
        p,
        &["1", "2", "3"],
        &[("al", "1", "2"), ("be", "2", "3")],
        &[&["al", "be"]],
    )
}

/// Upper triangular 2x2 matrices, basis `e11, e12, e22`.
pub fn upper_triangular(p: u32) -> SCAlgebra {
    let mut t = vec![vec![vec![0u32; 3]; 3]; 3];
    t[0][0] = vec![1, 0, 0];
    t[0][1] = vec![0, 1, 0];
    t[1][2] = vec![0, 1, 0];
    t[2][2] = vec![0, 0, 1];
    SCAlgebra::new(p, 3, t, vec![1, 0, 1])
        .expect("valid table")
        .with_labels(vec!["e11".into(), "e12".into(), "e22".into()])
}

/// Full 2x2 matrices, basis `e11, e12, e21, e22`.
pub fn matrix2(p: u32) -> SCAlgebra {
    let idx = |i: usize, j: usize| i * 2 + j;
    let mut t = vec![vec![vec![0u32; 4]; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for l in 0..2 {
                t[idx(i, j)][idx(j, l)][idx(i, l)] = 1;
            }
        }
    }
    SCAlgebra::new(p, 4, t, vec![1, 0, 0, 1])
        .expect("valid table")
        .with_labels(vec!["e11".into(), "e12".into(), "e21".into(), "e22".into()])
}

/// `span{1, e12}` inside the upper triangular matrices.
pub fn dual_numbers_in_upper_triangular(p: u32) -> (Arc<SCAlgebra>, FieldMat) {
    let r = Arc::new(upper_triangular(p));
    let sub = FieldMat::from_columns(p, 3, &[vec![1, 0, 1], vec![0, 1, 0]]);
    (r, sub)
}

/// Upper triangular matrices inside all 2x2 matrices.
pub fn upper_triangular_in_matrix2(p: u32) -> (Arc<SCAlgebra>, FieldMat) {
    let r = Arc::new(matrix2(p));
    let sub = FieldMat::from_columns(p, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 1]]);
    (r, sub)
}
