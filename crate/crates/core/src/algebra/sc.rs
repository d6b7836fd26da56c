use std::fmt;
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{add_mod, check_prime, complement, mul_mod, ColumnBasis, FieldMat};

/// Complete set of primitive orthogonal idempotents, grouped into classes of
/// conjugate idempotents (one class per isomorphism type of indecomposable
/// projective).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Idempotents {
    pub elements: Vec<Vec<u32>>,
    pub classes: Vec<usize>,
    pub labels: Vec<String>,
}

impl Idempotents {
    pub fn class_count(&self) -> usize {
        self.labels.len()
    }

    /// First idempotent of each class.
    pub fn representatives(&self) -> Vec<usize> {
        (0..self.class_count())
            .map(|c| {
                self.classes
                    .iter()
                    .position(|&k| k == c)
                    .expect("every class is inhabited")
            })
            .collect()
    }
}

/// Indecomposable projective `A e` for a class representative `e`.
#[derive(Clone, Debug)]
pub struct ProjectiveData {
    pub class: usize,
    pub idempotent: Vec<u32>,
    /// Columns: elements of `A e` in algebra coordinates.
    pub basis: FieldMat,
    pub actions: Vec<FieldMat>,
    /// `dim_k e S` for the simple top `S`, which equals `dim_k End(S)`.
    pub top_end_dim: usize,
    pub dim_vector: Vec<usize>,
}

#[derive(Default)]
pub(crate) struct Cache {
    pub left_mult: OnceLock<Vec<FieldMat>>,
    pub generators: OnceLock<Vec<Vec<u32>>>,
    pub projectives: OnceLock<Result<Vec<ProjectiveData>>>,
}

impl Clone for Cache {
    fn clone(&self) -> Self {
        Cache::default()
    }
}

/// Finite-dimensional associative unital algebra given by structure constants.
#[derive(Clone)]
pub struct SCAlgebra {
    p: u32,
    dim: usize,
    /// `c[i][j][k]` stored at `(i * dim + j) * dim + k`; `b_i b_j = sum_k c[i][j][k] b_k`.
    table: Vec<u32>,
    unit: Vec<u32>,
    idempotents: Option<Idempotents>,
    radical: Option<FieldMat>,
    basis_labels: Vec<String>,
    pub(crate) cache: Cache,
}

impl fmt::Debug for SCAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SCAlgebra")
            .field("p", &self.p)
            .field("dim", &self.dim)
            .field("fingerprint", &self.fingerprint())
            .finish()
    }
}

impl PartialEq for SCAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.dim == other.dim && self.table == other.table && self.unit == other.unit
    }
}

impl Eq for SCAlgebra {}

impl SCAlgebra {
    /// Validates associativity and the unit law on all basis elements.
    pub fn new(p: u32, dim: usize, table: Vec<Vec<Vec<u32>>>, unit: Vec<u32>) -> Result<Self> {
        check_prime(p)?;
        if table.len() != dim || table.iter().any(|r| r.len() != dim || r.iter().any(|c| c.len() != dim)) {
            return Err(Error::InvalidAlgebra(format!(
                "table must be {dim}x{dim} vectors of length {dim}"
            )));
        }
        if unit.len() != dim {
            return Err(Error::InvalidAlgebra("unit has wrong length".into()));
        }
        let flat = table.into_iter().flatten().flatten().map(|x| x % p).collect();
        let unit = unit.into_iter().map(|x| x % p).collect();
        let a = Self::from_flat(p, dim, flat, unit);
        a.check_axioms()?;
        Ok(a)
    }

    pub(crate) fn from_flat(p: u32, dim: usize, table: Vec<u32>, unit: Vec<u32>) -> Self {
        debug_assert_eq!(table.len(), dim * dim * dim);
        SCAlgebra {
            p,
            dim,
            table,
            unit,
            idempotents: None,
            radical: None,
            basis_labels: (0..dim).map(|i| format!("b{i}")).collect(),
            cache: Cache::default(),
        }
    }

    pub fn with_idempotents(mut self, idem: Idempotents) -> Result<Self> {
        self.check_idempotents(&idem)?;
        self.idempotents = Some(idem);
        self.cache = Cache::default();
        Ok(self)
    }

    /// Attaches a radical basis (columns) without re-deriving it.
    pub fn with_radical(mut self, rad: FieldMat) -> Result<Self> {
        if rad.rows() != self.dim {
            return Err(Error::InvalidAlgebra(
                "radical basis has wrong ambient dimension".into(),
            ));
        }
        self.check_nilpotent_ideal(&rad)?;
        self.radical = Some(rad);
        self.cache = Cache::default();
        Ok(self)
    }

    /// Forgets idempotent and radical data.
    pub fn without_structure(mut self) -> Self {
        self.idempotents = None;
        self.radical = None;
        self.cache = Cache::default();
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.basis_labels = labels;
        self
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn idempotents(&self) -> Option<&Idempotents> {
        self.idempotents.as_ref()
    }

    pub fn require_idempotents(&self) -> Result<&Idempotents> {
        self.idempotents.as_ref().ok_or(Error::MissingIdempotents)
    }

    pub fn radical(&self) -> Option<&FieldMat> {
        self.radical.as_ref()
    }

    pub fn require_radical(&self) -> Result<&FieldMat> {
        self.radical.as_ref().ok_or(Error::MissingRadical)
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    #[inline]
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> u32 {
        self.table[(i * self.dim + j) * self.dim + k]
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &[u32] {
        let s = (i * self.dim + j) * self.dim;
        &self.table[s..s + self.dim]
    }

    pub fn table(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.product_of_basis(i, j).to_vec()).collect())
            .collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1 % self.p;
        v
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let (p, d) = (self.p, self.dim);
        let mut acc = vec![0u64; d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = mul_mod(xi, yj, p) as u64;
                for (k, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + c * self.coeff(i, j, k) as u64) % p as u64;
                }
            }
        }
        acc.into_iter().map(|x| x as u32).collect()
    }

    pub fn add(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter().zip(y).map(|(&a, &b)| add_mod(a, b, self.p)).collect()
    }

    /// Left multiplication matrices `L_i` (column `j` is `b_i b_j`).
    pub fn left_mult(&self) -> &[FieldMat] {
        self.cache.left_mult.get_or_init(|| {
            (0..self.dim)
                .map(|i| {
                    let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.product_of_basis(i, j).to_vec()).collect();
                    FieldMat::from_columns(self.p, self.dim, &cols)
                })
                .collect()
        })
    }

    pub fn left_mult_by(&self, x: &[u32]) -> FieldMat {
        FieldMat::combination(self.p, self.dim, self.dim, x, self.left_mult())
    }

    pub fn right_mult_by(&self, x: &[u32]) -> FieldMat {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|i| self.mul(&self.basis_vector(i), x)).collect();
        FieldMat::from_columns(self.p, self.dim, &cols)
    }

    pub fn opposite(&self) -> SCAlgebra {
        let d = self.dim;
        let mut table = vec![0; d * d * d];
        for i in 0..d {
            for j in 0..d {
                let src = (j * d + i) * d;
                table[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(&self.table[src..src + d]);
            }
        }
        SCAlgebra {
            p: self.p,
            dim: d,
            table,
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            radical: self.radical.clone(),
            basis_labels: self.basis_labels.clone(),
            cache: Cache::default(),
        }
    }

    /// Short stable hash of the multiplication table.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.p.to_le_bytes());
        h.update((self.dim as u64).to_le_bytes());
        for x in &self.table {
            h.update(x.to_le_bytes());
        }
        for x in &self.unit {
            h.update(x.to_le_bytes());
        }
        let digest = h.finalize();
        let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
        format!("p{}-d{}-{}", self.p, self.dim, hex)
    }

    pub fn check_axioms(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            let bi = self.basis_vector(i);
            if self.mul(&self.unit, &bi) != bi || self.mul(&bi, &self.unit) != bi {
                return Err(Error::InvalidAlgebra(format!("unit law fails on basis element {i}")));
            }
        }
        let lm = self.left_mult();
        // (b_i b_j) b_k = b_i (b_j b_k)  <=>  L_{b_i b_j} = L_i L_j
        for i in 0..d {
            for j in 0..d {
                let lhs = self.left_mult_by(self.product_of_basis(i, j));
                if lhs != lm[i].mul(&lm[j]) {
                    return Err(Error::InvalidAlgebra(format!("associativity fails at ({i}, {j}, *)")));
                }
            }
        }
        Ok(())
    }

    fn check_idempotents(&self, idem: &Idempotents) -> Result<()> {
        let n = idem.elements.len();
        if idem.classes.len() != n {
            return Err(Error::InvalidAlgebra("idempotent class list has wrong length".into()));
        }
        if idem.classes.iter().any(|&c| c >= idem.labels.len())
            || (0..idem.labels.len()).any(|c| !idem.classes.contains(&c))
        {
            return Err(Error::InvalidAlgebra(
                "idempotent classes must be 0..k, all inhabited".into(),
            ));
        }
        let zero = vec![0; self.dim];
        let mut sum = zero.clone();
        for (a, e) in idem.elements.iter().enumerate() {
            if e.len() != self.dim {
                return Err(Error::InvalidAlgebra("idempotent has wrong length".into()));
            }
            for (b, f) in idem.elements.iter().enumerate() {
                let prod = self.mul(e, f);
                let expected = if a == b { e } else { &zero };
                if prod != *expected {
                    return Err(Error::InvalidAlgebra(format!(
                        "idempotents {a}, {b} are not orthogonal idempotents"
                    )));
                }
            }
            sum = self.add(&sum, e);
        }
        if sum != self.unit {
            return Err(Error::InvalidAlgebra("idempotents do not sum to 1".into()));
        }
        Ok(())
    }

    /// Two-sided ideal and nilpotent.
    pub(crate) fn check_nilpotent_ideal(&self, j: &FieldMat) -> Result<()> {
        if j.cols() == 0 {
            return Ok(());
        }
        let span = ColumnBasis::spanning(j);
        for c in 0..j.cols() {
            let x = j.col(c);
            for i in 0..self.dim {
                let bi = self.basis_vector(i);
                if !span.contains(&self.mul(&bi, &x)) || !span.contains(&self.mul(&x, &bi)) {
                    return Err(Error::RadicalCheck(format!(
                        "not a two-sided ideal (basis element {i})"
                    )));
                }
            }
        }
        let mut power = j.column_space();
        for _ in 0..=self.dim {
            if power.cols() == 0 {
                return Ok(());
            }
            power = self.product_space(&power, j);
        }
        Err(Error::RadicalCheck("ideal is not nilpotent".into()))
    }

    /// Span of all products `x y` with `x` in `a`, `y` in `b` (both given by columns).
    pub fn product_space(&self, a: &FieldMat, b: &FieldMat) -> FieldMat {
        let mut cols = Vec::with_capacity(a.cols() * b.cols());
        for i in 0..a.cols() {
            let x = a.col(i);
            let lx = self.left_mult_by(&x);
            let prod = lx.mul(b);
            cols.extend(prod.columns());
        }
        FieldMat::from_columns(self.p, self.dim, &cols).column_space()
    }

    /// Quotient by a two-sided ideal. Returns the quotient algebra and the
    /// projection matrix (quotient dim x dim).
    pub fn quotient(&self, ideal: &FieldMat) -> (SCAlgebra, FieldMat) {
        let p = self.p;
        let ideal = ideal.column_space();
        let comp = complement(p, &ideal);
        let full = FieldMat::hstack(p, self.dim, &[&ideal, &comp]);
        let inv = full.inverse().expect("ideal + complement spans");
        let q = comp.cols();
        let proj = inv.block(ideal.cols(), 0, q, self.dim);
        let mut table = vec![0; q * q * q];
        for i in 0..q {
            for j in 0..q {
                let prod = self.mul(&comp.col(i), &comp.col(j));
                let c = proj.mul_vec(&prod);
                table[(i * q + j) * q..(i * q + j + 1) * q].copy_from_slice(&c);
            }
        }
        let unit = proj.mul_vec(&self.unit);
        (SCAlgebra::from_flat(p, q, table, unit), proj)
    }

    /// Algebra generators: idempotents first, then greedily chosen basis elements.
    pub fn generators(&self) -> &[Vec<u32>] {
        self.cache.generators.get_or_init(|| {
            let mut gens: Vec<Vec<u32>> = Vec::new();
            if let Some(idem) = &self.idempotents {
                gens.extend(idem.elements.iter().cloned());
            }
            let mut span = self.generated_subalgebra(&gens);
            let mut order: Vec<usize> = (0..self.dim).collect();
            // radical elements are the natural arrow candidates; try them after the rest
            if let Some(rad) = &self.radical {
                let rb = ColumnBasis::spanning(rad);
                order.sort_by_key(|&i| rb.contains(&self.basis_vector(i)));
            }
            for i in order {
                if span.cols() == self.dim {
                    break;
                }
                let b = self.basis_vector(i);
                if ColumnBasis::new(span.clone()).contains(&b) {
                    continue;
                }
                gens.push(b);
                span = self.generated_subalgebra(&gens);
            }
            gens
        })
    }

    /// Span of the unital subalgebra generated by `gens`.
    pub fn generated_subalgebra(&self, gens: &[Vec<u32>]) -> FieldMat {
        let p = self.p;
        let mut cols = vec![self.unit.clone()];
        cols.extend(gens.iter().cloned());
        let mut span = FieldMat::from_columns(p, self.dim, &cols).column_space();
        let lgens: Vec<FieldMat> = gens.iter().map(|g| self.left_mult_by(g)).collect();
        loop {
            let mut all = vec![span.clone()];
            for l in &lgens {
                all.push(l.mul(&span));
            }
            let refs: Vec<&FieldMat> = all.iter().collect();
            let next = FieldMat::hstack(p, self.dim, &refs).column_space();
            if next.cols() == span.cols() {
                return span;
            }
            span = next;
        }
    }
}
