//! Certificates that a finite algebra modulo its radical is a field.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{radical_sc, SCAlgebra};
use crate::error::Result;
use crate::linalg::{inv_mod, mul_mod, sub_mod, FieldMat};

const RANDOM_TRIES: usize = 200;
const EXHAUSTIVE_LIMIT: u64 = 1 << 20;

/// Witness that `End(x)` is local: `End/rad` is generated by one element whose
/// minimal polynomial is irreducible of degree `dim End/rad`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalityCertificate {
    pub end_dim: usize,
    pub radical_dim: usize,
    pub field_degree: usize,
    /// Coordinates in `End/rad`.
    pub witness: Vec<u32>,
    /// Low degree first, monic.
    pub min_poly: Vec<u32>,
}

pub(crate) fn trivial_certificate(p: u32) -> LocalityCertificate {
    LocalityCertificate {
        end_dim: 1,
        radical_dim: 0,
        field_degree: 1,
        witness: vec![1],
        min_poly: vec![p - 1, 1],
    }
}

/// `Some` when the quotient by the radical is a field.
pub(crate) fn certify_local(end: &SCAlgebra, rng: &mut ChaCha8Rng) -> Result<Option<LocalityCertificate>> {
    let p = end.p();
    let rad = radical_sc(end)?;
    let (q, _) = end.quotient(&rad);
    let k = q.dim();
    let check = |z: &[u32]| -> Option<LocalityCertificate> {
        let mp = min_poly(&q, z);
        (mp.len() == k + 1 && is_irreducible(&mp, p)).then(|| LocalityCertificate {
            end_dim: end.dim(),
            radical_dim: rad.cols(),
            field_degree: k,
            witness: z.to_vec(),
            min_poly: mp,
        })
    };
    for i in 0..k {
        if let Some(c) = check(&q.basis_vector(i)) {
            return Ok(Some(c));
        }
    }
    for _ in 0..RANDOM_TRIES {
        let z: Vec<u32> = (0..k).map(|_| rng.gen_range(0..p)).collect();
        if let Some(c) = check(&z) {
            return Ok(Some(c));
        }
    }
    if (p as u64).checked_pow(k as u32).is_some_and(|n| n <= EXHAUSTIVE_LIMIT) {
        let mut z = vec![0u32; k];
        loop {
            if let Some(c) = check(&z) {
                return Ok(Some(c));
            }
            let mut i = 0;
            while i < k {
                z[i] += 1;
                if z[i] < p {
                    break;
                }
                z[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
    Ok(None)
}

/// Minimal polynomial of `z` in `a`, monic, low degree first.
pub fn min_poly(a: &SCAlgebra, z: &[u32]) -> Vec<u32> {
    let p = a.p();
    let mut powers: Vec<Vec<u32>> = vec![a.unit().to_vec()];
    loop {
        let next = a.mul(powers.last().expect("nonempty"), z);
        let m = FieldMat::from_columns(p, a.dim(), &powers);
        if let Some(c) = m.solve(&FieldMat::column_vector(p, &next)).expect("shapes agree") {
            let mut poly: Vec<u32> = c.col(0).iter().map(|&x| sub_mod(0, x, p)).collect();
            poly.push(1);
            return poly;
        }
        powers.push(next);
    }
}

fn trim(f: &mut Vec<u32>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = mul_mod(*r.last().expect("nonempty"), lead_inv, p);
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = sub_mod(r[shift + i], mul_mod(c, mi, p), p);
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    poly_rem(&out, m, p)
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: `f` has no irreducible factor of degree `<= deg f / 2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let mut f = f.to_vec();
    trim(&mut f);
    let n = f.len().saturating_sub(1);
    if n == 0 {
        return false;
    }
    let x = vec![0, 1];
    let mut h = poly_rem(&x, &f, p);
    for _ in 1..=n / 2 {
        // h <- h^p mod f
        let base = h.clone();
        let mut acc = vec![1u32];
        let mut e = p;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &b, &f, p);
            }
            b = poly_mulmod(&b, &b, &f, p);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = sub_mod(diff[1], 1, p);
        let g = poly_gcd(&f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}
