//! Jacobson radical of a structure-constant algebra over GF(p).
//!
//! Uses the trace-lifting filtration on the regular representation:
//! `I_{-1} = A` and `I_i = { a in I_{i-1} : g_i(a b) = 0 for all b }` where
//! `g_i(a) = Tr(L~_a^{p^i}) / p^i mod p` for an integer lift `L~_a` of the left
//! multiplication matrix. `g_i` is linear on `I_{i-1}` and the radical is
//! `I_l` with `l = floor(log_p dim)`.

use crate::error::{Error, Result};
use crate::linalg::FieldMat;

use super::sc::SCAlgebra;

/// Basis (as columns) of the Jacobson radical, post-checked.
pub fn radical_sc(a: &SCAlgebra) -> Result<FieldMat> {
    let rad = trace_filtration(a)?;
    a.check_nilpotent_ideal(&rad)?;
    if rad.cols() > 0 {
        let (q, _) = a.quotient(&rad);
        let qrad = trace_filtration(&q)?;
        if qrad.cols() != 0 {
            return Err(Error::RadicalCheck(format!(
                "quotient still has a radical of dimension {}",
                qrad.cols()
            )));
        }
    }
    Ok(rad)
}

/// Largest `p^dim` accepted by [`radical_by_enumeration`].
pub const ENUMERATION_LIMIT: u64 = 1 << 8;

/// Radical as the set of all `x` with `a x` nilpotent for every `a`, found by
/// listing every element. Independent of [`radical_sc`]; only for tiny algebras.
pub fn radical_by_enumeration(a: &SCAlgebra) -> Result<FieldMat> {
    let (p, d) = (a.p(), a.dim());
    let size = (p as u64).checked_pow(d as u32).filter(|&n| n <= ENUMERATION_LIMIT);
    let Some(size) = size else {
        return Err(Error::Unsupported(format!("{p}^{d} elements is too many to list")));
    };
    let elems: Vec<Vec<u32>> = (0..size)
        .map(|mut t| {
            (0..d)
                .map(|_| {
                    let digit = (t % p as u64) as u32;
                    t /= p as u64;
                    digit
                })
                .collect()
        })
        .collect();
    let nilpotent = |x: &[u32]| a.left_mult_by(x).pow(d as u64).is_zero();
    let members: Vec<&Vec<u32>> = elems
        .iter()
        .filter(|x| elems.iter().all(|y| nilpotent(&a.mul(y, x))))
        .collect();
    let cols: Vec<Vec<u32>> = members.iter().map(|x| x.to_vec()).collect();
    let span = FieldMat::from_columns(p, d, &cols).column_space();
    if (p as u64).pow(span.cols() as u32) != members.len() as u64 {
        return Err(Error::RadicalCheck("nilpotent elements do not form a subspace".into()));
    }
    Ok(span)
}

fn trace_filtration(a: &SCAlgebra) -> Result<FieldMat> {
    let (p, d) = (a.p(), a.dim());
    if d == 0 {
        return Ok(FieldMat::zeros(p, 0, 0));
    }
    let mut levels = 0u32;
    while (p as u64).pow(levels + 1) <= d as u64 {
        levels += 1;
    }
    let basis_elems: Vec<Vec<u32>> = (0..d).map(|j| a.basis_vector(j)).collect();
    let mut ideal = FieldMat::identity(p, d);
    for i in 0..=levels {
        if ideal.cols() == 0 {
            break;
        }
        let scale = (p as u64).pow(i);
        let modulus = scale * p as u64;
        let mut g = FieldMat::zeros(p, d, ideal.cols());
        for k in 0..ideal.cols() {
            let ak = ideal.col(k);
            for (j, bj) in basis_elems.iter().enumerate() {
                let prod = a.mul(&ak, bj);
                let lm = a.left_mult_by(&prod);
                let tr = lifted_power_trace(&lm, scale, modulus);
                if !tr.is_multiple_of(scale) {
                    return Err(Error::RadicalCheck(format!("trace not divisible by p^{i}")));
                }
                g.set(j, k, ((tr / scale) % p as u64) as u32);
            }
        }
        let ker = g.kernel_basis();
        ideal = ideal.mul(&ker);
    }
    Ok(ideal)
}

/// `Tr(M~^e) mod modulus` for the lift of `m` with entries in `[0, p)`.
fn lifted_power_trace(m: &FieldMat, e: u64, modulus: u64) -> u64 {
    let n = m.rows();
    let lift: Vec<u64> = m.data().iter().map(|&x| x as u64 % modulus).collect();
    let mul = |x: &[u64], y: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = x[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = (out[i * n + j] + a * y[k * n + j]) % modulus;
                }
            }
        }
        out
    };
    let mut acc: Vec<u64> = (0..n * n).map(|t| u64::from(t / n == t % n) % modulus).collect();
    let mut base = lift;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    (0..n).fold(0, |s, i| (s + acc[i * n + i]) % modulus)
}
