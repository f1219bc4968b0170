//! Monic central null polynomials and degree reduction.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{right_divmod, Poly};
use crate::ring::{dual_of, ConstructOptions, Elem, Ring, RingHandle};

/// Minimal `(n2, π)` with `r^{n2+π} = r^{n2}`, `n2 >= 1`.
pub fn power_preperiod(ring: &Ring, r: Elem) -> (u64, u64) {
    let mut first: HashMap<Elem, u64> = HashMap::new();
    let mut x = r;
    let mut e = 1;
    loop {
        if let Some(&n2) = first.get(&x) {
            return (n2, e - n2);
        }
        first.insert(x, e);
        x = ring.mul(x, r);
        e += 1;
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Largest degree `monic_central_null` will produce.
pub const MAX_NULL_DEGREE: u64 = 1 << 16;

#[derive(Debug, Clone, Serialize)]
pub struct NullPoly {
    /// Largest preperiod over the ring.
    pub m: u64,
    /// Least common multiple of the periods.
    pub l: u64,
    pub degree: u64,
    #[serde(serialize_with = "ser_poly")]
    pub poly: Poly,
}

fn ser_poly<S: serde::Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_index_string())
}

/// `x^{M+L} − x^M` with `M` the largest preperiod and `L` the lcm of periods.
/// Its coefficients are `0, 1, −1`, so it is central.
pub fn monic_central_null(ring: &RingHandle) -> Result<NullPoly> {
    let (mut m, mut l) = (1u64, 1u64);
    for r in ring.elements() {
        let (n2, pi) = power_preperiod(ring, r);
        m = m.max(n2);
        l = l / gcd(l, pi) * pi;
        if m + l > MAX_NULL_DEGREE {
            return Err(Error::budget(format!("null polynomial degree on {}", ring.spec()), (m + l) as u128, MAX_NULL_DEGREE as u128));
        }
    }
    let degree = m + l;
    let mut coeffs = vec![ring.zero(); degree as usize + 1];
    coeffs[m as usize] = ring.neg(ring.one());
    coeffs[degree as usize] = ring.one();
    Ok(NullPoly { m, l, degree, poly: Poly::new(ring, coeffs) })
}

/// Degree of the monic central null polynomial of `R_k`, read off the dual ring.
pub fn dual_null_degree(base: &RingHandle, k: usize) -> Result<u64> {
    Ok(dual_null(base, k)?.degree)
}

/// The monic central null polynomial of `R_k`, with coefficients mapped back into `R`.
pub fn dual_null(base: &RingHandle, k: usize) -> Result<NullPoly> {
    let dual = dual_of(base, k, &ConstructOptions { max_size: u32::MAX as u128, ..Default::default() })?;
    let n = monic_central_null(&dual)?;
    // 0, 1 and −1 of R_k have zero β parts; their indices coincide with those in R.
    let poly = Poly::new(base, n.poly.coeffs().to_vec());
    Ok(NullPoly { poly, ..n })
}

/// Reduces `f_0` modulo the null polynomial of `R_k` and each `f_i` modulo
/// that of `R`. The function induced on `R_k` is unchanged.
pub fn canonical_reduce(components: &[Poly], base: &RingHandle) -> Result<Vec<Poly>> {
    let k = components.len().checked_sub(1).filter(|&k| k >= 1).ok_or_else(|| Error::WrongRing {
        expected: "at least two components".into(),
        got: components.len().to_string(),
    })?;
    let g1 = dual_null(base, k)?.poly;
    let g = monic_central_null(base)?.poly;
    let mut out = vec![right_divmod(&components[0], &g1)?.1];
    for f in &components[1..] {
        out.push(right_divmod(f, &g)?.1);
    }
    Ok(out)
}
