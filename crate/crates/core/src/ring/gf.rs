//! Prime-field polynomial helpers backing the `gf` constructor.
//!
//! Field elements are coefficient vectors of length `w` over F_p, indexed as
//! `Σ c_i p^i`.

/// Remainder of `a` modulo the monic polynomial `m` over F_p. Coefficients low to high.
fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let dm = m.len() - 1;
    let p = p as u64;
    while a.len() > dm {
        let lead = a.pop().unwrap() % p;
        if lead == 0 {
            continue;
        }
        let shift = a.len() - dm;
        for (i, &mi) in m[..dm].iter().enumerate() {
            let sub = lead * mi as u64 % p;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
    }
    a.into_iter().map(|c| (c % p) as u32).collect()
}

fn is_zero(a: &[u32]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Trial division by every monic polynomial of degree `1..=w/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let w = modulus.len() - 1;
    for deg in 1..=w / 2 {
        let count = (p as u64).pow(deg as u32);
        for code in 0..count {
            let mut divisor = digits(code, p, deg);
            divisor.push(1);
            if is_zero(&rem(modulus, &divisor, p)) {
                return false;
            }
        }
    }
    true
}

fn digits(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    out
}

/// The monic irreducible of degree `w` whose coefficient list `(c_0, …, c_{w-1})`
/// is lexicographically least.
pub fn default_modulus(p: u32, w: u32) -> Vec<u32> {
    let w = w as usize;
    let count = (p as u64).pow(w as u32);
    for code in 0..count {
        // c_0 is the most significant digit of the search order.
        let mut coeffs = digits(code, p, w);
        coeffs.reverse();
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

pub fn mul(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
    let w = modulus.len() - 1;
    let da = digits(a as u64, p, w);
    let db = digits(b as u64, p, w);
    let mut prod = vec![0u32; 2 * w - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let r = rem(&prod, modulus, p);
    encode(&r, p)
}

pub fn add(a: u32, b: u32, p: u32, w: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let (mut out, mut place) = (0u32, 1u32);
    for _ in 0..w {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place = place.wrapping_mul(p);
    }
    out
}

pub fn neg(a: u32, p: u32, w: u32) -> u32 {
    let mut a = a;
    let (mut out, mut place) = (0u32, 1u32);
    for _ in 0..w {
        out += ((p - a % p) % p) * place;
        a /= p;
        place = place.wrapping_mul(p);
    }
    out
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}
