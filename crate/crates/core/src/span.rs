//! Orders and elements of subgroups of `⊕ Z/n_i`.
//!
//! Each prime is handled separately: coordinates are embedded into
//! `Z/p^A` (`A` the largest exponent of `p` among the moduli) and generators
//! are reduced to an echelon form with saturation rows. For a pivot with
//! leading entry `p^v` the order contribution is `p^{A−v}`, and elements with
//! zeros in the first `j` coordinates are spanned by the pivots at or after
//! column `j`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A group order kept in factored form, since subgroup orders overflow `u128` easily.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Order {
    factors: BTreeMap<u64, u64>,
}

impl Order {
    pub fn one() -> Order {
        Order::default()
    }

    pub fn from_u64(mut n: u64) -> Order {
        let mut o = Order::default();
        let mut d = 2;
        while d * d <= n {
            while n.is_multiple_of(d) {
                *o.factors.entry(d).or_default() += 1;
                n /= d;
            }
            d += 1;
        }
        if n > 1 {
            *o.factors.entry(n).or_default() += 1;
        }
        o
    }

    pub fn times_prime_power(&mut self, p: u64, e: u64) {
        if e > 0 {
            *self.factors.entry(p).or_default() += e;
        }
    }

    pub fn mul(&self, other: &Order) -> Order {
        let mut out = self.clone();
        for (&p, &e) in &other.factors {
            out.times_prime_power(p, e);
        }
        out
    }

    pub fn pow(&self, k: u64) -> Order {
        Order { factors: self.factors.iter().map(|(&p, &e)| (p, e * k)).collect() }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Order) -> Option<Order> {
        let mut out = self.clone();
        for (&p, &e) in &other.factors {
            let have = out.factors.get(&p).copied().unwrap_or(0);
            if have < e {
                return None;
            }
            if have == e {
                out.factors.remove(&p);
            } else {
                out.factors.insert(p, have - e);
            }
        }
        Some(out)
    }

    pub fn to_u128(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for (&p, &e) in &self.factors {
            let e = u32::try_from(e).ok()?;
            acc = acc.checked_mul((p as u128).checked_pow(e)?)?;
        }
        Some(acc)
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.to_u128().and_then(|v| u64::try_from(v).ok())
    }

    /// `true` if the order is at most `cap`.
    pub fn le(&self, cap: u128) -> bool {
        self.to_u128().is_some_and(|v| v <= cap)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_u128() {
            Some(v) => write!(f, "{v}"),
            None => {
                let parts: Vec<String> = self.factors.iter().map(|(p, e)| format!("{p}^{e}")).collect();
                write!(f, "{}", parts.join("*"))
            }
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.to_string()),
        }
    }
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "{a} not invertible mod {m}");
    t0.rem_euclid(m as i128) as u64
}

#[derive(Debug, Clone)]
struct PrimePart {
    p: u64,
    big_a: u32,
    q: u64,
    /// Global coordinate of each local column, increasing.
    cols: Vec<usize>,
    /// `A − a_i` for each local column.
    shifts: Vec<u32>,
    pivots: Vec<Option<Vec<u64>>>,
    vals: Vec<u32>,
}

impl PrimePart {
    fn valuation(&self, mut x: u64) -> u32 {
        let mut v = 0;
        while x.is_multiple_of(self.p) && v < self.big_a {
            x /= self.p;
            v += 1;
        }
        v
    }

    fn normalize(&self, row: &mut [u64], c: usize) -> u32 {
        let w = self.valuation(row[c]);
        let unit = row[c] / self.p.pow(w);
        let inv = inv_mod(unit, self.q);
        for x in row.iter_mut() {
            *x = *x * inv % self.q;
        }
        w
    }

    fn insert(&mut self, row: Vec<u64>) {
        let n = self.cols.len();
        let q = self.q;
        let mut stack = vec![row];
        while let Some(mut row) = stack.pop() {
            let mut c = 0;
            loop {
                while c < n && row[c] == 0 {
                    c += 1;
                }
                if c == n {
                    break;
                }
                let w = self.valuation(row[c]);
                match &self.pivots[c] {
                    Some(piv) if w >= self.vals[c] => {
                        let t = row[c] / self.p.pow(self.vals[c]);
                        for (x, &y) in row.iter_mut().zip(piv) {
                            *x = (*x + q - t * y % q) % q;
                        }
                    }
                    _ => {
                        let v = self.normalize(&mut row, c);
                        let sat_factor = self.p.pow(self.big_a - v);
                        let sat: Vec<u64> = row.iter().map(|&x| x * sat_factor % q).collect();
                        if sat.iter().any(|&x| x != 0) {
                            stack.push(sat);
                        }
                        let old = self.pivots[c].replace(row);
                        self.vals[c] = v;
                        if let Some(old) = old {
                            stack.push(old);
                        }
                        break;
                    }
                }
            }
        }
    }
}

/// Echelon form of a subgroup of `⊕ Z/moduli[i]`.
#[derive(Debug, Clone)]
pub struct Echelon {
    moduli: Vec<u32>,
    parts: Vec<PrimePart>,
}

/// A generator of the span with its additive order.
#[derive(Debug, Clone)]
pub struct BasisVector {
    pub vector: Vec<u32>,
    pub order: u64,
}

impl Echelon {
    pub fn new(moduli: &[u32]) -> Echelon {
        let mut primes: BTreeMap<u64, u32> = BTreeMap::new();
        for &m in moduli {
            for (p, e) in factor(m as u64) {
                let a = primes.entry(p).or_default();
                *a = (*a).max(e);
            }
        }
        let parts = primes
            .into_iter()
            .map(|(p, big_a)| {
                let mut cols = Vec::new();
                let mut shifts = Vec::new();
                for (i, &m) in moduli.iter().enumerate() {
                    let a = factor(m as u64).into_iter().find(|&(q, _)| q == p).map_or(0, |(_, e)| e);
                    if a > 0 {
                        cols.push(i);
                        shifts.push(big_a - a);
                    }
                }
                let n = cols.len();
                PrimePart { p, big_a, q: p.pow(big_a), cols, shifts, pivots: vec![None; n], vals: vec![0; n] }
            })
            .collect();
        Echelon { moduli: moduli.to_vec(), parts }
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn insert(&mut self, v: &[u32]) {
        assert_eq!(v.len(), self.moduli.len());
        for part in &mut self.parts {
            let pa_shift: Vec<u64> = part.shifts.iter().map(|&s| part.p.pow(s)).collect();
            let row: Vec<u64> = part
                .cols
                .iter()
                .zip(&pa_shift)
                .map(|(&i, &sh)| {
                    let n_i = self.moduli[i] as u64;
                    let pa = part.q / sh;
                    debug_assert_eq!(n_i % pa, 0);
                    (v[i] as u64 % pa) * sh
                })
                .collect();
            if row.iter().any(|&x| x != 0) {
                part.insert(row);
            }
        }
    }

    pub fn order(&self) -> Order {
        self.order_from(0)
    }

    /// Order of the subgroup of elements vanishing on coordinates `< first`.
    pub fn order_from(&self, first: usize) -> Order {
        let mut o = Order::one();
        for part in &self.parts {
            for (l, piv) in part.pivots.iter().enumerate() {
                if piv.is_some() && part.cols[l] >= first {
                    o.times_prime_power(part.p, (part.big_a - part.vals[l]) as u64);
                }
            }
        }
        o
    }

    pub fn basis(&self) -> Vec<BasisVector> {
        self.basis_from(0)
    }

    /// Generators with unique coefficients `0..order` of the subgroup vanishing before `first`.
    pub fn basis_from(&self, first: usize) -> Vec<BasisVector> {
        let mut out = Vec::new();
        for part in &self.parts {
            for (l, piv) in part.pivots.iter().enumerate() {
                let Some(row) = piv else { continue };
                if part.cols[l] < first {
                    continue;
                }
                let mut vector = vec![0u32; self.moduli.len()];
                for (j, &i) in part.cols.iter().enumerate() {
                    let n_i = self.moduli[i] as u64;
                    let pa = part.q / part.p.pow(part.shifts[j]);
                    let y = row[j] / part.p.pow(part.shifts[j]) % pa;
                    let m = n_i / pa;
                    let lift = if m == 1 { y } else { y * (m * inv_mod(m % pa, pa) % n_i) % n_i };
                    vector[i] = lift as u32;
                }
                out.push(BasisVector { vector, order: part.p.pow(part.big_a - part.vals[l]) });
            }
        }
        out
    }
}

/// Visits every element of the group spanned by `basis` once.
pub fn for_each_element(moduli: &[u32], basis: &[BasisVector], mut visit: impl FnMut(&[u32])) {
    let n = moduli.len();
    let mut cur = vec![0u32; n];
    let mut digits = vec![0u64; basis.len()];
    // subtracting order·x undoes a full cycle of digit c
    let wraps: Vec<Vec<u32>> = basis
        .iter()
        .map(|b| {
            b.vector
                .iter()
                .zip(moduli)
                .map(|(&x, &m)| ((m as u64 - (x as u64 * (b.order % m as u64)) % m as u64) % m as u64) as u32)
                .collect()
        })
        .collect();
    loop {
        visit(&cur);
        let mut c = 0;
        loop {
            if c == basis.len() {
                return;
            }
            digits[c] += 1;
            add_into(&mut cur, &basis[c].vector, moduli);
            if digits[c] < basis[c].order {
                break;
            }
            digits[c] = 0;
            add_into(&mut cur, &wraps[c], moduli);
            c += 1;
        }
    }
}

#[inline]
fn add_into(acc: &mut [u32], v: &[u32], moduli: &[u32]) {
    for ((a, &x), &m) in acc.iter_mut().zip(v).zip(moduli) {
        let s = *a as u64 + x as u64;
        *a = if s >= m as u64 { (s - m as u64) as u32 } else { s as u32 };
    }
}

/// Breadth-first additive closure, for cross-checking the echelon method on small spans.
pub fn closure_size(moduli: &[u32], gens: &[Vec<u32>], cap: usize) -> Result<usize> {
    let zero = vec![0u32; moduli.len()];
    let mut seen: HashSet<Vec<u32>> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(v) = frontier.pop() {
        for g in gens {
            let mut w = v.clone();
            add_into(&mut w, g, moduli);
            if seen.insert(w.clone()) {
                if seen.len() > cap {
                    return Err(Error::budget("span closure", seen.len() as u128, cap as u128));
                }
                frontier.push(w);
            }
        }
    }
    Ok(seen.len())
}
