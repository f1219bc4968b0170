//! Exhaustive enumeration of polynomials of bounded degree.
//!
//! Anything linear in the polynomial (its function table, its λ data, its
//! derivative table) is a sum of per-monomial contributions, so the
//! enumerator keeps suffix sums and updates only the levels that changed.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{Elem, Ring, RingHandle};

pub struct PolyEnumerator<'r> {
    ring: &'r Ring,
    bound: usize,
    width: usize,
    /// `contrib[j][c]` is the signature of `c x^j`, flattened.
    contrib: Vec<Vec<Elem>>,
}

impl<'r> PolyEnumerator<'r> {
    /// `fill(c, j, out)` writes the signature of `c x^j` into `out` (length `width`).
    pub fn new(ring: &'r Ring, bound: usize, width: usize, mut fill: impl FnMut(Elem, usize, &mut [Elem])) -> Self {
        let n = ring.size() as usize;
        let contrib = (0..bound)
            .map(|j| {
                let mut v = vec![ring.zero(); n * width];
                for c in ring.elements() {
                    fill(c, j, &mut v[c as usize * width..(c as usize + 1) * width]);
                }
                v
            })
            .collect();
        PolyEnumerator { ring, bound, width, contrib }
    }

    /// Signature = function table.
    pub fn tables(ring: &'r Ring, bound: usize) -> Self {
        let powers = power_table(ring, bound);
        let n = ring.size() as usize;
        PolyEnumerator::new(ring, bound, n, |c, j, out| {
            for (a, o) in out.iter_mut().enumerate() {
                *o = ring.mul(c, powers[j][a]);
            }
        })
    }

    /// Signature = function table followed by the derivative's table.
    pub fn tables_with_derivative(ring: &'r Ring, bound: usize) -> Self {
        let powers = power_table(ring, bound);
        let n = ring.size() as usize;
        PolyEnumerator::new(ring, bound, 2 * n, |c, j, out| {
            let jc = ring.times(j as u64, c);
            for a in 0..n {
                out[a] = ring.mul(c, powers[j][a]);
                out[n + a] = if j == 0 { ring.zero() } else { ring.mul(jc, powers[j - 1][a]) };
            }
        })
    }

    pub fn count(&self) -> u128 {
        (self.ring.size() as u128).saturating_pow(self.bound as u32)
    }

    pub fn check_budget(&self, what: &str, cap: u64) -> Result<()> {
        if self.count() > cap as u128 {
            return Err(Error::budget(what, self.count(), cap as u128));
        }
        Ok(())
    }

    /// Visits `(coefficients, signature)` for every coefficient tuple of
    /// length `bound`, with `c_0` varying fastest.
    pub fn for_each(&self, visit: impl FnMut(&[Elem], &[Elem]) -> ControlFlow<()>) {
        self.for_each_in(self.ring, visit)
    }

    /// As [`PolyEnumerator::for_each`], with signature entries added in `r`
    /// (coefficients still range over the enumerator's ring).
    pub fn for_each_in(&self, r: &Ring, mut visit: impl FnMut(&[Elem], &[Elem]) -> ControlFlow<()>) {
        let w = self.width;
        let n = self.ring.size();
        let mut coeffs = vec![r.zero(); self.bound];
        let mut partial = vec![vec![r.zero(); w]; self.bound + 1];
        let fill = |partial: &mut Vec<Vec<Elem>>, coeffs: &[Elem], j: usize| {
            let (lo, hi) = partial.split_at_mut(j + 1);
            let c = coeffs[j] as usize;
            let add = &self.contrib[j][c * w..(c + 1) * w];
            for ((dst, &s), &t) in lo[j].iter_mut().zip(&hi[0]).zip(add) {
                *dst = r.add(s, t);
            }
        };
        for j in (0..self.bound).rev() {
            fill(&mut partial, &coeffs, j);
        }
        loop {
            if visit(&coeffs, &partial[0]).is_break() {
                return;
            }
            let mut j = 0;
            loop {
                if j == self.bound {
                    return;
                }
                coeffs[j] += 1;
                if coeffs[j] < n {
                    break;
                }
                coeffs[j] = 0;
                j += 1;
            }
            for i in (0..=j).rev() {
                fill(&mut partial, &coeffs, i);
            }
        }
    }
}

/// `powers[j][a] = a^j`.
pub fn power_table(ring: &Ring, bound: usize) -> Vec<Vec<Elem>> {
    let mut out: Vec<Vec<Elem>> = Vec::with_capacity(bound);
    for j in 0..bound {
        let row = if j == 0 {
            vec![ring.one(); ring.size() as usize]
        } else {
            out[j - 1].iter().zip(ring.elements()).map(|(&p, a)| ring.mul(p, a)).collect()
        };
        out.push(row);
    }
    out
}

/// Uniform coefficient tuple of length `len`.
pub fn random_poly(ring: &RingHandle, len: usize, rng: &mut impl rand::Rng) -> Poly {
    Poly::new(ring, (0..len).map(|_| rng.gen_range(0..ring.size())).collect())
}

/// Iterates all polynomials of degree `< bound`, materializing each one. Slow path for oracles.
pub fn all_polys(ring: &RingHandle, bound: usize) -> impl Iterator<Item = Poly> + '_ {
    let n = ring.size() as u64;
    let total = n.pow(bound as u32);
    (0..total).map(move |mut code| {
        let coeffs = (0..bound)
            .map(|_| {
                let c = (code % n) as Elem;
                code /= n;
                c
            })
            .collect();
        Poly::new(ring, coeffs)
    })
}
