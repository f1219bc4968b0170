//! Polynomials over a ring with right substitution.
//!
//! `f = Σ c_j x^j` evaluates at `a` to `Σ c_j a^j`. The product follows
//! the same convention: `(f g)(x) = Σ a_j g(x) x^j`, so the coefficient of
//! `x^{i+j}` in `f g` accumulates `a_j b_i`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Elem, RingHandle};

#[derive(Clone)]
pub struct Poly {
    ring: RingHandle,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({} over {})", self.to_index_string(), self.ring.spec())
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

pub(crate) fn same_ring(a: &RingHandle, b: &RingHandle) -> bool {
    Arc::ptr_eq(a, b) || a.spec() == b.spec()
}

fn check_same(a: &RingHandle, b: &RingHandle) -> Result<()> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(Error::WrongRing { expected: a.spec().into(), got: b.spec().into() })
    }
}

impl Poly {
    /// Drops trailing zeros. Panics if a coefficient is not an element of `ring`.
    pub fn new(ring: &RingHandle, mut coeffs: Vec<Elem>) -> Poly {
        assert!(coeffs.iter().all(|&c| ring.contains(c)), "coefficient outside {}", ring.spec());
        while coeffs.last() == Some(&ring.zero()) {
            coeffs.pop();
        }
        Poly { ring: ring.clone(), coeffs }
    }

    pub fn try_new(ring: &RingHandle, coeffs: Vec<Elem>) -> Result<Poly> {
        if let Some(&c) = coeffs.iter().find(|&&c| !ring.contains(c)) {
            return Err(Error::WrongRing { expected: ring.spec().into(), got: format!("coefficient {c}") });
        }
        Ok(Poly::new(ring, coeffs))
    }

    /// Parses the index form `"c0,c1,…"`, low degree first. The empty string is zero.
    pub fn parse(ring: &RingHandle, text: &str) -> Result<Poly> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Poly::zero(ring));
        }
        let coeffs = text
            .split(',')
            .map(|t| {
                t.trim().parse::<Elem>().map_err(|e| Error::parse(text, format!("bad coefficient `{t}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(&c) = coeffs.iter().find(|&&c| !ring.contains(c)) {
            return Err(Error::parse(text, format!("coefficient {c} is not an element of {}", ring.spec())));
        }
        Ok(Poly::new(ring, coeffs))
    }

    pub fn zero(ring: &RingHandle) -> Poly {
        Poly { ring: ring.clone(), coeffs: Vec::new() }
    }

    pub fn constant(ring: &RingHandle, c: Elem) -> Poly {
        Poly::new(ring, vec![c])
    }

    pub fn x(ring: &RingHandle) -> Poly {
        Poly::monomial(ring, ring.one(), 1)
    }

    /// `c x^j`
    pub fn monomial(ring: &RingHandle, c: Elem, j: usize) -> Poly {
        let mut coeffs = vec![ring.zero(); j + 1];
        coeffs[j] = c;
        Poly::new(ring, coeffs)
    }

    pub fn ring(&self) -> &RingHandle {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Elem {
        self.coeffs.get(j).copied().unwrap_or(self.ring.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&self.ring.one())
    }

    pub fn to_index_string(&self) -> String {
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Human-readable form; never parsed back.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let r = &self.ring;
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != r.zero())
            .map(|(j, &c)| {
                let x = match j {
                    0 => String::new(),
                    1 => "x".into(),
                    _ => format!("x^{j}"),
                };
                if c == r.one() && j > 0 {
                    x
                } else {
                    format!("({}){x}", r.format_elem(c))
                }
            })
            .collect();
        terms.join(" + ")
    }

    /// Right substitution, Horner form `((c_n a + c_{n−1}) a + …) a + c_0`.
    #[inline]
    pub fn eval(&self, a: Elem) -> Elem {
        let r = &self.ring;
        self.coeffs.iter().rev().fold(r.zero(), |acc, &c| r.add(r.mul(acc, a), c))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.zip(other, |a, b| self.ring.add(a, b))
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.zip(other, |a, b| self.ring.sub(a, b))
    }

    pub fn neg(&self) -> Poly {
        Poly::new(&self.ring, self.coeffs.iter().map(|&c| self.ring.neg(c)).collect())
    }

    fn zip(&self, other: &Poly, f: impl Fn(Elem, Elem) -> Elem) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(&self.ring, (0..n).map(|j| f(self.coeff(j), other.coeff(j))).collect())
    }

    /// `r · f`, coefficients multiplied from the left.
    pub fn scale_left(&self, r: Elem) -> Poly {
        Poly::new(&self.ring, self.coeffs.iter().map(|&c| self.ring.mul(r, c)).collect())
    }

    /// Product under right substitution: `x^{i+j}` collects `a_j b_i`.
    pub fn mul(&self, other: &Poly) -> Poly {
        let r = &self.ring;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(r);
        }
        let mut out = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (j, &a) in self.coeffs.iter().enumerate() {
            for (i, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = r.add(out[i + j], r.mul(a, b));
            }
        }
        Poly::new(r, out)
    }

    /// `Σ j c_j x^{j−1}`, with `j c_j` formed by repeated addition.
    pub fn derivative(&self) -> Poly {
        let r = &self.ring;
        Poly::new(r, self.coeffs.iter().enumerate().skip(1).map(|(j, &c)| r.times(j as u64, c)).collect())
    }

    /// All coefficients commute with every ring element.
    pub fn is_central(&self) -> bool {
        let r = &self.ring;
        r.is_commutative()
            || self.coeffs.iter().all(|&c| r.elements().all(|a| r.mul(c, a) == r.mul(a, c)))
    }
}

pub fn eval_right(f: &Poly, a: Elem) -> Result<Elem> {
    if !f.ring.contains(a) {
        return Err(Error::WrongRing { expected: f.ring.spec().into(), got: format!("element {a}") });
    }
    Ok(f.eval(a))
}

pub fn poly_mul(f: &Poly, g: &Poly) -> Result<Poly> {
    check_same(&f.ring, &g.ring)?;
    Ok(f.mul(g))
}

pub fn formal_derivative(f: &Poly) -> Poly {
    f.derivative()
}

/// `f = q g + r` with `deg r < deg g`, dividing from the right. `g` must be monic.
pub fn right_divmod(f: &Poly, g: &Poly) -> Result<(Poly, Poly)> {
    check_same(&f.ring, &g.ring)?;
    if !g.is_monic() {
        return Err(Error::NotMonic);
    }
    let ring = &f.ring;
    let m = g.coeffs.len() - 1;
    let mut rem = f.coeffs.clone();
    let mut quot = vec![ring.zero(); rem.len().saturating_sub(m)];
    while rem.len() > m {
        let top = rem.len() - 1;
        let c = rem[top];
        if c != ring.zero() {
            let s = top - m;
            quot[s] = c;
            // subtract (c x^s) g, whose x^{s+i} coefficient is c g_i
            for (i, &gi) in g.coeffs.iter().enumerate() {
                rem[s + i] = ring.sub(rem[s + i], ring.mul(c, gi));
            }
        }
        rem.pop();
    }
    Ok((Poly::new(ring, quot), Poly::new(ring, rem)))
}

/// Substitutes a ring homomorphism image: `f` with each coefficient mapped by `map` into `target`.
pub fn map_coeffs(f: &Poly, target: &RingHandle, map: impl Fn(Elem) -> Elem) -> Poly {
    Poly::new(target, f.coeffs.iter().map(|&c| map(c)).collect())
}
