//! The assigned polynomial `λ_f(a, b) = Σ_j c_j Σ_{r=1}^{j} a^{r−1} b a^{j−r}`.
//!
//! It is the `β` coefficient of `f(a + bβ)` in `R[β]`, which is what makes
//! it the bridge between functions on `R` and on the dual rings.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{DualView, Elem, Ring, RingHandle};

/// `λ_f(a, b)` via `m_1 = b`, `m_{j+1} = a m_j + b a^j`.
#[inline]
pub fn lambda_eval(f: &Poly, a: Elem, b: Elem) -> Elem {
    let r = f.ring();
    let (mut m, mut apow) = (b, a);
    let mut acc = r.zero();
    for (j, &c) in f.coeffs().iter().enumerate().skip(1) {
        if j > 1 {
            m = r.add(r.mul(a, m), r.mul(b, apow));
            apow = r.mul(apow, a);
        }
        acc = r.add(acc, r.mul(c, m));
    }
    acc
}

/// The defining double sum, quadratic in the degree. Kept as an oracle.
pub fn lambda_double_sum(f: &Poly, a: Elem, b: Elem) -> Elem {
    let r = f.ring();
    let mut acc = r.zero();
    for (j, &c) in f.coeffs().iter().enumerate().skip(1) {
        let mut inner = r.zero();
        for s in 1..=j {
            let t = r.mul(r.mul(r.pow(a, s as u64 - 1), b), r.pow(a, (j - s) as u64));
            inner = r.add(inner, t);
        }
        acc = r.add(acc, r.mul(c, inner));
    }
    acc
}

/// `m_j(a, b)` for `j = 0..=n`; `m_0 = 0`.
pub fn m_sequence(ring: &Ring, a: Elem, b: Elem, n: usize) -> Vec<Elem> {
    let mut out = vec![ring.zero()];
    let (mut m, mut apow) = (b, a);
    for j in 1..=n {
        if j > 1 {
            m = ring.add(ring.mul(a, m), ring.mul(b, apow));
            apow = ring.mul(apow, a);
        }
        out.push(m);
    }
    out
}

/// Cell `(a, b)` holds `λ_f(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiTable {
    pub size: u32,
    pub cells: Vec<Elem>,
}

impl BiTable {
    #[inline]
    pub fn get(&self, a: Elem, b: Elem) -> Elem {
        self.cells[(a * self.size + b) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(|&c| c == 0)
    }

    /// Every row `b ↦ cell(a, b)` is a bijection. Returns the first failing `(a, b1, b2)`.
    pub fn local_perm_witness(&self) -> Option<(Elem, Elem, Elem)> {
        let n = self.size as usize;
        let mut seen = vec![u32::MAX; n];
        for a in 0..self.size {
            let row = &self.cells[a as usize * n..(a as usize + 1) * n];
            seen.iter_mut().for_each(|s| *s = u32::MAX);
            for (b, &v) in row.iter().enumerate() {
                if seen[v as usize] != u32::MAX {
                    return Some((a, seen[v as usize], b as Elem));
                }
                seen[v as usize] = b as Elem;
            }
        }
        None
    }
}

pub fn lambda_table(f: &Poly, cap: u64) -> Result<BiTable> {
    let n = f.ring().size() as u64;
    if n * n > cap {
        return Err(Error::budget("lambda table cells", (n * n) as u128, cap as u128));
    }
    let r = f.ring();
    let mut cells = Vec::with_capacity((n * n) as usize);
    for a in r.elements() {
        for b in r.elements() {
            cells.push(lambda_eval(f, a, b));
        }
    }
    Ok(BiTable { size: r.size(), cells })
}

/// `f(a + Σ b_i β_i) = f_0(a) + Σ (λ_{f_0}(a, b_i) + f_i(a)) β_i`, with `f = f_0 + Σ f_i β_i`.
pub fn dual_eval_via_lemma(components: &[Poly], dual: &RingHandle, a: Elem, bs: &[Elem]) -> Result<Elem> {
    let view = DualView::of(dual)?;
    if components.len() != view.k + 1 || bs.len() != view.k {
        return Err(Error::WrongRing {
            expected: format!("{} components and {} coefficients", view.k + 1, view.k),
            got: format!("{} and {}", components.len(), bs.len()),
        });
    }
    let base = &view.base;
    for f in components {
        if f.ring().spec() != base.spec() {
            return Err(Error::WrongRing { expected: base.spec().into(), got: f.ring().spec().into() });
        }
    }
    let a0 = components[0].eval(a);
    let coeffs: Vec<Elem> = (1..=view.k)
        .map(|i| base.add(lambda_eval(&components[0], a, bs[i - 1]), components[i].eval(a)))
        .collect();
    Ok(view.encode(a0, &coeffs))
}

/// `f_0 + Σ f_i β_i` as a single polynomial over the dual ring.
pub fn assemble(components: &[Poly], dual: &RingHandle) -> Result<Poly> {
    let view = DualView::of(dual)?;
    if components.len() != view.k + 1 {
        return Err(Error::WrongRing {
            expected: format!("{} components", view.k + 1),
            got: components.len().to_string(),
        });
    }
    let len = components.iter().map(|f| f.coeffs().len()).max().unwrap_or(0);
    let coeffs = (0..len)
        .map(|j| {
            let parts: Vec<Elem> = components[1..].iter().map(|f| f.coeff(j)).collect();
            view.encode(components[0].coeff(j), &parts)
        })
        .collect();
    Ok(Poly::new(dual, coeffs))
}

/// Embeds a polynomial over the base ring into the dual ring.
pub fn embed(f: &Poly, dual: &RingHandle) -> Poly {
    Poly::new(dual, f.coeffs().to_vec())
}
