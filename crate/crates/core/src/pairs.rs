//! The additive map `f ↦ ([f], [λ_f])` and its image.
//!
//! `λ_f(a, ·)` is additive, so the whole λ table is fixed by the values
//! `λ_f(a, e_t)` on the additive basis `e_t` of the ring. A signature of `f`
//! is its function table followed by those values (row `a`, then `t`).
//! Signatures are additive in `f`, so the set of signatures of all
//! polynomials is the subgroup generated by the signatures of `e_s x^j`.

use crate::enumerate::{power_table, PolyEnumerator};
use crate::lambda::{lambda_eval, m_sequence, BiTable};
use crate::poly::Poly;
use crate::ring::{Elem, Ring, RingHandle};
use crate::span::{for_each_element, Echelon, Order};

#[derive(Debug, Clone)]
pub struct PairLayout {
    pub ring: RingHandle,
    /// Additive basis `e_t`.
    pub basis: Vec<Elem>,
}

impl PairLayout {
    pub fn new(ring: &RingHandle) -> PairLayout {
        PairLayout { ring: ring.clone(), basis: ring.additive_basis() }
    }

    fn n(&self) -> usize {
        self.ring.size() as usize
    }

    /// Signature length in ring elements.
    pub fn width(&self) -> usize {
        self.n() * (1 + self.basis.len())
    }

    /// Number of integer coordinates taken by the function-table part.
    pub fn table_coord_len(&self) -> usize {
        self.n() * self.ring.moduli().len()
    }

    pub fn coord_moduli(&self) -> Vec<u32> {
        self.ring.moduli().repeat(self.width())
    }

    pub fn table_moduli(&self) -> Vec<u32> {
        self.ring.moduli().repeat(self.n())
    }

    pub fn sig_of(&self, f: &Poly) -> Vec<Elem> {
        let r = &self.ring;
        let mut out: Vec<Elem> = r.elements().map(|a| f.eval(a)).collect();
        for a in r.elements() {
            for &e in &self.basis {
                out.push(lambda_eval(f, a, e));
            }
        }
        out
    }

    /// Fills signatures of `c x^j`, with `c` taken from `coeffs`, for `j < bound`.
    pub fn enumerator(&self, bound: usize) -> PolyEnumerator<'_> {
        let r: &Ring = &self.ring;
        let n = self.n();
        let powers = power_table(r, bound);
        // ms[a * g + t][j] = m_j(a, e_t)
        let ms: Vec<Vec<Elem>> = r
            .elements()
            .flat_map(|a| self.basis.iter().map(move |&e| m_sequence(r, a, e, bound)))
            .collect();
        PolyEnumerator::new(r, bound, self.width(), move |c, j, out| {
            for a in 0..n {
                out[a] = r.mul(c, powers[j][a]);
            }
            for (i, m) in ms.iter().enumerate() {
                out[n + i] = r.mul(c, m[j]);
            }
        })
    }

    /// Like [`PairLayout::enumerator`], with the derivative's table appended
    /// after the λ part.
    pub fn enumerator_with_derivative(&self, bound: usize) -> PolyEnumerator<'_> {
        let r: &Ring = &self.ring;
        let n = self.n();
        let w = self.width();
        let powers = power_table(r, bound);
        let ms: Vec<Vec<Elem>> = r
            .elements()
            .flat_map(|a| self.basis.iter().map(move |&e| m_sequence(r, a, e, bound)))
            .collect();
        PolyEnumerator::new(r, bound, w + n, move |c, j, out| {
            let jc = r.times(j as u64, c);
            for a in 0..n {
                out[a] = r.mul(c, powers[j][a]);
                out[w + a] = if j == 0 { r.zero() } else { r.mul(jc, powers[j - 1][a]) };
            }
            for (i, m) in ms.iter().enumerate() {
                out[n + i] = r.mul(c, m[j]);
            }
        })
    }

    /// Signatures of `e_s x^j` for `j < bound`.
    pub fn generators(&self, bound: usize) -> Vec<Vec<Elem>> {
        let mut out = Vec::new();
        for j in 0..bound {
            for &c in &self.basis {
                out.push(self.sig_of(&Poly::monomial(&self.ring, c, j)));
            }
        }
        out
    }

    pub fn to_coords(&self, sig: &[Elem]) -> Vec<u32> {
        sig.iter().flat_map(|&x| self.ring.coords(x)).collect()
    }

    pub fn from_coords(&self, v: &[u32]) -> Vec<Elem> {
        let c = self.ring.moduli().len();
        v.chunks(c).map(|ch| self.ring.from_coords(ch)).collect()
    }

    pub fn table<'s>(&self, sig: &'s [Elem]) -> &'s [Elem] {
        &sig[..self.n()]
    }

    pub fn lambda_part<'s>(&self, sig: &'s [Elem]) -> &'s [Elem] {
        &sig[self.n()..]
    }

    /// The full λ table from its values on the basis.
    pub fn expand_lambda(&self, lam_part: &[Elem]) -> BiTable {
        let r = &self.ring;
        let n = self.n();
        let g = self.basis.len();
        let moduli = r.moduli();
        let mut cells = vec![r.zero(); n * n];
        for a in 0..n {
            let row = &mut cells[a * n..(a + 1) * n];
            // λ(a, b) = λ(a, b − e_t) + λ(a, e_t) with t the lowest nonzero coordinate of b
            for b in 1..n {
                let (mut rest, mut t) = (b as u32, 0);
                while rest % moduli[t] == 0 {
                    rest /= moduli[t];
                    t += 1;
                }
                let prev = b - self.basis[t] as usize;
                row[b] = r.add(row[prev], lam_part[a * g + t]);
            }
        }
        BiTable { size: r.size(), cells }
    }

    /// Every row of the λ map is injective (hence bijective).
    pub fn lambda_locally_bijective(&self, lam_part: &[Elem]) -> bool {
        self.expand_lambda(lam_part).local_perm_witness().is_none()
    }
}

/// Echelon forms of the pair image and of its table projection.
#[derive(Debug, Clone)]
pub struct PairSpan {
    pub layout: PairLayout,
    pub bound: usize,
    pairs: Echelon,
    tables: Echelon,
}

impl PairSpan {
    /// Image of all polynomials of degree `< bound`.
    pub fn build(ring: &RingHandle, bound: usize) -> PairSpan {
        let layout = PairLayout::new(ring);
        let mut pairs = Echelon::new(&layout.coord_moduli());
        let mut tables = Echelon::new(&layout.table_moduli());
        let tl = layout.table_coord_len();
        for sig in layout.generators(bound) {
            let v = layout.to_coords(&sig);
            tables.insert(&v[..tl]);
            pairs.insert(&v);
        }
        PairSpan { layout, bound, pairs, tables }
    }

    /// Number of distinct function tables.
    pub fn table_count(&self) -> Order {
        self.tables.order()
    }

    /// Number of distinct `(table, λ table)` pairs.
    pub fn pair_count(&self) -> Order {
        self.pairs.order()
    }

    /// Number of distinct λ tables of null polynomials.
    pub fn null_lambda_count(&self) -> Order {
        self.pairs.order_from(self.layout.table_coord_len())
    }

    /// Visits the signature of every pair.
    pub fn for_each_pair(&self, mut visit: impl FnMut(&[Elem])) {
        let moduli = self.layout.coord_moduli();
        for_each_element(&moduli, &self.pairs.basis(), |v| visit(&self.layout.from_coords(v)));
    }

    /// Visits the signature of every null polynomial's pair (table part zero).
    pub fn for_each_null_pair(&self, mut visit: impl FnMut(&[Elem])) {
        let moduli = self.layout.coord_moduli();
        let basis = self.pairs.basis_from(self.layout.table_coord_len());
        for_each_element(&moduli, &basis, |v| visit(&self.layout.from_coords(v)));
    }
}
