//! Finite rings as indexed element sets.
//!
//! Every constructor fixes a bit-exact encoding of elements as indices
//! `0..size`. All encodings are mixed radix, least significant digit first,
//! over the additive coordinates returned by [`Ring::moduli`]:
//!
//! * `zn:n`: index `i` is the residue `i`.
//! * `gf:p:w`: index `Σ c_i p^i` over polynomial-basis coefficients.
//! * `mat:n:S`: entries in row-major order, first entry least significant.
//!   `ut:n:S` does the same over the upper-triangle cells only.
//! * `prod:S+T`: index `i_S · |T| + i_T`.
//! * `dual:k:S`: index `a_0 + a_1 |S| + … + a_k |S|^k`.

pub mod analysis;
pub mod axioms;
pub mod cache;
pub(crate) mod gf;
pub mod spec;

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use spec::SpecAst;

pub type Elem = u32;
pub type RingHandle = Arc<Ring>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StorageMode {
    MaterializedTables,
    Structural,
}

#[derive(Debug, Clone)]
pub struct ConstructOptions {
    /// Largest ring `construct_ring` will build.
    pub max_size: u128,
    /// Non-dual rings up to this size get Cayley tables.
    pub table_limit: u32,
    /// Also build tables for dual rings (still bounded by `table_limit`).
    pub materialize_duals: bool,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions { max_size: 65_536, table_limit: 4096, materialize_duals: false }
    }
}

#[derive(Debug)]
pub(crate) enum Structure {
    Zn { n: u32 },
    Gf { p: u32, w: u32, modulus: Vec<u32> },
    Mat { n: usize, base: RingHandle },
    Ut { n: usize, base: RingHandle, cells: Vec<(usize, usize)> },
    Prod { left: RingHandle, right: RingHandle },
    Dual { k: usize, base: RingHandle },
}

#[derive(Debug)]
struct Tables {
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
}

#[derive(Debug)]
pub struct Ring {
    spec: String,
    size: u32,
    structure: Structure,
    tables: Option<Tables>,
    zero: Elem,
    one: Elem,
    char: u64,
    commutative: bool,
    moduli: Vec<u32>,
    inverses: OnceLock<Vec<Option<Elem>>>,
}

pub fn construct_ring(spec: &str) -> Result<RingHandle> {
    construct_ring_with(spec, &ConstructOptions::default())
}

pub fn construct_ring_with(spec: &str, opts: &ConstructOptions) -> Result<RingHandle> {
    let ast = spec::parse(spec)?;
    build(&ast, opts)
}

/// The dual-number ring `base[β_1..β_k]`, sharing `base` rather than reparsing it.
pub fn dual_of(base: &RingHandle, k: usize, opts: &ConstructOptions) -> Result<RingHandle> {
    if k == 0 {
        return Err(Error::parse(base.spec(), "dual extension needs k >= 1"));
    }
    let size = (base.size() as u128).saturating_pow(k as u32 + 1);
    if size > opts.max_size {
        return Err(Error::budget(format!("dual:{k}:{}", base.spec()), size, opts.max_size));
    }
    let spec = format!("dual:{k}:{}", base.spec());
    Ok(finish(spec, size as u32, Structure::Dual { k, base: base.clone() }, opts))
}

fn build(ast: &SpecAst, opts: &ConstructOptions) -> Result<RingHandle> {
    let size = ast.size();
    if size > opts.max_size {
        return Err(Error::budget(format!("ring {}", ast.canonical()), size, opts.max_size));
    }
    // Inner rings are operands only; give them tables whenever they are small.
    let inner = ConstructOptions { materialize_duals: true, ..opts.clone() };
    let structure = match ast {
        SpecAst::Zn(n) => Structure::Zn { n: *n },
        SpecAst::Gf { p, w, modulus } => {
            let modulus = match modulus {
                Some(m) => {
                    if m.len() != *w as usize + 1 || m.iter().any(|&c| c >= *p) || m[*w as usize] != 1 {
                        return Err(Error::parse(
                            &ast.canonical(),
                            format!("modulus must be {} monic coefficients below {p}", w + 1),
                        ));
                    }
                    if !gf::is_irreducible(m, *p) {
                        return Err(Error::NotIrreducible { p: *p, modulus: m.clone() });
                    }
                    m.clone()
                }
                None => gf::default_modulus(*p, *w),
            };
            Structure::Gf { p: *p, w: *w, modulus }
        }
        SpecAst::Mat(n, s) => Structure::Mat { n: *n, base: build(s, &inner)? },
        SpecAst::Ut(n, s) => {
            let cells = (0..*n).flat_map(|i| (i..*n).map(move |j| (i, j))).collect();
            Structure::Ut { n: *n, base: build(s, &inner)?, cells }
        }
        SpecAst::Prod(l, r) => Structure::Prod { left: build(l, &inner)?, right: build(r, &inner)? },
        SpecAst::Dual(k, s) => Structure::Dual { k: *k, base: build(s, &inner)? },
    };
    Ok(finish(ast.canonical(), size as u32, structure, opts))
}

fn finish(spec: String, size: u32, structure: Structure, opts: &ConstructOptions) -> RingHandle {
    let moduli = structure.moduli();
    let one = structure.one();
    let commutative = structure.commutative();
    let mut ring = Ring {
        spec,
        size,
        structure,
        tables: None,
        zero: 0,
        one,
        char: 0,
        commutative,
        moduli,
        inverses: OnceLock::new(),
    };
    let is_dual = matches!(ring.structure, Structure::Dual { .. });
    if size <= opts.table_limit && (!is_dual || opts.materialize_duals) {
        ring.tables = Some(ring.build_tables());
    }
    ring.char = ring.additive_order(ring.one);
    Arc::new(ring)
}

impl Structure {
    fn moduli(&self) -> Vec<u32> {
        match self {
            Structure::Zn { n } => vec![*n],
            Structure::Gf { p, w, .. } => vec![*p; *w as usize],
            Structure::Mat { n, base } => base.moduli.repeat(n * n),
            Structure::Ut { base, cells, .. } => base.moduli.repeat(cells.len()),
            // The right factor is the low-order digit.
            Structure::Prod { left, right } => [right.moduli.as_slice(), &left.moduli].concat(),
            Structure::Dual { k, base } => base.moduli.repeat(k + 1),
        }
    }

    fn one(&self) -> Elem {
        match self {
            Structure::Zn { .. } | Structure::Gf { .. } => 1,
            Structure::Mat { n, base } => {
                let s = base.size;
                (0..*n).map(|i| base.one * s.pow((i * n + i) as u32)).sum()
            }
            Structure::Ut { n, base, cells } => {
                let s = base.size;
                (0..*n)
                    .map(|i| {
                        let pos = cells.iter().position(|&c| c == (i, i)).unwrap();
                        base.one * s.pow(pos as u32)
                    })
                    .sum()
            }
            Structure::Prod { left, right } => left.one * right.size + right.one,
            Structure::Dual { base, .. } => base.one,
        }
    }

    fn commutative(&self) -> bool {
        match self {
            Structure::Zn { .. } | Structure::Gf { .. } => true,
            Structure::Mat { n, base } | Structure::Ut { n, base, .. } => *n == 1 && base.commutative,
            Structure::Prod { left, right } => left.commutative && right.commutative,
            Structure::Dual { base, .. } => base.commutative,
        }
    }
}

impl Ring {
    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    /// Additive order of `one`.
    pub fn char(&self) -> u64 {
        self.char
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn storage_mode(&self) -> StorageMode {
        if self.tables.is_some() {
            StorageMode::MaterializedTables
        } else {
            StorageMode::Structural
        }
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    pub fn contains(&self, a: Elem) -> bool {
        a < self.size
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.add[(a * self.size + b) as usize],
            None => self.add_structural(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.mul[(a * self.size + b) as usize],
            None => self.mul_structural(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.neg[a as usize],
            None => self.neg_structural(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `n · a` by doubling.
    pub fn times(&self, mut n: u64, a: Elem) -> Elem {
        let (mut acc, mut base) = (self.zero, a);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let (mut acc, mut base) = (self.one, a);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Least `n >= 1` with `n · a = 0`.
    pub fn additive_order(&self, a: Elem) -> u64 {
        let mut n = 1;
        let mut x = a;
        while x != self.zero {
            x = self.add(x, a);
            n += 1;
        }
        n
    }

    /// Moduli of the additive coordinates, least significant first. The
    /// additive group is the direct sum of `Z/m` over these moduli and the
    /// element index is the mixed-radix number they form.
    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn coords(&self, mut a: Elem) -> Vec<u32> {
        self.moduli
            .iter()
            .map(|&m| {
                let d = a % m;
                a /= m;
                d
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Elem {
        coords.iter().zip(&self.moduli).rev().fold(0, |acc, (&c, &m)| acc * m + c % m)
    }

    /// Elements with a single coordinate equal to one; they generate the additive group.
    pub fn additive_basis(&self) -> Vec<Elem> {
        let mut place = 1;
        self.moduli
            .iter()
            .map(|&m| {
                let e = place;
                place *= m;
                e
            })
            .collect()
    }

    /// `Some((base, k))` when this is a dual-number ring.
    pub fn dual_parts(&self) -> Option<(&RingHandle, usize)> {
        match &self.structure {
            Structure::Dual { k, base } => Some((base, *k)),
            _ => None,
        }
    }

    pub fn inverses(&self) -> &[Option<Elem>] {
        self.inverses.get_or_init(|| analysis::compute_inverses(self))
    }

    /// Human-readable rendering of an element; never parsed back.
    pub fn format_elem(&self, a: Elem) -> String {
        match &self.structure {
            Structure::Zn { .. } => a.to_string(),
            Structure::Gf { p, w, .. } => {
                let digits = self.coords(a);
                let terms: Vec<String> = (0..*w as usize)
                    .rev()
                    .filter(|&i| digits[i] != 0)
                    .map(|i| match (digits[i], i) {
                        (c, 0) => c.to_string(),
                        (1, 1) => "t".into(),
                        (c, 1) => format!("{c}t"),
                        (1, i) => format!("t^{i}"),
                        (c, i) => format!("{c}t^{i}"),
                    })
                    .collect();
                let _ = p;
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
            Structure::Mat { n, base } => {
                let e = split(a, base.size, n * n);
                let rows: Vec<String> = e
                    .chunks(*n)
                    .map(|r| r.iter().map(|&x| base.format_elem(x)).collect::<Vec<_>>().join(" "))
                    .collect();
                format!("[{}]", rows.join("; "))
            }
            Structure::Ut { n, base, cells } => {
                let e = split(a, base.size, cells.len());
                let rows: Vec<String> = (0..*n)
                    .map(|i| {
                        (0..*n)
                            .map(|j| match cells.iter().position(|&c| c == (i, j)) {
                                Some(pos) => base.format_elem(e[pos]),
                                None => base.format_elem(base.zero),
                            })
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                format!("[{}]", rows.join("; "))
            }
            Structure::Prod { left, right } => {
                format!("({}, {})", left.format_elem(a / right.size), right.format_elem(a % right.size))
            }
            Structure::Dual { k, base } => {
                let c = split(a, base.size, k + 1);
                let mut s = base.format_elem(c[0]);
                for (i, &ci) in c.iter().enumerate().skip(1) {
                    if ci != base.zero {
                        s.push_str(&format!(" + ({})b{i}", base.format_elem(ci)));
                    }
                }
                s
            }
        }
    }

    fn build_tables(&self) -> Tables {
        let n = self.size as usize;
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..self.size {
            for b in 0..self.size {
                add.push(self.add_structural(a, b));
                mul.push(self.mul_structural(a, b));
            }
        }
        let neg = (0..self.size).map(|a| self.neg_structural(a)).collect();
        Tables { add, mul, neg }
    }

    fn add_structural(&self, a: Elem, b: Elem) -> Elem {
        match &self.structure {
            Structure::Zn { n } => ((a as u64 + b as u64) % *n as u64) as Elem,
            Structure::Gf { p, w, .. } => gf::add(a, b, *p, *w),
            Structure::Mat { base, .. } | Structure::Ut { base, .. } | Structure::Dual { base, .. } => {
                componentwise(a, b, base, |x, y| base.add(x, y))
            }
            Structure::Prod { left, right } => {
                let s = right.size;
                left.add(a / s, b / s) * s + right.add(a % s, b % s)
            }
        }
    }

    fn neg_structural(&self, a: Elem) -> Elem {
        match &self.structure {
            Structure::Zn { n } => (*n - a) % *n,
            Structure::Gf { p, w, .. } => gf::neg(a, *p, *w),
            Structure::Mat { base, .. } | Structure::Ut { base, .. } | Structure::Dual { base, .. } => {
                componentwise(a, 0, base, |x, _| base.neg(x))
            }
            Structure::Prod { left, right } => {
                let s = right.size;
                left.neg(a / s) * s + right.neg(a % s)
            }
        }
    }

    fn mul_structural(&self, a: Elem, b: Elem) -> Elem {
        match &self.structure {
            Structure::Zn { n } => ((a as u64 * b as u64) % *n as u64) as Elem,
            Structure::Gf { p, modulus, .. } => gf::mul(a, b, *p, modulus),
            Structure::Mat { n, base } => {
                let n = *n;
                let x = split(a, base.size, n * n);
                let y = split(b, base.size, n * n);
                let mut z = vec![base.zero; n * n];
                for i in 0..n {
                    for j in 0..n {
                        let mut acc = base.zero;
                        for l in 0..n {
                            acc = base.add(acc, base.mul(x[i * n + l], y[l * n + j]));
                        }
                        z[i * n + j] = acc;
                    }
                }
                join(&z, base.size)
            }
            Structure::Ut { n, base, cells } => {
                let n = *n;
                let x = split(a, base.size, cells.len());
                let y = split(b, base.size, cells.len());
                let at = |i: usize, j: usize| i * n - i * (i + 1) / 2 + j;
                let z: Vec<Elem> = cells
                    .iter()
                    .map(|&(i, j)| {
                        (i..=j).fold(base.zero, |acc, l| base.add(acc, base.mul(x[at(i, l)], y[at(l, j)])))
                    })
                    .collect();
                join(&z, base.size)
            }
            Structure::Prod { left, right } => {
                let s = right.size;
                left.mul(a / s, b / s) * s + right.mul(a % s, b % s)
            }
            Structure::Dual { k, base } => {
                let s = base.size;
                let (a0, b0) = (a % s, b % s);
                let mut out = base.mul(a0, b0);
                let (mut ra, mut rb, mut place) = (a / s, b / s, s);
                for _ in 0..*k {
                    let (ai, bi) = (ra % s, rb % s);
                    ra /= s;
                    rb /= s;
                    out += base.add(base.mul(a0, bi), base.mul(ai, b0)) * place;
                    place = place.wrapping_mul(s);
                }
                out
            }
        }
    }
}

/// Base-`radix` digits of `x`, least significant first.
pub(crate) fn split(mut x: Elem, radix: u32, len: usize) -> Vec<Elem> {
    (0..len)
        .map(|_| {
            let d = x % radix;
            x /= radix;
            d
        })
        .collect()
}

pub(crate) fn join(digits: &[Elem], radix: u32) -> Elem {
    digits.iter().rev().fold(0, |acc, &d| acc * radix + d)
}

fn componentwise(a: Elem, b: Elem, base: &Ring, f: impl Fn(Elem, Elem) -> Elem) -> Elem {
    let s = base.size;
    let (mut a, mut b) = (a, b);
    let (mut out, mut place) = (0, 1u32);
    while a > 0 || b > 0 {
        out += f(a % s, b % s) * place;
        a /= s;
        b /= s;
        place = place.wrapping_mul(s);
    }
    // Components past the last nonzero digit are zero and map to zero.
    out
}

/// Mixed-radix view of `R_k` over its base ring.
#[derive(Debug, Clone)]
pub struct DualView {
    pub base: RingHandle,
    pub k: usize,
}

impl DualView {
    pub fn of(dual: &RingHandle) -> Result<DualView> {
        match dual.dual_parts() {
            Some((base, k)) => Ok(DualView { base: base.clone(), k }),
            None => Err(Error::WrongRing { expected: "a dual ring".into(), got: dual.spec().into() }),
        }
    }

    pub fn encode(&self, a0: Elem, coeffs: &[Elem]) -> Elem {
        let s = self.base.size;
        coeffs.iter().rev().fold(0, |acc, &c| acc * s + c) * s + a0
    }

    pub fn decode(&self, x: Elem) -> (Elem, Vec<Elem>) {
        let parts = split(x, self.base.size, self.k + 1);
        (parts[0], parts[1..].to_vec())
    }
}

pub fn dual_compose(dual: &Ring, base: &Ring, k: usize, a0: Elem, coeffs: &[Elem]) -> Result<Elem> {
    check_dual(dual, base, k)?;
    if coeffs.len() != k || !base.contains(a0) || coeffs.iter().any(|&c| !base.contains(c)) {
        return Err(Error::WrongRing { expected: base.spec().into(), got: format!("{a0} {coeffs:?}") });
    }
    let s = base.size;
    Ok(coeffs.iter().rev().fold(0, |acc, &c| acc * s + c) * s + a0)
}

pub fn dual_decompose(dual: &Ring, x: Elem) -> Result<(Elem, Vec<Elem>)> {
    let (base, k) = dual
        .dual_parts()
        .ok_or_else(|| Error::WrongRing { expected: "a dual ring".into(), got: dual.spec().into() })?;
    if !dual.contains(x) {
        return Err(Error::WrongRing { expected: dual.spec().into(), got: x.to_string() });
    }
    let parts = split(x, base.size, k + 1);
    Ok((parts[0], parts[1..].to_vec()))
}

fn check_dual(dual: &Ring, base: &Ring, k: usize) -> Result<()> {
    match dual.dual_parts() {
        Some((b, dk)) if dk == k && b.spec == base.spec => Ok(()),
        _ => Err(Error::WrongRing { expected: format!("dual:{k}:{}", base.spec), got: dual.spec.clone() }),
    }
}
