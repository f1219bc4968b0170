//! Test-side ring models built straight from the element encodings, with no
//! code shared with the library. Every table is materialized.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

#[derive(Clone)]
pub struct Model {
    pub n: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    pub one: u32,
}

fn digits(mut x: usize, base: usize, len: usize) -> Vec<usize> {
    (0..len)
        .map(|_| {
            let d = x % base;
            x /= base;
            d
        })
        .collect()
}

fn undigits(ds: &[usize], base: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * base + d)
}

impl Model {
    fn from_ops(n: usize, one: u32, add: impl Fn(usize, usize) -> usize, mul: impl Fn(usize, usize) -> usize) -> Model {
        assert!(n <= 1 << 16);
        let mut a = vec![0u16; n * n];
        let mut m = vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                a[x * n + y] = add(x, y) as u16;
                m[x * n + y] = mul(x, y) as u16;
            }
        }
        let neg = (0..n).map(|x| (0..n).find(|&y| a[x * n + y] == 0).unwrap() as u16).collect();
        Model { n, add: a, mul: m, neg, one }
    }

    /// `zn:N`, `gf:2`, `gf:3`, `gf:4`, `mat:n:S`, `ut:n:S`, `prod:A+B`, `dual:k:S`.
    pub fn parse(spec: &str) -> Model {
        if let Some(n) = spec.strip_prefix("zn:") {
            return Model::zn(n.parse().unwrap());
        }
        match spec {
            "gf:2" => return Model::zn(2),
            "gf:3" => return Model::zn(3),
            "gf:4" => return Model::gf4(),
            _ => {}
        }
        if let Some(rest) = spec.strip_prefix("prod:") {
            let (l, r) = rest.split_once('+').unwrap();
            return Model::prod(&Model::parse(l), &Model::parse(r));
        }
        let (head, rest) = spec.split_once(':').unwrap();
        let (n, inner) = rest.split_once(':').unwrap();
        let n: usize = n.parse().unwrap();
        let inner = Model::parse(inner);
        match head {
            "mat" => Model::mat(n, &inner),
            "ut" => Model::ut(n, &inner),
            "dual" => Model::dual(n, &inner),
            _ => panic!("oracle has no model for `{spec}`"),
        }
    }

    pub fn zn(n: usize) -> Model {
        Model::from_ops(n, 1 % n as u32, |a, b| (a + b) % n, |a, b| (a * b) % n)
    }

    /// F_4 as F_2[t]/(t² + t + 1), element `a0 + 2 a1`.
    pub fn gf4() -> Model {
        let mul = |a: usize, b: usize| {
            let mut r = 0;
            for i in 0..2 {
                if b >> i & 1 == 1 {
                    r ^= a << i;
                }
            }
            if r & 4 != 0 {
                r ^= 0b111;
            }
            r
        };
        Model::from_ops(4, 1, |a, b| a ^ b, mul)
    }

    /// Row-major entries, first entry least significant.
    pub fn mat(n: usize, r: &Model) -> Model {
        let s = r.n;
        let size = s.pow((n * n) as u32);
        let one = undigits(&(0..n * n).map(|i| if i / n == i % n { r.one as usize } else { 0 }).collect::<Vec<_>>(), s);
        Model::from_ops(
            size,
            one as u32,
            |a, b| {
                let (x, y) = (digits(a, s, n * n), digits(b, s, n * n));
                undigits(&x.iter().zip(&y).map(|(&p, &q)| r.add(p as u32, q as u32) as usize).collect::<Vec<_>>(), s)
            },
            |a, b| {
                let (x, y) = (digits(a, s, n * n), digits(b, s, n * n));
                let mut z = vec![0usize; n * n];
                for i in 0..n {
                    for j in 0..n {
                        let mut acc = 0u32;
                        for t in 0..n {
                            acc = r.add(acc, r.mul(x[i * n + t] as u32, y[t * n + j] as u32));
                        }
                        z[i * n + j] = acc as usize;
                    }
                }
                undigits(&z, s)
            },
        )
    }

    /// Upper-triangle cells in row-major order, first cell least significant.
    pub fn ut(n: usize, r: &Model) -> Model {
        let s = r.n;
        let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let c = cells.len();
        let full = |a: usize| {
            let d = digits(a, s, c);
            let mut m = vec![0u32; n * n];
            for (p, &(i, j)) in cells.iter().enumerate() {
                m[i * n + j] = d[p] as u32;
            }
            m
        };
        let pack = |m: &[u32]| undigits(&cells.iter().map(|&(i, j)| m[i * n + j] as usize).collect::<Vec<_>>(), s);
        let one: Vec<u32> = (0..n * n).map(|i| if i / n == i % n { r.one } else { 0 }).collect();
        Model::from_ops(
            s.pow(c as u32),
            pack(&one) as u32,
            |a, b| {
                let (x, y) = (full(a), full(b));
                pack(&x.iter().zip(&y).map(|(&p, &q)| r.add(p, q)).collect::<Vec<_>>())
            },
            |a, b| {
                let (x, y) = (full(a), full(b));
                let mut z = vec![0u32; n * n];
                for i in 0..n {
                    for j in 0..n {
                        let mut acc = 0;
                        for t in 0..n {
                            acc = r.add(acc, r.mul(x[i * n + t], y[t * n + j]));
                        }
                        z[i * n + j] = acc;
                    }
                }
                pack(&z)
            },
        )
    }

    /// `(l, r)` stored as `r + |R| l`.
    pub fn prod(l: &Model, r: &Model) -> Model {
        let rs = r.n;
        let split = move |x: usize| (x / rs, x % rs);
        Model::from_ops(
            l.n * rs,
            l.one * rs as u32 + r.one,
            |a, b| {
                let ((al, ar), (bl, br)) = (split(a), split(b));
                l.add(al as u32, bl as u32) as usize * rs + r.add(ar as u32, br as u32) as usize
            },
            |a, b| {
                let ((al, ar), (bl, br)) = (split(a), split(b));
                l.mul(al as u32, bl as u32) as usize * rs + r.mul(ar as u32, br as u32) as usize
            },
        )
    }

    /// `a0 + a1 β1 + … + ak βk` stored as `a0 + a1 |R| + …`, with `βi βj = 0`.
    pub fn dual(k: usize, r: &Model) -> Model {
        let s = r.n;
        Model::from_ops(
            s.pow(k as u32 + 1),
            r.one,
            |a, b| {
                let (x, y) = (digits(a, s, k + 1), digits(b, s, k + 1));
                undigits(&x.iter().zip(&y).map(|(&p, &q)| r.add(p as u32, q as u32) as usize).collect::<Vec<_>>(), s)
            },
            |a, b| {
                let (x, y) = (digits(a, s, k + 1), digits(b, s, k + 1));
                let mut z = vec![r.mul(x[0] as u32, y[0] as u32) as usize];
                for i in 1..=k {
                    z.push(r.add(r.mul(x[0] as u32, y[i] as u32), r.mul(x[i] as u32, y[0] as u32)) as usize);
                }
                undigits(&z, s)
            },
        )
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.n + b as usize] as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize] as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize] as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn times(&self, m: u64, a: u32) -> u32 {
        (0..m).fold(0, |acc, _| self.add(acc, a))
    }

    pub fn pow(&self, a: u32, e: usize) -> u32 {
        (0..e).fold(self.one, |acc, _| self.mul(acc, a))
    }

    pub fn elems(&self) -> std::ops::Range<u32> {
        0..self.n as u32
    }

    /// `Σ c_j x^j` with the coefficients on the left.
    pub fn eval(&self, coeffs: &[u32], x: u32) -> u32 {
        let mut acc = 0;
        let mut p = self.one;
        for &c in coeffs {
            acc = self.add(acc, self.mul(c, p));
            p = self.mul(p, x);
        }
        acc
    }

    pub fn table(&self, coeffs: &[u32]) -> Vec<u32> {
        self.elems().map(|x| self.eval(coeffs, x)).collect()
    }

    /// `λ_f(y, z) = Σ_j a_j Σ_{r=1}^{j} y^{r−1} z y^{j−r}`.
    pub fn lambda(&self, coeffs: &[u32], y: u32, z: u32) -> u32 {
        let mut acc = 0;
        for (j, &a) in coeffs.iter().enumerate() {
            let mut inner = 0;
            for r in 1..=j {
                inner = self.add(inner, self.mul(self.mul(self.pow(y, r - 1), z), self.pow(y, j - r)));
            }
            acc = self.add(acc, self.mul(a, inner));
        }
        acc
    }

    /// `inverse[x]` for units, by search.
    pub fn inverses(&self) -> Vec<Option<u32>> {
        self.elems().map(|x| self.elems().find(|&y| self.mul(x, y) == self.one && self.mul(y, x) == self.one)).collect()
    }

    /// `x` with `1 − r x` a unit for every `r`.
    pub fn radical(&self, inverses: &[Option<u32>]) -> Vec<u32> {
        self.elems()
            .filter(|&x| self.elems().all(|r| inverses[self.sub(self.one, self.mul(r, x)) as usize].is_some()))
            .collect()
    }

    pub fn center(&self) -> Vec<u32> {
        self.elems().filter(|&x| self.elems().all(|y| self.mul(x, y) == self.mul(y, x))).collect()
    }

    pub fn additive_closure(&self, gens: &[u32]) -> HashSet<u32> {
        let mut seen: HashSet<u32> = HashSet::from([0]);
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.add(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn sum_of_units(&self) -> bool {
        let units: Vec<u32> = self.inverses().iter().enumerate().filter(|(_, u)| u.is_some()).map(|(x, _)| x as u32).collect();
        self.additive_closure(&units).len() == self.n
    }

    /// Distinct tables of `x ↦ x^j`, stopping at the first repeat.
    pub fn power_tables(&self) -> Vec<Vec<u32>> {
        let mut seen: Vec<Vec<u32>> = Vec::new();
        let mut cur: Vec<u32> = self.elems().map(|_| self.one).collect();
        while !seen.contains(&cur) {
            seen.push(cur.clone());
            cur = self.elems().map(|x| self.mul(cur[x as usize], x)).collect();
        }
        seen
    }

    /// Every polynomial function `R → R`, as the additive span of `x ↦ c x^j`.
    pub fn polyfun_tables(&self) -> HashSet<Vec<u32>> {
        let gens: Vec<Vec<u32>> = self
            .power_tables()
            .iter()
            .flat_map(|p| self.elems().map(move |c| p.iter().map(|&v| self.mul(c, v)).collect::<Vec<u32>>()))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        let zero = vec![0u32; self.n];
        let mut seen: HashSet<Vec<u32>> = HashSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(t) = queue.pop_front() {
            for g in &gens {
                let s: Vec<u32> = t.iter().zip(g).map(|(&a, &b)| self.add(a, b)).collect();
                if !seen.contains(&s) {
                    seen.insert(s.clone());
                    queue.push_back(s);
                }
            }
        }
        seen
    }
}

pub fn is_bijective(t: &[u32]) -> bool {
    let mut hit = vec![false; t.len()];
    t.iter().all(|&y| !std::mem::replace(&mut hit[y as usize], true))
}

pub fn compose(f: &[u32], g: &[u32]) -> Vec<u32> {
    g.iter().map(|&y| f[y as usize]).collect()
}

/// Closure of a set of permutations under composition.
pub fn closure(gens: &HashSet<Vec<u32>>) -> HashSet<Vec<u32>> {
    let mut seen: HashSet<Vec<u32>> = gens.clone();
    let mut queue: VecDeque<Vec<u32>> = gens.iter().cloned().collect();
    while let Some(t) = queue.pop_front() {
        for g in gens {
            let c = compose(&t, g);
            if !seen.contains(&c) {
                seen.insert(c.clone());
                queue.push_back(c);
            }
        }
    }
    seen
}

/// Digits of `x` in `R_k` over a base of size `s`.
pub fn dual_digits(x: u32, s: usize, k: usize) -> Vec<u32> {
    digits(x as usize, s, k + 1).into_iter().map(|d| d as u32).collect()
}

pub fn dual_pack(ds: &[u32], s: usize) -> u32 {
    undigits(&ds.iter().map(|&d| d as usize).collect::<Vec<_>>(), s) as u32
}

/// Coefficient lists of every polynomial of degree `< bound` over `0..n`.
pub fn all_coeffs(n: usize, bound: usize) -> impl Iterator<Item = Vec<u32>> {
    (0..n.pow(bound as u32)).map(move |code| digits(code, n, bound).into_iter().map(|d| d as u32).collect())
}
