//! Units, center, radical, chain structure and related element-set analyses.

use std::collections::BTreeSet;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::{Elem, Ring};
use crate::error::{Error, Result};
use crate::report::{Check, Mode, Report};

pub(crate) fn compute_inverses(ring: &Ring) -> Vec<Option<Elem>> {
    let one = ring.one();
    ring.elements()
        .map(|a| ring.elements().find(|&b| ring.mul(a, b) == one && ring.mul(b, a) == one))
        .collect()
}

pub fn is_unit(ring: &Ring, a: Elem) -> bool {
    ring.inverses()[a as usize].is_some()
}

pub fn unit_set(ring: &Ring) -> Vec<Elem> {
    ring.elements().filter(|&a| is_unit(ring, a)).collect()
}

pub fn inverse(ring: &Ring, a: Elem) -> Result<Elem> {
    if !ring.contains(a) {
        return Err(Error::WrongRing { expected: ring.spec().into(), got: a.to_string() });
    }
    ring.inverses()[a as usize].ok_or(Error::NotAUnit(a))
}

pub fn center(ring: &Ring) -> Vec<Elem> {
    if ring.is_commutative() {
        return ring.elements().collect();
    }
    ring.elements()
        .filter(|&c| ring.elements().all(|a| ring.mul(c, a) == ring.mul(a, c)))
        .collect()
}

/// Above this many `(x, a, b)` triples the radical uses the one-sided test.
const TWO_SIDED_RADICAL_CAP: u64 = 1 << 27;

/// `{x : 1 − a x b is a unit for all a, b}`.
///
/// For large rings this falls back to `{x : 1 − a x is a unit for all a}`,
/// which describes the same set.
pub fn jacobson_radical(ring: &Ring) -> Vec<Elem> {
    let n = ring.size() as u64;
    let one = ring.one();
    let two_sided = n.saturating_pow(3) <= TWO_SIDED_RADICAL_CAP;
    ring.elements()
        .filter(|&x| {
            ring.elements().all(|a| {
                let ax = ring.mul(a, x);
                if two_sided {
                    ring.elements().all(|b| is_unit(ring, ring.sub(one, ring.mul(ax, b))))
                } else {
                    is_unit(ring, ring.sub(one, ax))
                }
            })
        })
        .collect()
}

/// Smallest `n` with `I^n = {0}`, where powers are additive closures of products.
pub fn nilpotency(ring: &Ring, ideal: &[Elem]) -> Option<usize> {
    let mut power: BTreeSet<Elem> = ideal.iter().copied().collect();
    let mut n = 1;
    while power.len() > 1 || !power.contains(&ring.zero()) {
        let next = ideal_product(ring, &power, ideal);
        if next == power {
            return None;
        }
        power = next;
        n += 1;
    }
    Some(n)
}

fn ideal_product(ring: &Ring, left: &BTreeSet<Elem>, right: &[Elem]) -> BTreeSet<Elem> {
    let products: BTreeSet<Elem> = left.iter().flat_map(|&x| right.iter().map(move |&y| ring.mul(x, y))).collect();
    additive_closure(ring, products.into_iter().collect())
}

/// Additive subgroup generated by `gens` (breadth-first).
pub fn additive_closure(ring: &Ring, gens: Vec<Elem>) -> BTreeSet<Elem> {
    let mut seen = vec![false; ring.size() as usize];
    seen[ring.zero() as usize] = true;
    let mut frontier = vec![ring.zero()];
    let mut out = BTreeSet::from([ring.zero()]);
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = ring.add(x, g);
            if !seen[y as usize] {
                seen[y as usize] = true;
                out.insert(y);
                frontier.push(y);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainInfo {
    pub is_local: bool,
    pub is_chain: bool,
    pub max_ideal: Option<Vec<Elem>>,
    pub t: Option<Elem>,
    pub nilpotency: Option<usize>,
    /// `None` when `p · 1 = 0`: the characteristic is prime and `p` lies in every power of `M`.
    pub ramification: Option<usize>,
    pub residue_size: Option<u32>,
    pub p: Option<u32>,
    /// `M^0 = R, M^1, …, M^N = {0}`; only filled for chain rings.
    #[serde(skip)]
    pub powers: Vec<Vec<Elem>>,
}

impl ChainInfo {
    /// Largest `i` with `a ∈ M^i`.
    pub fn level(&self, a: Elem) -> Option<usize> {
        (0..self.powers.len()).rev().find(|&i| self.powers[i].binary_search(&a).is_ok())
    }
}

pub fn chain_analysis(ring: &Ring) -> ChainInfo {
    let mut info = ChainInfo {
        is_local: false,
        is_chain: false,
        max_ideal: None,
        t: None,
        nilpotency: None,
        ramification: None,
        residue_size: None,
        p: None,
        powers: Vec::new(),
    };
    let non_units: Vec<Elem> = ring.elements().filter(|&a| !is_unit(ring, a)).collect();
    let mut member = vec![false; ring.size() as usize];
    for &x in &non_units {
        member[x as usize] = true;
    }
    let closed_add = non_units.iter().all(|&x| non_units.iter().all(|&y| member[ring.add(x, y) as usize]));
    let absorbing = closed_add
        && non_units
            .iter()
            .all(|&x| ring.elements().all(|r| member[ring.mul(r, x) as usize] && member[ring.mul(x, r) as usize]));
    if !absorbing {
        return info;
    }
    info.is_local = true;
    let q = ring.size() / non_units.len() as u32;
    info.residue_size = Some(q);
    info.p = super::spec::prime_power(q).map(|(p, _)| p);
    let t = non_units.iter().copied().find(|&t| {
        let left: BTreeSet<Elem> = ring.elements().map(|r| ring.mul(r, t)).collect();
        let right: BTreeSet<Elem> = ring.elements().map(|r| ring.mul(t, r)).collect();
        left.len() == non_units.len() && right.len() == non_units.len() && left.iter().eq(non_units.iter())
            && right.iter().eq(non_units.iter())
    });
    info.max_ideal = Some(non_units.clone());
    let Some(t) = t else {
        return info;
    };
    info.is_chain = true;
    info.t = Some(t);
    // M^i = t^i R
    let mut powers = vec![ring.elements().collect::<Vec<_>>()];
    let mut ti = ring.one();
    loop {
        ti = ring.mul(ti, t);
        let level: BTreeSet<Elem> = ring.elements().map(|r| ring.mul(ti, r)).collect();
        let level: Vec<Elem> = level.into_iter().collect();
        let done = level == [ring.zero()];
        powers.push(level);
        if done || powers.len() > ring.size() as usize + 1 {
            break;
        }
    }
    info.nilpotency = Some(powers.len() - 1);
    info.powers = powers;
    if let Some(p) = info.p {
        let p1 = ring.times(p as u64, ring.one());
        if p1 != ring.zero() {
            info.ramification = info.level(p1);
        }
    }
    info
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditiveOrder {
    pub order: u64,
    /// `p^⌈(N − i)/e⌉` for `a ∈ M^i \ M^{i+1}` in a chain ring.
    pub formula: Option<u64>,
    pub level: Option<usize>,
    pub agree: Option<bool>,
}

pub fn additive_order(ring: &Ring, a: Elem) -> AdditiveOrder {
    additive_order_with(ring, &chain_analysis(ring), a)
}

pub fn additive_order_with(ring: &Ring, info: &ChainInfo, a: Elem) -> AdditiveOrder {
    let order = ring.additive_order(a);
    let mut out = AdditiveOrder { order, formula: None, level: None, agree: None };
    if let (true, Some(n), Some(e), Some(p)) = (info.is_chain, info.nilpotency, info.ramification, info.p) {
        if a != ring.zero() {
            let i = info.level(a).expect("every element lies in M^0");
            let f = (p as u64).pow(((n - i) as u32).div_ceil(e as u32));
            out.level = Some(i);
            out.formula = Some(f);
            out.agree = Some(f == order);
        }
    }
    out
}

/// Whether the additive closure of the units is the whole ring.
pub fn sum_of_units_reachable(ring: &Ring) -> bool {
    additive_closure(ring, unit_set(ring)).len() == ring.size() as usize
}

const SAMPLE_TRIPLES: u64 = 100_000;

/// Checks `ab = 0 ⇒ a r b = 0`.
pub fn semicommutativity_check(ring: &Ring, mode: Mode, seed: u64, cap: u64) -> Result<Report> {
    let n = ring.size() as u64;
    let mut report = Report::new("semicommutativity", ring.spec(), 0);
    let zero = ring.zero();
    let witness = |a: Elem, b: Elem, r: Elem| {
        (ring.mul(a, b) == zero && ring.mul(ring.mul(a, r), b) != zero).then(|| json!({"a": a, "b": b, "r": r}))
    };
    let found = match mode {
        Mode::Exhaustive => {
            if n.saturating_pow(3) > cap {
                return Err(Error::budget("semicommutativity triples", n.pow(3) as u128, cap as u128));
            }
            let zero_pairs: Vec<(Elem, Elem)> = ring
                .elements()
                .flat_map(|a| ring.elements().map(move |b| (a, b)))
                .filter(|&(a, b)| ring.mul(a, b) == zero)
                .collect();
            zero_pairs.iter().find_map(|&(a, b)| ring.elements().find_map(|r| witness(a, b, r)))
        }
        Mode::Sampled => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let zero_pairs: Vec<(Elem, Elem)> = if n * n <= cap {
                ring.elements()
                    .flat_map(|a| ring.elements().map(move |b| (a, b)))
                    .filter(|&(a, b)| ring.mul(a, b) == zero)
                    .collect()
            } else {
                Vec::new()
            };
            (0..SAMPLE_TRIPLES).find_map(|_| {
                let (a, b) = if zero_pairs.is_empty() {
                    (rng.gen_range(0..ring.size()), rng.gen_range(0..ring.size()))
                } else {
                    zero_pairs[rng.gen_range(0..zero_pairs.len())]
                };
                witness(a, b, rng.gen_range(0..ring.size()))
            })
        }
    };
    report.mode = mode;
    if mode == Mode::Sampled {
        report.seed = Some(seed);
    }
    report.push(Check::from_witness("ab=0 implies arb=0", found).with_mode(mode));
    Ok(report)
}
