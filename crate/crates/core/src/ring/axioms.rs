//! Ring-axiom validation, exhaustive or sampled.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{Elem, Ring};
use crate::report::{Check, Mode, Report};

/// Above this many triples exhaustive requests run sampled instead.
pub const EXHAUSTIVE_TRIPLE_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, Copy)]
pub enum AxiomMode {
    Exhaustive,
    Sampled { n: u64, seed: u64 },
}

/// Degradation seed used when an exhaustive request is too large.
pub const FALLBACK_SEED: u64 = 0x5eed;
const FALLBACK_SAMPLES: u64 = 1_000_000;

pub fn validate_axioms(ring: &Ring, mode: AxiomMode) -> Report {
    let n = ring.size() as u64;
    let mode = match mode {
        AxiomMode::Exhaustive if n.saturating_pow(3) > EXHAUSTIVE_TRIPLE_CAP => {
            AxiomMode::Sampled { n: FALLBACK_SAMPLES, seed: FALLBACK_SEED }
        }
        m => m,
    };
    let mut report = Report::new("axioms", ring.spec(), 0);
    let (zero, one) = (ring.zero(), ring.one());

    type Law<'a> = (&'a str, &'a dyn Fn(Elem, Elem, Elem) -> bool);
    let triple_laws: [Law; 4] = [
        ("add associative", &|a, b, c| ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c))),
        ("mul associative", &|a, b, c| ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))),
        ("left distributive", &|a, b, c| {
            ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
        }),
        ("right distributive", &|a, b, c| {
            ring.mul(ring.add(a, b), c) == ring.add(ring.mul(a, c), ring.mul(b, c))
        }),
    ];
    let check_mode = match mode {
        AxiomMode::Exhaustive => Mode::Exhaustive,
        AxiomMode::Sampled { seed, .. } => {
            report.seed = Some(seed);
            Mode::Sampled
        }
    };
    for (name, law) in triple_laws {
        let witness = match mode {
            AxiomMode::Exhaustive => ring.elements().find_map(|a| {
                ring.elements()
                    .find_map(|b| ring.elements().find(|&c| !law(a, b, c)).map(|c| json!([a, b, c])))
            }),
            AxiomMode::Sampled { n, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let s = ring.size();
                (0..n).find_map(|_| {
                    let (a, b, c) = (rng.gen_range(0..s), rng.gen_range(0..s), rng.gen_range(0..s));
                    (!law(a, b, c)).then(|| json!([a, b, c]))
                })
            }
        };
        report.push(Check::from_witness(name, witness).with_mode(check_mode));
    }

    // Pair and single-element laws are cheap enough to run exhaustively when n^2 is moderate.
    let pairs_exhaustive = n * n <= EXHAUSTIVE_TRIPLE_CAP;
    let pair_mode = if pairs_exhaustive { Mode::Exhaustive } else { check_mode };
    let pairs: Box<dyn Iterator<Item = (Elem, Elem)>> = if pairs_exhaustive {
        Box::new(ring.elements().flat_map(|a| ring.elements().map(move |b| (a, b))))
    } else {
        let seed = report.seed.unwrap_or(FALLBACK_SEED);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let s = ring.size();
        Box::new((0..FALLBACK_SAMPLES).map(move |_| (rng.gen_range(0..s), rng.gen_range(0..s))))
    };
    let mut add_comm = None;
    let mut mul_comm = true;
    for (a, b) in pairs {
        if add_comm.is_none() && ring.add(a, b) != ring.add(b, a) {
            add_comm = Some(json!([a, b]));
        }
        if ring.mul(a, b) != ring.mul(b, a) {
            mul_comm = false;
        }
    }
    report.push(Check::from_witness("add commutative", add_comm).with_mode(pair_mode));
    let single = |f: &dyn Fn(Elem) -> bool| ring.elements().find(|&a| !f(a)).map(|a| json!([a]));
    report.push(Check::from_witness("additive identity", single(&|a| ring.add(a, zero) == a && ring.add(zero, a) == a)));
    report.push(Check::from_witness("additive inverse", single(&|a| ring.add(a, ring.neg(a)) == zero)));
    report.push(Check::from_witness("multiplicative identity", single(&|a| ring.mul(a, one) == a && ring.mul(one, a) == a)));
    report.push(Check::new("zero differs from one", zero != one));
    report.push(Check::new("char is additive order of one", ring.char() == ring.additive_order(one)));
    // A sampled run can only refute commutativity, never confirm it.
    let flag_ok = if pairs_exhaustive { mul_comm == ring.is_commutative() } else { mul_comm || !ring.is_commutative() };
    report.push(Check::new("commutative flag", flag_ok).with_mode(pair_mode));
    report.count("commutative", ring.is_commutative());
    report.count("size", ring.size());
    report.count("char", ring.char());
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::construct_ring;

    #[test]
    fn small_rings_pass() {
        for spec in ["zn:4", "mat:2:gf:2", "ut:2:zn:4", "prod:gf:2+zn:3"] {
            let r = construct_ring(spec).unwrap();
            let rep = validate_axioms(&r, AxiomMode::Exhaustive);
            assert!(rep.passed(), "{spec}: {}", rep.to_json(true));
            assert_eq!(rep.mode, Mode::Exhaustive);
        }
        let m = construct_ring("mat:2:gf:2").unwrap();
        assert!(!m.is_commutative());
    }

    #[test]
    fn sampled_dual() {
        let r = construct_ring("dual:2:gf:2").unwrap();
        let rep = validate_axioms(&r, AxiomMode::Sampled { n: 100_000, seed: 7 });
        assert!(rep.passed());
        assert_eq!(rep.seed, Some(7));
        assert_eq!(rep.mode, Mode::Sampled);
    }

    #[test]
    fn large_exhaustive_request_degrades() {
        let r = construct_ring("zn:1000").unwrap();
        let rep = validate_axioms(&r, AxiomMode::Exhaustive);
        assert_eq!(rep.mode, Mode::Sampled);
        assert_eq!(rep.seed, Some(FALLBACK_SEED));
        assert!(rep.passed());
    }
}
