//! Named suites that bundle the checks of every module into one report.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::budget::Budget;
use crate::enumerate::{all_polys, random_poly};
use crate::error::{Error, Result};
use crate::funspace::{
    dual_opts, equiv_dual_criterion, ideal_stats, is_anull, is_null, lambda_fiber_sizes, null_decomposition_check,
};
use crate::groups::{build_pr, build_pxk, closure, compose, quotient_order_check, semidirect_check, stab_iso_order_check, stabilizer_stk};
use crate::lambda::{assemble, dual_eval_via_lemma, embed};
use crate::nullpoly::{dual_null, dual_null_degree, monic_central_null};
use crate::perm::{
    chain_redundancy_suite, cherper_suite, commutative_lambda_equiv_check, count_prpol_dual, null_lambda_sum_suite,
};
use crate::poly::Poly;
use crate::report::{Check, Mode, Report};
use crate::ring::analysis::{center, inverse, is_unit, jacobson_radical, nilpotency, sum_of_units_reachable};
use crate::ring::axioms::{validate_axioms, AxiomMode};
use crate::ring::{construct_ring_with, dual_of, ConstructOptions, DualView, Elem, Ring, RingHandle, StorageMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Axioms,
    DualStructure,
    EvalLemma,
    NullDecomp,
    Equiv,
    Cherper,
    Chain,
    Sums,
    Groups,
    Semidirect,
    Stabilizer,
    All,
}

impl Suite {
    pub const EACH: [Suite; 11] = [
        Suite::Axioms,
        Suite::DualStructure,
        Suite::EvalLemma,
        Suite::NullDecomp,
        Suite::Equiv,
        Suite::Cherper,
        Suite::Chain,
        Suite::Sums,
        Suite::Groups,
        Suite::Semidirect,
        Suite::Stabilizer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::DualStructure => "dual-structure",
            Suite::EvalLemma => "eval-lemma",
            Suite::NullDecomp => "null-decomp",
            Suite::Equiv => "equiv",
            Suite::Cherper => "cherper",
            Suite::Chain => "chain",
            Suite::Sums => "sums",
            Suite::Groups => "groups",
            Suite::Semidirect => "semidirect",
            Suite::Stabilizer => "stabilizer",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Suite, String> {
        Suite::EACH
            .iter()
            .chain([&Suite::All])
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub k: usize,
    pub seed: u64,
    pub budget: Budget,
    /// `None` picks exhaustive when the work fits the budget and sampled otherwise.
    pub mode: Option<Mode>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { k: 1, seed: 0, budget: Budget::default(), mode: None }
    }
}

impl VerifyConfig {
    fn pick(&self, work: u128) -> Mode {
        self.mode.unwrap_or(if work <= self.budget.tuples as u128 { Mode::Exhaustive } else { Mode::Sampled })
    }
}

fn unsupported(suite: Suite, e: Error) -> Error {
    match e {
        Error::NotAChainRing(_) | Error::CharIsP(_) | Error::NotCommutative(_) => {
            Error::UnsupportedSuite { suite: suite.name().into(), reason: e.to_string() }
        }
        e => e,
    }
}

pub fn run_suite(suite: Suite, base: &RingHandle, cfg: &VerifyConfig) -> Result<Report> {
    if cfg.k == 0 {
        return Err(Error::UnsupportedSuite { suite: suite.name().into(), reason: "k must be at least 1".into() });
    }
    // Structural duals compute every product through the formula; small ones are
    // cheaper to tabulate once for the whole suite.
    let tabulated;
    let base = if base.storage_mode() == StorageMode::Structural && base.size() as u128 <= DUAL_ANALYSIS_CAP {
        tabulated = construct_ring_with(base.spec(), &dual_opts())?;
        &tabulated
    } else {
        base
    };
    let r = match suite {
        Suite::Axioms => axioms_suite(base, cfg),
        Suite::DualStructure => dual_structure_suite(base, cfg),
        Suite::EvalLemma => eval_lemma_suite(base, cfg),
        Suite::NullDecomp => null_decomp_suite(base, cfg),
        Suite::Equiv => equiv_suite(base, cfg),
        Suite::Cherper => cherper(base, cfg),
        Suite::Chain => {
            let d = monic_central_null(base)?.degree as u32;
            let mode = cfg.pick((base.size() as u128).saturating_pow(d));
            chain_redundancy_suite(base, cfg.k, mode, cfg.seed, &cfg.budget)
        }
        Suite::Sums => null_lambda_sum_suite(base, &cfg.budget),
        Suite::Groups => groups_suite(base, cfg),
        Suite::Semidirect => semidirect_check(base, cfg.k, cfg.seed, &cfg.budget).map(|s| s.report),
        Suite::Stabilizer => stabilizer_suite(base, cfg),
        Suite::All => all_suite(base, cfg),
    };
    let mut r = r.map_err(|e| unsupported(suite, e))?;
    r.suite = suite.name().into();
    r.spec = base.spec().into();
    r.k = cfg.k;
    Ok(r.finish())
}

fn all_suite(base: &RingHandle, cfg: &VerifyConfig) -> Result<Report> {
    let mut report = Report::new("all", base.spec(), cfg.k);
    report.seed = Some(cfg.seed);
    for suite in Suite::EACH {
        match run_suite(suite, base, cfg) {
            Ok(r) => report.absorb(suite.name(), r),
            Err(e) if e.is_budget_or_unsupported() => report.push(Check::skipped(suite.name(), e.to_string())),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

fn axioms_suite(base: &RingHandle, cfg: &VerifyConfig) -> Result<Report> {
    let axiom_mode = |ring: &Ring| match cfg.pick((ring.size() as u128).pow(3)) {
        Mode::Exhaustive => AxiomMode::Exhaustive,
        Mode::Sampled => AxiomMode::Sampled { n: 1_000_000, seed: cfg.seed },
    };
    let mut report = validate_axioms(base, axiom_mode(base));
    let dual = dual_of(base, cfg.k, &ConstructOptions::default())?;
    report.absorb("dual", validate_axioms(&dual, axiom_mode(&dual)));
    Ok(report)
}

/// Largest dual ring whose element-set analyses (units, radical, center) run here.
const DUAL_ANALYSIS_CAP: u128 = 4096;

fn dual_structure_suite(base: &RingHandle, cfg: &VerifyConfig) -> Result<Report> {
    let k = cfg.k;
    let size = (base.size() as u128).saturating_pow(k as u32 + 1);
    let mut report = Report::new("dual-structure", base.spec(), k);
    if size > DUAL_ANALYSIS_CAP {
        return Err(Error::budget("dual ring elements for structure checks", size, DUAL_ANALYSIS_CAP));
    }
    let dual = dual_of(base, k, &dual_opts())?;
    let view = DualView::of(&dual)?;
    let b = base.as_ref();

    let roundtrip = dual.elements().find(|&x| {
        let (a0, cs) = view.decode(x);
        view.encode(a0, &cs) != x
    });
    report.push(Check::from_witness("encode/decode round trip", roundtrip.map(|x| json!({"x": x}))));

    // Digits of every element, decoded once; 16M pairs at the largest size.
    let w = k + 1;
    let digits: Vec<Elem> = dual
        .elements()
        .flat_map(|x| {
            let (a0, a) = view.decode(x);
            std::iter::once(a0).chain(a)
        })
        .collect();
    let s = b.size();
    let law = |x: Elem, y: Elem| {
        let dx = &digits[x as usize * w..][..w];
        let dy = &digits[y as usize * w..][..w];
        let mut z = b.mul(dx[0], dy[0]);
        let mut place = s;
        for i in 1..w {
            z += b.add(b.mul(dx[0], dy[i]), b.mul(dx[i], dy[0])) * place;
            place *= s;
        }
        (z != dual.mul(x, y)).then(|| json!({"x": x, "y": y}))
    };
    let mode = cfg.pick(size * size);
    let witness = match mode {
        Mode::Exhaustive => dual.elements().find_map(|x| dual.elements().find_map(|y| law(x, y))),
        Mode::Sampled => {
            report.seed = Some(cfg.seed);
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            (0..100_000).find_map(|_| law(rng.gen_range(0..dual.size()), rng.gen_range(0..dual.size())))
        }
    };
    report.push(Check::from_witness("product formula", witness).with_mode(mode));

    let unit_w = dual.elements().find(|&x| is_unit(&dual, x) != is_unit(b, view.decode(x).0));
    report.push(Check::from_witness("unit iff a0 unit", unit_w.map(|x| json!({"x": x}))));
    let inv_w = dual.elements().filter(|&x| is_unit(&dual, x)).find_map(|x| {
        let (a0, a) = view.decode(x);
        let i0 = inverse(b, a0).ok()?;
        let cs: Vec<Elem> = a.iter().map(|&ai| b.neg(b.mul(b.mul(i0, ai), i0))).collect();
        (inverse(&dual, x).ok() != Some(view.encode(i0, &cs))).then(|| json!({"x": x}))
    });
    report.push(Check::from_witness("inverse formula", inv_w));

    let jb: BTreeSet<Elem> = jacobson_radical(b).into_iter().collect();
    let jd = jacobson_radical(&dual);
    let expected: Vec<Elem> = dual.elements().filter(|&x| jb.contains(&view.decode(x).0)).collect();
    report.push(Check::new("J(R_k) = J(R) + sum R beta_i", jd == expected));
    let (nb, nd) = (nilpotency(b, &jb.iter().copied().collect::<Vec<_>>()), nilpotency(&dual, &jd));
    report.count("radical_nilpotency_base", nb);
    report.count("radical_nilpotency_dual", nd);
    report.push(Check::new("radical nilpotency grows by one", nb.zip(nd).is_some_and(|(x, y)| y == x + 1)));

    let cb: BTreeSet<Elem> = center(b).into_iter().collect();
    let cd = center(&dual);
    let expected: Vec<Elem> = dual
        .elements()
        .filter(|&x| {
            let (a0, a) = view.decode(x);
            cb.contains(&a0) && a.iter().all(|c| cb.contains(c))
        })
        .collect();
    report.push(Check::new("center(R_k) = C(R) + sum C(R) beta_i", cd == expected));

    let su_base = sum_of_units_reachable(b);
    let su_dual = sum_of_units_reachable(&dual);
    report.count("sum_of_units_base", su_base);
    report.count("sum_of_units_dual", su_dual);
    report.push(Check::new("sum of units on R iff on R_k", su_base == su_dual));
    Ok(report)
}

const LEMMA_DRAWS: usize = 500;

fn eval_lemma_suite(base: &RingHandle, cfg: &VerifyConfig) -> Result<Report> {
    let k = cfg.k;
    let dual = dual_of(base, k, &dual_opts())?;
    let view = DualView::of(&dual)?;
    let points = dual.size() as u128;
    let mode = cfg.pick(points * LEMMA_DRAWS as u128);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = Report::new("eval-lemma", base.spec(), k);
    report.seed = Some(cfg.seed);
    let mut witness = None;
    let mut compared = 0u64;
    for _ in 0..LEMMA_DRAWS {
        let comps: Vec<Poly> = (0..=k).map(|_| random_poly(base, 5, &mut rng)).collect();
        let f = assemble(&comps, &dual)?;
        let xs: Vec<Elem> = match mode {
            Mode::Exhaustive => dual.elements().collect(),
            Mode::Sampled => (0..64).map(|_| rng.gen_range(0..dual.size())).collect(),
        };
        for x in xs {
            let (a, bs) = view.decode(x);
            compared += 1;
            if dual_eval_via_lemma(&comps, &dual, a, &bs)? != f.eval(x) && witness.is_none() {
                witness = Some(json!({"components": comps.iter().map(Poly::to_index_string).collect::<Vec<_>>(), "x": x}));
            }
        }
    }
    report.count("draws", LEMMA_DRAWS);
    report.count("evaluations", compared);
    report.push(Check::from_witness("lemma matches direct evaluation", witness).with_mode(mode));
    Ok(report)
}

fn null_decomp_suite(base: &RingHandle, cfg: &VerifyConfig) -> Result<Report> {
    let bound = 4;
    let work = (base.size() as u128).saturating_pow((bound * (cfg.k + 1)) as u32);
    let mode = cfg.pick(work);
    null_decomposition_check(base, cfg.k, bound, mode, cfg.seed, &cfg.budget)
}

/// Equality of functions on `R_k` from components, ANull as nullity on `R_1`,
/// the left-ideal property, and restriction determinism.
fn equiv_suite(base: &RingHandle, cfg: &VerifyConfig) -> Result<Report> {
    let k = cfg.k;
    let n = base.size() as u128;
    let dual = dual_of(base, k, &dual_opts())?;
    let mut report = Report::new("equiv", base.spec(), k);
    report.seed = Some(cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let table = |comps: &[Poly]| -> Result<Vec<Elem>> {
        let f = assemble(comps, &dual)?;
        Ok(dual.elements().map(|x| f.eval(x)).collect())
    };

    // Criterion against table equality.
    let combos = n.saturating_pow(3 * (k as u32 + 1));
    let mode = cfg.pick(combos * combos * dual.size() as u128);
    let mut pairs: Vec<(Vec<Poly>, Vec<Poly>)> = Vec::new();
    match mode {
        Mode::Exhaustive => {
            let one: Vec<Poly> = all_polys(base, 3).collect();
            let mut tuples: Vec<Vec<Poly>> = vec![vec![]];
            for _ in 0..=k {
                tuples = tuples.iter().flat_map(|t| one.iter().map(move |p| [t.clone(), vec![p.clone()]].concat())).collect();
            }
            for f in &tuples {
                for g in &tuples {
                    pairs.push((f.clone(), g.clone()));
                }
            }
        }
        Mode::Sampled => {
            let g1 = dual_null(base, 1)?.poly;
            let g = monic_central_null(base)?.poly;
            for i in 0..2000 {
                let f: Vec<Poly> = (0..=k).map(|_| random_poly(base, 3, &mut rng)).collect();
                let other: Vec<Poly> = if i % 2 == 0 {
                    f.iter()
                        .enumerate()
                        .map(|(j, fj)| {
                            let m = if j == 0 { &g1 } else { &g };
                            fj.add(&random_poly(base, 2, &mut rng).mul(m))
                        })
                        .collect()
                } else if i % 4 == 1 {
                    let mut o = f.clone();
                    o[0] = o[0].add(&random_poly(base, 2, &mut rng).mul(&g));
                    o
                } else {
                    (0..=k).map(|_| random_poly(base, 3, &mut rng)).collect()
                };
                pairs.push((f, other));
            }
        }
    }
    let mut tables: HashMap<Vec<String>, Vec<Elem>> = HashMap::new();
    let mut witness = None;
    let mut equal = 0u64;
    for (f, g) in &pairs {
        let mut get = |c: &[Poly]| -> Result<Vec<Elem>> {
            let key: Vec<String> = c.iter().map(Poly::to_index_string).collect();
            if let Some(t) = tables.get(&key) {
                return Ok(t.clone());
            }
            let t = table(c)?;
            tables.insert(key, t.clone());
            Ok(t)
        };
        let direct = get(f)? == get(g)?;
        equal += direct as u64;
        if equiv_dual_criterion(f, g, base, k)? != direct && witness.is_none() {
            witness = Some(json!({"f": f.iter().map(Poly::to_index_string).collect::<Vec<_>>(),
                                  "g": g.iter().map(Poly::to_index_string).collect::<Vec<_>>()}));
        }
    }
    report.count("pairs", pairs.len());
    report.count("equal_pairs", equal);
    report.push(Check::from_witness("component criterion matches table equality", witness).with_mode(mode));

    // ANull is nullity on R_1.
    let r1 = dual_of(base, 1, &dual_opts())?;
    let polys: Vec<Poly> = if n.saturating_pow(4) * r1.size() as u128 <= cfg.budget.tuples as u128 {
        all_polys(base, 4).collect()
    } else {
        let g = monic_central_null(base)?.poly;
        (0..2000)
            .map(|i| if i % 2 == 0 { random_poly(base, 4, &mut rng) } else { random_poly(base, 2, &mut rng).mul(&g) })
            .collect()
    };
    let w = polys.iter().find_map(|f| {
        let e = embed(f, &r1);
        let on_r1 = r1.elements().all(|x| e.eval(x) == r1.zero());
        (on_r1 != is_anull(f)).then(|| json!({"f": f.to_index_string()}))
    });
    report.push(Check::from_witness("ANull is nullity on R_1", w));

    // g h is null for null h.
    let g0 = monic_central_null(base)?.poly;
    let w = (0..100).find_map(|_| {
        let h = random_poly(base, 3, &mut rng).mul(&g0);
        let g = random_poly(base, 4, &mut rng);
        (!is_null(&g.mul(&h))).then(|| json!({"g": g.to_index_string(), "h": h.to_index_string()}))
    });
    report.push(Check::from_witness("Null is a left ideal", w).with_mode(Mode::Sampled));

    report.push(restriction_determinism(base, cfg, &mut rng)?);
    report.push(ratio_invariance(base, cfg));
    Ok(report)
}

/// Composites of pure polynomial functions that agree on `R_1` agree on `R_k`.
fn restriction_determinism(base: &RingHandle, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Check> {
    let name = "composites equal on R_1 are equal on R_k";
    let k = cfg.k.max(2);
    let size = (base.size() as u128).saturating_pow(k as u32 + 1);
    if size > DUAL_ANALYSIS_CAP {
        return Ok(Check::skipped(name, format!("R_{k} has {size} elements")));
    }
    let dual = dual_of(base, k, &dual_opts())?;
    let r1_len = (base.size() as usize).pow(2);
    let d = dual_null_degree(base, 1)? as usize;
    let pool: Vec<Vec<Elem>> = (0..8)
        .map(|_| {
            let f = embed(&random_poly(base, d, rng), &dual);
            dual.elements().map(|x| f.eval(x)).collect()
        })
        .collect();
    let mut seen: HashMap<Vec<Elem>, Vec<Elem>> = HashMap::new();
    for _ in 0..300 {
        let len = rng.gen_range(1..=3);
        let mut t: Vec<Elem> = dual.elements().collect();
        for _ in 0..len {
            t = compose(&pool[rng.gen_range(0..pool.len())], &t);
        }
        let prefix = t[..r1_len].to_vec();
        if let Some(prev) = seen.get(&prefix) {
            if *prev != t {
                return Ok(Check::new(name, false).with_counterexample(json!({"restriction": prefix})));
            }
        } else {
            seen.insert(prefix, t);
        }
    }
    Ok(Check::new(name, true).with_mode(Mode::Sampled))
}

fn ratio_invariance(base: &RingHandle, cfg: &VerifyConfig) -> Check {
    let name = "lambda fibers have size [Null:ANull]";
    match (lambda_fiber_sizes(base, &cfg.budget), ideal_stats(base, &cfg.budget)) {
        (Ok(sizes), Ok(stats)) => {
            let ratio = stats.ratio.to_u64();
            Check::new(name, sizes.len() == 1 && Some(sizes[0]) == ratio).with_mode(Mode::Exhaustive)
        }
        (Err(e), _) | (_, Err(e)) => Check::skipped(name, e.to_string()),
    }
}

fn cherper(base: &RingHandle, cfg: &VerifyConfig) -> Result<Report> {
    let bound = if base.size() <= 4 { 4 } else { 3 };
    let dual_size = (base.size() as u128).saturating_pow(cfg.k as u32 + 1);
    let mode = cfg.pick((base.size() as u128).saturating_pow(bound as u32) * dual_size);
    let mut report = cherper_suite(base, bound, cfg.k, mode, cfg.seed, &cfg.budget)?;
    if base.is_commutative() {
        let d = monic_central_null(base)?.degree as u32;
        let m = cfg.pick((base.size() as u128).saturating_pow(d) * base.size() as u128);
        report.absorb("lambda-derivative", commutative_lambda_equiv_check(base, m, cfg.seed, &cfg.budget)?);
    }
    Ok(report)
}

/// Records a sub-check, turning budget and precondition errors into skips.
fn guarded(report: &mut Report, name: &str, run: impl FnOnce(&mut Report) -> Result<()>) -> Result<()> {
    let mut sub = Report::new(name, "", 0);
    match run(&mut sub) {
        Ok(()) => {
            report.absorb(name, sub);
            Ok(())
        }
        Err(e) if e.is_budget_or_unsupported() => {
            report.push(Check::skipped(name, e.to_string()));
            Ok(())
        }
        Err(e) => Err(e),
    }
}

fn groups_suite(base: &RingHandle, cfg: &VerifyConfig) -> Result<Report> {
    let (k, b) = (cfg.k, &cfg.budget);
    let mut report = Report::new("groups", base.spec(), k);
    report.seed = Some(cfg.seed);
    guarded(&mut report, "pxk", |r| {
        let p = build_pxk(base, k, cfg.seed, b)?;
        *r = p.report;
        Ok(())
    })?;
    guarded(&mut report, "pure", |r| {
        let pr = build_pr(base, k, b)?;
        let c = closure(&pr, b)?;
        r.count("order", pr.order());
        r.count("closure_order", c.order());
        r.push(Check::new("closure contains the set", pr.iter().all(|t| c.contains(t))));
        if base.is_commutative() {
            r.push(Check::new("closed when commutative", c.order() == pr.order()));
        }
        Ok(())
    })?;
    guarded(&mut report, "prpol", |r| {
        let c = count_prpol_dual(base, k, b)?;
        r.count("L", c.l);
        r.count("formula", &c.formula);
        if let Some(x) = c.brute_force {
            r.count("brute_force", x);
        }
        r.push(match c.crosscheck {
            crate::report::Status::Skipped => Check::skipped("formula matches brute force", c.note.unwrap_or_default()),
            s => Check::new("formula matches brute force", s == crate::report::Status::Pass),
        });
        Ok(())
    })?;
    guarded(&mut report, "stabilizer", |r| {
        *r = stabilizer_stk(base, k, b)?.1;
        Ok(())
    })?;
    guarded(&mut report, "quotient", |r| {
        *r = quotient_order_check(base, k, b)?;
        Ok(())
    })?;
    Ok(report)
}

fn stabilizer_suite(base: &RingHandle, cfg: &VerifyConfig) -> Result<Report> {
    let (k, b) = (cfg.k, &cfg.budget);
    let mut report = stabilizer_stk(base, k, b)?.1;
    guarded(&mut report, "iso", |r| {
        *r = stab_iso_order_check(base, k, k + 1, cfg.seed, b)?;
        Ok(())
    })?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;
    use crate::ring::construct_ring;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.iter().chain([&Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn unsupported_suites() {
        let ut = construct_ring("ut:2:gf:2").unwrap();
        let cfg = VerifyConfig::default();
        assert!(matches!(run_suite(Suite::Semidirect, &ut, &cfg), Err(Error::UnsupportedSuite { .. })));
        let f2 = construct_ring("gf:2").unwrap();
        assert!(matches!(run_suite(Suite::Chain, &f2, &cfg), Err(Error::UnsupportedSuite { .. })));
    }

    #[test]
    fn each_suite_on_f2() {
        let f2 = construct_ring("gf:2").unwrap();
        let cfg = VerifyConfig::default();
        for s in [Suite::Axioms, Suite::DualStructure, Suite::EvalLemma, Suite::NullDecomp, Suite::Equiv, Suite::Cherper] {
            let r = run_suite(s, &f2, &cfg).unwrap();
            assert!(r.passed(), "{}", r.to_json(true));
        }
    }

    #[test]
    fn all_on_z4() {
        let z4 = construct_ring("zn:4").unwrap();
        let r = run_suite(Suite::All, &z4, &VerifyConfig::default()).unwrap();
        assert!(r.passed(), "{}", r.to_json(true));
        assert!(r.checks.iter().all(|c| c.status != Status::Fail));
    }
}
