//! Induced functions, the ideals Null ⊇ Null′, Null ⊇ ANull, and function counts.

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::budget::Budget;
use crate::enumerate::{random_poly, PolyEnumerator};
use crate::error::{Error, Result};
use crate::lambda::{assemble, lambda_eval};
use crate::nullpoly::{dual_null, dual_null_degree, monic_central_null};
use crate::pairs::{PairLayout, PairSpan};
use crate::poly::{same_ring, Poly};
use crate::report::{Check, Mode, Report};
use crate::ring::{dual_of, ConstructOptions, Elem, RingHandle};
use crate::span::{closure_size, Echelon, Order};

#[derive(Debug, Clone)]
pub struct FuncTable {
    pub ring: RingHandle,
    pub out: Vec<Elem>,
    pub bijective: bool,
}

impl PartialEq for FuncTable {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.out == other.out
    }
}

impl Eq for FuncTable {}

pub fn is_bijective(out: &[Elem]) -> bool {
    let mut seen = vec![false; out.len()];
    for &y in out {
        if std::mem::replace(&mut seen[y as usize], true) {
            return false;
        }
    }
    true
}

pub fn func_table(f: &Poly, cap: u64) -> Result<FuncTable> {
    let r = f.ring();
    if r.size() as u64 > cap {
        return Err(Error::budget("function table cells", r.size() as u128, cap as u128));
    }
    let out: Vec<Elem> = r.elements().map(|a| f.eval(a)).collect();
    Ok(FuncTable { ring: r.clone(), bijective: is_bijective(&out), out })
}

pub fn is_null(f: &Poly) -> bool {
    let r = f.ring();
    r.elements().all(|a| f.eval(a) == r.zero())
}

/// Null with an identically zero λ table. Additivity of λ in its second
/// argument means the additive basis suffices for the second argument.
pub fn is_anull(f: &Poly) -> bool {
    let r = f.ring();
    let basis = r.additive_basis();
    is_null(f) && r.elements().all(|a| basis.iter().all(|&e| lambda_eval(f, a, e) == r.zero()))
}

pub fn is_nullprime(f: &Poly) -> bool {
    is_null(f) && is_null(&f.derivative())
}

pub fn equiv_on(f: &Poly, g: &Poly) -> Result<bool> {
    if !same_ring(f.ring(), g.ring()) {
        return Err(Error::WrongRing { expected: f.ring().spec().into(), got: g.ring().spec().into() });
    }
    Ok(f.ring().elements().all(|a| f.eval(a) == g.eval(a)))
}

/// Equality on `R_k` decided from components: `[f_0] = [g_0]`, equal λ
/// tables, and `[f_i] = [g_i]`.
pub fn equiv_dual_criterion(fs: &[Poly], gs: &[Poly], base: &RingHandle, k: usize) -> Result<bool> {
    if fs.len() != k + 1 || gs.len() != k + 1 {
        return Err(Error::WrongRing { expected: format!("{} components", k + 1), got: format!("{} and {}", fs.len(), gs.len()) });
    }
    for f in fs.iter().chain(gs) {
        if !same_ring(f.ring(), base) {
            return Err(Error::WrongRing { expected: base.spec().into(), got: f.ring().spec().into() });
        }
    }
    if !equiv_on(&fs[0], &gs[0])? {
        return Ok(false);
    }
    let lambda_equal =
        base.elements().all(|a| base.elements().all(|b| lambda_eval(&fs[0], a, b) == lambda_eval(&gs[0], a, b)));
    if !lambda_equal {
        return Ok(false);
    }
    for (f, g) in fs[1..].iter().zip(&gs[1..]) {
        if !equiv_on(f, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn dual_opts() -> ConstructOptions {
    ConstructOptions { materialize_duals: true, ..Default::default() }
}

/// Samples drawn in sampled mode when the caller does not say otherwise.
pub const DEFAULT_SAMPLES: u64 = 10_000;

/// `f_0 + Σ f_i β_i` is null on `R_k` exactly when `f_0 ∈ ANull` and every `f_i ∈ Null`.
pub fn null_decomposition_check(
    base: &RingHandle,
    k: usize,
    bound: usize,
    mode: Mode,
    seed: u64,
    budget: &Budget,
) -> Result<Report> {
    let dual = dual_of(base, k, &dual_opts())?;
    let mut report = Report::new("null-decomp", base.spec(), k);
    let zero = dual.zero();
    let is_null_dual = |f: &Poly| dual.elements().all(|x| f.eval(x) == zero);
    let mut mismatch = None;
    let (mut tested, mut null_cases) = (0u64, 0u64);
    let mut test = |comps: &[Poly]| {
        let direct = is_null_dual(&assemble(comps, &dual).expect("component count matches"));
        let criterion = is_anull(&comps[0]) && comps[1..].iter().all(is_null);
        tested += 1;
        null_cases += direct as u64;
        if direct != criterion && mismatch.is_none() {
            mismatch = Some(json!({
                "components": comps.iter().map(Poly::to_index_string).collect::<Vec<_>>(),
                "null_on_dual": direct,
                "criterion": criterion,
            }));
        }
    };
    match mode {
        Mode::Exhaustive => {
            let n = base.size() as u128;
            let total = n.saturating_pow((bound * (k + 1)) as u32);
            if total > budget.tuples as u128 {
                return Err(Error::budget("null decomposition tuples", total, budget.tuples as u128));
            }
            let per = n.pow(bound as u32) as u64;
            let polys: Vec<Poly> = crate::enumerate::all_polys(base, bound).collect();
            let mut idx = vec![0u64; k + 1];
            loop {
                let comps: Vec<Poly> = idx.iter().map(|&i| polys[i as usize].clone()).collect();
                test(&comps);
                let mut j = 0;
                loop {
                    if j == idx.len() {
                        break;
                    }
                    idx[j] += 1;
                    if idx[j] < per {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
                if j == idx.len() {
                    break;
                }
            }
        }
        Mode::Sampled => {
            report.seed = Some(seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = monic_central_null(base)?.poly;
            let g1 = dual_null(base, 1)?.poly;
            let samples = DEFAULT_SAMPLES.min(budget.tuples);
            for _ in 0..samples {
                // Bias towards null components so both sides of the equivalence get exercised.
                let comps: Vec<Poly> = (0..=k)
                    .map(|i| {
                        let r = random_poly(base, bound, &mut rng);
                        match rng.gen_range(0..4) {
                            0 => r,
                            1 => random_poly(base, bound, &mut rng).mul(&g),
                            2 if i == 0 => random_poly(base, bound, &mut rng).mul(&g1),
                            _ => random_poly(base, bound, &mut rng).mul(&g).add(&r.mul(&g1)),
                        }
                    })
                    .collect();
                test(&comps);
            }
        }
    }
    report.count("tested", tested);
    report.count("null_on_dual", null_cases);
    report.push(Check::from_witness("null on R_k iff f0 in ANull and fi in Null", mismatch).with_mode(mode));
    Ok(report.finish())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Enumerate,
    Closure,
    Span,
}

/// Coordinate vectors of the tables of `e_s x^j`, `j < bound`.
fn table_generators(ring: &RingHandle, bound: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for j in 0..bound {
        for &e in &ring.additive_basis() {
            let f = Poly::monomial(ring, e, j);
            out.push(ring.elements().flat_map(|a| ring.coords(f.eval(a))).collect());
        }
    }
    out
}

/// `|PolFun(R)|`: distinct functions induced by polynomials.
pub fn count_polyfun(ring: &RingHandle, method: CountMethod, budget: &Budget) -> Result<Order> {
    let d = monic_central_null(ring)?.degree as usize;
    match method {
        CountMethod::Enumerate => {
            let e = PolyEnumerator::tables(ring, d);
            e.check_budget("polynomials to enumerate", budget.tuples)?;
            let mut seen: HashSet<Vec<Elem>> = HashSet::new();
            let mut over = false;
            e.for_each(|_, t| {
                if !seen.contains(t) {
                    seen.insert(t.to_vec());
                    if seen.len() as u64 > budget.tables {
                        over = true;
                        return ControlFlow::Break(());
                    }
                }
                ControlFlow::Continue(())
            });
            if over {
                return Err(Error::budget("distinct tables", seen.len() as u128, budget.tables as u128));
            }
            Ok(Order::from_u64(seen.len() as u64))
        }
        CountMethod::Closure => {
            let moduli = ring.moduli().repeat(ring.size() as usize);
            let n = closure_size(&moduli, &table_generators(ring, d), budget.tables as usize)?;
            Ok(Order::from_u64(n as u64))
        }
        CountMethod::Span => {
            let mut e = Echelon::new(&ring.moduli().repeat(ring.size() as usize));
            for g in table_generators(ring, d) {
                e.insert(&g);
            }
            Ok(e.order())
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdealStats {
    pub spec: String,
    /// Degree bound of the enumeration: that of the null polynomial of `R_1`.
    pub d: u64,
    /// Degree of the null polynomial of `R` itself.
    pub d_base: u64,
    pub idx_null: Order,
    pub idx_anull: Order,
    pub ratio: Order,
    pub method: CountMethod,
}

impl IdealStats {
    pub fn identity_holds(&self) -> bool {
        self.idx_anull == self.idx_null.mul(&self.ratio)
    }
}

/// `[R[x] : Null]`, `[R[x] : ANull]` and `[Null : ANull]`, each counted independently.
pub fn ideal_stats(base: &RingHandle, budget: &Budget) -> Result<IdealStats> {
    let d_base = monic_central_null(base)?.degree;
    let d = dual_null_degree(base, 1)?;
    let polys = (base.size() as u128).saturating_pow(d as u32);
    let (idx_null, idx_anull, ratio, method) = if polys <= budget.tuples as u128 {
        let layout = PairLayout::new(base);
        let n = base.size() as usize;
        let (mut tables, mut pairs, mut null_lambdas) = (HashSet::new(), HashSet::new(), HashSet::new());
        let mut over = false;
        layout.enumerator(d as usize).for_each(|_, sig| {
            if pairs.insert(sig.to_vec()) {
                tables.insert(sig[..n].to_vec());
                if sig[..n].iter().all(|&x| x == 0) {
                    null_lambdas.insert(sig[n..].to_vec());
                }
                if pairs.len() as u64 > budget.tables {
                    over = true;
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        });
        if over {
            return Err(Error::budget("distinct pairs", pairs.len() as u128, budget.tables as u128));
        }
        let c = |s: usize| Order::from_u64(s as u64);
        (c(tables.len()), c(pairs.len()), c(null_lambdas.len()), CountMethod::Enumerate)
    } else {
        let span = PairSpan::build(base, d as usize);
        (span.table_count(), span.pair_count(), span.null_lambda_count(), CountMethod::Span)
    };
    Ok(IdealStats { spec: base.spec().into(), d, d_base, idx_null, idx_anull, ratio, method })
}

/// For every function `F`, the number of distinct λ tables among `{f : [f] = F}`.
/// Returns the distinct fiber sizes seen (a single value when the count does not depend on `F`).
pub fn lambda_fiber_sizes(base: &RingHandle, budget: &Budget) -> Result<Vec<u64>> {
    let d = dual_null_degree(base, 1)? as usize;
    let layout = PairLayout::new(base);
    let e = layout.enumerator(d);
    e.check_budget("polynomials to enumerate", budget.tuples)?;
    let n = base.size() as usize;
    let mut fibers: HashMap<Vec<Elem>, HashSet<Vec<Elem>>> = HashMap::new();
    e.for_each(|_, sig| {
        fibers.entry(sig[..n].to_vec()).or_default().insert(sig[n..].to_vec());
        ControlFlow::Continue(())
    });
    let mut sizes: Vec<u64> = fibers.values().map(|s| s.len() as u64).collect();
    sizes.sort_unstable();
    sizes.dedup();
    Ok(sizes)
}

#[derive(Debug, Clone, Serialize)]
pub struct DualCount {
    pub base: String,
    pub k: usize,
    pub formula: Order,
    pub span: Option<Order>,
    pub crosscheck: crate::report::Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// `|PolFun(R_k)| = [R[x]:ANull] · [R[x]:Null]^k`, cross-checked against a
/// span count on `R_k` itself when that ring can be built.
pub fn count_polyfun_dual(base: &RingHandle, k: usize, budget: &Budget) -> Result<DualCount> {
    use crate::report::Status;
    let stats = ideal_stats(base, budget)?;
    let formula = stats.idx_anull.mul(&stats.idx_null.pow(k as u64));
    let mut out = DualCount { base: base.spec().into(), k, formula, span: None, crosscheck: Status::Skipped, note: None };
    match dual_of(base, k, &ConstructOptions::default()) {
        Ok(dual) => {
            let span = count_polyfun(&dual, CountMethod::Span, budget)?;
            out.crosscheck = if span == out.formula { Status::Pass } else { Status::Fail };
            out.span = Some(span);
        }
        Err(e) if e.is_budget_or_unsupported() => out.note = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(out)
}
