//! Permutation polynomials on `R` and `R_k`.
//!
//! `f_0 + Σ f_i β_i` permutes `R_k` iff `f_0` permutes `R` and every row of
//! `λ_{f_0}` is a bijection. Every suite here tests that against brute-force
//! evaluation on the dual ring.

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::enumerate::{all_polys, random_poly, PolyEnumerator};
use crate::error::{Error, Result};
use crate::funspace::{count_polyfun, dual_opts, func_table, is_bijective, CountMethod, DEFAULT_SAMPLES};
use crate::lambda::{assemble, embed};
use crate::nullpoly::{dual_null_degree, monic_central_null};
use crate::pairs::{PairLayout, PairSpan};
use crate::poly::{same_ring, Poly};
use crate::report::{Check, Mode, Report, Status};
use crate::ring::analysis::{additive_order_with, chain_analysis, is_unit, semicommutativity_check, ChainInfo};
use crate::ring::spec::prime_power;
use crate::ring::{dual_of, DualView, Elem, Ring, RingHandle};
use crate::span::Order;

/// First pair of inputs sharing an output.
pub fn collision(out: &[Elem]) -> Option<(Elem, Elem)> {
    let mut seen = vec![u32::MAX; out.len()];
    for (i, &y) in out.iter().enumerate() {
        if seen[y as usize] != u32::MAX {
            return Some((seen[y as usize], i as Elem));
        }
        seen[y as usize] = i as Elem;
    }
    None
}

pub fn is_pp(f: &Poly, cap: u64) -> Result<bool> {
    Ok(func_table(f, cap)?.bijective)
}

/// Whether every row `b ↦ λ_f(a, b)` is a bijection; otherwise the first `(a, b1, b2)` with equal values.
pub fn lambda_local_perm(f: &Poly) -> (bool, Option<(Elem, Elem, Elem)>) {
    let layout = PairLayout::new(f.ring());
    let sig = layout.sig_of(f);
    let w = layout.expand_lambda(layout.lambda_part(&sig)).local_perm_witness();
    (w.is_none(), w)
}

#[derive(Debug, Clone, Serialize)]
pub struct PPVerdict {
    pub is_pp_base: bool,
    pub lambda_local: bool,
    /// The criterion: `is_pp_base && lambda_local`.
    pub is_pp_dual: bool,
    /// Direct bijectivity test on `R_k`, when run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PPVerdict {
    pub fn agrees(&self) -> bool {
        self.brute_force.is_none_or(|b| b == self.is_pp_dual)
    }
}

fn check_components(components: &[Poly], base: &RingHandle, k: usize) -> Result<()> {
    if components.len() != k + 1 {
        return Err(Error::WrongRing { expected: format!("{} components", k + 1), got: components.len().to_string() });
    }
    if let Some(f) = components.iter().find(|f| !same_ring(f.ring(), base)) {
        return Err(Error::WrongRing { expected: base.spec().into(), got: f.ring().spec().into() });
    }
    Ok(())
}

/// Function table of `f` on every element of `ring`.
fn table_on(f: &Poly, ring: &Ring) -> Vec<Elem> {
    ring.elements().map(|x| f.eval(x)).collect()
}

pub fn is_pp_dual(components: &[Poly], base: &RingHandle, k: usize, crosscheck: bool, budget: &Budget) -> Result<PPVerdict> {
    check_components(components, base, k)?;
    let f0 = &components[0];
    let table = func_table(f0, budget.tables)?;
    let (lambda_local, lw) = lambda_local_perm(f0);
    let witness = if let Some((a1, a2)) = collision(&table.out) {
        Some(json!({"base_collision": [a1, a2]}))
    } else {
        lw.map(|(a, b1, b2)| json!({"lambda_row": {"a": a, "b1": b1, "b2": b2}}))
    };
    let mut v = PPVerdict {
        is_pp_base: table.bijective,
        lambda_local,
        is_pp_dual: table.bijective && lambda_local,
        brute_force: None,
        witness,
        note: None,
    };
    if crosscheck {
        let size = (base.size() as u128).saturating_pow(k as u32 + 1);
        if size > budget.tables as u128 {
            v.note = Some(Error::budget("dual ring table cells", size, budget.tables as u128).to_string());
        } else {
            let dual = dual_of(base, k, &dual_opts())?;
            let out = table_on(&assemble(components, &dual)?, &dual);
            let c = collision(&out);
            v.brute_force = Some(c.is_none());
            if let (Some((x, y)), None) = (c, &v.witness) {
                v.witness = Some(json!({"dual_collision": [x, y]}));
            }
        }
    }
    Ok(v)
}

/// Every row of the expanded λ table is a bijection, given the basis part of a signature.
fn rows_bijective(layout: &PairLayout, lam_part: &[Elem]) -> bool {
    layout.lambda_locally_bijective(lam_part)
}

fn exhaustive_or_budget(n: u32, bound: usize, mode: Mode, what: &str, budget: &Budget) -> Result<u128> {
    let total = (n as u128).saturating_pow(bound as u32);
    if mode == Mode::Exhaustive && total > budget.tuples as u128 {
        return Err(Error::budget(what, total, budget.tuples as u128));
    }
    Ok(total)
}

/// The criterion against brute force on `R_k` (and on `R_1` when `k > 1`) for
/// every `f_0` of degree `< bound`, with verdicts repeated for other `f_1..f_k`.
pub fn cherper_suite(base: &RingHandle, bound: usize, k: usize, mode: Mode, seed: u64, budget: &Budget) -> Result<Report> {
    let n = base.size();
    let total = exhaustive_or_budget(n, bound, mode, "polynomials to test", budget)?;
    let dual_k = dual_of(base, k, &dual_opts())?;
    let dual_1 = if k > 1 { Some(dual_of(base, 1, &dual_opts())?) } else { None };
    let layout = PairLayout::new(base);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polys: Vec<Poly> = match mode {
        Mode::Exhaustive => all_polys(base, bound).collect(),
        Mode::Sampled => {
            let per_poly = (dual_k.size() as u64).max(1);
            let samples = DEFAULT_SAMPLES.min((budget.tuples / per_poly).max(100));
            (0..samples).map(|_| random_poly(base, bound, &mut rng)).collect()
        }
    };
    // All choices of f_1 when there are few, otherwise a handful of seeded ones.
    let all_others = k == 1 && total <= 256;
    let mut report = Report::new("cherper", base.spec(), k);
    report.mode = mode;
    if mode == Mode::Sampled {
        report.seed = Some(seed);
    }
    let (mut mismatch, mut dependent, mut split, mut not_onto) = (None, None, None, None);
    let (mut pp_base, mut pp_dual, mut base_only) = (0u64, 0u64, 0u64);
    for f0 in &polys {
        let sig = layout.sig_of(f0);
        let base_ok = is_bijective(layout.table(&sig));
        let local = rows_bijective(&layout, layout.lambda_part(&sig));
        let criterion = base_ok && local;
        let brute = is_bijective(&table_on(&embed(f0, &dual_k), &dual_k));
        pp_base += base_ok as u64;
        pp_dual += brute as u64;
        base_only += (base_ok && !brute) as u64;
        if brute != criterion && mismatch.is_none() {
            mismatch = Some(json!({"f0": f0.to_index_string(), "criterion": criterion, "brute_force": brute}));
        }
        let others: Vec<Vec<Poly>> = if all_others {
            all_polys(base, bound).map(|g| vec![g]).collect()
        } else {
            let mut v = vec![vec![f0.clone(); k], vec![Poly::x(base); k]];
            v.push((0..k).map(|_| random_poly(base, bound, &mut rng)).collect());
            v
        };
        for rest in others {
            let mut comps = vec![f0.clone()];
            comps.extend(rest);
            let b = is_bijective(&table_on(&assemble(&comps, &dual_k)?, &dual_k));
            if b != brute && dependent.is_none() {
                dependent = Some(json!({"components": comps.iter().map(Poly::to_index_string).collect::<Vec<_>>()}));
            }
        }
        if let Some(d1) = &dual_1 {
            let b1 = is_bijective(&table_on(&embed(f0, d1), d1));
            if b1 != brute && split.is_none() {
                split = Some(json!({"f0": f0.to_index_string(), "on_r1": b1, "on_rk": brute}));
            }
        }
        if criterion {
            let lam = layout.expand_lambda(layout.lambda_part(&sig));
            let image: HashSet<Elem> = lam.cells.iter().copied().collect();
            if image.len() != n as usize && not_onto.is_none() {
                not_onto = Some(json!({"f0": f0.to_index_string()}));
            }
        }
    }
    report.count("tested", polys.len());
    report.count("pp_base", pp_base);
    report.count("pp_dual", pp_dual);
    report.count("pp_base_not_dual", base_only);
    report.push(Check::from_witness("criterion matches brute force on R_k", mismatch).with_mode(mode));
    report.push(Check::from_witness("verdict independent of f1..fk", dependent).with_mode(mode));
    let split_check = Check::from_witness("PP on R_k iff PP on each R[beta_i]", split).with_mode(mode);
    report.push(if k == 1 { split_check.with_note("k = 1: R[beta_1] is R_k") } else { split_check });
    report.push(Check::from_witness("lambda surjective for PPs on R_k", not_onto).with_mode(mode));
    Ok(report.finish())
}

/// `char R = p^c`, returned as `(p, c)`.
fn char_exponent(ring: &Ring) -> Option<(u64, u32)> {
    prime_power(u32::try_from(ring.char()).ok()?).map(|(p, c)| (p as u64, c))
}

fn require_chain(base: &RingHandle) -> Result<(ChainInfo, u64, u32)> {
    let info = chain_analysis(base);
    if !info.is_chain {
        return Err(Error::NotAChainRing(base.spec().into()));
    }
    let (p, c) = char_exponent(base).ok_or_else(|| Error::NotAChainRing(base.spec().into()))?;
    if c == 1 {
        return Err(Error::CharIsP(base.spec().into()));
    }
    Ok((info, p, c))
}

/// `p a = 0 ⇒ a² = 0` for every `a`, with `p` the characteristic prime.
pub fn p_torsion_square_check(ring: &Ring) -> Result<Check> {
    let (p, _) = char_exponent(ring).ok_or_else(|| Error::NotAChainRing(ring.spec().into()))?;
    let w = ring
        .elements()
        .find(|&a| ring.times(p, a) == ring.zero() && ring.mul(a, a) != ring.zero())
        .map(|a| json!({"a": a}));
    Ok(Check::from_witness("pa=0 implies a^2=0", w).with_mode(Mode::Exhaustive))
}

/// Additive order of every element against `p^⌈(N − i)/e⌉`.
pub fn element_order_check(ring: &Ring) -> Result<Check> {
    let info = chain_analysis(ring);
    if !info.is_chain {
        return Err(Error::NotAChainRing(ring.spec().into()));
    }
    if info.ramification.is_none() {
        return Err(Error::CharIsP(ring.spec().into()));
    }
    let w = ring.elements().skip(1).find_map(|a| {
        let o = additive_order_with(ring, &info, a);
        (o.agree != Some(true)).then(|| json!({"a": a, "order": o.order, "formula": o.formula}))
    });
    Ok(Check::from_witness("additive order formula", w).with_mode(Mode::Exhaustive))
}

/// `class[i][a]`: least element of `a + M^i`.
fn coset_classes(ring: &Ring, info: &ChainInfo) -> Vec<Vec<Elem>> {
    info.powers
        .iter()
        .map(|ideal| ring.elements().map(|a| ideal.iter().map(|&m| ring.add(a, m)).min().unwrap()).collect())
        .collect()
}

/// The map induced on `R / M^i` is well defined and bijective; else `(i, a)`.
fn images_mod_powers(table: &[Elem], classes: &[Vec<Elem>]) -> Option<(usize, Elem)> {
    for (i, class) in classes.iter().enumerate().skip(1) {
        let mut image: HashMap<Elem, Elem> = HashMap::new();
        for (a, &y) in table.iter().enumerate() {
            let (ca, cy) = (class[a], class[y as usize]);
            if *image.entry(ca).or_insert(cy) != cy {
                return Some((i, a as Elem));
            }
        }
        let targets: HashSet<Elem> = image.values().copied().collect();
        if targets.len() != image.len() {
            return Some((i, 0));
        }
    }
    None
}

/// On a chain ring with `c > 1`, every permutation polynomial of degree below
/// the null degree has units as derivative values, a locally bijective λ, and
/// permutes `R_k`. Also checks images mod `M^i`, `pa = 0 ⇒ a² = 0` when `c > 2`,
/// and semicommutativity.
pub fn chain_redundancy_suite(base: &RingHandle, k: usize, mode: Mode, seed: u64, budget: &Budget) -> Result<Report> {
    let (info, _, c) = require_chain(base)?;
    let d = monic_central_null(base)?.degree as usize;
    let n = base.size() as usize;
    exhaustive_or_budget(base.size(), d, mode, "polynomials to test", budget)?;
    let layout = PairLayout::new(base);
    let w = layout.width();
    let in_m: Vec<bool> = base.elements().map(|a| !is_unit(base, a)).collect();
    let classes = coset_classes(base, &info);
    let dual_size = (n as u128).saturating_pow(k as u32 + 1);
    let dual = if dual_size <= budget.tables as u128 { Some(dual_of(base, k, &dual_opts())?) } else { None };
    let dual_view = dual.as_ref().map(DualView::of).transpose()?;

    let mut report = Report::new("chain", base.spec(), k);
    report.mode = mode;
    let (mut tested, mut pps) = (0u64, 0u64);
    let (mut deriv_w, mut local_w, mut dual_w, mut image_w) = (None, None, None, None);
    let mut pair_memo: HashMap<Vec<Elem>, (bool, Option<bool>)> = HashMap::new();
    let mut tables_seen: HashSet<Vec<Elem>> = HashSet::new();
    let mut visit = |coeffs: &[Elem], sig: &[Elem]| {
        tested += 1;
        let table = &sig[..n];
        if !is_bijective(table) {
            return;
        }
        pps += 1;
        let deriv = &sig[w..];
        if deriv_w.is_none() {
            if let Some(a) = deriv.iter().position(|&y| in_m[y as usize]) {
                deriv_w = Some(json!({"f": coeffs, "a": a}));
            }
        }
        let (local, brute) = *pair_memo.entry(sig[..w].to_vec()).or_insert_with(|| {
            let local = rows_bijective(&layout, &sig[n..w]);
            let brute = dual_view.as_ref().map(|v| is_bijective(&pure_dual_table(&layout, &sig[..w], v)));
            (local, brute)
        });
        if !local && local_w.is_none() {
            local_w = Some(json!({"f": coeffs}));
        }
        if brute == Some(false) && dual_w.is_none() {
            dual_w = Some(json!({"f": coeffs}));
        }
        if image_w.is_none() && tables_seen.insert(table.to_vec()) {
            if let Some((i, a)) = images_mod_powers(table, &classes) {
                image_w = Some(json!({"f": coeffs, "i": i, "a": a}));
            }
        }
    };
    match mode {
        Mode::Exhaustive => layout.enumerator_with_derivative(d).for_each(|coeffs, sig| {
            visit(coeffs, sig);
            ControlFlow::Continue(())
        }),
        Mode::Sampled => {
            report.seed = Some(seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..DEFAULT_SAMPLES {
                let f = random_poly(base, d, &mut rng);
                let mut sig = layout.sig_of(&f);
                sig.extend(table_on(&f.derivative(), base));
                let coeffs: Vec<Elem> = (0..d).map(|j| f.coeff(j)).collect();
                visit(&coeffs, &sig);
            }
        }
    }
    report.count("tested", tested);
    report.count("pp_base", pps);
    report.count("distinct_pp_pairs", pair_memo.len());
    report.count("distinct_pp_tables", tables_seen.len());
    report.push(Check::from_witness("PP derivative values avoid M", deriv_w).with_mode(mode));
    report.push(Check::from_witness("PP has locally bijective lambda", local_w).with_mode(mode));
    let dual_check = Check::from_witness("PP on R is PP on R_k", dual_w).with_mode(mode);
    report.push(if dual.is_some() { dual_check } else { Check::skipped("PP on R is PP on R_k", "dual ring over table budget") });
    report.push(Check::from_witness("PP images mod M^i are PPs", image_w).with_mode(mode));
    if c > 2 {
        report.push(p_torsion_square_check(base)?);
    } else {
        report.push(Check::skipped("pa=0 implies a^2=0", "needs characteristic p^c with c > 2"));
    }
    report.push(element_order_check(base)?);
    let n3 = (n as u64).saturating_pow(3);
    let semi_mode = if n3 <= budget.tuples { Mode::Exhaustive } else { Mode::Sampled };
    report.absorb("semicommutativity", semicommutativity_check(base, semi_mode, seed, budget.tuples)?);
    Ok(report.finish())
}

/// `F(a + Σ b_i β_i) = f(a) + Σ λ_f(a, b_i) β_i` for a pure `f`, from its signature.
pub fn pure_dual_table(layout: &PairLayout, sig: &[Elem], view: &DualView) -> Vec<Elem> {
    let table = layout.table(sig);
    let lam = layout.expand_lambda(layout.lambda_part(sig));
    let size = (layout.ring.size() as usize).pow(view.k as u32 + 1);
    (0..size as Elem)
        .map(|x| {
            let (a, bs) = view.decode(x);
            let cs: Vec<Elem> = bs.iter().map(|&b| lam.get(a, b)).collect();
            view.encode(table[a as usize], &cs)
        })
        .collect()
}

/// `Σ_b λ_g(a, b) = 0` for every null `g` and every `a`, and the double sum over `a, b` vanishes.
pub fn null_lambda_sum_suite(base: &RingHandle, budget: &Budget) -> Result<Report> {
    require_chain(base)?;
    let d = monic_central_null(base)?.degree as usize;
    let n = base.size() as usize;
    let layout = PairLayout::new(base);
    let mut lambdas: HashSet<Vec<Elem>> = HashSet::new();
    let mut report = Report::new("sums", base.spec(), 0);
    let total = (n as u128).saturating_pow(d as u32);
    if total <= budget.tuples as u128 {
        let mut nulls = 0u64;
        layout.enumerator(d).for_each(|_, sig| {
            if sig[..n].iter().all(|&y| y == 0) {
                nulls += 1;
                lambdas.insert(sig[n..].to_vec());
            }
            ControlFlow::Continue(())
        });
        report.count("null_polys", nulls);
    } else {
        let span = PairSpan::build(base, d);
        let count = span.null_lambda_count();
        if !count.le(budget.tables as u128) {
            return Err(Error::budget("null lambda tables", count.to_u128().unwrap_or(u128::MAX), budget.tables as u128));
        }
        span.for_each_null_pair(|sig| {
            lambdas.insert(sig[n..].to_vec());
        });
        report.count("method", "span");
    }
    let mut row_w = None;
    let mut total_w = None;
    let mut sorted: Vec<&Vec<Elem>> = lambdas.iter().collect();
    sorted.sort();
    for lam_part in sorted {
        let lam = layout.expand_lambda(lam_part);
        let mut all = base.zero();
        for a in base.elements() {
            let row = (0..base.size()).fold(base.zero(), |s, b| base.add(s, lam.get(a, b)));
            if row != base.zero() && row_w.is_none() {
                row_w = Some(json!({"lambda": lam_part, "a": a, "sum": row}));
            }
            all = base.add(all, row);
        }
        if all != base.zero() && total_w.is_none() {
            total_w = Some(json!({"lambda": lam_part, "sum": all}));
        }
    }
    report.count("distinct_null_lambdas", lambdas.len());
    report.push(Check::from_witness("row sums of null lambda vanish", row_w));
    report.push(Check::from_witness("double sums of null lambda vanish", total_w));
    Ok(report.finish())
}

/// Signatures (table and λ basis part) of the pure polynomials permuting `R_1`, sorted.
pub fn pure_pp_pairs(base: &RingHandle, budget: &Budget) -> Result<Vec<Vec<Elem>>> {
    let d1 = dual_null_degree(base, 1)? as usize;
    let layout = PairLayout::new(base);
    let n = base.size() as usize;
    let mut out: HashSet<Vec<Elem>> = HashSet::new();
    let mut local_memo: HashMap<Vec<Elem>, bool> = HashMap::new();
    let mut keep = |sig: &[Elem]| {
        if is_bijective(&sig[..n])
            && *local_memo.entry(sig[n..].to_vec()).or_insert_with(|| rows_bijective(&layout, &sig[n..]))
        {
            out.insert(sig.to_vec());
        }
    };
    if (n as u128).saturating_pow(d1 as u32) <= budget.tuples as u128 {
        layout.enumerator(d1).for_each(|_, sig| {
            keep(sig);
            ControlFlow::Continue(())
        });
    } else {
        let span = PairSpan::build(base, d1);
        let pairs = span.pair_count();
        if !pairs.le(budget.tables as u128) {
            return Err(Error::budget("pairs to scan", pairs.to_u128().unwrap_or(u128::MAX), budget.tables as u128));
        }
        span.for_each_pair(&mut keep);
    }
    let mut v: Vec<Vec<Elem>> = out.into_iter().collect();
    v.sort();
    Ok(v)
}

/// `L`: distinct `([f]_R, [λ_f])` over pure `f` permuting `R_1`.
pub fn compute_l(base: &RingHandle, budget: &Budget) -> Result<u64> {
    Ok(pure_pp_pairs(base, budget)?.len() as u64)
}

/// Distinct bijective tables on `R_k` induced by `f_0 + Σ f_i β_i` with
/// `deg f_0` below the null degree of `R_k` and `deg f_i` below that of `R`.
/// Every polynomial function on `R_k` has such a representative. Tables are
/// evaluated directly in the dual ring, not through the λ criterion.
pub fn prpol_dual_tables(base: &RingHandle, k: usize, budget: &Budget) -> Result<Vec<Vec<Elem>>> {
    let size = (base.size() as u128).saturating_pow(k as u32 + 1);
    if size > 4096 {
        return Err(Error::budget("dual ring size for brute force", size, 4096));
    }
    let dual = dual_of(base, k, &dual_opts())?;
    let d0 = dual_null_degree(base, k)? as usize;
    let d = monic_central_null(base)?.degree as usize;
    let powers = crate::enumerate::power_table(&dual, d0.max(d));
    let n = base.size();
    // Position j < d0 is the coefficient of x^j in f_0; d0 + i d + j that of β_{i+1} x^j.
    let e = PolyEnumerator::new(base, d0 + k * d, size as usize, |c, pos, out| {
        let (scale, j) = if pos < d0 { (1, pos) } else { (n.pow(1 + ((pos - d0) / d) as u32), (pos - d0) % d) };
        let coeff = c * scale;
        for (x, o) in out.iter_mut().enumerate() {
            *o = dual.mul(coeff, powers[j][x]);
        }
    });
    e.check_budget("canonical dual polynomials", budget.tuples)?;
    let mut out: HashSet<Vec<Elem>> = HashSet::new();
    let mut over = false;
    e.for_each_in(&dual, |_, t| {
        if is_bijective(t) && !out.contains(t) {
            out.insert(t.to_vec());
            if out.len() as u64 > budget.tables {
                over = true;
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    if over {
        return Err(Error::budget("permutation tables", out.len() as u128, budget.tables as u128));
    }
    let mut v: Vec<Vec<Elem>> = out.into_iter().collect();
    v.sort();
    Ok(v)
}

#[derive(Debug, Clone, Serialize)]
pub struct PrPolCount {
    pub base: String,
    pub k: usize,
    pub l: u64,
    pub polyfun: Order,
    pub formula: Order,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force: Option<u64>,
    pub crosscheck: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// `|PrPol(R_k)| = L · |PolFun(R)|^k`, compared with brute force when feasible.
pub fn count_prpol_dual(base: &RingHandle, k: usize, budget: &Budget) -> Result<PrPolCount> {
    let l = compute_l(base, budget)?;
    let polyfun = count_polyfun(base, CountMethod::Span, budget)?;
    let formula = Order::from_u64(l).mul(&polyfun.pow(k as u64));
    let mut out =
        PrPolCount { base: base.spec().into(), k, l, polyfun, formula, brute_force: None, crosscheck: Status::Skipped, note: None };
    match prpol_dual_tables(base, k, budget) {
        Ok(tables) => {
            let b = tables.len() as u64;
            out.crosscheck = if Order::from_u64(b) == out.formula { Status::Pass } else { Status::Fail };
            out.brute_force = Some(b);
        }
        Err(e) if e.is_budget_or_unsupported() => out.note = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(out)
}

/// Over a commutative ring, λ_f is locally bijective iff `f′` takes only unit values.
pub fn commutative_lambda_equiv_check(base: &RingHandle, mode: Mode, seed: u64, budget: &Budget) -> Result<Report> {
    if !base.is_commutative() {
        return Err(Error::NotCommutative(base.spec().into()));
    }
    let d = monic_central_null(base)?.degree as usize;
    exhaustive_or_budget(base.size(), d, mode, "polynomials to test", budget)?;
    let layout = PairLayout::new(base);
    let (n, w) = (base.size() as usize, layout.width());
    let unit: Vec<bool> = base.elements().map(|a| is_unit(base, a)).collect();
    let mut memo: HashMap<Vec<Elem>, bool> = HashMap::new();
    let mut witness = None;
    let mut tested = 0u64;
    let mut visit = |coeffs: &[Elem], sig: &[Elem]| {
        tested += 1;
        let local = *memo.entry(sig[n..w].to_vec()).or_insert_with(|| rows_bijective(&layout, &sig[n..w]));
        let units = sig[w..].iter().all(|&y| unit[y as usize]);
        if local != units && witness.is_none() {
            witness = Some(json!({"f": coeffs, "lambda_local": local, "derivative_units": units}));
        }
    };
    let mut report = Report::new("lambda-derivative", base.spec(), 0);
    report.mode = mode;
    match mode {
        Mode::Exhaustive => layout.enumerator_with_derivative(d).for_each(|c, s| {
            visit(c, s);
            ControlFlow::Continue(())
        }),
        Mode::Sampled => {
            report.seed = Some(seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..DEFAULT_SAMPLES {
                let f = random_poly(base, d, &mut rng);
                let mut sig = layout.sig_of(&f);
                sig.extend(table_on(&f.derivative(), base));
                visit(&(0..d).map(|j| f.coeff(j)).collect::<Vec<_>>(), &sig);
            }
        }
    }
    report.count("tested", tested);
    report.push(Check::from_witness("lambda local iff derivative values are units", witness).with_mode(mode));
    Ok(report.finish())
}
