//! Sets of functions on a ring closed under composition.

use std::collections::{HashMap, HashSet, VecDeque};
use std::ops::ControlFlow;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::budget::Budget;
use crate::enumerate::PolyEnumerator;
use crate::error::{Error, Result};
use crate::funspace::{count_polyfun, dual_opts, is_bijective, CountMethod, FuncTable};
use crate::lambda::assemble;
use crate::nullpoly::{dual_null_degree, monic_central_null};
use crate::pairs::{PairLayout, PairSpan};
use crate::perm::{prpol_dual_tables, pure_dual_table, pure_pp_pairs};
use crate::poly::{same_ring, Poly};
use crate::report::{Check, Mode, Report};
use crate::ring::analysis::chain_analysis;
use crate::ring::{dual_of, DualView, Elem, RingHandle};

/// `(f ∘ g)[i] = f[g[i]]`.
pub fn compose_tables(f: &FuncTable, g: &FuncTable) -> Result<FuncTable> {
    if !same_ring(&f.ring, &g.ring) {
        return Err(Error::WrongRing { expected: f.ring.spec().into(), got: g.ring.spec().into() });
    }
    let out = compose(&f.out, &g.out);
    Ok(FuncTable { ring: f.ring.clone(), bijective: is_bijective(&out), out })
}

pub fn compose(f: &[Elem], g: &[Elem]) -> Vec<Elem> {
    g.iter().map(|&x| f[x as usize]).collect()
}

pub fn invert(f: &[Elem]) -> Vec<Elem> {
    let mut out = vec![0; f.len()];
    for (i, &y) in f.iter().enumerate() {
        out[y as usize] = i as Elem;
    }
    out
}

pub fn identity(n: usize) -> Vec<Elem> {
    (0..n as Elem).collect()
}

/// Tables interned by content.
#[derive(Debug, Clone, Default)]
pub struct TablePool {
    tables: Vec<Vec<Elem>>,
    index: HashMap<Vec<Elem>, u32>,
}

impl TablePool {
    /// Returns the id and whether the table was new.
    pub fn intern(&mut self, t: Vec<Elem>) -> (u32, bool) {
        if let Some(&i) = self.index.get(&t) {
            return (i, false);
        }
        let i = self.tables.len() as u32;
        self.index.insert(t.clone(), i);
        self.tables.push(t);
        (i, true)
    }

    pub fn contains(&self, t: &[Elem]) -> bool {
        self.index.contains_key(t)
    }

    pub fn get(&self, i: u32) -> &[Elem] {
        &self.tables[i as usize]
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<Elem>> {
        self.tables.iter()
    }
}

#[derive(Debug, Clone)]
pub struct PermSet {
    pub ring: RingHandle,
    pub tables: TablePool,
    pub closed: bool,
    pub generators: Option<Vec<String>>,
}

impl PermSet {
    pub fn new(ring: &RingHandle) -> PermSet {
        PermSet { ring: ring.clone(), tables: TablePool::default(), closed: false, generators: None }
    }

    pub fn from_tables(ring: &RingHandle, tables: impl IntoIterator<Item = Vec<Elem>>) -> PermSet {
        let mut s = PermSet::new(ring);
        for t in tables {
            s.insert(t);
        }
        s
    }

    pub fn insert(&mut self, t: Vec<Elem>) -> bool {
        self.tables.intern(t).1
    }

    pub fn contains(&self, t: &[Elem]) -> bool {
        self.tables.contains(t)
    }

    pub fn order(&self) -> usize {
        self.tables.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<Elem>> {
        self.tables.iter()
    }

    /// Members sorted by content.
    pub fn sorted(&self) -> Vec<&Vec<Elem>> {
        let mut v: Vec<&Vec<Elem>> = self.iter().collect();
        v.sort();
        v
    }

    pub fn as_set(&self) -> HashSet<&[Elem]> {
        self.iter().map(Vec::as_slice).collect()
    }

    pub fn contains_identity(&self) -> bool {
        self.iter().next().is_some_and(|t| self.contains(&identity(t.len())))
    }

    /// Composition of any two members is a member.
    pub fn is_closed_under_composition(&self, budget: &Budget) -> Result<bool> {
        let n = self.order() as u128;
        if n * n > budget.tuples as u128 {
            return Err(Error::budget("compositions for closedness", n * n, budget.tuples as u128));
        }
        Ok(self.iter().all(|f| self.iter().all(|g| self.contains(&compose(f, g)))))
    }

    /// All pairs commute, or `None` when over budget.
    pub fn is_abelian(&self, budget: &Budget) -> Option<bool> {
        let n = self.order() as u128;
        (n * n <= budget.tuples as u128).then(|| {
            let v: Vec<&Vec<Elem>> = self.iter().collect();
            v.iter().enumerate().all(|(i, f)| v[i + 1..].iter().all(|g| compose(f, g) == compose(g, f)))
        })
    }
}

/// Smallest composition-closed superset of the generators.
pub fn closure(generators: &PermSet, budget: &Budget) -> Result<PermSet> {
    let gens: Vec<&Vec<Elem>> = generators.sorted();
    if gens.is_empty() {
        return Err(Error::WrongRing { expected: "a nonempty generating set".into(), got: "no tables".into() });
    }
    let mut out = PermSet::new(&generators.ring);
    let mut active: Vec<Vec<Elem>> = Vec::new();
    let mut work = 0u128;
    for g in gens {
        if out.contains(g) {
            continue;
        }
        active.push(g.clone());
        let last = active.len() - 1;
        // Old members only need products with the new generator.
        let mut queue: VecDeque<(Vec<Elem>, bool)> = out.iter().map(|t| (t.clone(), false)).collect();
        out.insert(g.clone());
        queue.push_back((g.clone(), true));
        while let Some((x, fresh)) = queue.pop_front() {
            let from = if fresh { 0 } else { last };
            for h in &active[from..] {
                work += 1;
                let y = compose(&x, h);
                if out.insert(y.clone()) {
                    if out.order() as u64 > budget.tables {
                        return Err(Error::budget("closure size", out.order() as u128, budget.tables as u128));
                    }
                    queue.push_back((y, true));
                }
            }
            if work > budget.tuples as u128 {
                return Err(Error::budget("closure compositions", work, budget.tuples as u128));
            }
        }
    }
    out.closed = true;
    out.generators = Some(active.iter().map(|t| format!("{t:?}")).collect());
    Ok(out)
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct GroupReport {
    pub order: u64,
    pub abelian: Option<bool>,
    pub contains_identity: bool,
    pub closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_in: Option<(u64, bool)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersection_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_covers: Option<bool>,
}

fn group_report(s: &PermSet, budget: &Budget) -> Result<GroupReport> {
    Ok(GroupReport {
        order: s.order() as u64,
        abelian: s.is_abelian(budget),
        contains_identity: s.contains_identity(),
        closed: s.is_closed_under_composition(budget)?,
        ..Default::default()
    })
}

/// One polynomial per distinct function, lowest coefficient tuple first.
pub fn function_representatives(base: &RingHandle, budget: &Budget) -> Result<Vec<Poly>> {
    let d = monic_central_null(base)?.degree as usize;
    let e = PolyEnumerator::tables(base, d);
    e.check_budget("polynomials to enumerate", budget.tuples)?;
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    let mut reps = Vec::new();
    e.for_each(|c, t| {
        if seen.insert(t.to_vec()) {
            reps.push(Poly::new(base, c.to_vec()));
        }
        ControlFlow::Continue(())
    });
    Ok(reps)
}

#[derive(Debug, Clone)]
pub struct Pxk {
    pub set: PermSet,
    pub group: GroupReport,
    pub report: Report,
}

/// `P_{x,k}`: permutations of `R_k` induced by `x + Σ f_i β_i`.
pub fn build_pxk(base: &RingHandle, k: usize, seed: u64, budget: &Budget) -> Result<Pxk> {
    let reps = function_representatives(base, budget)?;
    let m = reps.len() as u128;
    let order = m.saturating_pow(k as u32);
    if order > budget.tables as u128 {
        return Err(Error::budget("P_x,k members", order, budget.tables as u128));
    }
    let dual = dual_of(base, k, &dual_opts())?;
    let x = Poly::x(base);
    let table_of = |fs: &[Poly]| -> Result<Vec<Elem>> {
        let mut comps = vec![x.clone()];
        comps.extend_from_slice(fs);
        let f = assemble(&comps, &dual)?;
        Ok(dual.elements().map(|a| f.eval(a)).collect())
    };
    let mut set = PermSet::new(&dual);
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let fs: Vec<Poly> = idx.iter().map(|&i| reps[i].clone()).collect();
        set.insert(table_of(&fs)?);
        tuples.push(idx.clone());
        let Some(j) = (0..k).find(|&j| idx[j] + 1 < reps.len()) else { break };
        idx[j] += 1;
        idx[..j].iter_mut().for_each(|i| *i = 0);
    }
    let mut group = group_report(&set, budget)?;
    let mut report = Report::new("groups/pxk", base.spec(), k);
    let polyfun = count_polyfun(base, CountMethod::Span, budget)?;
    let expected = polyfun.pow(k as u64);
    report.count("order", set.order());
    report.count("expected_order", &expected);
    report.push(Check::new("order is |PolFun|^k", expected.to_u64() == Some(set.order() as u64)));
    report.push(match group.abelian {
        Some(a) => Check::new("abelian", a).with_mode(Mode::Exhaustive),
        None => Check::skipped("abelian", "pair count over tuple budget"),
    });
    report.push(Check::new("closed under composition", group.closed));
    report.push(Check::new("contains identity", group.contains_identity));
    // [x + Σ f_i β_i] ∘ [x + Σ g_i β_i] = [x + Σ (f_i + g_i) β_i]
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = if tuples.len() * tuples.len() <= 4096 {
        tuples.iter().flat_map(|s| tuples.iter().map(move |t| (s.clone(), t.clone()))).collect::<Vec<_>>()
    } else {
        (0..1000)
            .map(|_| (tuples[rng.gen_range(0..tuples.len())].clone(), tuples[rng.gen_range(0..tuples.len())].clone()))
            .collect()
    };
    let mut bad = None;
    for (s, t) in &pairs {
        let fs: Vec<Poly> = s.iter().map(|&i| reps[i].clone()).collect();
        let gs: Vec<Poly> = t.iter().map(|&i| reps[i].clone()).collect();
        let sum: Vec<Poly> = fs.iter().zip(&gs).map(|(f, g)| f.add(g)).collect();
        if compose(&table_of(&fs)?, &table_of(&gs)?) != table_of(&sum)? && bad.is_none() {
            bad = Some(json!({"f": fs.iter().map(Poly::to_index_string).collect::<Vec<_>>(),
                              "g": gs.iter().map(Poly::to_index_string).collect::<Vec<_>>()}));
        }
    }
    let mode = if pairs.len() == tuples.len() * tuples.len() { Mode::Exhaustive } else { Mode::Sampled };
    report.push(Check::from_witness("composition adds components", bad).with_mode(mode));
    set.closed = group.closed;
    group.order = set.order() as u64;
    Ok(Pxk { set, group, report: report.finish() })
}

/// Tables on `R_k` of the pure polynomials permuting `R_k`.
pub fn build_pr(base: &RingHandle, k: usize, budget: &Budget) -> Result<PermSet> {
    let pairs = pure_pp_pairs(base, budget)?;
    let dual = dual_of(base, k, &dual_opts())?;
    let view = DualView::of(&dual)?;
    let layout = PairLayout::new(base);
    Ok(PermSet::from_tables(&dual, pairs.iter().map(|sig| pure_dual_table(&layout, sig, &view))))
}

/// `[x + h]_{R_k}` for null `h` that permute `R_k`; one per distinct λ table.
pub fn stabilizer_stk(base: &RingHandle, k: usize, budget: &Budget) -> Result<(PermSet, Report)> {
    let d1 = dual_null_degree(base, 1)? as usize;
    let span = PairSpan::build(base, d1);
    let ratio = span.null_lambda_count();
    if !ratio.le(budget.tables as u128) {
        return Err(Error::budget("null lambda tables", ratio.to_u128().unwrap_or(u128::MAX), budget.tables as u128));
    }
    let dual = dual_of(base, k, &dual_opts())?;
    let view = DualView::of(&dual)?;
    let layout = &span.layout;
    let sig_x = layout.sig_of(&Poly::x(base));
    let mut set = PermSet::new(&dual);
    span.for_each_null_pair(|sig_h| {
        let sig: Vec<Elem> = sig_x.iter().zip(sig_h).map(|(&a, &b)| base.add(a, b)).collect();
        let t = pure_dual_table(layout, &sig, &view);
        if is_bijective(&t) {
            set.insert(t);
        }
    });
    let n = base.size() as usize;
    let mut report = Report::new("groups/stabilizer", base.spec(), k);
    let order = set.order() as u64;
    let ratio = ratio.to_u64().expect("within table budget");
    report.count("order", order);
    report.count("null_anull_index", ratio);
    let moved = set.iter().find_map(|t| (0..n).find(|&a| t[a] != a as Elem).map(|a| json!({"a": a, "image": t[a]})));
    report.push(Check::from_witness("members fix R pointwise", moved));
    report.push(Check::new("order at most [Null:ANull]", order <= ratio));
    let info = chain_analysis(base);
    let chain_c_gt_1 = info.is_chain && info.ramification.is_some();
    report.push(if chain_c_gt_1 {
        Check::new("order equals [Null:ANull]", order == ratio)
    } else {
        Check::skipped("order equals [Null:ANull]", "base is not a chain ring with c > 1")
            .with_note(format!("{order} of {ratio}"))
    });
    Ok((set, report.finish()))
}

/// Restriction of a table on `R_k` to the prefix `R_j`.
fn restrict(t: &[Elem], len: usize) -> Option<Vec<Elem>> {
    let r = &t[..len];
    r.iter().all(|&y| (y as usize) < len).then(|| r.to_vec())
}

/// The closures of `St_k` and `St_j` have equal order, and restriction to `R_j` is
/// an injective homomorphism on sampled pairs.
pub fn stab_iso_order_check(base: &RingHandle, k: usize, j: usize, seed: u64, budget: &Budget) -> Result<Report> {
    let (hi, lo) = if k >= j { (k, j) } else { (j, k) };
    let big = closure(&stabilizer_stk(base, hi, budget)?.0, budget)?;
    let small = closure(&stabilizer_stk(base, lo, budget)?.0, budget)?;
    let len = (base.size() as usize).pow(lo as u32 + 1);
    let mut report = Report::new("groups/stab-iso", base.spec(), hi);
    report.count(format!("closure_order_k{hi}"), big.order());
    report.count(format!("closure_order_k{lo}"), small.order());
    report.push(Check::new("closure orders equal", big.order() == small.order()));
    let members: Vec<&Vec<Elem>> = big.sorted();
    let images: Option<HashSet<Vec<Elem>>> = members.iter().map(|t| restrict(t, len)).collect();
    let Some(images) = images else {
        report.push(Check::new("restriction preserves R_j", false));
        return Ok(report.finish());
    };
    report.push(Check::new("restriction injective", images.len() == members.len()));
    report.push(Check::new("restriction lands in closure of St_j", images.iter().all(|t| small.contains(t))));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bad = (0..50).find_map(|_| {
        let f = members[rng.gen_range(0..members.len())];
        let g = members[rng.gen_range(0..members.len())];
        let lhs = restrict(&compose(f, g), len);
        let rhs = compose(&restrict(f, len)?, &restrict(g, len)?);
        (lhs.as_ref() != Some(&rhs)).then(|| json!({"f": f, "g": g}))
    });
    report.seed = Some(seed);
    report.push(Check::from_witness("restriction is a homomorphism", bad).with_mode(Mode::Sampled));
    Ok(report.finish())
}

#[derive(Debug, Clone)]
pub struct Semidirect {
    pub pxk: GroupReport,
    pub pr: GroupReport,
    pub prpol_order: u64,
    pub report: Report,
}

/// `PrPol(R_k) = P_{x,k} ⋊ P_R(R_k)` over a commutative base.
pub fn semidirect_check(base: &RingHandle, k: usize, seed: u64, budget: &Budget) -> Result<Semidirect> {
    if !base.is_commutative() {
        return Err(Error::NotCommutative(base.spec().into()));
    }
    let prpol = PermSet::from_tables(base, prpol_dual_tables(base, k, budget)?);
    let pxk = build_pxk(base, k, seed, budget)?;
    let pr = build_pr(base, k, budget)?;
    let mut report = Report::new("semidirect", base.spec(), k);
    report.absorb("pxk", pxk.report.clone());
    let (a, b, g) = (pxk.set.order() as u64, pr.order() as u64, prpol.order() as u64);
    report.count("pxk_order", a);
    report.count("pr_order", b);
    report.count("prpol_order", g);
    report.push(Check::new("P_x,k inside PrPol", pxk.set.iter().all(|t| prpol.contains(t))));
    report.push(Check::new("P_R inside PrPol", pr.iter().all(|t| prpol.contains(t))));
    let mut pr_group = group_report(&pr, budget)?;
    report.push(Check::new("P_R closed under composition", pr_group.closed));
    let full = (g as u128) * (a as u128) <= budget.tuples as u128;
    let conjugators: Vec<&Vec<Elem>> = if full { prpol.sorted() } else { pxk.set.iter().chain(pr.iter()).collect() };
    let not_normal = conjugators.iter().find_map(|c| {
        let ci = invert(c);
        pxk.set.iter().find(|p| !pxk.set.contains(&compose(&compose(c, p), &ci))).map(|p| json!({"g": c, "p": p}))
    });
    let normal = not_normal.is_none();
    let check = Check::from_witness("P_x,k normal in PrPol", not_normal);
    report.push(if full { check.with_mode(Mode::Exhaustive) } else { check.with_note("conjugated by P_x,k and P_R only") });
    let inter = pxk.set.iter().filter(|t| pr.contains(t)).count() as u64;
    report.count("intersection_order", inter);
    report.push(Check::new("trivial intersection", inter == 1));
    report.push(Check::new("orders multiply", a * b == g));
    let covers = if (a as u128) * (b as u128) <= budget.tuples as u128 {
        let products: HashSet<Vec<Elem>> = pxk.set.iter().flat_map(|p| pr.iter().map(move |q| compose(p, q))).collect();
        let ok = products.len() as u64 == g && products.iter().all(|t| prpol.contains(t));
        report.push(Check::new("products cover PrPol", ok));
        Some(ok)
    } else {
        report.push(Check::skipped("products cover PrPol", "product count over tuple budget"));
        None
    };
    let mut pxk_group = pxk.group.clone();
    pxk_group.normal_in = Some((g, normal));
    pxk_group.intersection_order = Some(inter);
    pxk_group.product_covers = covers;
    pr_group.intersection_order = Some(inter);
    Ok(Semidirect { pxk: pxk_group, pr: pr_group, prpol_order: g, report: report.finish() })
}

/// Splits the closure of `P_R(R_k)` into the part fixing `R` and its restriction to `R`.
pub fn quotient_order_check(base: &RingHandle, k: usize, budget: &Budget) -> Result<Report> {
    let n = base.size() as usize;
    let pr = build_pr(base, k, budget)?;
    let g = closure(&pr, budget)?;
    let (st, _) = stabilizer_stk(base, k, budget)?;
    let st_closure = closure(&st, budget)?;
    let fixes = |t: &[Elem]| (0..n).all(|a| t[a] == a as Elem);
    let stb: HashSet<&[Elem]> = g.iter().map(Vec::as_slice).filter(|t| fixes(t)).collect();
    let psi: HashSet<Vec<Elem>> = g.iter().map(|t| t[..n].to_vec()).collect();
    let psi_raw: HashSet<Vec<Elem>> = pr.iter().map(|t| t[..n].to_vec()).collect();
    let mut report = Report::new("groups/quotient", base.spec(), k);
    report.count("pr_order", pr.order());
    report.count("pr_closure_order", g.order());
    report.count("stb_order", stb.len());
    report.count("st_order", st.order());
    report.count("st_closure_order", st_closure.order());
    report.count("restriction_image_order", psi.len());
    report.push(Check::new("closure order = |Stb_k| * |restriction image|", g.order() == stb.len() * psi.len()));
    report.push(Check::new("St_k inside its closure inside Stb_k", st_closure.iter().all(|t| stb.contains(t.as_slice()))));
    let pr_closed = pr.order() == g.order();
    report.push(if pr_closed {
        Check::new("L = |restriction of P_R| * |St_k|", pr.order() == psi_raw.len() * st.order())
    } else {
        Check::skipped("L = |restriction of P_R| * |St_k|", "P_R is not closed under composition")
    });
    let info = chain_analysis(base);
    if info.is_chain && info.ramification.is_some() {
        let d = monic_central_null(base)?.degree as usize;
        let e = PolyEnumerator::tables(base, d);
        e.check_budget("polynomials to enumerate", budget.tuples)?;
        let mut prpol_r: HashSet<Vec<Elem>> = HashSet::new();
        e.for_each(|_, t| {
            if is_bijective(t) {
                prpol_r.insert(t.to_vec());
            }
            ControlFlow::Continue(())
        });
        let closed = closure(&PermSet::from_tables(base, prpol_r), budget)?;
        let same = closed.order() == psi.len() && psi.iter().all(|t| closed.contains(t));
        report.count("prpol_r_closure_order", closed.order());
        report.push(Check::new("restriction image is the closure of PrPol(R)", same));
    } else {
        report.push(Check::skipped("restriction image is the closure of PrPol(R)", "base is not a chain ring with c > 1"));
    }
    Ok(report.finish())
}
