//! Acceptance criteria, run at zero tolerance. Prints one PASS/FAIL line per
//! criterion and exits non-zero if any fails.
//!
//! Expected values come from `oracle`, which rebuilds every ring from its
//! element encoding and evaluates by brute force.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod oracle;

use std::collections::{HashMap, HashSet};
use std::fmt::Display;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use oracle::{all_coeffs, closure, compose, dual_digits, dual_pack, is_bijective, Model};
use ringlab_core::funspace::{
    count_polyfun, count_polyfun_dual, ideal_stats, is_anull, is_null, is_nullprime, null_decomposition_check, CountMethod,
};
use ringlab_core::groups::{build_pxk, quotient_order_check, semidirect_check, stab_iso_order_check, stabilizer_stk};
use ringlab_core::lambda::{dual_eval_via_lemma, lambda_eval};
use ringlab_core::perm::{
    chain_redundancy_suite, cherper_suite, compute_l, count_prpol_dual, element_order_check, is_pp, is_pp_dual,
    p_torsion_square_check,
};
use ringlab_core::ring::analysis::{center, inverse, jacobson_radical, semicommutativity_check, sum_of_units_reachable, unit_set};
use ringlab_core::ring::axioms::{validate_axioms, AxiomMode};
use ringlab_core::verify::{run_suite, Suite, VerifyConfig};
use ringlab_core::{construct_ring, dual_of, Budget, ConstructOptions, DualView, Mode, Poly, Report, Ring, RingHandle, Status};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const BASES: [&str; 11] = [
    "zn:4",
    "zn:8",
    "zn:9",
    "gf:2",
    "gf:3",
    "gf:4",
    "ut:2:gf:2",
    "mat:2:gf:2",
    "prod:gf:2+gf:2",
    "dual:1:zn:4",
    "dual:1:ut:2:gf:2",
];

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e2s(e: impl Display) -> String {
    e.to_string()
}

fn ring(spec: &str) -> Result<RingHandle, String> {
    construct_ring(spec).map_err(e2s)
}

fn dual(base: &RingHandle, k: usize) -> Result<RingHandle, String> {
    dual_of(base, k, &ConstructOptions { materialize_duals: true, ..Default::default() }).map_err(e2s)
}

/// No check failed.
fn clean(r: &Report) -> Result<(), String> {
    let bad: Vec<&str> = r.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.as_str()).collect();
    ensure!(bad.is_empty(), "{} {}: failed {:?}", r.suite, r.spec, bad);
    Ok(())
}

/// Every named check ran and passed.
fn passed(r: &Report, names: &[&str]) -> Result<(), String> {
    clean(r)?;
    for name in names {
        match r.check(name) {
            Some(c) if c.status == Status::Pass => {}
            Some(c) => return Err(format!("{} {}: `{name}` is {:?}", r.suite, r.spec, c.status)),
            None => return Err(format!("{} {}: no check `{name}`", r.suite, r.spec)),
        }
    }
    Ok(())
}

fn count(r: &Report, key: &str) -> Option<u64> {
    r.counts.get(key).and_then(Value::as_u64)
}

fn same_tables(lib: &Ring, m: &Model) -> Result<(), String> {
    ensure!(lib.size() as usize == m.n, "{}: size {} vs oracle {}", lib.spec(), lib.size(), m.n);
    ensure!(lib.one() == m.one, "{}: one is {} vs oracle {}", lib.spec(), lib.one(), m.one);
    for a in m.elems() {
        for b in m.elems() {
            ensure!(lib.add(a, b) == m.add(a, b), "{}: {a}+{b}", lib.spec());
            ensure!(lib.mul(a, b) == m.mul(a, b), "{}: {a}*{b}", lib.spec());
        }
    }
    Ok(())
}

/// Null on the model, checked by evaluation.
fn null_on(m: &Model, coeffs: &[u32]) -> bool {
    m.elems().all(|x| m.eval(coeffs, x) == 0)
}

/// Pure coefficients embedded in `R_k`: index `c` is `c + 0 β`.
fn embedded_table(md: &Model, coeffs: &[u32]) -> Vec<u32> {
    md.table(coeffs)
}

/// Coefficients of `f_0 + Σ f_i β_i` as elements of `R_k`.
fn assemble(comps: &[Vec<u32>], s: usize) -> Vec<u32> {
    let len = comps.iter().map(Vec::len).max().unwrap_or(0);
    (0..len).map(|j| dual_pack(&comps.iter().map(|c| c.get(j).copied().unwrap_or(0)).collect::<Vec<_>>(), s)).collect()
}

fn poly_mul(m: &Model, f: &[u32], g: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = m.add(out[i + j], m.mul(a, b));
        }
    }
    out
}

fn lambda_rows_bijective(m: &Model, coeffs: &[u32]) -> bool {
    m.elems().all(|y| is_bijective(&m.elems().map(|z| m.lambda(coeffs, y, z)).collect::<Vec<_>>()))
}

fn lambda_zero(m: &Model, coeffs: &[u32]) -> bool {
    m.elems().all(|y| m.elems().all(|z| m.lambda(coeffs, y, z) == 0))
}

/// Stabilizer members `[x + h]` on `R_k` for null `h` of degree `< bound`,
/// together with the distinct tables of `h` itself on `R_k`.
fn oracle_stabilizer(m: &Model, md: &Model, bound: usize) -> (HashSet<Vec<u32>>, HashSet<Vec<u32>>) {
    let mut st = HashSet::new();
    let mut hs = HashSet::new();
    for h in all_coeffs(m.n, bound) {
        if h[0] != 0 || !null_on(m, &h) {
            continue;
        }
        let t = embedded_table(md, &h);
        let xh: Vec<u32> = md.elems().map(|x| md.add(x, t[x as usize])).collect();
        if is_bijective(&xh) {
            st.insert(xh);
        }
        hs.insert(t);
    }
    (st, hs)
}

/// Permutations of `R_k` induced by pure polynomials of degree `< bound`.
fn oracle_pure_perms(m: &Model, md: &Model, bound: usize) -> HashSet<Vec<u32>> {
    all_coeffs(m.n, bound).map(|c| embedded_table(md, &c)).filter(|t| is_bijective(t)).collect()
}

/// `P_{x,k}` from function tables: `a + Σ b_i β_i ↦ a + Σ (b_i + f_i(a)) β_i`.
fn oracle_pxk(m: &Model, k: usize) -> HashSet<Vec<u32>> {
    let funs: Vec<Vec<u32>> = m.polyfun_tables().into_iter().collect();
    let size = m.n.pow(k as u32 + 1);
    let mut out = HashSet::new();
    let mut idx = vec![0usize; k];
    loop {
        let t: Vec<u32> = (0..size as u32)
            .map(|x| {
                let mut d = dual_digits(x, m.n, k);
                for i in 0..k {
                    d[i + 1] = m.add(d[i + 1], funs[idx[i]][d[0] as usize]);
                }
                dual_pack(&d, m.n)
            })
            .collect();
        out.insert(t);
        let Some(j) = (0..k).find(|&j| idx[j] + 1 < funs.len()) else { break };
        idx[j] += 1;
        idx[..j].iter_mut().for_each(|i| *i = 0);
    }
    out
}

/// A monic polynomial that the oracle confirms is null on `target`.
fn confirmed_null(target: &Model, coeffs: &[u32], what: &str) -> Result<usize, String> {
    ensure!(null_on(target, coeffs), "oracle: {what} {coeffs:?} is not null");
    Ok(coeffs.len() - 1)
}

// 1 ----------------------------------------------------------------------

fn structure() -> Outcome {
    // Only library work counts towards the time limit; the oracle is slower by design.
    let mut lib_time = Duration::ZERO;
    let mut timed = |f: &mut dyn FnMut() -> Result<(), String>| {
        let t = Instant::now();
        let r = f();
        lib_time += t.elapsed();
        r
    };
    let mut duals = 0;
    for spec in BASES {
        let m = Model::parse(spec);
        let mut r = None;
        timed(&mut || {
            let x = ring(spec)?;
            passed(&validate_axioms(&x, AxiomMode::Exhaustive), &[])?;
            r = Some(x);
            Ok(())
        })?;
        let r = r.unwrap();
        same_tables(&r, &m)?;
        for k in 1..=2usize {
            if m.n.pow(k as u32 + 1) > 4096 {
                continue;
            }
            duals += 1;
            let md = Model::dual(k, &m);
            let want = dual_structure_oracle(&m, &md, k, spec)?;
            let mut d = None;
            let mut got = None;
            timed(&mut || {
                let x = dual(&r, k)?;
                let cfg = VerifyConfig { k, mode: Some(Mode::Exhaustive), ..Default::default() };
                passed(&run_suite(Suite::DualStructure, &r, &cfg).map_err(e2s)?, &["product formula", "inverse formula"])?;
                let inverses: Vec<Option<u32>> = x.elements().map(|e| inverse(&x, e).ok()).collect();
                got = Some(DualStructure { inverses, units: unit_set(&x), radical: jacobson_radical(&x), center: center(&x) });
                d = Some(x);
                Ok(())
            })?;
            same_tables(&d.unwrap(), &md)?;
            let got = got.unwrap();
            ensure!(got.inverses == want.inverses, "dual:{k}:{spec}: library inverses");
            ensure!(got.units == want.units, "dual:{k}:{spec}: library unit set");
            ensure!(got.radical == want.radical, "dual:{k}:{spec}: library radical");
            ensure!(got.center == want.center, "dual:{k}:{spec}: library center");
        }
    }
    let secs = lib_time.as_secs_f64();
    ensure!(secs < 30.0, "library work took {secs:.1} s");
    Ok(format!("{} bases, {duals} dual rings, library time {secs:.1} s", BASES.len()))
}

struct DualStructure {
    inverses: Vec<Option<u32>>,
    units: Vec<u32>,
    radical: Vec<u32>,
    center: Vec<u32>,
}

/// Units, inverses, radical and center of `R_k` by brute force, checked against
/// the formulas in terms of `R`.
fn dual_structure_oracle(m: &Model, md: &Model, k: usize, spec: &str) -> Result<DualStructure, String> {
    let s = m.n;
    let inv_b = m.inverses();
    let inv_d = md.inverses();
    for x in md.elems() {
        let d = dual_digits(x, s, k);
        let expected = inv_b[d[0] as usize].map(|i0| {
            let mut out = vec![i0];
            out.extend(d[1..].iter().map(|&a| m.neg(m.mul(m.mul(i0, a), i0))));
            dual_pack(&out, s)
        });
        ensure!(inv_d[x as usize] == expected, "dual:{k}:{spec}: inverse of {x}");
    }
    let units: Vec<u32> = md.elems().filter(|&x| inv_d[x as usize].is_some()).collect();

    let jb: HashSet<u32> = m.radical(&inv_b).into_iter().collect();
    let radical = md.radical(&inv_d);
    let formula: Vec<u32> = md.elems().filter(|&x| jb.contains(&dual_digits(x, s, k)[0])).collect();
    ensure!(radical == formula, "dual:{k}:{spec}: J(R_k) differs from J(R) + Σ R β_i");

    let cb: HashSet<u32> = m.center().into_iter().collect();
    let center = md.center();
    let formula: Vec<u32> = md.elems().filter(|&x| dual_digits(x, s, k).iter().all(|a| cb.contains(a))).collect();
    ensure!(center == formula, "dual:{k}:{spec}: center differs from C(R) + Σ C(R) β_i");
    Ok(DualStructure { inverses: inv_d, units, radical, center })
}

// 2 ----------------------------------------------------------------------

fn evaluation_lemma() -> Outcome {
    let mut evaluations = 0u64;
    for spec in ["zn:4", "ut:2:gf:2"] {
        let r = ring(spec)?;
        let m = Model::parse(spec);
        for k in 1..=2usize {
            let cfg = VerifyConfig { k, mode: Some(Mode::Exhaustive), ..Default::default() };
            let rep = run_suite(Suite::EvalLemma, &r, &cfg).map_err(e2s)?;
            passed(&rep, &["lemma matches direct evaluation"])?;
            let d = dual(&r, k)?;
            ensure!(count(&rep, "evaluations") == Some(500 * d.size() as u64), "{spec} k={k}: not exhaustive");
            let md = Model::dual(k, &m);
            let view = DualView::of(&d).map_err(e2s)?;
            let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
            for _ in 0..500 {
                let comps: Vec<Vec<u32>> = (0..=k).map(|_| (0..5).map(|_| rng.gen_range(0..m.n as u32)).collect()).collect();
                let polys: Vec<Poly> = comps.iter().map(|c| Poly::new(&r, c.clone())).collect();
                let f = assemble(&comps, m.n);
                for x in md.elems() {
                    let (a, bs) = view.decode(x);
                    let digits = dual_digits(x, m.n, k);
                    ensure!(digits[0] == a && digits[1..] == bs[..], "{spec}: decode {x}");
                    let lemma = dual_eval_via_lemma(&polys, &d, a, &bs).map_err(e2s)?;
                    ensure!(lemma == md.eval(&f, x), "{spec} k={k}: {comps:?} at {x}");
                    evaluations += 1;
                }
            }
        }
    }
    Ok(format!("{evaluations} oracle evaluations, 0 mismatches"))
}

// 3 ----------------------------------------------------------------------

fn paper_example() -> Outcome {
    let ut = ring("ut:2:gf:2")?;
    let m = Model::parse("ut:2:gf:2");
    let m1 = Model::dual(1, &m);
    // Cells (1,1), (1,2), (2,2), least significant first: 5 = I, 7 = [[1,1],[0,1]], 6 = [[0,1],[0,1]], 2 = [[0,1],[0,0]].
    ensure!(m.one == 5, "oracle identity is {}", m.one);
    let coeffs = vec![0, 0, 5, 0, 5];
    let h = Poly::new(&ut, coeffs.clone());
    ensure!(is_null(&h) && null_on(&m, &coeffs), "x^4 - x^2 is not null");
    let deriv: Vec<u32> = coeffs.iter().enumerate().map(|(j, &a)| m.times(j as u64, a)).skip(1).collect();
    ensure!(deriv.iter().all(|&c| c == 0), "oracle derivative {deriv:?}");
    ensure!(h.derivative().is_zero(), "library derivative {}", h.derivative().to_index_string());
    ensure!(is_nullprime(&h), "is_nullprime is false");
    ensure!(!is_anull(&h), "is_anull is true");
    ensure!(!null_on(&m1, &coeffs) && !lambda_zero(&m, &coeffs), "oracle finds x^4 - x^2 null on R_1");
    for y in m.elems() {
        for z in m.elems() {
            ensure!(lambda_eval(&h, y, z) == m.lambda(&coeffs, y, z), "λ({y},{z})");
        }
    }
    let (y, z) = (7, 6);
    ensure!(m.lambda(&coeffs, y, z) == 2, "oracle λ(7,6) = {}", m.lambda(&coeffs, y, z));
    ensure!(lambda_eval(&h, y, z) == 2, "λ(7,6) = {}", ut.format_elem(lambda_eval(&h, y, z)));
    Ok(format!("λ([[1,1],[0,1]], [[0,1],[0,1]]) = {}", ut.format_elem(2)))
}

// 4 ----------------------------------------------------------------------

fn null_decomposition() -> Outcome {
    let b = Budget::default();
    let f2 = ring("gf:2")?;
    let rep = null_decomposition_check(&f2, 1, 8, Mode::Exhaustive, 0, &b).map_err(e2s)?;
    let name = "null on R_k iff f0 in ANull and fi in Null";
    passed(&rep, &[name])?;
    ensure!(count(&rep, "tested") == Some(65_536), "gf:2 tested {:?}", count(&rep, "tested"));
    let m = Model::parse("gf:2");
    let m1 = Model::dual(1, &m);
    let polys: Vec<Vec<u32>> = all_coeffs(2, 8).collect();
    let mut null_pairs = 0u64;
    for f0 in &polys {
        let anull = null_on(&m, f0) && lambda_zero(&m, f0);
        for f1 in &polys {
            let direct = null_on(&m1, &assemble(&[f0.clone(), f1.clone()], 2));
            ensure!(direct == (anull && null_on(&m, f1)), "oracle gf:2: ({f0:?}, {f1:?})");
            null_pairs += direct as u64;
        }
    }
    ensure!(count(&rep, "null_on_dual") == Some(null_pairs), "null pairs {:?} vs oracle {null_pairs}", count(&rep, "null_on_dual"));

    // Null generators for biased sampling, confirmed by the oracle first.
    let cases: [(&str, Vec<u32>, Vec<u32>); 2] =
        [("zn:4", vec![0, 0, 3, 0, 1], vec![0, 0, 3, 0, 0, 0, 1]), ("ut:2:gf:2", vec![0, 0, 5, 0, 5], vec![0, 0, 0, 5, 0, 0, 0, 5])];
    for (spec, g, g1) in cases {
        let r = ring(spec)?;
        let rep = null_decomposition_check(&r, 1, 4, Mode::Sampled, 0, &b).map_err(e2s)?;
        passed(&rep, &[name])?;
        ensure!(count(&rep, "tested") == Some(10_000), "{spec}: tested {:?}", count(&rep, "tested"));
        let m = Model::parse(spec);
        let m1 = Model::dual(1, &m);
        confirmed_null(&m, &g, "g")?;
        confirmed_null(&m1, &g1, "g1")?;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut draw = |null_bias: &[u32]| -> Vec<u32> {
            let r: Vec<u32> = (0..4).map(|_| rng.gen_range(0..m.n as u32)).collect();
            if rng.gen_bool(0.5) {
                r
            } else {
                poly_mul(&m, &r, null_bias)
            }
        };
        let mut hits = 0;
        for i in 0..10_000 {
            let f0 = draw(if i % 2 == 0 { &g } else { &g1 });
            let f1 = draw(&g);
            let direct = null_on(&m1, &assemble(&[f0.clone(), f1.clone()], m.n));
            let criterion = null_on(&m, &f0) && lambda_zero(&m, &f0) && null_on(&m, &f1);
            ensure!(direct == criterion, "oracle {spec}: ({f0:?}, {f1:?})");
            let lib = [Poly::new(&r, f0), Poly::new(&r, f1)];
            ensure!(is_anull(&lib[0]) && is_null(&lib[1]) == criterion || !criterion && !(is_anull(&lib[0]) && is_null(&lib[1])),
                "library criterion on {spec}");
            hits += direct as u32;
        }
        ensure!(hits > 0, "{spec}: no null pairs drawn");
    }
    Ok(format!("65536 exhaustive pairs of degree < 8 over gf:2 ({null_pairs} null), 10^4 sampled on zn:4 and ut:2:gf:2"))
}

// 5 ----------------------------------------------------------------------

fn counting() -> Outcome {
    let b = Budget::default();
    for (spec, expected) in [("zn:4", 64u64), ("gf:2", 4)] {
        let oracle = Model::parse(spec).polyfun_tables().len() as u64;
        ensure!(oracle == expected, "oracle |PolFun({spec})| = {oracle}");
        let lib = count_polyfun(&ring(spec)?, CountMethod::Enumerate, &b).map_err(e2s)?;
        ensure!(lib.to_u64() == Some(expected), "|PolFun({spec})| = {lib:?}");
    }
    let mut dual_counts = Vec::new();
    for spec in ["gf:2", "zn:4"] {
        let c = count_polyfun_dual(&ring(spec)?, 1, &b).map_err(e2s)?;
        let oracle = Model::dual(1, &Model::parse(spec)).polyfun_tables().len() as u64;
        ensure!(c.formula.to_u64() == Some(oracle), "dual:1:{spec}: formula {:?} vs oracle span {oracle}", c.formula);
        ensure!(c.crosscheck == Status::Pass, "dual:1:{spec}: library span crosscheck {:?}", c.crosscheck);
        dual_counts.push(format!("|PolFun(dual:1:{spec})| = {oracle}"));
    }
    for spec in BASES {
        let r = ring(spec)?;
        let s = ideal_stats(&r, &b).map_err(e2s)?;
        ensure!(s.identity_holds(), "{spec}: idx_anull != idx_null * ratio");
        if r.size() <= 16 && spec != "mat:2:gf:2" {
            let oracle = Model::parse(spec).polyfun_tables().len() as u64;
            ensure!(s.idx_null.to_u64() == Some(oracle), "{spec}: idx_null {:?} vs oracle |PolFun| {oracle}", s.idx_null);
        }
    }
    Ok(format!("{}; index identity on all bases", dual_counts.join(", ")))
}

// 6 ----------------------------------------------------------------------

fn permutation_criterion() -> Outcome {
    let b = Budget::default();
    let mut total = 0;
    for (spec, bound) in [("gf:2", 4usize), ("zn:4", 4), ("ut:2:gf:2", 3)] {
        let r = ring(spec)?;
        let rep = cherper_suite(&r, bound, 1, Mode::Exhaustive, 0, &b).map_err(e2s)?;
        passed(&rep, &["criterion matches brute force on R_k", "verdict independent of f1..fk"])?;
        let m = Model::parse(spec);
        let m1 = Model::dual(1, &m);
        let polys: Vec<Vec<u32>> = all_coeffs(m.n, bound).collect();
        let others: Vec<&Vec<u32>> = if polys.len() <= 256 { polys.iter().collect() } else { polys.iter().step_by(37).collect() };
        let mut pp = 0u64;
        for f0 in &polys {
            let brute = is_bijective(&embedded_table(&m1, f0));
            let criterion = is_bijective(&m.table(f0)) && lambda_rows_bijective(&m, f0);
            ensure!(brute == criterion, "oracle {spec}: criterion disagrees on {f0:?}");
            for f1 in &others {
                let t = m1.table(&assemble(&[f0.clone(), (*f1).clone()], m.n));
                ensure!(is_bijective(&t) == brute, "oracle {spec}: verdict depends on f1 for {f0:?}");
            }
            pp += brute as u64;
        }
        ensure!(count(&rep, "pp_dual") == Some(pp), "{spec}: {:?} PPs on R_1 vs oracle {pp}", count(&rep, "pp_dual"));
        total += polys.len();
    }
    Ok(format!("{total} polynomials, 0 mismatches"))
}

// 7 ----------------------------------------------------------------------

fn falling_factorial(m: &Model, d: usize) -> Vec<u32> {
    (0..d).fold(vec![m.one], |acc, i| poly_mul(m, &acc, &[m.neg(m.times(i as u64, m.one)), m.one]))
}

fn chain_theorems() -> Outcome {
    for (spec, budget) in [("zn:4", Budget::default()), ("zn:8", Budget::default()), ("zn:9", Budget::large())] {
        let r = ring(spec)?;
        let rep = chain_redundancy_suite(&r, 1, Mode::Exhaustive, 0, &budget).map_err(e2s)?;
        passed(
            &rep,
            &[
                "PP derivative values avoid M",
                "PP has locally bijective lambda",
                "PP on R is PP on R_k",
                "PP images mod M^i are PPs",
                "additive order formula",
            ],
        )?;
        let m = Model::parse(spec);
        let m1 = Model::dual(1, &m);
        let n = m.n as u32;
        let p = (2..=n).find(|q| n.is_multiple_of(*q)).unwrap();
        let d = confirmed_null(&m, &falling_factorial(&m, if n == 9 { 6 } else { 4 }), "falling factorial")?;
        let mut pps = 0u64;
        for f in all_coeffs(m.n, d) {
            if !is_bijective(&m.table(&f)) {
                continue;
            }
            pps += 1;
            let deriv: Vec<u32> = f.iter().enumerate().skip(1).map(|(j, &a)| m.times(j as u64, a)).collect();
            ensure!(m.elems().all(|a| !m.eval(&deriv, a).is_multiple_of(p)), "oracle {spec}: f' hits M for {f:?}");
            ensure!(lambda_rows_bijective(&m, &f), "oracle {spec}: λ not locally bijective for {f:?}");
            ensure!(is_bijective(&embedded_table(&m1, &f)), "oracle {spec}: {f:?} not PP on R_1");
        }
        if count(&rep, "tested") == Some((m.n as u64).pow(d as u32)) {
            ensure!(count(&rep, "pp_base") == Some(pps), "{spec}: {:?} PPs vs oracle {pps}", count(&rep, "pp_base"));
        }
    }
    for spec in ["zn:8", "zn:27"] {
        let r = ring(spec)?;
        let c = p_torsion_square_check(&r).map_err(e2s)?;
        ensure!(c.status == Status::Pass, "{spec}: pa=0 ⇒ a²=0 is {:?}", c.status);
        let m = Model::parse(spec);
        let p = (2..=m.n as u64).find(|q| (m.n as u64).is_multiple_of(*q)).unwrap();
        ensure!(m.elems().all(|a| m.times(p, a) != 0 || m.mul(a, a) == 0), "oracle {spec}: pa=0 ⇒ a²=0");
    }
    for spec in ["zn:8", "zn:9"] {
        let c = element_order_check(&*ring(spec)?).map_err(e2s)?;
        ensure!(c.status == Status::Pass, "{spec}: element order {:?}", c.status);
        let m = Model::parse(spec);
        let n = m.n as u64;
        let p = (2..=n).find(|q| n.is_multiple_of(*q)).unwrap();
        let big_n = (0..).find(|&e| p.pow(e) == n).unwrap();
        for a in 1..n {
            let order = (1..).find(|&t| m.times(t, a as u32) == 0).unwrap();
            let v = (0..).find(|&e| a % p.pow(e + 1) != 0).unwrap();
            ensure!(order == p.pow(big_n - v), "oracle {spec}: order of {a}");
        }
    }
    let rep = semicommutativity_check(&*ring("zn:8")?, Mode::Exhaustive, 0, u64::MAX).map_err(e2s)?;
    passed(&rep, &["ab=0 implies arb=0"])?;
    let mat = ring("mat:2:gf:2")?;
    let rep = semicommutativity_check(&mat, Mode::Exhaustive, 0, u64::MAX).map_err(e2s)?;
    let c = rep.check("ab=0 implies arb=0").ok_or("no semicommutativity check")?;
    ensure!(c.status == Status::Fail, "mat:2:gf:2 passes semicommutativity");
    let w = c.counterexample.as_ref().ok_or("no witness")?;
    let get = |k: &str| w[k].as_u64().map(|x| x as u32).ok_or(format!("witness lacks {k}"));
    let (a, b_, r) = (get("a")?, get("b")?, get("r")?);
    let m = Model::parse("mat:2:gf:2");
    ensure!(m.mul(a, b_) == 0 && m.mul(m.mul(a, r), b_) != 0, "oracle rejects witness ({a}, {b_}, {r})");

    let budget = Budget::default();
    for (spec, q) in [("gf:2", 2usize), ("gf:4", 4)] {
        let r = ring(spec)?;
        let rep = cherper_suite(&r, q + 1, 1, Mode::Exhaustive, 0, &budget).map_err(e2s)?;
        ensure!(count(&rep, "pp_base_not_dual").is_some_and(|c| c > 0), "{spec}: no PP on R failing on R_1");
        let f = Poly::monomial(&r, r.one(), q);
        ensure!(is_pp(&f, u64::MAX).map_err(e2s)?, "{spec}: x^{q} not a PP");
        let v = is_pp_dual(&[f, Poly::zero(&r)], &r, 1, true, &budget).map_err(e2s)?;
        ensure!(v.is_pp_base && !v.is_pp_dual && v.brute_force == Some(false), "{spec}: verdict {v:?}");
        let m = Model::parse(spec);
        let mut xq = vec![0u32; q + 1];
        xq[q] = m.one;
        ensure!(is_bijective(&m.table(&xq)) && !is_bijective(&Model::dual(1, &m).table(&xq)), "oracle {spec}: x^{q}");
    }
    Ok(format!("zn:4, zn:8, zn:9 exhaustive; mat:2:gf:2 witness ({a}, {b_}, {r}); x^q on gf:2, gf:4"))
}

// 8 ----------------------------------------------------------------------

fn factorial(q: u64) -> u64 {
    (1..=q).product()
}

fn l_values() -> Outcome {
    let b = Budget::default();
    let nulls: [(&str, Vec<u32>); 2] = [("gf:2", vec![0, 0, 1, 0, 1]), ("gf:3", vec![0, 0, 2, 0, 0, 0, 0, 0, 1])];
    for (spec, g1) in nulls {
        let m = Model::parse(spec);
        let m1 = Model::dual(1, &m);
        let q = m.n as u64;
        let formula = factorial(q) * (q - 1).pow(q as u32);
        let bound = confirmed_null(&m1, &g1, "null on R_1")?;
        let brute = oracle_pure_perms(&m, &m1, bound).len() as u64;
        ensure!(brute == formula, "oracle {spec}: {brute} pure permutations vs q!(q-1)^q = {formula}");
        let l = compute_l(&ring(spec)?, &b).map_err(e2s)?;
        ensure!(l == formula, "compute_L({spec}) = {l}, expected {formula}");
    }
    let c = count_prpol_dual(&ring("gf:2")?, 1, &b).map_err(e2s)?;
    let oracle = Model::dual(1, &Model::parse("gf:2")).polyfun_tables().iter().filter(|t| is_bijective(t)).count() as u64;
    ensure!(oracle == 8, "oracle |PrPol((F_2)_1)| = {oracle}");
    ensure!(c.formula.to_u64() == Some(8) && c.brute_force == Some(8), "PrPol count {:?} / {:?}", c.formula, c.brute_force);
    Ok("L(gf:2) = 2, L(gf:3) = 48, |PrPol((F_2)_1)| = 8".into())
}

// 9 ----------------------------------------------------------------------

fn groups() -> Outcome {
    let b = Budget::default();
    let mut notes = Vec::new();
    for (spec, k) in [("gf:2", 1usize), ("gf:2", 2), ("zn:4", 1)] {
        let r = ring(spec)?;
        let m = Model::parse(spec);
        let p = build_pxk(&r, k, 0, &b).map_err(e2s)?;
        passed(&p.report, &["order is |PolFun|^k", "abelian"])?;
        let oracle = oracle_pxk(&m, k);
        let expected = (m.polyfun_tables().len() as u64).pow(k as u32);
        ensure!(oracle.len() as u64 == expected, "oracle P_x,{k}({spec}) has {} members", oracle.len());
        let lib: HashSet<Vec<u32>> = p.set.iter().cloned().collect();
        ensure!(lib == oracle, "P_x,{k}({spec}) differs from oracle");
        ensure!(p.group.abelian == Some(true), "P_x,{k}({spec}) not abelian");
        ensure!(oracle.iter().all(|f| oracle.iter().all(|g| compose(f, g) == compose(g, f))), "oracle P_x,{k} not abelian");
    }

    // (base, null on R_1 confirming the degree bound, budget)
    let semidirect: [(&str, Vec<u32>, Budget); 3] = [
        ("gf:2", vec![0, 0, 1, 0, 1], b),
        ("zn:4", vec![0, 0, 3, 0, 0, 0, 1], b),
        ("gf:3", vec![0, 0, 2, 0, 0, 0, 0, 0, 1], b),
    ];
    for (spec, g1, budget) in semidirect {
        let r = ring(spec)?;
        let s = semidirect_check(&r, 1, 0, &budget).map_err(e2s)?;
        passed(
            &s.report,
            &["P_x,k inside PrPol", "P_R inside PrPol", "P_x,k normal in PrPol", "trivial intersection", "orders multiply"],
        )?;
        let m = Model::parse(spec);
        let m1 = Model::dual(1, &m);
        let prpol: Vec<Vec<u32>> = m1.polyfun_tables().into_iter().filter(|t| is_bijective(t)).collect();
        ensure!(s.prpol_order == prpol.len() as u64, "{spec}: |PrPol| {} vs oracle {}", s.prpol_order, prpol.len());
        let pxk = oracle_pxk(&m, 1);
        let pr = oracle_pure_perms(&m, &m1, confirmed_null(&m1, &g1, "null on R_1")?);
        let id: Vec<u32> = m1.elems().collect();
        ensure!(pxk.intersection(&pr).cloned().collect::<Vec<_>>() == vec![id], "oracle {spec}: intersection not trivial");
        ensure!(pxk.len() * pr.len() == prpol.len(), "oracle {spec}: {} * {} != {}", pxk.len(), pr.len(), prpol.len());
        for g in &prpol {
            let mut gi = vec![0u32; g.len()];
            for (x, &y) in g.iter().enumerate() {
                gi[y as usize] = x as u32;
            }
            ensure!(pxk.iter().all(|p| pxk.contains(&compose(&compose(g, p), &gi))), "oracle {spec}: P_x,1 not normal");
        }
    }

    // Stabilizers: (base, null on R_1 bounding the degree of h, expect equality)
    let stab: [(&str, Vec<u32>, bool); 3] = [("zn:4", vec![0, 0, 3, 0, 0, 0, 1], true), ("zn:8", vec![], true), ("ut:2:gf:2", vec![0, 0, 0, 5, 0, 0, 0, 5], false)];
    for (spec, g1, equal) in stab {
        let r = ring(spec)?;
        let m = Model::parse(spec);
        let m1 = Model::dual(1, &m);
        let g1 = if g1.is_empty() {
            let ff = falling_factorial(&m, 4);
            poly_mul(&m, &ff, &ff)
        } else {
            g1
        };
        let bound = confirmed_null(&m1, &g1, "null on R_1")?;
        let (st, hs) = oracle_stabilizer(&m, &m1, bound);
        let (lib, rep) = stabilizer_stk(&r, 1, &b).map_err(e2s)?;
        let ratio = count(&rep, "null_anull_index");
        ensure!(ratio == Some(hs.len() as u64), "{spec}: [Null:ANull] {ratio:?} vs oracle {}", hs.len());
        let lib_set: HashSet<Vec<u32>> = lib.iter().cloned().collect();
        ensure!(lib_set == st, "{spec}: St_1 has {} members vs oracle {}", lib_set.len(), st.len());
        if equal {
            passed(&rep, &["members fix R pointwise", "order equals [Null:ANull]"])?;
            ensure!(st.len() == hs.len(), "oracle {spec}: |St_1| {} != {}", st.len(), hs.len());
        } else {
            passed(&rep, &["members fix R pointwise", "order at most [Null:ANull]"])?;
            ensure!(st.len() <= hs.len(), "oracle {spec}: |St_1| {} > {}", st.len(), hs.len());
        }
        notes.push(format!("|St_1({spec})| = {} of {}", st.len(), hs.len()));
    }

    for (spec, g1) in [("gf:2", vec![0u32, 0, 1, 0, 1]), ("zn:4", vec![0, 0, 3, 0, 0, 0, 1])] {
        let r = ring(spec)?;
        let m = Model::parse(spec);
        let mut orders = Vec::new();
        for k in 1..=3usize {
            let mk = Model::dual(k, &m);
            let bound = confirmed_null(&mk, &g1, "null on R_k")?;
            orders.push(closure(&oracle_stabilizer(&m, &mk, bound).0).len());
        }
        ensure!(orders.windows(2).all(|w| w[0] == w[1]), "oracle {spec}: closure orders {orders:?}");
        for j in [2, 3] {
            let rep = stab_iso_order_check(&r, 1, j, 0, &b).map_err(e2s)?;
            passed(&rep, &["closure orders equal", "restriction injective", "restriction lands in closure of St_j"])?;
            ensure!(count(&rep, &format!("closure_order_k{j}")) == Some(orders[0] as u64), "{spec}: closure order for k={j}");
        }
    }

    let z4 = ring("zn:4")?;
    let rep = quotient_order_check(&z4, 1, &b).map_err(e2s)?;
    passed(&rep, &["L = |restriction of P_R| * |St_k|"])?;
    let m = Model::parse("zn:4");
    let m1 = Model::dual(1, &m);
    let pr = oracle_pure_perms(&m, &m1, 6);
    let psi: HashSet<Vec<u32>> = pr.iter().map(|t| t[..4].to_vec()).collect();
    let st = oracle_stabilizer(&m, &m1, 6).0;
    ensure!(pr.len() == psi.len() * st.len(), "oracle zn:4: {} != {} * {}", pr.len(), psi.len(), st.len());
    ensure!(compute_l(&z4, &b).map_err(e2s)? == pr.len() as u64, "zn:4: L differs from oracle {}", pr.len());
    notes.push(format!("zn:4: L = {} = {} * {}", pr.len(), psi.len(), st.len()));
    Ok(notes.join("; "))
}

// 10 ---------------------------------------------------------------------

fn sum_of_units() -> Outcome {
    let mut results = HashMap::new();
    for spec in BASES {
        let r = ring(spec)?;
        let lib = (sum_of_units_reachable(&r), sum_of_units_reachable(&*dual(&r, 1)?));
        let m = Model::parse(spec);
        let oracle = (m.sum_of_units(), Model::dual(1, &m).sum_of_units());
        ensure!(lib == oracle, "{spec}: library {lib:?} vs oracle {oracle:?}");
        ensure!(lib.0 == lib.1, "{spec}: R gives {} but R_1 gives {}", lib.0, lib.1);
        results.insert(spec, lib.0);
    }
    ensure!(!results["prod:gf:2+gf:2"] && !results["ut:2:gf:2"] && results["zn:4"], "expected values differ: {results:?}");
    Ok("R and R_1 agree on all bases; prod and ut false, zn:4 true".into())
}

// 11 ---------------------------------------------------------------------

fn verify_all() -> Outcome {
    let cfg = VerifyConfig { k: 1, seed: 42, ..Default::default() };
    let mut first = Vec::new();
    let start = Instant::now();
    for spec in BASES {
        let rep = run_suite(Suite::All, &ring(spec)?, &cfg).map_err(e2s)?;
        clean(&rep)?;
        first.push(rep.to_json(false));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 300.0, "verify all took {secs:.0} s");
    for (spec, before) in BASES.iter().zip(&first) {
        let again = run_suite(Suite::All, &ring(spec)?, &cfg).map_err(e2s)?.to_json(false);
        ensure!(&again == before, "{spec}: second run differs");
    }
    Ok(format!("{} bases in {secs:.0} s, identical on rerun", BASES.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("structure", structure),
        ("evaluation lemma", evaluation_lemma),
        ("UT2(F2) example", paper_example),
        ("null decomposition", null_decomposition),
        ("counting", counting),
        ("permutation criterion", permutation_criterion),
        ("chain rings", chain_theorems),
        ("L values", l_values),
        ("groups", groups),
        ("sum of units", sum_of_units),
        ("verify all", verify_all),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{secs:.1}s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{secs:.1}s]: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
