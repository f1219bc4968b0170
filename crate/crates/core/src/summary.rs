//! JSON summaries behind the `info`, `nullpoly` and `count` commands.

use serde_json::{json, Map, Value};

use crate::budget::Budget;
use crate::error::Result;
use crate::funspace::{count_polyfun, count_polyfun_dual, ideal_stats, CountMethod};
use crate::groups::stabilizer_stk;
use crate::nullpoly::monic_central_null;
use crate::perm::count_prpol_dual;
use crate::report::Status;
use crate::ring::analysis::{center, chain_analysis, jacobson_radical, sum_of_units_reachable, unit_set};
use crate::ring::RingHandle;

/// Runs `f`; budget and precondition errors become `{"skipped": reason}`.
fn field(f: impl FnOnce() -> Result<Value>) -> Result<Value> {
    match f() {
        Ok(v) => Ok(v),
        Err(e) if e.is_budget_or_unsupported() => Ok(json!({"skipped": e.to_string()})),
        Err(e) => Err(e),
    }
}

pub fn info(ring: &RingHandle) -> Result<Value> {
    let chain = chain_analysis(ring);
    Ok(json!({
        "spec": ring.spec(),
        "size": ring.size(),
        "char": ring.char(),
        "commutative": ring.is_commutative(),
        "storage": format!("{:?}", ring.storage_mode()).to_lowercase(),
        "units": unit_set(ring).len(),
        "center_size": center(ring).len(),
        "radical_size": jacobson_radical(ring).len(),
        "local": chain.is_local,
        "chain": chain.is_chain,
        "chain_info": chain,
        "N": chain.nilpotency,
        "e": chain.ramification,
        "sum_of_units": sum_of_units_reachable(ring),
    }))
}

pub fn nullpoly(ring: &RingHandle, budget: &Budget) -> Result<Value> {
    let n = monic_central_null(ring)?;
    Ok(json!({
        "spec": ring.spec(),
        "M": n.m,
        "L": n.l,
        "degree": n.degree,
        "poly": n.poly.to_index_string(),
        "pretty": n.poly.pretty(),
        "ideal_stats": field(|| {
            let s = ideal_stats(ring, budget)?;
            let mut v = serde_json::to_value(&s)?;
            v["identity_holds"] = json!(s.identity_holds());
            Ok(v)
        })?,
    }))
}

fn status(s: Status) -> Value {
    serde_json::to_value(s).expect("status serializes")
}

pub fn counts(ring: &RingHandle, k: usize, budget: &Budget) -> Result<Value> {
    let mut out = Map::new();
    out.insert("spec".into(), json!(ring.spec()));
    out.insert("k".into(), json!(k));
    out.insert(
        "polyfun".into(),
        field(|| {
            let span = count_polyfun(ring, CountMethod::Span, budget)?;
            match count_polyfun(ring, CountMethod::Enumerate, budget) {
                Ok(e) => Ok(json!({"value": e, "method": "enumerate", "crosscheck": status(if e == span { Status::Pass } else { Status::Fail })})),
                Err(err) if err.is_budget_or_unsupported() => {
                    Ok(json!({"value": span, "method": "span", "crosscheck": status(Status::Skipped)}))
                }
                Err(err) => Err(err),
            }
        })?,
    );
    out.insert(
        "ideals".into(),
        field(|| {
            let s = ideal_stats(ring, budget)?;
            Ok(json!({
                "idx_null": s.idx_null, "idx_anull": s.idx_anull, "ratio": s.ratio,
                "method": s.method, "identity_holds": s.identity_holds(),
            }))
        })?,
    );
    out.insert(
        "polyfun_dual".into(),
        field(|| {
            let c = count_polyfun_dual(ring, k, budget)?;
            Ok(json!({"value": c.formula, "method": "formula", "span": c.span, "crosscheck": status(c.crosscheck), "note": c.note}))
        })?,
    );
    out.insert(
        "prpol_dual".into(),
        field(|| {
            let c = count_prpol_dual(ring, k, budget)?;
            Ok(json!({
                "L": c.l, "value": c.formula, "method": "formula",
                "brute_force": c.brute_force, "crosscheck": status(c.crosscheck), "note": c.note,
            }))
        })?,
    );
    out.insert(
        "stabilizer".into(),
        field(|| {
            let (st, report) = stabilizer_stk(ring, k, budget)?;
            Ok(json!({"value": st.order(), "method": "enumerate", "ratio": report.counts.get("null_anull_index"),
                      "checks_pass": report.passed()}))
        })?,
    );
    Ok(Value::Object(out))
}
