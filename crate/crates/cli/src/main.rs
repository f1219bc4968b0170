use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ringlab_core::perm::is_pp_dual;
use ringlab_core::ring::cache::construct_cached;
use ringlab_core::verify::{run_suite, Suite, VerifyConfig};
use ringlab_core::{construct_ring_with, summary, Budget, ConstructOptions, Error, Mode, Poly, RingHandle};

#[derive(Parser)]
#[command(name = "ringlab", version, about = "Polynomial functions over finite rings and their dual-number extensions")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on enumerated tuples (polynomials, pairs, samples, compositions).
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = positive)]
    budget_tuples: u64,
    /// Cap on stored tables (distinct functions, group elements).
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = positive)]
    budget_tables: u64,
    /// Largest ring, in elements, that may be constructed.
    #[arg(long, global = true, default_value_t = 65_536, value_parser = positive)]
    budget_elements: u64,
    /// Force exhaustive or sampled checks; by default chosen per check from the budget.
    #[arg(long, global = true)]
    mode: Option<Mode>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Leave the timestamp out of the output.
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Do not read or write the table cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Size, characteristic, units, center, radical and chain structure.
    Info { spec: String },
    /// The monic central null polynomial and the ideal indices.
    Nullpoly { spec: String },
    /// Function and permutation counts on R and R_k.
    Count {
        spec: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Run a verification suite.
    Verify {
        /// axioms, dual-structure, eval-lemma, null-decomp, equiv, cherper, chain, sums, groups,
        /// semidirect, stabilizer, or all.
        suite: Suite,
        /// Ring spec such as `zn:8`, `ut:2:gf:2` or `dual:1:zn:4`.
        spec: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Decide whether f0 + f1 β1 + … + fk βk permutes R_k.
    PermTest {
        spec: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Coefficients of f0 as element indices, lowest degree first.
        #[arg(long)]
        f0: String,
        /// `I=LIST` for component f_I; written `--fI LIST` on the command line.
        #[arg(long = "component", hide = true)]
        components: Vec<String>,
    },
}

fn positive(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// Rewrites `--fI LIST` / `--fI=LIST` (I ≥ 1) into the hidden `--component I=LIST`.
fn rewrite_components(args: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut out = Vec::new();
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        let Some(rest) = a.strip_prefix("--f") else {
            out.push(a);
            continue;
        };
        let (idx, inline) = match rest.split_once('=') {
            Some((i, v)) => (i.to_string(), Some(v.to_string())),
            None => (rest.to_string(), None),
        };
        match idx.parse::<usize>() {
            Ok(i) if i >= 1 => {
                let value = inline.or_else(|| it.next()).unwrap_or_default();
                out.push("--component".into());
                out.push(format!("{i}={value}"));
            }
            _ => out.push(a),
        }
    }
    out
}

enum Failure {
    Usage(String),
    Unsupported(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse { .. } | Error::NotIrreducible { .. } | Error::WrongRing { .. } | Error::NotMonic | Error::NotAUnit(_) => {
                Failure::Usage(e.to_string())
            }
            e if e.is_budget_or_unsupported() => Failure::Unsupported(e.to_string()),
            e => Failure::Other(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Other(e.to_string())
    }
}

fn cache_dir() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os("RINGLAB_CACHE") {
        return Some(PathBuf::from(dir));
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("ringlab"))
}

fn build_ring(spec: &str, common: &Common) -> Result<RingHandle, Failure> {
    let opts = ConstructOptions { max_size: common.budget_elements as u128, ..Default::default() };
    if !common.no_cache {
        if let Some(dir) = cache_dir() {
            match construct_cached(spec, &opts, &dir) {
                Ok((ring, _)) => return Ok(ring),
                Err(Error::Io(e)) => eprintln!("ringlab: table cache unavailable ({e}); building in memory"),
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(construct_ring_with(spec, &opts)?)
}

/// Output value and whether every check passed.
fn run(cli: &Cli) -> Result<(Value, bool), Failure> {
    let c = &cli.common;
    let budget = Budget::new(c.budget_tuples, c.budget_tables);
    match &cli.command {
        Command::Info { spec } => Ok((summary::info(&build_ring(spec, c)?)?, true)),
        Command::Nullpoly { spec } => {
            let v = summary::nullpoly(&build_ring(spec, c)?, &budget)?;
            let ok = v["ideal_stats"]["identity_holds"].as_bool() != Some(false);
            Ok((v, ok))
        }
        Command::Count { spec, k } => {
            let v = summary::counts(&build_ring(spec, c)?, *k, &budget)?;
            let ok = v.as_object().is_some_and(|m| m.values().all(|f| f["crosscheck"] != "fail"))
                && v["ideals"]["identity_holds"] != false;
            Ok((v, ok))
        }
        Command::Verify { suite, spec, k } => {
            let ring = build_ring(spec, c)?;
            let cfg = VerifyConfig { k: *k, seed: c.seed, budget, mode: c.mode };
            let mut report = run_suite(*suite, &ring, &cfg)?;
            report.seed = Some(c.seed);
            let ok = report.passed();
            Ok((serde_json::to_value(&report).map_err(Error::from)?, ok))
        }
        Command::PermTest { spec, k, f0, components } => {
            let ring = build_ring(spec, c)?;
            let mut comps = vec![Poly::zero(&ring); k + 1];
            comps[0] = Poly::parse(&ring, f0)?;
            for entry in components {
                let (i, list) = entry.split_once('=').ok_or_else(|| Failure::Usage(format!("bad component `{entry}`")))?;
                let i: usize = i.parse().map_err(|_| Failure::Usage(format!("bad component index `{i}`")))?;
                if i == 0 || i > *k {
                    return Err(Failure::Usage(format!("component f{i} given but k = {k}")));
                }
                comps[i] = Poly::parse(&ring, list)?;
            }
            let v = is_pp_dual(&comps, &ring, *k, true, &budget)?;
            let ok = v.agrees();
            let mut out = json!({
                "spec": ring.spec(),
                "k": k,
                "components": comps.iter().map(Poly::to_index_string).collect::<Vec<_>>(),
                "pp_base": v.is_pp_base,
                "lambda_local": v.lambda_local,
                "pp_dual": v.is_pp_dual,
            });
            for (key, val) in [("brute_force", json!(v.brute_force)), ("witness", json!(v.witness)), ("note", json!(v.note))] {
                if !val.is_null() {
                    out[key] = val;
                }
            }
            Ok((out, ok))
        }
    }
}

fn emit(mut v: Value, common: &Common) -> Result<(), Failure> {
    if !common.no_timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        v["timestamp"] = json!(secs);
    }
    let mut text = if common.pretty { serde_json::to_string_pretty(&v) } else { serde_json::to_string(&v) }
        .map_err(|e| Failure::Other(e.to_string()))?;
    text.push('\n');
    match &common.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(rewrite_components(std::env::args())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = run(&cli).and_then(|(v, ok)| emit(v, &cli.common).map(|_| ok));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (2, m),
                Failure::Unsupported(m) => (3, m),
                Failure::Other(m) => (1, m),
            };
            eprintln!("ringlab: {msg}");
            ExitCode::from(code)
        }
    }
}
