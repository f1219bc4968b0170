//! Machine-readable outcomes of suites and counting runs.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exhaustive,
    Sampled,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "sampled" => Ok(Mode::Sampled),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool) -> Check {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            mode: None,
            counterexample: None,
            note: None,
        }
    }

    /// Passes when no witness was found.
    pub fn from_witness(name: impl Into<String>, witness: Option<Value>) -> Check {
        let mut c = Check::new(name, witness.is_none());
        c.counterexample = witness;
        c
    }

    pub fn skipped(name: impl Into<String>, why: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: Status::Skipped,
            mode: None,
            counterexample: None,
            note: Some(why.into()),
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Check {
        self.mode = Some(mode);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }

    pub fn with_counterexample(mut self, v: Value) -> Check {
        self.counterexample = Some(v);
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub spec: String,
    pub k: usize,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub counts: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(suite: impl Into<String>, spec: impl Into<String>, k: usize) -> Report {
        Report {
            suite: suite.into(),
            spec: spec.into(),
            k,
            mode: Mode::Exhaustive,
            seed: None,
            checks: Vec::new(),
            counts: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        if check.mode == Some(Mode::Sampled) {
            self.mode = Mode::Sampled;
        }
        self.checks.push(check);
    }

    pub fn count(&mut self, key: impl Into<String>, value: impl Serialize) {
        self.counts.insert(key.into(), serde_json::to_value(value).expect("counts serialize"));
    }

    /// No check failed. Skipped checks do not count as failures.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Merges another report's checks under `prefix/`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        if other.mode == Mode::Sampled {
            self.mode = Mode::Sampled;
        }
        if self.seed.is_none() {
            self.seed = other.seed;
        }
        for mut c in other.checks {
            c.name = format!("{prefix}/{}", c.name);
            self.checks.push(c);
        }
        for (key, v) in other.counts {
            self.counts.insert(format!("{prefix}/{key}"), v);
        }
    }

    /// Canonical order: checks sorted by name.
    pub fn finish(mut self) -> Report {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self
    }

    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("report serializes")
        } else {
            serde_json::to_string(self).expect("report serializes")
        }
    }
}
