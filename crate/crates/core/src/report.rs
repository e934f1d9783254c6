//! Machine-readable verification reports.
//!
//! Reports serialize to JSON with sorted keys under the schema tag
//! `holomotion/1`. The verdict is three-valued: a check can fail honestly,
//! and it can also be inconclusive when the sampling error dominates the
//! tolerance budget.

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Fail => "FAIL",
        }
    }

    /// Process exit code contract: 0 pass, 2 fail, 3 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 2,
            Verdict::Inconclusive => 3,
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub claim: String,
    pub verdict: Verdict,
    pub parameters: Map<String, Value>,
    pub tolerances: Map<String, Value>,
    /// Claim-specific observations (max ratios, witnesses, constants, ...).
    /// Flattened into the top-level JSON object.
    pub metrics: Map<String, Value>,
    /// One line per violated inequality or per-point evaluation failure.
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(claim: &str) -> Self {
        Self {
            claim: claim.to_string(),
            verdict: Verdict::Pass,
            parameters: Map::new(),
            tolerances: Map::new(),
            metrics: Map::new(),
            failures: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: Value) -> &mut Self {
        self.parameters.insert(key.to_string(), value);
        self
    }

    pub fn tolerance(&mut self, key: &str, value: f64) -> &mut Self {
        self.tolerances.insert(key.to_string(), value.into());
        self
    }

    pub fn metric(&mut self, key: &str, value: Value) -> &mut Self {
        self.metrics.insert(key.to_string(), value);
        self
    }

    pub fn fail(&mut self, message: String) -> &mut Self {
        self.failures.push(message);
        self.verdict = Verdict::Fail;
        self
    }

    /// Downgrade to inconclusive unless already failed.
    pub fn inconclusive(&mut self, message: String) -> &mut Self {
        self.failures.push(message);
        if self.verdict != Verdict::Fail {
            self.verdict = Verdict::Inconclusive;
        }
        self
    }

    /// Merge sub-reports into one aggregate whose verdict is the worst of
    /// the parts; the parts appear under a `cases` array.
    pub fn merge(claim: &str, parts: Vec<Report>) -> Report {
        let mut out = Report::new(claim);
        out.verdict = parts.iter().map(|p| p.verdict).max().unwrap_or(Verdict::Pass);
        let cases: Vec<Value> = parts.into_iter().map(|p| p.to_json()).collect();
        out.metrics.insert("cases".to_string(), Value::Array(cases));
        out
    }

    /// JSON object with sorted keys (serde_json maps are BTree-backed).
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), "holomotion/1".into());
        m.insert("claim".into(), self.claim.clone().into());
        m.insert("verdict".into(), self.verdict.as_str().into());
        m.insert("pass".into(), self.verdict.passed().into());
        m.insert("parameters".into(), Value::Object(self.parameters.clone()));
        m.insert("tolerances".into(), Value::Object(self.tolerances.clone()));
        m.insert(
            "failures".into(),
            Value::Array(self.failures.iter().map(|f| f.clone().into()).collect()),
        );
        for (k, v) in &self.metrics {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }
}

/// `[re, im]` pair for embedding complex values in reports.
pub fn complex_value(z: num_complex::Complex64) -> Value {
    serde_json::json!([z.re, z.im])
}
