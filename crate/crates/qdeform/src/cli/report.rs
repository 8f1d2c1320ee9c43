//! Verification reports and their JSON and table renderings.

use crate::checks::{Check, Tolerances};
use serde_json::{Map, Number, Value};
use std::str::FromStr;

pub const SCHEMA: u64 = 1;

/// One evaluated check, with the tolerance it was compared against.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckRow {
    pub name: String,
    pub anchor: String,
    pub defect: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<CheckRow>,
    /// Verifiers that were requested but do not apply to the input.
    pub skipped: Vec<String>,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl VerificationReport {
    pub fn new(suite: &str, seed: u64, tolerances: Tolerances) -> Self {
        Self {
            suite: suite.to_string(),
            checks: Vec::new(),
            skipped: Vec::new(),
            seed,
            tolerances,
        }
    }

    /// Evaluate `checks` against the report's tolerances, each name
    /// prefixed by `scope`.
    pub fn extend(&mut self, scope: &str, checks: Vec<Check>) {
        for c in checks {
            let tolerance = self.tolerances.of(c.tol);
            let pass = c.passes(&self.tolerances);
            self.checks.push(CheckRow {
                name: if scope.is_empty() {
                    c.name
                } else {
                    format!("{scope}: {}", c.name)
                },
                anchor: c.anchor.to_string(),
                defect: c.defect,
                tolerance,
                pass,
            });
        }
    }

    pub fn skip(&mut self, what: String) {
        self.skipped.push(what);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Largest finite defect among checks whose tolerance is positive.
    pub fn worst(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.tolerance > 0.0)
            .map(|c| c.defect)
            .fold(0.0, f64::max)
    }

    pub fn to_value(&self) -> Value {
        let mut root = Map::new();
        root.insert("schema".into(), Value::from(SCHEMA));
        root.insert("suite".into(), Value::from(self.suite.clone()));
        root.insert("pass".into(), Value::from(self.pass()));
        let checks = self
            .checks
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("name".into(), Value::from(c.name.clone()));
                m.insert("paper_anchor".into(), Value::from(c.anchor.clone()));
                m.insert("defect".into(), real(c.defect));
                m.insert("tolerance".into(), real(c.tolerance));
                m.insert("pass".into(), Value::from(c.pass));
                Value::Object(m)
            })
            .collect();
        root.insert("checks".into(), Value::Array(checks));
        root.insert(
            "skipped".into(),
            Value::Array(self.skipped.iter().cloned().map(Value::from).collect()),
        );
        let mut tol = Map::new();
        tol.insert("identity".into(), real(self.tolerances.identity));
        tol.insert("span".into(), real(self.tolerances.span));
        tol.insert("pointwise".into(), real(self.tolerances.pointwise));
        let mut env = Map::new();
        env.insert("seed".into(), Value::from(self.seed));
        env.insert("tolerances".into(), Value::Object(tol));
        env.insert("version".into(), Value::from(env!("CARGO_PKG_VERSION")));
        root.insert("environment".into(), Value::Object(env));
        Value::Object(root)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let width = self
            .checks
            .iter()
            .map(|c| c.name.chars().count())
            .max()
            .unwrap_or(4)
            .max(5);
        let mut out = format!(
            "{:<width$}  {:>24}  {:>24}  {}\n",
            "check", "defect", "tolerance", "pass"
        );
        for c in &self.checks {
            out.push_str(&format!(
                "{:<width$}  {:>24}  {:>24}  {}\n",
                c.name,
                sci(c.defect),
                sci(c.tolerance),
                if c.pass { "ok" } else { "FAIL" }
            ));
        }
        for s in &self.skipped {
            out.push_str(&format!("skipped: {s}\n"));
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "suite {}: {} checks, {} failed, worst defect {}\n",
            self.suite,
            self.checks.len(),
            failed,
            sci(self.worst())
        ));
        out
    }
}

/// Fixed 17 significant digit rendering.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

fn real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(Number::from_str(&sci(x)).expect("finite float parses"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::Tol;

    fn sample() -> VerificationReport {
        let mut r = VerificationReport::new("demo", 7, Tolerances::default());
        r.extend(
            "z2",
            vec![
                Check::identity("unitary", "topic", 1e-16),
                Check::new("broken", "topic", f64::NAN, Tol::Identity),
            ],
        );
        r
    }

    #[test]
    fn floats_keep_seventeen_digits() {
        let json = sample().to_json();
        // 1e-16 is not exactly representable; seventeen digits show it
        assert!(json.contains("\"defect\": 9.9999999999999998e-17"));
        assert!(json.contains("\"tolerance\": 1.0000000000000000e-10"));
    }

    #[test]
    fn nan_defect_fails_and_renders_null() {
        let r = sample();
        assert!(!r.pass());
        assert!(r.to_json().contains("\"defect\": null"));
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn key_order_is_fixed() {
        let json = sample().to_json();
        let s = json.find("\"schema\"").unwrap();
        let c = json.find("\"checks\"").unwrap();
        let e = json.find("\"environment\"").unwrap();
        assert!(s < c && c < e);
    }
}
