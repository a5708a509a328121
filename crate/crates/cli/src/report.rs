use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub name: String,
    pub value: Value,
    pub exhaustive: bool,
    pub pass: bool,
}

impl Finding {
    /// A boolean that must be true.
    pub fn check(name: &str, ok: bool, exhaustive: bool) -> Self {
        Finding {
            name: name.into(),
            value: Value::Bool(ok),
            exhaustive,
            pass: ok,
        }
    }

    /// A value reported for information; never fails.
    pub fn info(name: &str, value: impl Serialize, exhaustive: bool) -> Self {
        Finding::expect(name, value, true, exhaustive)
    }

    pub fn expect(name: &str, value: impl Serialize, pass: bool, exhaustive: bool) -> Self {
        Finding {
            name: name.into(),
            value: serde_json::to_value(value).unwrap_or(Value::Null),
            exhaustive,
            pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Vec<Finding>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub witnesses: Value,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
    /// Set when a bound stopped the command.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Report {
            command: command.into(),
            inputs,
            results: Vec::new(),
            witnesses: Value::Null,
            details: Value::Null,
            skipped: None,
        }
    }

    pub fn push(&mut self, f: Finding) {
        self.results.push(f);
    }

    pub fn passed(&self) -> bool {
        self.skipped.is_none() && self.results.iter().all(|f| f.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self, elapsed: Duration) -> String {
        let mut out = String::new();
        let inputs = match &self.inputs {
            Value::Object(map) => map
                .iter()
                .map(|(k, v)| format!("{k}={}", plain(v)))
                .collect::<Vec<_>>()
                .join(" "),
            other => plain(other),
        };
        let _ = writeln!(out, "{}  {}", self.command, inputs);
        if let Some(note) = &self.skipped {
            let _ = writeln!(out, "  skipped: {note}");
        }
        let width = self.results.iter().map(|f| f.name.len()).max().unwrap_or(0).max(7);
        if !self.results.is_empty() {
            let _ = writeln!(out, "  {:width$}  {:>16}  {:10}  status", "finding", "value", "exhaustive");
        }
        for f in &self.results {
            let _ = writeln!(
                out,
                "  {:width$}  {:>16}  {:10}  {}",
                f.name,
                plain(&f.value),
                if f.exhaustive { "yes" } else { "no" },
                if f.pass { "ok" } else { "FAIL" }
            );
        }
        let verdict = if self.skipped.is_some() {
            "SKIPPED"
        } else if self.passed() {
            "PASS"
        } else {
            "FAIL"
        };
        let _ = writeln!(out, "{verdict} in {:.1} ms", elapsed.as_secs_f64() * 1e3);
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn verdicts() {
        let mut r = Report::new("bk", json!({"left": "2"}));
        r.push(Finding::info("count", 2, true));
        assert!(r.passed());
        r.push(Finding::check("consistent", false, true));
        assert!(!r.passed());
        let text = r.to_text(Duration::from_millis(3));
        assert!(text.contains("FAIL in 3.0 ms"));
        assert!(text.starts_with("bk  left=2"));
    }

    #[test]
    fn json_omits_empty_sections() {
        let r = Report::new("inner", json!({}));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert!(v.get("witnesses").is_none());
        assert!(v.get("skipped").is_none());
        assert_eq!(v["results"], json!([]));
    }
}
