use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    /// Every checked identity holds.
    Pass,
    /// Some exact identity failed.
    Fail,
    /// A question was answered either way.
    Decided,
    Unknown,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass | Outcome::Decided => 0,
            Outcome::Fail => 1,
            Outcome::Unknown => 2,
        }
    }

    pub fn from_pass(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub command: String,
    /// sha256 over the canonical inputs.
    pub inputs_digest: String,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    pub payload: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// Hashes labelled input parts in order.
#[derive(Default)]
pub struct InputDigest {
    h: Sha256,
}

impl InputDigest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn part(mut self, key: &str, value: &str) -> Self {
        for s in [key, value] {
            self.h.update((s.len() as u64).to_le_bytes());
            self.h.update(s.as_bytes());
        }
        self
    }

    pub fn finish(self) -> String {
        self.h
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}", self.command, outcome_word(self.outcome));
        if let Some(v) = &self.verdict {
            out.push_str(&format!(" ({v})"));
        }
        out.push('\n');
        match self.payload.get("checks").and_then(Value::as_array) {
            Some(checks) => {
                for c in checks {
                    let ok = c["passed"].as_bool().unwrap_or(false);
                    out.push_str(&format!(
                        "  {:<4} {:<28} {}\n",
                        if ok { "ok" } else { "FAIL" },
                        inline(&c["name"]),
                        inline(&c["detail"])
                    ));
                }
            }
            None => render(&self.payload, 1, &mut out),
        }
        out.push_str(&format!("  inputs {}\n", &self.inputs_digest[..16]));
        if let Some(t) = self.timing_ms {
            out.push_str(&format!("  {t} ms\n"));
        }
        out
    }
}

fn outcome_word(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "FAIL",
        Outcome::Decided => "decided",
        Outcome::Unknown => "unknown",
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) if !is_small(x) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, depth + 1, out);
                    }
                    Value::Array(a) if a.iter().any(|e| e.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for e in a {
                            if is_small(e) {
                                out.push_str(&format!("{pad}  - {}\n", inline(e)));
                            } else {
                                out.push_str(&format!("{pad}  -\n"));
                                render(e, depth + 2, out);
                            }
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", inline(x))),
                }
            }
        }
        Value::Null => {}
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

fn is_small(v: &Value) -> bool {
    inline(v).chars().count() <= 72
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_order_sensitive_and_stable() {
        let a = InputDigest::new().part("x", "1").part("y", "2").finish();
        let b = InputDigest::new().part("y", "2").part("x", "1").finish();
        assert_ne!(a, b);
        assert_eq!(a, InputDigest::new().part("x", "1").part("y", "2").finish());
        // no ambiguity from concatenation
        assert_ne!(
            InputDigest::new().part("ab", "c").finish(),
            InputDigest::new().part("a", "bc").finish()
        );
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn report_round_trips() {
        let r = RunReport {
            command: "validate".into(),
            inputs_digest: "0".repeat(64),
            outcome: Outcome::Pass,
            verdict: None,
            payload: serde_json::json!({"checked": 3}),
            timing_ms: None,
        };
        let back: RunReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(Outcome::Unknown.exit_code(), 2);
        assert!(r.to_text().starts_with("validate: pass"));
    }
}
