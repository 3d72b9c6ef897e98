//! The JSON report written by every subcommand.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::io::canonical_hash;

pub const TOOL: &str = "toric-t2";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    pub kind: &'static str,
    pub data: Value,
    pub sha256: String,
}

impl InputEcho {
    pub fn new<T: Serialize>(kind: &'static str, data: &T) -> Self {
        InputEcho { kind, data: serde_json::to_value(data).expect("input serializes"), sha256: canonical_hash(data) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputEcho>,
    pub result: Value,
    /// `None` when the command performs no verification.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    pub timing: Timing,
}

impl RunReport {
    pub fn new(command: &str, input: Option<InputEcho>, result: Value, verified: Option<bool>, started: Instant) -> Self {
        RunReport {
            tool: TOOL,
            version: VERSION,
            command: command.to_string(),
            input,
            result,
            verified,
            timing: Timing { elapsed_ms: started.elapsed().as_millis() as u64 },
        }
    }

    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).unwrap()
        } else {
            serde_json::to_string(self).unwrap()
        }
    }
}

/// Removes every `timing` field, recursively.
pub fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.shift_remove("timing");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn timing_is_stripped() {
        let mut v = json!({"a": 1, "timing": {"elapsed_ms": 3}, "b": [{"timing": 1, "c": 2}]});
        strip_timing(&mut v);
        assert_eq!(v, json!({"a": 1, "b": [{"c": 2}]}));
    }

    #[test]
    fn input_hash_ignores_whitespace() {
        let a: Value = serde_json::from_str("{\"rank\": 2, \"generators\": [[1,0]]}").unwrap();
        let b: Value = serde_json::from_str("{ \"rank\":2,\n\"generators\":[[1, 0]] }").unwrap();
        assert_eq!(InputEcho::new("cone", &a).sha256, InputEcho::new("cone", &b).sha256);
    }
}
