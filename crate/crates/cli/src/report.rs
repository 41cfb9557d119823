//! JSON run reports. Keys keep insertion order, floats are written in the
//! shortest form that round-trips exactly, and non-finite values become the
//! strings `"inf"`, `"-inf"` and `"nan"`.

use std::io::Write;

use serde_json::{Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else if x.is_nan() {
        Value::from("nan")
    } else if x > 0.0 {
        Value::from("inf")
    } else {
        Value::from("-inf")
    }
}

pub fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    /// Present for stochastic commands.
    pub seed: Option<u64>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, inputs: Value, results: Value) -> Self {
        Self {
            command: command.into(),
            inputs,
            results,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn to_value(&self) -> Value {
        let mut map = Map::new();
        map.insert("command".into(), Value::from(self.command.clone()));
        map.insert("inputs".into(), self.inputs.clone());
        map.insert("results".into(), self.results.clone());
        if let Some(seed) = self.seed {
            map.insert("seed".into(), Value::from(seed));
        }
        map.insert("version".into(), Value::from(VERSION));
        Value::Object(map)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report is valid JSON");
        s.push('\n');
        s
    }

    /// `key  value` lines for the terminal, nested keys joined with dots.
    pub fn write_table(&self, out: &mut impl Write) -> std::io::Result<()> {
        let mut lines = Vec::new();
        flatten("", &self.results, &mut lines);
        let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        writeln!(out, "{}", self.command)?;
        for (key, value) in lines {
            writeln!(out, "  {key:<width$}  {value}")?;
        }
        Ok(())
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => items
            .iter()
            .enumerate()
            .for_each(|(i, v)| flatten(&join(&i.to_string()), v, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> RunReport {
        RunReport::new(
            "bounds",
            json!({"n": 10, "p": 10}),
            json!({"upper": num(f64::INFINITY), "x": num(0.1 + 0.2), "tiny": num(-1.2345678901234567e-300)}),
        )
        .with_seed(7)
    }

    #[test]
    fn canonical_key_order() {
        let s = sample().to_json();
        let pos = |k: &str| s.find(&format!("\"{k}\"")).unwrap();
        assert!(pos("command") < pos("inputs"));
        assert!(pos("inputs") < pos("results"));
        assert!(pos("results") < pos("seed"));
        assert!(pos("seed") < pos("version"));
        assert!(pos("upper") < pos("x") && pos("x") < pos("tiny"));
    }

    #[test]
    fn round_trips_byte_identically() {
        let s = sample().to_json();
        let parsed: Value = serde_json::from_str(&s).unwrap();
        let mut again = serde_json::to_string_pretty(&parsed).unwrap();
        again.push('\n');
        assert_eq!(s, again);
        assert_eq!(parsed["results"]["x"].as_f64().unwrap(), 0.1 + 0.2);
    }

    #[test]
    fn non_finite_values_are_strings() {
        assert_eq!(num(f64::INFINITY), json!("inf"));
        assert_eq!(num(f64::NEG_INFINITY), json!("-inf"));
        assert_eq!(num(f64::NAN), json!("nan"));
        assert_eq!(opt_num(None), Value::Null);
    }

    #[test]
    fn seed_omitted_for_deterministic_commands() {
        let r = RunReport::new("bounds", json!({}), json!({}));
        assert!(!r.to_json().contains("seed"));
    }

    #[test]
    fn table_flattens_nested_results() {
        let r = RunReport::new("x", json!({}), json!({"a": {"b": 1}, "c": "inf"}));
        let mut buf = Vec::new();
        r.write_table(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("a.b  1"));
        assert!(text.contains("c    inf"));
    }
}
