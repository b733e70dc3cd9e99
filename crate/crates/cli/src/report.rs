use serde::Serialize;
use serde_json::{Map, Value};

/// `{command, inputs, results, pass?}`; keys serialize sorted.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

impl Report {
    pub fn new(command: &str, inputs: Value, results: Value) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            results,
            pass: None,
        }
    }

    pub fn verdict(mut self, pass: bool) -> Self {
        self.pass = Some(pass);
        self
    }

    pub fn to_json(&self) -> String {
        // round-trip through Value so every nested map comes out sorted
        let v = serde_json::to_value(self).expect("report is plain data");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    /// One `path<TAB>value` line per leaf.
    pub fn to_tsv(&self) -> String {
        let v = serde_json::to_value(self).expect("report is plain data");
        let mut out = String::new();
        flatten("", &v, &mut out);
        out
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            let m: &Map<String, Value> = m;
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}\t{s}\n")),
        other => out.push_str(&format!("{prefix}\t{other}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn sorted_and_flat() {
        let r = Report::new("x", json!({"b": 1, "a": [2, 3]}), json!({"z": "Z/3"})).verdict(true);
        let j = r.to_json();
        assert!(j.find("\"command\"").unwrap() < j.find("\"inputs\"").unwrap());
        assert!(j.find("\"a\"").unwrap() < j.find("\"b\"").unwrap());
        assert_eq!(
            r.to_tsv(),
            "command\tx\ninputs.a.0\t2\ninputs.a.1\t3\ninputs.b\t1\npass\ttrue\nresults.z\tZ/3\n"
        );
    }
}
