use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One result as printed with `--json` and as stored in the cache.
///
/// Results are decimal strings, never floats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Value>,
    /// Bits that isolated the answer; `null` when it was computed exactly.
    pub precision_used: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

fn field<'a>(row: &'a Value, key: &str) -> &'a str {
    row.get(key).and_then(Value::as_str).unwrap_or("")
}

impl OutputRecord {
    /// Plain-text rendering, one line per row.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        match (&self.values, self.command.as_str()) {
            (Some(Value::Array(rows)), "duality") => {
                for row in rows {
                    let g = row.get("genus").and_then(Value::as_u64).unwrap_or(0);
                    out += &format!("{g}\t{}\t{}\n", field(row, "left"), field(row, "right"));
                }
            }
            (Some(Value::Array(rows)), _) => {
                for row in rows {
                    out += &format!("{}\t{}\n", field(row, "sigma"), field(row, "value"));
                }
                if let Some(v) = &self.value {
                    out += &format!("sum\t{v}\n");
                }
            }
            (Some(resp @ Value::Object(_)), "surgery") => {
                out += &format!("count {}\n", resp["count"]);
                out += &format!("particular {}\n", resp["particular"]);
                out += &format!("kernel_basis {}\n", resp["kernel_basis"]);
            }
            _ => {
                if let Some(v) = &self.value {
                    out += v;
                    out.push('\n');
                }
            }
        }
        out
    }
}
