//! Deterministic machine-readable output.
//!
//! Floats are always written with 17 significant digits in scientific
//! notation and object keys keep insertion order, so identical invocations
//! produce identical bytes.

/// Owned JSON value with deterministic serialization.
#[derive(Debug, Clone)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    Num(f64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(&'static str, Json)>),
}

pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        // normalize the sign of zero
        "0.0000000000000000e0".to_string()
    } else {
        format!("{x:.16e}")
    }
}

impl Json {
    pub fn num_array(xs: &[f64]) -> Json {
        Json::Arr(xs.iter().map(|&x| Json::Num(x)).collect())
    }

    pub fn num_matrix(m: &[Vec<f64>]) -> Json {
        Json::Arr(m.iter().map(|row| Json::num_array(row)).collect())
    }

    fn write_into(&self, out: &mut String) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => out.push_str(&i.to_string()),
            Json::Num(x) => out.push_str(&fmt_f64(*x)),
            Json::Str(s) => {
                out.push('"');
                for c in s.chars() {
                    match c {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        '\t' => out.push_str("\\t"),
                        '\r' => out.push_str("\\r"),
                        c if (c as u32) < 0x20 => {
                            out.push_str(&format!("\\u{:04x}", c as u32))
                        }
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Json::Arr(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write_into(out);
                }
                out.push(']');
            }
            Json::Obj(fields) => {
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('"');
                    out.push_str(k);
                    out.push_str("\":");
                    v.write_into(out);
                }
                out.push('}');
            }
        }
    }

    /// Serialize with a trailing newline.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut s = String::new();
        self.write_into(&mut s);
        s.push('\n');
        s.into_bytes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_float_format() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(0.0), "0.0000000000000000e0");
        assert_eq!(fmt_f64(-0.0), "0.0000000000000000e0");
        assert_eq!(fmt_f64(-0.125), "-1.2500000000000000e-1");
    }

    #[test]
    fn round_trips_through_serde() {
        let v = Json::Obj(vec![
            ("a", Json::Num(0.1 + 0.2)),
            ("b", Json::Arr(vec![Json::Int(3), Json::Bool(true), Json::Null])),
            ("c", Json::Str("x\"y".into())),
        ]);
        let bytes = v.to_bytes();
        let parsed: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(parsed["a"].as_f64().unwrap(), 0.1 + 0.2);
        assert_eq!(parsed["c"].as_str().unwrap(), "x\"y");
    }
}
