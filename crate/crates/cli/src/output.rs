//! JSON and CSV emission with fixed 17-significant-digit floats.

use serde::Serialize;
use serde_json::Value;
use std::fmt::Write as _;

/// A float with 17 significant digits; plain notation for moderate
/// magnitudes, exponent notation otherwise. Non-finite values map to `null`.
pub fn fmt17(x: f64) -> String {
    if !x.is_finite() {
        return "null".into();
    }
    if x == 0.0 {
        return "0.0".into();
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..16).contains(&e) {
        let decimals = (16 - e).max(1) as usize;
        let s = format!("{x:.decimals$}");
        // log10 can misjudge by one near powers of ten; re-check the digit count.
        let digits = s.chars().filter(|c| c.is_ascii_digit()).collect::<String>();
        let sig = digits.trim_start_matches('0').len();
        if sig > 17 && decimals > 1 {
            let d = decimals - (sig - 17);
            return format!("{x:.d$}");
        }
        s
    } else {
        format!("{x:.16e}")
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                write!(out, "{i}").unwrap();
            } else if let Some(u) = n.as_u64() {
                write!(out, "{u}").unwrap();
            } else {
                out.push_str(&fmt17(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).unwrap()),
        Value::Array(a) => {
            if a.is_empty() {
                out.push_str("[]");
            } else if a.iter().all(|x| x.is_number() || x.is_null()) {
                out.push('[');
                for (k, x) in a.iter().enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    write_value(out, x, indent);
                }
                out.push(']');
            } else {
                out.push_str("[\n");
                for (k, x) in a.iter().enumerate() {
                    out.push_str(&pad(indent + 1));
                    write_value(out, x, indent + 1);
                    if k + 1 < a.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                out.push_str(&pad(indent));
                out.push(']');
            }
        }
        Value::Object(m) => {
            if m.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (k, (key, x)) in m.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(key).unwrap());
                out.push_str(": ");
                write_value(out, x, indent + 1);
                if k + 1 < m.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
    }
}

/// Pretty JSON with sorted keys and [`fmt17`] floats, newline terminated.
pub fn to_json(v: &impl Serialize) -> String {
    let value = serde_json::to_value(v).expect("serializable report");
    let mut s = String::new();
    write_value(&mut s, &value, 0);
    s.push('\n');
    s
}

/// CSV from a header and string rows.
pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}
