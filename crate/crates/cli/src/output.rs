use serde_json::Value;

use crate::args::Format;

pub fn render(payload: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(payload).expect("values always serialize");
            s.push('\n');
            s
        }
        Format::Table => {
            let mut out = String::new();
            table(payload, 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = a.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        // Permutations print as their cycles.
        Value::Object(m) if m.len() == 2 && m.contains_key("cycles") && m.contains_key("degree") => {
            m["cycles"].as_str().map(str::to_string)
        }
        _ => None,
    }
}

fn table(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            let width = m.keys().map(|k| k.len()).max().unwrap_or(0);
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k:<width$}  {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}\n"));
                        table(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{s}\n")),
                    None => {
                        out.push_str(&format!("{pad}#{i}\n"));
                        table(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn table_layout() {
        let v = json!({
            "genus": 3,
            "n_set": [2, 3],
            "witness": { "x": { "degree": 8, "cycles": "(1,2)" } },
            "rows": [{ "q": 7 }],
        });
        let t = render(&v, Format::Table);
        assert_eq!(t, "genus    3\nn_set    [2, 3]\nrows\n  #0\n    q  7\nwitness\n  x  (1,2)\n");
    }

    #[test]
    fn json_round_trip() {
        let v = json!({ "a": [1, 2, { "b": null }], "c": "(0;2,3,7)" });
        let back: Value = serde_json::from_str(&render(&v, Format::Json)).unwrap();
        assert_eq!(back, v);
    }
}
