//! Plain-text rendering of report values.
//!
//! Objects become `key: value` lines, lists of scalars become comma lists,
//! matrices one bracketed row per line, and lists of objects sharing their
//! keys an aligned table.

use serde_json::Value;

pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    match v {
        Value::Array(a) if a.iter().all(|x| scalar(x).is_some()) => Some(format!(
            "[{}]",
            a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn table(a: &[Value]) -> Option<(Vec<String>, Vec<Vec<String>>)> {
    let first = a.first()?.as_object()?;
    let keys: Vec<String> = first.keys().cloned().collect();
    let mut rows = Vec::new();
    for x in a {
        let o = x.as_object()?;
        if o.len() != keys.len() {
            return None;
        }
        let row: Option<Vec<String>> = keys.iter().map(|k| o.get(k).and_then(inline)).collect();
        rows.push(row?);
    }
    Some((keys, rows))
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                if let Some(s) = inline(x) {
                    out.push_str(&format!("{pad}{k}: {s}\n"));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(x, indent + 2, out);
                }
            }
        }
        Value::Array(a) => {
            if let Some((keys, rows)) = table(a) {
                let widths: Vec<usize> = (0..keys.len())
                    .map(|c| rows.iter().map(|r| r[c].len()).chain([keys[c].len()]).max().unwrap())
                    .collect();
                let line = |cells: &[String]| -> String {
                    let parts: Vec<String> = cells.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
                    format!("{pad}{}\n", parts.join("  "))
                };
                out.push_str(&line(&keys));
                for r in &rows {
                    out.push_str(&line(r));
                }
            } else {
                for x in a {
                    match inline(x) {
                        Some(s) => out.push_str(&format!("{pad}{s}\n")),
                        None => {
                            out.push_str(&format!("{pad}-\n"));
                            render(x, indent + 2, out);
                        }
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
    fn renders_tables_and_matrices() {
        let v = json!({
            "theta": 1,
            "rows": [{"t": 0, "h": 1}, {"t": 10, "h": 0}],
            "d1": [["x", "y"], ["-y", "x"]],
        });
        let s = to_text(&v);
        assert!(s.contains("theta: 1"));
        assert!(s.contains(" t  h\n"));
        assert!(s.contains("10  0\n"));
        assert!(s.contains("  [x, y]\n"));
    }
}
