use serde_json::Value;

/// Renders a JSON value as `path: value` lines, one per scalar, in document
/// order. Numbers and strings print bare; null fields are omitted.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    walk(v, String::new(), &mut out);
    out
}

fn walk(v: &Value, path: String, out: &mut String) {
    match v {
        Value::Null => {}
        Value::Object(map) => {
            for (k, x) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                walk(x, p, out);
            }
        }
        Value::Array(items) => {
            // Short rows of scalars (vectors, matrix rows) stay on one line.
            if !items.is_empty() && items.len() <= 12 && items.iter().all(|x| !x.is_object() && !x.is_array()) {
                let row: Vec<String> = items.iter().map(scalar).collect();
                out.push_str(&format!("{path}: [{}]\n", row.join(", ")));
            } else if items.is_empty() {
                out.push_str(&format!("{path}: []\n"));
            } else {
                for (i, x) in items.iter().enumerate() {
                    walk(x, format!("{path}[{i}]"), out);
                }
            }
        }
        _ => out.push_str(&format!("{path}: {}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "null".into(),
        other => other.to_string(),
    }
}
