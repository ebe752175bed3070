//! Reports rendered either as aligned text or as JSON with fixed keys.

use mdpconv::{FieldElement, FieldSpec, Matrix, Poly, PolyMatrix};
use serde_json::{Map, Value};

pub fn element_json(f: &FieldSpec, c: FieldElement) -> Value {
    if f.is_prime_field() {
        Value::from(c.index())
    } else {
        Value::from(f.coeffs(c))
    }
}

/// Ascending coefficients; the zero polynomial is `[]`.
pub fn poly_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(|&c| element_json(p.field(), c)).collect())
}

pub fn poly_matrix_json(m: &PolyMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| poly_json(m.get(i, j))).collect()))
            .collect(),
    )
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|&c| element_json(m.field(), c)).collect()))
            .collect(),
    )
}

pub fn scalar_matrix_text(m: &Matrix) -> String {
    let f = m.field();
    (0..m.rows())
        .map(|i| {
            let row: Vec<String> = m.row(i).iter().map(|&c| f.format_element(c)).collect();
            format!("[ {} ]", row.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn opt_json<T: Into<Value>>(v: Option<T>) -> Value {
    v.map_or(Value::Null, Into::into)
}

pub fn opt_text<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "none".to_string(), |x| x.to_string())
}

pub fn list_text<T: ToString>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn indent_block(text: &str) -> String {
    format!("\n    {}", text.replace('\n', "\n    "))
}

#[derive(Clone, Debug)]
pub struct Report {
    command: String,
    entries: Vec<(String, Value, String)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self { command: command.to_string(), entries: Vec::new() }
    }

    pub fn put(&mut self, key: &str, json: impl Into<Value>, text: impl ToString) -> &mut Self {
        self.entries.push((key.to_string(), json.into(), text.to_string()));
        self
    }

    /// Same value in both renderings.
    pub fn put_value<T: Into<Value> + ToString + Clone>(&mut self, key: &str, v: T) -> &mut Self {
        self.put(key, v.clone(), v)
    }

    pub fn put_poly_matrix(&mut self, key: &str, m: &PolyMatrix) -> &mut Self {
        let text = m.to_string();
        self.put(key, poly_matrix_json(m), indent_block(text.trim_end()))
    }

    pub fn put_matrix(&mut self, key: &str, m: &Matrix) -> &mut Self {
        self.put(key, matrix_json(m), indent_block(&scalar_matrix_text(m)))
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _, _)| k == key).map(|(_, v, _)| v)
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("command".to_string(), Value::from(self.command.clone()));
        for (k, v, _) in &self.entries {
            map.insert(k.clone(), v.clone());
        }
        Value::Object(map)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for (k, _, t) in &self.entries {
            out.push_str(&format!("  {k}: {t}\n"));
        }
        out
    }
}
