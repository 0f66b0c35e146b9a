use std::fmt::Write as _;

use serde_json::{Map, Value};

/// One output value. Counts stay decimal strings end to end.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Count(String),
    Int(i64),
    Float(f64),
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn count(c: impl ToString) -> Self {
        Cell::Count(c.to_string())
    }

    pub fn int(v: usize) -> Self {
        Cell::Int(v as i64)
    }

    pub fn opt_float(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }

    fn csv(&self) -> String {
        match self {
            Cell::Text(s) | Cell::Count(s) => quote(s),
            Cell::Int(v) => v.to_string(),
            // `Display` for f64 is the shortest string that parses back exactly.
            Cell::Float(v) => v.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) | Cell::Count(s) => Value::String(s.clone()),
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Empty => Value::Null,
        }
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self, meta: Value) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = serde_json::json!({ "meta": meta, "rows": rows });
        let mut out = serde_json::to_string_pretty(&doc).expect("json values serialise");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quoting_and_floats() {
        let mut t = Table::new(&["a", "b", "c", "d"]);
        t.push(vec![
            Cell::text("x,y"),
            Cell::Float(0.1),
            Cell::count(12345678901234567890u128),
            Cell::Empty,
        ]);
        assert_eq!(t.to_csv(), "a,b,c,d\n\"x,y\",0.1,12345678901234567890,\n");
    }

    #[test]
    fn json_shape() {
        let mut t = Table::new(&["n", "count"]);
        t.push(vec![Cell::int(3), Cell::count(7)]);
        let v: Value = serde_json::from_str(&t.to_json(serde_json::json!({"k": 1}))).unwrap();
        assert_eq!(v["rows"][0]["count"], "7");
        assert_eq!(v["rows"][0]["n"], 3);
        assert_eq!(v["meta"]["k"], 1);
    }
}
