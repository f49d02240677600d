//! Deterministic table writers. Floating-point cells are printed with 17
//! significant digits (`{:.16e}`), which round-trips binary64 exactly, so
//! identical configs produce byte-identical files.

use std::io::Write;

pub enum Cell {
    Text(String),
    Float(f64),
    Int(i64),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Float(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Text(s) => format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"")),
            Cell::Float(v) => {
                if v.is_finite() {
                    format_float(*v)
                } else {
                    format!("\"{v}\"")
                }
            }
            Cell::Int(v) => v.to_string(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// A table with a fixed column order.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    /// JSON mirror of the CSV: an array of objects with the same fields
    /// in the same order.
    pub fn write_json<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            let fields: Vec<String> = self
                .columns
                .iter()
                .zip(row)
                .map(|(name, cell)| format!("\"{name}\":{}", cell.json()))
                .collect();
            let sep = if i + 1 == self.rows.len() { "" } else { "," };
            writeln!(w, "  {{{}}}{sep}", fields.join(","))?;
        }
        writeln!(w, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_round_trips() {
        for &v in &[0.1, 2.0 / 3.0, 1.0, 123456.789, 1e-300] {
            let s = format_float(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, v, "{s}");
        }
    }

    #[test]
    fn csv_and_json_shapes() {
        let mut t = Table::new(vec!["name", "value"]);
        t.push(vec![Cell::Text("x".into()), Cell::Float(0.5)]);
        let mut csv = Vec::new();
        t.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with("name,value\n"));
        assert!(text.contains("5.0000000000000000e-1"));
        let mut json = Vec::new();
        t.write_json(&mut json).unwrap();
        let text = String::from_utf8(json).unwrap();
        assert!(text.contains("\"name\":\"x\""));
    }
}
