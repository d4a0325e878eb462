//! Tabular output in text, CSV and JSON.

use std::io::Write;

use satake::lattice::Weight;
use satake::poly::LaurentPoly;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Weight(Weight),
    Poly(LaurentPoly),
    Int(i64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Weight(w) => w.to_string(),
            Cell::Poly(p) => p.to_string(),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    /// Weights become integer arrays and polynomials keep their string form.
    fn to_json(&self) -> Value {
        match self {
            Cell::Weight(w) => json!(w.coords()),
            Cell::Poly(p) => json!(p.to_string()),
            Cell::Int(n) => json!(n),
            Cell::Text(s) => json!(s),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra lines shown after the rows in text output only.
    pub footer: Vec<String>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            footer: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Text => self.write_text(out),
            Format::Csv => self.write_csv(out),
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let obj: Map<String, Value> = self
                            .columns
                            .iter()
                            .zip(r)
                            .map(|(c, v)| (c.to_string(), v.to_json()))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                serde_json::to_writer_pretty(&mut *out, &rows)?;
                writeln!(out)
            }
        }
    }

    fn write_text(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::render).collect())
            .collect();
        let mut width: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for r in &cells {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |fields: Vec<&str>| {
            let padded: Vec<String> = fields
                .iter()
                .zip(&width)
                .map(|(f, w)| format!("{f:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        writeln!(out, "{}", line(self.columns.clone()))?;
        for r in &cells {
            writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
        }
        for f in &self.footer {
            writeln!(out, "{f}")?;
        }
        Ok(())
    }

    fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::render))?;
        }
        w.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(vec!["kappa", "coefficient"]);
        t.push(vec![
            Cell::Weight(Weight(vec![0, 2])),
            Cell::Poly(LaurentPoly::one()),
        ]);
        t.push(vec![
            Cell::Weight(Weight(vec![1, 1])),
            Cell::Poly(LaurentPoly::monomial(2, 1)),
        ]);
        t
    }

    fn render(f: Format) -> String {
        let mut buf = Vec::new();
        sample().write(f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn csv_quotes_weights() {
        assert_eq!(
            render(Format::Csv),
            "kappa,coefficient\n\"(0,2)\",1\n\"(1,1)\",2*q\n"
        );
    }

    #[test]
    fn text_is_aligned() {
        assert_eq!(
            render(Format::Text),
            "kappa  coefficient\n(0,2)  1\n(1,1)  2*q\n"
        );
    }

    #[test]
    fn json_uses_arrays_for_weights() {
        let v: Value = serde_json::from_str(&render(Format::Json)).unwrap();
        assert_eq!(v[1]["kappa"], json!([1, 1]));
        assert_eq!(v[1]["coefficient"], json!("2*q"));
    }
}
