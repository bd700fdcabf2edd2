//! Output rendering for the three formats.

use gcart_core::LaurentPoly;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Cell {
    Text(String),
    Poly(LaurentPoly),
}

impl Cell {
    fn plain(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Poly(p) => p.term_string(),
        }
    }

    fn latex(&self, math: bool) -> String {
        match (self, math) {
            (Cell::Text(s), _) => latex_escape(s),
            (Cell::Poly(p), true) => p.to_latex(),
            (Cell::Poly(p), false) => format!("${}$", p.to_latex()),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<LaurentPoly> for Cell {
    fn from(p: LaurentPoly) -> Self {
        Cell::Poly(p)
    }
}

/// A rectangular view of a result, used for CSV and LaTeX.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    /// Rendered as a bare matrix (no header) in LaTeX.
    pub matrix: bool,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Leading comment lines, e.g. a conjectural banner.
    pub notes: Vec<String>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { matrix: false, header: header.into_iter().map(Into::into).collect(), rows: Vec::new(), notes: Vec::new() }
    }

    pub fn matrix(rows: Vec<Vec<Cell>>) -> Self {
        Table { matrix: true, header: Vec::new(), rows, notes: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        self.rows.push(row);
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

/// A command result: the JSON document plus its tabular view.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Artifact {
    pub json: serde_json::Value,
    pub table: Table,
    /// `false` when the command checked something and it failed.
    pub ok: bool,
}

pub fn render(a: &Artifact, fmt: Format) -> String {
    match fmt {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&a.json).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Csv => to_csv(&a.table),
        Format::Latex => to_latex(&a.table),
    }
}

fn to_csv(t: &Table) -> String {
    let mut out = String::new();
    for n in &t.notes {
        out.push_str(&format!("# {n}\n"));
    }
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    if !t.header.is_empty() {
        w.write_record(&t.header).expect("in-memory write");
    }
    for row in &t.rows {
        w.write_record(row.iter().map(Cell::plain)).expect("in-memory write");
    }
    out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8"));
    out
}

fn to_latex(t: &Table) -> String {
    let mut out = String::new();
    for n in &t.notes {
        out.push_str(&format!("% {n}\n"));
    }
    let body = |rows: &[Vec<Cell>]| {
        rows.iter()
            .map(|r| r.iter().map(|c| c.latex(t.matrix)).collect::<Vec<_>>().join(" & "))
            .collect::<Vec<_>>()
            .join(" \\\\\n")
    };
    if t.matrix {
        out.push_str("\\begin{pmatrix}\n");
        out.push_str(&body(&t.rows));
        out.push_str("\n\\end{pmatrix}\n");
    } else {
        let cols = t.header.len().max(t.rows.iter().map(Vec::len).max().unwrap_or(0));
        out.push_str(&format!("\\begin{{tabular}}{{{}}}\n\\hline\n", "l".repeat(cols)));
        if !t.header.is_empty() {
            let head: Vec<String> = t.header.iter().map(|h| latex_escape(h)).collect();
            out.push_str(&head.join(" & "));
            out.push_str(" \\\\\n\\hline\n");
        }
        if !t.rows.is_empty() {
            out.push_str(&body(&t.rows));
            out.push_str(" \\\\\n");
        }
        out.push_str("\\hline\n\\end{tabular}\n");
    }
    out
}

fn latex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '_' | '%' | '&' | '#' | '$' | '{' | '}' => {
                out.push('\\');
                out.push(ch);
            }
            _ => out.push(ch),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use gcart_core::qlaurent::quantum_int;

    #[test]
    fn formats() {
        let mut t = Table::new(["lambda", "value"]);
        t.push(vec!["(2,1)".into(), quantum_int(3, 2).into()]);
        let a = Artifact { json: serde_json::json!({"x": 1}), table: t, ok: true };
        assert_eq!(render(&a, Format::Csv), "lambda,value\n\"(2,1)\",1*v^4 + 1*v^0 + 1*v^-4\n");
        let tex = render(&a, Format::Latex);
        assert!(tex.contains("(2,1) & $[3]_{2}$ \\\\"), "{tex}");
        assert_eq!(render(&a, Format::Json), "{\n  \"x\": 1\n}\n");
    }

    #[test]
    fn matrix_latex() {
        let t = Table::matrix(vec![vec![quantum_int(2, 1).into(), LaurentPoly::one().into()]]);
        let a = Artifact { json: serde_json::Value::Null, table: t, ok: true };
        assert_eq!(render(&a, Format::Latex), "\\begin{pmatrix}\n[2] & 1\n\\end{pmatrix}\n");
    }
}
