//! CSV output with `#`-prefixed metadata lines.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

/// Rows of numbers under named columns, preceded by `key = value` metadata.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, ..Self::default() }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.metadata.push((key.to_string(), value.to_string()));
        self
    }

    /// The CSV text. Numbers use the shortest representation that parses
    /// back to the same value, so output is reproducible bit for bit.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k} = {v}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Writes to `path`, or to stdout when there is none.
    pub fn write(&self, path: Option<&Path>) -> std::io::Result<()> {
        let text = self.render();
        match path {
            Some(p) => {
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(dir)?;
                }
                std::fs::write(p, text)
            }
            None => std::io::stdout().lock().write_all(text.as_bytes()),
        }
    }
}
