use std::io::Write;

use super::CliError;

/// Header plus rectangular numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputTable {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl OutputTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(
            row.len(),
            self.header.len(),
            "row width must match the header"
        );
        self.rows.push(row);
    }

    /// Prepends a constant column.
    pub fn with_leading_column(self, name: &str, value: f64) -> Self {
        let mut header = vec![name.to_string()];
        header.extend(self.header);
        let rows = self
            .rows
            .into_iter()
            .map(|r| std::iter::once(value).chain(r).collect())
            .collect();
        Self { header, rows }
    }

    /// Appends the rows of `other`, which must share the header.
    pub fn extend(&mut self, other: OutputTable) {
        assert_eq!(self.header, other.header);
        self.rows.extend(other.rows);
    }
}

/// Scientific notation with 17 significant digits; round-trips every finite
/// `f64`.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn render_csv(table: &OutputTable) -> String {
    let mut out = table.header.join(",");
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|&v| format_value(v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Writes the table to `path`, `-` meaning standard output.
pub fn emit_csv(table: &OutputTable, path: &str) -> Result<(), CliError> {
    let text = render_csv(table);
    if path == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout
            .write_all(text.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
    } else {
        std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {path}: {e}")))
    }
}
