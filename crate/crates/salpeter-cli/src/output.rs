//! Float formatting and CSV emission.

use std::io::Write;
use std::path::Path;

use crate::error::CliError;

/// Format a float at the given number of significant digits, using the
/// shortest decimal that round-trips to the rounded value. Plain notation is
/// used for magnitudes in [1e-4, 1e6), exponent notation outside.
pub fn format_float(value: f64, precision: u8) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return format!("{value}");
    }
    let rounded: f64 = format!("{:.*e}", precision as usize - 1, value)
        .parse()
        .expect("rounded float reparses");
    if rounded == 0.0 {
        return "0".to_string();
    }
    let magnitude = rounded.abs();
    if (1e-4..1e6).contains(&magnitude) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// CSV table with a header, rows, and an optional trailing comment line.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    trailer: Option<String>,
}

impl Table {
    /// Start a table with the given column names.
    pub fn new<I, S>(columns: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Table {
            header: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            trailer: None,
        }
    }

    /// Append one data row; its width must match the header.
    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Append every row of a finished sweep.
    pub fn extend_rows(&mut self, rows: Vec<Vec<String>>) {
        for row in rows {
            self.push_row(row);
        }
    }

    /// Set a `# key=value ...` comment emitted after the last row.
    pub fn set_trailer(&mut self, line: String) {
        self.trailer = Some(line);
    }

    /// Render as CSV: comma separators, LF endings, trailing newline.
    pub fn render(&self) -> String {
        let mut text = self.header.join(",");
        text.push('\n');
        for row in &self.rows {
            text.push_str(&row.join(","));
            text.push('\n');
        }
        if let Some(trailer) = &self.trailer {
            text.push_str(trailer);
            text.push('\n');
        }
        text
    }
}

/// Write rendered text to the given path, or to stdout when none.
pub fn write_text(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|err| CliError::Input(format!("cannot write to stdout: {err}")))
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|err| CliError::Input(format!("cannot write {}: {err}", path.display()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_at_requested_precision() {
        assert_eq!(format_float(0.0, 12), "0");
        assert_eq!(format_float(-0.0, 12), "0");
        assert_eq!(format_float(1.0, 12), "1");
        assert_eq!(format_float(0.5, 12), "0.5");
        assert_eq!(format_float(2.0 / 3.0, 6), "0.666667");
        assert_eq!(format_float(-2.0 / 3.0, 6), "-0.666667");
        assert_eq!(format_float(123456.789, 6), "123457");
        assert_eq!(format_float(0.964877138604, 12), "0.964877138604");
    }

    #[test]
    fn switches_to_exponent_notation_outside_the_plain_range() {
        assert_eq!(format_float(1e6, 12), "1e6");
        assert_eq!(format_float(1.2345e-7, 4), "1.235e-7");
        assert_eq!(format_float(-3.0e8, 6), "-3e8");
        assert_eq!(format_float(9.9999e-5, 3), "0.0001");
    }

    #[test]
    fn formatted_values_round_trip() {
        let values = [1.0658707057768204, -0.7659933442350314, 2.16606748601e-6, 0.775686233951615];
        for &v in &values {
            let text = format_float(v, 17);
            let back: f64 = text.parse().unwrap();
            assert_eq!(back, v, "{text}");
        }
        for &v in &values {
            let text = format_float(v, 12);
            let back: f64 = text.parse().unwrap();
            assert!(((back - v) / v).abs() < 1e-11, "{text}");
        }
    }

    #[test]
    fn renders_csv_with_trailer() {
        let mut table = Table::new(["a", "b"]);
        table.push_row(vec!["1".into(), "2".into()]);
        table.push_row(vec!["3".into(), String::new()]);
        table.set_trailer("# note=ok".into());
        assert_eq!(table.render(), "a,b\n1,2\n3,\n# note=ok\n");
    }
}
