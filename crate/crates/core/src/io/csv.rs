//! `x,y,alpha,method` tables. Floats are written in Rust's shortest
//! round-trip form, so parsing a file recovers every value bit for bit.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::sample::{CurveSampleTable, SampleRow};
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "x,y,alpha,method";

pub fn to_csv_string(table: &CurveSampleTable) -> String {
    let mut out = String::with_capacity(48 * (table.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &table.rows {
        // `{:?}` is the shortest representation that parses back exactly
        let _ = writeln!(out, "{:?},{:?},{:?},{}", r.x, r.y, r.alpha, r.method);
    }
    out
}

pub fn emit_csv(table: &CurveSampleTable, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if let Some(bad) = table
        .rows
        .iter()
        .find(|r| r.method.contains([',', '\n', '\r']))
    {
        return Err(Error::Config(format!(
            "method label {:?} cannot be written to CSV",
            bad.method
        )));
    }
    fs::write(path, to_csv_string(table)).map_err(|e| Error::io(path, e))
}

/// Parses CSV text; `origin` is only used in error messages.
pub fn parse_csv(text: &str, origin: impl AsRef<Path>) -> Result<CurveSampleTable> {
    let origin = origin.as_ref();
    let err = |line: usize, message: String| Error::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };
    let mut lines = text.lines();
    match lines.next() {
        Some(CSV_HEADER) => {}
        other => {
            return Err(err(
                1,
                format!("expected header `{CSV_HEADER}`, found {other:?}"),
            ))
        }
    }
    let mut table = CurveSampleTable::new();
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let fields: Vec<&str> = line.split(',').collect();
        let [x, y, alpha, method] = fields[..] else {
            return Err(err(lineno, format!("expected 4 fields, found {}", fields.len())));
        };
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|e| err(lineno, format!("bad number {s:?}: {e}")))
        };
        table.push(SampleRow::new(num(x)?, num(y)?, num(alpha)?, method));
    }
    Ok(table)
}

/// Reads a table and spot-checks that every row lies on its member.
pub fn read_csv(path: impl AsRef<Path>) -> Result<CurveSampleTable> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let table = parse_csv(&text, path)?;
    table
        .validate_membership()
        .map_err(|(row, message)| Error::Parse {
            path: path.to_path_buf(),
            line: row + 2,
            message,
        })?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_is_header_only() {
        assert_eq!(to_csv_string(&CurveSampleTable::new()), "x,y,alpha,method\n");
    }

    #[test]
    fn one_row() {
        let mut t = CurveSampleTable::new();
        t.push(SampleRow::new(0.0, 1.0, 0.0, "classical"));
        let s = to_csv_string(&t);
        assert_eq!(s, "x,y,alpha,method\n0.0,1.0,0.0,classical\n");
        assert_eq!(s.lines().count(), 2);
        assert_eq!(parse_csv(&s, "mem").unwrap(), t);
    }

    #[test]
    fn awkward_floats_survive() {
        let mut t = CurveSampleTable::new();
        t.push(SampleRow::new(-0.0, 1e-300, f64::MIN_POSITIVE, "radial"));
        t.push(SampleRow::new(0.1 + 0.2, -1.234_567_890_123_456_7e10, 1.0 / 3.0, "limit"));
        let back = parse_csv(&to_csv_string(&t), "mem").unwrap();
        for (a, b) in t.rows.iter().zip(&back.rows) {
            assert_eq!(a.x.to_bits(), b.x.to_bits());
            assert_eq!(a.y.to_bits(), b.y.to_bits());
            assert_eq!(a.alpha.to_bits(), b.alpha.to_bits());
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(parse_csv("a,b\n", "f.csv"), Err(Error::Parse { line: 1, .. })));
        let e = parse_csv("x,y,alpha,method\n1,2,3,fc\n1,2,fc\n", "f.csv").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_csv("x,y,alpha,method\n1,two,3,fc\n", "f.csv").unwrap_err();
        assert!(e.to_string().starts_with("f.csv:2:"));
    }

    #[test]
    fn io_errors_name_the_path() {
        let e = emit_csv(&CurveSampleTable::new(), "/nonexistent-dir/out.csv").unwrap_err();
        assert!(matches!(e, Error::Io { .. }));
        assert!(e.to_string().contains("/nonexistent-dir/out.csv"));
        assert!(read_csv("/nonexistent-dir/in.csv").is_err());
    }

    #[test]
    fn labels_with_commas_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let mut t = CurveSampleTable::new();
        t.push(SampleRow::new(0.0, 1.0, 0.0, "a,b"));
        assert!(matches!(emit_csv(&t, dir.path().join("x.csv")), Err(Error::Config(_))));
    }
}
