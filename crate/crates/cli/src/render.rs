//! Plain-text tables and CSV helpers.

use std::io::{self, Write};

use wilddepth_core::Rational;

/// `7/2 (≈3.500)`; integers print bare.
pub fn rat_table(r: Rational) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        format!("{r} (≈{:.3})", r.approx_f64())
    }
}

/// Left-aligned columns separated by two spaces, with a dashed rule under
/// the header.
pub fn table(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "))?;
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

/// `key : value` lines with aligned colons.
pub fn fields(out: &mut dyn Write, pairs: &[(&str, String)]) -> io::Result<()> {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in pairs {
        writeln!(out, "{k:<width$} : {v}")?;
    }
    Ok(())
}

pub fn csv_rows(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()
}

pub fn csv_serialize<T: serde::Serialize>(out: &mut dyn Write, rows: &[T]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(io::Error::other)?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_layout() {
        let mut buf = Vec::new();
        table(&mut buf, &["a", "long"], &[vec!["xyz".into(), "1".into()]]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a    long\n---  ----\nxyz  1\n");
    }

    #[test]
    fn rationals() {
        assert_eq!(rat_table(Rational::new(7, 2).unwrap()), "7/2 (≈3.500)");
        assert_eq!(rat_table(Rational::integer(4)), "4");
    }
}
