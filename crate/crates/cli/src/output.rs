use std::io::Write;
use std::path::Path;

use fnf_core::io::RunReport;
use tempfile::NamedTempFile;

/// A CSV plot-data file: fixed header, one line per row.
pub struct CsvFile {
    pub name: &'static str,
    pub header: &'static str,
    pub rows: Vec<String>,
}

impl CsvFile {
    pub fn render(&self) -> String {
        let mut s = String::with_capacity(64 * (self.rows.len() + 1));
        s.push_str(self.header);
        s.push('\n');
        for r in &self.rows {
            s.push_str(r);
            s.push('\n');
        }
        s
    }
}

/// Joins numbers: integral values as integers, the rest in Rust's shortest
/// round-trip exponent form.
pub fn csv_row(values: &[f64]) -> String {
    values
        .iter()
        .map(|&v| if v.fract() == 0.0 && v.abs() < 1e15 { format!("{}", v as i64) } else { format!("{v:e}") })
        .collect::<Vec<_>>()
        .join(",")
}

fn write_atomic(dir: &Path, name: &str, contents: &str) -> std::io::Result<()> {
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(dir.join(name)).map_err(|e| e.error)?;
    Ok(())
}

/// Every file is staged in `dir` and renamed into place, so readers never see
/// a partial report.
pub fn write_all(dir: &Path, report: &RunReport, csv: &[CsvFile]) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for f in csv {
        write_atomic(dir, f.name, &f.render())?;
    }
    write_atomic(dir, "report.json", &report.to_json())
}
