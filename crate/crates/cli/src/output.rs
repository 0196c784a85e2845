//! Deterministic report bytes and atomic file output.

use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

use etafloor_core::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Shortest decimal that parses back to the same binary64.
pub fn real(x: Real) -> String {
    format!("{x:?}")
}

/// A header and rows of already formatted cells.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }
}

pub fn json<T: Serialize>(doc: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(doc).expect("documents serialize");
    bytes.push(b'\n');
    bytes
}

/// Write through a temporary file in the destination directory, then rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_round_trip() {
        for x in [
            0.1,
            1.0,
            1e-7,
            std::f64::consts::LN_2,
            1.0 / 3.0,
            -2.5e300,
            5e-324,
        ] {
            assert_eq!(real(x).parse::<Real>().unwrap(), x);
        }
        assert_eq!(real(0.1), "0.1");
    }

    #[test]
    fn csv_uses_line_feeds() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec!["1.0".into(), "x,y".into()]);
        assert_eq!(t.to_csv(), b"a,b\n1.0,\"x,y\"\n");
    }
}
