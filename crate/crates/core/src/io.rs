//! Output formats: binary PGM rasters with a `key=value` sidecar header,
//! CSV tables with round-trip float formatting, and atomic file writes.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

/// Binary (`P5`) PGM with maxval 255.
pub fn pgm_bytes(width: usize, height: usize, levels: &[u8]) -> Vec<u8> {
    assert_eq!(levels.len(), width * height, "raster size mismatch");
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(levels);
    out
}

/// `key=value` lines, in the given order.
pub fn header_text(pairs: &[(&str, String)]) -> String {
    let mut s = String::new();
    for (k, v) in pairs {
        writeln!(s, "{k}={v}").expect("writing to a String");
    }
    s
}

/// In-memory CSV table.
pub struct Table {
    w: csv::Writer<Vec<u8>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(columns).expect("in-memory write");
        Self { w }
    }

    pub fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.w.write_record(fields).expect("in-memory write");
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.w.into_inner().expect("in-memory flush")
    }
}

/// Writes `bytes` to `path` through a temporary file in the same directory
/// and a rename. Without `force`, an existing file is left untouched and
/// an `AlreadyExists` error is returned.
pub fn write_atomic(path: &Path, bytes: &[u8], force: bool) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    if !force && path.exists() {
        return Err(io::Error::new(
            io::ErrorKind::AlreadyExists,
            format!("{} exists (use --force to overwrite)", path.display()),
        ));
    }
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    if force {
        tmp.persist(path).map_err(|e| e.error)?;
    } else {
        tmp.persist_noclobber(path).map_err(|e| e.error)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e-300, -2.5e17, std::f64::consts::LN_2] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_f64(2.0), "2.0");
    }

    #[test]
    fn pgm_layout() {
        let b = pgm_bytes(2, 1, &[0, 255]);
        assert_eq!(&b[..], b"P5\n2 1\n255\n\x00\xff");
    }

    #[test]
    fn table_quotes_when_needed() {
        let mut t = Table::new(&["a", "note"]);
        t.row([fmt_f64(1.5), "x,y".to_string()]);
        assert_eq!(
            String::from_utf8(t.into_bytes()).unwrap(),
            "a,note\n1.5,\"x,y\"\n"
        );
    }

    #[test]
    fn refuses_to_overwrite() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("sub/out.txt");
        write_atomic(&p, b"one", false).unwrap();
        let e = write_atomic(&p, b"two", false).unwrap_err();
        assert_eq!(e.kind(), io::ErrorKind::AlreadyExists);
        assert_eq!(std::fs::read(&p).unwrap(), b"one");
        write_atomic(&p, b"two", true).unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
    }
}
