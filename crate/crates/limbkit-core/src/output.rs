//! Small output helpers shared by the library and the CLI.
//!
//! Floats are formatted with Rust's shortest round-trip representation so
//! CSV output is lossless and bit-stable across runs.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

/// Formats a float losslessly for CSV cells.
pub fn fmt_f64(value: f64) -> String {
    let mut s = String::new();
    // `{}` on f64 is the shortest string that round-trips exactly.
    let _ = write!(s, "{value}");
    s
}

/// Writes `contents` to `path` atomically: temp file in the same directory,
/// then rename over the target.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp_path = std::path::PathBuf::from(tmp);
    fs::write(&tmp_path, contents)?;
    fs::rename(&tmp_path, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt_round_trips() {
        for v in [0.0, 0.27057, 1334.46648, 1e-12, -315e3, std::f64::consts::PI] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn write_atomic_creates_parents_and_replaces() {
        let dir = std::env::temp_dir().join(format!("limbkit-out-test-{}", std::process::id()));
        let path = dir.join("nested/file.csv");
        write_atomic(&path, "a,b\n").unwrap();
        write_atomic(&path, "c,d\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "c,d\n");
        fs::remove_dir_all(&dir).unwrap();
    }
}
