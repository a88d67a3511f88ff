//! Deterministic text output helpers.

use std::fs;
use std::io;
use std::path::Path;

/// Formats a float with 17 significant digits so the text round-trips to the
/// exact same bit pattern. Negative zero is normalized.
pub fn format_f64(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

/// Writes a file atomically: the content lands under a temporary name in the
/// target directory and is renamed into place.
pub fn write_atomic(path: &Path, content: &str) -> io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let file_name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "path has no file name"))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(file_name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp_path = match dir {
        Some(d) => d.join(&tmp_name),
        None => Path::new(&tmp_name).to_path_buf(),
    };
    fs::write(&tmp_path, content)?;
    fs::rename(&tmp_path, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatted_floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-17, 123456.789, 0.0, -0.0, 1e300] {
            let s = format_f64(v);
            let back: f64 = s.parse().unwrap();
            if v == 0.0 {
                assert_eq!(back, 0.0);
                assert!(!s.starts_with('-'));
            } else {
                assert_eq!(back, v, "{s}");
            }
        }
    }

    #[test]
    fn atomic_write_replaces_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, "a,b\n").unwrap();
        write_atomic(&path, "c,d\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "c,d\n");
    }
}
