use std::fs;
use std::io::Write;
use std::path::Path;

use gauss_tps::CovarianceMatrix;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const ORDERING: &str = "qA,pA,qB,pB";
/// Largest `|V_ij - V_ji|` accepted from a file.
pub const FILE_SYMMETRY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub ordering: String,
    pub matrix: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl MatrixFile {
    pub fn from_covariance(v: &CovarianceMatrix, label: Option<String>) -> Self {
        Self {
            ordering: ORDERING.to_string(),
            matrix: v.rows().iter().map(|r| r.to_vec()).collect(),
            label,
        }
    }

    pub fn to_covariance(&self) -> Result<CovarianceMatrix, CliError> {
        if self.ordering != ORDERING {
            return Err(CliError::Parse(format!(
                "ordering must be \"{ORDERING}\", got \"{}\"",
                self.ordering
            )));
        }
        if self.matrix.len() != 4 || self.matrix.iter().any(|r| r.len() != 4) {
            return Err(CliError::Parse("matrix must be 4x4".into()));
        }
        let mut rows = [[0.0; 4]; 4];
        for (i, r) in self.matrix.iter().enumerate() {
            rows[i].copy_from_slice(r);
        }
        CovarianceMatrix::from_rows(rows, FILE_SYMMETRY_TOL)
            .map_err(|e| CliError::Parse(e.to_string()))
    }
}

pub fn read_matrix(path: &Path) -> Result<(CovarianceMatrix, Option<String>), CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let file: MatrixFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Ok((file.to_covariance()?, file.label))
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Writes to `path`, or to stdout without one.
pub fn emit(path: Option<&Path>, contents: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => write_atomic(p, contents),
        None => std::io::stdout()
            .write_all(contents)
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report types serialize");
    out.push(b'\n');
    out
}

pub fn fmt_value(x: f64) -> String {
    format!("{x:.11e}")
}

pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new(meta: &str, header: &str) -> Self {
        Self {
            buf: format!("# {meta}\n{header}\n"),
        }
    }

    pub fn row(&mut self, values: &[f64]) {
        let cells: Vec<String> = values.iter().map(|&x| fmt_value(x)).collect();
        self.buf.push_str(&cells.join(","));
        self.buf.push('\n');
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf.into_bytes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_have_twelve_significant_digits() {
        assert_eq!(fmt_value(std::f64::consts::LOG2_E), "1.44269504089e0");
        assert_eq!(fmt_value(0.0), "0.00000000000e0");
    }

    #[test]
    fn rejects_wrong_ordering_and_shape() {
        let mut f = MatrixFile::from_covariance(&CovarianceMatrix::vacuum(), None);
        f.ordering = "qA,qB,pA,pB".into();
        assert!(matches!(f.to_covariance(), Err(CliError::Parse(_))));
        let mut f = MatrixFile::from_covariance(&CovarianceMatrix::vacuum(), None);
        f.matrix.pop();
        assert!(matches!(f.to_covariance(), Err(CliError::Parse(_))));
        let mut f = MatrixFile::from_covariance(&CovarianceMatrix::vacuum(), None);
        f.matrix[0][1] = 1e-6;
        assert!(matches!(f.to_covariance(), Err(CliError::Parse(_))));
    }

    #[test]
    fn json_round_trip() {
        let v = gauss_tps::pure_tms(0.7).unwrap();
        let text = to_json(&MatrixFile::from_covariance(&v, Some("tms".into())));
        let back: MatrixFile = serde_json::from_slice(&text).unwrap();
        assert_eq!(back.to_covariance().unwrap(), v);
    }
}
