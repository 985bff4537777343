//! Matrix files: a JSON array of rows (entries are integers or `"p/q"`
//! strings), a JSON object `{"n": 3, "A": [...]}`, or comma-separated rows.

use std::fs;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::ratlin::{parse_rational, RatMatrix};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON matrix: {0}")]
    Json(String),
    #[error("malformed CSV matrix: {0}")]
    Csv(String),
    #[error("declared n = {declared} but matrix is {rows}x{cols}")]
    DeclaredOrder {
        declared: usize,
        rows: usize,
        cols: usize,
    },
    #[error("empty matrix")]
    Empty,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Wrapped {
    n: Option<usize>,
    #[serde(rename = "A")]
    a: RatMatrix,
}

pub fn parse_matrix(text: &str) -> Result<RatMatrix, InputError> {
    let t = text.trim_start();
    let m = if t.starts_with('[') {
        serde_json::from_str::<RatMatrix>(t).map_err(|e| InputError::Json(e.to_string()))?
    } else if t.starts_with('{') {
        let w: Wrapped = serde_json::from_str(t).map_err(|e| InputError::Json(e.to_string()))?;
        if let Some(n) = w.n {
            if w.a.rows() != n || w.a.cols() != n {
                return Err(InputError::DeclaredOrder {
                    declared: n,
                    rows: w.a.rows(),
                    cols: w.a.cols(),
                });
            }
        }
        w.a
    } else {
        parse_csv(t)?
    };
    if m.rows() == 0 || m.cols() == 0 {
        return Err(InputError::Empty);
    }
    Ok(m)
}

fn parse_csv(text: &str) -> Result<RatMatrix, InputError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| InputError::Csv(e.to_string()))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let row = rec
            .iter()
            .map(|f| parse_rational(f).map_err(|e| InputError::Csv(format!("row {}: {e}", i + 1))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    RatMatrix::from_rows(rows).map_err(|e| InputError::Csv(e.to_string()))
}

pub fn read_matrix_file(path: &Path) -> Result<RatMatrix, InputError> {
    let text = fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_matrix(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::frac;

    #[test]
    fn json_integers_and_strings() {
        let m = parse_matrix(r#"[[1, "1/2"], ["-3", 4]]"#).unwrap();
        assert_eq!(m.get(0, 1), Some(&frac(1, 2)));
        assert_eq!(m.get(1, 0), Some(&frac(-3, 1)));
    }

    #[test]
    fn wrapped_object() {
        let m = parse_matrix(r#"{"n": 2, "A": [[1, 0], [0, 1]]}"#).unwrap();
        assert_eq!(m, RatMatrix::identity(2));
        assert!(matches!(
            parse_matrix(r#"{"n": 3, "A": [[1, 0], [0, 1]]}"#),
            Err(InputError::DeclaredOrder { declared: 3, .. })
        ));
    }

    #[test]
    fn csv_rows() {
        let m = parse_matrix("1, 1, 0\n1, 1, 1\n# comment\n1, 2/3, 1\n").unwrap();
        assert_eq!(m.rows(), 3);
        assert_eq!(m.get(2, 1), Some(&frac(2, 3)));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            parse_matrix("[[1, 2], [3]]"),
            Err(InputError::Json(_))
        ));
        assert!(matches!(
            parse_matrix("[[1, 2.5]]"),
            Err(InputError::Json(_))
        ));
        assert!(matches!(
            parse_matrix("1, x\n2, 3"),
            Err(InputError::Csv(_))
        ));
        assert!(matches!(parse_matrix("1, 2\n3"), Err(InputError::Csv(_))));
        assert!(matches!(parse_matrix("[]"), Err(InputError::Empty)));
        assert!(matches!(
            parse_matrix(""),
            Err(InputError::Csv(_)) | Err(InputError::Empty)
        ));
    }
}
