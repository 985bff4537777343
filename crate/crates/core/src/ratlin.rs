//! Exact rational scalars and dense matrices.
//!
//! Every elimination pivots on the first nonzero entry scanning rows top to
//! bottom, so kernels and witnesses come out identical on every run.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary-precision rational, always held in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular (det = {det})")]
    Singular { det: Rational },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("row/column subsets have different sizes ({rows} vs {cols})")]
    SubsetSize { rows: usize, cols: usize },
    #[error("index {index} out of range for dimension {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics when `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses the text form `p/q` (or a bare integer `p`).
pub fn parse_rational(s: &str) -> Result<Rational, LinError> {
    let t = s.trim();
    let bad = || LinError::Parse(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => t
            .parse::<BigInt>()
            .map(Rational::from_integer)
            .map_err(|_| bad()),
    }
}

/// Canonical `p/q` text, `q` omitted when it is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Serde adapters for rationals and rational vectors as `"p/q"` strings.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let e = Entry::deserialize(d)?;
        e.into_rational().map_err(de::Error::custom)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let v = Vec::<Entry>::deserialize(d)?;
            v.into_iter()
                .map(|e| e.into_rational().map_err(de::Error::custom))
                .collect()
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&format_rational(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            let e = Option::<Entry>::deserialize(d)?;
            e.map(|e| e.into_rational().map_err(de::Error::custom))
                .transpose()
        }
    }
}

/// A matrix entry as it appears in input files: an integer or a `"p/q"` string.
#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Str(String),
}

impl Entry {
    fn into_rational(self) -> Result<Rational, LinError> {
        match self {
            Entry::Int(i) => Ok(int(i)),
            Entry::Str(s) => parse_rational(&s),
        }
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, LinError> {
        if entries.len() != rows * cols {
            return Err(LinError::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinError::Shape("rows have different lengths".into()));
        }
        RatMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor for integer matrices; panics on ragged input.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| int(x)).collect())
            .collect();
        RatMatrix::from_rows(rows).expect("ragged integer rows")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Rational>]) -> Result<Self, LinError> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(LinError::Shape("columns have different lengths".into()));
        }
        let mut m = RatMatrix::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.entries[i * cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Rational> {
        (i < self.rows && j < self.cols).then(|| &self.entries[i * self.cols + j])
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, LinError> {
        if self.cols != other.rows {
            return Err(LinError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    let a = &self[(i, k)];
                    if !a.is_zero() {
                        acc += a * &other[(k, j)];
                    }
                }
                out.entries[i * other.cols + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinError> {
        if v.len() != self.cols {
            return Err(LinError::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    fn require_square(&self) -> Result<(), LinError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Exact determinant by Gaussian elimination.
    pub fn det(&self) -> Result<Rational, LinError> {
        self.require_square()?;
        let n = self.rows;
        let mut m = self.to_rows();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            let pivot = m[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] / &pivot;
                for c in col..n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RatMatrix, LinError> {
        self.require_square()?;
        let n = self.rows;
        let mut m = self.to_rows();
        let mut inv = RatMatrix::identity(n).to_rows();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Err(LinError::Singular {
                    det: Rational::zero(),
                });
            };
            m.swap(p, col);
            inv.swap(p, col);
            let pivot_inv = m[col][col].recip();
            for c in 0..n {
                m[col][c] *= &pivot_inv;
                inv[col][c] *= &pivot_inv;
            }
            for r in 0..n {
                if r == col || m[r][col].is_zero() {
                    continue;
                }
                let factor = m[r][col].clone();
                for c in 0..n {
                    let dm = &factor * &m[col][c];
                    m[r][c] -= dm;
                    let di = &factor * &inv[col][c];
                    inv[r][c] -= di;
                }
            }
        }
        RatMatrix::from_rows(inv)
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.to_rows();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(p, row);
            let pivot_inv = m[row][col].recip();
            for c in col..self.cols {
                m[row][c] *= &pivot_inv;
            }
            for r in 0..self.rows {
                if r == row || m[r][col].is_zero() {
                    continue;
                }
                let factor = m[r][col].clone();
                for c in col..self.cols {
                    let d = &factor * &m[row][c];
                    m[r][c] -= d;
                }
            }
            pivots.push(col);
            row += 1;
        }
        let reduced = RatMatrix::new(self.rows, self.cols, m.into_iter().flatten().collect())
            .expect("rref preserves shape");
        (reduced, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space. Vectors are ordered by free column and
    /// scaled so that their first nonzero coordinate is 1.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, free)].clone();
            }
            normalize_leading(&mut v);
            basis.push(v);
        }
        basis
    }

    /// Unique solution `x` of `self * x = rhs`, `None` when the system is
    /// inconsistent or underdetermined.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Option<Vec<Rational>>, LinError> {
        if rhs.len() != self.rows {
            return Err(LinError::Shape(format!(
                "right-hand side of length {} for {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let mut aug = RatMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.entries[i * (self.cols + 1) + j] = self[(i, j)].clone();
            }
            aug.entries[i * (self.cols + 1) + self.cols] = rhs[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) || pivots.len() < self.cols {
            return Ok(None);
        }
        Ok(Some(
            (0..self.cols).map(|i| r[(i, self.cols)].clone()).collect(),
        ))
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Rational, LinError> {
        if rows.len() != cols.len() {
            return Err(LinError::SubsetSize {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        if let Some(&i) = rows.iter().find(|&&i| i >= self.rows) {
            return Err(LinError::IndexOutOfRange {
                index: i,
                len: self.rows,
            });
        }
        if let Some(&j) = cols.iter().find(|&&j| j >= self.cols) {
            return Err(LinError::IndexOutOfRange {
                index: j,
                len: self.cols,
            });
        }
        let sub = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self[(i, j)].clone()).collect())
            .collect();
        RatMatrix::from_rows(sub)?.det()
    }
}

/// Scales `v` so its first nonzero coordinate becomes 1.
pub fn normalize_leading(v: &mut [Rational]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        if !lead.is_one() {
            for x in v.iter_mut() {
                *x /= &lead;
            }
        }
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        &self.entries[i * self.cols + j]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Entry>>::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(Entry::into_rational)
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(de::Error::custom)?;
        RatMatrix::from_rows(rows).map_err(de::Error::custom)
    }
}

/// Sign-aware absolute value helper used by renderers.
pub(crate) fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> RatMatrix {
        RatMatrix::from_ints(&[[1, 1, 0], [1, 1, 1], [1, 2, 1]])
    }

    fn a2() -> RatMatrix {
        RatMatrix::from_ints(&[[1, 1, 0], [0, 1, 1], [1, 1, 1]])
    }

    // Cofactor expansion along the first row; independent of the elimination path.
    fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 0 {
            return Rational::one();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            let sub: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * cofactor_det(&sub);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn det_examples() {
        assert_eq!(RatMatrix::identity(3).det().unwrap(), int(1));
        assert_eq!(a1().det().unwrap(), int(-1));
        assert_eq!(a2().det().unwrap(), int(1));
        assert_eq!(cofactor_det(&a1().to_rows()), int(-1));
        assert_eq!(cofactor_det(&a2().to_rows()), int(1));
    }

    #[test]
    fn det_rejects_non_square() {
        let m = RatMatrix::zeros(2, 3);
        assert!(matches!(
            m.det(),
            Err(LinError::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            RatMatrix::identity(3).inverse().unwrap(),
            RatMatrix::identity(3)
        );
        let b1 = RatMatrix::from_ints(&[[1, 1, -1], [0, -1, 1], [-1, 1, 0]]);
        let b2 = RatMatrix::from_ints(&[[0, -1, 1], [1, 1, -1], [-1, 0, 1]]);
        assert_eq!(a1().inverse().unwrap(), b1);
        assert_eq!(a2().inverse().unwrap(), b2);
        assert_eq!(a1().mul(&b1).unwrap(), RatMatrix::identity(3));
        assert_eq!(a2().mul(&b2).unwrap(), RatMatrix::identity(3));
    }

    #[test]
    fn singular_inverse_reports_zero_det() {
        let m = RatMatrix::from_ints(&[[1, 1], [1, 1]]);
        match m.inverse() {
            Err(LinError::Singular { det }) => assert!(det.is_zero()),
            other => panic!("expected singular error, got {other:?}"),
        }
    }

    #[test]
    fn kernel_examples() {
        assert!(RatMatrix::identity(3).kernel_basis().is_empty());
        let row = RatMatrix::from_ints(&[[1, -1]]);
        assert_eq!(row.kernel_basis(), vec![vec![int(1), int(1)]]);
    }

    #[test]
    fn kernel_is_normalized() {
        let m = RatMatrix::from_ints(&[[2, 4, 6]]);
        for v in m.kernel_basis() {
            let lead = v.iter().find(|x| !x.is_zero()).unwrap();
            assert!(lead.is_one());
            assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn minor_examples() {
        let m = a1();
        assert_eq!(m.minor(&[1], &[2]).unwrap(), int(1));
        // [I3 | A1]: columns {2,3,6} (1-based) are e2, e3 and A1 column 3.
        let mut stacked = RatMatrix::zeros(3, 6);
        for i in 0..3 {
            stacked.set(i, i, int(1));
            for j in 0..3 {
                stacked.set(i, 3 + j, a1()[(i, j)].clone());
            }
        }
        assert_eq!(stacked.minor(&[0, 1, 2], &[1, 2, 5]).unwrap(), int(0));
        let mut stacked2 = RatMatrix::zeros(3, 6);
        for i in 0..3 {
            stacked2.set(i, i, int(1));
            for j in 0..3 {
                stacked2.set(i, 3 + j, a2()[(i, j)].clone());
            }
        }
        assert_eq!(stacked2.minor(&[0, 1, 2], &[0, 1, 3]).unwrap(), int(1));
    }

    #[test]
    fn minor_errors() {
        let m = a1();
        assert!(matches!(
            m.minor(&[0, 1], &[0]),
            Err(LinError::SubsetSize { .. })
        ));
        assert!(matches!(
            m.minor(&[3], &[0]),
            Err(LinError::IndexOutOfRange { index: 3, len: 3 })
        ));
        assert!(matches!(
            m.minor(&[0], &[7]),
            Err(LinError::IndexOutOfRange { index: 7, len: 3 })
        ));
    }

    #[test]
    fn solve_unique_and_inconsistent() {
        let m = RatMatrix::from_ints(&[[1, 0], [0, 2], [1, 1]]);
        let x = m.solve(&[int(1), int(4), int(3)]).unwrap().unwrap();
        assert_eq!(x, vec![int(1), int(2)]);
        assert!(m.solve(&[int(1), int(4), int(0)]).unwrap().is_none());
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(format_rational(&frac(2, 4)), "1/2");
        assert_eq!(format_rational(&frac(-6, 3)), "-2");
        assert_eq!(parse_rational(" -3/6 ").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn json_matrix_accepts_strings_and_integers() {
        let m: RatMatrix = serde_json::from_str(r#"[["1/2", 3], [0, "-4"]]"#).unwrap();
        assert_eq!(m[(0, 0)], frac(1, 2));
        assert_eq!(m[(1, 1)], int(-4));
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"[["1/2","3"],["0","-4"]]"#);
        assert!(serde_json::from_str::<RatMatrix>(r#"[["1"], ["1", "2"]]"#).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn square(max_n: usize) -> impl Strategy<Value = RatMatrix> {
            (1..=max_n).prop_flat_map(|n| {
                proptest::collection::vec((-9i64..=9, 1i64..=4), n * n).prop_map(move |e| {
                    RatMatrix::new(n, n, e.into_iter().map(|(p, q)| frac(p, q)).collect()).unwrap()
                })
            })
        }

        fn any_matrix() -> impl Strategy<Value = RatMatrix> {
            (1usize..=5, 1usize..=6).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-3i64..=3, r * c).prop_map(move |e| {
                    RatMatrix::new(r, c, e.into_iter().map(int).collect()).unwrap()
                })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(128))]

            #[test]
            fn det_matches_cofactor(m in square(4)) {
                prop_assert_eq!(m.det().unwrap(), cofactor_det(&m.to_rows()));
            }

            #[test]
            fn inverse_round_trips(m in square(4)) {
                let det = m.det().unwrap();
                prop_assume!(!det.is_zero());
                let inv = m.inverse().unwrap();
                prop_assert_eq!(inv.mul(&m).unwrap(), RatMatrix::identity(m.rows()));
                prop_assert_eq!(inv.inverse().unwrap(), m.clone());
                prop_assert_eq!(inv.det().unwrap(), det.recip());
            }

            #[test]
            fn kernel_is_sound(m in any_matrix()) {
                let basis = m.kernel_basis();
                prop_assert_eq!(basis.len(), m.cols() - m.rank());
                for v in &basis {
                    prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
                }
                if !basis.is_empty() {
                    prop_assert_eq!(RatMatrix::from_columns(&basis).unwrap().rank(), basis.len());
                }
            }

            #[test]
            fn arithmetic_stays_canonical(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
                let x = frac(a, b) * frac(c, d) + frac(c, b) - frac(a, d);
                prop_assert!(x.denom().is_positive());
                prop_assert!(num_integer::Integer::gcd(x.numer(), x.denom()).is_one());
            }
        }
    }
}
