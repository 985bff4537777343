//! Constant-coefficient 1-forms and 2-forms on the chart
//! `(x^1, ..., x^n, y_{n+1}, ..., y_{2n})`.

use num_traits::Zero;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::ratlin::{format_rational, RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("forms live on different charts (n = {left} vs n = {right})")]
    ChartMismatch { left: usize, right: usize },
    #[error("expected {expected} coefficients, got {got}")]
    Length { expected: usize, got: usize },
    #[error("chart order must be at least 1")]
    EmptyChart,
    #[error("basis index {0} is not on this chart")]
    BadIndex(usize),
}

/// Coordinate chart of dimension `2n`. Basis order is `dx1..dxn` followed by
/// `dy{n+1}..dy{2n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Chart {
    n: usize,
}

impl Chart {
    pub fn new(n: usize) -> Result<Self, FormError> {
        if n == 0 {
            return Err(FormError::EmptyChart);
        }
        Ok(Chart { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// Label of the 0-based basis index `i`.
    pub fn label(&self, i: usize) -> String {
        if i < self.n {
            format!("dx{}", i + 1)
        } else {
            format!("dy{}", i + 1)
        }
    }

    /// Number of ordered basis pairs `i < j`, i.e. `C(2n, 2)`.
    pub fn pair_count(&self) -> usize {
        let d = self.dim();
        d * (d - 1) / 2
    }

    /// Lexicographic position of the pair `(i, j)`, `i < j`.
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.dim());
        let d = self.dim();
        i * (2 * d - i - 1) / 2 + (j - i - 1)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let d = self.dim();
        (0..d).flat_map(move |i| (i + 1..d).map(move |j| (i, j)))
    }

    fn check(&self, other: &Chart) -> Result<(), FormError> {
        if self == other {
            Ok(())
        } else {
            Err(FormError::ChartMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OneForm {
    chart: Chart,
    coeffs: Vec<Rational>,
}

impl OneForm {
    pub fn new(chart: Chart, coeffs: Vec<Rational>) -> Result<Self, FormError> {
        if coeffs.len() != chart.dim() {
            return Err(FormError::Length {
                expected: chart.dim(),
                got: coeffs.len(),
            });
        }
        Ok(OneForm { chart, coeffs })
    }

    pub fn zero(chart: Chart) -> Self {
        OneForm {
            chart,
            coeffs: vec![Rational::zero(); chart.dim()],
        }
    }

    /// The basis form with 0-based index `i`.
    pub fn basis(chart: Chart, i: usize) -> Result<Self, FormError> {
        if i >= chart.dim() {
            return Err(FormError::BadIndex(i));
        }
        let mut f = OneForm::zero(chart);
        f.coeffs[i] = Rational::from_integer(1.into());
        Ok(f)
    }

    /// `dx^k`, `1 <= k <= n`.
    pub fn dx(chart: Chart, k: usize) -> Result<Self, FormError> {
        if k == 0 || k > chart.n() {
            return Err(FormError::BadIndex(k));
        }
        OneForm::basis(chart, k - 1)
    }

    /// `dy_k`, `n < k <= 2n`.
    pub fn dy(chart: Chart, k: usize) -> Result<Self, FormError> {
        if k <= chart.n() || k > chart.dim() {
            return Err(FormError::BadIndex(k));
        }
        OneForm::basis(chart, k - 1)
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, c: &Rational) -> OneForm {
        OneForm {
            chart: self.chart,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> OneForm {
        OneForm {
            chart: self.chart,
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn checked_add(&self, other: &OneForm) -> Result<OneForm, FormError> {
        self.chart.check(&other.chart)?;
        Ok(OneForm {
            chart: self.chart,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &OneForm) -> Result<OneForm, FormError> {
        self.checked_add(&other.neg())
    }

    /// `sum c_k f_k` over forms on a common chart.
    pub fn combination<'a, I>(chart: Chart, terms: I) -> Result<OneForm, FormError>
    where
        I: IntoIterator<Item = (&'a Rational, &'a OneForm)>,
    {
        let mut acc = OneForm::zero(chart);
        for (c, f) in terms {
            chart.check(&f.chart)?;
            for (a, b) in acc.coeffs.iter_mut().zip(&f.coeffs) {
                if !b.is_zero() {
                    *a += c * b;
                }
            }
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoForm {
    chart: Chart,
    coeffs: Vec<Rational>,
}

impl TwoForm {
    pub fn zero(chart: Chart) -> Self {
        TwoForm {
            chart,
            coeffs: vec![Rational::zero(); chart.pair_count()],
        }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    /// Coefficient on `e_i ^ e_j` for any ordering of `i`, `j`.
    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.coeffs[self.chart.pair_index(i, j)].clone(),
            Greater => -self.coeffs[self.chart.pair_index(j, i)].clone(),
            Equal => Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, c: &Rational) -> TwoForm {
        TwoForm {
            chart: self.chart,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> TwoForm {
        self.scaled(&Rational::from_integer((-1).into()))
    }

    pub fn checked_add(&self, other: &TwoForm) -> Result<TwoForm, FormError> {
        self.chart.check(&other.chart)?;
        Ok(TwoForm {
            chart: self.chart,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Coefficients in the lexicographic pair basis, length `C(2n, 2)`.
    pub fn to_vector(&self) -> Vec<Rational> {
        self.coeffs.clone()
    }
}

pub fn wedge(f: &OneForm, g: &OneForm) -> Result<TwoForm, FormError> {
    f.chart.check(&g.chart)?;
    let chart = f.chart;
    let coeffs = chart
        .pairs()
        .map(|(i, j)| &f.coeffs[i] * &g.coeffs[j] - &f.coeffs[j] * &g.coeffs[i])
        .collect();
    Ok(TwoForm { chart, coeffs })
}

pub fn two_form_vector(w: &TwoForm) -> Vec<Rational> {
    w.to_vector()
}

/// Outcome of a linear-independence test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Independence {
    Independent,
    /// Coefficients `c` with `sum c_k f_k = 0`, leading coefficient 1.
    Dependent(Vec<Rational>),
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        matches!(self, Independence::Independent)
    }
}

/// An empty list counts as independent.
pub fn independent(fs: &[OneForm]) -> Result<Independence, FormError> {
    let Some(first) = fs.first() else {
        return Ok(Independence::Independent);
    };
    let chart = first.chart;
    for f in fs {
        chart.check(&f.chart)?;
    }
    let columns: Vec<Vec<Rational>> = fs.iter().map(|f| f.coeffs.clone()).collect();
    let m = RatMatrix::from_columns(&columns).expect("forms share a chart");
    Ok(match m.kernel_basis().into_iter().next() {
        None => Independence::Independent,
        Some(v) => Independence::Dependent(v),
    })
}

impl Serialize for OneForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let nz = self.coeffs.iter().filter(|c| !c.is_zero()).count();
        let mut map = s.serialize_map(Some(nz))?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                map.serialize_entry(&self.chart.label(i), &format_rational(c))?;
            }
        }
        map.end()
    }
}

impl Serialize for TwoForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let nz = self.coeffs.iter().filter(|c| !c.is_zero()).count();
        let mut map = s.serialize_map(Some(nz))?;
        for ((i, j), c) in self.chart.pairs().zip(&self.coeffs) {
            if !c.is_zero() {
                let key = format!("{}^{}", self.chart.label(i), self.chart.label(j));
                map.serialize_entry(&key, &format_rational(c))?;
            }
        }
        map.end()
    }
}
