//! Adapted coframe and basis affinors of a linear web.
//!
//! The first `n` foliations are rescaled so that foliation `n+1` becomes the
//! negated sum of them:
//!
//! ```text
//! w_a^1 = -A[a][1] dx^a,   w_a^2 = B[1][a] dy_a,   w_{n+1}^1 = dx^{n+1},   w_{n+1}^2 = dy_{n+1}
//! ```
//!
//! Every remaining foliation `a` is then expanded as `-dx^a = sum u_b w_b^1`
//! and `-dy_a = sum v_b w_b^2`; its basis affinors are the diagonal pairs
//! `(u_k / u_n, v_k / v_n)`.

use std::fmt;

use num_traits::Zero;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::forms::{independent, OneForm};
use crate::ratlin::{format_rational, RatMatrix, Rational};
use crate::web::LinearWeb;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoframeError {
    #[error("adapted coframe is degenerate: {0}")]
    Degenerate(String),
    #[error("foliation {a} has no basis affinors (expected {lo}..={hi})")]
    FoliationOutOfRange { a: usize, lo: usize, hi: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MatrixName {
    A,
    B,
}

/// A matrix entry, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EntryRef {
    pub matrix: MatrixName,
    pub row: usize,
    pub col: usize,
}

impl EntryRef {
    pub fn a(row: usize, col: usize) -> Self {
        EntryRef {
            matrix: MatrixName::A,
            row,
            col,
        }
    }

    pub fn b(row: usize, col: usize) -> Self {
        EntryRef {
            matrix: MatrixName::B,
            row,
            col,
        }
    }

    pub fn value<'w>(&self, web: &'w LinearWeb) -> &'w Rational {
        let m = match self.matrix {
            MatrixName::A => web.a(),
            MatrixName::B => web.b(),
        };
        &m[(self.row - 1, self.col - 1)]
    }
}

impl fmt::Display for EntryRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}][{}]", self.matrix, self.row, self.col)
    }
}

impl Serialize for EntryRef {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "vanishing", rename_all = "kebab-case")]
pub enum GaugeStatus {
    Valid,
    /// Gauge entries of `A` (column 1) or `B` (row 1) that vanish.
    Degenerate(Vec<EntryRef>),
}

impl GaugeStatus {
    pub fn is_valid(&self) -> bool {
        matches!(self, GaugeStatus::Valid)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedCoframe {
    n: usize,
    first: Vec<OneForm>,
    second: Vec<OneForm>,
    anchor: (OneForm, OneForm),
    status: GaugeStatus,
}

impl AdaptedCoframe {
    pub fn status(&self) -> &GaugeStatus {
        &self.status
    }

    pub fn is_valid(&self) -> bool {
        self.status.is_valid()
    }

    /// `w_a^1`, 1-based `a <= n`.
    pub fn first(&self, a: usize) -> &OneForm {
        &self.first[a - 1]
    }

    /// `w_a^2`, 1-based `a <= n`.
    pub fn second(&self, a: usize) -> &OneForm {
        &self.second[a - 1]
    }

    /// `(w_{n+1}^1, w_{n+1}^2)`.
    pub fn anchor(&self) -> (&OneForm, &OneForm) {
        (&self.anchor.0, &self.anchor.1)
    }

    /// `-w_{n+1}^i = sum_a w_a^i` for both `i`.
    pub fn gauge_identity_holds(&self) -> bool {
        let chart = self.anchor.0.chart();
        let ones = vec![Rational::from_integer(1.into()); self.n];
        let sx = OneForm::combination(chart, ones.iter().zip(&self.first)).expect("one chart");
        let sy = OneForm::combination(chart, ones.iter().zip(&self.second)).expect("one chart");
        sx == self.anchor.0.neg() && sy == self.anchor.1.neg()
    }

    /// The `2n` forms `w_a^1, w_a^2` are linearly independent.
    pub fn is_coframe(&self) -> bool {
        let all: Vec<OneForm> = self.first.iter().chain(&self.second).cloned().collect();
        independent(&all).expect("one chart").is_independent()
    }
}

pub fn adapted_coframe(web: &LinearWeb) -> AdaptedCoframe {
    let n = web.n();
    let mut vanishing = Vec::new();
    for alpha in 1..=n {
        let g = EntryRef::a(alpha, 1);
        if g.value(web).is_zero() {
            vanishing.push(g);
        }
    }
    for alpha in 1..=n {
        let g = EntryRef::b(1, alpha);
        if g.value(web).is_zero() {
            vanishing.push(g);
        }
    }
    let first = (1..=n)
        .map(|alpha| {
            web.dx(alpha)
                .scaled(&-EntryRef::a(alpha, 1).value(web).clone())
        })
        .collect();
    let second = (1..=n)
        .map(|alpha| web.dy(alpha).scaled(EntryRef::b(1, alpha).value(web)))
        .collect();
    let anchor = (web.dx(n + 1).clone(), web.dy(n + 1).clone());
    let status = if vanishing.is_empty() {
        GaugeStatus::Valid
    } else {
        GaugeStatus::Degenerate(vanishing)
    };
    AdaptedCoframe {
        n,
        first,
        second,
        anchor,
        status,
    }
}

/// Coefficients of `-dx^a` over `w_1^1..w_n^1` and of `-dy_a` over
/// `w_1^2..w_n^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expansion {
    pub a: usize,
    #[serde(with = "crate::ratlin::serde_rational::vec")]
    pub u: Vec<Rational>,
    #[serde(with = "crate::ratlin::serde_rational::vec")]
    pub v: Vec<Rational>,
}

fn solve_in_span(basis: &[OneForm], target: &OneForm) -> Option<Vec<Rational>> {
    let cols: Vec<Vec<Rational>> = basis.iter().map(|f| f.coeffs().to_vec()).collect();
    RatMatrix::from_columns(&cols)
        .expect("forms share a chart")
        .solve(target.coeffs())
        .expect("shapes agree")
}

pub fn expand_foliation(
    web: &LinearWeb,
    cof: &AdaptedCoframe,
    a: usize,
) -> Result<Expansion, CoframeError> {
    let n = web.n();
    if a < n + 2 || a > 2 * n {
        return Err(CoframeError::FoliationOutOfRange {
            a,
            lo: n + 2,
            hi: 2 * n,
        });
    }
    if let GaugeStatus::Degenerate(entries) = cof.status() {
        let names: Vec<String> = entries.iter().map(|e| format!("{e} = 0")).collect();
        return Err(CoframeError::Degenerate(names.join(", ")));
    }
    let u = solve_in_span(&cof.first, &web.dx(a).neg())
        .ok_or_else(|| CoframeError::Degenerate(format!("-dx^{a} not in span")))?;
    let v = solve_in_span(&cof.second, &web.dy(a).neg())
        .ok_or_else(|| CoframeError::Degenerate(format!("-dy_{a} not in span")))?;
    Ok(Expansion { a, u, v })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffinorValue {
    Defined(Rational),
    /// The named quantity vanishes, so the normalization is impossible.
    Undefined(String),
}

impl AffinorValue {
    pub fn defined(&self) -> Option<&Rational> {
        match self {
            AffinorValue::Defined(r) => Some(r),
            AffinorValue::Undefined(_) => None,
        }
    }
}

impl fmt::Display for AffinorValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffinorValue::Defined(r) => write!(f, "{}", format_rational(r)),
            AffinorValue::Undefined(why) => write!(f, "undefined: {why}"),
        }
    }
}

impl Serialize for AffinorValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Diagonal pair of the basis affinor `lambda_{a, alpha_hat}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffinorEntry {
    pub a: usize,
    pub alpha_hat: usize,
    pub x: AffinorValue,
    pub y: AffinorValue,
}

impl AffinorEntry {
    /// The common scalar when both components are defined and equal.
    pub fn scalar(&self) -> Option<&Rational> {
        match (self.x.defined(), self.y.defined()) {
            (Some(x), Some(y)) if x == y => Some(x),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinorTable {
    pub n: usize,
    pub entries: Vec<AffinorEntry>,
}

impl AffinorTable {
    pub fn get(&self, a: usize, alpha_hat: usize) -> Option<&AffinorEntry> {
        self.entries
            .iter()
            .find(|e| e.a == a && e.alpha_hat == alpha_hat)
    }

    pub fn all_defined(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.x.defined().is_some() && e.y.defined().is_some())
    }
}

impl Serialize for AffinorTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.entries.len()))?;
        for e in &self.entries {
            #[derive(Serialize)]
            struct Pair<'a> {
                x: &'a AffinorValue,
                y: &'a AffinorValue,
            }
            map.serialize_entry(
                &format!("({}, {})", e.a, e.alpha_hat),
                &Pair { x: &e.x, y: &e.y },
            )?;
        }
        map.end()
    }
}

impl fmt::Display for AffinorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(
                f,
                "lambda[{}{}]: x = {}, y = {}",
                e.a, e.alpha_hat, e.x, e.y
            )?;
        }
        Ok(())
    }
}

pub fn basis_affinors(web: &LinearWeb) -> AffinorTable {
    let n = web.n();
    let cof = adapted_coframe(web);
    let mut entries = Vec::new();
    for a in n + 2..=2 * n {
        let k = a - n;
        let expansion = expand_foliation(web, &cof, a);
        for alpha_hat in 1..n {
            let (x, y) = match &expansion {
                Ok(e) => {
                    let x = if e.u[n - 1].is_zero() {
                        AffinorValue::Undefined(format!("{} = 0", EntryRef::a(n, k)))
                    } else {
                        AffinorValue::Defined(&e.u[alpha_hat - 1] / &e.u[n - 1])
                    };
                    let y = if e.v[n - 1].is_zero() {
                        AffinorValue::Undefined(format!("{} = 0", EntryRef::b(k, n)))
                    } else {
                        AffinorValue::Defined(&e.v[alpha_hat - 1] / &e.v[n - 1])
                    };
                    (x, y)
                }
                Err(err) => {
                    let why = match err {
                        CoframeError::Degenerate(s) => format!("gauge {s}"),
                        other => other.to_string(),
                    };
                    (
                        AffinorValue::Undefined(why.clone()),
                        AffinorValue::Undefined(why),
                    )
                }
            };
            entries.push(AffinorEntry { a, alpha_hat, x, y });
        }
    }
    AffinorTable { n, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{frac, int};
    use crate::web::build_web;

    fn a1() -> RatMatrix {
        RatMatrix::from_ints(&[[1, 1, 0], [1, 1, 1], [1, 2, 1]])
    }
    fn a2() -> RatMatrix {
        RatMatrix::from_ints(&[[1, 1, 0], [0, 1, 1], [1, 1, 1]])
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn first_example_coframe() {
        let web = build_web(&a1()).unwrap();
        let cof = adapted_coframe(&web);
        assert!(cof.is_valid());
        assert!(cof.gauge_identity_holds());
        assert!(cof.is_coframe());
        assert_eq!(cof.first(1), &web.dx(1).neg());
        // B1[1][3] = -1
        assert_eq!(cof.second(3), &web.dy(3).neg());
    }

    #[test]
    fn second_example_is_gauge_degenerate() {
        let web = build_web(&a2()).unwrap();
        let cof = adapted_coframe(&web);
        assert_eq!(
            cof.status(),
            &GaugeStatus::Degenerate(vec![EntryRef::a(2, 1), EntryRef::b(1, 1)])
        );
        assert!(matches!(
            expand_foliation(&web, &cof, 5),
            Err(CoframeError::Degenerate(_))
        ));
    }

    #[test]
    fn identity_gauge_is_degenerate() {
        let web = build_web(&RatMatrix::identity(3)).unwrap();
        let cof = adapted_coframe(&web);
        // Column 1 of I has zeros in rows 2, 3; row 1 of B = I likewise.
        match cof.status() {
            GaugeStatus::Degenerate(v) => {
                assert!(v.contains(&EntryRef::a(2, 1)));
                assert!(v.contains(&EntryRef::b(1, 2)));
            }
            GaugeStatus::Valid => panic!("identity cannot be gauge valid"),
        }
    }

    #[test]
    fn first_example_expansion() {
        let web = build_web(&a1()).unwrap();
        let cof = adapted_coframe(&web);
        let e = expand_foliation(&web, &cof, 5).unwrap();
        assert_eq!(e.u, ints(&[1, 1, 2]));
        assert_eq!(e.v, ints(&[0, -1, -1]));
        assert!(matches!(
            expand_foliation(&web, &cof, 4),
            Err(CoframeError::FoliationOutOfRange { a: 4, .. })
        ));
    }

    #[test]
    fn first_example_affinors() {
        let t = basis_affinors(&build_web(&a1()).unwrap());
        let l51 = t.get(5, 1).unwrap();
        assert_eq!(l51.x, AffinorValue::Defined(frac(1, 2)));
        assert_eq!(l51.y, AffinorValue::Defined(int(0)));
        let l61 = t.get(6, 1).unwrap();
        assert_eq!(l61.x, AffinorValue::Defined(int(0)));
        assert_eq!(l61.y, AffinorValue::Undefined("B[3][3] = 0".into()));
        let json = serde_json::to_value(&t).unwrap();
        assert_eq!(json["(6, 1)"]["y"], "undefined: B[3][3] = 0");
        assert_eq!(json["(5, 1)"]["x"], "1/2");
    }

    #[test]
    fn orthogonal_web_has_scalar_affinors() {
        let web = build_web(&RatMatrix::from_ints(&[[1, 2, 2], [2, 1, -2], [2, -2, 1]])).unwrap();
        let t = basis_affinors(&web);
        assert!(t.all_defined());
        let want = [
            ((5, 1), int(-2)),
            ((5, 2), frac(-1, 2)),
            ((6, 1), int(4)),
            ((6, 2), int(-2)),
        ];
        for ((a, h), v) in want {
            assert_eq!(t.get(a, h).unwrap().scalar(), Some(&v));
        }
    }

    #[test]
    fn diagonal_web_has_no_defined_affinors() {
        let web = build_web(&RatMatrix::from_ints(&[[1, 0, 0], [0, 2, 0], [0, 0, 3]])).unwrap();
        let t = basis_affinors(&web);
        assert_eq!(t.entries.len(), 4);
        assert!(t.entries.iter().all(|e| e.x.defined().is_none()));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn gauge_valid_matrix() -> impl Strategy<Value = RatMatrix> {
            (2usize..=4).prop_flat_map(|n| {
                proptest::collection::vec(-9i64..=9, n * n)
                    .prop_map(move |e| {
                        RatMatrix::new(n, n, e.into_iter().map(int).collect()).unwrap()
                    })
                    .prop_filter("nonsingular and gauge valid", |m| {
                        !m.det().unwrap().is_zero()
                            && adapted_coframe(&build_web(m).unwrap()).is_valid()
                    })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(100))]

            #[test]
            fn gauge_identity_and_expansion_soundness(a in gauge_valid_matrix()) {
                let web = build_web(&a).unwrap();
                let n = web.n();
                let cof = adapted_coframe(&web);
                prop_assert!(cof.gauge_identity_holds());
                prop_assert!(cof.is_coframe());
                for fol in n + 2..=2 * n {
                    let e = expand_foliation(&web, &cof, fol).unwrap();
                    let chart = web.chart();
                    let firsts: Vec<&OneForm> = (1..=n).map(|b| cof.first(b)).collect();
                    let seconds: Vec<&OneForm> = (1..=n).map(|b| cof.second(b)).collect();
                    let rx = OneForm::combination(chart, e.u.iter().zip(firsts)).unwrap();
                    let ry = OneForm::combination(chart, e.v.iter().zip(seconds)).unwrap();
                    prop_assert_eq!(rx, web.dx(fol).neg());
                    prop_assert_eq!(ry, web.dy(fol).neg());
                    // ratio oracle straight from the entries of A and B
                    let k = fol - n - 1;
                    for b in 0..n {
                        prop_assert_eq!(&e.u[b], &(&a[(b, k)] / &a[(b, 0)]));
                        prop_assert_eq!(&e.v[b], &(&web.b()[(k, b)] / &web.b()[(0, b)]));
                    }
                }
            }

            #[test]
            fn affinors_do_not_depend_on_base_point(
                a in gauge_valid_matrix(),
                p in proptest::collection::vec(-5i64..=5, 8),
            ) {
                let web = build_web(&a).unwrap();
                let point: Vec<Rational> = p.into_iter().take(web.chart().dim()).map(int).collect();
                prop_assume!(point.len() == web.chart().dim());
                prop_assert_eq!(basis_affinors(&web.at_point(&point)), basis_affinors(&web));
            }
        }
    }
}
