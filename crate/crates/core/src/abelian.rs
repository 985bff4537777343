//! Web normals `Omega_xi = dx^xi ^ dy_xi` and the space of constant-coefficient
//! abelian 2-equations `sum_xi f_xi Omega_xi = 0`.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::forms::{two_form_vector, wedge, TwoForm};
use crate::ratlin::{serde_rational, RatMatrix, Rational};
use crate::web::LinearWeb;

/// Upper bound on the 2-rank for `W(6, 3, 2)`.
pub const RANK_BOUND_N3: usize = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("relation has {got} coefficients, web has {expected} foliations")]
    Length { expected: usize, got: usize },
}

/// Coefficients `f_xi` of a constant abelian 2-equation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationVector(#[serde(with = "serde_rational::vec")] pub Vec<Rational>);

impl RelationVector {
    pub fn all_ones(len: usize) -> Self {
        RelationVector(vec![Rational::one(); len])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankBound {
    Asserted(usize),
    NotAsserted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankVerdict {
    AtBound,
    Below,
    AboveBoundAnomaly,
    /// No bound is asserted for this order; only `dimension >= 1` is checked.
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub dimension: usize,
    pub basis: Vec<RelationVector>,
    pub bound: RankBound,
    pub verdict: RankVerdict,
    /// The all-ones relation lies in the computed space.
    pub contains_all_ones: bool,
    /// Dimension equals the asserted bound of one.
    pub maximum_rank: bool,
}

pub fn normals(web: &LinearWeb) -> Vec<TwoForm> {
    (1..=web.size())
        .map(|xi| {
            let (dx, dy) = web.foliation(xi);
            wedge(dx, dy).expect("web forms share a chart")
        })
        .collect()
}

/// `sum_xi f_xi Omega_xi`.
pub fn abelian_residual(web: &LinearWeb, f: &[Rational]) -> Result<TwoForm, AbelianError> {
    if f.len() != web.size() {
        return Err(AbelianError::Length {
            expected: web.size(),
            got: f.len(),
        });
    }
    let mut acc = TwoForm::zero(web.chart());
    for (c, omega) in f.iter().zip(normals(web)) {
        if !c.is_zero() {
            acc = acc
                .checked_add(&omega.scaled(c))
                .expect("web forms share a chart");
        }
    }
    Ok(acc)
}

/// The `C(2n, 2) x 2n` matrix whose columns are the flattened normals.
pub fn normal_matrix(web: &LinearWeb) -> RatMatrix {
    let cols: Vec<Vec<Rational>> = normals(web).iter().map(two_form_vector).collect();
    RatMatrix::from_columns(&cols).expect("normals have equal length")
}

pub fn relation_space(web: &LinearWeb) -> RankReport {
    let basis: Vec<RelationVector> = normal_matrix(web)
        .kernel_basis()
        .into_iter()
        .map(RelationVector)
        .collect();
    let dimension = basis.len();
    let contains_all_ones = abelian_residual(web, &RelationVector::all_ones(web.size()).0)
        .expect("length matches")
        .is_zero();
    let (bound, verdict) = if web.n() == 3 {
        let verdict = match dimension.cmp(&RANK_BOUND_N3) {
            std::cmp::Ordering::Equal => RankVerdict::AtBound,
            std::cmp::Ordering::Less => RankVerdict::Below,
            std::cmp::Ordering::Greater => RankVerdict::AboveBoundAnomaly,
        };
        (RankBound::Asserted(RANK_BOUND_N3), verdict)
    } else {
        (RankBound::NotAsserted, RankVerdict::Unbounded)
    };
    RankReport {
        maximum_rank: dimension == 1,
        dimension,
        basis,
        bound,
        verdict,
        contains_all_ones,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::OneForm;
    use crate::ratlin::int;
    use crate::web::build_web;

    fn a1() -> RatMatrix {
        RatMatrix::from_ints(&[[1, 1, 0], [1, 1, 1], [1, 2, 1]])
    }
    fn a2() -> RatMatrix {
        RatMatrix::from_ints(&[[1, 1, 0], [0, 1, 1], [1, 1, 1]])
    }

    #[test]
    fn identity_first_normal() {
        let web = build_web(&RatMatrix::identity(3)).unwrap();
        let c = web.chart();
        let expected = wedge(
            &OneForm::dx(c, 1).unwrap(),
            &OneForm::dy(c, 4).unwrap().neg(),
        )
        .unwrap();
        let ns = normals(&web);
        assert_eq!(ns.len(), 6);
        assert_eq!(ns[0], expected);
    }

    #[test]
    fn sixth_normal_of_first_example() {
        let web = build_web(&a1()).unwrap();
        let c = web.chart();
        // x^6 = x^2 + x^3, y_6 = y_1 - y_2 with y_1, y_2 rewritten in dy4..dy6
        let dx6 = OneForm::dx(c, 2)
            .unwrap()
            .checked_add(&OneForm::dx(c, 3).unwrap())
            .unwrap();
        let dy6 = web.dy(1).checked_sub(web.dy(2)).unwrap();
        assert_eq!(normals(&web)[5], wedge(&dx6, &dy6).unwrap());
    }

    #[test]
    fn residual_cases() {
        let web1 = build_web(&a1()).unwrap();
        assert!(abelian_residual(&web1, &vec![int(1); 6]).unwrap().is_zero());
        let web2 = build_web(&a2()).unwrap();
        let e1: Vec<_> = [1, 0, 0, 0, 0, 0].iter().map(|&x| int(x)).collect();
        assert!(!abelian_residual(&web2, &e1).unwrap().is_zero());
        assert!(matches!(
            abelian_residual(&web2, &[int(1)]),
            Err(AbelianError::Length {
                expected: 6,
                got: 1
            })
        ));
    }

    // Independent oracle: build the 15x6 normal matrix straight from A and B
    // entries (x-part column alpha of A, y-part minus row of A / unit), then
    // reduce it by hand-rolled elimination on rows.
    fn oracle_relation_dim(a: &RatMatrix) -> usize {
        let n = a.rows();
        let mut x: Vec<Vec<Rational>> = Vec::new();
        let mut y: Vec<Vec<Rational>> = Vec::new();
        for xi in 0..n {
            let mut v = vec![int(0); n];
            v[xi] = int(1);
            x.push(v);
            y.push(a.row(xi).iter().map(|v| -v).collect());
        }
        for alpha in 0..n {
            x.push(a.column(alpha));
            let mut v = vec![int(0); n];
            v[alpha] = int(1);
            y.push(v);
        }
        // Only mixed pairs dx^i ^ dy_j can be nonzero: coefficient x_i * y_j.
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                rows.push((0..2 * n).map(|xi| &x[xi][i] * &y[xi][j]).collect());
            }
        }
        let mut rank = 0;
        let cols = 2 * n;
        for c in 0..cols {
            if let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) {
                rows.swap(p, rank);
                for r in 0..rows.len() {
                    if r != rank && !rows[r][c].is_zero() {
                        let f = &rows[r][c] / &rows[rank][c];
                        let pivot_row = rows[rank].clone();
                        for (x, p) in rows[r].iter_mut().zip(&pivot_row) {
                            *x -= &f * p;
                        }
                    }
                }
                rank += 1;
            }
        }
        cols - rank
    }

    #[test]
    fn second_example_has_one_relation() {
        let web = build_web(&a2()).unwrap();
        let m = normal_matrix(&web);
        assert_eq!((m.rows(), m.cols()), (15, 6));
        let report = relation_space(&web);
        assert_eq!(oracle_relation_dim(&a2()), 1);
        assert_eq!(report.dimension, 1);
        assert_eq!(report.basis, vec![RelationVector::all_ones(6)]);
        assert_eq!(report.verdict, RankVerdict::AtBound);
        assert!(report.maximum_rank);
    }

    #[test]
    fn first_example_reports_actual_dimension() {
        let web = build_web(&a1()).unwrap();
        let report = relation_space(&web);
        assert!(report.contains_all_ones);
        assert_eq!(report.dimension, oracle_relation_dim(&a1()));
        assert!(report.dimension >= 1);
    }

    #[test]
    fn other_orders_have_no_bound() {
        let web = build_web(&RatMatrix::from_ints(&[[1, 1], [0, 1]])).unwrap();
        let report = relation_space(&web);
        assert_eq!(report.bound, RankBound::NotAsserted);
        assert_eq!(report.verdict, RankVerdict::Unbounded);
        assert!(report.contains_all_ones);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn web_matrix() -> impl Strategy<Value = RatMatrix> {
            (2usize..=4).prop_flat_map(|n| {
                proptest::collection::vec(-9i64..=9, n * n)
                    .prop_map(move |e| {
                        RatMatrix::new(n, n, e.into_iter().map(int).collect()).unwrap()
                    })
                    .prop_filter("nonsingular", |m| !m.det().unwrap().is_zero())
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(100))]

            #[test]
            fn all_ones_is_always_a_relation(a in web_matrix()) {
                let web = build_web(&a).unwrap();
                prop_assert!(abelian_residual(&web, &vec![int(1); web.size()]).unwrap().is_zero());
            }

            #[test]
            fn basis_vectors_are_relations(a in web_matrix()) {
                let web = build_web(&a).unwrap();
                let report = relation_space(&web);
                prop_assert_eq!(report.dimension, report.basis.len());
                prop_assert_eq!(report.dimension, web.size() - normal_matrix(&web).rank());
                prop_assert_eq!(report.dimension, oracle_relation_dim(&a));
                for v in &report.basis {
                    prop_assert!(abelian_residual(&web, &v.0).unwrap().is_zero());
                }
            }
        }
    }
}
