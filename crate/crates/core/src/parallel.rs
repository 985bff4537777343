//! Parallelizability of the linear web family.
//!
//! Only the instantiation on this family is covered: every defining form is
//! the differential of a linear leaf function, so its coefficients are the
//! same at every point. With closed coframe forms `w_a^i = dx^a, dy_a` the
//! structure equations force a zero connection and zero torsion, and constant
//! basis affinors are then covariantly constant.

use serde::Serialize;

use crate::coframe::basis_affinors;
use crate::forms::{independent, OneForm};
use crate::ratlin::{frac, int, Rational};
use crate::web::LinearWeb;

pub const SCOPE: &str = "linear constant-coefficient webs W(2n, n, 2) only";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParallelVerdict {
    Parallelizable,
    NotEstablished,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParallelReport {
    pub forms_closed: bool,
    pub connection_zero: bool,
    pub torsion_zero: bool,
    pub affinors_constant: bool,
    pub verdict: ParallelVerdict,
    pub scope: &'static str,
    /// Base points at which the forms and affinors were re-derived.
    pub points_checked: usize,
}

/// Deterministic base points spread over the chart.
fn sample_points(dim: usize) -> Vec<Vec<Rational>> {
    let mut pts = vec![vec![int(0); dim]];
    pts.push((0..dim).map(|i| int(i as i64 + 1)).collect());
    pts.push(
        (0..dim)
            .map(|i| frac(if i % 2 == 0 { -3 } else { 5 }, i as i64 + 2))
            .collect(),
    );
    pts.push((0..dim).map(|i| int(-(7 * i as i64) + 11)).collect());
    pts
}

/// Second differences of every leaf function vanish: `d(du) = 0` and the
/// differential has the same coefficients at every sampled point.
fn forms_closed(web: &LinearWeb, points: &[Vec<Rational>]) -> bool {
    let base = &points[0];
    web.leaf_functions().iter().all(|(u, v)| {
        [u, v].iter().all(|f| {
            let d0 = f.differential_at(base);
            points.iter().all(|p| f.differential_at(p) == d0)
        })
    })
}

/// Coframe `w_a^1 = dx^a`, `w_a^2 = dy_a` of the first `n` foliations.
fn base_coframe(web: &LinearWeb) -> Vec<OneForm> {
    (1..=web.n())
        .flat_map(|a| [web.dx(a).clone(), web.dy(a).clone()])
        .collect()
}

pub fn parallelizability_report(web: &LinearWeb) -> ParallelReport {
    let points = sample_points(web.chart().dim());
    let closed = forms_closed(web, &points);
    let coframe_ok = independent(&base_coframe(web))
        .expect("one chart")
        .is_independent();
    // d w = 0 on a coframe leaves only the trivial solution of the structure
    // equations.
    let connection_zero = closed && coframe_ok;
    let torsion_zero = closed && coframe_ok;
    let table = basis_affinors(web);
    let affinors_constant = points
        .iter()
        .all(|p| basis_affinors(&web.at_point(p)) == table);
    let all = closed && connection_zero && torsion_zero && affinors_constant;
    ParallelReport {
        forms_closed: closed,
        connection_zero,
        torsion_zero,
        affinors_constant,
        verdict: if all {
            ParallelVerdict::Parallelizable
        } else {
            ParallelVerdict::NotEstablished
        },
        scope: SCOPE,
        points_checked: points.len(),
    }
}
