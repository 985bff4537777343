//! Almost-Grassmannizability.
//!
//! A web of this family is almost Grassmannizable exactly when, for every
//! foliation `a` in `n+2..=2n`, the expansion vectors `u` and `v` of `-dx^a`
//! and `-dy_a` over the adapted coframe are proportional: the basis affinors
//! are then scalar. Proportionality is tested through the 2x2 minors
//! `u_b v_c - u_c v_b`.
//!
//! When the adapted coframe is degenerate the same minors are evaluated with
//! denominators cleared,
//!
//! ```text
//! P_{a,bc} = A[b][k] B[k][c] A[c][1] B[1][b] - A[c][k] B[k][b] A[b][1] B[1][c],   k = a - n,
//! ```
//!
//! straight from the entries of `A` and `B`.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::coframe::{
    adapted_coframe, basis_affinors, expand_foliation, AffinorTable, EntryRef, GaugeStatus,
};
use crate::ratlin::{format_rational, int, serde_rational, RatMatrix, Rational};
use crate::web::LinearWeb;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AgwError {
    #[error("literal determinant forms are defined for n = 3 only (web has n = {0})")]
    Order(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AgwVerdict {
    Agw,
    NotAgw,
    Indeterminate,
}

impl fmt::Display for AgwVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AgwVerdict::Agw => "AGW",
            AgwVerdict::NotAgw => "not AGW",
            AgwVerdict::Indeterminate => "indeterminate",
        })
    }
}

/// How the proportionality minors were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObstructionPath {
    /// Expansion over the adapted coframe.
    Coframe,
    /// Cleared-denominator polynomials in the entries of `A` and `B`.
    Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProportionalityMinor {
    pub beta: usize,
    pub gamma: usize,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoliationWitness {
    pub a: usize,
    pub minors: Vec<ProportionalityMinor>,
    pub proportional: bool,
}

impl FoliationWitness {
    fn from_minors(a: usize, minors: Vec<ProportionalityMinor>) -> Self {
        let proportional = minors.iter().all(|m| m.value.is_zero());
        FoliationWitness {
            a,
            minors,
            proportional,
        }
    }

    pub fn vanishing_pattern(&self) -> Vec<bool> {
        self.minors.iter().map(|m| m.value.is_zero()).collect()
    }
}

/// The three literal 3x3 determinant forms, named by the column that holds
/// the four-factor entry products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DetForm {
    ProductCol3,
    ProductCol2,
    ProductCol1,
}

impl DetForm {
    pub const ALL: [DetForm; 3] = [
        DetForm::ProductCol3,
        DetForm::ProductCol2,
        DetForm::ProductCol1,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiteralDet {
    pub form: DetForm,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition7 {
    Residual(#[serde(with = "serde_rational")] Rational),
    NotApplicable(String),
}

impl Condition7 {
    pub fn residual(&self) -> Option<&Rational> {
        match self {
            Condition7::Residual(r) => Some(r),
            Condition7::NotApplicable(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgwReport {
    pub verdict: AgwVerdict,
    pub path: ObstructionPath,
    pub gauge: GaugeStatus,
    pub foliations: Vec<FoliationWitness>,
    /// Empty unless `n = 3`.
    pub literal_dets: Vec<LiteralDet>,
    pub condition7: Condition7,
}

impl AgwReport {
    /// Every nonzero minor, tagged with its foliation.
    pub fn witnesses(&self) -> impl Iterator<Item = (usize, &ProportionalityMinor)> {
        self.foliations
            .iter()
            .flat_map(|f| f.minors.iter().map(move |m| (f.a, m)))
            .filter(|(_, m)| !m.value.is_zero())
    }

    pub fn literal_det(&self, form: DetForm) -> Option<&Rational> {
        self.literal_dets
            .iter()
            .find(|d| d.form == form)
            .map(|d| &d.value)
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |b| (b + 1..n).map(move |c| (b, c)))
}

/// Minors from the adapted-coframe expansion; `None` when the gauge is
/// degenerate.
pub fn coframe_minors(web: &LinearWeb) -> Option<Vec<FoliationWitness>> {
    let n = web.n();
    let cof = adapted_coframe(web);
    if !cof.is_valid() {
        return None;
    }
    let mut out = Vec::new();
    for a in n + 2..=2 * n {
        let e = expand_foliation(web, &cof, a).expect("gauge is valid");
        let minors = pairs(n)
            .map(|(b, c)| ProportionalityMinor {
                beta: b + 1,
                gamma: c + 1,
                value: &e.u[b] * &e.v[c] - &e.u[c] * &e.v[b],
            })
            .collect();
        out.push(FoliationWitness::from_minors(a, minors));
    }
    Some(out)
}

/// Cleared-denominator obstruction polynomials, evaluated at `A`, `B`.
pub fn obstruction_polynomials(web: &LinearWeb) -> Vec<FoliationWitness> {
    let n = web.n();
    let (a, b) = (web.a(), web.b());
    (n + 2..=2 * n)
        .map(|fol| {
            let k = fol - n - 1;
            let minors = pairs(n)
                .map(|(p, q)| {
                    let lhs = &a[(p, k)] * &b[(k, q)] * &a[(q, 0)] * &b[(0, p)];
                    let rhs = &a[(q, k)] * &b[(k, p)] * &a[(p, 0)] * &b[(0, q)];
                    ProportionalityMinor {
                        beta: p + 1,
                        gamma: q + 1,
                        value: lhs - rhs,
                    }
                })
                .collect();
            FoliationWitness::from_minors(fol, minors)
        })
        .collect()
}

pub fn agw_test(web: &LinearWeb) -> AgwReport {
    let gauge = adapted_coframe(web).status().clone();
    let (path, foliations) = match coframe_minors(web) {
        Some(f) => (ObstructionPath::Coframe, f),
        None => (ObstructionPath::Polynomial, obstruction_polynomials(web)),
    };
    let all_zero = foliations.iter().all(|f| f.proportional);
    let verdict = match (all_zero, gauge.is_valid()) {
        (false, _) => AgwVerdict::NotAgw,
        (true, true) => AgwVerdict::Agw,
        (true, false) => AgwVerdict::Indeterminate,
    };
    let literal_dets = if web.n() == 3 {
        DetForm::ALL
            .iter()
            .map(|&form| LiteralDet {
                form,
                value: literal_det(web, form).expect("n = 3"),
            })
            .collect()
    } else {
        Vec::new()
    };
    let condition7 = condition7_residual(&basis_affinors(web));
    AgwReport {
        verdict,
        path,
        gauge,
        foliations,
        literal_dets,
        condition7,
    }
}

/// Literal determinant of one of the three printed 3x3 forms, with
/// `a_b^a = A[b][a]`.
pub fn literal_det(web: &LinearWeb, form: DetForm) -> Result<Rational, AgwError> {
    if web.n() != 3 {
        return Err(AgwError::Order(web.n()));
    }
    // a(sub, sup) with 1-based indices
    let a = |sub: usize, sup: usize| web.a()[(sub - 1, sup - 1)].clone();
    let prod = |fs: [(usize, usize); 4]| {
        fs.iter()
            .fold(Rational::one(), |acc, &(s, p)| acc * a(s, p))
    };
    let rows = match form {
        DetForm::ProductCol3 => vec![
            vec![a(1, 1), a(1, 2), prod([(1, 1), (1, 2), (2, 3), (3, 3)])],
            vec![a(2, 1), a(2, 2), prod([(2, 1), (2, 2), (1, 3), (3, 3)])],
            vec![a(3, 1), a(3, 2), prod([(1, 3), (2, 3), (3, 1), (3, 2)])],
        ],
        DetForm::ProductCol2 => vec![
            vec![a(1, 1), prod([(1, 1), (1, 3), (2, 2), (3, 2)]), a(1, 3)],
            vec![a(2, 1), prod([(1, 2), (2, 1), (2, 3), (3, 2)]), a(2, 3)],
            vec![a(3, 1), prod([(1, 2), (2, 2), (2, 2), (3, 1)]), a(3, 3)],
        ],
        DetForm::ProductCol1 => vec![
            vec![prod([(1, 1), (1, 3), (2, 2), (3, 2)]), a(1, 2), a(1, 3)],
            vec![prod([(1, 2), (2, 1), (2, 3), (3, 2)]), a(2, 2), a(2, 3)],
            vec![prod([(1, 2), (2, 2), (2, 2), (3, 1)]), a(3, 2), a(3, 3)],
        ],
    };
    Ok(RatMatrix::from_rows(rows)
        .expect("3x3")
        .det()
        .expect("square"))
}

/// `l51 l62 (1 - l52 - l61) - l52 l61 (1 - l51 - l62)` over the common
/// scalar values of the four basis affinors of a 6-web.
pub fn condition7_residual(t: &AffinorTable) -> Condition7 {
    if t.n != 3 {
        return Condition7::NotApplicable(format!("defined for n = 3, table has n = {}", t.n));
    }
    let mut scalars = Vec::with_capacity(4);
    for (a, h) in [(5, 1), (5, 2), (6, 1), (6, 2)] {
        let Some(e) = t.get(a, h) else {
            return Condition7::NotApplicable(format!("lambda[{a}{h}] missing"));
        };
        match (e.x.defined(), e.y.defined()) {
            (Some(x), Some(y)) if x == y => scalars.push(x.clone()),
            (Some(x), Some(y)) => {
                return Condition7::NotApplicable(format!(
                    "lambda[{a}{h}] is not scalar (x = {}, y = {})",
                    format_rational(x),
                    format_rational(y)
                ))
            }
            _ => return Condition7::NotApplicable(format!("lambda[{a}{h}] undefined")),
        }
    }
    Condition7::Residual(condition7_value(
        &scalars[0],
        &scalars[1],
        &scalars[2],
        &scalars[3],
    ))
}

pub fn condition7_value(
    l51: &Rational,
    l52: &Rational,
    l61: &Rational,
    l62: &Rational,
) -> Rational {
    let one = Rational::one();
    l51 * l62 * (&one - l52 - l61) - l52 * l61 * (&one - l51 - l62)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub n: usize,
    /// Entries are drawn from `-bound..=bound`.
    pub bound: i64,
    /// Number of candidate matrices to examine.
    pub budget: usize,
    pub seed: u64,
    /// Only consider matrices without zero entries.
    pub nonzero_entries: bool,
    /// Only accept witnesses whose basis affinors are all defined.
    pub defined_scalars: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            n: 3,
            bound: 2,
            budget: 20_000,
            seed: 0,
            nonzero_entries: false,
            defined_scalars: true,
        }
    }
}

/// Randomized search for a gauge-valid AGW web with small integer entries.
///
/// Diagonal matrices are skipped: their gauge is degenerate and their
/// verdict is indeterminate.
pub fn agw_search(opts: &SearchOptions) -> Option<RatMatrix> {
    let n = opts.n;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.budget {
        let entries: Vec<Rational> = (0..n * n)
            .map(|_| loop {
                let v = rng.random_range(-opts.bound..=opts.bound);
                if !(opts.nonzero_entries && v == 0) {
                    break int(v);
                }
            })
            .collect();
        let a = RatMatrix::new(n, n, entries).expect("n*n entries");
        if a.is_diagonal() || (0..n).any(|i| a[(i, 0)].is_zero()) {
            continue;
        }
        if a.det().expect("square").is_zero() {
            continue;
        }
        let web = LinearWeb::new(a.clone()).expect("nonsingular");
        if agw_test(&web).verdict == AgwVerdict::Agw
            && (!opts.defined_scalars || basis_affinors(&web).all_defined())
        {
            return Some(a);
        }
    }
    None
}

impl fmt::Display for AgwReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {} (via {:?} minors)", self.verdict, self.path)?;
        if let GaugeStatus::Degenerate(entries) = &self.gauge {
            let names: Vec<String> = entries.iter().map(EntryRef::to_string).collect();
            writeln!(f, "adapted coframe degenerate: {} vanish", names.join(", "))?;
        }
        for fol in &self.foliations {
            let vals: Vec<String> = fol
                .minors
                .iter()
                .map(|m| format!("[{}{}] {}", m.beta, m.gamma, format_rational(&m.value)))
                .collect();
            writeln!(
                f,
                "  foliation {}: {} ({})",
                fol.a,
                if fol.proportional {
                    "proportional"
                } else {
                    "not proportional"
                },
                vals.join(", ")
            )?;
        }
        for d in &self.literal_dets {
            writeln!(
                f,
                "  literal det {:?}: {}",
                d.form,
                format_rational(&d.value)
            )?;
        }
        match &self.condition7 {
            Condition7::Residual(r) => {
                writeln!(f, "  condition 7 residual: {}", format_rational(r))
            }
            Condition7::NotApplicable(why) => writeln!(f, "  condition 7: not applicable ({why})"),
        }
    }
}
