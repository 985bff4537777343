//! Example webs, constrained matrix families and seeded genericity surveys.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::relation_space;
use crate::agw::{agw_test, literal_det, AgwVerdict, DetForm};
use crate::parallel::{parallelizability_report, ParallelVerdict};
use crate::ratlin::{int, RatMatrix};
use crate::web::{general_position_audit, LinearWeb, WebError};

const MAX_RETRIES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown example {0}; expected 1, 2 or 3")]
    UnknownExample(usize),
    #[error("unknown family {0:?}; expected B8, B7, B6 or generic")]
    UnknownFamily(String),
    #[error("family {family} is defined for n = 3 only")]
    Order { family: Family },
    #[error("entry bound must be positive")]
    Bound,
    #[error("no nonsingular matrix found after {0} draws")]
    RetriesExhausted(usize),
    #[error("survey needs at least one sample")]
    EmptySurvey,
    #[error(transparent)]
    Web(#[from] WebError),
}

pub const EXAMPLE_MATRICES: [[[i64; 3]; 3]; 3] = [
    [[1, 1, 0], [1, 1, 1], [1, 2, 1]],
    [[1, 1, 0], [0, 1, 1], [1, 1, 1]],
    [[1, 1, 0], [0, 1, 1], [1, 0, 1]],
];

pub fn example_matrix(k: usize) -> Result<RatMatrix, FamilyError> {
    match k {
        1..=3 => Ok(RatMatrix::from_ints(&EXAMPLE_MATRICES[k - 1])),
        _ => Err(FamilyError::UnknownExample(k)),
    }
}

pub fn example_web(k: usize) -> Result<LinearWeb, FamilyError> {
    Ok(LinearWeb::new(example_matrix(k)?)?)
}

/// Same construction for any order `n`.
pub fn general_n_web(a: &RatMatrix) -> Result<LinearWeb, WebError> {
    LinearWeb::new(a.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    B8,
    B7,
    B6,
    #[serde(rename = "generic")]
    Generic,
}

impl Family {
    /// Forced-zero positions, 1-based `(row, col)`.
    pub fn zero_positions(&self) -> &'static [(usize, usize)] {
        match self {
            Family::B8 => &[(1, 3)],
            Family::B7 => &[(1, 2), (1, 3)],
            Family::B6 => &[(1, 3), (2, 1), (3, 2)],
            Family::Generic => &[],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::B8 => "B8",
            Family::B7 => "B7",
            Family::B6 => "B6",
            Family::Generic => "generic",
        })
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "b8" => Ok(Family::B8),
            "b7" => Ok(Family::B7),
            "b6" => Ok(Family::B6),
            "generic" => Ok(Family::Generic),
            _ => Err(FamilyError::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    /// Entries are drawn uniformly from `-bound..=bound`.
    pub bound: i64,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize, bound: i64) -> Result<Self, FamilyError> {
        if family != Family::Generic && n != 3 {
            return Err(FamilyError::Order { family });
        }
        if bound <= 0 || n == 0 {
            return Err(FamilyError::Bound);
        }
        Ok(FamilySpec { family, n, bound })
    }

    pub fn generic(n: usize) -> Self {
        FamilySpec {
            family: Family::Generic,
            n,
            bound: 9,
        }
    }

    pub fn satisfies(&self, a: &RatMatrix) -> bool {
        a.rows() == self.n
            && a.is_square()
            && self
                .family
                .zero_positions()
                .iter()
                .all(|&(r, c)| a[(r - 1, c - 1)].is_zero())
    }
}

/// Per-sample generator: stream `index` of the ChaCha generator seeded by
/// `seed`, so draws never depend on scheduling.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn sample_matrix_with(
    spec: &FamilySpec,
    rng: &mut ChaCha8Rng,
) -> Result<RatMatrix, FamilyError> {
    let n = spec.n;
    for _ in 0..MAX_RETRIES {
        let mut a = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, int(rng.random_range(-spec.bound..=spec.bound)));
            }
        }
        for &(r, c) in spec.family.zero_positions() {
            a.set(r - 1, c - 1, int(0));
        }
        if !a.det().expect("square").is_zero() {
            return Ok(a);
        }
    }
    Err(FamilyError::RetriesExhausted(MAX_RETRIES))
}

pub fn sample_family(spec: &FamilySpec, seed: u64) -> Result<LinearWeb, FamilyError> {
    let a = sample_matrix_with(spec, &mut sample_rng(seed, 0))?;
    Ok(LinearWeb::new(a)?)
}

/// A sample whose relation space exceeds dimension one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HighRankSample {
    pub index: usize,
    pub matrix: RatMatrix,
    pub dimension: usize,
    pub audit_clean: bool,
    /// All proportionality minors vanish.
    pub obstruction_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyStats {
    pub family: Family,
    pub n: usize,
    pub bound: i64,
    pub seed: u64,
    pub samples: usize,
    pub not_agw: usize,
    pub agw: usize,
    pub indeterminate: usize,
    pub audit_clean: usize,
    pub parallelizable: usize,
    pub relation_dim_histogram: BTreeMap<usize, usize>,
    /// Samples with a nonzero literal determinant (product column 1); `n = 3` only.
    pub literal_col1_nonzero: Option<usize>,
    pub high_rank: Vec<HighRankSample>,
}

struct SampleOutcome {
    verdict: AgwVerdict,
    audit_clean: bool,
    parallel: bool,
    dimension: usize,
    literal_nonzero: Option<bool>,
    high_rank: Option<HighRankSample>,
}

fn analyze_sample(
    spec: &FamilySpec,
    seed: u64,
    index: usize,
) -> Result<SampleOutcome, FamilyError> {
    let a = sample_matrix_with(spec, &mut sample_rng(seed, index as u64))?;
    let web = LinearWeb::new(a.clone())?;
    let agw = agw_test(&web);
    let audit = general_position_audit(&web);
    let rank = relation_space(&web);
    let parallel = parallelizability_report(&web).verdict == ParallelVerdict::Parallelizable;
    let literal_nonzero = (spec.n == 3).then(|| {
        !literal_det(&web, DetForm::ProductCol1)
            .expect("n = 3")
            .is_zero()
    });
    let high_rank = (rank.dimension >= 2).then(|| HighRankSample {
        index,
        matrix: a,
        dimension: rank.dimension,
        audit_clean: audit.general_position,
        obstruction_zero: agw.foliations.iter().all(|f| f.proportional),
    });
    Ok(SampleOutcome {
        verdict: agw.verdict,
        audit_clean: audit.general_position,
        parallel,
        dimension: rank.dimension,
        literal_nonzero,
        high_rank,
    })
}

/// Runs every analysis on `count` seeded samples. `jobs = None` uses the
/// global rayon pool; results are identical for any degree of parallelism.
pub fn survey(
    spec: &FamilySpec,
    count: usize,
    seed: u64,
    jobs: Option<usize>,
) -> Result<SurveyStats, FamilyError> {
    if count == 0 {
        return Err(FamilyError::EmptySurvey);
    }
    let run = || {
        (0..count)
            .into_par_iter()
            .map(|i| analyze_sample(spec, seed, i))
            .collect::<Result<Vec<_>, _>>()
    };
    let outcomes = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    }?;
    let mut stats = SurveyStats {
        family: spec.family,
        n: spec.n,
        bound: spec.bound,
        seed,
        samples: count,
        not_agw: 0,
        agw: 0,
        indeterminate: 0,
        audit_clean: 0,
        parallelizable: 0,
        relation_dim_histogram: BTreeMap::new(),
        literal_col1_nonzero: (spec.n == 3).then_some(0),
        high_rank: Vec::new(),
    };
    for o in outcomes {
        match o.verdict {
            AgwVerdict::NotAgw => stats.not_agw += 1,
            AgwVerdict::Agw => stats.agw += 1,
            AgwVerdict::Indeterminate => stats.indeterminate += 1,
        }
        stats.audit_clean += usize::from(o.audit_clean);
        stats.parallelizable += usize::from(o.parallel);
        *stats.relation_dim_histogram.entry(o.dimension).or_default() += 1;
        if let (Some(c), Some(true)) = (stats.literal_col1_nonzero.as_mut(), o.literal_nonzero) {
            *c += 1;
        }
        stats.high_rank.extend(o.high_rank);
    }
    Ok(stats)
}

impl fmt::Display for SurveyStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "family {} (n = {}, entries in [-{b}, {b}], seed {})",
            self.family,
            self.n,
            self.seed,
            b = self.bound
        )?;
        writeln!(f, "samples:        {}", self.samples)?;
        writeln!(f, "not AGW:        {}", self.not_agw)?;
        writeln!(f, "AGW:            {}", self.agw)?;
        writeln!(f, "indeterminate:  {}", self.indeterminate)?;
        writeln!(f, "audit clean:    {}", self.audit_clean)?;
        writeln!(f, "parallelizable: {}", self.parallelizable)?;
        for (dim, c) in &self.relation_dim_histogram {
            writeln!(f, "relation dim {dim}: {c}")?;
        }
        if let Some(c) = self.literal_col1_nonzero {
            writeln!(f, "literal det (product col 1) nonzero: {c}")?;
        }
        for h in &self.high_rank {
            writeln!(
                f,
                "  sample {} has relation dim {} (audit clean: {}, obstruction zero: {}): {}",
                h.index, h.dimension, h.audit_clean, h.obstruction_zero, h.matrix
            )?;
        }
        Ok(())
    }
}
