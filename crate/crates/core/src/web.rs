//! The linear web `W(2n, n, 2)` built from a nonsingular matrix `A`.
//!
//! Index convention: `a_b^a = A[b][a]` (lower index is the row) and
//! `b_a^b = B[a][b]` with `B = A^{-1}`. Foliation `xi` is cut out by
//! `dx^xi = 0, dy_xi = 0`:
//!
//! * `x^{n+a} = sum_b A[b][a] x^b`
//! * `y_{n+a} = -sum_b B[a][b] y_b`, equivalently `y_a = -sum_b A[a][b] y_{n+b}`

use std::fmt;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forms::{independent, Chart, Independence, OneForm};
use crate::ratlin::{self, format_rational, serde_rational, LinError, RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WebError {
    #[error("web matrix must be square and nonempty, got {rows}x{cols}")]
    Shape { rows: usize, cols: usize },
    #[error("web matrix is singular")]
    Singular,
    #[error(transparent)]
    Lin(#[from] LinError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearWeb {
    a: RatMatrix,
    b: RatMatrix,
    chart: Chart,
    dx: Vec<OneForm>,
    dy: Vec<OneForm>,
}

pub fn build_web(a: &RatMatrix) -> Result<LinearWeb, WebError> {
    LinearWeb::new(a.clone())
}

impl LinearWeb {
    pub fn new(a: RatMatrix) -> Result<Self, WebError> {
        if !a.is_square() || a.rows() == 0 {
            return Err(WebError::Shape {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let b = match a.inverse() {
            Ok(b) => b,
            Err(LinError::Singular { .. }) => return Err(WebError::Singular),
            Err(e) => return Err(e.into()),
        };
        let n = a.rows();
        let chart = Chart::new(n).expect("n >= 1");
        let mut dx = Vec::with_capacity(2 * n);
        let mut dy = Vec::with_capacity(2 * n);
        let zero_half = || vec![Rational::zero(); n];
        for xi in 0..n {
            let mut c = zero_half();
            c[xi] = Rational::one();
            c.extend(zero_half());
            dx.push(OneForm::new(chart, c).expect("length 2n"));
        }
        for alpha in 0..n {
            let mut c = a.column(alpha);
            c.extend(zero_half());
            dx.push(OneForm::new(chart, c).expect("length 2n"));
        }
        for xi in 0..n {
            let mut c = zero_half();
            c.extend(a.row(xi).iter().map(|v| -v));
            dy.push(OneForm::new(chart, c).expect("length 2n"));
        }
        for alpha in 0..n {
            let mut c = zero_half();
            c.extend(zero_half());
            c[n + alpha] = Rational::one();
            dy.push(OneForm::new(chart, c).expect("length 2n"));
        }
        Ok(LinearWeb {
            a,
            b,
            chart,
            dx,
            dy,
        })
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &RatMatrix {
        &self.a
    }

    pub fn b(&self) -> &RatMatrix {
        &self.b
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    /// Number of foliations, `2n`.
    pub fn size(&self) -> usize {
        2 * self.n()
    }

    /// `dx^xi` for 1-based `xi`.
    pub fn dx(&self, xi: usize) -> &OneForm {
        &self.dx[xi - 1]
    }

    /// `dy_xi` for 1-based `xi`.
    pub fn dy(&self, xi: usize) -> &OneForm {
        &self.dy[xi - 1]
    }

    /// The defining pair `(dx^xi, dy_xi)` of foliation `xi` (1-based).
    pub fn foliation(&self, xi: usize) -> (&OneForm, &OneForm) {
        (self.dx(xi), self.dy(xi))
    }

    /// Leaf functions `(x^xi, y_xi)` of every foliation as linear functions on
    /// the chart.
    pub fn leaf_functions(&self) -> Vec<(LinearFunction, LinearFunction)> {
        self.dx
            .iter()
            .zip(&self.dy)
            .map(|(dx, dy)| {
                (
                    LinearFunction(dx.coeffs().to_vec()),
                    LinearFunction(dy.coeffs().to_vec()),
                )
            })
            .collect()
    }

    /// The same web with every defining form recomputed as the differential
    /// of its leaf function at `point`.
    pub fn at_point(&self, point: &[Rational]) -> LinearWeb {
        let mut dx = Vec::with_capacity(self.size());
        let mut dy = Vec::with_capacity(self.size());
        for (u, v) in self.leaf_functions() {
            dx.push(OneForm::new(self.chart, u.differential_at(point)).expect("length 2n"));
            dy.push(OneForm::new(self.chart, v.differential_at(point)).expect("length 2n"));
        }
        LinearWeb {
            a: self.a.clone(),
            b: self.b.clone(),
            chart: self.chart,
            dx,
            dy,
        }
    }
}

/// A linear function on the chart given by its coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFunction(pub Vec<Rational>);

impl LinearFunction {
    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(point)
            .fold(Rational::zero(), |acc, (c, p)| acc + c * p)
    }

    /// Exact gradient at `point` by unit forward differences.
    pub fn differential_at(&self, point: &[Rational]) -> Vec<Rational> {
        let base = self.eval(point);
        (0..point.len())
            .map(|i| {
                let mut p = point.to_vec();
                p[i] += Rational::one();
                self.eval(&p) - &base
            })
            .collect()
    }
}

/// Which factor of the cotangent space a variable belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Block {
    X,
    Y,
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Block::X => "x",
            Block::Y => "y",
        })
    }
}

/// `lhs = sum_k coeffs[k] * var_{k+1}`, where `lhs` is `x^{n+a}` or `y_{n+a}`
/// and the right-hand side runs over `x^1..x^n` (or `y_1..y_n`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearEquation {
    pub block: Block,
    pub lhs: usize,
    #[serde(with = "serde_rational::vec")]
    pub coeffs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormEquations {
    pub n: usize,
    pub x: Vec<LinearEquation>,
    pub y: Vec<LinearEquation>,
}

pub fn closed_form(web: &LinearWeb) -> ClosedFormEquations {
    let n = web.n();
    let x = (0..n)
        .map(|alpha| LinearEquation {
            block: Block::X,
            lhs: n + alpha + 1,
            coeffs: web.a().column(alpha),
        })
        .collect();
    let y = (0..n)
        .map(|alpha| LinearEquation {
            block: Block::Y,
            lhs: n + alpha + 1,
            coeffs: web.b().row(alpha).iter().map(|v| -v).collect(),
        })
        .collect();
    ClosedFormEquations { n, x, y }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("equations do not describe a complete web: {0}")]
    Incomplete(String),
}

impl ClosedFormEquations {
    /// Recovers `(A, B)` from the equations.
    pub fn matrices(&self) -> Result<(RatMatrix, RatMatrix), LinError> {
        let n = self.n;
        let mut a = RatMatrix::zeros(n, n);
        let mut b = RatMatrix::zeros(n, n);
        for eq in &self.x {
            for (beta, c) in eq.coeffs.iter().enumerate() {
                a.set(beta, eq.lhs - n - 1, c.clone());
            }
        }
        for eq in &self.y {
            for (beta, c) in eq.coeffs.iter().enumerate() {
                b.set(eq.lhs - n - 1, beta, -c);
            }
        }
        Ok((a, b))
    }

    /// One equation per line, x-block first:
    ///
    /// ```text
    /// x^4 = x^1 + x^2 + x^3
    /// y_4 = 1/2 (-y_1 + y_2 - y_3)
    /// ```
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for eq in self.x.iter().chain(&self.y) {
            out.push_str(&eq.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<ClosedFormEquations, ParseError> {
        let mut eqs = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            eqs.push(
                parse_equation(line).map_err(|msg| ParseError::Syntax { line: idx + 1, msg })?,
            );
        }
        let n = eqs.len() / 2;
        if n == 0 || eqs.len() != 2 * n {
            return Err(ParseError::Incomplete(format!(
                "expected 2n equations, found {}",
                eqs.len()
            )));
        }
        let mut x: Vec<Option<LinearEquation>> = vec![None; n];
        let mut y: Vec<Option<LinearEquation>> = vec![None; n];
        for (block, lhs, terms) in eqs {
            if lhs <= n || lhs > 2 * n {
                return Err(ParseError::Incomplete(format!(
                    "left-hand side index {lhs} outside {}..={}",
                    n + 1,
                    2 * n
                )));
            }
            let mut coeffs = vec![Rational::zero(); n];
            for (k, c) in terms {
                if k == 0 || k > n {
                    return Err(ParseError::Incomplete(format!(
                        "right-hand side variable index {k} outside 1..={n}"
                    )));
                }
                coeffs[k - 1] += c;
            }
            let slot = match block {
                Block::X => &mut x[lhs - n - 1],
                Block::Y => &mut y[lhs - n - 1],
            };
            if slot.is_some() {
                return Err(ParseError::Incomplete(format!(
                    "{block}{lhs} defined twice"
                )));
            }
            *slot = Some(LinearEquation { block, lhs, coeffs });
        }
        let collect = |v: Vec<Option<LinearEquation>>, b: Block| {
            v.into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| ParseError::Incomplete(format!("missing {b}-equation")))
        };
        Ok(ClosedFormEquations {
            n,
            x: collect(x, Block::X)?,
            y: collect(y, Block::Y)?,
        })
    }
}

fn var_name(block: Block, k: usize) -> String {
    match block {
        Block::X => format!("x^{k}"),
        Block::Y => format!("y_{k}"),
    }
}

impl fmt::Display for LinearEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = ", var_name(self.block, self.lhs))?;
        let denom = self
            .coeffs
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, c| {
                num_integer::Integer::lcm(&acc, c.denom())
            });
        let factored = !denom.is_one();
        let scale = Rational::from_integer(denom.clone());
        if factored {
            write!(f, "1/{denom} (")?;
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = if factored { c * &scale } else { c.clone() };
            let mag = ratlin::abs(&c);
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if !mag.is_one() {
                write!(f, "{}", format_rational(&mag))?;
            }
            f.write_str(&var_name(self.block, k + 1))?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        if factored {
            f.write_str(")")?;
        }
        Ok(())
    }
}

type ParsedEquation = (Block, usize, Vec<(usize, Rational)>);

fn parse_var(s: &str) -> Result<(Block, usize), String> {
    let s = s.trim();
    let (block, rest) = if let Some(r) = s.strip_prefix("x^") {
        (Block::X, r)
    } else if let Some(r) = s.strip_prefix("y_") {
        (Block::Y, r)
    } else {
        return Err(format!("expected x^k or y_k, found {s:?}"));
    };
    let k = rest
        .trim()
        .parse::<usize>()
        .map_err(|_| format!("bad variable index in {s:?}"))?;
    Ok((block, k))
}

fn parse_equation(line: &str) -> Result<ParsedEquation, String> {
    let (lhs, rhs) = line
        .split_once('=')
        .ok_or_else(|| "missing '='".to_string())?;
    let (block, lhs) = parse_var(lhs)?;
    let mut rhs = rhs.trim();
    let mut factor = Rational::one();
    if let Some(open) = rhs.find('(') {
        let prefix = rhs[..open].trim();
        let inner = rhs[open + 1..]
            .trim_end()
            .strip_suffix(')')
            .ok_or_else(|| "unbalanced parenthesis".to_string())?;
        factor = ratlin::parse_rational(prefix).map_err(|e| e.to_string())?;
        rhs = inner;
    }
    if rhs.trim() == "0" {
        return Ok((block, lhs, Vec::new()));
    }
    let mut terms = Vec::new();
    // Split on +/- while keeping the sign with its term.
    let mut chunks = Vec::new();
    let mut cur = String::new();
    for ch in rhs.chars() {
        if (ch == '+' || ch == '-') && !cur.trim().is_empty() {
            chunks.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    chunks.push(cur);
    for chunk in chunks {
        let t: String = chunk.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err("empty term".into());
        }
        let (neg, body) = match t.as_bytes()[0] {
            b'-' => (true, &t[1..]),
            b'+' => (false, &t[1..]),
            _ => (false, &t[..]),
        };
        let var_at = body
            .find(['x', 'y'])
            .ok_or_else(|| format!("term {t:?} has no variable"))?;
        let coeff = if var_at == 0 {
            Rational::one()
        } else {
            ratlin::parse_rational(&body[..var_at]).map_err(|e| e.to_string())?
        };
        let (b, k) = parse_var(&body[var_at..])?;
        if b != block {
            return Err(format!("{} mixes x and y variables", var_name(block, lhs)));
        }
        let c = if neg { -coeff } else { coeff };
        terms.push((k, c * &factor));
    }
    Ok((block, lhs, terms))
}

/// A set of `k` foliations whose defining forms in one block are dependent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Degeneracy {
    pub block: Block,
    /// 1-based foliation indices, ascending.
    pub subset: Vec<usize>,
    /// Coefficients of the linear relation among the subset's forms.
    #[serde(with = "serde_rational::vec")]
    pub dependency: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub n: usize,
    pub subsets_examined: usize,
    /// Failures among the `n`-subsets (strict general position).
    pub degenerate: Vec<Degeneracy>,
    pub general_position: bool,
    /// Failures among the 2-subsets (pairwise transversality).
    pub pairwise_degenerate: Vec<Degeneracy>,
    pub pairwise_transversal: bool,
}

impl AuditReport {
    pub fn contains(&self, block: Block, subset: &[usize]) -> bool {
        self.degenerate
            .iter()
            .any(|d| d.block == block && d.subset == subset)
    }
}

fn block_failures(web: &LinearWeb, k: usize) -> (usize, Vec<Degeneracy>) {
    let mut examined = 0;
    let mut out = Vec::new();
    for subset in (1..=web.size()).combinations(k) {
        examined += 1;
        for block in [Block::X, Block::Y] {
            let forms: Vec<OneForm> = subset
                .iter()
                .map(|&xi| match block {
                    Block::X => web.dx(xi).clone(),
                    Block::Y => web.dy(xi).clone(),
                })
                .collect();
            if let Independence::Dependent(dependency) =
                independent(&forms).expect("forms share the web chart")
            {
                out.push(Degeneracy {
                    block,
                    subset: subset.clone(),
                    dependency,
                });
            }
        }
    }
    (examined, out)
}

/// Tests every `n`-subset of foliations for independence of its x-forms and
/// of its y-forms, plus the same test on 2-subsets.
pub fn general_position_audit(web: &LinearWeb) -> AuditReport {
    let (examined, degenerate) = block_failures(web, web.n());
    let (_, pairwise_degenerate) = if web.n() >= 2 {
        block_failures(web, 2)
    } else {
        (0, Vec::new())
    };
    AuditReport {
        n: web.n(),
        subsets_examined: examined,
        general_position: degenerate.is_empty(),
        degenerate,
        pairwise_transversal: pairwise_degenerate.is_empty(),
        pairwise_degenerate,
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "general position: {} ({} of {} subsets checked in each block fail)",
            if self.general_position { "yes" } else { "NO" },
            self.degenerate.len(),
            self.subsets_examined
        )?;
        for d in &self.degenerate {
            writeln!(
                f,
                "  {}-block {:?} dependent, relation ({})",
                d.block,
                d.subset,
                d.dependency.iter().map(format_rational).join(", ")
            )?;
        }
        writeln!(
            f,
            "pairwise transversal: {}",
            if self.pairwise_transversal {
                "yes"
            } else {
                "NO"
            }
        )
    }
}
