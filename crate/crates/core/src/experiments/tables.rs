//! Fixed-layout reproductions: Table I, the unit-ball table, concentration
//! tails, classical probability vectors, and the free-product identity.

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{monte_carlo, Cell, Table};
use crate::constants::{self, reference};
use crate::distances::{bhattacharyya, classical_bures, l1_halved, Metric, PairAnalysis, ProbabilityVector};
use crate::ensembles::{ball_with, dirichlet_with, induced_with};
use crate::error::{Error, Result};
use crate::laws::{self, LimitLaw};
use crate::linalg::{DensityMatrix, Field, MatrixFunction, PureState};
use crate::stats::{mean_se, pairwise_sum, par_indexed};

/// Metrics of Table I, in table order.
pub const TABLE1_METRICS: [Metric; 7] = [Metric::Tr, Metric::Hs, Metric::Inf, Metric::T, Metric::B, Metric::E, Metric::H];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Table1Column {
    /// `D(rho, 1/N)`.
    ToMixed,
    /// `D(rho, sigma)`.
    Pair,
    /// `D(|psi>, |phi>)` for orthogonal pure states.
    Pure,
}

impl Table1Column {
    pub const ALL: [Table1Column; 3] = [Table1Column::ToMixed, Table1Column::Pair, Table1Column::Pure];

    pub fn name(self) -> &'static str {
        match self {
            Table1Column::ToMixed => "rho-vs-mixed",
            Table1Column::Pair => "rho-vs-sigma",
            Table1Column::Pure => "pure",
        }
    }
}

/// Registry name of a Table I cell.
pub fn table1_reference(metric: Metric, column: Table1Column) -> Result<&'static str> {
    use Metric::*;
    use Table1Column::*;
    Ok(match (metric, column) {
        (Tr, ToMixed) => "trace-single",
        (Tr, Pair) => "trace-generic",
        (Tr, Pure) => "pure-tr",
        (Hs, ToMixed) => "hs-single",
        (Hs, Pair) => "hs-generic",
        (Hs, Pure) => "pure-hs",
        (Inf, ToMixed) => "inf-single",
        (Inf, Pair) => "inf-generic",
        (Inf, Pure) => "pure-inf",
        (T, ToMixed) => "transmission-single",
        (T, Pair) => "transmission-generic",
        (T, Pure) => "pure-t",
        (B, ToMixed) => "bures-single",
        (B, Pair) => "bures-generic",
        (B, Pure) => "pure-b",
        (E, ToMixed) => "entropic-single",
        (E, Pair) => "entropic-generic",
        (E, Pure) => "pure-e",
        (H, ToMixed) => "hellinger-single",
        (H, Pair) => "hellinger-generic",
        (H, Pure) => "pure-h",
        _ => return Err(Error::invalid(format!("{metric} is not a Table I metric"))),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table1Cell {
    pub metric: Metric,
    pub column: Table1Column,
    pub value: f64,
    /// Zero for the deterministic pure column.
    pub se: f64,
    pub samples: usize,
    pub reference_name: &'static str,
    pub reference: f64,
}

/// Every cell of Table I. Mixed columns are Monte Carlo means over
/// Hilbert-Schmidt states of dimension `n`; the pure column is evaluated on
/// two orthogonal basis states.
pub fn table1(n: usize, samples: usize, master_seed: u64) -> Result<Vec<Table1Cell>> {
    if n < 2 || samples < 2 {
        return Err(Error::invalid("table1 needs N >= 2 and at least 2 samples"));
    }
    // one pass per sample evaluates all 14 stochastic cells
    let per_sample = par_indexed(samples, |s| -> Result<Vec<f64>> {
        let mut rng = super::sample_stream(master_seed, 0, s).rng();
        let rho = induced_with(&mut rng, n, n, Field::Complex);
        let sigma = induced_with(&mut rng, n, n, Field::Complex);
        let mixed = DensityMatrix::maximally_mixed(n);
        let to_mixed = PairAnalysis::new(&rho, &mixed)?;
        let pair = PairAnalysis::new(&rho, &sigma)?;
        let mut out = Vec::with_capacity(14);
        for m in TABLE1_METRICS {
            out.push(to_mixed.metric(m)?);
            out.push(pair.metric(m)?);
        }
        Ok(out)
    });
    let per_sample: Vec<Vec<f64>> = per_sample.into_iter().collect::<Result<_>>()?;
    let psi = PureState::basis(n, 0)?.projector();
    let phi = PureState::basis(n, 1)?.projector();
    let pure = PairAnalysis::new(&psi, &phi)?;

    let mut cells = Vec::with_capacity(21);
    for (i, m) in TABLE1_METRICS.into_iter().enumerate() {
        for column in Table1Column::ALL {
            let (value, se, count) = match column {
                Table1Column::Pure => (pure.metric(m)?, 0.0, 1),
                _ => {
                    let j = 2 * i + usize::from(column == Table1Column::Pair);
                    let xs: Vec<f64> = per_sample.iter().map(|v| v[j]).collect();
                    let st = mean_se(&xs);
                    (st.mean, st.se, st.n)
                }
            };
            let name = table1_reference(m, column)?;
            cells.push(Table1Cell {
                metric: m,
                column,
                value,
                se,
                samples: count,
                reference_name: name,
                reference: reference(name)?,
            });
        }
    }
    Ok(cells)
}

pub fn table1_table(cells: &[Table1Cell]) -> Table {
    let mut t = Table::new(&["metric", "column", "value", "se", "samples", "reference_name", "reference", "deviation"]);
    for c in cells {
        t.push(vec![
            c.metric.name().into(),
            c.column.name().into(),
            c.value.into(),
            c.se.into(),
            c.samples.into(),
            c.reference_name.into(),
            c.reference.into(),
            (c.value - c.reference).abs().into(),
        ]);
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BallNorm {
    L1,
    L2,
    LInf,
}

impl BallNorm {
    pub const ALL: [BallNorm; 3] = [BallNorm::L1, BallNorm::L2, BallNorm::LInf];

    pub fn name(self) -> &'static str {
        match self {
            BallNorm::L1 => "l1",
            BallNorm::L2 => "l2",
            BallNorm::LInf => "linf",
        }
    }

    fn apply(self, d: impl Iterator<Item = f64>) -> f64 {
        match self {
            BallNorm::L1 => d.map(f64::abs).sum(),
            BallNorm::L2 => d.map(|x| x * x).sum::<f64>().sqrt(),
            BallNorm::LInf => d.map(f64::abs).fold(0.0, f64::max),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BallRow {
    pub n: usize,
    pub norm: BallNorm,
    pub mean: f64,
    pub se: f64,
    pub samples: usize,
    /// Closed-form or printed table value.
    pub reference_name: Option<&'static str>,
    pub reference: Option<f64>,
    /// Decimal printed next to the formula, when the two disagree.
    pub printed: Option<f64>,
}

fn ball_reference(n: usize, norm: BallNorm) -> (Option<&'static str>, Option<&'static str>) {
    match (n, norm) {
        (1, _) => (Some("ball-1"), None),
        (2, BallNorm::L1) => (Some("ball-2-l1"), None),
        (2, BallNorm::L2) => (Some("ball-2-l2"), None),
        (2, BallNorm::LInf) => (Some("ball-2-linf"), None),
        (3, BallNorm::L1) => (Some("ball-3-l1"), Some("ball-3-l1-printed")),
        (3, BallNorm::L2) => (Some("ball-3-l2"), None),
        (3, BallNorm::LInf) => (Some("ball-3-linf"), None),
        _ => (None, None),
    }
}

/// Mean `L1`, `L2` and `L_inf` distances between independent uniform points
/// of the unit `n`-ball.
pub fn ball_table(n_list: &[usize], samples: usize, master_seed: u64) -> Result<Vec<BallRow>> {
    if samples < 2 {
        return Err(Error::invalid("ball_table needs at least 2 samples"));
    }
    let mut rows = Vec::new();
    for (p, &n) in n_list.iter().enumerate() {
        if n == 0 {
            return Err(Error::invalid("ball dimension must be at least 1"));
        }
        let per = par_indexed(samples, |s| {
            let mut rng = super::sample_stream(master_seed, p, s).rng();
            let x = ball_with(&mut rng, n);
            let y = ball_with(&mut rng, n);
            BallNorm::ALL.map(|norm| norm.apply(x.iter().zip(&y).map(|(a, b)| a - b)))
        });
        for (i, norm) in BallNorm::ALL.into_iter().enumerate() {
            let xs: Vec<f64> = per.iter().map(|v| v[i]).collect();
            let st = mean_se(&xs);
            let (name, printed) = ball_reference(n, norm);
            rows.push(BallRow {
                n,
                norm,
                mean: st.mean,
                se: st.se,
                samples: st.n,
                reference_name: name,
                reference: name.map(reference).transpose()?,
                printed: printed.map(reference).transpose()?,
            });
        }
    }
    Ok(rows)
}

pub fn ball_table_table(rows: &[BallRow]) -> Table {
    let mut t = Table::new(&["n", "norm", "mean", "se", "samples", "reference_name", "reference", "printed"]);
    for r in rows {
        t.push(vec![
            r.n.into(),
            r.norm.name().into(),
            r.mean.into(),
            r.se.into(),
            r.samples.into(),
            r.reference_name.into(),
            r.reference.into(),
            r.printed.into(),
        ]);
    }
    t
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailRow {
    pub n: usize,
    pub eps: f64,
    pub exceedances: usize,
    pub samples: usize,
    pub fraction: f64,
    /// Binomial standard error `sqrt(p (1 - p) / samples)`.
    pub se: f64,
    pub mean: f64,
    pub sd: f64,
}

/// Empirical `P(|D_Tr(rho, sigma) - D| > eps)` for Hilbert-Schmidt pairs,
/// with `D = 1/4 + 1/pi`.
pub fn concentration_tail(n_list: &[usize], eps: f64, samples: usize, master_seed: u64) -> Result<Vec<TailRow>> {
    if !(eps > 0.0) {
        return Err(Error::invalid("eps must be positive"));
    }
    if samples < 2 {
        return Err(Error::invalid("concentration_tail needs at least 2 samples"));
    }
    let target = reference("trace-generic")?;
    let mut rows = Vec::new();
    for (p, &n) in n_list.iter().enumerate() {
        let (st, values) = monte_carlo(master_seed, p, samples, |rng| tr_pair(rng, n))?;
        let exceed = values.iter().filter(|d| (*d - target).abs() > eps).count();
        let frac = exceed as f64 / samples as f64;
        rows.push(TailRow {
            n,
            eps,
            exceedances: exceed,
            samples,
            fraction: frac,
            se: (frac * (1.0 - frac) / samples as f64).sqrt(),
            mean: st.mean,
            sd: st.sd,
        });
    }
    Ok(rows)
}

fn tr_pair(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let rho = induced_with(rng, n, n, Field::Complex);
    let sigma = induced_with(rng, n, n, Field::Complex);
    Ok(0.5 * (&rho - &sigma).trace_norm()?)
}

pub fn tail_table(rows: &[TailRow]) -> Table {
    let mut t = Table::new(&["n", "eps", "exceedances", "samples", "fraction", "se", "mean", "sd"]);
    for r in rows {
        t.push(vec![
            r.n.into(),
            r.eps.into(),
            r.exceedances.into(),
            r.samples.into(),
            r.fraction.into(),
            r.se.into(),
            r.mean.into(),
            r.sd.into(),
        ]);
    }
    t
}

/// Measure on the probability simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SimplexMeasure {
    /// Dirichlet(1): diagonal of a complex Haar vector.
    Flat,
    /// Dirichlet(1/2): diagonal of a real Haar vector.
    Statistical,
}

impl SimplexMeasure {
    pub fn name(self) -> &'static str {
        match self {
            SimplexMeasure::Flat => "flat",
            SimplexMeasure::Statistical => "statistical",
        }
    }

    fn s(self) -> f64 {
        match self {
            SimplexMeasure::Flat => 1.0,
            SimplexMeasure::Statistical => 0.5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassicalQuantity {
    /// `(1/2) sum |p - q|`.
    L1,
    /// `sum sqrt(p q)`.
    Bhattacharyya,
    /// `sqrt(2 - 2 sum sqrt(p q))`.
    Bures,
}

impl ClassicalQuantity {
    pub const ALL: [ClassicalQuantity; 3] = [ClassicalQuantity::L1, ClassicalQuantity::Bhattacharyya, ClassicalQuantity::Bures];

    pub fn name(self) -> &'static str {
        match self {
            ClassicalQuantity::L1 => "l1",
            ClassicalQuantity::Bhattacharyya => "bhatt",
            ClassicalQuantity::Bures => "bures",
        }
    }

    fn eval(self, p: &ProbabilityVector, q: &ProbabilityVector) -> Result<f64> {
        match self {
            ClassicalQuantity::L1 => l1_halved(p, q),
            ClassicalQuantity::Bhattacharyya => bhattacharyya(p, q),
            ClassicalQuantity::Bures => classical_bures(p, q),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalRow {
    pub measure: SimplexMeasure,
    pub quantity: ClassicalQuantity,
    /// `uniform` (against the flat vector) or `pair` (two independent draws).
    pub against: &'static str,
    pub mean: f64,
    pub se: f64,
    pub samples: usize,
    pub reference_name: String,
    pub reference: f64,
}

/// Classical analogues of the quantum constants for random probability
/// vectors of length `n`.
pub fn classical_suite(
    measures: &[SimplexMeasure],
    quantities: &[ClassicalQuantity],
    n: usize,
    samples: usize,
    master_seed: u64,
) -> Result<Vec<ClassicalRow>> {
    if n < 2 || samples < 2 {
        return Err(Error::invalid("classical suite needs N >= 2 and at least 2 samples"));
    }
    let uniform = ProbabilityVector::uniform(n);
    let mut rows = Vec::new();
    for (p, &measure) in measures.iter().enumerate() {
        let per = par_indexed(samples, |s| -> Result<Vec<f64>> {
            let mut rng = super::sample_stream(master_seed, p, s).rng();
            let a = dirichlet_with(&mut rng, n, measure.s())?;
            let b = dirichlet_with(&mut rng, n, measure.s())?;
            let mut out = Vec::with_capacity(2 * quantities.len());
            for q in quantities {
                out.push(q.eval(&a, &uniform)?);
                out.push(q.eval(&a, &b)?);
            }
            Ok(out)
        });
        let per: Vec<Vec<f64>> = per.into_iter().collect::<Result<_>>()?;
        for (i, &q) in quantities.iter().enumerate() {
            for (j, against) in ["uniform", "pair"].into_iter().enumerate() {
                let xs: Vec<f64> = per.iter().map(|v| v[2 * i + j]).collect();
                let st = mean_se(&xs);
                let name = format!("{}-{}-{}", q.name(), measure.name(), against);
                rows.push(ClassicalRow {
                    measure,
                    quantity: q,
                    against,
                    mean: st.mean,
                    se: st.se,
                    samples: st.n,
                    reference: reference(&name)?,
                    reference_name: name,
                });
            }
        }
    }
    Ok(rows)
}

pub fn classical_table(rows: &[ClassicalRow]) -> Table {
    let mut t = Table::new(&["measure", "quantity", "against", "mean", "se", "samples", "reference_name", "reference"]);
    for r in rows {
        t.push(vec![
            r.measure.name().into(),
            r.quantity.name().into(),
            r.against.into(),
            r.mean.into(),
            r.se.into(),
            r.samples.into(),
            r.reference_name.clone().into(),
            r.reference.into(),
        ]);
    }
    t
}

/// Pairs `(g, h)` for `E Tr g(rho) h(sigma)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum FreeProductCase {
    /// `g = h = id`; reported as `N Tr rho sigma`.
    Identity,
    /// `Tr rho ln rho - Tr rho ln sigma`, the relative entropy.
    RelativeEntropy,
    /// `g = t^s`, `h = t^{1-s}`.
    Power(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FreeProductReport {
    pub case: FreeProductCase,
    pub n: usize,
    pub samples: usize,
    /// Direct Monte Carlo mean of the trace functional.
    pub direct: f64,
    pub direct_se: f64,
    /// Same functional with `Tr g(rho) h(sigma)` replaced by
    /// `(1/N) Tr g(rho) Tr h(sigma)` on the same samples.
    pub factorized: f64,
    pub factorized_se: f64,
    /// Asymptotic value from the product of MP integrals.
    pub quadrature: f64,
}

fn tr_product(a: &crate::linalg::HermitianMatrix, b: &crate::linalg::HermitianMatrix) -> f64 {
    let (x, y) = (a.matrix(), b.matrix());
    let n = x.nrows();
    let mut terms = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            terms.push((x[(i, j)] * y[(j, i)]).re);
        }
    }
    pairwise_sum(&terms)
}

/// Checks that eigenvectors of independent states decouple:
/// `Tr g(rho) h(sigma) ~ (1/N) Tr g(rho) Tr h(sigma)`.
pub fn free_product_check(case: FreeProductCase, n: usize, samples: usize, master_seed: u64) -> Result<FreeProductReport> {
    if samples < 2 || n < 2 {
        return Err(Error::invalid("free_product_check needs N >= 2 and at least 2 samples"));
    }
    let nf = n as f64;
    let per = par_indexed(samples, |s| -> Result<(f64, f64)> {
        let mut rng = super::sample_stream(master_seed, 0, s).rng();
        let rho = induced_with(&mut rng, n, n, Field::Complex);
        let sigma = induced_with(&mut rng, n, n, Field::Complex);
        match case {
            FreeProductCase::Identity => {
                let direct = nf * tr_product(rho.as_hermitian(), sigma.as_hermitian());
                Ok((direct, 1.0))
            }
            FreeProductCase::RelativeEntropy => {
                let self_term = -rho.entropy()?;
                let log_sigma = sigma.matrix_function(MatrixFunction::Log)?;
                let cross = tr_product(rho.as_hermitian(), &log_sigma);
                let cross_factorized = log_sigma.trace() / nf;
                Ok((self_term - cross, self_term - cross_factorized))
            }
            FreeProductCase::Power(p) => {
                let g = rho.matrix_function(MatrixFunction::Power(p))?;
                let h = sigma.matrix_function(MatrixFunction::Power(1.0 - p))?;
                Ok((tr_product(&g, &h), g.trace() * h.trace() / nf))
            }
        }
    });
    let per: Vec<(f64, f64)> = per.into_iter().collect::<Result<_>>()?;
    let direct = mean_se(&per.iter().map(|v| v.0).collect::<Vec<_>>());
    let factorized = mean_se(&per.iter().map(|v| v.1).collect::<Vec<_>>());
    let mp = LimitLaw::marchenko_pastur(1.0)?;
    let quadrature = match case {
        FreeProductCase::Identity => 1.0,
        FreeProductCase::RelativeEntropy => {
            mp.functional(|t| if t > 0.0 { t * t.ln() } else { 0.0 }, &[])? - mp.functional(f64::ln, &[])?
        }
        FreeProductCase::Power(p) => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::invalid("power must lie in [0, 1]"));
            }
            laws::chernoff_limit(p)?
        }
    };
    Ok(FreeProductReport {
        case,
        n,
        samples,
        direct: direct.mean,
        direct_se: direct.se,
        factorized: factorized.mean,
        factorized_se: factorized.se,
        quadrature,
    })
}

pub fn free_product_table(reports: &[FreeProductReport]) -> Table {
    let mut t = Table::new(&["case", "n", "samples", "direct", "direct_se", "factorized", "factorized_se", "quadrature"]);
    for r in reports {
        let case = match r.case {
            FreeProductCase::Identity => "identity".to_string(),
            FreeProductCase::RelativeEntropy => "relative-entropy".to_string(),
            FreeProductCase::Power(s) => format!("power({s})"),
        };
        t.push(vec![
            Cell::Text(case),
            r.n.into(),
            r.samples.into(),
            r.direct.into(),
            r.direct_se.into(),
            r.factorized.into(),
            r.factorized_se.into(),
            r.quadrature.into(),
        ]);
    }
    t
}

/// Registry names used by a set of rows, expanded to reference entries.
pub fn reference_entries<'a>(names: impl IntoIterator<Item = &'a str>) -> Result<Vec<super::ReferenceEntry>> {
    let mut seen: Vec<&str> = Vec::new();
    let mut out = Vec::new();
    for name in names {
        if seen.contains(&name) {
            continue;
        }
        seen.push(name);
        if let Ok(c) = constants::lookup(name) {
            out.push(super::ReferenceEntry {
                name: c.name.to_string(),
                expression: c.expression.to_string(),
                value: c.reference(),
            });
        }
    }
    Ok(out)
}
