//! Monte Carlo harness.
//!
//! Sample `s` of sweep point `p` draws from stream `(p << 32) + s` of the
//! master seed and results are reduced in index order, so a plan's output is
//! a function of the plan alone, whatever the worker count.

mod output;
mod tables;

use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use output::{format_float, Cell, Report, ReferenceEntry, Table};
pub use tables::*;

use crate::coherence::{l1_coherence, rel_ent_coherence};
use crate::constants::{self, c_dependent_limit, CQuantity};
use crate::distances::{Metric, PairAnalysis};
use crate::ensembles::{haar_pure_with, induced_with, SeededStream};
use crate::entanglement::{g_concurrence, partial_transpose_report, pure_negativity};
use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, Field, PureState};
use crate::stats::{mean_se, par_indexed, MeanSe};

/// Stream for sample `sample` of sweep point `point`.
pub fn sample_stream(master_seed: u64, point: usize, sample: usize) -> SeededStream {
    SeededStream::new(master_seed, ((point as u64) << 32) + sample as u64)
}

/// Mean and standard error of `f` over `samples` independent streams.
pub fn monte_carlo(
    master_seed: u64,
    point: usize,
    samples: usize,
    f: impl Fn(&mut ChaCha8Rng) -> Result<f64> + Sync + Send,
) -> Result<(MeanSe, Vec<f64>)> {
    let values = par_indexed(samples, |s| f(&mut sample_stream(master_seed, point, s).rng()));
    let values: Vec<f64> = values.into_iter().collect::<Result<_>>()?;
    Ok((mean_se(&values), values))
}

/// State ensemble sampled by a plan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Ensemble {
    /// Induced measure with environment `K` (complex Ginibre).
    Induced,
    InducedReal,
    PureComplex,
    PureReal,
}

impl Ensemble {
    pub fn is_pure(self) -> bool {
        matches!(self, Ensemble::PureComplex | Ensemble::PureReal)
    }

    fn field(self) -> Field {
        match self {
            Ensemble::Induced | Ensemble::PureComplex => Field::Complex,
            Ensemble::InducedReal | Ensemble::PureReal => Field::Real,
        }
    }
}

/// Named estimator evaluated on one sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Quantity {
    /// `D(rho, sigma)` for two independent draws.
    Pair(Metric),
    /// `D(rho, 1/N)`.
    ToMixed(Metric),
    /// `D(1/N, rho)`; differs from `ToMixed` only for asymmetric measures.
    FromMixed(Metric),
    /// `sqrt(N) ||rho - sigma||_2`.
    ScaledHsPair,
    /// `sqrt(N) ||rho - 1/N||_2`.
    ScaledHsToMixed,
    RelEntCoherence,
    L1Coherence,
    Negativity,
    NegativeFraction,
    /// Pure-state negativity divided by `min(N_A, N_B)`.
    PureNegativityPerDim,
    GConcurrence,
}

impl Quantity {
    pub fn name(&self) -> String {
        match self {
            Quantity::Pair(m) => format!("pair:{m}"),
            Quantity::ToMixed(m) => format!("to-mixed:{m}"),
            Quantity::FromMixed(m) => format!("from-mixed:{m}"),
            Quantity::ScaledHsPair => "scaled-hs-pair".into(),
            Quantity::ScaledHsToMixed => "scaled-hs-to-mixed".into(),
            Quantity::RelEntCoherence => "rel-ent-coherence".into(),
            Quantity::L1Coherence => "l1-coherence".into(),
            Quantity::Negativity => "negativity".into(),
            Quantity::NegativeFraction => "negative-fraction".into(),
            Quantity::PureNegativityPerDim => "pure-negativity-per-dim".into(),
            Quantity::GConcurrence => "g-concurrence".into(),
        }
    }

    fn needs_split(&self) -> bool {
        matches!(
            self,
            Quantity::Negativity | Quantity::NegativeFraction | Quantity::PureNegativityPerDim | Quantity::GConcurrence
        )
    }

    fn needs_pure(&self) -> bool {
        matches!(self, Quantity::PureNegativityPerDim | Quantity::GConcurrence)
    }

    /// Value on one sample drawn from `rng`.
    pub fn evaluate(&self, ensemble: Ensemble, point: &SweepPoint, rng: &mut ChaCha8Rng) -> Result<f64> {
        let n = point.n;
        let draw_pure = |rng: &mut ChaCha8Rng| -> Result<PureState> {
            let psi = haar_pure_with(rng, n, ensemble.field());
            match point.split {
                Some((a, b)) => psi.with_split(a, b),
                None => Ok(psi),
            }
        };
        let draw_state = |rng: &mut ChaCha8Rng| -> Result<DensityMatrix> {
            let rho = if ensemble.is_pure() {
                haar_pure_with(rng, n, ensemble.field()).projector()
            } else {
                induced_with(rng, n, point.k, ensemble.field())
            };
            match point.split {
                Some((a, b)) => rho.with_split(a, b),
                None => Ok(rho),
            }
        };
        let mixed = || DensityMatrix::maximally_mixed(n);
        match *self {
            Quantity::Pair(m) => {
                let rho = draw_state(rng)?;
                let sigma = draw_state(rng)?;
                PairAnalysis::new(&rho, &sigma)?.metric(m)
            }
            Quantity::ToMixed(m) => {
                let rho = draw_state(rng)?;
                PairAnalysis::new(&rho, &mixed())?.metric(m)
            }
            Quantity::FromMixed(m) => {
                let rho = draw_state(rng)?;
                PairAnalysis::new(&mixed(), &rho)?.metric(m)
            }
            Quantity::ScaledHsPair => {
                let rho = draw_state(rng)?;
                let sigma = draw_state(rng)?;
                Ok((n as f64).sqrt() * (&rho - &sigma).hs_norm())
            }
            Quantity::ScaledHsToMixed => {
                let rho = draw_state(rng)?;
                Ok((n as f64).sqrt() * (&rho - &mixed()).hs_norm())
            }
            Quantity::RelEntCoherence => rel_ent_coherence(&draw_state(rng)?),
            Quantity::L1Coherence => Ok(l1_coherence(&draw_state(rng)?)),
            Quantity::Negativity => Ok(partial_transpose_report(&draw_state(rng)?)?.negativity),
            Quantity::NegativeFraction => Ok(partial_transpose_report(&draw_state(rng)?)?.fraction),
            Quantity::PureNegativityPerDim => {
                let psi = draw_pure(rng)?;
                let (a, b) = psi.split().ok_or(Error::MissingSplit)?;
                Ok(pure_negativity(&psi)? / a.min(b) as f64)
            }
            Quantity::GConcurrence => g_concurrence(&draw_pure(rng)?),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Quantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if let Some((kind, metric)) = s.split_once(':') {
            let m: Metric = metric.parse()?;
            return match kind {
                "pair" => Ok(Quantity::Pair(m)),
                "to-mixed" => Ok(Quantity::ToMixed(m)),
                "from-mixed" => Ok(Quantity::FromMixed(m)),
                _ => Err(Error::invalid(format!("unknown quantity '{s}'"))),
            };
        }
        [
            Quantity::ScaledHsPair,
            Quantity::ScaledHsToMixed,
            Quantity::RelEntCoherence,
            Quantity::L1Coherence,
            Quantity::Negativity,
            Quantity::NegativeFraction,
            Quantity::PureNegativityPerDim,
            Quantity::GConcurrence,
        ]
        .into_iter()
        .find(|q| q.name() == s)
        .ok_or_else(|| Error::invalid(format!("unknown quantity '{s}'")))
    }
}

/// Where a row's reference value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum ReferenceSpec {
    /// A registry entry.
    Named(&'static str),
    /// Finite-`c` limit with `c = K/N` of the sweep point.
    CDependent(CQuantity),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    pub label: String,
    pub n: usize,
    /// Environment dimension; ignored for pure ensembles.
    pub k: usize,
    pub split: Option<(usize, usize)>,
}

impl SweepPoint {
    /// Hilbert-Schmidt point, `K = N`.
    pub fn hs(n: usize) -> Self {
        SweepPoint {
            label: format!("N={n}"),
            n,
            k: n,
            split: None,
        }
    }

    pub fn induced(n: usize, k: usize) -> Self {
        SweepPoint {
            label: format!("N={n},K={k}"),
            n,
            k,
            split: None,
        }
    }

    pub fn bipartite(na: usize, nb: usize) -> Self {
        SweepPoint {
            label: format!("NA={na},NB={nb}"),
            n: na * nb,
            k: na * nb,
            split: Some((na, nb)),
        }
    }

    pub fn rectangularity(&self) -> f64 {
        self.k as f64 / self.n as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentPlan {
    pub quantity: Quantity,
    pub ensemble: Ensemble,
    pub sweep: Vec<SweepPoint>,
    pub samples: usize,
    pub master_seed: u64,
    pub reference: Option<ReferenceSpec>,
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<()> {
        if self.samples < 2 {
            return Err(Error::invalid("a plan needs at least 2 samples per point"));
        }
        if self.sweep.is_empty() {
            return Err(Error::invalid("a plan needs at least one sweep point"));
        }
        if self.quantity.needs_pure() && !self.ensemble.is_pure() {
            return Err(Error::invalid(format!("{} needs a pure-state ensemble", self.quantity)));
        }
        for p in &self.sweep {
            if p.n == 0 || (!self.ensemble.is_pure() && p.k == 0) {
                return Err(Error::invalid(format!("{}: dimensions must be positive", p.label)));
            }
            match p.split {
                Some((a, b)) if a * b != p.n => return Err(Error::BadSplit { na: a, nb: b, dim: p.n }),
                None if self.quantity.needs_split() => return Err(Error::MissingSplit),
                _ => {}
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateRow {
    pub label: String,
    pub n: usize,
    pub k: usize,
    pub mean: f64,
    pub se: f64,
    pub samples: usize,
    pub reference_name: Option<String>,
    pub reference: Option<f64>,
    /// `|mean - reference|`.
    pub deviation: Option<f64>,
}

impl EstimateRow {
    pub const COLUMNS: [&'static str; 9] =
        ["label", "n", "k", "mean", "se", "samples", "reference_name", "reference", "deviation"];

    pub fn cells(&self) -> Vec<Cell> {
        vec![
            self.label.clone().into(),
            self.n.into(),
            self.k.into(),
            self.mean.into(),
            self.se.into(),
            self.samples.into(),
            self.reference_name.as_deref().into(),
            self.reference.into(),
            self.deviation.into(),
        ]
    }
}

pub fn rows_to_table(rows: &[EstimateRow]) -> Table {
    let mut t = Table::new(&EstimateRow::COLUMNS);
    rows.iter().for_each(|r| t.push(r.cells()));
    t
}

fn resolve_reference(spec: ReferenceSpec, point: &SweepPoint) -> Result<(String, f64)> {
    match spec {
        ReferenceSpec::Named(name) => Ok((name.to_string(), constants::reference(name)?)),
        ReferenceSpec::CDependent(q) => {
            let c = point.rectangularity();
            Ok((format!("{q:?}(c={c})"), c_dependent_limit(q, c)?))
        }
    }
}

pub fn run_plan(plan: &ExperimentPlan) -> Result<Vec<EstimateRow>> {
    plan.validate()?;
    let mut rows = Vec::with_capacity(plan.sweep.len());
    for (p, point) in plan.sweep.iter().enumerate() {
        let (stats, _) = monte_carlo(plan.master_seed, p, plan.samples, |rng| {
            plan.quantity.evaluate(plan.ensemble, point, rng)
        })?;
        let reference = plan.reference.map(|r| resolve_reference(r, point)).transpose()?;
        rows.push(EstimateRow {
            label: point.label.clone(),
            n: point.n,
            k: point.k,
            mean: stats.mean,
            se: stats.se,
            samples: stats.n,
            reference_name: reference.as_ref().map(|r| r.0.clone()),
            reference: reference.as_ref().map(|r| r.1),
            deviation: reference.map(|r| (stats.mean - r.1).abs()),
        });
    }
    Ok(rows)
}
