use serde_json::{json, Value};

use super::plot::{PlotSpec, Style};
use super::*;
use crate::coherence::{offdiag_cdf, offdiag_density, offdiag_samples, Histogram};
use crate::constants::{self, c_asymptote, c_dependent_limit, CQuantity};
use crate::distances::PairAnalysis;
use crate::ensembles::{EnsembleSpec, Sample, SeededStream};
use crate::experiments::{
    ball_table, ball_table_table, classical_suite, classical_table, concentration_tail,
    free_product_check, free_product_table, reference_entries, rows_to_table, run_plan, sample_stream, table1,
    table1_reference, table1_table, tail_table, Cell, ClassicalQuantity, Ensemble, EstimateRow, ExperimentPlan,
    FreeProductCase, Quantity, ReferenceSpec, SimplexMeasure, SweepPoint, Table1Column, TABLE1_METRICS,
};
use crate::kicked_top::{evolve_reduced_pair, helstrom_spectrum, KickedTopConfig};
use crate::laws::LimitLaw;
use crate::linalg::Field;
use crate::stats::ks_against;

type Out = Result<Outcome, CliError>;

pub(super) fn dispatch(cli: &Cli) -> Out {
    let c = &cli.common;
    match &cli.command {
        Command::Pdf { law, c: rect, grid } => pdf(*law, *rect, grid),
        Command::Constants { name } => constants_cmd(name.as_deref()),
        Command::Sample { ensemble, n, k, s } => sample(c, *ensemble, *n, *k, *s),
        Command::Distance { metric, n, k, against, fixed } => distance(c, *metric, *n, *k, *against, fixed.as_deref()),
        Command::Table1 { n } => table1_cmd(c, *n),
        Command::Converge { metric, n_list, against } => converge(c, *metric, n_list, *against),
        Command::Cdep { metric, c_list, n, against } => cdep(c, *metric, c_list, *n, *against),
        Command::Tail { eps, n_list } => tail(c, *eps, n_list),
        Command::KickedTop { mode, j1, j2, kick, eps, steps, realizations, bins, pair } => match mode {
            TopMode::Spectrum => top_spectrum(c, *j1, *j2, *kick, *eps, *steps, *realizations, *bins),
            TopMode::Relax => top_relax(*j1, *j2, *kick, *eps, *steps, pair.as_deref()),
        },
        Command::Coherence { kind, n, field, purity, bins } => coherence(c, *kind, *n, *field, *purity, *bins),
        Command::Entangle { kind, na, nb } => entangle(c, *kind, *na, *nb),
        Command::Ball { n_list } => ball(c, n_list),
        Command::Classical { measure, quantity, n } => classical(c, *measure, *quantity, *n),
        Command::FreeProduct { case, s, n } => free_product(c, *case, *s, *n),
    }
}

fn need_seed(c: &Common, command: &str) -> Result<u64, CliError> {
    c.seed
        .ok_or_else(|| usage(format!("{command} samples random states and needs --seed")))
}

fn samples(c: &Common, default: usize) -> usize {
    c.samples.unwrap_or(default)
}

fn field(f: FieldArg) -> Field {
    match f {
        FieldArg::R => Field::Real,
        FieldArg::C => Field::Complex,
    }
}

fn pdf(law: LawArg, c: f64, grid: &Grid) -> Out {
    let l = match law {
        LawArg::Mp => LimitLaw::marchenko_pastur(c)?,
        LawArg::Smp => LimitLaw::symmetrized_mp(c)?,
        LawArg::Fc => LimitLaw::fuss_catalan2(),
        LawArg::Semicircle => LimitLaw::semicircle(0.0, 2.0)?,
        LawArg::Aubrun => LimitLaw::shifted_semicircle(c)?,
    };
    let mut t = Table::new(&["x", "density"]);
    for x in grid.points() {
        t.push(vec![x.into(), l.pdf(x).into()]);
    }
    let name = format!("{law:?}").to_lowercase();
    let mut o = Outcome::new("pdf", t);
    o.params = json!({"law": name, "c": c, "lo": grid.lo, "step": grid.step, "points": grid.count});
    o.summary = Some(json!({"atom0": l.atom0(), "support": [l.support().0, l.support().1]}));
    o.plot = Some(PlotSpec::new("x", "x", "density", &format!("{name} density")).with("density", Style::Line));
    Ok(o)
}

fn constants_cmd(name: Option<&str>) -> Out {
    let list: Vec<&constants::Constant> = match name {
        Some(n) => vec![constants::lookup(n)?],
        None => constants::registry().iter().collect(),
    };
    let mut t = Table::new(&["name", "expression", "decimal", "exact"]);
    let mut text = String::new();
    for k in &list {
        t.push(vec![k.name.into(), k.expression.into(), k.decimal.into(), Cell::Text(k.exact.to_string())]);
        match name {
            Some(_) => text.push_str(&format!("{} = {}\n", k.expression, k.decimal)),
            None => text.push_str(&format!("{}: {} = {}\n", k.name, k.expression, k.decimal)),
        }
    }
    let mut o = Outcome::new("constants", t);
    o.params = json!({"name": name});
    o.references = reference_entries(list.iter().map(|k| k.name))?;
    o.prefers_text = true;
    o.text = Some(text);
    Ok(o)
}

fn sample(c: &Common, ensemble: EnsembleArg, n: usize, k: Option<usize>, s: f64) -> Out {
    let seed = need_seed(c, "sample")?;
    let count = samples(c, 1);
    let spec = match ensemble {
        EnsembleArg::Hs => EnsembleSpec::Hs { n },
        EnsembleArg::Induced => EnsembleSpec::Induced { n, k: k.unwrap_or(n) },
        EnsembleArg::PureC => EnsembleSpec::HaarPureComplex { n },
        EnsembleArg::PureR => EnsembleSpec::HaarPureReal { n },
        EnsembleArg::Dirichlet => EnsembleSpec::Dirichlet { n, s },
        EnsembleArg::Ball => EnsembleSpec::Ball { n },
    };
    spec.validate()?;
    let mut t = Table::new(&["sample", "index", "value", "imag"]);
    for i in 0..count {
        match spec.sample(sample_stream(seed, 0, i))? {
            Sample::Mixed(rho) => {
                for (j, v) in rho.spectrum()?.values().iter().enumerate() {
                    t.push(vec![i.into(), j.into(), (*v).into(), Cell::Missing]);
                }
            }
            Sample::Pure(psi) => {
                for (j, a) in psi.amplitudes().iter().enumerate() {
                    t.push(vec![i.into(), j.into(), a.re.into(), a.im.into()]);
                }
            }
            Sample::Probability(p) => {
                for (j, v) in p.values().iter().enumerate() {
                    t.push(vec![i.into(), j.into(), (*v).into(), Cell::Missing]);
                }
            }
            Sample::Point(x) => {
                for (j, v) in x.iter().enumerate() {
                    t.push(vec![i.into(), j.into(), (*v).into(), Cell::Missing]);
                }
            }
            Sample::Unitary(_) => unreachable!("no CLI ensemble yields unitaries"),
        }
    }
    let mut o = Outcome::new("sample", t);
    o.seed = Some(seed);
    o.params = json!({"ensemble": format!("{spec:?}"), "samples": count});
    Ok(o)
}

fn named_reference(m: Metric, against: Against) -> Option<&'static str> {
    let column = match against {
        Against::Pair => Table1Column::Pair,
        Against::Mixed => Table1Column::ToMixed,
    };
    if TABLE1_METRICS.contains(&m) {
        return table1_reference(m, column).ok();
    }
    match (m, against) {
        (Metric::Kl, Against::Pair) => Some("kl-generic"),
        (Metric::Kl, Against::Mixed) => Some("kl-to-mixed"),
        (Metric::Chernoff, Against::Pair) => Some("chernoff-generic"),
        (Metric::Qjsd, Against::Pair) => Some("qjsd-generic"),
        (Metric::RootFidelity, Against::Pair) => Some("root-fidelity-generic"),
        (Metric::RootFidelity, Against::Mixed) => Some("root-fidelity-single"),
        _ => None,
    }
}

fn distance(c: &Common, m: Metric, n: Option<usize>, k: Option<usize>, against: Against, fixed: Option<&str>) -> Out {
    if let Some(spec) = fixed {
        let (rho, sigma) = fixed::parse_pair(spec, n)?;
        let value = PairAnalysis::new(&rho, &sigma)?.metric(m)?;
        let mut t = Table::new(&["metric", "value"]);
        t.push(vec![m.name().into(), value.into()]);
        let mut o = Outcome::new("distance", t);
        o.params = json!({"metric": m.name(), "fixed": spec});
        return Ok(o);
    }
    let seed = need_seed(c, "distance")?;
    let n = n.unwrap_or(64);
    let k = k.unwrap_or(n);
    let point = if k == n { SweepPoint::hs(n) } else { SweepPoint::induced(n, k) };
    let reference = if k == n {
        named_reference(m, against).map(ReferenceSpec::Named)
    } else {
        match (m, against) {
            (Metric::Tr, Against::Pair) => Some(ReferenceSpec::CDependent(CQuantity::TracePair)),
            (Metric::Tr, Against::Mixed) => Some(ReferenceSpec::CDependent(CQuantity::TraceSingle)),
            _ => None,
        }
    };
    let plan = ExperimentPlan {
        quantity: match against {
            Against::Pair => Quantity::Pair(m),
            Against::Mixed => Quantity::ToMixed(m),
        },
        ensemble: Ensemble::Induced,
        sweep: vec![point],
        samples: samples(c, 200),
        master_seed: seed,
        reference,
    };
    estimate_outcome("distance", &plan, json!({"metric": m.name(), "n": n, "k": k, "against": format!("{against:?}").to_lowercase()}))
}

fn estimate_outcome(command: &'static str, plan: &ExperimentPlan, params: Value) -> Out {
    let rows = run_plan(plan)?;
    let mut o = Outcome::new(command, rows_to_table(&rows));
    o.seed = Some(plan.master_seed);
    o.params = params;
    o.params["samples"] = json!(plan.samples);
    o.params["quantity"] = json!(plan.quantity.name());
    o.references = reference_entries(rows.iter().filter_map(|r| r.reference_name.as_deref()))?;
    Ok(o)
}

fn table1_cmd(c: &Common, n: usize) -> Out {
    let seed = need_seed(c, "table1")?;
    let samples = samples(c, 200);
    let cells = table1(n, samples, seed)?;
    let mut o = Outcome::new("table1", table1_table(&cells));
    o.seed = Some(seed);
    o.params = json!({"n": n, "samples": samples});
    o.references = reference_entries(cells.iter().map(|c| c.reference_name))?;
    Ok(o)
}

fn converge(c: &Common, metric: ConvergeMetric, n_list: &[usize], against: Against) -> Out {
    let seed = need_seed(c, "converge")?;
    let m = match metric {
        ConvergeMetric::Tr => Metric::Tr,
        ConvergeMetric::Bures => Metric::B,
    };
    let plan = ExperimentPlan {
        quantity: match against {
            Against::Pair => Quantity::Pair(m),
            Against::Mixed => Quantity::ToMixed(m),
        },
        ensemble: Ensemble::Induced,
        sweep: n_list.iter().map(|&n| SweepPoint::hs(n)).collect(),
        samples: samples(c, 200),
        master_seed: seed,
        reference: named_reference(m, against).map(ReferenceSpec::Named),
    };
    let mut o = estimate_outcome("converge", &plan, json!({"metric": m.name(), "n_list": n_list}))?;
    o.plot = Some(
        PlotSpec::new("n", "N", &format!("mean D_{}", m.name()), "dependence on the dimension")
            .with("mean", Style::Errorbar("se"))
            .with("reference", Style::Dashed)
            .log_x(),
    );
    Ok(o)
}

fn cdep(c: &Common, metric: CdepMetric, c_list: &[f64], n: usize, against: Against) -> Out {
    let seed = need_seed(c, "cdep")?;
    let (quantity, q) = match (metric, against) {
        (CdepMetric::Tr, Against::Pair) => (Quantity::Pair(Metric::Tr), CQuantity::TracePair),
        (CdepMetric::Tr, Against::Mixed) => (Quantity::ToMixed(Metric::Tr), CQuantity::TraceSingle),
        (CdepMetric::Hs, Against::Pair) => (Quantity::ScaledHsPair, CQuantity::HsPairScaled),
        (CdepMetric::Hs, Against::Mixed) => (Quantity::ScaledHsToMixed, CQuantity::HsSingleScaled),
    };
    let mut sweep = Vec::with_capacity(c_list.len());
    for &x in c_list {
        let k = (x * n as f64).round();
        if !(k >= 1.0) {
            return Err(usage(format!("c = {x} gives K < 1 at N = {n}")));
        }
        sweep.push(SweepPoint {
            label: format!("c={x}"),
            ..SweepPoint::induced(n, k as usize)
        });
    }
    let plan = ExperimentPlan {
        quantity,
        ensemble: Ensemble::Induced,
        sweep,
        samples: samples(c, 200),
        master_seed: seed,
        reference: Some(ReferenceSpec::CDependent(q)),
    };
    let rows = run_plan(&plan)?;
    let mut t = Table::new(&["label", "n", "k", "c", "mean", "se", "samples", "limit", "deviation", "asymptote"]);
    for r in &rows {
        let cc = r.k as f64 / r.n as f64;
        t.push(vec![
            r.label.clone().into(),
            r.n.into(),
            r.k.into(),
            cc.into(),
            r.mean.into(),
            r.se.into(),
            r.samples.into(),
            r.reference.into(),
            r.deviation.into(),
            c_asymptote(q, cc).into(),
        ]);
    }
    let mut o = Outcome::new("cdep", t);
    o.seed = Some(seed);
    o.params = json!({"quantity": plan.quantity.name(), "n": n, "c_list": c_list, "samples": plan.samples});
    o.plot = Some(
        PlotSpec::new("c", "c = K/N", &plan.quantity.name(), "dependence on the rectangularity")
            .with("mean", Style::Errorbar("se"))
            .with("limit", Style::Line)
            .with("asymptote", Style::Dashed)
            .log_x(),
    );
    Ok(o)
}

fn tail(c: &Common, eps: f64, n_list: &[usize]) -> Out {
    let seed = need_seed(c, "tail")?;
    let samples = samples(c, 200);
    let rows = concentration_tail(n_list, eps, samples, seed)?;
    let mut o = Outcome::new("tail", tail_table(&rows));
    o.seed = Some(seed);
    o.params = json!({"eps": eps, "n_list": n_list, "samples": samples});
    o.references = reference_entries(["trace-generic"])?;
    o.plot = Some(
        PlotSpec::new("n", "N", "exceedance fraction", &format!("P(|D_Tr - D| > {eps})"))
            .with("fraction", Style::Errorbar("se"))
            .log_x(),
    );
    Ok(o)
}

#[allow(clippy::too_many_arguments)]
fn top_spectrum(
    c: &Common,
    j1: Option<f64>,
    j2: Option<f64>,
    kick: Option<f64>,
    eps: Option<f64>,
    steps: Option<usize>,
    realizations: usize,
    bins: usize,
) -> Out {
    let seed = need_seed(c, "kicked-top spectrum")?;
    let cfg = KickedTopConfig {
        j1: j1.unwrap_or(49.5),
        j2: j2.unwrap_or(49.5),
        kick: kick.unwrap_or(6.0),
        eps: eps.unwrap_or(0.01),
        steps: steps.unwrap_or(200),
        initial_pair: (0, 1),
    };
    let h = helstrom_spectrum(&cfg, realizations, cfg.steps, SeededStream::new(seed, 0))?;
    let rect = h.n2 as f64 / h.n1 as f64;
    let law = LimitLaw::symmetrized_mp(rect)?;
    let (lo, hi) = law.support();
    let part = h.continuous_part();
    let hist = Histogram::new(part.values(), lo, hi, bins)?;
    let ks = h.ks_to_smp()?;
    let mut t = Table::new(&["center", "empirical", "smp_density"]);
    for (x, d) in hist.centers().into_iter().zip(&hist.density) {
        t.push(vec![x.into(), (*d).into(), (law.pdf(x) / (1.0 - law.atom0())).into()]);
    }
    let mut o = Outcome::new("kicked-top spectrum", t);
    o.seed = Some(seed);
    o.params = json!({"j1": cfg.j1, "j2": cfg.j2, "kick": cfg.kick, "eps": cfg.eps, "steps": cfg.steps,
        "realizations": realizations, "bins": bins});
    o.summary = Some(json!({"n1": h.n1, "n2": h.n2, "c": rect, "ks": ks, "atom0": law.atom0(),
        "eigenvalues": part.len()}));
    o.plot = Some(
        PlotSpec::new("center", "N2 x eigenvalue of sigma1 - sigma2", "density", &format!("Helstrom spectrum, c = {rect}"))
            .with("empirical", Style::Bars)
            .with("smp_density", Style::Line),
    );
    Ok(o)
}

fn top_relax(
    j1: Option<f64>,
    j2: Option<f64>,
    kick: Option<f64>,
    eps: Option<f64>,
    steps: Option<usize>,
    pair: Option<&[usize]>,
) -> Out {
    let initial_pair = match pair {
        Some(&[a, b]) => (a, b),
        Some(_) => return Err(usage("--pair takes two indices l,l'")),
        None => (0, 1),
    };
    let cfg = KickedTopConfig {
        j1: j1.unwrap_or(60.0),
        j2: j2.unwrap_or(60.0),
        kick: kick.unwrap_or(4.0),
        eps: eps.unwrap_or(1.0),
        steps: steps.unwrap_or(100),
        initial_pair,
    };
    let series = evolve_reduced_pair(&cfg)?;
    let q = CQuantity::TracePair;
    let reference = c_dependent_limit(q, cfg.rectangularity())?;
    let mut t = Table::new(&["t", "trace_distance", "reference"]);
    for (i, d) in series.trace_distance.iter().enumerate() {
        t.push(vec![i.into(), (*d).into(), reference.into()]);
    }
    let mut o = Outcome::new("kicked-top relax", t);
    o.params = json!({"j1": cfg.j1, "j2": cfg.j2, "kick": cfg.kick, "eps": cfg.eps, "steps": cfg.steps,
        "initial_pair": [initial_pair.0, initial_pair.1]});
    o.summary = Some(json!({"c": cfg.rectangularity(), "first_within_0.05": series.first_within(reference, 0.05)}));
    o.references = reference_entries(["trace-generic"])?;
    o.plot = Some(
        PlotSpec::new("t", "t", "D_Tr(sigma1(t), sigma2(t))", "relaxation of the trace distance")
            .with("trace_distance", Style::Line)
            .with("reference", Style::Dashed),
    );
    Ok(o)
}

/// Affine rescaling `a + b x` of estimate rows, with a new reference.
fn rescaled(rows: &[EstimateRow], a: f64, b: f64, statistic: &str, reference: Option<&'static str>) -> Result<Table, Error> {
    let mut t = Table::new(&["label", "n", "statistic", "mean", "se", "samples", "reference_name", "reference", "deviation"]);
    let value = reference.map(constants::reference).transpose()?;
    for r in rows {
        let mean = a + b * r.mean;
        t.push(vec![
            r.label.clone().into(),
            r.n.into(),
            statistic.into(),
            mean.into(),
            (b.abs() * r.se).into(),
            r.samples.into(),
            reference.into(),
            value.into(),
            value.map(|v| (mean - v).abs()).into(),
        ]);
    }
    Ok(t)
}

fn coherence(c: &Common, kind: CoherenceKind, n: usize, f: FieldArg, purity: Option<Purity>, bins: usize) -> Out {
    let seed = need_seed(c, "coherence")?;
    let fld = field(f);
    let complex = fld == Field::Complex;
    if kind == CoherenceKind::Offdiag {
        if purity == Some(Purity::Pure) {
            return Err(usage("off-diagonal statistics are taken over Hilbert-Schmidt mixed states"));
        }
        let count = samples(c, 20);
        let ys = offdiag_samples(fld, n, count, SeededStream::new(seed, 0))?;
        let hist = Histogram::new(&ys, 0.0, 4.0, bins)?;
        let ks = ks_against(&ys, |y| offdiag_cdf(fld, y));
        let mut t = Table::new(&["center", "empirical", "density"]);
        for (y, d) in hist.centers().into_iter().zip(&hist.density) {
            t.push(vec![y.into(), (*d).into(), offdiag_density(fld, y).into()]);
        }
        let mut o = Outcome::new("coherence", t);
        o.seed = Some(seed);
        o.params = json!({"kind": "offdiag", "n": n, "field": if complex { "c" } else { "r" }, "samples": count, "bins": bins});
        o.summary = Some(json!({"ks": ks, "values": ys.len()}));
        o.plot = Some(
            PlotSpec::new("center", "N^{3/2} |rho_ij|", "density", "off-diagonal moduli")
                .with("empirical", Style::Bars)
                .with("density", Style::Line),
        );
        return Ok(o);
    }
    let purity = purity.unwrap_or(Purity::Pure);
    let nf = n as f64;
    let ensemble = match (purity, complex) {
        (Purity::Pure, true) => Ensemble::PureComplex,
        (Purity::Pure, false) => Ensemble::PureReal,
        (Purity::Mixed, true) => Ensemble::Induced,
        (Purity::Mixed, false) => Ensemble::InducedReal,
    };
    let (quantity, a, b, statistic, reference) = match (kind, purity, complex) {
        (CoherenceKind::RelEnt, Purity::Pure, true) => (Quantity::RelEntCoherence, nf.ln(), -1.0, "ln N - C", Some("coherence-gap-complex")),
        (CoherenceKind::RelEnt, Purity::Pure, false) => (Quantity::RelEntCoherence, nf.ln(), -1.0, "ln N - C", Some("coherence-gap-real")),
        (CoherenceKind::RelEnt, Purity::Mixed, true) => (Quantity::RelEntCoherence, 0.0, 1.0, "C", Some("coherence-mixed")),
        (CoherenceKind::RelEnt, Purity::Mixed, false) => (Quantity::RelEntCoherence, 0.0, 1.0, "C", None),
        (CoherenceKind::L1, Purity::Pure, cx) => (
            Quantity::L1Coherence,
            0.0,
            1.0 / (nf - 1.0),
            "C_L1 / (N - 1)",
            Some(if cx { "l1-pure-complex" } else { "l1-pure-real" }),
        ),
        (CoherenceKind::L1, Purity::Mixed, cx) => (
            Quantity::L1Coherence,
            0.0,
            1.0 / nf.sqrt(),
            "C_L1 / sqrt(N)",
            Some(if cx { "l1-mixed-complex" } else { "l1-mixed-real" }),
        ),
        (CoherenceKind::Offdiag, ..) => unreachable!(),
    };
    if n < 2 {
        return Err(usage("coherence needs N >= 2"));
    }
    let plan = ExperimentPlan {
        quantity,
        ensemble,
        sweep: vec![SweepPoint::hs(n)],
        samples: samples(c, 200),
        master_seed: seed,
        reference: None,
    };
    let rows = run_plan(&plan)?;
    let mut o = Outcome::new("coherence", rescaled(&rows, a, b, statistic, reference)?);
    o.seed = Some(seed);
    o.params = json!({"kind": format!("{kind:?}").to_lowercase(), "n": n, "field": if complex { "c" } else { "r" },
        "purity": format!("{purity:?}").to_lowercase(), "samples": plan.samples});
    o.references = reference_entries(reference)?;
    Ok(o)
}

fn entangle(c: &Common, kind: EntangleKind, na: usize, nb: usize) -> Out {
    let seed = need_seed(c, "entangle")?;
    let (quantity, ensemble, name) = match kind {
        EntangleKind::Negativity => (Quantity::Negativity, Ensemble::Induced, "negativity-hs"),
        EntangleKind::Fraction => (Quantity::NegativeFraction, Ensemble::Induced, "negative-fraction-hs"),
        EntangleKind::Gconc => (Quantity::GConcurrence, Ensemble::PureComplex, "g-concurrence"),
        EntangleKind::PureNeg => (Quantity::PureNegativityPerDim, Ensemble::PureComplex, "pure-negativity"),
    };
    let plan = ExperimentPlan {
        quantity,
        ensemble,
        sweep: vec![SweepPoint::bipartite(na, nb)],
        samples: samples(c, 200),
        master_seed: seed,
        // the registry values are limits for equal subsystems
        reference: (na == nb).then_some(ReferenceSpec::Named(name)),
    };
    estimate_outcome("entangle", &plan, json!({"kind": format!("{kind:?}").to_lowercase(), "na": na, "nb": nb}))
}

fn ball(c: &Common, n_list: &[usize]) -> Out {
    let seed = need_seed(c, "ball")?;
    let samples = samples(c, 100_000);
    let rows = ball_table(n_list, samples, seed)?;
    let mut o = Outcome::new("ball", ball_table_table(&rows));
    o.seed = Some(seed);
    o.params = json!({"n_list": n_list, "samples": samples});
    let names: Vec<&str> = rows.iter().flat_map(|r| r.reference_name).collect();
    let mut refs = reference_entries(names)?;
    if rows.iter().any(|r| r.printed.is_some()) {
        refs.extend(reference_entries(["ball-3-l1-printed"])?);
    }
    o.references = refs;
    Ok(o)
}

fn classical(c: &Common, measure: Option<MeasureArg>, quantity: Option<ClassicalArg>, n: usize) -> Out {
    let seed = need_seed(c, "classical")?;
    let measures: Vec<SimplexMeasure> = match measure {
        Some(MeasureArg::Flat) => vec![SimplexMeasure::Flat],
        Some(MeasureArg::Statistical) => vec![SimplexMeasure::Statistical],
        None => vec![SimplexMeasure::Statistical, SimplexMeasure::Flat],
    };
    let quantities: Vec<ClassicalQuantity> = match quantity {
        Some(ClassicalArg::L1) => vec![ClassicalQuantity::L1],
        Some(ClassicalArg::Bhatt) => vec![ClassicalQuantity::Bhattacharyya],
        Some(ClassicalArg::Bures) => vec![ClassicalQuantity::Bures],
        None => ClassicalQuantity::ALL.to_vec(),
    };
    let samples = samples(c, 500);
    let rows = classical_suite(&measures, &quantities, n, samples, seed)?;
    let mut o = Outcome::new("classical", classical_table(&rows));
    o.seed = Some(seed);
    o.params = json!({"n": n, "samples": samples,
        "measures": measures.iter().map(|m| m.name()).collect::<Vec<_>>(),
        "quantities": quantities.iter().map(|q| q.name()).collect::<Vec<_>>()});
    o.references = reference_entries(rows.iter().map(|r| r.reference_name.as_str()))?;
    Ok(o)
}

fn free_product(c: &Common, case: FreeCase, s: f64, n: usize) -> Out {
    let seed = need_seed(c, "free-product")?;
    let case = match case {
        FreeCase::Identity => FreeProductCase::Identity,
        FreeCase::Kl => FreeProductCase::RelativeEntropy,
        FreeCase::Power => FreeProductCase::Power(s),
    };
    let samples = samples(c, 200);
    let r = free_product_check(case, n, samples, seed)?;
    let mut o = Outcome::new("free-product", free_product_table(&[r]));
    o.seed = Some(seed);
    o.params = json!({"case": format!("{case:?}"), "n": n, "samples": samples});
    Ok(o)
}
