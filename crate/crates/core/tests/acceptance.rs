//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`) so the report is always
//! printed. Filter with `cargo test --test acceptance -- c4 c7`. Exits
//! non-zero when a criterion fails that is not listed in `KNOWN_FAILURES`.

use std::f64::consts::{E, PI};
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_complex::Complex64;
use qdist::distances::{Metric, PairAnalysis};
use qdist::ensembles::{induced_with, sample_haar_unitary, sample_induced, SeededStream};
use qdist::experiments::{
    ball_table, classical_suite, concentration_tail, run_plan, sample_stream, BallNorm, ClassicalQuantity,
    Ensemble, ExperimentPlan, Quantity, SimplexMeasure, SweepPoint,
};
use qdist::kicked_top::{evolve_reduced_pair, helstrom_spectrum, KickedTopConfig};
use qdist::laws::{single_state_constants, chernoff_min, mp_median_and_diameter, LimitLaw};
use qdist::linalg::Field;
use qdist::stats::{mean_se, par_indexed};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Criteria expected to fail at the stated parameters; the analysis is kept
/// with the project notes.
const KNOWN_FAILURES: [&str; 2] = ["c4", "c7"];

struct Check {
    lines: Vec<String>,
    ok: bool,
}

impl Check {
    fn new() -> Self {
        Check { lines: Vec::new(), ok: true }
    }

    /// `|got - want| <= tol`.
    fn near(&mut self, what: &str, got: f64, want: f64, tol: f64) {
        let pass = (got - want).abs() <= tol;
        self.ok &= pass;
        self.lines.push(format!(
            "{} {what}: {got:.6} vs {want:.6} (|diff| {:.2e}, tol {tol:.0e})",
            mark(pass),
            (got - want).abs()
        ));
    }

    fn below(&mut self, what: &str, got: f64, limit: f64) {
        let pass = got < limit;
        self.ok &= pass;
        let got = if got.abs() < 1e-3 { format!("{got:.2e}") } else { format!("{got:.4}") };
        let limit = if limit < 1e-3 { format!("{limit:e}") } else { format!("{limit}") };
        let op = if pass { "<" } else { ">=" };
        self.lines.push(format!("{} {what}: {got} {op} {limit}", mark(pass)));
    }

    fn holds(&mut self, what: &str, pass: bool, detail: String) {
        self.ok &= pass;
        self.lines.push(format!("{} {what}: {detail}", mark(pass)));
    }

    fn info(&mut self, what: String) {
        self.lines.push(format!("  info {what}"));
    }
}

fn mark(pass: bool) -> &'static str {
    if pass {
        "  ok  "
    } else {
        "  FAIL"
    }
}

type Criterion = (&'static str, &'static str, fn(&mut Check));

fn main() -> ExitCode {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let criteria: [Criterion; 10] = [
        ("c1", "quadrature constants", c1_quadrature),
        ("c2", "Monte Carlo vs asymptotics, N=100", c2_monte_carlo),
        ("c3", "R-transform identity", c3_r_transform),
        ("c4", "kicked-top spectral law", c4_kicked_spectrum),
        ("c5", "kicked-top relaxation", c5_relaxation),
        ("c6", "coherence suite, N=128", c6_coherence),
        ("c7", "entanglement suite", c7_entanglement),
        ("c8", "classical suite, N=256", c8_classical),
        ("c9", "ball table", c9_ball),
        ("c10", "property suites", c10_properties),
    ];
    let mut unexpected = Vec::new();
    for (id, title, run) in criteria {
        if !filters.is_empty() && !filters.iter().any(|f| f == id) {
            continue;
        }
        let start = Instant::now();
        let mut check = Check::new();
        run(&mut check);
        let known = KNOWN_FAILURES.contains(&id);
        let status = match (check.ok, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("{status} {id} {title} [{:.1} s]", start.elapsed().as_secs_f64());
        for l in &check.lines {
            println!("{l}");
        }
        if !check.ok && !known {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {}", unexpected.join(" "));
        ExitCode::FAILURE
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed().as_secs_f64())
}

fn c1_quadrature(ck: &mut Check) {
    let mp1 = LimitLaw::marchenko_pastur(1.0).unwrap();
    let smp1 = LimitLaw::symmetrized_mp(1.0).unwrap();
    let fc = LimitLaw::fuss_catalan2();
    let mut secs = Vec::new();
    let mut run = |f: &dyn Fn() -> f64| {
        let (v, s) = timed(f);
        secs.push(s);
        v
    };

    let a = run(&|| mp1.functional(|t| (t - 1.0).abs(), &[1.0]).unwrap() / 2.0);
    let b = run(&|| smp1.functional(f64::abs, &[0.0]).unwrap() / 2.0);
    let c = run(&|| smp1.functional(|y| y * y, &[]).unwrap());
    let d = run(&|| fc.functional(f64::sqrt, &[]).unwrap());
    let diam = run(&|| mp_median_and_diameter().unwrap().1);
    let mut worst = 0.0f64;
    for c in [0.2, 0.5, 1.0, 4.0] {
        for law in [LimitLaw::marchenko_pastur(c).unwrap(), LimitLaw::symmetrized_mp(c).unwrap()] {
            worst = worst.max((run(&|| law.functional(|_| 1.0, &[]).unwrap()) - 1.0).abs());
        }
    }
    worst = worst.max((run(&|| fc.functional(|_| 1.0, &[]).unwrap()) - 1.0).abs());
    let ((s_star, q), t_chernoff) = timed(|| chernoff_min().unwrap());
    let (single, t_single) = timed(|| single_state_constants().unwrap());
    secs.extend([t_chernoff, t_single]);

    ck.near("(a) MP(1) |t-1|/2", a, 0.41350, 1e-5);
    ck.near("(b) SMP(1) |y|/2", b, 0.56831, 1e-5);
    ck.near("(c) SMP(1) y^2", c, 2.0, 1e-6);
    ck.near("(d) FC sqrt(x)", d, 0.75, 1e-6);
    ck.near("(e) chernoff_min Q", q, (8.0 / (3.0 * PI)).powi(2), 1e-8);
    ck.near("(e) chernoff_min s*", s_star, 0.5, 1e-8);
    ck.near("(f) orbit diameter", diam, 0.7875, 5e-4);
    ck.near("(g) T1", single.t1, 0.368, 1e-3);
    ck.near("(g) E1", single.e1, 0.518, 1e-3);
    ck.holds("(h) normalization", worst <= 1e-8, format!("max |mass - 1| = {worst:.2e}, tol 1e-8"));
    let slowest = secs.iter().copied().fold(0.0, f64::max);
    ck.below("slowest item (s)", slowest, 1.0);
}

fn c2_monte_carlo(ck: &mut Check) {
    let (n, pairs, seed) = (100usize, 200usize, 20_250_611u64);
    let metrics = [Metric::Tr, Metric::RootFidelity, Metric::B, Metric::H, Metric::Kl, Metric::Qjsd, Metric::HsNorm];
    let per: Vec<Vec<f64>> = par_indexed(pairs, |s| {
        let mut rng = sample_stream(seed, 0, s).rng();
        let rho = induced_with(&mut rng, n, n, Field::Complex);
        let sigma = induced_with(&mut rng, n, n, Field::Complex);
        let p = PairAnalysis::new(&rho, &sigma).unwrap();
        metrics.map(|m| p.metric(m).unwrap()).to_vec()
    });
    let mean = |i: usize| mean_se(&per.iter().map(|v| v[i]).collect::<Vec<_>>()).mean;
    ck.near("mean D_Tr", mean(0), 0.568, 0.02);
    ck.near("mean sqrt F", mean(1), 0.75, 0.01);
    ck.near("mean D_B", mean(2), 0.707, 0.02);
    ck.near("mean D_H", mean(3), 0.748, 0.02);
    ck.near("mean S(rho||sigma)", mean(4), 1.5, 0.05);
    ck.near("mean QJSD", mean(5), 0.25, 0.01);
    ck.near("sqrt(N) D_HS", (n as f64).sqrt() * mean(6), 2f64.sqrt(), 0.05);
    ck.info(format!("{pairs} Hilbert-Schmidt pairs, seed {seed}"));
}

fn c3_r_transform(ck: &mut Check) {
    // closed forms written out here, independent of the library's R
    let r_mp = |w: Complex64| 1.0 / (1.0 - w);
    let r_smp = |w: Complex64| 2.0 * w / (1.0 - w * w);
    let laws: [(&str, LimitLaw, &dyn Fn(Complex64) -> Complex64); 2] = [
        ("MP(1)", LimitLaw::marchenko_pastur(1.0).unwrap(), &r_mp),
        ("SMP(1)", LimitLaw::symmetrized_mp(1.0).unwrap(), &r_smp),
    ];
    for (name, law, r) in laws {
        for z in [Complex64::new(1.0, 1.0), Complex64::new(2.0, 0.5)] {
            let g = law.cauchy_transform(z).unwrap();
            let residual = (r(g) + 1.0 / g - z).norm();
            ck.below(&format!("{name} |R(G(z)) + 1/G(z) - z| at z = {z}"), residual, 1e-6);
        }
    }
}

fn c4_kicked_spectrum(ck: &mut Check) {
    let seed = 4u64;
    let ks_at = |n2: usize, eps: f64| {
        let mut cfg = KickedTopConfig::with_dims(100, n2, 6.0, eps).unwrap();
        cfg.steps = 200;
        helstrom_spectrum(&cfg, 100, 200, SeededStream::new(seed, 0))
            .unwrap()
            .ks_to_smp()
            .unwrap()
    };
    for (c, n2, limit) in [(1.0, 100, 0.05), (4.0, 400, 0.05), (0.2, 20, 0.07), (0.5, 50, 0.07)] {
        let (ks, s) = timed(|| ks_at(n2, 0.01));
        ck.below(&format!("c = {c} (N1 = 100, N2 = {n2}) KS [{s:.0} s]"), ks, limit);
    }
    ck.info("run at N1 = 100, k = 6, eps = 0.01, 100 realizations, t = 200".into());
    ck.info(format!("c = 0.2 with eps = 0.1 instead: KS = {:.4}", ks_at(20, 0.1)));
}

fn c5_relaxation(ck: &mut Check) {
    let target = 0.25 + 1.0 / PI;
    let cfg = |kick: f64, eps: f64, steps: usize| KickedTopConfig {
        j1: 60.0,
        j2: 60.0,
        kick,
        eps,
        steps,
        initial_pair: (0, 1),
    };
    let fast = evolve_reduced_pair(&cfg(4.0, 1.0, 100)).unwrap().trace_distance;
    ck.holds("D_Tr(0) = 1 exactly", fast[0] == 1.0, format!("{}", fast[0]));
    let worst = fast[50..=100].iter().map(|d| (d - target).abs()).fold(0.0, f64::max);
    ck.below("max |D_Tr(t) - 0.5683| over t in [50, 100]", worst, 0.03);

    let slow = evolve_reduced_pair(&cfg(3.2, 0.005, 400)).unwrap().trace_distance;
    let first = |s: &[f64]| s.iter().position(|d| (d - target).abs() < 0.05);
    let (tf, ts) = (first(&fast), first(&slow));
    let later = match (tf, ts) {
        (Some(a), Some(b)) => b > a,
        (Some(_), None) => true,
        _ => false,
    };
    ck.holds(
        "(k=3.2, eps=0.005) enters the 0.05 band later than (k=4, eps=1)",
        later,
        format!("{tf:?} vs {ts:?} (None: not within 400 steps)"),
    );
}

fn plan(quantity: Quantity, ensemble: Ensemble, point: SweepPoint, samples: usize, seed: u64) -> f64 {
    let rows = run_plan(&ExperimentPlan {
        quantity,
        ensemble,
        sweep: vec![point],
        samples,
        master_seed: seed,
        reference: None,
    })
    .unwrap();
    rows[0].mean
}

fn c6_coherence(ck: &mut Check) {
    let (n, samples) = (128usize, 200usize);
    let nf = n as f64;
    let point = || SweepPoint::hs(n);
    let rel = |e| plan(Quantity::RelEntCoherence, e, point(), samples, 6);
    let l1 = |e| plan(Quantity::L1Coherence, e, point(), samples, 60);
    ck.near("complex pure C_rel", rel(Ensemble::PureComplex), nf.ln() - (1.0 - EULER_GAMMA), 0.02);
    ck.near("real pure C_rel", rel(Ensemble::PureReal), nf.ln() - (2.0 - EULER_GAMMA - 2f64.ln()), 0.02);
    ck.near("mixed C_rel", rel(Ensemble::Induced), 0.5, 0.05);
    ck.near("complex pure C_L1/(N-1)", l1(Ensemble::PureComplex) / (nf - 1.0), PI / 4.0, 0.02);
    ck.near("real pure C_L1/(N-1)", l1(Ensemble::PureReal) / (nf - 1.0), 2.0 / PI, 0.02);
    ck.near("complex mixed C_L1/sqrt(N)", l1(Ensemble::Induced) / nf.sqrt(), PI.sqrt() / 2.0, 0.03);
}

fn c7_entanglement(ck: &mut Check) {
    let split = SweepPoint::bipartite(10, 10);
    let neg = plan(Quantity::Negativity, Ensemble::Induced, split.clone(), 500, 7);
    let frac = plan(Quantity::NegativeFraction, Ensemble::Induced, split, 500, 7);
    let s3 = 3f64.sqrt();
    ck.near("mean negativity Tr|rho^G| - 1", neg, 0.080, 0.01);
    ck.near("negative fraction", frac, 0.1955, 0.01);
    let big = SweepPoint::bipartite(100, 100);
    let pn = plan(Quantity::PureNegativityPerDim, Ensemble::PureComplex, big.clone(), 100, 70);
    let gc = plan(Quantity::GConcurrence, Ensemble::PureComplex, big, 100, 70);
    ck.near("pure negativity / N", pn, 0.3602, 0.01);
    ck.near("G-concurrence", gc, 1.0 / E, 0.01);
    let half = 3.0 * s3 / (4.0 * PI) - 1.0 / 3.0;
    ck.info(format!(
        "0.080 = 3 sqrt3/(4 pi) - 1/3 = {half:.4} is int_(x<0) |x| dmu; Tr|rho^G| - 1 = 2 int_(x<0) |x| dmu -> {:.4}. Measured / 2 = {:.4}",
        2.0 * half,
        neg / 2.0
    ));
}

fn c8_classical(ck: &mut Check) {
    let rows = classical_suite(
        &[SimplexMeasure::Flat, SimplexMeasure::Statistical],
        &ClassicalQuantity::ALL,
        256,
        500,
        8,
    )
    .unwrap();
    let sqrt2pi = (2.0 / PI).sqrt();
    let expected = |m: SimplexMeasure, q: ClassicalQuantity, against: &str| -> f64 {
        let flat = m == SimplexMeasure::Flat;
        let pair = against == "pair";
        let bc = match (flat, pair) {
            (true, false) => PI.sqrt() / 2.0,
            (false, false) => sqrt2pi,
            (true, true) => PI / 4.0,
            (false, true) => 2.0 / PI,
        };
        match q {
            ClassicalQuantity::Bhattacharyya => bc,
            ClassicalQuantity::Bures => (2.0 - 2.0 * bc).sqrt(),
            ClassicalQuantity::L1 => match (flat, pair) {
                (true, false) => 1.0 / E,
                (false, false) => (2.0 / (PI * E)).sqrt(),
                (true, true) => 0.5,
                (false, true) => 2.0 / PI,
            },
        }
    };
    for r in &rows {
        let what = format!("{} {} {}", r.measure.name(), r.quantity.name(), r.against);
        ck.near(&what, r.mean, expected(r.measure, r.quantity, r.against), 0.01);
    }
}

fn c9_ball(ck: &mut Check) {
    let rows = ball_table(&[1, 2, 3], 100_000, 9).unwrap();
    let formula = |n: usize, norm: BallNorm| -> f64 {
        match (n, norm) {
            (1, _) => 2.0 / 3.0,
            (2, BallNorm::L1) => (647.0 + 120.0 * PI) / (90.0 * PI * PI),
            (2, BallNorm::L2) => 128.0 / (45.0 * PI),
            (2, BallNorm::LInf) => 0.8151,
            (3, BallNorm::L1) => 55.0 * PI / 112.0,
            (3, BallNorm::L2) => 36.0 / 35.0,
            (3, BallNorm::LInf) => 0.8549,
            _ => unreachable!(),
        }
    };
    for r in &rows {
        ck.near(&format!("n = {} {}", r.n, r.norm.name()), r.mean, formula(r.n, r.norm), 0.01);
        if let Some(printed) = r.printed {
            let f = formula(r.n, r.norm);
            ck.info(format!(
                "n = {} {}: formula {f:.5} vs printed {printed}; Monte Carlo {:.5} sides with the {}",
                r.n,
                r.norm.name(),
                r.mean,
                if (r.mean - f).abs() < (r.mean - printed).abs() { "formula" } else { "printed value" }
            ));
        }
    }
}

fn c10_properties(ck: &mut Check) {
    let metrics = [Metric::Tr, Metric::Hs, Metric::Inf, Metric::B, Metric::H, Metric::T, Metric::E];
    let state = |n: usize, k: usize, s: u64| sample_induced(n, k, SeededStream::new(10, s)).unwrap();
    let mut axiom_worst = 0.0f64;
    let mut self_worst = 0.0f64;
    let mut inv_worst = 0.0f64;
    let mut chain_worst = 0.0f64;
    let mut pairs = 0;
    for t in 0..60u64 {
        let n = 2 + (t as usize % 6);
        let ks = [1 + (t as usize % 5), n, 2 * n + 1];
        let (a, b, c) = (state(n, ks[0], 3 * t), state(n, ks[1], 3 * t + 1), state(n, ks[2], 3 * t + 2));
        let u = sample_haar_unitary(n, SeededStream::new(11, t)).unwrap();
        let (ua, ub) = (a.conjugate_by(&u), b.conjugate_by(&u));
        let ab = PairAnalysis::new(&a, &b).unwrap();
        let ba = PairAnalysis::new(&b, &a).unwrap();
        let bc = PairAnalysis::new(&b, &c).unwrap();
        let ac = PairAnalysis::new(&a, &c).unwrap();
        let aa = PairAnalysis::new(&a, &a).unwrap();
        let uab = PairAnalysis::new(&ua, &ub).unwrap();
        for m in metrics {
            let d = ab.metric(m).unwrap();
            axiom_worst = axiom_worst
                .max(-d)
                .max((d - ba.metric(m).unwrap()).abs())
                .max(ac.metric(m).unwrap() - d - bc.metric(m).unwrap());
            self_worst = self_worst.max(aa.metric(m).unwrap());
            inv_worst = inv_worst.max((d - uab.metric(m).unwrap()).abs());
        }
        for p in [&ab, &bc, &ac] {
            chain_worst = chain_worst.max(chain_violation(p));
            pairs += 1;
        }
    }
    ck.holds(
        "metric axioms on 60 triples",
        axiom_worst <= 1e-9 && self_worst < 1e-6,
        format!("worst symmetry/triangle violation {axiom_worst:.1e}, max D(rho, rho) {self_worst:.1e}"),
    );
    ck.holds("unitary invariance", inv_worst <= 1e-9, format!("worst change {inv_worst:.1e}"));
    ck.holds(
        "Fuchs-van de Graaf and F <= Q <= sqrt F",
        chain_worst <= 1e-9,
        format!("{pairs} pairs, worst violation {chain_worst:.1e}"),
    );

    let csv = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_qdist"))
            .args(["--seed", "5", "--samples", "40", "--threads", threads, "table1", "--n", "16"])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let runs = [csv("1"), csv("2"), csv("4")];
    ck.holds(
        "byte-identical CSV for 1, 2, 4 threads",
        runs[0] == runs[1] && runs[1] == runs[2] && !runs[0].is_empty(),
        format!("{} bytes", runs[0].len()),
    );

    let tail = concentration_tail(&[8, 16, 32, 64], 0.05, 400, 12).unwrap();
    let fractions: Vec<f64> = tail.iter().map(|r| r.fraction).collect();
    let sds: Vec<f64> = tail.iter().map(|r| r.sd).collect();
    ck.holds(
        "tail fraction non-increasing in N (eps = 0.05)",
        fractions.windows(2).all(|w| w[1] <= w[0]),
        format!("{fractions:.3?}"),
    );
    let ratios: Vec<f64> = sds.windows(2).map(|w| w[1] / w[0]).collect();
    ck.holds(
        "sd shrinks by < 0.75 per doubling of N",
        ratios.iter().all(|&r| r < 0.75),
        format!("sd {sds:.4?}, ratios {ratios:.3?}"),
    );
}

/// Largest violation of `1 - sqrt F <= D <= sqrt(1 - F)` and `F <= Q <= sqrt F`.
fn chain_violation(p: &PairAnalysis) -> f64 {
    let rf = p.root_fidelity().unwrap();
    let f = rf * rf;
    let d = p.trace_distance().unwrap();
    let q = p.chernoff().1;
    [1.0 - rf - d, d - (1.0 - f).max(0.0).sqrt(), f - q, q - rf]
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max)
}
