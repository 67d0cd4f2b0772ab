use proptest::prelude::*;

use qdist::distances::{
    bhattacharyya, classical_bures, l1_halved, Metric, PairAnalysis, ProbabilityVector,
};
use qdist::ensembles::{sample_dirichlet, sample_haar_unitary, sample_induced, SeededStream};
use qdist::experiments::format_float;
use qdist::laws::LimitLaw;
use qdist::linalg::{DensityMatrix, Subsystem};
use qdist::stats::pairwise_sum;

const METRICS: [Metric; 7] = [Metric::Tr, Metric::Hs, Metric::Inf, Metric::B, Metric::H, Metric::T, Metric::E];

fn state(n: usize, k: usize, seed: u64, idx: u64) -> DensityMatrix {
    sample_induced(n, k, SeededStream::new(seed, idx)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sampled_states_are_states(n in 1usize..9, k in 1usize..10, seed: u64) {
        let rho = state(n, k, seed, 0);
        prop_assert!((rho.trace() - 1.0).abs() < 1e-12);
        let s = rho.spectrum().unwrap();
        prop_assert!(s.values()[0] > -1e-12);
        // rank is min(N, K)
        let positive = s.values().iter().filter(|&&v| v > 1e-12).count();
        prop_assert_eq!(positive, n.min(k));
    }

    #[test]
    fn metric_axioms(n in 2usize..7, k1 in 1usize..8, k2 in 1usize..8, k3 in 1usize..8, seed: u64) {
        let (a, b, c) = (state(n, k1, seed, 0), state(n, k2, seed, 1), state(n, k3, seed, 2));
        let ab = PairAnalysis::new(&a, &b).unwrap();
        let ba = PairAnalysis::new(&b, &a).unwrap();
        let bc = PairAnalysis::new(&b, &c).unwrap();
        let ac = PairAnalysis::new(&a, &c).unwrap();
        let aa = PairAnalysis::new(&a, &a).unwrap();
        for m in METRICS {
            let d = ab.metric(m).unwrap();
            prop_assert!(d >= 0.0, "{m}");
            prop_assert!((d - ba.metric(m).unwrap()).abs() < 1e-9, "{m} symmetry");
            prop_assert!(ac.metric(m).unwrap() <= d + bc.metric(m).unwrap() + 1e-9, "{m} triangle");
            prop_assert!(aa.metric(m).unwrap() < 1e-6, "{m} identity");
        }
    }

    #[test]
    fn unitary_invariance(n in 2usize..7, k in 1usize..8, seed: u64) {
        let (a, b) = (state(n, k, seed, 0), state(n, n, seed, 1));
        let u = sample_haar_unitary(n, SeededStream::new(seed, 2)).unwrap();
        let p = PairAnalysis::new(&a, &b).unwrap();
        let (ua, ub) = (a.conjugate_by(&u), b.conjugate_by(&u));
        let q = PairAnalysis::new(&ua, &ub).unwrap();
        for m in METRICS {
            prop_assert!((p.metric(m).unwrap() - q.metric(m).unwrap()).abs() < 1e-9, "{m}");
        }
    }

    #[test]
    fn fidelity_chains(n in 2usize..9, k1 in 1usize..10, k2 in 1usize..10, seed: u64) {
        let (a, b) = (state(n, k1, seed, 0), state(n, k2, seed, 1));
        let p = PairAnalysis::new(&a, &b).unwrap();
        let rf = p.root_fidelity().unwrap();
        let f = rf * rf;
        let d = p.trace_distance().unwrap();
        let q = p.chernoff().1;
        prop_assert!(1.0 - rf <= d + 1e-9);
        prop_assert!(d <= (1.0 - f).max(0.0).sqrt() + 1e-9);
        prop_assert!(f <= q + 1e-9, "F = {f}, Q = {q}");
        prop_assert!(q <= rf + 1e-9, "Q = {q}, sqrt F = {rf}");
    }

    #[test]
    fn partial_operations_preserve_trace(na in 1usize..4, nb in 1usize..4, seed: u64) {
        let rho = state(na * nb, na * nb, seed, 0).with_split(na, nb).unwrap();
        let ra = rho.partial_trace(Subsystem::B).unwrap();
        let rb = rho.partial_trace(Subsystem::A).unwrap();
        prop_assert_eq!((ra.dim(), rb.dim()), (na, nb));
        prop_assert!((ra.trace() - 1.0).abs() < 1e-12 && (rb.trace() - 1.0).abs() < 1e-12);
        let pt = rho.partial_transpose().unwrap();
        prop_assert!((pt.trace() - 1.0).abs() < 1e-12);
        prop_assert!((pt.hs_norm() - rho.as_hermitian().hs_norm()).abs() < 1e-12);
    }

    #[test]
    fn classical_distance_bounds(n in 2usize..40, s in 0.2f64..2.0, seed: u64) {
        let p = sample_dirichlet(n, s, SeededStream::new(seed, 0)).unwrap();
        let q = sample_dirichlet(n, s, SeededStream::new(seed, 1)).unwrap();
        let l1 = l1_halved(&p, &q).unwrap();
        let bc = bhattacharyya(&p, &q).unwrap();
        let b = classical_bures(&p, &q).unwrap();
        prop_assert!((0.0..=1.0).contains(&l1));
        prop_assert!(bc <= 1.0 + 1e-12);
        // classical Fuchs-van de Graaf
        prop_assert!(1.0 - bc <= l1 + 1e-12 && l1 <= (1.0 - bc * bc).max(0.0).sqrt() + 1e-12);
        prop_assert!((b * b - (2.0 - 2.0 * bc)).abs() < 1e-12);
        let u = ProbabilityVector::uniform(n);
        prop_assert!(l1_halved(&u, &u).unwrap() == 0.0);
    }

    #[test]
    fn laws_are_normalized(c in 0.05f64..12.0) {
        for law in [LimitLaw::marchenko_pastur(c).unwrap(), LimitLaw::symmetrized_mp(c).unwrap()] {
            let mass = law.functional(|_| 1.0, &[]).unwrap();
            prop_assert!((mass - 1.0).abs() < 1e-8, "{:?}: {mass}", law.kind());
        }
    }

    #[test]
    fn pairwise_sum_is_accurate(xs in prop::collection::vec(-1e3f64..1e3, 0..300)) {
        let naive: f64 = xs.iter().sum();
        let scale: f64 = xs.iter().map(|x| x.abs()).sum::<f64>().max(1.0);
        prop_assert!((pairwise_sum(&xs) - naive).abs() <= 1e-12 * scale);
    }

    #[test]
    fn float_format_round_trips(v in prop::num::f64::NORMAL | prop::num::f64::ZERO) {
        let s = format_float(v);
        prop_assert_eq!(s.parse::<f64>().unwrap(), v);
        if v != 0.0 && v.abs() < 1e-4 {
            prop_assert!(s.contains('e'));
        }
    }
}
