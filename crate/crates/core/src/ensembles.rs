//! Seeded samplers: induced-measure states, Haar vectors and unitaries,
//! symmetric Dirichlet vectors, and uniform points in the unit ball.
//!
//! Every sampler is a pure function of a [`SeededStream`]. The `*_with`
//! variants take an already-open generator so that several objects (e.g. the
//! pair `rho, sigma`) can be drawn from one stream.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::Serialize;

use crate::distances::ProbabilityVector;
use crate::error::{Error, Result};
use crate::linalg::{matmul, CMatrix, CVector, DensityMatrix, Field, HermitianMatrix, Op, PureState, C64};

/// `(master_seed, stream_index)` names an independent ChaCha8 stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SeededStream {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl SeededStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        SeededStream {
            master_seed,
            stream_index,
        }
    }

    /// Same master seed, different stream.
    pub fn with_index(self, stream_index: u64) -> Self {
        SeededStream {
            stream_index,
            ..self
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

/// Which ensemble to draw from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum EnsembleSpec {
    /// `rho = G G^dagger / Tr G G^dagger`, `G` complex `N x K`.
    Induced { n: usize, k: usize },
    /// Same with a real Gaussian `G`.
    InducedReal { n: usize, k: usize },
    /// Hilbert-Schmidt measure, `Induced { n, k: n }`.
    Hs { n: usize },
    HaarPureComplex { n: usize },
    HaarPureReal { n: usize },
    HaarUnitary { n: usize },
    Dirichlet { n: usize, s: f64 },
    Ball { n: usize },
}

/// One draw from an [`EnsembleSpec`].
#[derive(Clone, Debug)]
pub enum Sample {
    Mixed(DensityMatrix),
    Pure(PureState),
    Unitary(CMatrix),
    Probability(ProbabilityVector),
    Point(Vec<f64>),
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        let (n, k) = match *self {
            EnsembleSpec::Induced { n, k } | EnsembleSpec::InducedReal { n, k } => (n, k),
            EnsembleSpec::Dirichlet { n, s } => {
                if !(s > 0.0 && s.is_finite()) {
                    return Err(Error::invalid(format!("Dirichlet parameter s = {s} must be positive")));
                }
                (n, 1)
            }
            EnsembleSpec::Hs { n }
            | EnsembleSpec::HaarPureComplex { n }
            | EnsembleSpec::HaarPureReal { n }
            | EnsembleSpec::HaarUnitary { n }
            | EnsembleSpec::Ball { n } => (n, 1),
        };
        if n == 0 || k == 0 {
            return Err(Error::invalid("ensemble dimensions must be at least 1"));
        }
        Ok(())
    }

    /// Dimension of the sampled object.
    pub fn dim(&self) -> usize {
        match *self {
            EnsembleSpec::Induced { n, .. }
            | EnsembleSpec::InducedReal { n, .. }
            | EnsembleSpec::Hs { n }
            | EnsembleSpec::HaarPureComplex { n }
            | EnsembleSpec::HaarPureReal { n }
            | EnsembleSpec::HaarUnitary { n }
            | EnsembleSpec::Dirichlet { n, .. }
            | EnsembleSpec::Ball { n } => n,
        }
    }

    /// `c = K / N` for the induced kinds.
    pub fn rectangularity(&self) -> Option<f64> {
        match *self {
            EnsembleSpec::Induced { n, k } | EnsembleSpec::InducedReal { n, k } => {
                Some(k as f64 / n as f64)
            }
            EnsembleSpec::Hs { .. } => Some(1.0),
            _ => None,
        }
    }

    pub fn sample(&self, stream: SeededStream) -> Result<Sample> {
        self.validate()?;
        let mut rng = stream.rng();
        self.sample_with(&mut rng)
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Sample> {
        self.validate()?;
        Ok(match *self {
            EnsembleSpec::Induced { n, k } => Sample::Mixed(induced_with(rng, n, k, Field::Complex)),
            EnsembleSpec::InducedReal { n, k } => Sample::Mixed(induced_with(rng, n, k, Field::Real)),
            EnsembleSpec::Hs { n } => Sample::Mixed(induced_with(rng, n, n, Field::Complex)),
            EnsembleSpec::HaarPureComplex { n } => Sample::Pure(haar_pure_with(rng, n, Field::Complex)),
            EnsembleSpec::HaarPureReal { n } => Sample::Pure(haar_pure_with(rng, n, Field::Real)),
            EnsembleSpec::HaarUnitary { n } => Sample::Unitary(haar_unitary_with(rng, n)),
            EnsembleSpec::Dirichlet { n, s } => Sample::Probability(dirichlet_with(rng, n, s)?),
            EnsembleSpec::Ball { n } => Sample::Point(ball_with(rng, n)),
        })
    }
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R, field: Field) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    match field {
        Field::Real => C64::new(re, 0.0),
        Field::Complex => C64::new(re, StandardNormal.sample(rng)),
    }
}

/// Ginibre matrix, filled column by column.
pub fn ginibre_with<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, field: Field) -> CMatrix {
    let mut g = CMatrix::zeros(rows, cols);
    g.iter_mut().for_each(|z| *z = gaussian(rng, field));
    g
}

pub fn induced_with<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize, field: Field) -> DensityMatrix {
    let g = ginibre_with(rng, n, k, field);
    let w = matmul(&g, Op::Identity, &g, Op::Adjoint);
    let tr: f64 = (0..n).map(|i| w[(i, i)].re).sum();
    DensityMatrix::from_hermitian_unchecked(HermitianMatrix::symmetrized(w / C64::new(tr, 0.0)))
}

/// Induced measure: reduction of a Haar pure state on `N x K`.
pub fn sample_induced(n: usize, k: usize, stream: SeededStream) -> Result<DensityMatrix> {
    EnsembleSpec::Induced { n, k }.validate()?;
    Ok(induced_with(&mut stream.rng(), n, k, Field::Complex))
}

/// Induced measure with a real Ginibre factor.
pub fn sample_induced_real(n: usize, k: usize, stream: SeededStream) -> Result<DensityMatrix> {
    EnsembleSpec::InducedReal { n, k }.validate()?;
    Ok(induced_with(&mut stream.rng(), n, k, Field::Real))
}

pub fn haar_pure_with<R: Rng + ?Sized>(rng: &mut R, n: usize, field: Field) -> PureState {
    let v = CVector::from_fn(n, |_, _| gaussian(rng, field));
    let norm = v.norm();
    PureState::from_normalized(v / C64::new(norm, 0.0), field)
}

pub fn sample_haar_pure(n: usize, field: Field, stream: SeededStream) -> Result<PureState> {
    if n == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    Ok(haar_pure_with(&mut stream.rng(), n, field))
}

/// QR of a complex Ginibre matrix with the phases of `diag(R)` moved into `Q`.
pub fn haar_unitary_with<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let g = ginibre_with(rng, n, n, Field::Complex);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        q.column_mut(j).iter_mut().for_each(|z| *z *= phase);
    }
    q
}

pub fn sample_haar_unitary(n: usize, stream: SeededStream) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    Ok(haar_unitary_with(&mut stream.rng(), n))
}

/// Normalized Gamma(s) variates.
pub fn dirichlet_with<R: Rng + ?Sized>(rng: &mut R, n: usize, s: f64) -> Result<ProbabilityVector> {
    let gamma = Gamma::new(s, 1.0).map_err(|e| Error::invalid(format!("Gamma({s}): {e}")))?;
    loop {
        let g: Vec<f64> = (0..n).map(|_| gamma.sample(rng)).collect();
        let total: f64 = g.iter().sum();
        // tiny s can underflow every variate; redraw
        if total > 0.0 {
            return Ok(ProbabilityVector::from_normalized(g.into_iter().map(|x| x / total).collect()));
        }
    }
}

pub fn sample_dirichlet(n: usize, s: f64, stream: SeededStream) -> Result<ProbabilityVector> {
    EnsembleSpec::Dirichlet { n, s }.validate()?;
    dirichlet_with(&mut stream.rng(), n, s)
}

/// Gaussian direction times radius `U^{1/n}`.
pub fn ball_with<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let dir = DVector::<f64>::from_fn(n, |_, _| StandardNormal.sample(rng));
    let norm = dir.norm();
    let u: f64 = rng.random();
    let r = u.powf(1.0 / n as f64);
    dir.iter().map(|x| x / norm * r).collect()
}

pub fn sample_ball(n: usize, stream: SeededStream) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    Ok(ball_with(&mut stream.rng(), n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::LimitLaw;
    use crate::linalg::{Rescale, Spectrum};
    use crate::quad::{integrate, Tolerance};
    use crate::stats::{ks_against, mean_se};

    fn chi2_1_cdf(t: f64) -> f64 {
        if t <= 0.0 {
            0.0
        } else {
            libm::erf((t / 2.0).sqrt())
        }
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = sample_induced(5, 7, SeededStream::new(42, 3)).unwrap();
        let b = sample_induced(5, 7, SeededStream::new(42, 3)).unwrap();
        let c = sample_induced(5, 7, SeededStream::new(42, 4)).unwrap();
        assert_eq!(a.matrix(), b.matrix());
        assert_ne!(a.matrix(), c.matrix());
    }

    #[test]
    fn one_dimensional_state_is_one() {
        let rho = sample_induced(1, 5, SeededStream::new(1, 0)).unwrap();
        assert!((rho.matrix()[(0, 0)].re - 1.0).abs() < 1e-15);
        assert_eq!(rho.matrix()[(0, 0)].im, 0.0);
    }

    #[test]
    fn induced_states_are_valid_and_rescaled_mean_is_c() {
        for (n, k) in [(6, 3), (10, 10), (4, 9)] {
            let rho = sample_induced(n, k, SeededStream::new(7, n as u64)).unwrap();
            assert!((rho.trace() - 1.0).abs() < 1e-13);
            let s = rho.spectrum().unwrap();
            assert!(s.values()[0] > -1e-12);
            let c = k as f64 / n as f64;
            assert!((s.clone().rescaled(Rescale::ByK(k)).mean() - c).abs() < 1e-12);
            assert!((s.rescaled(Rescale::ByN(n)).mean() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hs_spectrum_fits_marchenko_pastur() {
        let n = 100;
        let parts: Vec<Spectrum> = (0..100)
            .map(|i| {
                sample_induced(n, n, SeededStream::new(2024, i))
                    .unwrap()
                    .spectrum()
                    .unwrap()
                    .rescaled(Rescale::ByN(n))
            })
            .collect();
        let pooled = Spectrum::pooled(&parts).unwrap();
        let law = LimitLaw::marchenko_pastur(1.0).unwrap();
        let cdf = law.cdf_many(pooled.values()).unwrap();
        let d = crate::stats::ks_distance(pooled.values(), &cdf);
        assert!(d < 0.02, "KS = {d}");
    }

    #[test]
    fn haar_vectors_are_normalized_and_fit_porter_thomas() {
        let n = 128;
        let mut complex = Vec::new();
        let mut real = Vec::new();
        for i in 0..100 {
            let c = sample_haar_pure(n, Field::Complex, SeededStream::new(5, i)).unwrap();
            let r = sample_haar_pure(n, Field::Real, SeededStream::new(6, i)).unwrap();
            assert!((c.norm() - 1.0).abs() < 1e-12);
            assert!((r.norm() - 1.0).abs() < 1e-12);
            assert_eq!(r.field(), Field::Real);
            complex.extend(c.probabilities().iter().map(|q| q * n as f64));
            real.extend(r.probabilities().iter().map(|q| q * n as f64));
        }
        let d_c = ks_against(&complex, |t| 1.0 - (-t.max(0.0)).exp());
        let d_r = ks_against(&real, chi2_1_cdf);
        assert!(d_c < 0.02, "complex KS = {d_c}");
        assert!(d_r < 0.02, "real KS = {d_r}");
    }

    #[test]
    fn haar_unitaries_are_unitary() {
        let u1 = sample_haar_unitary(1, SeededStream::new(3, 0)).unwrap();
        assert!((u1[(0, 0)].norm() - 1.0).abs() < 1e-14);
        let u = sample_haar_unitary(20, SeededStream::new(3, 1)).unwrap();
        let defect = &u * u.adjoint() - CMatrix::identity(20, 20);
        assert!(defect.iter().all(|z| z.norm() <= 1e-10));
    }

    #[test]
    fn haar_unitary_second_moment() {
        let n = 16;
        let vals: Vec<f64> = (0..10_000)
            .map(|i| sample_haar_unitary(n, SeededStream::new(11, i)).unwrap()[(2, 5)].norm_sqr())
            .collect();
        let m = mean_se(&vals);
        assert!((m.mean - 1.0 / n as f64).abs() < 3.0 * m.se, "{m:?}");
    }

    #[test]
    fn induced_measure_is_unitarily_invariant() {
        // The distribution of a fixed matrix element must not change under
        // conjugation by a fixed Haar unitary.
        let n = 6;
        let u = sample_haar_unitary(n, SeededStream::new(77, 0)).unwrap();
        let (mut plain, mut rotated) = (Vec::new(), Vec::new());
        for i in 0..4000 {
            let a = sample_induced(n, n, SeededStream::new(78, i)).unwrap();
            let b = sample_induced(n, n, SeededStream::new(79, i)).unwrap().conjugate_by(&u);
            plain.push(a.matrix()[(0, 0)].re);
            rotated.push(b.matrix()[(0, 0)].re);
        }
        let (p, r) = (mean_se(&plain), mean_se(&rotated));
        let combined = (p.se * p.se + r.se * r.se).sqrt();
        assert!((p.mean - r.mean).abs() < 3.0 * combined);
        let (p2, r2): (Vec<f64>, Vec<f64>) = plain
            .iter()
            .zip(&rotated)
            .map(|(a, b)| (a * a, b * b))
            .unzip();
        let (p2, r2) = (mean_se(&p2), mean_se(&r2));
        assert!((p2.mean - r2.mean).abs() < 3.0 * (p2.se * p2.se + r2.se * r2.se).sqrt());
    }

    #[test]
    fn qubit_purity_matches_integration_oracle() {
        // For N = K = 2 the eigenvalues (x, 1-x) have joint density
        // proportional to (2x-1)^2 on [0, 1].
        let tol = Tolerance::default();
        let weight = |x: f64| (2.0 * x - 1.0).powi(2);
        let z = integrate(weight, 0.0, 1.0, &[], tol).unwrap().value;
        let num = integrate(|x| (x * x + (1.0 - x) * (1.0 - x)) * weight(x), 0.0, 1.0, &[], tol)
            .unwrap()
            .value;
        let oracle = num / z;
        let purities: Vec<f64> = crate::stats::par_indexed(100_000, |i| {
            sample_induced(2, 2, SeededStream::new(404, i as u64)).unwrap().purity()
        });
        let m = mean_se(&purities);
        assert!((m.mean - oracle).abs() < 3.0 * m.se, "{} vs {oracle}", m.mean);
    }

    #[test]
    fn dirichlet_vectors() {
        let one = sample_dirichlet(1, 0.5, SeededStream::new(1, 1)).unwrap();
        assert_eq!(one.values(), &[1.0]);
        let flat: Vec<f64> = (0..4000)
            .map(|i| sample_dirichlet(2, 1.0, SeededStream::new(2, i)).unwrap().values()[0])
            .collect();
        assert!(ks_against(&flat, |x| x.clamp(0.0, 1.0)) < 0.03);
        let n = 64;
        let mut stat = Vec::new();
        for i in 0..200 {
            let p = sample_dirichlet(n, 0.5, SeededStream::new(3, i)).unwrap();
            assert!((p.values().iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(p.values().iter().all(|&x| x >= 0.0));
            stat.extend(p.values().iter().map(|q| q * n as f64));
        }
        let d = ks_against(&stat, chi2_1_cdf);
        assert!(d < 0.02, "KS = {d}");
    }

    #[test]
    fn ball_points() {
        let mut d1 = Vec::new();
        let mut d2 = Vec::new();
        for i in 0..20_000u64 {
            let mut rng = SeededStream::new(9, i).rng();
            let (x, y) = (ball_with(&mut rng, 1), ball_with(&mut rng, 1));
            d1.push((x[0] - y[0]).abs());
            let (p, q) = (ball_with(&mut rng, 2), ball_with(&mut rng, 2));
            assert!(p.iter().map(|v| v * v).sum::<f64>() <= 1.0);
            d2.push(((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt());
        }
        assert!((mean_se(&d1).mean - 2.0 / 3.0).abs() < 0.01);
        let l2 = 128.0 / (45.0 * std::f64::consts::PI);
        assert!((mean_se(&d2).mean - l2).abs() < 0.01);
    }

    #[test]
    fn specs_validate() {
        assert!(EnsembleSpec::Induced { n: 0, k: 3 }.validate().is_err());
        assert!(EnsembleSpec::Dirichlet { n: 3, s: -1.0 }.validate().is_err());
        assert_eq!(EnsembleSpec::Induced { n: 4, k: 8 }.rectangularity(), Some(2.0));
        match (EnsembleSpec::Ball { n: 3 }).sample(SeededStream::new(0, 0)).unwrap() {
            Sample::Point(p) => assert_eq!(p.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
    }
}
