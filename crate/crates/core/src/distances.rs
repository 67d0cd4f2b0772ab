//! Distinguishability measures for density matrices and probability vectors.
//!
//! All logarithms are natural. Functions of a single pair go through
//! [`PairAnalysis`], which diagonalizes `rho` and `sigma` once and expresses
//! the overlap-based quantities (`Q_s`, relative entropy, fidelity) in the
//! two eigenbases.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laws::golden_min;
use crate::linalg::{entropy_of, matmul, xlogx, CMatrix, DensityMatrix, Eigen, HermitianMatrix, Op, PSD_TOL};

/// Nonnegative vector summing to one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::invalid("probability vector must be nonempty"));
        }
        if let Some(&neg) = p.iter().find(|&&x| !(x >= 0.0)) {
            return Err(Error::NotPositive(neg));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(total));
        }
        Ok(ProbabilityVector(p))
    }

    pub(crate) fn from_normalized(p: Vec<f64>) -> Self {
        ProbabilityVector(p)
    }

    pub fn uniform(n: usize) -> Self {
        ProbabilityVector(vec![1.0 / n as f64; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch(a, b));
    }
    Ok(())
}

/// Half the L1 distance.
pub fn l1_halved(p: &ProbabilityVector, q: &ProbabilityVector) -> Result<f64> {
    check_dims(p.dim(), q.dim())?;
    Ok(0.5 * p.0.iter().zip(&q.0).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

/// Bhattacharyya coefficient `sum sqrt(p_i q_i)`.
pub fn bhattacharyya(p: &ProbabilityVector, q: &ProbabilityVector) -> Result<f64> {
    check_dims(p.dim(), q.dim())?;
    Ok(p.0.iter().zip(&q.0).map(|(a, b)| (a * b).sqrt()).sum())
}

/// `sqrt(2 (1 - B(p, q)))`.
pub fn classical_bures(p: &ProbabilityVector, q: &ProbabilityVector) -> Result<f64> {
    Ok((2.0 * (1.0 - bhattacharyya(p, q)?)).max(0.0).sqrt())
}

/// Quantum distance and divergence measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Metric {
    /// Trace distance `(1/2) ||rho - sigma||_1`.
    Tr,
    /// `sqrt((1/2) Tr (rho - sigma)^2)`.
    Hs,
    /// `||rho - sigma||_2`, no factor 1/2.
    HsNorm,
    Inf,
    /// Transmission distance `sqrt(QJSD)`.
    T,
    /// Bures `sqrt(2 (1 - sqrt F))`.
    B,
    /// Entropic `sqrt(H2((1 - sqrt F) / 2))`.
    E,
    /// Hellinger `sqrt(2 - 2 Tr rho^{1/2} sigma^{1/2})`.
    H,
    /// Relative entropy `S(rho || sigma)`; not symmetric.
    Kl,
    /// `min_s Tr rho^s sigma^{1-s}`; a similarity, not a distance.
    Chernoff,
    Qjsd,
    RootFidelity,
}

impl Metric {
    pub const ALL: [Metric; 12] = [
        Metric::Tr,
        Metric::Hs,
        Metric::HsNorm,
        Metric::Inf,
        Metric::T,
        Metric::B,
        Metric::E,
        Metric::H,
        Metric::Kl,
        Metric::Chernoff,
        Metric::Qjsd,
        Metric::RootFidelity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Tr => "tr",
            Metric::Hs => "hs",
            Metric::HsNorm => "hs-norm",
            Metric::Inf => "inf",
            Metric::T => "t",
            Metric::B => "b",
            Metric::E => "e",
            Metric::H => "h",
            Metric::Kl => "kl",
            Metric::Chernoff => "chernoff",
            Metric::Qjsd => "qjsd",
            Metric::RootFidelity => "root-fidelity",
        }
    }

    /// True metrics on the state space (as opposed to divergences/similarities).
    pub fn is_metric(self) -> bool {
        !matches!(self, Metric::Kl | Metric::Chernoff | Metric::Qjsd | Metric::RootFidelity)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::invalid(format!("unknown metric '{s}'")))
    }
}

/// Relative entropy, with `+inf` tagged rather than raised.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum RelEntropy {
    Finite(f64),
    /// `supp rho` is not contained in `supp sigma`.
    Infinite,
}

impl RelEntropy {
    pub fn value(self) -> f64 {
        match self {
            RelEntropy::Finite(v) => v,
            RelEntropy::Infinite => f64::INFINITY,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistanceReport {
    pub metric: Metric,
    pub value: f64,
    pub inputs: (String, String),
}

/// Binary entropy in nats.
pub fn binary_entropy(x: f64) -> f64 {
    -xlogx(x) - xlogx(1.0 - x)
}

/// Both spectral decompositions plus `O_ij = |<u_i|v_j>|^2`.
#[derive(Clone, Debug)]
pub struct PairAnalysis<'a> {
    rho: &'a DensityMatrix,
    sigma: &'a DensityMatrix,
    er: Eigen,
    es: Eigen,
    /// `W = U^dagger V`.
    cross: CMatrix,
    overlap: DMatrix<f64>,
    /// Spectra with the numerical kernel zeroed.
    lam: Vec<f64>,
    mu: Vec<f64>,
}

impl<'a> PairAnalysis<'a> {
    pub fn new(rho: &'a DensityMatrix, sigma: &'a DensityMatrix) -> Result<Self> {
        check_dims(rho.dim(), sigma.dim())?;
        let er = rho.eig()?;
        let es = sigma.eig()?;
        let cross = matmul(er.vectors(), Op::Adjoint, es.vectors(), Op::Identity);
        let overlap = cross.map(|z| z.norm_sqr());
        let (lam, mu) = (er.support_values(), es.support_values());
        Ok(PairAnalysis {
            rho,
            sigma,
            er,
            es,
            cross,
            overlap,
            lam,
            mu,
        })
    }

    pub fn rho_eigen(&self) -> &Eigen {
        &self.er
    }

    pub fn sigma_eigen(&self) -> &Eigen {
        &self.es
    }

    /// `a^T O b`.
    fn bilinear(&self, a: &[f64], b: &[f64]) -> f64 {
        let n = a.len();
        let mut total = 0.0;
        for j in 0..n {
            if b[j] == 0.0 {
                continue;
            }
            let col: f64 = (0..n).map(|i| a[i] * self.overlap[(i, j)]).sum();
            total += col * b[j];
        }
        total
    }

    /// `Q_s = Tr rho^s sigma^{1-s}`, with `0^s = 0` (powers act on the support).
    pub fn q(&self, s: f64) -> f64 {
        let pow = |l: f64, e: f64| if l > 0.0 { l.powf(e) } else { 0.0 };
        let a: Vec<f64> = self.lam.iter().map(|&l| pow(l, s)).collect();
        let b: Vec<f64> = self.mu.iter().map(|&l| pow(l, 1.0 - s)).collect();
        self.bilinear(&a, &b)
    }

    /// `min_s Q_s`: a 21-point scan brackets the minimum, golden section refines it.
    pub fn chernoff(&self) -> (f64, f64) {
        let grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
        let vals: Vec<f64> = grid.iter().map(|&s| self.q(s)).collect();
        let k = (0..vals.len())
            .min_by(|&i, &j| vals[i].total_cmp(&vals[j]))
            .unwrap_or(10);
        let lo = grid[k.saturating_sub(1)];
        let hi = grid[(k + 1).min(20)];
        let (s, q) = golden_min(|s| self.q(s), lo, hi, 1e-10);
        if vals[k] < q {
            (grid[k], vals[k])
        } else {
            (s, q)
        }
    }

    pub fn relative_entropy(&self) -> RelEntropy {
        let lam = self.er.values();
        let mu = self.es.values();
        let n = lam.len();
        let mut cross = 0.0;
        for j in 0..n {
            let weight: f64 = (0..n).map(|i| lam[i].max(0.0) * self.overlap[(i, j)]).sum();
            if mu[j] <= PSD_TOL {
                if weight > PSD_TOL {
                    return RelEntropy::Infinite;
                }
                continue;
            }
            cross += weight * mu[j].ln();
        }
        let own: f64 = lam.iter().map(|&l| xlogx(l)).sum();
        RelEntropy::Finite((own - cross).max(0.0))
    }

    /// `Tr |sqrt(rho) sqrt(sigma)|` as the sum of square roots of the eigenvalues
    /// of `X X^dagger`, `X = diag(sqrt lambda) W diag(sqrt mu)`; `X X^dagger` is
    /// `sqrt(rho) sigma sqrt(rho)` written in the eigenbasis of `rho`.
    pub fn root_fidelity(&self) -> Result<f64> {
        let sl: Vec<f64> = self.lam.iter().map(|l| l.sqrt()).collect();
        let sm: Vec<f64> = self.mu.iter().map(|l| l.sqrt()).collect();
        let n = sl.len();
        let x = CMatrix::from_fn(n, n, |i, j| self.cross[(i, j)] * (sl[i] * sm[j]));
        let xx = HermitianMatrix::symmetrized(matmul(&x, Op::Identity, &x, Op::Adjoint));
        let ev = xx.eig()?.support_values();
        Ok(ev.iter().map(|v| v.sqrt()).sum::<f64>().min(1.0))
    }

    /// `Tr rho^{1/2} sigma^{1/2}`.
    pub fn affinity(&self) -> f64 {
        self.q(0.5)
    }

    pub fn gamma(&self) -> HermitianMatrix {
        self.rho - self.sigma
    }

    pub fn trace_distance(&self) -> Result<f64> {
        Ok(0.5 * self.gamma().trace_norm()?)
    }

    pub fn qjsd(&self) -> Result<f64> {
        let mix = self.rho.mix(self.sigma, 0.5)?;
        let s_mix = mix.entropy()?;
        let s_r = entropy_of(&self.er.clipped_values());
        let s_s = entropy_of(&self.es.clipped_values());
        Ok((s_mix - 0.5 * (s_r + s_s)).max(0.0))
    }

    pub fn metric(&self, m: Metric) -> Result<f64> {
        Ok(match m {
            Metric::Tr => self.trace_distance()?,
            Metric::Hs => self.gamma().hs_norm() / 2f64.sqrt(),
            Metric::HsNorm => self.gamma().hs_norm(),
            Metric::Inf => self.gamma().op_norm()?,
            Metric::T => self.qjsd()?.sqrt(),
            Metric::B => (2.0 * (1.0 - self.root_fidelity()?)).max(0.0).sqrt(),
            Metric::E => binary_entropy(0.5 * (1.0 - self.root_fidelity()?)).max(0.0).sqrt(),
            Metric::H => (2.0 - 2.0 * self.affinity()).max(0.0).sqrt(),
            Metric::Kl => self.relative_entropy().value(),
            Metric::Chernoff => self.chernoff().1,
            Metric::Qjsd => self.qjsd()?,
            Metric::RootFidelity => self.root_fidelity()?,
        })
    }
}

pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_dims(rho.dim(), sigma.dim())?;
    Ok(0.5 * (rho - sigma).trace_norm()?)
}

/// Table convention, with the 1/2 inside the root.
pub fn hs_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_dims(rho.dim(), sigma.dim())?;
    Ok((rho - sigma).hs_norm() / 2f64.sqrt())
}

/// Plain Frobenius norm of the difference.
pub fn hs_norm_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_dims(rho.dim(), sigma.dim())?;
    Ok((rho - sigma).hs_norm())
}

pub fn inf_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_dims(rho.dim(), sigma.dim())?;
    (rho - sigma).op_norm()
}

pub fn root_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    PairAnalysis::new(rho, sigma)?.root_fidelity()
}

pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(root_fidelity(rho, sigma)?.powi(2))
}

pub fn bures_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    PairAnalysis::new(rho, sigma)?.metric(Metric::B)
}

pub fn hellinger_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    PairAnalysis::new(rho, sigma)?.metric(Metric::H)
}

pub fn qjsd(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    PairAnalysis::new(rho, sigma)?.qjsd()
}

pub fn transmission_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(qjsd(rho, sigma)?.sqrt())
}

pub fn entropic_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    PairAnalysis::new(rho, sigma)?.metric(Metric::E)
}

pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<RelEntropy> {
    Ok(PairAnalysis::new(rho, sigma)?.relative_entropy())
}

pub fn chernoff_q(rho: &DensityMatrix, sigma: &DensityMatrix, s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::invalid(format!("Chernoff parameter s = {s} outside [0, 1]")));
    }
    Ok(PairAnalysis::new(rho, sigma)?.q(s))
}

/// `(s*, Q_{s*})`.
pub fn chernoff_information(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<(f64, f64)> {
    Ok(PairAnalysis::new(rho, sigma)?.chernoff())
}

/// Optimal single-shot success probability for equal priors, measured with
/// the projector onto the positive part of `rho - sigma`.
pub fn helstrom_success(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_dims(rho.dim(), sigma.dim())?;
    let e = (rho - sigma).eig()?;
    let plus = e.map(|l| if l > 0.0 { 1.0 } else { 0.0 });
    let n = rho.dim();
    let tr_prod = |a: &CMatrix, b: &CMatrix| -> f64 {
        let mut t = 0.0;
        for i in 0..n {
            for j in 0..n {
                t += (a[(i, j)] * b[(j, i)]).re;
            }
        }
        t
    };
    let p_rho = tr_prod(plus.matrix(), rho.matrix());
    let p_sigma = 1.0 - tr_prod(plus.matrix(), sigma.matrix());
    Ok(0.5 * (p_rho + p_sigma))
}

pub fn distance(
    metric: Metric,
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    labels: (&str, &str),
) -> Result<DistanceReport> {
    let value = PairAnalysis::new(rho, sigma)?.metric(metric)?;
    Ok(DistanceReport {
        metric,
        value,
        inputs: (labels.0.to_string(), labels.1.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{sample_haar_unitary, sample_induced, SeededStream};
    use crate::linalg::PureState;

    fn hs(n: usize, seed: u64, idx: u64) -> DensityMatrix {
        sample_induced(n, n, SeededStream::new(seed, idx)).unwrap()
    }

    fn orthogonal_pair(n: usize) -> (DensityMatrix, DensityMatrix) {
        (
            PureState::basis(n, 0).unwrap().projector(),
            PureState::basis(n, 1).unwrap().projector(),
        )
    }

    #[test]
    fn identical_states() {
        let rho = hs(6, 1, 0);
        let pa = PairAnalysis::new(&rho, &rho).unwrap();
        for m in Metric::ALL {
            let v = pa.metric(m).unwrap();
            match m {
                Metric::RootFidelity | Metric::Chernoff => assert!((v - 1.0).abs() < 1e-10, "{m}: {v}"),
                _ => assert!(v.abs() < 1e-7, "{m}: {v}"),
            }
        }
        for s in [0.0, 0.3, 1.0] {
            assert!((pa.q(s) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn orthogonal_pure_states() {
        let (a, b) = orthogonal_pair(3);
        let pa = PairAnalysis::new(&a, &b).unwrap();
        assert!((pa.metric(Metric::Tr).unwrap() - 1.0).abs() < 1e-14);
        assert!((pa.metric(Metric::Hs).unwrap() - 1.0).abs() < 1e-14);
        assert!((pa.metric(Metric::Inf).unwrap() - 1.0).abs() < 1e-14);
        assert!(pa.metric(Metric::RootFidelity).unwrap().abs() < 1e-7);
        assert!((pa.metric(Metric::Qjsd).unwrap() - 2f64.ln()).abs() < 1e-12);
        assert!((pa.metric(Metric::T).unwrap() - 2f64.ln().sqrt()).abs() < 1e-12);
        assert!((pa.metric(Metric::E).unwrap() - 2f64.ln().sqrt()).abs() < 1e-6);
        assert!((pa.metric(Metric::B).unwrap() - 2f64.sqrt()).abs() < 1e-6);
        assert!((pa.metric(Metric::H).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(pa.relative_entropy(), RelEntropy::Infinite);
    }

    #[test]
    fn qubit_hand_oracle() {
        let rho = DensityMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        let mixed = DensityMatrix::maximally_mixed(2);
        assert!((trace_distance(&rho, &mixed).unwrap() - 0.5).abs() < 1e-15);
        // sqrt(F) = sqrt(1/2), S(rho || I/2) = ln 2
        assert!((root_fidelity(&rho, &mixed).unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((relative_entropy(&rho, &mixed).unwrap().value() - 2f64.ln()).abs() < 1e-12);
        assert_eq!(relative_entropy(&mixed, &rho).unwrap(), RelEntropy::Infinite);
        assert!((helstrom_success(&rho, &mixed).unwrap() - 0.75).abs() < 1e-14);
    }

    #[test]
    fn commuting_states_reduce_to_classical_formulas() {
        let p = [0.5, 0.3, 0.2];
        let q = [0.1, 0.6, 0.3];
        let rho = DensityMatrix::from_diagonal(&p).unwrap();
        let sigma = DensityMatrix::from_diagonal(&q).unwrap();
        let pa = PairAnalysis::new(&rho, &sigma).unwrap();
        let kl: f64 = p.iter().zip(&q).map(|(a, b)| a * (a / b).ln()).sum();
        assert!((pa.relative_entropy().value() - kl).abs() < 1e-13);
        let b: f64 = p.iter().zip(&q).map(|(a, b)| (a * b).sqrt()).sum();
        assert!((pa.root_fidelity().unwrap() - b).abs() < 1e-12);
        assert!((pa.affinity() - b).abs() < 1e-13);
        let s = 0.3;
        let qs: f64 = p.iter().zip(&q).map(|(a, b)| a.powf(s) * b.powf(1.0 - s)).sum();
        assert!((pa.q(s) - qs).abs() < 1e-13);
        let pv = ProbabilityVector::new(p.to_vec()).unwrap();
        let qv = ProbabilityVector::new(q.to_vec()).unwrap();
        assert!((l1_halved(&pv, &qv).unwrap() - pa.trace_distance().unwrap()).abs() < 1e-14);
        assert!((bhattacharyya(&pv, &qv).unwrap() - b).abs() < 1e-15);
    }

    #[test]
    fn root_fidelity_matches_matrix_square_root_route() {
        let rho = hs(7, 3, 0);
        let sigma = hs(7, 3, 1);
        let sr = rho.matrix_function(crate::linalg::MatrixFunction::Sqrt).unwrap();
        let m = sr.matrix() * sigma.matrix() * sr.matrix();
        let direct: f64 = HermitianMatrix::new(m)
            .unwrap()
            .spectrum()
            .unwrap()
            .values()
            .iter()
            .map(|v| v.max(0.0).sqrt())
            .sum();
        assert!((root_fidelity(&rho, &sigma).unwrap() - direct).abs() < 1e-12);
    }

    #[test]
    fn relative_entropy_matches_matrix_log_route() {
        use crate::linalg::MatrixFunction::Log;
        let rho = hs(5, 8, 0);
        let sigma = hs(5, 8, 1);
        let diff = rho.matrix_function(Log).unwrap().matrix() - sigma.matrix_function(Log).unwrap().matrix();
        let direct = (rho.matrix() * diff).trace().re;
        assert!((relative_entropy(&rho, &sigma).unwrap().value() - direct).abs() < 1e-11);
    }

    #[test]
    fn chernoff_endpoints_and_minimum() {
        let rho = hs(8, 4, 0);
        let sigma = hs(8, 4, 1);
        let pa = PairAnalysis::new(&rho, &sigma).unwrap();
        assert!((pa.q(0.0) - 1.0).abs() < 1e-12);
        assert!((pa.q(1.0) - 1.0).abs() < 1e-12);
        let (s, q) = pa.chernoff();
        for i in 0..=100 {
            assert!(pa.q(i as f64 / 100.0) >= q - 1e-12, "s={s}");
        }
    }

    #[test]
    fn helstrom_consistency() {
        for i in 0..5 {
            let rho = hs(9, 12, 2 * i);
            let sigma = hs(9, 12, 2 * i + 1);
            let p = helstrom_success(&rho, &sigma).unwrap();
            let d = trace_distance(&rho, &sigma).unwrap();
            assert!((p - (1.0 + d) / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn metric_axioms_and_unitary_invariance() {
        let n = 6;
        let u = sample_haar_unitary(n, SeededStream::new(50, 0)).unwrap();
        let metrics = [Metric::Tr, Metric::Hs, Metric::Inf, Metric::B, Metric::H, Metric::T, Metric::E];
        for t in 0..10 {
            let a = hs(n, 51, 3 * t);
            let b = hs(n, 51, 3 * t + 1);
            let c = hs(n, 51, 3 * t + 2);
            let (ua, ub) = (a.conjugate_by(&u), b.conjugate_by(&u));
            let ab = PairAnalysis::new(&a, &b).unwrap();
            let ba = PairAnalysis::new(&b, &a).unwrap();
            let bc = PairAnalysis::new(&b, &c).unwrap();
            let ac = PairAnalysis::new(&a, &c).unwrap();
            let rot = PairAnalysis::new(&ua, &ub).unwrap();
            for m in metrics {
                let d_ab = ab.metric(m).unwrap();
                assert!(d_ab > 0.0);
                assert!((d_ab - ba.metric(m).unwrap()).abs() < 1e-10, "{m} symmetry");
                assert!(ac.metric(m).unwrap() <= d_ab + bc.metric(m).unwrap() + 1e-10, "{m} triangle");
                assert!((d_ab - rot.metric(m).unwrap()).abs() < 1e-10, "{m} invariance");
            }
            for m in [Metric::Kl, Metric::Chernoff, Metric::Qjsd, Metric::RootFidelity] {
                assert!((ab.metric(m).unwrap() - rot.metric(m).unwrap()).abs() < 1e-9, "{m}");
            }
        }
    }

    #[test]
    fn fuchs_van_de_graaf_and_chernoff_chain() {
        for t in 0..10 {
            let a = hs(10, 60, 2 * t);
            let b = hs(10, 60, 2 * t + 1);
            let pa = PairAnalysis::new(&a, &b).unwrap();
            let rf = pa.root_fidelity().unwrap();
            let f = rf * rf;
            let d = pa.trace_distance().unwrap();
            let q = pa.chernoff().1;
            assert!(1.0 - rf <= d + 1e-12);
            assert!(d <= (1.0 - f).sqrt() + 1e-12);
            assert!(f <= q + 1e-12 && q <= rf + 1e-12);
        }
    }

    #[test]
    fn classical_metrics() {
        let p = ProbabilityVector::new(vec![0.2, 0.8]).unwrap();
        assert_eq!(l1_halved(&p, &p).unwrap(), 0.0);
        assert!((bhattacharyya(&p, &p).unwrap() - 1.0).abs() < 1e-15);
        assert!(classical_bures(&p, &p).unwrap() < 1e-7);
        assert!(ProbabilityVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbabilityVector::new(vec![-0.1, 1.1]).is_err());
        let q = ProbabilityVector::uniform(3);
        assert!(matches!(l1_halved(&p, &q), Err(Error::DimensionMismatch(2, 3))));
    }

    #[test]
    fn metric_names_round_trip() {
        for m in Metric::ALL {
            assert_eq!(m.name().parse::<Metric>().unwrap(), m);
        }
        assert!("nope".parse::<Metric>().is_err());
    }
}
