//! Coherence in the computational basis: coarse graining, relative entropy
//! and L1 coherence, the contradiagonal form, and off-diagonal statistics.

use std::f64::consts::PI;

use serde::Serialize;

use crate::ensembles::{induced_with, SeededStream};
use crate::error::{Error, Result};
use crate::linalg::{entropy_of, matmul, CMatrix, DensityMatrix, Field, HermitianMatrix, Op, C64};
use crate::stats::par_indexed;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoherenceReport {
    pub rel_ent: f64,
    pub l1: f64,
    pub basis: String,
}

pub fn coherence_report(rho: &DensityMatrix) -> Result<CoherenceReport> {
    Ok(CoherenceReport {
        rel_ent: rel_ent_coherence(rho)?,
        l1: l1_coherence(rho),
        basis: "computational".into(),
    })
}

/// Drops every off-diagonal element.
pub fn coarse_grain(rho: &DensityMatrix) -> DensityMatrix {
    DensityMatrix::from_hermitian_unchecked(HermitianMatrix::from_diagonal(&rho.diagonal()))
}

/// `S(diag rho) - S(rho)` in nats.
pub fn rel_ent_coherence(rho: &DensityMatrix) -> Result<f64> {
    let diag: Vec<f64> = rho.diagonal().into_iter().map(|p| p.max(0.0)).collect();
    let gap = entropy_of(&diag) - rho.entropy()?;
    Ok(gap.clamp(0.0, (rho.dim() as f64).ln()))
}

pub fn l1_coherence(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let n = rho.dim();
    let mut total = 0.0;
    for j in 0..n {
        for i in 0..n {
            if i != j {
                total += m[(i, j)].norm();
            }
        }
    }
    total
}

/// Unitary Fourier matrix `F_jk = exp(2 pi i jk/N)/sqrt(N)`.
pub fn fourier_matrix(n: usize) -> CMatrix {
    let scale = 1.0 / (n as f64).sqrt();
    CMatrix::from_fn(n, n, |j, k| {
        let phase = 2.0 * PI * ((j * k) % n) as f64 / n as f64;
        C64::from_polar(scale, phase)
    })
}

/// `F^dagger U^dagger rho U F`, with `U` diagonalizing `rho`. Every diagonal
/// entry of the result is `1/N`.
pub fn contradiagonal_form(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let eig = rho.eig()?;
    let umax = matmul(eig.vectors(), Op::Identity, &fourier_matrix(rho.dim()), Op::Identity);
    // conjugate_by computes V rho V^dagger, so pass V = U_max^dagger
    let v = umax.adjoint();
    Ok(rho.conjugate_by(&v))
}

/// Pooled `N^{3/2} |rho_ij|` over `i < j` of HS-random states. For a Wishart
/// matrix normalized to unit trace this is `sqrt(N)` times the modulus of an
/// entry of `N rho`, which is asymptotically chi-distributed (2 degrees of
/// freedom for complex, 1 for real).
pub fn offdiag_samples(field: Field, n: usize, samples: usize, stream: SeededStream) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::invalid("off-diagonal statistics need N >= 2"));
    }
    let scale = (n as f64).powf(1.5);
    let per: Vec<Vec<f64>> = par_indexed(samples, |s| {
        let mut rng = stream.with_index(stream.stream_index.wrapping_add(s as u64)).rng();
        let rho = induced_with(&mut rng, n, n, field);
        let m = rho.matrix();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for j in 1..n {
            for i in 0..j {
                out.push(scale * m[(i, j)].norm());
            }
        }
        out
    });
    Ok(per.concat())
}

/// Limiting density of the rescaled off-diagonal moduli.
pub fn offdiag_density(field: Field, y: f64) -> f64 {
    if y < 0.0 {
        return 0.0;
    }
    match field {
        Field::Complex => 2.0 * y * (-y * y).exp(),
        Field::Real => (2.0 / PI).sqrt() * (-y * y / 2.0).exp(),
    }
}

pub fn offdiag_cdf(field: Field, y: f64) -> f64 {
    if y <= 0.0 {
        return 0.0;
    }
    match field {
        Field::Complex => 1.0 - (-y * y).exp(),
        Field::Real => libm::erf(y / 2f64.sqrt()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    /// Normalized so that `sum(density) * width` is the in-range fraction.
    pub density: Vec<f64>,
    pub count: usize,
}

impl Histogram {
    pub fn new(values: &[f64], lo: f64, hi: f64, bins: usize) -> Result<Self> {
        if !(hi > lo) || bins == 0 {
            return Err(Error::invalid("histogram needs lo < hi and at least one bin"));
        }
        let width = (hi - lo) / bins as f64;
        let mut counts = vec![0usize; bins];
        for &v in values {
            if v >= lo && v < hi {
                counts[(((v - lo) / width) as usize).min(bins - 1)] += 1;
            }
        }
        let norm = values.len().max(1) as f64 * width;
        Ok(Histogram {
            lo,
            hi,
            density: counts.iter().map(|&c| c as f64 / norm).collect(),
            count: values.len(),
        })
    }

    pub fn width(&self) -> f64 {
        (self.hi - self.lo) / self.density.len() as f64
    }

    pub fn centers(&self) -> Vec<f64> {
        let w = self.width();
        (0..self.density.len()).map(|i| self.lo + (i as f64 + 0.5) * w).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{haar_unitary_with, sample_haar_pure, sample_induced};
    use crate::linalg::PureState;
    use crate::stats::ks_against;

    #[test]
    fn coarse_graining_basics() {
        let d = DensityMatrix::from_diagonal(&[0.2, 0.3, 0.5]).unwrap();
        assert_eq!(coarse_grain(&d).diagonal(), d.diagonal());
        assert_eq!(rel_ent_coherence(&d).unwrap(), 0.0);
        assert_eq!(l1_coherence(&d), 0.0);

        let plus = PureState::uniform(4).projector();
        let cg = coarse_grain(&plus);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 0.25 } else { 0.0 };
                assert!((cg.matrix()[(i, j)] - C64::new(want, 0.0)).norm() < 1e-15);
            }
        }
        let cg2 = coarse_grain(&cg);
        assert_eq!(cg2.matrix(), cg.matrix());

        let plus2 = PureState::uniform(2).projector();
        assert!((rel_ent_coherence(&plus2).unwrap() - 2f64.ln()).abs() < 1e-12);
        assert!((l1_coherence(&plus2) - 1.0).abs() < 1e-12);
        let basis = PureState::basis(3, 1).unwrap().projector();
        assert!(rel_ent_coherence(&basis).unwrap().abs() < 1e-12);
    }

    #[test]
    fn fourier_is_unitary() {
        let f = fourier_matrix(7);
        let ff = matmul(&f, Op::Adjoint, &f, Op::Identity);
        assert!((ff - CMatrix::identity(7, 7)).norm() < 1e-13);
    }

    #[test]
    fn contradiagonal_form_is_flat_and_maximal() {
        let n = 8;
        for s in 0..20u64 {
            let rho = sample_induced(n, n, SeededStream::new(5, s)).unwrap();
            let c = contradiagonal_form(&rho).unwrap();
            for d in c.diagonal() {
                assert!((d - 1.0 / n as f64).abs() < 1e-10);
            }
            let (a, b) = (rho.spectrum().unwrap(), c.spectrum().unwrap());
            for (x, y) in a.values().iter().zip(b.values()) {
                assert!((x - y).abs() < 1e-12);
            }
            let max = rel_ent_coherence(&c).unwrap();
            let want = (n as f64).ln() - rho.entropy().unwrap();
            assert!((max - want).abs() < 1e-10);
            let mut rng = SeededStream::new(6, s).rng();
            for _ in 0..50 {
                let u = haar_unitary_with(&mut rng, n);
                assert!(rel_ent_coherence(&rho.conjugate_by(&u)).unwrap() <= max + 1e-12);
            }
        }
        let mixed = DensityMatrix::maximally_mixed(5);
        for d in contradiagonal_form(&mixed).unwrap().diagonal() {
            assert!((d - 0.2).abs() < 1e-12);
        }
    }

    #[test]
    fn contradiagonal_pure_state_has_maximal_l1() {
        let n = 64;
        let psi = sample_haar_pure(n, Field::Complex, SeededStream::new(1, 0)).unwrap();
        let c = contradiagonal_form(&psi.projector()).unwrap();
        let l1 = l1_coherence(&c);
        assert!((l1 / (n as f64 - 1.0) - 1.0).abs() < 0.02, "{l1}");
    }

    #[test]
    fn offdiagonal_chi_laws() {
        let n = 64;
        for field in [Field::Complex, Field::Real] {
            let ys = offdiag_samples(field, n, 20, SeededStream::new(9, 0)).unwrap();
            let d = ks_against(&ys, |y| offdiag_cdf(field, y));
            assert!(d < 0.03, "{field:?}: {d}");
        }
        let ys = offdiag_samples(Field::Complex, n, 20, SeededStream::new(9, 100)).unwrap();
        let mean = ys.iter().sum::<f64>() / ys.len() as f64;
        assert!((mean - PI.sqrt() / 2.0).abs() < 0.02);
    }

    #[test]
    fn chi_cdfs_integrate_their_densities() {
        use crate::quad::{integrate, Tolerance};
        for field in [Field::Complex, Field::Real] {
            for y in [0.3, 1.0, 2.5] {
                let q = integrate(|t| offdiag_density(field, t), 0.0, y, &[], Tolerance::default()).unwrap();
                let diff = (q.value - offdiag_cdf(field, y)).abs();
                assert!(diff < 1e-12, "{field:?} {y}: {diff}");
            }
        }
    }

    #[test]
    fn histogram_normalization() {
        let xs: Vec<f64> = (0..1000).map(|i| i as f64 / 1000.0).collect();
        let h = Histogram::new(&xs, 0.0, 1.0, 10).unwrap();
        let total: f64 = h.density.iter().sum::<f64>() * h.width();
        assert!((total - 1.0).abs() < 1e-12);
        assert_eq!(h.centers()[0], 0.05);
    }
}
