//! Two coupled quantum kicked tops.
//!
//! One step is `U = U12 (U1 (x) U2)` with `U_i = exp(-i k Jz^2/(2 j_i))
//! exp(-i (pi/2) Jy)` and `U12 = exp(-i eps/jbar Jz (x) Jz)`. The state is the
//! `N1 x N2` coefficient matrix `C`; the rotations act as `R1 C R2^T` and the
//! kicks and coupling are elementwise phases, so the `N1 N2`-dimensional
//! propagator is never formed.
//!
//! `exp(-i theta Jy)` is real in the `|j, m>` basis, so `C` is stored as two
//! real planes and every product is a real `dgemm`.

use std::f64::consts::FRAC_PI_2;

use nalgebra::DMatrix;
use rand::seq::index;
use serde::Serialize;

use crate::distances::trace_distance;
use crate::ensembles::SeededStream;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, DensityMatrix, HermitianMatrix, PureState, Rescale, Spectrum, C64};
use crate::laws::LimitLaw;
use crate::stats::{ks_distance, par_indexed};

/// Spin quantum number, stored as `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Spin {
    twice_j: u32,
}

impl Spin {
    pub fn new(j: f64) -> Result<Self> {
        let twice = 2.0 * j;
        if !(twice >= 1.0) || twice.fract() != 0.0 || twice > 1e6 {
            return Err(Error::invalid(format!("spin j = {j} must be a positive multiple of 1/2")));
        }
        Ok(Spin {
            twice_j: twice as u32,
        })
    }

    /// Spin with `2j + 1 = n`.
    pub fn from_dim(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("a top needs dimension at least 2"));
        }
        Ok(Spin {
            twice_j: (n - 1) as u32,
        })
    }

    pub fn j(self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    pub fn dim(self) -> usize {
        self.twice_j as usize + 1
    }

    /// `m` of basis index `a`, ascending from `-j`.
    pub fn m(self, a: usize) -> f64 {
        a as f64 - self.j()
    }
}

#[derive(Clone, Debug)]
pub struct SpinOperators {
    pub spin: Spin,
    pub jy: HermitianMatrix,
    /// Diagonal of `Jz`.
    pub jz: Vec<f64>,
}

impl SpinOperators {
    /// `J+` from the ladder matrix elements, then `Jy = (J+ - J-)/(2i)`.
    pub fn new(spin: Spin) -> Self {
        let n = spin.dim();
        let j = spin.j();
        let mut jp = CMatrix::zeros(n, n);
        for a in 0..n - 1 {
            let m = spin.m(a);
            jp[(a + 1, a)] = C64::new((j * (j + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
        }
        let jy = (&jp - jp.adjoint()) / C64::new(0.0, 2.0);
        SpinOperators {
            spin,
            jy: HermitianMatrix::symmetrized(jy),
            jz: (0..n).map(|a| spin.m(a)).collect(),
        }
    }

    pub fn jz_matrix(&self) -> HermitianMatrix {
        HermitianMatrix::from_diagonal(&self.jz)
    }

    /// `exp(-i theta Jy)` by diagonalizing `Jy`. The result is real.
    pub fn rotation(&self, theta: f64) -> Result<DMatrix<f64>> {
        let eig = self.jy.eig()?;
        let v = eig.vectors();
        let phases: Vec<C64> = eig.values().iter().map(|&l| C64::from_polar(1.0, -theta * l)).collect();
        let n = self.spin.dim();
        let mut out = DMatrix::<f64>::zeros(n, n);
        let mut max_imag = 0.0f64;
        for c in 0..n {
            for r in 0..n {
                let z: C64 = (0..n).map(|s| v[(r, s)] * phases[s] * v[(c, s)].conj()).sum();
                out[(r, c)] = z.re;
                max_imag = max_imag.max(z.im.abs());
            }
        }
        if max_imag > 1e-9 {
            return Err(Error::invalid(format!("Jy rotation has imaginary part {max_imag:e}")));
        }
        Ok(out)
    }
}

pub fn build_spin_ops(j: f64) -> Result<SpinOperators> {
    Ok(SpinOperators::new(Spin::new(j)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KickedTopConfig {
    pub j1: f64,
    pub j2: f64,
    pub kick: f64,
    pub eps: f64,
    pub steps: usize,
    /// Basis indices `(l, l')` of the two initial states `|l>|l>`.
    pub initial_pair: (usize, usize),
}

impl KickedTopConfig {
    /// Tops of dimensions `n1` and `n2`.
    pub fn with_dims(n1: usize, n2: usize, kick: f64, eps: f64) -> Result<Self> {
        Ok(KickedTopConfig {
            j1: Spin::from_dim(n1)?.j(),
            j2: Spin::from_dim(n2)?.j(),
            kick,
            eps,
            steps: 0,
            initial_pair: (0, 1),
        })
    }

    /// `c = N2 / N1`.
    pub fn rectangularity(&self) -> f64 {
        (2.0 * self.j2 + 1.0) / (2.0 * self.j1 + 1.0)
    }
}

/// Coefficient matrix of a two-top state, row-major `N1 x N2`, split into
/// real and imaginary planes.
#[derive(Clone, Debug, PartialEq)]
pub struct TopState {
    re: Vec<f64>,
    im: Vec<f64>,
}

impl TopState {
    pub fn norm(&self) -> f64 {
        self.re.iter().chain(&self.im).map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Cached operators for one parameter set.
#[derive(Clone, Debug)]
pub struct KickedTop {
    n1: usize,
    n2: usize,
    /// Row-major rotations.
    r1: Vec<f64>,
    r2: Vec<f64>,
    /// `exp(-i phi_ab)` for the kicks and coupling, row-major.
    phase: Vec<C64>,
}

/// `c = alpha a b + beta c` on row-major (or strided) real matrices.
#[allow(clippy::too_many_arguments)]
fn dgemm(
    m: usize,
    k: usize,
    n: usize,
    a: &[f64],
    (rsa, csa): (usize, usize),
    b: &[f64],
    (rsb, csb): (usize, usize),
    alpha: f64,
    beta: f64,
    c: &mut [f64],
) {
    assert!(a.len() >= m * k && b.len() >= k * n && c.len() >= m * n);
    // SAFETY: the asserted lengths cover every index reachable through the
    // given strides for these shapes.
    unsafe {
        matrixmultiply::dgemm(
            m,
            k,
            n,
            alpha,
            a.as_ptr(),
            rsa as isize,
            csa as isize,
            b.as_ptr(),
            rsb as isize,
            csb as isize,
            beta,
            c.as_mut_ptr(),
            n as isize,
            1,
        );
    }
}

fn row_major(m: &DMatrix<f64>) -> Vec<f64> {
    m.transpose().as_slice().to_vec()
}

impl KickedTop {
    pub fn new(cfg: &KickedTopConfig) -> Result<Self> {
        let (s1, s2) = (Spin::new(cfg.j1)?, Spin::new(cfg.j2)?);
        if !cfg.kick.is_finite() || !cfg.eps.is_finite() {
            return Err(Error::invalid("kick and coupling must be finite"));
        }
        let (o1, o2) = (SpinOperators::new(s1), SpinOperators::new(s2));
        let (n1, n2) = (s1.dim(), s2.dim());
        let jbar = (s1.j() + s2.j()) / 2.0;
        let mut phase = Vec::with_capacity(n1 * n2);
        for &ma in &o1.jz {
            for &mb in &o2.jz {
                let phi = cfg.kick * ma * ma / (2.0 * s1.j()) + cfg.kick * mb * mb / (2.0 * s2.j())
                    + cfg.eps * ma * mb / jbar;
                phase.push(C64::from_polar(1.0, -phi));
            }
        }
        Ok(KickedTop {
            n1,
            n2,
            r1: row_major(&o1.rotation(FRAC_PI_2)?),
            r2: row_major(&o2.rotation(FRAC_PI_2)?),
            phase,
        })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    /// `|l> (x) |l>`.
    pub fn product_basis_state(&self, l: usize) -> Result<TopState> {
        if l >= self.n1.min(self.n2) {
            return Err(Error::invalid(format!(
                "initial index {l} must be below min(N1, N2) = {}",
                self.n1.min(self.n2)
            )));
        }
        let mut re = vec![0.0; self.n1 * self.n2];
        re[l * self.n2 + l] = 1.0;
        Ok(TopState {
            re,
            im: vec![0.0; self.n1 * self.n2],
        })
    }

    pub fn from_pure(&self, psi: &PureState) -> Result<TopState> {
        if psi.dim() != self.n1 * self.n2 {
            return Err(Error::DimensionMismatch(psi.dim(), self.n1 * self.n2));
        }
        let a = psi.amplitudes();
        Ok(TopState {
            re: a.iter().map(|z| z.re).collect(),
            im: a.iter().map(|z| z.im).collect(),
        })
    }

    pub fn to_pure(&self, s: &TopState) -> Result<PureState> {
        let v = CVector::from_iterator(s.re.len(), s.re.iter().zip(&s.im).map(|(&r, &i)| C64::new(r, i)));
        PureState::normalized(v)?.with_split(self.n1, self.n2)
    }

    /// One Floquet step in place. `scratch` must hold `N1 N2` values.
    pub fn step(&self, s: &mut TopState, scratch: &mut Vec<f64>) {
        let (n1, n2) = (self.n1, self.n2);
        scratch.resize(n1 * n2, 0.0);
        for plane in [&mut s.re, &mut s.im] {
            // R1 C
            dgemm(n1, n1, n2, &self.r1, (n1, 1), plane, (n2, 1), 1.0, 0.0, scratch);
            // (R1 C) R2^T
            dgemm(n1, n2, n2, scratch, (n2, 1), &self.r2, (1, n2), 1.0, 0.0, plane);
        }
        for ((re, im), p) in s.re.iter_mut().zip(s.im.iter_mut()).zip(&self.phase) {
            let z = C64::new(*re, *im) * p;
            *re = z.re;
            *im = z.im;
        }
    }

    pub fn floquet_apply(&self, psi: &PureState) -> Result<PureState> {
        let mut s = self.from_pure(psi)?;
        self.step(&mut s, &mut Vec::new());
        self.to_pure(&s)
    }

    /// The full `N1 N2 x N1 N2` propagator, for checking [`KickedTop::step`]
    /// at small spins.
    pub fn dense_floquet(&self) -> CMatrix {
        let (n1, n2) = (self.n1, self.n2);
        let r1 = CMatrix::from_fn(n1, n1, |a, b| C64::new(self.r1[a * n1 + b], 0.0));
        let r2 = CMatrix::from_fn(n2, n2, |a, b| C64::new(self.r2[a * n2 + b], 0.0));
        let mut u = r1.kronecker(&r2);
        for (row, p) in self.phase.iter().enumerate() {
            u.row_mut(row).iter_mut().for_each(|z| *z *= p);
        }
        u
    }

    /// `Tr_2 |psi><psi| = C C^dagger`.
    pub fn reduced(&self, s: &TopState) -> DensityMatrix {
        let (n1, n2) = (self.n1, self.n2);
        let t = (1, n2);
        let r = (n2, 1);
        let mut re = vec![0.0; n1 * n1];
        let mut im = vec![0.0; n1 * n1];
        dgemm(n1, n2, n1, &s.re, r, &s.re, t, 1.0, 0.0, &mut re);
        dgemm(n1, n2, n1, &s.im, r, &s.im, t, 1.0, 1.0, &mut re);
        dgemm(n1, n2, n1, &s.im, r, &s.re, t, 1.0, 0.0, &mut im);
        dgemm(n1, n2, n1, &s.re, r, &s.im, t, -1.0, 1.0, &mut im);
        let m = CMatrix::from_fn(n1, n1, |a, b| C64::new(re[a * n1 + b], im[a * n1 + b]));
        DensityMatrix::from_hermitian_unchecked(HermitianMatrix::symmetrized(m))
    }

    /// Evolves `|l>|l>` and `|l'>|l'>` for `steps` steps and returns the two
    /// reductions to the first top.
    pub fn evolve_pair(&self, (l1, l2): (usize, usize), steps: usize) -> Result<(DensityMatrix, DensityMatrix)> {
        let mut a = self.product_basis_state(l1)?;
        let mut b = self.product_basis_state(l2)?;
        let mut scratch = Vec::new();
        for _ in 0..steps {
            self.step(&mut a, &mut scratch);
            self.step(&mut b, &mut scratch);
        }
        Ok((self.reduced(&a), self.reduced(&b)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelaxationSeries {
    /// `D_Tr(sigma_1(t), sigma_2(t))` for `t = 0..=steps`.
    pub trace_distance: Vec<f64>,
    #[serde(skip)]
    pub final_states: (DensityMatrix, DensityMatrix),
}

impl RelaxationSeries {
    /// First `t` with `|D(t) - target| < band`.
    pub fn first_within(&self, target: f64, band: f64) -> Option<usize> {
        self.trace_distance.iter().position(|d| (d - target).abs() < band)
    }
}

pub fn evolve_reduced_pair(cfg: &KickedTopConfig) -> Result<RelaxationSeries> {
    let (l1, l2) = cfg.initial_pair;
    if l1 == l2 {
        return Err(Error::invalid("initial basis indices must differ"));
    }
    let top = KickedTop::new(cfg)?;
    let mut a = top.product_basis_state(l1)?;
    let mut b = top.product_basis_state(l2)?;
    let mut scratch = Vec::new();
    let mut series = Vec::with_capacity(cfg.steps + 1);
    let (mut sa, mut sb) = (top.reduced(&a), top.reduced(&b));
    series.push(trace_distance(&sa, &sb)?);
    for _ in 0..cfg.steps {
        top.step(&mut a, &mut scratch);
        top.step(&mut b, &mut scratch);
        sa = top.reduced(&a);
        sb = top.reduced(&b);
        series.push(trace_distance(&sa, &sb)?);
    }
    Ok(RelaxationSeries {
        trace_distance: series,
        final_states: (sa, sb),
    })
}

/// `count` distinct index pairs `l < l'` below `limit`.
pub fn draw_initial_pairs(count: usize, limit: usize, stream: SeededStream) -> Result<Vec<(usize, usize)>> {
    let total = limit * limit.saturating_sub(1) / 2;
    if count > total {
        return Err(Error::invalid(format!(
            "{count} realizations requested but only {total} distinct initial pairs exist"
        )));
    }
    let mut rng = stream.rng();
    let mut picks = index::sample(&mut rng, total, count).into_vec();
    picks.sort_unstable();
    Ok(picks.into_iter().map(|p| unrank_pair(p, limit)).collect())
}

/// Inverse of the row-major enumeration of `{(l, l') : l < l' < limit}`.
fn unrank_pair(mut p: usize, limit: usize) -> (usize, usize) {
    let mut l = 0;
    loop {
        let row = limit - 1 - l;
        if p < row {
            return (l, l + 1 + p);
        }
        p -= row;
        l += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HelstromSpectrum {
    pub pairs: Vec<(usize, usize)>,
    /// Eigenvalues of `N2 (sigma_1 - sigma_2)`, one vector per realization.
    pub realizations: Vec<Vec<f64>>,
    pub n1: usize,
    pub n2: usize,
}

impl HelstromSpectrum {
    pub fn pooled(&self) -> Spectrum {
        Spectrum::new(self.realizations.concat())
    }

    /// Drops the `N1 - 2 N2` eigenvalues closest to zero in each realization,
    /// which are zero by rank whenever `2 N2 < N1`.
    pub fn continuous_part(&self) -> Spectrum {
        let keep = self.n1.min(2 * self.n2);
        let mut out = Vec::new();
        for r in &self.realizations {
            let mut v = r.clone();
            v.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
            out.extend_from_slice(&v[..keep]);
        }
        Spectrum::new(out)
    }

    /// KS distance between the continuous part and `SMP(N2/N1)` conditioned
    /// on `y != 0`.
    pub fn ks_to_smp(&self) -> Result<f64> {
        let law = LimitLaw::symmetrized_mp(self.n2 as f64 / self.n1 as f64)?;
        let atom = law.atom0();
        let part = self.continuous_part();
        let v = part.values();
        let cdf: Vec<f64> = law
            .cdf_many(v)?
            .iter()
            .zip(v)
            .map(|(f, &x)| (f - if x >= 0.0 { atom } else { 0.0 }) / (1.0 - atom))
            .collect();
        Ok(ks_distance(v, &cdf))
    }
}

/// Pooled spectra of `Gamma = sigma_1 - sigma_2` after `t` steps, rescaled by
/// the environment dimension `N2` so that they follow `SMP(N2/N1)`. Each
/// realization uses its own initial pair.
pub fn helstrom_spectrum(
    cfg: &KickedTopConfig,
    realizations: usize,
    t: usize,
    stream: SeededStream,
) -> Result<HelstromSpectrum> {
    let top = KickedTop::new(cfg)?;
    let (n1, n2) = top.dims();
    let pairs = draw_initial_pairs(realizations, n1.min(n2), stream)?;
    let spectra = par_indexed(pairs.len(), |i| -> Result<Vec<f64>> {
        let (a, b) = top.evolve_pair(pairs[i], t)?;
        let gamma = &a - &b;
        let s = gamma.spectrum()?.rescaled(Rescale::ByK(n2));
        Ok(s.values().to_vec())
    });
    Ok(HelstromSpectrum {
        pairs,
        realizations: spectra.into_iter().collect::<Result<_>>()?,
        n1,
        n2,
    })
}
