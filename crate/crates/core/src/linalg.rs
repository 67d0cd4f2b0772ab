//! Dense complex Hermitian linear algebra.
//!
//! Everything downstream works with three types: [`HermitianMatrix`] (any
//! self-adjoint matrix, e.g. a Helstrom matrix `rho - sigma`), [`DensityMatrix`]
//! (unit trace, positive semidefinite, optionally carrying a bipartite split)
//! and [`PureState`]. Spectra come back as a [`Spectrum`], sorted ascending.
//!
//! Matrices are stored column-major in `nalgebra` containers; the complex
//! products that dominate the runtime go through `matrixmultiply::zgemm`.

use std::ops::{Add, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Relative tolerance on `max |A_ij - conj(A_ji)|`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues down to `-PSD_TOL` are accepted and clipped to zero.
pub const PSD_TOL: f64 = 1e-10;
/// Absolute tolerance on the trace of a density matrix.
pub const TRACE_TOL: f64 = 1e-12;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// How an operand enters [`matmul`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Identity,
    Transpose,
    Adjoint,
}

/// `op_a(a) * op_b(b)` via the blocked complex GEMM kernel.
pub fn matmul(a: &CMatrix, op_a: Op, b: &CMatrix, op_b: Op) -> CMatrix {
    let (m, k) = op_shape(a, op_a);
    let (k2, n) = op_shape(b, op_b);
    assert_eq!(k, k2, "inner dimensions differ in matmul");
    let mut c = CMatrix::zeros(m, n);
    if m == 0 || n == 0 || k == 0 {
        return c;
    }
    // the kernel has no conjugation flag, so adjoints go through a conjugated copy
    let a_conj;
    let a_src = if op_a == Op::Adjoint {
        a_conj = a.conjugate();
        &a_conj
    } else {
        a
    };
    let b_conj;
    let b_src = if op_b == Op::Adjoint {
        b_conj = b.conjugate();
        &b_conj
    } else {
        b
    };
    let (rsa, csa) = op_strides(a, op_a);
    let (rsb, csb) = op_strides(b, op_b);
    // SAFETY: Complex<f64> is repr(C) {re, im}, the same layout as [f64; 2];
    // strides describe the column-major storage of each operand, and `c` is a
    // freshly allocated m x n column-major buffer.
    unsafe {
        matrixmultiply::zgemm(
            matrixmultiply::CGemmOption::Standard,
            matrixmultiply::CGemmOption::Standard,
            m,
            k,
            n,
            [1.0, 0.0],
            a_src.as_ptr() as *const [f64; 2],
            rsa,
            csa,
            b_src.as_ptr() as *const [f64; 2],
            rsb,
            csb,
            [0.0, 0.0],
            c.as_mut_ptr() as *mut [f64; 2],
            1,
            m as isize,
        );
    }
    c
}

fn op_shape(a: &CMatrix, op: Op) -> (usize, usize) {
    match op {
        Op::Identity => (a.nrows(), a.ncols()),
        Op::Transpose | Op::Adjoint => (a.ncols(), a.nrows()),
    }
}

fn op_strides(a: &CMatrix, op: Op) -> (isize, isize) {
    let ld = a.nrows() as isize;
    match op {
        Op::Identity => (1, ld),
        Op::Transpose | Op::Adjoint => (ld, 1),
    }
}

/// `max_ij |A_ij - conj(A_ji)|`.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut defect = 0.0f64;
    for j in 0..n {
        for i in 0..=j {
            defect = defect.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    defect
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `x ln x` with the convention `0 ln 0 = 0`; negative inputs are clipped.
pub fn xlogx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// Shannon/von Neumann entropy (nats) of a list of weights.
pub fn entropy_of(weights: &[f64]) -> f64 {
    -weights.iter().map(|&w| xlogx(w)).sum::<f64>()
}

/// A self-adjoint complex matrix.
#[derive(Clone, Debug)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    /// Validates the conjugate symmetry and then symmetrizes exactly.
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        let scale = max_abs(&m);
        let tolerance = HERMITIAN_TOL * scale.max(f64::MIN_POSITIVE);
        let defect = hermitian_defect(&m);
        if defect > tolerance {
            return Err(Error::NotHermitian { defect, tolerance });
        }
        Ok(Self::symmetrized(m))
    }

    /// Skips validation; used where the construction is Hermitian up to roundoff.
    pub(crate) fn symmetrized(m: CMatrix) -> Self {
        let n = m.nrows();
        let mut m = m;
        for j in 0..n {
            m[(j, j)] = C64::new(m[(j, j)].re, 0.0);
            for i in 0..j {
                let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
                m[(i, j)] = avg;
                m[(j, i)] = avg.conj();
            }
        }
        HermitianMatrix(m)
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        let n = d.len();
        HermitianMatrix(CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(d[i], 0.0)
            } else {
                ZERO
            }
        }))
    }

    pub fn zeros(n: usize) -> Self {
        HermitianMatrix(CMatrix::zeros(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.0[(i, i)].re).sum()
    }

    pub fn scale(&self, a: f64) -> Self {
        HermitianMatrix(self.0.map(|z| z * a))
    }

    pub fn eig(&self) -> Result<Eigen> {
        eig_hermitian(self)
    }

    /// Ascending eigenvalues, unscaled.
    pub fn spectrum(&self) -> Result<Spectrum> {
        Ok(Spectrum::new(self.eig()?.values))
    }

    /// `sum |lambda_i|`.
    pub fn trace_norm(&self) -> Result<f64> {
        Ok(self.spectrum()?.values().iter().map(|l| l.abs()).sum())
    }

    /// `sqrt(sum lambda_i^2) = sqrt(Tr A^2)`; no eigensolve needed.
    pub fn hs_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |lambda_i|`.
    pub fn op_norm(&self) -> Result<f64> {
        let s = self.spectrum()?;
        Ok(s.values().iter().fold(0.0f64, |acc, l| acc.max(l.abs())))
    }

    /// `U A U^dagger`.
    pub fn conjugate_by(&self, u: &CMatrix) -> Self {
        let ua = matmul(u, Op::Identity, &self.0, Op::Identity);
        Self::symmetrized(matmul(&ua, Op::Identity, u, Op::Adjoint))
    }
}

impl Sub for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn sub(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in subtraction");
        HermitianMatrix(&self.0 - &rhs.0)
    }
}

impl Add for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn add(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in addition");
        HermitianMatrix(&self.0 + &rhs.0)
    }
}

/// Eigendecomposition `A = V diag(values) V^dagger`, values ascending.
#[derive(Clone, Debug)]
pub struct Eigen {
    values: Vec<f64>,
    vectors: CMatrix,
}

impl Eigen {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Columns are the eigenvectors, in the order of [`Eigen::values`].
    pub fn vectors(&self) -> &CMatrix {
        &self.vectors
    }

    /// `V diag(f(lambda)) V^dagger`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let mut scaled = self.vectors.clone();
        for (j, &l) in self.values.iter().enumerate() {
            let fl = f(l);
            scaled.column_mut(j).iter_mut().for_each(|z| *z *= fl);
        }
        HermitianMatrix::symmetrized(matmul(&scaled, Op::Identity, &self.vectors, Op::Adjoint))
    }

    /// [`Eigen::map`] applied to [`Eigen::support_values`].
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let clipped = self.support_values();
        let mut scaled = self.vectors.clone();
        for (j, &l) in clipped.iter().enumerate() {
            let fl = f(l);
            scaled.column_mut(j).iter_mut().for_each(|z| *z *= fl);
        }
        HermitianMatrix::symmetrized(matmul(&scaled, Op::Identity, &self.vectors, Op::Adjoint))
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.map(|l| l).into_matrix()
    }

    /// Values clipped at zero, for consumers needing logs or roots.
    pub fn clipped_values(&self) -> Vec<f64> {
        self.values.iter().map(|&l| l.max(0.0)).collect()
    }

    /// Values with the numerical kernel set to zero, see [`rank_clip`].
    pub fn support_values(&self) -> Vec<f64> {
        rank_clip(&self.values)
    }
}

/// Zeroes every value at or below `n eps max|v|`, the numerical-rank cutoff.
/// Roots and fractional powers of a spectrum go through this: a roundoff
/// eigenvalue of 1e-17 would otherwise contribute its square root, 3e-9.
pub fn rank_clip(values: &[f64]) -> Vec<f64> {
    let top = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let cut = values.len() as f64 * f64::EPSILON * top;
    values.iter().map(|&v| if v > cut { v } else { 0.0 }).collect()
}

/// Hermitian eigendecomposition with ascending eigenvalues.
pub fn eig_hermitian(a: &HermitianMatrix) -> Result<Eigen> {
    let n = a.dim();
    if n == 0 {
        return Ok(Eigen {
            values: Vec::new(),
            vectors: CMatrix::zeros(0, 0),
        });
    }
    let decomposition = SymmetricEigen::try_new(a.0.clone(), f64::EPSILON, 10_000 * n).ok_or(
        Error::EigenNoConvergence {
            dim: n,
            max_abs: max_abs(&a.0),
        },
    )?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        decomposition.eigenvalues[i].total_cmp(&decomposition.eigenvalues[j])
    });
    let values = order.iter().map(|&i| decomposition.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| decomposition.eigenvectors[(r, order[c])]);
    Ok(Eigen { values, vectors })
}

/// Scale convention attached to a [`Spectrum`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rescale {
    None,
    /// `t = N lambda`.
    ByN(usize),
    /// `x = K lambda`, with `K` the environment dimension.
    ByK(usize),
}

impl Rescale {
    pub fn factor(self) -> f64 {
        match self {
            Rescale::None => 1.0,
            Rescale::ByN(n) => n as f64,
            Rescale::ByK(k) => k as f64,
        }
    }
}

/// Sorted eigenvalue sample, possibly rescaled.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    rescale: Rescale,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Spectrum {
            values,
            rescale: Rescale::None,
        }
    }

    /// Pools several spectra into one empirical measure. All inputs must share a scale.
    pub fn pooled<'a>(parts: impl IntoIterator<Item = &'a Spectrum>) -> Result<Self> {
        let mut values = Vec::new();
        let mut rescale = None;
        for part in parts {
            match rescale {
                None => rescale = Some(part.rescale),
                Some(r) if r != part.rescale => {
                    return Err(Error::invalid("cannot pool spectra with different scales"))
                }
                _ => {}
            }
            values.extend_from_slice(&part.values);
        }
        let mut s = Spectrum::new(values);
        s.rescale = rescale.unwrap_or(Rescale::None);
        Ok(s)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn rescale(&self) -> Rescale {
        self.rescale
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Re-expresses the sample in another scale convention.
    pub fn rescaled(mut self, rescale: Rescale) -> Self {
        let ratio = rescale.factor() / self.rescale.factor();
        self.values.iter_mut().for_each(|v| *v *= ratio);
        self.rescale = rescale;
        self
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.sum() / self.values.len() as f64
    }
}

/// Real or complex amplitudes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Field {
    Real,
    Complex,
}

/// Which tensor factor an operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Scalar function applied through the spectral decomposition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MatrixFunction {
    Sqrt,
    Log,
    Power(f64),
}

fn check_split(dim: usize, na: usize, nb: usize) -> Result<()> {
    if na == 0 || nb == 0 || na * nb != dim {
        return Err(Error::BadSplit { na, nb, dim });
    }
    Ok(())
}

/// Unit vector, optionally with a bipartite split `N = N_A * N_B`.
///
/// Amplitude index `i * N_B + j` corresponds to `|i>_A |j>_B`.
#[derive(Clone, Debug)]
pub struct PureState {
    amps: CVector,
    field: Field,
    split: Option<(usize, usize)>,
}

impl PureState {
    /// Checks the norm to `1e-12`.
    pub fn new(amps: CVector) -> Result<Self> {
        let norm = amps.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(norm * norm));
        }
        let field = if amps.iter().all(|z| z.im == 0.0) {
            Field::Real
        } else {
            Field::Complex
        };
        Ok(PureState {
            amps,
            field,
            split: None,
        })
    }

    pub(crate) fn from_normalized(amps: CVector, field: Field) -> Self {
        PureState {
            amps,
            field,
            split: None,
        }
    }

    /// Normalizes a nonzero vector.
    pub fn normalized(amps: CVector) -> Result<Self> {
        let norm = amps.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::invalid("cannot normalize a zero or non-finite vector"));
        }
        Self::new(amps / C64::new(norm, 0.0))
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::invalid(format!("basis index {index} out of range for N = {n}")));
        }
        let mut amps = CVector::zeros(n);
        amps[index] = ONE;
        Ok(PureState::from_normalized(amps, Field::Real))
    }

    /// Uniform superposition `sum_i |i> / sqrt(N)`.
    pub fn uniform(n: usize) -> Self {
        let a = 1.0 / (n as f64).sqrt();
        PureState::from_normalized(CVector::from_element(n, C64::new(a, 0.0)), Field::Real)
    }

    /// `sum_i |ii> / sqrt(N)` on `N x N`.
    pub fn maximally_entangled(n: usize) -> Self {
        let mut amps = CVector::zeros(n * n);
        let a = 1.0 / (n as f64).sqrt();
        for i in 0..n {
            amps[i * n + i] = C64::new(a, 0.0);
        }
        PureState {
            amps,
            field: Field::Real,
            split: Some((n, n)),
        }
    }

    /// `|a> (x) |b>`.
    pub fn product(a: &PureState, b: &PureState) -> Self {
        let (na, nb) = (a.dim(), b.dim());
        let amps = CVector::from_fn(na * nb, |idx, _| a.amps[idx / nb] * b.amps[idx % nb]);
        let field = if a.field == Field::Real && b.field == Field::Real {
            Field::Real
        } else {
            Field::Complex
        };
        PureState {
            amps,
            field,
            split: Some((na, nb)),
        }
    }

    pub fn with_split(mut self, na: usize, nb: usize) -> Result<Self> {
        check_split(self.dim(), na, nb)?;
        self.split = Some((na, nb));
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn split(&self) -> Option<(usize, usize)> {
        self.split
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    /// `|<i|psi>|^2` in the computational basis.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Amplitudes reshaped to the `N_A x N_B` coefficient matrix.
    pub fn coefficient_matrix(&self) -> Result<CMatrix> {
        let (na, nb) = self.split.ok_or(Error::MissingSplit)?;
        Ok(CMatrix::from_fn(na, nb, |i, j| self.amps[i * nb + j]))
    }

    /// Reduced state after tracing out `traced`.
    pub fn reduced_state(&self, traced: Subsystem) -> Result<DensityMatrix> {
        let c = self.coefficient_matrix()?;
        let reduced = match traced {
            Subsystem::B => matmul(&c, Op::Identity, &c, Op::Adjoint),
            Subsystem::A => matmul(&c, Op::Transpose, &c.conjugate(), Op::Identity),
        };
        Ok(DensityMatrix::from_hermitian_unchecked(
            HermitianMatrix::symmetrized(reduced),
        ))
    }

    /// Squared Schmidt coefficients, ascending.
    pub fn schmidt_coefficients(&self) -> Result<Vec<f64>> {
        let (na, nb) = self.split.ok_or(Error::MissingSplit)?;
        let traced = if na <= nb { Subsystem::B } else { Subsystem::A };
        Ok(self.reduced_state(traced)?.eig()?.clipped_values())
    }

    /// `|psi><psi|`, keeping the split.
    pub fn projector(&self) -> DensityMatrix {
        let col = CMatrix::from_column_slice(self.dim(), 1, self.amps.as_slice());
        let m = matmul(&col, Op::Identity, &col, Op::Adjoint);
        DensityMatrix {
            h: HermitianMatrix::symmetrized(m),
            split: self.split,
        }
    }

    pub fn inner(&self, other: &PureState) -> C64 {
        self.amps.dotc(&other.amps)
    }
}

/// Unit-trace positive semidefinite Hermitian matrix.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    h: HermitianMatrix,
    split: Option<(usize, usize)>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace, and positivity (one eigensolve).
    pub fn new(m: CMatrix) -> Result<Self> {
        let h = HermitianMatrix::new(m)?;
        let tr = h.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotNormalized(tr));
        }
        let lowest = h.spectrum()?.values().first().copied().unwrap_or(0.0);
        if lowest < -PSD_TOL {
            return Err(Error::NotPositive(lowest));
        }
        Ok(DensityMatrix { h, split: None })
    }

    pub(crate) fn from_hermitian_unchecked(h: HermitianMatrix) -> Self {
        DensityMatrix { h, split: None }
    }

    /// `I / N`.
    pub fn maximally_mixed(n: usize) -> Self {
        Self::from_hermitian_unchecked(HermitianMatrix::from_diagonal(&vec![1.0 / n as f64; n]))
    }

    /// Diagonal state with the given probabilities.
    pub fn from_diagonal(p: &[f64]) -> Result<Self> {
        if let Some(&neg) = p.iter().find(|&&x| x < -PSD_TOL) {
            return Err(Error::NotPositive(neg));
        }
        let tr: f64 = p.iter().sum();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotNormalized(tr));
        }
        Ok(Self::from_hermitian_unchecked(HermitianMatrix::from_diagonal(p)))
    }

    pub fn with_split(mut self, na: usize, nb: usize) -> Result<Self> {
        check_split(self.dim(), na, nb)?;
        self.split = Some((na, nb));
        Ok(self)
    }

    pub fn split(&self) -> Option<(usize, usize)> {
        self.split
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        self.h.matrix()
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.h
    }

    pub fn trace(&self) -> f64 {
        self.h.trace()
    }

    pub fn eig(&self) -> Result<Eigen> {
        self.h.eig()
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        self.h.spectrum()
    }

    /// `Tr rho^2`.
    pub fn purity(&self) -> f64 {
        self.h.hs_norm().powi(2)
    }

    /// von Neumann entropy in nats.
    pub fn entropy(&self) -> Result<f64> {
        Ok(entropy_of(&self.eig()?.clipped_values()))
    }

    /// Applies `f` on the clipped spectrum. `Log` fails on a zero eigenvalue.
    pub fn matrix_function(&self, f: MatrixFunction) -> Result<HermitianMatrix> {
        let e = self.eig()?;
        match f {
            MatrixFunction::Sqrt => Ok(e.map_values(|l| l.sqrt())),
            // zero eigenvalues stay zero, so power(0) is the support projector
            MatrixFunction::Power(s) => Ok(e.map_values(|l| if l > 0.0 { l.powf(s) } else { 0.0 })),
            MatrixFunction::Log => {
                if let Some(&low) = e.values().first() {
                    if low <= PSD_TOL {
                        return Err(Error::Singular(low));
                    }
                }
                Ok(e.map(f64::ln))
            }
        }
    }

    /// Traces out `traced`, keeping the other factor.
    pub fn partial_trace(&self, traced: Subsystem) -> Result<DensityMatrix> {
        let (na, nb) = self.split.ok_or(Error::MissingSplit)?;
        let m = self.matrix();
        let out = match traced {
            Subsystem::B => CMatrix::from_fn(na, na, |i, k| {
                (0..nb).map(|j| m[(i * nb + j, k * nb + j)]).sum()
            }),
            Subsystem::A => CMatrix::from_fn(nb, nb, |j, l| {
                (0..na).map(|i| m[(i * nb + j, i * nb + l)]).sum()
            }),
        };
        Ok(DensityMatrix::from_hermitian_unchecked(
            HermitianMatrix::symmetrized(out),
        ))
    }

    /// Partial transpose on the first factor, `rho^{T_A}`.
    pub fn partial_transpose(&self) -> Result<HermitianMatrix> {
        let (na, nb) = self.split.ok_or(Error::MissingSplit)?;
        let m = self.matrix();
        let out = CMatrix::from_fn(na * nb, na * nb, |r, c| {
            let (i, j) = (r / nb, r % nb);
            let (k, l) = (c / nb, c % nb);
            m[(k * nb + j, i * nb + l)]
        });
        Ok(HermitianMatrix::symmetrized(out))
    }

    /// `rho (x) sigma` with the split recorded.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let m = self.matrix().kronecker(other.matrix());
        DensityMatrix {
            h: HermitianMatrix::symmetrized(m),
            split: Some((self.dim(), other.dim())),
        }
    }

    /// `U rho U^dagger`, keeping the split.
    pub fn conjugate_by(&self, u: &CMatrix) -> DensityMatrix {
        DensityMatrix {
            h: self.h.conjugate_by(u),
            split: self.split,
        }
    }

    /// Real part of the diagonal.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix()[(i, i)].re).collect()
    }

    /// Convex combination `w rho + (1 - w) sigma`.
    pub fn mix(&self, other: &DensityMatrix, w: f64) -> Result<DensityMatrix> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        let m = self.matrix() * C64::new(w, 0.0) + other.matrix() * C64::new(1.0 - w, 0.0);
        Ok(DensityMatrix {
            h: HermitianMatrix::symmetrized(m),
            split: self.split,
        })
    }
}

impl Sub for &DensityMatrix {
    type Output = HermitianMatrix;
    fn sub(self, rhs: &DensityMatrix) -> HermitianMatrix {
        &self.h - &rhs.h
    }
}
