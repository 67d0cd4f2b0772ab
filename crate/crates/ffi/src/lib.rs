//! C ABI over `qdist`.
//!
//! States and laws cross the boundary as opaque heap handles. Every fallible
//! call returns a [`QdStatus`] and writes its result through an out pointer;
//! the message of the last failure on the calling thread is kept for
//! [`qd_last_error_message`]. Panics are caught at the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use qdist::coherence::{l1_coherence, rel_ent_coherence};
use qdist::distances::{Metric, PairAnalysis};
use qdist::ensembles::{sample_induced, sample_induced_real, SeededStream};
use qdist::entanglement::negativity;
use qdist::laws::LimitLaw;
use qdist::linalg::{CMatrix, DensityMatrix};
use qdist::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Numerical = 3,
    BufferTooSmall = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QdField {
    Real = 0,
    Complex = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QdMetric {
    Trace = 0,
    HilbertSchmidt = 1,
    Operator = 2,
    Transmission = 3,
    Bures = 4,
    Entropic = 5,
    Hellinger = 6,
    /// `S(a || b)`, may be `+inf`.
    RelativeEntropy = 7,
    Chernoff = 8,
    RootFidelity = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QdLawKind {
    /// Marchenko-Pastur with ratio `c`.
    MarchenkoPastur = 0,
    /// Law of `K (rho - sigma)` for independent induced states, `c = K/N`.
    SymmetrizedMp = 1,
    /// Shifted semicircle centered at `c`, radius `2 sqrt(c)`.
    ShiftedSemicircle = 2,
    /// Fuss-Catalan of order 2; `c` is ignored.
    FussCatalan2 = 3,
}

/// A density matrix, optionally with a bipartite split.
pub struct QdState(DensityMatrix);

/// A limiting spectral law.
pub struct QdLaw(LimitLaw);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: QdStatus, msg: impl Into<String>) -> QdStatus {
    set_error(msg);
    status
}

impl From<Error> for QdStatus {
    fn from(e: Error) -> Self {
        let status = if e.is_numerical() {
            QdStatus::Numerical
        } else {
            QdStatus::InvalidArgument
        };
        fail(status, e.to_string())
    }
}

/// Runs `f`, mapping errors and panics to a status.
fn guard(f: impl FnOnce() -> Result<(), QdStatus>) -> QdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QdStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(QdStatus::Panic, format!("panic: {msg}"))
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, QdStatus> {
    p.as_ref()
        .ok_or_else(|| fail(QdStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), QdStatus> {
    if out.is_null() {
        return Err(fail(QdStatus::NullPointer, "output pointer is null"));
    }
    out.write(v);
    Ok(())
}

/// Boxes `v` into `out`; checks the pointer first so nothing leaks.
unsafe fn emit<T>(out: *mut *mut T, v: T) -> Result<(), QdStatus> {
    if out.is_null() {
        return Err(fail(QdStatus::NullPointer, "output pointer is null"));
    }
    out.write(Box::into_raw(Box::new(v)));
    Ok(())
}

fn dim_product(n: usize) -> Result<usize, QdStatus> {
    n.checked_mul(n)
        .ok_or_else(|| fail(QdStatus::InvalidArgument, format!("dimension {n} overflows")))
}

fn metric_of(m: QdMetric) -> Metric {
    match m {
        QdMetric::Trace => Metric::Tr,
        QdMetric::HilbertSchmidt => Metric::Hs,
        QdMetric::Operator => Metric::Inf,
        QdMetric::Transmission => Metric::T,
        QdMetric::Bures => Metric::B,
        QdMetric::Entropic => Metric::E,
        QdMetric::Hellinger => Metric::H,
        QdMetric::RelativeEntropy => Metric::Kl,
        QdMetric::Chernoff => Metric::Chernoff,
        QdMetric::RootFidelity => Metric::RootFidelity,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Length in bytes of the last error message on this thread, without the
/// terminator; 0 when there is none.
#[no_mangle]
pub extern "C" fn qd_last_error_length() -> usize {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(0, |s| s.as_bytes().len()))
}

/// Copies the last error message, NUL-terminated, into `buf`.
///
/// # Safety
/// `buf` must be valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn qd_last_error_message(buf: *mut c_char, cap: usize) -> QdStatus {
    if buf.is_null() {
        return QdStatus::NullPointer;
    }
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let bytes = e.as_ref().map_or(&[0u8][..], |s| s.as_bytes_with_nul());
        if bytes.len() > cap {
            return QdStatus::BufferTooSmall;
        }
        ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, bytes.len());
        QdStatus::Ok
    })
}

/// Draws an `n x n` state from the induced measure with environment `k`.
/// The pair `(seed, stream)` fixes the draw.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qd_state_sample_induced(
    n: usize,
    k: usize,
    field: QdField,
    seed: u64,
    stream: u64,
    out: *mut *mut QdState,
) -> QdStatus {
    guard(|| {
        let s = SeededStream::new(seed, stream);
        let rho = match field {
            QdField::Complex => sample_induced(n, k, s)?,
            QdField::Real => sample_induced_real(n, k, s)?,
        };
        emit(out, QdState(rho))
    })
}

/// Builds a state from column-major real and imaginary parts of length
/// `n * n`. `im` may be null for a real matrix. The input is validated.
///
/// # Safety
/// `re` (and `im` when non-null) must be valid for `n * n` reads.
#[no_mangle]
pub unsafe extern "C" fn qd_state_from_matrix(
    n: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut QdState,
) -> QdStatus {
    guard(|| {
        let len = dim_product(n)?;
        if n == 0 {
            return Err(fail(QdStatus::InvalidArgument, "dimension must be positive"));
        }
        deref(re, "re")?;
        let re = std::slice::from_raw_parts(re, len);
        let im = if im.is_null() {
            None
        } else {
            Some(std::slice::from_raw_parts(im, len))
        };
        let m = CMatrix::from_fn(n, n, |i, j| {
            let idx = i + j * n;
            Complex64::new(re[idx], im.map_or(0.0, |v| v[idx]))
        });
        let rho = DensityMatrix::new(m)?;
        emit(out, QdState(rho))
    })
}

/// Diagonal state with probabilities `p[0..n]`.
///
/// # Safety
/// `p` must be valid for `n` reads.
#[no_mangle]
pub unsafe extern "C" fn qd_state_from_diagonal(p: *const f64, n: usize, out: *mut *mut QdState) -> QdStatus {
    guard(|| {
        deref(p, "p")?;
        let rho = DensityMatrix::from_diagonal(std::slice::from_raw_parts(p, n))?;
        emit(out, QdState(rho))
    })
}

/// Frees a state; null is a no-op.
///
/// # Safety
/// `state` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qd_state_free(state: *mut QdState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Declares the state bipartite as `na x nb`.
///
/// # Safety
/// `state` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qd_state_set_split(state: *mut QdState, na: usize, nb: usize) -> QdStatus {
    guard(|| {
        let s = state
            .as_mut()
            .ok_or_else(|| fail(QdStatus::NullPointer, "state is null"))?;
        s.0 = s.0.clone().with_split(na, nb)?;
        Ok(())
    })
}

/// # Safety
/// `state` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qd_state_dim(state: *const QdState, out: *mut usize) -> QdStatus {
    guard(|| write(out, deref(state, "state")?.0.dim()))
}

/// Writes the ascending eigenvalues into `out[0..dim]`.
///
/// # Safety
/// `out` must be valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn qd_state_spectrum(state: *const QdState, out: *mut f64, cap: usize) -> QdStatus {
    guard(|| {
        let s = deref(state, "state")?;
        if out.is_null() {
            return Err(fail(QdStatus::NullPointer, "output pointer is null"));
        }
        if cap < s.0.dim() {
            return Err(fail(
                QdStatus::BufferTooSmall,
                format!("spectrum needs {} slots, got {cap}", s.0.dim()),
            ));
        }
        let spec = s.0.spectrum()?;
        ptr::copy_nonoverlapping(spec.values().as_ptr(), out, spec.values().len());
        Ok(())
    })
}

/// `Tr rho^2`.
///
/// # Safety
/// `state` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qd_state_purity(state: *const QdState, out: *mut f64) -> QdStatus {
    guard(|| write(out, deref(state, "state")?.0.purity()))
}

/// `Tr |rho^Gamma| - 1`; needs a split.
///
/// # Safety
/// `state` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qd_state_negativity(state: *const QdState, out: *mut f64) -> QdStatus {
    guard(|| write(out, negativity(&deref(state, "state")?.0)?))
}

/// Relative entropy of coherence in the computational basis (nats).
///
/// # Safety
/// `state` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qd_state_rel_ent_coherence(state: *const QdState, out: *mut f64) -> QdStatus {
    guard(|| write(out, rel_ent_coherence(&deref(state, "state")?.0)?))
}

/// `sum_{i != j} |rho_ij|`.
///
/// # Safety
/// `state` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qd_state_l1_coherence(state: *const QdState, out: *mut f64) -> QdStatus {
    guard(|| write(out, l1_coherence(&deref(state, "state")?.0)))
}

/// Distance or similarity between two states of equal dimension.
///
/// # Safety
/// `a`, `b` must be live handles and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qd_distance(
    a: *const QdState,
    b: *const QdState,
    metric: QdMetric,
    out: *mut f64,
) -> QdStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        let pair = PairAnalysis::new(&a.0, &b.0)?;
        write(out, pair.metric(metric_of(metric))?)
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qd_law_new(kind: QdLawKind, c: f64, out: *mut *mut QdLaw) -> QdStatus {
    guard(|| {
        let law = match kind {
            QdLawKind::MarchenkoPastur => LimitLaw::marchenko_pastur(c)?,
            QdLawKind::SymmetrizedMp => LimitLaw::symmetrized_mp(c)?,
            QdLawKind::ShiftedSemicircle => LimitLaw::shifted_semicircle(c)?,
            QdLawKind::FussCatalan2 => LimitLaw::fuss_catalan2(),
        };
        emit(out, QdLaw(law))
    })
}

/// Frees a law; null is a no-op.
///
/// # Safety
/// `law` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qd_law_free(law: *mut QdLaw) {
    if !law.is_null() {
        drop(Box::from_raw(law));
    }
}

/// Density of the continuous part at `x`.
///
/// # Safety
/// `law` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qd_law_pdf(law: *const QdLaw, x: f64, out: *mut f64) -> QdStatus {
    guard(|| write(out, deref(law, "law")?.0.pdf(x)))
}

/// Distribution function including the atom at zero.
///
/// # Safety
/// `law` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qd_law_cdf(law: *const QdLaw, x: f64, out: *mut f64) -> QdStatus {
    guard(|| write(out, deref(law, "law")?.0.cdf(x)?))
}

/// `int x^k dmu`.
///
/// # Safety
/// `law` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qd_law_moment(law: *const QdLaw, k: c_int, out: *mut f64) -> QdStatus {
    guard(|| write(out, deref(law, "law")?.0.moment(k)?))
}

/// Mass of the atom at zero.
///
/// # Safety
/// `law` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qd_law_atom0(law: *const QdLaw, out: *mut f64) -> QdStatus {
    guard(|| write(out, deref(law, "law")?.0.atom0()))
}

/// Hull `[lo, hi]` of the support.
///
/// # Safety
/// `law` must be a live handle; `lo` and `hi` valid.
#[no_mangle]
pub unsafe extern "C" fn qd_law_support(law: *const QdLaw, lo: *mut f64, hi: *mut f64) -> QdStatus {
    guard(|| {
        let (a, b) = deref(law, "law")?.0.support();
        write(lo, a)?;
        write(hi, b)
    })
}
