//! Limiting spectral laws and the asymptotic constants built on them.
//!
//! Scale conventions: `MP(c)` is the law of `x = K lambda` for induced states
//! (mean `c`, atom `1 - c` at zero when `c < 1`); `SMP(c)` is the law of
//! `K lambda(rho - sigma)` for two independent such states. Atoms are never
//! reported through [`LimitLaw::pdf`].

use std::f64::consts::PI;

use libm::tgamma;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::quad::{integrate, Tolerance};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum LawKind {
    MarchenkoPastur { c: f64 },
    SymmetrizedMp { c: f64 },
    FussCatalan2,
    Semicircle { center: f64, radius: f64 },
    /// Partial-transpose law of induced states: semicircle centered at `c`
    /// with radius `2 sqrt(c)`.
    ShiftedSemicircle { c: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitLaw {
    kind: LawKind,
    /// Intervals carrying the continuous part, ascending and disjoint.
    pieces: Vec<(f64, f64)>,
    atom0: f64,
    /// Interior points where the density is singular or nonsmooth.
    singular: Vec<f64>,
}

fn positive(c: f64) -> Result<()> {
    if c > 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("rectangularity c = {c} must be positive")))
    }
}

/// Squared SMP edges `(r-, r+)`; the support is `r- <= y^2 <= r+`.
fn smp_edges_sq(c: f64) -> (f64, f64) {
    let b = 2.0 + 10.0 * c - c * c;
    let root = (c * (c + 4.0).powi(3)).sqrt();
    ((b - root) / 2.0, (b + root) / 2.0)
}

impl LimitLaw {
    pub fn marchenko_pastur(c: f64) -> Result<Self> {
        positive(c)?;
        let lo = (1.0 - c.sqrt()).powi(2);
        let hi = (1.0 + c.sqrt()).powi(2);
        Ok(LimitLaw {
            kind: LawKind::MarchenkoPastur { c },
            pieces: vec![(lo, hi)],
            atom0: (1.0 - c).max(0.0),
            singular: Vec::new(),
        })
    }

    pub fn symmetrized_mp(c: f64) -> Result<Self> {
        positive(c)?;
        let (rm, rp) = smp_edges_sq(c);
        let yp = rp.sqrt();
        let (pieces, atom0) = if c < 0.5 {
            let ym = rm.max(0.0).sqrt();
            (vec![(-yp, -ym), (ym, yp)], 1.0 - 2.0 * c)
        } else {
            (vec![(-yp, yp)], 0.0)
        };
        Ok(LimitLaw {
            kind: LawKind::SymmetrizedMp { c },
            pieces,
            atom0,
            singular: if c >= 0.5 { vec![0.0] } else { Vec::new() },
        })
    }

    pub fn fuss_catalan2() -> Self {
        LimitLaw {
            kind: LawKind::FussCatalan2,
            pieces: vec![(0.0, 6.75)],
            atom0: 0.0,
            singular: Vec::new(),
        }
    }

    pub fn semicircle(center: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite() && center.is_finite()) {
            return Err(Error::invalid(format!("semicircle radius {radius} must be positive")));
        }
        Ok(LimitLaw {
            kind: LawKind::Semicircle { center, radius },
            pieces: vec![(center - radius, center + radius)],
            atom0: 0.0,
            singular: Vec::new(),
        })
    }

    pub fn shifted_semicircle(c: f64) -> Result<Self> {
        positive(c)?;
        let r = 2.0 * c.sqrt();
        Ok(LimitLaw {
            kind: LawKind::ShiftedSemicircle { c },
            pieces: vec![(c - r, c + r)],
            atom0: 0.0,
            singular: Vec::new(),
        })
    }

    pub fn kind(&self) -> LawKind {
        self.kind
    }

    /// Mass of the atom at zero.
    pub fn atom0(&self) -> f64 {
        self.atom0
    }

    /// Hull of the continuous part.
    pub fn support(&self) -> (f64, f64) {
        (self.pieces[0].0, self.pieces[self.pieces.len() - 1].1)
    }

    pub fn pieces(&self) -> &[(f64, f64)] {
        &self.pieces
    }

    /// Density of the continuous part; zero outside the support.
    pub fn pdf(&self, x: f64) -> f64 {
        if !self.pieces.iter().any(|&(lo, hi)| x > lo && x < hi) {
            return 0.0;
        }
        match self.kind {
            LawKind::MarchenkoPastur { .. } => {
                let (lo, hi) = self.pieces[0];
                ((x - lo) * (hi - x)).max(0.0).sqrt() / (2.0 * PI * x)
            }
            LawKind::SymmetrizedMp { c } => smp_density(c, x),
            LawKind::FussCatalan2 => fuss_catalan2_density(x),
            LawKind::Semicircle { center, radius } => {
                2.0 / (PI * radius * radius) * (radius * radius - (x - center).powi(2)).max(0.0).sqrt()
            }
            LawKind::ShiftedSemicircle { c } => {
                (4.0 * c - (x - c).powi(2)).max(0.0).sqrt() / (2.0 * PI * c)
            }
        }
    }

    /// `atom0 g(0) + int g dmu`, splitting at the law's singular points and
    /// at the caller's `kinks` of `g`.
    pub fn functional(&self, g: impl Fn(f64) -> f64, kinks: &[f64]) -> Result<f64> {
        self.functional_with(g, kinks, Tolerance::default())
    }

    pub fn functional_with(&self, g: impl Fn(f64) -> f64, kinks: &[f64], tol: Tolerance) -> Result<f64> {
        let mut cuts: Vec<f64> = self.singular.clone();
        cuts.extend_from_slice(kinks);
        let mut total = if self.atom0 > 0.0 { self.atom0 * g(0.0) } else { 0.0 };
        for &(lo, hi) in &self.pieces {
            total += integrate(|x| self.pdf(x) * g(x), lo, hi, &cuts, tol)?.value;
        }
        Ok(total)
    }

    /// `int t^k dmu`.
    pub fn moment(&self, k: i32) -> Result<f64> {
        self.functional(|x| x.powi(k), &[])
    }

    /// `mu((-inf, x])`, atom included.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        Ok(self.cdf_many(&[x])?[0])
    }

    /// CDF at ascending points, integrating segment by segment.
    pub fn cdf_many(&self, sorted: &[f64]) -> Result<Vec<f64>> {
        let tol = Tolerance::default();
        let mut cuts = self.singular.clone();
        for &(lo, hi) in &self.pieces {
            cuts.push(lo);
            cuts.push(hi);
        }
        let (lo, hi) = self.support();
        let mut out = Vec::with_capacity(sorted.len());
        let mut cont = 0.0;
        let mut pos = lo;
        let mut prev = f64::NEG_INFINITY;
        for &x in sorted {
            if x.is_nan() || x < prev {
                return Err(Error::invalid("cdf_many expects ascending, non-NaN points"));
            }
            prev = x;
            let target = x.clamp(lo, hi);
            if target > pos {
                cont += integrate(|t| self.pdf(t), pos, target, &cuts, tol)?.value;
                pos = target;
            }
            let atom = if x >= 0.0 { self.atom0 } else { 0.0 };
            out.push((cont + atom).clamp(0.0, 1.0));
        }
        Ok(out)
    }

    /// `G(z) = atom0 / z + int rho(t) / (z - t) dt` for `Im z > 0`.
    pub fn cauchy_transform(&self, z: Complex64) -> Result<Complex64> {
        if !(z.im > 0.0) {
            return Err(Error::invalid("Cauchy transform needs Im z > 0"));
        }
        let tol = Tolerance::default();
        let mut g = if self.atom0 > 0.0 { self.atom0 / z } else { C64::new(0.0, 0.0) };
        for &(lo, hi) in &self.pieces {
            let re = integrate(|t| self.pdf(t) * (1.0 / (z - t)).re, lo, hi, &self.singular, tol)?;
            let im = integrate(|t| self.pdf(t) * (1.0 / (z - t)).im, lo, hi, &self.singular, tol)?;
            g += C64::new(re.value, im.value);
        }
        Ok(g)
    }

    /// Closed-form R-transform, where the law has one.
    pub fn r_transform(&self, w: Complex64) -> Option<Complex64> {
        match self.kind {
            LawKind::MarchenkoPastur { c } => Some(c / (1.0 - w)),
            LawKind::SymmetrizedMp { c } => Some(2.0 * c * w / (1.0 - w * w)),
            LawKind::Semicircle { center, radius } => Some(center + radius * radius / 4.0 * w),
            LawKind::ShiftedSemicircle { c } => Some(c + c * w),
            LawKind::FussCatalan2 => None,
        }
    }
}

/// Closed-form SMP density (real cube-root branch), evaluated at `|y|`.
fn smp_density(c: f64, y: f64) -> f64 {
    let y = y.abs();
    let a = 2.0 * c - 1.0;
    if c > 0.5 && y < 1e-7 {
        // removable 0/0 at the origin
        return 1.0 / (PI * a.sqrt());
    }
    if y == 0.0 {
        return if c == 0.5 { f64::INFINITY } else { 0.0 };
    }
    let y2 = y * y;
    let disc = a.powi(3) - y2 * y2 + (2.0 + 10.0 * c - c * c) * y2;
    if disc < 0.0 {
        return 0.0;
    }
    let big_y = a.powi(3) + 9.0 * (c + 1.0) * y2 + 3.0 * 3f64.sqrt() * y * disc.sqrt();
    let cb = big_y.cbrt();
    let num = -1.0 - 4.0 * (c - 1.0) * c - 3.0 * y2 + cb * cb;
    (num / (2.0 * 3f64.sqrt() * PI * y * cb)).max(0.0)
}

fn fuss_catalan2_density(x: f64) -> f64 {
    if x <= 0.0 || x >= 6.75 {
        return 0.0;
    }
    let c2 = 2f64.cbrt();
    let w = 27.0 + 3.0 * (81.0 - 12.0 * x).max(0.0).sqrt();
    let num = c2 * w.powf(2.0 / 3.0) - 6.0 * x.cbrt();
    (c2 * 3f64.sqrt() / (12.0 * PI) * num / (x.powf(2.0 / 3.0) * w.cbrt())).max(0.0)
}

/// Median `M` of `MP(1)` and the orbit diameter `d = int x sign(x - M) dMP(1)`.
pub fn mp_median_and_diameter() -> Result<(f64, f64)> {
    let law = LimitLaw::marchenko_pastur(1.0)?;
    let (mut lo, mut hi) = (0.0, 4.0);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if law.cdf(mid)? < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let m = 0.5 * (lo + hi);
    let d = law.functional(|x| if x > m { x } else { -x }, &[m])?;
    Ok((m, d))
}

/// `Q_s = int t^s dMP(1) int t^{1-s} dMP(1)` in Gamma-function form.
pub fn chernoff_limit(s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::invalid(format!("Chernoff parameter s = {s} outside [0, 1]")));
    }
    Ok(4.0 * tgamma(1.5 - s) * tgamma(s + 0.5) / (PI * tgamma(3.0 - s) * tgamma(s + 2.0)))
}

/// Golden-section minimum of a unimodal function on `[a, b]`.
pub(crate) fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    let s = 0.5 * (a + b);
    (s, f(s))
}

/// `(s*, Q_{s*})` for the asymptotic Chernoff quantity.
///
/// Comparing function values pins a flat minimum only to about
/// `sqrt(eps)`, so `s*` is refined by bisecting the sign of a central
/// difference, which resolves it to about `1e-11`.
pub fn chernoff_min() -> Result<(f64, f64)> {
    let f = |s: f64| chernoff_limit(s).unwrap_or(f64::INFINITY);
    let (guess, _) = golden_min(f, 0.0, 1.0, 1e-6);
    let h = 1e-5;
    let slope = |s: f64| f(s + h) - f(s - h);
    let (mut lo, mut hi) = ((guess - 1e-4).max(h), (guess + 1e-4).min(1.0 - h));
    if slope(lo) >= 0.0 || slope(hi) <= 0.0 {
        return Ok((guess, f(guess)));
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if slope(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s = 0.5 * (lo + hi);
    Ok((s, f(s)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SingleStateConstants {
    /// Transmission distance between a generic state and the maximally mixed one.
    pub t1: f64,
    /// `T1^2` recomputed as `1/4 - int ((t+1)/2) ln((t+1)/2) dMP(1)`.
    pub t1_squared_quadrature: f64,
    /// Entropic distance between a generic state and the maximally mixed one.
    pub e1: f64,
}

/// Closed form of `T1^2`. The `ln` of `4870847 - 2178309 sqrt5` is rewritten
/// as `ln 4 - ln(4870847 + 2178309 sqrt5)`; the direct form loses all digits.
pub fn t1_squared_closed_form() -> f64 {
    let s5 = 5f64.sqrt();
    1.0 / 8.0 + s5 / 8.0 + 15.0 / 16.0 * 2f64.ln()
        + (4f64.ln() - (4_870_847.0 + 2_178_309.0 * s5).ln()) / 16.0
}

pub fn e1_closed_form() -> f64 {
    let acoth = |x: f64| 0.5 * ((x + 1.0) / (x - 1.0)).ln();
    let inner = 3.0 * PI * (36.0 * PI * PI / (9.0 * PI * PI - 64.0)).ln() - 16.0 * acoth(3.0 * PI / 8.0);
    (inner / (6.0 * PI)).sqrt()
}

pub fn single_state_constants() -> Result<SingleStateConstants> {
    let law = LimitLaw::marchenko_pastur(1.0)?;
    let mixed = law.functional(
        |t| {
            let m = (t + 1.0) / 2.0;
            m * m.ln()
        },
        &[1.0],
    )?;
    Ok(SingleStateConstants {
        t1: t1_squared_closed_form().sqrt(),
        t1_squared_quadrature: 0.25 - mixed,
        e1: e1_closed_form(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AubrunNegativity {
    /// Limiting fraction of negative eigenvalues of `rho^{T_A}`.
    pub fraction: f64,
    /// `int_{x<0} |x| dmu` over the shifted semicircle.
    pub integral: f64,
}

/// Closed forms of the negative-part integrals of the shifted semicircle.
/// Both vanish for `c >= 4`.
pub fn aubrun_negativity(c: f64) -> Result<AubrunNegativity> {
    positive(c)?;
    if c >= 4.0 {
        return Ok(AubrunNegativity {
            fraction: 0.0,
            integral: 0.0,
        });
    }
    let acos = (c.sqrt() / 2.0).acos();
    let w = (4.0 * c - c * c).sqrt();
    Ok(AubrunNegativity {
        fraction: (4.0 * acos - w) / (4.0 * PI),
        integral: (8.0 * w + (4.0 * c.powi(3) - c.powi(4)).sqrt() - 12.0 * c * acos) / (12.0 * PI),
    })
}
