//! Named asymptotic constants: exact expression, reference decimal, and an
//! evaluator that recomputes the value from the expression.

use std::f64::consts::{E, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laws::{self, LimitLaw};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Constant {
    pub name: &'static str,
    pub expression: &'static str,
    /// Reference decimal, 17 significant digits unless `exact` is false.
    pub decimal: &'static str,
    /// False for table entries printed without a closed form.
    pub exact: bool,
    #[serde(skip)]
    eval: fn() -> Result<f64>,
}

impl Constant {
    /// Recomputes the value from its expression.
    pub fn value(&self) -> Result<f64> {
        (self.eval)()
    }

    pub fn reference(&self) -> f64 {
        self.decimal.parse().unwrap_or(f64::NAN)
    }
}

fn r(x: f64) -> Result<f64> {
    Ok(x)
}

fn sqrt_f_single() -> f64 {
    8.0 / (3.0 * PI)
}

macro_rules! constant {
    ($name:expr, $expr:expr, $dec:expr, $f:expr) => {
        Constant {
            name: $name,
            expression: $expr,
            decimal: $dec,
            exact: true,
            eval: $f,
        }
    };
}

macro_rules! printed {
    ($name:expr, $expr:expr, $dec:expr) => {
        Constant {
            name: $name,
            expression: $expr,
            decimal: $dec,
            exact: false,
            eval: || Ok($dec.parse().unwrap_or(f64::NAN)),
        }
    };
}

static REGISTRY: &[Constant] = &[
    // distances to the maximally mixed state and between two generic states
    constant!("trace-single", "3*sqrt(3)/(4*pi)", "0.41349667156634404", || r(3.0 * 3f64.sqrt() / (4.0 * PI))),
    constant!("trace-generic", "1/4 + 1/pi", "0.56830988618379067", || r(0.25 + 1.0 / PI)),
    constant!("helstrom-single", "1/2 + 3*sqrt(3)/(8*pi)", "0.70674833578317202", || r(0.5 + 3.0 * 3f64.sqrt() / (8.0 * PI))),
    constant!("helstrom-generic", "1/2 + (1/4 + 1/pi)/2", "0.78415494309189534", || r(0.5 + (0.25 + 1.0 / PI) / 2.0)),
    constant!("mp-median", "M with int_0^M dMP_1 = 1/2", "0.65277594163357037", || Ok(laws::mp_median_and_diameter()?.0)),
    constant!("orbit-diameter", "int_0^4 x sign(x - M) dMP_1", "0.78746158775610804", || Ok(laws::mp_median_and_diameter()?.1)),
    constant!("hs-single-scaled", "sqrt(N) ||rho - 1/N||_2 -> 1", "1.0", || r(1.0)),
    constant!("hs-pair-scaled", "sqrt(N) ||rho - sigma||_2 -> sqrt(2)", "1.414213562373095", || r(2f64.sqrt())),
    constant!("chernoff-generic", "(8/(3*pi))^2", "0.72050619478995749", || r(sqrt_f_single().powi(2))),
    constant!("kl-generic", "3/2", "1.5", || r(1.5)),
    constant!("kl-to-mixed", "S(rho||1/N) -> 1/2", "0.5", || r(0.5)),
    constant!("kl-from-mixed", "S(1/N||rho) -> 1", "1.0", || r(1.0)),
    constant!("qjsd-generic", "1/4", "0.25", || r(0.25)),
    constant!("transmission-generic", "1/2", "0.5", || r(0.5)),
    constant!(
        "transmission-single",
        "T1 = sqrt(1/8 + sqrt(5)/8 + 15/16 ln 2 + 1/16 ln(4870847 - 2178309 sqrt(5)))",
        "0.36773907547092698",
        || Ok(laws::single_state_constants()?.t1)
    ),
    constant!("root-fidelity-generic", "3/4", "0.75", || r(0.75)),
    constant!("root-fidelity-single", "8/(3*pi)", "0.84882636315677512", || r(sqrt_f_single())),
    constant!("bures-generic", "sqrt(2)/2", "0.70710678118654752", || r(2f64.sqrt() / 2.0)),
    constant!("bures-single", "sqrt(2 - 16/(3*pi))", "0.54986114036768388", || r((2.0 - 16.0 / (3.0 * PI)).sqrt())),
    constant!("hellinger-single", "sqrt(2 - 16/(3*pi))", "0.54986114036768388", || r((2.0 - 16.0 / (3.0 * PI)).sqrt())),
    constant!("hellinger-generic", "sqrt(2 - 2*(8/(3*pi))^2)", "0.74765474011744554", || r((2.0 - 2.0 * sqrt_f_single().powi(2)).sqrt())),
    constant!(
        "entropic-generic",
        "1/(2*sqrt(2)) * sqrt(ln(8^8/7^7))",
        "0.61381606467771499",
        || r((8.0 * 8f64.ln() - 7.0 * 7f64.ln()).sqrt() / (2.0 * 2f64.sqrt()))
    ),
    constant!(
        "entropic-single",
        "E1 = sqrt((3 pi ln(36 pi^2/(9 pi^2 - 64)) - 16 arccoth(3 pi/8))/(6 pi))",
        "0.51754831133861757",
        || Ok(laws::single_state_constants()?.e1)
    ),
    // unscaled HS and operator-norm distances vanish; pure column is for orthogonal states
    constant!("hs-single", "D_HS(rho, 1/N) -> 0", "0.0", || r(0.0)),
    constant!("hs-generic", "D_HS(rho, sigma) -> 0", "0.0", || r(0.0)),
    constant!("inf-single", "D_inf(rho, 1/N) -> 0", "0.0", || r(0.0)),
    constant!("inf-generic", "D_inf(rho, sigma) -> 0", "0.0", || r(0.0)),
    constant!("pure-tr", "1", "1.0", || r(1.0)),
    constant!("pure-hs", "1", "1.0", || r(1.0)),
    constant!("pure-inf", "1", "1.0", || r(1.0)),
    constant!("pure-t", "sqrt(ln 2)", "0.83255461115769776", || r(2f64.ln().sqrt())),
    constant!("pure-b", "sqrt(2)", "1.4142135623730950", || r(2f64.sqrt())),
    constant!("pure-e", "sqrt(ln 2)", "0.83255461115769776", || r(2f64.ln().sqrt())),
    constant!("pure-h", "sqrt(2)", "1.4142135623730950", || r(2f64.sqrt())),
    // entanglement
    constant!("pure-negativity", "(1/2)*(8/(3*pi))^2", "0.36025309739497874", || r(sqrt_f_single().powi(2) / 2.0)),
    constant!("g-concurrence", "1/e", "0.36787944117144232", || r(1.0 / E)),
    constant!("negative-fraction-hs", "1/3 - sqrt(3)/(4*pi)", "0.19550110947788532", || r(1.0 / 3.0 - 3f64.sqrt() / (4.0 * PI))),
    constant!("negativity-hs", "3*sqrt(3)/(4*pi) - 1/3", "0.080163338233010704", || r(3.0 * 3f64.sqrt() / (4.0 * PI) - 1.0 / 3.0)),
    // coherence
    constant!("coherence-gap-complex", "1 - gamma", "0.42278433509846714", || r(1.0 - EULER_GAMMA)),
    constant!("coherence-gap-real", "2 - gamma - ln 2", "0.72963715453852183", || r(2.0 - EULER_GAMMA - 2f64.ln())),
    constant!("coherence-mixed", "1/2", "0.5", || r(0.5)),
    constant!("l1-pure-complex", "pi/4", "0.78539816339744831", || r(PI / 4.0)),
    constant!("l1-pure-real", "2/pi", "0.63661977236758134", || r(2.0 / PI)),
    constant!("l1-mixed-complex", "sqrt(pi)/2", "0.88622692545275801", || r(PI.sqrt() / 2.0)),
    constant!("l1-mixed-real", "sqrt(2/pi)", "0.79788456080286536", || r((2.0 / PI).sqrt())),
    // classical probability vectors
    constant!("bhatt-statistical-uniform", "sqrt(2/pi)", "0.79788456080286536", || r((2.0 / PI).sqrt())),
    constant!("bhatt-flat-uniform", "sqrt(pi)/2", "0.88622692545275801", || r(PI.sqrt() / 2.0)),
    constant!("bhatt-statistical-pair", "2/pi", "0.63661977236758134", || r(2.0 / PI)),
    constant!("bhatt-flat-pair", "pi/4", "0.78539816339744831", || r(PI / 4.0)),
    constant!("bures-statistical-uniform", "sqrt(2 - 2*sqrt(2/pi))", "0.63579153690047596", || r((2.0 - 2.0 * (2.0 / PI).sqrt()).sqrt())),
    constant!("bures-flat-uniform", "sqrt(2 - sqrt(pi))", "0.47701797565132068", || r((2.0 - PI.sqrt()).sqrt())),
    constant!("bures-statistical-pair", "sqrt(2 - 4/pi)", "0.85250246642742173", || r((2.0 - 4.0 / PI).sqrt())),
    constant!("bures-flat-pair", "sqrt(2 - pi/2)", "0.65513637756203355", || r((2.0 - PI / 2.0).sqrt())),
    constant!("l1-statistical-uniform", "sqrt(2/(pi*e))", "0.4839414490382867", || r((2.0 / (PI * E)).sqrt())),
    constant!("l1-flat-uniform", "1/e", "0.36787944117144232", || r(1.0 / E)),
    constant!("l1-statistical-pair", "2/pi", "0.63661977236758134", || r(2.0 / PI)),
    constant!("l1-flat-pair", "1/2", "0.5", || r(0.5)),
    // mean distances in the unit n-ball
    constant!("ball-1", "2/3", "0.66666666666666667", || r(2.0 / 3.0)),
    constant!("ball-2-l1", "(647 + 120*pi)/(90*pi^2)", "1.1527999128738602", || r((647.0 + 120.0 * PI) / (90.0 * PI * PI))),
    constant!("ball-2-l2", "128/(45*pi)", "0.9054147873672268", || r(128.0 / (45.0 * PI))),
    printed!("ball-2-linf", "printed table value, no closed form", "0.8151"),
    constant!("ball-3-l1", "55*pi/112", "1.5427463923878449", || r(55.0 * PI / 112.0)),
    printed!("ball-3-l1-printed", "decimal printed next to 55*pi/112", "1.15428"),
    constant!("ball-3-l2", "36/35", "1.0285714285714286", || r(36.0 / 35.0)),
    printed!("ball-3-linf", "printed table value, no closed form", "0.8549"),
];

pub fn registry() -> &'static [Constant] {
    REGISTRY
}

pub fn lookup(name: &str) -> Result<&'static Constant> {
    REGISTRY
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::invalid(format!("unknown constant '{name}'")))
}

/// Reference value of a registry entry, as printed.
pub fn reference(name: &str) -> Result<f64> {
    Ok(lookup(name)?.reference())
}

/// Quantities swept over the rectangularity `c = K/N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CQuantity {
    /// `D_Tr(rho, 1/N)`.
    TraceSingle,
    /// `D_Tr(rho, sigma)`.
    TracePair,
    /// `sqrt(N) ||rho - 1/N||_2`.
    HsSingleScaled,
    /// `sqrt(N) ||rho - sigma||_2`.
    HsPairScaled,
}

/// Limit at finite `c`, from the MP/SMP laws.
pub fn c_dependent_limit(q: CQuantity, c: f64) -> Result<f64> {
    match q {
        CQuantity::TraceSingle => {
            let law = LimitLaw::marchenko_pastur(c)?;
            Ok(law.functional(|x| (x - c).abs(), &[c])? / (2.0 * c))
        }
        CQuantity::TracePair => {
            let law = LimitLaw::symmetrized_mp(c)?;
            Ok(law.functional(f64::abs, &[0.0])? / (2.0 * c))
        }
        CQuantity::HsSingleScaled => Ok(1.0 / c.sqrt()),
        CQuantity::HsPairScaled => Ok((2.0 / c).sqrt()),
    }
}

/// Leading large-`c` behaviour.
pub fn c_asymptote(q: CQuantity, c: f64) -> f64 {
    match q {
        CQuantity::TraceSingle => 4.0 / (3.0 * PI * c.sqrt()),
        CQuantity::TracePair => 4.0 * 2f64.sqrt() / (3.0 * PI * c.sqrt()),
        CQuantity::HsSingleScaled => 1.0 / c.sqrt(),
        CQuantity::HsPairScaled => 2f64.sqrt() / c.sqrt(),
    }
}
