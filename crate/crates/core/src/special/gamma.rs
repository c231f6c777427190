//! Gamma, log-Gamma and digamma on the positive real axis.
//!
//! The Lanczos sum (g = 607/128, 15 terms) carries the bulk of the range.
//! Near the zeros of `log_gamma` (x = 1, 2) and of `digamma` (x ≈ 1.4616)
//! relative accuracy needs Taylor expansions about the zero, since any
//! subtraction-based formula loses every digit there.

use crate::error::{Error, Result};
use crate::special::zeta::zeta_int;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 607.0 / 128.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// Positive zero of digamma split into head and tail.
const PSI_ROOT_HI: f64 = 1.461_632_144_968_362_2;
const PSI_ROOT_LO: f64 = 9.549_995_429_965_697e-17;

// Taylor coefficients of digamma about its positive zero:
// (-1)^(k+1) * hurwitz_zeta(k+1, root), k = 1..30.
#[allow(clippy::excessive_precision)]
const PSI_ROOT_SERIES: [f64; 30] = [
    9.676_722_454_476_212_04e-1,
    -4.427_631_689_835_920_81e-1,
    2.584_997_609_556_510_26e-1,
    -1.639_427_054_424_065_22e-1,
    1.078_240_506_912_623_71e-1,
    -7.219_956_125_645_471_40e-2,
    4.880_428_816_414_311_01e-2,
    -3.316_112_647_484_736_19e-2,
    2.259_764_823_221_810_38e-2,
    -1.542_476_590_494_895_95e-2,
    1.053_879_161_661_217_50e-2,
    -7.204_534_386_356_868_66e-3,
    4.926_781_395_729_853_27e-3,
    -3.369_801_655_439_328_21e-3,
    2.305_126_326_734_927_97e-3,
    -1.576_936_771_430_197_20e-3,
    1.078_825_201_916_296_67e-3,
    -7.380_709_389_960_051_50e-4,
    5.049_532_658_346_019_87e-4,
    -3.454_680_251_063_076_92e-4,
    2.363_560_156_402_705_30e-4,
    -1.617_062_209_197_480_30e-4,
    1.106_337_276_874_741_03e-4,
    -7.569_179_582_195_066_07e-5,
    5.178_575_795_222_080_93e-5,
    -3.543_007_094_765_960_36e-5,
    2.424_006_611_860_131_84e-5,
    -1.658_424_227_185_413_46e-5,
    1.134_638_458_466_384_97e-5,
    -7.762_817_668_462_094_33e-6,
];

fn check_positive(x: f64, what: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} requires a finite positive argument, got {x}")))
    }
}

fn lanczos_sum(x: f64) -> f64 {
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    acc
}

/// Γ(x) for x > 0. Overflows to +∞ beyond x ≈ 171.6.
pub fn gamma(x: f64) -> Result<f64> {
    check_positive(x, "gamma")?;
    Ok(gamma_unchecked(x))
}

pub(crate) fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        return gamma_unchecked(x + 1.0) / x;
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    let t = x - 0.5 + LANCZOS_G;
    // split the power so that t^(x-1/2) never overflows before e^-t is applied
    let half = t.powf(0.5 * (x - 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * lanczos_sum(x)
}

/// ln Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    check_positive(x, "log_gamma")?;
    Ok(log_gamma_unchecked(x))
}

pub(crate) fn log_gamma_unchecked(x: f64) -> f64 {
    if (x - 1.0).abs() < 0.2 {
        return log_gamma_near_one(x - 1.0);
    }
    if (x - 2.0).abs() < 0.2 {
        let e = x - 2.0;
        return e.ln_1p() + log_gamma_near_one(e);
    }
    if x < 0.5 {
        // Γ(x) = Γ(x+1)/x keeps the magnitude exact for tiny x
        return log_gamma_unchecked(x + 1.0) - x.ln();
    }
    if x < 10.0 {
        return gamma_unchecked(x).ln();
    }
    let t = x - 0.5 + LANCZOS_G;
    0.5 * (2.0 * PI).ln() + (x - 0.5) * t.ln() - t + lanczos_sum(x).ln()
}

// ln Γ(1+e) = -γe + Σ_{k≥2} (-1)^k ζ(k) e^k / k, |e| < 0.2
fn log_gamma_near_one(e: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow = -e;
    for k in 2..40 {
        pow *= -e;
        let term = zeta_int(k) * pow / k as f64;
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(e.abs() * 1e-3) {
            break;
        }
    }
    -EULER_GAMMA * e + sum
}

/// ψ(x) = Γ'(x)/Γ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    check_positive(x, "digamma")?;
    Ok(digamma_unchecked(x))
}

pub(crate) fn digamma_unchecked(x: f64) -> f64 {
    if (x - PSI_ROOT_HI).abs() < 0.3 {
        let e = (x - PSI_ROOT_HI) - PSI_ROOT_LO;
        let mut acc = 0.0;
        for c in PSI_ROOT_SERIES.iter().rev() {
            acc = acc * e + c;
        }
        return acc * e;
    }
    let mut shift = 0.0;
    let mut y = x;
    while y < 10.0 {
        shift -= 1.0 / y;
        y += 1.0;
    }
    // Bernoulli tail B_{2k}/(2k) for k = 1..7
    const B: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
        1.0 / 12.0,
    ];
    let inv2 = 1.0 / (y * y);
    let mut tail = 0.0;
    for b in B.iter().rev() {
        tail = (tail + b) * inv2;
    }
    shift + y.ln() - 0.5 / y - tail
}

/// Γ(x)/Γ(y) for positive x, y; switches to log space when either factor would overflow.
pub fn gamma_ratio(x: f64, y: f64) -> Result<f64> {
    check_positive(x, "gamma_ratio")?;
    check_positive(y, "gamma_ratio")?;
    Ok(gamma_ratio_unchecked(x, y))
}

pub(crate) fn gamma_ratio_unchecked(x: f64, y: f64) -> f64 {
    if x < 160.0 && y < 160.0 {
        return gamma_unchecked(x) / gamma_unchecked(y);
    }
    let d = x - y;
    if d.abs() < 8.0 && d == d.round() {
        // integer offset: finite product is exact to rounding
        let mut prod = 1.0;
        if d >= 0.0 {
            for j in 0..d as usize {
                prod *= y + j as f64;
            }
            return prod;
        }
        for j in 0..(-d) as usize {
            prod *= x + j as f64;
        }
        return 1.0 / prod;
    }
    if d.abs() < 8.0 {
        return log_gamma_ratio_large(x, y).exp();
    }
    (log_gamma_unchecked(x) - log_gamma_unchecked(y)).exp()
}

// ln Γ(x) − ln Γ(y) for large x, y with x − y moderate, without forming either log-Gamma.
fn log_gamma_ratio_large(x: f64, y: f64) -> f64 {
    let ty = y - 0.5 + LANCZOS_G;
    let d = x - y;
    // (x−½)ln tx − (y−½)ln ty − (tx − ty) written so that cancellation stays benign
    let log_ratio = (d / ty).ln_1p();
    (x - 0.5) * log_ratio + d * ty.ln() - d + (lanczos_sum(x) / lanczos_sum(y)).ln()
}
