//! Complex gamma function, real log-gamma and the residues of Γ at its poles.
//!
//! Γ is evaluated with the g = 7, n = 9 Lanczos coefficient set on the half
//! plane Re z ≥ 1/2 and extended to the left by reflection.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{KurepaError, Result};
use crate::ComplexValue;

/// Distance to a non-positive integer below which Γ is treated as singular.
pub const POLE_TOLERANCE: f64 = 1e-9;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

// ln(2π)/2
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

pub(crate) fn check_finite(z: ComplexValue) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(KurepaError::Domain(format!("non-finite argument {z}")))
    }
}

/// Nearest non-positive integer to `z` if `z` is within `tol` of it.
pub(crate) fn near_nonpositive_integer(z: ComplexValue, tol: f64) -> Option<i64> {
    let n = z.re.round();
    if n > 0.0 {
        return None;
    }
    if (z.re - n).hypot(z.im) <= tol {
        Some(n as i64)
    } else {
        None
    }
}

/// Γ(z) for complex `z`.
pub fn gamma(z: ComplexValue) -> Result<ComplexValue> {
    check_finite(z)?;
    if let Some(n) = near_nonpositive_integer(z, POLE_TOLERANCE) {
        return Err(KurepaError::Pole {
            at: n as f64,
            what: "gamma has a simple pole at every non-positive integer",
        });
    }
    Ok(gamma_unchecked(z))
}

pub(crate) fn gamma_unchecked(z: ComplexValue) -> ComplexValue {
    if z.im == 0.0 && z.re > 0.0 && z.re <= 30.0 && z.re.fract() == 0.0 {
        return Complex64::new(factorial_f64(z.re as u32 - 1), 0.0);
    }
    if z.re < 0.5 {
        // Γ(z) Γ(1 − z) = π / sin(πz)
        let one = Complex64::new(1.0, 0.0);
        return Complex64::new(PI, 0.0) / (sin_pi(z) * lanczos(one - z));
    }
    lanczos(z)
}

fn lanczos(z: ComplexValue) -> ComplexValue {
    let z = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += *c / (z + i as f64);
    }
    let w = z + LANCZOS_G + 0.5;
    ((z + 0.5) * w.ln() - w + HALF_LN_TWO_PI).exp() * series
}

/// sin(πz) with the real part reduced exactly before multiplying by π, so
/// that arguments close to integers keep their relative accuracy.
fn sin_pi(z: ComplexValue) -> ComplexValue {
    let n = z.re.round();
    let reduced = Complex64::new(z.re - n, z.im);
    let s = (reduced * PI).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

fn factorial_f64(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * f64::from(k))
}

/// ln Γ(x) for real `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(KurepaError::Domain(format!(
            "log_gamma requires a finite positive argument, got {x}"
        )));
    }
    // shift into the region where the asymptotic series is accurate
    let mut shifted = x;
    let mut product = 1.0;
    while shifted < 8.0 {
        product *= shifted;
        shifted += 1.0;
    }
    Ok(stirling_log_gamma(shifted) - product.ln())
}

fn stirling_log_gamma(x: f64) -> f64 {
    // B_{2k} / (2k (2k − 1)), k = 1..8
    const STIRLING: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut correction = 0.0;
    let mut power = inv;
    for c in STIRLING {
        correction += c * power;
        power *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_TWO_PI + correction
}

/// Residue of Γ at z = −n, which is (−1)^n / n!.
pub fn gamma_residue(n: u32) -> f64 {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign / factorial_f64(n)
}
