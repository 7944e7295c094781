//! Inequalities for K on the positive real axis.
//!
//! Everything here is a numerical check: each function evaluates both sides
//! of one inequality and reports the outcome together with its margin.
//! Strict inequalities require a margin above [`STRICT_MARGIN`] times the
//! scale of the compared quantities; weak ones allow a slack of
//! [`WEAK_SLACK`] times that scale.

use num_complex::Complex64;

use crate::error::{KurepaError, Result};
use crate::gamma::gamma;
use crate::kurepa::{kurepa, kurepa_with, QuadratureConfig};
use crate::recurrences::{p_n, r_n, Route};

pub const STRICT_MARGIN: f64 = 1e-12;
pub const WEAK_SLACK: f64 = 1e-9;

/// Fifth-degree polynomial approximation of Γ(x + 1) on [0, 1]
/// (absolute error below 5e-5).
const P5_COEFFS: [f64; 6] = [1.0, -0.574_864_6, 0.951_236_3, -0.699_858_8, 0.424_554_9, -0.101_067_8];

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn real_gamma(x: f64) -> Result<f64> {
    Ok(gamma(re(x))?.re)
}

fn real_kurepa(x: f64) -> Result<f64> {
    Ok(kurepa(re(x))?.value.re)
}

fn unit_interval(x: f64, what: &str) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(KurepaError::Domain(format!("{what} is defined for x in [0, 1], got {x}")))
    }
}

fn at_least(x: f64, min: f64, what: &str) -> Result<()> {
    if x.is_finite() && x >= min {
        Ok(())
    } else {
        Err(KurepaError::Domain(format!("{what} requires x >= {min}, got {x}")))
    }
}

pub fn gamma_p5_approx(x: f64) -> Result<f64> {
    unit_interval(x, "the polynomial approximation of gamma")?;
    Ok(P5_COEFFS.iter().rev().fold(0.0, |acc, c| acc * x + c))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma4Check {
    /// Γ(x + 1/2) < x² − 7x/4 + 9/5
    pub ineq1_ok: bool,
    /// (x + 2) Γ(x + 1) > 9/5
    pub ineq2_ok: bool,
    /// Signed margins, positive when the inequality holds.
    pub margins: (f64, f64),
}

/// Both gamma inequalities on [0, 1], evaluated with the true Γ.
pub fn lemma4_check(x: f64) -> Result<Lemma4Check> {
    unit_interval(x, "the quadratic gamma bounds")?;
    let m1 = x * x - 1.75 * x + 1.8 - real_gamma(x + 0.5)?;
    let m2 = (x + 2.0) * real_gamma(x + 1.0)? - 1.8;
    Ok(Lemma4Check {
        ineq1_ok: m1 > 0.0,
        ineq2_ok: m2 > 0.0,
        margins: (m1, m2),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KaramataCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// ln t/(t − 1) ≤ 1/√t, with the left side extended by its limit 1 at t = 1.
pub fn karamata_bound(t: f64) -> Result<KaramataCheck> {
    if !(t.is_finite() && t > 0.0) {
        return Err(KurepaError::Domain(format!("t must be positive, got {t}")));
    }
    let u = t - 1.0;
    let lhs = if u == 0.0 { 1.0 } else { u.ln_1p() / u };
    let rhs = 1.0 / t.sqrt();
    Ok(KaramataCheck {
        lhs,
        rhs,
        ok: lhs <= rhs + 1e-14,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma5Check {
    pub kx: f64,
    pub bound: f64,
    pub ok: bool,
}

/// K(x) ≤ 9x/5 on [0, 1].
pub fn lemma5_check(x: f64) -> Result<Lemma5Check> {
    unit_interval(x, "the linear bound on K")?;
    let k = kurepa(re(x))?.value;
    let bound = 1.8 * x;
    Ok(Lemma5Check {
        kx: k.re,
        bound,
        ok: k.im.abs() <= 1e-12 && k.re <= bound + WEAK_SLACK,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theorem3Check {
    /// K(x − 1)
    pub lhs: f64,
    /// Γ(x)
    pub rhs: f64,
    pub ok: bool,
    /// K(x)
    pub kx: f64,
    /// K(x) ≤ 2Γ(x), the equivalent form.
    pub doubled_ok: bool,
    /// The older bound 1 + 2Γ(x) on K(x).
    pub arandelovic_rhs: f64,
    /// How much tighter 2Γ(x) is than 1 + 2Γ(x), relative to the latter.
    pub relative_improvement: f64,
}

/// K(x − 1) ≤ Γ(x) for x ≥ 3, with equality at x = 3.
pub fn theorem3_check(x: f64) -> Result<Theorem3Check> {
    at_least(x, 3.0, "K(x - 1) <= gamma(x)")?;
    let lhs = real_kurepa(x - 1.0)?;
    let rhs = real_gamma(x)?;
    let kx = real_kurepa(x)?;
    let arandelovic_rhs = 1.0 + 2.0 * rhs;
    Ok(Theorem3Check {
        lhs,
        rhs,
        ok: lhs <= rhs * (1.0 + WEAK_SLACK),
        kx,
        doubled_ok: kx <= 2.0 * rhs * (1.0 + WEAK_SLACK),
        arandelovic_rhs,
        relative_improvement: 1.0 / arandelovic_rhs,
    })
}

/// ρ(x) = K(x)/Γ(x + 1) for x > 0.
///
/// Seeds at x₀ = x − m in (0, 1] and runs ρ(y) = (ρ(y − 1) + 1)/y upwards,
/// which contracts errors and never forms K(x) or Γ(x + 1) themselves.
pub fn normalized_ratio(x: f64) -> Result<f64> {
    normalized_ratio_with(x, &QuadratureConfig::default())
}

pub fn normalized_ratio_with(x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(KurepaError::Domain(format!("the ratio K(x)/gamma(x+1) needs x > 0, got {x}")));
    }
    let m = x.ceil() - 1.0;
    let x0 = x - m;
    let mut rho = kurepa_with(re(x0), None, cfg)?.value.re / real_gamma(x0 + 1.0)?;
    let steps = m as u64;
    for j in 1..=steps {
        let y = x0 + j as f64;
        rho = (rho + 1.0) / y;
    }
    Ok(rho)
}

/// K(x)/Γ(x + 1) formed directly; overflows past x ≈ 170.
pub fn direct_ratio(x: f64) -> Result<f64> {
    Ok(real_kurepa(x)? / real_gamma(x + 1.0)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryRatio {
    pub ratio: f64,
    pub ok: bool,
    /// ratio equals 1 within the weak slack (expected at x = k + 2).
    pub equality: bool,
}

/// K(x − k)/Γ(x − k + 1) ≤ 1 for x ≥ k + 2.
pub fn corollary_ratio(k: u32, x: f64) -> Result<CorollaryRatio> {
    positive_k(k)?;
    at_least(x, f64::from(k) + 2.0, "the ratio corollary")?;
    let ratio = normalized_ratio(x - f64::from(k))?;
    Ok(CorollaryRatio {
        ratio,
        ok: ratio <= 1.0 + WEAK_SLACK,
        equality: (ratio - 1.0).abs() <= WEAK_SLACK,
    })
}

fn positive_k(k: u32) -> Result<()> {
    if k == 0 {
        Err(KurepaError::Domain("k must be a positive integer".to_string()))
    } else {
        Ok(())
    }
}

/// A_k(x) = R_k(x) and P_{k−1}(x); B_k = (P_{k−1} + 1)/P_{k−1} · A_k and
/// B_k − A_k = R_k/P_{k−1}.
#[derive(Debug, Clone, Copy)]
struct Envelope {
    lower: f64,
    upper: f64,
    gap: f64,
}

fn envelope(k: u32, x: f64) -> Result<Envelope> {
    let z = re(x);
    let lower = r_n(k, z, Route::Explicit)?.value.re;
    let p = p_n(k - 1, z, Route::Explicit)?.value.re;
    Ok(Envelope {
        lower,
        upper: (p + 1.0) / p * lower,
        gap: lower / p,
    })
}

/// One row of the two-sided bound on K(x)/Γ(x + 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub k: u32,
    pub x: f64,
    pub a_k: f64,
    pub b_k: f64,
    /// K(x)/Γ(x + 1)
    pub ratio: f64,
    /// a_k < ratio
    pub left_ok: bool,
    /// ratio ≤ b_k
    pub right_ok: bool,
    /// ratio = b_k within the weak slack; expected exactly at x = k + 2.
    pub right_equality: bool,
    /// b_k − a_k, computed as R_k/P_{k−1}.
    pub gap: f64,
}

impl BoundReport {
    pub fn left_margin(&self) -> f64 {
        self.ratio - self.a_k
    }

    pub fn right_margin(&self) -> f64 {
        self.b_k - self.ratio
    }
}

/// R_k(x) < K(x)/Γ(x + 1) ≤ (P_{k−1}(x) + 1)/P_{k−1}(x) · R_k(x), x ≥ k + 2.
pub fn sandwich_bounds(k: u32, x: f64) -> Result<BoundReport> {
    positive_k(k)?;
    at_least(x, f64::from(k) + 2.0, "the two-sided bound")?;
    let env = envelope(k, x)?;
    let ratio = normalized_ratio(x)?;
    let scale = ratio.abs().max(env.upper.abs());
    Ok(BoundReport {
        k,
        x,
        a_k: env.lower,
        b_k: env.upper,
        ratio,
        left_ok: ratio - env.lower > STRICT_MARGIN * scale,
        right_ok: ratio <= env.upper + WEAK_SLACK * scale,
        right_equality: (env.upper - ratio).abs() <= WEAK_SLACK * scale,
        gap: env.gap,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NestingReport {
    pub ok: bool,
    /// A_{k+1} − A_k, ratio − A_{k+1}, B_{k+1} − ratio, B_k − B_{k+1}.
    pub margins: [f64; 4],
}

/// A_k < A_{k+1} < K(x)/Γ(x + 1) ≤ B_{k+1} < B_k for x ≥ k + 3.
pub fn nesting_check(k: u32, x: f64) -> Result<NestingReport> {
    positive_k(k)?;
    at_least(x, f64::from(k) + 3.0, "the nested bounds")?;
    let outer = envelope(k, x)?;
    let inner = envelope(k + 1, x)?;
    let ratio = normalized_ratio(x)?;
    let margins = [
        inner.lower - outer.lower,
        ratio - inner.lower,
        inner.upper - ratio,
        outer.upper - inner.upper,
    ];
    let scale = ratio.abs().max(outer.upper.abs());
    let strict = |m: f64| m > STRICT_MARGIN * scale;
    let ok = strict(margins[0]) && strict(margins[1]) && margins[2] >= -WEAK_SLACK * scale && strict(margins[3]);
    Ok(NestingReport { ok, margins })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticRow {
    pub x: f64,
    /// x · A_k(x)
    pub scaled_lower: f64,
    /// x^k · (B_k(x) − A_k(x))
    pub scaled_gap: f64,
}

/// x·A_k(x) and x^k·(B_k − A_k)(x), both tending to 1 as x grows.
pub fn asymptotic_diagnostics(k: u32, xs: &[f64]) -> Result<Vec<AsymptoticRow>> {
    positive_k(k)?;
    xs.iter()
        .map(|&x| {
            at_least(x, f64::from(k) + 2.0, "the asymptotic diagnostics")?;
            let env = envelope(k, x)?;
            Ok(AsymptoticRow {
                x,
                scaled_lower: x * env.lower,
                scaled_gap: x.powi(k as i32) * env.gap,
            })
        })
        .collect()
}
