//! Kurepa's function K(z): the left factorial !n = 0! + 1! + … + (n − 1)!
//! extended to the complex plane.
//!
//! For Re z > 0 the value comes from the integral
//!
//! ```text
//!     K(z) = ∫_0^∞ e^{−t} (t^z − 1)/(t − 1) dt
//! ```
//!
//! and everywhere else from K(z − 1) = K(z) − Γ(z). The result is meromorphic
//! with simple poles at −1 and at −n for n ≥ 3; the point −2 is removable.

use std::fmt;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{KurepaError, Result};
use crate::gamma::{self, check_finite, gamma, gamma_unchecked};
use crate::quadrature::{integrate, QuadratureResult};
use crate::ComplexValue;

/// Tolerance for recognising a non-negative integer argument.
pub const INTEGER_TOLERANCE: f64 = 1e-12;

/// Per-subtraction rounding charge used when continuing to Re z ≤ 0.
const CONTINUATION_ROUNDING: f64 = 1e-15;

/// Largest tail chunk count before the tail is declared non-convergent.
const MAX_TAIL_CHUNKS: usize = 64;

/// K(n) as an exact integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactLeftFactorial {
    pub n: u64,
    pub value: BigUint,
}

/// Strategy that produced a [`KurepaValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ExactSeries,
    Quadrature,
    Continuation,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ExactSeries => "ExactSeries",
            Method::Quadrature => "Quadrature",
            Method::Continuation => "Continuation",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KurepaValue {
    pub value: ComplexValue,
    pub abs_err_estimate: f64,
    pub method: Method,
}

/// Settings for the integral representation.
///
/// The half line is split into `(0, 1 − δ]`, `[1 − δ, 1 + δ]`, `[1 + δ, T]`
/// and `(T, ∞)` with `δ = split_delta` and `T = tail_cutoff`. The middle piece
/// replaces the 0/0 quotient by its binomial series around `t = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub split_delta: f64,
    pub tail_cutoff: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            split_delta: 0.25,
            tail_cutoff: 60.0,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(KurepaError::Domain(msg));
        if !(self.split_delta > 0.0 && self.split_delta <= 0.5) {
            return bad(format!("split_delta must lie in (0, 0.5], got {}", self.split_delta));
        }
        if !(self.tail_cutoff >= 10.0 && self.tail_cutoff.is_finite()) {
            return bad(format!("tail_cutoff must be finite and >= 10, got {}", self.tail_cutoff));
        }
        if !(self.abs_tol >= 1e-14 && self.abs_tol.is_finite()) {
            return bad(format!("abs_tol must be finite and >= 1e-14, got {}", self.abs_tol));
        }
        if self.max_subdivisions == 0 {
            return bad("max_subdivisions must be positive".to_string());
        }
        Ok(())
    }
}

/// Exact K(n) = Σ_{i=0}^{n−1} i!, with K(0) = 0.
pub fn left_factorial_exact(n: u64) -> ExactLeftFactorial {
    let mut sum = BigUint::zero();
    let mut factorial = BigUint::from(1u32);
    for i in 0..n {
        if i > 0 {
            factorial *= i;
        }
        sum += &factorial;
    }
    ExactLeftFactorial { n, value: sum }
}

/// Sum of the binomial series (t^z − 1)/(t − 1) = Σ_k C(z, k+1) u^k, u = t − 1.
fn quotient_series(u: f64, z: Complex64) -> Complex64 {
    let mut coeff = z;
    let mut power = 1.0;
    let mut sum = z;
    let zn = z.norm();
    for k in 1..2000 {
        coeff = coeff * (z - k as f64) / (k as f64 + 1.0);
        power *= u;
        let term = coeff * power;
        sum += term;
        if (k as f64) > zn + 1.0 && term.norm() <= 1e-17 * sum.norm().max(1.0) {
            break;
        }
    }
    sum
}

/// ln(1 + u)/u = Σ_k (−u)^k/(k + 1).
fn log_quotient_series(u: f64) -> f64 {
    let mut power = 1.0;
    let mut sum = 1.0;
    for k in 1..2000 {
        power *= -u;
        let term = power / (k as f64 + 1.0);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Integrate over the four pieces of the half line. `outer` is used away
/// from t = 1, `middle` on [1 − δ, 1 + δ]; `tail_bound(b)` bounds the
/// integral over (b, ∞) or returns infinity when no bound applies yet.
fn integrate_half_line<O, M, B>(outer: O, middle: M, tail_bound: B, cfg: &QuadratureConfig) -> Result<(Complex64, f64)>
where
    O: Fn(f64) -> Complex64,
    M: Fn(f64) -> Complex64,
    B: Fn(f64) -> f64,
{
    cfg.validate()?;
    let piece_tol = cfg.abs_tol / 4.0;
    let lo = 1.0 - cfg.split_delta;
    let hi = 1.0 + cfg.split_delta;
    let cutoff = cfg.tail_cutoff;

    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut add = |r: QuadratureResult| {
        value += r.value;
        err += r.abs_err;
    };
    add(integrate(&outer, 0.0, lo, piece_tol, cfg.max_subdivisions)?);
    add(integrate(&middle, lo, hi, piece_tol, cfg.max_subdivisions)?);
    add(integrate(&outer, hi, cutoff, piece_tol, cfg.max_subdivisions)?);

    let mut b = cutoff;
    let mut chunks = 0;
    loop {
        let threshold = (cfg.abs_tol / 10.0).max(1e-15 * value.norm());
        let bound = tail_bound(b);
        if bound < threshold {
            err += bound;
            break;
        }
        if chunks == MAX_TAIL_CHUNKS {
            return Err(KurepaError::Convergence {
                estimate: bound,
                target: threshold,
                subdivisions: chunks,
            });
        }
        let r = integrate(&outer, b, b + cutoff, piece_tol, cfg.max_subdivisions)?;
        value += r.value;
        err += r.abs_err;
        b += cutoff;
        chunks += 1;
    }
    Ok((value, err))
}

/// ∫_b^∞ e^{−t} t^a (1 + ln t)/(t − 1) dt is below this once b > a + 1.
fn exp_power_tail(b: f64, a: f64) -> f64 {
    if b <= a + 2.0 || b <= 2.0 {
        return f64::INFINITY;
    }
    let head = (-b + a.max(0.0) * b.ln()).exp() + (-b).exp();
    head * (1.0 + b.ln()) / (b - 1.0) * b / (b - a.max(0.0) - 1.0)
}

/// K(z) by quadrature of the integral representation, Re z > 0.
pub fn kurepa_integral(z: ComplexValue, cfg: &QuadratureConfig) -> Result<KurepaValue> {
    check_finite(z)?;
    if z.re <= 0.0 {
        return Err(KurepaError::Domain(format!(
            "the integral representation needs Re z > 0, got {z}"
        )));
    }
    let outer = |t: f64| {
        let lt = t.ln();
        let e = (-t).exp();
        ((z * lt - t).exp() - e) / (t - 1.0)
    };
    let middle = |t: f64| quotient_series(t - 1.0, z) * (-t).exp();
    let (value, err) = integrate_half_line(outer, middle, |b| exp_power_tail(b, z.re), cfg)?;
    Ok(KurepaValue {
        value,
        abs_err_estimate: err,
        method: Method::Quadrature,
    })
}

/// K′(x) = ∫_0^∞ e^{−t} t^x ln t/(t − 1) dt for x in [0, 1].
pub fn kurepa_derivative(x: f64) -> Result<f64> {
    kurepa_derivative_with(x, &QuadratureConfig::default())
}

pub fn kurepa_derivative_with(x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(KurepaError::Domain(format!(
            "the derivative is provided on [0, 1] only, got {x}"
        )));
    }
    let outer = |t: f64| {
        let lt = t.ln();
        Complex64::new((x * lt - t).exp() * lt / (t - 1.0), 0.0)
    };
    let middle = |t: f64| Complex64::new((x * t.ln() - t).exp() * log_quotient_series(t - 1.0), 0.0);
    let (value, _) = integrate_half_line(outer, middle, |b| exp_power_tail(b, x), cfg)?;
    Ok(value.re)
}

fn as_nonnegative_integer(z: ComplexValue) -> Option<u64> {
    let n = z.re.round();
    if n >= 0.0 && (z.re - n).abs() <= INTEGER_TOLERANCE && z.im.abs() <= INTEGER_TOLERANCE {
        Some(n as u64)
    } else {
        None
    }
}

fn exact_series(n: u64) -> Result<KurepaValue> {
    let value = left_factorial_exact(n)
        .value
        .to_f64()
        .filter(|v| v.is_finite())
        .ok_or_else(|| KurepaError::Domain(format!("K({n}) overflows double precision")))?;
    Ok(KurepaValue {
        value: Complex64::new(value, 0.0),
        abs_err_estimate: 0.0,
        method: Method::ExactSeries,
    })
}

/// Pole of K within `gamma::POLE_TOLERANCE` of `z`, if any.
fn kurepa_pole(z: ComplexValue) -> Option<i64> {
    gamma::near_nonpositive_integer(z, gamma::POLE_TOLERANCE).filter(|&n| n != 0 && n != -2)
}

/// K(z) on the whole plane, choosing the evaluation strategy from `z`.
pub fn kurepa(z: ComplexValue) -> Result<KurepaValue> {
    kurepa_with(z, None, &QuadratureConfig::default())
}

/// K(z) with an optional forced strategy.
///
/// A forced `Continuation` on Re z > 0 steps down to the strip (0, 1] and
/// adds the gamma terms back, which gives an independent route to the same
/// value.
pub fn kurepa_with(z: ComplexValue, method: Option<Method>, cfg: &QuadratureConfig) -> Result<KurepaValue> {
    check_finite(z)?;
    if let Some(n) = kurepa_pole(z) {
        return Err(KurepaError::Pole {
            at: n as f64,
            what: "Kurepa's function has simple poles at -1 and at -n for n >= 3",
        });
    }
    match method {
        None => {
            if let Some(n) = as_nonnegative_integer(z) {
                exact_series(n)
            } else if z.re > 0.0 {
                kurepa_integral(z, cfg)
            } else {
                continue_left(z, cfg)
            }
        }
        Some(Method::ExactSeries) => match as_nonnegative_integer(z) {
            Some(n) => exact_series(n),
            None => Err(KurepaError::Domain(format!(
                "the exact series applies to non-negative integers only, got {z}"
            ))),
        },
        Some(Method::Quadrature) => kurepa_integral(z, cfg),
        Some(Method::Continuation) => {
            if z.re > 1.0 {
                continue_right(z, cfg)
            } else if z.re > 0.0 {
                // already in the strip; one step up and back down
                let up = kurepa_integral(z + 1.0, cfg)?;
                let g = gamma(z + 1.0)?;
                Ok(KurepaValue {
                    value: up.value - g,
                    abs_err_estimate: up.abs_err_estimate + g.norm() * CONTINUATION_ROUNDING,
                    method: Method::Continuation,
                })
            } else {
                continue_left(z, cfg)
            }
        }
    }
}

/// Strip value K(w) for Re w in (0, 1] or slightly above.
fn strip_value(w: ComplexValue, cfg: &QuadratureConfig) -> Result<KurepaValue> {
    match as_nonnegative_integer(w) {
        Some(n) => exact_series(n),
        None => kurepa_integral(w, cfg),
    }
}

/// Re z ≤ 0: K(z) = K(z + m) − Σ_{j=1}^{m} Γ(z + j), Re(z + m) in (0, 1].
fn continue_left(z: ComplexValue, cfg: &QuadratureConfig) -> Result<KurepaValue> {
    let m = (-z.re).floor() as i64 + 1;
    // Near −2 the poles of Γ(z + 1) and Γ(z + 2) cancel:
    // Γ(z + 1) + Γ(z + 2) = Γ(z + 3)/(z + 1).
    let grouped = (z + 2.0).norm() < 0.5;
    let (anchor, first_j) = if grouped { (3, 4) } else { (m, 1) };

    let base = strip_value(z + anchor as f64, cfg)?;
    let mut value = base.value;
    let mut err = base.abs_err_estimate;
    if grouped {
        let g3 = gamma_unchecked(z + 3.0);
        let pair = g3 / (z + 1.0) + g3;
        value -= pair;
        err += pair.norm() * CONTINUATION_ROUNDING;
    }
    for j in first_j..=anchor {
        let g = gamma(z + j as f64)?;
        value -= g;
        err += g.norm() * CONTINUATION_ROUNDING;
    }
    Ok(KurepaValue {
        value,
        abs_err_estimate: err,
        method: Method::Continuation,
    })
}

/// Re z > 1: K(z) = K(z − m) + Σ_{j=0}^{m−1} Γ(z − j), Re(z − m) in (0, 1].
fn continue_right(z: ComplexValue, cfg: &QuadratureConfig) -> Result<KurepaValue> {
    let m = z.re.ceil() as i64 - 1;
    let base = strip_value(z - m as f64, cfg)?;
    let mut value = base.value;
    let mut err = base.abs_err_estimate;
    for j in 0..m {
        let g = gamma(z - j as f64)?;
        value += g;
        err += g.norm() * CONTINUATION_ROUNDING;
    }
    Ok(KurepaValue {
        value,
        abs_err_estimate: err,
        method: Method::Continuation,
    })
}

/// Residue of K at z = −n: −Σ_{j=0}^{n−1} (−1)^j / j!.
///
/// Vanishes at n = 2, where K is analytic.
pub fn kurepa_residue(n: u32) -> f64 {
    if n == 2 {
        return 0.0;
    }
    -(0..n).map(gamma::gamma_residue).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn re(x: f64) -> ComplexValue {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn exact_small_values() {
        let expected = [0u32, 1, 2, 4, 10, 34, 154, 874, 5914, 46234, 409_114];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(left_factorial_exact(n as u64).value, BigUint::from(*e));
        }
    }

    #[test]
    fn integral_at_small_integers() {
        let cfg = QuadratureConfig::default();
        for (n, e) in [(1.0, 1.0), (2.0, 2.0), (3.0, 4.0)] {
            let k = kurepa_integral(re(n), &cfg).unwrap();
            assert!((k.value.re - e).abs() < 1e-10, "K({n}) = {}", k.value);
            assert!(k.value.im.abs() < 1e-15);
            assert_eq!(k.method, Method::Quadrature);
            assert!(k.abs_err_estimate.is_finite());
        }
    }

    #[test]
    fn dispatch() {
        let k = kurepa(re(5.0)).unwrap();
        assert_eq!(k.value, re(34.0));
        assert_eq!(k.method, Method::ExactSeries);
        assert_eq!(kurepa(re(0.0)).unwrap().value, re(0.0));
        assert_eq!(kurepa(re(2.5)).unwrap().method, Method::Quadrature);
        assert_eq!(kurepa(re(-0.5)).unwrap().method, Method::Continuation);
        assert_eq!(kurepa(Complex64::new(3.0, 0.5)).unwrap().method, Method::Quadrature);
    }

    #[test]
    fn continuation_identity_at_minus_half() {
        let lhs = kurepa(re(-0.5)).unwrap().value;
        let rhs = kurepa(re(0.5)).unwrap().value - gamma(re(0.5)).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn removable_point_minus_two() {
        assert_eq!(kurepa(re(-2.0)).unwrap().value, re(1.0));
        let near: Vec<f64> = [1e-3, 1e-4, 1e-5]
            .iter()
            .map(|e| kurepa(re(-2.0 + e)).unwrap().value.re)
            .collect();
        assert!((near[0] - near[1]).abs() < 1e-2);
        assert!((near[1] - near[2]).abs() < 1e-3);
        assert!((near[2] - 1.0).abs() < 1e-4);
    }

    #[test]
    fn poles_are_rejected() {
        for p in [-1.0, -3.0, -4.0, -7.0] {
            match kurepa(re(p)) {
                Err(KurepaError::Pole { at, .. }) => assert_eq!(at, p),
                other => panic!("expected a pole at {p}, got {other:?}"),
            }
        }
        assert!(kurepa(re(-1.0 + 1e-6)).is_ok());
        assert!(matches!(kurepa(re(f64::NAN)), Err(KurepaError::Domain(_))));
        assert!(matches!(
            kurepa_integral(re(-0.5), &QuadratureConfig::default()),
            Err(KurepaError::Domain(_))
        ));
    }

    #[test]
    fn residues() {
        assert_eq!(kurepa_residue(1), -1.0);
        assert_eq!(kurepa_residue(2), 0.0);
        assert_relative_eq!(kurepa_residue(3), -0.5, max_relative = 1e-15);
        for n in [1u32, 3, 4, 5] {
            let eps = 1e-6;
            let limit = kurepa(re(-f64::from(n) + eps)).unwrap().value.re * eps;
            assert_relative_eq!(limit, kurepa_residue(n), max_relative = 1e-4);
        }
    }

    #[test]
    fn forced_methods_agree() {
        let cfg = QuadratureConfig::default();
        for z in [Complex64::new(3.7, 0.4), Complex64::new(0.3, -1.0), Complex64::new(6.0, 2.0)] {
            let q = kurepa_with(z, Some(Method::Quadrature), &cfg).unwrap();
            let c = kurepa_with(z, Some(Method::Continuation), &cfg).unwrap();
            assert!((q.value - c.value).norm() <= 1e-9 * q.value.norm().max(1.0));
            assert_eq!(c.method, Method::Continuation);
        }
        assert!(kurepa_with(re(2.5), Some(Method::ExactSeries), &cfg).is_err());
    }

    #[test]
    fn derivative_basics() {
        let d0 = kurepa_derivative(0.0).unwrap();
        assert!(d0 > 0.0 && d0.is_finite());
        assert!(kurepa_derivative(0.5).unwrap() <= 1.0);
        assert!(kurepa_derivative(-0.1).is_err());
        assert!(kurepa_derivative(1.1).is_err());
    }

    #[test]
    fn config_validation() {
        let mut cfg = QuadratureConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.split_delta = 0.6;
        assert!(cfg.validate().is_err());
        cfg = QuadratureConfig { tail_cutoff: 5.0, ..Default::default() };
        assert!(cfg.validate().is_err());
        cfg = QuadratureConfig { abs_tol: 1e-15, ..Default::default() };
        assert!(cfg.validate().is_err());
        cfg = QuadratureConfig { max_subdivisions: 0, ..Default::default() };
        assert!(kurepa_integral(re(1.5), &cfg).is_err());
    }

    #[test]
    fn tiny_budget_fails_to_converge() {
        let cfg = QuadratureConfig { max_subdivisions: 1, abs_tol: 1e-14, ..Default::default() };
        assert!(matches!(
            kurepa_integral(re(0.01), &cfg),
            Err(KurepaError::Convergence { .. })
        ));
    }
}
