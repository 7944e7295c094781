//! Polynomial and rational sequences linking K(z) with K(z − n).
//!
//! * `P_n(z) = (z − n) P_{n−1}(z) + 1`, `P_0 = 1`
//! * `Q_n`, `R_n` share the recursion
//!   `X_n = (z − n + 2)/(z − n + 1) · X_{n−1} − X_{n−2}/(z − n + 1)`
//!   with seeds `Q_1 = (z + 1)/z`, `Q_2 = z/(z − 1)`, `R_1 = 1/z`, `R_2 = 1/(z − 1)`.
//! * `G_k(x) = Σ_{i<k} Γ(x − i)`
//!
//! They satisfy `K(z) = K(z − n) + (P_n(z) − 1) Γ(z − n)` and
//! `K(z) = K(z − n) + R_n(z) Γ(z + 1) = K(z − n) + (Q_n(z) − 1) Γ(z + 1)`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{KurepaError, Result};
use crate::gamma::{check_finite, gamma};
use crate::kurepa::kurepa;
use crate::ComplexValue;

/// Distance from a singular point below which Q_n, R_n are rejected.
pub const SINGULAR_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    P,
    Q,
    R,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::P => "P",
            Family::Q => "Q",
            Family::R => "R",
            Family::G => "G",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Recurrence,
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequenceEval {
    pub family: Family,
    pub n: u32,
    pub z: ComplexValue,
    pub value: ComplexValue,
    pub route: Route,
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// P_n(z).
pub fn p_n(n: u32, z: ComplexValue, route: Route) -> Result<SequenceEval> {
    check_finite(z)?;
    let value = match route {
        Route::Recurrence => (1..=n).fold(one(), |p, m| (z - f64::from(m)) * p + 1.0),
        Route::Explicit => {
            // 1 + Σ_{j<n} Π_{i≤j} (z − n + i)
            let shift = z - f64::from(n);
            let mut product = one();
            let mut sum = one();
            for i in 0..n {
                product *= shift + f64::from(i);
                sum += product;
            }
            sum
        }
    };
    Ok(SequenceEval {
        family: Family::P,
        n,
        z,
        value,
        route,
    })
}

fn check_singular_set(n: u32, z: ComplexValue) -> Result<()> {
    check_finite(z)?;
    if n == 0 {
        return Err(KurepaError::Domain("Q_n and R_n are indexed from n = 1".to_string()));
    }
    let nearest = z.re.round();
    if nearest >= 0.0 && nearest < f64::from(n) && (z - nearest).norm() <= SINGULAR_TOLERANCE {
        return Err(KurepaError::SingularArgument {
            point: nearest as i64,
            last: i64::from(n) - 1,
        });
    }
    Ok(())
}

/// Σ_{j<n} Π_{i≤j} 1/(z − i)
fn reciprocal_falling_sum(n: u32, z: ComplexValue) -> ComplexValue {
    let mut product = one();
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..n {
        product /= z - f64::from(i);
        sum += product;
    }
    sum
}

fn two_term_recurrence(n: u32, z: ComplexValue, seed1: ComplexValue, seed2: ComplexValue) -> ComplexValue {
    if n == 1 {
        return seed1;
    }
    let (mut prev, mut cur) = (seed1, seed2);
    for m in 3..=n {
        let d = z - f64::from(m) + 1.0;
        let next = (d + 1.0) / d * cur - prev / d;
        prev = cur;
        cur = next;
    }
    cur
}

/// Q_n(z), n ≥ 1, z outside {0, …, n − 1}.
pub fn q_n(n: u32, z: ComplexValue, route: Route) -> Result<SequenceEval> {
    check_singular_set(n, z)?;
    let value = match route {
        Route::Recurrence => two_term_recurrence(n, z, (z + 1.0) / z, z / (z - 1.0)),
        Route::Explicit => 1.0 + reciprocal_falling_sum(n, z),
    };
    Ok(SequenceEval {
        family: Family::Q,
        n,
        z,
        value,
        route,
    })
}

/// R_n(z), n ≥ 1, z outside {0, …, n − 1}.
pub fn r_n(n: u32, z: ComplexValue, route: Route) -> Result<SequenceEval> {
    check_singular_set(n, z)?;
    let value = match route {
        Route::Recurrence => two_term_recurrence(n, z, one() / z, one() / (z - 1.0)),
        Route::Explicit => reciprocal_falling_sum(n, z),
    };
    Ok(SequenceEval {
        family: Family::R,
        n,
        z,
        value,
        route,
    })
}

/// G_k(x) = Σ_{i=0}^{k−1} Γ(x − i) for x > k.
pub fn g_k(k: u32, x: f64) -> Result<f64> {
    if k == 0 || !x.is_finite() || x <= f64::from(k) {
        return Err(KurepaError::Domain(format!(
            "G_k(x) needs k >= 1 and x > k, got k = {k}, x = {x}"
        )));
    }
    (0..k).try_fold(0.0, |acc, i| Ok(acc + gamma(Complex64::new(x - f64::from(i), 0.0))?.re))
}

/// Reject integers ≤ `last` (negative integers and {0, …, last}).
fn check_exclusion(z: ComplexValue, last: i64) -> Result<()> {
    check_finite(z)?;
    let nearest = z.re.round();
    if nearest <= last as f64 && (z - nearest).norm() <= SINGULAR_TOLERANCE {
        return Err(KurepaError::SingularArgument {
            point: nearest as i64,
            last,
        });
    }
    Ok(())
}

fn scaled_residual(lhs: ComplexValue, rhs_terms: &[ComplexValue]) -> f64 {
    let residual = rhs_terms.iter().fold(lhs, |acc, t| acc - t);
    let scale = rhs_terms
        .iter()
        .map(|t| t.norm())
        .fold(lhs.norm().max(1.0), f64::max);
    residual.norm() / scale
}

/// Scaled residual of K(z) − K(z − n) − (P_n(z) − 1) Γ(z − n).
pub fn verify_theorem1(n: u32, z: ComplexValue) -> Result<f64> {
    if n == 0 {
        return Err(KurepaError::Domain("n must be positive".to_string()));
    }
    check_exclusion(z, i64::from(n))?;
    let shifted = z - f64::from(n);
    let k = kurepa(z)?.value;
    let k_shifted = kurepa(shifted)?.value;
    let term = (p_n(n, z, Route::Explicit)?.value - 1.0) * gamma(shifted)?;
    Ok(scaled_residual(k, &[k_shifted, term]))
}

/// Scaled residuals of the Q form and the R form of the K(z) − K(z − n) identity.
pub fn verify_theorem2(n: u32, z: ComplexValue) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(KurepaError::Domain("n must be positive".to_string()));
    }
    check_exclusion(z, i64::from(n) - 1)?;
    let k = kurepa(z)?.value;
    let k_shifted = kurepa(z - f64::from(n))?.value;
    let g = gamma(z + 1.0)?;
    let q_term = (q_n(n, z, Route::Explicit)?.value - 1.0) * g;
    let r_term = r_n(n, z, Route::Explicit)?.value * g;
    Ok((
        scaled_residual(k, &[k_shifted, q_term]),
        scaled_residual(k, &[k_shifted, r_term]),
    ))
}
