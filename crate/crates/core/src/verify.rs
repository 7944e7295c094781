//! Seeded property sweeps over the whole library.
//!
//! Each suite returns one [`PropertyOutcome`] per property. A property is
//! either a residual (passes when every residual is at most `threshold`) or
//! a margin (passes when every inequality holds; `worst` is then the
//! smallest margin seen).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{
    asymptotic_diagnostics, corollary_ratio, AsymptoticRow, direct_ratio, gamma_p5_approx, karamata_bound, lemma4_check,
    lemma5_check, nesting_check, normalized_ratio, sandwich_bounds, theorem3_check,
};
use crate::error::Result;
use crate::gamma::{gamma, log_gamma};
use crate::kurepa::{kurepa, kurepa_derivative, kurepa_integral, left_factorial_exact, QuadratureConfig};
use crate::recurrences::{g_k, p_n, q_n, r_n, verify_theorem1, verify_theorem2, Route, SequenceEval};
use crate::ComplexValue;
use num_traits::ToPrimitive;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Gamma,
    Kurepa,
    Recurrences,
    Bounds,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Gamma, Suite::Kurepa, Suite::Recurrences, Suite::Bounds];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gamma => "gamma",
            Suite::Kurepa => "kurepa",
            Suite::Recurrences => "recurrences",
            Suite::Bounds => "bounds",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}' (expected gamma, kurepa, recurrences or bounds)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Residual,
    Margin,
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Residual => "residual",
            CheckKind::Margin => "margin",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub suite: Suite,
    pub property: &'static str,
    pub kind: CheckKind,
    pub checks: usize,
    pub failures: usize,
    pub worst: f64,
    pub threshold: f64,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }
}

struct Tally(PropertyOutcome);

impl Tally {
    fn residual(suite: Suite, property: &'static str, threshold: f64) -> Self {
        Tally(PropertyOutcome {
            suite,
            property,
            kind: CheckKind::Residual,
            checks: 0,
            failures: 0,
            worst: 0.0,
            threshold,
        })
    }

    fn margin(suite: Suite, property: &'static str, threshold: f64) -> Self {
        Tally(PropertyOutcome {
            suite,
            property,
            kind: CheckKind::Margin,
            checks: 0,
            failures: 0,
            worst: f64::INFINITY,
            threshold,
        })
    }

    fn record(&mut self, r: Result<f64>) {
        let o = &mut self.0;
        o.checks += 1;
        match r {
            Ok(v) if v.is_finite() => {
                if o.kind == CheckKind::Residual {
                    o.worst = o.worst.max(v);
                    if v > o.threshold {
                        o.failures += 1;
                    }
                } else {
                    o.worst = o.worst.min(v);
                    if v <= o.threshold {
                        o.failures += 1;
                    }
                }
            }
            _ => {
                o.failures += 1;
                o.worst = f64::NAN;
            }
        }
    }

    /// Margin check whose pass/fail decision was made by the library.
    fn flagged(&mut self, r: Result<(f64, bool)>) {
        let o = &mut self.0;
        o.checks += 1;
        match r {
            Ok((m, ok)) => {
                if !o.worst.is_nan() {
                    o.worst = o.worst.min(m);
                }
                if !ok {
                    o.failures += 1;
                }
            }
            Err(_) => {
                o.failures += 1;
                o.worst = f64::NAN;
            }
        }
    }

    fn finish(self) -> PropertyOutcome {
        self.0
    }
}

fn rel(a: ComplexValue, b: ComplexValue) -> f64 {
    (a - b).norm() / b.norm()
}

fn sample(rng: &mut ChaCha8Rng, re: (f64, f64), im: (f64, f64)) -> ComplexValue {
    Complex64::new(rng.random_range(re.0..re.1), rng.random_range(im.0..im.1))
}

/// `count` points with the given ranges, each at least `gap` away from every
/// integer in `avoid`.
fn sample_avoiding(
    rng: &mut ChaCha8Rng,
    count: usize,
    re: (f64, f64),
    im: (f64, f64),
    avoid: std::ops::Range<i64>,
    gap: f64,
) -> Vec<ComplexValue> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let z = sample(rng, re, im);
        if avoid.clone().all(|i| (z - i as f64).norm() >= gap) {
            out.push(z);
        }
    }
    out
}

/// Evenly spaced grid `start + i·step`, i = 0..count.
pub fn linear_grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let step = (stop - start) / (count - 1) as f64;
    (0..count)
        .map(|i| if i + 1 == count { stop } else { start + i as f64 * step })
        .collect()
}

/// Run one suite with the given seed.
pub fn run_suite(suite: Suite, seed: u64) -> Vec<PropertyOutcome> {
    // independent stream per suite so that selecting suites does not shift samples
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((suite as u64 + 1) << 32));
    match suite {
        Suite::Gamma => gamma_suite(&mut rng),
        Suite::Kurepa => kurepa_suite(&mut rng),
        Suite::Recurrences => recurrences_suite(&mut rng),
        Suite::Bounds => bounds_suite(),
    }
}

fn gamma_suite(rng: &mut ChaCha8Rng) -> Vec<PropertyOutcome> {
    let s = Suite::Gamma;
    let zs: Vec<_> = (0..500).map(|_| sample(rng, (0.1, 20.0), (-10.0, 10.0))).collect();

    let mut fe = Tally::residual(s, "functional_equation", 1e-10);
    let mut conj = Tally::residual(s, "conjugate_symmetry", 1e-12);
    for &z in &zs {
        fe.record((|| Ok(rel(z * gamma(z)?, gamma(z + 1.0)?)))());
        conj.record((|| Ok(rel(gamma(z.conj())?, gamma(z)?.conj())))());
    }

    let mut ints = Tally::residual(s, "integer_factorials", 1e-13);
    let mut factorial = 1.0_f64;
    for n in 0..=15u32 {
        if n > 0 {
            factorial *= f64::from(n);
        }
        ints.record((|| Ok((gamma(Complex64::new(f64::from(n) + 1.0, 0.0))?.re - factorial).abs() / factorial))());
    }

    let mut lg = Tally::residual(s, "log_gamma_consistency", 1e-10);
    for x in linear_grid(0.5, 30.0, 296) {
        lg.record((|| {
            let g = gamma(Complex64::new(x, 0.0))?.re;
            Ok((log_gamma(x)?.exp() - g).abs() / g)
        })());
    }
    vec![fe.finish(), conj.finish(), ints.finish(), lg.finish()]
}

fn three_term_residual(z: ComplexValue) -> Result<f64> {
    let up = kurepa(z + 1.0)?.value;
    let mid = (z + 1.0) * kurepa(z)?.value;
    let down = z * kurepa(z - 1.0)?.value;
    let scale = up.norm().max(mid.norm()).max(down.norm()).max(1.0);
    Ok((up - mid + down).norm() / scale)
}

fn functional_residual(z: ComplexValue) -> Result<f64> {
    let k = kurepa(z)?.value;
    let km1 = kurepa(z - 1.0)?.value;
    let g = gamma(z)?;
    let scale = k.norm().max(km1.norm()).max(g.norm()).max(1.0);
    Ok((k - km1 - g).norm() / scale)
}

fn kurepa_suite(rng: &mut ChaCha8Rng) -> Vec<PropertyOutcome> {
    let s = Suite::Kurepa;
    let cfg = QuadratureConfig::default();
    let zs: Vec<_> = (0..200).map(|_| sample(rng, (1.5, 10.0), (-5.0, 5.0))).collect();

    let mut fe = Tally::residual(s, "functional_equation", 1e-8);
    let mut three = Tally::residual(s, "three_term_equation", 1e-7);
    for &z in &zs {
        fe.record(functional_residual(z));
        three.record(three_term_residual(z));
    }

    let mut series = Tally::residual(s, "series_vs_quadrature", 1e-9);
    for n in 1..=12u64 {
        series.record((|| {
            let exact = left_factorial_exact(n).value.to_f64().unwrap_or(f64::INFINITY);
            let quad = kurepa_integral(Complex64::new(n as f64, 0.0), &cfg)?.value;
            Ok((quad - exact).norm() / exact.max(1.0))
        })());
    }

    let mut cont = Tally::residual(s, "continuation_consistency", 1e-10);
    let mut conj = Tally::residual(s, "conjugate_symmetry", 1e-9);
    for _ in 0..50 {
        let z = Complex64::new(1.0 - rng.random_range(0.0..0.999), rng.random_range(-3.0..3.0));
        cont.record((|| Ok((kurepa(z - 1.0)?.value - (kurepa(z)?.value - gamma(z)?)).norm()))());
        let w = sample(rng, (-3.5, 8.0), (0.05, 4.0));
        conj.record((|| {
            let k = kurepa(w)?.value;
            Ok((kurepa(w.conj())?.value - k.conj()).norm() / k.norm().max(1.0))
        })());
    }

    let mut deriv = Tally::residual(s, "derivative_vs_finite_difference", 1e-5);
    for x in [0.1, 0.3, 0.5, 0.7, 0.9] {
        deriv.record((|| {
            let h = 1e-4;
            let fd = (kurepa(Complex64::new(x + h, 0.0))?.value.re - kurepa(Complex64::new(x - h, 0.0))?.value.re)
                / (2.0 * h);
            Ok((kurepa_derivative(x)? - fd).abs())
        })());
    }
    vec![
        fe.finish(),
        three.finish(),
        series.finish(),
        cont.finish(),
        conj.finish(),
        deriv.finish(),
    ]
}

/// Sampling region for the route comparison of the three sequences.
pub const ROUTE_SAMPLE_RE: (f64, f64) = (-5.0, 25.0);
pub const ROUTE_SAMPLE_IM: (f64, f64) = (-3.0, 3.0);

fn route_gap<F>(f: F, n: u32, z: ComplexValue) -> Result<f64>
where
    F: Fn(u32, ComplexValue, Route) -> Result<SequenceEval>,
{
    let a = f(n, z, Route::Recurrence)?.value;
    let b = f(n, z, Route::Explicit)?.value;
    Ok((a - b).norm() / b.norm().max(1.0))
}

fn recurrences_suite(rng: &mut ChaCha8Rng) -> Vec<PropertyOutcome> {
    let s = Suite::Recurrences;
    let mut p = Tally::residual(s, "route_equivalence_p", 1e-10);
    let mut q = Tally::residual(s, "route_equivalence_q", 1e-10);
    let mut r = Tally::residual(s, "route_equivalence_r", 1e-10);
    let mut qr = Tally::residual(s, "q_minus_r_is_one", 1e-12);
    for n in 1..=20u32 {
        for z in sample_avoiding(rng, 100, ROUTE_SAMPLE_RE, ROUTE_SAMPLE_IM, 0..0, 0.0) {
            p.record(route_gap(p_n, n, z));
        }
        for z in sample_avoiding(rng, 100, ROUTE_SAMPLE_RE, ROUTE_SAMPLE_IM, 0..i64::from(n), 1e-2) {
            q.record(route_gap(q_n, n, z));
            r.record(route_gap(r_n, n, z));
            for route in [Route::Recurrence, Route::Explicit] {
                qr.record((|| Ok((q_n(n, z, route)?.value - r_n(n, z, route)?.value - 1.0).norm()))());
            }
        }
    }

    let mut gr = Tally::residual(s, "g_r_identity", 1e-10);
    let mut gp = Tally::residual(s, "g_p_identity", 1e-10);
    for k in 1..=10u32 {
        let kf = f64::from(k);
        for x in [kf + 1.5, kf + 2.0, kf + 5.0, kf + 10.0] {
            let z = Complex64::new(x, 0.0);
            gr.record((|| {
                let g = g_k(k, x)?;
                Ok(((gamma(z + 1.0)? * r_n(k, z, Route::Explicit)?.value).re - g).abs() / g)
            })());
            gp.record((|| {
                let g = g_k(k, x)?;
                Ok(((gamma(z - kf)? * (p_n(k, z, Route::Explicit)?.value - 1.0)).re - g).abs() / g)
            })());
        }
    }

    let mut tele = Tally::residual(s, "p_telescoping", 1e-9);
    for n in 1..=8u32 {
        let nf = f64::from(n);
        for x in linear_grid(nf + 1.0, nf + 6.0, 11) {
            tele.record((|| {
                let z = Complex64::new(x, 0.0);
                let lhs = (p_n(n, z, Route::Explicit)?.value - 1.0) * gamma(z - nf)?;
                let mut rhs = Complex64::new(0.0, 0.0);
                for j in 1..=n {
                    rhs += gamma(z - nf + f64::from(j))?;
                }
                Ok(rel(lhs, rhs))
            })());
        }
    }

    let mut t1 = Tally::residual(s, "shift_identity_p", 1e-8);
    let mut t2 = Tally::residual(s, "shift_identity_q_r", 1e-8);
    for n in 1..=8u32 {
        let nf = f64::from(n);
        for x in linear_grid(nf + 1.0, nf + 8.0, 50) {
            let z = Complex64::new(x, 0.0);
            t1.record(verify_theorem1(n, z));
            t2.record(verify_theorem2(n, z).map(|(a, b)| a.max(b)));
        }
    }
    vec![
        p.finish(),
        q.finish(),
        r.finish(),
        qr.finish(),
        gr.finish(),
        gp.finish(),
        tele.finish(),
        t1.finish(),
        t2.finish(),
    ]
}

/// Grid spacing used for the two-sided bound and nesting sweeps.
pub const SANDWICH_STEP: f64 = 0.25;

/// Abscissae at which the asymptotic envelope is checked.
pub const ASYMPTOTIC_POINTS: [f64; 4] = [1e2, 1e3, 1e4, 1e6];

fn bounds_suite() -> Vec<PropertyOutcome> {
    let s = Suite::Bounds;
    let unit = linear_grid(0.0, 1.0, 1001);

    let mut l4a = Tally::margin(s, "gamma_quadratic_upper", 0.0);
    let mut l4b = Tally::margin(s, "gamma_linear_lower", 0.0);
    let mut p5 = Tally::residual(s, "p5_approximation_error", 5e-5);
    for &x in &unit {
        let c = lemma4_check(x);
        l4a.flagged(c.clone().map(|c| (c.margins.0, c.ineq1_ok)));
        l4b.flagged(c.map(|c| (c.margins.1, c.ineq2_ok)));
        p5.record((|| Ok((gamma_p5_approx(x)? - gamma(Complex64::new(x + 1.0, 0.0))?.re).abs()))());
    }

    let mut kar = Tally::margin(s, "karamata_kernel_bound", 0.0);
    for i in 0..1000 {
        let t = 10f64.powf(-3.0 + 6.0 * i as f64 / 999.0);
        kar.flagged(karamata_bound(t).map(|c| (c.rhs - c.lhs, c.ok)));
    }
    kar.flagged(karamata_bound(1.0).map(|c| (c.rhs - c.lhs, c.ok)));

    let mut l5 = Tally::margin(s, "linear_bound_on_unit_interval", 0.0);
    for x in linear_grid(0.0, 1.0, 101) {
        l5.flagged(lemma5_check(x).map(|c| (c.bound - c.kx, c.ok)));
    }

    let mut t3 = Tally::margin(s, "shifted_kurepa_below_gamma", 0.0);
    let mut t3eq = Tally::residual(s, "equality_at_three", 1e-9);
    let mut remark = Tally::margin(s, "improves_older_bound", 0.0);
    for x in linear_grid(3.0, 20.0, 200) {
        let c = theorem3_check(x);
        t3.flagged(c.clone().map(|c| ((c.rhs - c.lhs) / c.rhs, c.ok)));
        remark.flagged(c.map(|c| {
            let ok = c.doubled_ok && c.kx <= c.arandelovic_rhs && c.relative_improvement > 0.0;
            (c.relative_improvement, ok)
        }));
    }
    t3eq.record(theorem3_check(3.0).map(|c| (c.lhs - c.rhs).abs()));

    let mut cor = Tally::margin(s, "ratio_at_most_one", 0.0);
    let mut sand_l = Tally::margin(s, "sandwich_left", 0.0);
    let mut sand_r = Tally::margin(s, "sandwich_right", 0.0);
    let mut sand_eq = Tally::residual(s, "sandwich_right_equality", 1e-9);
    let mut nest = Tally::margin(s, "nesting_chain", 0.0);
    for k in 1..=6u32 {
        let kf = f64::from(k);
        let count = ((40.0 - (kf + 2.0)) / SANDWICH_STEP).round() as usize + 1;
        for x in linear_grid(kf + 2.0, 40.0, count) {
            cor.flagged(corollary_ratio(k, x).map(|c| (1.0 - c.ratio, c.ok)));
            let b = sandwich_bounds(k, x);
            sand_l.flagged(b.clone().map(|b| (b.left_margin(), b.left_ok)));
            sand_r.flagged(b.map(|b| (b.right_margin(), b.right_ok)));
            if x >= kf + 3.0 {
                nest.flagged(nesting_check(k, x).map(|n| (n.margins.iter().copied().fold(f64::INFINITY, f64::min), n.ok)));
            }
        }
        sand_eq.record(sandwich_bounds(k, kf + 2.0).map(|b| (b.b_k - b.ratio).abs() / b.b_k));
    }

    let mut asym_lower = Tally::residual(s, "asymptotic_lower_envelope", 20.0);
    let mut asym_gap = Tally::residual(s, "asymptotic_gap_envelope", 20.0);
    let mut asym_mono = Tally::margin(s, "asymptotic_monotone_approach", 0.0);
    for k in 1..=4u32 {
        match asymptotic_diagnostics(k, &ASYMPTOTIC_POINTS) {
            Ok(rows) => {
                // x·|v − 1| must stay inside the 20/x envelope
                for row in &rows {
                    asym_lower.record(Ok(row.x * (row.scaled_lower - 1.0).abs()));
                    asym_gap.record(Ok(row.x * (row.scaled_gap - 1.0).abs()));
                }
                for pair in rows.windows(2) {
                    for f in [|r: &AsymptoticRow| r.scaled_lower, |r: &AsymptoticRow| r.scaled_gap] {
                        let (before, after) = ((f(&pair[0]) - 1.0).abs(), (f(&pair[1]) - 1.0).abs());
                        asym_mono.flagged(Ok((before - after, after <= before)));
                    }
                }
            }
            Err(e) => {
                asym_lower.record(Err(e.clone()));
                asym_gap.record(Err(e));
            }
        }
    }

    let mut stable = Tally::residual(s, "stable_ratio_vs_direct", 1e-9);
    for x in linear_grid(3.0, 25.0, 89) {
        stable.record((|| {
            let d = direct_ratio(x)?;
            Ok((normalized_ratio(x)? - d).abs() / d)
        })());
    }

    vec![
        l4a.finish(),
        l4b.finish(),
        p5.finish(),
        kar.finish(),
        l5.finish(),
        t3.finish(),
        t3eq.finish(),
        remark.finish(),
        cor.finish(),
        sand_l.finish(),
        sand_r.finish(),
        sand_eq.finish(),
        nest.finish(),
        asym_lower.finish(),
        asym_gap.finish(),
        asym_mono.finish(),
        stable.finish(),
    ]
}
