//! Globally adaptive 21-point Gauss–Kronrod quadrature for complex-valued
//! integrands on finite real intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{KurepaError, Result};

/// Relative accuracy floor. Requests tighter than this relative to the
/// integral's magnitude are unattainable in double precision.
pub const RELATIVE_FLOOR: f64 = 1e-13;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err;
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

#[allow(clippy::needless_range_loop)]
fn gauss_kronrod<F>(f: &F, a: f64, b: f64) -> Segment
where
    F: Fn(f64) -> Complex64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut fv1 = [Complex64::new(0.0, 0.0); 10];
    let mut fv2 = [Complex64::new(0.0, 0.0); 10];

    let fc = f(center);
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut kronrod = fc * WGK[10];
    let mut res_abs = WGK[10] * fc.norm();

    for j in 0..5 {
        let k = 2 * j + 1;
        let dx = half * XGK[k];
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv1[k] = f1;
        fv2[k] = f2;
        gauss += (f1 + f2) * WG[j];
        kronrod += (f1 + f2) * WGK[k];
        res_abs += WGK[k] * (f1.norm() + f2.norm());
    }
    for j in 0..5 {
        let k = 2 * j;
        let dx = half * XGK[k];
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv1[k] = f1;
        fv2[k] = f2;
        kronrod += (f1 + f2) * WGK[k];
        res_abs += WGK[k] * (f1.norm() + f2.norm());
    }

    let mean = kronrod * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).norm();
    for k in 0..10 {
        res_asc += WGK[k] * ((fv1[k] - mean).norm() + (fv2[k] - mean).norm());
    }

    let width = half.abs();
    let err = ((kronrod - gauss) * half).norm();
    let res_abs = res_abs * width;
    Segment {
        a,
        b,
        value: kronrod * half,
        error: rescale_error(err, res_abs, res_asc * width),
        abs_value: res_abs,
    }
}

/// Result of one adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub abs_err: f64,
    pub subdivisions: usize,
}

/// Integrate `f` over `[a, b]` until the summed error estimate drops below
/// `max(abs_tol, RELATIVE_FLOOR·|I|, roundoff)` or `max_subdivisions`
/// bisections have been spent.
pub fn integrate<F>(f: F, a: f64, b: f64, abs_tol: f64, max_subdivisions: usize) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    if a == b {
        return Ok(QuadratureResult {
            value: Complex64::new(0.0, 0.0),
            abs_err: 0.0,
            subdivisions: 0,
        });
    }
    let first = gauss_kronrod(&f, a, b);
    let mut total = first.value;
    let mut total_err = first.error;
    let mut total_abs = first.abs_value;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut subdivisions = 0;

    loop {
        let target = abs_tol
            .max(RELATIVE_FLOOR * total.norm())
            .max(100.0 * f64::EPSILON * total_abs);
        if total_err <= target {
            break;
        }
        if subdivisions >= max_subdivisions {
            return Err(KurepaError::Convergence {
                estimate: total_err,
                target,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap holds every live segment");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // interval can no longer be split in double precision
            return Err(KurepaError::Convergence {
                estimate: total_err,
                target,
                subdivisions,
            });
        }
        let left = gauss_kronrod(&f, worst.a, mid);
        let right = gauss_kronrod(&f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        total_abs += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
    }

    // re-sum to shed the drift of the incremental updates
    let value = heap.iter().map(|s| s.value).sum();
    let abs_err = heap.iter().map(|s| s.error).sum();
    Ok(QuadratureResult {
        value,
        abs_err,
        subdivisions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real<F: Fn(f64) -> f64>(f: F) -> impl Fn(f64) -> Complex64 {
        move |t| Complex64::new(f(t), 0.0)
    }

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(real(|t| t.powi(5) - 3.0 * t), 0.0, 2.0, 1e-14, 10).unwrap();
        assert!((r.value.re - (64.0 / 6.0 - 6.0)).abs() < 1e-14);
        assert_eq!(r.subdivisions, 0);
    }

    #[test]
    fn endpoint_singularity_converges() {
        // ∫_0^1 ln t dt = −1
        let r = integrate(real(|t| t.ln()), 0.0, 1.0, 1e-12, 200).unwrap();
        assert!((r.value.re + 1.0).abs() < 1e-12);
        assert!(r.abs_err < 1e-12);
    }

    #[test]
    fn oscillating_complex_integrand() {
        // ∫_0^π e^{it} dt = 2i
        let r = integrate(|t| Complex64::new(0.0, t).exp(), 0.0, std::f64::consts::PI, 1e-13, 50).unwrap();
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn budget_exhaustion_reports_convergence_error() {
        let err = integrate(real(|t| (1.0 / t).sin()), 1e-6, 1.0, 1e-14, 3).unwrap_err();
        assert!(matches!(err, KurepaError::Convergence { subdivisions: 3, .. }));
    }
}
