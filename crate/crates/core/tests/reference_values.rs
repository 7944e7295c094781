#![allow(clippy::excessive_precision)]

//! K(z) against values from an independent 30-digit quadrature (mpmath),
//! frozen here.

use kurepa_core::{kurepa, kurepa_derivative, ComplexValue};

fn c(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

#[test]
fn kurepa_matches_high_precision_quadrature() {
    let cases = [
        (c(0.5, 0.0), c(0.562_186_545_898_826_863_81, 0.0)),
        (c(1e-3, 0.0), c(0.001_431_243_439_652_080_408_9, 0.0)),
        (c(0.3, 2.0), c(0.719_304_630_884_423_639_26, 1.078_453_439_007_162_728_4)),
        (c(7.5, -4.0), c(-35.615_075_401_052_754_438, -708.100_500_559_771_395_49)),
        (c(12.5, 0.0), c(150_011_623.022_959_607_63, 0.0)),
        (c(0.9, 10.0), c(0.697_175_404_595_107_386_73, 1.155_728_136_102_486_851_7)),
    ];
    for (z, expected) in cases {
        let got = kurepa(z).unwrap().value;
        let rel = (got - expected).norm() / expected.norm();
        assert!(rel < 1e-12, "K({z}) = {got}, expected {expected}, rel {rel:e}");
    }
}

#[test]
fn derivative_at_zero_matches_high_precision_quadrature() {
    let d = kurepa_derivative(0.0).unwrap();
    assert!((d - 1.432_205_734_653_224_414_8).abs() < 1e-10, "K'(0) = {d}");
}
