//! Complex literals: `a`, `a+bi`, `a-bi`, whitespace allowed anywhere.

use kurepa_core::ComplexValue;

pub fn parse_complex(input: &str) -> Result<ComplexValue, String> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex literal".to_string());
    }
    let bad = || format!("cannot parse '{input}' as a complex number (expected a, a+bi or a-bi)");
    let number = |t: &str| -> Result<f64, String> {
        if t.is_empty() || t.starts_with("++") || t.starts_with("+-") || t.starts_with("-+") {
            return Err(bad());
        }
        t.parse::<f64>().map_err(|_| bad())
    };

    let Some(body) = s.strip_suffix('i') else {
        return Ok(ComplexValue::new(number(&s)?, 0.0));
    };
    // the sign that opens the imaginary part: last +/- not at the start and
    // not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    let (re, im) = body.split_at(split);
    Ok(ComplexValue::new(number(re)?, number(im)?))
}
