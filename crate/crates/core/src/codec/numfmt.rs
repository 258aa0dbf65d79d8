//! Canonical numeric rendering for serialized rows.
//!
//! Continuous values are rendered at six significant digits, positionally
//! for magnitudes in [1e-4, 1e7) and in exponent form outside, over the
//! character set {0-9, '.', '-', 'e'}. This bounds sequence length and makes
//! the serialize/parse round trip a fixed point: `quantize` maps any finite
//! value onto the representable grid.

const SIG_DIGITS: usize = 6;

/// Shortest lossless rendering, used by the CSV writer.
pub fn format_roundtrip(v: f64) -> String {
    format!("{v}")
}

/// Six-significant-digit rendering used inside token sequences.
pub fn format_continuous(v: f64) -> String {
    assert!(v.is_finite(), "cannot render non-finite value");
    if v == 0.0 {
        return "0".to_string();
    }
    // {:.5e} yields a normalized d.ddddd mantissa and a bare exponent.
    let sci = format!("{:.*e}", SIG_DIGITS - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific form has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    debug_assert_eq!(digits.len(), SIG_DIGITS);

    let body = if (-4..=6).contains(&exp) {
        positional(&digits, exp)
    } else {
        let m = strip_trailing_zeros(&insert_point(&digits));
        format!("{m}e{exp}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn insert_point(digits: &str) -> String {
    format!("{}.{}", &digits[..1], &digits[1..])
}

fn positional(digits: &str, exp: i32) -> String {
    if exp >= 0 {
        let int_len = exp as usize + 1;
        if int_len >= digits.len() {
            let mut s = digits.to_string();
            s.extend(std::iter::repeat('0').take(int_len - digits.len()));
            s
        } else {
            let s = format!("{}.{}", &digits[..int_len], &digits[int_len..]);
            strip_trailing_zeros(&s)
        }
    } else {
        let zeros: String = std::iter::repeat('0').take((-exp - 1) as usize).collect();
        strip_trailing_zeros(&format!("0.{zeros}{digits}"))
    }
}

fn strip_trailing_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    trimmed.to_string()
}

/// Projects a finite value onto the grid `format_continuous` can represent.
pub fn quantize(v: f64) -> f64 {
    format_continuous(v)
        .parse::<f64>()
        .expect("canonical rendering parses back")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_cases() {
        assert_eq!(format_continuous(0.0), "0");
        assert_eq!(format_continuous(-0.0), "0");
        assert_eq!(format_continuous(39.0), "39");
        assert_eq!(format_continuous(0.5), "0.5");
        assert_eq!(format_continuous(-2.25), "-2.25");
        assert_eq!(format_continuous(163.2), "163.2");
        assert_eq!(format_continuous(0.0001), "0.0001");
    }

    #[test]
    fn six_digit_rounding() {
        assert_eq!(format_continuous(0.123456789), "0.123457");
        assert_eq!(format_continuous(1234567.0), "1234570");
        assert_eq!(format_continuous(999999.4), "999999");
    }

    #[test]
    fn exponent_form_outside_window() {
        assert_eq!(format_continuous(1e7), "1e7");
        assert_eq!(format_continuous(1.5e-7), "1.5e-7");
        assert_eq!(format_continuous(-9.87654e12), "-9.87654e12");
        assert_eq!(format_continuous(9.99999e-5), "9.99999e-5");
    }

    #[test]
    fn boundary_rounds_into_exponent_form() {
        // 9999999.4 rounds to 1e7, which leaves the positional window
        assert_eq!(format_continuous(9_999_999.4), "1e7");
    }

    #[test]
    fn quantize_is_idempotent() {
        let samples = [
            0.0,
            1.0,
            -1.0,
            0.1,
            123.456,
            7.0 / 3.0,
            1e-9,
            -4.4e17,
            98765.4321,
            0.000123456,
        ];
        for &v in &samples {
            let q = quantize(v);
            assert_eq!(quantize(q), q, "quantize not idempotent on {v}");
            assert_eq!(
                format_continuous(q),
                format_continuous(v),
                "render changed after quantize on {v}"
            );
        }
    }
}
