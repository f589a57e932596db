//! Small order-statistics helpers shared by traces and sampling reports.

/// Linearly interpolated quantile of ascending `sorted` data, `q` in `[0, 1]`.
pub fn quantile(sorted: &[f64], q: f64) -> Option<f64> {
    if sorted.is_empty() {
        return None;
    }
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let t = pos - lo as f64;
    Some(sorted[lo] + t * (sorted[hi] - sorted[lo]))
}

/// `[p5, p50, p95]` of unsorted data.
pub fn percentiles_5_50_95(values: &[f64]) -> Option<[f64; 3]> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    Some([
        quantile(&v, 0.05)?,
        quantile(&v, 0.50)?,
        quantile(&v, 0.95)?,
    ])
}

/// Formats `v` with `digits` significant digits, `%g` style: plain
/// notation for moderate exponents, scientific otherwise, trailing zeros
/// trimmed.
pub fn format_significant(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".to_string() } else { v.to_string() };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{exp}");
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, v)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(0.0, 12), "0");
        assert_eq!(format_significant(1.0, 12), "1");
        assert_eq!(format_significant(12f64.sqrt() / 3.0, 12), "1.15470053838");
        assert_eq!(format_significant(0.0218, 12), "0.0218");
        assert_eq!(format_significant(-2.5e-9, 12), "-2.5e-9");
        assert_eq!(format_significant(123456.0, 3), "1.23e5");
        assert_eq!(format_significant(99.99999999999999, 12), "100");
        let v = 0.123456789012345;
        let back: f64 = format_significant(v, 12).parse().unwrap();
        assert!((back - v).abs() < 1e-12);
    }

    #[test]
    fn quantiles() {
        assert_eq!(quantile(&[], 0.5), None);
        assert_eq!(quantile(&[3.0], 0.05), Some(3.0));
        assert_eq!(quantile(&[1.0, 2.0, 3.0, 4.0, 5.0], 0.5), Some(3.0));
        assert_eq!(quantile(&[0.0, 10.0], 0.25), Some(2.5));
        let p = percentiles_5_50_95(&[2.0, 0.0, 1.0]).unwrap();
        for (got, want) in p.iter().zip([0.1, 1.0, 1.9]) {
            assert!((got - want).abs() < 1e-12);
        }
    }
}
