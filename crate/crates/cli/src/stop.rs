//! Stopping rule against a reference motif set.

use crate::error::HarnessError;

/// How current dissimilarities are matched against the reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StopMode {
    /// A value counts if it is `<=` the largest reference value.
    #[default]
    Band,
    /// The i-th best value counts if it is `<=` the i-th reference value.
    Ranked,
}

/// True once at least `ceil(fraction * k)` of the current top-k
/// dissimilarities fall inside the reference, and at least one motif
/// exists.
pub fn stop_when_within_reference(
    current: &[f64],
    k: usize,
    reference: &[f64],
    fraction: f64,
    mode: StopMode,
) -> Result<bool, HarnessError> {
    if reference.is_empty() {
        return Err(HarnessError::Usage("reference motif set is empty".into()));
    }
    if current.is_empty() {
        return Ok(false);
    }
    // Guard against 0.3 * 10 = 3.0000000000000004 rounding up.
    let required = (fraction * k as f64 - 1e-9).ceil().max(0.0) as usize;
    let inside = match mode {
        StopMode::Band => {
            let ceiling = reference.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            current.iter().take(k).filter(|&&d| d <= ceiling).count()
        }
        StopMode::Ranked => {
            let mut cur: Vec<f64> = current.iter().take(k).copied().collect();
            let mut refs = reference.to_vec();
            cur.sort_by(f64::total_cmp);
            refs.sort_by(f64::total_cmp);
            cur.iter().zip(&refs).filter(|(c, r)| c <= r).count()
        }
    };
    Ok(inside >= required)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_examples() {
        let reference = [0.01, 0.015, 0.0218];
        let all_in = [0.02; 10];
        assert!(stop_when_within_reference(&all_in, 10, &reference, 0.95, StopMode::Band).unwrap());
        let mut nine = [0.02; 10];
        nine[9] = 0.5;
        assert!(!stop_when_within_reference(&nine, 10, &reference, 0.95, StopMode::Band).unwrap());
        assert!(stop_when_within_reference(&nine, 10, &reference, 0.9, StopMode::Band).unwrap());
        assert!(stop_when_within_reference(&[9.0], 10, &reference, 0.0, StopMode::Band).unwrap());
        assert!(!stop_when_within_reference(&[], 10, &reference, 0.0, StopMode::Band).unwrap());
        assert!(stop_when_within_reference(&[0.1], 1, &[], 0.5, StopMode::Band).is_err());
    }

    #[test]
    fn fraction_arithmetic_is_not_fooled_by_rounding() {
        let reference = [1.0];
        let mut cur = vec![0.5; 3];
        cur.extend([2.0; 7]);
        assert!(stop_when_within_reference(&cur, 10, &reference, 0.3, StopMode::Band).unwrap());
    }

    #[test]
    fn ranked_mode() {
        let reference = [0.1, 0.2, 0.3];
        assert!(stop_when_within_reference(&[0.1, 0.2, 0.3], 3, &reference, 1.0, StopMode::Ranked).unwrap());
        // Inside the band, but the best value misses the best reference.
        assert!(!stop_when_within_reference(&[0.15, 0.2, 0.3], 3, &reference, 1.0, StopMode::Ranked).unwrap());
        assert!(stop_when_within_reference(&[0.15, 0.2, 0.3], 3, &reference, 1.0, StopMode::Band).unwrap());
    }
}
