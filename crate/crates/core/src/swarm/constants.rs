use crate::error::{Error, Result};

/// Velocity update weights: inertia `c0`, cognitive `c1`, social `c2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpdateConstants {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl UpdateConstants {
    /// Constriction coefficients for `phi > 4`, splitting `c0 * phi`
    /// between the cognitive and social terms by sociability `alpha`.
    pub fn new(phi: f64, alpha: f64) -> Result<Self> {
        if !phi.is_finite() || phi <= 4.0 {
            return Err(Error::Config(format!("phi must exceed 4, got {phi}")));
        }
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::Config(format!("alpha must lie in [0, 1], got {alpha}")));
        }
        let c0 = 2.0 / (2.0 - phi - (phi * phi - 4.0 * phi).sqrt()).abs();
        Ok(Self {
            c0,
            c1: c0 * phi * (1.0 - alpha),
            c2: c0 * phi * alpha,
        })
    }
}
