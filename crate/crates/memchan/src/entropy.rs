//! Von Neumann entropy of Gaussian states, in bits.

use crate::covariance::{SYMPLECTIC_CLIP, VACUUM_SYMPLECTIC};
use crate::error::{Error, Result};

/// Arguments in `[-ENTROPY_CLIP, 0]` are treated as exactly zero so that
/// pure states at the boundary survive round-off.
pub const ENTROPY_CLIP: f64 = 1e-9;

/// Entropy in bits of a thermal state with mean photon number `x`:
/// `(x + 1) log2(x + 1) - x log2(x)` for `x > 0`, zero at `x = 0`.
///
/// Strictly increasing and concave for positive arguments; evaluated
/// directly from the definition, which is well-conditioned in double
/// precision down to denormal arguments.
pub fn thermal_entropy(x: f64) -> Result<f64> {
    if x < -ENTROPY_CLIP || x.is_nan() {
        return Err(Error::NegativeEntropyArgument(x));
    }
    if !x.is_finite() {
        return Err(Error::ParameterRange {
            name: "thermal photon number",
            constraint: "finite",
            value: x,
        });
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    Ok((x + 1.0) * (x + 1.0).log2() - x * x.log2())
}

/// Entropy in bits of a Gaussian state with the given symplectic values:
/// the sum of `thermal_entropy(lambda - 1/2)` over the values.
///
/// Values within [`SYMPLECTIC_CLIP`] below 1/2 are clamped up to 1/2;
/// anything lower is rejected.
pub fn entropy_of_state(lambdas: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for &lambda in lambdas {
        if lambda < VACUUM_SYMPLECTIC - SYMPLECTIC_CLIP {
            return Err(Error::SubVacuumSymplecticValue(lambda));
        }
        let excess = (lambda - VACUUM_SYMPLECTIC).max(0.0);
        total += thermal_entropy(excess)?;
    }
    Ok(total)
}
