//! Transmission rates of the correlated-noise channel and their
//! optimization over the input ensemble.
//!
//! The rate per mode for a strategy `(eta, y)` is the entropy difference
//! `g(lambda_mixture - 1/2) - g(lambda_out - 1/2)`, evaluated through the
//! closed-form spectrum scalars. The optimizer is a coarse grid scan
//! followed by coordinate-wise golden-section refinement, cross-checked by
//! an exhaustive grid oracle elsewhere.

use serde::Serialize;

use crate::channel::{uv_parameters, ChannelSpec, InputStrategy};
use crate::entropy::thermal_entropy;
use crate::error::{Error, Result};

/// Tiny negative rates from round-off near `eta = 1` are clamped to zero.
const RATE_CLIP: f64 = 1e-9;

/// Golden-section parameter tolerance for each coordinate search.
const SEARCH_XTOL: f64 = 1e-9;

/// Coordinate descent stops when a full pass improves the rate by less
/// than this many bits.
const DESCENT_RTOL: f64 = 1e-12;

/// If the unentangled boundary is within this many bits of the interior
/// optimum, the boundary is reported (prefer the classical strategy when
/// entanglement gives no measurable benefit).
const BOUNDARY_TIE: f64 = 1e-12;

const GRID_POINTS: usize = 41;
const MAX_DESCENT_PASSES: usize = 200;

/// Transmission-rate breakdown for one strategy/channel pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateReport {
    /// Symplectic value of the individual output states.
    pub lambda_out: f64,
    /// Symplectic value of the ensemble-average output.
    pub lambda_mixture: f64,
    /// Per-mode entropy of an individual output, bits.
    pub entropy_out: f64,
    /// Per-mode entropy of the ensemble average, bits.
    pub entropy_mixture: f64,
    /// Rate in bits per mode: `entropy_mixture - entropy_out`.
    pub rate: f64,
}

/// Result of the two-parameter rate maximization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Optimum {
    /// Optimal entanglement fraction.
    pub eta_star: f64,
    /// Optimal classical correlation coefficient.
    pub y_star: f64,
    /// Maximal rate, bits per mode.
    pub capacity: f64,
    /// Two-mode squeezing of the optimal input, dB.
    pub squeezing_db: f64,
    /// Ratio of the capacity to the best unentangled rate.
    pub gain: f64,
}

/// One-shot capacity of the memoryless channel under the photon budget:
/// `g(nbar + N) - g(N)`.
pub fn memoryless_capacity(nbar: f64, noise_photons: f64) -> Result<f64> {
    if !nbar.is_finite() || nbar <= 0.0 {
        return Err(Error::ParameterRange {
            name: "photon budget",
            constraint: "finite and positive",
            value: nbar,
        });
    }
    Ok(thermal_entropy(nbar + noise_photons)? - thermal_entropy(noise_photons)?)
}

/// Per-mode transmission rate of the strategy through the channel.
pub fn transmission_rate(strategy: &InputStrategy, channel: &ChannelSpec) -> Result<RateReport> {
    let uv = uv_parameters(strategy, channel)?;
    let lambda_out = uv.lambda_out();
    let lambda_mixture = uv.lambda_mixture();
    let entropy_out = thermal_entropy(lambda_out - 0.5)?;
    let entropy_mixture = thermal_entropy(lambda_mixture - 0.5)?;
    let raw = entropy_mixture - entropy_out;
    let rate = if raw < 0.0 && raw > -RATE_CLIP { 0.0 } else { raw };
    Ok(RateReport {
        lambda_out,
        lambda_mixture,
        entropy_out,
        entropy_mixture,
        rate,
    })
}

/// Rate as a plain function of the optimization coordinates. The parameter
/// ranges are validated by the callers, so the inner computation cannot
/// fail.
fn rate_value(eta: f64, y: f64, nbar: f64, channel: &ChannelSpec) -> f64 {
    let strategy =
        InputStrategy::new(nbar, eta, y).expect("optimizer coordinates stay inside the box");
    transmission_rate(&strategy, channel)
        .expect("valid strategies are physical")
        .rate
}

/// Golden-section maximization of a unimodal function on [lo, hi].
/// Returns the midpoint of the final bracket and its value.
fn golden_max(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > SEARCH_XTOL {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Maximizes the rate over the classical correlation `y` at a fixed
/// entanglement fraction. Returns `(y_star, rate)`.
///
/// At `eta = 1` the rate does not depend on `y`; `y_star = 0` by
/// convention. The objective is concave in `y` (the mixture symplectic
/// value is a concave function of `y` and the entropy is increasing and
/// concave), so the golden section converges to the global maximum.
pub fn optimal_y(eta: f64, nbar: f64, channel: &ChannelSpec) -> Result<(f64, f64)> {
    InputStrategy::new(nbar, eta, 0.0)?;
    if eta >= 1.0 {
        return Ok((0.0, 0.0));
    }
    Ok(golden_max(-1.0, 1.0, |y| rate_value(eta, y, nbar, channel)))
}

/// Maximizes the rate over both coordinates `(y, eta)` and reports the
/// optimum together with the squeezing level and the entanglement gain.
///
/// A 41x41 scan over the feasible box locates the basin, coordinate-wise
/// golden-section refinement polishes it, and the unentangled boundary
/// `eta = 0` is compared against the interior result.
pub fn optimal_strategy(nbar: f64, channel: &ChannelSpec) -> Result<Optimum> {
    if !nbar.is_finite() || nbar <= 0.0 {
        return Err(Error::ParameterRange {
            name: "photon budget",
            constraint: "finite and positive",
            value: nbar,
        });
    }

    let f = |eta: f64, y: f64| rate_value(eta, y, nbar, channel);

    let mut eta = 0.0;
    let mut y = 0.0;
    let mut best = f(0.0, 0.0);
    let steps = (GRID_POINTS - 1) as f64;
    for i in 0..GRID_POINTS {
        let eta_i = i as f64 / steps;
        for j in 0..GRID_POINTS {
            let y_j = (j as f64 - steps / 2.0) / (steps / 2.0);
            let r = f(eta_i, y_j);
            if r > best {
                best = r;
                eta = eta_i;
                y = y_j;
            }
        }
    }

    for _ in 0..MAX_DESCENT_PASSES {
        let before = best;
        let (y_cand, r_y) = golden_max(-1.0, 1.0, |yy| f(eta, yy));
        if r_y > best {
            y = y_cand;
            best = r_y;
        }
        let (eta_cand, r_eta) = golden_max(0.0, 1.0, |ee| f(ee, y));
        if r_eta > best {
            eta = eta_cand;
            best = r_eta;
        }
        if best - before < DESCENT_RTOL {
            break;
        }
    }

    let (y_boundary, rate_boundary) = optimal_y(0.0, nbar, channel)?;
    if rate_boundary <= 0.0 {
        return Err(Error::NonPhysical {
            what: "unentangled reference rate",
            value: rate_boundary,
        });
    }

    let (eta_star, y_star, capacity) = if best - rate_boundary < BOUNDARY_TIE {
        (0.0, y_boundary, rate_boundary.max(best))
    } else {
        (eta, y, best)
    };

    Ok(Optimum {
        eta_star,
        y_star,
        capacity,
        squeezing_db: squeezing_db(eta_star, nbar)?,
        gain: capacity / rate_boundary,
    })
}

/// Entanglement gain: the ratio of the jointly optimized rate to the best
/// unentangled rate. At least 1 up to round-off, since `eta = 0` is
/// feasible.
pub fn capacity_gain(nbar: f64, channel: &ChannelSpec) -> Result<f64> {
    Ok(optimal_strategy(nbar, channel)?.gain)
}

/// Two-mode squeezing of the input in decibels (quadrature-variance
/// convention): `10 log10(e^{2r})` with `r = asinh(sqrt(eta nbar))`.
pub fn squeezing_db(eta: f64, nbar: f64) -> Result<f64> {
    let strategy = InputStrategy::new(nbar, eta, 0.0)?;
    let r = strategy.squeeze_photons().sqrt().asinh();
    Ok(20.0 * r * std::f64::consts::LOG10_E)
}
