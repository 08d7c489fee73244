//! Transmission rates and capacities of a two-use Gaussian bosonic channel
//! with correlated thermal noise, in the covariance-matrix formalism.
//!
//! The channel adds thermal noise that is correlated across two consecutive
//! uses (coefficient `x`, from memoryless at 0 to full memory at 1). Inputs
//! obey a mean photon-number budget `nbar` per mode, split between two-mode
//! squeezing (fraction `eta`) and classically correlated displacement
//! modulation (correlation `y`). The crate computes the resulting
//! transmission rate per mode, optimizes it over `(y, eta)`, and quantifies
//! when entangled inputs beat the best product-state strategy.
//!
//! ```
//! use memchan::{capacity_gain, optimal_strategy, ChannelSpec};
//!
//! // one photon per mode through 70%-correlated noise of 1/3 photon
//! let channel = ChannelSpec::new(1.0 / 3.0, 0.7)?;
//! let best = optimal_strategy(1.0, &channel)?;
//! assert!(best.eta_star > 0.0, "entangled inputs win");
//! assert!((best.gain - capacity_gain(1.0, &channel)?).abs() < 1e-15);
//! # Ok::<(), memchan::Error>(())
//! ```
//!
//! Modules:
//! - [`covariance`]: one- and two-mode covariance matrices, symplectic
//!   values, physicality checks.
//! - [`entropy`]: thermal entropy and Gaussian-state entropies in bits.
//! - [`channel`]: the correlated-noise channel and the energy-constrained
//!   input ensembles.
//! - [`capacity`]: transmission rates and the `(y, eta)` optimizer.
//! - [`oracle`]: independent numeric checks (iterative symplectic spectrum,
//!   seeded Monte Carlo second moments, exhaustive grid search).
//! - [`sweep`]: parameter sweeps and CSV/JSON serialization.
//! - [`cli`]: the command-line frontend.

pub mod capacity;
pub mod channel;
pub mod cli;
pub mod covariance;
pub mod entropy;
mod error;
pub mod oracle;
pub mod sweep;

pub use capacity::{
    capacity_gain, memoryless_capacity, optimal_strategy, optimal_y, squeezing_db,
    transmission_rate, Optimum, RateReport,
};
pub use channel::{
    modulated_mixture_covariance, tmsv_covariance, uv_parameters, ChannelSpec, InputStrategy,
    UvParameters,
};
pub use covariance::{BimodalCovariance, MonoCovariance, Physicality, SymplecticPair};
pub use entropy::{entropy_of_state, thermal_entropy};
pub use error::{Error, Result};
