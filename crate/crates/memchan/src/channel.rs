//! Two-use Gaussian channel with correlated thermal noise, and the
//! energy-constrained input ensembles sent through it.
//!
//! The channel adds `N` thermal photons per mode; the noise on the two uses
//! is drawn from a bivariate Gaussian whose q components are anticorrelated
//! and whose p components are correlated with coefficient `x`. Inputs split
//! a per-mode photon budget `nbar` between two-mode squeezing (fraction
//! `eta`) and classical displacement modulation (the remainder), with a
//! correlation coefficient `y` across the two uses of the modulation.

use crate::covariance::{det2, BimodalCovariance, MonoCovariance};
use crate::error::{Error, Result};

/// Additive-noise channel acting on two consecutive uses: `N` thermal
/// photons per mode with noise correlation (memory) coefficient `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    noise_photons: f64,
    memory: f64,
}

impl ChannelSpec {
    /// `noise_photons >= 0`, `memory` in [0, 1] (0 memoryless, 1 full memory).
    pub fn new(noise_photons: f64, memory: f64) -> Result<Self> {
        if !noise_photons.is_finite() || noise_photons < 0.0 {
            return Err(Error::ParameterRange {
                name: "noise photon number",
                constraint: "finite and non-negative",
                value: noise_photons,
            });
        }
        if !(0.0..=1.0).contains(&memory) {
            return Err(Error::ParameterRange {
                name: "memory coefficient",
                constraint: "in [0, 1]",
                value: memory,
            });
        }
        Ok(ChannelSpec {
            noise_photons,
            memory,
        })
    }

    pub fn noise_photons(&self) -> f64 {
        self.noise_photons
    }

    pub fn memory(&self) -> f64 {
        self.memory
    }

    /// Covariance matrix of the noise displacements: `N` on each diagonal,
    /// cross block `diag(-xN, +xN)` (anticorrelated q, correlated p).
    ///
    /// Positive semidefinite for all valid parameters; its smallest
    /// eigenvalue is `N (1 - x)`.
    pub fn noise_covariance(&self) -> BimodalCovariance {
        let n = self.noise_photons;
        let c = self.memory * n;
        BimodalCovariance::new(
            MonoCovariance::new(n, n, 0.0),
            MonoCovariance::new(n, n, 0.0),
            [[-c, 0.0], [0.0, c]],
        )
    }

    /// Channel action on covariance matrices: blockwise addition of the
    /// noise covariance.
    pub fn apply(&self, input: &BimodalCovariance) -> BimodalCovariance {
        input.add(&self.noise_covariance())
    }
}

/// Energy-constrained input ensemble: photon budget `nbar` per mode, with
/// fraction `eta` spent on two-mode squeezing and the rest on classical
/// modulation correlated with coefficient `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputStrategy {
    nbar: f64,
    eta: f64,
    y: f64,
}

impl InputStrategy {
    /// `nbar > 0`, `eta` in [0, 1], `y` in [-1, 1]. The bound on `y` is
    /// exactly the condition for the two-mode modulation distribution to be
    /// positive semidefinite.
    pub fn new(nbar: f64, eta: f64, y: f64) -> Result<Self> {
        if !nbar.is_finite() || nbar <= 0.0 {
            return Err(Error::ParameterRange {
                name: "photon budget",
                constraint: "finite and positive",
                value: nbar,
            });
        }
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::ParameterRange {
                name: "entanglement fraction",
                constraint: "in [0, 1]",
                value: eta,
            });
        }
        if !(-1.0..=1.0).contains(&y) {
            return Err(Error::ParameterRange {
                name: "classical correlation",
                constraint: "in [-1, 1]",
                value: y,
            });
        }
        Ok(InputStrategy { nbar, eta, y })
    }

    pub fn nbar(&self) -> f64 {
        self.nbar
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// Photons per mode locked up in squeezing: `sinh^2 r = eta * nbar`.
    pub fn squeeze_photons(&self) -> f64 {
        self.eta * self.nbar
    }

    /// Modulation variance per quadrature: `(1 - eta) * nbar`.
    pub fn modulation_variance(&self) -> f64 {
        (1.0 - self.eta) * self.nbar
    }
}

/// Covariance matrix of a two-mode squeezed vacuum carrying
/// `eta * nbar` photons per mode, i.e. squeezing `r = asinh(sqrt(eta nbar))`.
///
/// Diagonal blocks `(cosh 2r / 2) I = (1/2 + eta nbar) I`, cross block
/// `diag(-sinh 2r / 2, +sinh 2r / 2)` with
/// `sinh 2r / 2 = sqrt(eta nbar (1 + eta nbar))`. The state is pure: both
/// symplectic values equal 1/2.
pub fn tmsv_covariance(eta: f64, nbar: f64) -> Result<BimodalCovariance> {
    let probe = InputStrategy::new(nbar, eta, 0.0)?;
    let a = probe.squeeze_photons();
    let diag = 0.5 + a;
    let cross = (a * (1.0 + a)).sqrt();
    Ok(BimodalCovariance::new(
        MonoCovariance::new(diag, diag, 0.0),
        MonoCovariance::new(diag, diag, 0.0),
        [[-cross, 0.0], [0.0, cross]],
    ))
}

/// Covariance matrix of the modulated ensemble average at the channel
/// output: the channel output for the squeezed carrier, plus the modulation
/// variance on the diagonals and `diag(+y m, -y m)` on the cross block with
/// `m = (1 - eta) nbar` (q displacements correlated, p anticorrelated).
pub fn modulated_mixture_covariance(
    strategy: &InputStrategy,
    channel: &ChannelSpec,
) -> Result<BimodalCovariance> {
    let carrier = tmsv_covariance(strategy.eta(), strategy.nbar())?;
    let mut mixture = channel.apply(&carrier);
    let m = strategy.modulation_variance();
    let ym = strategy.y() * m;
    mixture.mode1.vqq += m;
    mixture.mode1.vpp += m;
    mixture.mode2.vqq += m;
    mixture.mode2.vpp += m;
    mixture.cross[0][0] += ym;
    mixture.cross[1][1] -= ym;
    Ok(mixture)
}

/// Closed-form scalars behind the doubly degenerate symplectic spectra of
/// the channel output and of the modulated mixture. Each matrix has diagonal
/// blocks `u I` and cross block `diag(-v, +v)`, so its symplectic value is
/// `sqrt(u^2 - v^2)`, doubly degenerate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UvParameters {
    /// Diagonal variance of the individual channel outputs: `1/2 + eta nbar + N`.
    pub u_out: f64,
    /// Cross magnitude of the outputs: `sqrt(eta nbar (1 + eta nbar)) + x N`.
    pub v_out: f64,
    /// Diagonal variance of the mixture: `1/2 + nbar + N`.
    pub u_mixture: f64,
    /// Cross magnitude of the mixture: `v_out - y (1 - eta) nbar`.
    pub v_mixture: f64,
}

impl UvParameters {
    /// Symplectic value of the individual output states.
    pub fn lambda_out(&self) -> f64 {
        det2(self.u_out, self.v_out, self.v_out, self.u_out).sqrt()
    }

    /// Symplectic value of the ensemble-average state.
    pub fn lambda_mixture(&self) -> f64 {
        det2(self.u_mixture, self.v_mixture, self.v_mixture, self.u_mixture).sqrt()
    }
}

/// Tolerance on the closed-form physicality guarantees
/// `u^2 - v^2 >= 1/4`.
const UV_GUARANTEE_TOL: f64 = 1e-12;

/// Evaluates the closed-form spectrum scalars for a strategy/channel pair,
/// checking the physicality guarantees `u^2 - v^2 >= 1/4` on both states.
pub fn uv_parameters(strategy: &InputStrategy, channel: &ChannelSpec) -> Result<UvParameters> {
    let a = strategy.squeeze_photons();
    let xn = channel.memory() * channel.noise_photons();
    let sq = (a * (1.0 + a)).sqrt();
    let uv = UvParameters {
        u_out: 0.5 + a + channel.noise_photons(),
        v_out: sq + xn,
        u_mixture: 0.5 + strategy.nbar() + channel.noise_photons(),
        v_mixture: sq + xn - strategy.y() * strategy.modulation_variance(),
    };
    for (u, v) in [(uv.u_out, uv.v_out), (uv.u_mixture, uv.v_mixture)] {
        let det = det2(u, v, v, u);
        if det < 0.25 - UV_GUARANTEE_TOL {
            return Err(Error::NonPhysical {
                what: "u^2 - v^2",
                value: det,
            });
        }
    }
    Ok(uv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn parameter_ranges_are_enforced() {
        assert!(ChannelSpec::new(-0.1, 0.0).is_err());
        assert!(ChannelSpec::new(0.1, 1.2).is_err());
        assert!(ChannelSpec::new(0.1, -0.2).is_err());
        assert!(ChannelSpec::new(f64::NAN, 0.0).is_err());
        assert!(InputStrategy::new(0.0, 0.0, 0.0).is_err());
        assert!(InputStrategy::new(1.0, 1.3, 0.0).is_err());
        assert!(InputStrategy::new(1.0, 0.5, -1.1).is_err());
        assert!(InputStrategy::new(1.0, 0.5, 1.1).is_err());
    }

    #[test]
    fn memoryless_noise_covariance() {
        let gamma = ChannelSpec::new(1.0 / 3.0, 0.0).unwrap().noise_covariance();
        assert_eq!(gamma.mode1, MonoCovariance::new(1.0 / 3.0, 1.0 / 3.0, 0.0));
        assert_eq!(gamma.mode2, gamma.mode1);
        assert_eq!(gamma.cross, [[0.0, 0.0], [0.0, 0.0]]);
    }

    #[test]
    fn correlated_noise_covariance() {
        let gamma = ChannelSpec::new(1.0 / 3.0, 0.7).unwrap().noise_covariance();
        assert!(close(gamma.cross[0][0], -7.0 / 30.0, 1e-15));
        assert!(close(gamma.cross[1][1], 7.0 / 30.0, 1e-15));
        assert_eq!(gamma.cross[0][1], 0.0);
        assert_eq!(gamma.cross[1][0], 0.0);
    }

    #[test]
    fn noiseless_channel_has_zero_noise_covariance() {
        let gamma = ChannelSpec::new(0.0, 0.9).unwrap().noise_covariance();
        assert_eq!(gamma.assembled(), [[0.0; 4]; 4]);
    }

    #[test]
    fn noise_covariance_is_positive_semidefinite() {
        // smallest eigenvalue of the assembled matrix is N (1 - x)
        for x in [0.0, 0.3, 0.7, 1.0] {
            let gamma = ChannelSpec::new(0.5, x).unwrap().noise_covariance();
            let m = gamma.assembled();
            // eigenvalues of the q block [[N, -xN], [-xN, N]] and the p block
            let n = 0.5;
            let min_eig = n * (1.0 - x);
            // quadratic form along the most-squeezed directions
            let q_minus = m[0][0] + m[2][2] + 2.0 * m[0][2]; // (q1 + q2) direction
            let p_minus = m[1][1] + m[3][3] - 2.0 * m[1][3]; // (p1 - p2) direction
            assert!(close(q_minus, 2.0 * min_eig, 1e-15));
            assert!(close(p_minus, 2.0 * min_eig, 1e-15));
        }
    }

    #[test]
    fn tmsv_without_entanglement_is_vacuum_pair() {
        let gamma = tmsv_covariance(0.0, 5.0).unwrap();
        assert_eq!(gamma, BimodalCovariance::vacuum_pair());
    }

    #[test]
    fn tmsv_full_budget_one_photon() {
        // eta = 1, nbar = 1: r = asinh(1), cosh 2r / 2 = 3/2, sinh 2r / 2 = sqrt(2)
        let gamma = tmsv_covariance(1.0, 1.0).unwrap();
        assert!(close(gamma.mode1.vqq, 1.5, 1e-15));
        assert!(close(gamma.cross[0][0], -std::f64::consts::SQRT_2, 1e-15));
        assert!(close(gamma.cross[1][1], std::f64::consts::SQRT_2, 1e-15));
        let pair = gamma.symplectic_values().unwrap();
        assert_eq!((pair.larger, pair.smaller), (0.5, 0.5));
    }

    #[test]
    fn tmsv_mean_photons_match_budget() {
        for (eta, nbar) in [(0.3, 1.0), (1.0, 4.0), (0.5, 100.0)] {
            let gamma = tmsv_covariance(eta, nbar).unwrap();
            let photons = 0.5 * (gamma.mode1.vqq + gamma.mode1.vpp) - 0.5;
            assert!(close(photons, eta * nbar, 1e-12 * (1.0 + eta * nbar)));
        }
    }

    #[test]
    fn vacuum_through_memoryless_channel() {
        let channel = ChannelSpec::new(1.0 / 3.0, 0.0).unwrap();
        let out = channel.apply(&BimodalCovariance::vacuum_pair());
        assert!(close(out.mode1.vqq, 5.0 / 6.0, 1e-15));
        assert!(close(out.mode2.vpp, 5.0 / 6.0, 1e-15));
        assert_eq!(out.cross, [[0.0, 0.0], [0.0, 0.0]]);
    }

    #[test]
    fn tmsv_through_channel_matches_block_forms() {
        let (eta, nbar) = (0.6, 2.0);
        let channel = ChannelSpec::new(0.4, 0.8).unwrap();
        let out = channel.apply(&tmsv_covariance(eta, nbar).unwrap());
        let a = eta * nbar;
        let n = 0.4;
        let xn: f64 = 0.8 * 0.4;
        assert!(close(out.mode1.vqq, 0.5 + a + n, 1e-14));
        assert!(close(out.cross[0][0], -((a * (1.0 + a)).sqrt() + xn), 1e-14));
        assert!(close(out.cross[1][1], (a * (1.0 + a)).sqrt() + xn, 1e-14));
    }

    #[test]
    fn zero_noise_channel_is_identity() {
        let channel = ChannelSpec::new(0.0, 0.5).unwrap();
        let input = tmsv_covariance(0.7, 3.0).unwrap();
        assert_eq!(channel.apply(&input), input);
    }

    #[test]
    fn channel_action_is_additive() {
        let channel = ChannelSpec::new(0.37, 0.55).unwrap();
        let input = tmsv_covariance(0.4, 1.5).unwrap();
        let twice = channel.apply(&channel.apply(&input));
        let noise = channel.noise_covariance();
        let direct = input.add(&noise).add(&noise);
        let (a, b) = (twice.assembled(), direct.assembled());
        for i in 0..4 {
            for j in 0..4 {
                assert!(close(a[i][j], b[i][j], 1e-15 * (1.0 + b[i][j].abs())));
            }
        }
    }

    #[test]
    fn fully_entangled_strategy_has_no_modulation() {
        let strategy = InputStrategy::new(1.0, 1.0, 0.4).unwrap();
        let channel = ChannelSpec::new(0.2, 0.6).unwrap();
        let mixture = modulated_mixture_covariance(&strategy, &channel).unwrap();
        let out = channel.apply(&tmsv_covariance(1.0, 1.0).unwrap());
        assert_eq!(mixture, out);
    }

    #[test]
    fn classical_mixture_blocks() {
        let channel = ChannelSpec::new(1.0 / 3.0, 0.7).unwrap();
        let uncorrelated = InputStrategy::new(1.0, 0.0, 0.0).unwrap();
        let mixture = modulated_mixture_covariance(&uncorrelated, &channel).unwrap();
        assert!(close(mixture.mode1.vqq, 11.0 / 6.0, 1e-15));
        assert!(close(mixture.cross[0][0], -7.0 / 30.0, 1e-15));
        assert!(close(mixture.cross[1][1], 7.0 / 30.0, 1e-15));

        let correlated = InputStrategy::new(1.0, 0.0, 1.0).unwrap();
        let mixture = modulated_mixture_covariance(&correlated, &channel).unwrap();
        assert!(close(mixture.cross[0][0], -7.0 / 30.0 + 1.0, 1e-15));
        assert!(close(mixture.cross[1][1], 7.0 / 30.0 - 1.0, 1e-15));
    }

    #[test]
    fn energy_constraint_is_saturated() {
        for (eta, y, nbar, n, x) in [
            (0.0, 0.0, 1.0, 1.0 / 3.0, 0.7),
            (0.5, -0.8, 2.5, 0.1, 0.3),
            (0.99, 1.0, 10.0, 2.0, 1.0),
        ] {
            let strategy = InputStrategy::new(nbar, eta, y).unwrap();
            let channel = ChannelSpec::new(n, x).unwrap();
            let mixture = modulated_mixture_covariance(&strategy, &channel).unwrap();
            let input_photons =
                0.5 * (mixture.mode1.vqq + mixture.mode1.vpp) - 0.5 - channel.noise_photons();
            assert!(close(input_photons, nbar, 1e-12 * (1.0 + nbar + n)));
        }
    }

    #[test]
    fn uv_closed_forms_direct_substitution() {
        let channel0 = ChannelSpec::new(1.0 / 3.0, 0.0).unwrap();
        let strategy = InputStrategy::new(1.0, 0.0, 0.0).unwrap();
        let uv = uv_parameters(&strategy, &channel0).unwrap();
        assert!(close(uv.u_out, 5.0 / 6.0, 1e-15));
        assert_eq!(uv.v_out, 0.0);
        assert!(close(uv.u_mixture, 11.0 / 6.0, 1e-15));
        assert_eq!(uv.v_mixture, 0.0);

        let channel = ChannelSpec::new(1.0 / 3.0, 0.7).unwrap();
        let uv = uv_parameters(&strategy, &channel).unwrap();
        assert!(close(uv.v_out, 7.0 / 30.0, 1e-15));
        assert!(close(uv.v_mixture, 7.0 / 30.0, 1e-15));
    }

    #[test]
    fn uv_matches_matrix_symplectic_values() {
        let cases = [
            (0.0, 0.0, 1.0, 1.0 / 3.0, 0.7),
            (0.2, 0.9, 1.0, 1.0 / 3.0, 0.7),
            (0.8, -0.5, 2.0, 1.5, 1.0),
            (1.0, 0.3, 0.7, 0.0, 0.4),
        ];
        for (eta, y, nbar, n, x) in cases {
            let strategy = InputStrategy::new(nbar, eta, y).unwrap();
            let channel = ChannelSpec::new(n, x).unwrap();
            let uv = uv_parameters(&strategy, &channel).unwrap();

            let out = channel.apply(&tmsv_covariance(eta, nbar).unwrap());
            let pair = out.symplectic_values().unwrap();
            assert!(close(pair.larger, uv.lambda_out(), 1e-12));
            assert!(close(pair.smaller, uv.lambda_out(), 1e-12));

            let mixture = modulated_mixture_covariance(&strategy, &channel).unwrap();
            let pair = mixture.symplectic_values().unwrap();
            assert!(close(pair.larger, uv.lambda_mixture(), 1e-12));
            assert!(close(pair.smaller, uv.lambda_mixture(), 1e-12));
        }
    }

    #[test]
    fn channel_output_stays_physical() {
        let channel = ChannelSpec::new(0.8, 1.0).unwrap();
        let out = channel.apply(&tmsv_covariance(0.9, 4.0).unwrap());
        let phys = out.physicality();
        assert!(phys.physical);
        assert!(phys.margin >= -1e-12);
    }
}
