//! Independent brute-force checks for the closed-form machinery: a numeric
//! symplectic spectrum from an iterative eigenvalue routine, a seeded Monte
//! Carlo estimate of the channel action at second-moment level, and an
//! exhaustive grid search over the strategy box.
//!
//! Everything here deliberately avoids the closed-form code paths it is
//! meant to check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::capacity::transmission_rate;
use crate::channel::{tmsv_covariance, ChannelSpec, InputStrategy};
use crate::covariance::{BimodalCovariance, SymplecticPair};
use crate::error::{Error, Result};

type Matrix4 = [[f64; 4]; 4];

const JACOBI_MAX_SWEEPS: usize = 64;

/// Symplectic form for the ordering [q1, p1, q2, p2].
const SYMPLECTIC_FORM: Matrix4 = [
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [0.0, 0.0, -1.0, 0.0],
];

fn mat_mul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut out = [[0.0; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// Cyclic Jacobi eigenvalue iteration for a symmetric 4x4 matrix.
/// Returns the eigenvalues and the orthogonal eigenvector matrix `v`
/// (columns), with `m = v diag(d) v^T`.
fn jacobi_symmetric(mut m: Matrix4) -> Result<([f64; 4], Matrix4)> {
    let mut v: Matrix4 = [[0.0; 4]; 4];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let scale: f64 = (0..4)
        .flat_map(|i| (0..4).map(move |j| (i, j)))
        .map(|(i, j)| m[i][j].abs())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..4)
            .flat_map(|p| (p + 1..4).map(move |q| (p, q)))
            .map(|(p, q)| m[p][q] * m[p][q])
            .sum();
        if off.sqrt() <= 1e-15 * scale {
            let d = [m[0][0], m[1][1], m[2][2], m[3][3]];
            return Ok((d, v));
        }
        for p in 0..4 {
            for q in p + 1..4 {
                if m[p][q].abs() <= 1e-300 {
                    continue;
                }
                let theta = 0.5 * (m[q][q] - m[p][p]) / m[p][q];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in m.iter_mut() {
                    let mkp = row[p];
                    let mkq = row[q];
                    row[p] = c * mkp - s * mkq;
                    row[q] = s * mkp + c * mkq;
                }
                for k in 0..4 {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::NoConvergence(JACOBI_MAX_SWEEPS))
}

/// Numeric symplectic spectrum of a two-mode covariance matrix.
///
/// The magnitudes of the (purely imaginary) eigenvalues of `Omega Gamma`
/// are recovered without complex arithmetic: with `B = Gamma^{1/2}` from a
/// Jacobi eigendecomposition, `M = B Omega B` is antisymmetric and similar
/// to `Omega Gamma`, so the symmetric matrix `-M^2` has the squared
/// symplectic values as a doubly degenerate spectrum. A second Jacobi pass
/// extracts them.
pub fn numeric_symplectic_spectrum(gamma: &BimodalCovariance) -> Result<SymplecticPair> {
    let (d, v) = jacobi_symmetric(gamma.assembled())?;
    let min_eig = d.iter().copied().fold(f64::INFINITY, f64::min);
    if min_eig <= 0.0 {
        return Err(Error::NotPositiveDefinite(min_eig));
    }
    // B = v diag(sqrt(d)) v^T
    let mut vs: Matrix4 = [[0.0; 4]; 4];
    for (i, row) in vs.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = v[i][j] * d[j].sqrt();
        }
    }
    let mut vt: Matrix4 = [[0.0; 4]; 4];
    for (i, row) in vt.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = v[j][i];
        }
    }
    let b = mat_mul(&vs, &vt);
    let m = mat_mul(&mat_mul(&b, &SYMPLECTIC_FORM), &b);
    let mut s = mat_mul(&m, &m);
    for row in s.iter_mut() {
        for cell in row.iter_mut() {
            *cell = -*cell;
        }
    }
    // enforce exact symmetry before the second Jacobi pass
    for i in 0..4 {
        for j in i + 1..4 {
            let avg = 0.5 * (s[i][j] + s[j][i]);
            s[i][j] = avg;
            s[j][i] = avg;
        }
    }
    let (mut squares, _) = jacobi_symmetric(s)?;
    squares.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    let smaller = (0.5 * (squares[0] + squares[1])).max(0.0).sqrt();
    let larger = (0.5 * (squares[2] + squares[3])).max(0.0).sqrt();
    Ok(SymplecticPair { larger, smaller })
}

/// Lower Cholesky factor of a symmetric positive semidefinite matrix.
/// Vanishing pivots (semidefinite directions) produce zero columns.
fn cholesky_psd(m: &Matrix4) -> Result<Matrix4> {
    let scale: f64 = (0..4).map(|i| m[i][i].abs()).fold(0.0, f64::max);
    let tol = 1e-12 * scale.max(f64::MIN_POSITIVE);
    let mut l: Matrix4 = [[0.0; 4]; 4];
    for j in 0..4 {
        let mut d = m[j][j];
        for ljk in &l[j][..j] {
            d -= ljk * ljk;
        }
        if d < -tol {
            return Err(Error::NotPositiveDefinite(d));
        }
        if d <= tol {
            continue; // semidefinite direction: leave the column at zero
        }
        l[j][j] = d.sqrt();
        for i in j + 1..4 {
            let mut s = m[i][j];
            for (k, ljk) in l[j][..j].iter().enumerate() {
                s -= l[i][k] * ljk;
            }
            l[i][j] = s / l[j][j];
        }
    }
    Ok(l)
}

/// Outcome of a Monte Carlo second-moment estimate of the channel action.
#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloReport {
    pub sample_count: u64,
    pub seed: u64,
    /// Input covariance plus the empirical second moments of the sampled
    /// noise displacements.
    #[serde(skip)]
    pub empirical: BimodalCovariance,
    /// Largest entry-wise deviation from the analytic output covariance.
    pub max_abs_deviation: f64,
}

/// Estimates the channel action by sampling noise displacements from the
/// noise covariance (via its Cholesky factor) and accumulating their outer
/// products. Deterministic for a given seed.
///
/// The deviation from the analytic output scales as
/// `O(N sqrt(2 / samples))`.
pub fn monte_carlo_channel_moments(
    input: &BimodalCovariance,
    channel: &ChannelSpec,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloReport> {
    if samples < 10_000 {
        return Err(Error::ParameterRange {
            name: "sample count",
            constraint: "at least 10000",
            value: samples as f64,
        });
    }
    let l = cholesky_psd(&channel.noise_covariance().assembled())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut moments = [[0.0; 4]; 4];
    for _ in 0..samples {
        let z: [f64; 4] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let mut shift = [0.0; 4];
        for (i, s) in shift.iter_mut().enumerate() {
            for (j, zj) in z.iter().enumerate().take(i + 1) {
                *s += l[i][j] * zj;
            }
        }
        for i in 0..4 {
            for j in i..4 {
                moments[i][j] += shift[i] * shift[j];
            }
        }
    }
    let inv = 1.0 / samples as f64;
    let mut empirical = input.assembled();
    for i in 0..4 {
        for j in i..4 {
            let second = moments[i][j] * inv;
            empirical[i][j] += second;
            if j > i {
                empirical[j][i] += second;
            }
        }
    }
    let analytic = channel.apply(input).assembled();
    let mut max_abs_deviation = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            max_abs_deviation = max_abs_deviation.max((empirical[i][j] - analytic[i][j]).abs());
        }
    }
    Ok(MonteCarloReport {
        sample_count: samples,
        seed,
        empirical: BimodalCovariance::from_assembled(empirical),
        max_abs_deviation,
    })
}

/// Best cell of an exhaustive rate scan over the strategy box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridOptimum {
    pub eta: f64,
    pub y: f64,
    pub rate: f64,
}

/// Evaluates the transmission rate on a uniform `resolution x resolution`
/// grid over `y` in [-1, 1] and `eta` in [0, 1] and returns the best cell.
pub fn grid_search_optimum(
    nbar: f64,
    channel: &ChannelSpec,
    resolution: usize,
) -> Result<GridOptimum> {
    if resolution < 11 {
        return Err(Error::ParameterRange {
            name: "grid resolution",
            constraint: "at least 11",
            value: resolution as f64,
        });
    }
    let steps = (resolution - 1) as f64;
    let mut best = GridOptimum {
        eta: 0.0,
        y: 0.0,
        rate: f64::NEG_INFINITY,
    };
    for i in 0..resolution {
        let eta = i as f64 / steps;
        for j in 0..resolution {
            let y = (j as f64 - steps / 2.0) / (steps / 2.0);
            let strategy = InputStrategy::new(nbar, eta, y)?;
            let rate = transmission_rate(&strategy, channel)?.rate;
            if rate > best.rate {
                best = GridOptimum { eta, y, rate };
            }
        }
    }
    Ok(best)
}

/// Draws a random physical two-mode covariance matrix: a phase-rotated
/// two-mode squeezed state plus a random positive semidefinite perturbation.
/// Physicality is guaranteed by construction, with a generic cross block
/// and distinct symplectic values.
pub fn random_physical_covariance<R: Rng>(rng: &mut R) -> BimodalCovariance {
    let a: f64 = rng.gen_range(0.0..3.0);
    let diag = 0.5 + a;
    let cross = (a * (1.0 + a)).sqrt();
    let mut pure = [
        [diag, 0.0, -cross, 0.0],
        [0.0, diag, 0.0, cross],
        [-cross, 0.0, diag, 0.0],
        [0.0, cross, 0.0, diag],
    ];

    // rotate each mode by a random phase (a symplectic transformation,
    // so purity is preserved)
    for mode in 0..2 {
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let (s, c) = theta.sin_cos();
        let mut rot: Matrix4 = [[0.0; 4]; 4];
        for (i, row) in rot.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        let o = 2 * mode;
        rot[o][o] = c;
        rot[o][o + 1] = s;
        rot[o + 1][o] = -s;
        rot[o + 1][o + 1] = c;
        let mut rot_t = rot;
        for i in 0..4 {
            for j in 0..4 {
                rot_t[i][j] = rot[j][i];
            }
        }
        pure = mat_mul(&rot, &mat_mul(&pure, &rot_t));
    }

    let strength: f64 = rng.gen_range(0.0..0.5);
    let mut noise: Matrix4 = [[0.0; 4]; 4];
    for row in noise.iter_mut() {
        for cell in row.iter_mut() {
            *cell = rng.gen_range(-1.0..1.0);
        }
    }
    let mut psd = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            psd[i][j] = strength * (0..4).map(|k| noise[i][k] * noise[j][k]).sum::<f64>();
        }
    }

    let mut total = pure;
    for i in 0..4 {
        for j in 0..4 {
            total[i][j] += psd[i][j];
        }
    }
    BimodalCovariance::from_assembled(total)
}

/// Sends a TMSV carrier of the given seed-derived parameters through the
/// channel and returns the output covariance; used to exercise the
/// doubly degenerate family in oracle comparisons.
pub fn random_degenerate_output<R: Rng>(
    rng: &mut R,
) -> Result<(BimodalCovariance, BimodalCovariance)> {
    let eta: f64 = rng.gen_range(0.0..=1.0);
    let y: f64 = rng.gen_range(-1.0..=1.0);
    let nbar: f64 = rng.gen_range(0.05..3.0);
    let noise: f64 = rng.gen_range(0.0..2.0);
    let x: f64 = rng.gen_range(0.0..=1.0);
    let strategy = InputStrategy::new(nbar, eta, y)?;
    let channel = ChannelSpec::new(noise, x)?;
    let out = channel.apply(&tmsv_covariance(eta, nbar)?);
    let mixture = crate::channel::modulated_mixture_covariance(&strategy, &channel)?;
    Ok((out, mixture))
}
