//! Exercises the independent verification machinery: the iterative
//! symplectic spectrum against the closed forms, and a seeded Monte Carlo
//! estimate of the channel action.
//!
//! Run with: cargo run --release -p memchan --example oracle_checks

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use memchan::oracle::{
    monte_carlo_channel_moments, numeric_symplectic_spectrum, random_physical_covariance,
};
use memchan::{BimodalCovariance, ChannelSpec};

fn main() -> memchan::Result<()> {
    // closed-form biquadratic vs the Jacobi-based spectrum
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for _ in 0..5_000 {
        let gamma = random_physical_covariance(&mut rng);
        let closed = gamma.symplectic_values()?;
        let numeric = numeric_symplectic_spectrum(&gamma)?;
        worst = worst
            .max((closed.larger - numeric.larger).abs() / numeric.larger)
            .max((closed.smaller - numeric.smaller).abs() / numeric.smaller);
    }
    println!("spectrum agreement over 5000 random states: max relative deviation {worst:.3e}");

    // seeded Monte Carlo reproduction of the channel action
    let channel = ChannelSpec::new(1.0 / 3.0, 0.7)?;
    let input = BimodalCovariance::vacuum_pair();
    for samples in [10_000, 100_000, 1_000_000] {
        let report = monte_carlo_channel_moments(&input, &channel, samples, 7)?;
        println!(
            "monte carlo, {samples:>8} samples (seed {}): max entry deviation {:.3e}",
            report.seed, report.max_abs_deviation
        );
    }
    println!("expected scaling: ~ N sqrt(2 / samples) with N = 1/3");
    Ok(())
}
