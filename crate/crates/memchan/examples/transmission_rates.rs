//! Transmission rates through the correlated-noise channel for a few input
//! strategies, against the memoryless baseline.
//!
//! Run with: cargo run -p memchan --example transmission_rates

use memchan::{
    memoryless_capacity, optimal_y, transmission_rate, ChannelSpec, InputStrategy,
};

fn main() -> memchan::Result<()> {
    let nbar = 1.0;
    let noise = 1.0 / 3.0;
    let channel = ChannelSpec::new(noise, 0.7)?;

    println!(
        "memoryless baseline C1 = g(nbar + N) - g(N) = {:.9} bits/mode\n",
        memoryless_capacity(nbar, noise)?
    );

    println!("channel: N = 1/3, memory x = 0.7");
    println!("{:>6} {:>6} {:>12} {:>12} {:>12}", "eta", "y", "lambda_out", "lambda_bar", "rate");
    for (eta, y) in [(0.0, 0.0), (0.0, 0.2333), (0.2, 0.9), (0.5, 0.5), (1.0, 0.0)] {
        let report = transmission_rate(&InputStrategy::new(nbar, eta, y)?, &channel)?;
        println!(
            "{eta:>6} {y:>6} {:>12.6} {:>12.6} {:>12.6}",
            report.lambda_out, report.lambda_mixture, report.rate
        );
    }

    // the best classical correlation at each entanglement fraction
    println!("\ny-optimized rates:");
    for eta in [0.0, 0.1, 0.2, 0.3] {
        let (y_star, rate) = optimal_y(eta, nbar, &channel)?;
        println!("  eta = {eta}: y* = {y_star:.6}, max_y R = {rate:.9}");
    }
    Ok(())
}
