//! Two-mode squeezed vacuum inputs under an energy constraint: purity,
//! photon bookkeeping and the squeezing level in dB.
//!
//! Run with: cargo run -p memchan --example entangled_inputs

use memchan::{squeezing_db, tmsv_covariance};

fn main() -> memchan::Result<()> {
    let nbar = 1.0;
    println!("photon budget per mode: {nbar}");
    println!("{:>6} {:>12} {:>12} {:>14} {:>10}", "eta", "diag", "cross", "purity check", "dB");
    for eta in [0.0, 0.1, 0.205, 0.5, 1.0] {
        let gamma = tmsv_covariance(eta, nbar)?;
        let pair = gamma.symplectic_values()?;
        let db = squeezing_db(eta, nbar)?;
        println!(
            "{eta:>6} {:>12.6} {:>12.6} {:>14.2e} {:>10.3}",
            gamma.mode1.vqq,
            gamma.cross[1][1],
            (pair.larger - 0.5).abs().max((pair.smaller - 0.5).abs()),
            db
        );
    }

    // mean photons per mode: (tr gamma_1)/2 - 1/2 = eta * nbar
    let gamma = tmsv_covariance(0.7, 2.0)?;
    let photons = 0.5 * (gamma.mode1.vqq + gamma.mode1.vpp) - 0.5;
    println!("\neta=0.7, nbar=2: squeezing carries {photons:.12} photons/mode (expected 1.4)");
    Ok(())
}
