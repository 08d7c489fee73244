//! Tour of the covariance toolkit: building one- and two-mode states,
//! extracting symplectic values and entropies, checking physicality.
//!
//! Run with: cargo run -p memchan --example covariance_basics

use memchan::{entropy_of_state, BimodalCovariance, MonoCovariance};

fn main() -> memchan::Result<()> {
    // single-mode states
    let vacuum = MonoCovariance::vacuum();
    let thermal = MonoCovariance::thermal(1.0 / 3.0);
    let squeezed = MonoCovariance::new(0.5 * 2.0f64.exp(), 0.5 * (-2.0f64).exp(), 0.0);

    for (name, gamma) in [("vacuum", vacuum), ("thermal(1/3)", thermal), ("squeezed", squeezed)] {
        let lambda = gamma.symplectic_value()?;
        let entropy = entropy_of_state(&[lambda])?;
        println!("{name:>12}: lambda = {lambda:.6}, entropy = {entropy:.6} bits");
    }

    // a two-mode state with both symplectic values distinct
    let two_mode = BimodalCovariance::new(
        MonoCovariance::thermal(0.5),
        MonoCovariance::thermal(1.5),
        [[0.3, 0.0], [0.0, -0.3]],
    );
    let pair = two_mode.symplectic_values()?;
    println!(
        "\ntwo-mode thermal pair: lambda+ = {:.6}, lambda- = {:.6}, entropy = {:.6} bits",
        pair.larger,
        pair.smaller,
        pair.entropy()?
    );

    // physicality diagnostics: margin is min(lambda) - 1/2
    let too_squeezed = MonoCovariance::new(0.4, 0.4, 0.0);
    for (name, phys) in [
        ("vacuum", vacuum.physicality()),
        ("0.4 * identity", too_squeezed.physicality()),
        ("two-mode pair", two_mode.physicality()),
    ] {
        println!(
            "{name:>15}: physical = {}, margin = {:+.3}",
            phys.physical, phys.margin
        );
    }
    Ok(())
}
