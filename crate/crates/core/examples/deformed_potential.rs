//! Samples a one-step deformation and its bound states.

use soliton_crum::darboux::{bound_states, deformed_potential, SystemSpec};

fn main() -> soliton_crum::Result<()> {
    let spec = SystemSpec::new(1.0, vec![2])?;
    let sys = deformed_potential(&spec)?;
    println!("{spec}");
    println!("{:>6} {:>14} {:>14}", "x", "U", "U_D");
    for i in 0..=12 {
        let x = -3.0 + 0.5 * i as f64;
        println!("{x:>6.2} {:>14.8} {:>14.8}", soliton_crum::darboux::base_potential(1.0, x), sys.potential(x));
    }
    for state in bound_states(&spec)? {
        println!(
            "{}: kappa = {}, E = {}, c = {}, psi(0.5) = {}",
            state.kind,
            state.kappa,
            state.energy,
            state.norming_constant,
            state.wavefunction(0.5)
        );
    }
    Ok(())
}
