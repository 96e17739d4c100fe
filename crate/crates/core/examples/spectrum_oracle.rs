//! Finite-difference eigenvalues and tail amplitudes against the closed forms.

use soliton_crum::darboux::{bound_states, deformed_potential, SystemSpec};
use soliton_crum::spectral::{eigen_spectrum, oracle_norming_constants, GridSpec, StencilOrder};

fn main() -> soliton_crum::Result<()> {
    let spec = SystemSpec::new(2.0, vec![2])?;
    let sys = deformed_potential(&spec)?;
    let grid = GridSpec::new(20.0, 8001, StencilOrder::Fourth)?;
    let pairs = eigen_spectrum(&sys, &grid)?;
    let tails = oracle_norming_constants(&sys, &grid)?;
    let closed = bound_states(&spec)?;
    println!("{spec}, {} grid points", grid.n_points);
    for ((pair, (_, c)), state) in pairs.iter().zip(&tails).zip(&closed) {
        println!(
            "E = {:>14.9} (closed {:>5}), nodes {}, c = {:.7} (closed {:.7})",
            pair.energy,
            state.energy,
            pair.nodes(),
            c,
            state.norming_constant
        );
    }
    Ok(())
}
