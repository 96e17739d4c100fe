//! Multi-index seed sets: each one is checked for a nodeless Wronskian.

use soliton_crum::darboux::{deformed_potential, SystemSpec};

fn main() -> soliton_crum::Result<()> {
    for (h, seeds) in [(1.0, vec![2]), (1.0, vec![2, 4]), (2.0, vec![2, 6]), (1.5, vec![2, 4, 6])] {
        let spec = SystemSpec::new(h, seeds)?;
        match deformed_potential(&spec) {
            Ok(sys) => println!("{spec}: admissible, U_D(0) = {}", sys.potential(0.0)),
            Err(e) => println!("{spec}: {e}"),
        }
    }
    Ok(())
}
