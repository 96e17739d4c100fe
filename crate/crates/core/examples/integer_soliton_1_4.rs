//! The (1,4) two-soliton generated by the h=1 one-seed potential.

use soliton_crum::darboux::SystemSpec;
use soliton_crum::kdv::{field_u, kdv_residual, scattering_data_from_spec};

fn main() -> soliton_crum::Result<()> {
    let data = scattering_data_from_spec(&SystemSpec::new(1.0, vec![2])?)?;
    println!("kappas {:?}, c0 {:?}", data.kappas(), data.c0());
    for t in [-0.02, 0.0, 0.02] {
        let row: Vec<String> = (-4..=4)
            .map(|i| field_u(&data, 0.5 * i as f64, t).map(|u| format!("{u:8.3}")))
            .collect::<soliton_crum::Result<_>>()?;
        println!("t = {t:>5}: {}", row.join(" "));
    }
    println!("KdV residual at (0.4, 0.01): {:e}", kdv_residual(&data, 0.4, 0.01)?);
    Ok(())
}
