//! The (1,2,5) three-soliton from h=2 and its conserved quantities.

use soliton_crum::darboux::SystemSpec;
use soliton_crum::kdv::{conserved_quantities, conserved_quantities_exact, field_u, scattering_data_from_spec};

fn main() -> soliton_crum::Result<()> {
    let data = scattering_data_from_spec(&SystemSpec::new(2.0, vec![2])?)?;
    println!("kappas {:?}, c0 {:?}", data.kappas(), data.c0());
    println!("u(0, 0) = {}", field_u(&data, 0.0, 0.0)?);
    let (mass, momentum) = conserved_quantities_exact(&data);
    println!("exact: mass {mass}, momentum {momentum}");
    for t in [-0.05, 0.0, 0.05] {
        let (m, p) = conserved_quantities(&data, t)?;
        println!("t = {t:>5}: mass {m:.12}, momentum {p:.10}");
    }
    Ok(())
}
