//! Peak tracking through a (1,4) collision and the resulting phase shifts.

use soliton_crum::kdv::{asymptotic_decomposition, locate_peak, SolitonData};

fn main() -> soliton_crum::Result<()> {
    let data = SolitonData::new(vec![1.0, 4.0], vec![(10.0f64 / 3.0).sqrt(), (40.0f64 / 3.0).sqrt()])?;
    let solitons = asymptotic_decomposition(&data);
    for s in &solitons {
        println!("kappa {}: speed {}, chi {:+.6}, height {}", s.kappa, s.speed, s.chi, s.height());
    }
    for t in [-3.0, -1.0, 1.0, 3.0] {
        for s in &solitons {
            let (x, u) = locate_peak(&data, t, s.center(t), 0.5)?;
            println!("t = {t:>4}: kappa {} peak at x = {x:.6} (predicted {:.6}), u = {u:.6}", s.kappa, s.center(t));
        }
    }
    Ok(())
}
