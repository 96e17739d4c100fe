//! Field values against explicit closed forms of the integer solitons.

use soliton_crum::darboux::{deformed_potential, SystemSpec};
use soliton_crum::kdv;

fn u_1_2_5(x: f64, t: f64) -> f64 {
    let e = f64::exp;
    let num = 16.0
        * e(8.0 * t + 2.0 * x)
        * (9.0 * e(2128.0 * t)
            + 9.0 * e(28.0 * x)
            + 1575.0 * e(16.0 * (63.0 * t + x))
            + 882.0 * e(16.0 * (66.0 * t + x))
            + 3252.0 * e(14.0 * (76.0 * t + x))
            + 175.0 * e(8.0 * (142.0 * t + x))
            + 49.0 * e(8.0 * (250.0 * t + x))
            + 126.0 * e(4.0 * (516.0 * t + x))
            + 56.0 * e(2072.0 * t + 2.0 * x)
            + 126.0 * e(2056.0 * t + 6.0 * x)
            + 1008.0 * e(1128.0 * t + 10.0 * x)
            + 882.0 * e(1072.0 * t + 12.0 * x)
            + 1575.0 * e(1120.0 * t + 12.0 * x)
            + 1008.0 * e(1000.0 * t + 18.0 * x)
            + 49.0 * e(128.0 * t + 20.0 * x)
            + 175.0 * e(992.0 * t + 20.0 * x)
            + 126.0 * e(72.0 * t + 22.0 * x)
            + 126.0 * e(64.0 * t + 24.0 * x)
            + 56.0 * e(56.0 * t + 26.0 * x));
    let den = 2.0 * e(1072.0 * t)
        + 2.0 * e(16.0 * x)
        + 14.0 * e(4.0 * (252.0 * t + x))
        + 9.0 * e(2.0 * (532.0 * t + x))
        + 7.0 * e(1000.0 * t + 6.0 * x)
        + 7.0 * e(72.0 * t + 10.0 * x)
        + 14.0 * e(64.0 * t + 12.0 * x)
        + 9.0 * e(8.0 * t + 14.0 * x);
    -num / (den * den)
}

#[test]
fn three_soliton_closed_form() {
    let data = kdv::scattering_data_from_spec(&SystemSpec::new(2.0, vec![2]).unwrap()).unwrap();
    for i in 0..25 {
        let x = -2.5 + 0.2 * i as f64;
        let t = -0.02 + 0.04 * ((i * 7) % 25) as f64 / 24.0;
        let (a, b) = (kdv::field_u(&data, x, t).unwrap(), u_1_2_5(x, t));
        assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()), "({x}, {t}): {a} vs {b}");
    }
}

#[test]
fn initial_profile_is_the_deformed_potential() {
    for h in [1.0, 2.0, 3.0] {
        for v in [2, 4] {
            let spec = SystemSpec::new(h, vec![v]).unwrap();
            let sys = deformed_potential(&spec).unwrap();
            let data = kdv::scattering_data_from_spec(&spec).unwrap();
            for x in [-3.0, -0.4, 0.0, 1.1, 2.7] {
                let (a, b) = (kdv::field_u(&data, x, 0.0).unwrap(), sys.potential(x));
                assert!((a - b).abs() <= 1e-8 * (1.0 + b.abs()), "{spec} at {x}: {a} vs {b}");
            }
        }
    }
}
