//! Acceptance run: one PASS/FAIL line per criterion at its stated tolerance.
//!
//! References are explicit closed forms and independent numerics kept in
//! this file (Simpson quadrature, dense peak scans, ODE scattering). The
//! two-seed scattering case in criterion 8 is singular (its Wronskian vanishes
//! at the origin) and is reported as a known failure.

use std::process::ExitCode;
use std::sync::Arc;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use soliton_crum::darboux::{deformed_potential, SystemSpec};
use soliton_crum::kdv::{self, SolitonData};
use soliton_crum::scattering;
use soliton_crum::spectral::{self, GridSpec, StencilOrder};
use soliton_crum::Error;

struct Outcome {
    number: u8,
    title: &'static str,
    measured: f64,
    tolerance: f64,
    note: String,
}

impl Outcome {
    fn new(number: u8, title: &'static str, measured: f64, tolerance: f64) -> Self {
        Outcome { number, title, measured, tolerance, note: String::new() }
    }

    fn passed(&self) -> bool {
        self.measured <= self.tolerance
    }
}

fn spec(h: f64, seeds: &[u32]) -> SystemSpec {
    SystemSpec::new(h, seeds.to_vec()).unwrap()
}

fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |m, v| if v.is_nan() { f64::INFINITY } else { m.max(v.abs()) })
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn u2_h1(x: f64) -> f64 {
    let c = x.cosh();
    let (c2, c4) = (c * c, c.powi(4));
    -30.0 * (4.0 * c4 - 8.0 * c2 + 5.0) / (c2 * (36.0 * c4 - 60.0 * c2 + 25.0))
}

fn u2_h2(x: f64) -> f64 {
    let c = x.cosh();
    let (c2, c4) = (c * c, c.powi(4));
    -4.0 * (144.0 * c4 - 280.0 * c2 + 147.0) / (c2 * (64.0 * c4 - 112.0 * c2 + 49.0))
}

fn u_1_4(x: f64, t: f64) -> f64 {
    let e = f64::exp;
    let num = 120.0
        * e(8.0 * t + 2.0 * x)
        * (e(1024.0 * t)
            + e(16.0 * x)
            + 16.0 * e(520.0 * t + 6.0 * x)
            + 30.0 * e(512.0 * t + 8.0 * x)
            + 16.0 * e(504.0 * t + 10.0 * x));
    let den = 3.0 * e(520.0 * t) + 3.0 * e(10.0 * x) + 5.0 * e(512.0 * t + 2.0 * x) + 5.0 * e(8.0 * t + 8.0 * x);
    -num / (den * den)
}

fn data_1_4() -> SolitonData {
    SolitonData::new(vec![1.0, 4.0], vec![(10.0f64 / 3.0).sqrt(), (40.0f64 / 3.0).sqrt()]).unwrap()
}

fn data_1_2_5() -> SolitonData {
    kdv::scattering_data_from_spec(&spec(2.0, &[2])).unwrap()
}

fn one_soliton() -> SolitonData {
    SolitonData::new(vec![1.0], vec![2f64.sqrt()]).unwrap()
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let n = 2 * panels;
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        sum += if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// Largest change of each eigenvalue between the grid and its refinement.
fn energies_with_change(spec: &SystemSpec, n: usize) -> (Vec<f64>, f64) {
    let sys = deformed_potential(spec).unwrap();
    let grid = GridSpec::new(20.0, n, StencilOrder::Fourth).unwrap();
    let coarse: Vec<f64> = spectral::eigen_spectrum(&sys, &grid).unwrap().iter().map(|p| p.energy).collect();
    let fine: Vec<f64> = spectral::eigen_spectrum(&sys, &grid.refined()).unwrap().iter().map(|p| p.energy).collect();
    let change = if coarse.len() == fine.len() {
        worst(coarse.iter().zip(&fine).map(|(a, b)| a - b))
    } else {
        f64::INFINITY
    };
    (coarse, change)
}

fn energy_defect(energies: &[f64], expected: &[f64]) -> f64 {
    if energies.len() != expected.len() {
        return f64::INFINITY;
    }
    worst(energies.iter().zip(expected).map(|(a, b)| a - b))
}

fn criterion_1() -> Outcome {
    let (energies, change) = energies_with_change(&spec(1.0, &[2]), 4001);
    // -(h+1+v)^2 for the seed level, -(h-n)^2 for the surviving level
    let defect = energy_defect(&energies, &[-16.0, -1.0]).max(change);
    Outcome::new(1, "spectrum reproduction h=1 [2]", defect, 1e-6)
}

fn criterion_2() -> Outcome {
    let s = spec(1.0, &[2]);
    let exact = [(10.0f64 / 3.0).sqrt(), (40.0f64 / 3.0).sqrt()];
    let data = kdv::scattering_data_from_spec(&s).unwrap();
    let closed = worst(data.c0().iter().zip(exact).map(|(a, b)| a - b));
    let sys = deformed_potential(&s).unwrap();
    let grid = GridSpec::new(20.0, 4001, StencilOrder::Fourth).unwrap();
    let mut oracle = spectral::oracle_norming_constants(&sys, &grid).unwrap();
    oracle.sort_by(|a, b| a.0.total_cmp(&b.0));
    let cross = if oracle.len() == 2 { worst(oracle.iter().zip(exact).map(|(a, b)| a.1 - b)) } else { f64::INFINITY };
    let mut out = Outcome::new(2, "norming constants h=1 [2]", closed, 1e-6);
    if cross > 1e-3 {
        out.measured = f64::INFINITY;
    }
    out.note = format!("oracle cross-check {cross:.3e} <= 1e-3");
    out
}

fn criterion_3() -> Outcome {
    let data = kdv::scattering_data_from_spec(&spec(1.0, &[2])).unwrap();
    let defect = worst(linspace(-10.0, 10.0, 2001).into_iter().map(|x| kdv::field_u(&data, x, 0.0).unwrap() - u2_h1(x)));
    let spot = kdv::field_u(&data, 0.0, 0.0).unwrap();
    let mut out = Outcome::new(3, "GLM reconstruction h=1", defect, 1e-8);
    if spot != -30.0 {
        out.measured = f64::INFINITY;
    }
    out.note = format!("u(0,0) = {spot}");
    out
}

fn criterion_4() -> Outcome {
    let data = data_1_4();
    let mut rng = StdRng::seed_from_u64(4);
    let defect = worst((0..20).map(|_| {
        let x = rng.gen_range(-3.0..=3.0);
        let t = rng.gen_range(-0.05..=0.05);
        kdv::field_u(&data, x, t).unwrap() - u_1_4(x, t)
    }));
    Outcome::new(4, "explicit (1,4) formula", defect, 1e-9)
}

fn criterion_5() -> Outcome {
    let s = spec(2.0, &[2]);
    let (energies, change) = energies_with_change(&s, 8001);
    let spectrum = energy_defect(&energies, &[-25.0, -4.0, -1.0]).max(change);
    let data = kdv::scattering_data_from_spec(&s).unwrap();
    let spot = kdv::field_u(&data, 0.0, 0.0).unwrap();
    let profile = worst(linspace(-8.0, 8.0, 1601).into_iter().map(|x| kdv::field_u(&data, x, 0.0).unwrap() - u2_h2(x)));
    let mut out = Outcome::new(5, "h=2 chain", spectrum.max(profile), 1e-6);
    if (spot + 44.0).abs() > 1e-12 {
        out.measured = f64::INFINITY;
    }
    out.note = format!("spectrum {spectrum:.3e}, profile {profile:.3e}, u(0,0) = {spot}");
    out
}

fn criterion_6() -> Outcome {
    let mut grid_worst: f64 = 0.0;
    for data in [one_soliton(), data_1_4(), data_1_2_5()] {
        for x in linspace(-3.0, 3.0, 9) {
            for t in linspace(-0.05, 0.05, 5) {
                grid_worst = grid_worst.max(kdv::kdv_residual(&data, x, t).unwrap().abs());
            }
        }
    }
    let single = kdv::kdv_residual(&one_soliton(), 0.3, 0.2).unwrap().abs();
    let mut out = Outcome::new(6, "KdV residual", grid_worst, 1e-5);
    if single > 1e-6 {
        out.measured = f64::INFINITY;
    }
    out.note = format!("one-soliton {single:.3e} <= 1e-6");
    out
}

fn criterion_7() -> Outcome {
    let seed_sets: [&[u32]; 4] = [&[], &[2], &[4], &[2, 6]];
    let mut rng = StdRng::seed_from_u64(7);
    let mut defect: f64 = 0.0;
    for i in 0..200 {
        let h = rng.gen_range(0.5..5.0f64) + 1e-3;
        let k = rng.gen_range(0.1..10.0);
        let amp = scattering::deformed_amplitudes(&spec(h, seed_sets[i % seed_sets.len()]), k).unwrap();
        defect = defect.max((amp.t.norm_sqr() + amp.r.norm_sqr() - 1.0).abs());
    }
    let exact_zero = [1.0, 2.0, 3.0].iter().all(|&h| {
        seed_sets.iter().all(|seeds| {
            [0.3, 1.0, 6.0]
                .iter()
                .all(|&k| scattering::deformed_amplitudes(&spec(h, seeds), k).unwrap().r == Complex64::new(0.0, 0.0))
        })
    });
    let mut out = Outcome::new(7, "scattering unitarity", defect, 1e-10);
    if !exact_zero {
        out.measured = f64::INFINITY;
    }
    out.note = format!("r exactly zero for integer h: {exact_zero}");
    out
}

fn criterion_8() -> Outcome {
    let mut solvable: f64 = 0.0;
    let mut defect: f64 = 0.0;
    let mut rejected = Vec::new();
    for (h, seeds) in [(1.0, &[2][..]), (2.0, &[2]), (1.5, &[2]), (1.0, &[2, 4])] {
        let s = spec(h, seeds);
        match deformed_potential(&s) {
            Ok(sys) => {
                for k in [0.25, 0.5, 1.0, 2.0, 4.0, 8.0] {
                    let closed = scattering::deformed_amplitudes(&s, k).unwrap();
                    let ode = scattering::numerical_amplitudes(&sys, k).unwrap();
                    solvable = solvable.max((closed.t - ode.t).norm()).max((closed.r - ode.r).norm());
                }
            }
            Err(e @ Error::NodalWronskian { .. }) => {
                defect = f64::INFINITY;
                rejected.push(format!("{s}: {e}"));
            }
            Err(e) => panic!("{s}: {e}"),
        }
    }
    let mut out = Outcome::new(8, "scattering oracle agreement", defect.max(solvable), 1e-4);
    rejected.insert(0, format!("admissible specs {solvable:.3e}"));
    out.note = rejected.join("; ");
    out
}

fn criterion_9() -> Outcome {
    let mut mismatches = 0.0;
    for (h, seeds) in [(1.0, &[2][..]), (2.0, &[2]), (3.0, &[])] {
        let s = spec(h, seeds);
        let sys = Arc::new(deformed_potential(&s).unwrap());
        let mut kappas: Vec<f64> = sys.bound_states().unwrap().iter().map(|b| b.kappa).collect();
        kappas.sort_by(f64::total_cmp);
        if scattering::transmission_poles(&s) != kappas {
            mismatches += 1.0;
        }
    }
    Outcome::new(9, "pole/spectrum duality", mismatches, 0.0)
}

/// Dense scan of -u near `guess`, refined by a parabola through the best sample.
fn peak_near(data: &SolitonData, t: f64, guess: f64) -> (f64, f64) {
    let step = 1e-4;
    let xs = linspace(guess - 0.5, guess + 0.5, 10_001);
    let (i, _) = xs
        .iter()
        .map(|&x| kdv::field_u(data, x, t).unwrap())
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    let x0 = xs[i];
    let f = |x: f64| kdv::field_u(data, x, t).unwrap();
    let (fm, f0, fp) = (f(x0 - step), f(x0), f(x0 + step));
    let x = x0 + 0.5 * step * (fm - fp) / (fm - 2.0 * f0 + fp);
    (x, -f(x))
}

fn criterion_10() -> Outcome {
    let data = data_1_4();
    let chi = [0.5 * (5.0f64 / 3.0).ln(), -0.5 * (5.0f64 / 3.0).ln()];
    let (mut dx, mut dh): (f64, f64) = (0.0, 0.0);
    for t in [-3.0f64, 3.0] {
        for (kappa, chi) in [1.0f64, 4.0].into_iter().zip(chi) {
            let predicted = 4.0 * kappa * kappa * t - t.signum() * chi / kappa;
            let (x, height) = peak_near(&data, t, predicted);
            dx = dx.max((x - predicted).abs());
            dh = dh.max((height - 2.0 * kappa * kappa).abs());
        }
    }
    let mut out = Outcome::new(10, "asymptotic phase shifts (1,4)", dx, 1e-2);
    if dh > 1e-3 {
        out.measured = f64::INFINITY;
    }
    out.note = format!("heights {dh:.3e} <= 1e-3");
    out
}

fn criterion_11() -> Outcome {
    let mut defect: f64 = 0.0;
    for data in [one_soliton(), data_1_4(), data_1_2_5()] {
        let kappas = data.kappas();
        let mass = -4.0 * kappas.iter().sum::<f64>();
        let momentum = 16.0 / 3.0 * kappas.iter().map(|k| k.powi(3)).sum::<f64>();
        let kmax = kappas.iter().cloned().fold(0.0, f64::max);
        for t in [-0.05, 0.0, 0.05] {
            let centers: Vec<f64> = kappas.iter().map(|k| 4.0 * k * k * t).collect();
            let lo = centers.iter().cloned().fold(f64::INFINITY, f64::min) - 40.0;
            let hi = centers.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 40.0;
            let panels = ((hi - lo) * 40.0 * kmax) as usize;
            let u = |x: f64| kdv::field_u(&data, x, t).unwrap();
            defect = defect.max((simpson(u, lo, hi, panels) - mass).abs());
            defect = defect.max((simpson(|x| u(x).powi(2), lo, hi, panels) - momentum).abs());
        }
    }
    Outcome::new(11, "conservation laws", defect, 1e-8)
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 11] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    ];
    let mut unexpected = 0;
    for run in criteria {
        let o = run();
        let verdict = if o.passed() { "PASS" } else { "FAIL" };
        let known = o.number == 8 && !o.passed();
        println!(
            "criterion {:>2} {:<32} {} (measured {:.3e}, tolerance {:.0e}){}{}",
            o.number,
            o.title,
            verdict,
            o.measured,
            o.tolerance,
            if o.note.is_empty() { String::new() } else { format!("; {}", o.note) },
            if known { " [known: the two-seed set is singular at x = 0]" } else { "" },
        );
        if o.passed() == (o.number == 8) {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria deviate from the expected outcome");
        ExitCode::FAILURE
    }
}
