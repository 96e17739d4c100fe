//! Acceptance checks grouped into suites.
//!
//! Every check compares a closed-form pipeline result against an independent
//! reference (finite-difference eigen-solver, ODE scattering integration,
//! explicit closed forms, trace formulas) and records the measured defect
//! next to its tolerance.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::darboux::{deformed_potential, DeformedSystem, SystemSpec};
use crate::error::{Error, Result};
use crate::format::float;
use crate::kdv::{self, SolitonData};
use crate::scattering;
use crate::spectral::{self, GridSpec, StencilOrder};

/// One measured defect against its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self { name: name.into(), measured, tolerance, passed: measured <= tolerance }
    }

    /// A yes/no condition, reported as defect 0 or 1.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self { name: name.into(), measured: if ok { 0.0 } else { 1.0 }, tolerance: 0.0, passed: ok }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: max-defect {} <= {} {}",
            self.name,
            float(self.measured),
            float(self.tolerance),
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

/// A numbered acceptance criterion and its checks.
#[derive(Debug, Clone)]
pub struct Criterion {
    pub number: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Spectra,
    Scattering,
    Glm,
    Kdv,
    All,
}

impl Suite {
    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::Spectra => &[1, 2, 9],
            Suite::Scattering => &[7, 8],
            Suite::Glm => &[3, 4, 5],
            Suite::Kdv => &[6, 10, 11],
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectra" => Ok(Suite::Spectra),
            "scattering" => Ok(Suite::Scattering),
            "glm" => Ok(Suite::Glm),
            "kdv" => Ok(Suite::Kdv),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidInput(format!("unknown suite {other:?}"))),
        }
    }
}

pub const TITLES: [&str; 11] = [
    "spectrum reproduction h=1 [2]",
    "norming constants h=1 [2]",
    "GLM reconstruction h=1",
    "explicit (1,4) formula agreement",
    "h=2 chain",
    "KdV residual",
    "scattering unitarity",
    "scattering oracle agreement",
    "pole/spectrum duality",
    "asymptotic phase shifts (1,4)",
    "conservation laws",
];

/// Runs criterion `n` (1..=11). Numerical failures inside a criterion are
/// reported as failed checks, not errors.
pub fn criterion(n: u8) -> Result<Criterion> {
    let checks = match n {
        1 => c1_spectrum(),
        2 => c2_norming(),
        3 => c3_reconstruction(),
        4 => c4_explicit_formula(),
        5 => c5_h2_chain(),
        6 => c6_kdv_residual(),
        7 => c7_unitarity(),
        8 => c8_oracle_agreement(),
        9 => c9_duality(),
        10 => c10_phase_shifts(),
        11 => c11_conservation(),
        _ => return Err(Error::InvalidInput(format!("no acceptance criterion {n}"))),
    };
    let checks = checks.unwrap_or_else(|e| vec![Check::holds(format!("evaluation error: {e}"), false)]);
    Ok(Criterion { number: n, title: TITLES[n as usize - 1], checks })
}

pub fn run_suite(suite: Suite) -> Vec<Criterion> {
    suite.criteria().iter().map(|&n| criterion(n).expect("known criterion")).collect()
}

fn spec(h: f64, seeds: &[u32]) -> Result<SystemSpec> {
    SystemSpec::new(h, seeds.to_vec())
}

fn system(h: f64, seeds: &[u32]) -> Result<DeformedSystem> {
    deformed_potential(&spec(h, seeds)?)
}

fn max_abs(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |m, v| if v.is_nan() { f64::NAN } else { m.max(v.abs()) })
}

fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| if n == 1 { a } else { a + (b - a) * i as f64 / (n - 1) as f64 })
}

/// Closed form of the one-seed h=1 potential.
pub fn reference_profile_h1(x: f64) -> f64 {
    let c2 = x.cosh().powi(2);
    -30.0 * (4.0 * c2 * c2 - 8.0 * c2 + 5.0) / (c2 * (36.0 * c2 * c2 - 60.0 * c2 + 25.0))
}

/// Closed form of the one-seed h=2 potential.
pub fn reference_profile_h2(x: f64) -> f64 {
    let c2 = x.cosh().powi(2);
    -4.0 * (144.0 * c2 * c2 - 280.0 * c2 + 147.0) / (c2 * (64.0 * c2 * c2 - 112.0 * c2 + 49.0))
}

/// Closed form of the (1,4) two-soliton solution.
pub fn reference_two_soliton(x: f64, t: f64) -> f64 {
    let e = f64::exp;
    let num = 120.0
        * e(8.0 * t + 2.0 * x)
        * (e(1024.0 * t) + e(16.0 * x) + 16.0 * e(520.0 * t + 6.0 * x) + 30.0 * e(512.0 * t + 8.0 * x)
            + 16.0 * e(504.0 * t + 10.0 * x));
    let den = 3.0 * e(520.0 * t) + 3.0 * e(10.0 * x) + 5.0 * e(512.0 * t + 2.0 * x) + 5.0 * e(8.0 * t + 8.0 * x);
    -num / (den * den)
}

/// Scattering data of the (1,4) solution with exact norming constants.
pub fn two_soliton_data() -> SolitonData {
    SolitonData::new(vec![1.0, 4.0], vec![(10.0f64 / 3.0).sqrt(), (40.0f64 / 3.0).sqrt()]).expect("valid data")
}

/// Eigenvalues on `grid` and on its refinement, with the largest change.
fn converged_energies(sys: &DeformedSystem, grid: GridSpec) -> Result<(Vec<f64>, f64)> {
    let coarse: Vec<f64> = spectral::eigen_spectrum(sys, &grid)?.iter().map(|p| p.energy).collect();
    let fine: Vec<f64> = spectral::eigen_spectrum(sys, &grid.refined())?.iter().map(|p| p.energy).collect();
    let change = if coarse.len() == fine.len() {
        max_abs(coarse.iter().zip(&fine).map(|(a, b)| a - b))
    } else {
        f64::INFINITY
    };
    Ok((coarse, change))
}

fn energy_checks(label: &str, energies: &[f64], expected: &[f64], change: f64) -> Vec<Check> {
    let count_ok = energies.len() == expected.len();
    let defect = if count_ok {
        max_abs(energies.iter().zip(expected).map(|(a, b)| a - b))
    } else {
        f64::INFINITY
    };
    vec![
        Check::holds(format!("{label} level count {} = {}", energies.len(), expected.len()), count_ok),
        Check::at_most(format!("{label} oracle energies"), defect, 1e-6),
        Check::at_most(format!("{label} grid convergence under refinement"), change, 1e-6),
    ]
}

fn c1_spectrum() -> Result<Vec<Check>> {
    let sys = system(1.0, &[2])?;
    let grid = GridSpec::new(20.0, 4001, StencilOrder::Fourth)?;
    let (energies, change) = converged_energies(&sys, grid)?;
    Ok(energy_checks("h=1 [2]", &energies, &[-16.0, -1.0], change))
}

fn c2_norming() -> Result<Vec<Check>> {
    let s = spec(1.0, &[2])?;
    let data = kdv::scattering_data_from_spec(&s)?;
    let exact = [(10.0f64 / 3.0).sqrt(), (40.0f64 / 3.0).sqrt()];
    let closed = max_abs(data.c0().iter().zip(exact).map(|(a, b)| a - b));
    let sys = deformed_potential(&s)?;
    let grid = GridSpec::new(20.0, 4001, StencilOrder::Fourth)?;
    let mut oracle = spectral::oracle_norming_constants(&sys, &grid)?;
    oracle.sort_by(|a, b| a.0.total_cmp(&b.0));
    let oracle_defect = if oracle.len() == 2 {
        max_abs(oracle.iter().zip(exact).map(|(a, b)| a.1 - b))
    } else {
        f64::INFINITY
    };
    Ok(vec![
        Check::at_most("closed-form norming constants", closed, 1e-6),
        Check::at_most("oracle norming constants", oracle_defect, 1e-3),
    ])
}

fn c3_reconstruction() -> Result<Vec<Check>> {
    let data = kdv::scattering_data_from_spec(&spec(1.0, &[2])?)?;
    let mut defects = Vec::with_capacity(2001);
    for x in linspace(-10.0, 10.0, 2001) {
        defects.push(kdv::field_u(&data, x, 0.0)? - reference_profile_h1(x));
    }
    let spot = kdv::field_u(&data, 0.0, 0.0)?;
    Ok(vec![
        Check::at_most("reconstruction h=1", max_abs(defects), 1e-8),
        Check::at_most(format!("u(0,0) = {} vs -30", float(spot)), (spot + 30.0).abs(), 1e-12),
    ])
}

fn c4_explicit_formula() -> Result<Vec<Check>> {
    let data = two_soliton_data();
    let mut defects = Vec::new();
    for i in 0..20 {
        let x = -3.0 + 6.0 * i as f64 / 19.0;
        let t = -0.05 + 0.1 * ((i * 7) % 20) as f64 / 19.0;
        defects.push(kdv::field_u(&data, x, t)? - reference_two_soliton(x, t));
    }
    Ok(vec![Check::at_most("(1,4) closed form at 20 points", max_abs(defects), 1e-9)])
}

fn c5_h2_chain() -> Result<Vec<Check>> {
    let s = spec(2.0, &[2])?;
    let sys = deformed_potential(&s)?;
    let grid = GridSpec::new(20.0, 8001, StencilOrder::Fourth)?;
    let (energies, change) = converged_energies(&sys, grid)?;
    let mut checks = energy_checks("h=2 [2]", &energies, &[-25.0, -4.0, -1.0], change);
    let data = kdv::scattering_data_from_spec(&s)?;
    let spot = kdv::field_u(&data, 0.0, 0.0)?;
    checks.push(Check::at_most(format!("u(0,0) = {} vs -44", float(spot)), (spot + 44.0).abs(), 1e-12));
    let mut defects = Vec::new();
    for x in linspace(-8.0, 8.0, 1601) {
        defects.push(kdv::field_u(&data, x, 0.0)? - reference_profile_h2(x));
    }
    checks.push(Check::at_most("reconstruction h=2", max_abs(defects), 1e-6));
    Ok(checks)
}

fn c6_kdv_residual() -> Result<Vec<Check>> {
    let sets = [
        ("(1)", SolitonData::new(vec![1.0], vec![2f64.sqrt()])?),
        ("(1,4)", two_soliton_data()),
        ("(1,2,5)", kdv::scattering_data_from_spec(&spec(2.0, &[2])?)?),
    ];
    let mut checks = Vec::new();
    for (label, data) in &sets {
        let mut worst: f64 = 0.0;
        for x in linspace(-3.0, 3.0, 9) {
            for t in linspace(-0.05, 0.05, 5) {
                worst = worst.max(kdv::kdv_residual(data, x, t)?);
            }
        }
        checks.push(Check::at_most(format!("residual {label} on 9x5 grid"), worst, 1e-5));
    }
    let single = kdv::kdv_residual(&sets[0].1, 0.3, 0.2)?;
    checks.push(Check::at_most("one-soliton residual at (0.3, 0.2)", single, 1e-6));
    Ok(checks)
}

fn c7_unitarity() -> Result<Vec<Check>> {
    let seed_sets: [&[u32]; 5] = [&[], &[2], &[4], &[2, 4], &[2, 6]];
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    while samples < 200 {
        let h: f64 = rng.gen_range(0.5..5.0);
        if h == h.round() {
            continue;
        }
        let k: f64 = rng.gen_range(0.1..10.0);
        let seeds = seed_sets[rng.gen_range(0..seed_sets.len())];
        let amp = scattering::deformed_amplitudes(&spec(h, seeds)?, k)?;
        worst = worst.max(amp.unitarity_defect().abs());
        samples += 1;
    }
    let mut exact_zero = true;
    for h in [1.0, 2.0, 3.0, 4.0] {
        for seeds in seed_sets {
            for k in [0.1, 0.5, 1.0, 3.0, 9.5] {
                exact_zero &= scattering::deformed_amplitudes(&spec(h, seeds)?, k)?.r == num_complex::Complex64::new(0.0, 0.0);
            }
        }
    }
    Ok(vec![
        Check::at_most("unitarity over 200 random non-integer h", worst, 1e-10),
        Check::holds("r_D is exactly zero for integer h", exact_zero),
    ])
}

fn c8_oracle_agreement() -> Result<Vec<Check>> {
    let specs: [(f64, &[u32]); 4] = [(1.0, &[2]), (2.0, &[2]), (1.5, &[2]), (1.0, &[2, 4])];
    let mut checks = Vec::new();
    for (h, seeds) in specs {
        let s = spec(h, seeds)?;
        let defects = deformed_potential(&s).and_then(|sys| {
            let (mut dt, mut dr): (f64, f64) = (0.0, 0.0);
            for k in [0.25, 0.5, 1.0, 2.0, 4.0, 8.0] {
                let closed = scattering::deformed_amplitudes(&s, k)?;
                let num = scattering::numerical_amplitudes(&sys, k)?;
                dt = dt.max((closed.t - num.t).norm());
                dr = dr.max((closed.r - num.r).norm());
            }
            Ok((dt, dr))
        });
        match defects {
            Ok((dt, dr)) => {
                checks.push(Check::at_most(format!("t closed vs ODE, {s}"), dt, 1e-4));
                checks.push(Check::at_most(format!("r closed vs ODE, {s}"), dr, 1e-4));
            }
            Err(e) => checks.push(Check::holds(format!("closed vs ODE, {s}: {e}"), false)),
        }
    }
    Ok(checks)
}

fn c9_duality() -> Result<Vec<Check>> {
    let specs: [(f64, &[u32]); 3] = [(1.0, &[2]), (2.0, &[2]), (3.0, &[])];
    let mut checks = Vec::new();
    for (h, seeds) in specs {
        let s = spec(h, seeds)?;
        let poles = scattering::transmission_poles(&s);
        let sys = Arc::new(deformed_potential(&s)?);
        let mut kappas: Vec<f64> = sys.bound_states()?.iter().map(|b| b.kappa).collect();
        kappas.sort_by(f64::total_cmp);
        checks.push(Check::holds(format!("poles {poles:?} = bound-state kappas {kappas:?}, {s}"), poles == kappas));
    }
    Ok(checks)
}

fn c10_phase_shifts() -> Result<Vec<Check>> {
    let data = two_soliton_data();
    let solitons = kdv::asymptotic_decomposition(&data);
    let chi = 0.5 * (5.0f64 / 3.0).ln();
    let mut checks = vec![Check::at_most(
        "phase shifts chi = (+1/2 ln 5/3, -1/2 ln 5/3)",
        max_abs([solitons[0].chi - chi, solitons[1].chi + chi]),
        1e-12,
    )];
    for t in [-3.0, 3.0] {
        let (mut dx, mut dh): (f64, f64) = (0.0, 0.0);
        for s in &solitons {
            let predicted = 4.0 * s.kappa * s.kappa * t - t.signum() * s.chi / s.kappa;
            let (x, u) = kdv::locate_peak(&data, t, predicted, 0.5)?;
            dx = dx.max((x - predicted).abs());
            dh = dh.max((-u - 2.0 * s.kappa * s.kappa).abs());
        }
        checks.push(Check::at_most(format!("peak positions at t = {t}"), dx, 1e-2));
        checks.push(Check::at_most(format!("peak heights at t = {t}"), dh, 1e-3));
    }
    Ok(checks)
}

fn c11_conservation() -> Result<Vec<Check>> {
    let sets = [
        ("(1)", SolitonData::new(vec![1.0], vec![2f64.sqrt()])?),
        ("(1,4)", two_soliton_data()),
        ("(1,2,5)", kdv::scattering_data_from_spec(&spec(2.0, &[2])?)?),
    ];
    let mut checks = Vec::new();
    for (label, data) in &sets {
        let (mass, momentum) = kdv::conserved_quantities_exact(data);
        let (mut dm, mut dp): (f64, f64) = (0.0, 0.0);
        let mut values = Vec::new();
        for t in [-0.05, 0.0, 0.05] {
            let (m, p) = kdv::conserved_quantities(data, t)?;
            dm = dm.max((m - mass).abs());
            dp = dp.max((p - momentum).abs());
            values.push((m, p));
        }
        let drift = max_abs(values.iter().flat_map(|(m, p)| [m - values[1].0, p - values[1].1]));
        checks.push(Check::at_most(format!("mass {label} vs {}", float(mass)), dm, 1e-8));
        checks.push(Check::at_most(format!("momentum {label} vs {}", float(momentum)), dp, 1e-8));
        checks.push(Check::at_most(format!("time drift {label}"), drift, 1e-8));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_parsing() {
        assert_eq!("glm".parse::<Suite>().unwrap(), Suite::Glm);
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!(Suite::All.criteria().len(), 11);
    }

    #[test]
    fn check_rendering() {
        let c = Check::at_most("reconstruction h=1", 0.5, 1e-8);
        assert_eq!(c.to_string(), "reconstruction h=1: max-defect 0.5 <= 1e-8 FAIL");
        assert!(!Check::at_most("x", f64::NAN, 1.0).passed);
    }

    #[test]
    fn reference_profiles_at_origin() {
        assert_eq!(reference_profile_h1(0.0), -30.0);
        assert_eq!(reference_profile_h2(0.0), -44.0);
        assert!((reference_two_soliton(0.0, 0.0) + 30.0).abs() < 1e-13);
    }

    #[test]
    fn unknown_criterion() {
        assert!(criterion(0).is_err());
        assert!(criterion(12).is_err());
    }
}
