//! Adaptive Simpson quadrature with Richardson correction.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 48;
/// Default number of initial uniform panels.
const INITIAL_PANELS: usize = 64;

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn refine<F: Fn(f64) -> f64>(f: &F, p: Panel, tol: f64, depth: u32) -> Result<f64> {
    let m = 0.5 * (p.a + p.b);
    let lm = 0.5 * (p.a + m);
    let rm = 0.5 * (m + p.b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(p.a, m, p.fa, flm, p.fm);
    let right = simpson(m, p.b, p.fm, frm, p.fb);
    let delta = left + right - p.whole;
    if !delta.is_finite() {
        return Err(Error::Quadrature(format!("non-finite integrand on [{}, {}]", p.a, p.b)));
    }
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Quadrature(format!(
            "no convergence on [{}, {}] after {MAX_DEPTH} bisections",
            p.a, p.b
        )));
    }
    let l = refine(
        f,
        Panel { a: p.a, b: m, fa: p.fa, fm: flm, fb: p.fm, whole: left },
        0.5 * tol,
        depth + 1,
    )?;
    let r = refine(
        f,
        Panel { a: m, b: p.b, fa: p.fm, fm: frm, fb: p.fb, whole: right },
        0.5 * tol,
        depth + 1,
    )?;
    Ok(l + r)
}

/// `∫_a^b f` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    integrate_panels(f, a, b, tol, INITIAL_PANELS)
}

/// As [`integrate`], starting from `panels` uniform panels. Use enough panels
/// that no feature of the integrand is narrower than a quarter panel.
pub fn integrate_panels<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, panels: usize) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && tol > 0.0 && panels > 0) {
        return Err(Error::InvalidInput(format!("bad quadrature range [{a}, {b}], tol {tol}")));
    }
    if a == b {
        return Ok(0.0);
    }
    let width = (b - a) / panels as f64;
    let panel_tol = tol / panels as f64;
    let mut total = 0.0;
    let mut fa = f(a);
    for i in 0..panels {
        let pa = a + width * i as f64;
        let pb = if i + 1 == panels { b } else { pa + width };
        let fm = f(0.5 * (pa + pb));
        let fb = f(pb);
        let whole = simpson(pa, pb, fa, fm, fb);
        total += refine(&f, Panel { a: pa, b: pb, fa, fm, fb, whole }, panel_tol, 0)?;
        fa = fb;
    }
    Ok(total)
}

/// `∫_a^b f` to a tolerance relative to a coarse estimate of `∫|f|`.
pub fn integrate_relative<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    let n = 4096;
    let step = (b - a) / n as f64;
    let scale: f64 = (0..=n).map(|i| f(a + step * i as f64).abs()).sum::<f64>() * step.abs();
    if scale == 0.0 {
        return Ok(0.0);
    }
    integrate(f, a, b, rel_tol * scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate(|x| x * x * x - 2.0 * x, -1.0, 3.0, 1e-12).unwrap();
        assert_abs_diff_eq!(v, 20.0 - 8.0, epsilon = 1e-12);
    }

    #[test]
    fn sech_squared_mass() {
        let v = integrate(|x: f64| 1.0 / x.cosh().powi(2), -30.0, 30.0, 1e-13).unwrap();
        assert_abs_diff_eq!(v, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn narrow_peak_is_found() {
        let v = integrate_panels(|x: f64| (-(x - 0.123).powi(2) * 1e4).exp(), -25.0, 25.0, 1e-12, 2048).unwrap();
        assert_abs_diff_eq!(v, (std::f64::consts::PI / 1e4).sqrt(), epsilon = 1e-11);
    }

    #[test]
    fn rejects_nan_integrand() {
        assert!(integrate(|_| f64::NAN, 0.0, 1.0, 1e-10).is_err());
    }
}
