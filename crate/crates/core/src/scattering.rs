//! Transmission and reflection amplitudes of the soliton potential and of its
//! Darboux–Crum deformations, plus a direct ODE-integration oracle.
//!
//! Convention: a wave `e^{iKx}` comes in from the left; the scattering state
//! behaves as `e^{iKx} + r e^{-iKx}` at `x → -∞` and `t e^{iKx}` at `x → +∞`.

use std::f64::consts::LN_2;

use num_complex::Complex64;

use crate::darboux::{Potential, SystemSpec};
use crate::error::{Error, Result};
use crate::ode::{self, Tolerances};
use crate::specfun::{hyp2f1, hyp2f1_connection_complement, log_gamma, reciprocal_gamma};

/// Integration half-width for the ODE oracle.
pub const ORACLE_HALF_WIDTH: f64 = 25.0;
/// Below this wave number the plane-wave decomposition is ill-conditioned.
pub const ORACLE_MIN_K: f64 = 0.05;
/// Largest admissible `|U(±L)|` for the oracle.
pub const ORACLE_BOUNDARY_DECAY: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringAmplitudes {
    pub k: f64,
    pub t: Complex64,
    pub r: Complex64,
}

impl ScatteringAmplitudes {
    /// `|t|² + |r|² - 1`.
    pub fn unitarity_defect(&self) -> f64 {
        self.t.norm_sqr() + self.r.norm_sqr() - 1.0
    }
}

fn check_k(k: f64) -> Result<()> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::InvalidInput(format!("wave number must be positive, got {k}")));
    }
    Ok(())
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Amplitudes of `U = -h(h+1) sech²x`.
///
/// `t = Γ(-iK-h)Γ(-iK+h+1) / (Γ(1-iK)Γ(-iK))` and
/// `r = Γ(1+h-iK)Γ(-h-iK)Γ(iK) / (Γ(-h)Γ(1+h)Γ(-iK))`; the `1/Γ(-h)` factor
/// makes `r` an exact zero for integer `h`.
pub fn base_amplitudes(h: f64, k: f64) -> Result<ScatteringAmplitudes> {
    check_k(k)?;
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidInput(format!("h must be positive, got {h}")));
    }
    let lg_mk = log_gamma(c(0.0, -k))?;
    let t = (log_gamma(c(-h, -k))? + log_gamma(c(h + 1.0, -k))? - log_gamma(c(1.0, -k))? - lg_mk).exp();
    let inv_gamma_mh = reciprocal_gamma(c(-h, 0.0));
    let r = if inv_gamma_mh == c(0.0, 0.0) {
        c(0.0, 0.0)
    } else {
        (log_gamma(c(1.0 + h, -k))? + log_gamma(c(-h, -k))? + log_gamma(c(0.0, k))?
            - log_gamma(c(1.0 + h, 0.0))?
            - lg_mk)
            .exp()
            * inv_gamma_mh
    };
    Ok(ScatteringAmplitudes { k, t, r })
}

/// Unit-modulus factors contributed by one seed of degree `v`:
/// `t_factor = (K + iΔ)/(K - iΔ)` and `r_factor = -t_factor`, `Δ = h+1+v`.
pub fn deformation_factor(h: f64, v: u32, k: f64) -> Result<(Complex64, Complex64)> {
    check_k(k)?;
    let (delta_plus, delta_minus) = crate::darboux::seed_exponents(h, v)?;
    let tf = c(k, delta_plus) / c(k, delta_minus);
    let rf = -c(k, -delta_minus) / c(k, delta_minus);
    Ok((tf, rf))
}

/// Amplitudes of the deformed potential: base amplitudes times one
/// [`deformation_factor`] per seed.
pub fn deformed_amplitudes(spec: &SystemSpec, k: f64) -> Result<ScatteringAmplitudes> {
    let mut amp = base_amplitudes(spec.h(), k)?;
    for &v in spec.seeds() {
        let (tf, rf) = deformation_factor(spec.h(), v, k)?;
        amp.t *= tf;
        amp.r *= rf;
    }
    Ok(amp)
}

/// Decay rates `κ` of the poles `K = iκ` of `t_D` in the upper half plane,
/// ascending.
pub fn transmission_poles(spec: &SystemSpec) -> Vec<f64> {
    let mut poles = spec.base_kappas();
    poles.extend(spec.seed_kappas());
    poles.sort_by(f64::total_cmp);
    poles
}

/// Undeformed scattering state
/// `(cosh x)^{iK} ₂F₁(-iK-h, -iK+h+1; 1-iK; (1-tanh x)/2)`,
/// which tends to `2^{-iK} e^{iKx}` as `x → +∞`.
pub fn base_scattering_state(h: f64, k: f64, x: f64) -> Result<Complex64> {
    check_k(k)?;
    let (a, b, cc) = (c(-h, -k), c(h + 1.0, -k), c(1.0, -k));
    let ax = x.abs();
    let log_cosh = ax + (-2.0 * ax).exp().ln_1p() - LN_2;
    let phase = (c(0.0, k) * log_cosh).exp();
    let f = if x >= 0.0 {
        hyp2f1(a, b, cc, 0.5 * (1.0 - x.tanh()))?
    } else {
        // 1 - z = 1/(1 + e^{-2x}) without cancellation
        let w = 1.0 / (1.0 + (-2.0 * x).exp());
        let (t1, t2) = hyp2f1_connection_complement(a, b, cc, w)?;
        t1 + t2
    };
    Ok(phase * f)
}

/// Amplitudes by direct integration of `ψ'' = (U - K²) ψ` from `x = +L`,
/// where `ψ = e^{iKx}`, back to `x = -L`.
pub fn numerical_amplitudes(potential: &dyn Potential, k: f64) -> Result<ScatteringAmplitudes> {
    check_k(k)?;
    if k < ORACLE_MIN_K {
        return Err(Error::InvalidInput(format!(
            "wave number {k} below {ORACLE_MIN_K}: plane-wave decomposition is ill-conditioned"
        )));
    }
    let l = ORACLE_HALF_WIDTH;
    let edge = potential.value(l).abs().max(potential.value(-l).abs());
    if !(edge <= ORACLE_BOUNDARY_DECAY) {
        return Err(Error::InvalidInput(format!("potential is {edge:e} at x = ±{l}")));
    }
    let k2 = k * k;
    let start = c(0.0, k * l).exp();
    let dstart = c(0.0, k) * start;
    let y0 = [start.re, dstart.re, start.im, dstart.im];
    let rhs = |x: f64, y: &[f64; 4]| {
        let q = potential.value(x) - k2;
        [y[1], q * y[0], y[3], q * y[2]]
    };
    let sol = ode::integrate(rhs, l, y0, -l, Tolerances::default())?;
    let psi = c(sol.y[0], sol.y[2]);
    let dpsi = c(sol.y[1], sol.y[3]);
    let x = -l;
    let ik = c(0.0, k);
    let alpha = (psi + dpsi / ik) * c(0.0, -k * x).exp() * 0.5;
    let beta = (psi - dpsi / ik) * c(0.0, k * x).exp() * 0.5;
    if !(alpha.norm().is_finite() && alpha.norm() > 0.0) {
        return Err(Error::Integration(format!("degenerate incident amplitude {alpha}")));
    }
    Ok(ScatteringAmplitudes { k, t: 1.0 / alpha, r: beta / alpha })
}
