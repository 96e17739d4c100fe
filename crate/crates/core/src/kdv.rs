//! Reflectionless KdV multi-solitons from the GLM determinant.
//!
//! With scattering data `{κ_n, c_n}` the field is `u = -2 ∂²ₓ log det A`,
//! `A_mn = δ_mn + c_m c_n e^{-(κ_m+κ_n)x}/(κ_m+κ_n)` (the symmetrized form;
//! same determinant as the textbook one) and `c_n(t) = c_n(0) e^{4κ_n³t}`.
//!
//! Writing `c_n e^{-κ_n x} = e^{θ_n}`, every row with `Re θ_n > 0` is scaled by
//! `e^{-θ_n}`. The scaled matrix has bounded entries for all `(x, t)` and
//! differs from `A` by a factor whose log is linear in `x`, so `u` is
//! unchanged. This is what lets the field be sampled at `t = ±3` where the
//! raw entries are `e^{±1500}`.

use std::f64::consts::PI;

use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex64;

use crate::darboux::{self, SystemSpec};
use crate::error::{Error, Result};
use crate::quad;

/// Range of the raw exponents accepted by [`glm_matrix`].
pub const GLM_EXPONENT_LIMIT: f64 = 600.0;
/// Number of nodes on the Cauchy contours used by [`kdv_residual`].
pub const CONTOUR_NODES: usize = 64;
/// Contour radii in units of the shortest length and time scales.
pub const CONTOUR_RADIUS: f64 = 0.3;
/// Half-width added around the soliton centers for conserved quantities.
pub const CONSERVATION_MARGIN: f64 = 40.0;

/// Reflectionless scattering data: ascending decay rates and positive norming
/// constants at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolitonData {
    kappas: Vec<f64>,
    c0: Vec<f64>,
}

impl SolitonData {
    pub fn new(kappas: Vec<f64>, c0: Vec<f64>) -> Result<Self> {
        if kappas.is_empty() || kappas.len() != c0.len() {
            return Err(Error::InvalidInput(format!(
                "need matching non-empty kappa and c0 lists, got {} and {}",
                kappas.len(),
                c0.len()
            )));
        }
        if kappas.iter().any(|k| !(k.is_finite() && *k > 0.0)) {
            return Err(Error::InvalidInput(format!("kappas must be positive, got {kappas:?}")));
        }
        if kappas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!("kappas must be strictly increasing, got {kappas:?}")));
        }
        if c0.iter().any(|c| !(c.is_finite() && *c > 0.0)) {
            return Err(Error::InvalidInput(format!("norming constants must be positive, got {c0:?}")));
        }
        Ok(Self { kappas, c0 })
    }

    pub fn kappas(&self) -> &[f64] {
        &self.kappas
    }

    pub fn c0(&self) -> &[f64] {
        &self.c0
    }

    pub fn len(&self) -> usize {
        self.kappas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kappas.is_empty()
    }

    /// `c_n(t) = c_n(0) e^{4κ_n³t}`.
    pub fn norming_at(&self, t: f64) -> Vec<f64> {
        self.kappas.iter().zip(&self.c0).map(|(k, c)| c * (4.0 * k.powi(3) * t).exp()).collect()
    }

    /// Data whose field is this one shifted right by `a`.
    pub fn translated(&self, a: f64) -> Self {
        let c0 = self.kappas.iter().zip(&self.c0).map(|(k, c)| c * (k * a).exp()).collect();
        Self { kappas: self.kappas.clone(), c0 }
    }

    fn max_kappa(&self) -> f64 {
        *self.kappas.last().expect("non-empty")
    }
}

/// Scattering data of a deformed system with integer `h` (where it is
/// reflectionless), sorted by increasing `κ`.
pub fn scattering_data_from_spec(spec: &SystemSpec) -> Result<SolitonData> {
    if !spec.has_integer_h() {
        return Err(Error::InvalidInput(format!(
            "h = {} is not an integer; the potential reflects and has no finite GLM determinant",
            spec.h()
        )));
    }
    let mut states = darboux::bound_states(spec)?;
    states.sort_by(|a, b| a.kappa.total_cmp(&b.kappa));
    SolitonData::new(
        states.iter().map(|s| s.kappa).collect(),
        states.iter().map(|s| s.norming_constant).collect(),
    )
}

/// Symmetrized GLM matrix at `(x, t)`, restricted to
/// `max_n |2κ_n x| + |8κ_n³ t| < 600` so that no entry overflows.
pub fn glm_matrix(data: &SolitonData, x: f64, t: f64) -> Result<DMatrix<f64>> {
    check_point(x, t)?;
    let reach = data
        .kappas
        .iter()
        .map(|k| (2.0 * k * x).abs() + (8.0 * k.powi(3) * t).abs())
        .fold(0.0, f64::max);
    if !(reach < GLM_EXPONENT_LIMIT) {
        return Err(Error::Domain {
            x,
            t,
            reason: format!("GLM exponents reach {reach:.1}, limit {GLM_EXPONENT_LIMIT}"),
        });
    }
    let c = data.norming_at(t);
    let n = data.len();
    Ok(DMatrix::from_fn(n, n, |i, j| {
        let (ki, kj) = (data.kappas[i], data.kappas[j]);
        let delta = if i == j { 1.0 } else { 0.0 };
        delta + c[i] * c[j] * (-(ki + kj) * x).exp() / (ki + kj)
    }))
}

fn check_point(x: f64, t: f64) -> Result<()> {
    if !(x.is_finite() && t.is_finite()) {
        return Err(Error::Domain { x, t, reason: "non-finite coordinate".into() });
    }
    Ok(())
}

/// The scaled matrix and its first two `x`-derivatives, plus the log of the
/// dropped scale factor.
struct Scaled<T: ComplexField> {
    m: DMatrix<T>,
    dm: DMatrix<T>,
    d2m: DMatrix<T>,
    log_scale: T,
}

fn scaled_glm<T: ComplexField<RealField = f64>>(data: &SolitonData, x: T, t: T) -> Scaled<T> {
    let n = data.len();
    let mut p = Vec::with_capacity(n);
    let mut dp = Vec::with_capacity(n);
    let mut w = Vec::with_capacity(n);
    let mut rate = Vec::with_capacity(n);
    let mut log_scale = T::zero();
    for (k, c) in data.kappas.iter().zip(&data.c0) {
        let kt = T::from_real(*k);
        let theta = T::from_real(c.ln()) + T::from_real(4.0 * k.powi(3)) * t.clone() - kt.clone() * x.clone();
        if theta.clone().real() > 0.0 {
            let q = (-(theta.clone() + theta.clone())).exp();
            dp.push(T::from_real(2.0 * k) * q.clone());
            p.push(q);
            w.push(T::one());
            rate.push(0.0);
            log_scale += theta.clone() + theta;
        } else {
            p.push(T::one());
            dp.push(T::zero());
            w.push(theta.exp());
            rate.push(*k);
        }
    }
    let mut m = DMatrix::zeros(n, n);
    let mut dm = DMatrix::zeros(n, n);
    let mut d2m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let e = w[i].clone() * w[j].clone() / T::from_real(data.kappas[i] + data.kappas[j]);
            let r = T::from_real(rate[i] + rate[j]);
            m[(i, j)] = e.clone();
            dm[(i, j)] = -(r.clone() * e.clone());
            d2m[(i, j)] = r.clone() * r * e;
        }
        let k = T::from_real(data.kappas[i]);
        m[(i, i)] += p[i].clone();
        d2m[(i, i)] += k * T::from_real(2.0) * dp[i].clone();
        dm[(i, i)] += dp[i].clone();
    }
    Scaled { m, dm, d2m, log_scale }
}

fn field_generic<T: ComplexField<RealField = f64>>(data: &SolitonData, x: T, t: T) -> Option<T> {
    let s = scaled_glm(data, x, t);
    let inv = s.m.lu().try_inverse()?;
    let b1 = &inv * &s.dm;
    let b2 = &inv * &s.d2m;
    let u = T::from_real(-2.0) * (b2.trace() - (&b1 * &b1).trace());
    u.is_finite().then_some(u)
}

/// `u(x, t) = -2 ∂²ₓ log det A`, from trace identities on the scaled matrix.
pub fn field_u(data: &SolitonData, x: f64, t: f64) -> Result<f64> {
    check_point(x, t)?;
    field_generic(data, x, t).ok_or_else(|| Error::NonFinite(format!("u({x}, {t})")))
}

/// Analytic continuation of [`field_u`] to complex `x` and `t`.
pub fn field_u_complex(data: &SolitonData, x: Complex64, t: Complex64) -> Result<Complex64> {
    if !(x.is_finite() && t.is_finite()) {
        return Err(Error::Domain { x: x.re, t: t.re, reason: "non-finite coordinate".into() });
    }
    field_generic(data, x, t).ok_or_else(|| Error::NonFinite(format!("u({x}, {t})")))
}

/// `log det A(x, t)`, valid far outside the range of [`glm_matrix`].
pub fn log_det(data: &SolitonData, x: f64, t: f64) -> Result<f64> {
    check_point(x, t)?;
    let s = scaled_glm(data, x, t);
    let det = s.m.determinant();
    if !(det > 0.0) {
        return Err(Error::NonFinite(format!("scaled GLM determinant {det} at ({x}, {t})")));
    }
    Ok(det.ln() + s.log_scale)
}

/// `u_x`, `u_xxx` and `u_t` by Cauchy integrals on circles around the point.
pub fn field_derivatives(data: &SolitonData, x: f64, t: f64) -> Result<(f64, f64, f64, f64)> {
    check_point(x, t)?;
    let kmax = data.max_kappa();
    let rx = CONTOUR_RADIUS / kmax;
    let rt = CONTOUR_RADIUS / (4.0 * kmax.powi(3));
    let (xc, tc) = (Complex64::new(x, 0.0), Complex64::new(t, 0.0));
    let mut ux = Complex64::new(0.0, 0.0);
    let mut uxxx = Complex64::new(0.0, 0.0);
    let mut ut = Complex64::new(0.0, 0.0);
    for k in 0..CONTOUR_NODES {
        let phi = 2.0 * PI * k as f64 / CONTOUR_NODES as f64;
        let e = Complex64::from_polar(1.0, phi);
        let fx = field_u_complex(data, xc + rx * e, tc)?;
        let ft = field_u_complex(data, xc, tc + rt * e)?;
        ux += fx * e.conj();
        uxxx += fx * e.conj().powi(3);
        ut += ft * e.conj();
    }
    let nodes = CONTOUR_NODES as f64;
    let u = field_u(data, x, t)?;
    Ok((u, ux.re / (nodes * rx), 6.0 * uxxx.re / (nodes * rx.powi(3)), ut.re / (nodes * rt)))
}

/// `|u_t - 6 u u_x + u_xxx|`.
pub fn kdv_residual(data: &SolitonData, x: f64, t: f64) -> Result<f64> {
    let (u, ux, uxxx, ut) = field_derivatives(data, x, t)?;
    Ok((ut - 6.0 * u * ux + uxxx).abs())
}

/// The same residual from 5-point central differences with steps `dx`, `dt`.
/// Truncation error grows like `κ⁷ dx⁴`, so it is only informative for slow
/// solitons.
pub fn kdv_residual_stencil(data: &SolitonData, x: f64, t: f64, dx: f64, dt: f64) -> Result<f64> {
    let f = |x: f64, t: f64| field_u(data, x, t);
    let u = f(x, t)?;
    let (xm2, xm1, xp1, xp2) = (f(x - 2.0 * dx, t)?, f(x - dx, t)?, f(x + dx, t)?, f(x + 2.0 * dx, t)?);
    let ux = (xm2 - 8.0 * xm1 + 8.0 * xp1 - xp2) / (12.0 * dx);
    let uxxx = (-xm2 + 2.0 * xm1 - 2.0 * xp1 + xp2) / (2.0 * dx.powi(3));
    let ut = (f(x, t - 2.0 * dt)? - 8.0 * f(x, t - dt)? + 8.0 * f(x, t + dt)? - f(x, t + 2.0 * dt)?) / (12.0 * dt);
    Ok((ut - 6.0 * u * ux + uxxx).abs())
}

/// One outgoing soliton of the asymptotic decomposition
/// `u ~ -2 Σ κ² sech²(κ(x - 4κ²t - offset) ± χ)` as `t → ±∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticSoliton {
    pub kappa: f64,
    pub speed: f64,
    pub chi: f64,
    /// Mean of the incoming and outgoing trajectories at `t = 0`.
    pub offset: f64,
}

impl AsymptoticSoliton {
    /// Predicted peak position: `4κ²t + offset ∓ χ/κ` for `t ≷ 0`.
    pub fn center(&self, t: f64) -> f64 {
        let sign = if t >= 0.0 { 1.0 } else { -1.0 };
        self.speed * t + self.offset - sign * self.chi / self.kappa
    }

    pub fn height(&self) -> f64 {
        2.0 * self.kappa * self.kappa
    }
}

/// Speeds, phase shifts `χ_n = ½ Σ_{m≠n} sgn(κ_n-κ_m) ln|(κ_n-κ_m)/(κ_n+κ_m)|`
/// and trajectory offsets of every soliton.
pub fn asymptotic_decomposition(data: &SolitonData) -> Vec<AsymptoticSoliton> {
    let ks = &data.kappas;
    ks.iter()
        .zip(&data.c0)
        .enumerate()
        .map(|(n, (&kn, &cn))| {
            let mut chi = 0.0;
            let mut coupling = 0.0;
            for (m, &km) in ks.iter().enumerate() {
                if m == n {
                    continue;
                }
                let ratio = ((kn - km) / (kn + km)).abs().ln();
                chi += 0.5 * (kn - km).signum() * ratio;
                coupling -= ratio;
            }
            let offset = ((cn * cn / (2.0 * kn)).ln() - coupling) / (2.0 * kn);
            AsymptoticSoliton { kappa: kn, speed: 4.0 * kn * kn, chi, offset }
        })
        .collect()
}

/// Position and depth of the minimum of `u` within `guess ± half_window`.
pub fn locate_peak(data: &SolitonData, t: f64, guess: f64, half_window: f64) -> Result<(f64, f64)> {
    let samples = 2001;
    let step = 2.0 * half_window / (samples - 1) as f64;
    let mut best = (guess, f64::INFINITY);
    for i in 0..samples {
        let x = guess - half_window + step * i as f64;
        let u = field_u(data, x, t)?;
        if u < best.1 {
            best = (x, u);
        }
    }
    // golden-section refinement on the bracketing cell
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (best.0 - step, best.0 + step);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (field_u(data, c, t)?, field_u(data, d, t)?);
    while b - a > 1e-10 * (1.0 + best.0.abs()) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = field_u(data, c, t)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = field_u(data, d, t)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, field_u(data, x, t)?))
}

/// `(∫u dx, ∫u² dx)` over a window covering every soliton at time `t`.
pub fn conserved_quantities(data: &SolitonData, t: f64) -> Result<(f64, f64)> {
    check_point(0.0, t)?;
    let centers: Vec<f64> = data.kappas.iter().map(|k| 4.0 * k * k * t).collect();
    let lo = centers.iter().cloned().fold(f64::INFINITY, f64::min) - CONSERVATION_MARGIN;
    let hi = centers.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + CONSERVATION_MARGIN;
    let u = |x: f64| field_u(data, x, t).unwrap_or(f64::NAN);
    // a few panels per soliton width
    let panels = ((hi - lo) * 4.0 * data.max_kappa()).ceil() as usize;
    let mass = quad::integrate_panels(u, lo, hi, 1e-11, panels)?;
    let momentum = quad::integrate_panels(|x| u(x).powi(2), lo, hi, 1e-10, panels)?;
    Ok((mass, momentum))
}

/// Trace-formula values `(-4 Σκ, (16/3) Σκ³)`.
pub fn conserved_quantities_exact(data: &SolitonData) -> (f64, f64) {
    let s1: f64 = data.kappas.iter().sum();
    let s3: f64 = data.kappas.iter().map(|k| k.powi(3)).sum();
    (-4.0 * s1, 16.0 / 3.0 * s3)
}
