//! Base soliton potential, pseudo-virtual seeds and their Darboux–Crum
//! deformations.
//!
//! For a seed set `{φ_{v_1}, …, φ_{v_M}}` the deformed potential is
//! `U_D = U - 2 (log W)''` with `W` the Wronskian of the seeds. Every seed has
//! the form `φ_v = cosh^{a} x · P(tanh x)` with `a = h+1+v`, so all Wronskian
//! entries are computed in the scaled form `Q_{kj} = cosh^{-a_j} φ_j^{(k)}`,
//! which stays bounded on the whole line. Higher derivatives are reduced to
//! `φ` and `φ'` through the Schrödinger equation (see [`DerivativeRows`]).

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::poly::DerivativeRows;
use crate::quad;
use crate::specfun::{jacobi_eval, JacobiParams};

/// Anything that can be evaluated as a potential `x ↦ U(x)`.
pub trait Potential: Sync {
    fn value(&self, x: f64) -> f64;
}

impl<F: Fn(f64) -> f64 + Sync> Potential for F {
    fn value(&self, x: f64) -> f64 {
        self(x)
    }
}

/// Half-width of the window used for normalization quadrature.
pub const NORMALIZATION_HALF_WIDTH: f64 = 25.0;
/// Absolute tolerance of the normalization quadrature (relative to the
/// coarse integral of `ψ²`).
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Point where the `ψ e^{κx}` tail is read off.
pub const TAIL_POINT: f64 = 12.0;
/// Second tail point used for the Richardson cross-check.
pub const TAIL_CHECK_POINT: f64 = 14.0;
/// Required agreement of the two tail readings.
pub const TAIL_AGREEMENT: f64 = 1e-8;
/// Nodeless-Wronskian scan: number of points and half-width.
pub const WRONSKIAN_SCAN_POINTS: usize = 40_001;
pub const WRONSKIAN_SCAN_HALF_WIDTH: f64 = 20.0;

/// Base coupling `h` and the ordered multi-index of even seed degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    h: f64,
    seeds: Vec<u32>,
}

impl SystemSpec {
    pub fn new(h: f64, seeds: Vec<u32>) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidInput(format!("h must be a positive finite number, got {h}")));
        }
        for &v in &seeds {
            if v < 2 || v % 2 != 0 {
                return Err(Error::InvalidInput(format!(
                    "seed degree {v} is not an even integer >= 2; odd seeds give singular potentials"
                )));
            }
        }
        if seeds.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!(
                "seed degrees must be strictly increasing, got {seeds:?}"
            )));
        }
        Ok(Self { h, seeds })
    }

    pub fn undeformed(h: f64) -> Result<Self> {
        Self::new(h, Vec::new())
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn seeds(&self) -> &[u32] {
        &self.seeds
    }

    /// Number of Darboux steps `M`.
    pub fn steps(&self) -> usize {
        self.seeds.len()
    }

    /// Largest base level index `[h]'`: the greatest integer strictly below `h`.
    pub fn top_level(&self) -> u32 {
        greatest_integer_below(self.h)
    }

    pub fn has_integer_h(&self) -> bool {
        self.h == self.h.round()
    }

    /// Decay rates `h - n` of the base levels, `n = 0..=[h]'`.
    pub fn base_kappas(&self) -> Vec<f64> {
        (0..=self.top_level()).map(|n| self.h - f64::from(n)).collect()
    }

    /// Decay rates `h + 1 + v_j` of the states added by the seeds.
    pub fn seed_kappas(&self) -> Vec<f64> {
        self.seeds.iter().map(|&v| seed_exponent(self.h, v)).collect()
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h={}, seeds={:?}", self.h, self.seeds)
    }
}

/// Greatest integer strictly below `h` (for `h > 0`).
pub fn greatest_integer_below(h: f64) -> u32 {
    let f = h.floor();
    if f == h {
        (f - 1.0).max(0.0) as u32
    } else {
        f.max(0.0) as u32
    }
}

fn seed_exponent(h: f64, v: u32) -> f64 {
    h + 1.0 + f64::from(v)
}

/// `U(x) = -h(h+1)/cosh²x`.
pub fn base_potential(h: f64, x: f64) -> f64 {
    let sech = 1.0 / x.cosh();
    -h * (h + 1.0) * sech * sech
}

/// Value and logarithmic derivatives of a seed function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeedValue {
    pub value: f64,
    pub dlog: f64,
    pub d2log: f64,
}

fn check_seed(h: f64, v: u32) -> Result<()> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidInput(format!("h must be positive, got {h}")));
    }
    if v < 2 || !v.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "seed degree {v} is not an even integer >= 2; odd seeds have a pole at x = 0"
        )));
    }
    Ok(())
}

/// Pseudo-virtual seed `φ_v = cosh^{h+1+v} x · P_v^{(-h-1-v,-h-1-v)}(tanh x)`.
pub fn seed_function(h: f64, v: u32, x: f64) -> Result<SeedValue> {
    check_seed(h, v)?;
    let a = seed_exponent(h, v);
    let (s, sech2) = tanh_sech2(x);
    let (p, dp) = jacobi_eval(JacobiParams::symmetric(v, -a), s)?;
    let dlog = a * s + sech2 * dp / p;
    // φ'' = (U - E) φ with E = -a²
    let d2log = base_potential(h, x) + a * a - dlog * dlog;
    Ok(SeedValue { value: x.cosh().powf(a) * p, dlog, d2log })
}

/// Growth exponents `(Δ⁺, Δ⁻)` of `φ_v` at `x → ±∞`.
pub fn seed_exponents(h: f64, v: u32) -> Result<(f64, f64)> {
    check_seed(h, v)?;
    let a = seed_exponent(h, v);
    Ok((a, -a))
}

/// Unnormalized base bound state `cosh^{-(h-n)} x · P_n^{(h-n,h-n)}(tanh x)`.
pub fn base_bound_state(h: f64, n: u32, x: f64) -> Result<f64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidInput(format!("h must be positive, got {h}")));
    }
    let top = greatest_integer_below(h);
    if n > top {
        return Err(Error::InvalidInput(format!("level {n} out of range 0..={top} for h = {h}")));
    }
    let kappa = h - f64::from(n);
    let (p, _) = jacobi_eval(JacobiParams::symmetric(n, kappa), x.tanh())?;
    Ok(x.cosh().powf(-kappa) * p)
}

fn tanh_sech2(x: f64) -> (f64, f64) {
    let sech = 1.0 / x.cosh();
    (x.tanh(), sech * sech)
}

#[derive(Debug, Clone)]
struct Seed {
    jacobi: JacobiParams,
    exponent: f64,
    rows: DerivativeRows,
}

impl Seed {
    /// Scaled derivatives `cosh^{-a} φ^{(k)}` for `k = 0..=max_order`.
    fn scaled_column(&self, s: f64, sech2: f64, out: &mut [f64]) {
        let (p, dp) = jacobi_eval(self.jacobi, s).expect("finite tanh");
        let f = p;
        let df = self.exponent * s * p + sech2 * dp;
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.rows.apply(k, s, f, df);
        }
    }
}

#[derive(Debug, Clone)]
struct Level {
    kappa: f64,
    jacobi: JacobiParams,
    rows: DerivativeRows,
}

impl Level {
    /// Derivatives `φ_n^{(k)}` for `k = 0..=max_order`.
    fn column(&self, x: f64, s: f64, sech2: f64, out: &mut [f64]) {
        let (p, dp) = jacobi_eval(self.jacobi, s).expect("finite tanh");
        let scale = x.cosh().powf(-self.kappa);
        let f = scale * p;
        let df = -self.kappa * s * f + scale * sech2 * dp;
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.rows.apply(k, s, f, df);
        }
    }
}

/// Which Crum state a bound state descends from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateKind {
    /// Image of the base level `n` (energy `-(h-n)²`).
    Original { n: u32 },
    /// State created by the seed of degree `v` (energy `-(h+1+v)²`).
    Seed { v: u32 },
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateKind::Original { n } => write!(f, "original n={n}"),
            StateKind::Seed { v } => write!(f, "seed v={v}"),
        }
    }
}

/// A validated multi-step deformation: evaluates `U_D`, the scaled Wronskian
/// and the unnormalized Crum states.
#[derive(Debug, Clone)]
pub struct DeformedSystem {
    spec: SystemSpec,
    seeds: Vec<Seed>,
    levels: Vec<Level>,
}

/// Builds the deformed potential for `spec`, rejecting seed sets whose
/// Wronskian has a node on the scan grid.
pub fn deformed_potential(spec: &SystemSpec) -> Result<DeformedSystem> {
    DeformedSystem::new(spec.clone())
}

impl DeformedSystem {
    pub fn new(spec: SystemSpec) -> Result<Self> {
        let m = spec.steps();
        let h = spec.h();
        let seeds = spec
            .seeds()
            .iter()
            .map(|&v| {
                let a = seed_exponent(h, v);
                Seed {
                    jacobi: JacobiParams::symmetric(v, -a),
                    exponent: a,
                    rows: DerivativeRows::new(h, -a * a, m + 1),
                }
            })
            .collect();
        let levels = (0..=spec.top_level())
            .map(|n| {
                let kappa = h - f64::from(n);
                Level {
                    kappa,
                    jacobi: JacobiParams::symmetric(n, kappa),
                    rows: DerivativeRows::new(h, -kappa * kappa, m),
                }
            })
            .collect();
        let system = Self { spec, seeds, levels };
        system.check_nodeless()?;
        Ok(system)
    }

    /// Skips the nodal scan; the result is singular wherever `W` vanishes.
    #[cfg(test)]
    pub(crate) fn new_unchecked(spec: SystemSpec) -> Self {
        match Self::new(spec.clone()) {
            Ok(s) => s,
            Err(_) => {
                let mut s = Self::new(SystemSpec::undeformed(spec.h()).expect("valid h")).expect("no seeds");
                let m = spec.steps();
                s.seeds = spec
                    .seeds()
                    .iter()
                    .map(|&v| {
                        let a = seed_exponent(spec.h(), v);
                        Seed { jacobi: JacobiParams::symmetric(v, -a), exponent: a, rows: DerivativeRows::new(spec.h(), -a * a, m + 1) }
                    })
                    .collect();
                s.levels.iter_mut().for_each(|l| l.rows = DerivativeRows::new(spec.h(), -l.kappa * l.kappa, m));
                s.spec = spec;
                s
            }
        }
    }

    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }

    fn check_nodeless(&self) -> Result<()> {
        if self.seeds.is_empty() {
            return Ok(());
        }
        let n = WRONSKIAN_SCAN_POINTS;
        let step = 2.0 * WRONSKIAN_SCAN_HALF_WIDTH / (n - 1) as f64;
        let mut previous: Option<f64> = None;
        for i in 0..n {
            let x = -WRONSKIAN_SCAN_HALF_WIDTH + step * i as f64;
            let w = self.scaled_wronskian(x);
            if !(w.is_finite() && w != 0.0) || previous.is_some_and(|p| p != w.signum()) {
                return Err(Error::NodalWronskian { x });
            }
            previous = Some(w.signum());
        }
        Ok(())
    }

    /// Scaled seed columns, rows `k = 0..rows`.
    fn seed_matrix(&self, s: f64, sech2: f64, rows: usize) -> DMatrix<f64> {
        let m = self.seeds.len();
        let mut q = DMatrix::zeros(rows, m);
        let mut col = vec![0.0; rows];
        for (j, seed) in self.seeds.iter().enumerate() {
            seed.scaled_column(s, sech2, &mut col);
            for k in 0..rows {
                q[(k, j)] = col[k];
            }
        }
        q
    }

    /// `W[φ_{v_1}, …, φ_{v_M}](x) / Π cosh^{a_j} x`; sign changes of this
    /// function are sign changes of the Wronskian.
    pub fn scaled_wronskian(&self, x: f64) -> f64 {
        let m = self.seeds.len();
        if m == 0 {
            return 1.0;
        }
        let (s, sech2) = tanh_sech2(x);
        self.seed_matrix(s, sech2, m).determinant()
    }

    /// `U_D(x) = U(x) - 2 (log W)''(x)`.
    pub fn potential(&self, x: f64) -> f64 {
        let h = self.spec.h();
        let base = base_potential(h, x);
        let m = self.seeds.len();
        if m == 0 {
            return base;
        }
        let (s, sech2) = tanh_sech2(x);
        let full = self.seed_matrix(s, sech2, m + 2);
        let q = full.rows(0, m).into_owned();
        let mut dq = DMatrix::zeros(m, m);
        let mut d2q = DMatrix::zeros(m, m);
        let mut exponent_sum = 0.0;
        for (j, seed) in self.seeds.iter().enumerate() {
            let a = seed.exponent;
            exponent_sum += a;
            for k in 0..m {
                let (q0, q1, q2) = (full[(k, j)], full[(k + 1, j)], full[(k + 2, j)]);
                dq[(k, j)] = q1 - a * s * q0;
                d2q[(k, j)] = q2 - 2.0 * a * s * q1 + (a * a * s * s - a * sech2) * q0;
            }
        }
        let Some(qi) = q.lu().try_inverse() else {
            return f64::NAN;
        };
        let b1 = &qi * &dq;
        let log_det_dd = (&qi * &d2q).trace() - (&b1 * &b1).trace();
        base - 2.0 * (exponent_sum * sech2 + log_det_dd)
    }

    /// Unnormalized Crum state:
    /// `W[φ_{v_1}…φ_{v_M}, φ_n] / W[φ_{v_1}…φ_{v_M}]` for originals and
    /// `W[seeds without v_j] / W[seeds]` for seed states.
    pub fn crum_state(&self, kind: StateKind, x: f64) -> Result<f64> {
        let m = self.seeds.len();
        let (s, sech2) = tanh_sech2(x);
        let denom = if m == 0 { 1.0 } else { self.seed_matrix(s, sech2, m).determinant() };
        match kind {
            StateKind::Original { n } => {
                let level = self
                    .levels
                    .get(n as usize)
                    .ok_or_else(|| Error::InvalidInput(format!("no base level {n} in {}", self.spec)))?;
                let mut n_mat = DMatrix::zeros(m + 1, m + 1);
                if m > 0 {
                    let q = self.seed_matrix(s, sech2, m + 1);
                    n_mat.view_mut((0, 0), (m + 1, m)).copy_from(&q);
                }
                let mut col = vec![0.0; m + 1];
                level.column(x, s, sech2, &mut col);
                for k in 0..=m {
                    n_mat[(k, m)] = col[k];
                }
                Ok(n_mat.determinant() / denom)
            }
            StateKind::Seed { v } => {
                let j = self
                    .spec
                    .seeds()
                    .iter()
                    .position(|&w| w == v)
                    .ok_or_else(|| Error::InvalidInput(format!("no seed {v} in {}", self.spec)))?;
                let minor = if m == 1 {
                    1.0
                } else {
                    let q = self.seed_matrix(s, sech2, m - 1);
                    q.remove_column(j).determinant()
                };
                let a = self.seeds[j].exponent;
                Ok(x.cosh().powf(-a) * minor / denom)
            }
        }
    }

    /// All bound states, unit normalized, sorted by increasing energy.
    pub fn bound_states(self: &Arc<Self>) -> Result<Vec<BoundState>> {
        let mut kinds: Vec<(StateKind, f64)> = self
            .spec
            .seeds()
            .iter()
            .map(|&v| (StateKind::Seed { v }, seed_exponent(self.spec.h(), v)))
            .collect();
        kinds.extend(self.levels.iter().enumerate().map(|(n, l)| {
            (StateKind::Original { n: n as u32 }, l.kappa)
        }));
        kinds.sort_by(|a, b| b.1.total_cmp(&a.1));

        kinds
            .into_iter()
            .enumerate()
            .map(|(index, (kind, kappa))| self.normalized_state(index, kind, kappa))
            .collect()
    }

    fn normalized_state(self: &Arc<Self>, index: usize, kind: StateKind, kappa: f64) -> Result<BoundState> {
        let raw = |x: f64| self.crum_state(kind, x).unwrap_or(f64::NAN);
        let norm2 = quad::integrate_relative(
            |x| raw(x).powi(2),
            -NORMALIZATION_HALF_WIDTH,
            NORMALIZATION_HALF_WIDTH,
            NORMALIZATION_TOL,
        )?;
        if !(norm2.is_finite() && norm2 > 0.0) {
            return Err(Error::Quadrature(format!("state {kind} has norm² = {norm2}")));
        }
        let tail = |x: f64| raw(x) * (kappa * x).exp() / norm2.sqrt();
        let near = tail(TAIL_POINT);
        let far = tail(TAIL_CHECK_POINT);
        if !((near - far).abs() <= TAIL_AGREEMENT * far.abs().max(1.0)) {
            return Err(Error::Quadrature(format!(
                "tail of {kind} not settled: {near} at x={TAIL_POINT} vs {far} at x={TAIL_CHECK_POINT}"
            )));
        }
        // Richardson step for the e^{-2x} correction
        let r = (-2.0 * (TAIL_CHECK_POINT - TAIL_POINT)).exp();
        let limit = (far - r * near) / (1.0 - r);
        let sign = limit.signum();
        Ok(BoundState {
            index,
            kind,
            kappa,
            energy: -kappa * kappa,
            norming_constant: limit.abs(),
            scale: sign / norm2.sqrt(),
            system: Arc::clone(self),
        })
    }
}

impl Potential for DeformedSystem {
    fn value(&self, x: f64) -> f64 {
        self.potential(x)
    }
}

/// A unit-normalized bound state of a deformed system.
#[derive(Debug, Clone)]
pub struct BoundState {
    /// Position in the energy-sorted list (equals the node count).
    pub index: usize,
    pub kind: StateKind,
    pub kappa: f64,
    /// Always `-kappa²`.
    pub energy: f64,
    /// `lim ψ(x) e^{κx}` as `x → +∞`; positive by the sign convention of `ψ`.
    pub norming_constant: f64,
    scale: f64,
    system: Arc<DeformedSystem>,
}

impl BoundState {
    /// Normalized wavefunction, with the sign chosen so the right tail is positive.
    pub fn wavefunction(&self, x: f64) -> f64 {
        self.system.crum_state(self.kind, x).map_or(f64::NAN, |v| v * self.scale)
    }

    pub fn system(&self) -> &DeformedSystem {
        &self.system
    }
}

/// Bound states of the deformation described by `spec`, sorted by energy.
pub fn bound_states(spec: &SystemSpec) -> Result<Vec<BoundState>> {
    Arc::new(deformed_potential(spec)?).bound_states()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn spec(h: f64, seeds: &[u32]) -> SystemSpec {
        SystemSpec::new(h, seeds.to_vec()).unwrap()
    }

    /// Closed form of the deformed potential for h = 1, v = 2.
    fn reference_u2_h1(x: f64) -> f64 {
        let c2 = x.cosh().powi(2);
        -30.0 * (4.0 * c2 * c2 - 8.0 * c2 + 5.0) / (c2 * (36.0 * c2 * c2 - 60.0 * c2 + 25.0))
    }

    /// Closed form for h = 2, v = 2.
    fn reference_u2_h2(x: f64) -> f64 {
        let c2 = x.cosh().powi(2);
        -4.0 * (144.0 * c2 * c2 - 280.0 * c2 + 147.0) / (c2 * (64.0 * c2 * c2 - 112.0 * c2 + 49.0))
    }

    #[test]
    fn spec_validation() {
        assert!(SystemSpec::new(0.0, vec![]).is_err());
        assert!(SystemSpec::new(1.0, vec![3]).is_err());
        assert!(SystemSpec::new(1.0, vec![0]).is_err());
        assert!(SystemSpec::new(1.0, vec![4, 2]).is_err());
        assert!(SystemSpec::new(1.0, vec![2, 2]).is_err());
        assert_eq!(spec(1.0, &[2, 4]).steps(), 2);
    }

    #[test]
    fn top_level_excludes_integer_h() {
        assert_eq!(greatest_integer_below(1.0), 0);
        assert_eq!(greatest_integer_below(2.0), 1);
        assert_eq!(greatest_integer_below(1.5), 1);
        assert_eq!(greatest_integer_below(0.3), 0);
        assert_eq!(spec(3.0, &[]).base_kappas(), vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn base_potential_values() {
        assert_eq!(base_potential(1.0, 0.0), -2.0);
        assert_eq!(base_potential(2.0, 0.0), -6.0);
        assert!(base_potential(1.0, 20.0).abs() < 1e-16);
    }

    #[test]
    fn seed_two_at_h_one() {
        let sv = seed_function(1.0, 2, 0.0).unwrap();
        assert_abs_diff_eq!(sv.value, 0.5, epsilon = 1e-15);
        assert_eq!(sv.dlog, 0.0);
        let far = seed_function(1.0, 2, 30.0).unwrap();
        assert_abs_diff_eq!(far.dlog, 4.0, epsilon = 1e-12);
        // φ₂ = ½ cosh⁴x (1 + 5 tanh²x)
        for x in [-1.3f64, 0.4, 2.2] {
            let expected = 0.5 * x.cosh().powi(4) * (1.0 + 5.0 * x.tanh().powi(2));
            assert_abs_diff_eq!(seed_function(1.0, 2, x).unwrap().value, expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn seed_log_derivatives_match_finite_differences() {
        for (h, v) in [(1.0, 2), (1.7, 4), (2.0, 6)] {
            for x in [-0.8, 0.3, 1.9] {
                let sv = seed_function(h, v, x).unwrap();
                let step = 1e-4;
                let lp = seed_function(h, v, x + step).unwrap().value.ln();
                let lm = seed_function(h, v, x - step).unwrap().value.ln();
                let l0 = sv.value.ln();
                assert_abs_diff_eq!(sv.dlog, (lp - lm) / (2.0 * step), epsilon = 1e-7);
                assert_abs_diff_eq!(sv.d2log, (lp - 2.0 * l0 + lm) / (step * step), epsilon = 1e-5);
            }
        }
    }

    #[test]
    fn odd_seeds_are_rejected() {
        assert!(seed_function(1.0, 1, 0.0).is_err());
        assert!(seed_function(1.0, 3, 0.0).is_err());
        assert!(seed_exponents(1.0, 5).is_err());
    }

    #[test]
    fn exponents() {
        assert_eq!(seed_exponents(1.0, 2).unwrap(), (4.0, -4.0));
        assert_eq!(seed_exponents(2.0, 2).unwrap(), (5.0, -5.0));
        assert_eq!(seed_exponents(1.0, 4).unwrap(), (6.0, -6.0));
    }

    #[test]
    fn base_states() {
        assert_eq!(base_bound_state(1.0, 0, 0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(base_bound_state(2.0, 1, 0.0).unwrap(), 0.0, epsilon = 1e-16);
        assert!(base_bound_state(1.0, 1, 0.0).is_err());
        // ground state of h = 1 is sech x
        for x in [-2.0, 0.5, 3.0] {
            assert_abs_diff_eq!(base_bound_state(1.0, 0, x).unwrap(), 1.0 / f64::cosh(x), epsilon = 1e-15);
        }
    }

    #[test]
    fn deformed_potential_spot_values() {
        assert_eq!(deformed_potential(&spec(1.0, &[2])).unwrap().potential(0.0), -30.0);
        assert_abs_diff_eq!(deformed_potential(&spec(2.0, &[2])).unwrap().potential(0.0), -44.0, epsilon = 1e-12);
        assert_eq!(deformed_potential(&spec(1.0, &[])).unwrap().potential(0.0), -2.0);
    }

    #[test]
    fn deformed_potential_matches_closed_forms() {
        let d1 = deformed_potential(&spec(1.0, &[2])).unwrap();
        let d2 = deformed_potential(&spec(2.0, &[2])).unwrap();
        for i in 0..=200 {
            let x = -10.0 + 0.1 * f64::from(i);
            assert_abs_diff_eq!(d1.potential(x), reference_u2_h1(x), epsilon = 1e-12);
            assert_abs_diff_eq!(d2.potential(x), reference_u2_h2(x), epsilon = 1e-12);
        }
    }

    #[test]
    fn one_step_potential_matches_seed_log_derivative() {
        for (h, v) in [(1.5, 2), (0.7, 4), (2.3, 6)] {
            let d = deformed_potential(&spec(h, &[v])).unwrap();
            for x in [-4.0, -1.1, 0.0, 0.35, 2.8] {
                let direct = base_potential(h, x) - 2.0 * seed_function(h, v, x).unwrap().d2log;
                assert_abs_diff_eq!(d.potential(x), direct, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn two_step_potential_matches_numeric_log_wronskian() {
        // Oracle: plain 2x2 Wronskian from seed values and analytic log-derivatives,
        // differentiated twice by central differences. The pair has a node at
        // x = 0, so only points away from it are compared.
        let h = 1.0;
        let wr = |x: f64| {
            let a = seed_function(h, 2, x).unwrap();
            let b = seed_function(h, 4, x).unwrap();
            a.value * b.value * (b.dlog - a.dlog)
        };
        let sys = DeformedSystem::new_unchecked(spec(h, &[2, 4]));
        for x in [-2.5, -0.7, 0.9, 3.1] {
            let step = 1e-3;
            let l = |y: f64| wr(y).abs().ln();
            let dd = (-l(x + 2.0 * step) + 16.0 * l(x + step) - 30.0 * l(x) + 16.0 * l(x - step)
                - l(x - 2.0 * step))
                / (12.0 * step * step);
            assert_abs_diff_eq!(sys.potential(x), base_potential(h, x) - 2.0 * dd, epsilon = 1e-6);
        }
    }

    #[test]
    fn multi_seed_wronskians_vanish_at_origin() {
        // every odd-order derivative row of an even seed set is zero at x = 0
        for seeds in [&[2, 4][..], &[2, 6], &[2, 4, 6, 8]] {
            for h in [1.0, 1.5, 2.0] {
                let s = spec(h, seeds);
                assert_eq!(DeformedSystem::new_unchecked(s.clone()).scaled_wronskian(0.0), 0.0);
                match deformed_potential(&s) {
                    Err(Error::NodalWronskian { x }) => assert!(x.abs() < 0.2, "{s}: {x}"),
                    other => panic!("{s}: expected a nodal Wronskian, got {other:?}"),
                }
            }
        }
    }

    #[test]
    fn crum_states_solve_the_equation_off_the_node() {
        let sys = DeformedSystem::new_unchecked(spec(1.0, &[2, 4]));
        for kind in [StateKind::Original { n: 0 }, StateKind::Seed { v: 2 }, StateKind::Seed { v: 4 }] {
            let energy = match kind {
                StateKind::Original { .. } => -1.0,
                StateKind::Seed { v } => -(2.0 + f64::from(v)).powi(2),
            };
            let f = |y: f64| sys.crum_state(kind, y).unwrap();
            let step = 1e-3;
            for x in [0.6, 1.3, 2.9] {
                let d2 = (-f(x + 2.0 * step) + 16.0 * f(x + step) - 30.0 * f(x) + 16.0 * f(x - step)
                    - f(x - 2.0 * step))
                    / (12.0 * step * step);
                let res = -d2 + (sys.potential(x) - energy) * f(x);
                assert!(res.abs() <= 1e-6 * (1.0 + f(x).abs()), "{kind} at {x}: {res}");
            }
        }
    }

    #[test]
    fn deformed_potential_is_even_and_decays() {
        for s in [spec(1.0, &[2]), spec(1.5, &[4]), spec(2.0, &[6])] {
            let d = deformed_potential(&s).unwrap();
            for x in [0.3, 1.1, 4.7, 9.0] {
                assert_abs_diff_eq!(d.potential(x), d.potential(-x), epsilon = 1e-12);
            }
            assert!(d.potential(25.0).abs() < 1e-12, "{s}: {}", d.potential(25.0));
        }
    }

    #[test]
    fn one_seed_states_match_closed_forms() {
        // Shapes 1/φ₂ and φ₀' - (log φ₂)' φ₀, scaled to unit norm:
        // ∫ (2/(cosh⁴x (1+5tanh²x)))² dx = 32/15 and the second shape has norm² 6/5.
        let states = bound_states(&spec(1.0, &[2])).unwrap();
        assert_eq!(states.len(), 2);
        assert_eq!(states[0].energy, -16.0);
        assert_eq!(states[1].energy, -1.0);
        for x in [-1.7, -0.2, 0.6, 2.4] {
            let (s, c) = (f64::tanh(x), f64::cosh(x));
            let sech = 1.0 / c;
            let psi1 = (15.0f64 / 32.0).sqrt() * 2.0 / (c.powi(4) * (1.0 + 5.0 * s * s));
            let psi0 = (5.0f64 / 6.0).sqrt() * sech * s * (1.0 + 2.0 * sech * sech / (1.0 + 5.0 * s * s));
            assert_abs_diff_eq!(states[0].wavefunction(x), psi1, epsilon = 1e-10);
            assert_abs_diff_eq!(states[1].wavefunction(x), psi0, epsilon = 1e-10);
        }
        assert_abs_diff_eq!(states[0].norming_constant, (40.0f64 / 3.0).sqrt(), epsilon = 1e-9);
        assert_abs_diff_eq!(states[1].norming_constant, (10.0f64 / 3.0).sqrt(), epsilon = 1e-9);
    }

    #[test]
    fn undeformed_norming_constant_is_sqrt_two() {
        let states = bound_states(&spec(1.0, &[])).unwrap();
        assert_eq!(states.len(), 1);
        assert_abs_diff_eq!(states[0].norming_constant, 2f64.sqrt(), epsilon = 1e-10);
    }

    #[test]
    fn h_two_spectrum_and_norming_constants() {
        let states = bound_states(&spec(2.0, &[2])).unwrap();
        let energies: Vec<f64> = states.iter().map(|s| s.energy).collect();
        assert_eq!(energies, vec![-25.0, -4.0, -1.0]);
        // c² = 35, 28, 9 from high-precision quadrature of the same Crum states
        let c2: Vec<f64> = states.iter().map(|s| s.norming_constant.powi(2)).collect();
        assert_abs_diff_eq!(c2[0], 35.0, epsilon = 1e-8);
        assert_abs_diff_eq!(c2[1], 28.0, epsilon = 1e-8);
        assert_abs_diff_eq!(c2[2], 9.0, epsilon = 1e-8);
    }

    #[test]
    fn eigen_equation_residual_and_nodes() {
        for s in [spec(1.0, &[2]), spec(2.0, &[2]), spec(1.5, &[2]), spec(2.5, &[4]), spec(1.0, &[6])] {
            let sys = deformed_potential(&s).unwrap();
            let states = Arc::new(sys.clone()).bound_states().unwrap();
            assert_eq!(states.len(), s.top_level() as usize + 1 + s.steps());
            for st in &states {
                let step = 1e-3;
                let mut max_psi: f64 = 0.0;
                let mut max_res: f64 = 0.0;
                for i in 0..=160 {
                    let x = -8.0 + 0.1 * f64::from(i);
                    let f = |y: f64| st.wavefunction(y);
                    let d2 = (-f(x + 2.0 * step) + 16.0 * f(x + step) - 30.0 * f(x)
                        + 16.0 * f(x - step)
                        - f(x - 2.0 * step))
                        / (12.0 * step * step);
                    let res = -d2 + sys.potential(x) * f(x) - st.energy * f(x);
                    max_psi = max_psi.max(f(x).abs());
                    max_res = max_res.max(res.abs());
                }
                assert!(max_res <= 1e-5 * max_psi, "{s} {}: residual {max_res}", st.kind);

                let mut nodes = 0;
                let mut prev = 0.0;
                for i in 0..=30_000 {
                    let x = -15.0 + 1e-3 * f64::from(i);
                    let v = st.wavefunction(x);
                    if v.abs() < 1e-12 {
                        continue;
                    }
                    if prev != 0.0 && v.signum() != prev {
                        nodes += 1;
                    }
                    prev = v.signum();
                }
                assert_eq!(nodes, st.index, "{s} {}", st.kind);
            }
        }
    }

    #[test]
    fn tail_readings_agree() {
        let states = bound_states(&spec(2.5, &[4])).unwrap();
        for st in &states {
            let a = st.wavefunction(TAIL_POINT) * (st.kappa * TAIL_POINT).exp();
            let b = st.wavefunction(TAIL_CHECK_POINT) * (st.kappa * TAIL_CHECK_POINT).exp();
            assert!((a - b).abs() <= 1e-8, "{}: {a} vs {b}", st.kind);
            assert!(st.norming_constant > 0.0);
        }
    }
}
