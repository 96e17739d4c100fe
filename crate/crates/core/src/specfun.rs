//! Special-function kernel: Jacobi polynomials, complex log-Gamma and the
//! Gauss hypergeometric function `₂F₁(a, b; c; z)` with complex parameters at
//! real argument.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexValue = Complex64;

/// Degree and the two weights of a Jacobi polynomial `P_n^{(α,β)}`.
///
/// Negative weights are allowed; the pseudo-virtual seeds live at
/// `α = β = -h-1-v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub n: u32,
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(n: u32, alpha: f64, beta: f64) -> Self {
        Self { n, alpha, beta }
    }

    pub fn symmetric(n: u32, alpha: f64) -> Self {
        Self::new(n, alpha, alpha)
    }
}

/// Rising factorial `(x)_k` for real `x`.
fn pochhammer(x: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (x + f64::from(i)))
}

/// Coefficients of `P_n^{(α,β)}` as a polynomial in `u = (1 - z)/2`.
///
/// `c_k = (-n)_k (n+α+β+1)_k (α+k+1)_{n-k} / (k! n!)`. The factor
/// `(α+k+1)_{n-k}` replaces `binom(n+α, n)/(α+1)_k`, so a non-positive
/// integer `α+1` never lands in a denominator.
pub fn jacobi_coefficients(p: JacobiParams) -> Vec<f64> {
    let n = p.n;
    let nf = f64::from(n);
    let n_fact = pochhammer(1.0, n);
    (0..=n)
        .map(|k| {
            let kf = f64::from(k);
            pochhammer(-nf, k) * pochhammer(nf + p.alpha + p.beta + 1.0, k)
                * pochhammer(p.alpha + kf + 1.0, n - k)
                / (pochhammer(1.0, k) * n_fact)
        })
        .collect()
}

/// Evaluates `P_n^{(α,β)}(z)` and its `z`-derivative.
pub fn jacobi_eval(p: JacobiParams, z: f64) -> Result<(f64, f64)> {
    if !z.is_finite() || !p.alpha.is_finite() || !p.beta.is_finite() {
        return Err(Error::InvalidInput(format!(
            "jacobi_eval needs finite input, got z = {z}, alpha = {}, beta = {}",
            p.alpha, p.beta
        )));
    }
    let coeffs = jacobi_coefficients(p);
    let u = 0.5 * (1.0 - z);
    let mut value = 0.0;
    let mut du = 0.0;
    for &c in coeffs.iter().rev() {
        du = du * u + value;
        value = value * u + c;
    }
    Ok((value, -0.5 * du))
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Bernoulli-number coefficients `B_{2k} / (2k (2k-1))` of the Stirling series.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// Real part above which the Stirling series is used directly.
const STIRLING_SHIFT: f64 = 16.0;

/// Principal branch of `log Γ(z)`.
///
/// Arguments with `Re z < 16` are shifted upward with the recurrence
/// `log Γ(z) = log Γ(z+m) - Σ log(z+k)`. Each shifted factor stays in the
/// half plane of `z`, so the sum of principal logarithms is the branch that is
/// continuous off the negative real axis and real on the positive axis.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::InvalidInput(format!("log_gamma of non-finite {z}")));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::GammaPole { re: z.re, im: z.im });
    }
    let mut shifted = z;
    let mut correction = Complex64::new(0.0, 0.0);
    while shifted.re < STIRLING_SHIFT {
        correction += shifted.ln();
        shifted += 1.0;
    }
    let inv = shifted.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for &coeff in &STIRLING {
        series += power * coeff;
        power *= inv2;
    }
    let stirling = (shifted - 0.5) * shifted.ln() - shifted + 0.5 * (2.0 * PI).ln() + series;
    Ok(stirling - correction)
}

/// `Γ(z)`; poles are reported as errors.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// `1/Γ(z)` as an entire function: exactly zero at the non-positive integers.
pub fn reciprocal_gamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    match log_gamma(z) {
        Ok(lg) => (-lg).exp(),
        // non-finite input
        Err(_) => Complex64::new(f64::NAN, f64::NAN),
    }
}

/// Relative size below which a series term counts as negligible.
const SERIES_EPS: f64 = 1e-16;
/// Consecutive negligible terms required before stopping.
const SERIES_QUIET_TERMS: usize = 3;
/// Hard cap on the number of series terms.
const SERIES_MAX_TERMS: usize = 10_000;

/// Number of the last non-zero term if the series terminates, i.e. `-a` for a
/// non-positive integer `a` (smallest of `a`, `b`).
fn termination_order(a: Complex64, b: Complex64) -> Option<usize> {
    [a, b]
        .into_iter()
        .filter(|&p| is_nonpositive_integer(p))
        .map(|p| (-p.re) as usize)
        .min()
}

/// Direct Gauss series `Σ (a)_k (b)_k / ((c)_k k!) z^k`.
pub fn hyp2f1_series(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    if z == 0.0 {
        return Ok(one);
    }
    let last = termination_order(a, b);
    if let Some(last) = last {
        if is_nonpositive_integer(c) && ((-c.re) as usize) < last {
            return Err(Error::InvalidInput(format!(
                "2F1 pole: c = {c} is hit before the series terminates at k = {last}"
            )));
        }
    } else if is_nonpositive_integer(c) {
        return Err(Error::InvalidInput(format!("2F1 pole: c = {c} is a non-positive integer")));
    }
    if last.is_none() && z.abs() >= 1.0 {
        return Err(Error::NonConvergence(format!(
            "non-terminating 2F1 series at |z| = {} >= 1",
            z.abs()
        )));
    }

    let mut sum = one;
    let mut term = one;
    let mut quiet = 0;
    let cap = last.map_or(SERIES_MAX_TERMS, |l| l.min(SERIES_MAX_TERMS));
    for k in 0..cap {
        let kf = k as f64;
        term = term * (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if last.is_some() {
            continue;
        }
        if term.norm() < SERIES_EPS * sum.norm() {
            quiet += 1;
            if quiet >= SERIES_QUIET_TERMS {
                return finite(sum, "2F1 series");
            }
        } else {
            quiet = 0;
        }
    }
    if last.is_some() {
        return finite(sum, "2F1 series");
    }
    Err(Error::NonConvergence(format!(
        "2F1({a}, {b}; {c}; {z}) needs more than {SERIES_MAX_TERMS} terms"
    )))
}

fn finite(z: Complex64, what: &str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(format!("{what} produced {z}")))
    }
}

fn is_near_integer(z: Complex64) -> bool {
    z.im.abs() < 1e-14 && (z.re - z.re.round()).abs() < 1e-14
}

/// The two terms of the `z ↦ 1 - z` connection formula,
///
/// ```text
/// ₂F₁(a,b;c;z) = Γ(c)Γ(c-a-b)/(Γ(c-a)Γ(c-b)) · ₂F₁(a,b;a+b-c+1;1-z)
///              + Γ(c)Γ(a+b-c)/(Γ(a)Γ(b)) · (1-z)^{c-a-b} · ₂F₁(c-a,c-b;c-a-b+1;1-z).
/// ```
///
/// The reciprocal-Gamma factors vanish exactly when `a`, `b`, `c-a` or `c-b` is a
/// non-positive integer; the matching series is then not evaluated.
pub fn hyp2f1_connection(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: f64,
) -> Result<(Complex64, Complex64)> {
    if !(0.0..=1.0).contains(&z) || z == 0.0 {
        return Err(Error::InvalidInput(format!("connection formula needs z in (0, 1], got {z}")));
    }
    hyp2f1_connection_complement(a, b, c, 1.0 - z)
}

/// Same two terms as [`hyp2f1_connection`], parameterized by `w = 1 - z`.
/// Useful when `w` is tiny and known more accurately than `z`.
pub fn hyp2f1_connection_complement(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    w: f64,
) -> Result<(Complex64, Complex64)> {
    if !(0.0..1.0).contains(&w) {
        return Err(Error::InvalidInput(format!("connection formula needs 1 - z in [0, 1), got {w}")));
    }
    let d = c - a - b;
    if is_near_integer(d) {
        return Err(Error::DegenerateConnection(d.re));
    }
    let zero = Complex64::new(0.0, 0.0);

    let pref1 =
        (log_gamma(c)? + log_gamma(d)?).exp() * reciprocal_gamma(c - a) * reciprocal_gamma(c - b);
    let term1 = if pref1 == zero {
        zero
    } else {
        pref1 * hyp2f1_series(a, b, 1.0 - d, w)?
    };

    let pref2 = (log_gamma(c)? + log_gamma(-d)?).exp() * reciprocal_gamma(a) * reciprocal_gamma(b);
    let term2 = if pref2 == zero {
        zero
    } else if w == 0.0 {
        if d.re > 0.0 {
            zero
        } else {
            return Err(Error::NonConvergence(format!(
                "2F1 diverges at z = 1 with Re(c-a-b) = {} <= 0",
                d.re
            )));
        }
    } else {
        pref2 * (d * w.ln()).exp() * hyp2f1_series(c - a, c - b, d + 1.0, w)?
    };
    Ok((finite(term1, "connection term 1")?, finite(term2, "connection term 2")?))
}

/// `₂F₁(a, b; c; z)` for real `0 ≤ z ≤ 1` (`z = 1` only when the series
/// terminates or `Re(c-a-b) > 0`).
///
/// Non-terminating series with `z > 1/2` go through [`hyp2f1_connection`]
/// unless `c - a - b` is an integer.
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    if !(0.0..=1.0).contains(&z) {
        return Err(Error::InvalidInput(format!("hyp2f1 needs 0 <= z <= 1, got {z}")));
    }
    let terminates = termination_order(a, b).is_some();
    if terminates || z <= 0.5 || is_near_integer(c - a - b) {
        return hyp2f1_series(a, b, c, z);
    }
    let (t1, t2) = hyp2f1_connection(a, b, c, z)?;
    Ok(t1 + t2)
}
