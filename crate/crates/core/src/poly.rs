//! Polynomials in `s = tanh x`.
//!
//! The soliton potential and all of its `x`-derivatives are polynomials in
//! `s`, and `d/dx` acts on them as `p(s) ↦ p'(s)(1 - s²)`. This keeps every
//! derivative used by the Darboux–Crum formulas exact.

use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TanhPoly {
    /// `coeffs[k]` multiplies `s^k`.
    coeffs: Vec<f64>,
}

impl TanhPoly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Derivative with respect to `s`.
    pub fn ds(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// Derivative with respect to `x`, using `ds/dx = 1 - s²`.
    pub fn dx(&self) -> Self {
        &self.ds() * &Self::new(vec![1.0, 0.0, -1.0])
    }
}

impl Add for &TanhPoly {
    type Output = TanhPoly;

    fn add(self, rhs: &TanhPoly) -> TanhPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        TanhPoly::new((0..n).map(|i| get(&self.coeffs, i) + get(&rhs.coeffs, i)).collect())
    }
}

impl Sub for &TanhPoly {
    type Output = TanhPoly;

    fn sub(self, rhs: &TanhPoly) -> TanhPoly {
        self + &rhs.scale(-1.0)
    }
}

impl Mul for &TanhPoly {
    type Output = TanhPoly;

    fn mul(self, rhs: &TanhPoly) -> TanhPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return TanhPoly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TanhPoly::new(out)
    }
}

/// Coefficient polynomials expressing `f^{(k)} = A_k f + B_k f'` for any
/// solution of `f'' = (U - E) f`, where `U = -h(h+1)(1 - s²)`.
#[derive(Debug, Clone)]
pub struct DerivativeRows {
    pub a: Vec<TanhPoly>,
    pub b: Vec<TanhPoly>,
}

impl DerivativeRows {
    /// Rows `k = 0..=max_order`.
    pub fn new(h: f64, energy: f64, max_order: usize) -> Self {
        let coupling = h * (h + 1.0);
        // U - E
        let reduced = TanhPoly::new(vec![-coupling - energy, 0.0, coupling]);
        let mut a = vec![TanhPoly::constant(1.0), TanhPoly::zero()];
        let mut b = vec![TanhPoly::zero(), TanhPoly::constant(1.0)];
        for k in 1..max_order {
            let next_a = &a[k].dx() + &(&b[k] * &reduced);
            let next_b = &a[k] + &b[k].dx();
            a.push(next_a);
            b.push(next_b);
        }
        a.truncate(max_order + 1);
        b.truncate(max_order + 1);
        Self { a, b }
    }

    pub fn max_order(&self) -> usize {
        self.a.len() - 1
    }

    /// `f^{(k)}` from `f` and `f'` at the point `s`.
    pub fn apply(&self, k: usize, s: f64, f: f64, df: f64) -> f64 {
        self.a[k].eval(s) * f + self.b[k].eval(s) * df
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn x_derivative_of_tanh_is_sech_squared() {
        let s = TanhPoly::new(vec![0.0, 1.0]);
        assert_eq!(s.dx(), TanhPoly::new(vec![1.0, 0.0, -1.0]));
    }

    #[test]
    fn arithmetic() {
        let p = TanhPoly::new(vec![1.0, 2.0]);
        let q = TanhPoly::new(vec![0.0, -2.0, 3.0]);
        assert_eq!(&p * &q, TanhPoly::new(vec![0.0, -2.0, -1.0, 6.0]));
        assert_eq!(&p - &p, TanhPoly::zero());
        assert_eq!((&p + &q).degree(), Some(2));
        assert_abs_diff_eq!((&p * &q).eval(0.5), 2.0 * (-1.0 + 0.75), epsilon = 1e-15);
    }

    #[test]
    fn rows_reproduce_sech_derivatives() {
        // f = sech x solves f'' = (U - E) f for h = 1, E = -1.
        let rows = DerivativeRows::new(1.0, -1.0, 4);
        let x: f64 = 0.37;
        let (s, sech) = (x.tanh(), 1.0 / x.cosh());
        let f = sech;
        let df = -sech * s;
        // closed forms of sech derivatives
        let d2 = sech * (s * s - sech * sech);
        let d2_alt = sech - 2.0 * sech.powi(3);
        assert_abs_diff_eq!(d2, d2_alt, epsilon = 1e-15);
        assert_abs_diff_eq!(rows.apply(2, s, f, df), d2_alt, epsilon = 1e-14);
        let d3 = -sech * s + 6.0 * sech.powi(3) * s;
        assert_abs_diff_eq!(rows.apply(3, s, f, df), d3, epsilon = 1e-14);
        let d4 = sech - 20.0 * sech.powi(3) + 24.0 * sech.powi(5);
        assert_abs_diff_eq!(rows.apply(4, s, f, df), d4, epsilon = 1e-13);
    }
}
