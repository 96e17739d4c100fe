//! Adaptive Dormand–Prince 5(4) integrator for small fixed-size systems.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order minus embedded fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339_200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { rtol: 1e-11, atol: 1e-13, max_steps: 2_000_000 }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Solution<const N: usize> {
    pub y: [f64; N],
    pub steps: usize,
    pub rejected: usize,
}

/// Integrates `y' = f(x, y)` from `x0` to `x1` (either direction).
pub fn integrate<const N: usize, F>(
    f: F,
    x0: f64,
    y0: [f64; N],
    x1: f64,
    tol: Tolerances,
) -> Result<Solution<N>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let span = x1 - x0;
    if span == 0.0 {
        return Ok(Solution { y: y0, steps: 0, rejected: 0 });
    }
    let dir = span.signum();
    let mut x = x0;
    let mut y = y0;
    let mut h = dir * (span.abs() * 1e-3).min(1e-2);
    let mut k = [[0.0; N]; 7];
    k[0] = f(x, &y);
    let mut steps = 0;
    let mut rejected = 0;
    let mut err_prev = 1e-4_f64;

    while (x1 - x) * dir > 0.0 {
        if steps + rejected >= tol.max_steps {
            return Err(Error::Integration(format!("step budget exhausted at x = {x}")));
        }
        if (x + h - x1) * dir > 0.0 {
            h = x1 - x;
        }
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let a = A[s][j];
                if a != 0.0 {
                    for i in 0..N {
                        ys[i] += h * a * kj[i];
                    }
                }
            }
            k[s] = f(x + C[s] * h, &ys);
        }
        // A[6] holds the fifth-order weights, so the stage-7 input is y_new.
        let mut y_new = y;
        for (j, kj) in k.iter().enumerate().take(6) {
            for i in 0..N {
                y_new[i] += h * A[6][j] * kj[i];
            }
        }
        let mut err = 0.0;
        for i in 0..N {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += E[j] * kj[i];
            }
            let scale = tol.atol + tol.rtol * y[i].abs().max(y_new[i].abs());
            err += (h * e / scale).powi(2);
        }
        let err = (err / N as f64).sqrt();
        if !err.is_finite() {
            return Err(Error::Integration(format!("non-finite error estimate at x = {x}")));
        }
        if err <= 1.0 {
            x += h;
            y = y_new;
            k[0] = k[6];
            steps += 1;
            // PI step-size control
            let factor = 0.9 * err.max(1e-10).powf(-0.7 / 5.0) * err_prev.powf(0.4 / 5.0);
            h *= factor.clamp(0.2, 5.0);
            err_prev = err.max(1e-4);
        } else {
            rejected += 1;
            h *= (0.9 * err.powf(-0.2)).max(0.2);
        }
        if h.abs() < 1e-14 * x.abs().max(1.0) {
            return Err(Error::Integration(format!("step size underflow at x = {x}")));
        }
    }
    Ok(Solution { y, steps, rejected })
}
