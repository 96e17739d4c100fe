//! Complex Γ, ₂F₁ and the pseudo-virtual Jacobi polynomials behind the seeds.

use num_complex::Complex64;
use soliton_crum::specfun::{self, JacobiParams};

fn main() -> soliton_crum::Result<()> {
    let z = Complex64::new(0.5, 2.0);
    println!("lnΓ({z}) = {}", specfun::log_gamma(z)?);
    println!("Γ({z})   = {}", specfun::gamma(z)?);
    println!("1/Γ(-3)  = {}", specfun::reciprocal_gamma(Complex64::new(-3.0, 0.0)));

    let one = Complex64::new(1.0, 0.0);
    let f = specfun::hyp2f1(one, one, Complex64::new(2.0, 0.0), 0.5)?;
    println!("2F1(1,1;2;1/2) = {}  (-ln(1/2)/(1/2) = {})", f.re, 2.0 * 2f64.ln());

    for h in [1.0, 2.0] {
        let p = JacobiParams::symmetric(2, -h - 3.0);
        let coeffs = specfun::jacobi_coefficients(p);
        println!("h = {h}: P_2^(-h-3,-h-3) in u = (1 - z)/2 has coefficients {coeffs:?}");
        for z in [0.0, 0.5, 2.0] {
            let (value, slope) = specfun::jacobi_eval(p, z)?;
            println!("  z = {z}: P = {value}, P' = {slope}");
        }
    }
    Ok(())
}
