//! `S_d(r) = Σ_{n ≥ 1} n^-r (-log n)^d = ζ^(d)(r)` for `Re r > 1`.
//!
//! Terms below the cutoff `N` are summed directly. The rest is
//! `∫_N^∞ f + f(N)/2 - Σ_k B_2k/(2k)! f^(2k-1)(N)` with
//! `f(x) = x^-r (-log x)^d`; the integral is
//! `(-1)^d Γ(d+1, (r-1) log N) / (r-1)^(d+1)`.

use num_complex::Complex64;

use super::BERNOULLI_EVEN;
use crate::error::{Error, Result};

pub const DEFAULT_CUTOFF: usize = 40;
pub const DEFAULT_TAIL_ORDER: usize = 8;

pub fn zeta_deriv(d: usize, r: Complex64) -> Result<Complex64> {
    zeta_deriv_with(d, r, DEFAULT_CUTOFF, DEFAULT_TAIL_ORDER)
}

/// `tail_order` is the number of Bernoulli correction terms (at most 10).
pub fn zeta_deriv_with(d: usize, r: Complex64, cutoff: usize, tail_order: usize) -> Result<Complex64> {
    if !(r.re > 1.0) {
        return Err(Error::OutOfDomain(format!("zeta_deriv needs Re r > 1, got {}", r.re)));
    }
    if cutoff < 2 {
        return Err(Error::OutOfDomain("zeta_deriv needs a cutoff of at least 2".into()));
    }
    let sign = if d % 2 == 0 { 1.0 } else { -1.0 };
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 2..cutoff {
        let l = (n as f64).ln();
        sum += (-r * l).exp() * (sign * l.powi(d as i32));
    }
    if d == 0 {
        sum += 1.0;
    }

    let big_n = cutoff as f64;
    let log_n = big_n.ln();
    let s = r - 1.0;
    // ∫_N^∞ = (-1)^d N^-s Σ_j (d!/j!) (log N)^j / s^(d+1-j)
    let mut integral = Complex64::new(0.0, 0.0);
    let mut coeff = 1.0;
    for j in (0..=d).rev() {
        integral += coeff * log_n.powi(j as i32) / s.powi((d + 1 - j) as i32);
        coeff *= j as f64;
    }
    integral *= sign * (-s * log_n).exp();

    // f^(j)(x) = x^(-r-j) P_j(log x); P_(j+1)(L) = -(r+j) P_j(L) + P_j'(L)
    let mut poly = vec![Complex64::new(0.0, 0.0); d + 1];
    poly[d] = Complex64::new(sign, 0.0);
    let eval = |p: &[Complex64], j: usize| -> Complex64 {
        let value = p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * log_n + c);
        value * (-(r + j as f64) * log_n).exp()
    };
    let mut correction = 0.5 * eval(&poly, 0);
    let mut fact = 1.0;
    let order = tail_order.min(BERNOULLI_EVEN.len());
    for j in 0..2 * order {
        poly = differentiate(&poly, r + j as f64);
        fact *= (j + 1) as f64;
        let deriv = j + 1;
        if deriv % 2 == 1 {
            let b = BERNOULLI_EVEN[deriv / 2];
            correction -= b / (fact * (deriv + 1) as f64) * eval(&poly, deriv);
        }
    }
    Ok(sum + integral + correction)
}

fn differentiate(p: &[Complex64], exponent: Complex64) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = p.iter().map(|c| -exponent * c).collect();
    for (i, c) in p.iter().enumerate().skip(1) {
        out[i - 1] += c * i as f64;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn classical_values() {
        let pi = std::f64::consts::PI;
        assert!((zeta_deriv(0, c(2.0)).unwrap() - c(pi * pi / 6.0)).norm() < 1e-14);
        assert!((zeta_deriv(0, c(4.0)).unwrap() - c(pi.powi(4) / 90.0)).norm() < 1e-14);
        // ζ'(2) = -0.93754825431584375370
        assert!((zeta_deriv(1, c(2.0)).unwrap() - c(-0.937_548_254_315_843_8)).norm() < 1e-13);
        assert!(zeta_deriv(0, c(1.0)).is_err());
    }

    #[test]
    fn cutoff_independence() {
        let r = Complex64::new(1.7, 2.5);
        for d in [0, 3, 9] {
            let a = zeta_deriv_with(d, r, 30, 8).unwrap();
            let b = zeta_deriv_with(d, r, 90, 10).unwrap();
            assert!((a - b).norm() <= 1e-11 * a.norm().max(1.0), "d = {d}");
        }
    }
}
