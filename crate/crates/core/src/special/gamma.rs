//! Γ, polygamma and derivatives of Γ.

use num_complex::Complex64;

use super::quadrature::{cutoff, integrate};
use super::BERNOULLI_EVEN;
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Lanczos approximation, with reflection left of `Re z = 1/2`.
pub fn gamma(z: Complex64) -> Complex64 {
    use std::f64::consts::PI;
    if z.re < 0.5 {
        return PI / ((PI * z).sin() * gamma(1.0 - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// `ψ_n(z)`, the n-th derivative of `Γ'/Γ`, by upward shifting and the
/// asymptotic expansion.
pub fn polygamma(n: usize, z: Complex64) -> Result<Complex64> {
    if z.re <= 0.0 && (z.im == 0.0) && z.re.fract() == 0.0 {
        return Err(Error::OutOfDomain(format!("polygamma has a pole at {}", z.re)));
    }
    let nf = factorial(n);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.norm() < 20.0 || z.re < 10.0 {
        // ψ_n(z) = ψ_n(z + 1) - (-1)^n n! / z^(n+1)
        acc -= sign * nf / z.powi(n as i32 + 1);
        z += 1.0;
    }
    let asym = if n == 0 {
        let mut s = z.ln() - 0.5 / z;
        for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
            let k2 = 2 * (k + 1);
            s -= b / (k2 as f64 * z.powi(k2 as i32));
        }
        s
    } else {
        let mut s = factorial(n - 1) / z.powi(n as i32) + nf / (2.0 * z.powi(n as i32 + 1));
        for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
            let k2 = 2 * (k + 1);
            s += b * factorial(k2 + n - 1) / factorial(k2) / z.powi((k2 + n) as i32);
        }
        -sign * s
    };
    Ok(acc + asym)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `Γ^(d)(r)` for `d = 0..=max_d` from `Γ' = Γψ` and the Leibniz rule:
/// `Γ^(d+1) = Σ_j C(d, j) Γ^(j) ψ_(d-j)`.
pub fn gamma_derivatives_by_recursion(max_d: usize, r: Complex64) -> Result<Vec<Complex64>> {
    let psi: Vec<Complex64> = (0..max_d.max(1)).map(|n| polygamma(n, r)).collect::<Result<_>>()?;
    let mut g = vec![gamma(r)];
    for d in 0..max_d {
        let mut binom = 1.0;
        let mut next = Complex64::new(0.0, 0.0);
        for j in 0..=d {
            next += binom * g[j] * psi[d - j];
            binom = binom * (d - j) as f64 / (j + 1) as f64;
        }
        g.push(next);
    }
    Ok(g)
}

/// Default relative tolerance of [`gamma_deriv`].
pub const GAMMA_QUADRATURE_TOL: f64 = 1e-12;

/// `Γ^(d)(r) = ∫_0^∞ e^-t t^(r-1) (log t)^d dt` by quadrature.
pub fn gamma_deriv(d: usize, r: Complex64) -> Result<Complex64> {
    gamma_deriv_with_tol(d, r, GAMMA_QUADRATURE_TOL)
}

/// The integral is split at `t = 1`; on `(0, 1]` the substitution `t = e^-u`
/// turns it into `∫_0^∞ exp(-e^-u) e^(-ru) (-u)^d du`.
pub fn gamma_deriv_with_tol(d: usize, r: Complex64, tol: f64) -> Result<Complex64> {
    if !(r.re > 0.0) {
        return Err(Error::OutOfDomain(format!("gamma_deriv needs Re r > 0, got {}", r.re)));
    }
    let df = d as f64;
    let rho = r.re;
    let sign = if d % 2 == 0 { 1.0 } else { -1.0 };
    let lower = |u: f64| {
        let log_mod = -(-u).exp() - rho * u + if d > 0 { df * u.ln() } else { 0.0 };
        if log_mod < -745.0 {
            return Complex64::new(0.0, 0.0);
        }
        (-(-u).exp() - r * u).exp() * (sign * u.powi(d as i32))
    };
    let u_max = cutoff(|u| -rho * u + df * u.max(1e-300).ln(), (df / rho).max(1.0));
    let upper = |t: f64| {
        let lt = t.ln();
        ((r - 1.0) * lt - t).exp() * lt.powi(d as i32)
    };
    let t_max = cutoff(|t| -t + (rho - 1.0) * t.ln() + df * t.ln().max(1e-300).ln(), 1.0 + df + rho);
    Ok(integrate(lower, 0.0, u_max, tol)? + integrate(upper, 1.0, t_max, tol)?)
}
