//! Composite Gauss–Legendre quadrature with panel doubling.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

const ORDER: usize = 20;
const MAX_PANELS: usize = 1 << 14;

/// Nodes and weights on `[-1, 1]`.
fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = ORDER;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
        }
        out
    })
}

/// `(∫ f, ∫ |f|)` over `[a, b]` with `panels` equal panels.
fn composite<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, panels: usize) -> (Complex64, f64) {
    let h = (b - a) / panels as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for &(x, w) in rule() {
            let v = f(mid + 0.5 * h * x);
            sum += v * w;
            abs += v.norm() * w;
        }
    }
    (sum * (0.5 * h), abs * 0.5 * h)
}

/// Integrates over `[a, b]`, doubling the panel count until two successive
/// results agree to `tol` relative to `∫ |f|`.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Result<Complex64> {
    let mut panels = 4;
    let (mut prev, _) = composite(&f, a, b, panels);
    while panels < MAX_PANELS {
        panels *= 2;
        let (next, abs) = composite(&f, a, b, panels);
        if !next.is_finite() {
            return Err(Error::Quadrature("integrand is not finite".into()));
        }
        if (next - prev).norm() <= tol * abs.max(f64::MIN_POSITIVE) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Quadrature(format!("no convergence on [{a}, {b}] with {MAX_PANELS} panels")))
}

/// A point beyond which a decaying integrand is negligible: walks outward
/// from `start` until `x·|f(x)|` falls `1e-18` below the largest value seen.
/// `log_abs` is `log |f|`.
pub fn cutoff<L: Fn(f64) -> f64>(log_abs: L, start: f64) -> f64 {
    let threshold = (1e-18f64).ln();
    let mut x = start.max(1.0);
    let mut peak = log_abs(x);
    for _ in 0..400 {
        x = x * 1.25 + 1.0;
        let v = log_abs(x);
        peak = peak.max(v);
        if v + x.ln() < peak + threshold {
            return x;
        }
    }
    x
}
