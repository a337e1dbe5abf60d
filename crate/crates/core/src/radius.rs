//! Radius of convergence from degree majorants `M_n = Σ_{deg T = n} |γ_T|`.
//!
//! The estimate is `exp(-slope)` for a least-squares line through
//! `(n, log M_n)` over the last third of the degrees. A sequence is declared
//! entire when the root test value at the last degree is below a cutoff, or
//! when the window shows factorial decay: fitting
//! `log M_n = c + s·n - β·log n!` with `β` clearly positive.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RadiusMethod {
    /// Only finitely many nonzero majorants.
    Polynomial,
    /// `M_N^(1/N)` below the cutoff.
    RootTest,
    /// Superexponential decay in the fitted window.
    FactorialDecay,
    /// Log-linear regression.
    Regression,
}

impl fmt::Display for RadiusMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RadiusMethod::Polynomial => "polynomial",
            RadiusMethod::RootTest => "root-test",
            RadiusMethod::FactorialDecay => "factorial-decay",
            RadiusMethod::Regression => "regression",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadiusEstimate {
    /// `f64::INFINITY` when declared entire.
    pub radius: f64,
    pub method: RadiusMethod,
    /// Degrees used by the fit, inclusive.
    pub window: (usize, usize),
    /// Root-mean-square residual of the log-linear fit.
    pub residual: f64,
    /// Fitted exponent of `1/n!` in the window.
    pub factorial_exponent: f64,
}

impl RadiusEstimate {
    pub fn is_infinite(&self) -> bool {
        self.radius.is_infinite()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusConfig {
    /// Minimum number of majorants (`N + 1` with `N >= 8` by default).
    pub min_len: usize,
    /// Fraction of the degrees, counted from the top, used for the fit.
    pub window_fraction: f64,
    pub root_cutoff: f64,
    pub factorial_cutoff: f64,
}

impl Default for RadiusConfig {
    fn default() -> Self {
        RadiusConfig { min_len: 9, window_fraction: 1.0 / 3.0, root_cutoff: 0.01, factorial_cutoff: 0.5 }
    }
}

pub fn estimate_radius(majorants: &[f64]) -> Result<RadiusEstimate> {
    estimate_radius_with(majorants, &RadiusConfig::default())
}

pub fn estimate_radius_with(majorants: &[f64], config: &RadiusConfig) -> Result<RadiusEstimate> {
    if majorants.len() < config.min_len {
        return Err(Error::InsufficientData(format!(
            "need at least {} majorants, got {}",
            config.min_len,
            majorants.len()
        )));
    }
    if let Some(bad) = majorants.iter().find(|m| !(**m >= 0.0) || m.is_infinite()) {
        return Err(Error::InsufficientData(format!("majorants must be finite and nonnegative, got {bad}")));
    }
    let top = majorants.len() - 1;
    let width = ((majorants.len() as f64 * config.window_fraction).ceil() as usize).max(2);
    let start = top + 1 - width.min(top);
    let window = (start, top);
    let infinite = |method, residual, beta| RadiusEstimate {
        radius: f64::INFINITY,
        method,
        window,
        residual,
        factorial_exponent: beta,
    };

    let points: Vec<(f64, f64)> = (start..=top)
        .filter(|&n| majorants[n] > 0.0)
        .map(|n| (n as f64, majorants[n].ln()))
        .collect();
    if points.is_empty() {
        return Ok(infinite(RadiusMethod::Polynomial, 0.0, 0.0));
    }
    if points.len() < 2 {
        return Err(Error::InsufficientData("fewer than two nonzero majorants in the fit window".into()));
    }

    let (intercept, slope) = least_squares(&points);
    let residual = (points.iter().map(|(x, y)| (y - intercept - slope * x).powi(2)).sum::<f64>() / points.len() as f64).sqrt();
    let beta = factorial_exponent(&points);

    let last = majorants[top];
    if last > 0.0 && last.powf(1.0 / top as f64) < config.root_cutoff {
        return Ok(infinite(RadiusMethod::RootTest, residual, beta));
    }
    if beta > config.factorial_cutoff {
        return Ok(infinite(RadiusMethod::FactorialDecay, residual, beta));
    }
    Ok(RadiusEstimate { radius: (-slope).exp(), method: RadiusMethod::Regression, window, residual, factorial_exponent: beta })
}

fn least_squares(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    (my - slope * mx, slope)
}

/// `β` in `log M_n ≈ c + s·n - β·log n!`; zero when the system is degenerate.
fn factorial_exponent(points: &[(f64, f64)]) -> f64 {
    if points.len() < 3 {
        return 0.0;
    }
    let rows: Vec<[f64; 3]> = points.iter().map(|&(x, _)| [1.0, x, -ln_factorial(x as usize)]).collect();
    let mut ata = [[0.0; 3]; 3];
    let mut atb = [0.0; 3];
    for (row, &(_, y)) in rows.iter().zip(points) {
        for i in 0..3 {
            atb[i] += row[i] * y;
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
        }
    }
    solve3(ata, atb).map(|v| v[2]).unwrap_or(0.0)
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let s: f64 = (row + 1..3).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}
