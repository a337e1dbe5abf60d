//! Planar zeta and Gamma germs.
//!
//! Both are read through the planar exponential: around `r` the germ has
//! coefficient `α_T · F^(deg T)(r)` on `x^T`, with `F = ζ` or `F = Γ`.

pub mod gamma;
pub mod quadrature;
pub mod zeta;

use num_complex::Complex64;

use crate::analytic::PlanarAnalyticFunction;
use crate::error::{Error, Result};
use crate::expfam::GradedGerm;
use crate::rebase::{rebase_between, Germ};
use crate::series::TruncatedPlanarSeries;
use crate::trees::PlanarMonomial;

pub use gamma::{gamma_deriv, gamma_deriv_with_tol, gamma_derivatives_by_recursion, polygamma};
pub use zeta::{zeta_deriv, zeta_deriv_with};

/// `B_2, B_4, ..., B_20`.
pub(crate) const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaGermSpec {
    pub base: Complex64,
    pub arity: usize,
    pub trunc: usize,
    /// Terms summed directly before the tail integral.
    pub cutoff: usize,
    /// Bernoulli correction terms at the cutoff.
    pub tail_order: usize,
}

impl ZetaGermSpec {
    pub fn new(base: Complex64, trunc: usize) -> Self {
        ZetaGermSpec { base, arity: 2, trunc, cutoff: zeta::DEFAULT_CUTOFF, tail_order: zeta::DEFAULT_TAIL_ORDER }
    }

    pub fn with_arity(mut self, k: usize) -> Self {
        self.arity = k;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaGermSpec {
    pub base: Complex64,
    pub arity: usize,
    pub trunc: usize,
    pub tolerance: f64,
}

impl GammaGermSpec {
    pub fn new(base: Complex64, trunc: usize) -> Self {
        GammaGermSpec { base, arity: 2, trunc, tolerance: gamma::GAMMA_QUADRATURE_TOL }
    }

    pub fn with_arity(mut self, k: usize) -> Self {
        self.arity = k;
        self
    }
}

/// `S_d(r)` for `d = 0..=spec.trunc`, attached to `α_T`.
pub fn zeta_graded(spec: &ZetaGermSpec) -> Result<GradedGerm> {
    let c = (0..=spec.trunc)
        .map(|d| zeta_deriv_with(d, spec.base, spec.cutoff, spec.tail_order))
        .collect::<Result<Vec<_>>>()?;
    GradedGerm::new(spec.base, spec.arity, c)
}

pub fn zeta_germ(spec: &ZetaGermSpec) -> Result<Germ<Complex64>> {
    zeta_graded(spec)?.to_germ(spec.trunc)
}

/// `Γ^(d)(r)` for `d = 0..=spec.trunc`, attached to `α_T`.
pub fn gamma_graded(spec: &GammaGermSpec) -> Result<GradedGerm> {
    let c = (0..=spec.trunc)
        .map(|d| gamma_deriv_with_tol(d, spec.base, spec.tolerance))
        .collect::<Result<Vec<_>>>()?;
    GradedGerm::new(spec.base, spec.arity, c)
}

pub fn gamma_germ(spec: &GammaGermSpec) -> Result<Germ<Complex64>> {
    gamma_graded(spec)?.to_germ(spec.trunc)
}

fn check_zeta_step(from: Complex64, to: Complex64) -> Result<()> {
    let radius = (from - 1.0).norm();
    if (to - from).norm() < radius {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!(
            "step from {from} to {to} leaves the disk of convergence (radius {radius})"
        )))
    }
}

/// Moves a zeta germ from its base to `r1` inside the disk `|s - r0| < |r0 - 1|`.
pub fn zeta_continue(germ: &GradedGerm, r1: Complex64, n: usize) -> Result<GradedGerm> {
    check_zeta_step(germ.base, r1)?;
    germ.rebase(r1, n)
}

/// As [`zeta_continue`], for a germ given by its planar coefficients.
pub fn zeta_continue_series(germ: &Germ<Complex64>, r1: Complex64, n: usize) -> Result<Germ<Complex64>> {
    check_zeta_step(germ.base, r1)?;
    rebase_between(germ, &r1, n)
}

/// `ζ_ℙ` on `Re s > 1`, where the germs come from direct summation.
#[derive(Clone, Copy, Debug)]
pub struct PlanarZeta {
    pub arity: usize,
}

impl PlanarAnalyticFunction<Complex64> for PlanarZeta {
    fn contains(&self, a: &Complex64) -> bool {
        a.re > 1.0
    }

    fn germ(&self, a: &Complex64, n: usize) -> Result<Germ<Complex64>> {
        zeta_germ(&ZetaGermSpec::new(*a, n).with_arity(self.arity))
    }

    fn radius_hint(&self, a: &Complex64) -> Option<f64> {
        Some((a - 1.0).norm())
    }

    fn majorants(&self, a: &Complex64, n: usize) -> Result<Vec<f64>> {
        Ok(zeta_graded(&ZetaGermSpec::new(*a, n).with_arity(self.arity))?.majorants())
    }
}

/// `Γ_ℙ` on `Re s > 0`.
#[derive(Clone, Copy, Debug)]
pub struct PlanarGamma {
    pub arity: usize,
}

impl PlanarAnalyticFunction<Complex64> for PlanarGamma {
    fn contains(&self, a: &Complex64) -> bool {
        a.re > 0.0
    }

    fn germ(&self, a: &Complex64, n: usize) -> Result<Germ<Complex64>> {
        gamma_germ(&GammaGermSpec::new(*a, n).with_arity(self.arity))
    }

    fn radius_hint(&self, a: &Complex64) -> Option<f64> {
        Some(a.norm())
    }

    fn majorants(&self, a: &Complex64, n: usize) -> Result<Vec<f64>> {
        Ok(gamma_graded(&GammaGermSpec::new(*a, n).with_arity(self.arity))?.majorants())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShiftRow {
    pub tree: PlanarMonomial,
    /// Coefficient of the germ of `Γ_ℙ(s + 1)`.
    pub shifted: Complex64,
    /// Coefficient of the germ of `s · Γ_ℙ(s)`.
    pub product: Complex64,
}

impl ShiftRow {
    pub fn abs_difference(&self) -> f64 {
        (self.shifted - self.product).norm()
    }

    /// `|a - b| / max(|a|, |b|)`, zero when both vanish.
    pub fn rel_difference(&self) -> f64 {
        let scale = self.shifted.norm().max(self.product.norm());
        if scale == 0.0 {
            0.0
        } else {
            self.abs_difference() / scale
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaShiftReport {
    pub base: Complex64,
    pub arity: usize,
    pub rows: Vec<ShiftRow>,
}

impl GammaShiftReport {
    /// Largest relative difference among trees of degree `d`.
    pub fn max_rel_difference(&self, d: usize) -> f64 {
        self.rows.iter().filter(|row| row.tree.degree() == d).map(ShiftRow::rel_difference).fold(0.0, f64::max)
    }
}

/// Compares the germ of `Γ_ℙ(s + 1)` at `r`, coefficients
/// `α_T Γ^(deg T)(r + 1)`, with `(r + (s - r)) · Γ_ℙ(s)`.
pub fn gamma_shift_probe(r: Complex64, n: usize, arity: usize) -> Result<GammaShiftReport> {
    let shifted = gamma_germ(&GammaGermSpec::new(r + 1.0, n).with_arity(arity))?.series;
    let at_r = gamma_germ(&GammaGermSpec::new(r, n).with_arity(arity))?.series;
    let product = TruncatedPlanarSeries::affine(r, n).mul2(&at_r);
    let mut trees: Vec<&PlanarMonomial> = shifted.terms().map(|(t, _)| t).chain(product.terms().map(|(t, _)| t)).collect();
    trees.sort();
    trees.dedup();
    let rows = trees
        .into_iter()
        .map(|t| ShiftRow {
            tree: t.clone(),
            shifted: shifted.coefficient(t).unwrap_or_default(),
            product: product.coefficient(t).unwrap_or_default(),
        })
        .collect();
    Ok(GammaShiftReport { base: r, arity, rows })
}
