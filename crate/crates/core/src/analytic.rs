//! Planar analytic functions: a domain together with a germ at every point
//! of it, any two germs agreeing after rebasing inside the radius.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rebase::{rebase_between, rebase_series, Germ};
use crate::scalar::Scalar;
use crate::series::multiplicative::MultiplicativeFamily;
use crate::series::TruncatedPlanarSeries;
use crate::trees::PlanarMonomial;

pub trait PlanarAnalyticFunction<S: Scalar> {
    fn contains(&self, a: &S) -> bool;

    /// Coefficients through degree `n` of the expansion in powers of `x - a`.
    fn germ(&self, a: &S, n: usize) -> Result<Germ<S>>;

    /// Advisory radius of convergence of the germ at `a`.
    fn radius_hint(&self, _a: &S) -> Option<f64> {
        None
    }

    /// `M_d = Σ_{deg T = d} |γ_T(a)|` for `d = 0..=n`.
    fn majorants(&self, a: &S, n: usize) -> Result<Vec<f64>> {
        Ok(self.germ(a, n)?.series.majorants())
    }
}

fn out_of_domain<S: Scalar>(name: &str, a: &S) -> Error {
    let z = a.to_complex();
    Error::OutOfDomain(format!("{name} is not defined at {}{:+}i", z.re, z.im))
}

/// `x^{-1}` on the punctured plane.
#[derive(Clone, Copy, Debug, Default)]
pub struct Reciprocal;

pub fn reciprocal_function() -> Reciprocal {
    Reciprocal
}

impl<S: Scalar> PlanarAnalyticFunction<S> for Reciprocal {
    fn contains(&self, a: &S) -> bool {
        !a.is_negligible()
    }

    /// Left inverse of `a + (x - a)`; supported on the left combs with
    /// coefficient `(-1)^n a^-(n+1)`.
    fn germ(&self, a: &S, n: usize) -> Result<Germ<S>> {
        if !PlanarAnalyticFunction::<S>::contains(self, a) {
            return Err(out_of_domain("x^-1", a));
        }
        let series = TruncatedPlanarSeries::affine(a.clone(), n).left_inverse()?;
        Ok(Germ::new(a.clone(), series))
    }

    fn radius_hint(&self, a: &S) -> Option<f64> {
        Some(a.modulus())
    }

    fn majorants(&self, a: &S, n: usize) -> Result<Vec<f64>> {
        if !PlanarAnalyticFunction::<S>::contains(self, a) {
            return Err(out_of_domain("x^-1", a));
        }
        let r = a.modulus();
        Ok((0..=n).map(|d| r.powi(-(d as i32) - 1)).collect())
    }
}

/// The principal planar square root on the plane cut along `(-∞, 0]`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SquareRoot;

pub fn sqrt_function() -> SquareRoot {
    SquareRoot
}

impl SquareRoot {
    /// The germ coefficients as a multiplicative family: `√a` on the unit,
    /// `1/(2√a)` on the leaf and a factor `-1/(2√a)` per binary vertex.
    pub fn family(&self, a: Complex64) -> Result<MultiplicativeFamily<Complex64>> {
        if !self.contains(&a) {
            return Err(out_of_domain("sqrt", &a));
        }
        let root = a.sqrt();
        let half = 0.5 / root;
        Ok(MultiplicativeFamily::new(root, half, 2, move |_, _| -half))
    }
}

impl PlanarAnalyticFunction<Complex64> for SquareRoot {
    fn contains(&self, a: &Complex64) -> bool {
        a.is_finite() && !(a.im == 0.0 && a.re <= 0.0)
    }

    fn germ(&self, a: &Complex64, n: usize) -> Result<Germ<Complex64>> {
        if !self.contains(a) {
            return Err(out_of_domain("sqrt", a));
        }
        let series = TruncatedPlanarSeries::affine(*a, n).sqrt_solve(&Complex64::sqrt(*a))?;
        Ok(Germ::new(*a, series))
    }

    fn radius_hint(&self, a: &Complex64) -> Option<f64> {
        Some(a.norm())
    }

    fn majorants(&self, a: &Complex64, n: usize) -> Result<Vec<f64>> {
        Ok(self.family(*a)?.majorants(n))
    }
}

/// A series around 0 together with a radius; germs are its expansions.
#[derive(Clone, Debug)]
pub struct EntireSeries<S> {
    series: TruncatedPlanarSeries<S>,
    radius: f64,
}

pub fn from_entire_series<S: Scalar>(series: TruncatedPlanarSeries<S>, radius_hint: f64) -> EntireSeries<S> {
    EntireSeries { series, radius: radius_hint }
}

impl<S: Scalar> EntireSeries<S> {
    pub fn series(&self) -> &TruncatedPlanarSeries<S> {
        &self.series
    }
}

impl<S: Scalar> PlanarAnalyticFunction<S> for EntireSeries<S> {
    fn contains(&self, a: &S) -> bool {
        a.modulus() < self.radius
    }

    /// For a polynomial the expansion is exact at every degree; otherwise the
    /// source degree is the stored truncation.
    fn germ(&self, a: &S, n: usize) -> Result<Germ<S>> {
        if !self.contains(a) {
            return Err(out_of_domain("the series", a));
        }
        if self.series.is_polynomial() {
            let source = self.series.clone();
            let lifted = TruncatedPlanarSeries::from_terms(source.terms().map(|(t, c)| (t.clone(), c.clone())), n.max(source.trunc()))?
                .into_polynomial();
            let germ = rebase_series(&lifted, a, n)?;
            return Ok(Germ::new(germ.base, germ.series.into_polynomial()));
        }
        rebase_series(&self.series, a, n)
    }

    fn radius_hint(&self, a: &S) -> Option<f64> {
        Some(self.radius - a.modulus())
    }
}

/// The family of left inverses of the germs of `F`.
#[derive(Clone, Debug)]
pub struct LeftInverse<F>(pub F);

/// The family of right inverses of the germs of `F`.
#[derive(Clone, Debug)]
pub struct RightInverse<F>(pub F);

macro_rules! inverse_family {
    ($name:ident, $method:ident) => {
        impl<S: Scalar, F: PlanarAnalyticFunction<S>> PlanarAnalyticFunction<S> for $name<F> {
            fn contains(&self, a: &S) -> bool {
                self.0.contains(a)
                    && self.0.germ(a, 0).map(|g| !g.series.constant_term().is_negligible()).unwrap_or(false)
            }

            fn germ(&self, a: &S, n: usize) -> Result<Germ<S>> {
                let g = self.0.germ(a, n)?;
                Ok(Germ::new(g.base, g.series.$method()?))
            }

            fn radius_hint(&self, a: &S) -> Option<f64> {
                self.0.radius_hint(a)
            }
        }
    };
}

inverse_family!(LeftInverse, left_inverse);
inverse_family!(RightInverse, right_inverse);

#[derive(Clone, Debug, PartialEq)]
pub struct CompatibilityReport {
    pub max_discrepancy: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub source_degree: usize,
}

/// Rebases the germ at `a` (computed through `source_degree`) to `b` and
/// compares it with the germ at `b` through degree `n`.
pub fn check_compatibility<S: Scalar, F: PlanarAnalyticFunction<S> + ?Sized>(
    f: &F,
    a: &S,
    b: &S,
    n: usize,
    source_degree: usize,
    tol: f64,
) -> Result<CompatibilityReport> {
    let source = f.germ(a, source_degree.max(n))?;
    let moved = rebase_between(&source, b, n)?;
    let direct = f.germ(b, n)?;
    let max_discrepancy = moved.series.max_abs_difference(&direct.series);
    Ok(CompatibilityReport { max_discrepancy, tolerance: tol, passed: max_discrepancy <= tol, source_degree })
}

/// `h_T(a) = ⟨f_a, (x - a)^T⟩` at each sample point.
pub fn coefficient_function<S: Scalar, F: PlanarAnalyticFunction<S> + ?Sized>(
    f: &F,
    tree: &PlanarMonomial,
    samples: &[S],
) -> Result<Vec<S>> {
    samples.iter().map(|a| f.germ(a, tree.degree())?.coefficient(tree)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::series::h_series;
    use crate::trees::comb;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reciprocal_closed_form() {
        let a = q(-2, 3);
        let germ = reciprocal_function().germ(&a, 6).unwrap();
        assert_eq!(germ.series.len(), 7);
        let mut expected = q(-3, 2);
        for n in 0..=6 {
            assert_eq!(germ.coefficient(&comb(n)).unwrap(), expected);
            expected = -expected / &a;
        }
        assert!(reciprocal_function().germ(&q(0, 1), 3).is_err());
    }

    #[test]
    fn reciprocal_samples() {
        let f = reciprocal_function();
        let v = coefficient_function(&f, &comb(2), &[q(2, 1)]).unwrap();
        assert_eq!(v, vec![q(1, 8)]);
        let v = coefficient_function(&f, &PlanarMonomial::unit(), &[q(3, 1), q(-1, 5)]).unwrap();
        assert_eq!(v, vec![q(1, 3), q(-5, 1)]);
    }

    #[test]
    fn sqrt_germ_at_one() {
        let germ = sqrt_function().germ(&c(1.0, 0.0), 8).unwrap();
        let expected = TruncatedPlanarSeries::one(8).sub(&h_series(8).scale(&c(2.0, 0.0)));
        assert!(germ.series.approx_eq(&expected, 1e-14));
        let family = sqrt_function().family(c(1.0, 0.0)).unwrap().series(8);
        assert!(germ.series.approx_eq(&family, 1e-14));
        assert!(sqrt_function().germ(&c(-1.0, 0.0), 3).is_err());
        assert!(sqrt_function().germ(&c(-1.0, 1e-3), 3).is_ok());
    }

    #[test]
    fn sqrt_germ_squares_to_affine() {
        let a = c(2.0, -1.5);
        let germ = sqrt_function().germ(&a, 7).unwrap();
        let square = germ.series.mul2(&germ.series);
        assert!(square.approx_eq(&TruncatedPlanarSeries::affine(a, 7), 1e-12));
    }

    #[test]
    fn polynomial_germs_are_exact_and_compatible() {
        let f = TruncatedPlanarSeries::polynomial([
            (PlanarMonomial::parse("(x,(x,x))").unwrap(), q(3, 1)),
            (PlanarMonomial::parse("x").unwrap(), q(-1, 2)),
        ]);
        let entire = from_entire_series(f.clone(), f64::INFINITY);
        assert_eq!(entire.germ(&q(0, 1), 3).unwrap().series, f);
        let report = check_compatibility(&entire, &q(1, 3), &q(-5, 4), 3, 3, 0.0).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn compatibility_of_builtins() {
        let r = check_compatibility(&reciprocal_function(), &c(1.0, 0.0), &c(1.25, 0.0), 6, 40, 1e-6).unwrap();
        assert!(r.passed, "{r:?}");
        let r = check_compatibility(&sqrt_function(), &c(1.0, 0.0), &c(0.8, 0.0), 5, 12, 1e-5).unwrap();
        assert!(r.passed, "{r:?}");
        let same = check_compatibility(&sqrt_function(), &c(2.0, 1.0), &c(2.0, 1.0), 4, 4, 0.0).unwrap();
        assert_eq!(same.max_discrepancy, 0.0);
    }
}
