//! The k-ary planar exponential.
//!
//! `exp_k` is the series `1 + x + ...` with `exp_k(x)^k = exp_k(kx)`, the
//! power taken as the k-ary corolla product. Comparing coefficients gives
//!
//! ```text
//! A_T(k) = C(k, m) · Π A_Si(k) / (k^n - k)
//! ```
//!
//! for a tree of degree `n >= 2` with root children `S1..Sm`, and zero as
//! soon as a vertex has more than `k` children.
//!
//! Series whose coefficients have the form `α_T · c_deg(T)` are handled by
//! [`GradedGerm`]. Because `Σ_{deg U = n+m} (U/T) α_U = α_T / m!`, rebasing
//! such a germ only shifts the sequence `c` like a classical Taylor series.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rebase::{rebase_series_with_report, Germ, RebaseReport};
use crate::scalar::{Rational, Scalar};
use crate::series::multiplicative::MultiplicativeFamily;
use crate::series::TruncatedPlanarSeries;
use crate::trees::{classical_binomial, enumerate_levels, BinomCounter, PlanarMonomial};

fn check_arity(k: usize) -> Result<()> {
    if k < 2 {
        Err(Error::Arity(k))
    } else {
        Ok(())
    }
}

/// `C(k, m) / (k^n - k)` as an exact rational.
fn vertex_weight(k: usize, m: usize, n: usize) -> Rational {
    let kb = BigInt::from(k);
    let denom = num_traits::pow(kb.clone(), n) - kb;
    Rational::new(BigInt::from(classical_binomial(k, m)), denom)
}

/// The coefficients of `exp_k` as a multiplicative family; vertex weights
/// are tabulated through `max_degree` and computed on demand beyond.
pub fn exp_family<S: Scalar>(k: usize, max_degree: usize) -> Result<MultiplicativeFamily<S>> {
    check_arity(k)?;
    let table: Vec<Vec<S>> = (0..=k)
        .map(|m| (0..=max_degree).map(|n| if m >= 2 && n >= 2 { S::from_rational(&vertex_weight(k, m, n)) } else { S::zero() }).collect())
        .collect();
    Ok(MultiplicativeFamily::new(S::one(), S::one(), k, move |m, n| match table.get(m).and_then(|row| row.get(n)) {
        Some(w) => w.clone(),
        None => S::from_rational(&vertex_weight(k, m, n)),
    }))
}

/// `A_T(k)`.
pub fn exp_coeff(tree: &PlanarMonomial, k: usize) -> Result<Rational> {
    Ok(exp_family::<Rational>(k, tree.degree())?.coefficient(tree))
}

/// `exp_k` through degree `n`.
pub fn exp_series<S: Scalar>(k: usize, n: usize) -> Result<TruncatedPlanarSeries<S>> {
    Ok(exp_family::<S>(k, n)?.series(n))
}

/// `Σ_{deg T = d} A_T(k)` for `d = 0..=n`, without enumerating trees.
pub fn exp_degree_sums(k: usize, n: usize) -> Result<Vec<Rational>> {
    Ok(exp_family::<Rational>(k, n)?.degree_sums(n))
}

/// Cached exact coefficients of `exp_k`, filled degree by degree.
#[derive(Clone, Debug)]
pub struct ExpCoefficientTable {
    k: usize,
    inner: Arc<RwLock<TableState>>,
}

#[derive(Debug)]
struct TableState {
    completed: Option<usize>,
    values: HashMap<PlanarMonomial, Rational>,
}

impl ExpCoefficientTable {
    pub fn new(k: usize) -> Result<Self> {
        check_arity(k)?;
        let state = TableState { completed: None, values: HashMap::new() };
        Ok(ExpCoefficientTable { k, inner: Arc::new(RwLock::new(state)) })
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    /// Highest degree whose coefficients are all stored.
    pub fn completed_degree(&self) -> Option<usize> {
        self.inner.read().expect("table lock").completed
    }

    /// Makes sure every tree of degree at most `n` is tabulated.
    pub fn complete_through(&self, n: usize) {
        let mut state = self.inner.write().expect("table lock");
        let start = match state.completed {
            Some(c) if c >= n => return,
            Some(c) => c + 1,
            None => 0,
        };
        let levels = enumerate_levels(n, self.k);
        for (d, level) in levels.into_iter().enumerate().skip(start) {
            for tree in level {
                let value = match d {
                    0 | 1 => Rational::one(),
                    _ => {
                        let m = tree.arity();
                        tree.children().fold(vertex_weight(self.k, m, d), |acc, c| acc * &state.values[&c.to_monomial()])
                    }
                };
                state.values.insert(tree, value);
            }
        }
        state.completed = Some(n);
    }

    /// `A_T(k)`; zero for trees with a vertex of arity above `k`.
    pub fn get(&self, tree: &PlanarMonomial) -> Rational {
        if tree.max_arity() > self.k {
            return Rational::zero();
        }
        self.complete_through(tree.degree());
        self.inner.read().expect("table lock").values[tree].clone()
    }
}

/// Both sides of `α_T / m! = Σ_{deg U = n + m} (U/T) α_U`.
pub fn corollary43_sides(tree: &PlanarMonomial, m: usize, k: usize) -> Result<(Rational, Rational)> {
    let n = tree.degree();
    let family = exp_family::<Rational>(k, n + m)?;
    let lhs = family.coefficient(tree) / Rational::from_integer(factorial(m));
    let mut counter = BinomCounter::new();
    let uppers = enumerate_levels(n + m, k).pop().unwrap_or_default();
    let mut rhs = Rational::zero();
    for u in &uppers {
        let b = counter.count(u.as_ref(), tree.as_ref());
        if b != 0 {
            rhs += family.coefficient(u) * Rational::from_integer(BigInt::from(b));
        }
    }
    Ok((lhs, rhs))
}

pub fn corollary43_check(tree: &PlanarMonomial, m: usize, k: usize) -> Result<bool> {
    let (lhs, rhs) = corollary43_sides(tree, m, k)?;
    Ok(lhs == rhs)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

#[derive(Clone, Debug)]
pub struct TranslationReport {
    pub max_discrepancy: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub rebase: RebaseReport,
}

/// Compares the expansion of `exp_k` around `λ` with `e^λ exp_k`.
pub fn translation_check(k: usize, lambda: Complex64, n_out: usize, source_degree: usize, tol: f64) -> Result<TranslationReport> {
    let family = exp_family::<Complex64>(k, source_degree + 8)?;
    let source = family.series(source_degree);
    let extra = family.majorants(source_degree + 8).split_off(source_degree + 1);
    let (germ, report) = rebase_series_with_report(&source, &lambda, n_out, Some(&extra))?;
    let expected = source.truncate(n_out).scale(&lambda.exp());
    let max_discrepancy = germ.series.max_abs_difference(&expected);
    Ok(TranslationReport { max_discrepancy, tolerance: tol, passed: max_discrepancy <= tol, rebase: report })
}

/// `n^s = exp(s log n)` expanded at `s = 0`: coefficients `α_T (log n)^deg T`.
pub fn npow(n: u64, k: usize, trunc: usize) -> Result<TruncatedPlanarSeries<Complex64>> {
    if n == 0 {
        return Err(Error::OutOfDomain("npow needs n >= 1".into()));
    }
    Ok(exp_series::<Complex64>(k, trunc)?.scale_substitute(&Complex64::new((n as f64).ln(), 0.0)))
}

/// A germ with coefficients `α_T(k) · c_deg(T)` around `base`.
///
/// `c_d` plays the role of the d-th derivative of a classical function at
/// the base point; the planar germ is that function read through `exp_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedGerm {
    pub base: Complex64,
    pub arity: usize,
    pub derivatives: Vec<Complex64>,
}

impl GradedGerm {
    pub fn new(base: Complex64, arity: usize, derivatives: Vec<Complex64>) -> Result<Self> {
        check_arity(arity)?;
        if derivatives.is_empty() {
            return Err(Error::InsufficientData("a graded germ needs at least c_0".into()));
        }
        Ok(GradedGerm { base, arity, derivatives })
    }

    /// Highest degree with known coefficients.
    pub fn trunc(&self) -> usize {
        self.derivatives.len() - 1
    }

    pub fn coefficient(&self, tree: &PlanarMonomial) -> Result<Complex64> {
        let d = tree.degree();
        if d > self.trunc() {
            return Err(Error::AboveTruncation { degree: d, trunc: self.trunc() });
        }
        let alpha = exp_coeff(tree, self.arity)?;
        Ok(Complex64::from_rational(&alpha) * self.derivatives[d])
    }

    /// The planar series through degree `n`.
    pub fn to_germ(&self, n: usize) -> Result<Germ<Complex64>> {
        if n > self.trunc() {
            return Err(Error::TruncationExceedsSource { requested: n, available: self.trunc() });
        }
        let alpha = exp_series::<Complex64>(self.arity, n)?;
        let series = alpha.map_coefficients(|t, a| a * self.derivatives[t.degree()]);
        Ok(Germ::new(self.base, series))
    }

    /// `M_d = |c_d| / d!`, since `α_T >= 0` and `Σ_{deg T = d} α_T = 1/d!`.
    pub fn majorants(&self) -> Vec<f64> {
        let mut fact = 1.0;
        self.derivatives
            .iter()
            .enumerate()
            .map(|(d, c)| {
                if d > 0 {
                    fact *= d as f64;
                }
                c.norm() / fact
            })
            .collect()
    }

    /// Re-expansion around `b`, `c'_n = Σ_m c_(n+m) (b - a)^m / m!`, summed
    /// over the available degrees.
    pub fn rebase(&self, b: Complex64, n_out: usize) -> Result<GradedGerm> {
        let top = self.trunc();
        if n_out > top {
            return Err(Error::TruncationExceedsSource { requested: n_out, available: top });
        }
        let step = b - self.base;
        let derivatives = (0..=n_out)
            .map(|n| {
                let mut term = Complex64::new(1.0, 0.0);
                let mut sum = Complex64::zero();
                for m in 0..=top - n {
                    if m > 0 {
                        term = term * step / m as f64;
                    }
                    sum += self.derivatives[n + m] * term;
                }
                sum
            })
            .collect();
        Ok(GradedGerm { base: b, arity: self.arity, derivatives })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rebase::rebase_between;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    fn t(s: &str) -> PlanarMonomial {
        PlanarMonomial::parse(s).unwrap()
    }

    #[test]
    fn small_coefficients() {
        assert_eq!(exp_coeff(&t("(x,x)"), 2).unwrap(), q(1, 2));
        assert_eq!(exp_coeff(&t("((x,x),(x,x))"), 2).unwrap(), q(1, 56));
        assert_eq!(exp_coeff(&t("(x,x,x)"), 2).unwrap(), q(0, 1));
        assert_eq!(exp_coeff(&t("(x,x,x)"), 3).unwrap(), q(1, 24));
        assert_eq!(exp_coeff(&t("x"), 1), Err(Error::Arity(1)));
    }

    #[test]
    fn table_matches_direct_recursion() {
        let table = ExpCoefficientTable::new(3).unwrap();
        let s = exp_series::<Rational>(3, 5).unwrap();
        for (tree, c) in s.terms() {
            assert_eq!(&table.get(tree), c);
        }
        assert_eq!(table.completed_degree(), Some(5));
        assert_eq!(table.get(&t("(x,x,x,x)")), q(0, 1));
    }

    #[test]
    fn defining_equation() {
        for (k, n) in [(2, 7), (3, 5)] {
            let e = exp_series::<Rational>(k, n).unwrap();
            assert_eq!(e.pow(k).unwrap(), e.scale_substitute(&q(k as i64, 1)), "k = {k}");
        }
    }

    #[test]
    fn exponential_binomial_sum() {
        let (lhs, rhs) = corollary43_sides(&t("(x,(x,x))"), 1, 2).unwrap();
        assert_eq!(lhs, q(1, 12));
        assert_eq!(rhs, q(1, 12));
        assert!(corollary43_check(&t("((x,x),x,x)"), 2, 3).unwrap());
    }

    #[test]
    fn graded_rebase_matches_generic_rebase() {
        let c: Vec<Complex64> = (0..=7).map(|d| Complex64::new(1.0 / (d as f64 + 1.5), 0.3 * d as f64)).collect();
        let germ = GradedGerm::new(Complex64::new(0.5, 0.0), 2, c).unwrap();
        let b = Complex64::new(0.2, 0.4);
        let fast = germ.rebase(b, 4).unwrap().to_germ(4).unwrap();
        let slow = rebase_between(&germ.to_germ(7).unwrap(), &b, 4).unwrap();
        assert!(fast.series.approx_eq(&slow.series, 1e-12));
        assert_eq!(fast.base, slow.base);
    }

    #[test]
    fn npow_leaf_is_log() {
        let s = npow(2, 2, 3).unwrap();
        assert!((s.coefficient(&t("x")).unwrap() - Complex64::new(2f64.ln(), 0.0)).norm() < 1e-15);
        assert_eq!(npow(1, 2, 3).unwrap(), TruncatedPlanarSeries::one(3));
    }
}
