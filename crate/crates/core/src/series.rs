//! Truncated planar power series.
//!
//! A [`TruncatedPlanarSeries`] holds the coefficients of all monomials of
//! degree at most `trunc`; absent monomials have coefficient zero. Arithmetic
//! between series of different truncation works at the smaller truncation.

pub mod json;
pub mod multiplicative;

use std::collections::BTreeMap;
use std::ops::Bound;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};
use crate::trees::{enumerate_levels, PlanarMonomial, TreeRef};

#[derive(Clone, Debug)]
pub struct TruncatedPlanarSeries<S> {
    terms: BTreeMap<PlanarMonomial, S>,
    trunc: usize,
    polynomial: bool,
}

/// Equality of coefficients and truncation; the polynomial flag is metadata.
impl<S: PartialEq> PartialEq for TruncatedPlanarSeries<S> {
    fn eq(&self, other: &Self) -> bool {
        self.trunc == other.trunc && self.terms == other.terms
    }
}

impl<S: Scalar> TruncatedPlanarSeries<S> {
    pub fn zero(trunc: usize) -> Self {
        TruncatedPlanarSeries { terms: BTreeMap::new(), trunc, polynomial: true }
    }

    /// The unit series `1`.
    pub fn one(trunc: usize) -> Self {
        Self::constant(S::one(), trunc)
    }

    pub fn constant(c: S, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.insert(PlanarMonomial::unit(), c);
        s
    }

    /// The variable `x`.
    pub fn variable(trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if trunc >= 1 {
            s.insert(PlanarMonomial::leaf(), S::one());
        }
        s
    }

    /// `c + x`, the variable shifted by a constant.
    pub fn affine(c: S, trunc: usize) -> Self {
        let mut s = Self::variable(trunc);
        s.insert(PlanarMonomial::unit(), c);
        s
    }

    pub fn monomial(tree: PlanarMonomial, c: S, trunc: usize) -> Result<Self> {
        if tree.degree() > trunc {
            return Err(Error::AboveTruncation { degree: tree.degree(), trunc });
        }
        let mut s = Self::zero(trunc);
        s.insert(tree, c);
        Ok(s)
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(terms: I, trunc: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (PlanarMonomial, S)>,
    {
        let mut s = Self::zero(trunc);
        s.polynomial = false;
        for (tree, c) in terms {
            if tree.degree() > trunc {
                return Err(Error::AboveTruncation { degree: tree.degree(), trunc });
            }
            s.accumulate(tree, &c);
        }
        s.prune();
        Ok(s)
    }

    /// An exact polynomial; its truncation is its degree.
    pub fn polynomial<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (PlanarMonomial, S)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        let trunc = terms.iter().map(|(t, _)| t.degree()).max().unwrap_or(0);
        let mut s = Self::from_terms(terms, trunc).expect("degree bounded by construction");
        s.polynomial = true;
        s
    }

    /// Marks the series as an exact polynomial: every coefficient above
    /// `trunc` is known to be zero.
    pub fn into_polynomial(mut self) -> Self {
        self.polynomial = true;
        self
    }

    pub fn is_polynomial(&self) -> bool {
        self.polynomial
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Highest degree carrying a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(PlanarMonomial::degree)
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PlanarMonomial, &S)> + '_ {
        self.terms.iter()
    }

    /// Terms of exactly degree `d`.
    pub fn level(&self, d: usize) -> impl DoubleEndedIterator<Item = (&PlanarMonomial, &S)> + '_ {
        self.terms.range((
            Bound::Included(PlanarMonomial::degree_floor(d)),
            Bound::Excluded(PlanarMonomial::degree_floor(d + 1)),
        ))
    }

    /// Terms of degree at most `d`.
    pub fn up_to(&self, d: usize) -> impl DoubleEndedIterator<Item = (&PlanarMonomial, &S)> + '_ {
        self.terms.range(..PlanarMonomial::degree_floor(d + 1))
    }

    /// `⟨f, x^T⟩`; zero when absent, an error above the truncation.
    pub fn coefficient(&self, tree: &PlanarMonomial) -> Result<S> {
        if tree.degree() > self.trunc {
            return Err(Error::AboveTruncation { degree: tree.degree(), trunc: self.trunc });
        }
        Ok(self.get(tree))
    }

    pub(crate) fn get(&self, tree: &PlanarMonomial) -> S {
        self.terms.get(tree).cloned().unwrap_or_else(S::zero)
    }

    pub fn constant_term(&self) -> S {
        self.get(&PlanarMonomial::unit())
    }

    pub(crate) fn insert(&mut self, tree: PlanarMonomial, c: S) {
        if tree.degree() <= self.trunc && !c.is_zero() {
            self.terms.insert(tree, c);
        }
    }

    fn accumulate(&mut self, tree: PlanarMonomial, c: &S) {
        *self.terms.entry(tree).or_insert_with(S::zero) += c;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    /// Drops all terms above degree `n`.
    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.trunc);
        TruncatedPlanarSeries {
            terms: self.up_to(n).map(|(t, c)| (t.clone(), c.clone())).collect(),
            trunc: n,
            polynomial: self.polynomial && self.degree().is_none_or(|d| d <= n),
        }
    }

    pub fn map_coefficients<T: Scalar>(&self, f: impl Fn(&PlanarMonomial, &S) -> T) -> TruncatedPlanarSeries<T> {
        let mut out = TruncatedPlanarSeries::zero(self.trunc);
        out.polynomial = self.polynomial;
        for (t, c) in &self.terms {
            out.insert(t.clone(), f(t, c));
        }
        out
    }

    /// Converts coefficients into another scalar field.
    pub fn to_complex(&self) -> TruncatedPlanarSeries<num_complex::Complex64> {
        self.map_coefficients(|_, c| c.to_complex())
    }

    /// Sum at the smaller truncation; the sum of two polynomials is exact.
    pub fn add(&self, other: &Self) -> Self {
        let polynomial = self.polynomial && other.polynomial;
        let trunc = if polynomial { self.trunc.max(other.trunc) } else { self.trunc.min(other.trunc) };
        let mut out = Self::zero(trunc);
        for (t, c) in self.up_to(trunc).chain(other.up_to(trunc)) {
            out.accumulate(t.clone(), c);
        }
        out.prune();
        out.polynomial = polynomial;
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|_, c| -c.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map_coefficients(|_, v| v.clone() * c)
    }

    /// Binary grafting product, truncated at the smaller truncation.
    pub fn mul2(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let mut out = Self::zero(trunc);
        for (s, a) in self.up_to(trunc) {
            for (t, b) in other.up_to(trunc - s.degree()) {
                out.accumulate(s.product(t), &(a.clone() * b));
            }
        }
        out.prune();
        out.polynomial = self.polynomial
            && other.polynomial
            && self.degree().unwrap_or(0) + other.degree().unwrap_or(0) <= trunc;
        out
    }

    /// k-ary grafting product with unit absorption, `k = factors.len() >= 2`.
    pub fn mulk(factors: &[&Self]) -> Result<Self> {
        if factors.len() < 2 {
            return Err(Error::Arity(factors.len()));
        }
        let trunc = factors.iter().map(|f| f.trunc).min().unwrap_or(0);
        let mut out = Self::zero(trunc);
        let mut stack: Vec<TreeRef<'_>> = Vec::with_capacity(factors.len());
        mulk_rec(factors, trunc, &mut stack, S::one(), &mut out);
        out.prune();
        let total: usize = factors.iter().map(|f| f.degree().unwrap_or(0)).sum();
        out.polynomial = factors.iter().all(|f| f.polynomial) && total <= trunc;
        Ok(out)
    }

    /// `f^k` as the k-ary corolla product `mulk(f, ..., f)`.
    pub fn pow(&self, k: usize) -> Result<Self> {
        let factors = vec![self; k];
        Self::mulk(&factors)
    }

    fn inverse_unit(&self) -> Result<S> {
        let c = self.constant_term();
        if c.is_negligible() {
            return Err(Error::VanishingConstantTerm);
        }
        Ok(S::one() / c)
    }

    /// The series `g` with `g · f = 1` up to the truncation.
    pub fn left_inverse(&self) -> Result<Self> {
        self.one_sided_inverse(true)
    }

    /// The series `g` with `f · g = 1` up to the truncation.
    pub fn right_inverse(&self) -> Result<Self> {
        self.one_sided_inverse(false)
    }

    fn one_sided_inverse(&self, left: bool) -> Result<Self> {
        let inv = self.inverse_unit()?;
        let mut g = Self::constant(inv.clone(), self.trunc);
        g.polynomial = false;
        for n in 1..=self.trunc {
            // acc_T = g_1 f_T + g_{c1} f_{c2}   (left)
            // acc_T = f_T g_1 + f_{c1} g_{c2}   (right)
            let mut acc: BTreeMap<PlanarMonomial, S> = BTreeMap::new();
            for (t, c) in self.level(n) {
                acc.insert(t.clone(), c.clone() * &inv);
            }
            for d in 1..n {
                let (first, second) = if left { (&g, self) } else { (self, &g) };
                for (c1, a) in first.level(d) {
                    for (c2, b) in second.level(n - d) {
                        *acc.entry(c1.product(c2)).or_insert_with(S::zero) += &(a.clone() * b);
                    }
                }
            }
            for (t, v) in acc {
                g.insert(t, -(v * &inv));
            }
        }
        Ok(g)
    }

    /// The series `f` with `f · f = u` and constant term `root`.
    pub fn sqrt_solve(&self, root: &S) -> Result<Self> {
        let c = self.constant_term();
        if c.is_negligible() {
            return Err(Error::VanishingConstantTerm);
        }
        if !(root.clone() * root).approx_eq(&c, crate::scalar::DEFAULT_TOLERANCE) {
            return Err(Error::InconsistentRoot);
        }
        let half_inv = S::one() / (root.clone() + root);
        let mut f = Self::constant(root.clone(), self.trunc);
        f.polynomial = false;
        for n in 1..=self.trunc {
            let mut acc: BTreeMap<PlanarMonomial, S> = BTreeMap::new();
            for (t, v) in self.level(n) {
                acc.insert(t.clone(), v.clone());
            }
            for d in 1..n {
                for (c1, a) in f.level(d) {
                    for (c2, b) in f.level(n - d) {
                        let e = acc.entry(c1.product(c2)).or_insert_with(S::zero);
                        *e = e.clone() - (a.clone() * b);
                    }
                }
            }
            for (t, v) in acc {
                f.insert(t, v * &half_inv);
            }
        }
        Ok(f)
    }

    /// Substitutes `x -> λx`: each coefficient is multiplied by `λ^deg`.
    pub fn scale_substitute(&self, lambda: &S) -> Self {
        let powers = powers(lambda, self.trunc);
        self.map_coefficients(|t, c| c.clone() * &powers[t.degree()])
    }

    /// Partial sum `Σ γ_T a^deg(T)` over the stored degrees.
    pub fn eval(&self, a: &S) -> S {
        let powers = powers(a, self.trunc);
        let mut sum = S::zero();
        for (t, c) in &self.terms {
            sum += &(c.clone() * &powers[t.degree()]);
        }
        sum
    }

    /// Degree-wise coefficient sums: the ordinary power series obtained by
    /// forgetting tree structure.
    pub fn classical_image(&self) -> Vec<S> {
        let mut out = vec![S::zero(); self.trunc + 1];
        for (t, c) in &self.terms {
            out[t.degree()] += c;
        }
        out
    }

    /// `M_n = Σ_{deg T = n} |γ_T|` for `n = 0..=trunc`.
    pub fn majorants(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.trunc + 1];
        for (t, c) in &self.terms {
            out[t.degree()] += c.modulus();
        }
        out
    }

    /// Coefficient-wise comparison at the common truncation.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let trunc = self.trunc.min(other.trunc);
        let zero = S::zero();
        let a = self.up_to(trunc).map(|(t, c)| (t, c, other.terms.get(t).unwrap_or(&zero)));
        let b = other.up_to(trunc).map(|(t, c)| (t, self.terms.get(t).unwrap_or(&zero), c));
        a.chain(b).all(|(_, x, y)| x.approx_eq(y, tol))
    }

    /// Largest coefficient discrepancy `|a_T - b_T|` at the common truncation.
    pub fn max_abs_difference(&self, other: &Self) -> f64 {
        let trunc = self.trunc.min(other.trunc);
        let mut worst: f64 = 0.0;
        let zero = S::zero();
        for (t, c) in self.up_to(trunc) {
            worst = worst.max((c.clone() - other.terms.get(t).unwrap_or(&zero)).modulus());
        }
        for (t, c) in other.up_to(trunc) {
            if !self.terms.contains_key(t) {
                worst = worst.max(c.modulus());
            }
        }
        worst
    }
}

fn mulk_rec<'a, S: Scalar>(
    factors: &[&'a TruncatedPlanarSeries<S>],
    budget: usize,
    stack: &mut Vec<TreeRef<'a>>,
    coeff: S,
    out: &mut TruncatedPlanarSeries<S>,
) {
    let depth = stack.len();
    if depth == factors.len() {
        out.accumulate(PlanarMonomial::graft(stack.iter().copied()), &coeff);
        return;
    }
    for (t, c) in factors[depth].up_to(budget) {
        stack.push(t.as_ref());
        mulk_rec(factors, budget - t.degree(), stack, coeff.clone() * c, out);
        stack.pop();
    }
}

/// `[1, a, a², ..., a^n]`.
pub fn powers<S: Scalar>(a: &S, n: usize) -> Vec<S> {
    let mut out = Vec::with_capacity(n + 1);
    let mut p = S::one();
    for _ in 0..=n {
        out.push(p.clone());
        p = p * a;
    }
    out
}

/// `g = Σ x^T` over binary trees of degree `1..=n`; satisfies `g² = g - x`.
pub fn g_series<S: Scalar>(n: usize) -> TruncatedPlanarSeries<S> {
    binary_geometric(n, &S::one())
}

/// `h = g(-x/4)`; satisfies `(1 - 2h)² = 1 + x`.
pub fn h_series<S: Scalar>(n: usize) -> TruncatedPlanarSeries<S> {
    binary_geometric(n, &S::from_rational(&Rational::new((-1).into(), 4.into())))
}

fn binary_geometric<S: Scalar>(n: usize, ratio: &S) -> TruncatedPlanarSeries<S> {
    let powers = powers(ratio, n);
    let mut out = TruncatedPlanarSeries::zero(n);
    out.polynomial = false;
    for (d, level) in enumerate_levels(n, 2).into_iter().enumerate().skip(1) {
        for t in level {
            out.insert(t, powers[d].clone());
        }
    }
    out
}
