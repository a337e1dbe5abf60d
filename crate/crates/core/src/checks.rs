//! Identity suites over the whole library, each with a time budget.
//!
//! Every suite returns a [`SuiteReport`] made of named checks; a suite passes
//! when all of its checks pass within its time limit.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::{reciprocal_function, sqrt_function, PlanarAnalyticFunction};
use crate::error::{Error, Result};
use crate::expfam::{corollary43_sides, exp_coeff, exp_family, exp_series, translation_check};
use crate::radius::{estimate_radius, RadiusEstimate};
use crate::rebase::{check_composition_identity, rebase_between, rebase_polynomial};
use crate::scalar::{format_rational, Rational};
use crate::series::multiplicative::MultiplicativeFamily;
use crate::series::{g_series, h_series, TruncatedPlanarSeries};
use crate::special::{
    gamma_deriv, gamma_derivatives_by_recursion, gamma_shift_probe, zeta_continue, zeta_deriv, zeta_graded, ZetaGermSpec,
};
use crate::trees::{binom, classical_binomial, comb, enumerate_levels, BinomCounter, PlanarMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    ExampleValues,
    DegreeSums,
    CatalanIdentities,
    Composition,
    PathIndependence,
    Translation,
    Inverses,
    Radius,
    SpecialKernels,
    GammaShift,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::ExampleValues,
        Suite::DegreeSums,
        Suite::CatalanIdentities,
        Suite::Composition,
        Suite::PathIndependence,
        Suite::Translation,
        Suite::Inverses,
        Suite::Radius,
        Suite::SpecialKernels,
        Suite::GammaShift,
    ];

    pub fn number(self) -> usize {
        Suite::ALL.iter().position(|&s| s == self).expect("listed") + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::ExampleValues => "example",
            Suite::DegreeSums => "degree-sums",
            Suite::CatalanIdentities => "catalan",
            Suite::Composition => "composition",
            Suite::PathIndependence => "path-independence",
            Suite::Translation => "translation",
            Suite::Inverses => "inverses",
            Suite::Radius => "radius",
            Suite::SpecialKernels => "special",
            Suite::GammaShift => "gamma-shift",
        }
    }

    pub fn time_limit(self) -> Duration {
        Duration::from_secs(match self {
            Suite::ExampleValues => 1,
            Suite::DegreeSums | Suite::CatalanIdentities | Suite::GammaShift => 5,
            Suite::Translation | Suite::Inverses | Suite::Radius => 10,
            Suite::PathIndependence | Suite::SpecialKernels => 30,
            Suite::Composition => 60,
        })
    }

    /// Accepts the suite name or its number.
    pub fn from_name(text: &str) -> Result<Suite> {
        let text = text.trim();
        Suite::ALL
            .iter()
            .copied()
            .find(|s| s.name() == text || s.number().to_string() == text)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::Unknown(format!("suite '{text}'; expected one of {}", names.join(", ")))
            })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Degree bound of the exhaustive and random exact suites.
    pub max_degree: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 0x5eed, max_degree: 6 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<CheckOutcome>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn within_time(&self) -> bool {
        self.elapsed <= self.suite.time_limit()
    }

    pub fn passed(&self) -> bool {
        self.within_time() && self.checks.iter().all(|c| c.passed)
    }

    /// `PASS 3 catalan (0.41s / 5s)` followed by the failing checks, if any.
    pub fn summary(&self) -> String {
        let mut line = format!(
            "{} {} {} ({:.2}s / {}s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite.number(),
            self.suite,
            self.elapsed.as_secs_f64(),
            self.suite.time_limit().as_secs()
        );
        if !self.within_time() {
            line.push_str("; time limit exceeded");
        }
        for c in self.checks.iter().filter(|c| !c.passed) {
            line.push_str(&format!("; {}: {}", c.name, c.detail));
        }
        line
    }
}

struct Checks(Vec<CheckOutcome>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(CheckOutcome { name: name.into(), passed, detail: detail.into() });
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, name: impl Into<String>, got: T, want: T) {
        let passed = got == want;
        self.push(name, passed, format!("got {got:?}, expected {want:?}"));
    }
}

pub fn run_suite(suite: Suite, options: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut checks = Checks(Vec::new());
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ suite.number() as u64);
    match suite {
        Suite::ExampleValues => example_values(&mut checks)?,
        Suite::DegreeSums => degree_sums(&mut checks)?,
        Suite::CatalanIdentities => catalan_identities(&mut checks),
        Suite::Composition => composition(&mut checks, options.max_degree, &mut rng),
        Suite::PathIndependence => path_independence(&mut checks, options.max_degree, &mut rng)?,
        Suite::Translation => translation(&mut checks)?,
        Suite::Inverses => inverses(&mut checks, &mut rng)?,
        Suite::Radius => radius(&mut checks)?,
        Suite::SpecialKernels => special_kernels(&mut checks)?,
        Suite::GammaShift => gamma_shift(&mut checks)?,
    }
    Ok(SuiteReport { suite, checks: checks.0, elapsed: start.elapsed() })
}

pub fn run_all(options: &SuiteOptions) -> Result<Vec<SuiteReport>> {
    Suite::ALL.iter().map(|&s| run_suite(s, options)).collect()
}

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

fn tree(text: &str) -> Result<PlanarMonomial> {
    PlanarMonomial::parse(text)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    q(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

fn random_nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

fn example_values(checks: &mut Checks) -> Result<()> {
    let lower = tree("(x,(x,x))")?;
    let uppers = ["(x,(x,(x,x)))", "(x,((x,x),x))", "((x,x),(x,x))", "((x,(x,x)),x)", "(((x,x),x),x)"]
        .iter()
        .map(|s| tree(s))
        .collect::<Result<Vec<_>>>()?;
    let counts: Vec<u128> = uppers.iter().map(|u| binom(u, &lower)).collect();
    checks.eq("binomials against (x,(x,x))", counts, vec![4, 3, 2, 1, 0]);
    let alphas = uppers.iter().map(|u| exp_coeff(u, 2).map(|a| format_rational(&a))).collect::<Result<Vec<_>>>()?;
    checks.eq("A_U(2) on degree 4", alphas, ["1/168", "1/168", "1/56", "1/168", "1/168"].map(String::from).to_vec());
    let (lhs, rhs) = corollary43_sides(&lower, 1, 2)?;
    checks.eq("alpha_T / 1! for T = (x,(x,x))", format_rational(&lhs), "1/12".to_string());
    checks.eq("weighted sum over degree 4", format_rational(&rhs), "1/12".to_string());
    checks.eq("14/(4!*7)", format_rational(&lhs), format_rational(&q(14, 24 * 7)));
    Ok(())
}

fn degree_sums(checks: &mut Checks) -> Result<()> {
    for k in 2..=4 {
        let image = exp_series::<Rational>(k, 8)?.classical_image();
        let mut factorial = BigInt::one();
        let mut bad = Vec::new();
        for (n, sum) in image.iter().enumerate() {
            if n > 0 {
                factorial *= n;
            }
            if *sum != Rational::new(BigInt::one(), factorial.clone()) {
                bad.push(format!("n={n}: {}", format_rational(sum)));
            }
        }
        let passed = bad.is_empty();
        checks.push(format!("k={k}: sums equal 1/n! for n <= 8"), passed, bad.join(", "));
    }
    Ok(())
}

fn catalan_identities(checks: &mut Checks) {
    let n = 10;
    let g: TruncatedPlanarSeries<Rational> = g_series(n);
    let h: TruncatedPlanarSeries<Rational> = h_series(n);
    let one = TruncatedPlanarSeries::one(n);
    let x = TruncatedPlanarSeries::variable(n);
    let two = q(2, 1);
    checks.push("g*g = g - x", g.mul2(&g) == g.sub(&x), "");
    let u = one.sub(&g.scale(&two));
    checks.push("(1-2g)^2 = 1-4x", u.mul2(&u) == one.sub(&x.scale(&q(4, 1))), "");
    let v = one.sub(&h.scale(&two));
    checks.push("(1-2h)^2 = 1+x", v.mul2(&v) == one.add(&x), "");
    let catalan: Vec<Rational> = (0..=n)
        .map(|d| if d == 0 { q(0, 1) } else { Rational::from_integer((classical_binomial(2 * d - 2, d - 1) / d as u128).into()) })
        .collect();
    let strings = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
    checks.eq("classical image of g", strings(&g.classical_image()), strings(&catalan));
}

/// Exhaustive over `S` of degree at most `max_degree` and every `T`: the
/// counting identity on integer sums, then the composition identity at
/// random rational `a`, `b` (at least 100 pairs in total).
fn composition(checks: &mut Checks, max_degree: usize, rng: &mut ChaCha8Rng) {
    let trees: Vec<PlanarMonomial> = enumerate_levels(max_degree, usize::MAX).into_iter().flatten().collect();
    let mut counter = BinomCounter::new();
    let matrix: Vec<Vec<u128>> = trees
        .iter()
        .map(|s| trees.iter().map(|t| counter.count(s.as_ref(), t.as_ref())).collect())
        .collect();
    let pairs_per_tree = 100usize.div_ceil(trees.len());
    let mut counting_failures = Vec::new();
    let mut composition_failures = Vec::new();
    let mut pairs = 0;
    for (i, s) in trees.iter().enumerate() {
        let n = s.degree();
        // by_degree[j][k]: Σ_{deg U = k} (S/U)(U/T_j)
        let by_degree: Vec<Vec<u128>> = (0..trees.len())
            .map(|j| {
                let mut sums = vec![0u128; n + 1];
                for (u, row) in matrix.iter().enumerate() {
                    let su = matrix[i][u];
                    if su != 0 && row[j] != 0 {
                        sums[trees[u].degree()] += su * row[j];
                    }
                }
                sums
            })
            .collect();
        for (j, t) in trees.iter().enumerate() {
            let m = t.degree();
            for (k, &sum) in by_degree[j].iter().enumerate() {
                let want = if m <= k { matrix[i][j] * classical_binomial(n - m, k - m) } else { 0 };
                if sum != want {
                    counting_failures.push(format!("S={s}, T={t}, deg U={k}: {sum} != {want}"));
                }
            }
        }
        for _ in 0..pairs_per_tree {
            let (a, b) = (random_rational(rng), random_rational(rng));
            pairs += 1;
            let a_pow = crate::series::powers(&a, n);
            let step_pow = crate::series::powers(&(b.clone() - &a), n);
            let b_pow = crate::series::powers(&b, n);
            for (j, t) in trees.iter().enumerate() {
                let m = t.degree();
                if m > n {
                    continue;
                }
                let mut lhs = Rational::zero();
                for (k, &sum) in by_degree[j].iter().enumerate().skip(m) {
                    if sum != 0 {
                        lhs += Rational::from_integer(sum.into()) * &a_pow[n - k] * &step_pow[k - m];
                    }
                }
                let rhs = Rational::from_integer(matrix[i][j].into()) * &b_pow[n - m];
                if lhs != rhs {
                    composition_failures.push(format!("S={s}, T={t}, a={a}, b={b}"));
                }
            }
        }
    }
    let first = |v: &[String]| v.first().cloned().unwrap_or_default();
    checks.push(
        format!("counting identity, {} trees of degree <= {max_degree}", trees.len()),
        counting_failures.is_empty(),
        format!("{} failures; first: {}", counting_failures.len(), first(&counting_failures)),
    );
    checks.push(
        format!("composition identity, {pairs} random (a, b)"),
        pairs >= 100 && composition_failures.is_empty(),
        format!("{} failures; first: {}", composition_failures.len(), first(&composition_failures)),
    );
    // the library entry point on a sample of pairs
    let mut sample_failures = 0;
    for _ in 0..20 {
        let s = trees.choose(rng).expect("nonempty");
        let candidates: Vec<&PlanarMonomial> = trees.iter().filter(|t| t.degree() <= s.degree()).collect();
        let t = candidates.choose(rng).expect("unit is always present");
        let (a, b) = (random_rational(rng), random_rational(rng));
        if !check_composition_identity(s, t, &a, &b) {
            sample_failures += 1;
        }
    }
    checks.push("check_composition_identity on 20 samples", sample_failures == 0, format!("{sample_failures} failures"));
}

fn random_polynomial(rng: &mut ChaCha8Rng, levels: &[Vec<PlanarMonomial>], terms: usize) -> TruncatedPlanarSeries<Rational> {
    let picks: Vec<(PlanarMonomial, Rational)> = (0..terms)
        .map(|_| {
            let level = &levels[rng.gen_range(0..levels.len())];
            (level.choose(rng).expect("levels are nonempty").clone(), random_nonzero_rational(rng))
        })
        .collect();
    TruncatedPlanarSeries::polynomial(picks)
}

fn path_independence(checks: &mut Checks, max_degree: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    let levels = enumerate_levels(max_degree, usize::MAX);
    let mut failures = Vec::new();
    for i in 0..50 {
        let f = random_polynomial(rng, &levels, 10);
        let (a, b) = (random_rational(rng), random_rational(rng));
        let at_a = rebase_polynomial(&f, &a)?;
        let two_step = rebase_between(&at_a, &b, f.trunc())?;
        let direct = rebase_polynomial(&f, &b)?;
        let back = rebase_between(&direct, &q(0, 1), f.trunc())?;
        if two_step.series != direct.series || back.series != f {
            failures.push(format!("polynomial {i} (degree {}), a={a}, b={b}", f.trunc()));
        }
    }
    checks.push("50 random polynomials, two-step equals direct", failures.is_empty(), failures.join("; "));
    Ok(())
}

fn translation(checks: &mut Checks) -> Result<()> {
    for (k, lambda, source) in [(2, 0.3, 14), (3, -0.2, 12)] {
        let report = translation_check(k, Complex64::new(lambda, 0.0), 6, source, 1e-6)?;
        checks.push(
            format!("exp_{k} around {lambda} from degree {source}"),
            report.passed,
            format!("max discrepancy {:.3e} (tolerance {:.0e})", report.max_discrepancy, report.tolerance),
        );
    }
    Ok(())
}

fn random_series(rng: &mut ChaCha8Rng, levels: &[Vec<PlanarMonomial>]) -> TruncatedPlanarSeries<Rational> {
    let trunc = levels.len() - 1;
    let mut terms = vec![(PlanarMonomial::unit(), random_nonzero_rational(rng))];
    for level in &levels[1..] {
        for t in level.choose_multiple(rng, 2) {
            terms.push((t.clone(), random_rational(rng)));
        }
    }
    TruncatedPlanarSeries::from_terms(terms, trunc).expect("degrees are within the truncation")
}

fn inverses(checks: &mut Checks, rng: &mut ChaCha8Rng) -> Result<()> {
    let levels = enumerate_levels(8, usize::MAX);
    let one = TruncatedPlanarSeries::one(8);
    let (mut left_bad, mut right_bad) = (0, 0);
    for _ in 0..50 {
        let f = random_series(rng, &levels);
        if f.left_inverse()?.mul2(&f) != one {
            left_bad += 1;
        }
        if f.mul2(&f.right_inverse()?) != one {
            right_bad += 1;
        }
    }
    checks.push("left_inverse(f) * f = 1, 50 series", left_bad == 0, format!("{left_bad} failures"));
    checks.push("f * right_inverse(f) = 1, 50 series", right_bad == 0, format!("{right_bad} failures"));

    let mut bad = Vec::new();
    for _ in 0..10 {
        let a = random_nonzero_rational(rng);
        let germ = PlanarAnalyticFunction::<Rational>::germ(&reciprocal_function(), &a, 8)?;
        let mut expected = Rational::one() / &a;
        for n in 0..=8 {
            if germ.coefficient(&comb(n))? != expected {
                bad.push(format!("a={a}, n={n}"));
            }
            expected = -expected / &a;
        }
        if germ.series.len() != 9 {
            bad.push(format!("a={a}: support has {} trees", germ.series.len()));
        }
    }
    checks.push("reciprocal germ is (-1)^n a^-(n+1) on combs", bad.is_empty(), bad.join("; "));
    Ok(())
}

fn radius_check(checks: &mut Checks, name: &str, estimate: &RadiusEstimate, range: Option<(f64, f64)>) {
    let detail = format!(
        "estimate {} ({}, window {}..={}, residual {:.2e})",
        estimate.radius, estimate.method, estimate.window.0, estimate.window.1, estimate.residual
    );
    let passed = match range {
        Some((lo, hi)) => (lo..=hi).contains(&estimate.radius),
        None => estimate.is_infinite(),
    };
    checks.push(name, passed, detail);
}

fn radius(checks: &mut Checks) -> Result<()> {
    let n = 16;
    let one = Complex64::new(1.0, 0.0);
    let g = MultiplicativeFamily::new(Complex64::zero(), one, 2, move |_, _| one);
    radius_check(checks, "g in [0.20, 0.30]", &estimate_radius(&g.majorants(n))?, Some((0.20, 0.30)));
    let exp2 = exp_family::<Complex64>(2, n)?;
    radius_check(checks, "exp_2 is entire", &estimate_radius(&exp2.majorants(n))?, None);
    let sqrt = sqrt_function().majorants(&Complex64::new(1.0, 0.0), n)?;
    radius_check(checks, "sqrt germ at 1 in [0.85, 1.15]", &estimate_radius(&sqrt)?, Some((0.85, 1.15)));
    let zeta = zeta_graded(&ZetaGermSpec::new(Complex64::new(3.0, 0.0), n))?.majorants();
    radius_check(checks, "zeta germ at 3 in [1.7, 2.3]", &estimate_radius(&zeta)?, Some((1.7, 2.3)));
    Ok(())
}

fn special_kernels(checks: &mut Checks) -> Result<()> {
    let s0 = zeta_deriv(0, Complex64::new(2.0, 0.0))?;
    let pi2 = std::f64::consts::PI.powi(2) / 6.0;
    let err = (s0 - pi2).norm();
    checks.push("S_0(2) = pi^2/6", err <= 1e-10, format!("error {err:.3e}"));

    let mut worst: f64 = 0.0;
    for r in [0.5, 1.5, 2.5] {
        let r = Complex64::new(r, 0.0);
        let reference = gamma_derivatives_by_recursion(4, r)?;
        for (d, want) in reference.iter().enumerate() {
            let got = gamma_deriv(d, r)?;
            worst = worst.max((got - want).norm() / want.norm());
        }
    }
    checks.push("gamma quadrature vs polygamma recursion, d <= 4", worst <= 1e-8, format!("max relative error {worst:.3e}"));

    let source = zeta_graded(&ZetaGermSpec::new(Complex64::new(3.0, 0.0), 40))?;
    let target = Complex64::new(2.2, 0.0);
    let moved = zeta_continue(&source, target, 4)?.to_germ(4)?;
    let direct = zeta_graded(&ZetaGermSpec::new(target, 4))?.to_germ(4)?;
    let diff = moved.series.max_abs_difference(&direct.series);
    checks.push("zeta germ continued 3 -> 2.2 matches direct", diff <= 1e-3, format!("max difference {diff:.3e} at trunc 4"));
    Ok(())
}

fn gamma_shift(checks: &mut Checks) -> Result<()> {
    let report = gamma_shift_probe(Complex64::new(1.5, 0.0), 3, 2)?;
    let low = (0..=2).map(|d| report.max_rel_difference(d)).fold(0.0, f64::max);
    checks.push("agreement through degree 2", low <= 1e-8, format!("max relative difference {low:.3e}"));
    for name in ["((x,x),x)", "(x,(x,x))"] {
        let t = tree(name)?;
        let rel = report.rows.iter().find(|row| row.tree == t).map(|row| row.rel_difference()).unwrap_or(0.0);
        checks.push(format!("difference at {name}"), rel > 1e-3, format!("relative difference {rel:.3e}"));
    }
    Ok(())
}
