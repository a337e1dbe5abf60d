//! Change of expansion point.
//!
//! Substituting `x = a + y` into a monomial `x^U` expands every leaf into
//! `a·1 + y`; multiplying out with unit absorption gives
//! `Σ_I a^(deg U - |I|) y^(U|I)`, i.e. `Σ_T (U/T) a^(deg U - deg T) y^T`.
//! The expansion of a series is therefore
//!
//! ```text
//! γ_T(a) = Σ_U ⟨f, x^U⟩ (U/T) a^(deg U - deg T)
//! ```
//!
//! The binomial counts are not evaluated pair by pair: the count vector of a
//! node is the truncated grafting product of the count vectors of its
//! children, and source terms are grouped by degree so each power of `a` is
//! applied once per target.

use std::collections::HashMap;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{powers, TruncatedPlanarSeries};
use crate::trees::{classical_binomial, enumerate_levels, BinomCounter, PlanarMonomial, Shape, TreeRef};

/// A series in powers of `x - base`.
#[derive(Clone, Debug, PartialEq)]
pub struct Germ<S> {
    pub base: S,
    pub series: TruncatedPlanarSeries<S>,
}

impl<S: Scalar> Germ<S> {
    pub fn new(base: S, series: TruncatedPlanarSeries<S>) -> Self {
        Germ { base, series }
    }

    pub fn trunc(&self) -> usize {
        self.series.trunc()
    }

    /// `⟨f, (x - a)^T⟩`.
    pub fn coefficient(&self, tree: &PlanarMonomial) -> Result<S> {
        self.series.coefficient(tree)
    }
}

/// Bookkeeping for a truncated expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct RebaseReport {
    /// Highest source degree used.
    pub source_trunc: usize,
    pub output_trunc: usize,
    /// Summed size of the contributions of the highest source degree,
    /// `M_N Σ_{j ≤ N_out} C(N, j) |a|^(N - j)`; a proxy for the size of the
    /// discarded tail.
    pub last_degree_contribution: f64,
    /// `Σ_{d > N} M_d Σ_{j ≤ N_out} C(d, j) |a|^(d - j)` over the extra
    /// majorants supplied by the caller, if any.
    pub tail_bound: Option<f64>,
}

/// Exact expansion of a polynomial around `a`. The output keeps the
/// polynomial's truncation; rebasing back by `-a` recovers the input.
pub fn rebase_polynomial<S: Scalar>(f: &TruncatedPlanarSeries<S>, a: &S) -> Result<Germ<S>> {
    if !f.is_polynomial() {
        return Err(Error::NotPolynomial);
    }
    let series = Expander::new(a.clone(), f.trunc()).expand(f)?.into_polynomial();
    Ok(Germ::new(a.clone(), series))
}

/// Truncated expansion of `f` around `a` through degree `output_trunc`,
/// summing the source terms of degree at most `f.trunc()`.
pub fn rebase_series<S: Scalar>(f: &TruncatedPlanarSeries<S>, a: &S, output_trunc: usize) -> Result<Germ<S>> {
    rebase_series_with_report(f, a, output_trunc, None).map(|(g, _)| g)
}

/// As [`rebase_series`], also reporting truncation diagnostics.
/// `extra_majorants[i]` is the majorant of source degree `f.trunc() + 1 + i`.
pub fn rebase_series_with_report<S: Scalar>(
    f: &TruncatedPlanarSeries<S>,
    a: &S,
    output_trunc: usize,
    extra_majorants: Option<&[f64]>,
) -> Result<(Germ<S>, RebaseReport)> {
    if output_trunc > f.trunc() {
        return Err(Error::TruncationExceedsSource { requested: output_trunc, available: f.trunc() });
    }
    let series = Expander::new(a.clone(), output_trunc).expand(f)?;
    let radius = a.modulus();
    let spread = |d: usize| -> f64 {
        (0..=output_trunc.min(d))
            .map(|j| classical_binomial(d, j) as f64 * radius.powi((d - j) as i32))
            .sum()
    };
    let source = f.trunc();
    let majorants = f.majorants();
    let report = RebaseReport {
        source_trunc: source,
        output_trunc,
        last_degree_contribution: majorants[source] * spread(source),
        tail_bound: extra_majorants.map(|m| {
            m.iter().enumerate().map(|(i, &md)| md * spread(source + 1 + i)).sum()
        }),
    };
    Ok((Germ::new(a.clone(), series), report))
}

/// Re-expands a germ at `a` around `b`.
pub fn rebase_between<S: Scalar>(germ: &Germ<S>, b: &S, output_trunc: usize) -> Result<Germ<S>> {
    let step = b.clone() - &germ.base;
    let shifted = rebase_series(&germ.series, &step, output_trunc)?;
    Ok(Germ::new(b.clone(), shifted.series))
}

/// Highest source degree accepted by [`Expander`]; binomial counts of trees
/// up to this degree fit in 64 bits.
pub const MAX_SOURCE_DEGREE: usize = 66;

/// Sparse vector of planar binomial counts `(U/T)` indexed by target tree.
#[derive(Debug, Default)]
struct Counts {
    index: Vec<u32>,
    count: Vec<u64>,
}

struct Pending<'f, S> {
    prefix: &'f [u8],
    degree: usize,
    forests: Vec<(u32, u64)>,
    weights: Vec<S>,
    seen: Vec<bool>,
    touched: Vec<u32>,
}

/// Substitution `x ↦ a + y` truncated at a fixed output degree.
///
/// For each source monomial `U` the vector `T ↦ (U/T)` is built from the
/// vectors of its root children: grafting a sequence of children expands
/// into grafting every sequence of their contractions. Sequences are tracked
/// as forests (ordered lists of non-unit trees) through a precomputed
/// transition table. Count vectors of inner subtrees are memoized; they do
/// not depend on `a`.
pub struct Expander<S> {
    a: S,
    trunc: usize,
    basis: Vec<PlanarMonomial>,
    degree_start: Vec<usize>,
    forest_degree: Vec<usize>,
    forest_tree: Vec<u32>,
    forest_next: Vec<Vec<u32>>,
    memo: HashMap<Box<[u8]>, Rc<Counts>>,
    unit_counts: Rc<Counts>,
    leaf_counts: Rc<Counts>,
    memo_entries: usize,
    memo_budget: usize,
    forest_buf: Vec<u64>,
    tree_buf: Vec<u64>,
    touched_buf: Vec<u32>,
}

impl<S: Scalar> Expander<S> {
    pub fn new(a: S, trunc: usize) -> Self {
        let levels = enumerate_levels(trunc, usize::MAX);
        let mut degree_start = Vec::with_capacity(trunc + 2);
        let mut basis = Vec::new();
        for level in levels {
            degree_start.push(basis.len());
            basis.extend(level);
        }
        degree_start.push(basis.len());
        let index: HashMap<&[u8], u32> = basis.iter().enumerate().map(|(i, t)| (t.code(), i as u32)).collect();

        // forest 0 is the empty sequence
        let mut forest_codes: Vec<Vec<u32>> = vec![Vec::new()];
        let mut forest_degree = vec![0];
        let mut forest_next: Vec<Vec<u32>> = Vec::new();
        let mut lookup: HashMap<Vec<u32>, u32> = HashMap::from([(Vec::new(), 0)]);
        let mut f = 0;
        while f < forest_codes.len() {
            let room = trunc - forest_degree[f];
            let limit = degree_start[room + 1];
            let mut row = Vec::with_capacity(limit);
            row.push(f as u32);
            for t in 1..limit {
                let mut seq = forest_codes[f].clone();
                seq.push(t as u32);
                let next_id = *lookup.entry(seq.clone()).or_insert_with(|| {
                    forest_codes.push(seq);
                    forest_degree.push(forest_degree[f] + basis[t].degree());
                    (forest_codes.len() - 1) as u32
                });
                row.push(next_id);
            }
            forest_next.push(row);
            f += 1;
        }
        let forest_tree = forest_codes
            .iter()
            .map(|seq| match seq.len() {
                0 => 0,
                1 => seq[0],
                m => {
                    let mut code = vec![m as u8];
                    for &t in seq {
                        code.extend_from_slice(basis[t as usize].code());
                    }
                    index[code.as_slice()]
                }
            })
            .collect();
        let (forests, trees) = (forest_codes.len(), basis.len());
        Expander {
            a,
            trunc,
            basis,
            degree_start,
            forest_degree,
            forest_tree,
            forest_next,
            memo: HashMap::new(),
            unit_counts: Rc::new(Counts { index: vec![0], count: vec![1] }),
            leaf_counts: Rc::new(if trunc >= 1 {
                Counts { index: vec![0, 1], count: vec![1, 1] }
            } else {
                Counts { index: vec![0], count: vec![1] }
            }),
            memo_entries: 0,
            memo_budget: 1 << 25,
            forest_buf: vec![0; forests],
            tree_buf: vec![0; trees],
            touched_buf: Vec::new(),
        }
    }

    /// Target trees of degree `d`.
    pub fn basis_level(&self, d: usize) -> &[PlanarMonomial] {
        &self.basis[self.degree_start[d]..self.degree_start[d + 1]]
    }

    /// `(a + y)^U` truncated: coefficients `(U/T) a^(deg U - deg T)`.
    pub fn expand_monomial(&mut self, tree: &PlanarMonomial) -> Result<TruncatedPlanarSeries<S>> {
        self.expand(&TruncatedPlanarSeries::monomial(tree.clone(), S::one(), tree.degree())?)
    }

    /// `Σ_U γ_U (a + y)^U` truncated.
    pub fn expand(&mut self, f: &TruncatedPlanarSeries<S>) -> Result<TruncatedPlanarSeries<S>> {
        let top = f.degree().unwrap_or(0);
        if top > MAX_SOURCE_DEGREE {
            return Err(Error::OutOfDomain(format!(
                "rebasing supports source degrees up to {MAX_SOURCE_DEGREE}, got {top}"
            )));
        }
        // by_degree[d][T] = Σ_{deg U = d} γ_U (U/T)
        let mut by_degree: Vec<Vec<S>> = vec![Vec::new(); top + 1];
        // Monomials that differ only in their last root child are adjacent
        // in the term order; their last children are summed into `pending`
        // and grafted onto the shared prefix once.
        let mut pending = Pending {
            prefix: &[],
            degree: 0,
            forests: Vec::new(),
            weights: vec![S::zero(); self.basis.len()],
            seen: vec![false; self.basis.len()],
            touched: Vec::new(),
        };
        for (tree, c) in f.terms() {
            let degree = tree.degree();
            if by_degree[degree].is_empty() {
                by_degree[degree] = vec![S::zero(); self.basis.len()];
            }
            match tree.shape() {
                Shape::Unit => by_degree[0][0] += c,
                Shape::Leaf => {
                    by_degree[1][0] += c;
                    if self.trunc >= 1 {
                        by_degree[1][1] += c;
                    }
                }
                Shape::Node(children) => {
                    let children: Vec<TreeRef<'_>> = children.collect();
                    let last = children[children.len() - 1];
                    let prefix = &tree.code()[..tree.code().len() - last.code().len()];
                    if prefix != pending.prefix || degree != pending.degree {
                        self.flush(&mut pending, &mut by_degree);
                        let parts: Vec<Rc<Counts>> = children[..children.len() - 1].iter().map(|ch| self.counts(*ch)).collect();
                        self.graft_forests(&parts, &mut pending.forests);
                        pending.prefix = prefix;
                        pending.degree = degree;
                    }
                    let counts = self.counts(last);
                    for (&t, &k) in counts.index.iter().zip(&counts.count) {
                        if !std::mem::replace(&mut pending.seen[t as usize], true) {
                            pending.touched.push(t);
                        }
                        let slot = &mut pending.weights[t as usize];
                        if k == 1 {
                            *slot += c;
                        } else {
                            *slot += &(c.clone() * &S::from_i64(k as i64));
                        }
                    }
                }
            }
        }
        self.flush(&mut pending, &mut by_degree);
        let a_powers = powers(&self.a, top);
        let mut out = TruncatedPlanarSeries::zero(self.trunc);
        for (i, t) in self.basis.iter().enumerate() {
            let mut sum = S::zero();
            for (d, row) in by_degree.iter().enumerate().skip(t.degree()) {
                if let Some(v) = row.get(i) {
                    if !v.is_zero() {
                        sum += &(v.clone() * &a_powers[d - t.degree()]);
                    }
                }
            }
            out.insert(t.clone(), sum);
        }
        Ok(out)
    }

    /// Count vector of an inner subtree, memoized.
    fn counts(&mut self, tree: TreeRef<'_>) -> Rc<Counts> {
        match tree.shape() {
            Shape::Unit => Rc::clone(&self.unit_counts),
            Shape::Leaf => Rc::clone(&self.leaf_counts),
            Shape::Node(children) => {
                if let Some(c) = self.memo.get(tree.code()) {
                    return Rc::clone(c);
                }
                let parts: Vec<Rc<Counts>> = children.map(|ch| self.counts(ch)).collect();
                let mut forests = Vec::new();
                self.graft_forests(&parts, &mut forests);
                let mut touched = Vec::new();
                for &(g, k) in &forests {
                    let t = self.forest_tree[g as usize] as usize;
                    if self.tree_buf[t] == 0 {
                        touched.push(t as u32);
                    }
                    self.tree_buf[t] += k;
                }
                touched.sort_unstable();
                let count = touched.iter().map(|&t| std::mem::take(&mut self.tree_buf[t as usize])).collect();
                let c = Rc::new(Counts { index: touched, count });
                if self.memo_entries < self.memo_budget {
                    self.memo_entries += c.index.len();
                    self.memo.insert(tree.code().into(), Rc::clone(&c));
                }
                c
            }
        }
    }

    fn flush(&self, pending: &mut Pending<'_, S>, by_degree: &mut [Vec<S>]) {
        if pending.touched.is_empty() {
            return;
        }
        pending.touched.sort_unstable();
        let row = &mut by_degree[pending.degree];
        for &(f, k) in &pending.forests {
            let k = S::from_i64(k as i64);
            let room = self.trunc - self.forest_degree[f as usize];
            let limit = self.degree_start[room + 1] as u32;
            let next = &self.forest_next[f as usize];
            for &t in &pending.touched {
                if t >= limit {
                    break;
                }
                let w = &pending.weights[t as usize];
                if !w.is_zero() {
                    let g = next[t as usize] as usize;
                    row[self.forest_tree[g] as usize] += &(w.clone() * &k);
                }
            }
        }
        for &t in &pending.touched {
            pending.weights[t as usize] = S::zero();
            pending.seen[t as usize] = false;
        }
        pending.touched.clear();
    }

    /// Forests reachable by choosing one contraction of each part in turn,
    /// with multiplicities.
    fn graft_forests(&mut self, parts: &[Rc<Counts>], current: &mut Vec<(u32, u64)>) {
        current.clear();
        let Some((first, rest)) = parts.split_first() else {
            current.push((0, 1));
            return;
        };
        let limit = self.degree_start[self.trunc + 1] as u32;
        for (&t, &k) in first.index.iter().zip(&first.count) {
            if t >= limit {
                break;
            }
            current.push((self.forest_next[0][t as usize], k));
        }
        let mut touched = std::mem::take(&mut self.touched_buf);
        for part in rest {
            for &(f, c) in current.iter() {
                let room = self.trunc - self.forest_degree[f as usize];
                let limit = self.degree_start[room + 1] as u32;
                let row = &self.forest_next[f as usize];
                for (&t, &k) in part.index.iter().zip(&part.count) {
                    if t >= limit {
                        break;
                    }
                    let g = row[t as usize] as usize;
                    if self.forest_buf[g] == 0 {
                        touched.push(g as u32);
                    }
                    self.forest_buf[g] += c * k;
                }
            }
            current.clear();
            for &g in &touched {
                current.push((g, std::mem::take(&mut self.forest_buf[g as usize])));
            }
            touched.clear();
        }
        self.touched_buf = touched;
    }
}

/// Reference evaluation of `Σ_U γ_U (U/T) a^(deg U - deg T)` with explicit
/// planar binomial coefficients; quadratic in the support, for small inputs.
pub fn rebase_by_binomials<S: Scalar>(f: &TruncatedPlanarSeries<S>, a: &S, output_trunc: usize) -> TruncatedPlanarSeries<S> {
    let targets: Vec<PlanarMonomial> = enumerate_levels(output_trunc, usize::MAX).into_iter().flatten().collect();
    let a_powers = powers(a, f.trunc());
    let mut counter = BinomCounter::new();
    let mut out = TruncatedPlanarSeries::zero(output_trunc);
    let terms: Vec<(&PlanarMonomial, &S)> = f.terms().collect();
    for target in &targets {
        let mut sum = S::zero();
        for (u, c) in &terms {
            if u.degree() < target.degree() {
                continue;
            }
            let b = counter.count(u.as_ref(), target.as_ref());
            if b != 0 {
                let weight = S::from_i64(b as i64) * &a_powers[u.degree() - target.degree()];
                sum += &(weight * *c);
            }
        }
        out.insert(target.clone(), sum);
    }
    out
}

/// Both sides of
/// `Σ_U (S/U)(U/T) a^(n - deg U) (b - a)^(deg U - m) = (S/T) b^(n - m)`
/// with `n = deg S`, `m = deg T` and `0^0 = 1`.
pub fn composition_identity_sides<S: Scalar>(s: &PlanarMonomial, t: &PlanarMonomial, a: &S, b: &S) -> (S, S) {
    let (n, m) = (s.degree(), t.degree());
    let mut counter = BinomCounter::new();
    if m > n {
        return (S::zero(), S::zero());
    }
    let step = b.clone() - a;
    let mut lhs = S::zero();
    let levels = enumerate_levels(n, usize::MAX);
    for level in &levels[m..=n] {
        for u in level {
            let su = counter.count(s.as_ref(), u.as_ref());
            if su == 0 {
                continue;
            }
            let ut = counter.count(u.as_ref(), t.as_ref());
            if ut == 0 {
                continue;
            }
            let k = u.degree();
            let w = S::from_i64((su * ut) as i64) * &a.powi(n - k) * &step.powi(k - m);
            lhs += &w;
        }
    }
    let st = counter.count(s.as_ref(), t.as_ref());
    let rhs = S::from_i64(st as i64) * &b.powi(n - m);
    (lhs, rhs)
}

/// Whether the planar binomial composition identity holds exactly.
pub fn check_composition_identity<S: Scalar>(s: &PlanarMonomial, t: &PlanarMonomial, a: &S, b: &S) -> bool {
    let (lhs, rhs) = composition_identity_sides(s, t, a, b);
    lhs == rhs
}
