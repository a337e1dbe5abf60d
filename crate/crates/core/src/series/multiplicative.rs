//! Series whose coefficients factor over the vertices of the tree.
//!
//! `γ_1 = u`, `γ_x = ℓ`, and `γ_(S1,...,Sm) = w(m, n) · Π γ_Si` where `n` is
//! the degree of the node. Degree sums and majorants of such a series obey
//! a recursion over compositions of the degree, so they can be computed far
//! beyond the degrees where the series itself fits in memory.

use std::fmt;
use std::sync::Arc;

use super::TruncatedPlanarSeries;
use crate::scalar::Scalar;
use crate::trees::{build_levels, PlanarMonomial, Shape, TreeRef};

type Weight<S> = Arc<dyn Fn(usize, usize) -> S + Send + Sync>;

#[derive(Clone)]
pub struct MultiplicativeFamily<S> {
    unit: S,
    leaf: S,
    max_arity: usize,
    weight: Weight<S>,
}

impl<S: fmt::Debug> fmt::Debug for MultiplicativeFamily<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplicativeFamily")
            .field("unit", &self.unit)
            .field("leaf", &self.leaf)
            .field("max_arity", &self.max_arity)
            .finish_non_exhaustive()
    }
}

impl<S: Scalar> MultiplicativeFamily<S> {
    /// `weight(m, n)` is the factor of a vertex with `m` children and `n`
    /// leaves below it; vertices of arity above `max_arity` have weight zero.
    pub fn new<W>(unit: S, leaf: S, max_arity: usize, weight: W) -> Self
    where
        W: Fn(usize, usize) -> S + Send + Sync + 'static,
    {
        MultiplicativeFamily { unit, leaf, max_arity, weight: Arc::new(weight) }
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn coefficient(&self, tree: &PlanarMonomial) -> S {
        self.coefficient_ref(tree.as_ref())
    }

    fn coefficient_ref(&self, tree: TreeRef<'_>) -> S {
        match tree.shape() {
            Shape::Unit => self.unit.clone(),
            Shape::Leaf => self.leaf.clone(),
            Shape::Node(children) => {
                let m = children.len();
                if m > self.max_arity {
                    return S::zero();
                }
                children.fold((self.weight)(m, tree.degree()), |acc, c| acc * &self.coefficient_ref(c))
            }
        }
    }

    /// All coefficients through degree `n`.
    pub fn series(&self, n: usize) -> TruncatedPlanarSeries<S> {
        let levels = build_levels(n, self.max_arity, self.unit.clone(), self.leaf.clone(), |m, d, children| {
            children.iter().fold((self.weight)(m, d), |acc, c| acc * *c)
        });
        let terms = levels.into_iter().flatten().filter(|(_, c)| !c.is_zero()).collect();
        TruncatedPlanarSeries { terms, trunc: n, polynomial: false }
    }

    /// Classical image `Σ_{deg T = d} γ_T` for `d = 0..=n`.
    pub fn degree_sums(&self, n: usize) -> Vec<S> {
        composition_recursion(
            n,
            self.max_arity,
            self.unit.clone(),
            self.leaf.clone(),
            |m, d| (self.weight)(m, d),
        )
    }

    /// Majorants `Σ_{deg T = d} |γ_T|` for `d = 0..=n`.
    pub fn majorants(&self, n: usize) -> Vec<f64> {
        composition_recursion(n, self.max_arity, self.unit.modulus(), self.leaf.modulus(), |m, d| {
            (self.weight)(m, d).modulus()
        })
    }
}

/// `D_0 = unit`, `D_1 = leaf`, `D_n = Σ_m w(m, n) Σ_{n1+..+nm = n} Π D_ni`.
fn composition_recursion<T, W>(n: usize, max_arity: usize, unit: T, leaf: T, weight: W) -> Vec<T>
where
    T: Clone + num_traits::Zero + std::ops::Mul<Output = T>,
    W: Fn(usize, usize) -> T,
{
    let mut d = vec![unit];
    if n == 0 {
        return d;
    }
    d.push(leaf);
    let max_arity = max_arity.min(n);
    // powers[m][j]: sum over compositions of j into m positive parts of Π D
    let mut powers: Vec<Vec<T>> = vec![vec![T::zero(); n + 1]; max_arity + 1];
    powers[1][1] = d[1].clone();
    for degree in 2..=n {
        for m in 2..=max_arity.min(degree) {
            let mut acc = T::zero();
            for first in 1..=degree - m + 1 {
                acc = acc + d[first].clone() * powers[m - 1][degree - first].clone();
            }
            powers[m][degree] = acc;
        }
        let mut value = T::zero();
        for m in 2..=max_arity.min(degree) {
            value = value + weight(m, degree) * powers[m][degree].clone();
        }
        powers[1][degree] = value.clone();
        d.push(value);
    }
    d
}
