//! Finite reduced planar rooted trees.
//!
//! A tree is stored as its preorder arity sequence: a leaf contributes `0`
//! and an internal vertex contributes its number of children. The unit
//! (empty tree) is the empty sequence. Because the sequence of a complete
//! tree is prefix-free, comparing `(degree, sequence)` lexicographically
//! gives the canonical order used by every deterministic output.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A reduced planar rooted tree, the unit, or the single leaf.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanarMonomial {
    degree: u16,
    code: Box<[u8]>,
}

/// Borrowed view of a (sub)tree inside a preorder code.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeRef<'a>(&'a [u8]);

/// Top-level structure of a tree.
pub enum Shape<'a> {
    Unit,
    Leaf,
    Node(Children<'a>),
}

/// Iterator over the immediate subtrees of a node.
#[derive(Clone)]
pub struct Children<'a> {
    rest: &'a [u8],
    remaining: usize,
}

impl<'a> Iterator for Children<'a> {
    type Item = TreeRef<'a>;

    fn next(&mut self) -> Option<TreeRef<'a>> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let len = subtree_len(self.rest);
        let (head, tail) = self.rest.split_at(len);
        self.rest = tail;
        Some(TreeRef(head))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for Children<'_> {}

fn subtree_len(code: &[u8]) -> usize {
    let mut open = 1usize;
    let mut pos = 0;
    while open > 0 {
        open = open - 1 + code[pos] as usize;
        pos += 1;
    }
    pos
}

impl<'a> TreeRef<'a> {
    pub fn code(self) -> &'a [u8] {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.iter().filter(|&&a| a == 0).count()
    }

    pub fn is_unit(self) -> bool {
        self.0.is_empty()
    }

    pub fn is_leaf(self) -> bool {
        self.0 == [0]
    }

    /// Number of children of the root; zero for the unit and the leaf.
    pub fn arity(self) -> usize {
        self.0.first().copied().unwrap_or(0) as usize
    }

    pub fn shape(self) -> Shape<'a> {
        match self.0.first() {
            None => Shape::Unit,
            Some(0) => Shape::Leaf,
            Some(&m) => Shape::Node(Children { rest: &self.0[1..], remaining: m as usize }),
        }
    }

    pub fn children(self) -> Children<'a> {
        match self.0.first() {
            Some(&m) if m > 0 => Children { rest: &self.0[1..], remaining: m as usize },
            _ => Children { rest: &[], remaining: 0 },
        }
    }

    pub fn to_monomial(self) -> PlanarMonomial {
        PlanarMonomial::from_code_unchecked(self.0.to_vec())
    }
}

impl PlanarMonomial {
    pub(crate) fn from_code_unchecked(code: Vec<u8>) -> Self {
        let degree = code.iter().filter(|&&a| a == 0).count();
        PlanarMonomial { degree: degree as u16, code: code.into_boxed_slice() }
    }

    /// Builds a tree from a preorder arity sequence, validating it.
    pub fn from_code(code: Vec<u8>) -> Result<Self> {
        if !code.is_empty() {
            let mut open = 1usize;
            for (pos, &a) in code.iter().enumerate() {
                if open == 0 {
                    return Err(Error::Parse { position: pos, message: "trailing data".into() });
                }
                if a == 1 {
                    return Err(Error::Unreduced(1));
                }
                open = open - 1 + a as usize;
            }
            if open != 0 {
                return Err(Error::Parse { position: code.len(), message: "incomplete tree".into() });
            }
        }
        Ok(Self::from_code_unchecked(code))
    }

    /// Sorts before every tree of degree `d` and after every tree of lower
    /// degree; used as a range bound, never stored.
    pub(crate) fn degree_floor(d: usize) -> Self {
        PlanarMonomial { degree: d as u16, code: Box::new([]) }
    }

    pub fn unit() -> Self {
        Self::from_code_unchecked(Vec::new())
    }

    pub fn leaf() -> Self {
        Self::from_code_unchecked(vec![0])
    }

    /// A node with the given children, which must be at least two non-unit trees.
    pub fn node<I>(children: I) -> Result<Self>
    where
        I: IntoIterator<Item = PlanarMonomial>,
    {
        let children: Vec<_> = children.into_iter().collect();
        if children.len() < 2 {
            return Err(Error::Unreduced(children.len()));
        }
        if children.len() > u8::MAX as usize {
            return Err(Error::ArityTooLarge(children.len()));
        }
        if children.iter().any(PlanarMonomial::is_unit) {
            return Err(Error::UnitChild);
        }
        Ok(Self::graft(children.iter().map(PlanarMonomial::as_ref)))
    }

    /// Multilinear grafting with unit absorption: units are dropped, a single
    /// survivor is returned as is, and two or more survivors become the
    /// children of a new root.
    pub fn graft<'a, I>(factors: I) -> Self
    where
        I: IntoIterator<Item = TreeRef<'a>>,
    {
        let factors: Vec<TreeRef<'a>> = factors.into_iter().filter(|t| !t.is_unit()).collect();
        match factors.len() {
            0 => Self::unit(),
            1 => factors[0].to_monomial(),
            m => {
                assert!(m <= u8::MAX as usize, "grafting arity {m} exceeds 255");
                let len: usize = factors.iter().map(|t| t.0.len()).sum();
                let mut code = Vec::with_capacity(len + 1);
                code.push(m as u8);
                for f in &factors {
                    code.extend_from_slice(f.0);
                }
                let degree: usize = factors.iter().map(|t| t.degree()).sum();
                PlanarMonomial { degree: degree as u16, code: code.into_boxed_slice() }
            }
        }
    }

    /// The binary grafting product of two monomials.
    pub fn product(&self, other: &PlanarMonomial) -> Self {
        Self::graft([self.as_ref(), other.as_ref()])
    }

    pub fn as_ref(&self) -> TreeRef<'_> {
        TreeRef(&self.code)
    }

    pub fn code(&self) -> &[u8] {
        &self.code
    }

    /// Number of leaves.
    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn is_unit(&self) -> bool {
        self.code.is_empty()
    }

    pub fn is_leaf(&self) -> bool {
        *self.code == [0]
    }

    pub fn arity(&self) -> usize {
        self.as_ref().arity()
    }

    pub fn shape(&self) -> Shape<'_> {
        self.as_ref().shape()
    }

    pub fn children(&self) -> Children<'_> {
        self.as_ref().children()
    }

    /// The two factors when the root is binary.
    pub fn binary_split(&self) -> Option<(TreeRef<'_>, TreeRef<'_>)> {
        if self.arity() != 2 {
            return None;
        }
        let mut ch = self.children();
        Some((ch.next()?, ch.next()?))
    }

    /// Largest root arity of any vertex; zero for the unit and the leaf.
    pub fn max_arity(&self) -> usize {
        self.code.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn is_binary(&self) -> bool {
        self.code.iter().all(|&a| a == 0 || a == 2)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut parser = Parser { bytes: text.as_bytes(), pos: 0 };
        parser.skip_spaces();
        let tree = parser.tree(true)?;
        parser.skip_spaces();
        if parser.pos != parser.bytes.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(tree)
    }
}

impl FromStr for PlanarMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for TreeRef<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape() {
            Shape::Unit => f.write_str("1"),
            Shape::Leaf => f.write_str("x"),
            Shape::Node(children) => {
                f.write_str("(")?;
                for (i, c) in children.enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for PlanarMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_ref().fmt(f)
    }
}

impl fmt::Debug for PlanarMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlanarMonomial({self})")
    }
}

impl fmt::Debug for TreeRef<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreeRef({self})")
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse { position: self.pos, message: message.into() }
    }

    fn skip_spaces(&mut self) {
        while self.bytes.get(self.pos) == Some(&b' ') {
            self.pos += 1;
        }
    }

    fn tree(&mut self, top_level: bool) -> Result<PlanarMonomial> {
        match self.bytes.get(self.pos) {
            Some(b'1') => {
                if !top_level {
                    return Err(Error::UnitChild);
                }
                self.pos += 1;
                Ok(PlanarMonomial::unit())
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(PlanarMonomial::leaf())
            }
            Some(b'(') => {
                self.pos += 1;
                let mut children = Vec::new();
                loop {
                    self.skip_spaces();
                    children.push(self.tree(false)?);
                    self.skip_spaces();
                    match self.bytes.get(self.pos) {
                        Some(b',') => self.pos += 1,
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.error("expected ',' or ')'")),
                    }
                }
                PlanarMonomial::node(children)
            }
            _ => Err(self.error("expected '1', 'x' or '('")),
        }
    }
}

/// A set of leaf positions (0-based, left to right) of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafSubset {
    monomial: PlanarMonomial,
    indices: Vec<usize>,
}

impl LeafSubset {
    pub fn new(monomial: &PlanarMonomial, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        if let Some(&bad) = indices.iter().find(|&&i| i >= monomial.degree()) {
            return Err(Error::LeafIndex { index: bad, degree: monomial.degree() });
        }
        Ok(LeafSubset { monomial: monomial.clone(), indices })
    }

    pub fn all(monomial: &PlanarMonomial) -> Self {
        LeafSubset { monomial: monomial.clone(), indices: (0..monomial.degree()).collect() }
    }

    pub fn monomial(&self) -> &PlanarMonomial {
        &self.monomial
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Restriction of a tree to a set of its leaves.
///
/// Children without selected leaves are dropped and a vertex left with one
/// surviving child is replaced by that child. The empty selection gives the
/// unit.
pub fn contract(subset: &LeafSubset) -> PlanarMonomial {
    let mut mask = vec![false; subset.monomial.degree()];
    for &i in &subset.indices {
        mask[i] = true;
    }
    contract_mask(subset.monomial.as_ref(), &mask)
}

/// Like [`contract`] with a boolean mask over the leaves of `tree`.
pub fn contract_mask(tree: TreeRef<'_>, mask: &[bool]) -> PlanarMonomial {
    fn go(tree: TreeRef<'_>, mask: &[bool], offset: &mut usize, out: &mut Vec<u8>) -> bool {
        match tree.shape() {
            Shape::Unit => false,
            Shape::Leaf => {
                let keep = mask[*offset];
                *offset += 1;
                if keep {
                    out.push(0);
                }
                keep
            }
            Shape::Node(children) => {
                let start = out.len();
                out.push(0);
                let mut kept = 0u8;
                for c in children {
                    if go(c, mask, offset, out) {
                        kept += 1;
                    }
                }
                match kept {
                    0 => {
                        out.truncate(start);
                        false
                    }
                    1 => {
                        out.remove(start);
                        true
                    }
                    m => {
                        out[start] = m;
                        true
                    }
                }
            }
        }
    }
    assert_eq!(mask.len(), tree.degree(), "mask length must equal the degree");
    let mut out = Vec::new();
    let mut offset = 0;
    go(tree, mask, &mut offset, &mut out);
    PlanarMonomial::from_code_unchecked(out)
}

/// The right comb of degree `n`: `comb(1) = x`, `comb(n + 1) = comb(n) · x`.
/// By convention `comb(0)` is the unit.
pub fn comb(n: usize) -> PlanarMonomial {
    if n == 0 {
        return PlanarMonomial::unit();
    }
    let mut code = vec![2u8; n - 1];
    code.resize(2 * n - 1, 0);
    PlanarMonomial::from_code_unchecked(code)
}

/// All trees of degree exactly `n` in canonical order; `enumerate(0)` is `[1]`.
pub fn enumerate(n: usize) -> Vec<PlanarMonomial> {
    enumerate_bounded(n, usize::MAX)
}

/// All full binary trees of degree `n`.
pub fn enumerate_binary(n: usize) -> Vec<PlanarMonomial> {
    enumerate_bounded(n, 2)
}

/// Trees of degree `n` whose vertices all have arity at most `max_arity`.
pub fn enumerate_bounded(n: usize, max_arity: usize) -> Vec<PlanarMonomial> {
    enumerate_levels(n, max_arity).pop().unwrap_or_default()
}

/// Levels `0..=n` of [`enumerate_bounded`].
pub fn enumerate_levels(n: usize, max_arity: usize) -> Vec<Vec<PlanarMonomial>> {
    build_levels(n, max_arity, (), (), |_, _, _| ())
        .into_iter()
        .map(|level| level.into_iter().map(|(t, _)| t).collect())
        .collect()
}

/// Enumerates levels `0..=n` in canonical order while computing a value per
/// tree from the values of its root children. `node(m, d, children)` gives
/// the value of a tree of arity `m` and degree `d`.
///
/// Within one level, trees are ordered by arity and then by the codes of
/// their children, which is their code order; choosing the children in code
/// order therefore yields each level already sorted.
pub(crate) fn build_levels<T, F>(n: usize, max_arity: usize, unit: T, leaf: T, mut node: F) -> Vec<Vec<(PlanarMonomial, T)>>
where
    F: FnMut(usize, usize, &[&T]) -> T,
{
    let mut levels: Vec<Vec<(PlanarMonomial, T)>> = vec![vec![(PlanarMonomial::unit(), unit)]];
    if n == 0 {
        return levels;
    }
    levels.push(vec![(PlanarMonomial::leaf(), leaf)]);
    // upto[b]: (degree, index) of every non-unit tree of degree <= b, in code order
    let mut upto: Vec<Vec<(u16, u32)>> = vec![Vec::new(), vec![(1, 0)]];
    for degree in 2..=n {
        let mut level = Vec::new();
        for arity in 2..=degree.min(max_arity).min(u8::MAX as usize) {
            let mut stack: Vec<(u16, u32)> = Vec::with_capacity(arity);
            grow(&levels, &upto, arity, degree, degree, &mut stack, &mut node, &mut level);
        }
        levels.push(level);
        if degree < n {
            let merged = merge_by_code(&levels, &upto[degree - 1], degree);
            upto.push(merged);
        }
    }
    levels
}

#[allow(clippy::too_many_arguments)]
fn grow<T, F>(
    levels: &[Vec<(PlanarMonomial, T)>],
    upto: &[Vec<(u16, u32)>],
    arity: usize,
    degree: usize,
    remaining: usize,
    stack: &mut Vec<(u16, u32)>,
    node: &mut F,
    out: &mut Vec<(PlanarMonomial, T)>,
) where
    F: FnMut(usize, usize, &[&T]) -> T,
{
    let left = arity - stack.len();
    if left == 1 {
        for i in 0..levels[remaining].len() {
            stack.push((remaining as u16, i as u32));
            let mut code = Vec::with_capacity(2 * degree);
            code.push(arity as u8);
            let mut values: Vec<&T> = Vec::with_capacity(arity);
            for &(d, j) in stack.iter() {
                let (t, v) = &levels[d as usize][j as usize];
                code.extend_from_slice(t.code());
                values.push(v);
            }
            let value = node(arity, degree, &values);
            out.push((PlanarMonomial::from_code_unchecked(code), value));
            stack.pop();
        }
        return;
    }
    for &(d, j) in &upto[remaining - (left - 1)] {
        stack.push((d, j));
        grow(levels, upto, arity, degree, remaining - d as usize, stack, node, out);
        stack.pop();
    }
}

fn merge_by_code<T>(levels: &[Vec<(PlanarMonomial, T)>], previous: &[(u16, u32)], degree: usize) -> Vec<(u16, u32)> {
    let code = |&(d, j): &(u16, u32)| levels[d as usize][j as usize].0.code();
    let fresh: Vec<(u16, u32)> = (0..levels[degree].len()).map(|j| (degree as u16, j as u32)).collect();
    let mut out = Vec::with_capacity(previous.len() + fresh.len());
    let (mut i, mut j) = (0, 0);
    while i < previous.len() && j < fresh.len() {
        if code(&previous[i]) <= code(&fresh[j]) {
            out.push(previous[i]);
            i += 1;
        } else {
            out.push(fresh[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&previous[i..]);
    out.extend_from_slice(&fresh[j..]);
    out
}

/// Ordered compositions of `n` into `k` positive parts.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 1..=n.saturating_sub(k - 1) {
            prefix.push(first);
            go(n - first, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 && n >= k {
        go(n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Classical binomial coefficient.
pub fn classical_binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Planar binomial coefficient: the number of leaf subsets `I` of `upper`
/// with `contract(upper, I) = lower`.
pub fn binom(upper: &PlanarMonomial, lower: &PlanarMonomial) -> u128 {
    BinomCounter::default().count(upper.as_ref(), lower.as_ref())
}

/// Memoizing evaluator for planar binomial coefficients.
///
/// Counts by structural recursion over the root of the upper tree: either
/// all selected leaves lie in one child, or the lower tree's children are
/// matched to an increasing sequence of the upper tree's children.
#[derive(Default)]
pub struct BinomCounter<'a> {
    memo: HashMap<(&'a [u8], &'a [u8]), u128>,
}

impl<'a> BinomCounter<'a> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&mut self, upper: TreeRef<'a>, lower: TreeRef<'a>) -> u128 {
        if lower.is_unit() {
            return 1;
        }
        let lower_degree = lower.degree();
        let upper_degree = upper.degree();
        if lower_degree > upper_degree {
            return 0;
        }
        if upper.is_leaf() {
            return u128::from(lower.is_leaf());
        }
        if lower_degree == upper_degree {
            return u128::from(lower == upper);
        }
        if lower.is_leaf() {
            return upper_degree as u128;
        }
        let key = (upper.0, lower.0);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let uc: Vec<TreeRef<'a>> = upper.children().collect();
        let lc: Vec<TreeRef<'a>> = lower.children().collect();
        let mut total: u128 = uc.iter().map(|&c| self.count(c, lower)).sum();
        if lc.len() <= uc.len() {
            // ways[j]: matchings of lc[..j] into the children scanned so far
            let mut ways = vec![0u128; lc.len() + 1];
            ways[0] = 1;
            for &c in &uc {
                for j in (1..=lc.len()).rev() {
                    if ways[j - 1] != 0 {
                        let w = self.count(c, lc[j - 1]);
                        ways[j] += ways[j - 1] * w;
                    }
                }
            }
            total += ways[lc.len()];
        }
        self.memo.insert(key, total);
        total
    }
}
