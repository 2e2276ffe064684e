//! The poset `P(m, n)` of degree-`m` monomials in `x_0, ..., x_n`, ordered by
//! iterated Borel moves, together with its filters and order ideals.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;
use std::ops::Deref;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::monomial::{binomial_big, ExponentVector, MonomialOrder};

/// Default cap on the number of poset elements.
pub const DEFAULT_POSET_CAP: usize = 1_000_000;

/// `P(m, n)` with every element and covering edge materialized. Elements are
/// ranked in Lex-descending order; that rank is the canonical index used by
/// [`MonomialSet`] bitsets.
#[derive(Debug)]
pub struct Poset {
    m: u32,
    n: usize,
    elements: Vec<ExponentVector>,
    index: HashMap<ExponentVector, usize>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
}

impl Poset {
    pub fn build(m: u32, n: usize) -> Result<Arc<Poset>> {
        Poset::build_with_cap(m, n, DEFAULT_POSET_CAP)
    }

    pub fn build_with_cap(m: u32, n: usize, cap: usize) -> Result<Arc<Poset>> {
        if n < 1 {
            return Err(Error::InvalidInput("P(m, n) needs n >= 1".into()));
        }
        let size = binomial_big(u64::from(m) + n as u64, n as u64);
        if size > BigInt::from(cap) {
            return Err(Error::PosetTooLarge { size: size.to_string(), cap });
        }
        let elements = ExponentVector::all_of_degree(n + 1, m);
        let index: HashMap<_, _> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut upper = vec![Vec::new(); elements.len()];
        let mut lower = vec![Vec::new(); elements.len()];
        for (a, e) in elements.iter().enumerate() {
            for i in 1..=n {
                if let Some(b) = e.borel_move(i) {
                    let b = index[&b];
                    upper[a].push(b);
                    lower[b].push(a);
                }
            }
        }
        Ok(Arc::new(Poset { m, n, elements, index, upper, lower }))
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Index of the last variable.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ExponentVector] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &ExponentVector {
        &self.elements[idx]
    }

    pub fn index_of(&self, a: &ExponentVector) -> Option<usize> {
        self.index.get(a).copied()
    }

    /// Like [`Poset::index_of`] but reports why a monomial does not belong.
    pub fn require_index(&self, a: &ExponentVector) -> Result<usize> {
        if a.nvars() != self.nvars() {
            return Err(Error::LengthMismatch { expected: self.nvars(), found: a.nvars() });
        }
        self.index_of(a).ok_or(Error::WrongDegree { expected: self.m, found: a.degree() })
    }

    /// Elements covering `idx` (one Borel move up).
    pub fn upper_covers(&self, idx: usize) -> &[usize] {
        &self.upper[idx]
    }

    /// Elements covered by `idx`.
    pub fn lower_covers(&self, idx: usize) -> &[usize] {
        &self.lower[idx]
    }

    /// Covering pairs `(lower, upper)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.upper.iter().enumerate().flat_map(|(a, ups)| ups.iter().map(move |&b| (a, b)))
    }

    /// `a <= b` in the Borel order: every prefix sum of `a` is at most the
    /// corresponding prefix sum of `b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        let (a, b) = (&self.elements[a], &self.elements[b]);
        let (mut sa, mut sb) = (0u32, 0u32);
        a.exponents().iter().zip(b.exponents()).all(|(x, y)| {
            sa += x;
            sb += y;
            sa <= sb
        })
    }

    /// Graphviz rendering with edges pointing up the order; members of
    /// `highlight` are drawn circled.
    pub fn to_dot(&self, highlight: Option<&MonomialSet>) -> String {
        let mut out = format!("digraph P_{}_{} {{\n  rankdir=BT;\n", self.m, self.n);
        for (i, e) in self.elements.iter().enumerate() {
            let circled = highlight.is_some_and(|h| h.contains_index(i));
            let shape = if circled { "circle" } else { "plaintext" };
            let _ = writeln!(out, "  \"{}\" [shape={shape}];", e.to_text("x"));
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", self.elements[a].to_text("x"), self.elements[b].to_text("x"));
        }
        out.push_str("}\n");
        out
    }
}

/// An arbitrary subset of a poset, stored as a bitset over canonical indices.
#[derive(Clone)]
pub struct MonomialSet {
    poset: Arc<Poset>,
    bits: FixedBitSet,
}

impl MonomialSet {
    pub fn empty(poset: &Arc<Poset>) -> Self {
        MonomialSet { poset: Arc::clone(poset), bits: FixedBitSet::with_capacity(poset.len()) }
    }

    pub fn full(poset: &Arc<Poset>) -> Self {
        let mut s = MonomialSet::empty(poset);
        s.bits.insert_range(..);
        s
    }

    pub fn from_indices(poset: &Arc<Poset>, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = MonomialSet::empty(poset);
        for i in indices {
            s.bits.insert(i);
        }
        s
    }

    pub fn from_monomials<'a>(poset: &Arc<Poset>, monomials: impl IntoIterator<Item = &'a ExponentVector>) -> Result<Self> {
        let mut s = MonomialSet::empty(poset);
        for a in monomials {
            s.bits.insert(poset.require_index(a)?);
        }
        Ok(s)
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        self.bits.contains(idx)
    }

    pub fn contains(&self, a: &ExponentVector) -> bool {
        self.poset.index_of(a).is_some_and(|i| self.bits.contains(i))
    }

    pub fn insert_index(&mut self, idx: usize) {
        self.bits.insert(idx);
    }

    pub fn remove_index(&mut self, idx: usize) {
        self.bits.set(idx, false);
    }

    /// Members by ascending canonical index (Lex-descending).
    pub fn indices(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn members(&self) -> Vec<ExponentVector> {
        self.bits.ones().map(|i| self.poset.element(i).clone()).collect()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn complement(&self) -> MonomialSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        MonomialSet { poset: Arc::clone(&self.poset), bits }
    }

    pub fn union(&self, other: &MonomialSet) -> MonomialSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        MonomialSet { poset: Arc::clone(&self.poset), bits }
    }

    pub fn difference(&self, other: &MonomialSet) -> MonomialSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        MonomialSet { poset: Arc::clone(&self.poset), bits }
    }

    pub fn is_subset(&self, other: &MonomialSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_up_closed(&self) -> bool {
        self.bits.ones().all(|b| self.poset.upper_covers(b).iter().all(|&a| self.bits.contains(a)))
    }

    pub fn is_down_closed(&self) -> bool {
        self.bits.ones().all(|b| self.poset.lower_covers(b).iter().all(|&a| self.bits.contains(a)))
    }

    pub fn into_filter(self) -> Result<Filter> {
        Filter::new(self)
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.members().iter().map(|a| a.to_text("x")).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl PartialEq for MonomialSet {
    fn eq(&self, other: &Self) -> bool {
        self.poset.m == other.poset.m && self.poset.n == other.poset.n && self.bits == other.bits
    }
}

impl Eq for MonomialSet {}

impl fmt::Debug for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialSet(P({},{}), {})", self.poset.m, self.poset.n, self.to_text())
    }
}

/// An up-closed subset of `P(m, n)`: the degree-`m` monomials of a
/// Borel-fixed ideal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Filter(MonomialSet);

impl Filter {
    pub fn new(set: MonomialSet) -> Result<Filter> {
        if set.is_up_closed() {
            Ok(Filter(set))
        } else {
            Err(Error::NotAFilter)
        }
    }

    /// Smallest filter containing `set`.
    pub fn up_closure(set: &MonomialSet) -> Filter {
        let poset = set.poset();
        let mut out = set.clone();
        let mut stack = set.indices();
        while let Some(b) = stack.pop() {
            for &a in poset.upper_covers(b) {
                if !out.contains_index(a) {
                    out.insert_index(a);
                    stack.push(a);
                }
            }
        }
        Filter(out)
    }

    pub fn as_set(&self) -> &MonomialSet {
        &self.0
    }

    pub fn into_set(self) -> MonomialSet {
        self.0
    }

    /// The complementary order ideal of standard monomials.
    pub fn complement(&self) -> OrderIdeal {
        OrderIdeal(self.0.complement())
    }
}

impl Deref for Filter {
    type Target = MonomialSet;
    fn deref(&self) -> &MonomialSet {
        &self.0
    }
}

/// A down-closed subset of `P(m, n)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderIdeal(MonomialSet);

impl OrderIdeal {
    pub fn new(set: MonomialSet) -> Result<OrderIdeal> {
        if set.is_down_closed() {
            Ok(OrderIdeal(set))
        } else {
            Err(Error::InvalidInput("set is not down-closed".into()))
        }
    }

    /// Smallest order ideal containing `set`.
    pub fn down_closure(set: &MonomialSet) -> OrderIdeal {
        let poset = set.poset();
        let mut out = set.clone();
        let mut stack = set.indices();
        while let Some(b) = stack.pop() {
            for &a in poset.lower_covers(b) {
                if !out.contains_index(a) {
                    out.insert_index(a);
                    stack.push(a);
                }
            }
        }
        OrderIdeal(out)
    }

    pub fn complement(&self) -> Filter {
        Filter(self.0.complement())
    }
}

impl Deref for OrderIdeal {
    type Target = MonomialSet;
    fn deref(&self) -> &MonomialSet {
        &self.0
    }
}

/// Whether the given degree-`m` monomials form an up-closed subset.
pub fn is_filter(monomials: &[ExponentVector], poset: &Arc<Poset>) -> Result<bool> {
    Ok(MonomialSet::from_monomials(poset, monomials)?.is_up_closed())
}

/// The isomorphism `P(m, n) -> P(n, m)`. Writing `x^A = x_{α_1} ... x_{α_m}`
/// with `α_1 <= ... <= α_m`, the image is `y^B` with `b_0 = n - α_m`,
/// `b_i = α_{m-i+1} - α_{m-i}` and `b_m = α_1`.
pub fn flip(a: &ExponentVector) -> ExponentVector {
    let n = a.nvars().saturating_sub(1) as u32;
    let m = a.degree() as usize;
    let alpha: Vec<u32> = a
        .exponents()
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat(i as u32).take(e as usize))
        .collect();
    let mut b = vec![0u32; m + 1];
    if m == 0 {
        b[0] = n;
        return ExponentVector::new(b);
    }
    b[0] = n - alpha[m - 1];
    for i in 1..m {
        b[i] = alpha[m - i] - alpha[m - i - 1];
    }
    b[m] = alpha[0];
    ExponentVector::new(b)
}

/// Exhaustively checks `A1 <_Lex A2  <=>  flip(A1) <_RevLex flip(A2)` on
/// `P(m, n)`.
pub fn check_lex_revlex_duality(m: u32, n: usize) -> Result<bool> {
    let poset = Poset::build(m, n)?;
    let images: Vec<ExponentVector> = poset.elements().iter().map(flip).collect();
    for (i, a1) in poset.elements().iter().enumerate() {
        for (j, a2) in poset.elements().iter().enumerate() {
            let lex = MonomialOrder::Lex.compare(a1, a2)?.is_lt();
            let revlex = MonomialOrder::RevLex.compare(&images[i], &images[j])?.is_lt();
            if lex != revlex {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks that `x^A -> <(a_0, n), (a_0 + a_1, n - 1), ..., (a_0 + ... + a_{n-1}, 1)>`
/// is an order isomorphism from `P(m, n)` onto the order ideals of the grid
/// `m x n` under inclusion. The order ideals are enumerated independently by
/// scanning all subsets of the grid, so `m * n` is limited to 20.
pub fn j_lattice_isomorphism_check(m: u32, n: usize) -> Result<bool> {
    let cells = m as usize * n;
    if cells > 20 {
        return Err(Error::InvalidInput(format!("grid {m} x {n} too large for the lattice check")));
    }
    let poset = Poset::build(m, n)?;
    let cols = n;
    // grid cell (k, l), 1 <= k <= m, 1 <= l <= n, stored at bit (k-1)*cols + (l-1)
    let cell = |k: usize, l: usize| (k - 1) * cols + (l - 1);
    let image = |a: &ExponentVector| -> u32 {
        let mut bits = 0u32;
        let mut prefix = 0usize;
        for j in 0..n {
            prefix += a.exponents()[j] as usize;
            let l = n - j;
            for k in 1..=prefix {
                for l2 in 1..=l {
                    bits |= 1 << cell(k, l2);
                }
            }
        }
        bits
    };
    let images: Vec<u32> = poset.elements().iter().map(image).collect();

    let is_order_ideal = |s: u32| {
        (1..=m as usize).all(|k| {
            (1..=n).all(|l| {
                if s & (1 << cell(k, l)) == 0 {
                    return true;
                }
                (k == 1 || s & (1 << cell(k - 1, l)) != 0) && (l == 1 || s & (1 << cell(k, l - 1)) != 0)
            })
        })
    };
    let mut ideals: Vec<u32> = (0..(1u32 << cells)).filter(|&s| is_order_ideal(s)).collect();
    let mut sorted_images = images.clone();
    sorted_images.sort_unstable();
    sorted_images.dedup();
    ideals.sort_unstable();
    if sorted_images.len() != images.len() || sorted_images != ideals {
        return Ok(false);
    }
    for a in 0..poset.len() {
        for b in 0..poset.len() {
            let included = images[a] & !images[b] == 0;
            if poset.leq(a, b) != included {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
