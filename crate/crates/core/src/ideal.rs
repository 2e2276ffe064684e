//! Monomial ideals and the Borel-fixed ones among them: recognition, closure,
//! saturation, regularity, Hilbert functions and the next-degree membership
//! test on filters.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::hilbert::HilbertPolynomial;
use crate::monomial::{binomial_big, ExponentVector, VarBound};
use crate::poset::{Filter, MonomialSet, Poset};

/// A monomial ideal given by its minimal generating set `G(I)`.
///
/// Generators are kept sorted by degree and then Lex-descending, which makes
/// equality of ideals equality of structs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: Vec<ExponentVector>,
}

fn canonical_sort(gens: &mut [ExponentVector]) {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
}

impl MonomialIdeal {
    /// Builds the ideal generated by `generators`, discarding redundant ones.
    pub fn new(nvars: usize, generators: impl IntoIterator<Item = ExponentVector>) -> Result<Self> {
        let mut gens: Vec<ExponentVector> = generators.into_iter().collect();
        if let Some(bad) = gens.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::LengthMismatch { expected: nvars, found: bad.nvars() });
        }
        canonical_sort(&mut gens);
        gens.dedup();
        let mut minimal: Vec<ExponentVector> = Vec::with_capacity(gens.len());
        for g in gens {
            if !minimal.iter().any(|h| h.divides(&g)) {
                minimal.push(g);
            }
        }
        Ok(MonomialIdeal { nvars, generators: minimal })
    }

    /// The ideal generated by a set of degree-`m` monomials.
    pub fn from_monomial_set(set: &MonomialSet) -> Self {
        MonomialIdeal { nvars: set.poset().nvars(), generators: set.members() }
            .renormalized()
    }

    fn renormalized(self) -> Self {
        MonomialIdeal::new(self.nvars, self.generators).expect("lengths already consistent")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Index `n` of the last variable.
    pub fn n(&self) -> usize {
        self.nvars - 1
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.generators.iter().map(ExponentVector::degree).max().unwrap_or(0)
    }

    pub fn contains(&self, a: &ExponentVector) -> bool {
        self.generators.iter().any(|g| g.divides(a))
    }

    /// Checks the exchange property on the generators: `(x_i/x_j) g ∈ I` for
    /// every generator `g`, every `x_j | g` and every `i < j`.
    pub fn is_borel_fixed(&self) -> bool {
        self.generators.iter().all(|g| {
            (1..self.nvars).all(|j| {
                g.exponents()[j] == 0 || (0..j).all(|i| self.contains(&g.exchange(i, j).expect("x_j divides g")))
            })
        })
    }

    /// Smallest Borel-fixed ideal containing this one.
    pub fn borel_closure(&self) -> MonomialIdeal {
        let mut seen: BTreeSet<ExponentVector> = self.generators.iter().cloned().collect();
        let mut stack: Vec<ExponentVector> = self.generators.clone();
        while let Some(g) = stack.pop() {
            for j in 1..self.nvars {
                for i in 0..j {
                    if let Some(h) = g.exchange(i, j) {
                        if seen.insert(h.clone()) {
                            stack.push(h);
                        }
                    }
                }
            }
        }
        MonomialIdeal { nvars: self.nvars, generators: seen.into_iter().collect() }.renormalized()
    }

    /// Saturation of a Borel-fixed ideal: delete `x_n` from every minimal
    /// generator.
    pub fn saturate_borel(&self) -> Result<MonomialIdeal> {
        if !self.is_borel_fixed() {
            return Err(Error::NotBorelFixed);
        }
        Ok(MonomialIdeal { nvars: self.nvars, generators: self.generators.iter().map(ExponentVector::without_last).collect() }
            .renormalized())
    }

    /// Borel-fixed and saturated: no minimal generator involves `x_n`.
    pub fn is_saturated_borel(&self) -> bool {
        self.is_borel_fixed() && self.generators.iter().all(|g| g.exponents()[self.nvars - 1] == 0)
    }

    /// Castelnuovo-Mumford regularity of a Borel-fixed ideal: the largest
    /// degree of a minimal generator.
    pub fn regularity_borel(&self) -> Result<u32> {
        if !self.is_borel_fixed() {
            return Err(Error::NotBorelFixed);
        }
        Ok(self.max_generator_degree())
    }

    /// `M(I_d)`, Lex-descending.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<ExponentVector> {
        ExponentVector::all_of_degree(self.nvars, d).into_iter().filter(|a| self.contains(a)).collect()
    }

    /// `M(I_m)` as a subset of `poset`.
    pub fn degree_set(&self, poset: &Arc<Poset>) -> MonomialSet {
        let idx = (0..poset.len()).filter(|&i| self.contains(poset.element(i)));
        MonomialSet::from_indices(poset, idx)
    }

    /// `M(I_m)` as a filter of `P(m, n)`; requires a Borel-fixed ideal.
    pub fn degree_filter(&self, m: u32) -> Result<Filter> {
        if !self.is_borel_fixed() {
            return Err(Error::NotBorelFixed);
        }
        let poset = Poset::build(m, self.n())?;
        Filter::new(self.degree_set(&poset))
    }

    /// `HF(d) = dim S_d - #M(I_d)`.
    pub fn hilbert_function(&self, d: u32) -> BigInt {
        let total = binomial_big(u64::from(d) + self.n() as u64, self.n() as u64);
        total - BigInt::from(self.monomials_of_degree(d).len())
    }

    /// Hilbert polynomial of a saturated Borel-fixed ideal, interpolated from
    /// `HF` at `r, ..., r + n` where `r` is the regularity and validated at
    /// `r + n + 1` and `r + n + 2`.
    pub fn hilbert_polynomial(&self) -> Result<HilbertPolynomial> {
        if !self.is_saturated_borel() {
            return Err(Error::InvalidInput("Hilbert polynomial needs a saturated Borel-fixed ideal".into()));
        }
        let r = self.regularity_borel()?;
        let n = self.n() as u32;
        let samples: Vec<(i64, BigInt)> = (r..=r + n).map(|d| (i64::from(d), self.hilbert_function(d))).collect();
        let poly = HilbertPolynomial::interpolate(&samples);
        for d in [r + n + 1, r + n + 2] {
            if poly.eval(i64::from(d)) != num_rational::BigRational::from_integer(self.hilbert_function(d)) {
                return Err(Error::InterpolationMismatch { degree: d.into() });
            }
        }
        Ok(poly)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_text("x")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// For a filter `F = M(I_m)` of a Borel-fixed ideal generated in degrees at
/// most `m` and a standard monomial `x^A`, decides `x_i x^A ∈ I` by testing
/// `(x_i / x_max(A)) x^A ∈ F`.
pub fn monomial_in_next_degree(filter: &Filter, a: &ExponentVector, i: usize) -> Result<bool> {
    let poset = filter.poset();
    poset.require_index(a)?;
    if i >= poset.nvars() {
        return Err(Error::VariableOutOfRange { index: i, nvars: poset.nvars() });
    }
    if filter.contains(a) {
        return Err(Error::MonomialInFilter);
    }
    let k = match a.max_var() {
        VarBound::Index(k) => k,
        _ => return Err(Error::InvalidInput("constant monomial has no last variable".into())),
    };
    let moved = a.exchange(i, k).expect("x_max(A) divides x^A");
    Ok(filter.contains(&moved))
}
