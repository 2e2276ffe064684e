//! First-order deformations of a Borel-fixed point over `K[ε]/(ε²)`.
//!
//! A point is given by its degree-`m` filter `F` with complement `R`. In the
//! affine chart of the Grassmannian around it, a tangent vector is a matrix
//! `(c_AB)` with `A ∈ F`, `B ∈ R`, describing the ideal
//! `J = (x^A + ε Σ_B c_AB x^B | A ∈ F)`.

mod action;
mod eigen;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hilbert::{is_hilbert_point, HilbertPolynomial};
use crate::linalg::{self, Matrix};
use crate::monomial::{DifferenceVector, ExponentVector};
use crate::polynomial::Form;
use crate::poset::Filter;
use crate::rational::{format_rational, Rational};

pub use action::{act_on_first_order, act_on_tangent};
pub use eigen::{enumerate_borel_eigenvectors, is_borel_eigenvector, torus_eigenvector_type, BorelEigenvector, EigenvectorType};

/// Entries `c_AB` of a tangent vector at the point with filter `base`; only
/// nonzero entries are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TangentVector {
    base: Filter,
    entries: BTreeMap<(ExponentVector, ExponentVector), Rational>,
}

impl TangentVector {
    pub fn zero(base: &Filter) -> Self {
        TangentVector { base: base.clone(), entries: BTreeMap::new() }
    }

    pub fn new(
        base: &Filter,
        entries: impl IntoIterator<Item = (ExponentVector, ExponentVector, Rational)>,
    ) -> Result<Self> {
        let mut v = TangentVector::zero(base);
        for (a, b, c) in entries {
            v.add_entry(a, b, c)?;
        }
        Ok(v)
    }

    /// The basis vector `e_AB`.
    pub fn basis(base: &Filter, a: ExponentVector, b: ExponentVector) -> Result<Self> {
        TangentVector::new(base, [(a, b, Rational::from_integer(1.into()))])
    }

    pub fn add_entry(&mut self, a: ExponentVector, b: ExponentVector, c: Rational) -> Result<()> {
        let poset = self.base.poset();
        poset.require_index(&a)?;
        poset.require_index(&b)?;
        if !self.base.contains(&a) {
            return Err(Error::InvalidInput(format!("{} is not in the filter", a.to_text("x"))));
        }
        if self.base.contains(&b) {
            return Err(Error::InvalidInput(format!("{} is not a standard monomial", b.to_text("x"))));
        }
        let key = (a, b);
        let sum = self.entries.get(&key).cloned().unwrap_or_else(Rational::zero) + c;
        if sum.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, sum);
        }
        Ok(())
    }

    pub fn base(&self) -> &Filter {
        &self.base
    }

    pub fn entries(&self) -> &BTreeMap<(ExponentVector, ExponentVector), Rational> {
        &self.entries
    }

    pub fn coefficient(&self, a: &ExponentVector, b: &ExponentVector) -> Rational {
        self.entries.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return TangentVector::zero(&self.base);
        }
        TangentVector {
            base: self.base.clone(),
            entries: self.entries.iter().map(|(k, c)| (k.clone(), c * factor)).collect(),
        }
    }

    pub fn add(&self, other: &TangentVector) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.entries {
            out.add_entry(a.clone(), b.clone(), c.clone()).expect("same base");
        }
        out
    }

    /// The distinct differences `B - A` over nonzero entries.
    pub fn differences(&self) -> Vec<DifferenceVector> {
        let mut ks: Vec<DifferenceVector> = self.entries.keys().map(|(a, b)| b.difference(a)).collect();
        ks.sort();
        ks.dedup();
        ks
    }

    /// `Some(λ)` with `other = λ · self`, for nonzero `self`.
    pub fn proportionality(&self, other: &TangentVector) -> Option<Rational> {
        let (key, c0) = self.entries.iter().next()?;
        let lambda = other.entries.get(key).cloned().unwrap_or_else(Rational::zero) / c0;
        (self.scaled(&lambda) == *other).then_some(lambda)
    }

    pub fn to_first_order(&self) -> FirstOrderIdeal {
        let nvars = self.base.poset().nvars();
        let mut tails: BTreeMap<ExponentVector, Form> =
            self.base.members().into_iter().map(|a| (a, Form::zero(nvars))).collect();
        for ((a, b), c) in &self.entries {
            tails.get_mut(a).expect("keys lie in the filter").add_term(b.clone(), c.clone());
        }
        FirstOrderIdeal { base: self.base.clone(), tails }
    }
}

impl fmt::Display for TangentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|((a, b), c)| format!("{} * e[{} -> {}]", format_rational(c), a.to_text("x"), b.to_text("x")))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The ideal `(x^A + ε tail(A) | A ∈ F)` of `S[ε]`; tails are supported on
/// standard monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FirstOrderIdeal {
    base: Filter,
    tails: BTreeMap<ExponentVector, Form>,
}

impl FirstOrderIdeal {
    pub fn new(base: &Filter, tails: BTreeMap<ExponentVector, Form>) -> Result<Self> {
        let mut full: BTreeMap<ExponentVector, Form> =
            base.members().into_iter().map(|a| (a, Form::zero(base.poset().nvars()))).collect();
        for (a, tail) in tails {
            let slot = full
                .get_mut(&a)
                .ok_or_else(|| Error::InvalidInput(format!("{} is not in the filter", a.to_text("x"))))?;
            for b in tail.terms().keys() {
                base.poset().require_index(b)?;
                if base.contains(b) {
                    return Err(Error::InvalidInput(format!("tail term {} is not standard", b.to_text("x"))));
                }
            }
            *slot = tail;
        }
        Ok(FirstOrderIdeal { base: base.clone(), tails: full })
    }

    pub fn base(&self) -> &Filter {
        &self.base
    }

    pub fn tails(&self) -> &BTreeMap<ExponentVector, Form> {
        &self.tails
    }

    pub fn tail(&self, a: &ExponentVector) -> Option<&Form> {
        self.tails.get(a)
    }

    pub fn to_tangent_vector(&self) -> TangentVector {
        let mut v = TangentVector::zero(&self.base);
        for (a, tail) in &self.tails {
            for (b, c) in tail.terms() {
                v.add_entry(a.clone(), b.clone(), c.clone()).expect("validated on construction");
            }
        }
        v
    }
}

/// The degree-`(m+1)` coincidences `x_j x^A = x_i x^A'` among generators,
/// one per generator beyond the first reaching a given monomial.
pub(crate) struct Syzygies {
    base: Filter,
    pairs: Vec<((usize, ExponentVector), (usize, ExponentVector))>,
}

impl Syzygies {
    pub(crate) fn new(base: &Filter) -> Self {
        let nvars = base.poset().nvars();
        let mut reach: BTreeMap<ExponentVector, Vec<(usize, ExponentVector)>> = BTreeMap::new();
        for a in base.members() {
            for j in 0..nvars {
                reach.entry(a.times_var(j)).or_default().push((j, a.clone()));
            }
        }
        let mut pairs = Vec::new();
        for (_, list) in reach {
            let first = &list[0];
            for other in &list[1..] {
                pairs.push((first.clone(), other.clone()));
            }
        }
        Syzygies { base: base.clone(), pairs }
    }

    /// Whether a degree-`(m+1)` monomial lies in the ideal generated by `F`.
    fn in_next_degree(&self, s: &ExponentVector) -> bool {
        (0..s.nvars()).any(|k| s.quotient(&ExponentVector::unit(s.nvars(), k)).is_some_and(|q| self.base.contains(&q)))
    }

    /// Whether every syzygy lifts: `x_j tail(A) - x_i tail(A')` lies in
    /// `I_{m+1}`.
    pub(crate) fn lifts(&self, tails: &BTreeMap<ExponentVector, Form>) -> bool {
        let nvars = self.base.poset().nvars();
        self.pairs.iter().all(|((j, a), (i, a2))| {
            let mut diff = Form::zero(nvars);
            if let Some(t) = tails.get(a) {
                diff.add_scaled(&t.mul_monomial(&ExponentVector::unit(nvars, *j)), &Rational::from_integer(1.into()));
            }
            if let Some(t) = tails.get(a2) {
                diff.add_scaled(&t.mul_monomial(&ExponentVector::unit(nvars, *i)), &Rational::from_integer((-1).into()));
            }
            diff.terms().keys().all(|s| self.in_next_degree(s))
        })
    }

    /// The constraint matrix on the coordinates `(A, B) ∈ F × R`, listed in
    /// the order of `coordinates`.
    fn matrix(&self, coordinates: &[(ExponentVector, ExponentVector)]) -> Matrix {
        let nvars = self.base.poset().nvars();
        let index: BTreeMap<&(ExponentVector, ExponentVector), usize> =
            coordinates.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let standard_next: Vec<ExponentVector> = ExponentVector::all_of_degree(nvars, self.base.poset().degree() + 1)
            .into_iter()
            .filter(|s| !self.in_next_degree(s))
            .collect();
        let mut rows = Vec::new();
        for ((j, a), (i, a2)) in &self.pairs {
            for s in &standard_next {
                let mut row = vec![Rational::zero(); coordinates.len()];
                let mut touched = false;
                for (var, gen, sign) in [(*j, a, 1), (*i, a2, -1)] {
                    if let Some(b) = s.quotient(&ExponentVector::unit(nvars, var)) {
                        if let Some(&col) = index.get(&(gen.clone(), b)) {
                            row[col] += Rational::from_integer(sign.into());
                            touched = true;
                        }
                    }
                }
                if touched && row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        rows
    }
}

fn require_hilbert_point(base: &Filter, rho: &HilbertPolynomial) -> Result<()> {
    if is_hilbert_point(base, rho)? {
        Ok(())
    } else {
        Err(Error::NotAHilbertPoint(format!("filter {} does not define a point with Hilbert polynomial {rho}", base.to_text())))
    }
}

/// Whether `v` lies in the tangent space of the Hilbert scheme at its base
/// point: the first-order ideal is flat in degree `m + 1`.
pub fn is_tangent(v: &TangentVector, rho: &HilbertPolynomial) -> Result<bool> {
    require_hilbert_point(&v.base, rho)?;
    Ok(Syzygies::new(&v.base).lifts(&v.to_first_order().tails))
}

/// A basis of the tangent space at the point with filter `base`.
pub fn tangent_space_basis(base: &Filter, rho: &HilbertPolynomial) -> Result<Vec<TangentVector>> {
    require_hilbert_point(base, rho)?;
    let standard = base.complement().members();
    let coordinates: Vec<(ExponentVector, ExponentVector)> = base
        .members()
        .into_iter()
        .flat_map(|a| standard.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let constraints = Syzygies::new(base).matrix(&coordinates);
    linalg::nullspace(&constraints, coordinates.len())
        .into_iter()
        .map(|kernel| {
            TangentVector::new(
                base,
                coordinates.iter().zip(kernel).map(|((a, b), c)| (a.clone(), b.clone(), c)),
            )
        })
        .collect()
}
