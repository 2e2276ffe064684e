//! Torus and Borel eigenvectors in the tangent space at a Borel-fixed point.
//!
//! A torus eigenvector has all its nonzero entries `c_AB` on one difference
//! `K = B - A`. With `F' = F ∖ {A : c_AB ≠ 0}` and `F'' = F ∪ ((F ∖ F') + K)`
//! it is fixed by the Borel group iff `F'` and `F''` are filters and the
//! coefficients obey `c_{A+Δ_i} = (b_i / a_i) c_A` with `a_i = deg_i(A)` and
//! `b_i = deg_i(A + K)`.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_traits::One;
use rayon::prelude::*;

use crate::error::Result;
use crate::hilbert::HilbertPolynomial;
use crate::monomial::{DifferenceVector, ExponentVector};
use crate::poset::{Filter, MonomialSet, Poset};
use crate::rational::Rational;

use super::{require_hilbert_point, Syzygies, TangentVector};

/// The combinatorial type `(F', F'', K)` of a torus eigenvector. `F'` and
/// `F''` are plain sets here; a Borel eigenvector needs both to be filters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EigenvectorType {
    pub f_prime: MonomialSet,
    pub k: DifferenceVector,
    pub f_double_prime: MonomialSet,
    moved: MonomialSet,
}

impl EigenvectorType {
    fn from_moved(base: &Filter, moved: &MonomialSet, k: DifferenceVector) -> Self {
        let poset = base.poset();
        let mut f2 = base.as_set().clone();
        for a in moved.members() {
            let b = a.shift(&k).expect("translate is a monomial");
            f2.insert_index(poset.index_of(&b).expect("translate has degree m"));
        }
        EigenvectorType { f_prime: base.difference(moved), k, f_double_prime: f2, moved: moved.clone() }
    }

    /// `F ∖ F'`, the monomials whose generators are deformed.
    pub fn moved(&self) -> &MonomialSet {
        &self.moved
    }

    /// `(F ∖ F') + K`.
    pub fn translate(&self) -> MonomialSet {
        let poset = self.moved.poset();
        let images: Vec<ExponentVector> =
            self.moved.members().iter().map(|a| a.shift(&self.k).expect("translate is a monomial")).collect();
        MonomialSet::from_monomials(poset, &images).expect("translates have degree m")
    }

    pub fn is_admissible(&self) -> bool {
        self.f_prime.is_up_closed() && self.f_double_prime.is_up_closed()
    }
}

/// The type of `v` when all its nonzero entries share one difference `B - A`.
pub fn torus_eigenvector_type(v: &TangentVector) -> Option<EigenvectorType> {
    let ks = v.differences();
    if ks.len() != 1 {
        return None;
    }
    let poset = v.base().poset();
    let moved = MonomialSet::from_monomials(poset, v.entries().keys().map(|(a, _)| a)).expect("keys lie in the poset");
    Some(EigenvectorType::from_moved(v.base(), &moved, ks[0].clone()))
}

fn ratio(a: &ExponentVector, k: &DifferenceVector, i: usize) -> Option<Rational> {
    let a_i = i64::from(a.exponents()[i]);
    let b_i = a_i + k.entries()[i];
    (b_i != 0 && a_i != 0).then(|| Rational::new(b_i.into(), a_i.into()))
}

/// Checks the torus type, the filter conditions on `F'` and `F''`, and the
/// ratio law along every `Δ_i` edge inside `F ∖ F'`.
pub fn is_borel_eigenvector(v: &TangentVector) -> bool {
    let Some(ty) = torus_eigenvector_type(v) else {
        return false;
    };
    if !ty.is_admissible() {
        return false;
    }
    let coefficient: BTreeMap<&ExponentVector, &Rational> = v.entries().iter().map(|((a, _), c)| (a, c)).collect();
    for (&a, &c) in &coefficient {
        for i in 1..a.nvars() {
            let Some(up) = a.borel_move(i) else { continue };
            let Some(&c_up) = coefficient.get(&up) else { continue };
            match ratio(a, &ty.k, i) {
                Some(r) if *c_up == &r * c => {}
                _ => return false,
            }
        }
    }
    true
}

/// A Borel eigenvector family: one free scalar per `Δ`-connected component
/// of `F ∖ F'`, with the Lex-smallest (Borel-minimal) element of each
/// component normalized to coefficient 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BorelEigenvector {
    base: Filter,
    pub ty: EigenvectorType,
    pub components: Vec<Vec<ExponentVector>>,
    pub coefficients: BTreeMap<ExponentVector, Rational>,
}

impl BorelEigenvector {
    pub fn base(&self) -> &Filter {
        &self.base
    }

    /// Families with more than one component have a character eigenspace of
    /// dimension above one and deserve a closer look.
    pub fn is_multi_component(&self) -> bool {
        self.components.len() > 1
    }

    fn vector_on(&self, members: &[ExponentVector]) -> TangentVector {
        TangentVector::new(
            &self.base,
            members.iter().map(|a| (a.clone(), a.shift(&self.ty.k).expect("translate"), self.coefficients[a].clone())),
        )
        .expect("entries lie in F x R")
    }

    /// The representative with every component scalar equal to 1.
    pub fn vector(&self) -> TangentVector {
        let all: Vec<ExponentVector> = self.components.iter().flatten().cloned().collect();
        self.vector_on(&all)
    }

    pub fn component_vector(&self, idx: usize) -> TangentVector {
        self.vector_on(&self.components[idx])
    }
}

impl fmt::Display for BorelEigenvector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K = {}: {}", self.ty.k, self.vector())
    }
}

/// Solves the ratio law on each `Δ`-component of `moved`; `None` when a
/// coefficient is forced to zero or a cycle is inconsistent.
fn solve_ratio_law(
    moved: &[ExponentVector],
    k: &DifferenceVector,
) -> Option<(Vec<Vec<ExponentVector>>, BTreeMap<ExponentVector, Rational>)> {
    let in_moved: BTreeSet<&ExponentVector> = moved.iter().collect();
    let mut coefficients: BTreeMap<ExponentVector, Rational> = BTreeMap::new();
    let mut components = Vec::new();
    let mut sorted: Vec<&ExponentVector> = moved.iter().collect();
    sorted.sort();
    for root in sorted {
        if coefficients.contains_key(root) {
            continue;
        }
        let mut component = vec![root.clone()];
        coefficients.insert(root.clone(), Rational::one());
        let mut queue = VecDeque::from([root.clone()]);
        while let Some(a) = queue.pop_front() {
            let c = coefficients[&a].clone();
            let nvars = a.nvars();
            for i in 1..nvars {
                // upward edge a -> a + Δ_i
                if let Some(up) = a.borel_move(i).filter(|u| in_moved.contains(u)) {
                    let value = ratio(&a, k, i)? * &c;
                    if !settle(&mut coefficients, &mut component, &mut queue, up, value) {
                        return None;
                    }
                }
                // downward edge a - Δ_i -> a
                if let Some(down) = a.exchange(i, i - 1).filter(|d| in_moved.contains(d)) {
                    let value = &c / ratio(&down, k, i)?;
                    if !settle(&mut coefficients, &mut component, &mut queue, down, value) {
                        return None;
                    }
                }
            }
        }
        component.sort();
        components.push(component);
    }
    Some((components, coefficients))
}

fn settle(
    coefficients: &mut BTreeMap<ExponentVector, Rational>,
    component: &mut Vec<ExponentVector>,
    queue: &mut VecDeque<ExponentVector>,
    at: ExponentVector,
    value: Rational,
) -> bool {
    match coefficients.get(&at) {
        Some(existing) => *existing == value,
        None => {
            coefficients.insert(at.clone(), value);
            component.push(at.clone());
            queue.push_back(at);
            true
        }
    }
}

/// Nonempty subsets `D` of `allowed` that are down-closed inside `F`.
fn down_sets_within(poset: &Arc<Poset>, base: &Filter, allowed: &FixedBitSet) -> Vec<FixedBitSet> {
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut frontier = vec![FixedBitSet::with_capacity(poset.len())];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for d in &frontier {
            for i in allowed.ones() {
                if d.contains(i) {
                    continue;
                }
                let closed = poset.lower_covers(i).iter().all(|&l| !base.contains_index(l) || d.contains(l));
                if closed {
                    let mut grown = d.clone();
                    grown.insert(i);
                    if seen.insert(grown.clone()) {
                        next.push(grown);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<FixedBitSet> = seen.into_iter().collect();
    out.sort_by_key(|b| b.ones().collect::<Vec<_>>());
    out
}

/// Every Borel eigenvector family in the tangent space at the point with
/// filter `base`, ordered by `K` and then by `F ∖ F'`. A family is kept when
/// `F'` and `F''` are filters, the ratio law is solvable, and each component
/// is a tangent vector on its own.
pub fn enumerate_borel_eigenvectors(base: &Filter, rho: &HilbertPolynomial) -> Result<Vec<BorelEigenvector>> {
    require_hilbert_point(base, rho)?;
    let poset = base.poset();
    let members = base.members();
    let standard = base.complement().members();
    let ks: BTreeSet<DifferenceVector> =
        members.iter().flat_map(|a| standard.iter().map(move |b| b.difference(a))).collect();
    let syzygies = Syzygies::new(base);

    let families: Vec<Vec<BorelEigenvector>> = ks
        .into_iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|k| {
            let mut allowed = FixedBitSet::with_capacity(poset.len());
            for a in &members {
                if let Some(b) = a.shift(k) {
                    if !base.contains(&b) {
                        allowed.insert(poset.index_of(a).expect("member of the poset"));
                    }
                }
            }
            let mut found = Vec::new();
            for d in down_sets_within(poset, base, &allowed) {
                let moved_set = MonomialSet::from_indices(poset, d.ones());
                let ty = EigenvectorType::from_moved(base, &moved_set, k.clone());
                if !ty.is_admissible() {
                    continue;
                }
                let moved = moved_set.members();
                let Some((components, coefficients)) = solve_ratio_law(&moved, k) else {
                    continue;
                };
                let family = BorelEigenvector { base: base.clone(), ty, components, coefficients };
                let tangent = (0..family.components.len())
                    .all(|c| syzygies.lifts(family.component_vector(c).to_first_order().tails()));
                if tangent {
                    found.push(family);
                }
            }
            found
        })
        .collect();
    Ok(families.into_iter().flatten().collect())
}
