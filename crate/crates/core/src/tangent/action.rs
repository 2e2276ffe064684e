//! The action of `GL_{n+1}` on first-order ideals through the chart at a
//! fixed point.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::monomial::ExponentVector;
use crate::polynomial::{Form, LinearChange};
use crate::rational::Rational;

use super::{FirstOrderIdeal, TangentVector};

/// Applies `g` to every generator `x^A + ε tail(A)`, then brings the
/// constant parts back to the monomials of `F` by row reduction and reads off
/// the new tails. Fails with [`Error::NotFixedByAction`] if the constant parts
/// leave the span of `F`.
pub fn act_on_first_order(g: &LinearChange, j: &FirstOrderIdeal) -> Result<FirstOrderIdeal> {
    let base = j.base();
    let nvars = base.poset().nvars();
    if g.nvars() != nvars {
        return Err(Error::LengthMismatch { expected: nvars, found: g.nvars() });
    }
    let members = base.members();
    let mut constant_rows: Matrix = Vec::with_capacity(members.len());
    let mut eps_parts: Vec<Form> = Vec::with_capacity(members.len());
    for a in &members {
        let p = g.apply_monomial(a);
        if p.terms().keys().any(|b| !base.contains(b)) {
            return Err(Error::NotFixedByAction);
        }
        constant_rows.push(members.iter().map(|b| p.coefficient(b)).collect());
        eps_parts.push(g.apply(j.tail(a).expect("every member has a tail")));
    }
    let inv = linalg::inverse(&constant_rows).ok_or(Error::NotFixedByAction)?;
    let mut tails = BTreeMap::new();
    for (row, a) in inv.iter().zip(&members) {
        let mut tail = Form::zero(nvars);
        for (coef, q) in row.iter().zip(&eps_parts) {
            if !coef.is_zero() {
                tail.add_scaled(q, coef);
            }
        }
        let standard: Vec<(ExponentVector, Rational)> =
            tail.terms().iter().filter(|(b, _)| !base.contains(b)).map(|(b, c)| (b.clone(), c.clone())).collect();
        tails.insert(a.clone(), Form::from_terms(nvars, standard));
    }
    FirstOrderIdeal::new(base, tails)
}

/// [`act_on_first_order`] on the ideal of a tangent vector.
pub fn act_on_tangent(g: &LinearChange, v: &TangentVector) -> Result<TangentVector> {
    Ok(act_on_first_order(g, &v.to_first_order())?.to_tangent_vector())
}
