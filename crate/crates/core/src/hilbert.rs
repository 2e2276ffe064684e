//! Hilbert polynomials, their Macaulay form and Gotzmann number, the
//! Grassmannian membership condition and the enumeration of Borel-fixed
//! points of a Hilbert scheme.
//!
//! A Hilbert polynomial is written as
//!
//! ```text
//! ρ(z) = Σ_{i=0}^{s} [ C(z+i, i+1) - C(z+i-m_i, i+1) ]
//! ```
//!
//! with `m_0 >= m_1 >= ... >= m_s >= 1`; the Gotzmann number is `m_0`.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::binomial_big;
use crate::poset::{Filter, MonomialSet, Poset};
use crate::rational::{format_rational, parse_rational, Rational};

/// A univariate polynomial with rational coefficients, lowest degree first;
/// trailing zero coefficients are trimmed.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HilbertPolynomial {
    coeffs: Vec<Rational>,
}

fn trim(mut c: Vec<Rational>) -> Vec<Rational> {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    c
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let len = a.len().max(b.len());
    let zero = Rational::zero();
    trim((0..len).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect())
}

fn poly_mul_linear(a: &[Rational], root_shift: &Rational) -> Vec<Rational> {
    // a(z) * (z + root_shift)
    let mut out = vec![Rational::zero(); a.len() + 1];
    for (i, c) in a.iter().enumerate() {
        out[i + 1] += c;
        out[i] += c * root_shift;
    }
    out
}

/// `C(z + shift, k)` as a polynomial in `z`.
fn binomial_poly(shift: i64, k: u64) -> Vec<Rational> {
    let mut p = vec![Rational::one()];
    let mut fact = BigInt::one();
    for j in 0..k {
        p = poly_mul_linear(&p, &Rational::from_integer(BigInt::from(shift - j as i64)));
        fact *= BigInt::from(j + 1);
    }
    let inv = Rational::new(BigInt::one(), fact);
    trim(p.into_iter().map(|c| c * &inv).collect())
}

/// The `i`-th summand `C(z+i, i+1) - C(z+i-m_i, i+1)`.
fn macaulay_summand(i: usize, m_i: u64) -> Vec<Rational> {
    let i64_i = i as i64;
    poly_sub(&binomial_poly(i64_i, i as u64 + 1), &binomial_poly(i64_i - m_i as i64, i as u64 + 1))
}

impl HilbertPolynomial {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        HilbertPolynomial { coeffs: trim(coeffs) }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        HilbertPolynomial::new(coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    /// Parses a comma-separated coefficient list, lowest degree first, e.g.
    /// `1,2` for `2z + 1`.
    pub fn parse(s: &str) -> Result<Self> {
        s.split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()
            .map(HilbertPolynomial::new)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, z: i64) -> Rational {
        let z = Rational::from_integer(BigInt::from(z));
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &z + c)
    }

    /// Whether the polynomial takes integer values at `s + 2` consecutive
    /// integers, `s` being its degree (and hence at all integers).
    pub fn is_integer_valued(&self) -> bool {
        let s = self.degree().unwrap_or(0) as i64;
        (0..s + 2).all(|z| self.eval(z).is_integer())
    }

    /// Lagrange interpolation through `(z, value)` samples.
    pub fn interpolate(samples: &[(i64, BigInt)]) -> Self {
        let mut acc: Vec<Rational> = Vec::new();
        for (j, (zj, vj)) in samples.iter().enumerate() {
            let mut basis = vec![Rational::one()];
            let mut denom = Rational::one();
            for (k, (zk, _)) in samples.iter().enumerate() {
                if k != j {
                    basis = poly_mul_linear(&basis, &Rational::from_integer(BigInt::from(-zk)));
                    denom *= Rational::from_integer(BigInt::from(zj - zk));
                }
            }
            let scale = Rational::from_integer(vj.clone()) / denom;
            let term: Vec<Rational> = basis.into_iter().map(|c| c * &scale).collect();
            acc = poly_sub(&acc, &term.into_iter().map(|c| -c).collect::<Vec<_>>());
        }
        HilbertPolynomial::new(acc)
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            if var.is_empty() {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{}*{var}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl Serialize for HilbertPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HilbertPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Int(i64),
            Text(String),
        }
        let raw = Vec::<Coeff>::deserialize(d)?;
        raw.into_iter()
            .map(|c| match c {
                Coeff::Int(v) => Ok(Rational::from_integer(BigInt::from(v))),
                Coeff::Text(t) => parse_rational(&t).map_err(serde::de::Error::custom),
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(HilbertPolynomial::new)
    }
}

/// The list `m_0 >= m_1 >= ... >= m_s >= 1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MacaulayForm(Vec<u64>);

impl MacaulayForm {
    pub fn new(m: Vec<u64>) -> Result<Self> {
        if m.is_empty() || m.iter().any(|&x| x == 0) || m.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("{m:?} is not a nonincreasing list of positive integers")));
        }
        Ok(MacaulayForm(m))
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    /// Dimension `s` of the schemes with this Hilbert polynomial.
    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn gotzmann_number(&self) -> u64 {
        self.0[0]
    }

    pub fn expand(&self) -> HilbertPolynomial {
        let mut acc: Vec<Rational> = Vec::new();
        for (i, &m) in self.0.iter().enumerate() {
            let neg: Vec<Rational> = macaulay_summand(i, m).into_iter().map(|c| -c).collect();
            acc = poly_sub(&acc, &neg);
        }
        HilbertPolynomial::new(acc)
    }
}

/// Peels the Macaulay form off `ρ` from the top degree down: `m_i` is `i!`
/// times the coefficient of `z^i` in the residual.
pub fn macaulay_form(rho: &HilbertPolynomial) -> Result<MacaulayForm> {
    let s = rho.degree().ok_or_else(|| Error::NotAHilbertPolynomial("zero polynomial".into()))?;
    let mut residual = rho.coefficients().to_vec();
    let mut ms = vec![0u64; s + 1];
    let mut factorial = BigInt::one();
    let factorials: Vec<BigInt> = (0..=s)
        .map(|i| {
            if i > 0 {
                factorial *= BigInt::from(i);
            }
            factorial.clone()
        })
        .collect();
    for i in (0..=s).rev() {
        let coeff = residual.get(i).cloned().unwrap_or_else(Rational::zero);
        let m = coeff * Rational::from_integer(factorials[i].clone());
        if !m.is_integer() {
            return Err(Error::NotAHilbertPolynomial(format!("m_{i} = {} is not an integer", format_rational(&m))));
        }
        let m = m.to_integer();
        if m < BigInt::one() {
            return Err(Error::NotAHilbertPolynomial(format!("m_{i} = {m} is not positive")));
        }
        let m = m
            .to_u64()
            .ok_or_else(|| Error::NotAHilbertPolynomial(format!("m_{i} = {m} is too large")))?;
        if i < s && m < ms[i + 1] {
            return Err(Error::NotAHilbertPolynomial(format!("m_{i} = {m} < m_{} = {}", i + 1, ms[i + 1])));
        }
        ms[i] = m;
        residual = poly_sub(&residual, &macaulay_summand(i, m));
    }
    if !residual.is_empty() {
        return Err(Error::NotAHilbertPolynomial("nonzero residual after peeling".into()));
    }
    Ok(MacaulayForm(ms))
}

pub fn gotzmann_number(rho: &HilbertPolynomial) -> Result<u64> {
    Ok(macaulay_form(rho)?.gotzmann_number())
}

fn rho_at(rho: &HilbertPolynomial, d: u64) -> Result<BigInt> {
    let v = rho.eval(d as i64);
    if !v.is_integer() {
        return Err(Error::NotAHilbertPolynomial(format!("non-integer value at {d}")));
    }
    Ok(v.to_integer())
}

/// The degree-`m` Grassmannian condition: a span `V` of `dim S_m - ρ(m)`
/// degree-`m` monomials lies on the Hilbert scheme iff `S_1 V` has dimension
/// `dim S_{m+1} - ρ(m+1)`. Requires `m` to be at least the Gotzmann number.
pub fn hilbert_point_check(v: &MonomialSet, rho: &HilbertPolynomial) -> Result<bool> {
    let poset = v.poset();
    let m = u64::from(poset.degree());
    let n = poset.n() as u64;
    let gotzmann = gotzmann_number(rho)?;
    if m < gotzmann {
        return Err(Error::InvalidInput(format!("degree {m} is below the Gotzmann number {gotzmann}")));
    }
    let expected = binomial_big(m + n, n) - rho_at(rho, m)?;
    if BigInt::from(v.len()) != expected {
        return Err(Error::WrongCardinality { expected: expected.to_string(), found: v.len() });
    }
    let products: HashSet<_> = v
        .members()
        .iter()
        .flat_map(|a| (0..=poset.n()).map(move |j| a.times_var(j)))
        .collect();
    let target = binomial_big(m + 1 + n, n) - rho_at(rho, m + 1)?;
    Ok(BigInt::from(products.len()) == target)
}

/// Whether `F` is the degree-`m` piece of a saturated Borel-fixed ideal with
/// Hilbert polynomial `ρ` and regularity at most `m`. Unlike
/// [`hilbert_point_check`] this also accepts degrees below the Gotzmann
/// number, which is the setting of tangent-space computations at the
/// regularity of a given point.
pub fn is_hilbert_point(filter: &Filter, rho: &HilbertPolynomial) -> Result<bool> {
    let m = filter.poset().degree();
    let saturation = MonomialIdeal::from_monomial_set(filter).saturate_borel()?;
    if saturation.regularity_borel()? > m {
        return Ok(false);
    }
    if saturation.hilbert_polynomial()? != *rho {
        return Ok(false);
    }
    Ok(saturation.degree_set(filter.poset()) == **filter)
}

/// A Borel-fixed point: its filter in degree `m` and its saturated ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelPoint {
    pub filter: Filter,
    pub saturation: MonomialIdeal,
}

/// All filters of `P(m, n)` with exactly `size` elements, in canonical order
/// (ascending member-index lists). Filters are reached by repeatedly adding a
/// maximal standard monomial (growing from the empty filter) or removing a
/// minimal member (shrinking from the full poset), whichever walk is shorter;
/// each level is deduplicated on bitsets.
pub fn filters_of_size(poset: &Arc<Poset>, size: usize) -> Vec<Filter> {
    let total = poset.len();
    if size > total {
        return Vec::new();
    }
    let grow = size <= total / 2;
    let mut level: HashSet<FixedBitSet> = HashSet::new();
    let start = if grow { MonomialSet::empty(poset) } else { MonomialSet::full(poset) };
    level.insert(start.bits().clone());
    let steps = if grow { size } else { total - size };
    for _ in 0..steps {
        level = level
            .par_iter()
            .flat_map_iter(|bits| {
                (0..total)
                    .filter(|&i| {
                        if grow {
                            !bits.contains(i) && poset.upper_covers(i).iter().all(|&u| bits.contains(u))
                        } else {
                            bits.contains(i) && poset.lower_covers(i).iter().all(|&l| !bits.contains(l))
                        }
                    })
                    .map(|i| {
                        let mut next = bits.clone();
                        next.set(i, grow);
                        next
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let mut out: Vec<Filter> = level
        .into_iter()
        .map(|bits| Filter::new(MonomialSet::from_indices(poset, bits.ones())).expect("walk preserves up-closure"))
        .collect();
    out.sort_by_key(|f| f.indices());
    out
}

/// Every Borel-fixed point on the Hilbert scheme of `P^n` with Hilbert
/// polynomial `ρ`: filters of `P(m, n)`, `m` the Gotzmann number, of size
/// `dim S_m - ρ(m)` that satisfy [`hilbert_point_check`].
pub fn enumerate_borel_points(rho: &HilbertPolynomial, n: usize, cap: usize) -> Result<Vec<BorelPoint>> {
    let form = macaulay_form(rho)?;
    if form.dimension() > n {
        return Err(Error::NotAHilbertPolynomial(format!("dimension {} exceeds ambient P^{n}", form.dimension())));
    }
    let m = form.gotzmann_number();
    let m32 = u32::try_from(m).map_err(|_| Error::InvalidInput(format!("Gotzmann number {m} too large")))?;
    let poset = Poset::build_with_cap(m32, n, cap)?;
    let size = BigInt::from(poset.len()) - rho_at(rho, m)?;
    let Some(size) = size.to_usize() else {
        return Err(Error::NotAHilbertPolynomial(format!("ρ({m}) exceeds dim S_{m}")));
    };
    let mut points = Vec::new();
    for filter in filters_of_size(&poset, size) {
        if hilbert_point_check(&filter, rho)? {
            let saturation = MonomialIdeal::from_monomial_set(&filter).saturate_borel()?;
            points.push(BorelPoint { filter, saturation });
        }
    }
    Ok(points)
}
