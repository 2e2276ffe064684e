//! Exponent vectors, variable statistics, Borel moves, monomial orders and
//! weight vectors.
//!
//! Variables are indexed from 0, so a vector of length `n + 1` describes a
//! monomial in `x_0, ..., x_n`. All orders satisfy `x_0 > x_1 > ... > x_n`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The exponent vector `A` of a monomial `x^A`.
///
/// The derived `Ord` compares entries left to right, which is the Lex order
/// on monomials of equal degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

/// Extended-integer result of [`ExponentVector::max_var`] and
/// [`ExponentVector::min_var`]; the constant monomial has no dividing
/// variable, so `max(1) = -inf` and `min(1) = +inf`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum VarBound {
    NegInfinity,
    Index(usize),
    PosInfinity,
}

impl VarBound {
    pub fn index(self) -> Option<usize> {
        match self {
            VarBound::Index(i) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for VarBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarBound::NegInfinity => write!(f, "-inf"),
            VarBound::Index(i) => write!(f, "{i}"),
            VarBound::PosInfinity => write!(f, "+inf"),
        }
    }
}

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zeros(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    /// The variable `x_i` itself.
    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        ExponentVector(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Exponent of `x_i`.
    pub fn deg_i(&self, i: usize) -> Result<u32> {
        self.0.get(i).copied().ok_or(Error::VariableOutOfRange { index: i, nvars: self.nvars() })
    }

    /// Index of the last variable dividing the monomial.
    pub fn max_var(&self) -> VarBound {
        self.0
            .iter()
            .rposition(|&e| e > 0)
            .map_or(VarBound::NegInfinity, VarBound::Index)
    }

    /// Index of the first variable dividing the monomial.
    pub fn min_var(&self) -> VarBound {
        self.0
            .iter()
            .position(|&e| e > 0)
            .map_or(VarBound::PosInfinity, VarBound::Index)
    }

    /// Adds `Δ_i = E_{i-1} - E_i`, i.e. replaces one `x_i` by `x_{i-1}`.
    /// Returns `None` when `x_i` does not divide the monomial or `i` is not in
    /// `1..=n`.
    pub fn borel_move(&self, i: usize) -> Option<Self> {
        if i == 0 || i >= self.nvars() || self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        e[i - 1] += 1;
        Some(ExponentVector(e))
    }

    /// `(x_i / x_j) x^A`, if `x_j` divides `x^A`.
    pub fn exchange(&self, i: usize, j: usize) -> Option<Self> {
        if i >= self.nvars() || j >= self.nvars() || self.0[j] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[j] -= 1;
        e[i] += 1;
        Some(ExponentVector(e))
    }

    pub fn multiply(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars(), other.nvars());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `x_i x^A`.
    pub fn times_var(&self, i: usize) -> Self {
        let mut e = self.0.clone();
        e[i] += 1;
        ExponentVector(e)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.nvars() == other.nvars() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `x^A / x^B` when `x^B` divides `x^A`.
    pub fn quotient(&self, divisor: &Self) -> Option<Self> {
        if !divisor.divides(self) {
            return None;
        }
        Some(ExponentVector(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect()))
    }

    /// `A + K`, or `None` if some entry would become negative.
    pub fn shift(&self, k: &DifferenceVector) -> Option<Self> {
        if k.len() != self.nvars() {
            return None;
        }
        self.0
            .iter()
            .zip(k.entries())
            .map(|(&a, &d)| u32::try_from(i64::from(a) + d).ok())
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }

    /// `self - other` as a difference vector.
    pub fn difference(&self, other: &Self) -> DifferenceVector {
        DifferenceVector(self.0.iter().zip(&other.0).map(|(&a, &b)| i64::from(a) - i64::from(b)).collect())
    }

    /// The monomial with the last variable deleted (set to exponent zero).
    pub fn without_last(&self) -> Self {
        let mut e = self.0.clone();
        if let Some(last) = e.last_mut() {
            *last = 0;
        }
        ExponentVector(e)
    }

    pub fn weight(&self, w: &WeightVector) -> Result<BigInt> {
        w.weight_of(self)
    }

    /// All monomials of degree `d` in `nvars` variables, Lex-descending.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<ExponentVector> {
        fn fill(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(ExponentVector(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                fill(pos + 1, left - e, cur, out);
            }
            cur[pos] = 0;
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(ExponentVector(Vec::new()));
            }
            return out;
        }
        fill(0, d, &mut vec![0; nvars], &mut out);
        out
    }

    /// Text form such as `x0^2*x1^3*x3`; the constant monomial prints as `1`.
    pub fn to_text(&self, var: &str) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("{var}{i}") } else { format!("{var}{i}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Parses either the bracketed form `[2,3,0,1]` or the text form
    /// `x0^2*x1^3*x3`. For the text form the number of variables is taken
    /// from `nvars` when given, otherwise from the largest index present.
    pub fn parse(s: &str, nvars: Option<usize>) -> Result<Self> {
        let s = s.trim();
        let parsed = if let Some(inner) = s.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unterminated exponent list {s:?}")))?;
            let exps = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent {t:?}"))))
                    .collect::<Result<Vec<_>>>()?
            };
            ExponentVector(exps)
        } else {
            parse_text(s, nvars)?
        };
        if let Some(nv) = nvars {
            if parsed.nvars() != nv {
                return Err(Error::LengthMismatch { expected: nv, found: parsed.nvars() });
            }
        }
        Ok(parsed)
    }
}

fn parse_text(s: &str, nvars: Option<usize>) -> Result<ExponentVector> {
    let mut factors: Vec<(usize, u32)> = Vec::new();
    if s != "1" {
        for factor in s.split('*') {
            let factor = factor.trim();
            let (var, exp) = match factor.split_once('^') {
                Some((v, e)) => {
                    let e = e.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                    (v.trim(), e)
                }
                None => (factor, 1),
            };
            let digits = var.trim_start_matches(|c: char| c.is_ascii_alphabetic() || c == '_');
            if digits.len() == var.len() || digits.is_empty() {
                return Err(Error::Parse(format!("bad variable {var:?}")));
            }
            let idx = digits.parse::<usize>().map_err(|_| Error::Parse(format!("bad variable {var:?}")))?;
            factors.push((idx, exp));
        }
    }
    let needed = factors.iter().map(|(i, _)| i + 1).max().unwrap_or(0);
    let len = match nvars {
        Some(nv) if needed > nv => return Err(Error::VariableOutOfRange { index: needed - 1, nvars: nv }),
        Some(nv) => nv,
        None => needed,
    };
    let mut e = vec![0u32; len];
    for (i, x) in factors {
        e[i] += x;
    }
    Ok(ExponentVector(e))
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("x"))
    }
}

/// An integer vector such as `K = B - A` or `Δ_i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DifferenceVector(Vec<i64>);

impl DifferenceVector {
    pub fn new(entries: Vec<i64>) -> Self {
        DifferenceVector(entries)
    }

    /// `Δ_i = E_{i-1} - E_i`.
    pub fn delta(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i < nvars, "Δ_i needs 1 <= i <= n");
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        e[i] = -1;
        DifferenceVector(e)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn weight(&self, w: &WeightVector) -> Result<BigInt> {
        if w.len() != self.len() {
            return Err(Error::LengthMismatch { expected: w.len(), found: self.len() });
        }
        Ok(self.0.iter().zip(w.weights()).map(|(&k, wi)| wi * k).sum())
    }
}

impl fmt::Display for DifferenceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Integer weights `w_0, ..., w_n`; the weight of `x^A` is `w · A`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeightVector(Vec<BigInt>);

impl WeightVector {
    pub fn new(weights: Vec<BigInt>) -> Self {
        WeightVector(weights)
    }

    pub fn from_i64(weights: &[i64]) -> Self {
        WeightVector(weights.iter().map(|&w| BigInt::from(w)).collect())
    }

    /// Weights `w_i = (d+1)^(n-i)`: strictly decreasing, Lex-inducing, and
    /// distinguishing all monomials of degree at most `d` in `n + 1`
    /// variables (base-`(d+1)` digits of an exponent vector are unique).
    pub fn lex_inducing(n: usize, d: u64) -> Result<Self> {
        if n < 1 || d < 1 {
            return Err(Error::InvalidInput("lex weight needs n >= 1 and d >= 1".into()));
        }
        let base = BigInt::from(d + 1);
        let mut weights = Vec::with_capacity(n + 1);
        let mut p = BigInt::one();
        for _ in 0..=n {
            weights.push(p.clone());
            p *= &base;
        }
        weights.reverse();
        Ok(WeightVector(weights))
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight_of(&self, a: &ExponentVector) -> Result<BigInt> {
        if a.nvars() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: a.nvars() });
        }
        Ok(a.exponents().iter().zip(&self.0).map(|(&e, w)| w * e).sum())
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.0.windows(2).all(|p| p[0] > p[1])
    }

    /// True iff all degree-`d` monomials in `n + 1` variables receive
    /// pairwise distinct weights (and hence so do those of any lower degree).
    pub fn distinguishes(&self, n: usize, d: u64) -> bool {
        if self.len() != n + 1 {
            return false;
        }
        let Ok(d) = u32::try_from(d) else { return false };
        let mut seen = HashSet::new();
        ExponentVector::all_of_degree(n + 1, d)
            .iter()
            .all(|a| seen.insert(self.weight_of(a).expect("lengths checked")))
    }

    pub fn scaled(&self, factor: i64) -> Self {
        WeightVector(self.0.iter().map(|w| w * factor).collect())
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad weight {t:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(WeightVector)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(BigInt::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for WeightVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(BigInt::to_string).collect();
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(d)?;
        parts
            .iter()
            .map(|p| p.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(WeightVector)
    }
}

/// A total order on monomials of equal degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    Lex,
    RevLex,
    /// Compare `w`-weights; exact ties fall back to Lex.
    Weight(WeightVector),
}

impl MonomialOrder {
    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::LengthMismatch { expected: a.nvars(), found: b.nvars() });
        }
        if a.degree() != b.degree() {
            return Err(Error::DegreeMismatch { left: a.degree().into(), right: b.degree().into() });
        }
        Ok(match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::RevLex => revlex(a, b),
            MonomialOrder::Weight(w) => w.weight_of(a)?.cmp(&w.weight_of(b)?).then_with(|| a.cmp(b)),
        })
    }
}

/// Reverse lexicographic comparison of equal-degree monomials: the one with
/// the smaller exponent at the last differing position is larger.
fn revlex(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// `C(a, b)` for small arguments.
pub fn binomial(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    (0..b).fold(1u128, |acc, i| acc * u128::from(a - i) / u128::from(i + 1))
}

/// `C(a, b)` exactly, for sizes that may exceed `u128`.
pub fn binomial_big(a: u64, b: u64) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    (0..b).fold(BigInt::one(), |acc, i| acc * BigInt::from(a - i) / BigInt::from(i + 1))
}
