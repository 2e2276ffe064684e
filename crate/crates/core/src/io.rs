//! JSON and text formats for ideals, filters, tangent vectors, eigenvector
//! families and point sets.
//!
//! ```text
//! ideal:   {"n": 2, "generators": [[2,0,0], [1,1,0], "x1^2 - x0*x2"]}
//! filter:  {"m": 2, "n": 2, "members": [[2,0,0], [1,1,0]]}
//! tangent: {"filter": <filter>, "entries": [{"A": [0,3,0], "B": [0,2,1], "c": "3"}]}
//! ```
//!
//! Rationals are written as strings `"p/q"`.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hilbert::BorelPoint;
use crate::ideal::MonomialIdeal;
use crate::monomial::ExponentVector;
use crate::polynomial::Form;
use crate::poset::{Filter, MonomialSet, Poset};
use crate::rational::{self, parse_rational, Rational};
use crate::tangent::{BorelEigenvector, TangentVector};

impl Serialize for MonomialSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MonomialSet", 3)?;
        st.serialize_field("m", &self.poset().degree())?;
        st.serialize_field("n", &self.poset().n())?;
        st.serialize_field("members", &self.members())?;
        st.end()
    }
}

impl Serialize for Filter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_set().serialize(s)
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    #[serde(rename = "A")]
    a: ExponentVector,
    #[serde(rename = "B")]
    b: ExponentVector,
    #[serde(with = "rational")]
    c: Rational,
}

impl Serialize for TangentVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<EntryJson> = self
            .entries()
            .iter()
            .map(|((a, b), c)| EntryJson { a: a.clone(), b: b.clone(), c: c.clone() })
            .collect();
        let mut st = s.serialize_struct("TangentVector", 2)?;
        st.serialize_field("filter", self.base())?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MonomialIdeal", 2)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("generators", self.generators())?;
        st.end()
    }
}

impl Serialize for BorelPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BorelPoint", 2)?;
        st.serialize_field("filter", &self.filter)?;
        st.serialize_field("saturation", &self.saturation)?;
        st.end()
    }
}

impl Serialize for BorelEigenvector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BorelEigenvector", 6)?;
        st.serialize_field("K", &self.ty.k)?;
        st.serialize_field("f_prime", &self.ty.f_prime)?;
        st.serialize_field("f_double_prime", &self.ty.f_double_prime)?;
        st.serialize_field("components", &self.components)?;
        st.serialize_field("multi_component", &self.is_multi_component())?;
        st.serialize_field("vector", &self.vector())?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GeneratorJson {
    Exponents(ExponentVector),
    Text(String),
}

#[derive(Deserialize)]
struct IdealJson {
    n: usize,
    generators: Vec<GeneratorJson>,
}

/// Generators read from ideal JSON, possibly non-monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealInput {
    pub nvars: usize,
    pub forms: Vec<Form>,
}

impl IdealInput {
    /// The monomial ideal, when every generator is a monomial.
    pub fn monomial_ideal(&self) -> Result<MonomialIdeal> {
        let gens = self
            .forms
            .iter()
            .map(|f| match f.terms().iter().next() {
                Some((a, _)) if f.terms().len() == 1 => Ok(a.clone()),
                _ => Err(Error::InvalidInput(format!("generator {f} is not a monomial"))),
            })
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(self.nvars, gens)
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_ideal_json(text: &str) -> Result<IdealInput> {
    let raw: IdealJson = serde_json::from_str(text).map_err(json_error)?;
    let nvars = raw.n + 1;
    let forms = raw
        .generators
        .into_iter()
        .map(|g| match g {
            GeneratorJson::Exponents(a) if a.nvars() == nvars => Ok(Form::monomial(a)),
            GeneratorJson::Exponents(a) => Err(Error::LengthMismatch { expected: nvars, found: a.nvars() }),
            GeneratorJson::Text(t) => Form::parse(&t, nvars),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdealInput { nvars, forms })
}

#[derive(Deserialize)]
struct SetJson {
    m: u32,
    n: usize,
    members: Vec<ExponentVector>,
}

fn set_from_raw(raw: SetJson) -> Result<MonomialSet> {
    let poset = Poset::build(raw.m, raw.n)?;
    MonomialSet::from_monomials(&poset, &raw.members)
}

pub fn parse_filter_json(text: &str) -> Result<Filter> {
    let raw: SetJson = serde_json::from_str(text).map_err(json_error)?;
    Filter::new(set_from_raw(raw)?)
}

#[derive(Deserialize)]
struct TangentJson {
    filter: SetJson,
    entries: Vec<EntryJson>,
}

pub fn parse_tangent_json(text: &str) -> Result<TangentVector> {
    let raw: TangentJson = serde_json::from_str(text).map_err(json_error)?;
    let filter = Filter::new(set_from_raw(raw.filter)?)?;
    TangentVector::new(&filter, raw.entries.into_iter().map(|e| (e.a, e.b, e.c)))
}

/// One point per line as whitespace- or comma-separated rationals; `#`
/// starts a comment.
pub fn parse_points(text: &str) -> Result<Vec<Vec<Rational>>> {
    let mut points = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let coords = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = points.first().map(Vec::len) {
            if coords.len() != first {
                return Err(Error::LengthMismatch { expected: first, found: coords.len() });
            }
        }
        points.push(coords);
    }
    if points.is_empty() {
        return Err(Error::Parse("no points".into()));
    }
    Ok(points)
}
