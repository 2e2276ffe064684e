//! Sparse polynomials with rational coefficients and linear changes of
//! coordinates acting on them.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::monomial::ExponentVector;
use crate::rational::{format_rational, parse_rational, Rational};

/// A polynomial in `x_0, ..., x_{nvars-1}`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Form {
    nvars: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Form {
    pub fn zero(nvars: usize) -> Self {
        Form { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(a: ExponentVector) -> Self {
        let nvars = a.nvars();
        let mut terms = BTreeMap::new();
        terms.insert(a, Rational::one());
        Form { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (ExponentVector, Rational)>) -> Self {
        let mut f = Form::zero(nvars);
        for (a, c) in terms {
            f.add_term(a, c);
        }
        f
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, a: &ExponentVector) -> Rational {
        self.terms.get(a).cloned().unwrap_or_else(Rational::zero)
    }

    /// The common degree of all terms, or `None` for zero or mixed-degree forms.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(ExponentVector::degree);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    pub fn add_term(&mut self, a: ExponentVector, c: Rational) {
        debug_assert_eq!(a.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(a) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Form, factor: &Rational) {
        for (a, c) in &other.terms {
            self.add_term(a.clone(), c * factor);
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Form {
        let mut f = Form::zero(self.nvars);
        f.add_scaled(self, factor);
        f
    }

    pub fn mul_monomial(&self, m: &ExponentVector) -> Form {
        Form {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, c)| (a.multiply(m), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Form) -> Form {
        let mut out = Form::zero(self.nvars);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.multiply(b), c * d);
            }
        }
        out
    }

    /// Parses text such as `x0^2 + 3/2*x1*x2 - x2^2`.
    pub fn parse(s: &str, nvars: usize) -> Result<Form> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);

        let mut form = Form::zero(nvars);
        for piece in pieces {
            let (negative, body) = match piece.as_bytes()[0] {
                b'-' => (true, &piece[1..]),
                b'+' => (false, &piece[1..]),
                _ => (false, piece),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            let mut coeff = Rational::one();
            let mut vars = Vec::new();
            for factor in body.split('*') {
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= parse_rational(factor)?;
                } else {
                    vars.push(factor);
                }
            }
            let mono = if vars.is_empty() {
                ExponentVector::zeros(nvars)
            } else {
                ExponentVector::parse(&vars.join("*"), Some(nvars))?
            };
            if negative {
                coeff = -coeff;
            }
            form.add_term(mono, coeff);
        }
        Ok(form)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (a, c)) in self.terms.iter().rev().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = a.to_text("x");
            if mono == "1" {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), mono)?;
            }
        }
        Ok(())
    }
}

/// An invertible linear change of coordinates `g`, acting by
/// `g(x_i) = a_{0i} x_0 + ... + a_{ni} x_n` (column `i` is the image of `x_i`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearChange {
    matrix: Matrix,
}

impl LinearChange {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("matrix must be square and nonempty".into()));
        }
        if linalg::rank(&matrix) < n {
            return Err(Error::SingularMatrix);
        }
        Ok(LinearChange { matrix })
    }

    pub fn identity(nvars: usize) -> Self {
        let matrix = (0..nvars)
            .map(|i| (0..nvars).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        LinearChange { matrix }
    }

    pub fn diagonal(entries: &[Rational]) -> Result<Self> {
        let n = entries.len();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { entries[i].clone() } else { Rational::zero() }).collect())
            .collect();
        LinearChange::new(matrix)
    }

    /// `x_i -> x_i + x_{i-1}`, all other variables fixed.
    pub fn elementary(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i < nvars);
        let mut g = LinearChange::identity(nvars);
        g.matrix[i - 1][i] = Rational::one();
        g
    }

    pub fn nvars(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().take(i).all(Zero::is_zero))
    }

    pub fn image_of_variable(&self, i: usize) -> Form {
        let n = self.nvars();
        Form::from_terms(n, (0..n).map(|k| (ExponentVector::unit(n, k), self.matrix[k][i].clone())))
    }

    pub fn apply_monomial(&self, a: &ExponentVector) -> Form {
        let n = self.nvars();
        let mut out = Form::monomial(ExponentVector::zeros(n));
        for (i, &e) in a.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let image = self.image_of_variable(i);
            for _ in 0..e {
                out = out.mul(&image);
            }
        }
        out
    }

    pub fn apply(&self, f: &Form) -> Form {
        let mut out = Form::zero(self.nvars());
        for (a, c) in f.terms() {
            out.add_scaled(&self.apply_monomial(a), c);
        }
        out
    }
}
