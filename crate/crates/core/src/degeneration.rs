//! Degenerating a point of the Hilbert scheme along a one-parameter
//! subgroup `λ_w(t)` after a generic change of coordinates: the limit
//! initial ideal, the tangent direction of arrival, and sampling of the
//! first-order Gröbner fan.
//!
//! Everything happens in the single degree `m` (the Gotzmann number) by
//! exact linear algebra: the echelon basis with respect to `w` has leads
//! `x^{A_i}` forming the limit, and the smallest weight drop
//! `w · (A_i - B)` among its tail terms selects the direction `K = B - A_i`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{gotzmann_number, HilbertPolynomial};
use crate::ideal::MonomialIdeal;
use crate::linalg::{self, Matrix};
use crate::monomial::{binomial, DifferenceVector, ExponentVector, WeightVector};
use crate::polynomial::{Form, LinearChange};
use crate::poset::{Filter, MonomialSet, Poset};
use crate::rational::Rational;
use crate::tangent::{is_borel_eigenvector, is_tangent, torus_eigenvector_type, TangentVector};

/// Entries of the random coordinate change lie in `[-H, H]`.
pub const DEFAULT_ENTRY_BOUND: i64 = 50;

const STREAM_CHANGE: u64 = 0;
const STREAM_WEIGHTS: u64 = 1;
const STREAM_POINTS: u64 = 2;

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// A basis of the degree-`m` piece `I_m` of a homogeneous ideal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomogeneousIdealBasis {
    nvars: usize,
    m: u32,
    forms: Vec<Form>,
}

impl HomogeneousIdealBasis {
    /// Checks that every form is homogeneous of degree `m` and that the forms
    /// are linearly independent.
    pub fn new(nvars: usize, m: u32, forms: Vec<Form>) -> Result<Self> {
        for f in &forms {
            if f.nvars() != nvars {
                return Err(Error::LengthMismatch { expected: nvars, found: f.nvars() });
            }
            match f.homogeneous_degree() {
                Some(d) if d == m => {}
                Some(d) => return Err(Error::DegreeMismatch { left: m.into(), right: d.into() }),
                None => return Err(Error::DependentForms),
            }
        }
        let basis = HomogeneousIdealBasis { nvars, m, forms };
        if linalg::rank(&basis.coefficient_matrix(&basis.monomials())) < basis.forms.len() {
            return Err(Error::DependentForms);
        }
        Ok(basis)
    }

    /// The degree-`m` forms vanishing at the given points of `P^n`.
    pub fn from_points(points: &[Vec<Rational>], m: u32) -> Result<Self> {
        let nvars = points.first().map(Vec::len).ok_or_else(|| Error::InvalidInput("no points".into()))?;
        if let Some(p) = points.iter().find(|p| p.len() != nvars) {
            return Err(Error::LengthMismatch { expected: nvars, found: p.len() });
        }
        if points.iter().any(|p| p.iter().all(Zero::is_zero)) {
            return Err(Error::InvalidInput("the zero vector is not a point".into()));
        }
        let monomials = ExponentVector::all_of_degree(nvars, m);
        let evaluation: Matrix = points.iter().map(|p| monomials.iter().map(|a| evaluate(a, p)).collect()).collect();
        let forms = linalg::nullspace(&evaluation, monomials.len())
            .into_iter()
            .map(|v| Form::from_terms(nvars, monomials.iter().cloned().zip(v)))
            .collect();
        HomogeneousIdealBasis::new(nvars, m, forms)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Whether every form is a single monomial.
    pub fn is_monomial(&self) -> bool {
        self.forms.iter().all(|f| f.terms().len() == 1)
    }

    fn monomials(&self) -> Vec<ExponentVector> {
        ExponentVector::all_of_degree(self.nvars, self.m)
    }

    fn coefficient_matrix(&self, columns: &[ExponentVector]) -> Matrix {
        self.forms.iter().map(|f| columns.iter().map(|a| f.coefficient(a)).collect()).collect()
    }

    pub fn transformed(&self, g: &LinearChange) -> Result<Self> {
        if g.nvars() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, found: g.nvars() });
        }
        Ok(HomogeneousIdealBasis { nvars: self.nvars, m: self.m, forms: self.forms.iter().map(|f| g.apply(f)).collect() })
    }
}

fn evaluate(a: &ExponentVector, p: &[Rational]) -> Rational {
    a.exponents().iter().zip(p).fold(Rational::one(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
}

/// A linear basis of `I_m` for the ideal generated by homogeneous `generators`.
pub fn truncate_at(generators: &[Form], nvars: usize, m: u32) -> Result<HomogeneousIdealBasis> {
    let mut products = Vec::new();
    for g in generators.iter().filter(|g| !g.is_zero()) {
        let d = g
            .homogeneous_degree()
            .ok_or_else(|| Error::InvalidInput(format!("generator {g} is not homogeneous")))?;
        if d > m {
            let max = generators.iter().filter_map(Form::homogeneous_degree).max().unwrap_or(d);
            return Err(Error::DegreeTooSmall { m, max_generator_degree: max });
        }
        for mult in ExponentVector::all_of_degree(nvars, m - d) {
            products.push(g.mul_monomial(&mult));
        }
    }
    let columns = ExponentVector::all_of_degree(nvars, m);
    let matrix: Matrix = products.iter().map(|f| columns.iter().map(|a| f.coefficient(a)).collect()).collect();
    let forms = linalg::rref(matrix)
        .rows
        .into_iter()
        .map(|row| Form::from_terms(nvars, columns.iter().cloned().zip(row)))
        .collect();
    Ok(HomogeneousIdealBasis { nvars, m, forms })
}

/// A pseudorandom invertible integer matrix with entries in `[-bound, bound]`.
pub fn random_linear_change(nvars: usize, seed: u64, bound: i64) -> LinearChange {
    let mut r = rng(seed, STREAM_CHANGE);
    loop {
        let matrix: Matrix = (0..nvars)
            .map(|_| (0..nvars).map(|_| Rational::from_integer(r.gen_range(-bound..=bound).into())).collect())
            .collect();
        if let Ok(g) = LinearChange::new(matrix) {
            return g;
        }
    }
}

/// Applies the seeded random coordinate change to every basis form.
pub fn generic_change(basis: &HomogeneousIdealBasis, seed: u64) -> (HomogeneousIdealBasis, LinearChange) {
    let g = random_linear_change(basis.nvars, seed, DEFAULT_ENTRY_BOUND);
    (basis.transformed(&g).expect("sizes agree"), g)
}

/// `count` points of `P^n` with integer coordinates in `[-bound, bound]`
/// imposing independent conditions on forms of degree `m`.
pub fn random_points(n: usize, count: usize, m: u32, seed: u64, bound: i64) -> Vec<Vec<Rational>> {
    let mut r = rng(seed, STREAM_POINTS);
    let monomials = ExponentVector::all_of_degree(n + 1, m);
    loop {
        let points: Vec<Vec<Rational>> = (0..count)
            .map(|_| (0..=n).map(|_| Rational::from_integer(r.gen_range(-bound..=bound).into())).collect())
            .collect();
        let evaluation: Matrix = points.iter().map(|p| monomials.iter().map(|a| evaluate(a, p)).collect()).collect();
        if linalg::rank(&evaluation) == count {
            return points;
        }
    }
}

/// Reduced echelon basis whose pivots are the `w`-largest monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EchelonBasis {
    nvars: usize,
    m: u32,
    weight: WeightVector,
    forms: Vec<Form>,
    leads: Vec<ExponentVector>,
}

impl EchelonBasis {
    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    /// The lead `x^{A_i}` of each form, in the order of [`Self::forms`].
    pub fn leads(&self) -> &[ExponentVector] {
        &self.leads
    }

    pub fn weight(&self) -> &WeightVector {
        &self.weight
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// The leads as a subset of `P(m, n)`.
    pub fn lead_set(&self) -> Result<MonomialSet> {
        let poset = Poset::build(self.m, self.nvars - 1)?;
        MonomialSet::from_monomials(&poset, &self.leads)
    }

    /// The basis of the ideal `λ_w(t) · I` with each form rescaled so its
    /// lead keeps coefficient 1: the tail term `c x^B` of the form with lead
    /// `x^A` becomes `c t^{w·(A-B)} x^B`.
    pub fn flow(&self, t: &Rational) -> Result<HomogeneousIdealBasis> {
        let mut forms = Vec::with_capacity(self.forms.len());
        for (f, lead) in self.forms.iter().zip(&self.leads) {
            let lead_weight = self.weight.weight_of(lead)?;
            let mut out = Form::zero(self.nvars);
            for (b, c) in f.terms() {
                let drop = drop_exponent(&(&lead_weight - self.weight.weight_of(b)?))?;
                out.add_term(b.clone(), c * num_traits::pow(t.clone(), drop));
            }
            forms.push(out);
        }
        HomogeneousIdealBasis::new(self.nvars, self.m, forms)
    }
}

fn drop_exponent(drop: &BigInt) -> Result<usize> {
    num_traits::ToPrimitive::to_usize(drop).ok_or_else(|| Error::InvalidInput(format!("weight drop {drop} out of range")))
}

/// Gaussian elimination pivoting on `w`-maximal monomials.
pub fn echelonize(basis: &HomogeneousIdealBasis, w: &WeightVector) -> Result<EchelonBasis> {
    let n = basis.nvars - 1;
    if w.len() != basis.nvars {
        return Err(Error::LengthMismatch { expected: basis.nvars, found: w.len() });
    }
    if !w.distinguishes(n, basis.m.into()) {
        return Err(Error::WeightNotDistinguishing { degree: basis.m.into() });
    }
    let mut columns = basis.monomials();
    columns.sort_by_cached_key(|a| std::cmp::Reverse(w.weight_of(a).expect("lengths checked")));
    let reduced = linalg::rref(basis.coefficient_matrix(&columns));
    if reduced.pivots.len() < basis.forms.len() {
        return Err(Error::DependentForms);
    }
    let leads = reduced.pivots.iter().map(|&p| columns[p].clone()).collect();
    let forms = reduced
        .rows
        .into_iter()
        .map(|row| Form::from_terms(basis.nvars, columns.iter().cloned().zip(row)))
        .collect();
    Ok(EchelonBasis { nvars: basis.nvars, m: basis.m, weight: w.clone(), forms, leads })
}

/// The degree-`m` piece of `init_w(I)`: the set of echelon leads.
pub fn initial_ideal(basis: &HomogeneousIdealBasis, w: &WeightVector) -> Result<MonomialSet> {
    echelonize(basis, w)?.lead_set()
}

/// The direction of arrival at the limit point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Direction {
    /// `K = B - A_i` for the tail terms of minimal weight drop.
    pub k: DifferenceVector,
    /// The minimal drop `w · (A_i - B) = -w · K`.
    pub drop: BigInt,
    /// The entries `(A_i, A_i + K, c)` of the tangent vector.
    pub entries: Vec<(ExponentVector, ExponentVector, Rational)>,
}

impl Direction {
    pub fn tangent_vector(&self, limit: &Filter) -> Result<TangentVector> {
        TangentVector::new(limit, self.entries.iter().cloned())
    }
}

/// Finds the tail terms of smallest weight drop in the echelon basis. Two
/// different difference vectors attaining it raise [`Error::DirectionTie`];
/// a monomial basis raises [`Error::NoDirection`].
pub fn first_order_direction(echelon: &EchelonBasis) -> Result<Direction> {
    let w = &echelon.weight;
    let mut best: Option<(BigInt, BTreeSet<DifferenceVector>)> = None;
    for (f, lead) in echelon.forms.iter().zip(&echelon.leads) {
        let lead_weight = w.weight_of(lead)?;
        for b in f.terms().keys().filter(|b| *b != lead) {
            let drop = &lead_weight - w.weight_of(b)?;
            debug_assert!(drop.is_positive());
            let k = b.difference(lead);
            match &mut best {
                Some((d, ks)) if *d == drop => {
                    ks.insert(k);
                }
                Some((d, _)) if *d < drop => {}
                _ => best = Some((drop, BTreeSet::from([k]))),
            }
        }
    }
    let (drop, ks) = best.ok_or(Error::NoDirection)?;
    if ks.len() > 1 {
        return Err(Error::DirectionTie);
    }
    let k = ks.into_iter().next().expect("nonempty");
    let entries = echelon
        .forms
        .iter()
        .zip(&echelon.leads)
        .filter_map(|(f, lead)| {
            let b = lead.shift(&k)?;
            let c = f.coefficient(&b);
            (!c.is_zero()).then(|| (lead.clone(), b, c))
        })
        .collect();
    Ok(Direction { k, drop, entries })
}

/// Knobs for [`degenerate_report`].
#[derive(Clone, Debug, Default)]
pub struct DegenerationOptions {
    /// Defaults to the Lex-inducing weight distinguishing degree `r·m`.
    pub weight: Option<WeightVector>,
    pub seed: u64,
    /// Replaces the random coordinate change.
    pub change: Option<LinearChange>,
}

/// Outcome of one degeneration run.
#[derive(Clone, Debug, Serialize)]
pub struct DegenerationReport {
    pub n: usize,
    pub m: u32,
    pub r: usize,
    pub seed: u64,
    pub weight: WeightVector,
    pub limit: MonomialSet,
    #[serde(rename = "K")]
    pub k: Option<DifferenceVector>,
    pub weight_drop: Option<String>,
    pub tangent: Option<TangentVector>,
    pub f_prime: Option<MonomialSet>,
    pub f_double_prime: Option<MonomialSet>,
    pub borel_fixed_limit: bool,
    pub borel_eigenvector_tangent: bool,
    pub tangent_verified: bool,
    pub genericity_note: String,
}

/// The basis of `I_m` for the Gotzmann number `m` of `ρ`, with `r` checked
/// against `dim S_m - ρ(m)`.
pub fn basis_for(generators: &[Form], nvars: usize, rho: &HilbertPolynomial) -> Result<HomogeneousIdealBasis> {
    let m = u32::try_from(gotzmann_number(rho)?).map_err(|_| Error::InvalidInput("Gotzmann number too large".into()))?;
    let basis = truncate_at(generators, nvars, m)?;
    let expected = expected_rank(nvars, m, rho)?;
    if basis.len() != expected {
        return Err(Error::WrongCardinality { expected: expected.to_string(), found: basis.len() });
    }
    Ok(basis)
}

fn expected_rank(nvars: usize, m: u32, rho: &HilbertPolynomial) -> Result<usize> {
    let total = binomial(u64::from(m) + nvars as u64 - 1, nvars as u64 - 1);
    let value = rho.eval(i64::from(m));
    let r = Rational::from_integer(BigInt::from(total)) - value;
    num_traits::ToPrimitive::to_usize(&r.to_integer())
        .filter(|_| r.is_integer())
        .ok_or_else(|| Error::NotAHilbertPolynomial(format!("ρ({m}) exceeds dim S_{m}")))
}

fn resolve_weight(w: Option<&WeightVector>, n: usize, degree: u64) -> Result<WeightVector> {
    let w = match w {
        Some(w) => w.clone(),
        None => WeightVector::lex_inducing(n, degree)?,
    };
    if w.len() != n + 1 {
        return Err(Error::LengthMismatch { expected: n + 1, found: w.len() });
    }
    if !w.distinguishes(n, degree) {
        return Err(Error::WeightNotDistinguishing { degree });
    }
    if !w.is_strictly_decreasing() {
        return Err(Error::WeightNotDecreasing);
    }
    Ok(w)
}

fn run(basis: &HomogeneousIdealBasis, rho: &HilbertPolynomial, w: &WeightVector, g: &LinearChange, seed: u64) -> Result<DegenerationReport> {
    let n = basis.nvars - 1;
    let moved = basis.transformed(g)?;
    let echelon = echelonize(&moved, w)?;
    let limit = echelon.lead_set()?;
    let borel_fixed_limit = MonomialIdeal::from_monomial_set(&limit).is_borel_fixed();
    let mut report = DegenerationReport {
        n,
        m: basis.m,
        r: basis.len(),
        seed,
        weight: w.clone(),
        limit: limit.clone(),
        k: None,
        weight_drop: None,
        tangent: None,
        f_prime: None,
        f_double_prime: None,
        borel_fixed_limit,
        borel_eigenvector_tangent: false,
        tangent_verified: false,
        genericity_note: String::new(),
    };
    let direction = match first_order_direction(&echelon) {
        Ok(d) => d,
        Err(Error::NoDirection) => {
            report.genericity_note = "already at the limit point, no direction".into();
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.k = Some(direction.k.clone());
    report.weight_drop = Some(direction.drop.to_string());
    if let Ok(filter) = Filter::new(limit) {
        let v = direction.tangent_vector(&filter)?;
        report.borel_eigenvector_tangent = is_borel_eigenvector(&v);
        report.tangent_verified = match is_tangent(&v, rho) {
            Ok(ok) => ok,
            Err(Error::NotAHilbertPoint(_)) => false,
            Err(e) => return Err(e),
        };
        if let Some(ty) = torus_eigenvector_type(&v) {
            report.f_prime = Some(ty.f_prime);
            report.f_double_prime = Some(ty.f_double_prime);
        }
        report.tangent = Some(v);
    }
    Ok(report)
}

/// Truncates at the Gotzmann number, applies a generic coordinate change,
/// and degenerates along `w`. The limit is compared against a second
/// coordinate change (seed `seed + 1`) and any disagreement is reported in
/// the genericity note.
pub fn degenerate_report(
    generators: &[Form],
    nvars: usize,
    rho: &HilbertPolynomial,
    options: &DegenerationOptions,
) -> Result<DegenerationReport> {
    let basis = basis_for(generators, nvars, rho)?;
    let n = nvars - 1;
    let w = resolve_weight(options.weight.as_ref(), n, basis.len() as u64 * u64::from(basis.m))?;
    let seed = options.seed;
    let g = match &options.change {
        Some(g) => g.clone(),
        None => random_linear_change(nvars, seed, DEFAULT_ENTRY_BOUND),
    };
    let mut report = run(&basis, rho, &w, &g, seed)?;
    let note = if options.change.is_some() {
        "coordinate change supplied by caller".to_string()
    } else {
        let other_seed = seed.wrapping_add(1);
        let other = random_linear_change(nvars, other_seed, DEFAULT_ENTRY_BOUND);
        let other_limit = echelonize(&basis.transformed(&other)?, &w)?.lead_set()?;
        if other_limit == report.limit {
            format!("limit agrees with seed {other_seed}")
        } else {
            format!("limit differs for seed {other_seed}: {}", other_limit.to_text())
        }
    };
    if report.genericity_note.is_empty() {
        report.genericity_note = note;
    } else {
        report.genericity_note = format!("{}; {note}", report.genericity_note);
    }
    Ok(report)
}

/// One sampled weight of the first-order fan.
#[derive(Clone, Debug, Serialize)]
pub struct FanRecord {
    pub weight: WeightVector,
    pub limit: MonomialSet,
    #[serde(rename = "K")]
    pub k: Option<DifferenceVector>,
    pub moved: Option<MonomialSet>,
    pub borel_eigenvector_tangent: bool,
}

/// A strictly decreasing weight `w_n = 0 < ... < w_0` with gaps drawn from
/// `[1, max_gap]`, resampled until it distinguishes degree `degree`.
pub fn random_decreasing_weight(r: &mut ChaCha8Rng, n: usize, degree: u64, max_gap: i64) -> WeightVector {
    loop {
        let mut weights = vec![0i64; n + 1];
        for i in (0..n).rev() {
            weights[i] = weights[i + 1] + r.gen_range(1..=max_gap);
        }
        let w = WeightVector::from_i64(&weights);
        if w.distinguishes(n, degree) {
            return w;
        }
    }
}

/// Runs the degeneration for `trials` random decreasing weights, all with
/// the coordinate change of `seed`.
pub fn first_order_fan_sample(
    generators: &[Form],
    nvars: usize,
    rho: &HilbertPolynomial,
    seed: u64,
    trials: usize,
) -> Result<Vec<FanRecord>> {
    let basis = basis_for(generators, nvars, rho)?;
    let n = nvars - 1;
    let degree = basis.len() as u64 * u64::from(basis.m);
    let mut weight_rng = rng(seed, STREAM_WEIGHTS);
    let weights: Vec<WeightVector> =
        (0..trials).map(|_| random_decreasing_weight(&mut weight_rng, n, degree, 1_000_000)).collect();
    let g = random_linear_change(nvars, seed, DEFAULT_ENTRY_BOUND);
    weights
        .par_iter()
        .map(|w| {
            let report = run(&basis, rho, w, &g, seed)?;
            Ok(FanRecord {
                weight: w.clone(),
                limit: report.limit,
                k: report.k,
                moved: report.tangent.as_ref().and_then(torus_eigenvector_type).map(|t| t.moved().clone()),
                borel_eigenvector_tangent: report.borel_eigenvector_tangent,
            })
        })
        .collect()
}
