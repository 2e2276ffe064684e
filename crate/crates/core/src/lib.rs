//! Exact computations on Borel-fixed points of Hilbert schemes of projective
//! space: Macaulay forms and Gotzmann numbers, the poset of degree-`m`
//! monomials under Borel moves, Borel-fixed ideals, tangent vectors and their
//! Borel eigenvectors, and Gröbner degenerations along weight vectors.

pub mod degeneration;
pub mod error;
pub mod hilbert;
pub mod ideal;
pub mod io;
pub mod linalg;
pub mod monomial;
pub mod polynomial;
pub mod poset;
pub mod rational;
pub mod tangent;

pub use degeneration::{
    degenerate_report, echelonize, first_order_direction, first_order_fan_sample, generic_change, initial_ideal,
    truncate_at, DegenerationOptions, DegenerationReport, Direction, EchelonBasis, FanRecord, HomogeneousIdealBasis,
};
pub use error::{Error, Result};
pub use hilbert::{
    enumerate_borel_points, gotzmann_number, hilbert_point_check, is_hilbert_point, macaulay_form, BorelPoint,
    HilbertPolynomial, MacaulayForm,
};
pub use ideal::{monomial_in_next_degree, MonomialIdeal};
pub use monomial::{DifferenceVector, ExponentVector, MonomialOrder, VarBound, WeightVector};
pub use polynomial::{Form, LinearChange};
pub use poset::{flip, is_filter, Filter, MonomialSet, OrderIdeal, Poset};
pub use rational::Rational;
pub use tangent::{
    act_on_first_order, act_on_tangent, enumerate_borel_eigenvectors, is_borel_eigenvector, is_tangent,
    tangent_space_basis, torus_eigenvector_type, BorelEigenvector, EigenvectorType, FirstOrderIdeal, TangentVector,
};
