//! Exact arithmetic: rationals, rational matrices, polynomials, and Gröbner bases.

pub mod groebner;
pub mod parse;
pub mod poly;
pub mod quotient;
pub mod rat;
pub mod unipoly;

pub use groebner::{
    buchberger, buchberger_with, quotient_dimension, GroebnerBasis, GroebnerOptions, GroebnerStats, IdealSummary,
    QuotientDimension,
};
pub use parse::{parse_poly, IdealFile};
pub use poly::{Monomial, MonomialOrder, MultiPoly, Ring};
pub use quotient::{QuotientAlgebra, ShapeBasis};
pub use rat::{format_rat, parse_rat, rat, rat_to_f64, ratio, Rat, RatMatrix};
pub use unipoly::{rat_charpoly, rat_resultant, RatUniPoly};
