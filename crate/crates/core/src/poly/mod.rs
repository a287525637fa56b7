//! Polynomials over the Gaussian rationals, Gröbner bases and ideals.

mod binomial;
mod coeff;
mod groebner;
mod ideal;
mod monomial;
mod pairs;
mod parse;
mod polynomial;
mod radical;
mod ring;

pub use binomial::{binomial_groebner, binomial_member, minimal_generators, reduce_monomial, toric_ideal, Binomial};
pub use coeff::{Coefficient, GaussRat};
pub use groebner::{groebner, is_groebner, normal_form};
pub(crate) use ideal::binomial_poly;
pub use ideal::IdealBasis;
pub use monomial::{Monomial, TermOrder};
pub use parse::{parse_polynomial, parse_radical};
pub use polynomial::Polynomial;
pub use radical::RadicalPolynomial;
pub use ring::PolyRing;

pub(crate) use coeff::rat_to_f64;
pub(crate) use polynomial::cmul;
