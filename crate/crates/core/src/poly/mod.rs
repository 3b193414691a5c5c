//! Exact sparse polynomials in the root variables `y[i,j]`.

pub(crate) mod bracket;
mod lambda;
mod monomial;
mod polynomial;

pub use bracket::{
    bracket, bracket_generators, generator_bracket, jacobian_rank, poisson_bracket_generator,
};
pub use lambda::LambdaPolynomial;
pub use monomial::Monomial;
pub use polynomial::{evaluate, Point, Polynomial};

pub use num_rational::BigRational as Rational;

/// Integer-valued rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// `p/q` as a reduced rational. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}
