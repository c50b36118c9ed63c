//! Exact arithmetic substrate: rationals, dense polynomials, combinatorics.

mod combinat;
mod poly;
pub mod rational;

pub use combinat::{
    binomial, elementary_symmetric_all, factorial, multinomial, pochhammer, rising,
    stirling_first_unsigned, Multiset,
};
pub use poly::Polynomial;
pub use rational::{format_rational, int, parse_rational, parse_rational_list, rat, Rational};
