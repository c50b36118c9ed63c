#![allow(dead_code)]

use proptest::prelude::*;

use rfdet::detpoly::Sequence;
use rfdet::exactmath::{rat, Rational};

/// Positive rationals `p/q` with `p <= max_num`, `q <= max_den`.
pub fn positive_rational(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_num, 1..=max_den).prop_map(|(p, q)| rat(p, q))
}

/// A rational in `(0, 1]` with denominator at most `max_den`.
pub fn unit_rational(max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_den).prop_flat_map(|q| (1..=q).prop_map(move |p| rat(p, q)))
}

/// Positive sequences `f_0..f_n` with `n` in the given range.
pub fn positive_sequence(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Sequence> {
    n.prop_flat_map(|n| prop::collection::vec(positive_rational(64, 16), n + 1))
        .prop_map(|v| Sequence::raw(v).expect("positive"))
}

/// Root parameters `a_i > 0` for `Π (x + a_i)`.
pub fn root_parameters(count: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(positive_rational(64, 8), count)
}
