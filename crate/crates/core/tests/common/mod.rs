#![allow(dead_code)]

use kacpoly::algebra::{LaurentPolynomial, RationalFunction};
use kacpoly::dimension::DimensionVector;
use kacpoly::series::TruncatedSeries;
use proptest::prelude::*;

pub fn dv(v: &[u32]) -> DimensionVector {
    DimensionVector::new(v.to_vec())
}

pub fn laurent() -> impl Strategy<Value = LaurentPolynomial> {
    (-2i64..=2, prop::collection::vec(-3i64..=3, 0..4))
        .prop_map(|(low, cs)| LaurentPolynomial::from_terms(cs.into_iter().enumerate().map(|(k, c)| (low + k as i64, c))))
}

pub fn nonzero_laurent() -> impl Strategy<Value = LaurentPolynomial> {
    laurent().prop_filter("nonzero", |p| !p.is_zero())
}

pub fn rational() -> impl Strategy<Value = RationalFunction> {
    (laurent(), nonzero_laurent()).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

/// Rational functions in `q` only, small enough for series arithmetic.
pub fn small_rational() -> impl Strategy<Value = RationalFunction> {
    let coeffs = prop::collection::vec(-2i64..=2, 1..3);
    let den = prop::sample::select(vec![
        LaurentPolynomial::one(),
        LaurentPolynomial::from_q_coeffs(&[-1, 1]),
        LaurentPolynomial::from_q_coeffs(&[1, 1]),
        LaurentPolynomial::constant(2),
    ]);
    (coeffs, den, any::<bool>()).prop_map(|(cs, d, odd)| {
        let mut n = LaurentPolynomial::from_q_coeffs(&cs);
        if odd {
            n = n.shift(1);
        }
        RationalFunction::new(n, d).unwrap()
    })
}

pub fn boxes() -> impl Strategy<Value = DimensionVector> {
    prop::sample::select(vec![dv(&[3]), dv(&[2, 1]), dv(&[1, 1, 1]), dv(&[2, 2])])
}

/// A series in the given box with zero constant term.
pub fn series_without_constant(bound: DimensionVector) -> impl Strategy<Value = TruncatedSeries> {
    let n = bound.box_size();
    prop::collection::vec(prop_oneof![3 => Just(RationalFunction::zero()), 2 => small_rational()], n).prop_map(move |cs| {
        TruncatedSeries::from_terms(
            bound.clone(),
            cs.into_iter().enumerate().skip(1).map(|(k, c)| (bound.unflatten(k), c)),
        )
    })
}

pub fn series_with_unit_constant(bound: DimensionVector) -> impl Strategy<Value = TruncatedSeries> {
    series_without_constant(bound.clone()).prop_map(move |s| s.add(&TruncatedSeries::one(bound.clone())).unwrap())
}
