#![allow(dead_code)]

use dgla::artin::{parse_ring, ArtinAlgebra};
use dgla::dgla::fixtures::{all_fixture_names, fixture};
use dgla::dgla::Dgla;
use dgla::linalg::scalar::int;
use dgla::linalg::{Matrix, Scalar};
use proptest::prelude::*;

/// Seeds come from the strategy; nothing is persisted between runs.
pub fn cases(n: u32) -> ProptestConfig {
    ProptestConfig {
        cases: n,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

pub const RINGS: &[&str] = &["eps", "t^3", "x^2,xy,y^2", "t^4", "x^2,y^2"];

pub fn any_fixture() -> impl Strategy<Value = (String, Dgla)> {
    let names = all_fixture_names();
    (0..names.len()).prop_map(move |i| (names[i].clone(), fixture(&names[i]).unwrap()))
}

pub fn fixture_from(names: &'static [&'static str]) -> impl Strategy<Value = (String, Dgla)> {
    (0..names.len()).prop_map(move |i| (names[i].to_string(), fixture(names[i]).unwrap()))
}

pub fn ring_from(names: &'static [&'static str]) -> impl Strategy<Value = (String, ArtinAlgebra)> {
    (0..names.len()).prop_map(move |i| (names[i].to_string(), parse_ring(names[i]).unwrap()))
}

pub fn small_int() -> impl Strategy<Value = Scalar> {
    (-3i64..=3).prop_map(int)
}

pub fn vector(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec(small_int(), n)
}

pub fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (0..=max_rows, 0..=max_cols)
        .prop_flat_map(|(r, c)| vector(r * c).prop_map(move |v| Matrix::from_vec(r, c, v).unwrap()))
}
