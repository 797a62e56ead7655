#![allow(dead_code)]

pub mod props;

use num_bigint::BigInt;
use svoa_core::{HalfInt, Scalar};

pub fn h(s: &str) -> HalfInt {
    s.parse().unwrap()
}

pub fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

pub fn big(s: &str) -> Scalar {
    Scalar::from_bigint(s.parse::<BigInt>().unwrap())
}

pub fn bigs(v: &[&str]) -> Vec<Scalar> {
    v.iter().map(|s| big(s)).collect()
}

/// Published upper ends of the minimal weight for c = 1/2, 1, …, 48, as twice the weight.
pub const PUBLISHED_UPPER_TWICE: [i64; 96] = [
    // 1/2 .. 8
    1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, // 8 1/2 .. 16
    1, 1, 1, 1, 1, 1, 1, 2, 1, 1, 1, 2, 1, 2, 2, 2, // 16 1/2 .. 24
    1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3, 4, // 24 1/2 .. 32
    3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 4, // 32 1/2 .. 40
    3, 3, 3, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, // 40 1/2 .. 48
    4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 6,
];

pub fn published_upper(c: HalfInt) -> HalfInt {
    HalfInt::from_twice(PUBLISHED_UPPER_TWICE[(c.twice() - 1) as usize])
}
