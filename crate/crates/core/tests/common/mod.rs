//! Exact rational enumeration of region-count moments, independent of the
//! floating-point pmf used by the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub struct ExactMoments {
    pub mean: f64,
    pub second_moment: f64,
    pub variance: f64,
}

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn steiner(x: u64, d: u32) -> BigInt {
    (0..=u64::from(d)).filter(|&i| i <= x).map(|i| binom(x, i)).sum()
}

/// Moments of `sum_{i<=d} C(X, i)` for `X ~ Bin(n, num/den)`.
pub fn rational_moments(n: u64, num: i64, den: i64, d: u32) -> ExactMoments {
    let p = BigRational::new(num.into(), den.into());
    let q = BigRational::one() - &p;
    let mut mean = BigRational::zero();
    let mut second = BigRational::zero();
    for x in 0..=n {
        let w = BigRational::from_integer(binom(n, x))
            * num_traits::pow(p.clone(), x as usize)
            * num_traits::pow(q.clone(), (n - x) as usize);
        let r = BigRational::from_integer(steiner(x, d));
        mean += &w * &r;
        second += &w * &r * &r;
    }
    let variance = &second - &mean * &mean;
    ExactMoments {
        mean: mean.to_f64().unwrap(),
        second_moment: second.to_f64().unwrap(),
        variance: variance.to_f64().unwrap(),
    }
}

/// Relative agreement, falling back to an absolute check near zero.
pub fn close(got: f64, want: f64, rel: f64, abs: f64) -> bool {
    let diff = (got - want).abs();
    diff <= abs || diff <= rel * want.abs()
}
