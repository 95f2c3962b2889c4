//! Scalar traits for the exact chain algebra.
//!
//! Matrices, Smith normal forms and homology are generic over a Euclidean
//! ring of integers. The production instantiation is [`num_bigint::BigInt`]
//! (see the aliases at the crate root); fixed-width integers work for small
//! inputs where intermediate growth is bounded.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Signed;

/// An exact Euclidean ring scalar (integers, possibly arbitrary precision).
pub trait Scalar: Clone + Debug + Display + Ord + Hash + Integer + Signed + FromStr + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;
}

impl Scalar for num_bigint::BigInt {
    fn from_i64(v: i64) -> Self {
        num_bigint::BigInt::from(v)
    }
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl Scalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
}

/// Extended Euclid: returns `(g, s, t)` with `g = s*a + t*b` and `g >= 0`.
pub fn ext_gcd<T: Scalar>(a: &T, b: &T) -> (T, T, T) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = old_r - q.clone() * r.clone();
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = old_s - q.clone() * s.clone();
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = old_t - q * t.clone();
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Sign `(-1)^k` as a scalar.
pub fn alternating<T: Scalar>(k: usize) -> T {
    if k.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}
