use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatsusakaInput {
    pub n: u32,
    /// Intersection number `L^{n-1} . K~_X`.
    #[serde(with = "rational::serde_int")]
    pub lk: BigInt,
    /// `L^n`, positive.
    #[serde(with = "rational::serde_int")]
    pub ln: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatsusakaBound {
    pub n: u32,
    #[serde(with = "rational::serde_int")]
    pub c_n: BigInt,
    /// Coefficient of `L` in `K~_X = (2n C(3n-1, n) + 2n + 1) L + B + 2 K_X`.
    #[serde(with = "rational::serde_int")]
    pub k_coefficient: BigInt,
    /// The outer exponent `2^{max(n-2, 0)}`.
    pub exponent: u64,
    #[serde(with = "rational::serde_str")]
    pub bound: Rational,
}

/// Evaluation order for the product defining `C_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldOrder {
    Left,
    Right,
}

fn two_pow(e: u64) -> BigInt {
    BigInt::one() << e
}

fn outer_exponent(n: u32) -> u64 {
    1u64 << n.saturating_sub(2)
}

/// `C_n = 2^{n-1+2^{n-1}} prod_{k=1}^n (k 2^{(n-k-1)(n-k)/2})^{2^{max(k-2,0)}}`.
pub fn c_n(n: u32, fold: FoldOrder) -> BigInt {
    assert!((1..=24).contains(&n), "C_n is evaluated for 1 <= n <= 24");
    let factor = |k: u32| -> BigInt {
        let shift = (i64::from(n) - i64::from(k) - 1) * (i64::from(n) - i64::from(k)) / 2;
        let base = BigInt::from(k) * two_pow(shift as u64);
        Pow::pow(base, 1u64 << k.saturating_sub(2))
    };
    let lead = two_pow(u64::from(n) - 1 + (1u64 << (n - 1)));
    match fold {
        FoldOrder::Left => (1..=n).fold(lead, |acc, k| acc * factor(k)),
        FoldOrder::Right => lead * (1..=n).rev().fold(BigInt::one(), |acc, k| factor(k) * acc),
    }
}

/// `2n C(3n-1, n) + 2n + 1`.
pub fn k_tilde_l_coefficient(n: u32) -> BigInt {
    let n_big = BigInt::from(n);
    let mut binom = BigInt::one();
    // C(3n-1, n) by the multiplicative formula; every prefix is an integer.
    for i in 0..n {
        binom = binom * BigInt::from(3 * n - 1 - i) / BigInt::from(i + 1);
    }
    BigInt::from(2) * &n_big * binom + BigInt::from(2) * n_big + 1
}

/// `C_n (L^{n-1} K~)^{2^{max(n-2,0)}} (1 + L^{n-1} K~ / L^n)^{2^{max(n-2,0)}}`, exactly.
pub fn matsusaka_bound(input: &MatsusakaInput) -> Result<MatsusakaBound> {
    matsusaka_bound_with(input, FoldOrder::Left)
}

pub(crate) fn matsusaka_bound_with(input: &MatsusakaInput, fold: FoldOrder) -> Result<MatsusakaBound> {
    if input.n == 0 || input.n > 24 {
        return Err(Error::InvalidArgument("n must lie in 1..=24".into()));
    }
    if input.ln < BigInt::one() {
        return Err(Error::InvalidArgument("L^n must be a positive integer".into()));
    }
    let c = c_n(input.n, fold);
    let e = outer_exponent(input.n);
    let lk = Rational::from_integer(input.lk.clone());
    let ratio = Rational::one() + &lk / Rational::from_integer(input.ln.clone());
    let bound = Rational::from_integer(c.clone()) * Pow::pow(lk, e) * Pow::pow(ratio, e);
    Ok(MatsusakaBound { n: input.n, c_n: c, k_coefficient: k_tilde_l_coefficient(input.n), exponent: e, bound })
}
