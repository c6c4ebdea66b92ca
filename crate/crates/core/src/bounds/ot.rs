use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Closed rational interval `[lower, upper]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enclosure {
    #[serde(with = "rational::serde_str")]
    pub lower: Rational,
    #[serde(with = "rational::serde_str")]
    pub upper: Rational,
}

impl Enclosure {
    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lower + &self.upper) / Rational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn contains_interval(&self, other: &Enclosure) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }

    fn intersect(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lower: (&self.lower).max(&other.lower).clone(),
            upper: (&self.upper).min(&other.upper).clone(),
        }
    }
}

fn pow2(bits: u64) -> BigInt {
    BigInt::one() << bits
}

fn floor_dyadic(x: &Rational, bits: u64) -> Rational {
    Rational::new((x * Rational::from_integer(pow2(bits))).floor().to_integer(), pow2(bits))
}

fn ceil_dyadic(x: &Rational, bits: u64) -> Rational {
    Rational::new((x * Rational::from_integer(pow2(bits))).ceil().to_integer(), pow2(bits))
}

/// `e` from its Taylor series; the tail after `1/N!` is below `2/(N+1)!`.
fn e_enclosure(bits: u64) -> (Rational, Rational) {
    let target = pow2(bits + 4);
    let mut sum = Rational::zero();
    let mut fact = BigInt::one();
    let mut k = 0u64;
    loop {
        sum += Rational::new(BigInt::one(), fact.clone());
        let next = &fact * BigInt::from(k + 1);
        if next > target {
            return (sum.clone(), sum + Rational::new(BigInt::from(2), next));
        }
        fact = next;
        k += 1;
    }
}

/// `arctan(1/x)` by its alternating series; consecutive partial sums bracket the limit.
fn arctan_inv(x: u64, bits: u64) -> (Rational, Rational) {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let target = pow2(bits + 8);
    let mut sum = Rational::zero();
    let mut power = BigInt::from(x);
    let mut k = 0u64;
    loop {
        let term = Rational::new(BigInt::one(), BigInt::from(2 * k + 1) * &power);
        let prev = sum.clone();
        if k.is_multiple_of(2) {
            sum += &term;
        } else {
            sum -= &term;
        }
        if k > 0 && BigInt::from(2 * k + 1) * &power > target {
            return if prev < sum { (prev, sum) } else { (sum, prev) };
        }
        power *= &x2;
        k += 1;
    }
}

fn pi_enclosure(bits: u64) -> (Rational, Rational) {
    let (a_lo, a_hi) = arctan_inv(5, bits);
    let (b_lo, b_hi) = arctan_inv(239, bits);
    let r = |v: i64| Rational::from_integer(BigInt::from(v));
    (r(16) * &a_lo - r(4) * &b_hi, r(16) * a_hi - r(4) * b_lo)
}

fn sqrt_lower(x: &Rational, bits: u64) -> Rational {
    let scaled = (x * Rational::from_integer(pow2(2 * bits))).floor().to_integer();
    Rational::new(scaled.sqrt(), pow2(bits))
}

fn sqrt_upper(x: &Rational, bits: u64) -> Rational {
    let scaled = (x * Rational::from_integer(pow2(2 * bits))).ceil().to_integer();
    Rational::new(scaled.sqrt() + 1, pow2(bits))
}

fn enclosure_at(bits: u64) -> Enclosure {
    let (e_lo, e_hi) = e_enclosure(bits);
    let (pi_lo, pi_hi) = pi_enclosure(bits);
    let two = Rational::from_integer(BigInt::from(2));
    let rad_lo = &two + e_hi.recip();
    let rad_hi = &two + e_lo.recip();
    let s_lo = sqrt_lower(&rad_lo, bits + 4);
    let s_hi = sqrt_upper(&rad_hi, bits + 4);
    let eight = Rational::from_integer(BigInt::from(8));
    let lo = &eight * pi_lo * e_lo * s_lo;
    let hi = eight * pi_hi * e_hi * s_hi;
    Enclosure { lower: floor_dyadic(&lo, bits), upper: ceil_dyadic(&hi, bits) }
}

/// Encloses `8 pi e sqrt(2 + 1/e)` in a rational interval of width at most
/// `precision`.
///
/// The result is the running intersection of a fixed refinement sequence, so
/// a smaller `precision` always returns a sub-interval of a larger one.
pub fn ot_constant(precision: &Rational) -> Result<Enclosure> {
    if !precision.is_positive() {
        return Err(Error::InvalidArgument("precision must be positive".into()));
    }
    let mut bits = 16u64;
    let mut current = enclosure_at(bits);
    while &current.width() > precision {
        bits *= 2;
        if bits > 1 << 16 {
            return Err(Error::InvalidArgument("precision too fine".into()));
        }
        current = current.intersect(&enclosure_at(bits));
    }
    Ok(current)
}

/// Decimal expansion with `digits` fractional digits, rounded to nearest
/// (ties away from zero).
pub fn to_decimal(x: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = (x * Rational::from_integer(scale.clone())).round().to_integer();
    let negative = scaled.is_negative();
    let abs = scaled.abs();
    let int_part = &abs / &scale;
    let frac = (&abs % &scale).to_string();
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac:0>digits$}")
    }
}
