use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Exponents of the division theorem in the form used for section rings:
/// `alpha = (n + k) / n` and `q = n` after padding with zero generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkodaExponents {
    pub n: u32,
    pub k: u32,
    /// Number of generators before padding, if given.
    pub p: Option<u32>,
    #[serde(with = "rational::serde_str")]
    pub alpha: Rational,
    /// `min(n, p - 1)` before padding.
    pub q_unpadded: Option<u32>,
    pub q: u32,
    /// `2 alpha q + 2`, the weight exponent on `|g|` for `f`.
    #[serde(with = "rational::serde_str")]
    pub inner_exponent: Rational,
    /// `2 alpha q`, the weight exponent on `|g|` for the quotients `h_j`.
    #[serde(with = "rational::serde_str")]
    pub outer_exponent: Rational,
    /// `alpha / (alpha - 1)`, the constant of the L^2 estimate.
    #[serde(with = "rational::serde_str")]
    pub estimate_constant: Rational,
    /// `2 (n + k + 1)`.
    pub identity_rhs: u32,
    pub identity_holds: bool,
}

pub fn skoda_exponents(n: u32, p: Option<u32>, k: u32) -> Result<SkodaExponents> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument("n and k must be at least 1".into()));
    }
    if p == Some(0) {
        return Err(Error::InvalidArgument("p must be at least 1".into()));
    }
    let r = |x: u32| Rational::from_integer(BigInt::from(x));
    let alpha = Rational::new(BigInt::from(n + k), BigInt::from(n));
    // Padding with zero generators up to n + 1 makes q = inf(n, p - 1) = n.
    let q = n;
    let outer = r(2) * &alpha * r(q);
    let inner = &outer + r(2);
    let rhs = 2 * (n + k + 1);
    let estimate_constant = &alpha / (&alpha - r(1));
    Ok(SkodaExponents {
        n,
        k,
        p,
        q_unpadded: p.map(|p| n.min(p - 1)),
        q,
        identity_holds: inner == r(rhs),
        alpha,
        inner_exponent: inner,
        outer_exponent: outer,
        estimate_constant,
        identity_rhs: rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn worked_values() {
        let s = skoda_exponents(2, None, 1).unwrap();
        assert_eq!((s.alpha.clone(), s.q, s.inner_exponent.clone()), (rat(3, 2), 2, int(8)));
        assert!(s.identity_holds);
        let s = skoda_exponents(1, Some(1), 1).unwrap();
        assert_eq!((s.alpha.clone(), s.q, s.inner_exponent.clone()), (int(2), 1, int(6)));
        assert_eq!(s.q_unpadded, Some(0));
        let s = skoda_exponents(3, Some(7), 2).unwrap();
        assert_eq!((s.alpha.clone(), s.q, s.inner_exponent.clone()), (rat(5, 3), 3, int(12)));
        assert_eq!(s.estimate_constant, rat(5, 2));
    }

    #[test]
    fn rejects_zero() {
        assert!(skoda_exponents(0, None, 1).is_err());
        assert!(skoda_exponents(1, None, 0).is_err());
    }
}
