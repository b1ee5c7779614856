//! Exact arithmetic: big integers and rationals (from `num`), dense
//! univariate polynomials, sparse bivariate polynomials and truncated power
//! series with polynomial coefficients.

mod bipoly;
mod coeff;
mod poly;
mod series;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use bipoly::BiPoly;
pub use coeff::Coeff;
pub use poly::{IntPoly, Poly, RatPoly};
pub use series::PolySeries;

use crate::error::{Error, Result};

/// Parses `"3"`, `"-7/2"` or `"0.5"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.starts_with('-');
        let whole: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac = BigRational::new(frac.parse().map_err(|_| bad())?, scale);
        let whole = BigRational::from_integer(whole);
        return Ok(if neg { whole - frac } else { whole + frac });
    }
    Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?))
}

/// Binomial coefficient `n choose k` (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `base^exp` for a rational base and a possibly negative integer exponent.
pub fn rational_pow(base: &BigRational, exp: i64) -> BigRational {
    let p = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(parse_rational("1/2").unwrap(), half);
        assert_eq!(parse_rational("0.5").unwrap(), half);
        assert_eq!(parse_rational("-0.5").unwrap(), -half.clone());
        assert_eq!(parse_rational(" 7 ").unwrap(), BigRational::from_integer(7.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn negative_powers() {
        let two = BigRational::from_integer(2.into());
        assert_eq!(rational_pow(&two, -2), BigRational::new(1.into(), 4.into()));
        assert_eq!(rational_pow(&two, 0), BigRational::one());
    }
}
