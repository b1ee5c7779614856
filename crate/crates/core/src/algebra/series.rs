//! Truncated power series in `z` whose coefficients are rational
//! polynomials in a second variable `x`.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::RatPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySeries {
    order: usize,
    coeffs: Vec<RatPoly>,
}

impl PolySeries {
    /// Series truncated after `z^order`. Missing coefficients are zero and
    /// coefficients beyond the order are dropped.
    pub fn new(order: usize, mut coeffs: Vec<RatPoly>) -> Self {
        coeffs.resize(order + 1, RatPoly::zero());
        PolySeries { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![RatPoly::one()])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `z^k`.
    pub fn coeff(&self, k: usize) -> &RatPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[RatPoly] {
        &self.coeffs
    }

    /// Multiplies every coefficient by a polynomial in `x`.
    pub fn scale_by_poly(&self, p: &RatPoly) -> Self {
        PolySeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    fn check_order(&self, rhs: &Self) {
        assert_eq!(self.order, rhs.order, "series truncation orders differ");
    }

    /// Formal logarithm. Requires the `z^0` coefficient to be exactly 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != RatPoly::one() {
            return Err(Error::BadConstantTerm { expected: "1" });
        }
        // z s' = s * z L'  =>  k s_k = sum_{j=1..k} j L_j s_{k-j}
        let mut log = vec![RatPoly::zero(); self.order + 1];
        for k in 1..=self.order {
            let mut acc = RatPoly::zero();
            for j in 1..k {
                let weighted = log[j].scale(&int(j));
                acc = &acc + &(&weighted * &self.coeffs[k - j]);
            }
            log[k] = &self.coeffs[k] - &acc.scale(&inv(k));
        }
        Ok(PolySeries {
            order: self.order,
            coeffs: log,
        })
    }

    /// Formal exponential. Requires the `z^0` coefficient to be zero.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm { expected: "0" });
        }
        // E' = L' E  =>  k E_k = sum_{j=1..k} j L_j E_{k-j}
        let mut exp = vec![RatPoly::zero(); self.order + 1];
        exp[0] = RatPoly::one();
        for k in 1..=self.order {
            let mut acc = RatPoly::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                let weighted = self.coeffs[j].scale(&int(j));
                acc = &acc + &(&weighted * &exp[k - j]);
            }
            exp[k] = acc.scale(&inv(k));
        }
        Ok(PolySeries {
            order: self.order,
            coeffs: exp,
        })
    }
}

fn int(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

fn inv(k: usize) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(k))
}

impl Add for &PolySeries {
    type Output = PolySeries;

    fn add(self, rhs: &PolySeries) -> PolySeries {
        self.check_order(rhs);
        PolySeries {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &PolySeries {
    type Output = PolySeries;

    fn sub(self, rhs: &PolySeries) -> PolySeries {
        self.check_order(rhs);
        PolySeries {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &PolySeries {
    type Output = PolySeries;

    /// Cauchy product truncated at the common order.
    fn mul(self, rhs: &PolySeries) -> PolySeries {
        self.check_order(rhs);
        let n = self.order;
        let mut coeffs = vec![RatPoly::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        PolySeries { order: n, coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rc(n: i64, d: i64) -> RatPoly {
        RatPoly::constant(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn log_of_one_is_zero() {
        assert_eq!(PolySeries::one(4).log().unwrap(), PolySeries::zero(4));
    }

    #[test]
    fn mercator() {
        let s = PolySeries::new(2, vec![rc(1, 1), rc(1, 1)]);
        assert_eq!(
            s.log().unwrap(),
            PolySeries::new(2, vec![rc(0, 1), rc(1, 1), rc(-1, 2)])
        );
    }

    #[test]
    fn exp_of_z() {
        let z = PolySeries::new(3, vec![rc(0, 1), rc(1, 1)]);
        assert_eq!(
            z.exp().unwrap(),
            PolySeries::new(3, vec![rc(1, 1), rc(1, 1), rc(1, 2), rc(1, 6)])
        );
        assert_eq!(PolySeries::zero(3).exp().unwrap(), PolySeries::one(3));
    }

    #[test]
    fn bad_constant_terms() {
        let two = PolySeries::new(2, vec![rc(2, 1)]);
        assert_eq!(two.log(), Err(Error::BadConstantTerm { expected: "1" }));
        assert_eq!(
            PolySeries::one(2).exp(),
            Err(Error::BadConstantTerm { expected: "0" })
        );
    }

    #[test]
    fn truncation_drops_high_terms() {
        let s = PolySeries::new(1, vec![rc(1, 1), rc(1, 1), rc(5, 1)]);
        assert_eq!(s.coeffs().len(), 2);
        let sq = &s * &s;
        assert_eq!(sq, PolySeries::new(1, vec![rc(1, 1), rc(2, 1)]));
    }
}
