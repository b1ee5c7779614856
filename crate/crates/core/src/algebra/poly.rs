//! Dense univariate polynomials over an exact coefficient ring.
//!
//! Coefficients are stored in ascending degree order. The representation is
//! canonical: the zero polynomial is the empty vector and otherwise the last
//! coefficient is nonzero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::coeff::Coeff;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

/// Polynomial with arbitrary-precision integer coefficients.
pub type IntPoly = Poly<BigInt>;
/// Polynomial with exact rational coefficients.
pub type RatPoly = Poly<BigRational>;

impl<C: Coeff> Poly<C> {
    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![C::one()] }
    }

    pub fn x() -> Self {
        Poly {
            coeffs: vec![C::zero(), C::one()],
        }
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^degree`
    pub fn monomial(c: C, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); degree + 1];
        coeffs[degree] = c;
        Poly { coeffs }
    }

    /// `a + b*x`
    pub fn linear(a: C, b: C) -> Self {
        Self::from_coeffs(vec![a, b])
    }

    /// Builds a polynomial from ascending coefficients, stripping trailing zeros.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| C::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Exact division by `x^k`. Fails if any of the coefficients of
    /// `x^0 .. x^(k-1)` is nonzero.
    pub fn div_x_pow(&self, k: usize) -> Result<Self> {
        if let Some((degree, c)) = self
            .coeffs
            .iter()
            .enumerate()
            .take(k)
            .find(|(_, c)| !c.is_zero())
        {
            return Err(Error::NotDivisible {
                power: k,
                degree,
                coefficient: c.to_string(),
            });
        }
        Ok(Poly {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        })
    }

    /// `self * self * ... ` (k factors) by repeated squaring; `a^0 = 1`.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `x (x-1) ... (x-m+1)`
    pub fn falling_factorial(m: usize) -> Self {
        (0..m).fold(Self::one(), |acc, j| {
            &acc * &Self::linear(C::from_i64(-(j as i64)), C::one())
        })
    }

    /// `(1 - x)^k`, written down directly from the binomial row.
    pub fn one_minus_x_pow(k: usize) -> Self {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut binom = BigInt::one();
        for i in 0..=k {
            let c = C::from_bigint(&binom);
            coeffs.push(if i % 2 == 0 { c } else { -c });
            binom = binom * BigInt::from(k - i) / BigInt::from(i + 1);
        }
        Poly { coeffs }
    }

    pub fn eval(&self, at: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(at);
            acc.add_assign_ref(c);
        }
        acc
    }

    /// Substitutes `x -> a + b*x` (Horner over the linear form).
    pub fn compose_linear(&self, a: &C, b: &C) -> Self {
        let lin = Self::linear(a.clone(), b.clone());
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * &lin;
            acc = &acc + &Self::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_ref(&C::from_i64(i as i64)))
                .collect(),
        )
    }
}

impl IntPoly {
    pub fn to_rational(&self) -> RatPoly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    pub fn eval_rational(&self, at: &BigRational) -> BigRational {
        self.to_rational().eval(at)
    }

    /// Sum of absolute coefficient values.
    pub fn abs_sum(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }
}

impl RatPoly {
    /// Converts to integer coefficients; every coefficient must be integral.
    pub fn to_integer(&self) -> Result<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.denom().is_one() {
                    Ok(c.numer().clone())
                } else {
                    Err(Error::NonIntegral(c.to_string()))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(IntPoly::from_coeffs)
    }

    /// Common denominator of all coefficients (1 for the zero polynomial).
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;

    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            a.add_assign_ref(b);
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;

    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, C::zero());
        for (a, b) in coeffs.iter_mut().zip(&rhs.coeffs) {
            a.sub_assign_ref(b);
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;

    /// Schoolbook product.
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j].add_mul(a, b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;

    fn neg(self) -> Poly<C> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<C: Coeff> $tr for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
        impl<C: Coeff> $tr<&Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: &Poly<C>) -> Poly<C> {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;

    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Coeff> Zero for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Coeff> One for Poly<C> {
    fn one() -> Self {
        Poly::one()
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    /// Descending-degree rendering, e.g. `x^2 - 3*x + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == "1";
            match (i, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn mul_small_cases() {
        assert_eq!(&ip(&[-1, 1]) * &ip(&[-1, 1]), ip(&[1, -2, 1]));
        assert_eq!(&ip(&[3, 2, 1]) * &IntPoly::zero(), IntPoly::zero());
        assert_eq!(&ip(&[2, -3, 1]) * &IntPoly::one(), ip(&[2, -3, 1]));
    }

    #[test]
    fn canonical_zero() {
        assert_eq!(ip(&[0, 0, 0]), IntPoly::zero());
        assert_eq!(IntPoly::zero().degree(), None);
        assert_eq!(&ip(&[1, 1]) - &ip(&[1, 1]), IntPoly::zero());
    }

    #[test]
    fn pow_cases() {
        let one_minus_x = ip(&[1, -1]);
        assert_eq!(one_minus_x.pow(0), IntPoly::one());
        assert_eq!(one_minus_x.pow(3), ip(&[1, -3, 3, -1]));
        assert_eq!(IntPoly::x().pow(5), ip(&[0, 0, 0, 0, 0, 1]));
        assert_eq!(IntPoly::one_minus_x_pow(3), one_minus_x.pow(3));
        assert_eq!(IntPoly::one_minus_x_pow(0), IntPoly::one());
    }

    #[test]
    fn div_x_pow_cases() {
        assert_eq!(ip(&[0, 0, 1, -1]).div_x_pow(2).unwrap(), ip(&[1, -1]));
        let x5 = ip(&[0, 0, 0, 0, 0, 1]);
        assert_eq!(x5.div_x_pow(0).unwrap(), x5);
        let err = ip(&[1, 0, 1]).div_x_pow(1).unwrap_err();
        assert!(matches!(err, Error::NotDivisible { power: 1, degree: 0, .. }));
        assert_eq!(IntPoly::zero().div_x_pow(4).unwrap(), IntPoly::zero());
    }

    #[test]
    fn falling_factorial_cases() {
        assert_eq!(IntPoly::falling_factorial(0), IntPoly::one());
        assert_eq!(IntPoly::falling_factorial(1), IntPoly::x());
        assert_eq!(IntPoly::falling_factorial(3), ip(&[0, 2, -3, 1]));
    }

    #[test]
    fn compose_and_eval() {
        // p(x) = x^2 - 3x + 2, p(1 - x) = x^2 + x
        let p = ip(&[2, -3, 1]);
        let q = p.compose_linear(&BigInt::one(), &BigInt::from(-1));
        assert_eq!(q, ip(&[0, 1, 1]));
        assert_eq!(p.eval(&BigInt::from(5)), BigInt::from(12));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(p.eval_rational(&half), BigRational::new(3.into(), 4.into()));
    }

    #[test]
    fn rational_to_integer() {
        let r = RatPoly::from_coeffs(vec![
            BigRational::new(4.into(), 2.into()),
            BigRational::new(1.into(), 3.into()),
        ]);
        assert!(matches!(r.to_integer(), Err(Error::NonIntegral(_))));
        assert_eq!(r.denominator_lcm(), BigInt::from(3));
        assert_eq!(ip(&[1, 2]).to_rational().to_integer().unwrap(), ip(&[1, 2]));
    }

    #[test]
    fn display() {
        assert_eq!(ip(&[13, -28, 21, -7, 1]).to_string(), "x^4 - 7*x^3 + 21*x^2 - 28*x + 13");
        assert_eq!(ip(&[0, -1]).to_string(), "-x");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
