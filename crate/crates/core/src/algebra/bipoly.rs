//! Bivariate polynomials with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Sparse map from exponent pairs `(deg_x, deg_y)` to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(BigInt::one(), 0, 0)
    }

    pub fn x() -> Self {
        Self::term(BigInt::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::term(BigInt::one(), 0, 1)
    }

    pub fn term(c: BigInt, dx: u32, dy: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, dx, dy);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for ((dx, dy), c) in terms {
            p.add_term(c, dx, dy);
        }
        p
    }

    /// Embeds a univariate polynomial in `x`.
    pub fn from_x(p: &IntPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u32, 0), c.clone())),
        )
    }

    /// Embeds a univariate polynomial in `y`.
    pub fn from_y(p: &IntPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| ((0, i as u32), c.clone())),
        )
    }

    pub fn add_term(&mut self, c: BigInt, dx: u32, dy: u32) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((dx, dy)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(dx, dy));
        }
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> BigInt {
        self.terms.get(&(dx, dy)).cloned().unwrap_or_default()
    }

    /// Terms in ascending `(deg_x, deg_y)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(dx, dy), c)| (dx, dy, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, v)| (k, v * c)))
    }

    /// `p(y, x)`
    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(dx, dy), c)| ((dy, dx), c.clone())))
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut xp = PowerCache::new(x.clone());
        let mut yp = PowerCache::new(y.clone());
        let mut acc = BigRational::zero();
        for (&(dx, dy), c) in &self.terms {
            acc += BigRational::from_integer(c.clone()) * xp.get(dx) * yp.get(dy);
        }
        acc
    }

    /// Substitutes univariate polynomials for both variables.
    pub fn substitute(&self, px: &IntPoly, py: &IntPoly) -> IntPoly {
        let mut xp = PowerCache::new(px.clone());
        let mut yp = PowerCache::new(py.clone());
        let mut acc = IntPoly::zero();
        for (&(dx, dy), c) in &self.terms {
            let t = &xp.get(dx) * &yp.get(dy);
            acc = &acc + &t.scale(c);
        }
        acc
    }

    /// `p(x + a, y + b)`
    pub fn shift(&self, a: &BigInt, b: &BigInt) -> Self {
        let x_shift = Self::from_x(&IntPoly::from_coeffs(vec![a.clone(), BigInt::one()]));
        let y_shift = Self::from_y(&IntPoly::from_coeffs(vec![b.clone(), BigInt::one()]));
        let mut xp = PowerCache::new(x_shift);
        let mut yp = PowerCache::new(y_shift);
        let mut acc = Self::zero();
        for (&(dx, dy), c) in &self.terms {
            let t = &xp.get(dx) * &yp.get(dy);
            acc = &acc + &t.scale(c);
        }
        acc
    }

    /// Exact division by `y^k`.
    pub fn div_y_pow(&self, k: u32) -> Result<Self> {
        if let Some((&(dx, dy), c)) = self.terms.iter().find(|((_, dy), _)| *dy < k) {
            return Err(Error::NotDivisible {
                power: k as usize,
                degree: dy as usize,
                coefficient: format!("{c} (at x^{dx})"),
            });
        }
        Ok(Self::from_terms(
            self.terms.iter().map(|(&(dx, dy), c)| ((dx, dy - k), c.clone())),
        ))
    }

    /// Outer product `p(x) * q(y)`.
    pub fn outer(px: &IntPoly, qy: &IntPoly) -> Self {
        let mut out = Self::zero();
        for (i, a) in px.coeffs().iter().enumerate() {
            for (j, b) in qy.coeffs().iter().enumerate() {
                out.add_term(a * b, i as u32, j as u32);
            }
        }
        out
    }

    /// Specialisation `p(x, 0)` as a polynomial in `x`.
    pub fn at_y_zero(&self) -> IntPoly {
        self.substitute(&IntPoly::x(), &IntPoly::zero())
    }

    /// Specialisation `p(0, y)` as a polynomial in `y`.
    pub fn at_x_zero(&self) -> IntPoly {
        self.substitute(&IntPoly::zero(), &IntPoly::x())
    }
}

/// Lazily extended table of powers `base^0, base^1, ...`.
struct PowerCache<T> {
    powers: Vec<T>,
}

impl<T> PowerCache<T>
where
    T: Clone + One,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    fn new(base: T) -> Self {
        PowerCache {
            powers: vec![T::one(), base],
        }
    }

    fn get(&mut self, k: u32) -> T {
        let k = k as usize;
        while self.powers.len() <= k {
            let next = &self.powers[self.powers.len() - 1] * &self.powers[1];
            self.powers.push(next);
        }
        self.powers[k].clone()
    }
}

impl One for BiPoly {
    fn one() -> Self {
        BiPoly::one()
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(dx, dy), c) in &rhs.terms {
            out.add_term(c.clone(), dx, dy);
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(dx, dy), c) in &rhs.terms {
            out.add_term(-c.clone(), dx, dy);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(ax, ay), a) in &self.terms {
            for (&(bx, by), b) in &rhs.terms {
                out.add_term(a * b, ax + bx, ay + by);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(&k, c)| (k, -c.clone())))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(dx, dy), c)| {
                let mut s = c.to_string();
                match dx {
                    0 => {}
                    1 => s.push_str("*x"),
                    _ => s.push_str(&format!("*x^{dx}")),
                }
                match dy {
                    0 => {}
                    1 => s.push_str("*y"),
                    _ => s.push_str(&format!("*y^{dy}")),
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}
