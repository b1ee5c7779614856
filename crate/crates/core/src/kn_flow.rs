//! Flow polynomials of complete graphs via integer partitions and via the
//! exponential generating function of `K_n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{binomial, factorial, IntPoly, PolySeries, RatPoly};
use crate::error::Result;

/// A partition of `n` with parts in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable();
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// `sum l_i (l_i - 1) / 2`: edges inside the blocks when each block is a clique.
    pub fn inner_edges(&self) -> usize {
        self.parts.iter().map(|&l| l * (l - 1) / 2).sum()
    }

    /// `(part, multiplicity)` pairs in ascending part order.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

/// Partitions of `n` in ascending-parts form, generated iteratively by the
/// ascending-composition successor rule.
pub fn partitions(n: usize) -> Partitions {
    let mut a = vec![0; n + 1];
    let k = if n == 0 {
        0
    } else {
        a[1] = n;
        1
    };
    Partitions { a, k }
}

pub struct Partitions {
    a: Vec<usize>,
    k: usize,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.k == 0 {
            return None;
        }
        let a = &mut self.a;
        let mut k = self.k;
        let x = a[k - 1] + 1;
        let mut y = a[k] - 1;
        k -= 1;
        while x <= y {
            a[k] = x;
            y -= x;
            k += 1;
        }
        a[k] = x + y;
        let out = Partition {
            parts: a[..=k].to_vec(),
        };
        self.k = k;
        Some(out)
    }
}

/// Number of set partitions of an `n`-set whose block sizes form `lambda`:
/// `n! / (prod l_i! * prod m_j!)` with `m_j` the part multiplicities.
pub fn set_partition_count(lambda: &Partition) -> BigInt {
    let n = lambda.total();
    let facts: Vec<BigInt> = (0..=n as u64).map(factorial).collect();
    count_with(lambda, &facts)
}

/// `facts[i] = i!` for `i <= n`.
fn count_with(lambda: &Partition, facts: &[BigInt]) -> BigInt {
    let mut den = BigInt::one();
    for (part, mult) in lambda.multiplicities() {
        for _ in 0..mult {
            den *= &facts[part];
        }
        den *= &facts[mult];
    }
    &facts[lambda.total()] / den
}

/// Accumulated multiplicities keyed by `(inner edges, length)`.
pub fn partition_classes(n: usize) -> BTreeMap<(usize, usize), BigInt> {
    let facts: Vec<BigInt> = (0..=n as u64).map(factorial).collect();
    partitions(n)
        .par_bridge()
        .fold(BTreeMap::new, |mut acc: BTreeMap<(usize, usize), BigInt>, lambda| {
            let key = (lambda.inner_edges(), lambda.length());
            *acc.entry(key).or_default() += count_with(&lambda, &facts);
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        })
}

/// `F_{K_n}(x) = (-1)^(n(n-1)/2) / x^n * sum_lambda f(lambda) (1-x)^s(lambda) x(x-1)..(x-l(lambda)+1)`.
///
/// Classes sharing a length `l` are collected into one polynomial in
/// `y = 1 - x` (where `(1-x)^s` is just `y^s`), multiplied by the falling
/// factorial written in `y`, and the total is mapped back to `x` once.
pub fn flow_kn_partitions(n: usize) -> Result<IntPoly> {
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let classes = partition_classes(n);
    let mut by_length: BTreeMap<usize, Vec<BigInt>> = BTreeMap::new();
    for ((s, len), mult) in classes {
        let row = by_length.entry(len).or_default();
        if row.len() <= s {
            row.resize(s + 1, BigInt::zero());
        }
        row[s] += mult;
    }
    let one = BigInt::one();
    let minus_one = -BigInt::one();
    let total_y = by_length
        .into_par_iter()
        .map(|(len, row)| {
            let ff_in_y = IntPoly::falling_factorial(len).compose_linear(&one, &minus_one);
            &IntPoly::from_coeffs(row) * &ff_in_y
        })
        .reduce(IntPoly::zero, |a, b| &a + &b);
    let mut total = total_y.compose_linear(&one, &minus_one);
    if (n * (n - 1) / 2) % 2 == 1 {
        total = -total;
    }
    total.div_x_pow(n)
}

/// `F_{K_n}(x) = (-1)^(n(n-1)/2) n! x^-n [z^n] g(z)^x` with
/// `g(z) = sum_i z^i / i! (1-x)^(i(i-1)/2)` and `g^x = exp(x log g)`.
pub fn flow_kn_egf(n: usize) -> Result<IntPoly> {
    let coeffs = (0..=n)
        .map(|i| {
            let inv = BigRational::new(BigInt::one(), factorial(i as u64));
            IntPoly::one_minus_x_pow(i * i.saturating_sub(1) / 2)
                .to_rational()
                .scale(&inv)
        })
        .collect();
    let g = PolySeries::new(n, coeffs);
    let power = g.log()?.scale_by_poly(&RatPoly::x()).exp()?;
    let top = power
        .coeff(n)
        .scale(&BigRational::from_integer(factorial(n as u64)));
    let mut top = top.to_integer()?;
    if (n * n.saturating_sub(1) / 2) % 2 == 1 {
        top = -top;
    }
    top.div_x_pow(n)
}

/// True iff the top `count` coefficients of `f` are `(-1)^k C(big_n, k)`.
pub fn leading_binomial_check(f: &IntPoly, big_n: u64, count: usize) -> bool {
    let Some(deg) = f.degree() else {
        return count == 0;
    };
    if count > deg + 1 {
        return false;
    }
    (0..count).all(|k| {
        let b = binomial(big_n, k as u64);
        let expect = if k % 2 == 0 { b } else { -b };
        f.coeff(deg - k) == expect
    })
}
