//! Closed forms for the projective geometries `PG(n-1, q)`.
//!
//! Here `q` is a formal integer parameter `>= 2`; nothing below needs `q` to
//! be a prime power.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::algebra::{BiPoly, IntPoly};
use crate::error::{Error, Result};

fn check(n: usize, q: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::bad_params("projective geometry needs n >= 1"));
    }
    if q < 2 {
        return Err(Error::bad_params(format!("projective geometry needs q >= 2, got {q}")));
    }
    Ok(())
}

fn q_pow(q: u64, i: usize) -> BigInt {
    num_traits::pow(BigInt::from(q), i)
}

/// `1 + q + ... + q^(k-1) = (q^k - 1) / (q - 1)`
pub fn geometric_sum(q: u64, k: usize) -> BigInt {
    (0..k).map(|i| q_pow(q, i)).sum()
}

/// Ground-set size `(q^n - 1) / (q - 1)` as a machine integer, if it fits.
pub fn pg_size(n: usize, q: u64) -> Result<usize> {
    usize::try_from(geometric_sum(q, n))
        .map_err(|_| Error::too_large("projective ground set", u128::MAX, usize::MAX as u128))
}

/// Gaussian binomial `(n choose k)_q` from the product formula; the division
/// at the end is exact.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> Result<BigInt> {
    if k > n {
        return Err(Error::bad_params(format!("gaussian binomial needs k <= n, got n={n}, k={k}")));
    }
    if q < 2 {
        return Err(Error::bad_params(format!("gaussian binomial needs q >= 2, got {q}")));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= q_pow(q, n - i) - 1;
        den *= q_pow(q, i + 1) - 1;
    }
    Ok(num / den)
}

/// `(x - q^0)(x - q^1)...(x - q^(m-1))`
fn root_product(q: u64, m: usize) -> IntPoly {
    (0..m).fold(IntPoly::one(), |acc, i| &acc * &IntPoly::linear(-q_pow(q, i), BigInt::one()))
}

/// `chi_{PG(n-1,q)}(x) = (x - 1)(x - q)...(x - q^(n-1))`
pub fn chi_pg(n: usize, q: u64) -> Result<IntPoly> {
    check(n, q)?;
    Ok(root_product(q, n))
}

/// Characteristic polynomial of the dual of `PG(n-1, q)`, summed over flat
/// ranks `k`:
/// `(-1)^N / x^n * sum_k (n choose k)_q (1 - x)^[k]_q prod_{i<n-k} (x - q^i)`.
pub fn chi_pg_dual(n: usize, q: u64) -> Result<IntPoly> {
    check(n, q)?;
    let size = pg_size(n, q)?;
    let terms = (0..=n)
        .into_par_iter()
        .map(|k| -> Result<IntPoly> {
            let flats = gaussian_binomial(n, k, q)?;
            let exponent = pg_size(k, q)?;
            let t = &IntPoly::one_minus_x_pow(exponent) * &root_product(q, n - k);
            Ok(t.scale(&flats))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sum = terms.iter().fold(IntPoly::zero(), |acc, t| &acc + t);
    if size % 2 == 1 {
        sum = -sum;
    }
    sum.div_x_pow(n)
}

/// Tutte polynomial of `PG(n-1, q)` as an exact bivariate polynomial.
///
/// With `a = u - 1` and `b = v - 1` the sum over flat ranks reads
/// `sum_k (n choose k)_q (b + 1)^[k]_q prod_{i<n-k} (ab - q^i)`, which is
/// divisible by `b^n`; the quotient is shifted back to `(u, v)`.
pub fn tutte_pg(n: usize, q: u64) -> Result<BiPoly> {
    check(n, q)?;
    let ab = BiPoly::term(BigInt::one(), 1, 1);
    let b_plus_one = IntPoly::from_i64s(&[1, 1]);
    let terms = (0..=n)
        .into_par_iter()
        .map(|k| -> Result<BiPoly> {
            let flats = gaussian_binomial(n, k, q)?;
            let exponent = pg_size(k, q)?;
            let mut t = BiPoly::from_y(&b_plus_one.pow(exponent as u64).scale(&flats));
            for i in 0..n - k {
                t = &t * &(&ab - &BiPoly::term(q_pow(q, i), 0, 0));
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    let sum = terms.iter().fold(BiPoly::zero(), |acc, t| &acc + t);
    let quotient = sum.div_y_pow(n as u32)?;
    let one = BigInt::one();
    Ok(quotient.shift(&-one.clone(), &-one))
}

/// `chi_{PG*}` recovered from [`tutte_pg`]: `(-1)^(|E| - n) T(0, 1 - x)`.
pub fn chi_pg_dual_from_tutte(n: usize, q: u64) -> Result<IntPoly> {
    let t = tutte_pg(n, q)?;
    let p = t.substitute(&IntPoly::zero(), &IntPoly::from_i64s(&[1, -1]));
    Ok(if (pg_size(n, q)? - n) % 2 == 1 { -p } else { p })
}
