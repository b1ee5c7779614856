//! Brute-force ground truth, deliberately independent of the polynomial
//! machinery: colourings and flows are counted one assignment at a time, and
//! the broken-circuit count works from circuits rather than subset sums.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::IntPoly;
use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::matroids::{circuits, cocircuits, Matroid};
use crate::subset::Subset;

/// Upper bound on assignments enumerated by the counting oracles.
pub const ASSIGNMENT_LIMIT: u128 = 100_000_000;

/// Ground-set guard for circuit-based oracles.
pub const CIRCUIT_ORACLE_LIMIT: usize = 18;

fn checked_power(base: u64, exp: usize) -> u128 {
    (0..exp).try_fold(1u128, |acc, _| acc.checked_mul(base as u128)).unwrap_or(u128::MAX)
}

/// Decodes `index` into `len` base-`radix` digits, least significant first.
fn digits(mut index: u64, radix: u64, out: &mut [u64]) {
    for d in out.iter_mut() {
        *d = index % radix;
        index /= radix;
    }
}

/// Proper vertex colourings with `q` colours.
pub fn count_colorings(g: &MultiGraph, q: u64) -> Result<BigInt> {
    let n = g.vertex_count();
    let total = checked_power(q, n);
    if total > ASSIGNMENT_LIMIT {
        return Err(Error::too_large("colouring assignments", total, ASSIGNMENT_LIMIT));
    }
    let count: u64 = (0..total as u64)
        .into_par_iter()
        .map_init(
            || vec![0u64; n],
            |colour, index| {
                digits(index, q, colour);
                g.edges().iter().all(|&(u, v)| colour[u] != colour[v]) as u64
            },
        )
        .sum();
    Ok(BigInt::from(count))
}

/// Nowhere-zero `Z_q` flows with every edge oriented from its lower to its
/// higher endpoint.
pub fn count_nz_flows(g: &MultiGraph, q: u64) -> Result<BigInt> {
    count_nz_flows_oriented(g, q, Subset::EMPTY)
}

/// As [`count_nz_flows`], with the edges in `flipped` reversed.
pub fn count_nz_flows_oriented(g: &MultiGraph, q: u64, flipped: Subset) -> Result<BigInt> {
    if q < 2 {
        return Err(Error::bad_params(format!("flow counting needs q >= 2, got {q}")));
    }
    let m = g.edge_count();
    let total = checked_power(q - 1, m);
    if total > ASSIGNMENT_LIMIT {
        return Err(Error::too_large("flow assignments", total, ASSIGNMENT_LIMIT));
    }
    let arcs: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            let (tail, head) = (u.min(v), u.max(v));
            if flipped.contains(e) {
                (head, tail)
            } else {
                (tail, head)
            }
        })
        .collect();
    let n = g.vertex_count();
    let count: u64 = (0..total as u64)
        .into_par_iter()
        .map_init(
            || (vec![0u64; m], vec![0u64; n]),
            |(value, net), index| {
                digits(index, q - 1, value);
                net.iter_mut().for_each(|x| *x = 0);
                for (&(tail, head), &v) in arcs.iter().zip(value.iter()) {
                    let k = v + 1;
                    net[head] = (net[head] + k) % q;
                    net[tail] = (net[tail] + q - k) % q;
                }
                net.iter().all(|&x| x == 0) as u64
            },
        )
        .sum();
    Ok(BigInt::from(count))
}

fn check_circuit_guard(m: &dyn Matroid) -> Result<()> {
    let n = m.ground_size();
    if n > CIRCUIT_ORACLE_LIMIT {
        return Err(Error::too_large("ground set", n as u64, CIRCUIT_ORACLE_LIMIT as u64));
    }
    Ok(())
}

/// Broken circuits under the natural element order: each circuit minus its
/// largest element. A loop leaves the empty set.
pub fn broken_circuits(m: &dyn Matroid) -> Result<Vec<Subset>> {
    check_circuit_guard(m)?;
    let mut out: Vec<Subset> = circuits(m)?
        .into_iter()
        .map(|c| c.without(63 - c.0.leading_zeros() as usize))
        .collect();
    out.sort_by_key(|s| (s.len(), s.0));
    out.dedup();
    Ok(out)
}

/// Characteristic polynomial from the broken-circuit theorem: the
/// coefficient of `x^(r(E)-k)` is `(-1)^k` times the number of `k`-element
/// independent sets containing no broken circuit.
pub fn chi_via_broken_circuits(m: &dyn Matroid) -> Result<IntPoly> {
    let broken = broken_circuits(m)?;
    let r = m.full_rank();
    let mut counts = vec![0u64; r + 1];
    for s in m.ground().subsets() {
        let k = s.len();
        if k > r || m.rank(s) != k {
            continue;
        }
        if broken.iter().any(|b| b.is_subset_of(s)) {
            continue;
        }
        counts[k] += 1;
    }
    let mut coeffs = vec![BigInt::zero(); r + 1];
    for (k, &c) in counts.iter().enumerate() {
        let c = BigInt::from(c);
        coeffs[r - k] = if k % 2 == 0 { c } else { -c };
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

/// Smallest cocircuit, or `None` when the matroid has rank zero and so no
/// cocircuits at all.
pub fn min_cocircuit_size(m: &dyn Matroid) -> Result<Option<usize>> {
    check_circuit_guard(m)?;
    Ok(cocircuits(m)?.first().map(|c| c.len()))
}
