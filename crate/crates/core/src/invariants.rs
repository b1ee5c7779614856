//! Characteristic, Tutte, Whitney, chromatic, flow and dichromatic
//! polynomials, each reachable by more than one route.
//!
//! The subset-sum routes share one pass over `2^|E|` subsets that tallies
//! how many subsets have each (rank, size) pair; every invariant here is a
//! linear function of that table.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{binomial, BiPoly, IntPoly};
use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::matroids::{make_graphic, Matroid};
use crate::subset::Subset;

/// Ground-set guard for the `2^|E|` subset sums.
pub const SUBSET_SUM_LIMIT: usize = 24;

/// Vertex guard for the `3^|V|` colouring recurrence.
pub const VERTEX_DP_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Subset,
    Delcon,
    ClosedForm,
    Conversion,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Subset => "subset",
            Method::Delcon => "delcon",
            Method::ClosedForm => "closed-form",
            Method::Conversion => "conversion",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A computed polynomial together with how it was obtained.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantResult<P> {
    pub value: P,
    pub method: Method,
    pub descriptor: String,
}

/// `counts[k][j]`: number of subsets of size `j` and rank `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankSizeTable {
    size: usize,
    full_rank: usize,
    counts: Vec<Vec<u64>>,
}

impl RankSizeTable {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn full_rank(&self) -> usize {
        self.full_rank
    }

    pub fn count(&self, rank: usize, size: usize) -> u64 {
        self.counts[rank][size]
    }

    fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.counts.iter().enumerate().flat_map(|(k, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(move |(j, &c)| (k, j, c))
        })
    }

    /// `sum (-1)^|A| x^(r(E) - r(A))`
    pub fn chi(&self) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); self.full_rank + 1];
        for (k, j, c) in self.entries() {
            let term = BigInt::from(c);
            if j % 2 == 0 {
                coeffs[self.full_rank - k] += term;
            } else {
                coeffs[self.full_rank - k] -= term;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    /// Characteristic polynomial of the dual, read off the same table via
    /// complements: `sum_B (-1)^(|E| - |B|) x^(|B| - r(B))`.
    pub fn chi_dual(&self) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); self.size - self.full_rank + 1];
        for (k, j, c) in self.entries() {
            let term = BigInt::from(c);
            if (self.size - j) % 2 == 0 {
                coeffs[j - k] += term;
            } else {
                coeffs[j - k] -= term;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    /// `R(u, v) = sum u^(r(E) - r(A)) v^(|A| - r(A))`
    pub fn whitney(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (k, j, c) in self.entries() {
            out.add_term(BigInt::from(c), (self.full_rank - k) as u32, (j - k) as u32);
        }
        out
    }

    pub fn tutte(&self) -> BiPoly {
        let minus_one = -BigInt::one();
        self.whitney().shift(&minus_one, &minus_one)
    }
}

/// Tallies `(rank, size)` over all subsets. Refuses ground sets above
/// `limit`, and gives up with `BudgetExceeded` once `deadline` has passed.
pub fn rank_size_table_with(
    m: &dyn Matroid,
    limit: usize,
    deadline: Option<Instant>,
) -> Result<RankSizeTable> {
    let size = m.ground_size();
    if size > limit {
        return Err(Error::too_large("subset sum ground set", size as u64, limit as u64));
    }
    let full_rank = m.full_rank();
    let width = size + 1;
    let chunk_bits = size.min(14);
    let chunks = 1u64 << (size - chunk_bits);
    let expired = AtomicBool::new(false);
    let started = Instant::now();

    let flat = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut local = vec![0u64; (full_rank + 1) * width];
            if expired.load(Ordering::Relaxed) {
                return local;
            }
            if deadline.is_some_and(|d| Instant::now() > d) {
                expired.store(true, Ordering::Relaxed);
                return local;
            }
            let base = chunk << chunk_bits;
            for low in 0..1u64 << chunk_bits {
                let s = Subset(base | low);
                local[m.rank(s) * width + s.len()] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; (full_rank + 1) * width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    if expired.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded(started.elapsed().as_millis()));
    }
    Ok(RankSizeTable {
        size,
        full_rank,
        counts: flat.chunks(width).map(<[u64]>::to_vec).collect(),
    })
}

pub fn rank_size_table(m: &dyn Matroid) -> Result<RankSizeTable> {
    rank_size_table_with(m, SUBSET_SUM_LIMIT, None)
}

/// `chi_M(x) = sum_A (-1)^|A| x^(r(E) - r(A))`
pub fn chi_subset(m: &dyn Matroid) -> Result<IntPoly> {
    Ok(rank_size_table(m)?.chi())
}

/// Deletion-contraction on a generic matroid: `chi = chi(M\e) - chi(M/e)`
/// for the lowest element that is neither a loop nor a coloop; a loop gives
/// zero and a matroid made of `n` coloops gives `(x - 1)^n`.
pub fn chi_delcon(m: &dyn Matroid) -> IntPoly {
    delcon_rec(m, m.ground(), Subset::EMPTY)
}

/// The minor `(M / contracted) | remaining`.
fn delcon_rec(m: &dyn Matroid, remaining: Subset, contracted: Subset) -> IntPoly {
    let base = m.rank(contracted);
    let span = m.rank(remaining.union(contracted));
    let mut pivot = None;
    for e in remaining.iter() {
        if m.rank(contracted.with(e)) == base {
            return IntPoly::zero();
        }
        let coloop = m.rank(remaining.without(e).union(contracted)) < span;
        if !coloop && pivot.is_none() {
            pivot = Some(e);
        }
    }
    match pivot {
        None => IntPoly::from_i64s(&[-1, 1]).pow(remaining.len() as u64),
        Some(e) => {
            let deleted = delcon_rec(m, remaining.without(e), contracted);
            let contracted = delcon_rec(m, remaining.without(e), contracted.with(e));
            &deleted - &contracted
        }
    }
}

/// Deletion-contraction for `chi` of a graphic matroid, memoised on the
/// normalised edge multiset of each intermediate graph.
pub fn chi_delcon_graph(g: &MultiGraph) -> IntPoly {
    let mut memo = HashMap::new();
    graph_delcon_rec(g.clone(), &mut memo)
}

type GraphKey = (usize, Vec<(usize, usize)>);

fn graph_key(g: &MultiGraph) -> GraphKey {
    let mut edges: Vec<_> = g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    (g.vertex_count(), edges)
}

fn graph_delcon_rec(g: MultiGraph, memo: &mut HashMap<GraphKey, IntPoly>) -> IntPoly {
    if g.has_loop() {
        return IntPoly::zero();
    }
    let key = graph_key(&g);
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let all = g.all_edges();
    let span = g.rank(all);
    let pivot = all.iter().find(|&e| g.rank(all.without(e)) == span);
    let out = match pivot {
        None => IntPoly::from_i64s(&[-1, 1]).pow(g.edge_count() as u64),
        Some(e) => {
            let deleted = MultiGraph::new(
                g.vertex_count(),
                g.edges()
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != e)
                    .map(|(_, &uv)| uv)
                    .collect(),
            )
            .expect("deleting an edge keeps endpoints valid");
            let contracted = g.quotient(Subset::singleton(e));
            &graph_delcon_rec(deleted, memo) - &graph_delcon_rec(contracted, memo)
        }
    };
    memo.insert(key, out.clone());
    out
}

pub fn tutte(m: &dyn Matroid) -> Result<BiPoly> {
    Ok(rank_size_table(m)?.tutte())
}

pub fn whitney_r(m: &dyn Matroid) -> Result<BiPoly> {
    Ok(rank_size_table(m)?.whitney())
}

/// `T_{U_{m,n}} = sum_{i<m} C(n,i)(x-1)^(m-i) + C(n,m) + sum_{i>m} C(n,i)(y-1)^(i-m)`
pub fn tutte_uniform_closed(m: usize, n: usize) -> Result<BiPoly> {
    if m > n {
        return Err(Error::bad_params(format!("uniform matroid needs m <= n, got m={m}, n={n}")));
    }
    let x_minus_one = IntPoly::from_i64s(&[-1, 1]);
    let mut out = BiPoly::term(binomial(n as u64, m as u64), 0, 0);
    for i in 0..m {
        let p = x_minus_one.pow((m - i) as u64).scale(&binomial(n as u64, i as u64));
        out = &out + &BiPoly::from_x(&p);
    }
    for i in m + 1..=n {
        let p = x_minus_one.pow((i - m) as u64).scale(&binomial(n as u64, i as u64));
        out = &out + &BiPoly::from_y(&p);
    }
    Ok(out)
}

fn sign(k: usize) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `chi_M(z) = (-1)^r(E) T_M(1 - z, 0)`
pub fn chi_from_tutte(t: &BiPoly, full_rank: usize) -> IntPoly {
    t.substitute(&IntPoly::from_i64s(&[1, -1]), &IntPoly::zero())
        .scale(&sign(full_rank))
}

/// `chi_{M*}(z) = (-1)^(|E| - r(E)) T_M(0, 1 - z)`
pub fn chi_dual_from_tutte(t: &BiPoly, size: usize, full_rank: usize) -> IntPoly {
    t.substitute(&IntPoly::zero(), &IntPoly::from_i64s(&[1, -1]))
        .scale(&sign(size - full_rank))
}

/// `chi_M(x) = (-1)^r(E) R_M(-x, -1)`
pub fn chi_from_whitney(r: &BiPoly, full_rank: usize) -> IntPoly {
    r.substitute(&IntPoly::from_i64s(&[0, -1]), &IntPoly::from_i64s(&[-1]))
        .scale(&sign(full_rank))
}

/// `chi_{M*}(x) = (-1)^(|E| - r(E)) R_M(-1, -x)`
pub fn chi_dual_from_whitney(r: &BiPoly, size: usize, full_rank: usize) -> IntPoly {
    r.substitute(&IntPoly::from_i64s(&[-1]), &IntPoly::from_i64s(&[0, -1]))
        .scale(&sign(size - full_rank))
}

/// `P_G(x) = x^c(G) chi_{M_G}(x)`
pub fn chromatic_poly(g: &MultiGraph) -> Result<IntPoly> {
    let chi = chi_subset(&make_graphic(g)?)?;
    Ok(chi.shift_up(g.component_count()))
}

/// Chromatic polynomial from the vertex side: `sum_k a_k x(x-1)..(x-k+1)`
/// where `a_k` counts partitions of `V` into `k` independent sets. Runs in
/// `O(3^|V|)` and is indifferent to the number of edges.
pub fn chromatic_poly_vertex(g: &MultiGraph) -> Result<IntPoly> {
    let n = g.vertex_count();
    if n > VERTEX_DP_LIMIT {
        return Err(Error::too_large("vertex set", n as u64, VERTEX_DP_LIMIT as u64));
    }
    let mut adjacent = vec![0u32; n];
    let mut looped = 0u32;
    for &(u, v) in g.edges() {
        if u == v {
            looped |= 1 << u;
        }
        adjacent[u] |= 1 << v;
        adjacent[v] |= 1 << u;
    }
    let full = (1usize << n) - 1;
    let mut independent = vec![false; full + 1];
    independent[0] = true;
    for s in 1..=full {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        independent[s] = independent[rest]
            && looped >> low & 1 == 0
            && adjacent[low] as usize & rest == 0;
    }
    // ways[s][k]: partitions of vertex set `s` into `k` independent blocks.
    let mut ways = vec![vec![0u64; n + 1]; full + 1];
    ways[0][0] = 1;
    for s in 1..=full {
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut t = rest;
        loop {
            let block = t | low;
            if independent[block] {
                let remaining = s ^ block;
                for k in 1..=n {
                    ways[s][k] += ways[remaining][k - 1];
                }
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & rest;
        }
    }
    let mut out = IntPoly::zero();
    for (k, &w) in ways[full].iter().enumerate() {
        if w != 0 {
            out = &out + &IntPoly::falling_factorial(k).scale(&BigInt::from(w));
        }
    }
    Ok(out)
}

/// `F_G = chi_{M_G*}`
pub fn flow_poly(g: &MultiGraph) -> Result<IntPoly> {
    Ok(rank_size_table(&make_graphic(g)?)?.chi_dual())
}

/// `Q_G(u, v) = u^c(G) R_{M_G}(u, v)`
pub fn dichromatic_q(g: &MultiGraph) -> Result<BiPoly> {
    let r = whitney_r(&make_graphic(g)?)?;
    Ok(&BiPoly::term(BigInt::one(), g.component_count() as u32, 0) * &r)
}
