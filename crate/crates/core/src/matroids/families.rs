use dashmap::DashMap;

use super::Matroid;
use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::subset::{Subset, MAX_GROUND};

/// `U_{m,n}`: rank `min(m, |A|)`.
#[derive(Clone, Debug)]
pub struct Uniform {
    rank: usize,
    size: usize,
}

pub fn make_uniform(m: usize, n: usize) -> Result<Uniform> {
    if m > n {
        return Err(Error::bad_params(format!("uniform matroid needs m <= n, got m={m}, n={n}")));
    }
    if n > MAX_GROUND {
        return Err(Error::too_large("ground set", n as u64, MAX_GROUND as u64));
    }
    Ok(Uniform { rank: m, size: n })
}

impl Matroid for Uniform {
    fn ground_size(&self) -> usize {
        self.size
    }

    fn rank(&self, set: Subset) -> usize {
        self.rank.min(set.len())
    }
}

/// Cycle matroid of a multigraph; ground set = edge indices.
#[derive(Clone, Debug)]
pub struct Graphic {
    graph: MultiGraph,
}

pub fn make_graphic(graph: &MultiGraph) -> Result<Graphic> {
    graph.check_edge_limit()?;
    Ok(Graphic {
        graph: graph.clone(),
    })
}

impl Graphic {
    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }
}

impl Matroid for Graphic {
    fn ground_size(&self) -> usize {
        self.graph.edge_count()
    }

    fn rank(&self, set: Subset) -> usize {
        self.graph.rank(set)
    }
}

/// `PG(n-1, p)` over a prime field: points of projective space as
/// normalised vectors of `F_p^n` (first nonzero coordinate 1), ranked by
/// Gaussian elimination mod `p`.
#[derive(Debug)]
pub struct Projective {
    dimension: usize,
    prime: u64,
    points: Vec<Vec<u64>>,
    cache: DashMap<u64, u8>,
}

pub fn make_pg(n: usize, p: u64) -> Result<Projective> {
    if n < 1 {
        return Err(Error::bad_params("projective geometry needs n >= 1"));
    }
    if !is_prime(p) {
        return Err(Error::bad_params(format!(
            "brute-force PG construction needs a prime field size, got {p}"
        )));
    }
    let size = (0..n as u32).try_fold(0u128, |acc, i| {
        (p as u128).checked_pow(i).map(|t| acc + t)
    });
    match size {
        Some(s) if s <= MAX_GROUND as u128 => {}
        Some(s) => return Err(Error::too_large("projective ground set", s, MAX_GROUND as u128)),
        None => return Err(Error::too_large("projective ground set", u128::MAX, MAX_GROUND as u128)),
    }

    // Lexicographic enumeration of F_p^n with coordinate 0 most significant.
    let mut points = Vec::new();
    let mut v = vec![0u64; n];
    loop {
        if v.iter().find(|&&c| c != 0) == Some(&1) {
            points.push(v.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(Projective {
                    dimension: n,
                    prime: p,
                    points,
                    cache: DashMap::new(),
                });
            }
            i -= 1;
            v[i] += 1;
            if v[i] < p {
                break;
            }
            v[i] = 0;
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl Projective {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn points(&self) -> &[Vec<u64>] {
        &self.points
    }

    fn eliminate(&self, set: Subset) -> usize {
        let p = self.prime;
        let mut rows: Vec<Vec<u64>> = set.iter().map(|i| self.points[i].clone()).collect();
        let mut rank = 0;
        for col in 0..self.dimension {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = pow_mod(rows[rank][col], p - 2, p);
            for c in col..self.dimension {
                rows[rank][c] = rows[rank][c] * inv % p;
            }
            for r in 0..rows.len() {
                if r != rank && rows[r][col] != 0 {
                    let f = rows[r][col];
                    for c in col..self.dimension {
                        rows[r][c] = (rows[r][c] + p * p - f * rows[rank][c]) % p;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }
}

impl Matroid for Projective {
    fn ground_size(&self) -> usize {
        self.points.len()
    }

    fn rank(&self, set: Subset) -> usize {
        if let Some(r) = self.cache.get(&set.0) {
            return *r as usize;
        }
        let r = self.eliminate(set);
        self.cache.insert(set.0, r as u8);
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, MultiGraph};
    use crate::matroids::same_rank_function;

    #[test]
    fn uniform_examples() {
        assert_eq!(make_uniform(0, 0).unwrap().rank(Subset::EMPTY), 0);
        let u23 = make_uniform(2, 3).unwrap();
        for pair in [[0, 1], [0, 2], [1, 2]] {
            assert_eq!(u23.rank(Subset::from_elements(pair)), 2);
        }
        assert_eq!(make_uniform(1, 3).unwrap().full_rank(), 1);
        assert!(matches!(make_uniform(4, 3), Err(Error::BadParams(_))));
    }

    #[test]
    fn graphic_examples() {
        let looped = MultiGraph::new(1, vec![(0, 0)]).unwrap();
        assert_eq!(make_graphic(&looped).unwrap().rank(Subset::singleton(0)), 0);
        let k3 = make_graphic(&complete_graph(3)).unwrap();
        assert!(same_rank_function(&k3, &make_uniform(2, 3).unwrap()));
        for n in 1..=6 {
            assert_eq!(make_graphic(&complete_graph(n)).unwrap().full_rank(), n - 1);
        }
    }

    #[test]
    fn projective_examples() {
        let line = make_pg(2, 2).unwrap();
        assert_eq!(line.ground_size(), 3);
        assert!(same_rank_function(&line, &make_uniform(2, 3).unwrap()));
        let fano = make_pg(3, 2).unwrap();
        assert_eq!(fano.ground_size(), 7);
        assert_eq!(fano.full_rank(), 3);
        assert_eq!(make_pg(3, 3).unwrap().ground_size(), 13);
        assert!(fano.points().iter().all(|v| v.iter().find(|&&c| c != 0) == Some(&1)));
    }

    #[test]
    fn projective_rejects_bad_params() {
        assert!(matches!(make_pg(2, 4), Err(Error::BadParams(_))));
        assert!(matches!(make_pg(0, 2), Err(Error::BadParams(_))));
        assert_eq!(make_pg(4, 3).unwrap().ground_size(), 40);
        assert!(matches!(make_pg(5, 3), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn fano_has_dependent_triples() {
        let fano = make_pg(3, 2).unwrap();
        let dependent = Subset::full(7)
            .subsets()
            .filter(|s| s.len() == 3 && fano.rank(*s) == 2)
            .count();
        assert_eq!(dependent, 7);
    }
}
