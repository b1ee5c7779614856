//! Matroids as rank oracles.
//!
//! A matroid is a ground set `{0, .., n-1}` together with a rank function on
//! its subsets. Minors and duals are lazy views over a base oracle; nothing
//! is materialised unless wrapped in [`Memoized`] or [`RankTable`].

mod families;
mod minors;
mod table;

use std::sync::Arc;

pub use families::{make_graphic, make_pg, make_uniform, Graphic, Projective, Uniform};
pub use minors::{contract, dual, restrict, Dual, Memoized, Minor};
pub use table::RankTable;

use crate::error::{Error, Result};
use crate::subset::Subset;

/// Exhaustive enumeration guard for circuits and flats.
pub const ENUMERATION_LIMIT: usize = 20;

pub trait Matroid: Send + Sync {
    fn ground_size(&self) -> usize;

    fn rank(&self, set: Subset) -> usize;

    fn ground(&self) -> Subset {
        Subset::full(self.ground_size())
    }

    fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    /// An element of rank zero (sometimes called a link).
    fn is_loop(&self, e: usize) -> bool {
        self.rank(Subset::singleton(e)) == 0
    }

    /// An element whose removal drops the rank of the ground set.
    fn is_coloop(&self, e: usize) -> bool {
        let ground = self.ground();
        self.rank(ground) != self.rank(ground.without(e))
    }
}

impl<M: Matroid + ?Sized> Matroid for &M {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn rank(&self, set: Subset) -> usize {
        (**self).rank(set)
    }

    fn full_rank(&self) -> usize {
        (**self).full_rank()
    }
}

impl<M: Matroid + ?Sized> Matroid for Box<M> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn rank(&self, set: Subset) -> usize {
        (**self).rank(set)
    }

    fn full_rank(&self) -> usize {
        (**self).full_rank()
    }
}

impl<M: Matroid + ?Sized> Matroid for Arc<M> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn rank(&self, set: Subset) -> usize {
        (**self).rank(set)
    }

    fn full_rank(&self) -> usize {
        (**self).full_rank()
    }
}

fn check_enumerable(m: &dyn Matroid) -> Result<()> {
    let n = m.ground_size();
    if n > ENUMERATION_LIMIT {
        return Err(Error::too_large("ground set", n as u64, ENUMERATION_LIMIT as u64));
    }
    Ok(())
}

/// Minimal dependent sets, ordered by size and then by bitmask.
pub fn circuits(m: &dyn Matroid) -> Result<Vec<Subset>> {
    check_enumerable(m)?;
    let mut out: Vec<Subset> = m
        .ground()
        .subsets()
        .filter(|&s| {
            let size = s.len();
            m.rank(s) < size && s.iter().all(|e| m.rank(s.without(e)) == size - 1)
        })
        .collect();
    out.sort_by_key(|s| (s.len(), s.0));
    Ok(out)
}

/// Circuits of the dual matroid.
pub fn cocircuits(m: &dyn Matroid) -> Result<Vec<Subset>> {
    circuits(&dual(m))
}

/// Closed sets of rank `k`: no element outside can be added without raising
/// the rank.
pub fn flats_of_rank(m: &dyn Matroid, k: usize) -> Result<Vec<Subset>> {
    check_enumerable(m)?;
    let ground = m.ground();
    Ok(ground
        .subsets()
        .filter(|&a| {
            m.rank(a) == k && ground.difference(a).iter().all(|e| m.rank(a.with(e)) > k)
        })
        .collect())
}

pub fn is_closed(m: &dyn Matroid, a: Subset) -> bool {
    let r = m.rank(a);
    m.ground().difference(a).iter().all(|e| m.rank(a.with(e)) > r)
}

/// True when the rank function is `min(r(E), |A|)` on every subset.
pub fn is_uniform(m: &dyn Matroid) -> Result<bool> {
    check_enumerable(m)?;
    let r = m.full_rank();
    Ok(m.ground().subsets().all(|a| m.rank(a) == r.min(a.len())))
}

/// Compares two rank oracles on every subset of a common ground set.
pub fn same_rank_function(a: &dyn Matroid, b: &dyn Matroid) -> bool {
    a.ground_size() == b.ground_size() && a.ground().subsets().all(|s| a.rank(s) == b.rank(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, MultiGraph};

    #[test]
    fn uniform_circuits() {
        let u23 = make_uniform(2, 3).unwrap();
        assert_eq!(circuits(&u23).unwrap(), vec![Subset::full(3)]);
    }

    #[test]
    fn loop_is_a_circuit() {
        let g = MultiGraph::new(1, vec![(0, 0)]).unwrap();
        let m = make_graphic(&g).unwrap();
        assert_eq!(circuits(&m).unwrap(), vec![Subset::singleton(0)]);
        assert!(m.is_loop(0));
    }

    #[test]
    fn fano_lines() {
        let fano = make_pg(3, 2).unwrap();
        let lines = flats_of_rank(&fano, 2).unwrap();
        assert_eq!(lines.len(), 7);
        assert!(lines.iter().all(|l| l.len() == 3));
        assert_eq!(flats_of_rank(&fano, 1).unwrap().len(), 7);
        assert_eq!(flats_of_rank(&fano, 3).unwrap(), vec![Subset::full(7)]);
    }

    #[test]
    fn enumeration_guard() {
        let big = make_uniform(3, 21).unwrap();
        assert!(matches!(circuits(&big), Err(Error::TooLarge { .. })));
        assert!(matches!(flats_of_rank(&big, 1), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn k3_is_uniform() {
        let k3 = make_graphic(&complete_graph(3)).unwrap();
        assert!(is_uniform(&k3).unwrap());
        let k4 = make_graphic(&complete_graph(4)).unwrap();
        assert!(!is_uniform(&k4).unwrap());
    }

    #[test]
    fn coloop_detection() {
        let path = MultiGraph::new(3, vec![(0, 1), (1, 2), (1, 2)]).unwrap();
        let m = make_graphic(&path).unwrap();
        assert!(m.is_coloop(0));
        assert!(!m.is_coloop(1));
    }
}
