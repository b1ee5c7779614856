use dashmap::DashMap;

use super::Matroid;
use crate::subset::Subset;

/// `M*`, rank `r*(A) = r(E - A) + |A| - r(E)`.
#[derive(Clone, Debug)]
pub struct Dual<M> {
    base: M,
    base_full_rank: usize,
}

pub fn dual<M: Matroid>(base: M) -> Dual<M> {
    let base_full_rank = base.full_rank();
    Dual {
        base,
        base_full_rank,
    }
}

impl<M: Matroid> Dual<M> {
    pub fn base(&self) -> &M {
        &self.base
    }
}

impl<M: Matroid> Matroid for Dual<M> {
    fn ground_size(&self) -> usize {
        self.base.ground_size()
    }

    fn rank(&self, set: Subset) -> usize {
        let complement = self.base.ground().difference(set);
        self.base.rank(complement) + set.len() - self.base_full_rank
    }

    fn full_rank(&self) -> usize {
        self.base.ground_size() - self.base_full_rank
    }
}

/// A minor `(M / C) | R` with `R` and `C` disjoint: its ground set is `R`,
/// re-indexed `0..|R|` in ascending original order, and its rank function
/// is `B -> r(B ∪ C) - r(C)`.
#[derive(Clone, Debug)]
pub struct Minor<M> {
    base: M,
    elements: Vec<usize>,
    contracted: Subset,
    contracted_rank: usize,
}

impl<M: Matroid> Minor<M> {
    pub fn new(base: M, remaining: Subset, contracted: Subset) -> Self {
        debug_assert!(remaining.intersection(contracted).is_empty());
        let contracted_rank = base.rank(contracted);
        Minor {
            base,
            elements: remaining.iter().collect(),
            contracted,
            contracted_rank,
        }
    }

    /// Original indices of the minor's elements.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contracted(&self) -> Subset {
        self.contracted
    }

    /// Maps a local subset of the minor back to base indices.
    pub fn to_base(&self, local: Subset) -> Subset {
        local.expand(&self.elements)
    }
}

impl<M: Matroid> Matroid for Minor<M> {
    fn ground_size(&self) -> usize {
        self.elements.len()
    }

    fn rank(&self, set: Subset) -> usize {
        self.base.rank(self.to_base(set).union(self.contracted)) - self.contracted_rank
    }
}

/// `M|A`: ground set `A`, rank inherited.
pub fn restrict<M: Matroid>(base: M, keep: Subset) -> Minor<M> {
    Minor::new(base, keep, Subset::EMPTY)
}

/// `M.A = M / (E - A)`: contraction onto `keep`, i.e. everything outside
/// `keep` is contracted. Use `contract(m, E - C)` for the usual `M / C`.
pub fn contract<M: Matroid>(base: M, keep: Subset) -> Minor<M> {
    let rest = base.ground().difference(keep);
    Minor::new(base, keep, rest)
}

/// Lazily memoised rank oracle, safe to share between threads.
#[derive(Debug)]
pub struct Memoized<M> {
    base: M,
    cache: DashMap<u64, u8>,
}

impl<M: Matroid> Memoized<M> {
    pub fn new(base: M) -> Self {
        Memoized {
            base,
            cache: DashMap::new(),
        }
    }

    pub fn cached_entries(&self) -> usize {
        self.cache.len()
    }
}

impl<M: Matroid> Matroid for Memoized<M> {
    fn ground_size(&self) -> usize {
        self.base.ground_size()
    }

    fn rank(&self, set: Subset) -> usize {
        if let Some(r) = self.cache.get(&set.0) {
            return *r as usize;
        }
        let r = self.base.rank(set);
        self.cache.insert(set.0, r as u8);
        r
    }
}
