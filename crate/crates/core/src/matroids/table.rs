use super::Matroid;
use crate::error::{Error, Result};
use crate::subset::Subset;

/// Largest ground set whose rank function is stored as a dense table.
pub const TABLE_LIMIT: usize = 24;

/// Largest ground set on which [`RankTable::from_ranks`] checks the axioms.
pub const AXIOM_CHECK_LIMIT: usize = 6;

/// A rank function stored explicitly, one byte per subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTable {
    size: usize,
    ranks: Vec<u8>,
}

impl RankTable {
    /// Materialises any rank oracle.
    pub fn of(m: &dyn Matroid) -> Result<Self> {
        let size = m.ground_size();
        if size > TABLE_LIMIT {
            return Err(Error::too_large("rank table ground set", size as u64, TABLE_LIMIT as u64));
        }
        let ranks = (0..1u64 << size).map(|s| m.rank(Subset(s)) as u8).collect();
        Ok(RankTable { size, ranks })
    }

    /// Builds a table from explicit ranks indexed by bitmask. For ground sets
    /// of at most six elements the matroid axioms are checked exhaustively.
    pub fn from_ranks(size: usize, ranks: Vec<u8>) -> Result<Self> {
        if size > TABLE_LIMIT {
            return Err(Error::too_large("rank table ground set", size as u64, TABLE_LIMIT as u64));
        }
        if ranks.len() != 1usize << size {
            return Err(Error::bad_params(format!(
                "rank table for {size} elements needs {} entries, got {}",
                1usize << size,
                ranks.len()
            )));
        }
        let table = RankTable { size, ranks };
        if size <= AXIOM_CHECK_LIMIT {
            table.check_axioms()?;
        }
        Ok(table)
    }

    fn check_axioms(&self) -> Result<()> {
        let r = |s: u64| self.ranks[s as usize] as usize;
        let all = 1u64 << self.size;
        for a in 0..all {
            if r(a) > a.count_ones() as usize {
                return Err(Error::bad_params(format!("rank exceeds size on {:?}", Subset(a))));
            }
            for e in 0..self.size {
                let b = a | 1 << e;
                if r(a) > r(b) || r(b) > r(a) + 1 {
                    return Err(Error::bad_params(format!(
                        "rank not unit-increasing from {:?} to {:?}",
                        Subset(a),
                        Subset(b)
                    )));
                }
            }
            for b in 0..all {
                if r(a | b) + r(a & b) > r(a) + r(b) {
                    return Err(Error::bad_params(format!(
                        "submodularity fails on {:?}, {:?}",
                        Subset(a),
                        Subset(b)
                    )));
                }
            }
        }
        Ok(())
    }
}

impl Matroid for RankTable {
    fn ground_size(&self) -> usize {
        self.size
    }

    fn rank(&self, set: Subset) -> usize {
        self.ranks[set.0 as usize] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroids::{make_pg, same_rank_function};

    #[test]
    fn materialise_fano() {
        let fano = make_pg(3, 2).unwrap();
        let table = RankTable::of(&fano).unwrap();
        assert!(same_rank_function(&table, &fano));
        let again = RankTable::from_ranks(7, (0..128).map(|s| fano.rank(Subset(s)) as u8).collect());
        assert_eq!(again.unwrap(), table);
    }

    #[test]
    fn rejects_non_matroids() {
        // rank 2 on a singleton
        assert!(RankTable::from_ranks(1, vec![0, 2]).is_err());
        // rank drops when adding an element
        assert!(RankTable::from_ranks(2, vec![0, 1, 1, 0]).is_err());
        // submodularity: r({0}) = r({1}) = 0 but r({0,1}) = 1
        assert!(RankTable::from_ranks(2, vec![0, 0, 0, 1]).is_err());
        assert!(RankTable::from_ranks(2, vec![0, 1, 1]).is_err());
        assert!(RankTable::from_ranks(2, vec![0, 1, 1, 1]).is_ok());
    }
}
