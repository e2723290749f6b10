use serde::{Deserialize, Serialize};

use super::Space;
use crate::error::{KakeyaError, Result};
use crate::field::Field;

/// A subset of F_q^n stored as one bit per ranked point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    space: Space,
    words: Vec<u64>,
}

impl PointSet {
    pub fn empty(space: &Space) -> PointSet {
        PointSet {
            space: space.clone(),
            words: vec![0; space.size().div_ceil(64) as usize],
        }
    }

    pub fn full(space: &Space) -> PointSet {
        let mut set = PointSet {
            space: space.clone(),
            words: vec![u64::MAX; space.size().div_ceil(64) as usize],
        };
        let tail = space.size() % 64;
        if tail != 0 {
            *set.words.last_mut().unwrap() = (1u64 << tail) - 1;
        }
        set
    }

    pub fn from_ranks(space: &Space, ranks: impl IntoIterator<Item = u64>) -> Result<PointSet> {
        let mut set = PointSet::empty(space);
        for r in ranks {
            if r >= space.size() {
                return Err(KakeyaError::Invalid(format!(
                    "point rank {r} out of range for {} points",
                    space.size()
                )));
            }
            set.insert(r);
        }
        Ok(set)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    #[inline]
    pub fn insert(&mut self, rank: u64) {
        self.words[(rank >> 6) as usize] |= 1 << (rank & 63);
    }

    #[inline]
    pub fn contains(&self, rank: u64) -> bool {
        rank < self.space.size() && self.words[(rank >> 6) as usize] >> (rank & 63) & 1 == 1
    }

    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn check_same_space(&self, other: &PointSet) {
        assert_eq!(
            self.space, other.space,
            "point sets live in different spaces"
        );
    }

    pub fn union_with(&mut self, other: &PointSet) {
        self.check_same_space(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        self.check_same_space(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    /// |self ∩ other| without materializing the intersection.
    pub fn intersection_len(&self, other: &PointSet) -> u64 {
        self.check_same_space(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.check_same_space(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Ranks of the members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let base = (i as u64) << 6;
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as u64;
                bits &= bits - 1;
                Some(base + tz)
            })
        })
    }

    pub fn to_set_file(&self) -> SetFile {
        let field = self.space.field();
        SetFile {
            q: field.q(),
            p: field.p(),
            k: field.k(),
            n: self.space.dim(),
            ranks: self.iter().collect(),
        }
    }
}

/// Portable set dump: `{q, p, k, n, ranks}` with ranks sorted ascending and
/// `rank(x) = sum_i rank(x_i) * q^i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFile {
    pub q: u64,
    pub p: u64,
    pub k: u32,
    pub n: usize,
    pub ranks: Vec<u64>,
}

impl SetFile {
    pub fn into_point_set(self) -> Result<PointSet> {
        let field = Field::new(self.p, self.k)?;
        if field.q() != self.q {
            return Err(KakeyaError::Invalid(format!(
                "q = {} does not match p^k = {}",
                self.q,
                field.q()
            )));
        }
        let space = Space::new(&field, self.n)?;
        PointSet::from_ranks(&space, self.ranks)
    }
}
