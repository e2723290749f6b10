//! Vectors of F_q^n, the norm form, dense point sets, spheres and
//! hyper-spheres, and solution counts of diagonal quadratic equations.
//!
//! Points are ranked by `rank(x) = sum_i rank(x_i) * q^i`, so the first
//! coordinate is the least significant digit. Point sets, set files and all
//! enumeration loops use this order.

mod pointset;
mod quadric;
mod sphere;

pub use pointset::{PointSet, SetFile};
pub use quadric::{
    diagonal_count_bruteforce, diagonal_count_closed, diagonal_deviation, diagonal_histogram,
    DiagonalEq,
};
pub use sphere::{
    canonical_direction, hypersphere_points, sphere_intersection_size, sphere_points,
    sum_two_squares_covers, HypersphereSpec, NormShells, SphereSpec,
};

use crate::error::{KakeyaError, Result};
use crate::field::{Field, FieldElement};

/// Largest number of points a [`Space`] may have.
pub const MAX_POINTS: u64 = 1 << 40;

/// The ambient space F_q^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    field: Field,
    n: usize,
    size: u64,
}

impl Space {
    /// Fails with `Overflow` when q^n exceeds [`MAX_POINTS`].
    pub fn new(field: &Field, n: usize) -> Result<Space> {
        if n == 0 {
            return Err(KakeyaError::BadDimension {
                got: n,
                reason: "dimension must be at least 1",
            });
        }
        let size = u32::try_from(n)
            .ok()
            .and_then(|e| field.q().checked_pow(e))
            .filter(|&s| s <= MAX_POINTS)
            .ok_or_else(|| {
                KakeyaError::Overflow(format!("{}^{} exceeds the 2^40 point cap", field.q(), n))
            })?;
        Ok(Space {
            field: field.clone(),
            n,
            size,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// q^n.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn check_vector(&self, v: &[FieldElement]) -> Result<()> {
        if v.len() != self.n {
            return Err(KakeyaError::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        if let Some(bad) = v.iter().find(|x| x.rank() >= self.field.q()) {
            return Err(KakeyaError::RankOutOfRange {
                rank: bad.rank(),
                q: self.field.q(),
            });
        }
        Ok(())
    }

    pub fn rank(&self, v: &[FieldElement]) -> u64 {
        let q = self.field.q();
        v.iter().rev().fold(0, |acc, x| acc * q + x.rank())
    }

    pub fn unrank(&self, mut rank: u64) -> Vec<FieldElement> {
        let q = self.field.q();
        (0..self.n)
            .map(|_| {
                let x = self.field.elem_unchecked(rank % q);
                rank /= q;
                x
            })
            .collect()
    }

    pub fn zero(&self) -> Vec<FieldElement> {
        vec![FieldElement::ZERO; self.n]
    }

    /// Rank of `a + v`.
    #[inline]
    pub fn translated_rank(&self, a: &[FieldElement], v: &[FieldElement]) -> u64 {
        let q = self.field.q();
        a.iter()
            .zip(v)
            .rev()
            .fold(0, |acc, (&x, &y)| acc * q + self.field.add(x, y).rank())
    }

    /// Calls `f(rank, coords)` for every point, in rank order.
    pub fn for_each_point(&self, mut f: impl FnMut(u64, &[FieldElement])) {
        let q = self.field.q();
        let mut coords = self.zero();
        for rank in 0..self.size {
            f(rank, &coords);
            for c in coords.iter_mut() {
                let next = c.rank() + 1;
                if next < q {
                    *c = self.field.elem_unchecked(next);
                    break;
                }
                *c = FieldElement::ZERO;
            }
        }
    }

    pub fn norm(&self, v: &[FieldElement]) -> FieldElement {
        norm(&self.field, v)
    }
}

/// ||x|| = x_1^2 + ... + x_n^2.
pub fn norm(field: &Field, v: &[FieldElement]) -> FieldElement {
    v.iter().fold(FieldElement::ZERO, |acc, &x| {
        field.add(acc, field.square(x))
    })
}

pub fn dot(field: &Field, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
    u.iter().zip(v).fold(FieldElement::ZERO, |acc, (&x, &y)| {
        field.add(acc, field.mul(x, y))
    })
}

pub fn vec_sub(field: &Field, u: &[FieldElement], v: &[FieldElement]) -> Vec<FieldElement> {
    u.iter().zip(v).map(|(&x, &y)| field.sub(x, y)).collect()
}

pub fn vec_add(field: &Field, u: &[FieldElement], v: &[FieldElement]) -> Vec<FieldElement> {
    u.iter().zip(v).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn vec_scale(field: &Field, s: FieldElement, v: &[FieldElement]) -> Vec<FieldElement> {
    v.iter().map(|&x| field.mul(s, x)).collect()
}
