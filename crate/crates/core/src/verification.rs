//! Independent checkers: the lower bound for sets containing many spheres,
//! witness and exhaustive Kakeya verification, the pairwise sphere
//! intersection bound, and the one-dimensional cover checks.

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{Certificate, KakeyaWitness, WitnessKind};
use crate::error::{KakeyaError, Result};
use crate::exact::{ceil_sqrt, checked_pow, pow_i128, Half};
use crate::field::{odd_prime_power, Field, FieldElement};
use crate::geometry::{NormShells, PointSet, Space};

/// Upper limit on the units of work an exhaustive scan may spend.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkBudget(pub u128);

impl Default for WorkBudget {
    fn default() -> Self {
        WorkBudget(10_000_000)
    }
}

impl WorkBudget {
    fn check(self, required: u128) -> Result<()> {
        if required > self.0 {
            Err(KakeyaError::BudgetExceeded {
                required,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum VerifyMode<'a> {
    /// Check the supplied certificates only.
    Witness(&'a KakeyaWitness),
    /// Search every center and radius.
    Exhaustive(WorkBudget),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundBranch {
    /// n >= 4, sets containing q - 1 spheres
    FourOrMore,
    /// n in {2, 3}, sets containing (q - 1)/2 spheres
    TwoOrThree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundReport {
    pub q: u64,
    pub n: usize,
    pub branch: BoundBranch,
    pub value: Half,
    pub ceiling: i128,
}

/// Lower bound on |K| for K ⊆ F_q^n containing q - 1 distinct spheres
/// (n >= 4) or (q - 1)/2 distinct spheres (n = 2, 3):
///
/// - n >= 4: q^n/2 + q^(n-1)/2 - q^(n-2) - q^(f+2)/2 + q^(f+1)/2 with
///   f = floor((n-1)/2);
/// - n = 2, 3: (q^n - q^(n-2))/4.
///
/// Every radius or center spherical Kakeya set contains that many spheres.
pub fn spherical_lower_bound(q: u64, n: usize) -> Result<BoundReport> {
    if odd_prime_power(q).is_none() {
        return Err(KakeyaError::NotOddPrimePower(q));
    }
    if n < 2 {
        return Err(KakeyaError::BadDimension {
            got: n,
            reason: "the spherical bound needs n >= 2",
        });
    }
    let e = u32::try_from(n).map_err(|_| KakeyaError::Overflow("dimension".into()))?;
    let (branch, twice) = if n >= 4 {
        let f = (e - 1) / 2;
        let twice =
            pow_i128(q, e)? + pow_i128(q, e - 1)? - 2 * pow_i128(q, e - 2)? - pow_i128(q, f + 2)?
                + pow_i128(q, f + 1)?;
        (BoundBranch::FourOrMore, twice)
    } else {
        // q^(n-2) (q^2 - 1) is divisible by 8 for odd q
        let num = pow_i128(q, e)? - pow_i128(q, e - 2)?;
        debug_assert_eq!(num % 2, 0);
        (BoundBranch::TwoOrThree, num / 2)
    };
    let value = Half::from_twice(twice);
    Ok(BoundReport {
        q,
        n,
        branch,
        value,
        ceiling: value.ceil(),
    })
}

/// q^(n-2) + q^floor((n-1)/2): the most points two different spheres in
/// F_q^n can share.
pub fn sphere_pair_bound(q: u64, n: usize) -> Result<u64> {
    if n < 2 {
        return Err(KakeyaError::BadDimension {
            got: n,
            reason: "spheres need n >= 2",
        });
    }
    let e = n as u32;
    Ok(checked_pow(q, e - 2)? + checked_pow(q, (e - 1) / 2)?)
}

/// (ceil(sqrt(q)), ceil(sqrt(2q))): the smallest conceivable radius and
/// center circular Kakeya sets in F_q.
pub fn circular_lower_bounds(q: u64) -> (u64, u64) {
    (ceil_sqrt(q), ceil_sqrt(2 * q))
}

/// K - K = F_q.
pub fn diff_cover(field: &Field, set: &[FieldElement]) -> bool {
    let mut hit = vec![false; field.q() as usize];
    for &x in set {
        for &y in set {
            hit[field.sub(x, y).rank() as usize] = true;
        }
    }
    hit.iter().all(|&h| h)
}

/// {x + y : x, y in K, x != y} = F_q.
pub fn sum_cover(field: &Field, set: &[FieldElement]) -> bool {
    let mut hit = vec![false; field.q() as usize];
    for (i, &x) in set.iter().enumerate() {
        for &y in &set[i + 1..] {
            if x != y {
                hit[field.add(x, y).rank() as usize] = true;
            }
        }
    }
    hit.iter().all(|&h| h)
}

/// Whether every certificate lies inside `set` and the certified
/// parameters are exactly the ones the witness kind requires.
pub fn witness_valid(set: &PointSet, witness: &KakeyaWitness) -> bool {
    let space = set.space();
    let field = space.field();
    let q = field.q();
    let expected_keys: Vec<u64> = match witness.kind {
        WitnessKind::Radius | WitnessKind::Hypersphere | WitnessKind::CircularRadius => {
            (1..q).collect()
        }
        WitnessKind::CenterCoordinate | WitnessKind::CircularCenter => (0..q).collect(),
    };
    if !witness.entries.keys().copied().eq(expected_keys) {
        return false;
    }
    witness.entries.iter().all(|(&key, cert)| {
        let key_matches = match (witness.kind, cert) {
            (WitnessKind::Radius, Certificate::Sphere(s)) => s.radius().rank() == key,
            (WitnessKind::CenterCoordinate, Certificate::Sphere(s)) => s.center()[0].rank() == key,
            (WitnessKind::Hypersphere, Certificate::Hypersphere(h)) => h.radius().rank() == key,
            (WitnessKind::CircularRadius, Certificate::Circle { radius, .. }) => {
                radius.rank() == key
            }
            (WitnessKind::CircularCenter, Certificate::Circle { center, radius, .. }) => {
                center.rank() == key && !radius.is_zero()
            }
            _ => false,
        };
        key_matches && cert.space() == space && cert.points().is_subset(set)
    })
}

fn exhaustive_work(space: &Space) -> u128 {
    // (q - 1) radii times q^n centers
    (space.field().q() as u128 - 1) * space.size() as u128
}

fn require_spheres(set: &PointSet) -> Result<()> {
    if set.space().dim() < 2 {
        return Err(KakeyaError::BadDimension {
            got: set.space().dim(),
            reason: "spherical Kakeya sets need n >= 2",
        });
    }
    Ok(())
}

/// Does `set` contain a sphere of every radius r in F_q^*?
pub fn verify_radius_kakeya(set: &PointSet, mode: VerifyMode<'_>) -> Result<bool> {
    require_spheres(set)?;
    match mode {
        VerifyMode::Witness(w) => {
            if w.kind != WitnessKind::Radius {
                return Err(KakeyaError::Invalid(format!(
                    "expected a radius witness, got {:?}",
                    w.kind
                )));
            }
            Ok(witness_valid(set, w))
        }
        VerifyMode::Exhaustive(budget) => {
            let space = set.space();
            budget.check(exhaustive_work(space))?;
            let shells = NormShells::new(space);
            let field = space.field();
            let radii: Vec<FieldElement> = field.nonzero_elements().collect();
            Ok(radii.par_iter().all(|&r| {
                (0..space.size()).any(|c| shells.sphere_within(&space.unrank(c), r, set))
            }))
        }
    }
}

/// Does `set` contain, for every a_1 in F_q, a sphere whose center has
/// first coordinate a_1?
pub fn verify_center_kakeya(set: &PointSet, mode: VerifyMode<'_>) -> Result<bool> {
    require_spheres(set)?;
    match mode {
        VerifyMode::Witness(w) => {
            if w.kind != WitnessKind::CenterCoordinate {
                return Err(KakeyaError::Invalid(format!(
                    "expected a center-coordinate witness, got {:?}",
                    w.kind
                )));
            }
            Ok(witness_valid(set, w))
        }
        VerifyMode::Exhaustive(budget) => {
            let space = set.space();
            budget.check(exhaustive_work(space))?;
            let shells = NormShells::new(space);
            let field = space.field();
            let q = field.q();
            let firsts: Vec<u64> = (0..q).collect();
            Ok(firsts.par_iter().all(|&a1| {
                // centers with first coordinate a1 have rank = a1 (mod q)
                (a1..space.size()).step_by(q as usize).any(|c| {
                    let center = space.unrank(c);
                    field
                        .nonzero_elements()
                        .any(|r| shells.sphere_within(&center, r, set))
                })
            }))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LemmaScan {
    pub q: u64,
    pub n: usize,
    /// Unordered pairs of distinct spheres examined.
    pub pairs: u64,
    pub max_intersection: u64,
    /// Largest intersection among pairs sharing a center.
    pub max_concentric: u64,
    pub bound: u64,
}

impl LemmaScan {
    pub fn holds(&self) -> bool {
        self.max_intersection <= self.bound && self.max_concentric == 0
    }
}

/// Largest intersection over all pairs of distinct spheres in F_q^n.
pub fn verify_intersection_lemma(field: &Field, n: usize, budget: WorkBudget) -> Result<LemmaScan> {
    let bound = sphere_pair_bound(field.q(), n)?;
    let space = Space::new(field, n)?;
    let spheres_count = exhaustive_work(&space);
    budget.check(spheres_count * (spheres_count - 1) / 2)?;

    let shells = NormShells::new(&space);
    let mut spheres = Vec::with_capacity(spheres_count as usize);
    for c in 0..space.size() {
        let center = space.unrank(c);
        for r in field.nonzero_elements() {
            spheres.push((c, shells.sphere(&center, r)));
        }
    }
    let (max_intersection, max_concentric) = (0..spheres.len())
        .into_par_iter()
        .map(|i| {
            let (ci, si) = &spheres[i];
            let mut best = (0u64, 0u64);
            for (cj, sj) in &spheres[i + 1..] {
                let m = si.intersection_len(sj);
                if ci == cj {
                    best.1 = best.1.max(m);
                } else {
                    best.0 = best.0.max(m);
                }
            }
            best
        })
        .reduce(|| (0, 0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
    let pairs = (spheres.len() as u64) * (spheres.len() as u64 - 1) / 2;
    Ok(LemmaScan {
        q: field.q(),
        n,
        pairs,
        max_intersection,
        max_concentric,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elems(field: &Field, ranks: &[u64]) -> Vec<FieldElement> {
        ranks.iter().map(|&r| field.elem(r).unwrap()).collect()
    }

    #[test]
    fn bound_examples() {
        let b = spherical_lower_bound(5, 4).unwrap();
        assert_eq!(b.value, Half::from_int(300));
        assert_eq!(b.branch, BoundBranch::FourOrMore);
        assert_eq!(
            spherical_lower_bound(5, 2).unwrap().value,
            Half::from_int(6)
        );
        assert_eq!(
            spherical_lower_bound(3, 3).unwrap().value,
            Half::from_int(6)
        );
        assert!(matches!(
            spherical_lower_bound(5, 1),
            Err(KakeyaError::BadDimension { .. })
        ));
        assert_eq!(
            spherical_lower_bound(15, 4),
            Err(KakeyaError::NotOddPrimePower(15))
        );
    }

    #[test]
    fn bound_matches_counting_argument() {
        // M (q^(n-1) - q^f) - (q^(n-2) + q^f) M (M - 1) / 2, with M = q - 1
        // for n >= 4 and (q - 1)/2 below, doubled to stay in integers
        for q in [3i128, 5, 7, 9, 11, 13, 25, 27] {
            for n in 2..=9u32 {
                let f = (n - 1) / 2;
                let m = if n >= 4 { q - 1 } else { (q - 1) / 2 };
                let twice_incl_excl =
                    2 * m * (q.pow(n - 1) - q.pow(f)) - (q.pow(n - 2) + q.pow(f)) * m * (m - 1);
                let got = spherical_lower_bound(q as u64, n as usize)
                    .unwrap()
                    .value
                    .twice();
                assert_eq!(got, twice_incl_excl, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn lower_bounds_for_circles() {
        assert_eq!(circular_lower_bounds(9), (3, 5));
        assert_eq!(circular_lower_bounds(5), (3, 4));
        assert_eq!(circular_lower_bounds(49), (7, 10));
    }

    #[test]
    fn cover_examples() {
        let f7 = Field::new(7, 1).unwrap();
        let all: Vec<_> = f7.elements().collect();
        assert!(diff_cover(&f7, &all));
        assert!(sum_cover(&f7, &all));
        assert!(!diff_cover(&f7, &[FieldElement::ZERO]));
        assert!(!sum_cover(&f7, &[FieldElement::ZERO]));
        assert!(diff_cover(&f7, &elems(&f7, &[0, 1, 2, 4])));
    }

    #[test]
    fn empty_and_full_sets() {
        let f = Field::new(3, 1).unwrap();
        let space = Space::new(&f, 2).unwrap();
        let budget = VerifyMode::Exhaustive(WorkBudget::default());
        let empty = PointSet::empty(&space);
        let full = PointSet::full(&space);
        assert!(!verify_radius_kakeya(&empty, budget).unwrap());
        assert!(!verify_center_kakeya(&empty, budget).unwrap());
        assert!(verify_radius_kakeya(&full, budget).unwrap());
        assert!(verify_center_kakeya(&full, budget).unwrap());
    }

    #[test]
    fn exhaustive_mode_respects_budget() {
        let f = Field::new(5, 1).unwrap();
        let space = Space::new(&f, 4).unwrap();
        let set = PointSet::full(&space);
        let err = verify_radius_kakeya(&set, VerifyMode::Exhaustive(WorkBudget(100))).unwrap_err();
        assert_eq!(
            err,
            KakeyaError::BudgetExceeded {
                required: 4 * 625,
                budget: 100
            }
        );
    }

    #[test]
    fn lemma_scan_small_cases() {
        for (q, n, bound) in [(3u64, 2usize, 2u64), (5, 2, 2), (3, 3, 6)] {
            let scan =
                verify_intersection_lemma(&Field::with_order(q).unwrap(), n, WorkBudget::default())
                    .unwrap();
            assert_eq!(scan.bound, bound);
            assert!(scan.holds(), "{scan:?}");
        }
    }
}
