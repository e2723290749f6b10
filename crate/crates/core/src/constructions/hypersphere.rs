use rayon::prelude::*;

use super::{
    Accounting, Bound, BoundKind, Certificate, ConstructionKind, ConstructionResult,
    HypersphereAccounting, KakeyaWitness, WitnessKind,
};
use crate::error::{KakeyaError, Result};
use crate::exact::{checked_pow, Half};
use crate::field::Field;
use crate::geometry::{diagonal_deviation, hypersphere_points, HypersphereSpec, PointSet, Space};

/// Union over nonzero a of the hyper-sphere with center a, direction a and
/// radius -||a||.
///
/// Centers with ||a|| = 0 are skipped since their radius would be zero.
/// Every point x of the union satisfies ||x|| = 0, so the union is no larger
/// than the null quadric.
pub fn hypersphere_union(field: &Field, n: usize) -> Result<ConstructionResult> {
    if n < 3 {
        return Err(KakeyaError::BadDimension {
            got: n,
            reason: "the hyper-sphere union needs n >= 3",
        });
    }
    let space = Space::new(field, n)?;
    let centers: Vec<u64> = (1..space.size())
        .filter(|&c| !space.norm(&space.unrank(c)).is_zero())
        .collect();
    let specs: Vec<HypersphereSpec> = centers
        .iter()
        .map(|&c| {
            let a = space.unrank(c);
            let radius = field.neg(space.norm(&a));
            HypersphereSpec::new(&space, a.clone(), a, radius)
        })
        .collect::<Result<_>>()?;

    let points = specs.par_iter().map(hypersphere_points).reduce(
        || PointSet::empty(&space),
        |mut acc, s| {
            acc.union_with(&s);
            acc
        },
    );
    let on_null_quadric = points
        .iter()
        .all(|r| space.norm(&space.unrank(r)).is_zero());

    // smallest-rank center for each radius; centers are in rank order
    let mut witness = KakeyaWitness::new(WitnessKind::Hypersphere);
    for spec in &specs {
        witness
            .entries
            .entry(spec.radius().rank())
            .or_insert_with(|| Certificate::Hypersphere(spec.clone()));
    }

    let q = field.q();
    let e = n as u32;
    let null_quadric_max = checked_pow(q, e - 1)? + diagonal_deviation(q, e, true)?;
    Ok(ConstructionResult {
        construction: ConstructionKind::HypersphereUnion,
        variant: None,
        points,
        witness,
        main_terms: vec![Half::from_int(checked_pow(q, e - 1)? as i128)],
        bound: Bound {
            kind: BoundKind::Upper,
            value: Half::from_int(null_quadric_max as i128),
        },
        accounting: Accounting::Hypersphere(HypersphereAccounting {
            hyperspheres: specs.len() as u64,
            skipped_null_centers: space.size() - 1 - specs.len() as u64,
            on_null_quadric,
        }),
    })
}
