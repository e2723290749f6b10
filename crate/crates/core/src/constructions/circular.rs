use std::collections::BTreeSet;

use super::{
    Accounting, Bound, BoundKind, Certificate, CircularAccounting, ConstructionKind,
    ConstructionResult, KakeyaWitness, Variant, WitnessKind,
};
use crate::error::{KakeyaError, Result};
use crate::exact::{ceil_sqrt, checked_pow, isqrt, Half};
use crate::field::{Field, FieldElement};
use crate::geometry::{PointSet, Space};
use crate::verification::circular_lower_bounds;

/// K_p = {0, 1, ..., s} ∪ -K_0 (radius) or ∪ K_0 (center), where
/// s = floor(sqrt(p)), c = ceil(sqrt(p)) and K_0 = {c, 2c, ..., s c},
/// embedded in the prime subfield of `field`.
pub fn prime_base_set(field: &Field, variant: Variant) -> Vec<FieldElement> {
    let p = field.p();
    let s = isqrt(p);
    let c = ceil_sqrt(p);
    let mut set: BTreeSet<FieldElement> = (0..=s).map(|i| field.from_int(i as i64)).collect();
    for j in 1..=s {
        let x = field.from_int(((j as u128 * c as u128) % p as u128) as i64);
        set.insert(match variant {
            Variant::Radius => field.neg(x),
            Variant::Center => x,
        });
    }
    set.into_iter().collect()
}

/// Circles certifying the cover property of `elements`: for the radius
/// variant, each r in F_q^* gets a circle {a - r, a + r} ⊆ K built from
/// x_1 - x_2 = 2r; for the center variant each a in F_q gets one built from
/// x_1 + x_2 = 2a with x_1 != x_2. Missing parameters are left out.
pub fn circle_witness(
    space: &Space,
    elements: &[FieldElement],
    variant: Variant,
) -> Result<KakeyaWitness> {
    let field = space.field();
    let half = field.inv(field.from_int(2))?;
    let mut witness = KakeyaWitness::new(match variant {
        Variant::Radius => WitnessKind::CircularRadius,
        Variant::Center => WitnessKind::CircularCenter,
    });
    for &x1 in elements {
        for &x2 in elements {
            if x1 == x2 {
                continue;
            }
            let center = field.mul(half, field.add(x1, x2));
            let radius = field.mul(half, field.sub(x1, x2));
            let key = match variant {
                Variant::Radius => radius,
                Variant::Center => center,
            };
            witness
                .entries
                .entry(key.rank())
                .or_insert(Certificate::Circle {
                    space: space.clone(),
                    center,
                    radius,
                });
        }
    }
    Ok(witness)
}

fn circular_result(
    construction: ConstructionKind,
    field: &Field,
    variant: Variant,
    elements: BTreeSet<FieldElement>,
    predicted: u64,
    base_size: Option<u64>,
) -> Result<ConstructionResult> {
    let space = Space::new(field, 1)?;
    let elements: Vec<FieldElement> = elements.into_iter().collect();
    let points = PointSet::from_ranks(&space, elements.iter().map(|x| x.rank()))?;
    let witness = circle_witness(&space, &elements, variant)?;
    let (radius_min, center_min) = circular_lower_bounds(field.q());
    let bound = match variant {
        Variant::Radius => radius_min,
        Variant::Center => center_min,
    };
    Ok(ConstructionResult {
        construction,
        variant: Some(variant),
        points,
        witness,
        main_terms: vec![Half::from_int(predicted as i128)],
        bound: Bound {
            kind: BoundKind::Lower,
            value: Half::from_int(bound as i128),
        },
        accounting: Accounting::Circular(CircularAccounting {
            elements,
            base_size,
        }),
    })
}

/// The set K_p in F_p, of size at most 2 floor(sqrt(p)) + 1.
pub fn circular_prime(p: u64, variant: Variant) -> Result<ConstructionResult> {
    let field = Field::new(p, 1)?;
    let set: BTreeSet<FieldElement> = prime_base_set(&field, variant).into_iter().collect();
    let size = set.len() as u64;
    circular_result(
        ConstructionKind::CircularPrime,
        &field,
        variant,
        set,
        2 * isqrt(p) + 1,
        Some(size),
    )
}

/// K = F_r ∪ t F_r for q = r^2, with t the canonical generator. This one
/// set satisfies both K - K = F_q and K ⊕ K = F_q; `variant` only selects
/// the witness and bound.
pub fn circular_square(field: &Field, variant: Variant) -> Result<ConstructionResult> {
    if !field.k().is_multiple_of(2) {
        return Err(KakeyaError::NotASquareField(field.q()));
    }
    let r = checked_pow(field.p(), field.k() / 2)?;
    let alpha = field.generator().expect("k >= 2");
    // the subfield F_r is the fixed field of x -> x^r
    let subfield: Vec<FieldElement> = field.elements().filter(|&x| field.pow(x, r) == x).collect();
    debug_assert_eq!(subfield.len() as u64, r);
    let set: BTreeSet<FieldElement> = subfield
        .iter()
        .copied()
        .chain(subfield.iter().map(|&x| field.mul(alpha, x)))
        .collect();
    circular_result(
        ConstructionKind::CircularSquare,
        field,
        variant,
        set,
        2 * r - 1,
        None,
    )
}

/// K = K_1 ∪ K_2 for q = p^(2m+1), m >= 1, with
/// K_1 = {a_0 + a_1 t + ... + a_m t^m} and
/// K_2 = {a_0 + a_1 t^(m+1) + ... + a_m t^(2m)}, a_0 in K_p, a_i in F_p.
pub fn circular_odd_power(field: &Field, variant: Variant) -> Result<ConstructionResult> {
    let k = field.k();
    if k.is_multiple_of(2) || k == 1 {
        return Err(KakeyaError::WrongDegree(k));
    }
    let m = (k - 1) / 2;
    let p = field.p();
    let beta = field.generator().expect("k >= 3");
    let base = prime_base_set(field, variant);
    let low: Vec<FieldElement> = (1..=m).map(|i| field.pow(beta, i as u64)).collect();
    let high: Vec<FieldElement> = (1..=m).map(|i| field.pow(beta, (m + i) as u64)).collect();

    let tail_count = checked_pow(p, m)?;
    let mut set = BTreeSet::new();
    for powers in [&low, &high] {
        for idx in 0..tail_count {
            // base-p digits of idx are (a_1, ..., a_m)
            let mut rest = idx;
            let mut tail = FieldElement::ZERO;
            for &b in powers.iter() {
                let a = field.from_int((rest % p) as i64);
                rest /= p;
                tail = field.add(tail, field.mul(a, b));
            }
            for &a0 in &base {
                set.insert(field.add(a0, tail));
            }
        }
    }
    let base_size = base.len() as u64;
    circular_result(
        ConstructionKind::CircularOddPower,
        field,
        variant,
        set,
        (2 * tail_count - 1) * base_size,
        Some(base_size),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verification::{diff_cover, sum_cover};

    fn ranks(xs: &[FieldElement]) -> Vec<u64> {
        xs.iter().map(|x| x.rank()).collect()
    }

    #[test]
    fn prime_examples() {
        let r5 = circular_prime(5, Variant::Radius).unwrap();
        assert_eq!(ranks(r5.elements().unwrap()), vec![0, 1, 2, 4]);
        let r7 = circular_prime(7, Variant::Radius).unwrap();
        assert_eq!(ranks(r7.elements().unwrap()), vec![0, 1, 2, 4]);
        let c3 = circular_prime(3, Variant::Center).unwrap();
        assert_eq!(ranks(c3.elements().unwrap()), vec![0, 1, 2]);
        for res in [&r5, &r7, &c3] {
            assert!(res.witness_valid());
        }
        assert_eq!(
            circular_prime(9, Variant::Radius).unwrap_err(),
            KakeyaError::NonOddPrime(9)
        );
    }

    #[test]
    fn square_q9() {
        let f = Field::new(3, 2).unwrap();
        for variant in [Variant::Radius, Variant::Center] {
            let res = circular_square(&f, variant).unwrap();
            let k = res.elements().unwrap();
            assert_eq!(k.len(), 5);
            assert!(diff_cover(&f, k));
            assert!(sum_cover(&f, k));
            assert!(res.witness_valid());
        }
        let f27 = Field::new(3, 3).unwrap();
        assert_eq!(
            circular_square(&f27, Variant::Radius).unwrap_err(),
            KakeyaError::NotASquareField(27)
        );
    }

    #[test]
    fn odd_power_q27() {
        let f = Field::new(3, 3).unwrap();
        let res = circular_odd_power(&f, Variant::Radius).unwrap();
        let k = res.elements().unwrap();
        // K_3 = {0, 1}, so |K| = (2*3 - 1) * 2
        assert_eq!(k.len(), 10);
        assert!(diff_cover(&f, k));
        assert!(res.witness_valid());
        for bad in [Field::new(3, 2).unwrap(), Field::new(7, 1).unwrap()] {
            assert!(matches!(
                circular_odd_power(&bad, Variant::Radius),
                Err(KakeyaError::WrongDegree(_))
            ));
        }
    }

    #[test]
    fn witness_is_incomplete_for_non_covers() {
        let f = Field::new(7, 1).unwrap();
        let space = Space::new(&f, 1).unwrap();
        let w = circle_witness(
            &space,
            &[FieldElement::ZERO, FieldElement::ONE],
            Variant::Radius,
        )
        .unwrap();
        // differences ±1 give radii ±1/2 only
        assert_eq!(w.entries.len(), 2);
    }
}
