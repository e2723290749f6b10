use std::collections::BTreeSet;

use kakeya_core::field::poly;
use kakeya_core::{Field, FieldElement, QuadChar};
use proptest::prelude::*;

const ORDERS: [(u64, u32); 12] = [
    (3, 1),
    (5, 1),
    (7, 1),
    (13, 1),
    (3, 2),
    (5, 2),
    (7, 2),
    (3, 3),
    (5, 3),
    (3, 4),
    (11, 2),
    (1_000_000_007, 1),
];

fn field_and_elems(n: usize) -> impl Strategy<Value = (Field, Vec<FieldElement>)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(move |(p, k)| {
        let f = Field::new(p, k).unwrap();
        let q = f.q();
        prop::collection::vec(0..q, n).prop_map(move |ranks| {
            (
                f.clone(),
                ranks.iter().map(|&r| f.elem(r).unwrap()).collect(),
            )
        })
    })
}

proptest! {
    #[test]
    fn ring_axioms((f, v) in field_and_elems(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.mul(a, FieldElement::ONE), a);
        if !a.is_zero() {
            let inv = f.inv(a).unwrap();
            prop_assert_eq!(f.mul(a, inv), FieldElement::ONE);
            prop_assert_eq!(f.div(b, a).unwrap(), f.mul(b, inv));
        } else {
            prop_assert!(f.inv(a).is_err());
        }
    }

    #[test]
    fn pow_is_repeated_multiplication((f, v) in field_and_elems(1), e in 0u64..40) {
        let a = v[0];
        let slow = (0..e).fold(FieldElement::ONE, |acc, _| f.mul(acc, a));
        prop_assert_eq!(f.pow(a, e), slow);
        // Frobenius: (a + b)^p = a^p + b^p
        let b = f.square(a);
        let p = f.p();
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
    }

    #[test]
    fn character_matches_euler((f, v) in field_and_elems(2)) {
        let (a, b) = (v[0], v[1]);
        let chi = f.quadratic_character(a);
        let euler = f.pow(a, (f.q() - 1) / 2);
        let expected = if a.is_zero() {
            QuadChar::Zero
        } else if euler == FieldElement::ONE {
            QuadChar::Square
        } else {
            QuadChar::NonSquare
        };
        prop_assert_eq!(chi, expected);
        prop_assert_eq!(f.quadratic_character(f.mul(a, b)), chi * f.quadratic_character(b));
        prop_assert!(f.is_square(f.square(a)));
    }

    #[test]
    fn digits_round_trip((f, v) in field_and_elems(1)) {
        let a = v[0];
        let d = f.digits(a);
        prop_assert_eq!(d.len(), f.k() as usize);
        prop_assert!(d.iter().all(|&x| x < f.p()));
        prop_assert_eq!(f.from_digits(&d), a);
    }
}

/// chi is multiplicative on every pair, checked exhaustively.
#[test]
fn chi_multiplicative_exhaustive() {
    for q in [
        3u64, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49,
    ] {
        let f = Field::with_order(q).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(
                    f.quadratic_character(f.mul(a, b)),
                    f.quadratic_character(a) * f.quadratic_character(b),
                    "q={q}"
                );
            }
        }
    }
}

#[test]
fn square_image_has_half_plus_one() {
    for q in [
        3u64, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49, 53, 59, 61, 67, 71,
        73, 79, 81,
    ] {
        let f = Field::with_order(q).unwrap();
        let image: BTreeSet<FieldElement> = f.elements().map(|x| f.square(x)).collect();
        assert_eq!(image.len() as u64, q.div_ceil(2), "q={q}");
        let nonsquares = f
            .elements()
            .filter(|&x| f.quadratic_character(x) == QuadChar::NonSquare)
            .count();
        assert_eq!(nonsquares as u64, (q - 1) / 2);
        let smallest = f.elements().find(|x| !image.contains(x)).unwrap();
        assert_eq!(f.smallest_nonsquare(), smallest);
    }
}

// ---- irreducibility by trial division ----

/// Remainder of a by monic m over F_p, coefficients constant term first.
fn naive_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        let shift = r.len() - dm;
        for (i, &c) in m[..dm].iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - lead) * c) % p;
        }
    }
    r
}

/// All monic polynomials of degree d.
fn monics(p: u64, d: usize) -> Vec<Vec<u64>> {
    let count = p.pow(d as u32);
    (0..count)
        .map(|mut i| {
            let mut c: Vec<u64> = (0..d)
                .map(|_| {
                    let x = i % p;
                    i /= p;
                    x
                })
                .collect();
            c.push(1);
            c
        })
        .collect()
}

fn irreducible_oracle(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    (1..=k / 2).all(|d| {
        monics(p, d)
            .iter()
            .all(|g| naive_rem(f, g, p).iter().any(|&c| c != 0))
    })
}

#[test]
fn irreducibility_matches_trial_division() {
    for (p, kmax) in [(3u64, 4usize), (5, 4), (7, 3), (11, 2)] {
        for k in 1..=kmax {
            for f in monics(p, k) {
                assert_eq!(
                    poly::is_irreducible(&f, p),
                    irreducible_oracle(&f, p),
                    "p={p} f={f:?}"
                );
            }
        }
    }
}

/// The modulus is irreducible and every monic polynomial that precedes it
/// (constant term most significant) is reducible.
#[test]
fn modulus_is_smallest_irreducible() {
    for (p, k) in [
        (3u64, 2u32),
        (3, 3),
        (3, 4),
        (5, 2),
        (5, 3),
        (5, 4),
        (7, 2),
        (7, 3),
        (11, 2),
    ] {
        let f = Field::new(p, k).unwrap();
        let m = f.modulus().unwrap().to_vec();
        assert!(irreducible_oracle(&m, p));
        let key = |g: &Vec<u64>| g[..k as usize].to_vec();
        let first = monics(p, k as usize)
            .into_iter()
            .filter(|g| irreducible_oracle(g, p))
            .min_by_key(key)
            .unwrap();
        assert_eq!(m, first, "p={p} k={k}");
    }
    assert_eq!(Field::new(3, 2).unwrap().modulus().unwrap(), &[1, 0, 1]);
    assert_eq!(Field::new(5, 2).unwrap().modulus().unwrap(), &[1, 1, 1]);
}

#[test]
fn multiplicative_group_is_cyclic_of_order_q_minus_1() {
    for q in [9u64, 25, 27, 49, 81, 125] {
        let f = Field::with_order(q).unwrap();
        let orders: BTreeSet<u64> = f
            .nonzero_elements()
            .map(|a| (1..q).find(|&e| f.pow(a, e) == FieldElement::ONE).unwrap())
            .collect();
        assert_eq!(orders.iter().max(), Some(&(q - 1)), "q={q}");
    }
}
