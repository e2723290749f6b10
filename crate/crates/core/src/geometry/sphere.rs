use serde::Serialize;

use super::{dot, norm, vec_sub, PointSet, Space};
use crate::error::{KakeyaError, Result};
use crate::field::{Field, FieldElement};

/// The sphere {x : ||x - center|| = radius}, radius nonzero, n >= 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphereSpec {
    #[serde(skip)]
    space: Space,
    center: Vec<FieldElement>,
    radius: FieldElement,
}

impl SphereSpec {
    pub fn new(space: &Space, center: Vec<FieldElement>, radius: FieldElement) -> Result<Self> {
        if space.dim() < 2 {
            return Err(KakeyaError::BadDimension {
                got: space.dim(),
                reason: "spheres need n >= 2",
            });
        }
        space.check_vector(&center)?;
        space.field().elem(radius.rank())?;
        if radius.is_zero() {
            return Err(KakeyaError::ZeroRadius);
        }
        Ok(SphereSpec {
            space: space.clone(),
            center,
            radius,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn center(&self) -> &[FieldElement] {
        &self.center
    }

    pub fn radius(&self) -> FieldElement {
        self.radius
    }

    pub fn contains(&self, x: &[FieldElement]) -> bool {
        let f = self.space.field();
        norm(f, &vec_sub(f, x, &self.center)) == self.radius
    }
}

/// The hyper-sphere S_radius(center) ∩ (center + V_direction), where V_d is
/// the hyperplane orthogonal to d.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypersphereSpec {
    #[serde(skip)]
    space: Space,
    center: Vec<FieldElement>,
    direction: Vec<FieldElement>,
    radius: FieldElement,
}

impl HypersphereSpec {
    pub fn new(
        space: &Space,
        center: Vec<FieldElement>,
        direction: Vec<FieldElement>,
        radius: FieldElement,
    ) -> Result<Self> {
        space.check_vector(&center)?;
        space.check_vector(&direction)?;
        space.field().elem(radius.rank())?;
        if direction.iter().all(|d| d.is_zero()) {
            return Err(KakeyaError::ZeroDirection);
        }
        if radius.is_zero() {
            return Err(KakeyaError::ZeroRadius);
        }
        Ok(HypersphereSpec {
            space: space.clone(),
            center,
            direction,
            radius,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn center(&self) -> &[FieldElement] {
        &self.center
    }

    pub fn direction(&self) -> &[FieldElement] {
        &self.direction
    }

    pub fn radius(&self) -> FieldElement {
        self.radius
    }

    pub fn contains(&self, x: &[FieldElement]) -> bool {
        let f = self.space.field();
        let rel = vec_sub(f, x, &self.center);
        norm(f, &rel) == self.radius && dot(f, &self.direction, &rel).is_zero()
    }
}

/// Enumerates F_q^n and keeps the points on the sphere.
pub fn sphere_points(s: &SphereSpec) -> PointSet {
    let mut set = PointSet::empty(&s.space);
    s.space.for_each_point(|rank, x| {
        if s.contains(x) {
            set.insert(rank);
        }
    });
    set
}

pub fn hypersphere_points(h: &HypersphereSpec) -> PointSet {
    let mut set = PointSet::empty(&h.space);
    h.space.for_each_point(|rank, x| {
        if h.contains(x) {
            set.insert(rank);
        }
    });
    set
}

/// |S_1 ∩ S_2| for two different spheres, by enumeration.
pub fn sphere_intersection_size(s1: &SphereSpec, s2: &SphereSpec) -> Result<u64> {
    if s1.space != s2.space {
        return Err(KakeyaError::Invalid(
            "spheres live in different spaces".into(),
        ));
    }
    if s1.center == s2.center && s1.radius == s2.radius {
        return Err(KakeyaError::IdenticalSpheres);
    }
    let mut count = 0;
    s1.space.for_each_point(|_, x| {
        if s1.contains(x) && s2.contains(x) {
            count += 1;
        }
    });
    Ok(count)
}

/// Scales a nonzero direction so its first nonzero coordinate is 1.
pub fn canonical_direction(field: &Field, d: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let lead = d
        .iter()
        .copied()
        .find(|x| !x.is_zero())
        .ok_or(KakeyaError::ZeroDirection)?;
    let inv = field.inv(lead)?;
    Ok(d.iter().map(|&x| field.mul(inv, x)).collect())
}

/// True iff every nonzero element is u^2 + v^2 for some u, v.
pub fn sum_two_squares_covers(field: &Field) -> bool {
    let q = field.q() as usize;
    let mut hit = vec![false; q];
    let squares: Vec<FieldElement> = field.elements().map(|x| field.square(x)).collect();
    for &u in &squares {
        for &v in &squares {
            hit[field.add(u, v).rank() as usize] = true;
        }
    }
    hit[1..].iter().all(|&h| h)
}

/// All vectors of F_q^n grouped by norm, so that S_r(a) = a + shell(r).
#[derive(Debug, Clone)]
pub struct NormShells {
    space: Space,
    /// shells[r] holds the coordinates of every v with ||v|| = r, flattened.
    shells: Vec<Vec<FieldElement>>,
}

impl NormShells {
    pub fn new(space: &Space) -> NormShells {
        let mut shells = vec![Vec::new(); space.field().q() as usize];
        space.for_each_point(|_, v| {
            shells[space.norm(v).rank() as usize].extend_from_slice(v);
        });
        NormShells {
            space: space.clone(),
            shells,
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    /// Number of vectors of norm `r`.
    pub fn shell_size(&self, r: FieldElement) -> u64 {
        (self.shells[r.rank() as usize].len() / self.space.dim()) as u64
    }

    pub fn shell(&self, r: FieldElement) -> impl Iterator<Item = &[FieldElement]> {
        self.shells[r.rank() as usize].chunks_exact(self.space.dim())
    }

    /// Ranks of the points of S_r(center).
    pub fn sphere_ranks<'a>(
        &'a self,
        center: &'a [FieldElement],
        r: FieldElement,
    ) -> impl Iterator<Item = u64> + 'a {
        self.shell(r)
            .map(move |v| self.space.translated_rank(center, v))
    }

    pub fn sphere(&self, center: &[FieldElement], r: FieldElement) -> PointSet {
        let mut set = PointSet::empty(&self.space);
        for rank in self.sphere_ranks(center, r) {
            set.insert(rank);
        }
        set
    }

    /// Whether S_r(center) ⊆ set, stopping at the first missing point.
    pub fn sphere_within(&self, center: &[FieldElement], r: FieldElement, set: &PointSet) -> bool {
        self.sphere_ranks(center, r).all(|rank| set.contains(rank))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{diagonal_count_closed, DiagonalEq};

    fn v(field: &Field, ranks: &[u64]) -> Vec<FieldElement> {
        ranks.iter().map(|&r| field.elem(r).unwrap()).collect()
    }

    #[test]
    fn unit_circle_in_f5() {
        let f = Field::new(5, 1).unwrap();
        let space = Space::new(&f, 2).unwrap();
        let s = SphereSpec::new(&space, v(&f, &[0, 0]), FieldElement::ONE).unwrap();
        let pts = sphere_points(&s);
        let expected: Vec<u64> = [[1, 0], [4, 0], [0, 1], [0, 4]]
            .iter()
            .map(|c| space.rank(&v(&f, c)))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        assert_eq!(pts.iter().collect::<Vec<_>>(), expected);

        // translating the center by (1, 1) translates the point set
        let t = v(&f, &[1, 1]);
        let moved = sphere_points(&SphereSpec::new(&space, t.clone(), FieldElement::ONE).unwrap());
        let shifted = PointSet::from_ranks(
            &space,
            pts.iter()
                .map(|r| space.translated_rank(&space.unrank(r), &t)),
        )
        .unwrap();
        assert_eq!(moved, shifted);
    }

    #[test]
    fn f3_four_dim_sphere_has_24_points() {
        let f = Field::new(3, 1).unwrap();
        let space = Space::new(&f, 4).unwrap();
        for c in [[0, 0, 0, 0], [1, 2, 0, 1], [2, 2, 2, 2]] {
            let s = SphereSpec::new(&space, v(&f, &c), FieldElement::ONE).unwrap();
            assert_eq!(sphere_points(&s).len(), 24);
        }
        let eq = DiagonalEq::norm_form(4, FieldElement::ONE).unwrap();
        assert_eq!(diagonal_count_closed(&f, &eq).unwrap(), 24);
    }

    #[test]
    fn degenerate_specs_rejected() {
        let f = Field::new(5, 1).unwrap();
        let space = Space::new(&f, 3).unwrap();
        let line = Space::new(&f, 1).unwrap();
        assert_eq!(
            SphereSpec::new(&space, space.zero(), FieldElement::ZERO),
            Err(KakeyaError::ZeroRadius)
        );
        assert!(matches!(
            SphereSpec::new(&line, line.zero(), FieldElement::ONE),
            Err(KakeyaError::BadDimension { .. })
        ));
        assert!(matches!(
            SphereSpec::new(&space, v(&f, &[1, 2]), FieldElement::ONE),
            Err(KakeyaError::DimensionMismatch { .. })
        ));
        assert_eq!(
            HypersphereSpec::new(&space, space.zero(), space.zero(), FieldElement::ONE),
            Err(KakeyaError::ZeroDirection)
        );
        assert_eq!(
            HypersphereSpec::new(&space, space.zero(), v(&f, &[0, 0, 1]), FieldElement::ZERO),
            Err(KakeyaError::ZeroRadius)
        );
    }

    #[test]
    fn hypersphere_examples() {
        let f = Field::new(5, 1).unwrap();
        let space = Space::new(&f, 3).unwrap();
        let h = HypersphereSpec::new(&space, space.zero(), v(&f, &[0, 0, 1]), FieldElement::ONE)
            .unwrap();
        let pts = hypersphere_points(&h);
        assert_eq!(pts.len(), 4);
        for r in pts.iter() {
            let x = space.unrank(r);
            assert!(x[2].is_zero());
            assert_eq!(norm(&f, &x[..2]), FieldElement::ONE);
        }

        // a = (1,0,0), d = (1,0,0), r = 4: the plane x = 1 and y^2 + z^2 = 4
        let h = HypersphereSpec::new(
            &space,
            v(&f, &[1, 0, 0]),
            v(&f, &[1, 0, 0]),
            f.elem(4).unwrap(),
        )
        .unwrap();
        let mut expected = PointSet::empty(&space);
        space.for_each_point(|rank, x| {
            if x[0] == FieldElement::ONE && norm(&f, &x[1..]) == f.elem(4).unwrap() {
                expected.insert(rank);
            }
        });
        assert_eq!(hypersphere_points(&h), expected);
        assert_eq!(expected.len(), 4);
    }

    #[test]
    fn hypersphere_direction_is_projective() {
        let f = Field::new(3, 2).unwrap();
        let space = Space::new(&f, 3).unwrap();
        let a = v(&f, &[1, 5, 0]);
        let d = v(&f, &[0, 4, 7]);
        let r = f.elem(2).unwrap();
        let base =
            hypersphere_points(&HypersphereSpec::new(&space, a.clone(), d.clone(), r).unwrap());
        for lambda in f.nonzero_elements() {
            let scaled: Vec<_> = d.iter().map(|&x| f.mul(lambda, x)).collect();
            let h = HypersphereSpec::new(&space, a.clone(), scaled.clone(), r).unwrap();
            assert_eq!(hypersphere_points(&h), base);
            assert_eq!(
                canonical_direction(&f, &scaled).unwrap(),
                canonical_direction(&f, &d).unwrap()
            );
        }
        assert_eq!(canonical_direction(&f, &d).unwrap()[1], FieldElement::ONE);
    }

    #[test]
    fn intersection_of_concentric_spheres_is_empty() {
        let f = Field::new(7, 1).unwrap();
        let space = Space::new(&f, 3).unwrap();
        let c = v(&f, &[3, 1, 4]);
        let s1 = SphereSpec::new(&space, c.clone(), f.elem(2).unwrap()).unwrap();
        let s2 = SphereSpec::new(&space, c, f.elem(5).unwrap()).unwrap();
        assert_eq!(sphere_intersection_size(&s1, &s2).unwrap(), 0);
        assert_eq!(
            sphere_intersection_size(&s1, &s1.clone()),
            Err(KakeyaError::IdenticalSpheres)
        );
    }

    #[test]
    fn sums_of_two_squares() {
        for q in [3, 7, 81] {
            assert!(sum_two_squares_covers(&Field::with_order(q).unwrap()));
        }
    }

    #[test]
    fn shells_agree_with_enumeration() {
        let f = Field::new(3, 2).unwrap();
        let space = Space::new(&f, 2).unwrap();
        let shells = NormShells::new(&space);
        for r in f.nonzero_elements() {
            for c in [[0u64, 0], [4, 7], [8, 1]] {
                let center = v(&f, &c);
                let s = SphereSpec::new(&space, center.clone(), r).unwrap();
                assert_eq!(shells.sphere(&center, r), sphere_points(&s));
            }
        }
    }
}
