//! Kakeya-type sets with coverage witnesses and exact size accounting.
//!
//! Every builder returns a [`ConstructionResult`]: the point set, one
//! certificate per required parameter (radius, first center coordinate, ...)
//! and the bound and main terms the size is compared against.

mod circular;
mod hypersphere;
mod spherical;

pub use circular::{
    circle_witness, circular_odd_power, circular_prime, circular_square, prime_base_set,
};
pub use hypersphere::hypersphere_union;
pub use spherical::{center_spherical, radius_spherical};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::KakeyaError;
use crate::exact::Half;
use crate::field::FieldElement;
use crate::geometry::{
    hypersphere_points, sphere_points, HypersphereSpec, PointSet, Space, SphereSpec,
};
use crate::verification::witness_valid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    RadiusSpherical,
    CenterSpherical,
    HypersphereUnion,
    CircularPrime,
    CircularSquare,
    CircularOddPower,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 6] = [
        ConstructionKind::RadiusSpherical,
        ConstructionKind::CenterSpherical,
        ConstructionKind::HypersphereUnion,
        ConstructionKind::CircularPrime,
        ConstructionKind::CircularSquare,
        ConstructionKind::CircularOddPower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::RadiusSpherical => "radius-spherical",
            ConstructionKind::CenterSpherical => "center-spherical",
            ConstructionKind::HypersphereUnion => "hypersphere-union",
            ConstructionKind::CircularPrime => "circular-prime",
            ConstructionKind::CircularSquare => "circular-square",
            ConstructionKind::CircularOddPower => "circular-odd-power",
        }
    }

    pub fn is_circular(self) -> bool {
        matches!(
            self,
            ConstructionKind::CircularPrime
                | ConstructionKind::CircularSquare
                | ConstructionKind::CircularOddPower
        )
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionKind {
    type Err = KakeyaError;
    fn from_str(s: &str) -> Result<Self, KakeyaError> {
        ConstructionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| KakeyaError::Invalid(format!("unknown construction `{s}`")))
    }
}

/// Which one-dimensional Kakeya property a set is built for: a circle of
/// every radius (K - K = F_q) or around every center (K ⊕ K = F_q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Radius,
    Center,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Radius => "radius",
            Variant::Center => "center",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = KakeyaError;
    fn from_str(s: &str) -> Result<Self, KakeyaError> {
        match s {
            "radius" => Ok(Variant::Radius),
            "center" => Ok(Variant::Center),
            _ => Err(KakeyaError::Invalid(format!("unknown variant `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    Radius,
    CenterCoordinate,
    Hypersphere,
    CircularRadius,
    CircularCenter,
}

/// One object certifying a parameter value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Certificate {
    Sphere(SphereSpec),
    Hypersphere(HypersphereSpec),
    /// The two-point circle {center - radius, center + radius} in F_q.
    Circle {
        #[serde(skip)]
        space: Space,
        center: FieldElement,
        radius: FieldElement,
    },
}

impl Certificate {
    pub fn space(&self) -> &Space {
        match self {
            Certificate::Sphere(s) => s.space(),
            Certificate::Hypersphere(h) => h.space(),
            Certificate::Circle { space, .. } => space,
        }
    }

    /// Point set of the certified object, computed by enumeration.
    pub fn points(&self) -> PointSet {
        match self {
            Certificate::Sphere(s) => sphere_points(s),
            Certificate::Hypersphere(h) => hypersphere_points(h),
            Certificate::Circle {
                space,
                center,
                radius,
            } => {
                let f = space.field();
                let mut set = PointSet::empty(space);
                set.insert(f.add(*center, *radius).rank());
                set.insert(f.sub(*center, *radius).rank());
                set
            }
        }
    }
}

/// Parameter value (by rank) to the object that certifies it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KakeyaWitness {
    pub kind: WitnessKind,
    pub entries: BTreeMap<u64, Certificate>,
}

impl KakeyaWitness {
    pub fn new(kind: WitnessKind) -> Self {
        KakeyaWitness {
            kind,
            entries: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// The size must be at least the bound.
    Lower,
    /// The size must be at most the bound.
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub kind: BoundKind,
    pub value: Half,
}

impl Bound {
    pub fn met_by(&self, size: u64) -> bool {
        let size = Half::from_int(size as i128);
        match self.kind {
            BoundKind::Lower => size >= self.value,
            BoundKind::Upper => size <= self.value,
        }
    }
}

/// Inclusion-exclusion data for the union of the spheres S_r.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RadiusAccounting {
    /// sum over r of |S_r|
    pub sphere_size_sum: u64,
    /// sum over ordered pairs r != s of |S_r ∩ S_s|
    pub pairwise_intersection_sum: u64,
    /// Largest number of spheres S_r through a single point.
    pub max_multiplicity: u32,
    /// Every point of S_r ∩ S_s has first coordinate (r + s - 1)/2.
    pub pairs_on_predicted_hyperplane: bool,
}

impl RadiusAccounting {
    pub fn triple_intersections_empty(&self) -> bool {
        self.max_multiplicity <= 2
    }

    /// |∪ S_r| = sum |S_r| - 1/2 sum_{r != s} |S_r ∩ S_s|.
    pub fn inclusion_exclusion_size(&self) -> Half {
        Half::from_twice(2 * self.sphere_size_sum as i128 - self.pairwise_intersection_sum as i128)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HypersphereAccounting {
    /// Number of nonzero centers a with ||a|| != 0 whose hyper-sphere is used.
    pub hyperspheres: u64,
    /// Nonzero centers a with ||a|| = 0, whose radius would be zero.
    pub skipped_null_centers: u64,
    /// Every point of the union has norm 0.
    pub on_null_quadric: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CircularAccounting {
    /// The set K, sorted by rank.
    pub elements: Vec<FieldElement>,
    /// |K_p| of the prime-field building block, when one is used.
    pub base_size: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Accounting {
    Radius(RadiusAccounting),
    Center { nonsquare: FieldElement },
    Hypersphere(HypersphereAccounting),
    Circular(CircularAccounting),
}

#[derive(Debug, Clone)]
pub struct ConstructionResult {
    pub construction: ConstructionKind,
    pub variant: Option<Variant>,
    pub points: PointSet,
    pub witness: KakeyaWitness,
    /// Predicted size terms, largest first.
    pub main_terms: Vec<Half>,
    pub bound: Bound,
    pub accounting: Accounting,
}

impl ConstructionResult {
    pub fn size(&self) -> u64 {
        self.points.len()
    }

    pub fn bound_met(&self) -> bool {
        self.bound.met_by(self.size())
    }

    /// Sum of the predicted main terms.
    pub fn predicted_size(&self) -> Half {
        self.main_terms
            .iter()
            .fold(Half::from_int(0), |acc, &t| acc + t)
    }

    pub fn witness_valid(&self) -> bool {
        witness_valid(&self.points, &self.witness)
    }

    /// Elements of a one-dimensional construction.
    pub fn elements(&self) -> Option<&[FieldElement]> {
        match &self.accounting {
            Accounting::Circular(c) => Some(&c.elements),
            _ => None,
        }
    }

    pub fn summary(&self, exhaustive_valid: Option<bool>) -> ConstructionSummary {
        let space = self.points.space();
        let field = space.field();
        ConstructionSummary {
            q: field.q(),
            p: field.p(),
            k: field.k(),
            n: space.dim(),
            construction: self.construction,
            variant: self.variant,
            size: self.size(),
            predicted_main_terms: self.main_terms.clone(),
            bound_value: self.bound.value,
            bound_kind: self.bound.kind,
            bound_met: self.bound_met(),
            witness_valid: self.witness_valid(),
            exhaustive_valid,
        }
    }
}

/// JSON form of a construction run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConstructionSummary {
    pub q: u64,
    pub p: u64,
    pub k: u32,
    pub n: usize,
    pub construction: ConstructionKind,
    pub variant: Option<Variant>,
    pub size: u64,
    pub predicted_main_terms: Vec<Half>,
    pub bound_value: Half,
    pub bound_kind: BoundKind,
    pub bound_met: bool,
    pub witness_valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhaustive_valid: Option<bool>,
}
