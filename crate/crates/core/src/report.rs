//! Construction dispatch and the size-versus-bound CSV table.
//!
//! Columns: q,p,k,n,construction,variant,size,mainTerm1,mainTerm2,mainTerm3,
//! bound,boundMet,witnessValid. Main terms and bounds are exact; halves are
//! written as `N/2`. Missing main terms and variants are empty cells.

use std::io::Write;

use serde::Serialize;

use crate::constructions::{
    center_spherical, circular_odd_power, circular_prime, circular_square, hypersphere_union,
    radius_spherical, ConstructionKind, ConstructionResult, Variant,
};
use crate::error::{KakeyaError, Result};
use crate::field::{Field, FieldElement};

/// Whether `kind` can be built over `field` in dimension `n`.
pub fn applicable(kind: ConstructionKind, field: &Field, n: usize) -> bool {
    match kind {
        ConstructionKind::RadiusSpherical | ConstructionKind::CenterSpherical => n >= 2,
        ConstructionKind::HypersphereUnion => n >= 3,
        ConstructionKind::CircularPrime => n == 1 && field.k() == 1,
        ConstructionKind::CircularSquare => n == 1 && field.k().is_multiple_of(2),
        ConstructionKind::CircularOddPower => n == 1 && field.k() % 2 == 1 && field.k() >= 3,
    }
}

/// Builds one construction. `variant` is required for the circular kinds
/// and ignored otherwise; `nonsquare` only applies to center-spherical.
pub fn build(
    kind: ConstructionKind,
    field: &Field,
    n: usize,
    variant: Option<Variant>,
    nonsquare: Option<FieldElement>,
) -> Result<ConstructionResult> {
    let need_variant = || {
        variant.ok_or_else(|| {
            KakeyaError::Invalid(format!("{kind} needs a variant (radius or center)"))
        })
    };
    if kind.is_circular() && n != 1 {
        return Err(KakeyaError::BadDimension {
            got: n,
            reason: "circular constructions live in dimension 1",
        });
    }
    match kind {
        ConstructionKind::RadiusSpherical => radius_spherical(field, n),
        ConstructionKind::CenterSpherical => center_spherical(field, n, nonsquare),
        ConstructionKind::HypersphereUnion => hypersphere_union(field, n),
        ConstructionKind::CircularPrime => {
            if field.k() != 1 {
                return Err(KakeyaError::Invalid(format!(
                    "circular-prime needs a prime field, got q = {}",
                    field.q()
                )));
            }
            circular_prime(field.p(), need_variant()?)
        }
        ConstructionKind::CircularSquare => circular_square(field, need_variant()?),
        ConstructionKind::CircularOddPower => circular_odd_power(field, need_variant()?),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub q: u64,
    pub p: u64,
    pub k: u32,
    pub n: usize,
    pub construction: String,
    pub variant: String,
    pub size: u64,
    #[serde(rename = "mainTerm1")]
    pub main_term1: String,
    #[serde(rename = "mainTerm2")]
    pub main_term2: String,
    #[serde(rename = "mainTerm3")]
    pub main_term3: String,
    pub bound: String,
    #[serde(rename = "boundMet")]
    pub bound_met: bool,
    #[serde(rename = "witnessValid")]
    pub witness_valid: bool,
}

pub const CSV_HEADER: &str =
    "q,p,k,n,construction,variant,size,mainTerm1,mainTerm2,mainTerm3,bound,boundMet,witnessValid";

impl ReportRow {
    pub fn from_result(res: &ConstructionResult) -> ReportRow {
        let s = res.summary(None);
        let term = |i: usize| {
            res.main_terms
                .get(i)
                .map(|t| t.to_string())
                .unwrap_or_default()
        };
        ReportRow {
            q: s.q,
            p: s.p,
            k: s.k,
            n: s.n,
            construction: s.construction.name().to_string(),
            variant: s.variant.map(|v| v.name().to_string()).unwrap_or_default(),
            size: s.size,
            main_term1: term(0),
            main_term2: term(1),
            main_term3: term(2),
            bound: s.bound_value.to_string(),
            bound_met: s.bound_met,
            witness_valid: s.witness_valid,
        }
    }
}

/// One row per applicable (q, n, variant), in the order given; circular
/// kinds ignore `dims` and use n = 1, spherical kinds ignore `variants`.
pub fn report_rows(
    kind: ConstructionKind,
    orders: &[u64],
    dims: &[usize],
    variants: &[Variant],
) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    for &q in orders {
        let field = Field::with_order(q)?;
        if kind.is_circular() {
            if !applicable(kind, &field, 1) {
                continue;
            }
            for &v in variants {
                rows.push(ReportRow::from_result(&build(
                    kind,
                    &field,
                    1,
                    Some(v),
                    None,
                )?));
            }
        } else {
            for &n in dims {
                if applicable(kind, &field, n) {
                    rows.push(ReportRow::from_result(&build(kind, &field, n, None, None)?));
                }
            }
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let io = |e: csv::Error| KakeyaError::Invalid(format!("csv write failed: {e}"));
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(CSV_HEADER.split(',')).map_err(io)?;
    for row in rows {
        w.serialize(row).map_err(io)?;
    }
    w.flush()
        .map_err(|e| KakeyaError::Invalid(format!("csv write failed: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_sweep_is_header_only() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn radius_rows() {
        let rows = report_rows(ConstructionKind::RadiusSpherical, &[5], &[2, 4], &[]).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1].bound, "300");
        assert_eq!(rows[1].main_term1, "625/2");
        assert_eq!(rows[1].main_term3, "-25");
        assert!(rows.iter().all(|r| r.bound_met && r.witness_valid));
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text
            .lines()
            .nth(2)
            .unwrap()
            .starts_with("5,5,1,4,radius-spherical,,"));
    }

    #[test]
    fn inapplicable_combinations_are_skipped() {
        let rows = report_rows(
            ConstructionKind::CircularSquare,
            &[9, 27],
            &[],
            &[Variant::Radius],
        )
        .unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].q, 9);
    }
}
