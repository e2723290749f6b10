//! Minimal one-dimensional circular Kakeya sets: an exact pruned search with
//! an independent unpruned certificate, and a greedy baseline.
//!
//! Both cover properties are invariant under x -> l x + c (l != 0), so the
//! exact search only looks at sets containing 0 and 1: any two distinct
//! members can be moved there by an affine map.

use serde::Serialize;

use crate::constructions::Variant;
use crate::error::{KakeyaError, Result};
use crate::field::{Field, FieldElement};
use crate::verification::{circular_lower_bounds, diff_cover, sum_cover};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest field order the exact search accepts.
    pub max_q: u64,
    /// Cap on candidate-extension steps.
    pub node_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_q: 13,
            node_budget: 100_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchOutcome {
    pub q: u64,
    pub kind: Variant,
    pub minimal_size: u64,
    /// Ranks, ascending.
    pub example_set: Vec<u64>,
    pub nodes_explored: u64,
    /// No set of size `minimal_size - 1` covers, by unpruned enumeration.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GreedyOutcome {
    pub q: u64,
    pub kind: Variant,
    pub found_size: u64,
    pub example_set: Vec<u64>,
    pub nodes_explored: u64,
    pub certified: bool,
}

pub fn covers(field: &Field, set: &[FieldElement], kind: Variant) -> bool {
    match kind {
        Variant::Radius => diff_cover(field, set),
        Variant::Center => sum_cover(field, set),
    }
}

/// Incremental coverage counts for a growing set.
struct Coverage<'f> {
    field: &'f Field,
    kind: Variant,
    counts: Vec<u32>,
    uncovered: u64,
    members: Vec<FieldElement>,
}

impl<'f> Coverage<'f> {
    fn new(field: &'f Field, kind: Variant) -> Self {
        Coverage {
            field,
            kind,
            counts: vec![0; field.q() as usize],
            uncovered: field.q(),
            members: Vec::new(),
        }
    }

    fn produced(&self, x: FieldElement) -> impl Iterator<Item = FieldElement> + '_ {
        let f = self.field;
        let kind = self.kind;
        let self_term = (kind == Variant::Radius).then_some(FieldElement::ZERO);
        self.members
            .iter()
            .flat_map(move |&y| match kind {
                Variant::Radius => [Some(f.sub(x, y)), Some(f.sub(y, x))],
                Variant::Center => [Some(f.add(x, y)), None],
            })
            .flatten()
            .chain(self_term)
    }

    fn gain(&self, x: FieldElement) -> u64 {
        let mut seen = Vec::new();
        for v in self.produced(x) {
            if self.counts[v.rank() as usize] == 0 && !seen.contains(&v) {
                seen.push(v);
            }
        }
        seen.len() as u64
    }

    fn push(&mut self, x: FieldElement) {
        let vals: Vec<FieldElement> = self.produced(x).collect();
        for v in vals {
            let c = &mut self.counts[v.rank() as usize];
            if *c == 0 {
                self.uncovered -= 1;
            }
            *c += 1;
        }
        self.members.push(x);
    }

    fn pop(&mut self) {
        let x = self.members.pop().expect("nonempty");
        let vals: Vec<FieldElement> = self.produced(x).collect();
        for v in vals {
            let c = &mut self.counts[v.rank() as usize];
            *c -= 1;
            if *c == 0 {
                self.uncovered += 1;
            }
        }
    }

    /// Most values the next `slots` additions can newly cover.
    fn max_future_gain(&self, slots: u64) -> u64 {
        let m = self.members.len() as u64;
        (m..m + slots)
            .map(|j| match self.kind {
                Variant::Radius => 2 * j,
                Variant::Center => j,
            })
            .sum()
    }
}

struct Dfs<'f> {
    cov: Coverage<'f>,
    target: u64,
    nodes: u64,
    budget: u64,
}

impl Dfs<'_> {
    fn run(&mut self, next: u64) -> Result<bool> {
        let size = self.cov.members.len() as u64;
        if self.cov.uncovered == 0 {
            return Ok(true);
        }
        if size == self.target {
            return Ok(false);
        }
        if self.cov.uncovered > self.cov.max_future_gain(self.target - size) {
            return Ok(false);
        }
        let q = self.cov.field.q();
        // leave room for the remaining picks
        let last = q - (self.target - size - 1);
        for r in next..last {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(KakeyaError::BudgetExceeded {
                    required: self.nodes as u128,
                    budget: self.budget as u128,
                });
            }
            self.cov.push(self.cov.field.elem_unchecked(r));
            if self.run(r + 1)? {
                return Ok(true);
            }
            self.cov.pop();
        }
        Ok(false)
    }
}

/// Smallest K ⊆ F_q with K - K = F_q (radius) or K ⊕ K = F_q (center).
///
/// Sizes are tried upward from the counting lower bound; the first cover
/// found in depth-first rank order is returned, so results are
/// deterministic. The outcome is certified by [`no_cover_of_size`].
pub fn minimal_circular_exact(
    field: &Field,
    kind: Variant,
    config: SearchConfig,
) -> Result<SearchOutcome> {
    let q = field.q();
    if q > config.max_q {
        return Err(KakeyaError::BudgetExceeded {
            required: q as u128,
            budget: config.max_q as u128,
        });
    }
    let (radius_min, center_min) = circular_lower_bounds(q);
    let lower = match kind {
        Variant::Radius => radius_min,
        Variant::Center => center_min,
    }
    .max(2);
    let mut nodes = 0;
    for size in lower..=q {
        let mut dfs = Dfs {
            cov: Coverage::new(field, kind),
            target: size,
            nodes,
            budget: config.node_budget,
        };
        dfs.cov.push(FieldElement::ZERO);
        dfs.cov.push(FieldElement::ONE);
        let found = dfs.run(2)?;
        nodes = dfs.nodes;
        if found {
            let mut example: Vec<u64> = dfs.cov.members.iter().map(|x| x.rank()).collect();
            example.sort_unstable();
            let certified = no_cover_of_size(field, kind, size - 1);
            return Ok(SearchOutcome {
                q,
                kind,
                minimal_size: size,
                example_set: example,
                nodes_explored: nodes,
                certified,
            });
        }
    }
    unreachable!("F_q itself covers for q >= 3")
}

/// True iff no subset of F_q of exactly `size` elements covers, checked by
/// plain enumeration of all subsets without any normalization or pruning.
pub fn no_cover_of_size(field: &Field, kind: Variant, size: u64) -> bool {
    let q = field.q();
    if size > q {
        return true;
    }
    let size = size as usize;
    let all: Vec<FieldElement> = field.elements().collect();
    let mut idx: Vec<usize> = (0..size).collect();
    let mut subset = Vec::with_capacity(size);
    loop {
        subset.clear();
        subset.extend(idx.iter().map(|&i| all[i]));
        if covers(field, &subset, kind) {
            return false;
        }
        // next combination in lexicographic order
        let Some(pos) = (0..size).rev().find(|&i| idx[i] < all.len() - size + i) else {
            return true;
        };
        idx[pos] += 1;
        for j in pos + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Adds, one at a time, the element that newly covers the most values
/// (smallest rank on ties) until the set covers.
pub fn greedy_circular(field: &Field, kind: Variant) -> GreedyOutcome {
    let mut cov = Coverage::new(field, kind);
    let mut in_set = vec![false; field.q() as usize];
    let mut nodes = 0;
    while cov.uncovered > 0 {
        let mut best: Option<(u64, FieldElement)> = None;
        for x in field.elements().filter(|x| !in_set[x.rank() as usize]) {
            nodes += 1;
            let g = cov.gain(x);
            if best.is_none_or(|(bg, _)| g > bg) {
                best = Some((g, x));
            }
        }
        let (_, x) = best.expect("F_q covers, so an element remains");
        in_set[x.rank() as usize] = true;
        cov.push(x);
    }
    let mut example: Vec<u64> = cov.members.iter().map(|x| x.rank()).collect();
    example.sort_unstable();
    GreedyOutcome {
        q: field.q(),
        kind,
        found_size: example.len() as u64,
        example_set: example,
        nodes_explored: nodes,
        certified: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q3_minima() {
        let f = Field::new(3, 1).unwrap();
        let r = minimal_circular_exact(&f, Variant::Radius, SearchConfig::default()).unwrap();
        assert_eq!(r.minimal_size, 2);
        assert_eq!(r.example_set, vec![0, 1]);
        assert!(r.certified);
        let c = minimal_circular_exact(&f, Variant::Center, SearchConfig::default()).unwrap();
        assert_eq!(c.minimal_size, 3);
        assert!(c.certified);
    }

    #[test]
    fn limit_is_enforced() {
        let f = Field::new(17, 1).unwrap();
        assert!(matches!(
            minimal_circular_exact(&f, Variant::Radius, SearchConfig::default()),
            Err(KakeyaError::BudgetExceeded { .. })
        ));
        let tiny = SearchConfig {
            max_q: 100,
            node_budget: 3,
        };
        let f = Field::new(13, 1).unwrap();
        assert!(matches!(
            minimal_circular_exact(&f, Variant::Center, tiny),
            Err(KakeyaError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn greedy_covers() {
        let f = Field::new(3, 1).unwrap();
        let g = greedy_circular(&f, Variant::Radius);
        assert!(g.found_size <= 3);
        let f25 = Field::new(5, 2).unwrap();
        for kind in [Variant::Radius, Variant::Center] {
            let g = greedy_circular(&f25, kind);
            let set: Vec<_> = g
                .example_set
                .iter()
                .map(|&r| f25.elem(r).unwrap())
                .collect();
            assert!(covers(&f25, &set, kind));
            assert!(g.found_size >= 5);
        }
        assert!(greedy_circular(&f25, Variant::Radius).found_size <= 9);
    }

    #[test]
    fn unpruned_certificate_small() {
        let f = Field::new(7, 1).unwrap();
        // {0, 1, 3} is a perfect difference set mod 7
        assert!(!no_cover_of_size(&f, Variant::Radius, 3));
        assert!(no_cover_of_size(&f, Variant::Radius, 2));
        assert!(no_cover_of_size(&f, Variant::Radius, 0));
    }
}
