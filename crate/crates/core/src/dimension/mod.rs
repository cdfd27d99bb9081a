//! Asymptotic dimension at a scale: cover witnesses, the word tree, level
//! covers with excision, and the fibering construction for free products.

mod base;
mod levels;
mod pipeline;
mod tree;

use std::fmt;

pub use base::{AnnulusBase, BaseCover, BoundedBase, FixedBase, LetterCover};
pub use levels::{excision_plan, layers_cover, level_cover, ExcisionPlan, LevelCovers, WordCover};
pub use pipeline::{fibering_cover, free_product_cover, FreeProductCover};
pub use tree::{build_tree, tree_expansiveness_bound, tree_pieces, tree_witness, TreeGraph};

use crate::exec::Exec;
use crate::gauge::Gauge;

/// Families of subsets of an indexed universe, with the scale at which they
/// should be disjoint and the bound that should contain every member.
#[derive(Clone, Debug)]
pub struct CoverWitness {
    /// Elements that must be covered; `None` means the whole universe.
    pub domain: Option<Vec<usize>>,
    pub families: Vec<Vec<Vec<usize>>>,
    pub scale: Gauge,
    pub bound: Gauge,
}

impl CoverWitness {
    pub fn universe_len(&self) -> usize {
        self.scale.universe_len()
    }

    pub fn family_count(&self) -> usize {
        self.families.len()
    }

    pub fn member_count(&self) -> usize {
        self.families.iter().map(Vec::len).sum()
    }

    pub fn domain_elements(&self) -> Vec<usize> {
        match &self.domain {
            Some(d) => d.clone(),
            None => (0..self.universe_len()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    /// An element outside the universe appears in a member.
    Range,
    Cover,
    Disjoint,
    Bounded,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::Range => "range",
            Clause::Cover => "cover",
            Clause::Disjoint => "disjoint",
            Clause::Bounded => "bounded",
        })
    }
}

/// The first violated clause: an uncovered element, a scale-related pair
/// from two members of one family, or an unbounded pair inside a member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub clause: Clause,
    pub family: Option<usize>,
    pub element: usize,
    pub other: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub failure: Option<Failure>,
    pub families: usize,
    pub members: usize,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn check_witness(w: &CoverWitness) -> Verdict {
    check_witness_with(w, Exec::default())
}

pub fn check_witness_with(w: &CoverWitness, exec: Exec) -> Verdict {
    let verdict = |failure| Verdict { failure, families: w.family_count(), members: w.member_count() };
    let n = w.universe_len();
    if w.bound.universe_len() != n {
        let element = w.bound.universe_len();
        return verdict(Some(Failure { clause: Clause::Range, family: None, element, other: None }));
    }
    let mut covered = vec![false; n];
    for (i, fam) in w.families.iter().enumerate() {
        for &u in fam.iter().flatten() {
            if u >= n {
                return verdict(Some(Failure { clause: Clause::Range, family: Some(i), element: u, other: None }));
            }
            covered[u] = true;
        }
    }
    if let Some(u) = w.domain_elements().into_iter().find(|&u| u >= n || !covered[u]) {
        return verdict(Some(Failure { clause: Clause::Cover, family: None, element: u, other: None }));
    }
    let per_family = exec.map_range(w.families.len(), |i| {
        let fam = &w.families[i];
        if let Some((a, b)) = w.scale.disjointness_violation(fam) {
            return Some(Failure { clause: Clause::Disjoint, family: Some(i), element: a, other: Some(b) });
        }
        fam.iter().find_map(|m| {
            w.bound
                .boundedness_violation(m)
                .map(|(a, b)| Failure { clause: Clause::Bounded, family: Some(i), element: a, other: Some(b) })
        })
    });
    verdict(per_family.into_iter().flatten().next())
}
