//! Coarse property C on truncations: witnesses with one scale per family,
//! the decomposition of a free product into cones over flat families, and
//! an end-to-end witness builder.

mod build;
mod cones;

pub use build::{pc_from_cover, pc_witness, PcBuild};
pub use cones::{analyze_components, check_cones_over_flats, cone_decomposition, ComponentAnalysis, ComponentReport, ConeCover, ConesOverFlats};

use crate::dimension::{Clause, Failure, Verdict};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gauge::Gauge;

/// Families `U_1, …, U_m` with an ascending scale list: family `i` should be
/// disjoint at scale `i`, and every member should lie in `bound`.
#[derive(Clone, Debug)]
pub struct PropertyCWitness {
    pub scales: Vec<Gauge>,
    pub families: Vec<Vec<Vec<usize>>>,
    pub bound: Gauge,
}

impl PropertyCWitness {
    pub fn universe_len(&self) -> usize {
        self.bound.universe_len()
    }
}

/// Errors when the scales are not ascending or fewer than the families.
pub fn check_pc_witness(w: &PropertyCWitness) -> Result<Verdict> {
    for (i, pair) in w.scales.windows(2).enumerate() {
        if !pair[0].is_within(&pair[1]) {
            return Err(Error::Precondition(format!("scale {} is not contained in scale {}", i + 1, i + 2)));
        }
    }
    if w.families.len() > w.scales.len() {
        return Err(Error::Precondition(format!("{} families but only {} scales", w.families.len(), w.scales.len())));
    }
    let n = w.universe_len();
    if let Some(s) = w.scales.iter().find(|s| s.universe_len() != n) {
        return Err(Error::GroundMismatch { left: s.universe_len(), right: n });
    }
    let members = w.families.iter().map(Vec::len).sum();
    let verdict = |failure| Ok(Verdict { failure, families: w.families.len(), members });
    let mut covered = vec![false; n];
    for (i, fam) in w.families.iter().enumerate() {
        for &u in fam.iter().flatten() {
            if u >= n {
                return verdict(Some(Failure { clause: Clause::Range, family: Some(i), element: u, other: None }));
            }
            covered[u] = true;
        }
    }
    if let Some(u) = covered.iter().position(|c| !c) {
        return verdict(Some(Failure { clause: Clause::Cover, family: None, element: u, other: None }));
    }
    let per_family = Exec::default().map_range(w.families.len(), |i| {
        let fam = &w.families[i];
        if let Some((a, b)) = w.scales[i].disjointness_violation(fam) {
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
