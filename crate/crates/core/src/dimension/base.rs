//! Covers of sets of letters (points of the base space) at a given scale,
//! used as the building blocks of covers of words.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::free_product::WordMetric;
use crate::relations::{ExtendedCount, Finite};

/// Families of letter sets, each family `D_E <= r`-disjoint, with the
/// largest `D_E`-diameter of a member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterCover {
    pub families: Vec<Vec<Vec<u32>>>,
    pub diameter: u64,
}

/// A way to cover any subset of the letters at any scale with a fixed
/// number of families. Distances come from a symmetric reflexive relation.
pub trait BaseCover {
    fn family_count(&self) -> usize;

    fn cover(&self, metric: &WordMetric, letters: &[u32], r: u64) -> Result<LetterCover>;
}

fn diameter(metric: &WordMetric, families: &[Vec<Vec<u32>>]) -> Result<u64> {
    let mut best = 0;
    for m in families.iter().flatten() {
        for &a in m {
            for &b in m {
                match metric.d(a as usize, b as usize) {
                    Finite(d) => best = best.max(d),
                    ExtendedCount::Infinite => {
                        return Err(Error::Precondition(format!("base cover member joins {a} and {b} at infinite distance")))
                    }
                }
            }
        }
    }
    Ok(best)
}

/// Groups letters into `D_E <= r` chains.
fn components(metric: &WordMetric, letters: &[u32], r: u64) -> Vec<Vec<u32>> {
    let mut uf = UnionFind::<usize>::new(letters.len());
    for (i, &a) in letters.iter().enumerate() {
        for (j, &b) in letters.iter().enumerate().skip(i + 1) {
            if metric.d(a as usize, b as usize).le(r) {
                uf.union(i, j);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for (i, &a) in letters.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(a);
    }
    let mut out: Vec<Vec<u32>> = groups.into_values().collect();
    out.sort();
    out
}

/// One family with one member: valid when the whole space is bounded.
#[derive(Clone, Copy, Debug, Default)]
pub struct BoundedBase;

impl BaseCover for BoundedBase {
    fn family_count(&self) -> usize {
        1
    }

    fn cover(&self, metric: &WordMetric, letters: &[u32], _r: u64) -> Result<LetterCover> {
        let families = vec![if letters.is_empty() { vec![] } else { vec![letters.to_vec()] }];
        let diameter = diameter(metric, &families)?;
        Ok(LetterCover { families, diameter })
    }
}

/// Two families from annuli of width `r + 1` around the basepoint, each
/// annulus split into `D_E <= r` chains. Bounded chains, as on paths and
/// other line-like spaces, make this a valid one-dimensional cover.
#[derive(Clone, Copy, Debug, Default)]
pub struct AnnulusBase;

impl BaseCover for AnnulusBase {
    fn family_count(&self) -> usize {
        2
    }

    fn cover(&self, metric: &WordMetric, letters: &[u32], r: u64) -> Result<LetterCover> {
        let mut annuli: BTreeMap<Option<u64>, Vec<u32>> = BTreeMap::new();
        for &l in letters {
            annuli.entry(metric.out_cost(l).finite().map(|d| d / (r + 1))).or_default().push(l);
        }
        let mut families = vec![Vec::new(), Vec::new()];
        for (annulus, ls) in annuli {
            let parity = annulus.map_or(0, |a| (a % 2) as usize);
            families[parity].extend(components(metric, &ls, r));
        }
        let diameter = diameter(metric, &families)?;
        Ok(LetterCover { families, diameter })
    }
}

/// A cover of the base points read from a witness; members of one family
/// that come within `r` of each other are merged.
#[derive(Clone, Debug)]
pub struct FixedBase {
    families: Vec<Vec<Vec<usize>>>,
}

impl FixedBase {
    pub fn new(families: Vec<Vec<Vec<usize>>>) -> Self {
        FixedBase { families }
    }
}

impl BaseCover for FixedBase {
    fn family_count(&self) -> usize {
        self.families.len()
    }

    fn cover(&self, metric: &WordMetric, letters: &[u32], r: u64) -> Result<LetterCover> {
        let wanted: std::collections::BTreeSet<u32> = letters.iter().copied().collect();
        let mut covered = std::collections::BTreeSet::new();
        let mut families = Vec::new();
        for fam in &self.families {
            let members: Vec<Vec<u32>> = fam
                .iter()
                .map(|m| m.iter().map(|&p| p as u32).filter(|l| wanted.contains(l)).collect::<Vec<u32>>())
                .filter(|m| !m.is_empty())
                .collect();
            let mut uf = UnionFind::<usize>::new(members.len());
            for (i, a) in members.iter().enumerate() {
                for (j, b) in members.iter().enumerate().skip(i + 1) {
                    if a.iter().any(|&x| b.iter().any(|&y| metric.d(x as usize, y as usize).le(r))) {
                        uf.union(i, j);
                    }
                }
            }
            let mut groups: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
            for (i, m) in members.iter().enumerate() {
                groups.entry(uf.find(i)).or_default().extend(m);
            }
            let mut merged: Vec<Vec<u32>> = groups
                .into_values()
                .map(|mut g| {
                    g.sort_unstable();
                    g.dedup();
                    g
                })
                .collect();
            merged.sort();
            covered.extend(merged.iter().flatten().copied());
            families.push(merged);
        }
        if let Some(l) = wanted.iter().find(|l| !covered.contains(l)) {
            return Err(Error::Precondition(format!("base witness does not cover point {l}")));
        }
        let diameter = diameter(metric, &families)?;
        Ok(LetterCover { families, diameter })
    }
}
