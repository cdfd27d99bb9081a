//! Covers of the word layers `X^(j)` (words of order exactly `j`) with the
//! base family count, built by excision and recursion on `j`.
//!
//! Distances are `D*` of a symmetric reflexive relation, so the triangle
//! inequality is available for every radius estimate below.

use std::collections::HashMap;
use std::rc::Rc;

use super::base::BaseCover;
use super::{check_witness, CoverWitness};
use crate::error::{Error, Result};
use crate::free_product::{ProductEntourage, Truncation, WordMetric, WordSetIndex};
use crate::gauge::Gauge;
use crate::relations::Relation;

/// Families of word indices, each `D* <= radius`-disjoint at the radius it
/// was built for, with an upper bound on member `D*`-diameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordCover {
    pub families: Vec<Vec<Vec<usize>>>,
    pub diameter: u64,
}

/// The words `X^(j-1) · B(x0, E^m)` of order `j`: the part of layer `j`
/// within `m` of layer `j - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcisionPlan {
    pub level: usize,
    pub scale_base: Relation,
    pub exponent: u64,
    pub set: Vec<usize>,
}

pub fn excision_plan(t: &Truncation, level: usize, scale_base: &Relation, exponent: u64) -> ExcisionPlan {
    let metric = WordMetric::new(scale_base.symmetrized(), t.ground().basepoint());
    let near = near_letters(t, &metric, exponent);
    let mut set = Vec::new();
    if level >= 1 {
        for x in t.layer(level - 1) {
            set.extend(near.iter().filter_map(|&l| t.child(x, l)));
        }
    }
    set.sort_unstable();
    ExcisionPlan { level, scale_base: scale_base.clone(), exponent, set }
}

fn near_letters(t: &Truncation, metric: &WordMetric, r: u64) -> Vec<u32> {
    t.letters().iter().copied().filter(|&l| metric.out_cost(l).le(r)).collect()
}

/// Memoized layer covers for one truncation, one symmetric base relation
/// and one base cover provider.
pub struct LevelCovers<'a> {
    trunc: &'a Truncation,
    metric: &'a WordMetric,
    base: &'a dyn BaseCover,
    memo: HashMap<(usize, usize, u64), Rc<WordCover>>,
}

impl<'a> LevelCovers<'a> {
    pub fn new(trunc: &'a Truncation, metric: &'a WordMetric, base: &'a dyn BaseCover) -> Result<Self> {
        if !metric.relation().is_symmetric() || !metric.relation().is_reflexive() {
            return Err(Error::Precondition("level covers need a symmetric reflexive relation".into()));
        }
        Ok(LevelCovers { trunc, metric, base, memo: HashMap::new() })
    }

    pub fn family_count(&self) -> usize {
        self.base.family_count().max(1)
    }

    fn empty_families(&self) -> Vec<Vec<Vec<usize>>> {
        vec![Vec::new(); self.family_count()]
    }

    fn letters_to_words(&self, x: usize, letters: &[u32]) -> Vec<usize> {
        letters.iter().map(|&l| self.trunc.child(x, l).expect("layer below the top")).collect()
    }

    /// Cover of the words of order exactly `j` at `D* <= r`.
    pub fn level(&mut self, j: usize, r: u64) -> Result<Rc<WordCover>> {
        self.layers(j, j, r)
    }

    /// Cover of the words of order in `lo..=hi` at `D* <= r`.
    pub fn layers(&mut self, lo: usize, hi: usize, r: u64) -> Result<Rc<WordCover>> {
        if hi > self.trunc.max_order() {
            return Err(Error::Resource {
                what: "truncation layers".into(),
                count: hi as u128 + 1,
                cap: self.trunc.max_order() as u128 + 1,
            });
        }
        if let Some(c) = self.memo.get(&(lo, hi, r)) {
            return Ok(c.clone());
        }
        let cover = if lo < hi {
            let a = self.layers(lo, lo, r)?;
            let v = self.layers(lo + 1, hi, spread(r, a.diameter))?;
            self.saturate(&a, &v, r)
        } else {
            self.single_level(lo, r)?
        };
        let cover = Rc::new(cover);
        self.memo.insert((lo, hi, r), cover.clone());
        Ok(cover)
    }

    fn single_level(&mut self, j: usize, r: u64) -> Result<WordCover> {
        let mut families = self.empty_families();
        if j == 0 {
            families[0].push(vec![0]);
            return Ok(WordCover { families, diameter: 0 });
        }
        if j == 1 {
            let lc = self.base.cover(self.metric, self.trunc.letters(), r)?;
            for (i, fam) in lc.families.iter().enumerate() {
                families[i].extend(fam.iter().map(|m| self.letters_to_words(0, m)));
            }
            return Ok(WordCover { families, diameter: lc.diameter });
        }
        let near = near_letters(self.trunc, self.metric, r);
        let far: Vec<u32> = self.trunc.letters().iter().copied().filter(|l| !near.contains(l)).collect();
        // excised pieces x·(U ∖ B): distinct x are more than r apart because
        // every far letter alone costs more than r
        let lc = self.base.cover(self.metric, &far, r)?;
        let mut excised = self.empty_families();
        for x in self.trunc.layer(j - 1) {
            for (i, fam) in lc.families.iter().enumerate() {
                excised[i].extend(fam.iter().map(|m| self.letters_to_words(x, m)));
            }
        }
        let excised = WordCover { families: excised, diameter: lc.diameter };
        if near.is_empty() {
            return Ok(excised);
        }
        // y·l with l near lies within r of y, so a cover of layer j-1 at
        // s + 2r extends to a cover of the rest at s
        let s = spread(r, excised.diameter);
        let below = self.level(j - 1, s.saturating_add(2 * r))?;
        let mut extended = self.empty_families();
        for (i, fam) in below.families.iter().enumerate() {
            for m in fam {
                extended[i].push(m.iter().flat_map(|&y| self.letters_to_words(y, &near)).collect());
            }
        }
        let extended = WordCover { families: extended, diameter: below.diameter.saturating_add(2 * r) };
        Ok(self.saturate(&excised, &extended, r))
    }

    /// Union of an `r`-disjoint cover `a` and a cover `v` disjoint at
    /// `3r + 2 diam(a)`: each member of `v` absorbs the members of `a` in the
    /// same family that come within `r` of it. Absorbed members end within
    /// `r + diam(a)` of their absorber, so absorbers stay `r` apart and an
    /// `a`-member is never within `r` of two absorbers.
    fn saturate(&self, a: &WordCover, v: &WordCover, r: u64) -> WordCover {
        let mut families = Vec::with_capacity(self.family_count());
        for i in 0..self.family_count() {
            let (fa, fv) = (&a.families[i], &v.families[i]);
            let entries = fv.iter().enumerate().flat_map(|(m, member)| member.iter().map(move |&u| (u, m)));
            let index = WordSetIndex::new(self.trunc, self.metric, entries);
            let mut grown: Vec<Vec<usize>> = fv.clone();
            let mut kept = Vec::new();
            for member in fa {
                let hit = member
                    .iter()
                    .filter_map(|&u| index.nearest(u, None))
                    .find(|c| c.cost.le(r))
                    .map(|c| c.label);
                match hit {
                    Some(m) => grown[m].extend(member),
                    None => kept.push(member.clone()),
                }
            }
            for g in &mut grown {
                g.sort_unstable();
            }
            grown.extend(kept);
            families.push(grown);
        }
        let absorbed = v.diameter.saturating_add(2 * r.saturating_add(a.diameter));
        WordCover { families, diameter: a.diameter.max(absorbed) }
    }
}

/// `3r + 2d`.
fn spread(r: u64, d: u64) -> u64 {
    r.saturating_mul(3).saturating_add(d.saturating_mul(2))
}

fn witness(t: &std::sync::Arc<Truncation>, metric: &WordMetric, cover: &WordCover, r: u64, domain: Vec<usize>) -> Result<CoverWitness> {
    let w = CoverWitness {
        domain: Some(domain),
        families: cover.families.clone(),
        scale: Gauge::words(t.clone(), ProductEntourage::from_metric(metric.clone(), r)),
        bound: Gauge::words(t.clone(), ProductEntourage::from_metric(metric.clone(), cover.diameter)),
    };
    match check_witness(&w).failure {
        None => Ok(w),
        Some(f) => Err(Error::rejected("level cover", format!("{f:?}"))),
    }
}

/// Checked cover of the words of order exactly `j` at `⟨E, r⟩`, where `E`
/// is symmetrized first.
pub fn level_cover(t: &std::sync::Arc<Truncation>, e: &Relation, j: usize, r: u64, base: &dyn BaseCover) -> Result<CoverWitness> {
    layers_cover(t, e, j, j, r, base)
}

/// Checked cover of the words of order in `lo..=hi` at `⟨E, r⟩`.
pub fn layers_cover(t: &std::sync::Arc<Truncation>, e: &Relation, lo: usize, hi: usize, r: u64, base: &dyn BaseCover) -> Result<CoverWitness> {
    let metric = WordMetric::new(e.symmetrized(), t.ground().basepoint());
    let mut covers = LevelCovers::new(t, &metric, base)?;
    let cover = covers.layers(lo, hi, r)?;
    let domain: Vec<usize> = (lo..=hi).flat_map(|j| t.layer(j)).collect();
    witness(t, &metric, &cover, r, domain)
}
