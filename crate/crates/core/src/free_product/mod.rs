//! Words over a pointed ground set and the free-product distance `D*_E`.
//!
//! Binary free products `X * Y` are not a separate carrier: they sit inside
//! the unary product of the wedge `X ⊔ Y / x0 ~ y0` as the words whose
//! letters alternate between the two sides.

mod metric;
mod trie;
mod truncation;
mod word;

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

pub use metric::{d_star_metric, NormPair, WordMetric};
pub use trie::{Candidate, WordSetIndex};
pub use truncation::{Truncation, DEFAULT_WORD_CAP};
pub use word::{wedge, Branch, WedgeDecomposition, Word};

use crate::relations::{ExtendedCount, Relation};

/// `⟨E, n⟩ = {(x, x') : D*_E(x, x') <= n}`.
#[derive(Clone, Debug)]
pub struct ProductEntourage {
    metric: WordMetric,
    threshold: u64,
}

impl ProductEntourage {
    pub fn new(base: Relation, basepoint: usize, threshold: u64) -> Self {
        ProductEntourage { metric: WordMetric::new(base, basepoint), threshold }
    }

    pub fn from_metric(metric: WordMetric, threshold: u64) -> Self {
        ProductEntourage { metric, threshold }
    }

    pub fn base(&self) -> &Relation {
        self.metric.relation()
    }

    pub fn metric(&self) -> &WordMetric {
        &self.metric
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn dstar(&self, x: &Word, y: &Word) -> ExtendedCount {
        self.metric.dstar(x, y)
    }

    pub fn contains(&self, x: &Word, y: &Word) -> bool {
        self.metric.dstar(x, y).le(self.threshold)
    }

    /// Same base relation, different threshold.
    pub fn with_threshold(&self, threshold: u64) -> Self {
        ProductEntourage { metric: self.metric.clone(), threshold }
    }
}

/// `{ y·a : a in A }`.
pub fn translate(prefix: &Word, set: &[Word]) -> Vec<Word> {
    set.iter().map(|a| prefix.concat(a)).collect()
}

/// Truncation indices of `prefix · a` for every `a` whose translate stays
/// inside the truncation.
pub fn translate_indices(t: &Truncation, prefix: usize, set: &[usize]) -> Vec<usize> {
    set.iter().filter_map(|&a| t.extend(prefix, t.word(a))).collect()
}

/// Letters of the symmetric ball `B(x0, E)`, excluding the basepoint.
pub fn ball_letters(rel: &Relation, t: &Truncation) -> Vec<u32> {
    let base = t.ground().basepoint();
    let ball = rel.symmetric_ball(base);
    t.letters().iter().copied().filter(|&l| ball.binary_search(&(l as usize)).is_ok()).collect()
}

/// `con_E(A) = A · *B(x0, E)` intersected with the truncation.
pub fn cone(set: &[usize], rel: &Relation, t: &Truncation) -> Vec<usize> {
    let letters = ball_letters(rel, t);
    let mut out = Vec::new();
    let mut stack: Vec<usize> = set.to_vec();
    let mut seen = vec![false; t.len()];
    while let Some(w) = stack.pop() {
        if std::mem::replace(&mut seen[w], true) {
            continue;
        }
        out.push(w);
        for &l in &letters {
            if let Some(c) = t.child(w, l) {
                stack.push(c);
            }
        }
    }
    out.sort_unstable();
    out
}

/// A word `x` with `A ⊆ x·X`, where `x·x0 = x`; `None` when `A` is not flat.
pub fn is_flat(set: &[Word]) -> Option<Word> {
    let first = set.first()?;
    let k = set.iter().map(|w| first.common_prefix_len(w)).min().unwrap_or(0);
    let witness = first.prefix(k);
    set.iter().all(|w| w.order() <= k + 1).then_some(witness)
}

/// Connected components of `S` under the pairs of `pe`, each sorted, listed
/// by least member. Chains may use a pair in either direction, which is the
/// usual notion for symmetric base relations.
pub fn components(set: &[usize], pe: &ProductEntourage, t: &Truncation) -> Vec<Vec<usize>> {
    let pos: BTreeMap<usize, usize> = set.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let mut uf = UnionFind::<usize>::new(set.len());
    for (i, &w) in set.iter().enumerate() {
        for y in t.ball(w, pe.metric(), pe.threshold()) {
            if let Some(&j) = pos.get(&y) {
                uf.union(i, j);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &w) in set.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(w);
    }
    let mut out: Vec<Vec<usize>> = groups
        .into_values()
        .map(|mut g| {
            g.sort_unstable();
            g
        })
        .collect();
    out.sort_by_key(|g| g[0]);
    out
}
