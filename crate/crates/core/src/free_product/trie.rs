//! Prefix-tree aggregates over a labeled set of truncation words.
//!
//! `D*_E(u, v)` depends only on the wedge of `u` and `v`: the common prefix
//! `a`, the two branching letters, and the norms of the two tails. Storing,
//! per prefix node and branching letter, the extreme tail norms found below
//! it turns nearest-member and diameter questions into one pass over the
//! prefixes of the query word instead of a scan over all pairs.

use std::collections::HashMap;

use super::metric::WordMetric;
use super::truncation::Truncation;
use super::word::Branch;
use crate::relations::ExtendedCount;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub cost: ExtendedCount,
    pub label: usize,
    pub word: usize,
}

impl Candidate {
    fn key(&self) -> (ExtendedCount, usize) {
        (self.cost, self.word)
    }
}

/// Cheapest candidate, plus the cheapest one carrying a different label.
#[derive(Clone, Copy, Debug, Default)]
struct TopTwo {
    best: Option<Candidate>,
    second: Option<Candidate>,
}

impl TopTwo {
    fn offer(&mut self, c: Candidate) {
        match self.best {
            None => self.best = Some(c),
            Some(b) if b.label == c.label => {
                if c.key() < b.key() {
                    self.best = Some(c);
                }
            }
            Some(b) => {
                if c.key() < b.key() {
                    self.second = Some(b);
                    self.best = Some(c);
                } else if self.second.is_none_or(|s| c.key() < s.key()) {
                    self.second = Some(c);
                }
            }
        }
    }

    fn excluding(&self, label: Option<usize>) -> Option<Candidate> {
        match (self.best, label) {
            (Some(b), Some(l)) if b.label == l => self.second,
            (b, _) => b,
        }
    }
}

#[derive(Clone, Debug)]
struct ChildAgg {
    letter: u32,
    nearest: TopTwo,
    max_lower: (ExtendedCount, usize),
    max_upper: (ExtendedCount, usize),
}

#[derive(Clone, Debug, Default)]
struct NodeAgg {
    own: TopTwo,
    children: Vec<ChildAgg>,
}

pub struct WordSetIndex<'a> {
    trunc: &'a Truncation,
    metric: &'a WordMetric,
    nodes: HashMap<usize, NodeAgg>,
    len: usize,
}

fn suffix_sums(letters: &[u32], cost: impl Fn(u32) -> ExtendedCount) -> Vec<ExtendedCount> {
    let mut s = vec![ExtendedCount::ZERO; letters.len() + 1];
    for k in (0..letters.len()).rev() {
        s[k] = s[k + 1] + cost(letters[k]);
    }
    s
}

impl<'a> WordSetIndex<'a> {
    /// Indexes `(word, label)` entries; a word may appear under several labels.
    pub fn new(trunc: &'a Truncation, metric: &'a WordMetric, entries: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut nodes: HashMap<usize, NodeAgg> = HashMap::new();
        let mut len = 0;
        for (w, label) in entries {
            len += 1;
            let xs = trunc.word(w).letters();
            let lower = suffix_sums(xs, |l| metric.out_cost(l));
            let upper = suffix_sums(xs, |l| metric.in_cost(l));
            nodes.entry(w).or_default().own.offer(Candidate { cost: ExtendedCount::ZERO, label, word: w });
            let mut node = w;
            for j in (0..xs.len()).rev() {
                node = trunc.parent(node).expect("prefix");
                let agg = nodes.entry(node).or_default();
                let letter = xs[j];
                let pos = match agg.children.iter().position(|c| c.letter == letter) {
                    Some(p) => p,
                    None => {
                        agg.children.push(ChildAgg {
                            letter,
                            nearest: TopTwo::default(),
                            max_lower: (lower[j + 1], w),
                            max_upper: (upper[j + 1], w),
                        });
                        agg.children.len() - 1
                    }
                };
                let ch = &mut agg.children[pos];
                ch.nearest.offer(Candidate { cost: upper[j + 1], label, word: w });
                if (lower[j + 1], std::cmp::Reverse(w)) > (ch.max_lower.0, std::cmp::Reverse(ch.max_lower.1)) {
                    ch.max_lower = (lower[j + 1], w);
                }
                if (upper[j + 1], std::cmp::Reverse(w)) > (ch.max_upper.0, std::cmp::Reverse(ch.max_upper.1)) {
                    ch.max_upper = (upper[j + 1], w);
                }
            }
        }
        for agg in nodes.values_mut() {
            agg.children.sort_by_key(|c| c.letter);
        }
        WordSetIndex { trunc, metric, nodes, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The indexed entry minimizing `D*_E(u, v)`, skipping entries labeled `exclude`.
    pub fn nearest(&self, u: usize, exclude: Option<usize>) -> Option<Candidate> {
        let xs = self.trunc.word(u).letters();
        let lower = suffix_sums(xs, |l| self.metric.out_cost(l));
        let mut chain = vec![u; xs.len() + 1];
        for j in (0..xs.len()).rev() {
            chain[j] = self.trunc.parent(chain[j + 1]).expect("prefix");
        }
        let mut best: Option<Candidate> = None;
        let mut consider = |c: Candidate| {
            if best.is_none_or(|b| c.key() < b.key()) {
                best = Some(c);
            }
        };
        for (j, &node) in chain.iter().enumerate() {
            let Some(agg) = self.nodes.get(&node) else { break };
            let b = xs.get(j).map_or(Branch::Base, |&l| Branch::Letter(l));
            let tail = lower.get(j + 1).copied().unwrap_or(ExtendedCount::ZERO);
            if let Some(own) = agg.own.excluding(exclude) {
                let cost = if j == xs.len() {
                    ExtendedCount::ZERO
                } else {
                    self.metric.branch_distance(b, Branch::Base) + tail
                };
                consider(Candidate { cost, ..own });
            }
            for ch in &agg.children {
                if b == Branch::Letter(ch.letter) {
                    continue;
                }
                if let Some(c) = ch.nearest.excluding(exclude) {
                    let cost = self.metric.branch_distance(b, Branch::Letter(ch.letter)) + tail + c.cost;
                    consider(Candidate { cost, ..c });
                }
            }
        }
        best
    }

    /// `max D*_E(u, v)` over ordered pairs of indexed words, with a witness pair.
    pub fn diameter(&self) -> (ExtendedCount, Option<(usize, usize)>) {
        let mut best = (ExtendedCount::ZERO, None);
        for (&node, agg) in &self.nodes {
            let mut items: Vec<(Branch, (ExtendedCount, usize), (ExtendedCount, usize))> = Vec::new();
            if agg.own.best.is_some() {
                items.push((Branch::Base, (ExtendedCount::ZERO, node), (ExtendedCount::ZERO, node)));
            }
            for ch in &agg.children {
                items.push((Branch::Letter(ch.letter), ch.max_lower, ch.max_upper));
            }
            for (p, &(bp, low, _)) in items.iter().enumerate() {
                for (q, &(bq, _, up)) in items.iter().enumerate() {
                    if p == q {
                        continue;
                    }
                    let d = self.metric.branch_distance(bp, bq) + low.0 + up.0;
                    let cand = (d, Some((low.1, up.1)));
                    if d > best.0 || (d == best.0 && best.1.is_none_or(|b| Some(b) > cand.1)) {
                        best = cand;
                    }
                }
            }
        }
        best
    }
}
