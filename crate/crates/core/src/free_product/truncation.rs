use std::collections::HashMap;

use super::metric::WordMetric;
use super::word::{Branch, Word};
use crate::error::{Error, Result};
use crate::relations::{ExtendedCount, GroundSet};

pub const DEFAULT_WORD_CAP: usize = 20_000;

/// All words of order `<= max_order` over a letter set, in length-lexicographic
/// order (by length, then by letter position).
///
/// Index arithmetic: the word at local position `q` of layer `j` has its
/// child by the `t`-th letter at local position `q * |letters| + t` of layer
/// `j + 1`.
#[derive(Clone, Debug)]
pub struct Truncation {
    ground: GroundSet,
    letters: Vec<u32>,
    letter_pos: HashMap<u32, usize>,
    max_order: usize,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    layer_start: Vec<usize>,
}

impl Truncation {
    pub fn enumerate(ground: &GroundSet, letters: &[u32], max_order: usize, cap: usize) -> Result<Self> {
        let mut letters = letters.to_vec();
        letters.sort_unstable();
        letters.dedup();
        for &l in &letters {
            if l as usize >= ground.size() || l as usize == ground.basepoint() {
                return Err(Error::Precondition(format!("letter {l} is the basepoint or out of range")));
            }
        }
        let mut count: u128 = 0;
        let mut layer: u128 = 1;
        for _ in 0..=max_order {
            count += layer;
            layer *= letters.len() as u128;
            if count > cap as u128 {
                break;
            }
        }
        if count > cap as u128 {
            let total: u128 = (0..=max_order as u32).map(|k| (letters.len() as u128).saturating_pow(k)).sum();
            return Err(Error::Resource { what: "truncation words".into(), count: total, cap: cap as u128 });
        }
        let mut words = vec![Word::epsilon()];
        let mut layer_start = vec![0, 1];
        for _ in 0..max_order {
            let (lo, hi) = (layer_start[layer_start.len() - 2], layer_start[layer_start.len() - 1]);
            for q in lo..hi {
                for &l in &letters {
                    let next = words[q].push(l);
                    words.push(next);
                }
            }
            layer_start.push(words.len());
        }
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let letter_pos = letters.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        Ok(Truncation { ground: ground.clone(), letters, letter_pos, max_order, words, index, layer_start })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn order_of(&self, i: usize) -> usize {
        self.words[i].order()
    }

    /// Index range of the words of order exactly `j`.
    pub fn layer(&self, j: usize) -> std::ops::Range<usize> {
        if j > self.max_order {
            return 0..0;
        }
        self.layer_start[j]..self.layer_start[j + 1]
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        let j = self.order_of(i);
        if j == 0 {
            return None;
        }
        let q = i - self.layer_start[j];
        Some(self.layer_start[j - 1] + q / self.letters.len())
    }

    pub fn child(&self, i: usize, letter: u32) -> Option<usize> {
        let j = self.order_of(i);
        if j >= self.max_order {
            return None;
        }
        let t = *self.letter_pos.get(&letter)?;
        let q = i - self.layer_start[j];
        Some(self.layer_start[j + 1] + q * self.letters.len() + t)
    }

    pub fn children(&self, i: usize) -> std::ops::Range<usize> {
        let j = self.order_of(i);
        if j >= self.max_order {
            return 0..0;
        }
        let q = i - self.layer_start[j];
        let start = self.layer_start[j + 1] + q * self.letters.len();
        start..start + self.letters.len()
    }

    /// Prefix of word `i` of order `len`, as an index.
    pub fn ancestor(&self, mut i: usize, len: usize) -> usize {
        while self.order_of(i) > len {
            i = self.parent(i).expect("nonempty word has a parent");
        }
        i
    }

    /// Index of `prefix · w` when it lies inside the truncation.
    pub fn extend(&self, prefix: usize, w: &Word) -> Option<usize> {
        let mut at = prefix;
        for &l in w.letters() {
            at = self.child(at, l)?;
        }
        Some(at)
    }

    /// Every truncation word `y` with `D*_E(x, y) <= threshold`, including `x`.
    ///
    /// Walks the wedge structure directly: for every split point of `x`,
    /// either `y` is that prefix or it branches off with a different letter
    /// and continues with a tail whose upper norm fits the remaining budget.
    pub fn ball(&self, x: usize, metric: &WordMetric, threshold: u64) -> Vec<usize> {
        let mut out = vec![x];
        let word = &self.words[x];
        let xs = word.letters();
        let mut lower_suffix = vec![ExtendedCount::ZERO; xs.len() + 1];
        for k in (0..xs.len()).rev() {
            lower_suffix[k] = lower_suffix[k + 1] + metric.out_cost(xs[k]);
        }
        let mut prefix = x;
        for j in (0..=xs.len()).rev() {
            if j < xs.len() {
                prefix = self.parent(prefix).expect("prefix of a word");
            }
            // split after j letters: a = x[..j], b = x[j] or the marker
            let b = xs.get(j).map_or(Branch::Base, |&l| Branch::Letter(l));
            let tail_lower = lower_suffix.get(j + 1).copied().unwrap_or(ExtendedCount::ZERO);
            if let Branch::Letter(_) = b {
                let cost = metric.branch_distance(b, Branch::Base) + tail_lower;
                if cost.le(threshold) {
                    out.push(prefix);
                }
            }
            for &l in &self.letters {
                if b == Branch::Letter(l) {
                    continue;
                }
                let cost = metric.branch_distance(b, Branch::Letter(l)) + tail_lower;
                let Some(c) = cost.finite().filter(|&c| c <= threshold) else { continue };
                let Some(start) = self.child(prefix, l) else { continue };
                self.extend_within(start, threshold - c, metric, &mut out);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn extend_within(&self, at: usize, budget: u64, metric: &WordMetric, out: &mut Vec<usize>) {
        out.push(at);
        for &l in &self.letters {
            if let Some(c) = metric.in_cost(l).finite().filter(|&c| c <= budget) {
                if let Some(next) = self.child(at, l) {
                    self.extend_within(next, budget - c, metric, out);
                }
            }
        }
    }
}
