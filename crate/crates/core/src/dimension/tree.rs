use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use super::{check_witness, CoverWitness};
use crate::coarse_space::CoarseMap;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::free_product::{ProductEntourage, Truncation, WordMetric};
use crate::gauge::Gauge;
use crate::relations::Relation;

/// The tree with one vertex per truncation word and an edge from every word
/// to each of its one-letter extensions. Vertices share the truncation's
/// indices, so the word-to-vertex map is the identity on indices.
///
/// The edge-count distance coincides with `D*` of the star relation
/// `Δ ∪ {(x0, y), (y, x0)}`: branching letters cost 1 against the basepoint
/// and 2 against each other, and every tail letter costs 1.
#[derive(Clone, Debug)]
pub struct TreeGraph {
    trunc: Arc<Truncation>,
    star: WordMetric,
}

pub fn build_tree(t: Arc<Truncation>) -> TreeGraph {
    let n = t.ground().size();
    let base = t.ground().basepoint();
    let mut star = Relation::diagonal(n);
    for y in 0..n {
        star.insert(base, y);
        star.insert(y, base);
    }
    TreeGraph { star: WordMetric::new(star, base), trunc: t }
}

impl TreeGraph {
    pub fn truncation(&self) -> &Arc<Truncation> {
        &self.trunc
    }

    pub fn len(&self) -> usize {
        self.trunc.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trunc.is_empty()
    }

    /// `(parent, child)` pairs in child order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..self.len()).map(|c| (self.trunc.parent(c).expect("non-root"), c)).collect()
    }

    pub fn depth(&self, v: usize) -> usize {
        self.trunc.order_of(v)
    }

    /// `ord(x) + ord(x') - 2 ord(common prefix)`.
    pub fn distance(&self, u: usize, v: usize) -> u64 {
        let (a, b) = (self.trunc.word(u), self.trunc.word(v));
        (a.order() + b.order() - 2 * a.common_prefix_len(b)) as u64
    }

    /// Edge-count distances from `src` by breadth-first search.
    pub fn bfs_distances(&self, src: usize) -> Vec<u64> {
        let mut dist = vec![u64::MAX; self.len()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let next = self.trunc.parent(v).into_iter().chain(self.trunc.children(v));
            for w in next {
                if dist[w] == u64::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// The word-to-vertex map.
    pub fn map(&self) -> CoarseMap {
        CoarseMap::identity(self.len())
    }

    /// `{(u, v) : d_T(u, v) <= radius}`.
    pub fn gauge(&self, radius: u64) -> Gauge {
        Gauge::words(self.trunc.clone(), ProductEntourage::from_metric(self.star.clone(), radius))
    }

    pub fn edge_list(&self) -> String {
        let g = self.trunc.ground();
        self.edges()
            .into_iter()
            .map(|(p, c)| format!("{}\t{}\n", self.trunc.word(p).display(g), self.trunc.word(c).display(g)))
            .collect()
    }

    pub fn dot(&self) -> String {
        let g = self.trunc.ground();
        let mut out = String::from("digraph {\n");
        for (p, c) in self.edges() {
            out.push_str(&format!("  \"{}\" -- \"{}\";\n", self.trunc.word(p).display(g), self.trunc.word(c).display(g)));
        }
        out.push_str("}\n");
        out
    }
}

/// Largest tree distance between the images of a `pe`-related pair.
pub fn tree_expansiveness_bound(tree: &TreeGraph, pe: &ProductEntourage) -> u64 {
    let t = tree.truncation();
    Exec::default()
        .map_range(t.len(), |x| {
            t.ball(x, pe.metric(), pe.threshold()).into_iter().map(|y| tree.distance(x, y)).max().unwrap_or(0)
        })
        .into_iter()
        .max()
        .unwrap_or(0)
}

/// Two families covering the tree, `d_T <= radius`-disjoint and
/// `d_T <= 4 radius - 2`-bounded.
///
/// Depth is cut into annuli `[iR, (i+1)R)`; annuli of one parity form a
/// family, split into pieces by the ancestor at depth `iR - R` (or the root).
/// Distinct pieces of one annulus branch above that depth, so they are at
/// least `2R + 2` apart; annuli two apart differ in depth by more than `R`.
pub fn tree_witness(tree: &TreeGraph, radius: u64) -> Result<CoverWitness> {
    if radius == 0 {
        return Err(Error::Precondition("tree cover radius must be positive".into()));
    }
    let all: Vec<usize> = (0..tree.len()).collect();
    let families = tree_pieces(tree.truncation(), &all, 0, radius).to_vec();
    let w = CoverWitness { domain: None, families, scale: tree.gauge(radius), bound: tree.gauge(4 * radius - 2) };
    match check_witness(&w).failure {
        None => Ok(w),
        Some(f) => Err(Error::rejected("tree cover", format!("{f:?}"))),
    }
}

/// The annulus pieces of `words`, with depth measured from `root_depth`:
/// `[even annuli, odd annuli]`, each piece sorted and pieces in key order.
pub fn tree_pieces(t: &Truncation, words: &[usize], root_depth: usize, radius: u64) -> [Vec<Vec<usize>>; 2] {
    let r = radius.max(1) as usize;
    let mut pieces: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &v in words {
        let i = (t.order_of(v) - root_depth) / r;
        let anchor = t.ancestor(v, root_depth + (i * r).saturating_sub(r));
        pieces.entry((i, anchor)).or_default().push(v);
    }
    let mut families = [Vec::new(), Vec::new()];
    for ((i, _), mut member) in pieces {
        member.sort_unstable();
        families[i % 2].push(member);
    }
    families
}
