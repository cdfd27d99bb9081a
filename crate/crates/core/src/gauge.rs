//! A relation on an indexed universe, used as a disjointness scale or as a
//! boundedness bound. Finite point sets store the relation as a bit matrix;
//! word universes store a product entourage and answer family questions
//! through prefix-tree aggregates instead of pair scans.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::free_product::{ProductEntourage, Truncation, WordSetIndex};
use crate::relations::Relation;

#[derive(Clone, Debug)]
pub enum Gauge {
    Points(Arc<Relation>),
    Words { trunc: Arc<Truncation>, entourage: ProductEntourage },
}

impl Gauge {
    pub fn points(r: Relation) -> Self {
        Gauge::Points(Arc::new(r))
    }

    pub fn words(trunc: Arc<Truncation>, entourage: ProductEntourage) -> Self {
        Gauge::Words { trunc, entourage }
    }

    pub fn universe_len(&self) -> usize {
        match self {
            Gauge::Points(r) => r.size(),
            Gauge::Words { trunc, .. } => trunc.len(),
        }
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        match self {
            Gauge::Points(r) => r.contains(i, j),
            Gauge::Words { trunc, entourage } => entourage.contains(trunc.word(i), trunc.word(j)),
        }
    }

    /// `{ j : (i, j) related }`, sorted.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        match self {
            Gauge::Points(r) => r.successors(i).collect(),
            Gauge::Words { trunc, entourage } => trunc.ball(i, entourage.metric(), entourage.threshold()),
        }
    }

    /// A related pair `(u, v)` with `u` and `v` in different members. An
    /// element shared by two members is reported as `(u, u)`.
    pub fn disjointness_violation(&self, members: &[Vec<usize>]) -> Option<(usize, usize)> {
        match self {
            Gauge::Points(r) => {
                let mut owner: HashMap<usize, usize> = HashMap::new();
                for (m, member) in members.iter().enumerate() {
                    for &u in member {
                        if let Some(&o) = owner.get(&u) {
                            if o != m {
                                return Some((u, u));
                            }
                        }
                        owner.insert(u, m);
                    }
                }
                let mut elems: Vec<(usize, usize)> = owner.iter().map(|(&u, &m)| (u, m)).collect();
                elems.sort_unstable();
                elems.into_iter().find_map(|(u, m)| {
                    r.successors(u)
                        .find(|v| owner.get(v).is_some_and(|&o| o != m))
                        .map(|v| (u, v))
                })
            }
            Gauge::Words { trunc, entourage } => {
                let entries = members.iter().enumerate().flat_map(|(m, member)| member.iter().map(move |&u| (u, m)));
                let index = WordSetIndex::new(trunc, entourage.metric(), entries);
                let mut queries: Vec<(usize, usize)> =
                    members.iter().enumerate().flat_map(|(m, member)| member.iter().map(move |&u| (u, m))).collect();
                queries.sort_unstable();
                queries.into_iter().find_map(|(u, m)| {
                    index
                        .nearest(u, Some(m))
                        .filter(|c| c.cost.le(entourage.threshold()))
                        .map(|c| (u, c.word))
                })
            }
        }
    }

    /// An unrelated pair inside `member`.
    pub fn boundedness_violation(&self, member: &[usize]) -> Option<(usize, usize)> {
        match self {
            Gauge::Points(r) => member
                .iter()
                .find_map(|&u| member.iter().find(|&&v| !r.contains(u, v)).map(|&v| (u, v))),
            Gauge::Words { trunc, entourage } => {
                let index = WordSetIndex::new(trunc, entourage.metric(), member.iter().map(|&u| (u, 0)));
                let (diam, pair) = index.diameter();
                if diam.le(entourage.threshold()) {
                    None
                } else {
                    pair
                }
            }
        }
    }

    /// Smallest threshold making `member` bounded, for word gauges.
    pub fn measured_diameter(&self, member: &[usize]) -> Option<crate::relations::ExtendedCount> {
        match self {
            Gauge::Points(_) => None,
            Gauge::Words { trunc, entourage } => {
                let index = WordSetIndex::new(trunc, entourage.metric(), member.iter().map(|&u| (u, 0)));
                Some(index.diameter().0)
            }
        }
    }

    /// A gauge containing both. Word gauges must share the base relation.
    pub fn join(&self, other: &Gauge) -> Result<Gauge> {
        match (self, other) {
            (Gauge::Points(a), Gauge::Points(b)) => Ok(Gauge::points(a.union(b)?)),
            (Gauge::Words { trunc, entourage: a }, Gauge::Words { trunc: t2, entourage: b }) => {
                if trunc.len() != t2.len() {
                    return Err(Error::GroundMismatch { left: trunc.len(), right: t2.len() });
                }
                if a.base() != b.base() {
                    return Err(Error::Precondition("word gauges over different base relations".into()));
                }
                Ok(Gauge::words(trunc.clone(), a.with_threshold(a.threshold().max(b.threshold()))))
            }
            _ => Err(Error::Precondition("cannot join a point gauge with a word gauge".into())),
        }
    }

    /// Every pair related in `self` is related in `other`.
    pub fn is_within(&self, other: &Gauge) -> bool {
        if let (Gauge::Words { entourage: a, .. }, Gauge::Words { entourage: b, .. }) = (self, other) {
            if a.base() == b.base() {
                return a.threshold() <= b.threshold();
            }
        }
        (0..self.universe_len()).all(|i| self.neighbors(i).into_iter().all(|j| other.related(i, j)))
    }

    pub fn describe(&self) -> String {
        match self {
            Gauge::Points(r) => format!("relation with {} pairs", r.len()),
            Gauge::Words { entourage, .. } => format!("D* <= {}", entourage.threshold()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::GroundSet;
    use proptest::prelude::*;

    fn word_gauge(pairs: &[(usize, usize)], threshold: u64) -> Gauge {
        let g = GroundSet::new(4, 0).unwrap();
        let r = Relation::from_pairs(4, pairs.iter().copied()).unwrap();
        let t = Truncation::enumerate(&g, &[1, 2, 3], 2, 100).unwrap();
        Gauge::words(Arc::new(t), ProductEntourage::new(r, 0, threshold))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn word_checks_match_pairwise_scan(
            pairs in prop::collection::vec((0usize..4, 0usize..4), 0..10),
            threshold in 0u64..4,
            assign in prop::collection::vec(0usize..4, 13),
        ) {
            let gauge = word_gauge(&pairs, threshold);
            // label 3 means "not covered"
            let members: Vec<Vec<usize>> = (0..3)
                .map(|m| (0..13).filter(|&u| assign[u] == m).collect())
                .collect();
            let mut brute_disjoint = true;
            for (a, u) in members.iter().enumerate() {
                for (b, v) in members.iter().enumerate() {
                    if a != b {
                        brute_disjoint &= u.iter().all(|&x| v.iter().all(|&y| !gauge.related(x, y)));
                    }
                }
            }
            let found = gauge.disjointness_violation(&members);
            prop_assert_eq!(found.is_none(), brute_disjoint);
            if let Some((x, y)) = found {
                prop_assert!(gauge.related(x, y));
            }
            for m in &members {
                let brute = m.iter().all(|&x| m.iter().all(|&y| gauge.related(x, y)));
                let found = gauge.boundedness_violation(m);
                prop_assert_eq!(found.is_none(), brute);
                if let Some((x, y)) = found {
                    prop_assert!(!gauge.related(x, y));
                }
            }
        }
    }

    #[test]
    fn shared_element_breaks_disjointness() {
        let g = Gauge::points(Relation::empty(3));
        assert_eq!(g.disjointness_violation(&[vec![0, 1], vec![1, 2]]), Some((1, 1)));
        let w = word_gauge(&[], 0);
        assert!(w.disjointness_violation(&[vec![0, 1], vec![1, 2]]).is_some());
        assert!(w.disjointness_violation(&[vec![0, 1], vec![0, 1]]).is_some());
    }

    #[test]
    fn join_and_within() {
        let a = word_gauge(&[(0, 1), (1, 0)], 1);
        let b = word_gauge(&[(0, 1), (1, 0)], 3);
        assert!(a.is_within(&b));
        assert!(!b.is_within(&a));
        let j = a.join(&b).unwrap();
        assert!(b.is_within(&j) && j.is_within(&b));
        assert!(a.join(&word_gauge(&[], 1)).is_err());
        let p = Gauge::points(Relation::diagonal(3));
        let q = Gauge::points(Relation::from_pairs(3, [(0, 2)]).unwrap());
        let pq = p.join(&q).unwrap();
        assert!(p.is_within(&pq) && q.is_within(&pq) && !pq.is_within(&p));
    }
}
