//! Coarse structures presented by generators, bounded structures from
//! metric tables, family predicates, total spaces and coarse maps.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gauge::Gauge;
use crate::relations::{GroundSet, Relation};

/// A coarse structure generated by finitely many relations.
///
/// On a finite set the generated structure is the down-set of one maximal
/// relation: the transitive closure of `Δ ∪ ⋃ G ∪ G^{-1}`.
#[derive(Clone, Debug)]
pub struct CoarseStructureSpec {
    ground: GroundSet,
    generators: Vec<(String, Relation)>,
}

impl CoarseStructureSpec {
    pub fn new(ground: GroundSet, generators: Vec<(String, Relation)>) -> Result<Self> {
        for (name, g) in &generators {
            if g.size() != ground.size() {
                return Err(Error::Domain(format!(
                    "generator `{name}` has {} points, ground set has {}",
                    g.size(),
                    ground.size()
                )));
            }
        }
        Ok(CoarseStructureSpec { ground, generators })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn generators(&self) -> &[(String, Relation)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&Relation> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }

    /// The maximal entourage, by saturating unions and compositions.
    pub fn closure(&self) -> Relation {
        let mut acc = Relation::diagonal(self.ground.size());
        for (_, g) in &self.generators {
            acc = acc.union(g).and_then(|a| a.union(&g.inverse())).expect("validated sizes");
        }
        acc.transitive_closure()
    }

    pub fn contains_entourage(&self, e: &Relation) -> Result<bool> {
        e.is_subset(&self.closure())
    }
}

/// A finite table of distances in `[0, +inf]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricTable {
    ground: GroundSet,
    dist: Vec<f64>,
}

/// A violated metric axiom, with the offending indices.
#[derive(Clone, Debug, PartialEq)]
pub enum MetricViolation {
    NonzeroDiagonal(usize),
    Negative(usize, usize),
    Asymmetric(usize, usize),
    Triangle(usize, usize, usize),
}

impl std::fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MetricViolation::NonzeroDiagonal(i) => write!(f, "d({i},{i}) is not 0"),
            MetricViolation::Negative(i, j) => write!(f, "d({i},{j}) is negative"),
            MetricViolation::Asymmetric(i, j) => write!(f, "d({i},{j}) != d({j},{i})"),
            MetricViolation::Triangle(i, j, k) => write!(f, "d({i},{k}) > d({i},{j}) + d({j},{k})"),
        }
    }
}

impl MetricTable {
    pub fn new(ground: GroundSet, dist: Vec<f64>) -> Result<Self> {
        let n = ground.size();
        if dist.len() != n * n {
            return Err(Error::Domain(format!("metric table needs {} entries, got {}", n * n, dist.len())));
        }
        let m = MetricTable { ground, dist };
        match m.violation() {
            Some(v) => Err(Error::Domain(format!("metric axiom violated: {v}"))),
            None => Ok(m),
        }
    }

    pub fn from_fn(ground: GroundSet, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let n = ground.size();
        let dist = (0..n * n).map(|k| f(k / n, k % n)).collect();
        MetricTable::new(ground, dist)
    }

    /// First violated axiom, scanning pairs then triples in index order.
    pub fn violation(&self) -> Option<MetricViolation> {
        let n = self.ground.size();
        for i in 0..n {
            if self.dist(i, i) != 0.0 {
                return Some(MetricViolation::NonzeroDiagonal(i));
            }
            for j in 0..n {
                let d = self.dist(i, j);
                if d.is_nan() || d < 0.0 {
                    return Some(MetricViolation::Negative(i, j));
                }
                if d != self.dist(j, i) {
                    return Some(MetricViolation::Asymmetric(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.dist(i, k) > self.dist(i, j) + self.dist(j, k) {
                        return Some(MetricViolation::Triangle(i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.ground.size() + j]
    }

    /// `inf { d(y, y') : y != y' }`; `+inf` on a single point.
    pub fn gap(&self) -> f64 {
        let n = self.ground.size();
        let mut r = f64::INFINITY;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    r = r.min(self.dist(i, j));
                }
            }
        }
        r
    }

    pub fn is_uniformly_discrete(&self) -> bool {
        self.gap() > 0.0
    }
}

/// `{(i, j) : d(i, j) < R}`; every pair when `R = +inf`.
pub fn ball_relation(m: &MetricTable, radius: f64) -> Relation {
    let n = m.ground().size();
    if radius == f64::INFINITY {
        return Relation::full(n);
    }
    let mut r = Relation::empty(n);
    for i in 0..n {
        for j in 0..n {
            if m.dist(i, j) < radius {
                r.insert(i, j);
            }
        }
    }
    r
}

/// A tagged family of nonempty subsets of an indexed universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFamily {
    pub tag: String,
    members: Vec<Vec<usize>>,
}

impl SubsetFamily {
    /// Sorts each member and drops empty ones.
    pub fn new(tag: impl Into<String>, members: Vec<Vec<usize>>) -> Self {
        let members = members
            .into_iter()
            .filter(|m| !m.is_empty())
            .map(|mut m| {
                m.sort_unstable();
                m.dedup();
                m
            })
            .collect();
        SubsetFamily { tag: tag.into(), members }
    }

    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn elements(&self) -> BTreeSet<usize> {
        self.members.iter().flatten().copied().collect()
    }
}

/// No pair from two distinct members lies in `e`.
pub fn is_e_disjoint(fam: &SubsetFamily, e: &Gauge) -> bool {
    e.disjointness_violation(fam.members()).is_none()
}

/// Every within-member pair lies in `k`.
pub fn is_k_bounded(fam: &SubsetFamily, k: &Gauge) -> bool {
    fam.members().iter().all(|m| k.boundedness_violation(m).is_none())
}

/// A total function between two enumerated universes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarseMap {
    target_len: usize,
    table: Vec<usize>,
}

impl CoarseMap {
    pub fn new(table: Vec<usize>, target_len: usize) -> Result<Self> {
        if let Some((i, &y)) = table.iter().enumerate().find(|(_, &y)| y >= target_len) {
            return Err(Error::Domain(format!("source element {i} maps to {y}, outside the target")));
        }
        Ok(CoarseMap { target_len, table })
    }

    pub fn identity(n: usize) -> Self {
        CoarseMap { target_len: n, table: (0..n).collect() }
    }

    pub fn source_len(&self) -> usize {
        self.table.len()
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn preimage(&self, ys: &BTreeSet<usize>) -> Vec<usize> {
        (0..self.table.len()).filter(|&x| ys.contains(&self.table[x])).collect()
    }
}

/// Where the images of source entourages must land.
pub enum TargetStructure<'a> {
    Generated(&'a CoarseStructureSpec),
    /// Bounded structure of a finite metric: finite distances only.
    Metric(&'a MetricTable),
    /// Explicit bound: every image pair must be related in the gauge.
    Bounded(&'a Gauge),
}

/// Every source generator is pushed into the target structure.
pub fn is_uniformly_expansive(f: &CoarseMap, source_gens: &[Gauge], target: &TargetStructure<'_>) -> Result<bool> {
    for g in source_gens {
        if g.universe_len() != f.source_len() {
            return Err(Error::GroundMismatch { left: g.universe_len(), right: f.source_len() });
        }
        match target {
            TargetStructure::Bounded(t) => {
                for x in 0..f.source_len() {
                    for y in g.neighbors(x) {
                        if !t.related(f.apply(x), f.apply(y)) {
                            return Ok(false);
                        }
                    }
                }
            }
            TargetStructure::Generated(spec) => {
                let mut image = Relation::empty(f.target_len());
                for x in 0..f.source_len() {
                    for y in g.neighbors(x) {
                        image.insert(f.apply(x), f.apply(y));
                    }
                }
                if !spec.contains_entourage(&image)? {
                    return Ok(false);
                }
            }
            TargetStructure::Metric(m) => {
                for x in 0..f.source_len() {
                    for y in g.neighbors(x) {
                        if !m.dist(f.apply(x), f.apply(y)).is_finite() {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// The maximal coarse fibers `f^{-1}(F^{-1}[{y}])` over every target point,
/// identical members merged.
pub fn coarse_fiber_cover(f: &CoarseMap, scale: &Relation) -> Result<SubsetFamily> {
    if scale.size() != f.target_len() {
        return Err(Error::GroundMismatch { left: scale.size(), right: f.target_len() });
    }
    let mut seen = BTreeSet::new();
    let mut members = Vec::new();
    for y in 0..f.target_len() {
        let member: Vec<usize> = (0..f.source_len()).filter(|&x| scale.contains(y, f.apply(x))).collect();
        if !member.is_empty() && seen.insert(member.clone()) {
            members.push(member);
        }
    }
    Ok(SubsetFamily::new("fibers", members))
}

/// The tagged disjoint union of a family of subsets.
#[derive(Clone, Debug)]
pub struct TotalSpace {
    carrier: Vec<(usize, usize)>,
}

impl TotalSpace {
    pub fn new(families: &[Vec<usize>]) -> Self {
        let carrier = families
            .iter()
            .enumerate()
            .flat_map(|(tag, m)| m.iter().map(move |&u| (u, tag)))
            .collect();
        TotalSpace { carrier }
    }

    /// `(element, tag)` pairs in carrier order.
    pub fn carrier(&self) -> &[(usize, usize)] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }
}

/// `⨆_i (E ∩ (U_i × U_i))` as a relation on carrier positions.
pub fn total_entourage(ts: &TotalSpace, e: &Gauge) -> Relation {
    let n = ts.len();
    let mut r = Relation::empty(n);
    for (p, &(u, i)) in ts.carrier().iter().enumerate() {
        for (q, &(v, j)) in ts.carrier().iter().enumerate() {
            if i == j && e.related(u, v) {
                r.insert(p, q);
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn path(n: usize) -> Relation {
        let mut r = Relation::diagonal(n);
        for i in 0..n - 1 {
            r.insert(i, i + 1);
            r.insert(i + 1, i);
        }
        r
    }

    fn points(r: Relation) -> Gauge {
        Gauge::Points(Arc::new(r))
    }

    #[test]
    fn entourage_membership() {
        let g = GroundSet::new(4, 0).unwrap();
        let spec = CoarseStructureSpec::new(g.clone(), vec![("adj".into(), path(4))]).unwrap();
        assert!(spec.contains_entourage(&Relation::diagonal(4)).unwrap());
        assert!(spec.contains_entourage(&Relation::from_pairs(4, [(1, 2)]).unwrap()).unwrap());
        let far = Relation::from_pairs(4, [(0, 3)]).unwrap();
        // saturation oracle: (0,3) sits in the third power
        assert!(path(4).power(3).contains(0, 3));
        assert!(spec.contains_entourage(&far).unwrap());
        let split = CoarseStructureSpec::new(g, vec![("d".into(), Relation::from_pairs(4, [(0, 1)]).unwrap())]).unwrap();
        assert!(!split.contains_entourage(&far).unwrap());
        assert!(split.contains_entourage(&Relation::from_pairs(4, [(1, 0)]).unwrap()).unwrap());
        assert!(split.contains_entourage(&Relation::empty(5)).is_err());
    }

    #[test]
    fn closure_is_composition_closed() {
        let g = GroundSet::new(6, 0).unwrap();
        let gens = vec![("a".into(), Relation::from_pairs(6, [(0, 1), (2, 3)]).unwrap()), ("b".into(), Relation::from_pairs(6, [(1, 2)]).unwrap())];
        let spec = CoarseStructureSpec::new(g, gens).unwrap();
        let c = spec.closure();
        assert!(spec.contains_entourage(&c).unwrap());
        assert!(c.compose(&c).unwrap().is_subset(&c).unwrap());
        assert!(!c.contains(0, 4));
    }

    #[test]
    fn ball_relation_examples() {
        let g = GroundSet::new(4, 0).unwrap();
        let m = MetricTable::from_fn(g, |i, j| (i as f64 - j as f64).abs()).unwrap();
        assert!(ball_relation(&m, 0.0).is_empty());
        assert_eq!(ball_relation(&m, 1.5), path(4));
        assert_eq!(ball_relation(&m, f64::INFINITY), Relation::full(4));
        // strict inequality at the boundary
        assert_eq!(ball_relation(&m, 1.0), Relation::diagonal(4));
        let r1 = ball_relation(&m, 1.5);
        let r2 = ball_relation(&m, 2.5);
        assert!(r1.compose(&r2).unwrap().is_subset(&ball_relation(&m, 4.0)).unwrap());
    }

    #[test]
    fn metric_validation() {
        let g = GroundSet::new(3, 0).unwrap();
        let bad = MetricTable::new(g.clone(), vec![0.0, 1.0, 5.0, 1.0, 0.0, 1.0, 5.0, 1.0, 0.0]);
        assert!(bad.unwrap_err().to_string().contains("d(0,2) > d(0,1) + d(1,2)"));
        let inf = MetricTable::new(g.clone(), vec![0.0, f64::INFINITY, 1.0, f64::INFINITY, 0.0, f64::INFINITY, 1.0, f64::INFINITY, 0.0]);
        assert!(inf.is_ok());
        assert_eq!(inf.unwrap().gap(), 1.0);
        assert!(MetricTable::new(g, vec![0.0; 4]).is_err());
    }

    #[test]
    fn disjoint_and_bounded_examples() {
        let d = points(Relation::diagonal(4));
        assert!(is_e_disjoint(&SubsetFamily::new("one", vec![vec![0, 1, 2]]), &d));
        assert!(is_e_disjoint(&SubsetFamily::new("two", vec![vec![0], vec![1]]), &d));
        let mut e = Relation::diagonal(4);
        e.insert(0, 1);
        assert!(!is_e_disjoint(&SubsetFamily::new("two", vec![vec![0], vec![1]]), &points(e)));

        let singles = SubsetFamily::new("s", vec![vec![0], vec![1], vec![2]]);
        assert!(is_k_bounded(&singles, &d));
        let far = SubsetFamily::new("far", vec![vec![0, 3]]);
        assert!(!is_k_bounded(&far, &points(path(4))));
        assert!(is_k_bounded(&far, &points(path(4).power(3))));
    }

    #[test]
    fn family_predicates_match_quantifier_expansion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..8);
            let mut r = Relation::empty(n);
            for i in 0..n {
                for j in 0..n {
                    if rng.gen_bool(0.3) {
                        r.insert(i, j);
                    }
                }
            }
            let members: Vec<Vec<usize>> = (0..rng.gen_range(1..4))
                .map(|_| (0..n).filter(|_| rng.gen_bool(0.4)).collect())
                .collect();
            let fam = SubsetFamily::new("f", members);
            let ms = fam.members();
            let mut disjoint = true;
            for (a, u) in ms.iter().enumerate() {
                for (b, v) in ms.iter().enumerate() {
                    if a != b {
                        // shared elements count against disjointness
                        disjoint &= u.iter().all(|&x| v.iter().all(|&y| x != y && !r.contains(x, y)));
                    }
                }
            }
            let bounded = ms.iter().all(|u| u.iter().all(|&x| u.iter().all(|&y| r.contains(x, y))));
            let g = points(r);
            assert_eq!(is_e_disjoint(&fam, &g), disjoint);
            assert_eq!(is_k_bounded(&fam, &g), bounded);
        }
    }

    #[test]
    fn expansive_examples() {
        let g = GroundSet::new(4, 0).unwrap();
        let spec = CoarseStructureSpec::new(g, vec![("adj".into(), path(4))]).unwrap();
        let gens = vec![points(path(4))];
        assert!(is_uniformly_expansive(&CoarseMap::identity(4), &gens, &TargetStructure::Generated(&spec)).unwrap());
        let constant = CoarseMap::new(vec![2; 4], 4).unwrap();
        assert!(is_uniformly_expansive(&constant, &gens, &TargetStructure::Generated(&spec)).unwrap());
        let tight = points(Relation::diagonal(4));
        let swap = CoarseMap::new(vec![0, 3, 1, 2], 4).unwrap();
        assert!(!is_uniformly_expansive(&swap, &gens, &TargetStructure::Bounded(&tight)).unwrap());
    }

    #[test]
    fn fiber_cover_examples() {
        let f = CoarseMap::new(vec![0, 0, 1, 2], 3).unwrap();
        let fibers = coarse_fiber_cover(&f, &Relation::diagonal(3)).unwrap();
        assert_eq!(fibers.members(), &[vec![0, 1], vec![2], vec![3]]);
        let constant = CoarseMap::new(vec![1; 5], 3).unwrap();
        let fibers = coarse_fiber_cover(&constant, &path(3)).unwrap();
        assert_eq!(fibers.members(), &[vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn total_entourage_examples() {
        let ts = TotalSpace::new(&[vec![0, 1]]);
        let e = points(path(3));
        assert_eq!(total_entourage(&ts, &e).pairs(), vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        let twice = TotalSpace::new(&[vec![0, 1], vec![0, 1]]);
        let r = total_entourage(&twice, &e);
        assert!(r.pairs().iter().all(|&(p, q)| twice.carrier()[p].1 == twice.carrier()[q].1));
        assert_eq!(r.len(), 8);
    }
}
