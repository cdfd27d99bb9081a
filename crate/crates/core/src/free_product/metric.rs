use std::sync::Arc;

use super::word::{wedge, Branch, Word};
use crate::coarse_space::MetricTable;
use crate::relations::{DistanceTable, ExtendedCount, Relation};

/// `(‖w‖_E, ‖w‖^E)`: sums of `D_E(x0, x_i)` and `D_E(x_i, x0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormPair {
    pub lower: ExtendedCount,
    pub upper: ExtendedCount,
}

/// The free-product distance `D*_E` induced by one base relation `E`.
#[derive(Clone, Debug)]
pub struct WordMetric {
    relation: Arc<Relation>,
    table: Arc<DistanceTable>,
    basepoint: usize,
}

impl WordMetric {
    pub fn new(relation: Relation, basepoint: usize) -> Self {
        let table = DistanceTable::new(&relation);
        WordMetric { relation: Arc::new(relation), table: Arc::new(table), basepoint }
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    #[inline]
    pub fn d(&self, x: usize, y: usize) -> ExtendedCount {
        self.table.get(x, y)
    }

    #[inline]
    pub fn branch_distance(&self, b: Branch, b2: Branch) -> ExtendedCount {
        self.d(b.point(self.basepoint), b2.point(self.basepoint))
    }

    /// `D_E(x0, l)`.
    #[inline]
    pub fn out_cost(&self, letter: u32) -> ExtendedCount {
        self.d(self.basepoint, letter as usize)
    }

    /// `D_E(l, x0)`.
    #[inline]
    pub fn in_cost(&self, letter: u32) -> ExtendedCount {
        self.d(letter as usize, self.basepoint)
    }

    pub fn lower_norm(&self, letters: &[u32]) -> ExtendedCount {
        letters.iter().map(|&l| self.out_cost(l)).sum()
    }

    pub fn upper_norm(&self, letters: &[u32]) -> ExtendedCount {
        letters.iter().map(|&l| self.in_cost(l)).sum()
    }

    pub fn norms(&self, w: &Word) -> NormPair {
        NormPair { lower: self.lower_norm(w.letters()), upper: self.upper_norm(w.letters()) }
    }

    /// `D*_E(x, y) = D_E(b, b') + ‖c‖_E + ‖c'‖^E` over the wedge of `x` and `y`.
    pub fn dstar(&self, x: &Word, y: &Word) -> ExtendedCount {
        if x == y {
            return ExtendedCount::ZERO;
        }
        let k = x.common_prefix_len(y);
        let (xs, ys) = (x.letters(), y.letters());
        let b = xs.get(k).map_or(Branch::Base, |&l| Branch::Letter(l));
        let b2 = ys.get(k).map_or(Branch::Base, |&l| Branch::Letter(l));
        let tail_x = xs.get(k + 1..).unwrap_or(&[]);
        let tail_y = ys.get(k + 1..).unwrap_or(&[]);
        self.branch_distance(b, b2) + self.lower_norm(tail_x) + self.upper_norm(tail_y)
    }
}

/// The metric free-product distance `d*` for a real-valued table.
pub fn d_star_metric(m: &MetricTable, x: &Word, y: &Word) -> f64 {
    if x == y {
        return 0.0;
    }
    let base = m.ground().basepoint();
    let d = wedge(x, y).expect("distinct words");
    m.dist(d.left_branch.point(base), d.right_branch.point(base))
        + d.left_tail.letters().iter().map(|&l| m.dist(l as usize, base)).sum::<f64>()
        + d.right_tail.letters().iter().map(|&l| m.dist(l as usize, base)).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::{Finite, GroundSet, Infinite};

    fn path(n: usize) -> Relation {
        let mut r = Relation::diagonal(n);
        for i in 0..n - 1 {
            r.insert(i, i + 1);
            r.insert(i + 1, i);
        }
        r
    }

    fn w(v: &[u32]) -> Word {
        Word::from_raw(v.to_vec())
    }

    #[test]
    fn norm_examples() {
        let m = WordMetric::new(path(4), 0);
        assert_eq!(m.norms(&Word::epsilon()), NormPair { lower: Finite(0), upper: Finite(0) });
        assert_eq!(m.norms(&w(&[1])).lower, Finite(1));
        assert_eq!(m.norms(&w(&[2, 3])).lower, Finite(5));
    }

    #[test]
    fn norms_split_for_directed_relations() {
        // 0 -> 1 only: D(x0, 1) = 1 but D(1, x0) = inf
        let mut r = Relation::diagonal(2);
        r.insert(0, 1);
        let m = WordMetric::new(r, 0);
        let n = m.norms(&w(&[1]));
        assert_eq!((n.lower, n.upper), (Finite(1), Infinite));
    }

    #[test]
    fn dstar_examples() {
        let m = WordMetric::new(path(4), 0);
        let x = w(&[2, 3]);
        assert_eq!(m.dstar(&x, &x), Finite(0));
        // prefix case by hand: D(x0,u) + D(v,x0)
        let (u, v) = (2u32, 3u32);
        let expected = m.d(0, u as usize) + m.d(v as usize, 0);
        assert_eq!(m.dstar(&Word::epsilon(), &w(&[u, v])), expected);
        assert_eq!(expected, Finite(5));
        assert_eq!(m.dstar(&w(&[1]), &w(&[2])), Finite(1));
    }

    #[test]
    fn metric_free_product_examples() {
        let g = GroundSet::new(4, 0).unwrap();
        let table = MetricTable::from_fn(g, |i, j| (i as f64 - j as f64).abs()).unwrap();
        let x = w(&[1, 2]);
        assert_eq!(d_star_metric(&table, &x, &x), 0.0);
        assert_eq!(d_star_metric(&table, &w(&[1]), &w(&[3])), 2.0);
        assert_eq!(d_star_metric(&table, &w(&[1]), &w(&[2, 1])), 2.0);
        assert_eq!(d_star_metric(&table, &Word::epsilon(), &w(&[2])), 2.0);
    }
}
