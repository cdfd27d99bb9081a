use std::collections::BTreeSet;
use std::sync::Arc;

use crate::dimension::{check_witness, tree_pieces, CoverWitness};
use crate::error::{Error, Result};
use crate::free_product::{cone, components, is_flat, ProductEntourage, Truncation, Word, WordMetric};
use crate::gauge::Gauge;
use crate::relations::{ExtendedCount, Relation};

/// The cover of a truncation by cones over flat families.
#[derive(Clone, Debug)]
pub struct ConeCover {
    pub p: usize,
    /// `(L_i, n_i)` for `i = 1..=p+1`.
    pub scales: Vec<(Relation, u64)>,
    pub n: u64,
    /// `M = L̂_{p+1}^n` with `L̂` the symmetrization of `L`.
    pub cone_scale: Relation,
    /// `V_1, …, V_p` and `V_{p+1} = {{ε}}`.
    pub flat_families: Vec<Vec<Vec<usize>>>,
    /// The class of every word under the last-deep-letter rule; a partition.
    pub classes: Vec<Vec<usize>>,
    /// Largest `D*` diameter of a flat member under `L̂_{p+1}`.
    pub diameter: ExtendedCount,
}

fn sym_metric(t: &Truncation, rel: &Relation) -> WordMetric {
    WordMetric::new(rel.symmetrized(), t.ground().basepoint())
}

fn check_base(metric: &WordMetric, n: u64, family: usize, members: &[Vec<usize>]) -> Result<()> {
    for (a, u) in members.iter().enumerate() {
        for v in members.iter().skip(a + 1) {
            for &x in u {
                if let Some(&y) = v.iter().find(|&&y| metric.d(x, y).le(n)) {
                    return Err(Error::rejected("base cover", format!("family {} members meet at points {x} and {y}", family + 1)));
                }
            }
        }
    }
    Ok(())
}

/// `V_i(x) = x·(U ∖ B(x0, M))` for `U` in base family `i`, plus `{ε}`, and
/// the assignment of every word to one cone class.
///
/// The first `p + 1` scales are used; they must ascend in both the relation
/// and the integer. Base family `i` must be `L̂_i^{n_i}`-disjoint, and the
/// base families together must cover every point.
pub fn cone_decomposition(t: &Arc<Truncation>, scales: &[ProductEntourage], base: &[Vec<Vec<usize>>]) -> Result<ConeCover> {
    let p = base.len();
    if scales.len() < p + 1 {
        return Err(Error::Precondition(format!("{p} base families need {} scales", p + 1)));
    }
    let used: Vec<(Relation, u64)> = scales[..=p].iter().map(|s| (s.base().clone(), s.threshold())).collect();
    for (i, w) in used.windows(2).enumerate() {
        if !w[0].0.is_subset(&w[1].0)? || w[0].1 > w[1].1 {
            return Err(Error::Precondition(format!("scale {} does not contain scale {}", i + 2, i + 1)));
        }
    }
    let size = t.ground().size();
    let covered: BTreeSet<usize> = base.iter().flatten().flatten().copied().collect();
    if let Some(x) = (0..size).find(|x| !covered.contains(x)) {
        return Err(Error::rejected("base cover", format!("point {x} is not covered")));
    }
    for (i, fam) in base.iter().enumerate() {
        check_base(&sym_metric(t, &used[i].0), used[i].1, i, fam)?;
    }
    let n = used.iter().map(|s| s.1).max().unwrap_or(0);
    let top = sym_metric(t, &used[p].0);
    let cone_scale = top.relation().power(n as usize);
    let deep = |l: u32| !top.out_cost(l).le(n);

    let mut flat_families: Vec<Vec<Vec<usize>>> = vec![Vec::new(); p + 1];
    for x in (0..t.len()).filter(|&x| t.order_of(x) < t.max_order()) {
        for (i, fam) in base.iter().enumerate() {
            for u in fam {
                let member: Vec<usize> =
                    u.iter().map(|&l| l as u32).filter(|&l| deep(l)).filter_map(|l| t.child(x, l)).collect();
                if !member.is_empty() {
                    flat_families[i].push(member);
                }
            }
        }
    }
    flat_families[p].push(vec![0]);

    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); p + 1];
    for w in 0..t.len() {
        let letters = t.word(w).letters();
        let class = match letters.iter().rposition(|&l| deep(l)) {
            None => p,
            Some(m) => {
                let l = letters[m] as usize;
                base.iter().position(|fam| fam.iter().any(|u| u.contains(&l))).expect("covered point")
            }
        };
        classes[class].push(w);
    }
    // every class lies in the cone over its flat family, by direct unfolding
    for (i, class) in classes.iter().enumerate() {
        let bases: Vec<usize> = flat_families[i].iter().flatten().copied().collect();
        let reach = cone(&bases, &cone_scale, t);
        if let Some(&w) = class.iter().find(|w| reach.binary_search(w).is_err()) {
            return Err(Error::rejected("cone decomposition", format!("word {w} lies outside the cone of class {}", i + 1)));
        }
    }
    for (i, fam) in flat_families.iter().enumerate().take(p) {
        let gauge = Gauge::words(t.clone(), ProductEntourage::new(used[i].0.symmetrized(), t.ground().basepoint(), used[i].1));
        if let Some((a, b)) = gauge.disjointness_violation(fam) {
            return Err(Error::rejected("cone decomposition", format!("family {} is not disjoint at words {a} and {b}", i + 1)));
        }
        if let Some(m) = fam.iter().find(|m| is_flat(&m.iter().map(|&w| t.word(w).clone()).collect::<Vec<_>>()).is_none()) {
            return Err(Error::rejected("cone decomposition", format!("member starting at word {} is not flat", m[0])));
        }
    }
    let measure = Gauge::words(t.clone(), ProductEntourage::from_metric(top.clone(), 0));
    let diameter = flat_families.iter().flatten().filter_map(|m| measure.measured_diameter(m)).max().unwrap_or(ExtendedCount::ZERO);
    if !diameter.is_finite() {
        return Err(Error::rejected("cone decomposition", "flat members are not bounded"));
    }
    Ok(ConeCover { p, scales: used, n, cone_scale, flat_families, classes, diameter })
}

/// Cones over flat sets, each with a two-family cover at a requested scale.
#[derive(Clone, Debug)]
pub struct ConesOverFlats {
    pub flat_witnesses: Vec<usize>,
    pub cones: Vec<Vec<usize>>,
    /// First cone word outside `x_α · *B(x0, K^n ∪ L)`, as `(α, word)`.
    pub containment_failure: Option<(usize, usize)>,
    pub covers: Vec<CoverWitness>,
    pub diameter: u64,
}

/// Checks `A_α × A_α ⊆ ⟨K, n⟩` and flatness, forms `con_L(A_α)`, tests the
/// containment `con_L(A_α) ⊆ x_α · *B(x0, K^n ∪ L)`, and covers every cone
/// with two families of tree pieces rooted at its flat witness. The covers
/// are checked at `scale` with one common measured bound.
pub fn check_cones_over_flats(
    t: &Arc<Truncation>,
    flats: &[Vec<usize>],
    k: &Relation,
    n: u64,
    l: &Relation,
    scale: &ProductEntourage,
) -> Result<ConesOverFlats> {
    let base = t.ground().basepoint();
    let bounded = WordMetric::new(k.clone(), base);
    let mut flat_witnesses = Vec::new();
    for (alpha, a) in flats.iter().enumerate() {
        let words: Vec<Word> = a.iter().map(|&w| t.word(w).clone()).collect();
        let x = is_flat(&words).ok_or_else(|| Error::Precondition(format!("set {alpha} is not flat")))?;
        flat_witnesses.push(t.index_of(&x).expect("prefix of a truncation word"));
        for u in &words {
            if let Some(v) = words.iter().find(|v| !bounded.dstar(u, v).le(n)) {
                return Err(Error::Precondition(format!("set {alpha}: {u:?} and {v:?} are not within ⟨K, {n}⟩")));
            }
        }
    }
    let reach = k.power(n as usize).union(l)?;
    let ball: BTreeSet<u32> = reach.symmetric_ball(base).into_iter().map(|x| x as u32).collect();
    let cones: Vec<Vec<usize>> = flats.iter().map(|a| cone(a, l, t)).collect();
    let mut containment_failure = None;
    for (alpha, c) in cones.iter().enumerate() {
        let x = t.word(flat_witnesses[alpha]);
        let bad = c.iter().find(|&&w| {
            let word = t.word(w);
            word.strip_prefix(x).is_none_or(|rest| !rest.letters().iter().all(|l| ball.contains(l)))
        });
        if let Some(&w) = bad {
            containment_failure = Some((alpha, w));
            break;
        }
    }
    let joined = k.union(l)?.union(scale.base())?.symmetrized();
    let metric = WordMetric::new(joined, base);
    let measure = Gauge::words(t.clone(), ProductEntourage::from_metric(metric.clone(), 0));
    let pieces: Vec<[Vec<Vec<usize>>; 2]> = cones
        .iter()
        .zip(&flat_witnesses)
        .map(|(c, &x)| tree_pieces(t, c, t.order_of(x), scale.threshold() + 1))
        .collect();
    let diameter = pieces.iter().flatten().flatten().filter_map(|m| measure.measured_diameter(m)).max().unwrap_or(ExtendedCount::ZERO);
    let diameter = diameter.finite().ok_or_else(|| Error::rejected("cones over flats", "cone pieces are not bounded"))?;
    let bound = Gauge::words(t.clone(), ProductEntourage::from_metric(metric, diameter));
    let mut covers = Vec::new();
    for (c, fams) in cones.iter().zip(pieces) {
        let w = CoverWitness { domain: Some(c.clone()), families: fams.to_vec(), scale: Gauge::words(t.clone(), scale.clone()), bound: bound.clone() };
        if let Some(f) = check_witness(&w).failure {
            return Err(Error::rejected("cones over flats", format!("{f:?}")));
        }
        covers.push(w);
    }
    Ok(ConesOverFlats { flat_witnesses, cones, containment_failure, covers, diameter })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub component: Vec<usize>,
    /// Smallest order in the component.
    pub k0: usize,
    pub base_layer: Vec<usize>,
    pub flat_witness: Option<Word>,
    pub base_layer_diameter: ExtendedCount,
    /// First word of the component outside `con_{M ∪ L^n ∪ D}(C_{k0})`.
    pub containment_failure: Option<usize>,
}

/// Components of a cone `con_M(A)` under `⟨L̂, n⟩`, with their lowest layers.
#[derive(Clone, Debug)]
pub struct ComponentAnalysis {
    pub cone: Vec<usize>,
    /// Largest `D*_{L̂}` diameter of a `⟨L̂, n⟩`-component of `A`.
    pub d: u64,
    pub components: Vec<ComponentReport>,
}

impl ComponentAnalysis {
    pub fn all_certified(&self) -> bool {
        self.components.iter().all(|c| c.flat_witness.is_some() && c.base_layer_diameter.le(self.d) && c.containment_failure.is_none())
    }
}

pub fn analyze_components(t: &Arc<Truncation>, a: &[usize], m: &Relation, l: &Relation, n: u64) -> Result<ComponentAnalysis> {
    let base = t.ground().basepoint();
    let lhat = l.symmetrized();
    let metric = WordMetric::new(lhat.clone(), base);
    for &w in a {
        let last = t.word(w).last();
        if last.is_none_or(|x| metric.out_cost(x).le(n)) {
            return Err(Error::rejected("component analysis", format!("word {w} does not end outside B(x0, L^{n})")));
        }
    }
    let pe = ProductEntourage::from_metric(metric.clone(), n);
    let measure = Gauge::words(t.clone(), ProductEntourage::from_metric(metric.clone(), 0));
    let mut sorted_a = a.to_vec();
    sorted_a.sort_unstable();
    sorted_a.dedup();
    let d = components(&sorted_a, &pe, t)
        .iter()
        .filter_map(|c| measure.measured_diameter(c))
        .max()
        .unwrap_or(ExtendedCount::ZERO)
        .finite()
        .ok_or_else(|| Error::rejected("component analysis", "components of A are not bounded"))?;
    let cone_set = cone(&sorted_a, m, t);
    let reach = m.union(&lhat.power(n as usize))?.union(&lhat.power(d as usize))?;
    let ball: BTreeSet<u32> = reach.symmetric_ball(base).into_iter().map(|x| x as u32).collect();
    let mut reports = Vec::new();
    for comp in components(&cone_set, &pe, t) {
        let k0 = comp.iter().map(|&w| t.order_of(w)).min().expect("nonempty component");
        let base_layer: Vec<usize> = comp.iter().copied().filter(|&w| t.order_of(w) == k0).collect();
        let words: Vec<Word> = base_layer.iter().map(|&w| t.word(w).clone()).collect();
        let containment_failure = comp.iter().copied().find(|&w| {
            !base_layer.iter().any(|&c| {
                t.word(w).strip_prefix(t.word(c)).is_some_and(|rest| rest.letters().iter().all(|x| ball.contains(x)))
            })
        });
        reports.push(ComponentReport {
            k0,
            flat_witness: is_flat(&words),
            base_layer_diameter: measure.measured_diameter(&base_layer).unwrap_or(ExtendedCount::ZERO),
            base_layer,
            containment_failure,
            component: comp,
        });
    }
    Ok(ComponentAnalysis { cone: cone_set, d, components: reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::GroundSet;

    fn path(n: usize) -> Relation {
        let mut r = Relation::diagonal(n);
        for i in 0..n - 1 {
            r.insert(i, i + 1);
            r.insert(i + 1, i);
        }
        r
    }

    fn trunc(points: usize, order: usize) -> Arc<Truncation> {
        let g = GroundSet::new(points, 0).unwrap();
        Arc::new(Truncation::enumerate(&g, &g.letters(), order, 100_000).unwrap())
    }

    fn idx(t: &Truncation, w: &[u32]) -> usize {
        t.index_of(&Word::from_raw(w.to_vec())).unwrap()
    }

    fn alternating(points: usize, width: usize) -> Vec<Vec<Vec<usize>>> {
        let blocks: Vec<Vec<usize>> = (0..points).collect::<Vec<_>>().chunks(width).map(<[usize]>::to_vec).collect();
        (0..2).map(|p| blocks.iter().skip(p).step_by(2).cloned().collect()).collect()
    }

    #[test]
    fn epsilon_only_truncation() {
        let t = trunc(6, 0);
        let scales = vec![ProductEntourage::new(path(6), 0, 1); 3];
        let cc = cone_decomposition(&t, &scales, &alternating(6, 3)).unwrap();
        assert_eq!(cc.classes[2], vec![0]);
    }

    #[test]
    fn assignment_follows_the_last_deep_letter() {
        let t = trunc(10, 3);
        let scales = vec![ProductEntourage::new(path(10), 0, 1), ProductEntourage::new(path(10), 0, 1), ProductEntourage::new(path(10), 0, 2)];
        let base = alternating(10, 3);
        let cc = cone_decomposition(&t, &scales, &base).unwrap();
        let class_of = |w: usize| cc.classes.iter().position(|c| c.contains(&w)).unwrap();
        // every letter within two steps of the basepoint: the cone over ε
        assert_eq!(class_of(idx(&t, &[1, 2, 1])), 2);
        // last deep letter 7 sits in block {6,7,8}, base family 0
        assert_eq!(class_of(idx(&t, &[4, 7, 1])), 0);
        assert_eq!(class_of(idx(&t, &[7, 4, 2])), 1);
        let total: usize = cc.classes.iter().map(Vec::len).sum();
        assert_eq!(total, t.len());
    }

    #[test]
    fn flat_families_are_separated_beyond_n_i() {
        let t = trunc(8, 3);
        let scales = vec![ProductEntourage::new(path(8), 0, 1), ProductEntourage::new(path(8), 0, 1), ProductEntourage::new(path(8), 0, 1)];
        let cc = cone_decomposition(&t, &scales, &alternating(8, 2)).unwrap();
        let m = WordMetric::new(path(8), 0);
        // exhaustive pair scan over distinct members of each family
        for (i, fam) in cc.flat_families.iter().enumerate().take(2) {
            for (a, u) in fam.iter().enumerate() {
                for v in fam.iter().skip(a + 1) {
                    for &x in u {
                        for &y in v {
                            let d = m.dstar(t.word(x), t.word(y));
                            assert!(!d.le(scales[i].threshold()), "family {i}: {x} {y}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_base_covers() {
        let t = trunc(6, 2);
        let scales = vec![ProductEntourage::new(path(6), 0, 1); 3];
        let adjacent = vec![vec![vec![0, 1], vec![2, 3]], vec![vec![4, 5]]];
        assert!(cone_decomposition(&t, &scales, &adjacent).is_err());
        let partial = vec![vec![vec![0, 1, 2]], vec![vec![4, 5]]];
        assert!(cone_decomposition(&t, &scales, &partial).is_err());
        let descending = vec![ProductEntourage::new(path(6), 0, 2), ProductEntourage::new(path(6), 0, 1), ProductEntourage::new(path(6), 0, 1)];
        assert!(cone_decomposition(&t, &descending, &alternating(6, 3)).is_err());
    }

    #[test]
    fn cones_over_singletons_and_pairs() {
        let t = trunc(6, 3);
        let e = path(6);
        let scale = ProductEntourage::new(e.clone(), 0, 1);
        let singles: Vec<Vec<usize>> = vec![vec![idx(&t, &[3])], vec![idx(&t, &[5, 4])]];
        let out = check_cones_over_flats(&t, &singles, &e, 1, &e, &scale).unwrap();
        assert!(out.containment_failure.is_none());
        assert!(out.covers.iter().all(|c| c.families.len() == 2));
        // near the basepoint: x·1 and x·2 with K-steps from x0 within n
        let pair = vec![vec![idx(&t, &[4, 1]), idx(&t, &[4, 2])]];
        let out = check_cones_over_flats(&t, &pair, &e, 2, &e, &scale).unwrap();
        assert!(out.containment_failure.is_none());
        // an empty L leaves the flat as its own cone
        let out = check_cones_over_flats(&t, &pair, &e, 2, &Relation::empty(6), &scale).unwrap();
        assert_eq!(out.cones[0], pair[0]);
    }

    #[test]
    fn pair_far_from_the_basepoint_breaks_the_containment() {
        // x·4 and x·5 are one step apart, yet neither letter is within K^1 of x0
        let t = trunc(6, 3);
        let e = path(6);
        let pair = vec![vec![idx(&t, &[1, 4]), idx(&t, &[1, 5])]];
        let out = check_cones_over_flats(&t, &pair, &e, 1, &e, &ProductEntourage::new(e.clone(), 0, 1)).unwrap();
        assert_eq!(out.containment_failure, Some((0, idx(&t, &[1, 4]))));
        assert!(out.covers.iter().all(|c| check_witness(c).is_valid()));
        assert!(check_cones_over_flats(&t, &[vec![idx(&t, &[1]), idx(&t, &[2, 3])]], &e, 9, &e, &ProductEntourage::new(e.clone(), 0, 1)).is_err());
    }

    #[test]
    fn component_examples() {
        let t = trunc(8, 3);
        let l = path(8);
        let small_m = Relation::diagonal(8);
        let single = analyze_components(&t, &[idx(&t, &[6])], &small_m, &l, 1).unwrap();
        assert_eq!(single.components.len(), 1);
        assert_eq!(single.components[0].base_layer, vec![idx(&t, &[6])]);
        let two = analyze_components(&t, &[idx(&t, &[6]), idx(&t, &[1, 7])], &small_m, &l, 1).unwrap();
        assert_eq!(two.components.len(), 2);
        assert!(analyze_components(&t, &[idx(&t, &[1])], &small_m, &l, 1).is_err());
    }

    #[test]
    fn flat_pair_component_certificates() {
        let t = trunc(8, 3);
        let l = path(8);
        let m = path(8);
        let a = vec![idx(&t, &[2, 5]), idx(&t, &[2, 6])];
        let out = analyze_components(&t, &a, &m, &l, 1).unwrap();
        assert!(out.all_certified(), "{out:?}");
    }
}
