use std::collections::HashMap;
use std::sync::Arc;

use super::base::BaseCover;
use super::levels::LevelCovers;
use super::tree::{build_tree, tree_witness};
use super::{check_witness, CoverWitness};
use crate::coarse_space::CoarseMap;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::free_product::{translate_indices, ProductEntourage, Truncation, WordMetric};
use crate::gauge::Gauge;

/// Combines a cover of the target of `f` with covers of the preimages of
/// its members into `W_{i,j} = { U^V : V in V_j, U^V in U_i^V }`.
///
/// `fibers` lists one witness per member of `cover_y`, in family order then
/// member order; all fibers share the family count and a scale containing
/// `scale`. Output family `i * (k+1) + j` is `W_{i,j}`.
pub fn fibering_cover(f: &CoarseMap, scale: &Gauge, cover_y: &CoverWitness, fibers: &[CoverWitness]) -> Result<CoverWitness> {
    if let Some(fail) = check_witness(cover_y).failure {
        return Err(Error::rejected("fibering: target cover", format!("{fail:?}")));
    }
    if scale.universe_len() != f.source_len() || cover_y.universe_len() != f.target_len() {
        return Err(Error::GroundMismatch { left: scale.universe_len(), right: f.source_len() });
    }
    let pushed = Exec::default().find_first(f.source_len(), |x| {
        scale
            .neighbors(x)
            .into_iter()
            .find(|&y| !cover_y.scale.related(f.apply(x), f.apply(y)))
            .map(|y| (x, y))
    });
    if let Some((x, y)) = pushed {
        return Err(Error::rejected("fibering: target scale", format!("pair ({x}, {y}) is not pushed into the target scale")));
    }
    let members: Vec<&Vec<usize>> = cover_y.families.iter().flatten().collect();
    if members.len() != fibers.len() {
        return Err(Error::rejected("fibering: fibers", format!("{} fibers for {} members", fibers.len(), members.len())));
    }
    let n1 = fibers.first().map_or(1, CoverWitness::family_count);
    let mut bound: Option<Gauge> = None;
    for (t, (v, fw)) in members.iter().zip(fibers).enumerate() {
        if fw.family_count() != n1 {
            return Err(Error::rejected("fibering: fibers", format!("fiber {t} has {} families, expected {n1}", fw.family_count())));
        }
        let target: std::collections::BTreeSet<usize> = v.iter().copied().collect();
        let mut domain = fw.domain_elements();
        domain.sort_unstable();
        if domain != f.preimage(&target) {
            return Err(Error::rejected("fibering: fibers", format!("fiber {t} does not cover the preimage of its member")));
        }
        if let Some(fail) = check_witness(fw).failure {
            return Err(Error::rejected("fibering: fibers", format!("fiber {t}: {fail:?}")));
        }
        if !scale.is_within(&fw.scale) {
            return Err(Error::rejected("fibering: fibers", format!("fiber {t} is checked at a smaller scale")));
        }
        bound = Some(match bound {
            None => fw.bound.clone(),
            Some(b) => b.join(&fw.bound)?,
        });
    }
    let k1 = cover_y.family_count();
    let mut families = vec![Vec::new(); n1 * k1];
    let mut t = 0;
    for (j, fam) in cover_y.families.iter().enumerate() {
        for _ in fam {
            for (i, fiber_family) in fibers[t].families.iter().enumerate() {
                families[i * k1 + j].extend(fiber_family.iter().cloned());
            }
            t += 1;
        }
    }
    let domain = cover_y.domain.as_ref().map(|d| f.preimage(&d.iter().copied().collect()));
    let bound = bound.unwrap_or_else(|| scale.clone());
    let w = CoverWitness { domain, families, scale: scale.clone(), bound };
    match check_witness(&w).failure {
        None => Ok(w),
        Some(fail) => Err(Error::rejected("fibering: output", format!("{fail:?}"))),
    }
}

/// A checked cover of a truncation at a requested `⟨E, n⟩`, with the
/// intermediate data the construction went through.
#[derive(Clone, Debug)]
pub struct FreeProductCover {
    pub witness: CoverWitness,
    pub tree_radius: u64,
    pub tree_pieces: usize,
    /// Distinct relative layer ranges whose covers were computed.
    pub fiber_shapes: usize,
}

/// Covers the truncation at `pe` with `2 (k+1)` families, where `k+1` is the
/// base provider's family count.
///
/// The base relation is symmetrized; the tree cover at radius `n + 1` is
/// pulled back along the word-to-vertex map, and every tree piece (all words
/// below one anchor with orders in a window) gets a translate of one layer
/// cover per window shape.
pub fn free_product_cover(t: Arc<Truncation>, pe: &ProductEntourage, base: &dyn BaseCover) -> Result<FreeProductCover> {
    if pe.base().size() != t.ground().size() {
        return Err(Error::GroundMismatch { left: pe.base().size(), right: t.ground().size() });
    }
    let n = pe.threshold();
    let sym = WordMetric::new(pe.base().symmetrized(), t.ground().basepoint());
    let tree = build_tree(t.clone());
    let radius = n + 1;
    let cover_y = tree_witness(&tree, radius)?;
    let r = radius as usize;
    let mut covers = LevelCovers::new(&t, &sym, base)?;
    let mut shapes: HashMap<(usize, usize), usize> = HashMap::new();
    let scale = Gauge::words(t.clone(), ProductEntourage::from_metric(sym.clone(), n));
    let mut fibers = Vec::new();
    let mut pending = Vec::new();
    for member in cover_y.families.iter().flatten() {
        let a = (tree.depth(member[0]) / r) * r;
        let anchor_depth = a.saturating_sub(r);
        let anchor = t.ancestor(member[0], anchor_depth);
        let lo = a - anchor_depth;
        let hi = (a + r - 1).min(t.max_order()) - anchor_depth;
        let cover = covers.layers(lo, hi, n).map_err(|e| match e {
            Error::Precondition(m) => Error::rejected("base cover", m),
            other => other,
        })?;
        let next = shapes.len();
        shapes.entry((lo, hi)).or_insert(next);
        let families: Vec<Vec<Vec<usize>>> = cover
            .families
            .iter()
            .map(|fam| fam.iter().map(|m| translate_indices(&t, anchor, m)).collect())
            .collect();
        pending.push((member.clone(), families, cover.diameter));
    }
    let diameter = pending.iter().map(|p| p.2).max().unwrap_or(0);
    let bound = Gauge::words(t.clone(), ProductEntourage::from_metric(sym.clone(), diameter));
    for (member, families, _) in pending {
        let mut domain = member;
        domain.sort_unstable();
        fibers.push(CoverWitness { domain: Some(domain), families, scale: scale.clone(), bound: bound.clone() });
    }
    let combined = fibering_cover(&tree.map(), &scale, &cover_y, &fibers)?;
    // report the measured diameter rather than the construction's estimate
    let measured = Exec::default()
        .map_range(combined.families.len(), |i| {
            combined.families[i].iter().filter_map(|m| combined.bound.measured_diameter(m)).max()
        })
        .into_iter()
        .flatten()
        .max()
        .and_then(|d| d.finite())
        .unwrap_or(0);
    let bound = Gauge::words(t.clone(), ProductEntourage::from_metric(sym.clone(), measured));
    let witness = CoverWitness { domain: None, families: combined.families, scale: Gauge::words(t.clone(), pe.clone()), bound };
    if let Some(fail) = check_witness(&witness).failure {
        return Err(Error::rejected("free product cover", format!("{fail:?}")));
    }
    Ok(FreeProductCover { witness, tree_radius: radius, tree_pieces: fibers.len(), fiber_shapes: shapes.len() })
}
