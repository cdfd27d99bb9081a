use std::sync::Arc;

use super::cones::{cone_decomposition, ConeCover};
use super::{check_pc_witness, PropertyCWitness};
use crate::dimension::{tree_pieces, CoverWitness};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::free_product::{components, ProductEntourage, Truncation, WordMetric};
use crate::gauge::Gauge;

/// A checked property C witness together with its cone decomposition.
#[derive(Clone, Debug)]
pub struct PcBuild {
    pub witness: PropertyCWitness,
    pub cones: ConeCover,
    /// `⟨E', n'⟩`-components split into tree pieces, over all classes.
    pub components: usize,
    pub diameter: u64,
}

/// Builds `2 (p+1)` families for the ascending `scales`, given `p` base
/// families on the letters.
///
/// The scale list is padded with its last entry to `2 (p+1)` entries. Class
/// `i` of the cone decomposition is split into components at the odd scale
/// `2i+1` and each component into two families of tree pieces, which become
/// families `2i` and `2i+1`.
pub fn pc_witness(t: &Arc<Truncation>, scales: &[ProductEntourage], base: &[Vec<Vec<usize>>]) -> Result<PcBuild> {
    let last = scales.last().ok_or_else(|| Error::Precondition("property C needs at least one scale".into()))?;
    let p = base.len();
    let mut padded = scales.to_vec();
    padded.resize(padded.len().max(2 * (p + 1)), last.clone());
    let basepoint = t.ground().basepoint();
    let sym = |pe: &ProductEntourage| ProductEntourage::new(pe.base().symmetrized(), basepoint, pe.threshold());
    let sub: Vec<ProductEntourage> = (0..=p).map(|i| padded[2 * i + 1].clone()).collect();
    let cones = cone_decomposition(t, &sub, base)?;

    let pieces = Exec::default().map_range(p + 1, |i| {
        let pe = sym(&sub[i]);
        let comps = components(&cones.classes[i], &pe, t);
        let mut fams = [Vec::new(), Vec::new()];
        for comp in &comps {
            let root = comp.iter().map(|&w| t.word(w).common_prefix_len(t.word(comp[0]))).min().unwrap_or(0);
            let [even, odd] = tree_pieces(t, comp, root, pe.threshold() + 1);
            fams[0].extend(even);
            fams[1].extend(odd);
        }
        (comps.len(), fams)
    });
    let component_count = pieces.iter().map(|p| p.0).sum();
    let families: Vec<Vec<Vec<usize>>> = pieces.into_iter().flat_map(|p| p.1).collect();

    let top = WordMetric::new(padded.iter().try_fold(padded[0].base().clone(), |acc, s| acc.union(s.base()))?.symmetrized(), basepoint);
    let measure = Gauge::words(t.clone(), ProductEntourage::from_metric(top.clone(), 0));
    let diameter = families
        .iter()
        .flatten()
        .filter_map(|m| measure.measured_diameter(m))
        .max()
        .unwrap_or(crate::relations::ExtendedCount::ZERO)
        .finite()
        .ok_or_else(|| Error::rejected("property C", "a tree piece is unbounded"))?;
    let witness = PropertyCWitness {
        scales: padded.into_iter().map(|s| Gauge::words(t.clone(), s)).collect(),
        families,
        bound: Gauge::words(t.clone(), ProductEntourage::from_metric(top, diameter)),
    };
    if let Some(f) = check_pc_witness(&witness)?.failure {
        return Err(Error::rejected("property C", format!("{f:?}")));
    }
    Ok(PcBuild { witness, cones, components: component_count, diameter })
}

/// Reads a cover by `k` families at one scale as a property C witness for
/// any ascending scales inside it.
pub fn pc_from_cover(w: &CoverWitness, scales: &[Gauge]) -> Result<PropertyCWitness> {
    if w.domain.is_some() {
        return Err(Error::Precondition("the cover must cover the whole universe".into()));
    }
    if let Some(i) = scales.iter().position(|s| !s.is_within(&w.scale)) {
        return Err(Error::Precondition(format!("scale {} is larger than the cover's scale", i + 1)));
    }
    let mut scales = scales.to_vec();
    if let Some(last) = scales.last().cloned() {
        scales.resize(scales.len().max(w.families.len()), last);
    }
    let pc = PropertyCWitness { scales, families: w.families.clone(), bound: w.bound.clone() };
    check_pc_witness(&pc)?;
    Ok(pc)
}
