//! Finite binary relations on an indexed ground set.
//!
//! A [`Relation`] is a dense bit matrix: row `i` holds the set
//! `{j : (i, j) in E}`. Composition is a boolean matrix product, and the
//! extended distance `D_E(x, y) = min { k : (x, y) in E^k }` is computed by
//! breadth-first saturation over walk lengths.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};
use crate::exec::Exec;

/// Largest ground set accepted by the dense representation.
pub const MAX_POINTS: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    size: usize,
    basepoint: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(size: usize, basepoint: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Domain("ground set must have at least one point".into()));
        }
        if size > MAX_POINTS {
            return Err(Error::Resource {
                what: "ground set".into(),
                count: size as u128,
                cap: MAX_POINTS as u128,
            });
        }
        if basepoint >= size {
            return Err(Error::Domain(format!("basepoint {basepoint} out of range for {size} points")));
        }
        Ok(GroundSet { size, basepoint, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::Domain(format!(
                "expected {} labels, got {}",
                self.size,
                labels.len()
            )));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::Domain("labels must be distinct".into()));
        }
        if labels.iter().any(|l| l.is_empty() || l == "@" || l.contains(['.', ' ', '\t'])) {
            return Err(Error::Domain("labels must be nonempty and free of '.', '@' and whitespace".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of a point; the index itself when no labels are set.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|x| x == label),
            None => label.parse::<usize>().ok().filter(|&i| i < self.size),
        }
    }

    /// Non-basepoint indices, ascending.
    pub fn letters(&self) -> Vec<u32> {
        (0..self.size).filter(|&i| i != self.basepoint).map(|i| i as u32).collect()
    }
}

/// A value in `Z>=0 ∪ {+inf}` with saturating addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedCount {
    Finite(u64),
    Infinite,
}

pub use ExtendedCount::{Finite, Infinite};

impl ExtendedCount {
    pub const ZERO: ExtendedCount = Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Finite(v) => Some(v),
            Infinite => None,
        }
    }

    pub fn le(self, n: u64) -> bool {
        matches!(self, Finite(v) if v <= n)
    }
}

impl Ord for ExtendedCount {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => Ordering::Less,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Infinite, Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtendedCount {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for ExtendedCount {
    type Output = ExtendedCount;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Finite(a), Finite(b)) => a.checked_add(b).map(Finite).unwrap_or(Infinite),
            _ => Infinite,
        }
    }
}

impl std::iter::Sum for ExtendedCount {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExtendedCount::ZERO, |a, b| a + b)
    }
}

impl From<u64> for ExtendedCount {
    fn from(v: u64) -> Self {
        Finite(v)
    }
}

impl fmt::Display for ExtendedCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(v) => write!(f, "{v}"),
            Infinite => f.write_str("inf"),
        }
    }
}

const WORD_BITS: usize = 64;

/// A binary relation on `{0, .., size-1}` stored as a dense bit matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    size: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Relation").field("size", &self.size).field("pairs", &self.pairs()).finish()
    }
}

impl Relation {
    pub fn empty(size: usize) -> Self {
        let stride = size.div_ceil(WORD_BITS).max(1);
        Relation { size, stride, bits: vec![0; stride * size] }
    }

    pub fn full(size: usize) -> Self {
        let mut r = Relation::empty(size);
        for i in 0..size {
            for j in 0..size {
                r.insert(i, j);
            }
        }
        r
    }

    pub fn from_pairs<I>(size: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut r = Relation::empty(size);
        for (i, j) in pairs {
            if i >= size || j >= size {
                return Err(Error::Domain(format!("pair ({i},{j}) out of range for {size} points")));
            }
            r.insert(i, j);
        }
        Ok(r)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize, j: usize) {
        self.bits[i * self.stride + j / WORD_BITS] |= 1 << (j % WORD_BITS);
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        self.bits[i * self.stride + j / WORD_BITS] &= !(1 << (j % WORD_BITS));
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    /// Iterates `{j : (i, j) in self}` in ascending order.
    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let t = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * WORD_BITS + t)
            })
        })
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size).flat_map(|i| self.successors(i).map(move |j| (i, j))).collect()
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    fn check_same(&self, other: &Relation) -> Result<()> {
        if self.size != other.size {
            return Err(Error::GroundMismatch { left: self.size, right: other.size });
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0))
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.check_same(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect();
        Ok(Relation { size: self.size, stride: self.stride, bits })
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.check_same(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect();
        Ok(Relation { size: self.size, stride: self.stride, bits })
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.inverse()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size).all(|i| self.contains(i, i))
    }

    /// `E ∘ F = {(x, z) : (x, y) in E and (y, z) in F for some y}`.
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        self.check_same(other)?;
        let mut out = Relation::empty(self.size);
        for i in 0..self.size {
            let dst = i * out.stride;
            for y in self.successors(i) {
                for (w, &b) in other.row(y).iter().enumerate() {
                    out.bits[dst + w] |= b;
                }
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Relation {
        let mut out = Relation::empty(self.size);
        for (i, j) in self.pairs() {
            out.insert(j, i);
        }
        out
    }

    pub fn diagonal(size: usize) -> Relation {
        let mut out = Relation::empty(size);
        for i in 0..size {
            out.insert(i, i);
        }
        out
    }

    /// `E^0 = E ∩ Δ`; `E^k` is the k-fold composition for `k >= 1`.
    pub fn power(&self, k: usize) -> Relation {
        if k == 0 {
            let mut out = Relation::empty(self.size);
            for i in (0..self.size).filter(|&i| self.contains(i, i)) {
                out.insert(i, i);
            }
            return out;
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.compose(self).expect("same ground set");
        }
        acc
    }

    /// `E ∪ E^{-1} ∪ Δ`, the smallest reflexive symmetric relation containing `E`.
    pub fn symmetrized(&self) -> Relation {
        self.union(&self.inverse())
            .and_then(|r| r.union(&Relation::diagonal(self.size)))
            .expect("same ground set")
    }

    /// Minimal walk length `k` with `(x, y) in E^k`, or infinity.
    pub fn d_e(&self, x: usize, y: usize) -> ExtendedCount {
        if x == y && self.contains(x, x) {
            return Finite(0);
        }
        self.walk_lengths_from(x)[y]
    }

    /// `D_E(x, ·)` for every target, by breadth-first search over walk lengths.
    ///
    /// Level 1 is the row of `x`; the source itself only gets distance 0 when
    /// `(x, x) in E`, otherwise it is reached by its shortest closed walk.
    pub fn walk_lengths_from(&self, x: usize) -> Vec<ExtendedCount> {
        let mut dist = vec![Infinite; self.size];
        let mut queue = VecDeque::new();
        if self.contains(x, x) {
            dist[x] = Finite(0);
        }
        for y in self.successors(x) {
            if dist[y] == Infinite {
                dist[y] = Finite(1);
                queue.push_back(y);
            }
        }
        while let Some(v) = queue.pop_front() {
            let Finite(dv) = dist[v] else { unreachable!() };
            for w in self.successors(v) {
                if dist[w] == Infinite {
                    dist[w] = Finite(dv + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// `D_E(x, A) = min_{a in A} D_E(x, a)`; infinity for empty `A`.
    pub fn d_e_to_set(&self, x: usize, set: &[usize]) -> ExtendedCount {
        let row = self.walk_lengths_from(x);
        let mut best = Infinite;
        for &a in set {
            let d = if a == x && self.contains(x, x) { Finite(0) } else { row[a] };
            best = best.min(d);
        }
        best
    }

    /// `E_x ∪ E^x`: everything related to `x` in either direction.
    pub fn symmetric_ball(&self, x: usize) -> Vec<usize> {
        let mut out: BTreeSet<usize> = self.successors(x).collect();
        out.extend((0..self.size).filter(|&y| self.contains(y, x)));
        out.into_iter().collect()
    }

    /// Transitive closure by repeated squaring of `self ∪ self∘self`.
    pub fn transitive_closure(&self) -> Relation {
        let mut acc = self.clone();
        loop {
            let next = acc.union(&acc.compose(&acc).expect("same size")).expect("same size");
            if next == acc {
                return acc;
            }
            acc = next;
        }
    }
}

/// All-pairs `D_E` for one relation.
#[derive(Clone, Debug)]
pub struct DistanceTable {
    size: usize,
    cells: Vec<ExtendedCount>,
}

impl DistanceTable {
    pub fn new(rel: &Relation) -> Self {
        Self::with_exec(rel, Exec::default())
    }

    pub fn with_exec(rel: &Relation, exec: Exec) -> Self {
        let n = rel.size();
        let rows = exec.map_range(n, |x| rel.walk_lengths_from(x));
        DistanceTable { size: n, cells: rows.into_iter().flatten().collect() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> ExtendedCount {
        self.cells[x * self.size + y]
    }

    /// Largest finite entry, ignoring infinite ones.
    pub fn max_finite(&self) -> u64 {
        self.cells.iter().filter_map(|c| c.finite()).max().unwrap_or(0)
    }
}
