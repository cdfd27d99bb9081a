//! Brute-force verifiers. Everything here works from the definitions by
//! direct enumeration: distances by explicit walk powers, `D*` by an
//! explicit common-prefix split, covers by exhaustive colouring. None of the
//! constructors or fast paths elsewhere in the crate are called.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coarse_space::MetricTable;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::relations::{GroundSet, Relation};

pub const INF_METRIC_CAP: usize = 400;
pub const BRUTE_FAMILY_CAP: usize = 24;
pub const DISTANCE_SUBSET_CAP: usize = 16;

/// Outcome of one law over one finite universe.
#[derive(Clone, Debug, PartialEq)]
pub struct LawReport {
    pub law: String,
    pub universe_size: usize,
    pub cases: u64,
    /// Present exactly when the law failed.
    pub counterexample: Option<String>,
    /// Extra `key: value` lines (seeds, constants, skipped parts).
    pub details: BTreeMap<String, String>,
}

impl LawReport {
    pub fn new(law: impl Into<String>, universe_size: usize) -> Self {
        LawReport { law: law.into(), universe_size, cases: 0, counterexample: None, details: BTreeMap::new() }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn detail(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.details.insert(key.into(), value.to_string());
        self
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({} cases", self.law, self.verdict(), self.cases)?;
        if let Some(c) = &self.counterexample {
            write!(f, "; {c}")?;
        }
        write!(f, ")")
    }
}

/// `D_E` for every ordered pair, `None` for `+inf`. Level `k` holds the
/// pairs joined by a walk of exactly `k` steps; level 0 is `E ∩ Δ`.
pub fn distance_matrix(e: &Relation) -> Vec<Vec<Option<u64>>> {
    let n = e.size();
    let mut out = vec![vec![None; n]; n];
    for (x, row) in out.iter_mut().enumerate() {
        if e.contains(x, x) {
            row[x] = Some(0);
        }
        let mut level: Vec<bool> = (0..n).map(|y| e.contains(x, y)).collect();
        for k in 1..=n as u64 {
            for y in 0..n {
                if level[y] && row[y].is_none() {
                    row[y] = Some(k);
                }
            }
            let mut next = vec![false; n];
            for z in (0..n).filter(|&z| level[z]) {
                for (y, slot) in next.iter_mut().enumerate() {
                    *slot |= e.contains(z, y);
                }
            }
            level = next;
        }
    }
    out
}

fn ext(d: Option<u64>) -> f64 {
    d.map_or(f64::INFINITY, |v| v as f64)
}

/// `D*_E` from the definition, with `+inf` as `f64::INFINITY`.
pub struct StarOracle {
    dist: Vec<Vec<Option<u64>>>,
    base: usize,
}

impl StarOracle {
    pub fn new(e: &Relation, basepoint: usize) -> Self {
        StarOracle { dist: distance_matrix(e), base: basepoint }
    }

    pub fn d(&self, x: usize, y: usize) -> f64 {
        ext(self.dist[x][y])
    }

    pub fn dstar(&self, x: &[u32], y: &[u32]) -> f64 {
        if x == y {
            return 0.0;
        }
        let mut k = 0;
        while k < x.len() && k < y.len() && x[k] == y[k] {
            k += 1;
        }
        let b = x.get(k).map_or(self.base, |&l| l as usize);
        let b2 = y.get(k).map_or(self.base, |&l| l as usize);
        let mut total = self.d(b, b2);
        for &c in x.iter().skip(k + 1) {
            total += self.d(self.base, c as usize);
        }
        for &c in y.iter().skip(k + 1) {
            total += self.d(c as usize, self.base);
        }
        total
    }
}

/// The metric `d*` from the definition.
pub fn metric_dstar(m: &MetricTable, x: &[u32], y: &[u32]) -> f64 {
    if x == y {
        return 0.0;
    }
    let base = m.ground().basepoint();
    let k = x.iter().zip(y).take_while(|(a, b)| a == b).count();
    let b = x.get(k).map_or(base, |&l| l as usize);
    let b2 = y.get(k).map_or(base, |&l| l as usize);
    let tails: f64 = x.iter().skip(k + 1).chain(y.iter().skip(k + 1)).map(|&c| m.dist(c as usize, base)).sum();
    m.dist(b, b2) + tails
}

/// All words of order at most `order` over the non-basepoint points.
pub fn all_words(ground: &GroundSet, order: usize) -> Vec<Vec<u32>> {
    let letters: Vec<u32> = (0..ground.size()).filter(|&i| i != ground.basepoint()).map(|i| i as u32).collect();
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..order {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                let mut v: Vec<u32> = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn show(ground: &GroundSet, w: &[u32]) -> String {
    if w.is_empty() {
        "@".into()
    } else {
        w.iter().map(|&l| ground.label(l as usize)).collect::<Vec<_>>().join(".")
    }
}

/// The four clauses for `D_E`: symmetry, zero exactly on the diagonal, the
/// triangle inequality, and `|D(w, A) - D(z, A)| <= D(w, z)` over every
/// nonempty `A`.
pub fn verify_distance_axioms(e: &Relation) -> Result<LawReport> {
    let n = e.size();
    if n > DISTANCE_SUBSET_CAP {
        return Err(Error::Resource { what: "subsets for the set-distance clause".into(), count: 1u128 << n, cap: 1u128 << DISTANCE_SUBSET_CAP });
    }
    let d = distance_matrix(e);
    let dd = |x: usize, y: usize| ext(d[x][y]);
    let mut report = LawReport::new("distance axioms", n);
    let fail = Exec::default().find_first(n, |x| {
        for y in 0..n {
            if dd(x, y) != dd(y, x) {
                return Some(format!("symmetry: D({x},{y}) = {} but D({y},{x}) = {}", dd(x, y), dd(y, x)));
            }
            if (dd(x, y) == 0.0) != (x == y) {
                return Some(format!("zero: D({x},{y}) = {}", dd(x, y)));
            }
            for z in 0..n {
                if dd(x, y) > dd(x, z) + dd(z, y) {
                    return Some(format!("triangle: D({x},{y}) > D({x},{z}) + D({z},{y})"));
                }
            }
        }
        None
    });
    report.cases = (n * n * (n + 2)) as u64;
    if fail.is_some() {
        report.counterexample = fail;
        return Ok(report);
    }
    let fail = Exec::default().find_first(1usize << n, |mask| {
        if mask == 0 {
            return None;
        }
        let to_set: Vec<f64> = (0..n).map(|x| (0..n).filter(|a| mask >> a & 1 == 1).map(|a| dd(x, a)).fold(f64::INFINITY, f64::min)).collect();
        for w in 0..n {
            for z in 0..n {
                let (a, b) = (to_set[w], to_set[z]);
                // saturating: two infinite distances differ by 0
                let gap = if a == b { 0.0 } else { (a - b).abs() };
                if gap > dd(w, z) {
                    return Some(format!("set distance: A = {mask:#b}, w = {w}, z = {z}"));
                }
            }
        }
        None
    });
    report.cases += ((1u64 << n) - 1) * (n * n) as u64;
    report.counterexample = fail;
    Ok(report)
}

/// Identity of indiscernibles, symmetry and the triangle inequality over
/// all pairs and triples, with `+inf` allowed.
pub fn verify_inf_metric<F>(law: &str, labels: &[String], dist: F) -> Result<LawReport>
where
    F: Fn(usize, usize) -> f64 + Sync + Send,
{
    let n = labels.len();
    if n > INF_METRIC_CAP {
        return Err(Error::Resource { what: "points for the triple loop".into(), count: n as u128, cap: INF_METRIC_CAP as u128 });
    }
    let table: Vec<Vec<f64>> = Exec::default().map_range(n, |x| (0..n).map(|y| dist(x, y)).collect());
    let mut report = LawReport::new(law, n);
    report.cases = (n * n + n * n * n) as u64;
    report.counterexample = Exec::default().find_first(n, |x| {
        for y in 0..n {
            let d = table[x][y];
            if d.is_nan() || d < 0.0 {
                return Some(format!("d({}, {}) = {d} is not in [0, inf]", labels[x], labels[y]));
            }
            if (d == 0.0) != (x == y) {
                return Some(format!("d({}, {}) = {d}", labels[x], labels[y]));
            }
            if d != table[y][x] {
                return Some(format!("d({a}, {b}) = {d} but d({b}, {a}) = {}", table[y][x], a = labels[x], b = labels[y]));
            }
            for z in 0..n {
                if d > table[x][z] + table[z][y] {
                    return Some(format!("d({a}, {b}) > d({a}, {c}) + d({c}, {b})", a = labels[x], b = labels[y], c = labels[z]));
                }
            }
        }
        None
    });
    Ok(report)
}

/// One law about product entourages over a finite set of words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureLaw {
    /// `⟨Δ, 0⟩` contains the diagonal.
    Diagonal,
    /// `⟨E^{-1}, n⟩ = ⟨E, n⟩^{-1}`.
    Inverse,
    /// `⟨E, n⟩ ∪ ⟨E', n'⟩ ⊆ ⟨E ∪ E', n + n'⟩`.
    Union,
    /// `⟨E, n⟩ ∘ ⟨E', n'⟩ ⊆ ⟨E ∪ E', n + n'⟩`.
    Composition,
    /// `⟨E, n⟩ ∘ ⟨E', n'⟩ ⊆ ⟨E ∩ E', n + n'⟩`, which is false in general.
    IntersectionComposition,
}

impl StructureLaw {
    pub const TRUE_LAWS: [StructureLaw; 4] = [Self::Diagonal, Self::Inverse, Self::Union, Self::Composition];

    pub fn name(self) -> &'static str {
        match self {
            Self::Diagonal => "diagonal",
            Self::Inverse => "inverse",
            Self::Union => "union",
            Self::Composition => "composition",
            Self::IntersectionComposition => "composition into the intersection",
        }
    }
}

/// Word-pair membership matrix of `⟨E, n⟩`.
fn entourage_matrix(e: &Relation, base: usize, n: u64, words: &[Vec<u32>]) -> Vec<Vec<bool>> {
    let o = StarOracle::new(e, base);
    let limit = n as f64;
    Exec::default().map_range(words.len(), |i| words.iter().map(|w| o.dstar(&words[i], w) <= limit).collect())
}

/// Checks one law on all words of order at most `order`; `cap` bounds the
/// number of word pairs.
#[allow(clippy::too_many_arguments)]
pub fn verify_structure_law(
    law: StructureLaw,
    ground: &GroundSet,
    e: &Relation,
    n: u64,
    e2: &Relation,
    n2: u64,
    order: usize,
    cap: usize,
) -> Result<LawReport> {
    let words = all_words(ground, order);
    let w = words.len();
    if w.saturating_mul(w) > cap {
        return Err(Error::Resource { what: "word pairs".into(), count: (w * w) as u128, cap: cap as u128 });
    }
    let base = ground.basepoint();
    let mut report = LawReport::new(law.name(), w);
    let pair = |i: usize, j: usize| format!("({}, {})", show(ground, &words[i]), show(ground, &words[j]));
    let first = |m: &(dyn Fn(usize, usize) -> bool + Sync)| Exec::default().find_first(w, |i| (0..w).find(|&j| !m(i, j)).map(|j| pair(i, j)));
    match law {
        StructureLaw::Diagonal => {
            let d = entourage_matrix(&Relation::diagonal(ground.size()), base, 0, &words);
            report.cases = w as u64;
            report.counterexample = (0..w).find(|&i| !d[i][i]).map(|i| pair(i, i));
        }
        StructureLaw::Inverse => {
            let a = entourage_matrix(e, base, n, &words);
            let b = entourage_matrix(&e.inverse(), base, n, &words);
            report.cases = (w * w) as u64;
            report.counterexample = first(&|i, j| b[i][j] == a[j][i]);
        }
        StructureLaw::Union | StructureLaw::Composition | StructureLaw::IntersectionComposition => {
            let a = entourage_matrix(e, base, n, &words);
            let b = entourage_matrix(e2, base, n2, &words);
            let target_rel = if law == StructureLaw::IntersectionComposition { e.intersection(e2)? } else { e.union(e2)? };
            let u = entourage_matrix(&target_rel, base, n + n2, &words);
            if law == StructureLaw::Union {
                report.cases = (w * w) as u64;
                report.counterexample = first(&|i, j| !(a[i][j] || b[i][j]) || u[i][j]);
            } else {
                report.cases = (w * w * w) as u64;
                report.counterexample = Exec::default().find_first(w, |i| {
                    for k in 0..w {
                        if u[i][k] {
                            continue;
                        }
                        if let Some(j) = (0..w).find(|&j| a[i][j] && b[j][k]) {
                            return Some(format!("{} via {}", pair(i, k), show(ground, &words[j])));
                        }
                    }
                    None
                });
            }
        }
    }
    Ok(report.detail("order", order).detail("n", n).detail("n'", n2))
}

/// The four true laws, merged into one report; the first failing law
/// supplies the counterexample.
pub fn verify_structure_laws(ground: &GroundSet, e: &Relation, n: u64, e2: &Relation, n2: u64, order: usize, cap: usize) -> Result<LawReport> {
    let mut merged = LawReport::new("entourage laws", 0);
    for law in StructureLaw::TRUE_LAWS {
        let r = verify_structure_law(law, ground, e, n, e2, n2, order, cap)?;
        merged.universe_size = r.universe_size;
        merged.cases += r.cases;
        merged.details.insert(law.name().to_string(), r.verdict().into());
        if merged.counterexample.is_none() {
            merged.counterexample = r.counterexample.map(|c| format!("{}: {c}", law.name()));
        }
    }
    Ok(merged.detail("order", order).detail("n", n).detail("n'", n2))
}

fn random_word(rng: &mut ChaCha8Rng, letters: &[u32], max_order: usize) -> Vec<u32> {
    let len = rng.gen_range(0..=max_order);
    (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect()
}

/// `D*_K(a, a') = D*_K(y·a, y·a')`: exhaustively for orders up to
/// `exhaustive_order`, then on `samples` random triples of order up to
/// `deep_order`.
pub fn verify_translation_isometry(
    ground: &GroundSet,
    k: &Relation,
    exhaustive_order: usize,
    samples: usize,
    deep_order: usize,
    seed: u64,
) -> LawReport {
    let o = StarOracle::new(k, ground.basepoint());
    let words = all_words(ground, exhaustive_order);
    let letters: Vec<u32> = words.iter().filter(|w| w.len() == 1).map(|w| w[0]).collect();
    let check = |y: &[u32], a: &[u32], b: &[u32]| {
        let ya: Vec<u32> = y.iter().chain(a).copied().collect();
        let yb: Vec<u32> = y.iter().chain(b).copied().collect();
        let (lhs, rhs) = (o.dstar(a, b), o.dstar(&ya, &yb));
        (lhs != rhs).then(|| format!("y = {}, a = {}, a' = {}: {lhs} vs {rhs}", show(ground, y), show(ground, a), show(ground, b)))
    };
    let w = words.len();
    let mut report = LawReport::new("translation isometry", w);
    report.counterexample = Exec::default().find_first(w, |i| {
        words.iter().find_map(|a| words.iter().find_map(|b| check(&words[i], a, b)))
    });
    report.cases = (w * w * w) as u64;
    if report.counterexample.is_none() && !letters.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let triples: Vec<[Vec<u32>; 3]> =
            (0..samples).map(|_| [(); 3].map(|_| random_word(&mut rng, &letters, deep_order))).collect();
        report.counterexample = Exec::default().find_first(samples, |s| check(&triples[s][0], &triples[s][1], &triples[s][2]));
        report.cases += samples as u64;
    }
    report.detail("seed", seed).detail("samples", samples).detail("deep order", deep_order)
}

/// Compares `⟨ball(R), n⟩` with the metric `d*` on all words of order at
/// most `order`.
///
/// Forward: every `⟨ball(R), n⟩` pair has `d* < 3Rn`. Converse, only when the
/// gap `r` is positive: with `(k-1) r <= R < k r`, every pair with `d* < R`
/// lies in `⟨ball(R), 3k⟩`. A pair with `d* < R` has a branch pair at
/// distance below `R` (one step) and fewer than `k` tail letters on each side
/// (each costs at least `r`, one step each), so `D* <= 2k - 1 <= 3k`.
pub fn compare_bounded_structures(m: &MetricTable, order: usize, radius: f64, n: u64, cap: usize) -> Result<LawReport> {
    if !(radius > 0.0 && radius.is_finite()) || n == 0 {
        return Err(Error::Precondition("the comparison needs a finite R > 0 and n >= 1".into()));
    }
    let ground = m.ground();
    let words = all_words(ground, order);
    let w = words.len();
    if w.saturating_mul(w) > cap {
        return Err(Error::Resource { what: "word pairs".into(), count: (w * w) as u128, cap: cap as u128 });
    }
    let size = ground.size();
    let mut ball = Relation::empty(size);
    for i in 0..size {
        for j in 0..size {
            if m.dist(i, j) < radius {
                ball.insert(i, j);
            }
        }
    }
    let star = StarOracle::new(&ball, ground.basepoint());
    let rows: Vec<Vec<(f64, f64)>> =
        Exec::default().map_range(w, |i| words.iter().map(|v| (star.dstar(&words[i], v), metric_dstar(m, &words[i], v))).collect());
    let pair = |i: usize, j: usize| format!("({}, {})", show(ground, &words[i]), show(ground, &words[j]));
    let bound = 3.0 * radius * n as f64;
    let mut report = LawReport::new("bounded structure comparison", w);
    report.cases = (w * w) as u64;
    let mut ratio: f64 = 0.0;
    'forward: for i in 0..w {
        for j in 0..w {
            let (big, small) = rows[i][j];
            if big <= n as f64 {
                if !(small < bound) {
                    report.counterexample = Some(format!("forward: {} has d* = {small} >= 3Rn = {bound}", pair(i, j)));
                    break 'forward;
                }
                ratio = ratio.max(small / (radius * n as f64));
            }
        }
    }
    report = report.detail("forward max d*/(Rn)", format!("{ratio:.6}")).detail("R", radius).detail("n", n);
    let r = m.gap();
    if !(r > 0.0) {
        return Ok(report.detail("converse", format!("skipped: gap r = {r} is not positive")));
    }
    if r.is_infinite() {
        return Ok(report.detail("converse", "vacuous: a single point"));
    }
    let k = (radius / r).floor() as u64 + 1;
    let chain = format!("(k-1) r <= R < k r with r = {r}, k = {k}; D* <= 1 + 2(k-1) <= 3k = {}", 3 * k);
    report = report.detail("converse", chain);
    if report.passed() {
        let limit = (3 * k) as f64;
        report.counterexample = (0..w).find_map(|i| {
            (0..w).find_map(|j| {
                let (big, small) = rows[i][j];
                (small < radius && big > limit).then(|| format!("converse: {} has d* = {small} < R but D* = {big} > 3k", pair(i, j)))
            })
        });
        report.cases *= 2;
    }
    Ok(report)
}

/// Points `x_0 = 0` and `x_i = 2^{-i}` on the line.
pub fn dyadic_points(prefix_len: usize) -> Result<MetricTable> {
    let pos: Vec<f64> = (0..=prefix_len).map(|i| if i == 0 { 0.0 } else { 0.5f64.powi(i as i32) }).collect();
    MetricTable::from_fn(GroundSet::new(prefix_len + 1, 0)?, |i, j| (pos[i] - pos[j]).abs())
}

/// For every radius and every `k <= k_max`, the least `i <= prefix_len` with
/// `d*(ε, x_1⋯x_i) <= 1` and `D*_{ball(r)}(ε, x_1⋯x_i) > k`. Detail keys are
/// `witness r=<r> k=<k>`.
pub fn strictness_demo(prefix_len: usize, radii: &[f64], k_max: u64) -> Result<LawReport> {
    if prefix_len > 30 {
        return Err(Error::Resource { what: "prefix length".into(), count: prefix_len as u128, cap: 30 });
    }
    let m = dyadic_points(prefix_len)?;
    let mut report = LawReport::new("strict inclusion", prefix_len);
    for &r in radii {
        let mut ball = Relation::empty(prefix_len + 1);
        for i in 0..=prefix_len {
            for j in 0..=prefix_len {
                if m.dist(i, j) < r {
                    ball.insert(i, j);
                }
            }
        }
        let star = StarOracle::new(&ball, 0);
        let costs: Vec<(f64, f64)> = (1..=prefix_len)
            .map(|i| {
                let word: Vec<u32> = (1..=i as u32).collect();
                (metric_dstar(&m, &[], &word), star.dstar(&[], &word))
            })
            .collect();
        for k in 0..=k_max {
            report.cases += 1;
            let witness = costs.iter().position(|&(small, big)| small <= 1.0 && big > k as f64);
            match witness {
                Some(i) => {
                    report.details.insert(format!("witness r={r} k={k:02}"), (i + 1).to_string());
                }
                None if report.counterexample.is_none() => {
                    report.counterexample = Some(format!("r = {r}, k = {k}: no word of order <= {prefix_len} leaves ⟨ball(r), k⟩"));
                }
                None => {}
            }
        }
    }
    let full: Vec<u32> = (1..=prefix_len as u32).collect();
    Ok(report.detail("d* of the full prefix", format!("{:.12}", metric_dstar(&m, &[], &full))))
}

/// The least number of families in a cover of `0..n` that is `e`-disjoint
/// and `k`-bounded.
///
/// Points only ever need one family, and inside a family the finest members
/// are the components of `e ∪ e^{-1}`; so a colouring is valid when every
/// component of every colour class is `k`-bounded. Colourings are searched
/// with increasing colour count, new colours opened in order.
pub fn brute_min_families<E, K>(n: usize, e: E, k: K) -> Result<usize>
where
    E: Fn(usize, usize) -> bool,
    K: Fn(usize, usize) -> bool,
{
    if n > BRUTE_FAMILY_CAP {
        return Err(Error::Resource { what: "elements for the exact search".into(), count: n as u128, cap: BRUTE_FAMILY_CAP as u128 });
    }
    if let Some(x) = (0..n).find(|&x| !k(x, x)) {
        return Err(Error::Precondition(format!("point {x} lies in no bounded member: ({x}, {x}) is not in K")));
    }
    let linked: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| x != y && (e(x, y) || e(y, x))).collect()).collect();
    let bounded: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| k(x, y) && k(y, x)).collect()).collect();
    if n == 0 {
        return Ok(0);
    }
    for colours in 1..=n {
        let mut colour = vec![usize::MAX; n];
        if search(0, 0, colours, &mut colour, &linked, &bounded) {
            return Ok(colours);
        }
    }
    unreachable!("singletons in distinct families always work")
}

fn component(start: usize, colour: &[usize], linked: &[Vec<bool>]) -> Vec<usize> {
    let c = colour[start];
    let mut seen = vec![start];
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for y in 0..colour.len() {
            if colour[y] == c && linked[x][y] && !seen.contains(&y) {
                seen.push(y);
                stack.push(y);
            }
        }
    }
    seen
}

fn search(x: usize, used: usize, colours: usize, colour: &mut [usize], linked: &[Vec<bool>], bounded: &[Vec<bool>]) -> bool {
    if x == colour.len() {
        return true;
    }
    for c in 0..colours.min(used + 1) {
        colour[x] = c;
        let comp = component(x, colour, linked);
        if comp.iter().all(|&a| comp.iter().all(|&b| bounded[a][b])) && search(x + 1, used.max(c + 1), colours, colour, linked, bounded) {
            return true;
        }
    }
    colour[x] = usize::MAX;
    false
}

/// A seeded random relation on `points` points with pair density `density`.
pub fn seeded_relation(points: usize, density: f64, symmetric: bool, reflexive: bool, seed: u64) -> Relation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Relation::empty(points);
    for i in 0..points {
        for j in 0..points {
            if (symmetric && j < i) || !rng.gen_bool(density) {
                continue;
            }
            r.insert(i, j);
            if symmetric {
                r.insert(j, i);
            }
        }
        if reflexive {
            r.insert(i, i);
        }
    }
    r
}
