//! The twelve acceptance criteria. Each prints one PASS/FAIL line; the test
//! fails if any criterion does. Library results are compared against the
//! brute-force oracles and against direct computations written here.

use std::sync::Arc;
use std::time::Instant;

use coarse_free::coarse_space::{ball_relation, CoarseMap, MetricTable};
use coarse_free::dimension::{
    build_tree, check_witness, fibering_cover, free_product_cover, tree_expansiveness_bound, AnnulusBase, BoundedBase,
    CoverWitness,
};
use coarse_free::free_product::{d_star_metric, ProductEntourage, Truncation, Word, WordMetric};
use coarse_free::gauge::Gauge;
use coarse_free::oracle::{self, StarOracle, StructureLaw};
use coarse_free::property_c::{check_pc_witness, cone_decomposition, pc_witness};
use coarse_free::relations::{DistanceTable, GroundSet, Relation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

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
    Arc::new(Truncation::enumerate(&g, &g.letters(), order, 200_000).unwrap())
}

fn raw(t: &Truncation, i: usize) -> &[u32] {
    t.word(i).letters()
}

fn ext(d: coarse_free::relations::ExtendedCount) -> f64 {
    d.finite().map_or(f64::INFINITY, |v| v as f64)
}

/// Random pairs drawn from distinct members of one family must be farther
/// than `n`, and random pairs inside a member within `bound`, by the oracle.
fn sample_cover(t: &Truncation, families: &[Vec<Vec<usize>>], star: &StarOracle, n: u64, bound: u64, seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for (f, fam) in families.iter().enumerate() {
        if fam.is_empty() {
            continue;
        }
        for _ in 0..4000 {
            let a = &fam[rng.gen_range(0..fam.len())];
            let b = &fam[rng.gen_range(0..fam.len())];
            let (x, y) = (a[rng.gen_range(0..a.len())], b[rng.gen_range(0..b.len())]);
            let d = star.dstar(raw(t, x), raw(t, y));
            if std::ptr::eq(a, b) {
                ensure(d <= bound as f64, || format!("family {f}: member pair at D* = {d} > {bound}"))?;
            } else {
                ensure(d > n as f64, || format!("family {f}: members meet at D* = {d} <= {n}"))?;
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn c1_distance_axioms() -> Outcome {
    for seed in 0..200u64 {
        let points = 2 + (seed as usize % 11);
        let e = oracle::seeded_relation(points, 0.25, true, true, seed);
        let report = oracle::verify_distance_axioms(&e).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("seed {seed}: {report}"))?;
        let lib = DistanceTable::new(&e);
        let brute = oracle::distance_matrix(&e);
        for x in 0..points {
            for y in 0..points {
                ensure(lib.get(x, y).finite() == brute[x][y], || format!("seed {seed}: D({x},{y}) differs"))?;
            }
        }
    }
    Ok("200 symmetric reflexive relations on 2..=12 points; library D_E equals the walk oracle".into())
}

fn c2_inf_metric() -> Outcome {
    let mut reflexive = 0;
    for seed in 0..50u64 {
        let points = 2 + (seed as usize % 4);
        let refl = seed % 2 == 0;
        reflexive += refl as usize;
        let e = oracle::seeded_relation(points, 0.35, true, refl, 1000 + seed);
        let t = trunc(points, 2);
        let m = WordMetric::new(e, 0);
        let names: Vec<String> = t.words().iter().map(|w| w.display(t.ground())).collect();
        ensure(names.len() <= 21, || "too many words".into())?;
        let report = oracle::verify_inf_metric("D*", &names, |a, b| ext(m.dstar(t.word(a), t.word(b)))).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("seed {seed}: {report}"))?;
    }
    Ok(format!("50 symmetric relations ({reflexive} reflexive) on 2..=5 points, all triples in X^(<=2)"))
}

fn c3_structure_laws() -> Outcome {
    let mut cases = 0;
    for seed in 0..50u64 {
        let points = 3 + (seed as usize % 3);
        let g = GroundSet::new(points, 0).unwrap();
        let e = oracle::seeded_relation(points, 0.3, true, true, 2000 + seed);
        let e2 = oracle::seeded_relation(points, 0.3, true, true, 3000 + seed);
        let (n, n2) = (seed % 4, (seed / 4) % 4);
        let report = oracle::verify_structure_laws(&g, &e, n, &e2, n2, 2, 1_000_000).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("seed {seed}: {report}"))?;
        cases += report.cases;
        // the library entourage agrees with the oracle on every pair
        let t = trunc(points, 2);
        let pe = ProductEntourage::new(e.clone(), 0, n);
        let star = StarOracle::new(&e, 0);
        for a in 0..t.len() {
            for b in 0..t.len() {
                let lib = pe.contains(t.word(a), t.word(b));
                ensure(lib == (star.dstar(raw(&t, a), raw(&t, b)) <= n as f64), || format!("seed {seed}: membership of ({a}, {b})"))?;
            }
        }
    }
    let g = GroundSet::new(3, 0).unwrap();
    let mut e = Relation::diagonal(3);
    e.insert(0, 1);
    e.insert(1, 0);
    let mut e2 = Relation::diagonal(3);
    e2.insert(1, 2);
    e2.insert(2, 1);
    let sharper = oracle::verify_structure_law(StructureLaw::IntersectionComposition, &g, &e, 1, &e2, 1, 2, 10_000).unwrap();
    ensure(!sharper.passed(), || "the false intersection law was not refuted".into())?;
    Ok(format!("50 seeds, {cases} cases; false intersection law refuted at {}", sharper.counterexample.unwrap()))
}

fn c4_translation() -> Outcome {
    let g = GroundSet::new(5, 0).unwrap();
    let e = oracle::seeded_relation(5, 0.4, false, false, 44);
    let report = oracle::verify_translation_isometry(&g, &e, 1, 10_000, 6, 45);
    ensure(report.passed(), || report.to_string())?;
    // the same samples through the library metric
    let m = WordMetric::new(e, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let word = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(0..=6);
        Word::from_raw((0..len).map(|_| rng.gen_range(1..5u32)).collect())
    };
    for _ in 0..10_000 {
        let (y, a, b) = (word(&mut rng), word(&mut rng), word(&mut rng));
        ensure(m.dstar(&a, &b) == m.dstar(&y.concat(&a), &y.concat(&b)), || format!("{y:?} {a:?} {b:?}"))?;
    }
    Ok(format!("{} oracle cases (exhaustive orders <= 1, 10^4 deep), 10^4 library samples", report.cases))
}

fn c5_tree() -> Outcome {
    let t = trunc(4, 3);
    ensure(t.len() == 40, || format!("{} words", t.len()))?;
    let tree = build_tree(t.clone());
    let mut worst = 0;
    for seed in 0..20u64 {
        let e = oracle::seeded_relation(4, 0.4, seed % 3 != 0, seed % 2 == 0, 5000 + seed);
        let n = seed % 5;
        let lib = tree_expansiveness_bound(&tree, &ProductEntourage::new(e.clone(), 0, n));
        let star = StarOracle::new(&e, 0);
        let mut brute = 0;
        for a in 0..t.len() {
            for b in 0..t.len() {
                if star.dstar(raw(&t, a), raw(&t, b)) <= n as f64 {
                    let (x, y) = (raw(&t, a), raw(&t, b));
                    let common = x.iter().zip(y).take_while(|(p, q)| p == q).count();
                    brute = brute.max((x.len() + y.len() - 2 * common) as u64);
                }
            }
        }
        ensure(lib == brute, || format!("seed {seed}: library {lib}, oracle {brute}"))?;
        ensure(brute <= n + 1, || format!("seed {seed}: d_T = {brute} > n + 1 = {}", n + 1))?;
        worst = worst.max(brute as i64 - n as i64);
    }
    Ok(format!("20 seeds on 40 words; max d_T - n = {worst}"))
}

fn c6_fibering() -> Outcome {
    // thirty points on a line over six blocks of five
    let e = path(30);
    let scale = Gauge::points(e.clone());
    let f = CoarseMap::new((0..30).map(|x| x / 5).collect(), 6).unwrap();
    let target = Gauge::points(path(6));
    let cover_y = CoverWitness {
        domain: None,
        families: vec![vec![vec![0], vec![2], vec![4]], vec![vec![1], vec![3], vec![5]]],
        scale: target.clone(),
        bound: Gauge::points(Relation::diagonal(6)),
    };
    let fibers: Vec<CoverWitness> = [0, 2, 4, 1, 3, 5]
        .iter()
        .map(|&y| {
            let b = 5 * y;
            CoverWitness {
                domain: Some((b..b + 5).collect()),
                families: vec![vec![vec![b, b + 1], vec![b + 4]], vec![vec![b + 2, b + 3]]],
                scale: scale.clone(),
                bound: Gauge::points(e.clone()),
            }
        })
        .collect();
    let w = fibering_cover(&f, &scale, &cover_y, &fibers).map_err(|e| e.to_string())?;
    ensure(w.families.len() == 4, || format!("{} families", w.families.len()))?;
    ensure(check_witness(&w).is_valid(), || format!("{:?}", check_witness(&w).failure))?;
    // seeded instance through the full pipeline: the tree and a two-family base
    let t = trunc(6, 3);
    let rel = oracle::seeded_relation(6, 0.4, true, true, 66);
    let out = free_product_cover(t, &ProductEntourage::new(rel, 0, 1), &AnnulusBase).map_err(|e| e.to_string())?;
    ensure(out.witness.families.len() == 4, || format!("pipeline: {} families", out.witness.families.len()))?;
    ensure(check_witness(&out.witness).is_valid(), || "pipeline witness invalid".into())?;
    Ok(format!("direct fibering: 4 families, {} members; seeded pipeline: 4 families", w.member_count()))
}

fn c7_free_product() -> Outcome {
    let t = trunc(40, 3);
    let e = path(40);
    let star = StarOracle::new(&e, 0);
    let mut notes = Vec::new();
    for n in 1..=3u64 {
        let start = Instant::now();
        let out = free_product_cover(t.clone(), &ProductEntourage::new(e.clone(), 0, n), &AnnulusBase).map_err(|e| e.to_string())?;
        let w = &out.witness;
        ensure(w.families.len() <= 4, || format!("n = {n}: {} families", w.families.len()))?;
        let v = check_witness(w);
        ensure(v.is_valid(), || format!("n = {n}: {:?}", v.failure))?;
        let Gauge::Words { entourage, .. } = &w.bound else { return Err("bound is not a word gauge".into()) };
        sample_cover(&t, &w.families, &star, n, entourage.threshold(), 70 + n)?;
        notes.push(format!("n={n}: {} families, bound {} ({:.1?})", w.families.len(), entourage.threshold(), start.elapsed()));
    }
    Ok(format!("{} words; {}", t.len(), notes.join("; ")))
}

fn c8_bounded() -> Outcome {
    let t = trunc(6, 3);
    let b = Relation::full(6);
    let mut counts = Vec::new();
    for n in [1u64, 2, 4] {
        let out = free_product_cover(t.clone(), &ProductEntourage::new(b.clone(), 0, n), &BoundedBase).map_err(|e| e.to_string())?;
        ensure(out.witness.families.len() <= 2, || format!("n = {n}: {} families", out.witness.families.len()))?;
        ensure(check_witness(&out.witness).is_valid(), || format!("n = {n}: invalid"))?;
        counts.push(out.witness.families.len().to_string());
    }
    Ok(format!("B x B generator on 6 points, N = 3, scales n = 1, 2, 4: families {}", counts.join(", ")))
}

fn c9_property_c() -> Outcome {
    let t = trunc(20, 3);
    let e = path(20);
    let blocks: Vec<Vec<usize>> = (0..20).collect::<Vec<_>>().chunks(3).map(<[usize]>::to_vec).collect();
    let base: Vec<Vec<Vec<usize>>> = (0..2).map(|p| blocks.iter().skip(p).step_by(2).cloned().collect()).collect();
    let scales = vec![ProductEntourage::new(e.clone(), 0, 1), ProductEntourage::new(e.clone(), 0, 2)];
    let padded = vec![scales[1].clone(); 3];
    let cones = cone_decomposition(&t, &padded, &base).map_err(|e| e.to_string())?;
    let covered: usize = cones.classes.iter().map(Vec::len).sum();
    ensure(covered == t.len(), || "classes do not partition the truncation".into())?;
    let out = pc_witness(&t, &scales, &base).map_err(|e| e.to_string())?;
    let v = check_pc_witness(&out.witness).map_err(|e| e.to_string())?;
    ensure(v.is_valid(), || format!("{:?}", v.failure))?;
    let star = StarOracle::new(&e, 0);
    for (i, fam) in out.witness.families.iter().enumerate() {
        let n = scales.get(i).unwrap_or(&scales[1]).threshold();
        sample_cover(&t, std::slice::from_ref(fam), &star, n, out.diameter, 90 + i as u64)?;
    }
    Ok(format!(
        "{} words; flat diameter {}, {} families, {} components, bound {}",
        t.len(),
        cones.diameter,
        out.witness.families.len(),
        out.components,
        out.diameter
    ))
}

fn c10_comparison() -> Outcome {
    let m = MetricTable::from_fn(GroundSet::new(5, 0).unwrap(), |i, j| (i as f64 - j as f64).abs()).unwrap();
    let mut notes = Vec::new();
    for (radius, n) in [(2.5, 2), (1.5, 1), (3.0, 3), (1.0, 2)] {
        let r = oracle::compare_bounded_structures(&m, 2, radius, n, 1_000_000).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_string())?;
        // library side: ⟨ball(R), n⟩ pairs have d* < 3Rn
        let t = trunc(5, 2);
        let pe = ProductEntourage::new(ball_relation(&m, radius), 0, n);
        for a in 0..t.len() {
            for b in 0..t.len() {
                if pe.contains(t.word(a), t.word(b)) {
                    let d = d_star_metric(&m, t.word(a), t.word(b));
                    ensure(d < 3.0 * radius * n as f64, || format!("R = {radius}: d* = {d}"))?;
                }
            }
        }
        notes.push(format!("R={radius} n={n} ratio {}", r.details["forward max d*/(Rn)"]));
    }
    Ok(notes.join("; "))
}

fn c11_strictness() -> Outcome {
    let radii = [1.0, 0.5, 0.25];
    let report = oracle::strictness_demo(25, &radii, 20).map_err(|e| e.to_string())?;
    ensure(report.passed(), || report.to_string())?;
    let m = oracle::dyadic_points(25).unwrap();
    let mut largest = 0;
    for &r in &radii {
        let metric = WordMetric::new(ball_relation(&m, r), 0);
        for k in 0..=20u64 {
            let i: usize = report.details[&format!("witness r={r} k={k:02}")].parse().unwrap();
            ensure(i <= 25, || format!("r = {r}, k = {k}: witness {i}"))?;
            let w = Word::from_raw((1..=i as u32).collect());
            ensure(!metric.dstar(&Word::epsilon(), &w).le(k), || format!("library: r = {r}, k = {k}, i = {i} stays inside"))?;
            ensure(d_star_metric(&m, &Word::epsilon(), &w) <= 1.0, || "d* above 1".into())?;
            largest = largest.max(i);
        }
    }
    Ok(format!("63 (r, k) pairs, largest witness i = {largest}"))
}

fn c12_brute_force() -> Outcome {
    let cycle = {
        let mut c = Relation::diagonal(5);
        for i in 0..5 {
            c.insert(i, (i + 1) % 5);
            c.insert((i + 1) % 5, i);
        }
        c
    };
    let two = {
        let mut r = Relation::diagonal(2);
        r.insert(0, 1);
        r.insert(1, 0);
        r
    };
    // (name, scale relation, its exponent, bound relation, pinned minimum)
    let fixtures: Vec<(&str, Relation, u64, Relation, usize)> = vec![
        ("complete 4", Relation::full(4), 1, Relation::full(4), 1),
        ("linked pair, K = diagonal", two, 1, Relation::diagonal(2), 2),
        ("6-point path, E^2, K = E^5", path(6), 2, path(6).power(5), 1),
        ("10-point path, E^2, K = E^5", path(10), 2, path(10).power(5), 2),
        ("5-cycle, K = diagonal", cycle, 1, Relation::diagonal(5), 3),
    ];
    let mut notes = Vec::new();
    for (name, e, s, k, pinned) in fixtures {
        let n = e.size();
        let scale = e.power(s as usize);
        let got = oracle::brute_min_families(n, |x, y| scale.contains(x, y), |x, y| k.contains(x, y)).map_err(|e| e.to_string())?;
        ensure(got == pinned, || format!("{name}: search gives {got}, pinned {pinned}"))?;
        // constructor on X^(<=1), where D* is D_E
        let t = trunc(n, 1);
        let base: &dyn coarse_free::dimension::BaseCover = if n == 4 { &BoundedBase } else { &AnnulusBase };
        let out = free_product_cover(t.clone(), &ProductEntourage::new(e.clone(), 0, s), base).map_err(|e| e.to_string())?;
        let w = &out.witness;
        let point = |i: usize| t.word(i).letters().first().map_or(0, |&l| l as usize);
        let mut order: Vec<usize> = vec![0; n];
        for i in 0..n {
            order[point(i)] = i;
        }
        let pe = ProductEntourage::new(e.clone(), 0, s);
        let brute = oracle::brute_min_families(n, |x, y| pe.contains(t.word(order[x]), t.word(order[y])), |x, y| w.bound.related(order[x], order[y]))
            .map_err(|e| e.to_string())?;
        ensure(brute <= w.families.len(), || format!("{name}: search {brute} exceeds constructor {}", w.families.len()))?;
        notes.push(format!("{name} = {got} (constructor {} >= {brute})", w.families.len()));
    }
    Ok(notes.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("distance axioms", c1_distance_axioms),
        ("D* is an inf-metric", c2_inf_metric),
        ("entourage calculus", c3_structure_laws),
        ("translation isometry", c4_translation),
        ("tree expansiveness", c5_tree),
        ("fibering count", c6_fibering),
        ("free product dimension", c7_free_product),
        ("bounded base", c8_bounded),
        ("property C construction", c9_property_c),
        ("metric comparison", c10_comparison),
        ("strictness", c11_strictness),
        ("oracle optimality", c12_brute_force),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(note) => println!("PASS {:>2} {name} ({elapsed:.1?}): {note}", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name} ({elapsed:.1?}): {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    println!("acceptance: {} of 12 criteria pass", 12 - failed.len());
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
