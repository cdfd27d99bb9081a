//! The `coarse-free` command line: space files in, deterministic reports out.
//!
//! Exit status is 0 when every verdict passes, 2 when a law or witness check
//! fails (the report names the counterexample), and 1 on usage, parse or
//! resource errors.

pub mod report;
pub mod spacefile;
pub mod witness;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use coarse_free::dimension::{
    build_tree, check_witness, free_product_cover, AnnulusBase, BaseCover, CoverWitness, FixedBase, Verdict,
};
use coarse_free::free_product::{wedge, ProductEntourage, Truncation, Word, WordMetric, DEFAULT_WORD_CAP};
use coarse_free::gauge::Gauge;
use coarse_free::oracle::{self, LawReport};
use coarse_free::property_c::{check_pc_witness, pc_witness, PropertyCWitness};
use coarse_free::relations::Relation;
use coarse_free::{Error, Result};

use report::Report;
use spacefile::{parse_space, SpaceFile};
use witness::{parse_witness, write_witness};

/// Largest number of word pairs a law check enumerates.
pub const PAIR_CAP: usize = 4_000_000;

#[derive(Parser, Debug)]
#[command(name = "coarse-free", version, about = "Coarse free products on finite truncations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Space definition file.
    #[arg(long)]
    space: Option<PathBuf>,
    /// Maximal word order of the truncation.
    #[arg(long, default_value_t = 2)]
    order: usize,
    /// `NAME:k` for ⟨NAME, k⟩, or `rel:NAME` for the raw relation.
    #[arg(long = "scale")]
    scales: Vec<String>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Word cap for truncations.
    #[arg(long, default_value_t = DEFAULT_WORD_CAP)]
    cap: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Metric and entourage laws for every scale (default: each generator at 1).
    Axioms(Common),
    /// `D*` between two words.
    Dstar {
        #[command(flatten)]
        common: Common,
        left: String,
        right: String,
    },
    /// Enumerate the truncation.
    Truncate(Common),
    /// The tree of the truncation, optionally exported as Graphviz.
    Tree {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Cover the truncation at one scale and check the result.
    Asdim {
        #[command(flatten)]
        common: Common,
        /// Families of base points; the annulus cover is used otherwise.
        #[arg(long)]
        base_witness: Option<PathBuf>,
        /// Write the constructed cover as a witness file.
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Property C witness for an ascending list of scales.
    Propc {
        #[command(flatten)]
        common: Common,
        /// Base families of points; one family holding every point otherwise.
        #[arg(long)]
        base_witness: Option<PathBuf>,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Compare `⟨ball(R), n⟩` with the metric free-product distance.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = 1)]
        n: u64,
    },
    /// Pairs near the basepoint that escape every fixed product entourage.
    DemoStrict {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 25)]
        prefix: usize,
        #[arg(long, default_value_t = 20)]
        k: u64,
        #[arg(long = "radius", value_delimiter = ',', default_values_t = [1.0, 0.5, 0.25])]
        radii: Vec<f64>,
    },
    /// Check a word witness: one scale for a cover, several for property C.
    VerifyWitness {
        #[command(flatten)]
        common: Common,
        /// Bound `NAME:k`.
        #[arg(long)]
        bound: String,
        witness: PathBuf,
    },
}

/// What a run produced; `main` prints it and exits with `code`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    let common = match &cli.command {
        Command::Axioms(c) | Command::Truncate(c) => c.clone(),
        Command::Dstar { common, .. }
        | Command::Tree { common, .. }
        | Command::Asdim { common, .. }
        | Command::Propc { common, .. }
        | Command::Compare { common, .. }
        | Command::DemoStrict { common, .. }
        | Command::VerifyWitness { common, .. } => common.clone(),
    };
    match execute(cli.command) {
        Ok(report) => {
            let text = report.emit();
            let code = if report.passed() { 0 } else { 2 };
            match &common.out {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
                    Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: cannot write {}: {e}\n", path.display()) },
                },
                None => Outcome { code, stdout: text, stderr: String::new() },
            }
        }
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))
}

fn with_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { line, column, message } => Error::Parse { line, column, message: format!("{}: {message}", path.display()) },
        other => other,
    })
}

fn load_space(common: &Common) -> Result<SpaceFile> {
    let path = common.space.as_ref().ok_or_else(|| Error::Precondition("this command needs --space FILE".into()))?;
    with_file(path, parse_space(&read(path)?))
}

/// A parsed `--scale` value.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Scale {
    Product(String, u64),
    Raw(String),
}

impl Scale {
    fn parse(text: &str) -> Result<Scale> {
        if let Some(name) = text.strip_prefix("rel:") {
            return Ok(Scale::Raw(name.to_string()));
        }
        let (name, k) = text.rsplit_once(':').ok_or_else(|| Error::Precondition(format!("scale `{text}` is not NAME:k or rel:NAME")))?;
        let k = k.parse().map_err(|_| Error::Precondition(format!("scale `{text}`: `{k}` is not a nonnegative integer")))?;
        Ok(Scale::Product(name.to_string(), k))
    }

    fn name(&self) -> &str {
        match self {
            Scale::Product(n, _) | Scale::Raw(n) => n,
        }
    }

    fn relation<'a>(&self, space: &'a SpaceFile) -> Result<&'a Relation> {
        space.generator(self.name()).ok_or_else(|| Error::Precondition(format!("no generator named `{}`", self.name())))
    }

    fn entourage(&self, space: &SpaceFile) -> Result<ProductEntourage> {
        match self {
            Scale::Product(_, k) => Ok(ProductEntourage::new(self.relation(space)?.clone(), space.ground.basepoint(), *k)),
            Scale::Raw(n) => Err(Error::Precondition(format!("`rel:{n}` is a relation; this command needs `{n}:k`"))),
        }
    }

    fn threshold(&self) -> u64 {
        match self {
            Scale::Product(_, k) => *k,
            Scale::Raw(_) => 1,
        }
    }
}

fn scales(common: &Common) -> Result<Vec<Scale>> {
    common.scales.iter().map(|s| Scale::parse(s)).collect()
}

fn truncation(space: &SpaceFile, common: &Common) -> Result<Arc<Truncation>> {
    Ok(Arc::new(Truncation::enumerate(&space.ground, &space.ground.letters(), common.order, common.cap)?))
}

fn describe_gauge(g: &Gauge) -> String {
    g.describe()
}

fn verdict_law(name: &str, universe: usize, v: &Verdict, show: impl Fn(usize) -> String) -> LawReport {
    let mut law = LawReport::new(name, universe);
    law.cases = v.members as u64;
    if let Some(f) = &v.failure {
        let family = f.family.map_or(String::new(), |i| format!(" in family {i}"));
        let other = f.other.map_or(String::new(), |o| format!(" and {}", show(o)));
        law.counterexample = Some(format!("{}{family}: {}{other}", f.clause, show(f.element)));
    }
    law.detail("families", v.families).detail("members", v.members)
}

fn rejected_law(name: &str, universe: usize, e: Error) -> Result<LawReport> {
    match e {
        Error::Rejected { stage, detail } => {
            let mut law = LawReport::new(name, universe);
            law.counterexample = Some(format!("{stage}: {detail}"));
            Ok(law)
        }
        other => Err(other),
    }
}

fn base_points(space: &SpaceFile, path: &Path) -> Result<Vec<Vec<Vec<usize>>>> {
    with_file(path, parse_witness(&read(path)?).and_then(|w| w.points(&space.ground)))
}

fn execute(command: Command) -> Result<Report> {
    match command {
        Command::Axioms(common) => axioms(&common),
        Command::Dstar { common, left, right } => dstar(&common, &left, &right),
        Command::Truncate(common) => truncate(&common),
        Command::Tree { common, dot } => tree(&common, dot.as_deref()),
        Command::Asdim { common, base_witness, emit_witness } => asdim(&common, base_witness.as_deref(), emit_witness.as_deref()),
        Command::Propc { common, base_witness, emit_witness } => propc(&common, base_witness.as_deref(), emit_witness.as_deref()),
        Command::Compare { common, radius, n } => {
            let space = load_space(&common)?;
            let m = space.metric.as_ref().ok_or_else(|| Error::Precondition("compare needs a metric block".into()))?;
            let mut r = Report::new("compare");
            r.set("order", common.order);
            r.law(oracle::compare_bounded_structures(m, common.order, radius, n, PAIR_CAP)?);
            Ok(r)
        }
        Command::DemoStrict { prefix, k, radii, .. } => {
            let mut r = Report::new("demo-strict");
            r.set("prefix", prefix);
            r.law(oracle::strictness_demo(prefix, &radii, k)?);
            Ok(r)
        }
        Command::VerifyWitness { common, bound, witness } => verify_witness(&common, &bound, &witness),
    }
}

fn axioms(common: &Common) -> Result<Report> {
    let space = load_space(common)?;
    let mut list = scales(common)?;
    if list.is_empty() {
        list = space.generators.iter().map(|(n, _)| Scale::Product(n.clone(), 1)).collect();
    }
    let mut r = Report::new("axioms");
    r.set("order", common.order);
    r.set("seed", common.seed);
    let words = oracle::all_words(&space.ground, common.order);
    let names: Vec<String> = words.iter().map(|w| Word::from_raw(w.clone()).display(&space.ground)).collect();
    let pair_cap = PAIR_CAP;
    for (i, s) in list.iter().enumerate() {
        let e = s.relation(&space)?.symmetrized();
        let star = oracle::StarOracle::new(&e, space.ground.basepoint());
        let mut law = oracle::verify_inf_metric("D* is an inf-metric", &names, |a, b| star.dstar(&words[a], &words[b]))?;
        law.details.insert("scale".into(), s.name().to_string());
        r.law(law);
        let next = &list[(i + 1) % list.len()];
        let e2 = next.relation(&space)?.symmetrized();
        let mut laws = oracle::verify_structure_laws(&space.ground, &e, s.threshold(), &e2, next.threshold(), common.order, pair_cap)?;
        laws.details.insert("scales".into(), format!("{} then {}", s.name(), next.name()));
        r.law(laws);
        let mut iso = oracle::verify_translation_isometry(&space.ground, &e, 1, 1000, common.order + 2, common.seed);
        iso.details.insert("scale".into(), s.name().to_string());
        r.law(iso);
    }
    if let Some(m) = &space.metric {
        r.law(oracle::verify_inf_metric("metric d* is an inf-metric", &names, |a, b| oracle::metric_dstar(m, &words[a], &words[b]))?);
    }
    Ok(r)
}

fn dstar(common: &Common, left: &str, right: &str) -> Result<Report> {
    let space = load_space(common)?;
    let list = scales(common)?;
    let [scale] = list.as_slice() else {
        return Err(Error::Precondition("dstar needs exactly one --scale".into()));
    };
    let (x, y) = (Word::parse(left, &space.ground)?, Word::parse(right, &space.ground)?);
    let metric = WordMetric::new(scale.relation(&space)?.clone(), space.ground.basepoint());
    let d = metric.dstar(&x, &y);
    let mut r = Report::new("dstar");
    r.set("left", x.display(&space.ground));
    r.set("right", y.display(&space.ground));
    r.set("scale", scale.name());
    r.set("dstar", d);
    if x != y {
        let w = wedge(&x, &y)?;
        let g = &space.ground;
        r.set("wedge", format!("a = {}, c = {}, c' = {}", w.common.display(g), w.left_tail.display(g), w.right_tail.display(g)));
    }
    if let Scale::Product(_, k) = scale {
        r.set("within", d.le(*k));
    }
    if let Some(m) = &space.metric {
        r.set("metric dstar", coarse_free::free_product::d_star_metric(m, &x, &y));
    }
    Ok(r)
}

fn truncate(common: &Common) -> Result<Report> {
    let space = load_space(common)?;
    let t = truncation(&space, common)?;
    let mut r = Report::new("truncate");
    r.set("order", common.order);
    r.set("count", t.len());
    let per: Vec<String> = (0..=t.max_order()).map(|j| t.layer(j).len().to_string()).collect();
    r.set("per order", per.join(" "));
    let words: Vec<String> = t.words().iter().map(|w| w.display(&space.ground)).collect();
    r.set("words", words.join(" "));
    Ok(r)
}

fn tree(common: &Common, dot: Option<&Path>) -> Result<Report> {
    let space = load_space(common)?;
    let tree = build_tree(truncation(&space, common)?);
    let mut r = Report::new("tree");
    r.set("order", common.order);
    r.set("vertices", tree.len());
    r.set("edges", tree.edges().len());
    if let Some(path) = dot {
        write(path, &tree.dot())?;
        r.set("dot", path.display());
    }
    Ok(r)
}

fn asdim(common: &Common, base_witness: Option<&Path>, emit: Option<&Path>) -> Result<Report> {
    let space = load_space(common)?;
    let list = scales(common)?;
    let [scale] = list.as_slice() else {
        return Err(Error::Precondition("asdim needs exactly one --scale NAME:k".into()));
    };
    let pe = scale.entourage(&space)?;
    let t = truncation(&space, common)?;
    let base: Box<dyn BaseCover> = match base_witness {
        Some(path) => Box::new(FixedBase::new(base_points(&space, path)?)),
        None => Box::new(AnnulusBase),
    };
    let mut r = Report::new("asdim");
    r.set("order", common.order);
    r.set("words", t.len());
    r.set("scale", format!("{}:{}", scale.name(), pe.threshold()));
    r.set("base families", base.family_count());
    match free_product_cover(t.clone(), &pe, base.as_ref()) {
        Ok(out) => {
            let show = |i: usize| t.word(i).display(&space.ground);
            r.set("families", out.witness.family_count());
            r.set("bound", describe_gauge(&out.witness.bound));
            r.set("tree radius", out.tree_radius);
            r.set("tree pieces", out.tree_pieces);
            r.law(verdict_law("cover", t.len(), &check_witness(&out.witness), show));
            if let Some(path) = emit {
                write(path, &write_witness(&out.witness.families, show))?;
            }
        }
        Err(e) => r.law(rejected_law("cover", t.len(), e)?),
    }
    Ok(r)
}

fn propc(common: &Common, base_witness: Option<&Path>, emit: Option<&Path>) -> Result<Report> {
    let space = load_space(common)?;
    let list = scales(common)?;
    if list.is_empty() {
        return Err(Error::Precondition("propc needs at least one --scale NAME:k".into()));
    }
    let entourages: Vec<ProductEntourage> = list.iter().map(|s| s.entourage(&space)).collect::<Result<_>>()?;
    let base = match base_witness {
        Some(path) => base_points(&space, path)?,
        None => vec![vec![(0..space.ground.size()).collect()]],
    };
    let t = truncation(&space, common)?;
    let mut r = Report::new("propc");
    r.set("order", common.order);
    r.set("words", t.len());
    r.set("scales", common.scales.join(" "));
    r.set("base families", base.len());
    match pc_witness(&t, &entourages, &base) {
        Ok(out) => {
            let show = |i: usize| t.word(i).display(&space.ground);
            r.set("families", out.witness.families.len());
            r.set("bound", describe_gauge(&out.witness.bound));
            r.set("components", out.components);
            r.set("flat diameter", out.cones.diameter);
            r.law(verdict_law("property C", t.len(), &check_pc_witness(&out.witness)?, show));
            if let Some(path) = emit {
                write(path, &write_witness(&out.witness.families, show))?;
            }
        }
        Err(e) => r.law(rejected_law("property C", t.len(), e)?),
    }
    Ok(r)
}

fn verify_witness(common: &Common, bound: &str, path: &Path) -> Result<Report> {
    let space = load_space(common)?;
    let t = truncation(&space, common)?;
    let list = scales(common)?;
    if list.is_empty() {
        return Err(Error::Precondition("verify-witness needs at least one --scale NAME:k".into()));
    }
    let gauge = |s: &Scale| -> Result<Gauge> { Ok(Gauge::words(t.clone(), s.entourage(&space)?)) };
    let families = with_file(path, parse_witness(&read(path)?).and_then(|w| w.words(&t)))?;
    let bound = gauge(&Scale::parse(bound)?)?;
    let show = |i: usize| t.word(i).display(&space.ground);
    let mut r = Report::new("verify-witness");
    r.set("order", common.order);
    r.set("words", t.len());
    r.set("witness", path.display());
    let law = if let [scale] = list.as_slice() {
        let w = CoverWitness { domain: None, families, scale: gauge(scale)?, bound };
        verdict_law("cover", t.len(), &check_witness(&w), show)
    } else {
        let scales = list.iter().map(gauge).collect::<Result<Vec<_>>>()?;
        let w = PropertyCWitness { scales, families, bound };
        verdict_law("property C", t.len(), &check_pc_witness(&w)?, show)
    };
    r.law(law);
    Ok(r)
}

/// A ground set of `n` points on the integer line, handy for fixtures.
pub fn integer_path_space(n: usize) -> String {
    let mut s = format!("points {n}\nbasepoint 0\nmetric\n");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| (i as i64 - j as i64).abs().to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s.push_str("gen E\nball 1.5\nend\n");
    s
}
