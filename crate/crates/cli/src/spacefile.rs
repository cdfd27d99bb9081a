//! Line-oriented space definitions.
//!
//! ```text
//! points 5
//! basepoint 0
//! metric
//! 0 1 2 3 4
//! ...
//! gen E
//! pair 0 1
//! ball 1.5
//! end
//! ```
//!
//! `#` starts a comment. Metric rows accept `inf`. A `ball R` line adds
//! `{(i, j) : d(i, j) < R}` and needs the metric. Serialization writes the
//! canonical form: the metric with shortest round-trip floats, and every
//! generator as its sorted pair list.

use std::fmt::Write as _;

use coarse_free::coarse_space::{ball_relation, CoarseStructureSpec, MetricTable};
use coarse_free::relations::{GroundSet, Relation};
use coarse_free::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SpaceFile {
    pub ground: GroundSet,
    pub metric: Option<MetricTable>,
    pub generators: Vec<(String, Relation)>,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

struct Line<'a> {
    number: usize,
    text: &'a str,
    tokens: Vec<(usize, &'a str)>,
}

impl<'a> Line<'a> {
    fn new(number: usize, raw: &'a str) -> Self {
        let text = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, c) in text.char_indices() {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    tokens.push((s + 1, &text[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            tokens.push((s + 1, &text[s..]));
        }
        Line { number, text, tokens }
    }

    fn end_column(&self) -> usize {
        self.text.trim_end().len() + 1
    }

    fn expect_len(&self, n: usize, usage: &str) -> Result<()> {
        match self.tokens.get(n) {
            Some(&(col, tok)) => Err(parse_err(self.number, col, format!("unexpected `{tok}`, expected `{usage}`"))),
            None if self.tokens.len() < n => Err(parse_err(self.number, self.end_column(), format!("expected `{usage}`"))),
            None => Ok(()),
        }
    }

    fn number_at<T: std::str::FromStr>(&self, i: usize, what: &str) -> Result<T> {
        let (col, tok) = self.tokens[i];
        tok.parse().map_err(|_| parse_err(self.number, col, format!("expected {what}, found `{tok}`")))
    }

    fn index_at(&self, i: usize, size: usize) -> Result<usize> {
        let v: usize = self.number_at(i, "a point index")?;
        if v >= size {
            return Err(parse_err(self.number, self.tokens[i].0, format!("index {v} out of range for {size} points")));
        }
        Ok(v)
    }
}

fn parse_distance(tok: &str) -> Option<f64> {
    match tok {
        "inf" | "+inf" => Some(f64::INFINITY),
        _ => tok.parse::<f64>().ok().filter(|v| v.is_finite()),
    }
}

pub fn parse_space(text: &str) -> Result<SpaceFile> {
    let mut lines = text.lines().enumerate().map(|(i, l)| Line::new(i + 1, l)).filter(|l| !l.tokens.is_empty()).peekable();
    let last_line = text.lines().count() + 1;

    let first = lines.next().ok_or_else(|| parse_err(last_line, 1, "expected `points N`"))?;
    if first.tokens[0].1 != "points" {
        return Err(parse_err(first.number, first.tokens[0].0, format!("expected `points`, found `{}`", first.tokens[0].1)));
    }
    first.expect_len(2, "points N")?;
    let size: usize = first.number_at(1, "a point count")?;
    if size == 0 {
        return Err(parse_err(first.number, first.tokens[1].0, "a space needs at least one point"));
    }

    let second = lines.next().ok_or_else(|| parse_err(last_line, 1, "expected `basepoint I`"))?;
    if second.tokens[0].1 != "basepoint" {
        return Err(parse_err(second.number, second.tokens[0].0, format!("expected `basepoint`, found `{}`", second.tokens[0].1)));
    }
    second.expect_len(2, "basepoint I")?;
    let basepoint = second.index_at(1, size)?;
    let ground = GroundSet::new(size, basepoint)?;

    let mut metric = None;
    let mut generators: Vec<(String, Relation)> = Vec::new();
    while let Some(line) = lines.next() {
        let (col, keyword) = line.tokens[0];
        match keyword {
            "metric" => {
                line.expect_len(1, "metric")?;
                if metric.is_some() {
                    return Err(parse_err(line.number, col, "a second `metric` block"));
                }
                let mut dist = Vec::with_capacity(size * size);
                for row in 0..size {
                    let r = lines.next().ok_or_else(|| parse_err(last_line, 1, format!("metric row {} missing", row + 1)))?;
                    if r.tokens.len() != size {
                        let col = r.tokens.get(size).map_or(r.end_column(), |t| t.0);
                        return Err(parse_err(r.number, col, format!("metric row needs {size} entries, found {}", r.tokens.len())));
                    }
                    for &(c, tok) in &r.tokens {
                        let d = parse_distance(tok)
                            .ok_or_else(|| parse_err(r.number, c, format!("expected a distance or `inf`, found `{tok}`")))?;
                        dist.push(d);
                    }
                }
                metric = Some(MetricTable::new(ground.clone(), dist).map_err(|e| parse_err(line.number, col, e.to_string()))?);
            }
            "gen" => {
                line.expect_len(2, "gen NAME")?;
                let name = line.tokens[1].1.to_string();
                if generators.iter().any(|(n, _)| *n == name) {
                    return Err(parse_err(line.number, line.tokens[1].0, format!("generator `{name}` defined twice")));
                }
                let mut rel = Relation::empty(size);
                loop {
                    let body = lines.next().ok_or_else(|| parse_err(last_line, 1, format!("generator `{name}` is missing `end`")))?;
                    let (c, kw) = body.tokens[0];
                    match kw {
                        "pair" => {
                            body.expect_len(3, "pair I J")?;
                            rel.insert(body.index_at(1, size)?, body.index_at(2, size)?);
                        }
                        "ball" => {
                            body.expect_len(2, "ball R")?;
                            let m = metric.as_ref().ok_or_else(|| parse_err(body.number, c, "`ball` needs a `metric` block before it"))?;
                            let (rc, tok) = body.tokens[1];
                            let r = parse_distance(tok).ok_or_else(|| parse_err(body.number, rc, format!("expected a radius, found `{tok}`")))?;
                            rel = rel.union(&ball_relation(m, r))?;
                        }
                        "end" => {
                            body.expect_len(1, "end")?;
                            break;
                        }
                        other => return Err(parse_err(body.number, c, format!("expected `pair`, `ball` or `end`, found `{other}`"))),
                    }
                }
                generators.push((name, rel));
            }
            other => return Err(parse_err(line.number, col, format!("expected `metric` or `gen`, found `{other}`"))),
        }
    }
    Ok(SpaceFile { ground, metric, generators })
}

fn format_distance(d: f64) -> String {
    if d.is_infinite() {
        "inf".into()
    } else {
        format!("{d}")
    }
}

impl SpaceFile {
    pub fn serialize(&self) -> String {
        let n = self.ground.size();
        let mut out = format!("points {n}\nbasepoint {}\n", self.ground.basepoint());
        if let Some(m) = &self.metric {
            out.push_str("metric\n");
            for i in 0..n {
                let row: Vec<String> = (0..n).map(|j| format_distance(m.dist(i, j))).collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
        }
        for (name, rel) in &self.generators {
            let _ = writeln!(out, "gen {name}");
            for (i, j) in rel.pairs() {
                let _ = writeln!(out, "pair {i} {j}");
            }
            out.push_str("end\n");
        }
        out
    }

    pub fn generator(&self, name: &str) -> Option<&Relation> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }

    pub fn structure(&self) -> Result<CoarseStructureSpec> {
        CoarseStructureSpec::new(self.ground.clone(), self.generators.clone())
    }
}
