//! Witness files: `family I` headers, numbered from 0 in order, each
//! followed by `member w1 w2 ...` lines. Words are dot-joined labels and `@`
//! is the empty word; as points, `@` is the basepoint.

use std::fmt::Write as _;

use coarse_free::free_product::{Truncation, Word};
use coarse_free::relations::GroundSet;
use coarse_free::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Token {
    line: usize,
    column: usize,
    text: String,
}

/// Parsed but unresolved witness text.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WitnessText {
    families: Vec<Vec<Vec<Token>>>,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

pub fn parse_witness(text: &str) -> Result<WitnessText> {
    let mut out = WitnessText::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut offset = 0;
        for part in body.split_whitespace() {
            let at = body[offset..].find(part).expect("token of this line") + offset;
            tokens.push(Token { line, column: at + 1, text: part.to_string() });
            offset = at + part.len();
        }
        let Some(head) = tokens.first() else { continue };
        match head.text.as_str() {
            "family" => {
                let expected = out.families.len();
                match tokens.get(1) {
                    Some(t) if t.text == expected.to_string() && tokens.len() == 2 => out.families.push(Vec::new()),
                    Some(t) => return Err(parse_err(line, t.column, format!("expected `family {expected}`, found `{}`", t.text))),
                    None => return Err(parse_err(line, body.trim_end().len() + 1, format!("expected `family {expected}`"))),
                }
            }
            "member" => {
                let fam = out.families.last_mut().ok_or_else(|| parse_err(line, head.column, "`member` before any `family`"))?;
                if tokens.len() == 1 {
                    return Err(parse_err(line, body.trim_end().len() + 1, "a member needs at least one element"));
                }
                fam.push(tokens[1..].to_vec());
            }
            other => return Err(parse_err(line, head.column, format!("expected `family` or `member`, found `{other}`"))),
        }
    }
    Ok(out)
}

impl WitnessText {
    pub fn family_count(&self) -> usize {
        self.families.len()
    }

    /// Members as point indices of `ground`.
    pub fn points(&self, ground: &GroundSet) -> Result<Vec<Vec<Vec<usize>>>> {
        self.resolve(|t| {
            if t.text == "@" {
                return Ok(ground.basepoint());
            }
            ground.index_of(&t.text).ok_or_else(|| parse_err(t.line, t.column, format!("unknown point `{}`", t.text)))
        })
    }

    /// Members as truncation indices.
    pub fn words(&self, trunc: &Truncation) -> Result<Vec<Vec<Vec<usize>>>> {
        self.resolve(|t| {
            let w = Word::parse(&t.text, trunc.ground()).map_err(|e| parse_err(t.line, t.column, e.to_string()))?;
            trunc.index_of(&w).ok_or_else(|| parse_err(t.line, t.column, format!("word `{}` is not in the truncation", t.text)))
        })
    }

    fn resolve(&self, f: impl Fn(&Token) -> Result<usize>) -> Result<Vec<Vec<Vec<usize>>>> {
        self.families.iter().map(|fam| fam.iter().map(|m| m.iter().map(&f).collect()).collect()).collect()
    }
}

pub fn write_witness(families: &[Vec<Vec<usize>>], name: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (i, fam) in families.iter().enumerate() {
        let _ = writeln!(out, "family {i}");
        for m in fam {
            let names: Vec<String> = m.iter().map(|&x| name(x)).collect();
            let _ = writeln!(out, "member {}", names.join(" "));
        }
    }
    out
}
