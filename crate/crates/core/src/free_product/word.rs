use std::fmt;

use crate::error::{Error, Result};
use crate::relations::GroundSet;

/// A reduced word over the non-basepoint alphabet. The empty word stands for
/// the basepoint.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u32>);

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("@");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

impl Word {
    pub fn epsilon() -> Self {
        Word(Vec::new())
    }

    /// Builds a word, rejecting out-of-range letters and the basepoint.
    pub fn new(letters: Vec<u32>, ground: &GroundSet) -> Result<Self> {
        for &l in &letters {
            if l as usize >= ground.size() {
                return Err(Error::Domain(format!("letter {l} out of range")));
            }
            if l as usize == ground.basepoint() {
                return Err(Error::Domain("the basepoint is not a letter".into()));
            }
        }
        Ok(Word(letters))
    }

    /// Letters as given, unchecked against any ground set.
    pub fn from_raw(letters: Vec<u32>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn is_epsilon(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, letter: u32) -> Word {
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// `Some(rest)` when `self = prefix · rest`.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|r| Word(r.to_vec()))
    }

    pub fn common_prefix_len(&self, other: &Word) -> usize {
        self.0.iter().zip(&other.0).take_while(|(a, b)| a == b).count()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// Dot-separated labels; `@` for the empty word.
    pub fn display(&self, ground: &GroundSet) -> String {
        if self.0.is_empty() {
            return "@".into();
        }
        let parts: Vec<String> = self.0.iter().map(|&l| ground.label(l as usize)).collect();
        parts.join(".")
    }

    pub fn parse(text: &str, ground: &GroundSet) -> Result<Word> {
        let text = text.trim();
        if text == "@" {
            return Ok(Word::epsilon());
        }
        let mut letters = Vec::new();
        for part in text.split('.') {
            let idx = ground
                .index_of(part)
                .ok_or_else(|| Error::Domain(format!("unknown letter `{part}` in word `{text}`")))?;
            letters.push(idx as u32);
        }
        Word::new(letters, ground)
    }
}

/// A branching letter of a wedge decomposition: a point, or the basepoint
/// marker standing in when one word is a prefix of the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Base,
    Letter(u32),
}

impl Branch {
    pub fn point(self, basepoint: usize) -> usize {
        match self {
            Branch::Base => basepoint,
            Branch::Letter(l) => l as usize,
        }
    }
}

/// `x = a·b·c`, `x' = a·b'·c'` with `b != b'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeDecomposition {
    pub common: Word,
    pub left_branch: Branch,
    pub left_tail: Word,
    pub right_branch: Branch,
    pub right_tail: Word,
}

impl WedgeDecomposition {
    pub fn reassemble(&self) -> (Word, Word) {
        let side = |b: Branch, t: &Word| match b {
            Branch::Base => self.common.clone(),
            Branch::Letter(l) => self.common.push(l).concat(t),
        };
        (side(self.left_branch, &self.left_tail), side(self.right_branch, &self.right_tail))
    }
}

/// The unique common-prefix decomposition of two distinct words.
pub fn wedge(x: &Word, y: &Word) -> Result<WedgeDecomposition> {
    if x == y {
        return Err(Error::Precondition("wedge needs two distinct words".into()));
    }
    let k = x.common_prefix_len(y);
    let side = |w: &Word| match w.0.get(k) {
        None => (Branch::Base, Word::epsilon()),
        Some(&l) => (Branch::Letter(l), Word(w.0[k + 1..].to_vec())),
    };
    let (left_branch, left_tail) = side(x);
    let (right_branch, right_tail) = side(y);
    Ok(WedgeDecomposition { common: x.prefix(k), left_branch, left_tail, right_branch, right_tail })
}
