//! Turn sequences and the substitution that builds `S_{λ₁⋯λₙ}`.
//!
//! `build_seq` never pattern-matches flat arrays. It carries a skeleton of
//! `λ₁`-blocks (each `S_{λ₁}` or its bar) with the connector turns between
//! them, expands that skeleton one level at a time, and flattens at the end.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::lattice::{Chirality, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("empty chirality word")]
    EmptyWord,
    #[error("turn {0} outside -2..=2")]
    BadTurn(i64),
    #[error("malformed sequence file: {0}")]
    Format(String),
}

/// A finite sequence over `{−2, −1, 0, +1, +2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TurnSeq(Vec<i8>);

/// The level-1 sequence `S`.
pub const S_PLUS: [i8; 6] = [1, 2, -1, -2, 0, -1];

impl TurnSeq {
    pub fn new(entries: Vec<i8>) -> Result<Self, SequenceError> {
        if let Some(&t) = entries.iter().find(|t| !(-2..=2).contains(*t)) {
            return Err(SequenceError::BadTurn(t as i64));
        }
        Ok(TurnSeq(entries))
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<i8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reverse and negate.
    pub fn bar(&self) -> TurnSeq {
        TurnSeq(self.0.iter().rev().map(|t| -t).collect())
    }

    pub fn negated(&self) -> TurnSeq {
        TurnSeq(self.0.iter().map(|t| -t).collect())
    }

    /// Joins `parts` with the single-turn connectors between them.
    pub fn join(parts: &[&TurnSeq], connectors: &[i8]) -> Result<TurnSeq, SequenceError> {
        assert_eq!(parts.len(), connectors.len() + 1, "one connector between each pair of parts");
        let mut out = Vec::with_capacity(parts.iter().map(|p| p.len() + 1).sum());
        for (i, p) in parts.iter().enumerate() {
            out.extend_from_slice(&p.0);
            if let Some(&c) = connectors.get(i) {
                out.push(c);
            }
        }
        TurnSeq::new(out)
    }
}

impl fmt::Display for TurnSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

pub fn bar_seq(s: &TurnSeq) -> TurnSeq {
    s.bar()
}

// Level-2 skeletons: which of the 7 blocks are barred, and the 6 connectors.
const PP_BARS: [bool; 7] = [false, true, true, false, false, false, true];
const PP_CONN: [i8; 6] = [1, 1, -1, -1, 1, -1];
const PM_BARS: [bool; 7] = [true, false, false, true, true, true, false];
const PM_CONN: [i8; 6] = [-1, -1, 1, 1, -1, 1];

#[derive(Debug, Clone, PartialEq, Eq)]
struct Skeleton {
    bars: Vec<bool>,
    connectors: Vec<i8>,
}

impl Skeleton {
    fn unit() -> Self {
        Skeleton { bars: vec![false], connectors: Vec::new() }
    }

    fn level_two(l1: Chirality, l2: Chirality) -> Self {
        let (bars, conn) = if l1 == l2 { (PP_BARS, PP_CONN) } else { (PM_BARS, PM_CONN) };
        let sign = l1.sign();
        Skeleton { bars: bars.to_vec(), connectors: conn.iter().map(|c| c * sign).collect() }
    }

    fn barred(&self) -> Self {
        Skeleton {
            bars: self.bars.iter().rev().map(|b| !b).collect(),
            connectors: self.connectors.iter().rev().map(|c| -c).collect(),
        }
    }

    /// Replaces every block of `self` with `unit` (or its bar), keeping the connectors.
    fn substitute(&self, unit: &Skeleton) -> Self {
        let unit_bar = unit.barred();
        let mut bars = Vec::with_capacity(self.bars.len() * unit.bars.len());
        let mut connectors = Vec::with_capacity(bars.capacity());
        for (i, &b) in self.bars.iter().enumerate() {
            let u = if b { &unit_bar } else { unit };
            for (k, &ub) in u.bars.iter().enumerate() {
                bars.push(ub);
                if k < u.connectors.len() {
                    connectors.push(u.connectors[k]);
                }
            }
            if i < self.connectors.len() {
                connectors.push(self.connectors[i]);
            }
        }
        Skeleton { bars, connectors }
    }

    fn build(word: &[Chirality]) -> Self {
        match word {
            [] | [_] => Skeleton::unit(),
            [l1, l2, ..] => Skeleton::build(&word[1..]).substitute(&Skeleton::level_two(*l1, *l2)),
        }
    }

    fn flatten(&self, base: &[i8; 6]) -> Vec<i8> {
        let base_bar: Vec<i8> = base.iter().rev().map(|t| -t).collect();
        let mut out = Vec::with_capacity(self.bars.len() * 7 - 1);
        for (i, &b) in self.bars.iter().enumerate() {
            out.extend_from_slice(if b { &base_bar[..] } else { &base[..] });
            if i < self.connectors.len() {
                out.push(self.connectors[i]);
            }
        }
        out
    }
}

/// `S_{λ₁⋯λₙ}`, of length `7ⁿ − 1`.
pub fn build_seq(word: &Word) -> Result<TurnSeq, SequenceError> {
    let letters = word.letters();
    let first = *letters.first().ok_or(SequenceError::EmptyWord)?;
    let base = S_PLUS.map(|t| t * first.sign());
    Ok(TurnSeq(Skeleton::build(letters).flatten(&base)))
}

/// `Tₙ`, the sequence of the classical flowsnake.
pub fn peano_gosper(n: usize) -> Result<TurnSeq, SequenceError> {
    build_seq(&Word::constant(Chirality::Plus, n))
}

/// A sequence together with the word it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceFile {
    pub word: Word,
    pub seq: TurnSeq,
}

impl fmt::Display for SequenceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "word={}", self.word)?;
        writeln!(f, "{}", self.seq)
    }
}

impl FromStr for SequenceFile {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines();
        let header = lines.next().ok_or_else(|| SequenceError::Format("missing header".into()))?;
        let w = header
            .strip_prefix("word=")
            .ok_or_else(|| SequenceError::Format(format!("bad header {header:?}")))?;
        let word = Word::parse(w).map_err(|e| SequenceError::Format(e.to_string()))?;
        let body = lines.next().unwrap_or("");
        if lines.any(|l| !l.is_empty()) {
            return Err(SequenceError::Format("trailing lines".into()));
        }
        let mut entries = Vec::new();
        if !body.is_empty() {
            for tok in body.split(' ') {
                let t: i64 = tok
                    .parse()
                    .map_err(|_| SequenceError::Format(format!("bad entry {tok:?}")))?;
                if !(-2..=2).contains(&t) {
                    return Err(SequenceError::BadTurn(t));
                }
                entries.push(t as i8);
            }
        }
        Ok(SequenceFile { word, seq: TurnSeq(entries) })
    }
}
