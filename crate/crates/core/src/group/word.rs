//! Reduced words over a symmetric generating set, stored run-length
//! encoded as (generator, nonzero power) syllables with adjacent syllables
//! on distinct generators.
//!
//! Letters are indexed `0..2r`: letter `2g` is generator `g`, letter
//! `2g + 1` its inverse, so `letter ^ 1` is always the inverse letter.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::group::spec::GroupSpec;
use crate::moebius::MobiusMap;

/// A reduced word in the free group on the spec's generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    syl: Vec<(u16, i32)>,
}

impl Word {
    /// The empty word.
    pub fn identity() -> Word {
        Word { syl: Vec::new() }
    }

    /// True for the empty word.
    pub fn is_identity(&self) -> bool {
        self.syl.is_empty()
    }

    /// The syllables `(generator index, power)` with nonzero powers and
    /// adjacent generators distinct.
    pub fn syllables(&self) -> &[(u16, i32)] {
        &self.syl
    }

    /// Word length: total number of letters, `Σ |power|`.
    pub fn len(&self) -> u64 {
        self.syl.iter().map(|&(_, p)| p.unsigned_abs() as u64).sum()
    }

    /// True when the word has no letters.
    pub fn is_empty(&self) -> bool {
        self.syl.is_empty()
    }

    /// Append one syllable, merging and cancelling against the tail.
    pub fn push_syllable(&mut self, gen: u16, pow: i32) {
        if pow == 0 {
            return;
        }
        match self.syl.last_mut() {
            Some((g, p)) if *g == gen => {
                *p += pow;
                if *p == 0 {
                    self.syl.pop();
                }
            }
            _ => self.syl.push((gen, pow)),
        }
    }

    /// Append one letter (index into `0..2r`).
    pub fn push_letter(&mut self, letter: u16) {
        let gen = letter >> 1;
        let pow = if letter & 1 == 0 { 1 } else { -1 };
        self.push_syllable(gen, pow);
    }

    /// Build a word from a letter sequence (reducing as it goes).
    pub fn from_letters(letters: &[u16]) -> Word {
        let mut w = Word::identity();
        for &l in letters {
            w.push_letter(l);
        }
        w
    }

    /// The reduced concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, p) in &other.syl {
            w.push_syllable(g, p);
        }
        w
    }

    /// The inverse word.
    pub fn inverse(&self) -> Word {
        Word {
            syl: self.syl.iter().rev().map(|&(g, p)| (g, -p)).collect(),
        }
    }

    /// Expand to the letter sequence. Cost is the word length, so reserve
    /// this for short words (sorting keys, canonical forms); use
    /// [`Word::letter_cmp`] to compare without expanding.
    pub fn letters(&self) -> Vec<u16> {
        let mut out = Vec::with_capacity(self.len() as usize);
        for &(g, p) in &self.syl {
            let letter = 2 * g + u16::from(p < 0);
            for _ in 0..p.unsigned_abs() {
                out.push(letter);
            }
        }
        out
    }

    /// Lexicographic comparison of the letter sequences without expanding
    /// runs (safe for words with astronomically large powers).
    pub fn letter_cmp(&self, other: &Word) -> Ordering {
        let mut ia = self.syl.iter().map(|&(g, p)| (2 * g + u16::from(p < 0), p.unsigned_abs() as u64));
        let mut ib = other.syl.iter().map(|&(g, p)| (2 * g + u16::from(p < 0), p.unsigned_abs() as u64));
        let (mut ca, mut cb) = (ia.next(), ib.next());
        loop {
            match (ca, cb) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((la, na)), Some((lb, nb))) => {
                    match la.cmp(&lb) {
                        Ordering::Equal => {
                            // Identical runs: consume the shorter one.
                            match na.cmp(&nb) {
                                Ordering::Equal => {
                                    ca = ia.next();
                                    cb = ib.next();
                                }
                                Ordering::Less => {
                                    ca = ia.next();
                                    cb = Some((lb, nb - na));
                                }
                                Ordering::Greater => {
                                    ca = Some((la, na - nb));
                                    cb = ib.next();
                                }
                            }
                        }
                        ord => return ord,
                    }
                }
            }
        }
    }

    /// Evaluate the word to an isometry using fast powers per syllable.
    pub fn evaluate(&self, spec: &GroupSpec) -> Result<MobiusMap> {
        let mut acc = MobiusMap::identity(spec.dim());
        for &(g, p) in &self.syl {
            let m = spec
                .generator(g as usize)
                .ok_or_else(|| Error::InvalidParameter(format!("generator index {g} out of range")))?;
            acc = acc.compose(&m.pow(p as i64));
        }
        Ok(acc)
    }

    /// Render with generator names: `a*b^-2`, identity as `1`.
    pub fn format(&self, spec: &GroupSpec) -> String {
        if self.syl.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::with_capacity(self.syl.len());
        for &(g, p) in &self.syl {
            let name = spec.generator_name(g as usize).unwrap_or("?");
            if p == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{p}"));
            }
        }
        parts.join("*")
    }

    /// Parse the [`Word::format`] syntax: `*`-separated factors, each a
    /// generator name with an optional `^power`; `1` is the identity.
    pub fn parse(s: &str, spec: &GroupSpec) -> Result<Word> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty word literal".into()));
        }
        if t == "1" {
            return Ok(Word::identity());
        }
        let mut w = Word::identity();
        for factor in t.split('*') {
            let f = factor.trim();
            if f.is_empty() {
                return Err(Error::Parse(format!("empty factor in word `{s}`")));
            }
            let (name, pow) = match f.split_once('^') {
                Some((n, p)) => {
                    let pow: i32 = p.trim().parse().map_err(|_| {
                        Error::Parse(format!("bad power `{p}` in word `{s}`"))
                    })?;
                    (n.trim(), pow)
                }
                None => (f, 1),
            };
            if pow == 0 {
                return Err(Error::Parse(format!("zero power in word `{s}`")));
            }
            let idx = spec.generator_index(name).ok_or_else(|| {
                Error::Parse(format!("unknown generator `{name}` in word `{s}`"))
            })?;
            w.push_syllable(idx as u16, pow);
        }
        Ok(w)
    }
}
