//! The ED string data model and its text format.
//!
//! Text format: a sequence of elements separated by optional whitespace.
//! A bare run of letters is one segment holding one variant; a group
//! `{v1,v2,...}` is one segment holding the listed variants, any of which
//! may be empty. Letters are ASCII alphanumerics. `{}` is the segment whose
//! only variant is the empty string.

use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// One set of alternatives. Input order and duplicates are kept.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    variants: Vec<Vec<u8>>,
}

impl Segment {
    pub fn variants(&self) -> &[Vec<u8>] {
        &self.variants
    }

    pub fn len(&self) -> usize {
        self.variants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variants.is_empty()
    }

    pub fn has_empty_variant(&self) -> bool {
        self.variants.iter().any(|v| v.is_empty())
    }

    /// Letters plus one per empty variant.
    pub fn size(&self) -> usize {
        self.variants.iter().map(|v| v.len().max(1)).sum()
    }
}

/// Dense ranks for the letters that occur in one or more ED strings.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Alphabet {
    letters: Vec<u8>,
}

impl Alphabet {
    pub fn from_letters(letters: impl IntoIterator<Item = u8>) -> Self {
        let mut letters: Vec<u8> = letters.into_iter().collect();
        letters.sort_unstable();
        letters.dedup();
        Self { letters }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn rank(&self, letter: u8) -> Option<u32> {
        self.letters.binary_search(&letter).ok().map(|r| r as u32)
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet::from_letters(self.letters.iter().chain(&other.letters).copied())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    /// Number of segments.
    pub n: usize,
    /// Number of variants over all segments.
    pub m: usize,
    /// Total letters plus one per empty variant.
    pub size: usize,
    /// Number of empty variants.
    pub n_eps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdString {
    segments: Vec<Segment>,
    alphabet: Alphabet,
}

pub fn is_letter(b: u8) -> bool {
    b.is_ascii_alphanumeric()
}

impl EdString {
    pub fn new(segments: Vec<Vec<Vec<u8>>>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Invalid("an ED string needs at least one segment".into()));
        }
        for (i, seg) in segments.iter().enumerate() {
            if seg.is_empty() {
                return Err(Error::Invalid(format!("segment {i} has no variants")));
            }
            if let Some(&b) = seg.iter().flatten().find(|&&b| !is_letter(b)) {
                return Err(Error::Invalid(format!("segment {i} contains non-alphanumeric byte 0x{b:02x}")));
            }
        }
        let alphabet = Alphabet::from_letters(segments.iter().flatten().flatten().copied());
        Ok(Self { segments: segments.into_iter().map(|variants| Segment { variants }).collect(), alphabet })
    }

    /// Convenience constructor from string slices; panics on invalid input.
    pub fn from_strs(segments: &[&[&str]]) -> Self {
        Self::new(segments.iter().map(|s| s.iter().map(|v| v.as_bytes().to_vec()).collect()).collect())
            .expect("valid ED string")
    }

    /// A single-segment, single-variant ED string.
    pub fn standard(s: &[u8]) -> Result<Self> {
        Self::new(vec![vec![s.to_vec()]])
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_eds(text.as_bytes())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn segment(&self, i: usize) -> &Segment {
        &self.segments[i]
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn stats(&self) -> Stats {
        let m = self.segments.iter().map(Segment::len).sum();
        let n_eps = self.segments.iter().flat_map(|s| &s.variants).filter(|v| v.is_empty()).count();
        let letters: usize = self.segments.iter().flat_map(|s| &s.variants).map(Vec::len).sum();
        Stats { n: self.segments.len(), m, size: letters + n_eps, n_eps }
    }

    /// Total number of letters, not counting empty variants.
    pub fn letter_count(&self) -> usize {
        self.segments.iter().flat_map(|s| &s.variants).map(Vec::len).sum()
    }

    /// Reverses the segment order and every variant.
    pub fn reverse(&self) -> EdString {
        let segments = self
            .segments
            .iter()
            .rev()
            .map(|s| Segment { variants: s.variants.iter().map(|v| v.iter().rev().copied().collect()).collect() })
            .collect();
        EdString { segments, alphabet: self.alphabet.clone() }
    }

    /// Product of the segment sizes: the number of alignments.
    pub fn alignment_count(&self) -> u128 {
        self.segments.iter().fold(1u128, |acc, s| acc.saturating_mul(s.len() as u128))
    }

    /// All distinct strings of the language. Fails when the number of
    /// alignments exceeds `cap`.
    pub fn enumerate_language(&self, cap: u128) -> Result<BTreeSet<Vec<u8>>> {
        let estimate = self.alignment_count();
        if estimate > cap {
            return Err(Error::CapExceeded { cap, estimate });
        }
        let mut current: BTreeSet<Vec<u8>> = BTreeSet::from([Vec::new()]);
        for seg in &self.segments {
            let mut next = BTreeSet::new();
            for prefix in &current {
                for v in &seg.variants {
                    let mut s = prefix.clone();
                    s.extend_from_slice(v);
                    next.insert(s);
                }
            }
            current = next;
        }
        Ok(current)
    }

    /// Whether `s` belongs to the language, tracking the set of prefix
    /// lengths of `s` reachable after each segment.
    pub fn contains(&self, s: &[u8]) -> bool {
        let mut reach = vec![false; s.len() + 1];
        reach[0] = true;
        for seg in &self.segments {
            let mut next = vec![false; s.len() + 1];
            for p in (0..=s.len()).filter(|&p| reach[p]) {
                for v in &seg.variants {
                    if s[p..].starts_with(v) {
                        next[p + v.len()] = true;
                    }
                }
            }
            if !next.iter().any(|&b| b) {
                return false;
            }
            reach = next;
        }
        reach[s.len()]
    }

    /// Canonical text form: every segment in braces.
    pub fn serialize(&self) -> String {
        let mut out = String::with_capacity(self.stats().size + 3 * self.segments.len());
        for seg in &self.segments {
            out.push('{');
            for (k, v) in seg.variants.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.extend(v.iter().map(|&b| b as char));
            }
            out.push('}');
        }
        out
    }
}

impl fmt::Display for EdString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl std::str::FromStr for EdString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

pub fn parse_eds(text: &[u8]) -> Result<EdString> {
    let syntax = |pos: usize, msg: &str| Error::Syntax { pos, msg: msg.to_string() };
    let mut segments: Vec<Vec<Vec<u8>>> = Vec::new();
    let mut pos = 0;
    while pos < text.len() {
        let b = text[pos];
        if b.is_ascii_whitespace() {
            pos += 1;
        } else if is_letter(b) {
            let start = pos;
            while pos < text.len() && is_letter(text[pos]) {
                pos += 1;
            }
            segments.push(vec![text[start..pos].to_vec()]);
        } else if b == b'{' {
            pos += 1;
            let mut variants = Vec::new();
            let mut current = Vec::new();
            loop {
                match text.get(pos) {
                    None => return Err(syntax(pos, "unterminated group")),
                    Some(b'}') => {
                        variants.push(std::mem::take(&mut current));
                        pos += 1;
                        break;
                    }
                    Some(b',') => {
                        variants.push(std::mem::take(&mut current));
                        pos += 1;
                    }
                    Some(&c) if is_letter(c) => {
                        current.push(c);
                        pos += 1;
                    }
                    Some(_) => return Err(syntax(pos, "unexpected byte inside group")),
                }
            }
            segments.push(variants);
        } else {
            return Err(syntax(pos, "expected a letter or '{'"));
        }
    }
    if segments.is_empty() {
        return Err(syntax(0, "empty input"));
    }
    EdString::new(segments)
}
