//! Acronym generation: which dictionary strings can be written as a prefix
//! of the first word, then a prefix of the second word, and so on.
//!
//! For every dictionary string we keep the set of positions reachable after
//! the words read so far. A word advances position `r` to every position in
//! `[r + min, r + lcp]`, where `lcp` compares the word with the dictionary
//! string from `r`; a difference array merges the intervals.

use std::collections::BTreeSet;

use crate::lcp::{LcpIndex, TextArena};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcronymInstance {
    dictionary: Vec<Vec<u8>>,
    words: Vec<Vec<u8>>,
    minlens: Vec<usize>,
}

impl AcronymInstance {
    /// `minlens` defaults to all zeros.
    pub fn new(dictionary: Vec<Vec<u8>>, words: Vec<Vec<u8>>, minlens: Option<Vec<usize>>) -> Result<Self> {
        let minlens = minlens.unwrap_or_else(|| vec![0; words.len()]);
        if minlens.len() != words.len() {
            return Err(Error::Invalid(format!("{} minimum lengths for {} words", minlens.len(), words.len())));
        }
        for (i, (w, &x)) in words.iter().zip(&minlens).enumerate() {
            if x > w.len() {
                return Err(Error::Invalid(format!("minimum length {x} exceeds word {i} of length {}", w.len())));
            }
        }
        if dictionary.iter().any(Vec::is_empty) {
            return Err(Error::Invalid("empty dictionary string".into()));
        }
        Ok(AcronymInstance { dictionary, words, minlens })
    }

    pub fn dictionary(&self) -> &[Vec<u8>] {
        &self.dictionary
    }

    pub fn words(&self) -> &[Vec<u8>] {
        &self.words
    }

    pub fn minlens(&self) -> &[usize] {
        &self.minlens
    }
}

/// Whether some dictionary string is an acronym of the words.
pub fn acronym_decide(inst: &AcronymInstance) -> bool {
    !accepted(inst, true).is_empty()
}

/// Every dictionary string that is an acronym of the words.
pub fn acronym_report(inst: &AcronymInstance) -> BTreeSet<Vec<u8>> {
    accepted(inst, false).into_iter().map(|k| inst.dictionary[k].clone()).collect()
}

fn accepted(inst: &AcronymInstance, first_only: bool) -> Vec<usize> {
    let arena = TextArena::from_strings(&[&inst.words[..], &inst.dictionary[..]]);
    let index = LcpIndex::build(&arena);
    let mut out = Vec::new();
    let mut reach = Vec::new();
    let mut diff = Vec::new();
    for (k, d) in inst.dictionary.iter().enumerate() {
        let ds = arena.span(1, 0, k);
        let len = d.len();
        reach.clear();
        reach.resize(len + 1, false);
        reach[0] = true;
        for (i, &x) in inst.minlens.iter().enumerate() {
            let ws = arena.span(0, 0, i);
            diff.clear();
            diff.resize(len + 2, 0i32);
            let mut any = false;
            for r in 0..=len {
                if !reach[r] {
                    continue;
                }
                let l = index.lcp_spans(ws, ds.slice(r, len - r));
                if x <= l {
                    diff[r + x] += 1;
                    diff[r + l + 1] -= 1;
                    any = true;
                }
            }
            if !any {
                reach[len] = false;
                break;
            }
            let mut run = 0;
            for (r, slot) in reach.iter_mut().enumerate() {
                run += diff[r];
                *slot = run > 0;
            }
        }
        if reach[len] {
            out.push(k);
            if first_only {
                break;
            }
        }
    }
    out
}
