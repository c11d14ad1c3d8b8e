//! Instance generators: seeded random ED strings, orthogonal-vectors
//! instances and their translation into intersection instances, random
//! unary and acronym instances.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eds::EdString;
use crate::unary::CompactUnary;
use crate::{Error, Result};

/// Letters used by the generators, in order of preference.
pub const LETTERS: &[u8] = b"ACGTBDEFHIJKLMNOPQRSUVWXYZ";

#[derive(Debug, Clone, PartialEq)]
pub struct RandomParams {
    pub segments: RangeInclusive<usize>,
    pub variants: RangeInclusive<usize>,
    /// Length of a nonempty variant.
    pub length: RangeInclusive<usize>,
    pub alphabet: usize,
    /// Probability that a variant is empty.
    pub epsilon: f64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { segments: 1..=6, variants: 1..=4, length: 1..=4, alphabet: 3, epsilon: 0.2 }
    }
}

impl RandomParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Invalid(m.to_string()));
        if self.segments.is_empty() || *self.segments.start() == 0 {
            return bad("segment count range must be nonempty and positive");
        }
        if self.variants.is_empty() || *self.variants.start() == 0 {
            return bad("variant count range must be nonempty and positive");
        }
        if self.length.is_empty() || *self.length.start() == 0 {
            return bad("variant length range must be nonempty and positive");
        }
        if self.alphabet == 0 || self.alphabet > LETTERS.len() {
            return bad("alphabet size out of range");
        }
        if !(0.0..=1.0).contains(&self.epsilon) {
            return bad("epsilon probability must lie in [0, 1]");
        }
        Ok(())
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_eds(seed: u64, params: &RandomParams) -> Result<EdString> {
    params.validate()?;
    Ok(random_eds_with(&mut rng(seed), params))
}

/// Draws from an existing generator; `params` must be valid.
pub fn random_eds_with<R: Rng>(rng: &mut R, params: &RandomParams) -> EdString {
    let n = rng.gen_range(params.segments.clone());
    let segments = (0..n)
        .map(|_| {
            let k = rng.gen_range(params.variants.clone());
            (0..k)
                .map(|_| {
                    if rng.gen_bool(params.epsilon) {
                        Vec::new()
                    } else {
                        let len = rng.gen_range(params.length.clone());
                        (0..len).map(|_| LETTERS[rng.gen_range(0..params.alphabet)]).collect()
                    }
                })
                .collect()
        })
        .collect();
    EdString::new(segments).expect("generated segments are valid")
}

/// `k` binary vectors of dimension `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OvInstance {
    vectors: Vec<Vec<bool>>,
}

impl OvInstance {
    pub fn new(vectors: Vec<Vec<bool>>) -> Result<Self> {
        if vectors.len() < 2 {
            return Err(Error::Invalid("need at least two vectors".into()));
        }
        let d = vectors[0].len();
        if d == 0 || vectors.iter().any(|v| v.len() != d) {
            return Err(Error::Invalid("vectors must share a positive dimension".into()));
        }
        Ok(OvInstance { vectors })
    }

    /// Parses rows of `0`/`1` characters, one vector per row.
    pub fn parse(text: &str) -> Result<Self> {
        let vectors = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.bytes()
                    .filter(|b| !b.is_ascii_whitespace())
                    .map(|b| match b {
                        b'0' => Ok(false),
                        b'1' => Ok(true),
                        _ => Err(Error::Invalid(format!("not a binary digit: {}", b as char))),
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<bool>>>>()?;
        Self::new(vectors)
    }

    pub fn vectors(&self) -> &[Vec<bool>] {
        &self.vectors
    }

    pub fn k(&self) -> usize {
        self.vectors.len()
    }

    pub fn d(&self) -> usize {
        self.vectors[0].len()
    }
}

pub fn random_ov<R: Rng>(rng: &mut R, k: RangeInclusive<usize>, d: RangeInclusive<usize>, density: f64) -> OvInstance {
    let k = rng.gen_range(k).max(2);
    let d = rng.gen_range(d).max(1);
    let vectors = (0..k).map(|_| (0..d).map(|_| rng.gen_bool(density)).collect()).collect();
    OvInstance { vectors }
}

/// The pair of ED strings whose languages meet exactly when two of the
/// vectors are orthogonal.
///
/// The first string spells, for every vector and coordinate, either `0` or
/// the complement bit. The second is a vector between two blocks of zero
/// runs whose lengths are the multiples `d * 2^i`, so the vector can be
/// placed at any of the `k` slots.
pub fn ov_to_edsi(ov: &OvInstance) -> (EdString, EdString) {
    let (k, d) = (ov.k(), ov.d());
    let mut s1 = Vec::with_capacity(k * d);
    for v in &ov.vectors {
        for &bit in v {
            s1.push(if bit { vec![b"0".to_vec()] } else { vec![b"0".to_vec(), b"1".to_vec()] });
        }
    }
    let levels = usize::BITS as usize - k.leading_zeros() as usize;
    let zeros: Vec<Vec<Vec<u8>>> = (0..levels).map(|i| vec![vec![b'0'; d << i], Vec::new()]).collect();
    let middle: Vec<Vec<u8>> =
        ov.vectors.iter().map(|v| v.iter().map(|&b| if b { b'1' } else { b'0' }).collect()).collect();
    let mut s2 = zeros.clone();
    s2.push(middle);
    s2.extend(zeros);
    (EdString::new(s1).expect("valid"), EdString::new(s2).expect("valid"))
}

/// Random compact unary string: `n` segments of distinct values up to `max`.
pub fn random_unary<R: Rng>(
    rng: &mut R,
    n: RangeInclusive<usize>,
    size: RangeInclusive<usize>,
    max: u64,
) -> CompactUnary {
    let n = rng.gen_range(n);
    let sets = (0..n)
        .map(|_| {
            let k = rng.gen_range(size.clone());
            (0..k).map(|_| rng.gen_range(0..=max)).collect()
        })
        .collect();
    CompactUnary::new(sets).expect("nonempty sets")
}

/// A random acronym instance over a small alphabet: `(dictionary, words, minlens)`.
pub fn random_acronym<R: Rng>(
    rng: &mut R,
    n: RangeInclusive<usize>,
    word_len: RangeInclusive<usize>,
    dict: RangeInclusive<usize>,
    alphabet: usize,
) -> (Vec<Vec<u8>>, Vec<Vec<u8>>, Vec<usize>) {
    let letters = &b"abcdefgh"[..alphabet.clamp(1, 8)];
    let word =
        |len: usize, rng: &mut R| (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect::<Vec<u8>>();
    let n = rng.gen_range(n);
    let words: Vec<Vec<u8>> = (0..n)
        .map(|_| {
            let len = rng.gen_range(word_len.clone());
            word(len, rng)
        })
        .collect();
    let minlens = words.iter().map(|w| if rng.gen_bool(0.3) { rng.gen_range(0..=w.len().min(2)) } else { 0 }).collect();
    let k = rng.gen_range(dict);
    let dictionary = (0..k)
        .map(|_| {
            let len = rng.gen_range(1..=n.max(1) + 1);
            word(len, rng)
        })
        .collect();
    (dictionary, words, minlens)
}
