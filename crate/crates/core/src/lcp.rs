//! Suffix array, LCP array and constant-time longest-common-prefix queries
//! over a text arena holding every variant of one or more ED strings.
//!
//! Each variant is followed by its own separator symbol, so a common prefix
//! can never run from one variant into the next.

use crate::eds::{Alphabet, EdString};
use crate::{Error, Result};

/// Location of a variant inside an arena.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Span {
    pub start: u32,
    pub len: u32,
}

impl Span {
    pub fn new(start: usize, len: usize) -> Self {
        Span { start: start as u32, len: len as u32 }
    }

    pub fn start(&self) -> usize {
        self.start as usize
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn end(&self) -> usize {
        (self.start + self.len) as usize
    }

    /// The sub-span of the first `len` symbols after skipping `skip`.
    pub fn slice(&self, skip: usize, len: usize) -> Span {
        debug_assert!(skip + len <= self.len());
        Span::new(self.start() + skip, len)
    }
}

/// Concatenation of all variants of the given ED strings, each followed by a
/// unique separator. Separators take the symbols `0..separator_count`, letters
/// are shifted above them by their rank in the joint alphabet.
#[derive(Debug, Clone)]
pub struct TextArena {
    text: Vec<u32>,
    letters: Vec<u8>,
    spans: Vec<Vec<Vec<Span>>>,
    letter_base: u32,
}

impl TextArena {
    pub fn new(inputs: &[&EdString]) -> Self {
        let alphabet = inputs.iter().fold(Alphabet::default(), |acc, t| acc.union(t.alphabet()));
        let variant_count: usize = inputs.iter().map(|t| t.stats().m).sum();
        let letter_base = variant_count as u32;
        let total: usize = inputs.iter().map(|t| t.letter_count()).sum::<usize>() + variant_count;
        let mut text = Vec::with_capacity(total);
        let mut letters = Vec::with_capacity(total);
        let mut next_sep = 0u32;
        let spans = inputs
            .iter()
            .map(|t| {
                t.segments()
                    .iter()
                    .map(|seg| {
                        seg.variants()
                            .iter()
                            .map(|v| {
                                let span = Span::new(text.len(), v.len());
                                for &b in v {
                                    text.push(letter_base + alphabet.rank(b).expect("letter in alphabet"));
                                    letters.push(b);
                                }
                                text.push(next_sep);
                                letters.push(b'#');
                                next_sep += 1;
                                span
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        TextArena { text, letters, spans, letter_base }
    }

    /// Arena over raw strings (used for dictionaries and word lists).
    pub fn from_strings<S: AsRef<[u8]>>(groups: &[&[S]]) -> Self {
        let alphabet =
            Alphabet::from_letters(groups.iter().flat_map(|g| g.iter()).flat_map(|s| s.as_ref().iter().copied()));
        let letter_base: u32 = groups.iter().map(|g| g.len() as u32).sum();
        let mut text = Vec::new();
        let mut letters = Vec::new();
        let mut next_sep = 0u32;
        let spans = groups
            .iter()
            .map(|g| {
                let spans = g
                    .iter()
                    .map(|s| {
                        let s = s.as_ref();
                        let span = Span::new(text.len(), s.len());
                        for &b in s {
                            text.push(letter_base + alphabet.rank(b).unwrap());
                            letters.push(b);
                        }
                        text.push(next_sep);
                        letters.push(b'#');
                        next_sep += 1;
                        span
                    })
                    .collect();
                vec![spans]
            })
            .collect();
        TextArena { text, letters, spans, letter_base }
    }

    pub fn text(&self) -> &[u32] {
        &self.text
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn letter_base(&self) -> u32 {
        self.letter_base
    }

    pub fn span(&self, input: usize, segment: usize, variant: usize) -> Span {
        self.spans[input][segment][variant]
    }

    pub fn segment_spans(&self, input: usize, segment: usize) -> &[Span] {
        &self.spans[input][segment]
    }

    /// The original letters covered by `span`.
    pub fn letters(&self, span: Span) -> &[u8] {
        &self.letters[span.start()..span.end()]
    }

    pub fn input_count(&self) -> usize {
        self.spans.len()
    }

    pub fn is_separator(&self, pos: usize) -> bool {
        self.text[pos] < self.letter_base
    }
}

/// Suffix array with inverse, LCP array and a sparse table for range minima.
#[derive(Debug, Clone)]
pub struct LcpIndex {
    sa: Vec<u32>,
    rank: Vec<u32>,
    lcp: Vec<u32>,
    sparse: Vec<Vec<u32>>,
    run_len: Vec<u32>,
}

impl LcpIndex {
    pub fn build(arena: &TextArena) -> Self {
        Self::new(arena.text(), arena.letter_base())
    }

    /// Symbols below `letter_base` are separators and must each be unique.
    pub fn new(text: &[u32], letter_base: u32) -> Self {
        let sa = suffix_array(text);
        let mut rank = vec![0u32; text.len()];
        for (r, &p) in sa.iter().enumerate() {
            rank[p as usize] = r as u32;
        }
        let lcp = kasai(text, &sa, &rank);
        let sparse = sparse_table(&lcp);
        let mut run_len = vec![0u32; text.len()];
        for p in (0..text.len()).rev() {
            run_len[p] = if text[p] < letter_base { 0 } else { 1 + run_len.get(p + 1).copied().unwrap_or(0) };
        }
        LcpIndex { sa, rank, lcp, sparse, run_len }
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    pub fn suffix_array(&self) -> &[u32] {
        &self.sa
    }

    /// `lcp_array()[r]` is the LCP of the suffixes ranked `r - 1` and `r`.
    pub fn lcp_array(&self) -> &[u32] {
        &self.lcp
    }

    pub fn rank(&self, pos: usize) -> usize {
        self.rank[pos] as usize
    }

    /// Length of the longest common prefix of the suffixes at `i` and `j`,
    /// never extending past a separator.
    #[inline]
    pub fn lcp(&self, i: usize, j: usize) -> usize {
        if i == j {
            return self.run_len[i] as usize;
        }
        let (a, b) = (self.rank[i], self.rank[j]);
        let (lo, hi) = if a < b { (a + 1, b) } else { (b + 1, a) };
        self.range_min(lo as usize, hi as usize) as usize
    }

    pub fn try_lcp(&self, i: usize, j: usize) -> Result<usize> {
        for p in [i, j] {
            if p >= self.len() {
                return Err(Error::OutOfRange { pos: p, len: self.len() });
            }
        }
        Ok(self.lcp(i, j))
    }

    /// LCP of two spans, capped at the shorter span.
    #[inline]
    pub fn lcp_spans(&self, a: Span, b: Span) -> usize {
        if a.is_empty() || b.is_empty() {
            return 0;
        }
        self.lcp(a.start(), b.start()).min(a.len()).min(b.len())
    }

    fn range_min(&self, lo: usize, hi: usize) -> u32 {
        let k = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
        self.sparse[k][lo].min(self.sparse[k][hi + 1 - (1 << k)])
    }
}

/// Prefix doubling over integer symbols.
pub fn suffix_array(text: &[u32]) -> Vec<u32> {
    let n = text.len();
    if n == 0 {
        return Vec::new();
    }
    let mut sa: Vec<u32> = (0..n as u32).collect();
    let mut rank: Vec<u32> = text.to_vec();
    let mut tmp = vec![0u32; n];
    let mut k = 1;
    loop {
        let key = |i: u32| {
            let i = i as usize;
            let second = if i + k < n { rank[i + k] as u64 + 1 } else { 0 };
            ((rank[i] as u64) << 32) | second
        };
        sa.sort_unstable_by_key(|&i| key(i));
        tmp[sa[0] as usize] = 0;
        for w in 1..n {
            let bump = (key(sa[w - 1]) != key(sa[w])) as u32;
            tmp[sa[w] as usize] = tmp[sa[w - 1] as usize] + bump;
        }
        std::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1] as usize] as usize == n - 1 {
            break;
        }
        k *= 2;
    }
    sa
}

fn kasai(text: &[u32], sa: &[u32], rank: &[u32]) -> Vec<u32> {
    let n = text.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && text[i + h] == text[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

fn sparse_table(values: &[u32]) -> Vec<Vec<u32>> {
    let mut table = vec![values.to_vec()];
    let mut width = 1;
    while 2 * width <= values.len() {
        let prev = table.last().unwrap();
        let row = (0..=values.len() - 2 * width).map(|i| prev[i].min(prev[i + width])).collect();
        table.push(row);
        width *= 2;
    }
    table
}
