//! Brute-force reference answers by plain enumeration.
//!
//! Nothing here touches the automata or the intersection graph: languages
//! are expanded string by string and compared with textbook routines. Each
//! function refuses instances above its cap with [`Error::CapExceeded`].

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::eds::EdString;
use crate::gen::OvInstance;
use crate::{Error, Result};

/// Largest number of alignments expanded for one ED string.
pub const LANGUAGE_CAP: u128 = 20_000;
/// Largest number of string pairs compared one by one.
pub const PAIR_CAP: u128 = 100_000;

pub use crate::approx::Metric;

fn language(t: &EdString) -> Result<BTreeSet<Vec<u8>>> {
    t.enumerate_language(LANGUAGE_CAP)
}

fn check_pairs(a: usize, b: usize, cap: u128) -> Result<()> {
    let estimate = a as u128 * b as u128;
    if estimate > cap {
        Err(Error::CapExceeded { cap, estimate })
    } else {
        Ok(())
    }
}

/// The strings common to both languages.
pub fn brute_intersect(t1: &EdString, t2: &EdString) -> Result<BTreeSet<Vec<u8>>> {
    let l1 = language(t1)?;
    let l2 = language(t2)?;
    Ok(l1.intersection(&l2).cloned().collect())
}

/// Every alignment's string, with multiplicity.
fn alignments(t: &EdString) -> Result<HashMap<Vec<u8>, u128>> {
    let estimate = t.alignment_count();
    if estimate > LANGUAGE_CAP {
        return Err(Error::CapExceeded { cap: LANGUAGE_CAP, estimate });
    }
    let mut all: Vec<Vec<u8>> = vec![Vec::new()];
    for seg in t.segments() {
        all = all
            .iter()
            .flat_map(|p| {
                seg.variants().iter().map(move |v| {
                    let mut s = p.clone();
                    s.extend_from_slice(v);
                    s
                })
            })
            .collect();
    }
    let mut counts = HashMap::new();
    for s in all {
        *counts.entry(s).or_insert(0u128) += 1;
    }
    Ok(counts)
}

/// Number of pairs of alignments, one per ED string, spelling the same string.
pub fn brute_pairs_count(t1: &EdString, t2: &EdString) -> Result<u128> {
    let a = alignments(t1)?;
    let b = alignments(t2)?;
    Ok(a.iter().map(|(s, x)| x * b.get(s).copied().unwrap_or(0)).sum())
}

/// Every substring of every string, as a set.
fn substrings(strings: &BTreeSet<Vec<u8>>) -> HashSet<Vec<u8>> {
    let mut out = HashSet::new();
    for s in strings {
        for a in 0..=s.len() {
            for b in a..=s.len() {
                out.insert(s[a..b].to_vec());
            }
        }
    }
    out
}

/// For each segment `i` of `t1`, the longest prefix of a string spelled by
/// segments `i..` of `t1` that occurs in a string of `L(t2)`.
pub fn brute_ms(t1: &EdString, t2: &EdString) -> Result<Vec<usize>> {
    let subs = substrings(&language(t2)?);
    let mut ms = Vec::with_capacity(t1.len());
    for i in 0..t1.len() {
        let tail = EdString::new(t1.segments()[i..].iter().map(|s| s.variants().to_vec()).collect())?;
        let mut best = 0;
        for s in language(&tail)? {
            let mut l = s.len();
            while l > best && !subs.contains(&s[..l]) {
                l -= 1;
            }
            best = best.max(l);
        }
        ms.push(best);
    }
    Ok(ms)
}

/// Longest string occurring in a member of each language.
pub fn brute_lcsubstring(t1: &EdString, t2: &EdString) -> Result<(usize, Vec<u8>)> {
    let subs = substrings(&language(t2)?);
    let mut best: Vec<u8> = Vec::new();
    for s in language(t1)? {
        for a in 0..s.len() {
            for b in (a + best.len() + 1..=s.len()).rev() {
                if subs.contains(&s[a..b]) {
                    best = s[a..b].to_vec();
                    break;
                }
            }
        }
    }
    Ok((best.len(), best))
}

/// Classic quadratic longest common subsequence length.
pub fn lcs_len(a: &[u8], b: &[u8]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for &x in a {
        for (j, &y) in b.iter().enumerate() {
            cur[j + 1] = if x == y { prev[j] + 1 } else { prev[j + 1].max(cur[j]) };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Longest common subsequence over all pairs of members.
pub fn brute_lcsubsequence(t1: &EdString, t2: &EdString, pair_cap: u128) -> Result<usize> {
    let l1 = language(t1)?;
    let l2 = language(t2)?;
    check_pairs(l1.len(), l2.len(), pair_cap)?;
    let mut best = 0;
    for a in &l1 {
        for b in &l2 {
            if a.len().min(b.len()) > best {
                best = best.max(lcs_len(a, b));
            }
        }
    }
    Ok(best)
}

/// Levenshtein distance.
pub fn edit_distance(a: &[u8], b: &[u8]) -> usize {
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0usize; b.len() + 1];
    for (i, &x) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, &y) in b.iter().enumerate() {
            cur[j + 1] = (prev[j] + usize::from(x != y)).min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

pub fn hamming_distance(a: &[u8], b: &[u8]) -> Option<usize> {
    (a.len() == b.len()).then(|| a.iter().zip(b).filter(|(x, y)| x != y).count())
}

pub fn distance(metric: Metric, a: &[u8], b: &[u8]) -> Option<usize> {
    match metric {
        Metric::Hamming => hamming_distance(a, b),
        Metric::Edit => Some(edit_distance(a, b)),
    }
}

/// Smallest distance between a member of each language, or `None` when no
/// pair is comparable (Hamming with disjoint lengths).
pub fn brute_min_distance(t1: &EdString, t2: &EdString, metric: Metric, pair_cap: u128) -> Result<Option<usize>> {
    let l1 = language(t1)?;
    let l2 = language(t2)?;
    check_pairs(l1.len(), l2.len(), pair_cap)?;
    let mut best: Option<usize> = None;
    for a in &l1 {
        for b in &l2 {
            if metric == Metric::Edit && best.is_some_and(|d| a.len().abs_diff(b.len()) >= d) {
                continue;
            }
            if let Some(d) = distance(metric, a, b) {
                best = Some(best.map_or(d, |x| x.min(d)));
            }
        }
    }
    Ok(best)
}

/// Every alignment of `t` as its string and the segment of each letter.
fn labelled_alignments(t: &EdString) -> Result<BTreeSet<(Vec<u8>, Vec<usize>)>> {
    let estimate = t.alignment_count();
    if estimate > LANGUAGE_CAP {
        return Err(Error::CapExceeded { cap: LANGUAGE_CAP, estimate });
    }
    let mut all: BTreeSet<(Vec<u8>, Vec<usize>)> = BTreeSet::from([(Vec::new(), Vec::new())]);
    for (i, seg) in t.segments().iter().enumerate() {
        let mut next = BTreeSet::new();
        for (s, l) in &all {
            for v in seg.variants() {
                let mut s = s.clone();
                let mut l = l.clone();
                s.extend_from_slice(v);
                l.extend(std::iter::repeat_n(i, v.len()));
                next.insert((s, l));
            }
        }
        all = next;
    }
    Ok(all)
}

/// Occurrences of pattern members inside text members.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdsmAnswer {
    pub found: bool,
    /// Segments holding the last letter of a nonempty occurrence.
    pub ends: BTreeSet<usize>,
    /// Segments holding the first letter of a nonempty occurrence.
    pub starts: BTreeSet<usize>,
}

pub fn brute_edsm(pattern: &EdString, text: &EdString) -> Result<EdsmAnswer> {
    let pl = language(pattern)?;
    let max_len = pl.iter().map(Vec::len).max().unwrap_or(0);
    let mut ans = EdsmAnswer { found: pl.contains(&Vec::new()), ..EdsmAnswer::default() };
    for (s, labels) in labelled_alignments(text)? {
        for a in 0..s.len() {
            for b in a + 1..=s.len().min(a + max_len) {
                if pl.contains(&s[a..b]) {
                    ans.found = true;
                    ans.starts.insert(labels[a]);
                    ans.ends.insert(labels[b - 1]);
                }
            }
        }
    }
    Ok(ans)
}

/// Best approximate occurrence of a pattern member in a text member.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ApproxEdsmAnswer {
    /// Smallest distance to any window of the text, the empty one included.
    pub distance: Option<usize>,
    /// Segments holding the last letter of a nonempty window within the bound.
    pub ends: BTreeSet<usize>,
}

/// Approximate occurrences. With `k` given, ends of windows at distance at
/// most `k` are reported; without it, ends of windows at the minimum.
pub fn brute_approx_edsm(
    pattern: &EdString,
    text: &EdString,
    metric: Metric,
    k: Option<usize>,
    work_cap: u128,
) -> Result<ApproxEdsmAnswer> {
    let pl = language(pattern)?;
    let tl = labelled_alignments(text)?;
    let work: u128 = (pl.iter().map(|p| p.len() as u128 + 1).sum::<u128>())
        * tl.iter().map(|(s, _)| s.len() as u128 + 1).sum::<u128>();
    if work > work_cap {
        return Err(Error::CapExceeded { cap: work_cap, estimate: work });
    }
    // best[s] over nonempty windows ending in segment s
    let mut per_end: HashMap<usize, usize> = HashMap::new();
    let mut best: Option<usize> = None;
    let mut note = |d: usize, end: Option<usize>, best: &mut Option<usize>| {
        *best = Some(best.map_or(d, |b| b.min(d)));
        if let Some(e) = end {
            let x = per_end.entry(e).or_insert(d);
            *x = (*x).min(d);
        }
    };
    for p in &pl {
        for (t, labels) in &tl {
            match metric {
                Metric::Hamming => {
                    if p.is_empty() {
                        note(0, None, &mut best);
                        continue;
                    }
                    for a in 0..t.len() {
                        if a + p.len() > t.len() {
                            break;
                        }
                        let d = hamming_distance(p, &t[a..a + p.len()]).unwrap();
                        note(d, Some(labels[a + p.len() - 1]), &mut best);
                    }
                }
                Metric::Edit => {
                    note(p.len(), None, &mut best);
                    for (b, d) in sellers_nonempty(p, t).into_iter().enumerate().skip(1) {
                        note(d, Some(labels[b - 1]), &mut best);
                    }
                }
            }
        }
    }
    let limit = match (k, best) {
        (Some(k), _) => Some(k),
        (None, b) => b,
    };
    let ends = match limit {
        Some(l) => per_end.into_iter().filter(|&(_, d)| d <= l).map(|(e, _)| e).collect(),
        None => BTreeSet::new(),
    };
    Ok(ApproxEdsmAnswer { distance: best, ends })
}

/// For each `b`, the smallest edit distance between `p` and a nonempty
/// window `t[a..b]` (entry 0 is unused).
fn sellers_nonempty(p: &[u8], t: &[u8]) -> Vec<usize> {
    let inf = usize::MAX / 4;
    let m = p.len();
    // any[i][b]: windows t[a..b] with a <= b; nonempty[i][b]: a < b
    let mut any_prev = vec![0usize; t.len() + 1];
    let mut ne_prev = vec![inf; t.len() + 1];
    // row 0: ED(eps, t[a..b]) = b - a, smallest nonempty window is 1
    for x in ne_prev.iter_mut().skip(1) {
        *x = 1;
    }
    for i in 1..=m {
        let mut any_cur = vec![0usize; t.len() + 1];
        let mut ne_cur = vec![inf; t.len() + 1];
        any_cur[0] = i;
        for b in 1..=t.len() {
            let sub = usize::from(p[i - 1] != t[b - 1]);
            let v = (any_prev[b - 1] + sub).min(any_cur[b - 1] + 1).min(ne_prev[b] + 1);
            ne_cur[b] = v;
            any_cur[b] = v.min(i);
        }
        any_prev = any_cur;
        ne_prev = ne_cur;
    }
    ne_prev
}

/// Whether two vectors have no common one.
pub fn has_orthogonal_pair(ov: &OvInstance) -> bool {
    let v = ov.vectors();
    (0..v.len()).any(|a| (a + 1..v.len()).any(|b| v[a].iter().zip(&v[b]).all(|(x, y)| !(*x && *y))))
}

/// All `{x + y}` by a double loop.
pub fn brute_sumset(a: &[u64], b: &[u64]) -> Vec<u64> {
    let set: BTreeSet<u64> = a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect();
    set.into_iter().collect()
}

/// Lengths of a unary language by expanding segment after segment.
pub fn brute_unary_lengths(sets: &[Vec<u64>]) -> Vec<u64> {
    let mut cur = vec![0u64];
    for s in sets {
        cur = brute_sumset(&cur, s);
    }
    cur
}

/// The dictionary strings that split into prefixes of the words, word `i`
/// contributing at least `minlens[i]` letters, by trying every combination
/// of prefix lengths.
pub fn brute_acronym(dict: &[Vec<u8>], words: &[Vec<u8>], minlens: &[usize]) -> BTreeSet<Vec<u8>> {
    let mut made = HashSet::new();
    let wanted: HashSet<&[u8]> = dict.iter().map(Vec::as_slice).collect();
    let prefixes: HashSet<&[u8]> = dict.iter().flat_map(|d| (0..=d.len()).map(move |l| &d[..l])).collect();
    fn go(
        i: usize,
        cur: &mut Vec<u8>,
        words: &[Vec<u8>],
        minlens: &[usize],
        prefixes: &HashSet<&[u8]>,
        made: &mut HashSet<Vec<u8>>,
    ) {
        if !prefixes.contains(cur.as_slice()) {
            return;
        }
        if i == words.len() {
            made.insert(cur.clone());
            return;
        }
        for l in minlens[i]..=words[i].len() {
            let before = cur.len();
            cur.extend_from_slice(&words[i][..l]);
            go(i + 1, cur, words, minlens, prefixes, made);
            cur.truncate(before);
        }
    }
    go(0, &mut Vec::new(), words, minlens, &prefixes, &mut made);
    dict.iter().filter(|d| made.contains(d.as_slice()) && wanted.contains(d.as_slice())).cloned().collect()
}
