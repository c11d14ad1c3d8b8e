//! ED strings over a one-letter alphabet, where a segment is just a set of
//! lengths and the language is a set of integers.
//!
//! Sets are combined by sumsets computed with an exact number-theoretic
//! transform. Running time depends on the represented lengths, not on the
//! size of the compact input.

use crate::eds::EdString;
use crate::{Error, Result};

/// Sorted, duplicate-free lengths.
pub type LengthSet = Vec<u64>;

/// A unary ED string as one set of lengths per segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactUnary {
    sets: Vec<LengthSet>,
}

impl CompactUnary {
    /// Sorts and deduplicates every set; rejects empty sets and an empty list.
    pub fn new(mut sets: Vec<Vec<u64>>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::Invalid("a unary string needs at least one segment".into()));
        }
        for (i, s) in sets.iter_mut().enumerate() {
            if s.is_empty() {
                return Err(Error::Invalid(format!("segment {i} has no lengths")));
            }
            s.sort_unstable();
            s.dedup();
        }
        Ok(CompactUnary { sets })
    }

    /// One segment per line, comma-separated decimal lengths. Blank lines
    /// are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut sets = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let set = line
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<u64>()
                        .map_err(|e| Error::Invalid(format!("line {}: bad length {:?}: {e}", line_no + 1, x.trim())))
                })
                .collect::<Result<Vec<u64>>>()?;
            sets.push(set);
        }
        CompactUnary::new(sets)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sets {
            let line: Vec<String> = s.iter().map(u64::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Reads an ED string whose variants all repeat a single letter.
    pub fn from_eds(t: &EdString) -> Result<Self> {
        let mut letter = None;
        let mut sets = Vec::with_capacity(t.len());
        for seg in t.segments() {
            let mut set = Vec::with_capacity(seg.len());
            for v in seg.variants() {
                for &c in v {
                    if *letter.get_or_insert(c) != c {
                        return Err(Error::Invalid("more than one letter".into()));
                    }
                }
                set.push(v.len() as u64);
            }
            sets.push(set);
        }
        CompactUnary::new(sets)
    }

    /// Spells every length with `letter`.
    pub fn to_eds(&self, letter: u8) -> Result<EdString> {
        EdString::new(self.sets.iter().map(|s| s.iter().map(|&l| vec![letter; l as usize]).collect()).collect())
    }

    pub fn sets(&self) -> &[LengthSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Largest represented length.
    pub fn max_length(&self) -> u64 {
        self.sets.iter().map(|s| *s.last().unwrap()).sum()
    }
}

const MOD: u64 = 998_244_353;
const ROOT: u64 = 3;
/// Longest transform the modulus supports.
const MAX_NTT: usize = 1 << 23;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= MOD;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % MOD;
        }
        b = b * b % MOD;
        e >>= 1;
    }
    r
}

fn ntt(a: &mut [u64], invert: bool) {
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w = pow_mod(ROOT, (MOD - 1) / len as u64);
        if invert {
            w = pow_mod(w, MOD - 2);
        }
        for chunk in a.chunks_mut(len) {
            let mut wn = 1;
            let (lo, hi) = chunk.split_at_mut(len / 2);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let u = *x;
                let v = *y * wn % MOD;
                *x = (u + v) % MOD;
                *y = (u + MOD - v) % MOD;
                wn = wn * w % MOD;
            }
        }
        len <<= 1;
    }
    if invert {
        let inv = pow_mod(n as u64, MOD - 2);
        a.iter_mut().for_each(|x| *x = *x * inv % MOD);
    }
}

/// `{x + y : x in a, y in b}`.
pub fn sumset(a: &[u64], b: &[u64]) -> LengthSet {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (amax, bmax) = (*a.iter().max().unwrap(), *b.iter().max().unwrap());
    let span = (amax + bmax + 1) as usize;
    if (a.len() as u128) * (b.len() as u128) <= 4 * span as u128 || span > MAX_NTT {
        return direct_sumset(a, b, span);
    }
    let size = span.next_power_of_two();
    let mut fa = vec![0u64; size];
    let mut fb = vec![0u64; size];
    a.iter().for_each(|&x| fa[x as usize] = 1);
    b.iter().for_each(|&x| fb[x as usize] = 1);
    ntt(&mut fa, false);
    ntt(&mut fb, false);
    fa.iter_mut().zip(&fb).for_each(|(x, y)| *x = *x * y % MOD);
    ntt(&mut fa, true);
    // counts never exceed min(|a|, |b|) < MOD, so nonzero means present
    fa[..span].iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i as u64).collect()
}

fn direct_sumset(a: &[u64], b: &[u64], span: usize) -> LengthSet {
    let mut seen = vec![false; span];
    for &x in a {
        for &y in b {
            seen[(x + y) as usize] = true;
        }
    }
    seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i as u64).collect()
}

/// The language of `t`, halving the segment list and combining with sumsets.
pub fn compute_lengths(t: &CompactUnary) -> LengthSet {
    fn go(sets: &[LengthSet]) -> LengthSet {
        match sets.len() {
            0 => vec![0],
            1 => sets[0].clone(),
            k => sumset(&go(&sets[..k / 2]), &go(&sets[k / 2..])),
        }
    }
    go(&t.sets)
}

/// Lengths in both languages.
pub fn unary_intersect(t1: &CompactUnary, t2: &CompactUnary) -> LengthSet {
    let (a, b) = (compute_lengths(t1), compute_lengths(t2));
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_unary, rng};
    use crate::oracle::{brute_sumset, brute_unary_lengths};
    use rand::Rng;

    fn cu(sets: &[&[u64]]) -> CompactUnary {
        CompactUnary::new(sets.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    #[test]
    fn small_sumsets() {
        assert_eq!(sumset(&[0], &[5]), vec![5]);
        assert_eq!(sumset(&[1, 2], &[0, 3]), vec![1, 2, 4, 5]);
        assert!(sumset(&[], &[1]).is_empty());
    }

    #[test]
    fn transform_path_matches_double_loop() {
        let mut r = rng(11);
        for _ in 0..20 {
            let a: Vec<u64> = (0..r.gen_range(50..300)).map(|_| r.gen_range(0..=4096)).collect();
            let b: Vec<u64> = (0..r.gen_range(50..300)).map(|_| r.gen_range(0..=4096)).collect();
            assert_eq!(sumset(&a, &b), brute_sumset(&a, &b));
        }
    }

    #[test]
    fn lengths_and_intersection() {
        assert_eq!(compute_lengths(&cu(&[&[1, 2]])), vec![1, 2]);
        assert_eq!(compute_lengths(&cu(&[&[1, 2], &[0, 3]])), vec![1, 2, 4, 5]);
        assert_eq!(unary_intersect(&cu(&[&[1, 2], &[0, 3]]), &cu(&[&[4]])), vec![4]);
        let mut r = rng(3);
        for _ in 0..50 {
            let t = random_unary(&mut r, 1..=8, 1..=4, 256);
            assert_eq!(compute_lengths(&t), brute_unary_lengths(t.sets()));
        }
    }

    #[test]
    fn text_format() {
        let t = CompactUnary::parse("3,1,1\n0\n\n").unwrap();
        assert_eq!(t.sets(), &[vec![1, 3], vec![0]]);
        assert_eq!(t.to_text(), "1,3\n0\n");
        assert!(CompactUnary::parse("1,x").is_err());
        assert!(CompactUnary::parse("").is_err());
        assert!(CompactUnary::new(vec![vec![]]).is_err());
    }

    #[test]
    fn eds_round_trip() {
        let t = cu(&[&[0, 2], &[1]]);
        let e = t.to_eds(b'a').unwrap();
        assert_eq!(CompactUnary::from_eds(&e).unwrap(), t);
        assert!(CompactUnary::from_eds(&EdString::parse("{ab}").unwrap()).is_err());
    }
}
