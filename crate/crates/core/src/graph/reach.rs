//! Reachability in the intersection graph without materializing it.
//!
//! Cells are visited in lexicographic order. For each cell only the
//! reachable subsets of `U[i][j]` and `U'[i][j]` are needed, and they are
//! fed by the previous row and the previous cell of the same row, so the
//! working memory is one row of `U` sets plus one `U'` set.
//!
//! A reachable set is a mask whose entry 0 is the explicit state shared by
//! the family and whose entry `1 + t` is the `t`-th implicit state of the
//! segment the family ranges over.

use crate::eds::EdString;

/// A trie over sequences of `T`, children kept sorted.
#[derive(Debug, Clone)]
struct Trie<T> {
    children: Vec<Vec<(T, u32)>>,
    terminal: Vec<bool>,
}

impl<T: Copy + Ord> Trie<T> {
    fn new() -> Self {
        Trie { children: vec![Vec::new()], terminal: vec![false] }
    }

    fn child(&self, node: u32, c: T) -> Option<u32> {
        let ch = &self.children[node as usize];
        ch.binary_search_by(|&(k, _)| k.cmp(&c)).ok().map(|x| ch[x].1)
    }

    /// Inserts `s` and returns the node after each prefix, the root first.
    fn insert(&mut self, s: &[T]) -> Vec<u32> {
        let mut path = Vec::with_capacity(s.len() + 1);
        let mut node = 0u32;
        path.push(node);
        for &c in s {
            node = match self.children[node as usize].binary_search_by(|&(k, _)| k.cmp(&c)) {
                Ok(x) => self.children[node as usize][x].1,
                Err(x) => {
                    let id = self.children.len() as u32;
                    self.children.push(Vec::new());
                    self.terminal.push(false);
                    self.children[node as usize].insert(x, (c, id));
                    id
                }
            };
            path.push(node);
        }
        self.terminal[node as usize] = true;
        path
    }

    fn len(&self) -> usize {
        self.children.len()
    }
}

/// Positions `q` of `p` such that some string of `s` occupies `p[q'..q]`
/// for an active position `q'` (`w[q']` set). The empty string keeps every
/// active position active.
pub fn active_prefixes<T: Copy + Ord>(p: &[T], w: &[bool], s: &[&[T]]) -> Vec<bool> {
    assert_eq!(p.len(), w.len(), "bit vector and text differ in length");
    let mut trie = Trie::new();
    for x in s {
        trie.insert(x);
    }
    let mut v = vec![false; p.len()];
    for start in (0..p.len()).filter(|&q| w[q]) {
        if trie.terminal[0] {
            v[start] = true;
        }
        let mut node = 0u32;
        for (q, &c) in p.iter().enumerate().skip(start) {
            match trie.child(node, c) {
                Some(next) => node = next,
                None => break,
            }
            if trie.terminal[node as usize] && q + 1 < p.len() {
                v[q + 1] = true;
            }
        }
    }
    v
}

/// Local numbering of the implicit states of one segment.
struct Layout<'a> {
    vars: &'a [Vec<u8>],
    start: Vec<usize>,
    total: usize,
}

impl<'a> Layout<'a> {
    fn new(vars: &'a [Vec<u8>]) -> Self {
        let mut start = Vec::with_capacity(vars.len());
        let mut total = 0;
        for v in vars {
            start.push(total);
            total += v.len().saturating_sub(1);
        }
        Layout { vars, start, total }
    }

    /// Mask entry of the state `off` letters into variant `var`.
    fn index(&self, var: usize, off: usize) -> usize {
        if off == 0 {
            0
        } else {
            1 + self.start[var] + off - 1
        }
    }

    /// The unread rest of the variant for every state marked in `x`.
    fn suffixes<'b>(&'b self, x: &'b [bool]) -> impl Iterator<Item = &'a [u8]> + 'b {
        self.vars.iter().enumerate().flat_map(move |(v, s)| {
            let len = s.len();
            (0..len.max(1)).filter(move |&o| x[self.index(v, o)]).map(move |o| &s[o..])
        })
    }
}

fn variants(t: &EdString, i: usize) -> &[Vec<u8>] {
    if i < t.len() {
        t.segment(i).variants()
    } else {
        &[]
    }
}

/// Targets of the edges that read a whole suffix from `x` (a mask over the
/// states of `suffix_side`) and a prefix of a variant of `prefix_side`.
/// Returns the mask over the states of `prefix_side` that are reached
/// without finishing the variant, and whether some variant is finished at
/// the same time. Entry 0 of the returned mask means nothing of
/// `prefix_side` was read.
pub fn reach_step_prefix_suffix(prefix_side: &[Vec<u8>], suffix_side: &[Vec<u8>], x: &[bool]) -> (Vec<bool>, bool) {
    let (out, both, _) = prefix_suffix_units(prefix_side, suffix_side, x);
    (out, both)
}

fn prefix_suffix_units(prefix_side: &[Vec<u8>], suffix_side: &[Vec<u8>], x: &[bool]) -> (Vec<bool>, bool, usize) {
    let pl = Layout::new(prefix_side);
    let sl = Layout::new(suffix_side);
    let mut out = vec![false; 1 + pl.total];
    let mut both = false;
    if !x.iter().any(|&b| b) {
        let units = out.len();
        return (out, both, units);
    }
    let mut trie = Trie::new();
    let paths: Vec<Vec<u32>> = prefix_side.iter().map(|v| trie.insert(v)).collect();
    let mut marked = vec![false; trie.len()];
    for s in sl.suffixes(x) {
        let mut node = Some(0u32);
        for &c in s {
            node = node.and_then(|n| trie.child(n, c));
            if node.is_none() {
                break;
            }
        }
        if let Some(n) = node {
            marked[n as usize] = true;
        }
    }
    if marked[0] {
        out[0] = true;
    }
    for (v, path) in paths.iter().enumerate() {
        let len = path.len() - 1;
        for (d, &node) in path.iter().enumerate().skip(1) {
            if marked[node as usize] {
                if d == len {
                    both = true;
                } else {
                    out[pl.index(v, d)] = true;
                }
            }
        }
        if len == 0 && marked[0] {
            both = true;
        }
    }
    let units = out.len() + trie.len() * 2 + marked.len();
    (out, both, units)
}

/// Targets of the edges that read a whole variant of `label_side` and end
/// strictly inside a variant of `text_side`, starting from the states of
/// `text_side` marked in `x`. An empty variant of `label_side` maps `x` to
/// itself.
pub fn reach_step_extension(label_side: &[Vec<u8>], text_side: &[Vec<u8>], x: &[bool]) -> Vec<bool> {
    extension_units(label_side, text_side, x).0
}

const SEPARATOR: u16 = 256;

fn extension_units(label_side: &[Vec<u8>], text_side: &[Vec<u8>], x: &[bool]) -> (Vec<bool>, usize) {
    let tl = Layout::new(text_side);
    let mut out = vec![false; 1 + tl.total];
    if !x.iter().any(|&b| b) {
        let units = out.len();
        return (out, units);
    }
    if label_side.iter().any(|v| v.is_empty()) {
        out.copy_from_slice(x);
    }
    let size: usize = text_side.iter().map(|v| v.len() + 1).sum();
    let mut p = Vec::with_capacity(size);
    let mut w = Vec::with_capacity(size);
    let mut back = Vec::with_capacity(size);
    for (v, s) in text_side.iter().enumerate() {
        p.push(SEPARATOR);
        w.push(false);
        back.push(None);
        for (o, &c) in s.iter().enumerate() {
            p.push(c as u16);
            let idx = tl.index(v, o);
            w.push(x[idx]);
            back.push((o > 0).then_some(idx));
        }
    }
    let labels: Vec<Vec<u16>> =
        label_side.iter().filter(|v| !v.is_empty()).map(|v| v.iter().map(|&c| c as u16).collect()).collect();
    let refs: Vec<&[u16]> = labels.iter().map(Vec::as_slice).collect();
    let active = active_prefixes(&p, &w, &refs);
    for (q, &on) in active.iter().enumerate() {
        if on {
            if let Some(idx) = back[q] {
                out[idx] = true;
            }
        }
    }
    let units = out.len() + 4 * p.len() + labels.iter().map(|l| l.len() + 1).sum::<usize>();
    (out, units)
}

/// Outcome of a streamed reachability run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reachability {
    pub accept: bool,
    /// Number of reachable nodes.
    pub reached: usize,
    /// Largest number of mask entries and scratch words held at once.
    pub peak_units: usize,
}

/// Reachable sets of one cell: `u` over `U[i][j]`, `u_prime` over `U'[i][j]`.
pub struct CellReach<'a> {
    pub i: usize,
    pub j: usize,
    pub u: &'a [bool],
    pub u_prime: &'a [bool],
}

pub fn reachability(t1: &EdString, t2: &EdString) -> Reachability {
    stream_reachability(t1, t2, |_| {})
}

/// Streams the reachable sets of every cell to `visit` in lexicographic
/// cell order. The corner appears in both sets.
pub fn stream_reachability(t1: &EdString, t2: &EdString, mut visit: impl FnMut(CellReach<'_>)) -> Reachability {
    let (n1, n2) = (t1.len(), t2.len());
    let shape = |j: usize| 1 + Layout::new(variants(t2, j)).total;
    let mut row: Vec<Vec<bool>> = (0..=n2).map(|j| vec![false; shape(j)]).collect();
    let row_units: usize = row.iter().map(Vec::len).sum();
    row[0][0] = true;
    let mut reached = 0;
    let mut peak = 0;
    let mut accept = false;
    for i in 0..=n1 {
        let seg1 = variants(t1, i);
        let imp1 = 1 + Layout::new(seg1).total;
        let mut next: Vec<Vec<bool>> =
            if i < n1 { (0..=n2).map(|j| vec![false; shape(j)]).collect() } else { Vec::new() };
        let mut pending = vec![false; imp1];
        for j in 0..=n2 {
            let seg2 = variants(t2, j);
            let corner = row[j][0] || pending[0];
            row[j][0] = corner;
            pending[0] = corner;
            let x = std::mem::take(&mut row[j]);
            let xp = pending;
            let mut new_pending = vec![false; imp1];
            let mut scratch = 0;
            if j < n2 {
                let (ps, both, u1) = prefix_suffix_units(seg1, seg2, &x);
                or_into(&mut new_pending, &ps);
                if both && i < n1 {
                    next[j + 1][0] = true;
                }
                let (ext, u2) = extension_units(seg2, seg1, &xp);
                or_into(&mut new_pending, &ext);
                scratch = scratch.max(u1).max(u2);
            }
            if i < n1 {
                let (ext, u1) = extension_units(seg1, seg2, &x);
                or_into(&mut next[j], &ext);
                let (ps, both, u2) = prefix_suffix_units(seg2, seg1, &xp);
                or_into(&mut next[j], &ps);
                if both && j < n2 {
                    next[j + 1][0] = true;
                }
                scratch = scratch.max(u1).max(u2);
            }
            reached += x.iter().filter(|&&b| b).count() + xp.iter().skip(1).filter(|&&b| b).count();
            if i == n1 && j == n2 {
                accept = corner;
            }
            visit(CellReach { i, j, u: &x, u_prime: &xp });
            let held = row_units * if i < n1 { 2 } else { 1 } + 2 * imp1 + scratch;
            peak = peak.max(held);
            row[j] = x;
            pending = new_pending;
        }
        if i < n1 {
            row = next;
        }
    }
    Reachability { accept, reached, peak_units: peak }
}

fn or_into(dst: &mut [bool], src: &[bool]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d |= s;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_ap(p: &[u8], w: &[bool], s: &[&[u8]]) -> Vec<bool> {
        let mut v = vec![false; p.len()];
        for q in 0..p.len() {
            for qq in 0..=q {
                if w[qq] && s.iter().any(|x| &p[qq..q] == *x) {
                    v[q] = true;
                }
            }
        }
        v
    }

    #[test]
    fn ap_small() {
        let v = active_prefixes(b"aab", &[true, false, false], &[b"a".as_slice()]);
        assert_eq!(v, vec![false, true, false]);
        let w = vec![true, false, true, true];
        assert_eq!(active_prefixes(b"abcd", &w, &[b"".as_slice()]), w);
    }

    #[test]
    fn ap_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let n = rng.gen_range(1..12);
            let p: Vec<u8> = (0..n).map(|_| b"ab"[rng.gen_range(0..2)]).collect();
            let w: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.4)).collect();
            let s: Vec<Vec<u8>> = (0..rng.gen_range(0..4))
                .map(|_| (0..rng.gen_range(0..4)).map(|_| b"ab"[rng.gen_range(0..2)]).collect())
                .collect();
            let refs: Vec<&[u8]> = s.iter().map(Vec::as_slice).collect();
            assert_eq!(active_prefixes(&p, &w, &refs), brute_ap(&p, &w, &refs), "{p:?} {w:?} {s:?}");
        }
    }

    #[test]
    fn empty_sets_stay_empty() {
        let a = vec![b"ab".to_vec(), b"b".to_vec()];
        let b = vec![b"b".to_vec(), b"abc".to_vec()];
        let x = vec![false; 3];
        assert_eq!(reach_step_prefix_suffix(&a, &b, &x), (vec![false; 2], false));
        assert_eq!(reach_step_extension(&a, &b, &x), vec![false; 3]);
    }

    #[test]
    fn exact_match_from_corner() {
        let a = vec![b"xy".to_vec(), b"q".to_vec()];
        let b = vec![b"xy".to_vec()];
        let (_, both) = reach_step_prefix_suffix(&a, &b, &[true, false]);
        assert!(both);
    }

    #[test]
    fn epsilon_extension_is_identity() {
        let b = vec![b"abc".to_vec(), b"d".to_vec()];
        let x = vec![true, false, true];
        assert_eq!(reach_step_extension(&[Vec::new()], &b, &x), x);
    }

    #[test]
    fn disjoint_alphabets() {
        let t1 = EdString::parse("{AB,A}{AA}").unwrap();
        let t2 = EdString::parse("{CC}{C,CCC}").unwrap();
        let r = reachability(&t1, &t2);
        assert!(!r.accept);
        assert_eq!(r.reached, 1);
    }
}
