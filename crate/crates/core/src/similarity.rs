//! Matching statistics, longest common substring and longest common
//! subsequence of two ED strings.

use crate::automaton::{PathAutomaton, State};
use crate::eds::EdString;
use crate::graph::{Augment, EdgeKind, IntersectionGraph, NodeId};
use crate::lcp::TextArena;
use crate::{Error, Result};

/// Default limit on states plus transitions of the letter-level product.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A longest common string and its length.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Common {
    pub length: usize,
    pub witness: Vec<u8>,
}

/// Longest label path out of every node, partial edges included, with the
/// edge achieving it.
struct Longest {
    m: Vec<usize>,
    next: Vec<Option<u32>>,
}

fn longest_paths(g: &IntersectionGraph) -> Longest {
    let n = g.node_count();
    let mut m = vec![0usize; n];
    let mut next = vec![None; n];
    for v in (0..n).rev() {
        for (k, e) in g.edges(v as NodeId).iter().enumerate() {
            let rest = if e.kind == EdgeKind::Partial { 0 } else { m[e.target as usize] };
            let cand = e.weight() + rest;
            if cand > m[v] {
                m[v] = cand;
                next[v] = Some(k as u32);
            }
        }
    }
    Longest { m, next }
}

fn spell(g: &IntersectionGraph, lp: &Longest, mut v: NodeId, out: &mut Vec<u8>) {
    while let Some(k) = lp.next[v as usize] {
        let e = &g.edges(v)[k as usize];
        out.extend_from_slice(g.label(e));
        if e.kind == EdgeKind::Partial {
            break;
        }
        v = e.target;
    }
}

/// For every segment `i` of `t1`, the length of the longest prefix of a
/// string spelled by segments `i..` of `t1` that occurs inside a string of
/// `L(t2)`. Zero when not even one letter matches.
pub fn matching_statistics(t1: &EdString, t2: &EdString) -> Vec<usize> {
    ms_in(&IntersectionGraph::build_augmented(t1, t2, Augment::Forward))
}

pub fn ms_in(g: &IntersectionGraph) -> Vec<usize> {
    let lp = longest_paths(g);
    let grid = &g.product().grid;
    (0..grid.n1())
        .map(|i| {
            (0..=grid.n2())
                .flat_map(|j| {
                    let o = grid.cell_offset(i, j);
                    o..=o + grid.implicit_second(j)
                })
                .map(|v| lp.m[v])
                .max()
                .unwrap_or(0)
        })
        .collect()
}

/// Longest string occurring inside a member of each language.
pub fn longest_common_substring(t1: &EdString, t2: &EdString) -> Common {
    lcsubstring_in(&IntersectionGraph::build_augmented(t1, t2, Augment::Both))
}

pub fn lcsubstring_in(g: &IntersectionGraph) -> Common {
    let lp = longest_paths(g);
    let mut best = Common::default();
    // paths starting at a node
    if let Some((v, &len)) = lp.m.iter().enumerate().max_by_key(|&(v, &m)| (m, std::cmp::Reverse(v))) {
        if len > best.length {
            let mut w = Vec::with_capacity(len);
            spell(g, &lp, v as NodeId, &mut w);
            best = Common { length: len, witness: w };
        }
    }
    // paths starting between two implicit states
    for b in g.backward_edges() {
        let len = b.label.len() + lp.m[b.target as usize];
        if len > best.length {
            let mut w = g.product().letters(b.label).to_vec();
            spell(g, &lp, b.target, &mut w);
            best = Common { length: len, witness: w };
        }
    }
    // strings inside a single variant on both sides
    let p = g.product();
    let boundary = p.arena.span(1, 0, 0).start();
    let sa = p.index.suffix_array();
    let lcp = p.index.lcp_array();
    for r in 1..sa.len() {
        let (a, b) = (sa[r - 1] as usize, sa[r] as usize);
        if (a < boundary) != (b < boundary) && lcp[r] as usize > best.length {
            let len = lcp[r] as usize;
            best = Common { length: len, witness: p.arena.letters(crate::lcp::Span::new(b, len)).to_vec() };
        }
    }
    best
}

/// Letter-level view of a path-automaton, states indexed by topological rank.
pub(crate) struct Steps {
    /// `(letter, target rank)`, `None` for an empty variant.
    pub out: Vec<Vec<(Option<u8>, u32)>>,
    pub count: usize,
    pub transitions: usize,
}

impl Steps {
    pub fn new(a: &PathAutomaton, arena: &TextArena) -> Self {
        let order: Vec<State> = a.topo_order();
        let mut buf = Vec::new();
        let mut transitions = 0;
        let out = order
            .iter()
            .map(|&s| {
                a.steps(s, arena, &mut buf);
                transitions += buf.len();
                buf.iter().map(|&(l, t)| (l, a.topo_rank(t) as u32)).collect()
            })
            .collect();
        Steps { out, count: order.len(), transitions }
    }
}

/// States plus transitions of the product where either side may also skip
/// a letter.
pub(crate) fn product_units(s1: &Steps, s2: &Steps) -> u64 {
    let (n1, n2) = (s1.count as u64, s2.count as u64);
    let (e1, e2) = (s1.transitions as u64, s2.transitions as u64);
    n1 * n2 + n2 * e1 + n1 * e2 + e1 * e2
}

/// Longest string that is a subsequence of a member of each language.
pub fn longest_common_subsequence(t1: &EdString, t2: &EdString) -> Result<Common> {
    longest_common_subsequence_with_budget(t1, t2, DEFAULT_BUDGET)
}

pub fn longest_common_subsequence_with_budget(t1: &EdString, t2: &EdString, budget: u64) -> Result<Common> {
    let arena = TextArena::new(&[t1, t2]);
    let s1 = Steps::new(&PathAutomaton::new(t1, &arena, 0), &arena);
    let s2 = Steps::new(&PathAutomaton::new(t2, &arena, 1), &arena);
    let needed = product_units(&s1, &s2);
    if needed > budget {
        return Err(Error::BudgetExceeded { budget, needed });
    }
    let (n1, n2) = (s1.count, s2.count);
    let idx = |a: usize, b: usize| a * n2 + b;
    let mut dp = vec![-1i32; n1 * n2];
    let mut parent = vec![(u32::MAX, 0u8); n1 * n2];
    dp[0] = 0;
    let relax = |dp: &mut Vec<i32>, parent: &mut Vec<(u32, u8)>, from: usize, to: usize, val: i32, letter: u8| {
        if val > dp[to] {
            dp[to] = val;
            parent[to] = (from as u32, letter);
        }
    };
    for a in 0..n1 {
        for b in 0..n2 {
            let here = idx(a, b);
            let d = dp[here];
            if d < 0 {
                continue;
            }
            for &(_, ta) in &s1.out[a] {
                relax(&mut dp, &mut parent, here, idx(ta as usize, b), d, 0);
            }
            for &(_, tb) in &s2.out[b] {
                relax(&mut dp, &mut parent, here, idx(a, tb as usize), d, 0);
            }
            for &(la, ta) in &s1.out[a] {
                let Some(x) = la else { continue };
                for &(lb, tb) in &s2.out[b] {
                    if lb == Some(x) {
                        relax(&mut dp, &mut parent, here, idx(ta as usize, tb as usize), d + 1, x);
                    }
                }
            }
        }
    }
    let mut v = idx(n1 - 1, n2 - 1);
    let length = dp[v] as usize;
    let mut witness = Vec::with_capacity(length);
    while v != 0 {
        let (u, x) = parent[v];
        if x != 0 {
            witness.push(x);
        }
        v = u as usize;
    }
    witness.reverse();
    Ok(Common { length, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::lcs_len;

    fn eds(s: &str) -> EdString {
        EdString::parse(s).unwrap()
    }

    #[test]
    fn running_pair_ms() {
        assert_eq!(matching_statistics(&eds("{AC,A,TGCT}{,CA}"), &eds("{T,}{GCA,AC}")), vec![3, 2]);
    }

    #[test]
    fn disjoint_ms() {
        assert_eq!(matching_statistics(&eds("{AB}{A,B}"), &eds("{CD}")), vec![0, 0]);
    }

    #[test]
    fn substring_cases() {
        let c = longest_common_substring(&eds("{ABC}"), &eds("{ABC}"));
        assert_eq!((c.length, c.witness.as_slice()), (3, b"ABC".as_slice()));
        let c = longest_common_substring(&eds("{xABCx}"), &eds("{yABCy}"));
        assert_eq!((c.length, c.witness.as_slice()), (3, b"ABC".as_slice()));
        let t1 = eds("{AC,A,TGCT}{,CA}");
        let t2 = eds("{T,}{GCA,AC}");
        let c = longest_common_substring(&t1, &t2);
        assert!(c.length >= 3);
        assert_eq!(c.witness.len(), c.length);
    }

    #[test]
    fn subsequence_cases() {
        let c = longest_common_subsequence(&eds("{AB}"), &eds("{BA}")).unwrap();
        assert_eq!(c.length, 1);
        for (a, b) in [("ACGTTGCA", "GATTACA"), ("AAAA", "AA"), ("ABCBDAB", "BDCABA")] {
            let c = longest_common_subsequence(&eds(a), &eds(b)).unwrap();
            assert_eq!(c.length, lcs_len(a.as_bytes(), b.as_bytes()));
            assert_eq!(lcs_len(&c.witness, a.as_bytes()), c.length);
            assert_eq!(lcs_len(&c.witness, b.as_bytes()), c.length);
        }
    }

    #[test]
    fn subsequence_budget() {
        let err = longest_common_subsequence_with_budget(&eds("{ABCD}"), &eds("{ABCD}"), 10).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 10, .. }));
    }
}
