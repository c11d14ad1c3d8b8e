//! Deciding intersection, extracting witnesses and counting matching
//! alignment pairs.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::eds::EdString;
use crate::graph::{reachability, EdgeKind, IntersectionGraph, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WitnessResult {
    pub found: bool,
    pub witness: Vec<u8>,
}

impl WitnessResult {
    fn none() -> Self {
        WitnessResult::default()
    }

    fn some(witness: Vec<u8>) -> Self {
        WitnessResult { found: true, witness }
    }

    pub fn len(&self) -> usize {
        self.witness.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witness.is_empty()
    }
}

/// Whether the languages share a string, by streamed reachability.
pub fn intersect_decide(t1: &EdString, t2: &EdString) -> bool {
    reachability(t1, t2).accept
}

/// Some common string, following the first usable edge at every node.
pub fn witness(t1: &EdString, t2: &EdString) -> WitnessResult {
    witness_in(&IntersectionGraph::build_full(t1, t2))
}

pub fn witness_in(g: &IntersectionGraph) -> WitnessResult {
    let n = g.node_count();
    let accept = g.accept();
    let mut alive = vec![false; n];
    alive[accept as usize] = true;
    for v in (0..n).rev() {
        if !alive[v] {
            alive[v] = g.edges(v as NodeId).iter().any(|e| e.kind != EdgeKind::Partial && alive[e.target as usize]);
        }
    }
    if !alive[g.start() as usize] {
        return WitnessResult::none();
    }
    let mut out = Vec::new();
    let mut v = g.start();
    while v != accept {
        let e = g
            .edges(v)
            .iter()
            .find(|e| e.kind != EdgeKind::Partial && alive[e.target as usize])
            .expect("a live node has a live successor");
        out.extend_from_slice(g.label(e));
        v = e.target;
    }
    WitnessResult::some(out)
}

pub fn shortest_witness(t1: &EdString, t2: &EdString) -> WitnessResult {
    extreme_witness(&IntersectionGraph::build_full(t1, t2), false)
}

pub fn longest_witness(t1: &EdString, t2: &EdString) -> WitnessResult {
    extreme_witness(&IntersectionGraph::build_full(t1, t2), true)
}

/// Lightest or heaviest start-to-accept path, weights being label lengths.
pub fn extreme_witness(g: &IntersectionGraph, longest: bool) -> WitnessResult {
    let n = g.node_count();
    let mut best: Vec<Option<usize>> = vec![None; n];
    let mut parent: Vec<(NodeId, u32)> = vec![(0, 0); n];
    best[g.start() as usize] = Some(0);
    for v in 0..n {
        let Some(d) = best[v] else { continue };
        for (k, e) in g.edges(v as NodeId).iter().enumerate() {
            if e.kind == EdgeKind::Partial {
                continue;
            }
            let cand = d + e.weight();
            let t = e.target as usize;
            let better = match best[t] {
                None => true,
                Some(old) => (longest && cand > old) || (!longest && cand < old),
            };
            if better {
                best[t] = Some(cand);
                parent[t] = (v as NodeId, k as u32);
            }
        }
    }
    let accept = g.accept();
    if best[accept as usize].is_none() {
        return WitnessResult::none();
    }
    let mut parts = Vec::new();
    let mut v = accept;
    while v != g.start() {
        let (u, k) = parent[v as usize];
        parts.push(g.label(&g.edges(u)[k as usize]));
        v = u;
    }
    WitnessResult::some(parts.into_iter().rev().flatten().copied().collect())
}

/// Number of pairs of alignments, one of each ED string, spelling the same
/// string. Duplicate variants count separately.
pub fn count_matching_pairs(t1: &EdString, t2: &EdString) -> BigUint {
    count_in(&IntersectionGraph::build_full(t1, t2))
}

/// Counts the epsilon-regular start-to-accept paths: no diagonal empty
/// edges, and no vertical empty edge right after a horizontal one.
pub fn count_in(g: &IntersectionGraph) -> BigUint {
    let n = g.node_count();
    // paths ending with a positive edge, a horizontal and a vertical empty edge
    let mut s = vec![BigUint::zero(); n];
    let mut sh = vec![BigUint::zero(); n];
    let mut sv = vec![BigUint::zero(); n];
    s[g.start() as usize] = BigUint::one();
    for v in 0..n {
        if s[v].is_zero() && sh[v].is_zero() && sv[v].is_zero() {
            continue;
        }
        let all = &s[v] + &sh[v] + &sv[v];
        let no_h = &s[v] + &sv[v];
        for e in g.edges(v as NodeId) {
            let t = e.target as usize;
            match e.kind {
                EdgeKind::Partial | EdgeKind::DiagonalEps => {}
                EdgeKind::Horizontal => sh[t] += &all,
                EdgeKind::Vertical => sv[t] += &no_h,
                _ => s[t] += &all,
            }
        }
    }
    let a = g.accept() as usize;
    &s[a] + &sh[a] + &sv[a]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eds(s: &str) -> EdString {
        EdString::parse(s).unwrap()
    }

    #[test]
    fn running_pair() {
        let (t1, t2) = (eds("{AC,A,TGCT}{,CA}"), eds("{T,}{GCA,AC}"));
        assert!(intersect_decide(&t1, &t2));
        let w = witness(&t1, &t2);
        assert!(w.found && t1.contains(&w.witness) && t2.contains(&w.witness));
        // the intersection is exactly {AC}
        assert_eq!(shortest_witness(&t1, &t2).witness, b"AC");
        assert_eq!(longest_witness(&t1, &t2).witness, b"AC");
    }

    #[test]
    fn singletons() {
        assert!(!intersect_decide(&eds("{A}"), &eds("{B}")));
        assert!(!witness(&eds("{A}"), &eds("{B}")).found);
        assert_eq!(witness(&eds("XYZ"), &eds("XYZ")).witness, b"XYZ");
        assert_eq!(shortest_witness(&eds("A"), &eds("A")).witness, b"A");
        assert_eq!(longest_witness(&eds("A"), &eds("A")).witness, b"A");
    }

    #[test]
    fn counting() {
        assert_eq!(count_matching_pairs(&eds("{}{}"), &eds("{}{}")), BigUint::from(1u32));
        assert_eq!(count_matching_pairs(&eds("{a,}{b}"), &eds("{ab}")), BigUint::from(1u32));
        assert_eq!(count_matching_pairs(&eds("{A,A}"), &eds("{A}{,}")), BigUint::from(4u32));
        assert_eq!(count_matching_pairs(&eds("{A}{}"), &eds("{A}")), BigUint::from(1u32));
        assert!(count_matching_pairs(&eds("{A}"), &eds("{B}")).is_zero());
    }

    #[test]
    fn trailing_empty_segment() {
        // the only route ends with an empty edge out of the last column
        assert!(intersect_decide(&eds("{a}{}"), &eds("{a}")));
        assert!(intersect_decide(&eds("{a}"), &eds("{a}{}")));
        assert!(witness(&eds("{a}{}"), &eds("{a}")).found);
    }

    #[test]
    fn exponential_counts_stay_exact() {
        let seg = "{A,A,A,A,A,A,A,A,A,A}";
        let t = eds(&seg.repeat(30));
        let want = BigUint::from(10u32).pow(60);
        assert_eq!(count_matching_pairs(&t, &t), want);
    }
}
