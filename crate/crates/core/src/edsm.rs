//! Doubly elastic-degenerate string matching: occurrences of some member
//! of a pattern language inside some member of a text language.
//!
//! The text is always the first coordinate of the grid. Every `(k, 0)` is a
//! source and every `(k, end of pattern)` a sink.

use std::collections::BTreeSet;

use crate::automaton::{PathAutomaton, State};
use crate::eds::EdString;
use crate::graph::{EdgeKind, IntersectionGraph, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OccurrenceReport {
    pub found: bool,
    /// Segments of the text holding the first letter of a nonempty occurrence.
    pub starts: BTreeSet<usize>,
    /// Segments of the text holding the last letter of a nonempty occurrence.
    pub ends: BTreeSet<usize>,
}

/// Whether some pattern member is a substring of some text member. An
/// empty pattern member always occurs.
pub fn doubly_edsm(pattern: &EdString, text: &EdString) -> bool {
    scan(&IntersectionGraph::build_full(text, pattern)).0
}

/// Decision plus the start and end segments of nonempty occurrences.
pub fn doubly_edsm_report(pattern: &EdString, text: &EdString) -> OccurrenceReport {
    let (found, ends) = scan(&IntersectionGraph::build_full(text, pattern));
    let (_, back) = scan(&IntersectionGraph::build_full(&text.reverse(), &pattern.reverse()));
    let n = text.len();
    OccurrenceReport { found, starts: back.into_iter().map(|i| n - 1 - i).collect(), ends }
}

/// Segment holding the last text letter read on arriving at `s`.
pub(crate) fn end_segment(a: &PathAutomaton, s: State) -> usize {
    match a.implicit(s) {
        Some(im) => im.seg as usize,
        None => s as usize - 1,
    }
}

// Per node, a bit set of the states a path may be in: nothing read yet, the
// last text move read letters, or an empty text variant came after them.
const FRESH: u8 = 1;
const CLEAN: u8 = 2;
const TAINTED: u8 = 4;

fn scan(g: &IntersectionGraph) -> (bool, BTreeSet<usize>) {
    let p = g.product();
    let n = g.node_count();
    let mut flags = vec![0u8; n];
    for a in 0..p.a1.state_count() as State {
        let v = p.node(a, 0).expect("source node");
        flags[v as usize] |= FRESH;
    }
    for v in 0..n {
        let f = flags[v];
        if f == 0 {
            continue;
        }
        let (a, _) = g.pair(v as NodeId);
        for e in g.edges(v as NodeId) {
            if e.kind == EdgeKind::Partial {
                continue;
            }
            let t = e.target as usize;
            flags[t] |= if !e.label.is_empty() {
                CLEAN
            } else if g.pair(e.target).0 != a {
                // an empty text variant after letters taints the end
                (if f & !FRESH != 0 { TAINTED } else { 0 }) | (f & FRESH)
            } else {
                f
            };
        }
    }
    let nb = p.a2.accept();
    let mut found = false;
    let mut ends = BTreeSet::new();
    for a in 0..p.a1.state_count() as State {
        let f = flags[p.node(a, nb).expect("sink node") as usize];
        found |= f != 0;
        if f & CLEAN != 0 {
            ends.insert(end_segment(&p.a1, a));
        }
    }
    (found, ends)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eds(s: &str) -> EdString {
        EdString::parse(s).unwrap()
    }

    #[test]
    fn single_letter() {
        let r = doubly_edsm_report(&eds("{A}"), &eds("{BAB}"));
        assert!(r.found);
        assert_eq!(r.starts, BTreeSet::from([0]));
        assert_eq!(r.ends, BTreeSet::from([0]));
    }

    #[test]
    fn spans_segments() {
        let (p, t) = (eds("{CA}"), eds("{AC,A,TGCT}{,CA}"));
        assert!(doubly_edsm(&p, &t));
        let r = doubly_edsm_report(&p, &t);
        assert!(r.ends.contains(&1));
        // every occurrence reads both letters from "CA"
        assert_eq!(r.starts, BTreeSet::from([1]));
    }

    #[test]
    fn absent() {
        assert!(!doubly_edsm(&eds("{GG}"), &eds("{AC,A}{G}")));
        let r = doubly_edsm_report(&eds("{GG}"), &eds("{AC,A}{G}"));
        assert!(r.starts.is_empty() && r.ends.is_empty());
    }

    #[test]
    fn empty_pattern_member() {
        let r = doubly_edsm_report(&eds("{,Z}"), &eds("{AB}"));
        assert!(r.found);
        assert!(r.ends.is_empty());
    }

    #[test]
    fn empty_text_variant_before_end() {
        // "A" ends in segment 0 even when followed by an empty variant
        let r = doubly_edsm_report(&eds("{A}"), &eds("{A}{,B}"));
        assert_eq!(r.ends, BTreeSet::from([0]));
        assert_eq!(r.starts, BTreeSet::from([0]));
    }
}
