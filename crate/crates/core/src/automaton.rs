//! Path-automata of ED strings.
//!
//! States are numbered `0..=n` for the explicit states (state `i` sits
//! before segment `i`, state `n` accepts) and from `n + 1` onwards for the
//! implicit states, one per interior position of every variant, grouped by
//! segment, then variant, then offset.

use crate::eds::EdString;
use crate::lcp::{Span, TextArena};

pub type State = u32;

/// Where an implicit state sits: `off` letters into `var` of segment `seg`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Implicit {
    pub seg: u32,
    pub var: u32,
    pub off: u32,
}

/// An outgoing transition of a state, possibly a suffix of a variant when
/// the state is implicit. `span` is the unread part inside the arena.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Label {
    pub seg: u32,
    pub var: u32,
    pub offset: u32,
    pub span: Span,
}

impl Label {
    pub fn len(&self) -> usize {
        self.span.len()
    }

    pub fn is_empty(&self) -> bool {
        self.span.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct PathAutomaton {
    n: usize,
    /// First implicit state of each segment, plus a final sentinel.
    seg_start: Vec<State>,
    /// Per segment, the local index of each variant's first implicit state.
    var_start: Vec<Vec<u32>>,
    spans: Vec<Vec<Span>>,
    info: Vec<Implicit>,
}

impl PathAutomaton {
    /// Automaton of `t`, whose variants are stored as input `input` of `arena`.
    pub fn new(t: &EdString, arena: &TextArena, input: usize) -> Self {
        let n = t.len();
        let mut seg_start = Vec::with_capacity(n + 1);
        let mut var_start = Vec::with_capacity(n);
        let mut spans = Vec::with_capacity(n);
        let mut info = Vec::new();
        let mut next = (n + 1) as State;
        for (i, seg) in t.segments().iter().enumerate() {
            seg_start.push(next);
            let mut starts = Vec::with_capacity(seg.len());
            let mut local = 0u32;
            for (v, var) in seg.variants().iter().enumerate() {
                starts.push(local);
                for off in 1..var.len() {
                    info.push(Implicit { seg: i as u32, var: v as u32, off: off as u32 });
                }
                local += var.len().saturating_sub(1) as u32;
            }
            next += local;
            var_start.push(starts);
            spans.push(arena.segment_spans(input, i).to_vec());
        }
        seg_start.push(next);
        PathAutomaton { n, seg_start, var_start, spans, info }
    }

    /// Number of segments.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn start(&self) -> State {
        0
    }

    pub fn accept(&self) -> State {
        self.n as State
    }

    pub fn state_count(&self) -> usize {
        self.n + 1 + self.info.len()
    }

    pub fn implicit_total(&self) -> usize {
        self.info.len()
    }

    pub fn is_explicit(&self, s: State) -> bool {
        (s as usize) <= self.n
    }

    pub fn implicit(&self, s: State) -> Option<Implicit> {
        if self.is_explicit(s) {
            None
        } else {
            Some(self.info[s as usize - self.n - 1])
        }
    }

    /// Implicit states inside segment `i`; zero for the accepting state.
    pub fn implicit_count(&self, i: usize) -> usize {
        if i >= self.n {
            0
        } else {
            (self.seg_start[i + 1] - self.seg_start[i]) as usize
        }
    }

    /// Segment and position of an implicit state among its segment's
    /// implicit states.
    pub fn local(&self, s: State) -> (usize, usize) {
        let im = self.implicit(s).expect("implicit state");
        (im.seg as usize, (s - self.seg_start[im.seg as usize]) as usize)
    }

    pub fn by_local(&self, seg: usize, local: usize) -> State {
        self.seg_start[seg] + local as State
    }

    /// Local index of the implicit state `off` letters into `var`.
    pub fn local_of(&self, seg: usize, var: usize, off: usize) -> usize {
        self.var_start[seg][var] as usize + off - 1
    }

    pub fn variant_count(&self, seg: usize) -> usize {
        self.spans[seg].len()
    }

    pub fn variant_span(&self, seg: usize, var: usize) -> Span {
        self.spans[seg][var]
    }

    pub fn variant_spans(&self, seg: usize) -> &[Span] {
        &self.spans[seg]
    }

    pub fn epsilon_count(&self, seg: usize) -> usize {
        if seg >= self.n {
            0
        } else {
            self.spans[seg].iter().filter(|s| s.is_empty()).count()
        }
    }

    /// The state reached after reading `off` letters of `var` in `seg`.
    pub fn state_at(&self, seg: usize, var: usize, off: usize) -> State {
        let len = self.spans[seg][var].len();
        if off == 0 {
            seg as State
        } else if off == len {
            seg as State + 1
        } else {
            self.by_local(seg, self.local_of(seg, var, off))
        }
    }

    /// The state reached from `label`'s source after reading `x` of its letters.
    pub fn advance(&self, label: &Label, x: usize) -> State {
        self.state_at(label.seg as usize, label.var as usize, label.offset as usize + x)
    }

    /// Outgoing transitions of `s`: every variant of segment `s` when
    /// explicit, the rest of its variant when implicit.
    pub fn labels(&self, s: State) -> Labels<'_> {
        match self.implicit(s) {
            Some(im) => {
                let full = self.spans[im.seg as usize][im.var as usize];
                let rest = full.slice(im.off as usize, full.len() - im.off as usize);
                Labels { aut: self, seg: im.seg, next: im.var, end: im.var + 1, offset: im.off, rest: Some(rest) }
            }
            None if (s as usize) < self.n => {
                Labels { aut: self, seg: s, next: 0, end: self.spans[s as usize].len() as u32, offset: 0, rest: None }
            }
            None => Labels { aut: self, seg: 0, next: 0, end: 0, offset: 0, rest: None },
        }
    }

    /// Position in topological order of the uncompacted automaton.
    pub fn topo_rank(&self, s: State) -> usize {
        match self.implicit(s) {
            None => s as usize + (self.seg_start[s as usize] as usize - self.n - 1),
            Some(im) => {
                let seg = im.seg as usize;
                seg + 1 + (s as usize - self.n - 1)
            }
        }
    }

    /// The states in topological order.
    pub fn topo_order(&self) -> Vec<State> {
        let mut order = Vec::with_capacity(self.state_count());
        for i in 0..=self.n {
            order.push(i as State);
            if i < self.n {
                order.extend(self.seg_start[i]..self.seg_start[i + 1]);
            }
        }
        order
    }

    /// Letter-level transitions out of `s` as `(letter, target)`, with `None`
    /// for the empty variants.
    pub fn steps(&self, s: State, arena: &TextArena, out: &mut Vec<(Option<u8>, State)>) {
        out.clear();
        for l in self.labels(s) {
            if l.is_empty() {
                out.push((None, s + 1));
            } else {
                out.push((Some(arena.letters(l.span)[0]), self.advance(&l, 1)));
            }
        }
    }

    /// The same state in the automaton of the reversed ED string.
    pub fn mirror(&self, s: State, reversed: &PathAutomaton) -> State {
        match self.implicit(s) {
            None => (self.n - s as usize) as State,
            Some(im) => {
                let len = self.spans[im.seg as usize][im.var as usize].len();
                reversed.state_at(self.n - 1 - im.seg as usize, im.var as usize, len - im.off as usize)
            }
        }
    }
}

pub struct Labels<'a> {
    aut: &'a PathAutomaton,
    seg: u32,
    next: u32,
    end: u32,
    offset: u32,
    rest: Option<Span>,
}

impl Iterator for Labels<'_> {
    type Item = Label;

    fn next(&mut self) -> Option<Label> {
        if self.next >= self.end {
            return None;
        }
        let var = self.next;
        self.next += 1;
        let span = self.rest.unwrap_or_else(|| self.aut.spans[self.seg as usize][var as usize]);
        Some(Label { seg: self.seg, var, offset: self.offset, span })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = (self.end - self.next) as usize;
        (k, Some(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> (EdString, TextArena, PathAutomaton) {
        let t = EdString::parse(s).unwrap();
        let arena = TextArena::new(&[&t]);
        let a = PathAutomaton::new(&t, &arena, 0);
        (t, arena, a)
    }

    #[test]
    fn numbering() {
        let (_, arena, a) = build("{AC,A,TGCT}{,CA}");
        assert_eq!(a.n(), 2);
        // AC gives 1, TGCT gives 3, CA gives 1
        assert_eq!(a.state_count(), 3 + 5);
        assert_eq!(a.implicit_count(0), 4);
        assert_eq!(a.implicit_count(1), 1);
        assert_eq!(a.implicit_count(2), 0);
        assert_eq!(a.implicit(3), Some(Implicit { seg: 0, var: 0, off: 1 }));
        assert_eq!(a.implicit(4), Some(Implicit { seg: 0, var: 2, off: 1 }));
        assert_eq!(a.implicit(7), Some(Implicit { seg: 1, var: 1, off: 1 }));
        assert_eq!(a.state_at(0, 2, 3), 6);
        assert_eq!(a.state_at(0, 2, 4), 1);
        assert_eq!(a.state_at(1, 0, 0), 1);
        let labels: Vec<_> = a.labels(5).map(|l| arena.letters(l.span).to_vec()).collect();
        assert_eq!(labels, vec![b"CT".to_vec()]);
        assert_eq!(a.labels(1).count(), 2);
        assert_eq!(a.labels(2).count(), 0);
        assert_eq!(a.epsilon_count(1), 1);
    }

    #[test]
    fn topological_ranks() {
        let (_, arena, a) = build("{AC,A,TGCT}{,CA}{G}");
        let order = a.topo_order();
        for (r, &s) in order.iter().enumerate() {
            assert_eq!(a.topo_rank(s), r);
        }
        let mut steps = Vec::new();
        for s in 0..a.state_count() as State {
            a.steps(s, &arena, &mut steps);
            for &(_, t) in &steps {
                assert!(a.topo_rank(t) > a.topo_rank(s));
            }
        }
    }

    #[test]
    fn mirror_round_trip() {
        let (t, _, a) = build("{AC,A,TGCT}{,CA}{GGG}");
        let r = t.reverse();
        let arena = TextArena::new(&[&r]);
        let b = PathAutomaton::new(&r, &arena, 0);
        for s in 0..a.state_count() as State {
            assert_eq!(b.mirror(a.mirror(s, &b), &a), s);
        }
        assert_eq!(a.mirror(0, &b), 3);
        // one letter into TGCT is three letters into TCGT
        assert_eq!(b.implicit(a.mirror(a.state_at(0, 2, 1), &b)), Some(Implicit { seg: 2, var: 2, off: 3 }));
    }
}
