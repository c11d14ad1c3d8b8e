//! The intersection graph of two path-automata.
//!
//! Nodes are the pairs of states with at least one explicit member. For
//! explicit `i` of the first automaton and explicit `j` of the second, the
//! cell `(i, j)` holds the corner `(i, j)`, the pairs `(i, k)` for the
//! implicit states `k` of segment `j`, and the pairs `(k, j)` for the
//! implicit states `k` of segment `i`. Node ids enumerate the cells in
//! lexicographic order, which is a topological order of the graph: every
//! edge leaves cell `(i, j)` for `(i, j + 1)`, `(i + 1, j)` or `(i + 1, j + 1)`.

mod cell;
pub mod reach;

pub use reach::{active_prefixes, reachability, Reachability};

use std::fmt::Write as _;

use crate::automaton::{Label, PathAutomaton, State};
use crate::eds::EdString;
use crate::lcp::{LcpIndex, Span, TextArena};

pub type NodeId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    /// The first label ends first; the target is in `U[i+1][j]`.
    FirstEnds,
    /// The second label ends first; the target is in `U'[i][j+1]`.
    SecondEnds,
    /// Both labels end together at `(i+1, j+1)`.
    BothEnd,
    /// An empty variant of the first string.
    Vertical,
    /// An empty variant of the second string.
    Horizontal,
    /// Empty variants on both sides at once.
    DiagonalEps,
    /// The labels diverge before either ends; the target is a pair of
    /// implicit states kept in [`IntersectionGraph::loose`].
    Partial,
}

impl EdgeKind {
    pub fn name(self) -> &'static str {
        match self {
            EdgeKind::FirstEnds => "first-ends",
            EdgeKind::SecondEnds => "second-ends",
            EdgeKind::BothEnd => "both-end",
            EdgeKind::Vertical => "vertical-eps",
            EdgeKind::Horizontal => "horizontal-eps",
            EdgeKind::DiagonalEps => "diagonal-eps",
            EdgeKind::Partial => "partial",
        }
    }

    pub fn is_epsilon(self) -> bool {
        matches!(self, EdgeKind::Vertical | EdgeKind::Horizontal | EdgeKind::DiagonalEps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    /// A node id, or an index into the loose targets for partial edges.
    pub target: u32,
    /// The letters read, as a span of the joint arena.
    pub label: Span,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn weight(&self) -> usize {
        self.label.len()
    }
}

/// A backward-maximal partial edge: it starts at a pair of implicit states
/// and reads `label` up to a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BackEdge {
    pub source: (State, State),
    pub target: NodeId,
    pub label: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Augment {
    None,
    Forward,
    Both,
}

/// Node numbering of the grid.
#[derive(Debug, Clone)]
pub struct Grid {
    n1: usize,
    n2: usize,
    imp1: Vec<usize>,
    imp2: Vec<usize>,
    col_pref: Vec<usize>,
    row_off: Vec<usize>,
}

impl Grid {
    pub fn new(a1: &PathAutomaton, a2: &PathAutomaton) -> Self {
        let (n1, n2) = (a1.n(), a2.n());
        let imp1: Vec<usize> = (0..=n1).map(|i| a1.implicit_count(i)).collect();
        let imp2: Vec<usize> = (0..=n2).map(|j| a2.implicit_count(j)).collect();
        let mut col_pref = vec![0usize; n2 + 2];
        for j in 0..=n2 {
            col_pref[j + 1] = col_pref[j] + 1 + imp2[j];
        }
        let mut row_off = vec![0usize; n1 + 2];
        for i in 0..=n1 {
            row_off[i + 1] = row_off[i] + col_pref[n2 + 1] + (n2 + 1) * imp1[i];
        }
        Grid { n1, n2, imp1, imp2, col_pref, row_off }
    }

    pub fn node_count(&self) -> usize {
        self.row_off[self.n1 + 1]
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Id of the corner of cell `(i, j)`; the cell's nodes follow it.
    pub fn cell_offset(&self, i: usize, j: usize) -> usize {
        self.row_off[i] + self.col_pref[j] + j * self.imp1[i]
    }

    pub fn cell_size(&self, i: usize, j: usize) -> usize {
        1 + self.imp2[j] + self.imp1[i]
    }

    pub fn cell_nodes(&self, i: usize, j: usize) -> std::ops::Range<NodeId> {
        let o = self.cell_offset(i, j);
        o as NodeId..(o + self.cell_size(i, j)) as NodeId
    }

    pub fn implicit_first(&self, i: usize) -> usize {
        self.imp1[i]
    }

    pub fn implicit_second(&self, j: usize) -> usize {
        self.imp2[j]
    }

    /// Cell containing node `id`.
    pub fn cell_of(&self, id: NodeId) -> (usize, usize) {
        let id = id as usize;
        let i = self.row_off.partition_point(|&o| o <= id) - 1;
        let r = id - self.row_off[i];
        let (mut lo, mut hi) = (0usize, self.n2);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if self.col_pref[mid] + mid * self.imp1[i] <= r {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        (i, lo)
    }
}

/// The two automata over a joint arena, with LCP queries between labels.
#[derive(Debug, Clone)]
pub struct Product {
    pub arena: TextArena,
    pub index: LcpIndex,
    pub a1: PathAutomaton,
    pub a2: PathAutomaton,
    pub grid: Grid,
}

impl Product {
    pub fn new(t1: &EdString, t2: &EdString) -> Self {
        let arena = TextArena::new(&[t1, t2]);
        let index = LcpIndex::build(&arena);
        let a1 = PathAutomaton::new(t1, &arena, 0);
        let a2 = PathAutomaton::new(t2, &arena, 1);
        let grid = Grid::new(&a1, &a2);
        Product { arena, index, a1, a2, grid }
    }

    pub fn node(&self, a: State, b: State) -> Option<NodeId> {
        let g = &self.grid;
        let id = match (self.a1.implicit(a), self.a2.implicit(b)) {
            (None, None) => g.cell_offset(a as usize, b as usize),
            (None, Some(_)) => {
                let (j, t) = self.a2.local(b);
                g.cell_offset(a as usize, j) + 1 + t
            }
            (Some(_), None) => {
                let (i, t) = self.a1.local(a);
                g.cell_offset(i, b as usize) + 1 + g.imp2[b as usize] + t
            }
            (Some(_), Some(_)) => return None,
        };
        Some(id as NodeId)
    }

    pub fn pair(&self, id: NodeId) -> (State, State) {
        let g = &self.grid;
        let (i, j) = g.cell_of(id);
        let r = id as usize - g.cell_offset(i, j);
        if r == 0 {
            (i as State, j as State)
        } else if r <= g.imp2[j] {
            (i as State, self.a2.by_local(j, r - 1))
        } else {
            (self.a1.by_local(i, r - 1 - g.imp2[j]), j as State)
        }
    }

    pub fn start(&self) -> NodeId {
        0
    }

    pub fn accept(&self) -> NodeId {
        self.grid.cell_offset(self.grid.n1, self.grid.n2) as NodeId
    }

    #[inline]
    pub fn lcp(&self, l1: &Label, l2: &Label) -> usize {
        if l1.is_empty() || l2.is_empty() {
            0
        } else {
            self.index.lcp(l1.span.start(), l2.span.start()).min(l1.len()).min(l2.len())
        }
    }

    /// Calls `f(kind, target, label)` for every edge out of `(p, q)`, where
    /// `target` is a pair of states. Partial edges are produced only when
    /// `partial` is set.
    pub fn for_each_edge(&self, p: State, q: State, partial: bool, mut f: impl FnMut(EdgeKind, (State, State), Span)) {
        for l1 in self.a1.labels(p) {
            if l1.is_empty() {
                continue;
            }
            for l2 in self.a2.labels(q) {
                if l2.is_empty() {
                    continue;
                }
                let l = self.lcp(&l1, &l2);
                let read = l1.span.slice(0, l);
                let (e1, e2) = (l == l1.len(), l == l2.len());
                if e1 && e2 {
                    f(EdgeKind::BothEnd, (p_end(&self.a1, &l1), p_end(&self.a2, &l2)), read);
                } else if e1 {
                    f(EdgeKind::FirstEnds, (p_end(&self.a1, &l1), self.a2.advance(&l2, l)), read);
                } else if e2 {
                    f(EdgeKind::SecondEnds, (self.a1.advance(&l1, l), p_end(&self.a2, &l2)), read);
                } else if partial && l > 0 {
                    f(EdgeKind::Partial, (self.a1.advance(&l1, l), self.a2.advance(&l2, l)), read);
                }
            }
        }
        let eps1 = if self.a1.is_explicit(p) { self.a1.epsilon_count(p as usize) } else { 0 };
        let eps2 = if self.a2.is_explicit(q) { self.a2.epsilon_count(q as usize) } else { 0 };
        for _ in 0..eps1 {
            f(EdgeKind::Vertical, (p + 1, q), Span::default());
        }
        for _ in 0..eps2 {
            f(EdgeKind::Horizontal, (p, q + 1), Span::default());
        }
        for _ in 0..eps1 * eps2 {
            f(EdgeKind::DiagonalEps, (p + 1, q + 1), Span::default());
        }
    }

    /// Letters of `span`.
    pub fn letters(&self, span: Span) -> &[u8] {
        self.arena.letters(span)
    }
}

fn p_end(a: &PathAutomaton, l: &Label) -> State {
    a.advance(l, l.len())
}

/// A materialized intersection graph in compressed adjacency form.
#[derive(Debug, Clone)]
pub struct IntersectionGraph {
    product: Product,
    offsets: Vec<u32>,
    edges: Vec<Edge>,
    loose: Vec<(State, State)>,
    backward: Vec<BackEdge>,
    augment: Augment,
}

impl IntersectionGraph {
    /// The graph without partial edges.
    pub fn build_full(t1: &EdString, t2: &EdString) -> Self {
        Self::build(t1, t2, Augment::None)
    }

    /// The graph with maximal partial edges: forward ones always, backward
    /// ones too when `augment` is [`Augment::Both`].
    pub fn build_augmented(t1: &EdString, t2: &EdString, augment: Augment) -> Self {
        Self::build(t1, t2, augment)
    }

    fn build(t1: &EdString, t2: &EdString, augment: Augment) -> Self {
        let product = Product::new(t1, t2);
        let count = product.grid.node_count();
        let partial = augment != Augment::None;
        let mut offsets = Vec::with_capacity(count + 1);
        let mut edges = Vec::new();
        let mut loose = Vec::new();
        offsets.push(0u32);
        for id in 0..count as NodeId {
            let (p, q) = product.pair(id);
            product.for_each_edge(p, q, partial, |kind, (a, b), label| {
                let target = if kind == EdgeKind::Partial {
                    loose.push((a, b));
                    (loose.len() - 1) as u32
                } else {
                    product.node(a, b).expect("edge target is a grid node")
                };
                edges.push(Edge { target, label, kind });
            });
            offsets.push(u32::try_from(edges.len()).expect("edge count fits in 32 bits"));
        }
        let backward = if augment == Augment::Both { backward_edges(&product, t1, t2) } else { Vec::new() };
        IntersectionGraph { product, offsets, edges, loose, backward, augment }
    }

    pub fn product(&self) -> &Product {
        &self.product
    }

    pub fn augment(&self) -> Augment {
        self.augment
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn start(&self) -> NodeId {
        self.product.start()
    }

    pub fn accept(&self) -> NodeId {
        self.product.accept()
    }

    pub fn edges(&self, v: NodeId) -> &[Edge] {
        &self.edges[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    pub fn all_edges(&self) -> impl Iterator<Item = (NodeId, &Edge)> + '_ {
        (0..self.node_count() as NodeId).flat_map(move |v| self.edges(v).iter().map(move |e| (v, e)))
    }

    /// Target of a partial edge.
    pub fn loose(&self, index: u32) -> (State, State) {
        self.loose[index as usize]
    }

    pub fn backward_edges(&self) -> &[BackEdge] {
        &self.backward
    }

    pub fn pair(&self, v: NodeId) -> (State, State) {
        self.product.pair(v)
    }

    pub fn node(&self, a: State, b: State) -> Option<NodeId> {
        self.product.node(a, b)
    }

    pub fn label(&self, e: &Edge) -> &[u8] {
        self.product.letters(e.label)
    }

    /// Target pair of any edge, partial ones included.
    pub fn target_pair(&self, e: &Edge) -> (State, State) {
        if e.kind == EdgeKind::Partial {
            self.loose(e.target)
        } else {
            self.pair(e.target)
        }
    }

    /// Nodes reachable from the given sources, skipping partial edges.
    pub fn reachable_from(&self, sources: &[NodeId], sinks: impl Fn(NodeId) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        for &s in sources {
            seen[s as usize] = true;
        }
        for v in 0..self.node_count() {
            if !seen[v] || sinks(v as NodeId) {
                continue;
            }
            for e in self.edges(v as NodeId) {
                if e.kind != EdgeKind::Partial {
                    seen[e.target as usize] = true;
                }
            }
        }
        seen
    }

    pub fn accepts(&self) -> bool {
        self.reachable_from(&[self.start()], |_| false)[self.accept() as usize]
    }

    /// Debug listing, one edge per line: `src_a src_b -> dst_a dst_b label kind`,
    /// with automaton state ids and `-` for an empty label.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (v, e) in self.all_edges() {
            let (a, b) = self.pair(v);
            let (c, d) = self.target_pair(e);
            let label = self.label(e);
            let label = if label.is_empty() { "-".to_string() } else { String::from_utf8_lossy(label).into_owned() };
            let _ = writeln!(out, "{a} {b} -> {c} {d} {label} {}", e.kind.name());
        }
        for b in &self.backward {
            let (c, d) = self.pair(b.target);
            let label = String::from_utf8_lossy(self.product.letters(b.label));
            let _ = writeln!(out, "{} {} -> {c} {d} {label} backward", b.source.0, b.source.1);
        }
        out
    }

    /// Edges out of the nodes of cell `(i, j)`.
    pub fn cell_edges(&self, i: usize, j: usize) -> Vec<(NodeId, Edge)> {
        self.product.grid.cell_nodes(i, j).flat_map(|v| self.edges(v).iter().map(move |e| (v, *e))).collect()
    }
}

pub use cell::build_cell_edges;

/// Incoming transitions of a state as `(segment, variant, letters read)`.
fn incoming(a: &PathAutomaton, s: State) -> Vec<(usize, usize, usize)> {
    match a.implicit(s) {
        Some(im) => vec![(im.seg as usize, im.var as usize, im.off as usize)],
        None if s > 0 => {
            let seg = s as usize - 1;
            a.variant_spans(seg).iter().enumerate().map(|(v, sp)| (seg, v, sp.len())).collect()
        }
        None => Vec::new(),
    }
}

/// Backward-maximal partial edges: for each node and each pair of
/// incoming transitions, the longest common suffix of the letters read so
/// far, when it is shorter than both.
fn backward_edges(product: &Product, t1: &EdString, t2: &EdString) -> Vec<BackEdge> {
    let (r1, r2) = (t1.reverse(), t2.reverse());
    let rarena = TextArena::new(&[&r1, &r2]);
    let rindex = LcpIndex::build(&rarena);
    let (n1, n2) = (t1.len(), t2.len());
    let mut out = Vec::new();
    for id in 0..product.grid.node_count() as NodeId {
        let (p, q) = product.pair(id);
        let in1 = incoming(&product.a1, p);
        let in2 = incoming(&product.a2, q);
        for &(s1, v1, o1) in &in1 {
            if o1 == 0 {
                continue;
            }
            let span1 = product.a1.variant_span(s1, v1);
            let rs1 = rarena.span(0, n1 - 1 - s1, v1);
            for &(s2, v2, o2) in &in2 {
                if o2 == 0 {
                    continue;
                }
                let span2 = product.a2.variant_span(s2, v2);
                let rs2 = rarena.span(1, n2 - 1 - s2, v2);
                let l = rindex.lcp(rs1.start() + span1.len() - o1, rs2.start() + span2.len() - o2).min(o1).min(o2);
                if l > 0 && l < o1 && l < o2 {
                    let source = (product.a1.state_at(s1, v1, o1 - l), product.a2.state_at(s2, v2, o2 - l));
                    out.push(BackEdge { source, target: id, label: span1.slice(o1 - l, l) });
                }
            }
        }
    }
    out
}
