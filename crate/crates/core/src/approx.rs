//! Approximate intersection and approximate ED pattern matching under the
//! Hamming and edit distances.
//!
//! The unbounded solvers run shortest paths on the letter-level product of
//! the two automata, where matches cost 0 and every substitution, insertion
//! or deletion costs 1. The bounded solvers stay on the compacted grid:
//! each pair of labels yields weighted edges for every alignment of one
//! label against a prefix of the other that costs at most `k`.

use std::collections::BTreeSet;

use crate::automaton::{Label, PathAutomaton, State};
use crate::dial::Dial;
use crate::eds::EdString;
use crate::edsm::end_segment;
use crate::graph::{NodeId, Product};
use crate::lcp::{Span, TextArena};
use crate::similarity::{product_units, Steps, DEFAULT_BUDGET};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Hamming,
    Edit,
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hamming" => Ok(Metric::Hamming),
            "edit" => Ok(Metric::Edit),
            _ => Err(Error::Invalid(format!("unknown metric {s:?}"))),
        }
    }
}

/// Smallest distance found and a pair of strings achieving it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DistanceResult {
    /// `None` when no pair is within reach: no equal lengths for Hamming,
    /// or nothing within the bound.
    pub distance: Option<usize>,
    pub pair: Option<(Vec<u8>, Vec<u8>)>,
}

/// Approximate occurrences of a pattern in a text.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ApproxMatch {
    /// Distance between a pattern member and the best window of a text
    /// member; the pair is `(pattern string, window)`.
    pub result: DistanceResult,
    /// Text segments holding the last letter of a nonempty window within
    /// the bound, or at the minimum distance when no bound is given.
    pub ends: BTreeSet<usize>,
}

/// Endpoint rules of a search: plain intersection, or pattern matching with
/// the text on the first coordinate.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Intersect,
    Match,
}

/// Tracks whether the last move of the text side read a letter. 0: nothing
/// read yet, 1: the last text move read a letter, 2: it crossed an empty
/// variant afterwards.
fn next_flag(flag: u8, text_moved: bool, text_read: bool) -> u8 {
    if text_read {
        1
    } else if text_moved && flag != 0 {
        2
    } else {
        flag
    }
}

pub fn approx_intersect(t1: &EdString, t2: &EdString, metric: Metric) -> Result<DistanceResult> {
    approx_intersect_with_budget(t1, t2, metric, DEFAULT_BUDGET)
}

pub fn approx_intersect_with_budget(
    t1: &EdString,
    t2: &EdString,
    metric: Metric,
    budget: u64,
) -> Result<DistanceResult> {
    Ok(letter_search(t1, t2, metric, Mode::Intersect, None, budget)?.result)
}

/// Approximate occurrences of `pattern` in `text`. With `k`, windows up to
/// distance `k` are reported and the search stays on the compacted graph.
pub fn approx_edsm(pattern: &EdString, text: &EdString, metric: Metric, k: Option<usize>) -> Result<ApproxMatch> {
    match k {
        Some(k) => {
            check_k(k)?;
            Ok(compact_search(text, pattern, metric, k, Mode::Match))
        }
        None => letter_search(text, pattern, metric, Mode::Match, None, DEFAULT_BUDGET),
    }
}

/// Like [`approx_edsm`] without a bound but on the letter-level product,
/// reporting windows up to `k` when given.
pub fn approx_edsm_unbounded(
    pattern: &EdString,
    text: &EdString,
    metric: Metric,
    k: Option<usize>,
    budget: u64,
) -> Result<ApproxMatch> {
    letter_search(text, pattern, metric, Mode::Match, k, budget)
}

pub fn approx_intersect_bounded(t1: &EdString, t2: &EdString, metric: Metric, k: usize) -> Result<DistanceResult> {
    check_k(k)?;
    Ok(compact_search(t1, t2, metric, k, Mode::Intersect).result)
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::Invalid("the bound k must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Shortest paths on the letter-level product. The first string is the
/// text when matching, and results are reported as `(second, first)` then.
fn letter_search(
    t1: &EdString,
    t2: &EdString,
    metric: Metric,
    mode: Mode,
    report_k: Option<usize>,
    budget: u64,
) -> Result<ApproxMatch> {
    let arena = TextArena::new(&[t1, t2]);
    let s1 = Steps::new(&PathAutomaton::new(t1, &arena, 0), &arena);
    let s2 = Steps::new(&PathAutomaton::new(t2, &arena, 1), &arena);
    let needed = product_units(&s1, &s2);
    if needed > budget {
        return Err(Error::BudgetExceeded { budget, needed });
    }
    let (n1, n2) = (s1.count, s2.count);
    let layers = if mode == Mode::Match { 3 } else { 1 };
    let id = |a: usize, b: usize, f: u8| ((a * n2 + b) * layers + f as usize) as u32;
    let total = n1 * n2 * layers;
    let mut dist = vec![u32::MAX; total];
    let mut parent = vec![(u32::MAX, 0u8, 0u8); total];
    let bound = arena.len();
    let mut queue = Dial::new(bound);
    let sources: Vec<u32> = match mode {
        Mode::Intersect => vec![id(0, 0, 0)],
        Mode::Match => (0..n1).map(|a| id(a, 0, 0)).collect(),
    };
    for &s in &sources {
        dist[s as usize] = 0;
        queue.push(s, 0);
    }
    while let Some((v, d)) = queue.pop() {
        if dist[v as usize] as usize != d {
            continue;
        }
        let f = (v as usize % layers) as u8;
        let ab = v as usize / layers;
        let (a, b) = (ab / n2, ab % n2);
        let mut relax = |ta: usize, tb: usize, cost: usize, la: u8, lb: u8, queue: &mut Dial| {
            let flag = if layers == 1 { 0 } else { next_flag(f, ta != a, la != 0) };
            let t = id(ta, tb, flag) as usize;
            let nd = d + cost;
            if (nd as u32) < dist[t] {
                dist[t] = nd as u32;
                parent[t] = (v, la, lb);
                queue.push(t as u32, nd);
            }
        };
        for &(la, ta) in &s1.out[a] {
            match la {
                None => relax(ta as usize, b, 0, 0, 0, &mut queue),
                Some(x) => {
                    for &(lb, tb) in &s2.out[b] {
                        if let Some(y) = lb {
                            relax(ta as usize, tb as usize, usize::from(x != y), x, y, &mut queue);
                        }
                    }
                    if metric == Metric::Edit {
                        relax(ta as usize, b, 1, x, 0, &mut queue);
                    }
                }
            }
        }
        for &(lb, tb) in &s2.out[b] {
            match lb {
                None => relax(a, tb as usize, 0, 0, 0, &mut queue),
                Some(y) if metric == Metric::Edit => relax(a, tb as usize, 1, 0, y, &mut queue),
                Some(_) => {}
            }
        }
    }
    let targets: Vec<(usize, u8)> = match mode {
        Mode::Intersect => vec![(n1 - 1, 0)],
        Mode::Match => (0..n1).flat_map(|a| (0..3u8).map(move |f| (a, f))).collect(),
    };
    let best = targets
        .iter()
        .map(|&(a, f)| (dist[id(a, n2 - 1, f) as usize], id(a, n2 - 1, f)))
        .filter(|&(d, _)| d != u32::MAX)
        .min();
    let mut out = ApproxMatch::default();
    let Some((bd, bv)) = best else { return Ok(out) };
    let (mut w1, mut w2) = (Vec::new(), Vec::new());
    let mut v = bv;
    while dist[v as usize] != 0 || parent[v as usize].0 != u32::MAX {
        let (u, x, y) = parent[v as usize];
        if u == u32::MAX {
            break;
        }
        if x != 0 {
            w1.push(x);
        }
        if y != 0 {
            w2.push(y);
        }
        v = u;
    }
    w1.reverse();
    w2.reverse();
    out.result.distance = Some(bd as usize);
    out.result.pair = Some(match mode {
        Mode::Intersect => (w1, w2),
        Mode::Match => (w2, w1),
    });
    if mode == Mode::Match {
        let limit = report_k.unwrap_or(bd as usize);
        let a1 = PathAutomaton::new(t1, &arena, 0);
        let order = a1.topo_order();
        for (a, &state) in order.iter().enumerate() {
            let d = dist[id(a, n2 - 1, 1) as usize];
            if d != u32::MAX && d as usize <= limit {
                out.ends.insert(end_segment(&a1, state));
            }
        }
    }
    Ok(out)
}

/// A label or, when `None`, staying put.
type Side = Option<Label>;

fn side_len(l: &Side) -> usize {
    l.map_or(0, |l| l.len())
}

/// State after reading `j` letters of `l` from `s`; the whole of an empty
/// variant crosses it.
fn land(a: &PathAutomaton, s: State, l: &Side, j: usize) -> State {
    match l {
        None => s,
        Some(l) if j == l.len() => {
            if l.is_empty() {
                l.seg + 1
            } else {
                a.advance(l, j)
            }
        }
        Some(l) => a.advance(l, j),
    }
}

fn side_span(l: &Side, j: usize) -> Span {
    l.map_or(Span::default(), |l| l.span.slice(0, j))
}

/// Mismatches between `x` and the first `|x|` letters of `y`, stopping
/// once above `k`.
fn hamming_jumps(p: &Product, x: Span, y: Span, k: usize) -> usize {
    let len = x.len();
    let (mut pos, mut errs) = (0, 0);
    while pos < len {
        pos += p.index.lcp(x.start() + pos, y.start() + pos).min(len - pos);
        if pos < len {
            errs += 1;
            pos += 1;
            if errs > k {
                break;
            }
        }
    }
    errs
}

/// For every prefix `y[..j]` within distance `k` of the whole of `x`, the
/// pair `(j, distance)`, by furthest-reaching diagonals.
fn edit_prefixes(p: &Product, x: Span, y: Span, k: usize, out: &mut Vec<(usize, usize)>) {
    out.clear();
    let (n, m) = (x.len() as i64, y.len() as i64);
    let k = k as i64;
    let width = (2 * k + 3) as usize;
    let off = k + 1;
    let mut prev = vec![i64::MIN; width];
    let mut cur = vec![i64::MIN; width];
    let mut found = vec![false; (m + 1) as usize];
    let slide = |i: i64, d: i64| -> i64 {
        let j = i + d;
        if i >= n || j >= m {
            return i;
        }
        let l = p.index.lcp(x.start() + i as usize, y.start() + j as usize) as i64;
        i + l.min(n - i).min(m - j)
    };
    for e in 0..=k {
        for d in -e..=e {
            let slot = (d + off) as usize;
            let mut i = if e == 0 {
                0
            } else {
                let mut best = i64::MIN;
                // substitution, then a letter of y, then a letter of x
                if prev[slot] != i64::MIN {
                    best = best.max(prev[slot] + 1);
                }
                if prev[slot - 1] != i64::MIN {
                    best = best.max(prev[slot - 1]);
                }
                if prev[slot + 1] != i64::MIN {
                    best = best.max(prev[slot + 1] + 1);
                }
                best
            };
            if i == i64::MIN {
                cur[slot] = i64::MIN;
                continue;
            }
            // stay on the grid
            i = i.min(n).min(m - d);
            if i < 0.max(-d) {
                cur[slot] = i64::MIN;
                continue;
            }
            i = slide(i, d);
            cur[slot] = i;
            let j = n + d;
            if i == n && (0..=m).contains(&j) && !found[j as usize] {
                found[j as usize] = true;
                out.push((j as usize, e as usize));
            }
        }
        std::mem::swap(&mut prev, &mut cur);
        cur.iter_mut().for_each(|c| *c = i64::MIN);
    }
}

struct Hop {
    target: (State, State),
    cost: usize,
    read1: Span,
    read2: Span,
}

/// Weighted edges out of `(p, q)` with cost at most `k`.
fn hops(
    pr: &Product,
    p: State,
    q: State,
    metric: Metric,
    k: usize,
    scratch: &mut Vec<(usize, usize)>,
    out: &mut Vec<Hop>,
) {
    out.clear();
    let xs: Vec<Side> = pr.a1.labels(p).map(Some).chain(std::iter::once(None)).collect();
    let ys: Vec<Side> = pr.a2.labels(q).map(Some).chain(std::iter::once(None)).collect();
    for x in &xs {
        for y in &ys {
            if x.is_none() && y.is_none() {
                continue;
            }
            let (lx, ly) = (side_len(x), side_len(y));
            match metric {
                Metric::Hamming => {
                    if lx <= ly && (y.is_some() || lx == 0) {
                        let c = if lx == 0 { 0 } else { hamming_jumps(pr, x.unwrap().span, y.unwrap().span, k) };
                        if c <= k {
                            out.push(Hop {
                                target: (land(&pr.a1, p, x, lx), land(&pr.a2, q, y, lx)),
                                cost: c,
                                read1: side_span(x, lx),
                                read2: side_span(y, lx),
                            });
                        }
                    }
                    if ly < lx && (x.is_some() || ly == 0) {
                        let c = if ly == 0 { 0 } else { hamming_jumps(pr, y.unwrap().span, x.unwrap().span, k) };
                        if c <= k {
                            out.push(Hop {
                                target: (land(&pr.a1, p, x, ly), land(&pr.a2, q, y, ly)),
                                cost: c,
                                read1: side_span(x, ly),
                                read2: side_span(y, ly),
                            });
                        }
                    }
                }
                Metric::Edit => {
                    // a proper prefix of a text label against nothing, for
                    // occurrences ending with unmatched text letters
                    if y.is_none() && pr.a2.is_explicit(q) {
                        for i in 1..lx.min(k + 1) {
                            out.push(Hop {
                                target: (land(&pr.a1, p, x, i), q),
                                cost: i,
                                read1: side_span(x, i),
                                read2: Span::default(),
                            });
                        }
                    }
                    // the whole of x against prefixes of y
                    if x.is_some() {
                        let (xs_, ys_) = (side_span(x, lx), side_span(y, ly));
                        edit_prefixes(pr, xs_, ys_, k, scratch);
                        for &(j, c) in scratch.iter() {
                            out.push(Hop {
                                target: (land(&pr.a1, p, x, lx), land(&pr.a2, q, y, j)),
                                cost: c,
                                read1: xs_,
                                read2: side_span(y, j),
                            });
                        }
                    }
                    // the whole of y against proper prefixes of x
                    if y.is_some() {
                        let (xs_, ys_) = (side_span(x, lx), side_span(y, ly));
                        edit_prefixes(pr, ys_, xs_, k, scratch);
                        for &(i, c) in scratch.iter() {
                            if x.is_some() && i == lx {
                                continue;
                            }
                            out.push(Hop {
                                target: (land(&pr.a1, p, x, i), land(&pr.a2, q, y, ly)),
                                cost: c,
                                read1: side_span(x, i),
                                read2: ys_,
                            });
                        }
                    }
                }
            }
        }
    }
}

/// Shortest paths on the compacted grid with edges of cost up to `k`.
fn compact_search(t1: &EdString, t2: &EdString, metric: Metric, k: usize, mode: Mode) -> ApproxMatch {
    let pr = Product::new(t1, t2);
    let layers = if mode == Mode::Match { 3 } else { 1 };
    let count = pr.grid.node_count();
    let mut dist = vec![u32::MAX; count * layers];
    let mut parent: Vec<(u32, Span, Span)> = vec![(u32::MAX, Span::default(), Span::default()); count * layers];
    let mut queue = Dial::new(k);
    let key = |v: NodeId, f: u8| v * layers as u32 + f as u32;
    let sources: Vec<NodeId> = match mode {
        Mode::Intersect => vec![pr.start()],
        Mode::Match => (0..pr.a1.state_count() as State).map(|a| pr.node(a, 0).unwrap()).collect(),
    };
    for s in sources {
        dist[key(s, 0) as usize] = 0;
        queue.push(key(s, 0), 0);
    }
    let n2 = pr.a2.n() as State;
    let mut scratch = Vec::new();
    let mut out_hops = Vec::new();
    while let Some((v, d)) = queue.pop() {
        if dist[v as usize] as usize != d {
            continue;
        }
        let node = v / layers as u32;
        let f = (v % layers as u32) as u8;
        let (p, q) = pr.pair(node);
        hops(&pr, p, q, metric, k - d, &mut scratch, &mut out_hops);
        for h in &out_hops {
            let nd = d + h.cost;
            if nd > k || h.target == (p, q) {
                continue;
            }
            let tn = pr.node(h.target.0, h.target.1).expect("grid target");
            let flag = if layers == 1 { 0 } else { next_flag(f, h.target.0 != p, !h.read1.is_empty()) };
            let t = key(tn, flag) as usize;
            if (nd as u32) < dist[t] {
                dist[t] = nd as u32;
                parent[t] = (v, h.read1, h.read2);
                queue.push(t as u32, nd);
            }
        }
    }
    let sinks: Vec<u32> = match mode {
        Mode::Intersect => vec![key(pr.accept(), 0)],
        Mode::Match => (0..pr.a1.state_count() as State)
            .flat_map(|a| (0..3u8).map(move |f| (a, f)))
            .map(|(a, f)| key(pr.node(a, n2).unwrap(), f))
            .collect(),
    };
    let best = sinks.iter().map(|&s| (dist[s as usize], s)).filter(|&(d, _)| d != u32::MAX).min();
    let mut out = ApproxMatch::default();
    let Some((bd, bv)) = best else { return out };
    let (mut w1, mut w2) = (Vec::new(), Vec::new());
    let mut v = bv;
    while parent[v as usize].0 != u32::MAX {
        let (u, r1, r2) = parent[v as usize];
        w1.push(pr.letters(r1).to_vec());
        w2.push(pr.letters(r2).to_vec());
        v = u;
    }
    let w1: Vec<u8> = w1.into_iter().rev().flatten().collect();
    let w2: Vec<u8> = w2.into_iter().rev().flatten().collect();
    out.result.distance = Some(bd as usize);
    out.result.pair = Some(match mode {
        Mode::Intersect => (w1, w2),
        Mode::Match => (w2, w1),
    });
    if mode == Mode::Match {
        for a in 0..pr.a1.state_count() as State {
            let d = dist[key(pr.node(a, n2).unwrap(), 1) as usize];
            if d != u32::MAX && d as usize <= k {
                out.ends.insert(end_segment(&pr.a1, a));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::distance as brute_distance;

    fn eds(s: &str) -> EdString {
        EdString::parse(s).unwrap()
    }

    fn check_pair(t1: &EdString, t2: &EdString, r: &DistanceResult, metric: Metric) {
        let (a, b) = r.pair.as_ref().unwrap();
        assert!(t1.contains(a) && t2.contains(b), "{a:?} {b:?}");
        assert_eq!(brute_distance(metric, a, b), r.distance);
    }

    #[test]
    fn small_pairs() {
        let (a, b) = (eds("{ab}"), eds("{ac}"));
        for m in [Metric::Hamming, Metric::Edit] {
            let r = approx_intersect(&a, &b, m).unwrap();
            assert_eq!(r.distance, Some(1));
            check_pair(&a, &b, &r, m);
            let r = approx_intersect_bounded(&a, &b, m, 1).unwrap();
            assert_eq!(r.distance, Some(1));
            check_pair(&a, &b, &r, m);
        }
        let r = approx_intersect(&eds("XYZ"), &eds("XYZ"), Metric::Edit).unwrap();
        assert_eq!(r.distance, Some(0));
        assert_eq!(r.pair, Some((b"XYZ".to_vec(), b"XYZ".to_vec())));
    }

    #[test]
    fn hamming_needs_equal_lengths() {
        let r = approx_intersect(&eds("{ab}"), &eds("{abc}"), Metric::Hamming).unwrap();
        assert_eq!(r.distance, None);
        let r = approx_intersect_bounded(&eds("{ab}"), &eds("{abc}"), Metric::Hamming, 3).unwrap();
        assert_eq!(r.distance, None);
    }

    #[test]
    fn bound_just_missed() {
        let (a, b) = (eds("{aaaa}"), eds("{bbaa}"));
        assert_eq!(approx_intersect(&a, &b, Metric::Edit).unwrap().distance, Some(2));
        assert_eq!(approx_intersect_bounded(&a, &b, Metric::Edit, 1).unwrap().distance, None);
        assert_eq!(approx_intersect_bounded(&a, &b, Metric::Edit, 2).unwrap().distance, Some(2));
    }

    #[test]
    fn edit_prefix_table() {
        let t = eds("{kitten}");
        let u = eds("{sittingxx}");
        let pr = Product::new(&t, &u);
        let (x, y) = (pr.a1.variant_span(0, 0), pr.a2.variant_span(0, 0));
        let mut out = Vec::new();
        edit_prefixes(&pr, x, y, 4, &mut out);
        let (xs, ys) = (b"kitten".as_slice(), b"sittingxx".as_slice());
        for j in 0..=ys.len() {
            let want = crate::oracle::edit_distance(xs, &ys[..j]);
            let got = out.iter().find(|&&(jj, _)| jj == j).map(|&(_, c)| c);
            assert_eq!(got, (want <= 4).then_some(want), "prefix {j}");
        }
    }

    #[test]
    fn edsm_window() {
        let m = approx_edsm(&eds("{ax}"), &eds("{ay}"), Metric::Edit, None).unwrap();
        assert_eq!(m.result.distance, Some(1));
        assert_eq!(m.ends, BTreeSet::from([0]));
        let m = approx_edsm(&eds("{ax}"), &eds("{ay}"), Metric::Hamming, Some(1)).unwrap();
        assert_eq!(m.result.distance, Some(1));
        let m = approx_edsm(&eds("{A}"), &eds("{BAB}"), Metric::Edit, Some(1)).unwrap();
        assert_eq!(m.result.distance, Some(0));
    }

    #[test]
    fn rejects_zero_bound() {
        assert!(approx_intersect_bounded(&eds("A"), &eds("A"), Metric::Edit, 0).is_err());
    }
}
