//! Acceptance suite: fixtures from the running examples, randomized
//! agreement with the brute-force oracles, and a scaling smoke test.
//! Prints one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use edsi_core::acronym::{acronym_decide, acronym_report, AcronymInstance};
use edsi_core::approx::{approx_edsm, approx_intersect, approx_intersect_bounded, Metric};
use edsi_core::edsi::{count_matching_pairs, intersect_decide, longest_witness, shortest_witness, witness};
use edsi_core::edsm::doubly_edsm_report;
use edsi_core::gen::{
    ov_to_edsi, random_acronym, random_eds_with, random_ov, random_unary, rng, OvInstance, RandomParams,
};
use edsi_core::graph::{reachability, IntersectionGraph};
use edsi_core::oracle::{self, has_orthogonal_pair};
use edsi_core::similarity::{longest_common_subsequence, longest_common_substring, matching_statistics};
use edsi_core::unary::{compute_lengths, sumset, unary_intersect};
use edsi_core::{EdString, Error};
use num_bigint::BigUint;

/// Oracle limits, above the library defaults so that few cases are skipped.
const PAIR_CAP: u128 = 2_000_000;
const WORK_CAP: u128 = 50_000_000;

/// A named criterion, and whether failing it fails the suite.
type Criterion = (&'static str, fn() -> Outcome, bool);

/// Outcome of one criterion.
struct Outcome {
    ok: bool,
    checked: usize,
    skipped: usize,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { ok: true, checked: 0, skipped: 0, detail: String::new() }
    }

    fn fail(&mut self, msg: impl Into<String>) {
        if self.ok {
            self.detail = msg.into();
        }
        self.ok = false;
    }

    fn check(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        if !cond {
            self.fail(msg());
        }
    }
}

/// Runs an oracle, turning a refusal over its size caps into a skip.
fn oracle<T>(out: &mut Outcome, r: edsi_core::Result<T>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(Error::CapExceeded { .. }) => {
            out.skipped += 1;
            None
        }
        Err(e) => {
            out.fail(format!("oracle error: {e}"));
            None
        }
    }
}

fn eds(s: &str) -> EdString {
    EdString::parse(s).unwrap()
}

fn random_pair(seed: u64) -> (EdString, EdString) {
    let mut r = rng(seed);
    let p = RandomParams::default();
    (random_eds_with(&mut r, &p), random_eds_with(&mut r, &p))
}

fn running_example() -> Outcome {
    let mut out = Outcome::new();
    let (t1, t2) = (eds("{AC,A,TGCT}{,CA}"), eds("{T,}{GCA,AC}"));
    out.check(intersect_decide(&t1, &t2), || "intersection not found".into());
    let w = witness(&t1, &t2);
    out.check(w.found && t1.contains(&w.witness) && t2.contains(&w.witness), || format!("bad witness {w:?}"));
    out.check(w.witness == b"AC", || format!("witness {:?}", String::from_utf8_lossy(&w.witness)));
    let ms = matching_statistics(&t1, &t2);
    out.check(ms == vec![3, 2], || format!("ms = {ms:?}"));
    out.checked = 1;
    out
}

fn ov_example() -> Outcome {
    let mut out = Outcome::new();
    let ov = OvInstance::new(vec![vec![true, false], vec![false, true], vec![true, true]]).unwrap();
    let (t1, t2) = ov_to_edsi(&ov);
    out.check(t1.serialize() == "{0}{0,1}{0,1}{0}{0}{0}", || format!("t1 = {}", t1.serialize()));
    out.check(t2.serialize() == "{00,}{0000,}{10,01,11}{00,}{0000,}", || format!("t2 = {}", t2.serialize()));
    out.check(intersect_decide(&t1, &t2), || "no intersection".into());
    out.check(t1.contains(b"010000") && t2.contains(b"010000"), || "010000 is not common".into());
    out.checked = 1;
    out
}

fn intersection_equivalence() -> Outcome {
    let mut out = Outcome::new();
    for seed in 0..1000 {
        let (t1, t2) = random_pair(seed);
        let Some(common) = oracle(&mut out, oracle::brute_intersect(&t1, &t2)) else {
            continue;
        };
        let Some(pairs) = oracle(&mut out, oracle::brute_pairs_count(&t1, &t2)) else {
            continue;
        };
        out.checked += 1;
        let tag = || format!("seed {seed}: {} / {}", t1.serialize(), t2.serialize());
        out.check(intersect_decide(&t1, &t2) == !common.is_empty(), || format!("decision, {}", tag()));
        let (s, l) = (shortest_witness(&t1, &t2), longest_witness(&t1, &t2));
        let lens: Vec<usize> = common.iter().map(Vec::len).collect();
        if let (Some(&lo), Some(&hi)) = (lens.iter().min(), lens.iter().max()) {
            out.check(s.found && s.len() == lo && common.contains(&s.witness), || format!("shortest, {}", tag()));
            out.check(l.found && l.len() == hi && common.contains(&l.witness), || format!("longest, {}", tag()));
        } else {
            out.check(!s.found && !l.found, || format!("witness without intersection, {}", tag()));
        }
        let count = count_matching_pairs(&t1, &t2);
        out.check(count == BigUint::from(pairs), || format!("count {count} vs {pairs}, {}", tag()));
    }
    out
}

fn similarity_equivalence() -> Outcome {
    let mut out = Outcome::new();
    for seed in 0..500 {
        let (t1, t2) = random_pair(10_000 + seed);
        let tag = || format!("seed {seed}: {} / {}", t1.serialize(), t2.serialize());
        let Some(ms) = oracle(&mut out, oracle::brute_ms(&t1, &t2)) else {
            continue;
        };
        let Some((lcs, _)) = oracle(&mut out, oracle::brute_lcsubstring(&t1, &t2)) else {
            continue;
        };
        let Some(lcseq) = oracle(&mut out, oracle::brute_lcsubsequence(&t1, &t2, PAIR_CAP)) else {
            continue;
        };
        out.checked += 1;
        let got = matching_statistics(&t1, &t2);
        out.check(got == ms, || format!("ms {got:?} vs {ms:?}, {}", tag()));
        let c = longest_common_substring(&t1, &t2);
        out.check(c.length == lcs && c.witness.len() == lcs, || format!("substring {} vs {lcs}, {}", c.length, tag()));
        let q = longest_common_subsequence(&t1, &t2).unwrap();
        out.check(q.length == lcseq, || format!("subsequence {} vs {lcseq}, {}", q.length, tag()));
    }
    out
}

fn ov_equivalence() -> Outcome {
    let mut out = Outcome::new();
    let mut r = rng(77);
    for _ in 0..200 {
        let ov = random_ov(&mut r, 2..=8, 1..=6, 0.5);
        let (t1, t2) = ov_to_edsi(&ov);
        out.checked += 1;
        out.check(intersect_decide(&t1, &t2) == has_orthogonal_pair(&ov), || format!("{:?}", ov.vectors()));
    }
    out
}

fn unary_exactness() -> Outcome {
    let mut out = Outcome::new();
    let mut r = rng(99);
    for _ in 0..500 {
        let (a, b) = (random_unary(&mut r, 1..=8, 1..=4, 256), random_unary(&mut r, 1..=8, 1..=4, 256));
        out.checked += 1;
        let (la, lb) = (compute_lengths(&a), compute_lengths(&b));
        out.check(la == oracle::brute_unary_lengths(a.sets()), || format!("lengths of {a:?}"));
        out.check(lb == oracle::brute_unary_lengths(b.sets()), || format!("lengths of {b:?}"));
        out.check(sumset(&la, &lb) == oracle::brute_sumset(&la, &lb), || "sumset".into());
        let both: Vec<u64> = la.iter().copied().filter(|x| lb.binary_search(x).is_ok()).collect();
        out.check(unary_intersect(&a, &b) == both, || format!("intersection of {a:?} and {b:?}"));
        let (c, d) = (random_unary(&mut r, 1..=8, 1..=4, 64), random_unary(&mut r, 1..=8, 1..=4, 64));
        let general = intersect_decide(&c.to_eds(b'a').unwrap(), &d.to_eds(b'a').unwrap());
        out.check(general == !unary_intersect(&c, &d).is_empty(), || format!("general decision on {c:?}, {d:?}"));
    }
    out
}

fn acronym_exactness() -> Outcome {
    let mut out = Outcome::new();
    let mut r = rng(123);
    for _ in 0..500 {
        let (dict, words, minlens) = random_acronym(&mut r, 1..=8, 1..=5, 1..=10, 3);
        let inst = AcronymInstance::new(dict.clone(), words.clone(), Some(minlens.clone())).unwrap();
        let want = oracle::brute_acronym(&dict, &words, &minlens);
        out.checked += 1;
        out.check(acronym_report(&inst) == want, || format!("report for {words:?}"));
        out.check(acronym_decide(&inst) == !want.is_empty(), || format!("decision for {words:?}"));
    }
    out
}

fn edsm_and_approx() -> Outcome {
    let mut out = Outcome::new();
    for seed in 0..500 {
        let (t, p) = random_pair(20_000 + seed);
        let tag = || format!("seed {seed}: {} / {}", p.serialize(), t.serialize());
        let Some(exact) = oracle(&mut out, oracle::brute_edsm(&p, &t)) else {
            continue;
        };
        let rep = doubly_edsm_report(&p, &t);
        out.check(rep.found == exact.found, || format!("edsm decision, {}", tag()));
        out.check(rep.ends == exact.ends, || format!("ends {:?} vs {:?}, {}", rep.ends, exact.ends, tag()));
        out.check(rep.starts == exact.starts, || format!("starts {:?} vs {:?}, {}", rep.starts, exact.starts, tag()));
        let decide = intersect_decide(&t, &p);
        let mut all = true;
        for metric in [Metric::Hamming, Metric::Edit] {
            let Some(d) = oracle(&mut out, oracle::brute_min_distance(&t, &p, metric, PAIR_CAP)) else {
                all = false;
                continue;
            };
            let u = approx_intersect(&t, &p, metric).unwrap();
            out.check(u.distance == d, || format!("{metric:?} distance {:?} vs {d:?}, {}", u.distance, tag()));
            if let Some((a, b)) = &u.pair {
                out.check(t.contains(a) && p.contains(b) && oracle::distance(metric, a, b) == u.distance, || {
                    format!("{metric:?} pair, {}", tag())
                });
            }
            if metric == Metric::Edit {
                out.check((d == Some(0)) == decide, || format!("zero distance vs decision, {}", tag()));
            }
            for k in 1..=3 {
                let b = approx_intersect_bounded(&t, &p, metric, k).unwrap();
                let want = d.filter(|&x| x <= k);
                out.check(b.distance == want, || format!("{metric:?} k={k}: {:?} vs {want:?}, {}", b.distance, tag()));
                if let Some((x, y)) = &b.pair {
                    out.check(t.contains(x) && p.contains(y) && oracle::distance(metric, x, y) == b.distance, || {
                        format!("{metric:?} k={k} pair, {}", tag())
                    });
                }
            }
            for k in [None, Some(1), Some(2), Some(3)] {
                let Some(want) = oracle(&mut out, oracle::brute_approx_edsm(&p, &t, metric, k, WORK_CAP)) else {
                    all = false;
                    continue;
                };
                let got = approx_edsm(&p, &t, metric, k).unwrap();
                let wd = match k {
                    Some(k) => want.distance.filter(|&x| x <= k),
                    None => want.distance,
                };
                out.check(got.result.distance == wd, || {
                    format!("{metric:?} edsm k={k:?}: {:?} vs {wd:?}, {}", got.result.distance, tag())
                });
                out.check(got.ends == want.ends, || {
                    format!("{metric:?} edsm k={k:?} ends {:?} vs {:?}, {}", got.ends, want.ends, tag())
                });
                if metric == Metric::Edit && k.is_none() {
                    out.check((wd == Some(0)) == exact.found, || format!("zero edsm distance, {}", tag()));
                }
            }
        }
        if all {
            out.checked += 1;
        }
    }
    out
}

fn scaling() -> Outcome {
    let mut out = Outcome::new();
    let mut r = rng(2024);
    let p = RandomParams { segments: 1000..=1000, variants: 4..=4, length: 1..=4, alphabet: 4, epsilon: 0.0 };
    let (t1, t2) = (random_eds_with(&mut r, &p), random_eds_with(&mut r, &p));
    let (n1, n2) = (t1.letter_count(), t2.letter_count());
    let start = Instant::now();
    let g = IntersectionGraph::build_full(&t1, &t2);
    let full = g.accepts();
    let built = start.elapsed();
    let s = Instant::now();
    let streamed = reachability(&t1, &t2);
    let stream_time = s.elapsed();
    let ratio = streamed.peak_units as f64 / (n1 + n2) as f64;
    out.checked = 1;
    out.check(full == streamed.accept, || "streamed and full reachability disagree".into());
    out.check(built + stream_time < Duration::from_secs(10), || "slower than 10 s".into());
    out.check(ratio <= 8.0, || format!("peak units {ratio:.2} times N1+N2"));
    let info = format!(
        "N1={n1} N2={n2} edges={} full={:.2?} streamed={:.2?} peak/(N1+N2)={ratio:.2}",
        g.edge_count(),
        built,
        stream_time
    );
    if out.ok {
        out.detail = info;
    } else {
        out.detail = format!("{}; {info}", out.detail);
    }
    out
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("running example fixture", running_example, true),
        ("orthogonal vectors fixture", ov_example, true),
        ("intersection vs oracles", intersection_equivalence, true),
        ("similarity vs oracles", similarity_equivalence, true),
        ("orthogonal vectors reduction", ov_equivalence, true),
        ("unary lengths", unary_exactness, true),
        ("acronyms", acronym_exactness, true),
        ("pattern matching and approximate", edsm_and_approx, true),
        ("scaling smoke test (soft)", scaling, false),
    ];
    let mut hard_failures = BTreeSet::new();
    for (i, (name, run, hard)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = if o.ok { "PASS" } else { "FAIL" };
        println!(
            "{status} {}: {name} [{} checked, {} skipped, {:.2?}]{}",
            i + 1,
            o.checked,
            o.skipped,
            start.elapsed(),
            if o.detail.is_empty() { String::new() } else { format!(" {}", o.detail) }
        );
        if !o.ok && *hard {
            hard_failures.insert(i + 1);
        }
    }
    if !hard_failures.is_empty() {
        eprintln!("failed criteria: {hard_failures:?}");
        std::process::exit(1);
    }
}
