use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use edsi_core::acronym::{acronym_report, AcronymInstance};
use edsi_core::approx::{
    approx_edsm, approx_edsm_unbounded, approx_intersect_bounded, approx_intersect_with_budget, ApproxMatch,
    DistanceResult, Metric,
};
use edsi_core::eds::parse_eds;
use edsi_core::edsi::{count_matching_pairs, intersect_decide, longest_witness, shortest_witness, witness};
use edsi_core::edsm::doubly_edsm_report;
use edsi_core::gen::{ov_to_edsi, random_eds_with, random_ov, rng, RandomParams};
use edsi_core::similarity::{
    longest_common_subsequence_with_budget, longest_common_substring, matching_statistics, DEFAULT_BUDGET,
};
use edsi_core::unary::{unary_intersect, CompactUnary};
use edsi_core::{EdString, Error};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "edsi", version, about = "Compare the languages of elastic-degenerate strings")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    format: Format,

    /// Limit on the letter-level product used by subsequence and unbounded
    /// approximate searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    /// One JSON object per line.
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two ED strings share a string.
    Intersect {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        extra: IntersectExtra,
    },
    /// Matching statistics of the first ED string against the second.
    Ms { a: PathBuf, b: PathBuf },
    /// Longest common substring.
    Lcs { a: PathBuf, b: PathBuf },
    /// Longest common subsequence.
    Lcseq { a: PathBuf, b: PathBuf },
    /// Occurrences of a pattern ED string inside a text ED string.
    Edsm {
        pattern: PathBuf,
        text: PathBuf,
        #[arg(long)]
        report_starts: bool,
        #[arg(long)]
        report_ends: bool,
    },
    /// Smallest Hamming or edit distance between members of two ED strings.
    Approx {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum)]
        metric: MetricArg,
        /// Only distances up to K; searches the compacted graph.
        #[arg(short)]
        k: Option<usize>,
        /// Treat A as a pattern and B as a text and match approximately.
        #[arg(long = "match")]
        matching: bool,
    },
    /// Intersect two unary ED strings given as sets of lengths.
    Unary { a: PathBuf, b: PathBuf },
    /// Dictionary strings that are acronyms of a word sequence.
    Acronym {
        /// One dictionary string per line.
        dict: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        words: Vec<String>,
        /// Minimum prefix length per word, comma-separated.
        #[arg(long, value_delimiter = ',')]
        minlens: Option<Vec<usize>>,
    },
    /// Generate instances.
    #[command(subcommand)]
    Gen(Gen),
}

#[derive(Args)]
#[group(multiple = false)]
struct IntersectExtra {
    /// Print some common string.
    #[arg(long)]
    witness: bool,
    /// Print a shortest common string.
    #[arg(long)]
    shortest: bool,
    /// Print a longest common string.
    #[arg(long)]
    longest: bool,
    /// Print the number of matching alignment pairs.
    #[arg(long)]
    count: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Hamming,
    Edit,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Metric {
        match m {
            MetricArg::Hamming => Metric::Hamming,
            MetricArg::Edit => Metric::Edit,
        }
    }
}

#[derive(Subcommand)]
enum Gen {
    /// A random orthogonal-vectors instance turned into a pair of ED strings,
    /// printed one per line.
    Ov {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Probability of a one bit.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
    /// Random ED strings, one per line.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        segments: usize,
        #[arg(long, default_value_t = 4)]
        variants: usize,
        #[arg(long, default_value_t = 4)]
        length: usize,
        #[arg(long, default_value_t = 3)]
        alphabet: usize,
        #[arg(long, default_value_t = 0.2)]
        epsilon: f64,
    },
}

/// What a command produced: exit status plus plain lines and a JSON record.
struct Report {
    positive: bool,
    plain: Vec<String>,
    json: Map<String, Value>,
}

impl Report {
    fn new(task: &str, positive: bool) -> Self {
        let mut json = Map::new();
        json.insert("task".into(), json!(task));
        json.insert("answer".into(), json!(positive));
        Report { positive, plain: vec![yes_no(positive).into()], json }
    }

    fn answered(task: &str) -> Self {
        let mut r = Report::new(task, true);
        r.plain.clear();
        r.json.remove("answer");
        r
    }

    fn set(&mut self, key: &str, v: Value) {
        self.json.insert(key.into(), v);
    }

    fn line(&mut self, s: impl Into<String>) {
        self.plain.push(s.into());
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

fn text(s: &[u8]) -> String {
    String::from_utf8_lossy(s).into_owned()
}

fn joined<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<EdString, Failure> {
    parse_eds(read(path)?.as_bytes()).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_unary(path: &Path) -> Result<CompactUnary, Failure> {
    CompactUnary::parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn distance_report(task: &str, metric: MetricArg, r: &DistanceResult) -> Report {
    let mut rep = Report::new(task, r.distance.is_some());
    rep.set("metric", json!(if matches!(metric, MetricArg::Hamming) { "hamming" } else { "edit" }));
    match (r.distance, &r.pair) {
        (Some(d), Some((x, y))) => {
            rep.line(d.to_string());
            rep.line(format!("{}\t{}", text(x), text(y)));
            rep.set("distance", json!(d));
            rep.set("witness", json!([text(x), text(y)]));
        }
        _ => rep.set("distance", Value::Null),
    }
    rep
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    Ok(match &cli.command {
        Command::Intersect { a, b, extra } => {
            let (t1, t2) = (load(a)?, load(b)?);
            if extra.count {
                let c = count_matching_pairs(&t1, &t2);
                let mut r = Report::new("intersect", c.bits() > 0);
                r.line(c.to_string());
                // exact, however many digits
                r.set("count", serde_json::from_str(&c.to_string()).expect("decimal integer"));
                r
            } else if extra.witness || extra.shortest || extra.longest {
                let w = if extra.shortest {
                    shortest_witness(&t1, &t2)
                } else if extra.longest {
                    longest_witness(&t1, &t2)
                } else {
                    witness(&t1, &t2)
                };
                let mut r = Report::new("intersect", w.found);
                if w.found {
                    r.line(text(&w.witness));
                    r.set("witness", json!(text(&w.witness)));
                    r.set("length", json!(w.len()));
                }
                r
            } else {
                Report::new("intersect", intersect_decide(&t1, &t2))
            }
        }
        Command::Ms { a, b } => {
            let ms = matching_statistics(&load(a)?, &load(b)?);
            let mut r = Report::answered("ms");
            r.line(joined(&ms));
            r.set("ms", json!(ms));
            r
        }
        Command::Lcs { a, b } => {
            let c = longest_common_substring(&load(a)?, &load(b)?);
            let mut r = Report::answered("lcs");
            r.line(c.length.to_string());
            r.line(text(&c.witness));
            r.set("length", json!(c.length));
            r.set("witness", json!(text(&c.witness)));
            r
        }
        Command::Lcseq { a, b } => {
            let c = longest_common_subsequence_with_budget(&load(a)?, &load(b)?, cli.budget)?;
            let mut r = Report::answered("lcseq");
            r.line(c.length.to_string());
            r.line(text(&c.witness));
            r.set("length", json!(c.length));
            r.set("witness", json!(text(&c.witness)));
            r
        }
        Command::Edsm { pattern, text: t, report_starts, report_ends } => {
            let rep = doubly_edsm_report(&load(pattern)?, &load(t)?);
            let mut r = Report::new("edsm", rep.found);
            let mut segments = Map::new();
            if *report_starts {
                r.line(format!("starts: {}", joined(&rep.starts)));
                segments.insert("starts".into(), json!(rep.starts));
            }
            if *report_ends {
                r.line(format!("ends: {}", joined(&rep.ends)));
                segments.insert("ends".into(), json!(rep.ends));
            }
            if !segments.is_empty() {
                r.set("segments", Value::Object(segments));
            }
            r
        }
        Command::Approx { a, b, metric, k, matching } => {
            let (t1, t2) = (load(a)?, load(b)?);
            let m = Metric::from(*metric);
            if *matching {
                let found: ApproxMatch = match k {
                    Some(_) => approx_edsm(&t1, &t2, m, *k)?,
                    None => approx_edsm_unbounded(&t1, &t2, m, None, cli.budget)?,
                };
                let mut r = distance_report("approx-match", *metric, &found.result);
                r.line(format!("ends: {}", joined(&found.ends)));
                r.set("segments", json!({ "ends": found.ends }));
                r
            } else {
                let d = match k {
                    Some(k) => approx_intersect_bounded(&t1, &t2, m, *k)?,
                    None => approx_intersect_with_budget(&t1, &t2, m, cli.budget)?,
                };
                distance_report("approx", *metric, &d)
            }
        }
        Command::Unary { a, b } => {
            let both = unary_intersect(&load_unary(a)?, &load_unary(b)?);
            let mut r = Report::new("unary", !both.is_empty());
            if !both.is_empty() {
                r.line(joined(&both));
            }
            r.set("lengths", json!(both));
            r
        }
        Command::Acronym { dict, words, minlens } => {
            let d: Vec<Vec<u8>> =
                read(dict)?.lines().map(str::trim).filter(|l| !l.is_empty()).map(|l| l.as_bytes().to_vec()).collect();
            let w = words.iter().map(|s| s.as_bytes().to_vec()).collect();
            let found: BTreeSet<Vec<u8>> = acronym_report(&AcronymInstance::new(d, w, minlens.clone())?);
            let mut r = Report::new("acronym", !found.is_empty());
            let list: Vec<String> = found.iter().map(|s| text(s)).collect();
            r.plain.extend(list.iter().cloned());
            r.set("acronyms", json!(list));
            r
        }
        Command::Gen(g) => generate(g)?,
    })
}

fn generate(g: &Gen) -> Result<Report, Failure> {
    let mut r = Report::answered("gen");
    match *g {
        Gen::Ov { seed, k, d, density } => {
            if k == 0 || d == 0 || !(0.0..=1.0).contains(&density) {
                return Err(Failure::Usage("k and d must be positive and density in [0, 1]".into()));
            }
            let ov = random_ov(&mut rng(seed), k..=k, d..=d, density);
            let (t1, t2) = ov_to_edsi(&ov);
            let vectors: Vec<String> =
                ov.vectors().iter().map(|v| v.iter().map(|&b| if b { '1' } else { '0' }).collect()).collect();
            r.line(t1.serialize());
            r.line(t2.serialize());
            r.set("vectors", json!(vectors));
            r.set("eds", json!([t1.serialize(), t2.serialize()]));
        }
        Gen::Random { seed, count, segments, variants, length, alphabet, epsilon } => {
            let p =
                RandomParams { segments: 1..=segments, variants: 1..=variants, length: 1..=length, alphabet, epsilon };
            p.validate()?;
            let mut g = rng(seed);
            let all: Vec<String> = (0..count).map(|_| random_eds_with(&mut g, &p).serialize()).collect();
            r.plain.extend(all.iter().cloned());
            r.set("eds", json!(all));
        }
    }
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            let mut out = std::io::stdout().lock();
            let written = match cli.format {
                Format::Plain => r.plain.iter().try_for_each(|l| writeln!(out, "{l}")),
                Format::Json => writeln!(out, "{}", Value::Object(r.json)),
            };
            if written.is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if r.positive { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("edsi: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("edsi: {msg}");
            ExitCode::from(3)
        }
    }
}
