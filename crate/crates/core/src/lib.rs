//! Intersection and comparison of elastic-degenerate (ED) string languages.
//!
//! An ED string is a sequence of segments, each a finite list of variant
//! strings; its language is every concatenation that picks one variant per
//! segment. This crate decides whether two such languages intersect and
//! answers the comparison questions built on the same intersection graph:
//! witnesses, pair counting, matching statistics, longest common
//! substring and subsequence, ED-pattern-in-ED-text matching and
//! approximate matching under Hamming or edit distance. Unary instances and
//! acronym generation have dedicated solvers.
//!
//! Every solver has a brute-force counterpart in [`oracle`] that works by
//! plain enumeration and shares no code with the graph machinery.

pub mod acronym;
pub mod approx;
pub mod automaton;
mod dial;
pub mod eds;
pub mod edsi;
pub mod edsm;
mod error;
pub mod gen;
pub mod graph;
pub mod lcp;
pub mod oracle;
pub mod similarity;
pub mod unary;

pub use eds::{EdString, Segment, Stats};
pub use error::{Error, Result};
pub use graph::IntersectionGraph;
