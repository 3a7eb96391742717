//! Rank-frequency and leading-digit statistics for text and source-code corpora.
//!
//! The pipeline: load a corpus ([`corpus`]), reduce it to a stream of
//! elementary units ([`tokenize`]), count and rank them ([`freq`]), then
//! measure how closely the ranked counts track a Zipf curve ([`zipf`]),
//! estimate the power-law exponent on log-log axes ([`powerlaw`]), and
//! compare the leading digits of the counts against Benford's distribution
//! ([`benford`]). [`report`] ties the stages together and renders the
//! results in machine-readable formats.

mod error;
mod stats;

pub mod benford;
pub mod corpus;
pub mod freq;
pub mod powerlaw;
pub mod report;
pub mod tokenize;
pub mod zipf;

pub use error::{Error, Result};

/// Canonical rendering of floating-point values in every emitted artifact:
/// fixed six decimal places, with negative zero normalized away.
pub(crate) fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_owned()
    } else {
        s
    }
}

pub use benford::{BenfordResult, DigitHistogram, EliminationSensitivity};
pub use corpus::{CorpusSpec, Encoding, RawText};
pub use freq::{FrequencyTable, RankView, RankWindow};
pub use powerlaw::LogLogFit;
pub use report::{AnalysisConfig, CorpusAnalysis, CorpusSummary, OutputFormat, RunReport};
pub use tokenize::{CodeLang, Fold, Mode, TokenStream};
pub use zipf::{ZipfCurve, ZipfFit};
