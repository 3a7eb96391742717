//! Pipeline orchestration and report emission.
//!
//! [`analyze`] runs one corpus through load → tokenize → rank → Zipf
//! correlation (full and dropped windows) → log-log fit → leading-digit
//! statistics, and [`summarize_run`] folds per-corpus results into a run
//! report with an amalgamated digit histogram. Emission is deterministic:
//! identical inputs and config produce byte-identical artifacts.

use std::fs;
use std::path::{Path, PathBuf};

use crate::benford::{self, BenfordResult, DigitHistogram};
use crate::corpus::{self, CorpusSpec};
use crate::error::{Error, Result};
use crate::fmt6;
use crate::freq::{escape_eu, FrequencyTable, RankWindow};
use crate::powerlaw::{self, LogLogFit};
use crate::tokenize::{tokenize, Fold, Mode, TokenStream};
use crate::zipf::{self, ZipfCurve};

/// Report serialization format.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Tsv,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Tsv => "tsv",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "json" => Some(OutputFormat::Json),
            "csv" => Some(OutputFormat::Csv),
            "tsv" => Some(OutputFormat::Tsv),
            _ => None,
        }
    }
}

/// Knobs of the analysis protocol. The defaults encode the reference
/// procedure: drop the top 10 ranks, correlate on [1,100] full and
/// [11,110] dropped, α = 1 reference curve, uppercase folding.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisConfig {
    pub drop_k: usize,
    pub full_window: RankWindow,
    pub dropped_window: RankWindow,
    pub alpha: f64,
    pub breakpoints: Option<Vec<usize>>,
    pub fold: Fold,
    pub format: OutputFormat,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            drop_k: 10,
            full_window: RankWindow::new(1, 100).expect("static window"),
            dropped_window: RankWindow::new(11, 110).expect("static window"),
            alpha: 1.0,
            breakpoints: None,
            fold: Fold::Upper,
            format: OutputFormat::Json,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.alpha.is_finite() || self.alpha <= 0.0 {
            return Err(Error::InvalidParam(format!(
                "alpha must be a positive real, got {}",
                self.alpha
            )));
        }
        if let Some(b) = &self.breakpoints {
            if b.is_empty() {
                return Err(Error::InvalidParam("empty breakpoint list".into()));
            }
        }
        Ok(())
    }
}

/// One row of the run report.
#[derive(Clone, Debug, PartialEq)]
pub struct CorpusSummary {
    pub label: String,
    pub total_tokens: u64,
    pub unique_count: usize,
    pub r_zipf_full: f64,
    pub r_zipf_dropped: f64,
    /// |slope| of the log-log fit over the dropped window.
    pub alpha_hat: f64,
    pub segment_fits: Option<Vec<LogLogFit>>,
    pub r_benford: f64,
    pub pct_leading_1: f64,
    pub benford_delta_pct: f64,
}

/// Everything computed for one corpus: the summary row plus the
/// intermediate structures the plot artifacts are rendered from.
#[derive(Clone, Debug)]
pub struct CorpusAnalysis {
    pub summary: CorpusSummary,
    pub tokens: TokenStream,
    pub table: FrequencyTable,
    pub curve: ZipfCurve,
    pub loglog: LogLogFit,
    pub benford: BenfordResult,
    pub histogram: DigitHistogram,
}

/// Benford statistics of the run-wide amalgamated histogram.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmalgamatedBenford {
    pub n_items: u64,
    pub r_benford: f64,
    pub pct_leading_1: f64,
}

/// Per-corpus rows plus the amalgamated digit row.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunReport {
    pub corpora: Vec<CorpusSummary>,
    pub amalgamated: Option<AmalgamatedBenford>,
}

fn staged<T>(label: &str, stage: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Stage {
        label: label.to_owned(),
        stage,
        source: Box::new(e),
    })
}

/// Analyze already-decoded text under a label.
pub fn analyze_text(
    label: &str,
    content: &str,
    mode: Mode,
    config: &AnalysisConfig,
) -> Result<CorpusAnalysis> {
    config.validate()?;
    let tokens = tokenize(content, mode, config.fold);
    let table = FrequencyTable::from_stream(&tokens);
    if table.is_empty() {
        return staged(label, "rank", Err(Error::EmptyTable));
    }
    let curve = staged(
        label,
        "zipf-curve",
        ZipfCurve::new(table.unique_count(), config.alpha),
    )?;
    let full = staged(
        label,
        "zipf-full",
        zipf::correlation(&table.view(), &curve, config.full_window),
    )?;
    let dropped_view = staged(label, "drop-top", table.drop_top(config.drop_k))?;
    let dropped = staged(
        label,
        "zipf-dropped",
        zipf::correlation(&dropped_view, &curve, config.dropped_window),
    )?;
    let loglog = staged(
        label,
        "loglog",
        powerlaw::fit(&table.view(), config.dropped_window),
    )?;
    let segment_fits = match &config.breakpoints {
        None => None,
        Some(b) => Some(staged(
            label,
            "segments",
            powerlaw::fit_segments(&table.view(), b),
        )?),
    };
    let histogram = staged(
        label,
        "digits",
        DigitHistogram::from_counts(table.view().counts()),
    )?;
    let ben = staged(label, "benford", benford::correlation(&histogram))?;
    let sensitivity = staged(
        label,
        "benford-delta",
        benford::elimination_sensitivity(&table, config.drop_k),
    )?;
    let summary = CorpusSummary {
        label: label.to_owned(),
        total_tokens: table.total_tokens(),
        unique_count: table.unique_count(),
        r_zipf_full: full.r,
        r_zipf_dropped: dropped.r,
        alpha_hat: loglog.alpha_hat(),
        segment_fits,
        r_benford: ben.r,
        pct_leading_1: ben.pct_leading_1,
        benford_delta_pct: sensitivity.relative_delta_pct,
    };
    Ok(CorpusAnalysis {
        summary,
        tokens,
        table,
        curve,
        loglog,
        benford: ben,
        histogram,
    })
}

/// Load one corpus from disk and analyze it.
pub fn analyze(spec: &CorpusSpec, config: &AnalysisConfig) -> Result<CorpusAnalysis> {
    let raw = staged(&spec.label, "load", corpus::load_corpus(spec))?;
    analyze_text(&spec.label, &raw.content, spec.mode, config)
}

/// Fold per-corpus analyses into the run report, amalgamating the digit
/// histograms across all corpora.
pub fn summarize_run(analyses: &[CorpusAnalysis]) -> Result<RunReport> {
    if analyses.is_empty() {
        return Err(Error::InvalidParam("run has no corpora".into()));
    }
    let amalgamated_hist = benford::amalgamate(analyses.iter().map(|a| &a.histogram))?;
    let scored = staged(
        "amalgamated",
        "benford",
        benford::correlation(&amalgamated_hist),
    )?;
    Ok(RunReport {
        corpora: analyses.iter().map(|a| a.summary.clone()).collect(),
        amalgamated: Some(AmalgamatedBenford {
            n_items: amalgamated_hist.n_items(),
            r_benford: scored.r,
            pct_leading_1: scored.pct_leading_1,
        }),
    })
}

// ---------------------------------------------------------------- emission

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Serialize one summary as a JSON object. `field_pad` indents the
/// fields, `brace_pad` the closing brace; the opening brace carries no
/// padding so callers can place the object inline or in an array.
fn summary_json(s: &CorpusSummary, field_pad: &str, brace_pad: &str) -> String {
    let segments = match &s.segment_fits {
        None => "null".to_owned(),
        Some(fits) => {
            let rows: Vec<String> = fits
                .iter()
                .map(|f| {
                    format!(
                        "{field_pad}  {{\"lo\": {}, \"hi\": {}, \"slope\": {}, \"intercept\": {}, \"r\": {}, \"alpha_hat\": {}}}",
                        f.window.lo(),
                        f.window.hi(),
                        fmt6(f.slope),
                        fmt6(f.intercept),
                        fmt6(f.r),
                        fmt6(f.alpha_hat())
                    )
                })
                .collect();
            format!("[\n{}\n{field_pad}]", rows.join(",\n"))
        }
    };
    format!(
        "{{\n\
         {field_pad}\"label\": {},\n\
         {field_pad}\"total_tokens\": {},\n\
         {field_pad}\"unique_count\": {},\n\
         {field_pad}\"r_zipf_full\": {},\n\
         {field_pad}\"r_zipf_dropped\": {},\n\
         {field_pad}\"alpha_hat\": {},\n\
         {field_pad}\"segment_fits\": {},\n\
         {field_pad}\"r_benford\": {},\n\
         {field_pad}\"pct_leading_1\": {},\n\
         {field_pad}\"benford_delta_pct\": {}\n\
         {brace_pad}}}",
        json_string(&s.label),
        s.total_tokens,
        s.unique_count,
        fmt6(s.r_zipf_full),
        fmt6(s.r_zipf_dropped),
        fmt6(s.alpha_hat),
        segments,
        fmt6(s.r_benford),
        fmt6(s.pct_leading_1),
        fmt6(s.benford_delta_pct),
    )
}

const SUMMARY_COLUMNS: &str = "label,total_tokens,unique_count,r_zipf_full,r_zipf_dropped,alpha_hat,segment_fits,r_benford,pct_leading_1,benford_delta_pct";

fn segments_compact(fits: &Option<Vec<LogLogFit>>) -> String {
    match fits {
        None => String::new(),
        Some(fits) => fits
            .iter()
            .map(|f| format!("{}:{}={}", f.window.lo(), f.window.hi(), fmt6(f.alpha_hat())))
            .collect::<Vec<_>>()
            .join(";"),
    }
}

fn summary_fields(s: &CorpusSummary) -> Vec<String> {
    vec![
        s.label.clone(),
        s.total_tokens.to_string(),
        s.unique_count.to_string(),
        fmt6(s.r_zipf_full),
        fmt6(s.r_zipf_dropped),
        fmt6(s.alpha_hat),
        segments_compact(&s.segment_fits),
        fmt6(s.r_benford),
        fmt6(s.pct_leading_1),
        fmt6(s.benford_delta_pct),
    ]
}

fn amalgamated_fields(a: &AmalgamatedBenford) -> Vec<String> {
    vec![
        "amalgamated".to_owned(),
        String::new(),
        a.n_items.to_string(),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
        fmt6(a.r_benford),
        fmt6(a.pct_leading_1),
        String::new(),
    ]
}

fn csv_field(f: &str) -> String {
    if f.contains(',') || f.contains('"') || f.contains('\n') || f.contains('\r') {
        format!("\"{}\"", f.replace('"', "\"\""))
    } else {
        f.to_owned()
    }
}

fn flat_row(fields: &[String], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => fields
            .iter()
            .map(|f| csv_field(f))
            .collect::<Vec<_>>()
            .join(","),
        OutputFormat::Tsv => fields
            .iter()
            .map(|f| escape_eu(f))
            .collect::<Vec<_>>()
            .join("\t"),
        OutputFormat::Json => unreachable!("flat rows are csv/tsv only"),
    }
}

fn flat_header(format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => SUMMARY_COLUMNS.to_owned(),
        OutputFormat::Tsv => SUMMARY_COLUMNS.replace(',', "\t"),
        OutputFormat::Json => unreachable!(),
    }
}

/// Render one corpus summary (the `<label>.summary.<fmt>` artifact).
pub fn emit_summary(summary: &CorpusSummary, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => format!("{}\n", summary_json(summary, "  ", "")),
        flat => format!(
            "{}\n{}\n",
            flat_header(flat),
            flat_row(&summary_fields(summary), flat)
        ),
    }
}

/// Render the run report (the `run.summary.<fmt>` artifact).
pub fn emit_run(report: &RunReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let corpora = if report.corpora.is_empty() {
                "[]".to_owned()
            } else {
                let rows: Vec<String> = report
                    .corpora
                    .iter()
                    .map(|s| format!("    {}", summary_json(s, "      ", "    ")))
                    .collect();
                format!("[\n{}\n  ]", rows.join(",\n"))
            };
            let amalgamated = match &report.amalgamated {
                None => "null".to_owned(),
                Some(a) => format!(
                    "{{\n    \"n_items\": {},\n    \"r_benford\": {},\n    \"pct_leading_1\": {}\n  }}",
                    a.n_items,
                    fmt6(a.r_benford),
                    fmt6(a.pct_leading_1)
                ),
            };
            format!("{{\n  \"corpora\": {corpora},\n  \"amalgamated\": {amalgamated}\n}}\n")
        }
        flat => {
            let mut out = flat_header(flat);
            out.push('\n');
            for s in &report.corpora {
                out.push_str(&flat_row(&summary_fields(s), flat));
                out.push('\n');
            }
            if let Some(a) = &report.amalgamated {
                out.push_str(&flat_row(&amalgamated_fields(a), flat));
                out.push('\n');
            }
            out
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

/// Labels become file names; refuse anything that would escape `dir`.
fn check_label_for_path(label: &str) -> Result<()> {
    if label.contains('/') || label.contains('\\') || label.contains('\0') || label.starts_with('.')
    {
        return Err(Error::InvalidParam(format!(
            "label {label:?} cannot be used as an artifact file name"
        )));
    }
    Ok(())
}

/// Write the per-corpus artifacts into `dir`:
/// `<label>.summary.<fmt>`, `<label>.rankfreq.tsv`, `<label>.loglog.tsv`,
/// `<label>.digits.tsv`. Returns the paths written.
pub fn write_artifacts(
    analysis: &CorpusAnalysis,
    dir: &Path,
    format: OutputFormat,
) -> Result<Vec<PathBuf>> {
    let label = &analysis.summary.label;
    check_label_for_path(label)?;
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_owned(),
        source,
    })?;
    let mut written = Vec::new();
    let summary_path = dir.join(format!("{label}.summary.{}", format.extension()));
    write_file(&summary_path, &emit_summary(&analysis.summary, format))?;
    written.push(summary_path);
    let rankfreq_path = dir.join(format!("{label}.rankfreq.tsv"));
    write_file(&rankfreq_path, &analysis.table.to_tsv())?;
    written.push(rankfreq_path);
    let loglog_path = dir.join(format!("{label}.loglog.tsv"));
    write_file(
        &loglog_path,
        &powerlaw::export_tsv(&analysis.table.view(), &analysis.loglog)?,
    )?;
    written.push(loglog_path);
    let digits_path = dir.join(format!("{label}.digits.tsv"));
    write_file(&digits_path, &benford::export_tsv(&analysis.benford))?;
    written.push(digits_path);
    Ok(written)
}

/// Write the run-level report into `dir` as `run.summary.<fmt>`.
pub fn write_run_report(report: &RunReport, dir: &Path, format: OutputFormat) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_owned(),
        source,
    })?;
    let path = dir.join(format!("run.summary.{}", format.extension()));
    write_file(&path, &emit_run(report, format))?;
    Ok(path)
}
