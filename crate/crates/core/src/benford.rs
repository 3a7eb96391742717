//! Leading-digit statistics of EU counts.
//!
//! The reference distribution is P(d) = log₁₀(1 + 1/d) for d ∈ 1..9.
//! Observed digit histograms are scored against it with the same
//! product-moment correlation used for the Zipf fit, and histograms from
//! several corpora can be amalgamated (componentwise summed) before
//! scoring.

use crate::error::{Error, Result};
use crate::fmt6;
use crate::freq::FrequencyTable;
use crate::stats;

/// First decimal digit of a positive integer.
pub fn leading_digit(x: u64) -> Result<u8> {
    if x == 0 {
        return Err(Error::ZeroCount);
    }
    let mut v = x;
    while v >= 10 {
        v /= 10;
    }
    Ok(v as u8)
}

/// Counts of leading digits 1..=9 over a set of values.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DigitHistogram {
    counts: [u64; 9],
}

impl DigitHistogram {
    /// Histogram of the leading digits of `values`. Every value must be
    /// positive; an empty input yields the all-zero histogram.
    pub fn from_counts(values: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut hist = DigitHistogram::default();
        for v in values {
            hist.record(v)?;
        }
        Ok(hist)
    }

    /// Histogram with the given per-digit counts (digit 1 first), e.g.
    /// for reconstructing a histogram from an exported table.
    pub fn from_bin_counts(counts: [u64; 9]) -> Self {
        DigitHistogram { counts }
    }

    /// Add one value's leading digit.
    pub fn record(&mut self, value: u64) -> Result<()> {
        let d = leading_digit(value)?;
        self.counts[(d - 1) as usize] += 1;
        Ok(())
    }

    /// Occurrences of a digit in 1..=9.
    pub fn digit_count(&self, digit: u8) -> u64 {
        assert!((1..=9).contains(&digit), "digit {digit} outside 1..=9");
        self.counts[(digit - 1) as usize]
    }

    /// Counts indexed by digit − 1.
    pub fn counts(&self) -> &[u64; 9] {
        &self.counts
    }

    /// Number of values recorded.
    pub fn n_items(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// Empirical proportions (counts / n_items).
    pub fn proportions(&self) -> Result<[f64; 9]> {
        let n = self.n_items();
        if n == 0 {
            return Err(Error::EmptyHistogram);
        }
        let mut p = [0.0; 9];
        for (slot, &c) in p.iter_mut().zip(&self.counts) {
            *slot = c as f64 / n as f64;
        }
        Ok(p)
    }
}

/// The reference leading-digit distribution, P(d) = log₁₀(1 + 1/d).
pub fn probabilities() -> [f64; 9] {
    let mut p = [0.0; 9];
    for (i, slot) in p.iter_mut().enumerate() {
        let d = (i + 1) as f64;
        *slot = (1.0 + 1.0 / d).log10();
    }
    p
}

/// Digit-distribution comparison for one histogram.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenfordResult {
    /// Observed proportions, digit 1 first.
    pub empirical: [f64; 9],
    /// Reference proportions from P(d) = log₁₀(1 + 1/d).
    pub theoretical: [f64; 9],
    /// Product-moment correlation of the two 9-vectors.
    pub r: f64,
    /// 100 × the observed proportion of leading digit 1.
    pub pct_leading_1: f64,
}

/// Score a histogram against the reference distribution.
///
/// Errors on an empty histogram and on a zero-variance empirical vector
/// (all nine digits equally common), where correlation is undefined.
pub fn correlation(hist: &DigitHistogram) -> Result<BenfordResult> {
    let empirical = hist.proportions()?;
    let theoretical = probabilities();
    let r = stats::pearson(&theoretical, &empirical)?;
    Ok(BenfordResult {
        empirical,
        theoretical,
        r,
        pct_leading_1: 100.0 * empirical[0],
    })
}

/// Componentwise sum of several histograms.
pub fn amalgamate<'a>(histograms: impl IntoIterator<Item = &'a DigitHistogram>) -> Result<DigitHistogram> {
    let mut total = DigitHistogram::default();
    let mut any = false;
    for h in histograms {
        any = true;
        for (slot, &c) in total.counts.iter_mut().zip(&h.counts) {
            *slot += c;
        }
    }
    if !any {
        return Err(Error::EmptyHistogram);
    }
    Ok(total)
}

/// Benford correlation before and after dropping the table's top k ranks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EliminationSensitivity {
    pub r_full: f64,
    pub r_dropped: f64,
    /// 100·(r_dropped − r_full)/r_full: the change in percent of r_full.
    pub relative_delta_pct: f64,
}

/// How much the Benford correlation moves when the k most frequent EUs
/// are eliminated. The dropped histogram is built from the counts at
/// ranks k+1..N.
pub fn elimination_sensitivity(table: &FrequencyTable, k: usize) -> Result<EliminationSensitivity> {
    let full_hist = DigitHistogram::from_counts(table.view().counts())?;
    let r_full = correlation(&full_hist)?.r;
    let dropped_view = table.drop_top(k)?;
    let dropped_hist = DigitHistogram::from_counts(dropped_view.counts())?;
    let r_dropped = correlation(&dropped_hist)?.r;
    let relative_delta_pct = if k == 0 {
        0.0 // identical histograms by construction
    } else {
        100.0 * (r_dropped - r_full) / r_full
    };
    Ok(EliminationSensitivity {
        r_full,
        r_dropped,
        relative_delta_pct,
    })
}

/// Plot data: `digit  empirical_proportion  benford_proportion`.
pub fn export_tsv(result: &BenfordResult) -> String {
    let mut out = String::from("digit\tempirical_proportion\tbenford_proportion\n");
    for d in 0..9 {
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            d + 1,
            fmt6(result.empirical[d]),
            fmt6(result.theoretical[d])
        ));
    }
    out
}
