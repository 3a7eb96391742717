//! Rank-frequency tables.
//!
//! EUs are ranked by descending count; ties break lexicographically (byte
//! order of the EU string) so that table construction is deterministic.
//! Ranks are 1-based. Relative frequency is always count over the *full*
//! corpus total — dropping top ranks never renormalizes.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::fmt6;
use crate::tokenize::TokenStream;

/// An inclusive 1-based rank interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankWindow {
    lo: usize,
    hi: usize,
}

impl RankWindow {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo < 1 {
            return Err(Error::InvalidParam("rank window must start at 1 or above".into()));
        }
        if hi < lo {
            return Err(Error::InvalidParam(format!(
                "rank window [{lo}, {hi}] is reversed"
            )));
        }
        Ok(RankWindow { lo, hi })
    }

    pub fn lo(self) -> usize {
        self.lo
    }

    pub fn hi(self) -> usize {
        self.hi
    }

    pub fn len(self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(self) -> bool {
        false // construction guarantees lo <= hi
    }

    pub fn ranks(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl fmt::Display for RankWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

/// EU counts ranked by descending frequency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrequencyTable {
    /// (eu, count) sorted by count desc, then EU asc. Counts are >= 1.
    entries: Vec<(String, u64)>,
    total: u64,
}

impl FrequencyTable {
    /// Count and rank the EUs of a token stream. An empty stream yields
    /// the empty table (total 0).
    pub fn from_stream(stream: &TokenStream) -> Self {
        let mut counts: HashMap<&str, u64> = HashMap::new();
        for token in stream.iter() {
            *counts.entry(token.as_str()).or_insert(0) += 1;
        }
        let mut entries: Vec<(String, u64)> = counts
            .into_iter()
            .map(|(eu, count)| (eu.to_owned(), count))
            .collect();
        entries.sort_unstable_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        let total = entries.iter().map(|&(_, c)| c).sum();
        FrequencyTable { entries, total }
    }

    /// Build a table directly from (eu, count) pairs, e.g. when reloading
    /// an exported table. Counts must be positive and EUs unique.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, u64)>) -> Result<Self> {
        let mut entries = Vec::new();
        let mut seen = BTreeSet::new();
        for (eu, count) in pairs {
            if count == 0 {
                return Err(Error::InvalidParam(format!("EU {eu:?} has zero count")));
            }
            if !seen.insert(eu.clone()) {
                return Err(Error::InvalidParam(format!("duplicate EU {eu:?}")));
            }
            entries.push((eu, count));
        }
        entries.sort_unstable_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        let total = entries.iter().map(|&(_, c)| c).sum();
        Ok(FrequencyTable { entries, total })
    }

    /// Total token count (sum of all EU counts).
    pub fn total_tokens(&self) -> u64 {
        self.total
    }

    /// Number of distinct EUs (also the largest rank).
    pub fn unique_count(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// EU and count at a 1-based rank.
    pub fn get(&self, rank: usize) -> Option<(&str, u64)> {
        if rank == 0 {
            return None;
        }
        self.entries
            .get(rank - 1)
            .map(|(eu, count)| (eu.as_str(), *count))
    }

    /// Relative frequency at a rank: count / total tokens.
    pub fn frequency(&self, rank: usize) -> Option<f64> {
        self.get(rank)
            .map(|(_, count)| count as f64 / self.total as f64)
    }

    /// Iterate (rank, eu, count) in rank order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &str, u64)> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, (eu, count))| (i + 1, eu.as_str(), *count))
    }

    /// View of the whole table, ranks 1..=unique_count.
    pub fn view(&self) -> RankView<'_> {
        RankView {
            table: self,
            first: 1,
        }
    }

    /// View with the k most frequent EUs removed. Remaining entries keep
    /// their original ranks and frequencies (no renormalization).
    pub fn drop_top(&self, k: usize) -> Result<RankView<'_>> {
        self.view().drop_top(k)
    }

    /// Render the full table as TSV: `rank  eu  count  frequency`.
    ///
    /// The EU column backslash-escapes tab, newline, carriage return and
    /// backslash itself (string-literal EUs from code corpora can contain
    /// any of them); the escape is injective, so distinct EUs stay
    /// distinct.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("rank\teu\tcount\tfrequency\n");
        for (rank, eu, count) in self.iter() {
            let freq = count as f64 / self.total as f64;
            out.push_str(&format!(
                "{rank}\t{}\t{count}\t{}\n",
                escape_eu(eu),
                fmt6(freq)
            ));
        }
        out
    }
}

pub(crate) fn escape_eu(eu: &str) -> String {
    let mut out = String::with_capacity(eu.len());
    for c in eu.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            _ => out.push(c),
        }
    }
    out
}

/// A contiguous tail of a frequency table: ranks `first..=unique_count`,
/// with ranks, counts and frequencies exactly as in the parent table.
#[derive(Clone, Copy, Debug)]
pub struct RankView<'a> {
    table: &'a FrequencyTable,
    first: usize,
}

impl<'a> RankView<'a> {
    /// Remove the k lowest ranks still present in this view.
    ///
    /// Errors when k >= the number of remaining entries: a view must keep
    /// at least one rank to be analyzable.
    pub fn drop_top(self, k: usize) -> Result<RankView<'a>> {
        if k >= self.len() {
            return Err(Error::DropExceedsTable {
                k,
                unique: self.len(),
            });
        }
        Ok(RankView {
            table: self.table,
            first: self.first + k,
        })
    }

    pub fn table(&self) -> &'a FrequencyTable {
        self.table
    }

    /// Lowest rank in the view (1 for a full view).
    pub fn min_rank(&self) -> usize {
        self.first
    }

    /// Highest rank in the view (= the table's unique count).
    pub fn max_rank(&self) -> usize {
        self.table.unique_count()
    }

    pub fn len(&self) -> usize {
        (self.max_rank() + 1).saturating_sub(self.first)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn count(&self, rank: usize) -> Option<u64> {
        if rank < self.first {
            return None;
        }
        self.table.get(rank).map(|(_, c)| c)
    }

    /// Frequency relative to the full corpus total, even after drops.
    pub fn frequency(&self, rank: usize) -> Option<f64> {
        if rank < self.first {
            return None;
        }
        self.table.frequency(rank)
    }

    /// Counts in rank order over the whole view.
    pub fn counts(&self) -> impl Iterator<Item = u64> + 'a {
        let table = self.table;
        (self.first..=self.max_rank()).filter_map(move |r| table.get(r).map(|(_, c)| c))
    }

    /// Check that a window lies inside this view and spans enough ranks
    /// for correlation.
    pub(crate) fn check_window(&self, window: RankWindow) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptyTable);
        }
        if window.len() < 2 {
            return Err(Error::WindowTooSmall {
                lo: window.lo(),
                hi: window.hi(),
            });
        }
        if window.lo() < self.min_rank() || window.hi() > self.max_rank() {
            return Err(Error::WindowOutOfRange {
                lo: window.lo(),
                hi: window.hi(),
                min: self.min_rank(),
                max: self.max_rank(),
            });
        }
        Ok(())
    }
}
