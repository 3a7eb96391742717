//! The normalized Zipf curve and correlation of a ranked table against it.
//!
//! The curve is f(n) = C·n^(−α) with C = 1/Σ_{n=1..N} n^(−α), so predicted
//! frequencies over the N ranks sum to one. Agreement with an observed
//! table is scored as the product-moment correlation between observed and
//! predicted frequency vectors over a rank window — the r of the
//! least-squares line through that scatter.

use crate::error::{Error, Result};
use crate::fmt6;
use crate::freq::{FrequencyTable, RankView, RankWindow};
use crate::stats;

/// A normalized Zipf (discrete power-law) frequency curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZipfCurve {
    alpha: f64,
    n_ranks: usize,
    norm: f64,
}

impl ZipfCurve {
    /// Curve over ranks 1..=n_ranks with exponent alpha.
    pub fn new(n_ranks: usize, alpha: f64) -> Result<Self> {
        if n_ranks == 0 {
            return Err(Error::InvalidParam("curve needs at least one rank".into()));
        }
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidParam(format!(
                "curve exponent must be a positive real, got {alpha}"
            )));
        }
        // Sum the generalized harmonic series smallest-terms-first so the
        // normalization stays accurate for large N.
        let mut h = 0.0;
        for n in (1..=n_ranks).rev() {
            h += (n as f64).powf(-alpha);
        }
        Ok(ZipfCurve {
            alpha,
            n_ranks,
            norm: 1.0 / h,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n_ranks(&self) -> usize {
        self.n_ranks
    }

    /// The normalization constant C = 1/H_N(α).
    pub fn normalization(&self) -> f64 {
        self.norm
    }

    /// Predicted relative frequency at a rank in 1..=n_ranks.
    pub fn predicted(&self, rank: usize) -> f64 {
        assert!(
            rank >= 1 && rank <= self.n_ranks,
            "rank {rank} outside curve range 1..={}",
            self.n_ranks
        );
        self.norm * (rank as f64).powf(-self.alpha)
    }
}

/// Correlation of a table against a Zipf curve over one window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZipfFit {
    pub window: RankWindow,
    pub r: f64,
    pub curve: ZipfCurve,
}

/// Product-moment correlation between observed frequencies and curve
/// predictions over `window`.
///
/// The window must lie inside both the view and the curve. Identical
/// observed frequencies at every windowed rank make the correlation
/// undefined and error out.
pub fn correlation(view: &RankView<'_>, curve: &ZipfCurve, window: RankWindow) -> Result<ZipfFit> {
    view.check_window(window)?;
    if window.hi() > curve.n_ranks() {
        return Err(Error::InvalidParam(format!(
            "window {window} exceeds curve defined over 1..={}",
            curve.n_ranks()
        )));
    }
    let mut observed = Vec::with_capacity(window.len());
    let mut predicted = Vec::with_capacity(window.len());
    for rank in window.ranks() {
        observed.push(view.frequency(rank).expect("rank checked against view"));
        predicted.push(curve.predicted(rank));
    }
    let r = stats::pearson(&predicted, &observed)?;
    Ok(ZipfFit {
        window,
        r,
        curve: *curve,
    })
}

/// Deterministic synthetic table following the curve: count(n) =
/// max(1, round(total·C·n^(−α))), EUs labeled "w000001", "w000002", …
///
/// `seed` is reserved for optional sampling noise; the default sampler is
/// noiseless, so tables depend only on (n_ranks, total, alpha).
pub fn sample_table(n_ranks: usize, total: u64, alpha: f64, seed: u64) -> Result<FrequencyTable> {
    let _ = seed;
    let curve = ZipfCurve::new(n_ranks, alpha)?;
    if total < n_ranks as u64 {
        return Err(Error::InvalidParam(format!(
            "total {total} cannot cover {n_ranks} ranks with count >= 1"
        )));
    }
    let pairs = (1..=n_ranks).map(|n| {
        let ideal = total as f64 * curve.predicted(n);
        let count = (ideal.round() as u64).max(1);
        (format!("w{n:06}"), count)
    });
    FrequencyTable::from_pairs(pairs)
}

/// Plot data over the window: `rank  actual_frequency  predicted_frequency`.
pub fn export_tsv(view: &RankView<'_>, curve: &ZipfCurve, window: RankWindow) -> Result<String> {
    view.check_window(window)?;
    if window.hi() > curve.n_ranks() {
        return Err(Error::InvalidParam(format!(
            "window {window} exceeds curve defined over 1..={}",
            curve.n_ranks()
        )));
    }
    let mut out = String::from("rank\tactual_frequency\tpredicted_frequency\n");
    for rank in window.ranks() {
        out.push_str(&format!(
            "{rank}\t{}\t{}\n",
            fmt6(view.frequency(rank).expect("rank checked against view")),
            fmt6(curve.predicted(rank))
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(counts: &[u64]) -> FrequencyTable {
        FrequencyTable::from_pairs(
            counts
                .iter()
                .enumerate()
                .map(|(i, &c)| (format!("w{:06}", i + 1), c)),
        )
        .unwrap()
    }

    #[test]
    fn normalization_reproduces_reference_constants() {
        // Independent arbitrary-precision values: 1/H_34136 and 1/H_863.
        let big = ZipfCurve::new(34136, 1.0).unwrap();
        assert!((big.normalization() - 0.090_782_505_953_4).abs() < 1e-9);
        let small = ZipfCurve::new(863, 1.0).unwrap();
        assert!((small.normalization() - 0.136_273_021_896).abs() < 1e-9);
        // and the 4-decimal views
        assert_eq!(format!("{:.4}", big.normalization()), "0.0908");
        assert_eq!(format!("{:.4}", big.predicted(2)), "0.0454");
        assert_eq!(format!("{:.4}", big.predicted(10)), "0.0091");
        assert_eq!(format!("{:.4}", small.normalization()), "0.1363");
        assert_eq!(format!("{:.4}", small.predicted(7)), "0.0195");
    }

    #[test]
    fn predictions_sum_to_one_and_decrease() {
        for &alpha in &[1.0, 1.25] {
            for &n in &[10usize, 863, 34136] {
                let curve = ZipfCurve::new(n, alpha).unwrap();
                let sum: f64 = (1..=n).map(|r| curve.predicted(r)).sum();
                assert!((sum - 1.0).abs() < 1e-9, "N={n} alpha={alpha}: {sum}");
                for r in 2..=n.min(50) {
                    assert!(curve.predicted(r) < curve.predicted(r - 1));
                }
            }
        }
    }

    #[test]
    fn single_rank_curve_is_identity() {
        let c = ZipfCurve::new(1, 2.5).unwrap();
        assert_eq!(c.normalization(), 1.0);
        assert_eq!(c.predicted(1), 1.0);
    }

    #[test]
    fn curve_rejects_bad_params() {
        assert!(ZipfCurve::new(0, 1.0).is_err());
        assert!(ZipfCurve::new(5, 0.0).is_err());
        assert!(ZipfCurve::new(5, -1.0).is_err());
        assert!(ZipfCurve::new(5, f64::NAN).is_err());
    }

    #[test]
    fn correlation_against_reference_five_vector() {
        // Observed frequencies (0.40, 0.20, 0.13, 0.07, 0.05): encoded as
        // counts (40, 20, 13, 7, 5); Pearson r is scale-invariant, so the
        // differing total does not matter. Reference value from an
        // arbitrary-precision oracle.
        let t = pairs(&[40, 20, 13, 7, 5]);
        let curve = ZipfCurve::new(5, 1.0).unwrap();
        let fit = correlation(&t.view(), &curve, RankWindow::new(1, 5).unwrap()).unwrap();
        assert!((fit.r - 0.996_722_191_349_815_3).abs() < 1e-9, "r={}", fit.r);
    }

    #[test]
    fn exact_curve_table_correlates_perfectly_on_any_window() {
        // counts 12/n for n=1..4 are exactly proportional to a 1/n curve
        let t = pairs(&[12, 6, 4, 3]);
        let curve = ZipfCurve::new(4, 1.0).unwrap();
        for (lo, hi) in [(1, 4), (1, 2), (2, 4), (3, 4)] {
            let fit =
                correlation(&t.view(), &curve, RankWindow::new(lo, hi).unwrap()).unwrap();
            assert!((fit.r - 1.0).abs() < 1e-9, "[{lo},{hi}] r={}", fit.r);
        }
    }

    #[test]
    fn correlation_errors() {
        let t = pairs(&[12, 6, 4, 3]);
        let curve = ZipfCurve::new(4, 1.0).unwrap();
        let w = |lo, hi| RankWindow::new(lo, hi).unwrap();
        assert!(matches!(
            correlation(&t.view(), &curve, w(1, 5)),
            Err(Error::WindowOutOfRange { .. })
        ));
        assert!(matches!(
            correlation(&t.view(), &curve, w(2, 2)),
            Err(Error::WindowTooSmall { .. })
        ));
        // constant observed frequencies -> undefined correlation
        let flat = pairs(&[3, 3, 3]);
        let c3 = ZipfCurve::new(3, 1.0).unwrap();
        assert!(matches!(
            correlation(&flat.view(), &c3, w(1, 3)),
            Err(Error::ZeroVariance { .. })
        ));
        // window beyond the curve's own range
        let deep = pairs(&[5, 4, 3, 2, 1]);
        assert!(matches!(
            correlation(&deep.view(), &c3, w(1, 5)),
            Err(Error::InvalidParam(_))
        ));
    }

    #[test]
    fn correlation_scale_invariant_in_counts() {
        let t = pairs(&[40, 20, 13, 7, 5]);
        let t7 = pairs(&[280, 140, 91, 49, 35]);
        let curve = ZipfCurve::new(5, 1.0).unwrap();
        let w = RankWindow::new(1, 5).unwrap();
        let a = correlation(&t.view(), &curve, w).unwrap().r;
        let b = correlation(&t7.view(), &curve, w).unwrap().r;
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn sampler_matches_hand_computed_counts() {
        let t = sample_table(3, 100, 1.0, 0).unwrap();
        let counts: Vec<u64> = t.view().counts().collect();
        assert_eq!(counts, [55, 27, 18]);
        assert_eq!(t.get(1), Some(("w000001", 55)));
        assert_eq!(t.get(3), Some(("w000003", 18)));
    }

    #[test]
    fn sampler_edge_cases() {
        let one = sample_table(1, 10, 1.0, 0).unwrap();
        assert_eq!(one.get(1), Some(("w000001", 10)));
        // total 5 over 5 ranks: rank 1 rounds to 2 (5·C ≈ 2.19) and the
        // tail rounds to zero, engaging the count floor of 1
        let floor = sample_table(5, 5, 1.0, 0).unwrap();
        let counts: Vec<u64> = floor.view().counts().collect();
        assert_eq!(counts, [2, 1, 1, 1, 1]);
        assert!(floor.total_tokens() > 5, "floor can overshoot the total");
        assert!(matches!(
            sample_table(10, 9, 1.0, 0),
            Err(Error::InvalidParam(_))
        ));
    }

    #[test]
    fn sampler_is_deterministic() {
        let a = sample_table(200, 50_000, 0.94, 1).unwrap();
        let b = sample_table(200, 50_000, 0.94, 99).unwrap();
        assert_eq!(a, b, "seed is reserved; default sampler is noiseless");
    }

    #[test]
    fn plot_export_columns() {
        let t = pairs(&[12, 6, 4, 3]);
        let curve = ZipfCurve::new(4, 1.0).unwrap();
        let tsv = export_tsv(&t.view(), &curve, RankWindow::new(1, 3).unwrap()).unwrap();
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines[0], "rank\tactual_frequency\tpredicted_frequency");
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[1], "1\t0.480000\t0.480000");
    }
}
