//! Power-law exponent estimation on log-log axes.
//!
//! The exponent estimate is the modulus of the slope of the ordinary
//! least-squares line through (ln rank, ln frequency) over a window.
//! Piecewise fits split the rank axis at breakpoints to capture tables
//! whose head and tail follow different exponents.

use crate::error::{Error, Result};
use crate::fmt6;
use crate::freq::{RankView, RankWindow};
use crate::stats;

/// Least-squares line through (ln rank, ln frequency) over one window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogLogFit {
    pub window: RankWindow,
    pub slope: f64,
    pub intercept: f64,
    /// Correlation of the regression; 0.0 when the response is constant
    /// (a flat table has a well-defined slope of 0 but no correlation).
    pub r: f64,
}

impl LogLogFit {
    /// Exponent estimate: the modulus of the slope.
    pub fn alpha_hat(&self) -> f64 {
        self.slope.abs()
    }
}

/// Fit ln frequency on ln rank over `window` with unweighted OLS,
/// one point per rank. Frequencies in the window are always positive
/// (counts are at least 1), so the logs are finite.
pub fn fit(view: &RankView<'_>, window: RankWindow) -> Result<LogLogFit> {
    view.check_window(window)?;
    let mut xs = Vec::with_capacity(window.len());
    let mut ys = Vec::with_capacity(window.len());
    for rank in window.ranks() {
        xs.push((rank as f64).ln());
        ys.push(
            view.frequency(rank)
                .expect("rank checked against view")
                .ln(),
        );
    }
    let line = stats::least_squares_line(&xs, &ys)?;
    Ok(LogLogFit {
        window,
        slope: line.slope,
        intercept: line.intercept,
        r: line.r,
    })
}

/// One fit per consecutive breakpoint window.
///
/// Breakpoints must be strictly ascending. Two or more breakpoints
/// (b1, b2, …, bk) produce the inclusive, non-overlapping windows
/// [b1, b2], [b2+1, b3], …; a single breakpoint b is the degenerate
/// whole-prefix request [view.min_rank, b].
pub fn fit_segments(view: &RankView<'_>, breakpoints: &[usize]) -> Result<Vec<LogLogFit>> {
    if breakpoints.is_empty() {
        return Err(Error::InvalidParam("no breakpoints given".into()));
    }
    if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParam(format!(
            "breakpoints must be strictly ascending, got {breakpoints:?}"
        )));
    }
    let mut windows = Vec::new();
    if let [only] = breakpoints {
        windows.push(RankWindow::new(view.min_rank(), *only)?);
    } else {
        for (i, pair) in breakpoints.windows(2).enumerate() {
            let lo = if i == 0 { pair[0] } else { pair[0] + 1 };
            windows.push(RankWindow::new(lo, pair[1])?);
        }
    }
    windows.into_iter().map(|w| fit(view, w)).collect()
}

/// Plot data over the fit's window: `ln_rank  ln_frequency  fitted_value`.
pub fn export_tsv(view: &RankView<'_>, fit: &LogLogFit) -> Result<String> {
    view.check_window(fit.window)?;
    let mut out = String::from("ln_rank\tln_frequency\tfitted_value\n");
    for rank in fit.window.ranks() {
        let x = (rank as f64).ln();
        let y = view
            .frequency(rank)
            .expect("rank checked against view")
            .ln();
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            fmt6(x),
            fmt6(y),
            fmt6(fit.intercept + fit.slope * x)
        ));
    }
    Ok(out)
}


#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn recovered_exponent_tracks_generator(alpha in 0.7f64..1.6) {
            let t = crate::zipf::sample_table(1000, 1_000_000, alpha, 0).unwrap();
            let f = fit(&t.view(), RankWindow::new(11, 110).unwrap()).unwrap();
            prop_assert!(
                (f.alpha_hat() - alpha).abs() < 0.02,
                "alpha={alpha} alpha_hat={}",
                f.alpha_hat()
            );
            prop_assert!(f.slope < 0.0);
            prop_assert!(f.r < -0.99);
        }
    }
}
