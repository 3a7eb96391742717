//! Product-moment correlation and least-squares line fitting.
//!
//! Shared by the Zipf, power-law and Benford modules so that "correlation"
//! means exactly one thing everywhere in the crate.

use crate::error::{Error, Result};

pub(crate) fn is_constant(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] == w[1])
}

/// Pearson product-moment correlation of two equal-length samples.
///
/// Errors with [`Error::ZeroVariance`] when either side is constant;
/// the result is clamped to [-1, 1] to absorb floating-point drift.
pub(crate) fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    debug_assert_eq!(xs.len(), ys.len());
    debug_assert!(xs.len() >= 2);
    if is_constant(xs) {
        return Err(Error::ZeroVariance { side: "predictor" });
    }
    if is_constant(ys) {
        return Err(Error::ZeroVariance { side: "response" });
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

pub(crate) struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r: f64,
}

/// Unweighted ordinary least squares line through (xs, ys).
///
/// A constant response is fitted exactly by the horizontal line
/// (slope 0, r reported as 0: no linear association). A constant
/// predictor leaves the slope undefined and errors.
pub(crate) fn least_squares_line(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    debug_assert_eq!(xs.len(), ys.len());
    debug_assert!(xs.len() >= 2);
    if is_constant(xs) {
        return Err(Error::ZeroVariance { side: "predictor" });
    }
    if is_constant(ys) {
        return Ok(LineFit {
            slope: 0.0,
            intercept: ys[0],
            r: 0.0,
        });
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    Ok(LineFit {
        slope,
        intercept: my - slope * mx,
        r: (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0),
    })
}
