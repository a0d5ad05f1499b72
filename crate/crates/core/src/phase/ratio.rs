//! Ratio-method estimates of the radius of convergence from a finite run
//! of series coefficients.
//!
//! With `c_n ~ K mu^n n^(g-1)` the ratios behave like
//! `mu (1 + (g - 1)/n + O(1/n^2))`. The linear intercepts
//! `n r_n - (n - 1) r_(n-1)` remove the `1/n` term; one Richardson step on
//! those removes the `1/n^2` term. The spread of the last few extrapolants
//! is the uncertainty proxy.

use serde::Serialize;
use thiserror::Error;

/// Fewest coefficients accepted.
pub const MIN_TERMS: usize = 20;

/// Trailing extrapolants used for the spread.
const SPREAD_WINDOW: usize = 5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RatioError {
    #[error("need at least {MIN_TERMS} coefficients, got {0}")]
    TooShort(usize),
    #[error("coefficient {index} is {value}; the ratio method needs positive terms")]
    NonPositive { index: usize, value: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Ratio,
    RatioExtrapolated,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularityEstimate {
    pub z_c: f64,
    pub method: Method,
    /// Coefficients that entered the estimate.
    pub terms_used: usize,
    /// Spread of the final extrapolants, in units of `z_c`.
    pub uncertainty: f64,
    /// Index step of the subsequence analysed: 2 when only every other
    /// coefficient is nonzero or the ratios alternate.
    pub step: usize,
    /// Successive ratios alternated around their trend.
    pub oscillating: bool,
}

fn check(coeffs: &[f64]) -> Result<(), RatioError> {
    if coeffs.len() < MIN_TERMS {
        return Err(RatioError::TooShort(coeffs.len()));
    }
    Ok(())
}

/// Coefficients vanishing at every odd index past the first even one
/// (Dyck-like parity).
fn has_parity_zeros(c: &[f64]) -> bool {
    c.iter().skip(1).step_by(2).all(|&x| x == 0.0) && c.iter().step_by(2).skip(1).all(|&x| x > 0.0)
}

/// Does `x_k - x_(k-1)` flip sign at most steps of the tail?
fn alternates(x: &[f64]) -> bool {
    let d: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let tail = &d[d.len() / 2..];
    if tail.len() < 3 {
        return false;
    }
    let flips = tail.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
    flips * 4 >= (tail.len() - 1) * 3
}

/// Estimates `z_c` from `c_0, c_1, ...`.
pub fn ratio_estimate(coeffs: &[f64]) -> Result<SingularityEstimate, RatioError> {
    check(coeffs)?;
    let parity = has_parity_zeros(coeffs);
    if !parity {
        if let Some((index, &value)) = coeffs.iter().enumerate().skip(1).find(|(_, &x)| !(x > 0.0)) {
            return Err(RatioError::NonPositive { index, value });
        }
    }
    let ratios = |step: usize| -> Vec<f64> {
        // align the subsequence so that it ends on the last coefficient
        let sub: Vec<f64> = coeffs[(coeffs.len() - 1) % step..].iter().step_by(step).copied().collect();
        sub.windows(2).filter(|w| w[0] > 0.0).map(|w| w[1] / w[0]).collect()
    };
    let mut step = if parity { 2 } else { 1 };
    let mut r = ratios(step);
    let oscillating = !parity && alternates(&r);
    if oscillating {
        step = 2;
        r = ratios(step);
    }
    // r[k - 1] is the ratio ending at subsequence index k
    let intercepts: Vec<f64> = (2..=r.len())
        .map(|k| k as f64 * r[k - 1] - (k as f64 - 1.0) * r[k - 2])
        .collect();
    let (method, finals) = if intercepts.len() > SPREAD_WINDOW {
        let rich: Vec<f64> = (1..intercepts.len())
            .map(|i| {
                let k = (i + 2) as f64;
                (k * k * intercepts[i] - (k - 1.0) * (k - 1.0) * intercepts[i - 1]) / (2.0 * k - 1.0)
            })
            .collect();
        (Method::RatioExtrapolated, rich)
    } else {
        (Method::Ratio, r.clone())
    };
    let window = &finals[finals.len().saturating_sub(SPREAD_WINDOW)..];
    let mu_s = *finals.last().expect("at least one ratio");
    let (lo, hi) = window
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
    let inv = 1.0 / step as f64;
    let z_c = mu_s.powf(-inv);
    // relative spread in mu^step maps to (1/step) of that in z_c
    let uncertainty = inv * (hi - lo) / mu_s.abs();
    Ok(SingularityEstimate {
        z_c,
        method,
        terms_used: coeffs.len(),
        uncertainty,
        step,
        oscillating,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric() {
        let c: Vec<f64> = (0..30).map(|n| 3f64.powi(n)).collect();
        let e = ratio_estimate(&c).unwrap();
        assert!((e.z_c - 1.0 / 3.0).abs() < 1e-14);
        assert!(e.uncertainty < 1e-12);
    }

    #[test]
    fn too_short() {
        assert_eq!(ratio_estimate(&[1.0; 5]), Err(RatioError::TooShort(5)));
    }

    #[test]
    fn alternating_sign_singularity() {
        // 1/(1 - 2z) + 1/(1 + 1.5 z): ratios wobble around 2
        let c: Vec<f64> = (0..40).map(|n| 2f64.powi(n) + (-1.5f64).powi(n)).collect();
        let e = ratio_estimate(&c).unwrap();
        assert!(e.oscillating);
        assert_eq!(e.step, 2);
        assert!((e.z_c - 0.5).abs() < 1e-3);
    }
}
