//! Least-squares fits of sequences indexed by length.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

/// Coefficients of a linear least-squares fit and the RMS of its residuals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearFit {
    pub coeffs: Vec<f64>,
    pub rms_residual: f64,
}

/// Fits `y ~ sum_k coeffs[k] * basis_k(x)`.
pub fn least_squares(xs: &[f64], ys: &[f64], basis: &[&dyn Fn(f64) -> f64]) -> LinearFit {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= basis.len(), "need at least as many points as parameters");
    let a = DMatrix::from_fn(xs.len(), basis.len(), |i, j| basis[j](xs[i]));
    let b = DVector::from_column_slice(ys);
    let svd = a.clone().svd(true, true);
    let x = svd.solve(&b, 1e-14).expect("SVD was computed with U and V");
    let r = &a * &x - &b;
    LinearFit {
        coeffs: x.iter().copied().collect(),
        rms_residual: (r.norm_squared() / xs.len() as f64).sqrt(),
    }
}

/// `y ~ A sqrt(n) + B + C / sqrt(n)`: returns `(A, B, C)` and the RMS residual.
pub fn fit_sqrt_law(ns: &[f64], ys: &[f64]) -> LinearFit {
    least_squares(ns, ys, &[&|n: f64| n.sqrt(), &|_| 1.0, &|n: f64| 1.0 / n.sqrt()])
}

/// `y ~ slope * n + intercept`: coefficients `[slope, intercept]`.
pub fn fit_line(ns: &[f64], ys: &[f64]) -> LinearFit {
    least_squares(ns, ys, &[&|n| n, &|_| 1.0])
}

/// `y ~ c n^gamma`, fitted on logarithms: coefficients `[gamma, log c]`;
/// the residual is in log space.
pub fn fit_power_law(ns: &[f64], ys: &[f64]) -> LinearFit {
    let lx: Vec<f64> = ns.iter().map(|n| n.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    fit_line(&lx, &ly)
}

/// Range searched for the exponent of [`fit_power_law_offset`].
const OFFSET_GAMMA_RANGE: (f64, f64) = (0.05, 2.0);

/// `y ~ c n^gamma + b`: for each trial `gamma` the pair `(c, b)` is a linear
/// least-squares fit; `gamma` minimises the residual (grid search, then
/// golden-section refinement). Coefficients `[gamma, c, b]`.
pub fn fit_power_law_offset(ns: &[f64], ys: &[f64]) -> LinearFit {
    let at = |g: f64| least_squares(ns, ys, &[&|n: f64| n.powf(g), &|_| 1.0]);
    let (lo, hi) = OFFSET_GAMMA_RANGE;
    let steps = 390;
    let h = (hi - lo) / steps as f64;
    let best = (0..=steps)
        .map(|i| lo + i as f64 * h)
        .min_by(|x, y| at(*x).rms_residual.total_cmp(&at(*y).rms_residual))
        .expect("nonempty grid");
    let (mut a, mut b) = ((best - h).max(lo), (best + h).min(hi));
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    while b - a > 1e-10 {
        let c = b - phi * (b - a);
        let d = a + phi * (b - a);
        if at(c).rms_residual < at(d).rms_residual {
            b = d;
        } else {
            a = c;
        }
    }
    let g = (a + b) / 2.0;
    let f = at(g);
    LinearFit {
        coeffs: vec![g, f.coeffs[0], f.coeffs[1]],
        rms_residual: f.rms_residual,
    }
}
