//! Height scaling and its relation to the order of the transition: walks
//! whose mean maximum height grows linearly should adsorb discontinuously,
//! walks with `<h_n> = O(n^(3/4))` continuously.

use rayon::prelude::*;
use serde::Serialize;

use super::fit::{fit_line, fit_power_law, fit_power_law_offset};
use super::thermo::{critical_point, PhaseError, PhaseModel, TransitionOrder};
use crate::baselines::{baseline_height_profile, DirectedModel, ModelName};
use crate::poly::rat;
use crate::error::LimitError;
use crate::prudent::{height_statistics, Endpoint, TwoSidedStates, WalkFamily, DEFAULT_DP_LIMIT};

/// Linear and power-law fits of one height sequence over a window.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthFit {
    pub window: (usize, usize),
    pub slope: f64,
    pub intercept: f64,
    /// RMS residual of the linear fit divided by the mean of the data.
    pub relative_residual: f64,
    /// Exponent of `y ~ c n^gamma`, fitted on logarithms.
    pub gamma: f64,
    /// Exponent of `y ~ c n^gamma + b`, which absorbs the constant
    /// correction to scaling.
    pub gamma_offset: f64,
}

/// Fits the points with `lo <= n <= hi`.
pub fn growth_fit(ns: &[usize], ys: &[f64], lo: usize, hi: usize) -> GrowthFit {
    let (x, y): (Vec<f64>, Vec<f64>) = ns
        .iter()
        .zip(ys)
        .filter(|(&n, _)| n >= lo && n <= hi)
        .map(|(&n, &y)| (n as f64, y))
        .unzip();
    let line = fit_line(&x, &y);
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    let power = fit_power_law(&x, &y);
    GrowthFit {
        window: (lo, hi),
        slope: line.coeffs[0],
        intercept: line.coeffs[1],
        relative_residual: line.rms_residual / mean,
        gamma: power.coeffs[0],
        gamma_offset: fit_power_law_offset(&x, &y).coeffs[0],
    }
}

/// Endpoint and maximum-height growth of two-sided prudent walks at `a = 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrudentHeights {
    pub endpoint: Endpoint,
    pub n: Vec<usize>,
    pub mean_endpoint: Vec<f64>,
    pub mean_max: Vec<f64>,
}

impl PrudentHeights {
    pub fn compute(endpoint: Endpoint, n_max: usize) -> Result<PrudentHeights, PhaseError> {
        let table = height_statistics(WalkFamily::new(crate::prudent::Sides::Two, endpoint), n_max, &rat(1))?;
        let rows: Vec<_> = table.rows.iter().filter(|r| r.n > 0).collect();
        Ok(PrudentHeights {
            endpoint,
            n: rows.iter().map(|r| r.n).collect(),
            mean_endpoint: rows.iter().map(|r| r.mean_endpoint()).collect(),
            mean_max: rows.iter().map(|r| r.mean_max()).collect(),
        })
    }

    /// The same means from a floating-point transfer at `a = 1`: counts
    /// stay below `f64::MAX` for every length the counter accepts.
    pub fn compute_float(endpoint: Endpoint, n_max: usize) -> Result<PrudentHeights, PhaseError> {
        if n_max > DEFAULT_DP_LIMIT {
            return Err(LimitError {
                what: "transfer counting length",
                requested: n_max,
                limit: DEFAULT_DP_LIMIT,
            }
            .into());
        }
        let sums = TwoSidedStates::compute(n_max, &1.0f64).height_sums(endpoint);
        let rows: Vec<_> = sums.iter().enumerate().skip(1).collect();
        Ok(PrudentHeights {
            endpoint,
            n: rows.iter().map(|(n, _)| *n).collect(),
            mean_endpoint: rows.iter().map(|(_, s)| s.1 / s.0).collect(),
            mean_max: rows.iter().map(|(_, s)| s.2 / s.0).collect(),
        })
    }

    pub fn fit_max(&self, lo: usize, hi: usize) -> GrowthFit {
        growth_fit(&self.n, &self.mean_max, lo, hi)
    }

    pub fn fit_endpoint(&self, lo: usize, hi: usize) -> GrowthFit {
        growth_fit(&self.n, &self.mean_endpoint, lo, hi)
    }
}

/// How `<h_n>` grows, read off the fitted exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HeightClass {
    /// The walks stay on the surface: `<h_n> = 0`.
    Zero,
    /// `gamma >= LINEAR_GAMMA`.
    Linear,
    /// `gamma <= SUBLINEAR_GAMMA`, consistent with `O(n^(3/4))`.
    Sublinear,
    Ambiguous,
}

pub const LINEAR_GAMMA: f64 = 0.9;
pub const SUBLINEAR_GAMMA: f64 = 0.8;

impl HeightClass {
    fn of(gamma: Option<f64>) -> HeightClass {
        match gamma {
            None => HeightClass::Zero,
            Some(g) if g >= LINEAR_GAMMA => HeightClass::Linear,
            Some(g) if g <= SUBLINEAR_GAMMA => HeightClass::Sublinear,
            Some(_) => HeightClass::Ambiguous,
        }
    }

    /// The transition order the height growth predicts.
    pub fn predicts(self) -> Option<TransitionOrder> {
        match self {
            HeightClass::Linear => Some(TransitionOrder::FirstOrder),
            HeightClass::Sublinear => Some(TransitionOrder::SecondOrder),
            HeightClass::Zero | HeightClass::Ambiguous => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub model: String,
    pub n_max: usize,
    /// `None` when the heights vanish identically.
    pub gamma: Option<f64>,
    pub height_class: HeightClass,
    pub order: TransitionOrder,
    pub jump: f64,
    /// `None` when the model has no transition or the exponent is ambiguous.
    pub consistent: Option<bool>,
}

fn row(model: PhaseModel, n_max: usize, ns: &[usize], hs: &[f64]) -> Result<ReportRow, PhaseError> {
    let cp = critical_point(model)?;
    let gamma = if hs.iter().all(|&h| h == 0.0) {
        None
    } else {
        Some(growth_fit(ns, hs, n_max / 2, n_max).gamma)
    };
    let height_class = HeightClass::of(gamma);
    let consistent = match (cp.order, height_class.predicts()) {
        (TransitionOrder::None, _) | (_, None) => None,
        (order, Some(p)) => Some(order == p),
    };
    Ok(ReportRow {
        model: model.to_string(),
        n_max,
        gamma,
        height_class,
        order: cp.order,
        jump: cp.jump,
        consistent,
    })
}

/// Models covered by the report, in output order.
pub fn report_models() -> Vec<PhaseModel> {
    let mut out = Vec::new();
    for name in ModelName::ALL {
        for e in [Endpoint::Tail, Endpoint::Loop] {
            out.push(PhaseModel::Baseline(DirectedModel::natural(name, e)));
        }
    }
    out.extend(PhaseModel::PRUDENT);
    out
}

/// One row per model: exponent of the mean maximum height over
/// `[n/2, n]`, the transition order from the density jump, and whether the
/// two agree. Baselines are run to `baseline_n` steps, prudent walks to
/// `prudent_n`.
pub fn transition_height_report(baseline_n: usize, prudent_n: usize) -> Result<Vec<ReportRow>, PhaseError> {
    report_models()
        .into_par_iter()
        .map(|m| match m {
            PhaseModel::Baseline(d) => {
                let prof = baseline_height_profile(&d, baseline_n)?;
                let (ns, hs): (Vec<usize>, Vec<f64>) =
                    prof.iter().filter(|p| p.n > 0).map(|p| (p.n, p.mean_max)).unzip();
                row(m, baseline_n, &ns, &hs)
            }
            PhaseModel::PrudentTails | PhaseModel::PrudentLoops => {
                let endpoint = if m == PhaseModel::PrudentTails {
                    Endpoint::Tail
                } else {
                    Endpoint::Loop
                };
                let h = PrudentHeights::compute_float(endpoint, prudent_n)?;
                row(m, prudent_n, &h.n, &h.mean_max)
            }
        })
        .collect()
}
