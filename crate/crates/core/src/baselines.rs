//! Adsorbing directed walks used as reference models: NE-directed walks,
//! Dyck paths, Motzkin paths and partially-directed walks, all in the upper
//! half-plane with the surface at height 0.
//!
//! Each model is a small automaton over (height, tag), where the tag
//! remembers whatever the step rule needs (the last vertical direction for
//! partially-directed walks). Counting is a transfer over heights.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::error::LimitError;
use crate::phase::fit::fit_sqrt_law;
use crate::poly::{Poly, Rational, Var};
use crate::prudent::{Endpoint, HeightRow, HeightTable, WeightTable};
use crate::weight;

/// Largest length accepted by the height and partition transfers.
pub const BASELINE_LIMIT: usize = 5000;
/// Largest length for the exact height tables (cubic cost in big integers).
pub const EXACT_HEIGHT_LIMIT: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelName {
    NeDirected,
    Dyck,
    Motzkin,
    PartiallyDirected,
}

impl ModelName {
    pub const ALL: [ModelName; 4] = [
        ModelName::NeDirected,
        ModelName::Dyck,
        ModelName::Motzkin,
        ModelName::PartiallyDirected,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelName::NeDirected => "ne_directed",
            ModelName::Dyck => "dyck",
            ModelName::Motzkin => "motzkin",
            ModelName::PartiallyDirected => "partially_directed",
        }
    }

    /// Growth constant of the desorbed model.
    pub fn growth_constant(self) -> f64 {
        match self {
            ModelName::NeDirected | ModelName::Dyck => 2.0,
            ModelName::Motzkin => 3.0,
            ModelName::PartiallyDirected => 1.0 + std::f64::consts::SQRT_2,
        }
    }

    fn tags(self) -> usize {
        match self {
            ModelName::PartiallyDirected => 3,
            _ => 1,
        }
    }

    /// Allowed moves `(from tag, to tag, height change)`. Partially-directed
    /// tags: 0 after an E step (or at the start), 1 after N, 2 after S.
    fn moves(self) -> &'static [(usize, usize, i32)] {
        match self {
            ModelName::NeDirected => &[(0, 0, 0), (0, 0, 1)],
            ModelName::Dyck => &[(0, 0, 1), (0, 0, -1)],
            ModelName::Motzkin => &[(0, 0, 1), (0, 0, 0), (0, 0, -1)],
            ModelName::PartiallyDirected => &[
                (0, 0, 0),
                (1, 0, 0),
                (2, 0, 0),
                (0, 1, 1),
                (1, 1, 1),
                (0, 2, -1),
                (2, 2, -1),
            ],
        }
    }
}

impl fmt::Display for ModelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelName {
    type Err = BaselineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModelName::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| BaselineError::UnknownModel(s.to_string()))
    }
}

/// How the surface interaction is counted: per surface edge, or per
/// vertex on the surface other than the starting vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Weighting {
    Edge,
    Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaselineError {
    #[error("{0} supports vertex weights only (it has no steps parallel to the surface)")]
    UnsupportedModel(ModelName),
    #[error("unknown model {0:?}")]
    UnknownModel(String),
    #[error(transparent)]
    Limit(#[from] LimitError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DirectedModel {
    pub name: ModelName,
    pub weighting: Weighting,
    pub endpoint: Endpoint,
}

impl DirectedModel {
    pub fn new(name: ModelName, weighting: Weighting, endpoint: Endpoint) -> Result<DirectedModel, BaselineError> {
        if name == ModelName::Dyck && weighting == Weighting::Edge {
            return Err(BaselineError::UnsupportedModel(name));
        }
        Ok(DirectedModel {
            name,
            weighting,
            endpoint,
        })
    }

    /// The natural weighting for `name`: vertex for Dyck paths, edge otherwise.
    pub fn natural(name: ModelName, endpoint: Endpoint) -> DirectedModel {
        let weighting = match name {
            ModelName::Dyck => Weighting::Vertex,
            _ => Weighting::Edge,
        };
        DirectedModel {
            name,
            weighting,
            endpoint,
        }
    }

    fn weighted(&self, h: usize, dh: i32) -> bool {
        match self.weighting {
            Weighting::Edge => h == 0 && dh == 0,
            Weighting::Vertex => h as i32 + dh == 0,
        }
    }
}

impl fmt::Display for DirectedModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = match self.endpoint {
            Endpoint::Tail => "tails",
            Endpoint::Loop => "loops",
        };
        let w = match self.weighting {
            Weighting::Edge => "edge",
            Weighting::Vertex => "vertex",
        };
        write!(f, "{} {} ({} weights)", self.name, e, w)
    }
}

fn check(n_max: usize, limit: usize, what: &'static str) -> Result<(), LimitError> {
    if n_max > limit {
        return Err(LimitError {
            what,
            requested: n_max,
            limit,
        });
    }
    Ok(())
}

/// Transfer over `(height, tag)` with heights capped at `cap`, calling
/// `visit(n, layer)` after every length. `layer[h * tags + tag]`.
fn transfer<W: weight::Weight, F: FnMut(usize, &[W])>(model: &DirectedModel, n_max: usize, cap: usize, a: &W, mut visit: F) {
    let tags = model.name.tags();
    let moves = model.name.moves();
    let mut cur = vec![W::zero(); (cap + 1) * tags];
    cur[0] = W::one();
    visit(0, &cur);
    for n in 1..=n_max {
        let mut next = vec![W::zero(); (cap + 1) * tags];
        for h in 0..=(n - 1).min(cap) {
            for &(from, to, dh) in moves {
                let x = &cur[h * tags + from];
                if x.is_zero() {
                    continue;
                }
                let nh = h as i32 + dh;
                if nh < 0 || nh as usize > cap {
                    continue;
                }
                let slot = &mut next[nh as usize * tags + to];
                if model.weighted(h, dh) {
                    slot.add_assign(&x.times(a));
                } else {
                    slot.add_assign(x);
                }
            }
        }
        cur = next;
        visit(n, &cur);
    }
}

fn endpoint_total<W: weight::Weight>(model: &DirectedModel, layer: &[W]) -> W {
    let tags = model.name.tags();
    let mut t = W::zero();
    let hs = match model.endpoint {
        Endpoint::Loop => 1,
        Endpoint::Tail => layer.len() / tags,
    };
    for x in &layer[..hs * tags] {
        t.add_assign(x);
    }
    t
}

/// Exact `Z_n(a)` with symbolic `a`.
pub fn baseline_partition(model: &DirectedModel, n_max: usize) -> Result<WeightTable, BaselineError> {
    check(n_max, BASELINE_LIMIT, "baseline transfer length")?;
    let mut totals = Vec::with_capacity(n_max + 1);
    transfer(model, n_max, n_max, &Poly::var(Var::A), |_, layer| {
        totals.push(endpoint_total(model, layer));
    });
    Ok(WeightTable {
        totals,
        refined: Default::default(),
    })
}

/// `Z_n(a)` at a fixed fugacity, exact.
pub fn baseline_partition_at(model: &DirectedModel, n_max: usize, a: &Rational) -> Result<Vec<Rational>, BaselineError> {
    check(n_max, BASELINE_LIMIT, "baseline transfer length")?;
    let mut totals = Vec::with_capacity(n_max + 1);
    transfer(model, n_max, n_max, a, |_, layer| totals.push(endpoint_total(model, layer)));
    Ok(totals)
}

/// A critical fugacity in closed form together with its value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraicValue {
    pub expr: &'static str,
    pub value: f64,
}

/// Closed-form critical fugacity, or `None` when the model has no
/// adsorption transition (NE-directed loops never leave the surface).
pub fn baseline_critical_fugacity(model: &DirectedModel) -> Result<Option<AlgebraicValue>, BaselineError> {
    let s2 = std::f64::consts::SQRT_2;
    let v = |expr, value| Ok(Some(AlgebraicValue { expr, value }));
    match (model.name, model.weighting) {
        (ModelName::Dyck, Weighting::Edge) => Err(BaselineError::UnsupportedModel(ModelName::Dyck)),
        (ModelName::Dyck, Weighting::Vertex) => v("2", 2.0),
        (ModelName::Motzkin, Weighting::Edge) => v("2", 2.0),
        (ModelName::Motzkin, Weighting::Vertex) => v("3/2", 1.5),
        (ModelName::PartiallyDirected, Weighting::Edge) => v("(2+sqrt(2))/2", (2.0 + s2) / 2.0),
        (ModelName::PartiallyDirected, Weighting::Vertex) => {
            v("(1+sqrt(2))(sqrt(5)-1)/2", (1.0 + s2) * (5f64.sqrt() - 1.0) / 2.0)
        }
        (ModelName::NeDirected, _) => match model.endpoint {
            Endpoint::Loop => Ok(None),
            Endpoint::Tail => v("2", 2.0),
        },
    }
}

/// Exact height sums from the transfer over `(height, maximum so far)`.
/// Only meaningful at `a = 1` and for modest `n_max`.
pub fn baseline_height_table(model: &DirectedModel, n_max: usize) -> Result<HeightTable, BaselineError> {
    check(n_max, EXACT_HEIGHT_LIMIT, "exact height transfer length")?;
    let tags = model.name.tags();
    let moves = model.name.moves();
    let width = n_max + 1;
    // state index: (h * width + m) * tags + tag, with h <= m
    let at = |h: usize, m: usize, t: usize| (h * width + m) * tags + t;
    let mut cur = vec![BigInt::zero(); width * width * tags];
    cur[at(0, 0, 0)] = BigInt::from(1);
    let mut rows = Vec::with_capacity(n_max + 1);
    let row = |n: usize, cur: &[BigInt]| {
        let mut total = BigInt::zero();
        let mut e_sum = BigInt::zero();
        let mut m_sum = BigInt::zero();
        let h_end = if model.endpoint == Endpoint::Loop { 0 } else { n };
        for h in 0..=h_end.min(n_max) {
            for m in h..=n.min(n_max) {
                for t in 0..tags {
                    let x = &cur[at(h, m, t)];
                    if x.is_zero() {
                        continue;
                    }
                    total += x;
                    e_sum += x * h;
                    m_sum += x * m;
                }
            }
        }
        HeightRow {
            n,
            total: Rational::from_integer(total),
            endpoint_sum: Rational::from_integer(e_sum),
            max_sum: Rational::from_integer(m_sum),
        }
    };
    rows.push(row(0, &cur));
    for n in 1..=n_max {
        let mut next = vec![BigInt::zero(); width * width * tags];
        for h in 0..n {
            for m in h..n {
                for &(from, to, dh) in moves {
                    let x = &cur[at(h, m, from)];
                    if x.is_zero() {
                        continue;
                    }
                    let nh = h as i32 + dh;
                    if nh < 0 {
                        continue;
                    }
                    let nh = nh as usize;
                    next[at(nh, m.max(nh), to)] += x;
                }
            }
        }
        cur = next;
        rows.push(row(n, &cur));
    }
    Ok(HeightTable { rows })
}

/// Exact height sums by cumulative counting: `sum_n max = sum_H (Z_n -
/// Z_n(max <= H))`, each capped count from its own transfer.
pub fn baseline_height_table_cumulative(model: &DirectedModel, n_max: usize) -> Result<HeightTable, BaselineError> {
    check(n_max, EXACT_HEIGHT_LIMIT, "exact height transfer length")?;
    let tags = model.name.tags();
    let one = BigInt::from(1);
    let mut totals = Vec::with_capacity(n_max + 1);
    let mut e_sums = Vec::with_capacity(n_max + 1);
    transfer(model, n_max, n_max, &one, |_, layer| {
        let mut t = BigInt::zero();
        let mut e = BigInt::zero();
        let hs = if model.endpoint == Endpoint::Loop { 1 } else { n_max + 1 };
        for h in 0..hs {
            for x in &layer[h * tags..(h + 1) * tags] {
                t += x;
                e += x * h;
            }
        }
        totals.push(t);
        e_sums.push(e);
    });
    let mut max_sums = vec![BigInt::zero(); n_max + 1];
    for cap in 0..n_max {
        transfer(model, n_max, cap, &one, |n, layer| {
            let capped: BigInt = endpoint_total(model, layer);
            max_sums[n] += &totals[n] - capped;
        });
    }
    let rows = (0..=n_max)
        .map(|n| HeightRow {
            n,
            total: Rational::from_integer(totals[n].clone()),
            endpoint_sum: Rational::from_integer(e_sums[n].clone()),
            max_sum: Rational::from_integer(max_sums[n].clone()),
        })
        .collect();
    Ok(HeightTable { rows })
}

/// Mean endpoint and maximum height at one length, at `a = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HeightPoint {
    pub n: usize,
    pub mean_endpoint: f64,
    pub mean_max: f64,
}

/// Scaled floating-point transfer: every layer is divided by the growth
/// constant, so counts up to thousands of steps stay in range. The
/// probability of a maximum above the last cap examined is below
/// `TAIL_CUTOFF` at every length.
const TAIL_CUTOFF: f64 = 1e-18;

fn scaled_transfer<F: FnMut(usize, &[f64])>(model: &DirectedModel, n_max: usize, cap: usize, mut visit: F) {
    let mu = model.name.growth_constant();
    let tags = model.name.tags();
    let moves = model.name.moves();
    let mut cur = vec![0.0; (cap + 1) * tags];
    cur[0] = 1.0;
    visit(0, &cur);
    let mut next = vec![0.0; (cap + 1) * tags];
    for n in 1..=n_max {
        next.iter_mut().for_each(|x| *x = 0.0);
        let h_top = (n - 1).min(cap);
        for h in 0..=h_top {
            for &(from, to, dh) in moves {
                let x = cur[h * tags + from];
                if x == 0.0 {
                    continue;
                }
                let nh = h as i32 + dh;
                if nh < 0 || nh as usize > cap {
                    continue;
                }
                next[nh as usize * tags + to] += x / mu;
            }
        }
        std::mem::swap(&mut cur, &mut next);
        visit(n, &cur);
    }
}

fn scaled_endpoint_total(model: &DirectedModel, layer: &[f64]) -> f64 {
    let tags = model.name.tags();
    match model.endpoint {
        Endpoint::Loop => layer[..tags].iter().sum(),
        Endpoint::Tail => layer.iter().sum(),
    }
}

/// `<e_n>` and `<h_n>` (maximum height) at `a = 1` for every `n <= n_max`
/// with at least one walk. NE-directed walks are in closed form.
pub fn baseline_height_profile(model: &DirectedModel, n_max: usize) -> Result<Vec<HeightPoint>, BaselineError> {
    check(n_max, BASELINE_LIMIT, "baseline transfer length")?;
    if model.name == ModelName::NeDirected {
        let half = match model.endpoint {
            Endpoint::Tail => 0.5,
            Endpoint::Loop => 0.0,
        };
        return Ok((0..=n_max)
            .map(|n| HeightPoint {
                n,
                mean_endpoint: half * n as f64,
                mean_max: half * n as f64,
            })
            .collect());
    }
    let tags = model.name.tags();
    let mut totals = vec![0.0; n_max + 1];
    let mut mean_e = vec![0.0; n_max + 1];
    scaled_transfer(model, n_max, n_max, |n, layer| {
        let t = scaled_endpoint_total(model, layer);
        totals[n] = t;
        if model.endpoint == Endpoint::Tail && t > 0.0 {
            let e: f64 = layer.iter().enumerate().map(|(k, x)| (k / tags) as f64 * x).sum();
            mean_e[n] = e / t;
        }
    });
    // <h_n> = sum_{H >= 0} P(max > H); caps are processed in parallel batches
    // until the tail probability is negligible at every length.
    let mut mean_max = vec![0.0; n_max + 1];
    let batch = rayon::current_num_threads().max(1) * 4;
    let mut cap = 0;
    while cap < n_max {
        let caps: Vec<usize> = (cap..(cap + batch).min(n_max)).collect();
        let tails: Vec<Vec<f64>> = caps
            .par_iter()
            .map(|&c| {
                let mut p = vec![0.0; n_max + 1];
                scaled_transfer(model, n_max, c, |n, layer| {
                    if totals[n] > 0.0 {
                        p[n] = (1.0 - scaled_endpoint_total(model, layer) / totals[n]).max(0.0);
                    }
                });
                p
            })
            .collect();
        for p in &tails {
            for (m, x) in mean_max.iter_mut().zip(p) {
                *m += x;
            }
        }
        cap += caps.len();
        let last = tails.last().map_or(0.0, |p| p.iter().copied().fold(0.0, f64::max));
        if last < TAIL_CUTOFF {
            break;
        }
    }
    Ok((0..=n_max)
        .filter(|&n| totals[n] > 0.0)
        .map(|n| HeightPoint {
            n,
            mean_endpoint: mean_e[n],
            mean_max: mean_max[n],
        })
        .collect())
}

/// `<h_n> ~ A n^gamma + B` for a baseline model, fitted over a window.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticFit {
    pub model: String,
    pub amplitude: f64,
    pub exponent: f64,
    pub constant: f64,
    /// Coefficient of the `n^(-1/2)` correction, when fitted.
    pub correction: Option<f64>,
    pub window: (usize, usize),
    pub rms_residual: f64,
}

/// Fits `<h_n> = A n^(1/2) + B + C n^(-1/2)` over `[n_max / 2, n_max]`.
pub fn fit_height_amplitude(model: &DirectedModel, profile: &[HeightPoint]) -> AsymptoticFit {
    let n_max = profile.last().map_or(0, |p| p.n);
    let lo = n_max / 2;
    let (ns, hs): (Vec<f64>, Vec<f64>) = profile
        .iter()
        .filter(|p| p.n >= lo)
        .map(|p| (p.n as f64, p.mean_max))
        .unzip();
    let f = fit_sqrt_law(&ns, &hs);
    AsymptoticFit {
        model: model.to_string(),
        amplitude: f.coeffs[0],
        exponent: 0.5,
        constant: f.coeffs[1],
        correction: Some(f.coeffs[2]),
        window: (lo, n_max),
        rms_residual: f.rms_residual,
    }
}
