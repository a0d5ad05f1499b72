//! Polynomial-time counter for two-sided walks.
//!
//! Each walk is its predecessor at the last inflating step, followed by the
//! inflating step and a run of non-inflating steps. States are
//! `(side, i, j)` per length; `i` is the catalytic distance (to the top for
//! right-side walks, to the right side for top-side walks) and `j` the height.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::tables::{Cell, HeightRow, HeightTable, Side, WeightTable};
use super::walk::Endpoint;
use crate::error::LimitError;
use crate::poly::{rat, Poly, Rational, Var};
use crate::weight::Weight;

pub const DEFAULT_DP_LIMIT: usize = 200;

fn idx(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

fn tri(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// Weighted counts of right-side and top-side two-sided walks, per length
/// and `(i, j)`.
#[derive(Clone, Debug)]
pub struct TwoSidedStates<W> {
    pub n_max: usize,
    right: Vec<Vec<W>>,
    top: Vec<Vec<W>>,
}

impl<W: Weight> TwoSidedStates<W> {
    pub fn compute(n_max: usize, a: &W) -> TwoSidedStates<W> {
        let mut right: Vec<Vec<W>> = (0..=n_max).map(|n| vec![W::zero(); tri(n)]).collect();
        let mut top: Vec<Vec<W>> = (0..=n_max).map(|n| vec![W::zero(); tri(n)]).collect();
        right[0][idx(0, 0)] = W::one();
        top[0][idx(0, 0)] = W::one();
        // Top-side walks whose box never inflated: W^k along the surface.
        let mut ak = W::one();
        for k in 1..=n_max {
            ak = ak.times(a);
            top[k][idx(k, 0)].add_assign(&ak);
        }
        for n in 0..n_max {
            for d in 0..=n {
                for j in 0..=d {
                    let i = d - j;
                    let w = right[n][idx(i, j)].clone();
                    if !w.is_zero() {
                        let e = if j == 0 { w.times(a) } else { w };
                        // E step, then S steps down towards the surface.
                        for k in 0..=j {
                            let m = n + 1 + k;
                            if m > n_max {
                                break;
                            }
                            right[m][idx(i + k, j - k)].add_assign(&e);
                        }
                        // E step, then N steps up towards the top.
                        for l in 1..=i {
                            let m = n + 1 + l;
                            if m > n_max {
                                break;
                            }
                            right[m][idx(i - l, j + l)].add_assign(&e);
                        }
                        let m = n + 1 + i;
                        if m <= n_max {
                            top[m][idx(0, j + i)].add_assign(&e);
                        }
                    }
                    let w = top[n][idx(i, j)].clone();
                    if !w.is_zero() {
                        // N step, then E steps (at most to the right side).
                        for k in 0..=i {
                            let m = n + 1 + k;
                            if m > n_max {
                                break;
                            }
                            top[m][idx(i - k, j + 1)].add_assign(&w);
                        }
                        // N step, then any number of W steps.
                        for l in 1.. {
                            let m = n + 1 + l;
                            if m > n_max {
                                break;
                            }
                            top[m][idx(i + l, j + 1)].add_assign(&w);
                        }
                        let m = n + 1 + i;
                        if m <= n_max {
                            right[m][idx(0, j + 1)].add_assign(&w);
                        }
                    }
                }
            }
        }
        TwoSidedStates { n_max, right, top }
    }

    pub fn get(&self, side: Side, n: usize, i: usize, j: usize) -> &W {
        match side {
            Side::Right => &self.right[n][idx(i, j)],
            Side::Top => &self.top[n][idx(i, j)],
        }
    }

    /// Visits every walk class once (north-east corner walks only under
    /// `Right`): `(n, side, i, j, weight)`.
    pub fn for_each_walk<F: FnMut(usize, Side, usize, usize, &W)>(&self, endpoint: Endpoint, mut f: F) {
        for n in 0..=self.n_max {
            for d in 0..=n {
                for j in 0..=d {
                    if endpoint == Endpoint::Loop && j != 0 {
                        continue;
                    }
                    let i = d - j;
                    let r = &self.right[n][idx(i, j)];
                    if !r.is_zero() {
                        f(n, Side::Right, i, j, r);
                    }
                    if i > 0 {
                        let t = &self.top[n][idx(i, j)];
                        if !t.is_zero() {
                            f(n, Side::Top, i, j, t);
                        }
                    }
                }
            }
        }
    }

    pub fn totals(&self, endpoint: Endpoint) -> Vec<W> {
        let mut out = vec![W::zero(); self.n_max + 1];
        self.for_each_walk(endpoint, |n, _, _, _, w| out[n].add_assign(w));
        out
    }
}

impl TwoSidedStates<Poly> {
    pub fn weight_table(&self, endpoint: Endpoint) -> WeightTable {
        let mut refined = BTreeMap::new();
        for n in 0..=self.n_max {
            for d in 0..=n {
                for j in 0..=d {
                    if endpoint == Endpoint::Loop && j != 0 {
                        continue;
                    }
                    let i = d - j;
                    for side in [Side::Right, Side::Top] {
                        let w = self.get(side, n, i, j);
                        if !w.is_zero() {
                            let cell = Cell {
                                n,
                                side,
                                i: i as u32,
                                j: j as u32,
                                k: None,
                            };
                            refined.insert(cell, w.clone());
                        }
                    }
                }
            }
        }
        WeightTable {
            totals: self.totals(endpoint),
            refined,
        }
    }
}

/// Height of the box top, which is the walk's maximum height (the top is
/// always visited): `i + j` for right-side walks, `j` for top-side walks.
pub fn box_top(side: Side, i: usize, j: usize) -> usize {
    match side {
        Side::Right => i + j,
        Side::Top => j,
    }
}

impl TwoSidedStates<f64> {
    /// `(count, endpoint height sum, maximum height sum)` per length.
    pub fn height_sums(&self, endpoint: Endpoint) -> Vec<(f64, f64, f64)> {
        let mut out = vec![(0.0, 0.0, 0.0); self.n_max + 1];
        self.for_each_walk(endpoint, |n, side, i, j, &w| {
            let row = &mut out[n];
            row.0 += w;
            row.1 += w * j as f64;
            row.2 += w * box_top(side, i, j) as f64;
        });
        out
    }
}

impl TwoSidedStates<Rational> {
    pub fn height_table(&self, endpoint: Endpoint) -> HeightTable {
        let mut rows: Vec<HeightRow> = (0..=self.n_max)
            .map(|n| HeightRow {
                n,
                total: Zero::zero(),
                endpoint_sum: Zero::zero(),
                max_sum: Zero::zero(),
            })
            .collect();
        self.for_each_walk(endpoint, |n, side, i, j, w| {
            let top = box_top(side, i, j);
            let row = &mut rows[n];
            row.total += w;
            row.endpoint_sum += w * rat(j as i64);
            row.max_sum += w * rat(top as i64);
        });
        HeightTable { rows }
    }
}

/// Two-sided weighted counts with symbolic `a`.
pub fn count_walks_dp(endpoint: Endpoint, n_max: usize, limit: usize) -> Result<WeightTable, LimitError> {
    check_limit(n_max, limit)?;
    let states = TwoSidedStates::compute(n_max, &Poly::var(Var::A));
    Ok(states.weight_table(endpoint))
}

/// Two-sided totals at a fixed rational fugacity.
pub fn count_walks_dp_at(endpoint: Endpoint, n_max: usize, a: &Rational, limit: usize) -> Result<Vec<Rational>, LimitError> {
    check_limit(n_max, limit)?;
    Ok(TwoSidedStates::compute(n_max, a).totals(endpoint))
}

fn check_limit(n_max: usize, limit: usize) -> Result<(), LimitError> {
    if n_max > limit {
        return Err(LimitError {
            what: "transfer counting length",
            requested: n_max,
            limit,
        });
    }
    Ok(())
}
