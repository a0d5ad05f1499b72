use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::enumerate::Census;
use super::walk::{Endpoint, WalkFamily};
use crate::poly::{rat, Monomial, Poly, Rational, Var};
use crate::series::Series;

/// Side of the box an endpoint is attributed to. Walks ending at the
/// north-east corner appear under both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    Right,
    Top,
}

/// Refinement of a weighted count. For `Right`, `i` is the distance from the
/// endpoint down from the top of the box; for `Top`, the distance to the
/// right side. `j` is the endpoint height and `k` the distance to the west
/// side (three-sided tables only).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cell {
    pub n: usize,
    pub side: Side,
    pub i: u32,
    pub j: u32,
    pub k: Option<u32>,
}

/// Exact weighted counts `Z_n(a)` per length, optionally refined by the
/// catalytic distances.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightTable {
    pub totals: Vec<Poly>,
    pub refined: BTreeMap<Cell, Poly>,
}

impl WeightTable {
    pub fn n_max(&self) -> usize {
        self.totals.len() - 1
    }

    /// Builds the table for `fam` from a census of the same sidedness.
    /// `with_k` keeps the west distance in the refinement.
    pub fn from_census(census: &Census, fam: WalkFamily, with_k: bool) -> WeightTable {
        let mut totals = vec![Poly::zero(); census.n_max + 1];
        let mut refined: BTreeMap<Cell, Poly> = BTreeMap::new();
        for (key, &count) in &census.counts {
            if fam.endpoint == Endpoint::Loop && key.height != 0 {
                continue;
            }
            let weight = Poly::term(
                rat(count as i64),
                Monomial::ONE.with_exp(Var::A, key.surface_edges as u32),
            );
            let n = key.n as usize;
            totals[n] += &weight;
            let k = with_k.then_some(key.to_west as u32);
            if key.on_east() {
                let cell = Cell {
                    n,
                    side: Side::Right,
                    i: (key.top - key.height) as u32,
                    j: key.height as u32,
                    k,
                };
                *refined.entry(cell).or_default() += &weight;
            }
            if key.on_north() {
                let cell = Cell {
                    n,
                    side: Side::Top,
                    i: key.to_east as u32,
                    j: key.height as u32,
                    k,
                };
                *refined.entry(cell).or_default() += &weight;
            }
        }
        WeightTable { totals, refined }
    }

    /// `Z_n(a)` evaluated at a rational fugacity.
    pub fn totals_at(&self, a: &Rational) -> Vec<Rational> {
        self.totals
            .iter()
            .map(|p| p.eval_var(Var::A, a).as_constant().expect("table is univariate in a"))
            .collect()
    }

    /// Generating function of one side: `sum z^n u^i v^j [w^k] a^nu`.
    pub fn side_series(&self, side: Side) -> Series {
        let mut s = Series::zero(self.n_max());
        for (cell, p) in &self.refined {
            if cell.side != side {
                continue;
            }
            let mut m = Monomial::ONE.with_exp(Var::U, cell.i).with_exp(Var::V, cell.j);
            if let Some(k) = cell.k {
                m = m.with_exp(Var::W, k);
            }
            *s.coeff_mut(cell.n) += &p.mul_monomial(&Rational::from_integer(1.into()), &m);
        }
        s
    }

    /// `W(u, v) = R(u, v) + T(u, v) - T(0, v)`: every walk ending on the N or E
    /// side counted once, `u` marking the distance from the NE corner.
    pub fn corner_series(&self) -> Series {
        let r = self.side_series(Side::Right);
        let t = self.side_series(Side::Top);
        let t0 = t.eval_var(Var::U, &Rational::zero());
        r.add(&t).sub(&t0)
    }
}

/// Exact endpoint and maximum height sums for one length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightRow {
    pub n: usize,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub total: Rational,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub endpoint_sum: Rational,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub max_sum: Rational,
}

impl HeightRow {
    pub fn mean_endpoint(&self) -> f64 {
        ratio_f64(&self.endpoint_sum, &self.total)
    }

    pub fn mean_max(&self) -> f64 {
        ratio_f64(&self.max_sum, &self.total)
    }
}

fn ratio_f64(x: &Rational, y: &Rational) -> f64 {
    if y.is_zero() {
        return f64::NAN;
    }
    (x / y).to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HeightTable {
    pub rows: Vec<HeightRow>,
}

impl HeightTable {
    pub fn from_census(census: &Census, fam: WalkFamily, a: &Rational) -> HeightTable {
        let mut rows: Vec<HeightRow> = (0..=census.n_max)
            .map(|n| HeightRow {
                n,
                total: Rational::zero(),
                endpoint_sum: Rational::zero(),
                max_sum: Rational::zero(),
            })
            .collect();
        let mut powers = vec![Rational::from_integer(1.into())];
        for (key, &count) in &census.counts {
            if fam.endpoint == Endpoint::Loop && key.height != 0 {
                continue;
            }
            while powers.len() <= key.surface_edges as usize {
                let next = powers.last().unwrap() * a;
                powers.push(next);
            }
            let w = &powers[key.surface_edges as usize] * rat(count as i64);
            let row = &mut rows[key.n as usize];
            row.endpoint_sum += &w * rat(key.height as i64);
            row.max_sum += &w * rat(key.top as i64);
            row.total += w;
        }
        HeightTable { rows }
    }

    pub fn mean_max(&self) -> Vec<f64> {
        self.rows.iter().map(HeightRow::mean_max).collect()
    }

    pub fn mean_endpoint(&self) -> Vec<f64> {
        self.rows.iter().map(HeightRow::mean_endpoint).collect()
    }
}
