//! Exhaustive depth-first enumeration of prudent walks above the surface.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::walk::{crosses_narrow_bottom, BoundingBox, Sides, Step, Walk};
use crate::error::LimitError;

pub const DEFAULT_DFS_LIMIT: usize = 16;

/// Geometry of a walk's endpoint relative to its box, plus its length and
/// number of surface edges. Everything the tables need is derived from it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CensusKey {
    pub n: u16,
    pub surface_edges: u16,
    /// `x_max - x`
    pub to_east: u16,
    /// `x - x_min`
    pub to_west: u16,
    /// endpoint height `y`
    pub height: u16,
    /// `y_max`
    pub top: u16,
}

impl CensusKey {
    pub fn on_east(&self) -> bool {
        self.to_east == 0
    }

    pub fn on_north(&self) -> bool {
        self.height == self.top
    }
}

/// Number of admissible walks per [`CensusKey`], for every length up to
/// `n_max`. Loops are the entries with `height == 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub sides: Option<Sides>,
    pub n_max: usize,
    pub counts: BTreeMap<CensusKey, u64>,
}

impl Census {
    fn merge(&mut self, other: Census) {
        for (k, c) in other.counts {
            *self.counts.entry(k).or_insert(0) += c;
        }
    }
}

struct Walker {
    sides: Sides,
    n_max: usize,
    stride: usize,
    grid: Vec<bool>,
    x: i32,
    y: i32,
    bb: BoundingBox,
    len: usize,
    surface: usize,
}

impl Walker {
    fn new(sides: Sides, n_max: usize) -> Walker {
        let stride = 2 * n_max + 3;
        let mut w = Walker {
            sides,
            n_max,
            stride,
            grid: vec![false; stride * (n_max + 2)],
            x: 0,
            y: 0,
            bb: BoundingBox::default(),
            len: 0,
            surface: 0,
        };
        let origin = w.cell(0, 0);
        w.grid[origin] = true;
        w
    }

    fn cell(&self, x: i32, y: i32) -> usize {
        y as usize * self.stride + (x + self.n_max as i32 + 1) as usize
    }

    fn occupied(&self, x: i32, y: i32) -> bool {
        self.grid[self.cell(x, y)]
    }

    fn prudent(&self, s: Step) -> bool {
        let (x, y) = (self.x, self.y);
        match s {
            Step::E => (x + 1..=self.bb.x_max).all(|t| !self.occupied(t, y)),
            Step::W => (self.bb.x_min..x).all(|t| !self.occupied(t, y)),
            Step::N => (y + 1..=self.bb.y_max).all(|t| !self.occupied(x, t)),
            Step::S => y > 0 && (0..y).all(|t| !self.occupied(x, t)),
        }
    }

    /// Applies `s` if the result is admissible; returns the state to restore.
    fn try_step(&mut self, s: Step) -> Option<(BoundingBox, usize)> {
        if !self.prudent(s) {
            return None;
        }
        if self.sides == Sides::Three && crosses_narrow_bottom(&self.bb, self.x, self.y, s) {
            return None;
        }
        let (dx, dy) = s.delta();
        let (nx, ny) = (self.x + dx, self.y + dy);
        let mut bb = self.bb;
        bb.include(nx, ny);
        if !bb.endpoint_ok(self.sides, nx, ny) {
            return None;
        }
        let saved = (self.bb, self.surface);
        if self.y == 0 && ny == 0 {
            self.surface += 1;
        }
        self.x = nx;
        self.y = ny;
        self.bb = bb;
        self.len += 1;
        let c = self.cell(nx, ny);
        self.grid[c] = true;
        Some(saved)
    }

    fn undo(&mut self, s: Step, saved: (BoundingBox, usize)) {
        let c = self.cell(self.x, self.y);
        self.grid[c] = false;
        let (dx, dy) = s.delta();
        self.x -= dx;
        self.y -= dy;
        self.bb = saved.0;
        self.surface = saved.1;
        self.len -= 1;
    }

    fn key(&self) -> CensusKey {
        CensusKey {
            n: self.len as u16,
            surface_edges: self.surface as u16,
            to_east: (self.bb.x_max - self.x) as u16,
            to_west: (self.x - self.bb.x_min) as u16,
            height: self.y as u16,
            top: self.bb.y_max as u16,
        }
    }

    fn record(&self, out: &mut BTreeMap<CensusKey, u64>) {
        *out.entry(self.key()).or_insert(0) += 1;
    }

    fn dfs(&mut self, out: &mut BTreeMap<CensusKey, u64>) {
        self.record(out);
        if self.len == self.n_max {
            return;
        }
        for s in Step::ALL {
            if let Some(saved) = self.try_step(s) {
                self.dfs(out);
                self.undo(s, saved);
            }
        }
    }

    fn replay(sides: Sides, n_max: usize, steps: &[Step]) -> Walker {
        let mut w = Walker::new(sides, n_max);
        for &s in steps {
            w.try_step(s).expect("replayed prefix must be admissible");
        }
        w
    }
}

/// Admissible prefixes of exactly `depth` steps, recording every shorter
/// walk into `out` on the way.
fn prefixes(sides: Sides, n_max: usize, depth: usize, out: &mut BTreeMap<CensusKey, u64>) -> Vec<Vec<Step>> {
    let mut frontier = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in &frontier {
            let mut w = Walker::replay(sides, n_max, p);
            w.record(out);
            for s in Step::ALL {
                if let Some(saved) = w.try_step(s) {
                    let mut q = p.clone();
                    q.push(s);
                    next.push(q);
                    w.undo(s, saved);
                }
            }
        }
        frontier = next;
    }
    frontier
}

/// Enumerates every admissible walk of length at most `n_max`, splitting the
/// search over the first few steps across threads.
pub fn census(sides: Sides, n_max: usize, limit: usize) -> Result<Census, LimitError> {
    if n_max > limit {
        return Err(LimitError {
            what: "exhaustive enumeration length",
            requested: n_max,
            limit,
        });
    }
    let mut counts = BTreeMap::new();
    let depth = n_max.min(4);
    let roots = prefixes(sides, n_max, depth, &mut counts);
    let parts: Vec<BTreeMap<CensusKey, u64>> = roots
        .par_iter()
        .map(|p| {
            let mut w = Walker::replay(sides, n_max, p);
            let mut out = BTreeMap::new();
            w.dfs(&mut out);
            out
        })
        .collect();
    let mut census = Census {
        sides: Some(sides),
        n_max,
        counts,
    };
    for p in parts {
        census.merge(Census {
            sides: Some(sides),
            n_max,
            counts: p,
        });
    }
    Ok(census)
}

/// All admissible walks of exactly `n` steps, as explicit step lists.
/// Intended for small `n` (tests and debugging).
pub fn list_walks(sides: Sides, n: usize) -> Vec<Walk> {
    let mut scratch = BTreeMap::new();
    prefixes(sides, n, n, &mut scratch)
        .into_iter()
        .map(Walk::new)
        .collect()
}
