//! Ground-truth enumeration of adsorbing prudent walks in the upper
//! half-plane, and the polynomial-time two-sided counter.

pub mod dp;
pub mod enumerate;
pub mod tables;
pub mod walk;

pub use dp::{count_walks_dp, count_walks_dp_at, TwoSidedStates, DEFAULT_DP_LIMIT};
pub use enumerate::{census, list_walks, Census, CensusKey, DEFAULT_DFS_LIMIT};
pub use tables::{Cell, HeightRow, HeightTable, Side, WeightTable};
pub use walk::{is_admissible, BoundingBox, Endpoint, ParseWalkError, Sides, Step, Walk, WalkFamily};

use crate::error::LimitError;
use crate::poly::Rational;

/// Exhaustive weighted table for `fam`, refined by `(i, j)` and, for
/// three-sided walks, by the west distance `k`.
pub fn enumerate_walks(fam: WalkFamily, n_max: usize) -> Result<WeightTable, LimitError> {
    enumerate_walks_with_limit(fam, n_max, DEFAULT_DFS_LIMIT)
}

pub fn enumerate_walks_with_limit(fam: WalkFamily, n_max: usize, limit: usize) -> Result<WeightTable, LimitError> {
    let c = census(fam.sides, n_max, limit)?;
    Ok(WeightTable::from_census(&c, fam, fam.sides == Sides::Three))
}

/// Exact endpoint and maximum height sums at fugacity `a`. Two-sided walks
/// use the transfer counter; other families are enumerated.
pub fn height_statistics(fam: WalkFamily, n_max: usize, a: &Rational) -> Result<HeightTable, LimitError> {
    match fam.sides {
        Sides::Two => {
            if n_max > DEFAULT_DP_LIMIT {
                return Err(LimitError {
                    what: "transfer counting length",
                    requested: n_max,
                    limit: DEFAULT_DP_LIMIT,
                });
            }
            Ok(TwoSidedStates::compute(n_max, a).height_table(fam.endpoint))
        }
        _ => {
            let c = census(fam.sides, n_max, DEFAULT_DFS_LIMIT)?;
            Ok(HeightTable::from_census(&c, fam, a))
        }
    }
}
