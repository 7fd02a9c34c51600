//! `|R|²` and `Re R` on the half-circles `C_j^+` and the topology of the
//! level curves `|R| = r` inside `D_j`.

mod halfcircle;
mod level;
mod saddle;
mod stewart;

pub use halfcircle::{
    convexity_check, min_modulus_on_halfcircle, phi, re_r_monotonicity, re_r_normalized,
    re_r_normalized_derivative, ConvexityReport, MinModulus, MonotonicityReport,
};
pub use level::{level_curve_classify, Classification, LevelCurveReport, TANGENT_BAND};
pub use saddle::{basin_merge_level, saddles, Saddle};
pub use stewart::{abs_r_squared_in_w, psi_map, RationalInW};

use crate::pair::InterlacingPair;
use crate::{Error, Result};

/// Endpoints `(A, B)` of the diameter of disk `j`: `j = 0` is `(p_1, p_k)`,
/// `j ≥ 1` is `(p_j, p_{j+1})`.
pub fn diameter(pair: &InterlacingPair, j: usize) -> Result<(f64, f64)> {
    let p = pair.p_roots();
    match j {
        0 => Ok((p[0], p[p.len() - 1])),
        j if j < p.len() => Ok((p[j - 1], p[j])),
        _ => Err(Error::InvalidInput(format!("disk index {j} out of range 0..{}", p.len() - 1))),
    }
}

/// Like [`diameter`] but only for the inner disks `1 ≤ j ≤ k − 1`.
pub(crate) fn inner_diameter(pair: &InterlacingPair, j: usize) -> Result<(f64, f64)> {
    if j == 0 {
        return Err(Error::InvalidInput("disk index must be in 1..=k-1".into()));
    }
    diameter(pair, j)
}
