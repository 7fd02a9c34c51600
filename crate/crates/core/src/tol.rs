//! Tolerance conventions.
//!
//! Every tolerance is relative to the root scale of the pair,
//! `scale = max |p_j|`, so results are covariant under affine changes of `z`.

/// Relative factor used for the default tolerance.
pub const DEFAULT_RELATIVE: f64 = 1e-9;

/// Default tolerance `1e-9 · max(1, scale)`.
pub fn tau(scale: f64) -> f64 {
    tau_with(DEFAULT_RELATIVE, scale)
}

pub fn tau_with(relative: f64, scale: f64) -> f64 {
    relative * scale.abs().max(1.0)
}
