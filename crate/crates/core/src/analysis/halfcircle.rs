use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{diameter, inner_diameter};
use crate::pair::InterlacingPair;
use crate::{tol, Error, Result};

/// Point of the upper half-circle over `(a, b)` with real part `x`.
fn upper_point(a: f64, b: f64, x: f64) -> Complex64 {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    Complex64::new(x, (r * r - (x - c) * (x - c)).max(0.0).sqrt())
}

/// `Φ_j(x) = |R|²` at the point of `C_j^+` with real part `x`.
pub fn phi(pair: &InterlacingPair, j: usize, x: f64) -> Result<f64> {
    let (a, b) = diameter(pair, j)?;
    if !(a < x && x < b) {
        return Err(Error::InvalidInput(format!("x={x} outside ({a}, {b})")));
    }
    Ok(pair.abs_r_squared(upper_point(a, b, x)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub j: usize,
    pub grid: usize,
    /// Smallest second difference `Φ(x_{i−1}) − 2Φ(x_i) + Φ(x_{i+1})`.
    pub min_second_difference: f64,
    /// Where it occurs.
    pub argmin_x: f64,
    /// Every second difference is at least `−τ · max(1, Φ(x_i))`.
    pub convex: bool,
    /// The sampled `Φ` decreases and then increases: a single minimum.
    pub unimodal: bool,
}

/// Second differences of `Φ_j` on `grid` equispaced points of
/// `[A + δ, B − δ]`, `δ = (B − A)/(4 · grid)`.
pub fn convexity_check(pair: &InterlacingPair, j: usize, grid: usize) -> Result<ConvexityReport> {
    if grid < 3 {
        return Err(Error::InvalidInput("convexity grid needs at least 3 points".into()));
    }
    let (a, b) = diameter(pair, j)?;
    let delta = (b - a) / (4.0 * grid as f64);
    let h = (b - a - 2.0 * delta) / (grid - 1) as f64;
    let xs: Vec<f64> = (0..grid).map(|i| a + delta + h * i as f64).collect();
    let values: Vec<f64> = xs.iter().map(|&x| pair.abs_r_squared(upper_point(a, b, x))).collect();
    let tau = pair.tau();
    let mut min = f64::INFINITY;
    let mut argmin_x = xs[1];
    let mut convex = true;
    for i in 1..grid - 1 {
        let d2 = values[i - 1] - 2.0 * values[i] + values[i + 1];
        if d2 < min {
            min = d2;
            argmin_x = xs[i];
        }
        convex &= d2 >= -tau * values[i].max(1.0);
    }
    let unimodal = is_unimodal(&values, tau);
    Ok(ConvexityReport { j, grid, min_second_difference: min, argmin_x, convex, unimodal })
}

/// At most one sign change, from falling to rising, among the first
/// differences that exceed the rounding band `τ · max(1, value)`.
fn is_unimodal(values: &[f64], tau: f64) -> bool {
    let mut rising = false;
    for w in values.windows(2) {
        let d = w[1] - w[0];
        let band = tau * w[0].abs().max(w[1].abs()).max(1.0);
        if d > band {
            rising = true;
        } else if d < -band && rising {
            return false;
        }
    }
    true
}

/// Minimum of `|R|` over `C_j^+` and the point where it is attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinModulus {
    pub j: usize,
    pub m: f64,
    pub point: Complex64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the minimum of `Φ_j`. Relies on `Φ_j` having a
/// single minimum, which holds in every sampled pair, including those where
/// `Φ_j` is not convex.
///
/// Fails with [`Error::FlatMinimum`] when `Φ_j` varies by less than the
/// tolerance over `±0.1 r` around the minimizer, where the location is not
/// determined.
pub fn min_modulus_on_halfcircle(pair: &InterlacingPair, j: usize) -> Result<MinModulus> {
    let (a, b) = diameter(pair, j)?;
    let f = |x: f64| pair.abs_r_squared(upper_point(a, b, x));
    let r = 0.5 * (b - a);
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-13 * r.max(lo.abs()).max(hi.abs()) {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (lo + hi);
    let phi_min = f(x);
    let left = f((x - 0.1 * r).max(a + 1e-3 * r));
    let right = f((x + 0.1 * r).min(b - 1e-3 * r));
    let flat = tol::tau(1.0) * phi_min.max(f64::MIN_POSITIVE);
    if left - phi_min <= flat && right - phi_min <= flat {
        return Err(Error::FlatMinimum { x });
    }
    Ok(MinModulus { j, m: phi_min.sqrt(), point: upper_point(a, b, x) })
}

/// Poles after the affine change taking `D_j` to the unit disk.
fn normalized_poles(pair: &InterlacingPair, a: f64, b: f64) -> Vec<f64> {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    pair.p_roots().iter().map(|p| (p - c) / r).collect()
}

/// `Re R̃` at the point `x + i√(1 − x²)` of the upper unit half-circle, where
/// `R̃(ζ) = r · R(c + rζ)` is `R` after the affine change taking `D_j` to the
/// unit disk.
pub fn re_r_normalized(pair: &InterlacingPair, j: usize, x: f64) -> Result<f64> {
    let (a, b) = inner_diameter(pair, j)?;
    let poles = normalized_poles(pair, a, b);
    Ok(re_sum(&poles, pair.residues(), x))
}

fn re_sum(poles: &[f64], residues: &[f64], x: f64) -> f64 {
    let zeta = Complex64::new(x, (1.0 - x * x).max(0.0).sqrt());
    poles.iter().zip(residues).map(|(&p, &a)| (a / (zeta - p)).re).sum()
}

/// `d/dx Re R̃` along the upper unit half-circle, summed term by term from
/// `d/dx Re 1/(ζ − p) = (1 − p²)/(1 + p² − 2px)²`. The two poles at `±1`
/// contribute nothing.
pub fn re_r_normalized_derivative(pair: &InterlacingPair, j: usize, x: f64) -> Result<f64> {
    let (a, b) = inner_diameter(pair, j)?;
    let poles = normalized_poles(pair, a, b);
    Ok(poles
        .iter()
        .zip(pair.residues())
        .enumerate()
        .filter(|(i, _)| *i + 1 != j && *i != j)
        .map(|(_, (&p, &al))| al * (1.0 - p * p) / (1.0 + p * p - 2.0 * p * x).powi(2))
        .sum())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub j: usize,
    pub k: usize,
    pub samples: usize,
    /// Largest first difference `Re R̃(x_{i+1}) − Re R̃(x_i)`.
    pub max_difference: f64,
    /// `max − min` of the sampled values.
    pub spread: f64,
    /// Every first difference is negative.
    pub strictly_decreasing: bool,
    /// `spread ≤ 1e-10`; expected exactly when `k = 2`.
    pub constant: bool,
}

/// Samples `Re R̃` at `samples` midpoints of `(−1, 1)` on the upper unit
/// half-circle.
pub fn re_r_monotonicity(
    pair: &InterlacingPair,
    j: usize,
    samples: usize,
) -> Result<MonotonicityReport> {
    if samples < 2 {
        return Err(Error::InvalidInput("need at least 2 samples".into()));
    }
    let (a, b) = inner_diameter(pair, j)?;
    let poles = normalized_poles(pair, a, b);
    let values: Vec<f64> = (0..samples)
        .map(|i| -1.0 + 2.0 * (i as f64 + 0.5) / samples as f64)
        .map(|x| re_sum(&poles, pair.residues(), x))
        .collect();
    let max_difference = values.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(MonotonicityReport {
        j,
        k: pair.k(),
        samples,
        max_difference,
        spread: hi - lo,
        strictly_decreasing: max_difference < 0.0,
        constant: hi - lo <= 1e-10,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> InterlacingPair {
        InterlacingPair::from_roots(&[-1.0, 1.0], &[0.0]).unwrap()
    }

    fn quartic() -> InterlacingPair {
        InterlacingPair::from_roots(&[-4.0, -3.0, 0.0, 2.0], &[-3.5, -1.0, 1.0]).unwrap()
    }

    #[test]
    fn unit_phi_closed_form() {
        let pair = unit();
        for x in [-0.9, -0.5, 0.0, 0.3, 0.99] {
            let expect = 1.0 / (4.0 * (1.0 - x * x));
            assert!((phi(&pair, 1, x).unwrap() - expect).abs() < 1e-12);
        }
        assert!(phi(&pair, 1, 1.0).is_err());
    }

    #[test]
    fn unit_convexity_matches_closed_form() {
        let pair = unit();
        let rep = convexity_check(&pair, 1, 256).unwrap();
        assert!(rep.convex);
        assert!(rep.min_second_difference > 0.0);
    }

    #[test]
    fn quartic_inner_disks_are_convex() {
        let pair = quartic();
        for j in 1..4 {
            let rep = convexity_check(&pair, j, 256).unwrap();
            assert!(rep.convex, "{rep:?}");
        }
    }

    #[test]
    fn convexity_fails_on_some_pairs_but_minimum_stays_unique() {
        let pair = InterlacingPair::from_roots(
            &[-3.956977062732358, -2.1599474981617526, 2.183051903725192, 2.798119796088036],
            &[-3.0063204821895444, -1.7488892688410327, 2.4756020026926344],
        )
        .unwrap();
        let rep = convexity_check(&pair, 2, 256).unwrap();
        assert!(!rep.convex && rep.unimodal, "{rep:?}");
        assert!((rep.argmin_x + 1.75).abs() < 0.15);
        // exact second derivative at x = −1.75 is about −9.0e-3
        let h = 1e-3;
        let d2 = (phi(&pair, 2, -1.75 - h).unwrap() - 2.0 * phi(&pair, 2, -1.75).unwrap()
            + phi(&pair, 2, -1.75 + h).unwrap())
            / (h * h);
        assert!((d2 + 9.008e-3).abs() < 1e-5, "{d2}");
    }

    #[test]
    fn unimodality_detection() {
        assert!(is_unimodal(&[3.0, 2.0, 1.0, 2.0, 5.0], 1e-9));
        assert!(is_unimodal(&[1.0, 1.0, 1.0], 1e-9));
        assert!(!is_unimodal(&[3.0, 1.0, 2.0, 1.0, 3.0], 1e-9));
    }

    #[test]
    fn unit_minimum() {
        let mm = min_modulus_on_halfcircle(&unit(), 1).unwrap();
        assert!((mm.m - 0.5).abs() < 1e-8);
        assert!((mm.point - Complex64::i()).norm() < 1e-6);
    }

    #[test]
    fn minimum_beats_dense_sampling() {
        let pair = quartic();
        for j in 1..4 {
            let mm = min_modulus_on_halfcircle(&pair, j).unwrap();
            let (a, b) = diameter(&pair, j).unwrap();
            for i in 1..1000 {
                let x = a + (b - a) * i as f64 / 1000.0;
                assert!(phi(&pair, j, x).unwrap().sqrt() >= mm.m - 1e-12);
            }
        }
    }

    #[test]
    fn unit_re_r_is_constant_zero() {
        let rep = re_r_monotonicity(&unit(), 1, 256).unwrap();
        assert!(rep.constant && rep.spread < 1e-14, "{rep:?}");
        assert!(re_r_normalized(&unit(), 1, 0.3).unwrap().abs() < 1e-15);
        assert!(re_r_monotonicity(&unit(), 0, 16).is_err());
    }

    #[test]
    fn degree_two_constant_is_residue_difference() {
        let pair = InterlacingPair::from_roots(&[-1.0, 3.0], &[0.0]).unwrap();
        let (a1, a2) = (pair.residues()[0], pair.residues()[1]);
        // normalized: Re R̃ = (α_1 − α_2)/2
        let v = re_r_normalized(&pair, 1, -0.4).unwrap();
        assert!((v - (a1 - a2) / 2.0).abs() < 1e-14);
        // original coordinates: Re R = (α_1 − α_2)/(2r)
        let z = Complex64::new(1.0, 0.0) + Complex64::from_polar(2.0, 1.1);
        assert!((pair.r_at(z).re - (a1 - a2) / 4.0).abs() < 1e-14);
    }

    #[test]
    fn quartic_re_r_decreasing() {
        let pair = quartic();
        for j in 1..4 {
            let rep = re_r_monotonicity(&pair, j, 256).unwrap();
            assert!(rep.strictly_decreasing && !rep.constant, "{rep:?}");
        }
    }

    #[test]
    fn analytic_derivative_matches_finite_differences() {
        let pair = quartic();
        for j in 1..4 {
            for x in [-0.8, -0.2, 0.4, 0.7] {
                let h = 1e-6;
                let fd = (re_r_normalized(&pair, j, x + h).unwrap()
                    - re_r_normalized(&pair, j, x - h).unwrap())
                    / (2.0 * h);
                let d = re_r_normalized_derivative(&pair, j, x).unwrap();
                assert!((fd - d).abs() < 1e-6 * d.abs().max(1.0), "j={j} x={x}: {fd} vs {d}");
                assert!(d < 0.0);
            }
        }
    }
}
