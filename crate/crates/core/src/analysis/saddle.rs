use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::pair::InterlacingPair;
use crate::roots::wronskian_roots;
use crate::{Error, Result};

/// A critical point of `R` together with the zeros its two steepest-descent
/// paths of `|R|` run into. Zeros are numbered `0 … k−2` for `q_1 … q_{k−1}`;
/// `k − 1` stands for the zero of `R` at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Saddle {
    pub point: Complex64,
    /// `|R|` at the critical point.
    pub level: f64,
    pub ends: (usize, usize),
}

fn derivatives(pair: &InterlacingPair, z: Complex64) -> (Complex64, Complex64, Complex64) {
    let mut r = Complex64::new(0.0, 0.0);
    let mut d1 = r;
    let mut d2 = r;
    for (&p, &a) in pair.p_roots().iter().zip(pair.residues()) {
        let u = 1.0 / (z - p);
        r += a * u;
        d1 -= a * u * u;
        d2 += 2.0 * a * u * u * u;
    }
    (r, d1, d2)
}

/// Follows the normalized descent direction `−conj(R'/R)` of `log |R|` until
/// the path reaches a zero of `q` or escapes towards infinity.
fn descend(pair: &InterlacingPair, start: Complex64, h: f64) -> Result<usize> {
    let q = pair.q_roots();
    let far = 1e3 * pair.scale().max(1.0);
    let mut z = start;
    for _ in 0..200_000 {
        if let Some(l) = q.iter().position(|&x| (z - x).norm() < 2.0 * h) {
            return Ok(l);
        }
        if z.norm() > far {
            return Ok(q.len());
        }
        let (r, d1, _) = derivatives(pair, z);
        let g = (d1 / r).conj();
        if g.norm() == 0.0 {
            return Err(Error::Inconclusive(format!("descent stalled at {z}")));
        }
        // larger strides far out, where |R| ~ 1/|z| changes slowly
        let step = h * (1.0 + z.norm() / pair.scale().max(1.0));
        z -= g / g.norm() * step;
    }
    Err(Error::Inconclusive(format!("descent from {start} did not terminate")))
}

/// All critical points of `R` with the zeros their descent paths connect.
pub fn saddles(pair: &InterlacingPair) -> Result<Vec<Saddle>> {
    let mut crit = wronskian_roots(pair)?.roots;
    crit.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let h = 1e-3 * pair.scale().max(1.0);
    crit.into_iter()
        .map(|c| {
            let (r, _, d2) = derivatives(pair, c);
            // log|R| ≈ const + Re(A (z − c)²) with A = R''/(2R): descend along ±√(−conj A)
            let a = d2 / (2.0 * r);
            let dir = (-a.conj()).sqrt();
            let dir = dir / dir.norm();
            let offset = 10.0 * h;
            let e1 = descend(pair, c + dir * offset, h)?;
            let e2 = descend(pair, c - dir * offset, h)?;
            Ok(Saddle { point: c, level: r.norm(), ends: (e1.min(e2), e1.max(e2)) })
        })
        .collect()
}

/// The level at which the sublevel component of `|R|` around `q_j` first
/// meets a critical point: the least `|R(c)|` over saddles whose descent
/// paths reach `q_j`.
pub fn basin_merge_level(pair: &InterlacingPair, j: usize, saddles: &[Saddle]) -> Result<f64> {
    if j == 0 || j >= pair.k() {
        return Err(Error::InvalidInput(format!("disk index {j} out of range 1..={}", pair.k() - 1)));
    }
    let l = j - 1;
    saddles
        .iter()
        .filter(|s| s.ends.0 == l || s.ends.1 == l)
        .map(|s| s.level)
        .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.min(v))))
        .ok_or_else(|| Error::Inconclusive(format!("no saddle borders the basin of q_{j}")))
}
