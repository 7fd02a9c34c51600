use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::diameter;
use crate::pair::InterlacingPair;
use crate::{Error, Result};

/// `|R|²` on the circle with diameter `(A, B)`, written in the coordinate
/// `w = |z − B|²` as a ratio of linear factors:
///
/// `|R|²(w) = ∏ (s_l w + t_l) / ∏ (u_l w + v_l)`
///
/// with `s_l = (2q_l − A − B)/(B − A)`, `t_l = (q_l − B)²` and the same
/// expressions in `p_l` for `u_l`, `v_l`. The identity comes from Stewart's
/// theorem applied to the triangle `A, C, T` with cevian `BC`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalInW {
    pub j: usize,
    /// `(s_l, t_l)`, one per root of `q`.
    pub numerator: Vec<(f64, f64)>,
    /// `(u_l, v_l)`, one per root of `p`.
    pub denominator: Vec<(f64, f64)>,
    /// Right end of the domain `(0, (B − A)²)`.
    pub w_max: f64,
    pub a: f64,
    pub b: f64,
}

fn factor(xi: f64, a: f64, b: f64) -> (f64, f64) {
    ((2.0 * xi - a - b) / (b - a), (xi - b).powi(2))
}

pub fn abs_r_squared_in_w(pair: &InterlacingPair, j: usize) -> Result<RationalInW> {
    let (a, b) = diameter(pair, j)?;
    Ok(RationalInW {
        j,
        numerator: pair.q_roots().iter().map(|&x| factor(x, a, b)).collect(),
        denominator: pair.p_roots().iter().map(|&x| factor(x, a, b)).collect(),
        w_max: (b - a).powi(2),
        a,
        b,
    })
}

impl RationalInW {
    pub fn eval(&self, w: f64) -> f64 {
        let num: f64 = self.numerator.iter().map(|(s, t)| s * w + t).product();
        let den: f64 = self.denominator.iter().map(|(u, v)| u * w + v).product();
        num / den
    }

    /// The same function after the affine change sending `A ↦ −1`, `B ↦ 1`:
    /// factors become `(ξ, (1 − ξ)²)` in the rescaled roots `ξ`, and `w` is
    /// measured in units of the squared radius.
    pub fn normalized(&self) -> RationalInW {
        let radius = 0.5 * (self.b - self.a);
        // s is already scale-free; (ξ − 1)² = t / radius²
        let map = |(s, t): (f64, f64)| (s, t / (radius * radius));
        RationalInW {
            j: self.j,
            numerator: self.numerator.iter().copied().map(map).collect(),
            denominator: self.denominator.iter().copied().map(map).collect(),
            w_max: 4.0,
            a: -1.0,
            b: 1.0,
        }
    }

    /// Point of the upper half-circle whose real part is `x`.
    pub fn point_at(&self, x: f64) -> Complex64 {
        let c = 0.5 * (self.a + self.b);
        let r = 0.5 * (self.b - self.a);
        Complex64::new(x, (r * r - (x - c) * (x - c)).max(0.0).sqrt())
    }

    /// `w` for the point of `C^+` with real part `x`: `w = 2r(B − x)`, which
    /// is `2(1 − x)` in normalized coordinates.
    pub fn w_of_x(&self, x: f64) -> f64 {
        (self.b - self.a) * (self.b - x)
    }
}

/// `Ψ(ξ) = −(1 − ξ)²/ξ`, the root of the linear factor `ξw + (1 − ξ)²`.
pub fn psi_map(xi: f64) -> Result<f64> {
    if xi == 0.0 {
        return Err(Error::DivisionByZero);
    }
    Ok(-(1.0 - xi).powi(2) / xi)
}
