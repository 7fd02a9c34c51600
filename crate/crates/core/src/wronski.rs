//! Inverting the Wronski map: given a positive polynomial `u` of degree
//! `2k − 2`, find the interlacing pair `(p, q)` with `W(p, q) = u`.
//!
//! The pair is unique once normalized to monic `p` with vanishing
//! `z^{k−1}` coefficient and monic `q`; the pencil `p + αq` is the only
//! freedom left by `W`. The solver follows the straight line from the
//! Wronskian of a Chebyshev pair to `u`. The segment stays inside the convex
//! cone of positive polynomials, so every intermediate target has an
//! interlacing preimage and the path never leaves the real interlacing
//! branch.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::pair::InterlacingPair;
use crate::poly::{wronskian, RealPolynomial};
use crate::roots::{complex_roots, verify_interlacing};
use crate::{tol, Error, Result};

/// `p = z^k + a_1 z^{k−2} + … + a_{k−1}`, `q = z^{k−1} + b_1 z^{k−2} + … + b_{k−1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedPair {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl NormalizedPair {
    pub fn k(&self) -> usize {
        self.a.len() + 1
    }

    /// Monic `p` of degree `k` and monic `q` of degree `k − 1`, after
    /// replacing `p` by `p − cq` to clear its `z^{k−1}` coefficient.
    pub fn from_polynomials(p: &RealPolynomial, q: &RealPolynomial) -> Result<Self> {
        let k = p.degree();
        if k < 2 || q.degree() + 1 != k || q.is_zero() {
            return Err(Error::InvalidInput(format!(
                "need deg p = k >= 2 and deg q = k - 1, got {} and {}",
                p.degree(),
                q.degree()
            )));
        }
        let p = p.monic()?;
        let q = q.monic()?;
        let p = &p - &q.scale(p.coeffs()[k - 1]);
        // coefficients of z^{k−2}, …, z^0
        let a = (0..k - 1).rev().map(|i| p.coeffs()[i]).collect();
        let b = (0..k - 1).rev().map(|i| q.coeffs()[i]).collect();
        Ok(NormalizedPair { a, b })
    }

    pub fn to_polynomials(&self) -> (RealPolynomial, RealPolynomial) {
        let k = self.k();
        let mut p = vec![0.0; k + 1];
        let mut q = vec![0.0; k];
        p[k] = 1.0;
        q[k - 1] = 1.0;
        for i in 0..k - 1 {
            p[k - 2 - i] = self.a[i];
            q[k - 2 - i] = self.b[i];
        }
        (RealPolynomial::new(p), RealPolynomial::new(q))
    }

    pub fn to_pair(&self) -> Result<InterlacingPair> {
        let (p, q) = self.to_polynomials();
        InterlacingPair::new(p, q)
    }

    pub fn wronskian(&self) -> RealPolynomial {
        let (p, q) = self.to_polynomials();
        wronskian(&p, &q)
    }

    /// Largest coefficient difference.
    pub fn distance(&self, other: &NormalizedPair) -> f64 {
        self.a
            .iter()
            .chain(&self.b)
            .zip(other.a.iter().chain(&other.b))
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    fn to_vector(&self) -> DVector<f64> {
        DVector::from_iterator(self.a.len() + self.b.len(), self.a.iter().chain(&self.b).copied())
    }

    fn from_vector(v: &DVector<f64>) -> Self {
        let h = v.len() / 2;
        NormalizedPair { a: v.rows(0, h).iter().copied().collect(), b: v.rows(h, h).iter().copied().collect() }
    }
}

/// A monic polynomial of even degree with no real roots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositivePolynomial(RealPolynomial);

impl PositivePolynomial {
    /// Normalizes to monic form and rejects input with a root within the
    /// default tolerance of the real axis.
    pub fn new(poly: RealPolynomial) -> Result<Self> {
        if poly.degree() < 2 || poly.degree() % 2 == 1 {
            return Err(Error::InvalidInput(format!("need even degree >= 2, got {}", poly.degree())));
        }
        if poly.leading() < 0.0 {
            return Err(Error::InvalidInput("leading coefficient must be positive".into()));
        }
        let poly = poly.monic()?;
        let roots = complex_roots(&poly.to_complex())?;
        let scale = roots.roots.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        let tau = tol::tau(scale);
        if let Some(z) = roots.roots.iter().find(|z| z.im.abs() <= tau) {
            return Err(Error::InvalidInput(format!("real root near {}", z.re)));
        }
        Ok(PositivePolynomial(poly))
    }

    pub fn poly(&self) -> &RealPolynomial {
        &self.0
    }
}

/// Membership in the cone of positive polynomials: positive leading
/// coefficient, even degree and no root within `tau` of the real axis.
pub fn is_in_pol(poly: &RealPolynomial, tau: f64) -> bool {
    if poly.degree() < 2 || poly.degree() % 2 == 1 || poly.leading() <= 0.0 {
        return false;
    }
    match complex_roots(&poly.to_complex()) {
        Ok(r) => r.roots.iter().all(|z| z.im.abs() > tau),
        Err(_) => false,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inversion {
    pub pair: NormalizedPair,
    /// `max |W(p, q) − u|` over the coefficients.
    pub residual: f64,
    pub steps: usize,
    pub rejected_steps: usize,
    /// Largest 2-norm condition number of the Jacobian seen along the path.
    pub max_condition: f64,
}

const MAX_HALVINGS: usize = 8;
const NEWTON_ITERATIONS: usize = 12;

/// Jacobian of `(a, b) ↦ W(p, q)` restricted to the free coefficients
/// `z^0 … z^{2k−3}`. `W` is bilinear, so the columns are exact:
/// `∂W/∂a_i = W(z^{k−1−i}, q)` and `∂W/∂b_i = W(p, z^{k−1−i})`, `i ≥ 1`.
fn jacobian(x: &NormalizedPair) -> DMatrix<f64> {
    let k = x.k();
    let n = 2 * k - 2;
    let (p, q) = x.to_polynomials();
    let mut jac = DMatrix::zeros(n, n);
    for i in 0..k - 1 {
        let mut e = vec![0.0; k - 2 - i];
        e.push(1.0);
        let e = RealPolynomial::new(e);
        for (row, c) in wronskian(&e, &q).coeffs().iter().take(n).enumerate() {
            jac[(row, i)] = *c;
        }
        for (row, c) in wronskian(&p, &e).coeffs().iter().take(n).enumerate() {
            jac[(row, k - 1 + i)] = *c;
        }
    }
    jac
}

fn residual(x: &NormalizedPair, target: &[f64]) -> DVector<f64> {
    let w = x.wronskian();
    DVector::from_iterator(target.len(), (0..target.len()).map(|i| w.coeffs().get(i).copied().unwrap_or(0.0) - target[i]))
}

fn condition(jac: &DMatrix<f64>) -> f64 {
    let sv = jac.clone().singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    max / min
}

/// Newton's method on `W(x) = target`. Returns `None` unless the residual
/// drops to `tol` with shrinking corrections.
fn newton(start: &NormalizedPair, target: &[f64], tol: f64) -> Option<NormalizedPair> {
    let mut x = start.to_vector();
    let mut last_step = f64::INFINITY;
    for _ in 0..NEWTON_ITERATIONS {
        let cur = NormalizedPair::from_vector(&x);
        let f = residual(&cur, target);
        if f.amax() <= tol {
            return Some(cur);
        }
        let dx = jacobian(&cur).lu().solve(&f)?;
        let step = dx.amax();
        if !step.is_finite() || step > 0.5 * last_step.max(tol) && last_step.is_finite() && step > tol {
            return None;
        }
        last_step = step;
        x -= dx;
    }
    let cur = NormalizedPair::from_vector(&x);
    (residual(&cur, target).amax() <= tol).then_some(cur)
}

fn chebyshev_seed(k: usize, s: f64) -> NormalizedPair {
    use std::f64::consts::PI;
    let p: Vec<f64> = (1..=k).map(|i| s * ((2 * i - 1) as f64 * PI / (2 * k) as f64).cos()).collect();
    let q: Vec<f64> = (1..k).map(|i| s * (i as f64 * PI / k as f64).cos()).collect();
    let p = RealPolynomial::from_roots(&p);
    let q = RealPolynomial::from_roots(&q);
    NormalizedPair::from_polynomials(&p, &q).expect("Chebyshev pair has the right degrees")
}

fn interlaces(x: &NormalizedPair) -> bool {
    let (p, q) = x.to_polynomials();
    verify_interlacing(&p, &q).interlacing
}

/// Finds the normalized interlacing pair whose Wronskian is the monic
/// positive polynomial `u`.
///
/// Fails with [`Error::PathLost`] when the step size has been halved
/// repeatedly without an acceptable corrector step, and with
/// [`Error::PositivityLost`] if an intermediate target leaves the cone.
pub fn invert_wronskian(u: &PositivePolynomial) -> Result<Inversion> {
    let u = u.poly();
    let n = u.degree();
    let k = n / 2 + 1;
    let s = u.coeffs()[0].abs().powf(1.0 / n as f64).max(1e-3);
    let mut x = chebyshev_seed(k, s);
    let w0 = x.wronskian();
    let start: Vec<f64> = w0.coeffs()[..n].to_vec();
    let end: Vec<f64> = u.coeffs()[..n].to_vec();
    let coeff_scale = end.iter().chain(&start).fold(1.0f64, |m, c| m.max(c.abs()));
    let tol = 1e-12 * coeff_scale;
    let target = |t: f64| -> Vec<f64> { start.iter().zip(&end).map(|(a, b)| (1.0 - t) * a + t * b).collect() };
    let pol_tau = 1e-12 * s.max(1.0);

    let mut t: f64 = 0.0;
    let mut dt: f64 = 0.05;
    let mut steps = 0;
    let mut rejected = 0;
    let mut max_condition = condition(&jacobian(&x));
    while t < 1.0 {
        let mut halvings = 0;
        loop {
            let t_next = (t + dt).min(1.0);
            let goal = target(t_next);
            let mut monic = goal.clone();
            monic.push(1.0);
            if !is_in_pol(&RealPolynomial::new(monic), pol_tau) {
                return Err(Error::PositivityLost { t: t_next });
            }
            // Euler predictor: J dx/dt = u − W_0
            let jac = jacobian(&x);
            let rhs = DVector::from_iterator(n, end.iter().zip(&start).map(|(a, b)| a - b));
            let predicted = jac
                .lu()
                .solve(&rhs)
                .map(|v| NormalizedPair::from_vector(&(x.to_vector() + v * (t_next - t))));
            let accepted = predicted
                .and_then(|guess| newton(&guess, &goal, tol))
                .filter(interlaces);
            match accepted {
                Some(next) => {
                    x = next;
                    t = t_next;
                    steps += 1;
                    max_condition = max_condition.max(condition(&jacobian(&x)));
                    if halvings == 0 {
                        dt = (dt * 1.5).min(0.25);
                    }
                    break;
                }
                None => {
                    rejected += 1;
                    halvings += 1;
                    if halvings > MAX_HALVINGS {
                        return Err(Error::PathLost { t });
                    }
                    dt *= 0.5;
                }
            }
        }
    }
    let residual = residual(&x, &end).amax();
    Ok(Inversion { pair: x, residual, steps, rejected_steps: rejected, max_condition })
}
