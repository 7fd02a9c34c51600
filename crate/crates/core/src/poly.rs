//! Dense univariate polynomials with `f64` and `Complex64` coefficients.
//!
//! Coefficients are stored in ascending degree order and trailing zeros are
//! trimmed on construction, so `degree()` is always the index of the last
//! nonzero coefficient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "RealRepr", into = "RealRepr")]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RealRepr {
    coeffs: Vec<f64>,
}

impl From<RealRepr> for RealPolynomial {
    fn from(r: RealRepr) -> Self {
        RealPolynomial::new(r.coeffs)
    }
}

impl From<RealPolynomial> for RealRepr {
    fn from(p: RealPolynomial) -> Self {
        RealRepr { coeffs: p.coeffs }
    }
}

fn trim<T: Copy>(coeffs: &mut Vec<T>, is_zero: impl Fn(T) -> bool) {
    while coeffs.len() > 1 && is_zero(*coeffs.last().unwrap()) {
        coeffs.pop();
    }
}

impl RealPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        trim(&mut coeffs, |c| c == 0.0);
        RealPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RealPolynomial { coeffs: vec![0.0] }
    }

    pub fn constant(c: f64) -> Self {
        RealPolynomial::new(vec![c])
    }

    /// The monic polynomial `∏ (z − r)`.
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut coeffs = vec![1.0];
        for &r in roots {
            let mut next = vec![0.0; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= r * c;
            }
            coeffs = next;
        }
        RealPolynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    pub fn leading(&self) -> f64 {
        *self.coeffs.last().unwrap()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1.0
    }

    pub fn monic(&self) -> Result<Self> {
        let lead = self.leading();
        if lead == 0.0 {
            return Err(Error::InvalidInput("zero polynomial has no monic form".into()));
        }
        Ok(self.scale(1.0 / lead))
    }

    pub fn scale(&self, s: f64) -> Self {
        RealPolynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, x: f64) -> (f64, f64) {
        let mut v = 0.0;
        let mut d = 0.0;
        for &c in self.coeffs.iter().rev() {
            d = d * x + v;
            v = v * x + c;
        }
        (v, d)
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return RealPolynomial::zero();
        }
        RealPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| i as f64 * c)
                .collect(),
        )
    }

    /// Sum of absolute coefficients; bounds `|self(z)|` on the unit disk.
    pub fn coefficient_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn to_complex(&self) -> ComplexPolynomial {
        ComplexPolynomial::new(self.coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// `self + λ·other` with a complex scalar.
    pub fn add_scaled_complex(&self, lambda: Complex64, other: &RealPolynomial) -> ComplexPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0.0);
                let b = other.coeffs.get(i).copied().unwrap_or(0.0);
                Complex64::new(a, 0.0) + lambda * b
            })
            .collect();
        ComplexPolynomial::new(coeffs)
    }

    /// Componentwise comparison with a tolerance relative to the larger
    /// coefficient norm.
    pub fn approx_eq(&self, other: &RealPolynomial, rel: f64) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        let scale = self.coefficient_norm().max(other.coefficient_norm()).max(1.0);
        (0..n).all(|i| {
            let a = self.coeffs.get(i).copied().unwrap_or(0.0);
            let b = other.coeffs.get(i).copied().unwrap_or(0.0);
            (a - b).abs() <= rel * scale
        })
    }
}

impl fmt::Display for RealPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 && !(self.is_zero() && i == 0) {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0.0 { '-' } else { '+' })?;
            } else if c < 0.0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 if a == 1.0 => write!(f, "z")?,
                1 => write!(f, "{a}z")?,
                _ if a == 1.0 => write!(f, "z^{i}")?,
                _ => write!(f, "{a}z^{i}")?,
            }
        }
        Ok(())
    }
}

fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl Add for &RealPolynomial {
    type Output = RealPolynomial;
    fn add(self, rhs: &RealPolynomial) -> RealPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RealPolynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&0.0) + rhs.coeffs.get(i).unwrap_or(&0.0))
                .collect(),
        )
    }
}

impl Sub for &RealPolynomial {
    type Output = RealPolynomial;
    fn sub(self, rhs: &RealPolynomial) -> RealPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &RealPolynomial {
    type Output = RealPolynomial;
    fn neg(self) -> RealPolynomial {
        self.scale(-1.0)
    }
}

impl Mul for &RealPolynomial {
    type Output = RealPolynomial;
    fn mul(self, rhs: &RealPolynomial) -> RealPolynomial {
        RealPolynomial::new(convolve(&self.coeffs, &rhs.coeffs))
    }
}

/// `W(p, q) = p'q − q'p`.
pub fn wronskian(p: &RealPolynomial, q: &RealPolynomial) -> RealPolynomial {
    &(&p.derivative() * q) - &(&q.derivative() * p)
}

/// A real 2×2 matrix `(a b; c d)` acting on pairs by `(p, q) ↦ (ap + bq, cp + dq)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobiusMatrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl MobiusMatrix {
    pub const IDENTITY: MobiusMatrix = MobiusMatrix { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };
    pub const SWAP: MobiusMatrix = MobiusMatrix { a: 0.0, b: 1.0, c: 1.0, d: 0.0 };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        MobiusMatrix { a, b, c, d }
    }

    /// The pencil shift `(p, q) ↦ (p + αq, q)`.
    pub fn pencil(alpha: f64) -> Self {
        MobiusMatrix::new(1.0, alpha, 0.0, 1.0)
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }
}

/// Applies `(a b; c d)` to `(p, q)`; the Wronskian of the result is
/// `(ad − bc)·W(p, q)`.
pub fn mobius_pencil(
    p: &RealPolynomial,
    q: &RealPolynomial,
    m: MobiusMatrix,
) -> Result<(RealPolynomial, RealPolynomial)> {
    let det = m.det();
    let entry = m.a.abs().max(m.b.abs()).max(m.c.abs()).max(m.d.abs());
    if det == 0.0 || det.abs() < 1e-12 * entry * entry {
        return Err(Error::DegenerateMatrix { det });
    }
    let first = &p.scale(m.a) + &q.scale(m.b);
    let second = &p.scale(m.c) + &q.scale(m.d);
    Ok((first, second))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "ComplexRepr", into = "ComplexRepr")]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    coeffs: Vec<[f64; 2]>,
}

impl From<ComplexRepr> for ComplexPolynomial {
    fn from(r: ComplexRepr) -> Self {
        ComplexPolynomial::new(r.coeffs.iter().map(|c| Complex64::new(c[0], c[1])).collect())
    }
}

impl From<ComplexPolynomial> for ComplexRepr {
    fn from(p: ComplexPolynomial) -> Self {
        ComplexRepr { coeffs: p.coeffs.iter().map(|c| [c.re, c.im]).collect() }
    }
}

impl ComplexPolynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        trim(&mut coeffs, |c| c.re == 0.0 && c.im == 0.0);
        ComplexPolynomial { coeffs }
    }

    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= r * c;
            }
            coeffs = next;
        }
        ComplexPolynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().unwrap()
    }

    /// True when every coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            d = d * z + v;
            v = v * z + c;
        }
        (v, d)
    }

    /// `Σ |c_i| |z|^i`, the magnitude scale of a Horner evaluation at `z`.
    pub fn abs_eval(&self, modulus: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * modulus + c.norm())
    }

    pub fn coefficient_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }
}
