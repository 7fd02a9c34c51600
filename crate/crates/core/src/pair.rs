//! The validated pair `(p, q)` behind `R = q/p`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::poly::{wronskian, RealPolynomial};
use crate::roots::{real_roots_sorted, verify_interlacing};
use crate::{tol, Error, Result};

/// Monic `p` of degree `k ≥ 2` and monic `q` of degree `k − 1` whose roots
/// strictly interlace: `p_1 < q_1 < p_2 < … < q_{k−1} < p_k`.
///
/// Roots and residues `α_j = q(p_j)/p'(p_j)` are computed once at
/// construction. All `α_j` are positive and sum to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PairRepr", into = "PairRepr")]
pub struct InterlacingPair {
    p: RealPolynomial,
    q: RealPolynomial,
    p_roots: Vec<f64>,
    q_roots: Vec<f64>,
    residues: Vec<f64>,
}

/// JSON form `{"p": {"coeffs": [...]}, "q": {"coeffs": [...]}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairRepr {
    pub p: RealPolynomial,
    pub q: RealPolynomial,
}

impl TryFrom<PairRepr> for InterlacingPair {
    type Error = Error;
    fn try_from(r: PairRepr) -> Result<Self> {
        InterlacingPair::new(r.p, r.q)
    }
}

impl From<InterlacingPair> for PairRepr {
    fn from(pair: InterlacingPair) -> Self {
        PairRepr { p: pair.p, q: pair.q }
    }
}

impl InterlacingPair {
    /// Normalizes both polynomials to monic form and validates interlacing.
    ///
    /// Leading coefficients of opposite sign are rejected: dividing them out
    /// would flip the sign of `R`.
    pub fn new(p: RealPolynomial, q: RealPolynomial) -> Result<Self> {
        if p.degree() < 2 {
            return Err(Error::InvalidInput(format!("deg p must be at least 2, got {}", p.degree())));
        }
        if q.is_zero() || q.degree() + 1 != p.degree() {
            return Err(Error::InvalidInput(format!(
                "deg q must be deg p - 1 = {}, got {}",
                p.degree() - 1,
                q.degree()
            )));
        }
        if p.leading() * q.leading() < 0.0 {
            return Err(Error::InvalidInput(
                "leading coefficients of p and q have opposite signs".into(),
            ));
        }
        let p = p.monic()?;
        let q = q.monic()?;
        let check = verify_interlacing(&p, &q);
        if !check.interlacing {
            return Err(Error::NotInterlacing(check.diagnostic.unwrap_or_default()));
        }
        let p_roots = real_roots_sorted(&p)?;
        let q_roots = real_roots_sorted(&q)?;
        Self::assemble(p, q, p_roots, q_roots)
    }

    /// Builds the pair `(∏(z − p_j), ∏(z − q_l))` directly from its roots.
    pub fn from_roots(p_roots: &[f64], q_roots: &[f64]) -> Result<Self> {
        if p_roots.len() < 2 || q_roots.len() + 1 != p_roots.len() {
            return Err(Error::InvalidInput(format!(
                "need k >= 2 roots of p and k - 1 roots of q, got {} and {}",
                p_roots.len(),
                q_roots.len()
            )));
        }
        if let Some(msg) = interlacing_violation(p_roots, q_roots) {
            return Err(Error::NotInterlacing(msg));
        }
        let p = RealPolynomial::from_roots(p_roots);
        let q = RealPolynomial::from_roots(q_roots);
        Self::assemble(p, q, p_roots.to_vec(), q_roots.to_vec())
    }

    fn assemble(
        p: RealPolynomial,
        q: RealPolynomial,
        p_roots: Vec<f64>,
        q_roots: Vec<f64>,
    ) -> Result<Self> {
        let scale = p_roots.iter().fold(0.0f64, |m, r| m.max(r.abs()));
        let residues = compute_residues(&p, &q, &p_roots, scale)?;
        if let Some((j, a)) = residues.iter().enumerate().find(|(_, a)| **a <= 0.0) {
            return Err(Error::NotInterlacing(format!("residue alpha_{} = {a} is not positive", j + 1)));
        }
        Ok(InterlacingPair { p, q, p_roots, q_roots, residues })
    }

    pub fn p(&self) -> &RealPolynomial {
        &self.p
    }

    pub fn q(&self) -> &RealPolynomial {
        &self.q
    }

    /// `k = deg p`.
    pub fn k(&self) -> usize {
        self.p_roots.len()
    }

    pub fn p_roots(&self) -> &[f64] {
        &self.p_roots
    }

    pub fn q_roots(&self) -> &[f64] {
        &self.q_roots
    }

    pub fn residues(&self) -> &[f64] {
        &self.residues
    }

    /// `max |p_j|`, the length scale every tolerance is measured against.
    pub fn scale(&self) -> f64 {
        self.p_roots.iter().fold(0.0f64, |m, r| m.max(r.abs()))
    }

    /// Default tolerance `1e-9 · max(1, scale)`.
    pub fn tau(&self) -> f64 {
        tol::tau(self.scale())
    }

    pub fn wronskian(&self) -> RealPolynomial {
        wronskian(&self.p, &self.q)
    }

    /// `R(z) = q(z)/p(z)`.
    pub fn r_at(&self, z: Complex64) -> Complex64 {
        self.q.eval_complex(z) / self.p.eval_complex(z)
    }

    /// `R(z)` through the partial-fraction form `Σ α_j/(z − p_j)`, which stays
    /// accurate close to the poles.
    pub fn r_partial_fractions(&self, z: Complex64) -> Complex64 {
        self.p_roots
            .iter()
            .zip(&self.residues)
            .map(|(&pj, &a)| a / (z - pj))
            .sum()
    }

    /// `|R(z)|²`.
    pub fn abs_r_squared(&self, z: Complex64) -> f64 {
        self.q.eval_complex(z).norm_sqr() / self.p.eval_complex(z).norm_sqr()
    }

    /// The pencil member `(p + αq, q)`, itself an interlacing pair.
    pub fn pencil(&self, alpha: f64) -> Result<InterlacingPair> {
        let shifted = &self.p + &self.q.scale(alpha);
        let roots = crate::roots::pencil_roots(self, alpha)?;
        Self::assemble(shifted, self.q.clone(), roots, self.q_roots.clone())
    }

    /// The affinely transported pair for `z ↦ (z − shift)/factor`, `factor > 0`.
    pub fn affine(&self, shift: f64, factor: f64) -> Result<InterlacingPair> {
        if !(factor > 0.0) {
            return Err(Error::InvalidInput("affine factor must be positive".into()));
        }
        let map = |v: &[f64]| v.iter().map(|x| (x - shift) / factor).collect::<Vec<_>>();
        Self::from_roots(&map(&self.p_roots), &map(&self.q_roots))
    }
}

/// First violated separation of `p_1 < q_1 < … < q_{k−1} < p_k`, if any.
pub(crate) fn interlacing_violation(p_roots: &[f64], q_roots: &[f64]) -> Option<String> {
    for (l, &ql) in q_roots.iter().enumerate() {
        let (lo, hi) = (p_roots[l], p_roots[l + 1]);
        if !(lo < ql && ql < hi) {
            return Some(format!("q_{}={} not in (p_{},p_{})", l + 1, ql, l + 1, l + 2));
        }
    }
    None
}

fn compute_residues(
    p: &RealPolynomial,
    q: &RealPolynomial,
    p_roots: &[f64],
    scale: f64,
) -> Result<Vec<f64>> {
    let gap = tol::tau(scale);
    p_roots
        .iter()
        .enumerate()
        .map(|(j, &pj)| {
            let (_, dp) = p.eval_with_derivative(pj);
            let crowded = p_roots.get(j + 1).is_some_and(|&next| next - pj <= gap);
            if crowded || dp == 0.0 {
                return Err(Error::NonSimpleRoot { root: pj, derivative: dp });
            }
            Ok(q.eval(pj) / dp)
        })
        .collect()
}

/// Residues `α_j = q(p_j)/p'(p_j)` of a validated pair.
pub fn residues(pair: &InterlacingPair) -> &[f64] {
    pair.residues()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_pair() -> InterlacingPair {
        InterlacingPair::new(
            RealPolynomial::new(vec![-1.0, 0.0, 1.0]),
            RealPolynomial::new(vec![0.0, 1.0]),
        )
        .unwrap()
    }

    #[test]
    fn residues_of_unit_pair_are_halves() {
        let pair = unit_pair();
        assert_eq!(pair.p_roots(), &[-1.0, 1.0]);
        let r = pair.residues();
        assert!((r[0] - 0.5).abs() < 1e-15 && (r[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn residues_of_cubic_pair_by_direct_evaluation() {
        let pair = InterlacingPair::from_roots(&[-1.0, 0.0, 1.0], &[-0.5, 0.5]).unwrap();
        // q(p_j)/p'(p_j) with p' = 3z² − 1, q = z² − 1/4
        let expected = [0.75 / 2.0, -0.25 / -1.0, 0.75 / 2.0];
        for (a, e) in pair.residues().iter().zip(expected) {
            assert!((a - e).abs() < 1e-14);
        }
        assert!((pair.residues().iter().sum::<f64>() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn monic_normalization_and_sign_rejection() {
        let pair = InterlacingPair::new(
            RealPolynomial::new(vec![-3.0, 0.0, 3.0]),
            RealPolynomial::new(vec![0.0, 2.0]),
        )
        .unwrap();
        assert!(pair.p().is_monic() && pair.q().is_monic());
        let err = InterlacingPair::new(
            RealPolynomial::new(vec![-1.0, 0.0, 1.0]),
            RealPolynomial::new(vec![0.0, -1.0]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn non_interlacing_is_rejected() {
        let err = InterlacingPair::new(
            RealPolynomial::new(vec![-1.0, 0.0, 1.0]),
            RealPolynomial::new(vec![-2.0, 1.0]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotInterlacing(_)));
        assert!(InterlacingPair::from_roots(&[0.0, 1.0], &[1.0]).is_err());
    }

    #[test]
    fn json_round_trip_validates() {
        let pair = unit_pair();
        let s = serde_json::to_string(&pair).unwrap();
        assert_eq!(s, r#"{"p":{"coeffs":[-1.0,0.0,1.0]},"q":{"coeffs":[0.0,1.0]}}"#);
        let back: InterlacingPair = serde_json::from_str(&s).unwrap();
        assert_eq!(back, pair);
        let bad = r#"{"p":{"coeffs":[-1,0,1]},"q":{"coeffs":[-2,1]}}"#;
        assert!(serde_json::from_str::<InterlacingPair>(bad).is_err());
    }

    #[test]
    fn partial_fractions_agree_with_quotient() {
        let pair = InterlacingPair::from_roots(&[-4.0, -3.0, 0.0, 2.0], &[-3.5, -1.0, 1.0]).unwrap();
        for z in [Complex64::new(0.3, 1.2), Complex64::new(-2.0, -0.7), Complex64::new(5.0, 0.1)] {
            assert!((pair.r_at(z) - pair.r_partial_fractions(z)).norm() < 1e-13);
        }
    }
}
