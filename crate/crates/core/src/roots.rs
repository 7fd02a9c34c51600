//! Root finding: Aberth–Ehrlich simultaneous iteration for complex roots and
//! bracketed bisection for the real-rooted pencil `p + αq`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::pair::{interlacing_violation, InterlacingPair};
use crate::poly::{ComplexPolynomial, RealPolynomial};
use crate::{tol, Error, Result};

const MAX_ITERATIONS: usize = 500;
/// Rotation of the initial circle, breaks the conjugate symmetry of real input.
const INIT_ROTATION: f64 = 0.4;

/// All roots of a polynomial, repeated according to multiplicity.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(from = "RootSetRepr")]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// `max |poly(root)|` over the set.
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Deserialize)]
struct RootSetRepr {
    roots: Vec<[f64; 2]>,
    residual: f64,
}

impl From<RootSetRepr> for RootSet {
    fn from(r: RootSetRepr) -> Self {
        RootSet {
            roots: r.roots.iter().map(|z| Complex64::new(z[0], z[1])).collect(),
            residual: r.residual,
            iterations: 0,
        }
    }
}

impl Serialize for RootSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let roots: Vec<[f64; 2]> = self.roots.iter().map(|z| [z.re, z.im]).collect();
        let mut st = s.serialize_struct("RootSet", 2)?;
        st.serialize_field("roots", &roots)?;
        st.serialize_field("residual", &self.residual)?;
        st.end()
    }
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Groups roots into clusters: a cluster of size `m` has all members
    /// within `tau^(1/m)` of its first member. Returns `(mean, multiplicity)`.
    pub fn clusters(&self, tau: f64) -> Vec<(Complex64, usize)> {
        let mut left: Vec<Complex64> = self.roots.clone();
        let mut out = Vec::new();
        while let Some(seed) = left.pop() {
            // grow greedily; the admissible radius widens as the cluster grows
            let mut members = vec![seed];
            loop {
                let radius = tau.powf(1.0 / (members.len() + 1) as f64);
                let next = left
                    .iter()
                    .enumerate()
                    .filter(|(_, z)| (**z - seed).norm() < radius)
                    .min_by(|a, b| (*a.1 - seed).norm().total_cmp(&(*b.1 - seed).norm()))
                    .map(|(i, _)| i);
                match next {
                    Some(i) => members.push(left.swap_remove(i)),
                    None => break,
                }
            }
            let mean = members.iter().sum::<Complex64>() / members.len() as f64;
            out.push((mean, members.len()));
        }
        out.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
        out
    }
}

/// Fujiwara's bound `2 max |c_{n−i} / c_n|^{1/i}` on the moduli of the roots
/// (the constant term enters halved). Within a factor 2 of the largest root,
/// so powers of it stay representable for high degree.
fn root_bound(poly: &ComplexPolynomial) -> f64 {
    let c = poly.coeffs();
    let lead = poly.leading().norm();
    let n = poly.degree();
    let bound = (1..=n)
        .map(|i| {
            let a = c[n - i].norm() / lead;
            let a = if i == n { 0.5 * a } else { a };
            a.powf(1.0 / i as f64)
        })
        .fold(0.0, f64::max);
    2.0 * bound.max(f64::MIN_POSITIVE)
}

/// `a / b` with both scaled by `|b|` first: the plain quotient squares `|b|`,
/// which overflows for high-degree derivatives far from the origin.
fn ratio(a: Complex64, b: Complex64) -> Complex64 {
    let s = b.re.abs().max(b.im.abs());
    (a / s) / (b / s)
}

/// Aberth–Ehrlich iteration for `n` zeros of a function given through its
/// Newton correction: `newton(z)` returns `f(z)/f'(z)`, or `None` once `f(z)`
/// is at rounding level. Starts from `n` points on the circle `|z − center| =
/// radius`, rotated by 0.4 rad, so results are reproducible.
fn aberth(
    n: usize,
    center: Complex64,
    radius: f64,
    newton: impl Fn(Complex64) -> Option<Complex64>,
) -> Result<(Vec<Complex64>, usize)> {
    let mut z: Vec<Complex64> = (0..n)
        .map(|i| center + Complex64::from_polar(radius, 2.0 * PI * i as f64 / n as f64 + INIT_ROTATION))
        .collect();
    let mut done = vec![false; n];
    let eps = f64::EPSILON;
    let mut iterations = 0;

    while done.iter().any(|d| !d) {
        if iterations == MAX_ITERATIONS {
            return Err(Error::NoConvergence { iterations });
        }
        iterations += 1;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let Some(correction) = newton(z[i]) else {
                done[i] = true;
                continue;
            };
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (z[i] - z[j]))
                .sum();
            let step = correction / (1.0 - correction * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                // perturb off a stationary point
                z[i] += Complex64::from_polar(1e-8 * radius, i as f64);
                continue;
            }
            z[i] -= step;
            if step.norm() <= 2.0 * eps * z[i].norm().max(eps) {
                done[i] = true;
            }
        }
    }
    Ok((z, iterations))
}

/// All complex roots by Aberth–Ehrlich iteration.
///
/// Starts on a circle of radius given by a root bound. A root is frozen once
/// its Newton correction is at rounding level or its value is below the
/// Horner rounding bound. Roots of real input are returned closed under
/// conjugation.
pub fn complex_roots(poly: &ComplexPolynomial) -> Result<RootSet> {
    let n = poly.degree();
    if n == 0 {
        return Err(Error::InvalidInput("constant polynomial has no roots".into()));
    }
    if n == 1 {
        let c = poly.coeffs();
        let root = -c[0] / c[1];
        return Ok(RootSet { roots: vec![root], residual: poly.eval(root).norm(), iterations: 0 });
    }

    let eps = f64::EPSILON;
    let (mut z, iterations) = aberth(n, Complex64::new(0.0, 0.0), root_bound(poly), |z| {
        let (f, df) = poly.eval_with_derivative(z);
        let bound = 4.0 * n as f64 * eps * poly.abs_eval(z.norm());
        (f.norm() > bound).then(|| ratio(f, df))
    })?;

    for root in z.iter_mut() {
        polish(poly, root);
    }
    if poly.is_real() {
        symmetrize(&mut z);
    }
    let residual = z.iter().map(|r| poly.eval(*r).norm()).fold(0.0, f64::max);
    Ok(RootSet { roots: z, residual, iterations })
}

/// A few guarded Newton steps; a step is kept only if it lowers `|f|`.
fn polish(poly: &ComplexPolynomial, root: &mut Complex64) {
    let mut value = poly.eval(*root).norm();
    for _ in 0..3 {
        if value == 0.0 {
            return;
        }
        let (f, df) = poly.eval_with_derivative(*root);
        if df.norm() == 0.0 {
            return;
        }
        let candidate = *root - ratio(f, df);
        let v = poly.eval(candidate).norm();
        if v < value {
            *root = candidate;
            value = v;
        } else {
            return;
        }
    }
}

/// Pairs each root with its nearest conjugate partner and averages the pair;
/// unpartnered roots close to the axis are snapped onto it.
fn symmetrize(z: &mut [Complex64]) {
    let n = z.len();
    let mut used = vec![false; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| z[b].im.abs().total_cmp(&z[a].im.abs()));
    for &i in &order {
        if used[i] {
            continue;
        }
        used[i] = true;
        let target = z[i].conj();
        let scale = z[i].norm().max(1.0);
        let partner = (0..n)
            .filter(|&j| !used[j])
            .min_by(|&a, &b| (z[a] - target).norm().total_cmp(&(z[b] - target).norm()));
        let snap = z[i].im.abs() <= 1e-10 * scale;
        match partner {
            Some(j) if !snap && (z[j] - target).norm() <= 1e-6 * scale => {
                used[j] = true;
                let avg = (z[i] + z[j].conj()) * 0.5;
                z[i] = avg;
                z[j] = avg.conj();
            }
            _ if snap => z[i].im = 0.0,
            _ => {}
        }
    }
}

/// Sorted real roots of a polynomial whose roots are all real and simple.
pub fn real_roots_sorted(poly: &RealPolynomial) -> Result<Vec<f64>> {
    if poly.degree() == 0 {
        return Ok(Vec::new());
    }
    let set = complex_roots(&poly.to_complex())?;
    let scale = set.roots.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    let mut out = Vec::with_capacity(set.len());
    for z in &set.roots {
        if z.im.abs() > 1e-7 * scale {
            return Err(Error::ComplexRootDetected { re: z.re, im: z.im });
        }
        out.push(newton_real(poly, z.re));
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

fn newton_real(poly: &RealPolynomial, mut x: f64) -> f64 {
    let mut value = poly.eval(x).abs();
    for _ in 0..8 {
        let (f, df) = poly.eval_with_derivative(x);
        if f == 0.0 || df == 0.0 {
            break;
        }
        let candidate = x - f / df;
        let v = poly.eval(candidate).abs();
        if v < value {
            x = candidate;
            value = v;
        } else {
            break;
        }
    }
    x
}

/// Outcome of an interlacing check; `diagnostic` names the first violation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterlacingCheck {
    pub interlacing: bool,
    pub diagnostic: Option<String>,
}

impl InterlacingCheck {
    fn fail(msg: impl Into<String>) -> Self {
        InterlacingCheck { interlacing: false, diagnostic: Some(msg.into()) }
    }
}

/// Checks `deg q = deg p − 1`, real simple roots, and strict alternation
/// `p_1 < q_1 < … < q_{k−1} < p_k`.
pub fn verify_interlacing(p: &RealPolynomial, q: &RealPolynomial) -> InterlacingCheck {
    if p.degree() < 1 || q.degree() + 1 != p.degree() {
        return InterlacingCheck::fail(format!(
            "deg q = {} but deg p - 1 = {}",
            q.degree(),
            p.degree() as i64 - 1
        ));
    }
    let pr = match real_roots_sorted(p) {
        Ok(r) => r,
        Err(e) => return InterlacingCheck::fail(format!("p: {e}")),
    };
    let qr = match real_roots_sorted(q) {
        Ok(r) => r,
        Err(e) => return InterlacingCheck::fail(format!("q: {e}")),
    };
    if let Some(w) = pr.windows(2).position(|w| w[1] <= w[0]) {
        return InterlacingCheck::fail(format!("p has a repeated root near {}", pr[w]));
    }
    match interlacing_violation(&pr, &qr) {
        Some(msg) => InterlacingCheck::fail(msg),
        None => InterlacingCheck { interlacing: true, diagnostic: None },
    }
}

/// Sorted real roots `p_1(α) < … < p_k(α)` of `p + αq`.
///
/// The roots of `q` separate consecutive roots of every pencil member, so each
/// root is bracketed by `(q_{l}, q_{l+1})`, with a root bound closing the
/// two outer brackets. Bisection then a guarded Newton polish.
pub fn pencil_roots(pair: &InterlacingPair, alpha: f64) -> Result<Vec<f64>> {
    if alpha == 0.0 {
        return Ok(pair.p_roots().to_vec());
    }
    let member = pair.p() + &pair.q().scale(alpha);
    let f = |x: f64| pair.p().eval(x) + alpha * pair.q().eval(x);
    let bound = root_bound(&member.to_complex());
    let q = pair.q_roots();
    let mut edges = Vec::with_capacity(q.len() + 2);
    edges.push(-bound);
    edges.extend_from_slice(q);
    edges.push(bound);

    let mut roots = Vec::with_capacity(pair.k());
    for w in edges.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (mut flo, fhi) = (f(lo), f(hi));
        if flo == 0.0 {
            roots.push(lo);
            continue;
        }
        if fhi == 0.0 {
            roots.push(hi);
            continue;
        }
        if flo.signum() == fhi.signum() {
            return Err(Error::ComplexRootDetected { re: 0.5 * (lo + hi), im: f64::NAN });
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = f(mid);
            if fm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if fm.signum() == flo.signum() {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        let x = newton_real(&member, 0.5 * (lo + hi));
        roots.push(x.clamp(w[0], w[1]));
    }
    Ok(roots)
}

/// Guarded Newton: `step(z)` returns `(f(z), f(z)/f'(z))`; a step is kept
/// only if it lowers `|f|`.
fn polish_with(root: &mut Complex64, step: impl Fn(Complex64) -> (Complex64, Complex64)) {
    let (mut value, mut delta) = step(*root);
    for _ in 0..3 {
        if value.norm() == 0.0 || !delta.re.is_finite() || !delta.im.is_finite() {
            return;
        }
        let candidate = *root - delta;
        let (v, d) = step(candidate);
        if v.norm() < value.norm() {
            *root = candidate;
            (value, delta) = (v, d);
        } else {
            return;
        }
    }
}

/// `Σ 1/(z − r)`, `Σ 1/(z − r)²` and `Σ |1/(z − r)|` over `roots`.
fn reciprocal_sums(z: Complex64, roots: &[f64]) -> (Complex64, Complex64, f64) {
    roots.iter().fold((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 0.0), |(s1, s2, m), &r| {
        let t = 1.0 / (z - r);
        (s1 + t, s2 + t * t, m + t.norm())
    })
}

fn product_from_roots(z: Complex64, roots: &[f64]) -> Complex64 {
    roots.iter().map(|&r| z - r).product()
}

/// Roots of `W(p, q)`, computed from the roots of `p` and `q` instead of the
/// coefficients of `W`.
///
/// `W = pq·g` with `g = p'/p − q'/q = Σ 1/(z − p_j) − Σ 1/(z − q_l)`, so the
/// zeros of `W` are those of `g`, and `W/W' = 1/(p'/p + q'/q + g'/g)`. Both
/// are sums over the roots and stay well conditioned at degrees where the
/// expanded Wronskian loses all accuracy. Aberth starts on the circle `C_0`,
/// which contains every root.
pub fn wronskian_roots(pair: &InterlacingPair) -> Result<RootSet> {
    let (p, q) = (pair.p_roots(), pair.q_roots());
    let n = 2 * pair.k() - 2;
    let eps = f64::EPSILON;
    let g = |z: Complex64| {
        let (sp, sp2, mp) = reciprocal_sums(z, p);
        let (sq, sq2, mq) = reciprocal_sums(z, q);
        (sp - sq, sq2 - sp2, sp + sq, mp + mq)
    };
    let (first, last) = (p[0], p[p.len() - 1]);
    let center = Complex64::new(0.5 * (first + last), 0.0);
    let (mut z, iterations) = aberth(n, center, 0.5 * (last - first), |z| {
        let (g, dg, log_pq, mag) = g(z);
        (g.norm() > 4.0 * n as f64 * eps * mag).then(|| 1.0 / (log_pq + dg / g))
    })?;
    for root in z.iter_mut() {
        polish_with(root, |z| {
            let (g, dg, _, _) = g(z);
            (g, g / dg)
        });
    }
    symmetrize(&mut z);
    let residual = z
        .iter()
        .map(|&z| (product_from_roots(z, p) * product_from_roots(z, q) * g(z).0).norm())
        .fold(0.0, f64::max);
    Ok(RootSet { roots: z, residual, iterations })
}

/// Roots of `p + λq` for complex `λ`.
///
/// Solved as the zeros of `p·(1 + λR)` with `R = Σ α_j/(z − p_j)`, which
/// avoids the expanded coefficients. The solutions of `q/p = r·e^{iφ}` are
/// obtained with `λ = −e^{−iφ}/r`.
pub fn hb_roots(pair: &InterlacingPair, lambda: Complex64) -> Result<RootSet> {
    let (p, alpha) = (pair.p_roots(), pair.residues());
    let n = pair.k();
    let eps = f64::EPSILON;
    // (1 + λR, λR', p'/p, scale of the sum)
    let h = |z: Complex64| {
        let mut r = Complex64::new(0.0, 0.0);
        let mut dr = Complex64::new(0.0, 0.0);
        let mut log_p = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        for (&pj, &a) in p.iter().zip(alpha) {
            let t = 1.0 / (z - pj);
            r += a * t;
            dr -= a * t * t;
            log_p += t;
            mag += a * t.norm();
        }
        (1.0 + lambda * r, lambda * dr, log_p, 1.0 + lambda.norm() * mag)
    };
    let radius = root_bound(&pair.p().add_scaled_complex(lambda, pair.q()));
    let (mut z, iterations) = aberth(n, Complex64::new(0.0, 0.0), radius, |z| {
        let (h, dh, log_p, mag) = h(z);
        (h.norm() > 4.0 * n as f64 * eps * mag).then(|| 1.0 / (log_p + dh / h))
    })?;
    for root in z.iter_mut() {
        polish_with(root, |z| {
            let (h, dh, _, _) = h(z);
            (h, h / dh)
        });
    }
    if lambda.im == 0.0 {
        symmetrize(&mut z);
    }
    let residual = z
        .iter()
        .map(|&z| (product_from_roots(z, p) * h(z).0).norm())
        .fold(0.0, f64::max);
    Ok(RootSet { roots: z, residual, iterations })
}

/// Tolerance used when matching conjugate roots of a real polynomial.
pub fn conjugation_tolerance(set: &RootSet) -> f64 {
    let scale = set.roots.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    tol::tau(scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    fn quartic() -> InterlacingPair {
        InterlacingPair::from_roots(&[-4.0, -3.0, 0.0, 2.0], &[-3.5, -1.0, 1.0]).unwrap()
    }

    #[test]
    fn quadratic_roots_match_formula() {
        let set = complex_roots(&RealPolynomial::new(vec![1.0, 0.0, 1.0]).to_complex()).unwrap();
        let r = sorted(set.roots.clone());
        assert!((r[0] - c(0.0, -1.0)).norm() < 1e-15);
        assert!((r[1] - c(0.0, 1.0)).norm() < 1e-15);
        assert!(set.residual < 1e-15);
    }

    #[test]
    fn wronskian_of_quartic_pair_has_three_conjugate_pairs() {
        let w = quartic().wronskian();
        let set = complex_roots(&w.to_complex()).unwrap();
        assert_eq!(set.len(), 6);
        assert!(set.residual < 1e-9 * w.coefficient_norm());
        for z in &set.roots {
            assert!(z.im.abs() > 0.1);
            assert!(set.roots.iter().any(|u| (*u - z.conj()).norm() < 1e-12));
        }
    }

    #[test]
    fn triple_root_clusters() {
        let poly = RealPolynomial::from_roots(&[1.0, 1.0, 1.0]);
        let set = complex_roots(&poly.to_complex()).unwrap();
        assert_eq!(set.len(), 3);
        let clusters = set.clusters(1e-9);
        assert_eq!(clusters.len(), 1);
        assert_eq!(clusters[0].1, 3);
        assert!((clusters[0].0 - c(1.0, 0.0)).norm() < 1e-3);
    }

    #[test]
    fn real_roots_examples() {
        let r = real_roots_sorted(&RealPolynomial::new(vec![-1.0, 0.0, 1.0])).unwrap();
        assert_eq!(r, vec![-1.0, 1.0]);
        let r = real_roots_sorted(&RealPolynomial::from_roots(&[2.0, 0.0, -3.0, -4.0])).unwrap();
        for (a, b) in r.iter().zip([-4.0, -3.0, 0.0, 2.0]) {
            assert!((a - b).abs() < 1e-13, "{r:?}");
        }
        let r = real_roots_sorted(&RealPolynomial::from_roots(&[-3.5, -1.0, 1.0])).unwrap();
        for (a, b) in r.iter().zip([-3.5, -1.0, 1.0]) {
            assert!((a - b).abs() < 1e-13);
        }
        let err = real_roots_sorted(&RealPolynomial::new(vec![1.0, 0.0, 1.0])).unwrap_err();
        assert!(matches!(err, Error::ComplexRootDetected { .. }));
    }

    #[test]
    fn interlacing_examples() {
        let p2 = RealPolynomial::new(vec![-1.0, 0.0, 1.0]);
        assert!(verify_interlacing(&p2, &RealPolynomial::new(vec![0.0, 1.0])).interlacing);
        let pair = quartic();
        assert!(verify_interlacing(pair.p(), pair.q()).interlacing);
        let bad = verify_interlacing(&p2, &RealPolynomial::new(vec![-2.0, 1.0]));
        assert!(!bad.interlacing);
        assert_eq!(bad.diagnostic.as_deref(), Some("q_1=2 not in (p_1,p_2)"));
    }

    #[test]
    fn pencil_examples() {
        let pair = quartic();
        assert_eq!(pencil_roots(&pair, 0.0).unwrap(), pair.p_roots());

        let unit = InterlacingPair::from_roots(&[-1.0, 1.0], &[0.0]).unwrap();
        let r = pencil_roots(&unit, 1.0).unwrap();
        let s5 = 5f64.sqrt();
        assert!((r[0] - (-1.0 - s5) / 2.0).abs() < 1e-14);
        assert!((r[1] - (-1.0 + s5) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn pencil_limits() {
        let pair = quartic();
        let q = pair.q_roots();
        // α → −∞: the top root escapes to +∞, the others settle on the q_j
        let r = pencil_roots(&pair, -1e6).unwrap();
        assert!(r[3] > 1e5);
        for j in 0..3 {
            assert!((r[j] - q[j]).abs() < 1e-3, "{r:?}");
        }
        // α → +∞: mirror image
        let r = pencil_roots(&pair, 1e6).unwrap();
        assert!(r[0] < -1e5);
        for j in 0..3 {
            assert!((r[j + 1] - q[j]).abs() < 1e-3, "{r:?}");
        }
    }

    #[test]
    fn hb_roots_half_planes() {
        let pair = quartic();
        let up = hb_roots(&pair, c(0.0, -4.0)).unwrap();
        assert_eq!(up.len(), 4);
        assert!(up.roots.iter().all(|z| z.im > 0.0));
        let down = hb_roots(&pair, c(0.0, 4.0)).unwrap();
        assert!(down.roots.iter().all(|z| z.im < 0.0));
        let zero = hb_roots(&pair, c(0.0, 0.0)).unwrap();
        let mut re: Vec<f64> = zero.roots.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        for (a, b) in re.iter().zip(pair.p_roots()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    fn nearest_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter()
            .map(|z| b.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    }

    #[test]
    fn wronskian_roots_match_expanded_wronskian() {
        let pair = quartic();
        let direct = wronskian_roots(&pair).unwrap();
        let expanded = complex_roots(&pair.wronskian().to_complex()).unwrap();
        assert_eq!(direct.len(), 6);
        assert!(nearest_distance(&direct.roots, &expanded.roots) < 1e-12);
        assert!(nearest_distance(&expanded.roots, &direct.roots) < 1e-12);
        let unit = InterlacingPair::from_roots(&[-1.0, 1.0], &[0.0]).unwrap();
        let r = sorted(wronskian_roots(&unit).unwrap().roots);
        assert!((r[0] - c(0.0, -1.0)).norm() < 1e-15 && (r[1] - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn wronskian_roots_stay_accurate_at_degree_32() {
        // the expanded Wronskian has coefficients near 1e90 here and its
        // computed roots leave the disk D_0
        let p: Vec<f64> = (0..32).map(|i| -31.0 + 2.0 * i as f64).collect();
        let q: Vec<f64> = (0..31).map(|i| -30.0 + 2.0 * i as f64 + 0.3 * ((i % 3) as f64 - 1.0)).collect();
        let pair = InterlacingPair::from_roots(&p, &q).unwrap();
        let set = wronskian_roots(&pair).unwrap();
        assert_eq!(set.len(), 62);
        for z in &set.roots {
            assert!(z.norm() <= 31.0 + 1e-9, "{z}");
            assert!(z.im.abs() > 1e-3, "{z}");
            // zero of Σ 1/(z − p_j) − Σ 1/(z − q_l)
            let g: Complex64 = p.iter().map(|&x| 1.0 / (z - x)).sum::<Complex64>()
                - q.iter().map(|&x| 1.0 / (z - x)).sum::<Complex64>();
            assert!(g.norm() < 1e-12, "{z}: {g}");
        }
    }

    #[test]
    fn hb_roots_match_expanded_polynomial() {
        let pair = quartic();
        for lambda in [c(0.0, -4.0), c(0.3, 1.7), c(-2.0, 0.0), c(1e3, -1e3)] {
            let direct = hb_roots(&pair, lambda).unwrap();
            let expanded = complex_roots(&pair.p().add_scaled_complex(lambda, pair.q())).unwrap();
            let scale = direct.roots.iter().fold(1.0f64, |m, z| m.max(z.norm()));
            assert!(nearest_distance(&direct.roots, &expanded.roots) < 1e-10 * scale, "{lambda}");
            assert!(nearest_distance(&expanded.roots, &direct.roots) < 1e-10 * scale, "{lambda}");
        }
    }

    #[test]
    fn root_set_json() {
        let set = RootSet { roots: vec![c(1.0, -2.0)], residual: 0.5, iterations: 3 };
        assert_eq!(serde_json::to_string(&set).unwrap(), r#"{"roots":[[1.0,-2.0]],"residual":0.5}"#);
    }
}
