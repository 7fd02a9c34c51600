//! Diameter disks on the real axis and the region
//! `Ω_p = closure(D_0) \ ⋃ D_j`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::pair::InterlacingPair;
use crate::roots::pencil_roots;
use crate::{Error, Result};

/// A disk centred on the real axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: f64,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !center.is_finite() || !radius.is_finite() {
            return Err(Error::InvalidInput(format!("disk needs a positive finite radius, got {radius}")));
        }
        Ok(Disk { center, radius })
    }

    /// The disk having the segment `[a, b]`, `a < b`, as a diameter.
    pub fn from_diameter(a: f64, b: f64) -> Self {
        debug_assert!(a < b);
        Disk { center: 0.5 * (a + b), radius: 0.5 * (b - a) }
    }

    pub fn left(&self) -> f64 {
        self.center - self.radius
    }

    pub fn right(&self) -> f64 {
        self.center + self.radius
    }

    pub fn distance(&self, z: Complex64) -> f64 {
        (z - self.center).norm()
    }

    /// Positive inside, negative outside: `radius − |z − center|`.
    pub fn depth(&self, z: Complex64) -> f64 {
        self.radius - self.distance(z)
    }

    pub fn contains_open(&self, z: Complex64) -> bool {
        self.depth(z) > 0.0
    }

    /// The concentric disk with radius multiplied by `factor`.
    pub fn inflate(&self, factor: f64) -> Disk {
        Disk { center: self.center, radius: self.radius * factor }
    }

    /// Boundary point at angle `theta`.
    pub fn point(&self, theta: f64) -> Complex64 {
        Complex64::new(self.center, 0.0) + Complex64::from_polar(self.radius, theta)
    }

    pub fn approx_eq(&self, other: &Disk, tol: f64) -> bool {
        (self.center - other.center).abs() <= tol && (self.radius - other.radius).abs() <= tol
    }
}

/// `Ω = closure(outer) \ ⋃ inner`, inner disks open.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OmegaRegion {
    pub outer: Disk,
    pub inner: Vec<Disk>,
}

/// Membership of a point in a region. `signed_margin` is positive inside,
/// negative outside and approximates the distance to the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub inside: bool,
    pub signed_margin: f64,
}

/// `D_0` on `(r_1, r_k)` and `D_j` on `(r_j, r_{j+1})`.
pub fn disks_from_roots(roots: &[f64]) -> Result<OmegaRegion> {
    if roots.len() < 2 {
        return Err(Error::TooFewRoots(roots.len()));
    }
    if roots.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidInput("roots must be strictly increasing".into()));
    }
    Ok(OmegaRegion {
        outer: Disk::from_diameter(roots[0], roots[roots.len() - 1]),
        inner: roots.windows(2).map(|w| Disk::from_diameter(w[0], w[1])).collect(),
    })
}

impl OmegaRegion {
    /// Disk by index: 0 is the outer disk, `1..k−1` the inner ones.
    pub fn disk(&self, j: usize) -> Option<Disk> {
        if j == 0 {
            Some(self.outer)
        } else {
            self.inner.get(j - 1).copied()
        }
    }
}

/// Closed outer disk counts as inside, open inner disks as outside, both with
/// slack `tau`.
pub fn omega_membership(region: &OmegaRegion, z: Complex64, tau: f64) -> MembershipVerdict {
    let outer = region.outer.depth(z);
    let inner = region
        .inner
        .iter()
        .map(|d| -d.depth(z))
        .fold(f64::INFINITY, f64::min);
    MembershipVerdict {
        inside: outer >= -tau && inner >= -tau,
        signed_margin: outer.min(inner),
    }
}

/// `Ω_p(α)`, built on the roots of `p + αq`.
pub fn omega_alpha(pair: &InterlacingPair, alpha: f64) -> Result<OmegaRegion> {
    disks_from_roots(&pencil_roots(pair, alpha)?)
}

/// Pencil parameters `{0} ∪ {±2^n · scale : n = −6..=6}`.
pub fn default_alpha_grid(pair: &InterlacingPair) -> Vec<f64> {
    let scale = pair.scale().max(1.0);
    let mut grid = vec![0.0];
    for n in -6..=6 {
        let a = 2f64.powi(n) * scale;
        grid.push(a);
        grid.push(-a);
    }
    grid
}

/// Membership in `⋂_α Ω_p(α)` over a finite grid, together with the two
/// limiting half-planes `Re z ≥ q_1` and `Re z ≤ q_{k−1}` reached as
/// `α → ±∞`. The margin is the minimum over all constraints.
pub fn omega_intersection_membership(
    pair: &InterlacingPair,
    z: Complex64,
    alpha_grid: &[f64],
    tau: f64,
) -> Result<MembershipVerdict> {
    if alpha_grid.is_empty() {
        return Err(Error::InvalidInput("alpha grid is empty".into()));
    }
    let q = pair.q_roots();
    let mut margin = (z.re - q[0]).min(q[q.len() - 1] - z.re);
    let mut inside = margin >= -tau;
    for &alpha in alpha_grid {
        let v = omega_membership(&omega_alpha(pair, alpha)?, z, tau);
        inside &= v.inside;
        margin = margin.min(v.signed_margin);
    }
    Ok(MembershipVerdict { inside, signed_margin: margin })
}

fn in_closed_outer(pair: &InterlacingPair, z: Complex64, tau: f64) -> bool {
    let p = pair.p_roots();
    Disk::from_diameter(p[0], p[p.len() - 1]).depth(z) >= -tau
}

/// Closed `D_0` intersected with the vertical strip `q_1 ≤ Re z ≤ q_{k−1}`.
pub fn strip_disk_bound(pair: &InterlacingPair, z: Complex64, tau: f64) -> bool {
    let q = pair.q_roots();
    in_closed_outer(pair, z, tau) && q[0] - tau <= z.re && z.re <= q[q.len() - 1] + tau
}

/// The same bound read with the imaginary part, `q_1 ≤ Im z ≤ q_{k−1}`.
/// Kept only so reports can show that this reading fails.
pub fn strip_disk_bound_im_reading(pair: &InterlacingPair, z: Complex64, tau: f64) -> bool {
    let q = pair.q_roots();
    in_closed_outer(pair, z, tau) && q[0] - tau <= z.im && z.im <= q[q.len() - 1] + tau
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::wronskian_roots;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn quartic() -> InterlacingPair {
        InterlacingPair::from_roots(&[-4.0, -3.0, 0.0, 2.0], &[-3.5, -1.0, 1.0]).unwrap()
    }

    #[test]
    fn disks_from_roots_examples() {
        let r = disks_from_roots(&[-1.0, 1.0]).unwrap();
        assert_eq!(r.outer, Disk { center: 0.0, radius: 1.0 });
        assert_eq!(r.inner, vec![r.outer]);

        let r = disks_from_roots(&[-4.0, -3.0, 0.0, 2.0]).unwrap();
        assert_eq!(r.outer, Disk { center: -1.0, radius: 3.0 });
        let expect = [(-3.5, 0.5), (-1.5, 1.5), (1.0, 1.0)];
        for (d, (c, rad)) in r.inner.iter().zip(expect) {
            assert_eq!((d.center, d.radius), (c, rad));
        }

        let r = disks_from_roots(&[-3.0, -1.0, 1.0, 3.0]).unwrap();
        assert_eq!(r.outer, Disk { center: 0.0, radius: 3.0 });
        let expect = [(-2.0, 1.0), (0.0, 1.0), (2.0, 1.0)];
        for (d, (c, rad)) in r.inner.iter().zip(expect) {
            assert_eq!((d.center, d.radius), (c, rad));
        }

        assert!(matches!(disks_from_roots(&[1.0]), Err(Error::TooFewRoots(1))));
        assert!(disks_from_roots(&[1.0, 1.0]).is_err());
    }

    #[test]
    fn membership_examples() {
        let pair = quartic();
        let region = disks_from_roots(pair.p_roots()).unwrap();
        let tau = pair.tau();

        let v = omega_membership(&region, c(-4.0, 0.0), tau);
        assert!(v.inside);
        assert!(v.signed_margin.abs() < 1e-12);

        for &q in pair.q_roots() {
            assert!(!omega_membership(&region, c(q, 0.0), tau).inside);
        }

        let w = wronskian_roots(&pair).unwrap();
        for z in &w.roots {
            let v = omega_membership(&region, *z, 1e-7 * pair.scale());
            assert!(v.inside, "{z} margin {}", v.signed_margin);
        }
    }

    #[test]
    fn membership_is_conjugation_symmetric() {
        let region = disks_from_roots(&[-4.0, -3.0, 0.0, 2.0]).unwrap();
        for z in [c(-2.0, 1.7), c(0.5, 0.4), c(1.9, -2.2), c(-3.9, 0.05)] {
            assert_eq!(omega_membership(&region, z, 1e-9), omega_membership(&region, z.conj(), 1e-9));
        }
    }

    #[test]
    fn omega_alpha_examples() {
        let pair = quartic();
        assert_eq!(omega_alpha(&pair, 0.0).unwrap(), disks_from_roots(pair.p_roots()).unwrap());

        let unit = InterlacingPair::from_roots(&[-1.0, 1.0], &[0.0]).unwrap();
        let r = omega_alpha(&unit, 1.0).unwrap();
        let s5 = 5f64.sqrt();
        let d = Disk::from_diameter((-1.0 - s5) / 2.0, (-1.0 + s5) / 2.0);
        assert!(r.outer.approx_eq(&d, 1e-14));
        assert_eq!(r.inner.len(), 1);

        for a in [1e6, -1e6] {
            assert!(omega_alpha(&pair, a).unwrap().outer.radius > 1e5);
        }
    }

    #[test]
    fn intersection_examples() {
        let pair = quartic();
        let grid = default_alpha_grid(&pair);
        assert_eq!(grid.len(), 27);
        let tau = 1e-7 * pair.scale();
        let w = wronskian_roots(&pair).unwrap();
        for z in &w.roots {
            assert!(omega_intersection_membership(&pair, *z, &grid, tau).unwrap().inside);
        }
        for &q in pair.q_roots() {
            let v = omega_intersection_membership(&pair, c(q, 0.0), &[0.0], tau).unwrap();
            assert!(!v.inside);
        }
        // left of q_1 and outside D_0: cut off by the limit half-plane, and
        // already by a large positive α
        let z = c(-3.7, 3.5);
        assert!(!omega_intersection_membership(&pair, z, &[0.0], tau).unwrap().inside);
        assert!(!omega_membership(&omega_alpha(&pair, 1e4).unwrap(), z, tau).inside);
    }

    #[test]
    fn strip_examples() {
        let pair = quartic();
        let tau = pair.tau();
        assert!(!strip_disk_bound(&pair, c(-4.0, 0.0), tau));
        // centre of D_0 is -1 = q_2, inside [q_1, q_3]
        assert!(strip_disk_bound(&pair, c(-1.0, 0.0), tau));

        let unit = InterlacingPair::from_roots(&[-1.0, 1.0], &[0.0]).unwrap();
        for z in [c(0.0, 1.0), c(0.0, -1.0)] {
            assert!(strip_disk_bound(&unit, z, 1e-9));
            assert!(!strip_disk_bound_im_reading(&unit, z, 1e-9));
        }
    }
}
