//! Roots of `q/p = r·e^{iφ}` and of `p + iαq`, and their distribution over
//! the disks `D_j`.

use num_complex::Complex64;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::disks::{disks_from_roots, Disk};
use crate::pair::InterlacingPair;
use crate::poly::RealPolynomial;
use crate::roots::{complex_roots, hb_roots, pencil_roots, RootSet};
use crate::{Error, Result};

/// The equation `q(z)/p(z) = r·e^{iφ}`, `r > 0`, `φ ∈ (−π, π]`.
#[derive(Debug, Clone, PartialEq)]
pub struct HbInstance {
    pair: InterlacingPair,
    r: f64,
    phi: f64,
}

impl HbInstance {
    pub fn new(pair: InterlacingPair, r: f64, phi: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidInput(format!("r must be positive, got {r}")));
        }
        if !(phi > -std::f64::consts::PI && phi <= std::f64::consts::PI) {
            return Err(Error::InvalidInput(format!("phi must lie in (-pi, pi], got {phi}")));
        }
        Ok(HbInstance { pair, r, phi })
    }

    pub fn pair(&self) -> &InterlacingPair {
        &self.pair
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `λ` with `p + λq = 0 ⟺ q/p = r·e^{iφ}`, namely `λ = −e^{−iφ}/r`.
    pub fn lambda(&self) -> Complex64 {
        -Complex64::from_polar(1.0 / self.r, -self.phi)
    }
}

/// The `k` roots of `p − q/(r·e^{iφ})`. For `φ ∈ {0, π}` the equation is a
/// real pencil member and its roots are returned exactly real.
pub fn solve_hb(instance: &HbInstance) -> Result<RootSet> {
    let pair = &instance.pair;
    if instance.phi == 0.0 || instance.phi == std::f64::consts::PI {
        let alpha = instance.lambda().re;
        let roots: Vec<Complex64> = pencil_roots(pair, alpha)?.into_iter().map(|x| Complex64::new(x, 0.0)).collect();
        let residual = roots
            .iter()
            .map(|z| (pair.p().eval_complex(*z) + alpha * pair.q().eval_complex(*z)).norm())
            .fold(0.0, f64::max);
        return Ok(RootSet { roots, residual, iterations: 0 });
    }
    hb_roots(pair, instance.lambda())
}

/// Where the roots of an [`HbInstance`] fall: the open inner disks
/// `D_1 … D_{k−1}`, the open complement of `D̄_0`, the rest of `Ω_p`, or
/// within `τ_census` of a circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiskRootCensus {
    /// `inner[j − 1]` counts roots in `D_j`.
    pub inner: Vec<usize>,
    pub outer: usize,
    /// Roots in `D̄_0` outside every inner disk.
    pub omega: usize,
    pub uncounted: usize,
}

impl DiskRootCensus {
    pub fn total(&self) -> usize {
        self.inner.iter().sum::<usize>() + self.outer + self.omega + self.uncounted
    }

    /// At most one root in each open inner disk and outside `D̄_0`.
    pub fn satisfies_corollaries(&self) -> bool {
        self.inner.iter().all(|&n| n <= 1) && self.outer <= 1
    }
}

/// `{"counts": {"D1": n1, …, "outer": n, "omega": m}, "uncounted": u}`.
impl Serialize for DiskRootCensus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Counts<'a>(&'a DiskRootCensus);
        impl Serialize for Counts<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.inner.len() + 2))?;
                for (j, n) in self.0.inner.iter().enumerate() {
                    m.serialize_entry(&format!("D{}", j + 1), n)?;
                }
                m.serialize_entry("outer", &self.0.outer)?;
                m.serialize_entry("omega", &self.0.omega)?;
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("counts", &Counts(self))?;
        m.serialize_entry("uncounted", &self.uncounted)?;
        m.end()
    }
}

/// Relative width of the band around each circle in which roots are left
/// uncounted.
pub const CENSUS_RELATIVE: f64 = 1e-7;

pub fn classify_roots(pair: &InterlacingPair, roots: &[Complex64]) -> DiskRootCensus {
    let region = disks_from_roots(pair.p_roots()).expect("pair has at least two roots");
    let band = CENSUS_RELATIVE * pair.scale().max(1.0);
    let on_circle = |d: &Disk, z: Complex64| d.depth(z).abs() <= band;
    let mut census = DiskRootCensus { inner: vec![0; region.inner.len()], outer: 0, omega: 0, uncounted: 0 };
    for &z in roots {
        if on_circle(&region.outer, z) || region.inner.iter().any(|d| on_circle(d, z)) {
            census.uncounted += 1;
        } else if !region.outer.contains_open(z) {
            census.outer += 1;
        } else if let Some(j) = region.inner.iter().position(|d| d.contains_open(z)) {
            census.inner[j] += 1;
        } else {
            census.omega += 1;
        }
    }
    census
}

/// Solves the instance and classifies its roots.
///
/// [`Error::CorollaryViolation`] means a disk received two roots, which the
/// theory rules out; it points at a numerical or implementation fault.
pub fn census(instance: &HbInstance) -> Result<DiskRootCensus> {
    let roots = solve_hb(instance)?;
    let c = classify_roots(&instance.pair, &roots.roots);
    if !c.satisfies_corollaries() {
        return Err(Error::CorollaryViolation(format!(
            "inner counts {:?}, outer {} for r={}, phi={}",
            c.inner, c.outer, instance.r, instance.phi
        )));
    }
    Ok(c)
}

/// For `α ≠ 0`: all roots of `p + iαq` lie strictly in the upper half-plane
/// when `α < 0` and strictly in the lower one when `α > 0`.
pub fn hb_theorem_check(pair: &InterlacingPair, alpha: f64) -> Result<bool> {
    hb_theorem_check_polys(pair.p(), pair.q(), alpha, pair.tau())
}

/// The same test for arbitrary real `p`, `q`, so that the converse can be
/// exercised on pairs that do not interlace.
pub fn hb_theorem_check_polys(p: &RealPolynomial, q: &RealPolynomial, alpha: f64, tau: f64) -> Result<bool> {
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::InvalidInput("alpha must be finite and non-zero".into()));
    }
    let s = p.add_scaled_complex(Complex64::new(0.0, alpha), q);
    let roots = complex_roots(&s)?;
    let sign = -alpha.signum();
    Ok(roots.roots.iter().all(|z| sign * z.im > tau))
}
