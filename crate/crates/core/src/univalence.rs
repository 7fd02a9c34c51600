//! Univalence of `R` on real disks: preimage counting by the argument
//! principle, boundary-loop checks, and collision witnesses on inflated disks.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::disks::Disk;
use crate::pair::InterlacingPair;
use crate::roots::{complex_roots, hb_roots};
use crate::{Error, Result};

const MIN_SAMPLES: usize = 128;
const MAX_SAMPLES: usize = 1 << 16;
/// Relative closeness `|q − cp| / (|q| + |c||p|)` treated as a boundary hit.
const BOUNDARY_REL: f64 = 1e-9;
const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;

fn f_c(pair: &InterlacingPair, c: Complex64, z: Complex64) -> (Complex64, f64) {
    let q = pair.q().eval_complex(z);
    let p = pair.p().eval_complex(z);
    let f = q - c * p;
    (f, f.norm() / (q.norm() + c.norm() * p.norm()))
}

/// Number of solutions of `R(z) = c` in the open disk, with multiplicity.
///
/// Counts the zeros of the polynomial `q − cp` by its winding number along
/// the circle. Unlike `R − c` it stays finite at poles on the circle, so disks
/// `D_j` need no indented contour. Samples double from 128 until two
/// consecutive estimates agree with every argument step below `π/3`.
///
/// Fails with [`Error::BoundaryHit`] when `c` is, to sampling accuracy, a
/// value taken on the circle.
pub fn preimage_count(pair: &InterlacingPair, disk: &Disk, c: Complex64) -> Result<usize> {
    if !c.re.is_finite() || !c.im.is_finite() {
        return Err(Error::InvalidInput("c must be finite".into()));
    }
    let mut n = MIN_SAMPLES;
    let mut previous = None;
    loop {
        let mut total = 0.0;
        let mut max_step: f64 = 0.0;
        let mut closest = f64::INFINITY;
        let (first, rel) = f_c(pair, c, disk.point(0.0));
        closest = closest.min(rel);
        let mut last = first;
        for i in 1..=n {
            let f = if i == n { first } else {
                let (f, rel) = f_c(pair, c, disk.point(2.0 * PI * i as f64 / n as f64));
                closest = closest.min(rel);
                f
            };
            let step = (f / last).arg();
            max_step = max_step.max(step.abs());
            total += step;
            last = f;
        }
        if closest < BOUNDARY_REL {
            return Err(Error::BoundaryHit { distance: closest });
        }
        let winding = (total / (2.0 * PI)).round();
        if max_step < PI / 3.0 {
            if previous == Some(winding) {
                return Ok(winding.max(0.0) as usize);
            }
            previous = Some(winding);
        } else {
            previous = None;
        }
        n *= 2;
        if n > MAX_SAMPLES {
            // an argument jump that survives refinement is a zero on the circle;
            // a first resolved estimate at the cap is taken as it is
            if max_step >= PI / 3.0 {
                return Err(Error::BoundaryHit { distance: closest });
            }
            return Ok(winding.max(0.0) as usize);
        }
    }
}

/// Two distinct points of a disk with (nearly) the same image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub z1: Complex64,
    pub z2: Complex64,
    pub value: Complex64,
    /// `|R(z1) − R(z2)|`.
    pub image_gap: f64,
    /// The same gap in the chordal metric of the Riemann sphere.
    pub chordal_gap: f64,
}

fn chordal(a: Complex64, b: Complex64) -> f64 {
    2.0 * (a - b).norm() / ((1.0 + a.norm_sqr()) * (1.0 + b.norm_sqr())).sqrt()
}

/// The two solutions of `R(z) = c` closest to the centre of the disk, if at
/// least two lie inside it.
fn solutions_inside(pair: &InterlacingPair, disk: &Disk, c: Complex64) -> Result<Option<Witness>> {
    let roots = if c == Complex64::new(0.0, 0.0) {
        complex_roots(&pair.q().to_complex())?
    } else {
        hb_roots(pair, -1.0 / c)?
    };
    let mut inside: Vec<Complex64> = roots.roots.into_iter().filter(|z| disk.contains_open(*z)).collect();
    if inside.len() < 2 {
        return Ok(None);
    }
    inside.sort_by(|a, b| disk.distance(*a).total_cmp(&disk.distance(*b)));
    let (z1, z2) = (inside[0], inside[1]);
    let (r1, r2) = (pair.r_partial_fractions(z1), pair.r_partial_fractions(z2));
    Ok(Some(Witness { z1, z2, value: c, image_gap: (r1 - r2).norm(), chordal_gap: chordal(r1, r2) }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Univalent,
    NotUnivalent,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnivalenceReport {
    pub disk: Disk,
    pub verdict: Verdict,
    pub max_preimage_count: usize,
    pub probes: usize,
    /// Probes skipped after repeated boundary hits.
    pub skipped_probes: usize,
    pub witness: Option<Witness>,
    pub boundary_simple: bool,
    pub boundary_degenerate_ray: bool,
}

/// Probe points: a sunflower grid on `ρ ≤ 0.95`, four points around each pole
/// strictly inside the disk, and about 10% exterior points.
fn probe_points(pair: &InterlacingPair, disk: &Disk, n: usize) -> Vec<Complex64> {
    let exterior = (n / 10).max(1);
    let interior = n.saturating_sub(exterior).max(1);
    let centre = Complex64::new(disk.center, 0.0);
    let mut out: Vec<Complex64> = (0..interior)
        .map(|i| {
            let rho = 0.95 * ((i as f64 + 0.5) / interior as f64).sqrt();
            centre + Complex64::from_polar(disk.radius * rho, i as f64 * GOLDEN_ANGLE)
        })
        .collect();
    for &pole in pair.p_roots() {
        let depth = disk.depth(Complex64::new(pole, 0.0));
        if depth > pair.tau() {
            let delta = 1e-2 * depth;
            for t in 0..4 {
                out.push(Complex64::new(pole, 0.0) + Complex64::from_polar(delta, PI / 4.0 + t as f64 * PI / 2.0));
            }
        }
    }
    out.extend((0..exterior).map(|i| {
        let rho = 1.1 + 0.4 * (i as f64 + 0.5) / exterior as f64;
        centre + Complex64::from_polar(disk.radius * rho, 0.3 + i as f64 * GOLDEN_ANGLE)
    }));
    out
}

/// Count for the image of `z`, nudging `z` inward up to three times when the
/// value lands on the image of the circle.
fn probe_count(pair: &InterlacingPair, disk: &Disk, z: Complex64) -> Result<Option<(Complex64, usize)>> {
    let centre = Complex64::new(disk.center, 0.0);
    for attempt in 0..4 {
        let zz = centre + (z - centre) * (1.0 - 1e-3 * attempt as f64) * Complex64::from_polar(1.0, 1e-3 * attempt as f64);
        if pair.p().eval_complex(zz).norm() == 0.0 {
            continue;
        }
        let c = pair.r_partial_fractions(zz);
        match preimage_count(pair, disk, c) {
            Ok(n) => return Ok(Some((c, n))),
            Err(Error::BoundaryHit { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// Shrinks `c` towards zero along its ray while it keeps two preimages, then
/// extracts them. Moderate values keep the two images comparable to
/// rounding.
fn witness_from(pair: &InterlacingPair, disk: &Disk, c: Complex64) -> Result<Option<Witness>> {
    let mut best = c;
    let mut trial = c;
    for _ in 0..60 {
        trial *= 0.5;
        match preimage_count(pair, disk, trial) {
            Ok(n) if n >= 2 => best = trial,
            Ok(_) => break,
            Err(Error::BoundaryHit { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    let separation = 10.0 * pair.tau();
    for c in [best, c] {
        if let Some(w) = solutions_inside(pair, disk, c)? {
            if (w.z1 - w.z2).norm() > separation {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Certifies or refutes injectivity of `R` on the open `disk`.
///
/// Univalent: every probed value has at most one preimage and the boundary
/// image passes [`arc_check`]. Not univalent: some probed value has two
/// preimages, and a witness pair is returned. Anything else is inconclusive.
pub fn certify_univalent(pair: &InterlacingPair, disk: &Disk, n_probes: usize) -> Result<UnivalenceReport> {
    if n_probes == 0 {
        return Err(Error::InvalidInput("need at least one probe".into()));
    }
    let points = probe_points(pair, disk, n_probes);
    let counts: Vec<Option<(Complex64, usize)>> = points
        .par_iter()
        .map(|z| probe_count(pair, disk, *z))
        .collect::<Result<_>>()?;
    let skipped = counts.iter().filter(|c| c.is_none()).count();
    let hits: Vec<(Complex64, usize)> = counts.into_iter().flatten().collect();
    let max_count = hits.iter().map(|h| h.1).max().unwrap_or(0);
    let mut report = UnivalenceReport {
        disk: *disk,
        verdict: Verdict::Inconclusive,
        max_preimage_count: max_count,
        probes: hits.len(),
        skipped_probes: skipped,
        witness: None,
        boundary_simple: false,
        boundary_degenerate_ray: false,
    };

    if max_count >= 2 {
        let mut colliding: Vec<Complex64> = hits.iter().filter(|h| h.1 >= 2).map(|h| h.0).collect();
        colliding.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
        for c in colliding.into_iter().take(4) {
            if let Some(w) = witness_from(pair, disk, c)? {
                report.witness = Some(w);
                report.verdict = Verdict::NotUnivalent;
                break;
            }
        }
        return Ok(report);
    }

    let arc = arc_check(pair, disk);
    report.boundary_simple = arc.simple;
    report.boundary_degenerate_ray = arc.degenerate_ray;
    if (arc.simple || arc.degenerate_ray) && skipped * 10 <= n_probes {
        report.verdict = Verdict::Univalent;
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryLoopReport {
    /// The image of the open upper arc has no self-intersection and stays off
    /// the real axis.
    pub simple: bool,
    /// `Re R` is constant along the arc, so the image doubly covers a
    /// vertical ray; happens for `k = 2`.
    pub degenerate_ray: bool,
    /// Largest `Im R` along the sampled arc (negative when the arc maps into
    /// the lower half-plane).
    pub max_im: f64,
    pub samples: usize,
}

/// Checks the image of `C_j^+` for `1 ≤ j ≤ k − 1`: `Im R < −τ` along the
/// arc and no self-intersection. The endpoint poles both map to `∞`, closing
/// the loop there.
pub fn boundary_loop_simple(pair: &InterlacingPair, j: usize) -> Result<BoundaryLoopReport> {
    let p = pair.p_roots();
    if j == 0 || j >= p.len() {
        return Err(Error::InvalidInput(format!("disk index {j} out of range 1..={}", p.len() - 1)));
    }
    let disk = Disk::from_diameter(p[j - 1], p[j]);
    let mut report = arc_check(pair, &disk);
    report.simple &= report.max_im < -pair.tau();
    Ok(report)
}

/// `R` along the open upper arc of a real disk.
fn arc_image(pair: &InterlacingPair, disk: &Disk, thetas: &[f64]) -> Vec<Complex64> {
    thetas.iter().map(|&t| pair.r_partial_fractions(disk.point(t))).collect()
}

const ARC_EXCLUSION: f64 = 1e-3;
const MAX_CHORD: f64 = 0.02;

/// Adaptive sampling of the upper arc, excluding `1e-3` rad at each end,
/// refined until consecutive images are within `0.02 · (1 + |R|)`.
fn arc_check(pair: &InterlacingPair, disk: &Disk) -> BoundaryLoopReport {
    let n0 = 512;
    let mut thetas: Vec<f64> = (0..=n0)
        .map(|i| ARC_EXCLUSION + (PI - 2.0 * ARC_EXCLUSION) * i as f64 / n0 as f64)
        .collect();
    let mut values = arc_image(pair, disk, &thetas);
    for _ in 0..8 {
        let mut t2 = Vec::with_capacity(thetas.len() * 2);
        let mut v2 = Vec::with_capacity(thetas.len() * 2);
        let mut refined = false;
        for i in 0..thetas.len() {
            t2.push(thetas[i]);
            v2.push(values[i]);
            if i + 1 < thetas.len() && too_far(values[i], values[i + 1]) {
                let mid = 0.5 * (thetas[i] + thetas[i + 1]);
                t2.push(mid);
                v2.push(pair.r_partial_fractions(disk.point(mid)));
                refined = true;
            }
        }
        thetas = t2;
        values = v2;
        if !refined || thetas.len() > MAX_SAMPLES {
            break;
        }
    }

    let max_im = values.iter().map(|w| w.im).fold(f64::NEG_INFINITY, f64::max);
    let min_im = values.iter().map(|w| w.im).fold(f64::INFINITY, f64::min);
    let one_side = max_im < 0.0 || min_im > 0.0;
    let re_hi = values.iter().map(|w| w.re).fold(f64::NEG_INFINITY, f64::max);
    let re_lo = values.iter().map(|w| w.re).fold(f64::INFINITY, f64::min);
    let re_scale = values.iter().fold(1.0f64, |m, w| m.max(w.norm()));
    let degenerate_ray = one_side && re_hi - re_lo <= 1e-10 * re_scale;
    let simple = one_side && !degenerate_ray && !polyline_self_intersects(&values);
    BoundaryLoopReport { simple, degenerate_ray, max_im, samples: thetas.len() }
}

fn too_far(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() > MAX_CHORD * (1.0 + a.norm().min(b.norm()))
}

fn orient(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    (b - a).re * (c - a).im - (b - a).im * (c - a).re
}

fn segments_cross(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Sweep over segments sorted by their left end; non-adjacent segments are
/// tested only when their x-ranges overlap.
fn polyline_self_intersects(pts: &[Complex64]) -> bool {
    if pts.len() < 4 {
        return false;
    }
    let mut segs: Vec<(f64, f64, usize)> = (0..pts.len() - 1)
        .map(|i| (pts[i].re.min(pts[i + 1].re), pts[i].re.max(pts[i + 1].re), i))
        .collect();
    segs.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (n, &(_, hi, i)) in segs.iter().enumerate() {
        for &(lo2, _, j) in &segs[n + 1..] {
            if lo2 > hi {
                break;
            }
            if i.abs_diff(j) < 2 {
                continue;
            }
            if segments_cross(pts[i], pts[i + 1], pts[j], pts[j + 1]) {
                return true;
            }
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximalityWitness {
    pub j: usize,
    /// `p_j` and `p_{j+1}`: both on the circle, both mapped to `∞`.
    pub boundary_poles: (f64, f64),
    /// Radius increment of the inflated disk searched for `interior`.
    pub inflation: f64,
    pub interior: Witness,
}

/// The boundary collision `R(p_j) = R(p_{j+1}) = ∞` of `D_j`, plus two points
/// with the same image inside the disk inflated by `1e-3 · radius`.
///
/// For large `|c|` the solutions of `R = c` sit near the poles at offsets
/// `≈ α/c`; along `c = ∓iM` both offsets are vertical and land inside the
/// inflated disk once `M` is large enough.
pub fn maximality_witness(pair: &InterlacingPair, j: usize) -> Result<MaximalityWitness> {
    let p = pair.p_roots();
    if j == 0 || j >= p.len() {
        return Err(Error::InvalidInput(format!("disk index {j} out of range 1..={}", p.len() - 1)));
    }
    let disk = Disk::from_diameter(p[j - 1], p[j]);
    let inflation = 1e-3 * disk.radius;
    let bigger = Disk { center: disk.center, radius: disk.radius + inflation };
    let alpha = pair.residues()[j - 1].max(pair.residues()[j]);
    let mut m = alpha / inflation;
    for _ in 0..40 {
        for c in [Complex64::new(0.0, -m), Complex64::new(0.0, m)] {
            if let Some(w) = solutions_inside(pair, &bigger, c)? {
                let near = |x: f64| (w.z1 - x).norm().min((w.z2 - x).norm());
                if near(p[j - 1]) < inflation && near(p[j]) < inflation {
                    return Ok(MaximalityWitness { j, boundary_poles: (p[j - 1], p[j]), inflation, interior: w });
                }
            }
        }
        m *= 2.0;
    }
    Err(Error::NoInteriorCollision)
}
