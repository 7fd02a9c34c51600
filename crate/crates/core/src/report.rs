//! Verification suites over a single pair, reported as deterministic JSON.
//!
//! Each [`Check`] carries a `claim` naming the statement it tests. Reports are
//! built from `serde_json::Value`, whose maps are ordered, and every parallel
//! loop collects in input order, so equal inputs give byte-identical output.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{
    basin_merge_level, convexity_check, level_curve_classify, min_modulus_on_halfcircle, re_r_monotonicity,
    saddles, Classification,
};
use crate::disks::{
    default_alpha_grid, disks_from_roots, omega_intersection_membership, omega_membership, strip_disk_bound,
    strip_disk_bound_im_reading, Disk,
};
use crate::hb::{census, hb_theorem_check, solve_hb, HbInstance};
use crate::pair::InterlacingPair;
use crate::roots::{hb_roots, wronskian_roots};
use crate::univalence::{certify_univalent, Verdict};
use crate::{tol, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Wronskian,
    Pencil,
    Strip,
    Convexity,
    LevelCurves,
    Monotonicity,
    Univalence,
    Hb,
    Census,
    All,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Wronskian,
        Suite::Pencil,
        Suite::Strip,
        Suite::Convexity,
        Suite::LevelCurves,
        Suite::Monotonicity,
        Suite::Univalence,
        Suite::Hb,
        Suite::Census,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Wronskian => "wronskian",
            Suite::Pencil => "pencil",
            Suite::Strip => "strip",
            Suite::Convexity => "convexity",
            Suite::LevelCurves => "levelcurves",
            Suite::Monotonicity => "monotonicity",
            Suite::Univalence => "univalence",
            Suite::Hb => "hb",
            Suite::Census => "census",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Relative tolerance; the absolute one is `relative · max(1, scale)`.
    pub relative_tol: f64,
    /// `α` of `p + iαq` for the `hb` suite.
    pub alpha: f64,
    /// `(r, φ)` of `q/p = r·e^{iφ}` for the `census` suite.
    pub r: f64,
    pub phi: f64,
    /// Restrict disk-wise suites to one inner disk.
    pub disk: Option<usize>,
    pub grid: usize,
    pub probes: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            relative_tol: tol::DEFAULT_RELATIVE,
            alpha: -1.0,
            r: 1.0,
            phi: -FRAC_PI_2,
            disk: None,
            grid: 256,
            probes: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub claim: &'static str,
    pub passed: bool,
    /// Signed slack of the tightest instance: positive when passing.
    pub margin: f64,
    pub details: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub tolerance: f64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are finite or null")
    }
}

/// `[re, im]` with non-finite parts mapped to `null` by serde_json.
pub fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn roots_json(roots: &[Complex64]) -> Value {
    Value::Array(roots.iter().map(|z| complex_json(*z)).collect())
}

struct Context<'a> {
    pair: &'a InterlacingPair,
    opts: &'a VerifyOptions,
    tau: f64,
    critical: Vec<Complex64>,
}

impl<'a> Context<'a> {
    fn new(pair: &'a InterlacingPair, opts: &'a VerifyOptions) -> Result<Self> {
        let tau = tol::tau_with(opts.relative_tol, pair.scale());
        let mut critical = wronskian_roots(pair)?.roots;
        critical.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Ok(Context { pair, opts, tau, critical })
    }

    /// Geometric checks on computed roots allow `100 τ`.
    fn tau_geometry(&self) -> f64 {
        100.0 * self.tau
    }

    fn inner_disks(&self) -> Result<Vec<usize>> {
        let k = self.pair.k();
        match self.opts.disk {
            Some(j) if (1..k).contains(&j) => Ok(vec![j]),
            Some(j) => Err(Error::InvalidInput(format!("disk {j} out of range 1..={}", k - 1))),
            None => Ok((1..k).collect()),
        }
    }
}

/// Runs `suite` on `pair`.
pub fn verify(pair: &InterlacingPair, suite: Suite, opts: &VerifyOptions) -> Result<Report> {
    let ctx = Context::new(pair, opts)?;
    let suites: Vec<Suite> = if suite == Suite::All { Suite::ALL.to_vec() } else { vec![suite] };
    let mut checks = Vec::new();
    for s in suites {
        checks.extend(run_suite(&ctx, s)?);
    }
    Ok(Report {
        suite: suite.name().to_string(),
        tolerance: ctx.tau,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn run_suite(ctx: &Context, suite: Suite) -> Result<Vec<Check>> {
    match suite {
        Suite::Wronskian => wronskian_checks(ctx),
        Suite::Pencil => pencil_checks(ctx),
        Suite::Strip => Ok(strip_checks(ctx)),
        Suite::Convexity => convexity_checks(ctx),
        Suite::LevelCurves => level_checks(ctx),
        Suite::Monotonicity => monotonicity_checks(ctx),
        Suite::Univalence => univalence_checks(ctx),
        Suite::Hb => hb_checks(ctx),
        Suite::Census => census_checks(ctx),
        Suite::All => unreachable!("expanded by verify"),
    }
}

fn wronskian_checks(ctx: &Context) -> Result<Vec<Check>> {
    let region = disks_from_roots(ctx.pair.p_roots())?;
    let tau = ctx.tau_geometry();
    let margins: Vec<f64> = ctx.critical.iter().map(|z| omega_membership(&region, *z, tau).signed_margin).collect();
    let min_margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
    let min_im = ctx.critical.iter().map(|z| z.im.abs()).fold(f64::INFINITY, f64::min);
    Ok(vec![
        Check {
            name: "wronskian_roots_in_omega".into(),
            claim: "every root of W(p,q) lies in Omega_p",
            passed: min_margin >= -tau,
            margin: min_margin + tau,
            details: json!({
                "wronskian": ctx.pair.wronskian().coeffs(),
                "roots": roots_json(&ctx.critical),
                "margins": margins,
            }),
        },
        Check {
            name: "wronskian_roots_nonreal".into(),
            claim: "W(p,q) has no real roots",
            passed: min_im > tau,
            margin: min_im - tau,
            details: json!({ "min_abs_im": min_im }),
        },
    ])
}

fn pencil_checks(ctx: &Context) -> Result<Vec<Check>> {
    let grid = default_alpha_grid(ctx.pair);
    let tau = ctx.tau_geometry();
    let margins: Vec<f64> = ctx
        .critical
        .iter()
        .map(|z| omega_intersection_membership(ctx.pair, *z, &grid, tau).map(|v| v.signed_margin))
        .collect::<Result<_>>()?;
    let min_margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(vec![Check {
        name: "wronskian_roots_in_pencil_intersection".into(),
        claim: "every root of W(p,q) lies in the intersection of Omega_p(alpha) over real alpha",
        passed: min_margin >= -tau,
        margin: min_margin + tau,
        details: json!({ "alpha_grid": grid, "margins": margins }),
    }])
}

fn strip_checks(ctx: &Context) -> Vec<Check> {
    let tau = ctx.tau_geometry();
    let q = ctx.pair.q_roots();
    let (lo, hi) = (q[0], q[q.len() - 1]);
    let holds = ctx.critical.iter().all(|z| strip_disk_bound(ctx.pair, *z, tau));
    let margin = ctx.critical.iter().map(|z| (z.re - lo).min(hi - z.re)).fold(f64::INFINITY, f64::min);
    let im_holds = ctx.critical.iter().all(|z| strip_disk_bound_im_reading(ctx.pair, *z, tau));
    vec![Check {
        name: "wronskian_roots_in_strip".into(),
        claim: "every root of W(p,q) lies in closed D_0 with q_1 <= Re z <= q_(k-1)",
        passed: holds,
        margin: margin + tau,
        details: json!({ "strip": [lo, hi], "imaginary_part_reading_holds": im_holds }),
    }]
}

fn convexity_checks(ctx: &Context) -> Result<Vec<Check>> {
    let disks: Vec<usize> = match ctx.opts.disk {
        Some(_) => ctx.inner_disks()?,
        None => (0..ctx.pair.k()).collect(),
    };
    let reports = disks
        .par_iter()
        .map(|&j| convexity_check(ctx.pair, j, ctx.opts.grid))
        .collect::<Result<Vec<_>>>()?;
    Ok(reports
        .into_iter()
        .map(|r| Check {
            name: format!("convexity_D{}", r.j),
            claim: "|R|^2 on the upper half-circle is convex in Re z",
            passed: r.convex,
            margin: r.min_second_difference,
            details: serde_json::to_value(&r).expect("serializable"),
        })
        .collect())
}

fn level_checks(ctx: &Context) -> Result<Vec<Check>> {
    let min_critical = ctx
        .critical
        .iter()
        .map(|z| ctx.pair.r_partial_fractions(*z).norm())
        .fold(f64::INFINITY, f64::min);
    let saddle_list = saddles(ctx.pair)?;
    let grid = ctx.opts.grid;
    let k = ctx.pair.k();
    let per_disk = ctx
        .inner_disks()?
        .par_iter()
        .map(|&j| -> Result<Vec<Check>> {
            let m = min_modulus_on_halfcircle(ctx.pair, j)?;
            let low = level_curve_classify(ctx.pair, j, 0.5 * m.m, grid)?;
            let high = level_curve_classify(ctx.pair, j, 2.0 * m.m, grid)?;
            let ok = low.classification == Classification::SingleOval
                && high.classification == Classification::TwoArcs;
            let basin = basin_merge_level(ctx.pair, j, &saddle_list)?;
            // for k = 2 the minimum point is itself critical and m equals the bound
            let (passed, margin) = if k == 2 {
                (m.m <= basin + ctx.tau, basin + ctx.tau - m.m)
            } else {
                (m.m < basin - ctx.tau, basin - ctx.tau - m.m)
            };
            Ok(vec![
                Check {
                    name: format!("level_curves_D{j}"),
                    claim: "|R| = r in D_j is one oval around q_j below m and two arcs above m",
                    passed: ok,
                    margin: m.m,
                    details: json!({
                        "m": m.m,
                        "P": complex_json(m.point),
                        "below": low,
                        "above": high,
                    }),
                },
                Check {
                    name: format!("critical_value_bound_D{j}"),
                    claim: "m is below the critical value at which the sublevel basin of q_j first meets a critical point",
                    passed,
                    margin,
                    details: json!({
                        "m": m.m,
                        "basin_merge_level": basin,
                        "least_critical_value_modulus": min_critical,
                        "below_least_critical_value": m.m < min_critical - ctx.tau,
                    }),
                },
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_disk.into_iter().flatten().collect())
}

fn monotonicity_checks(ctx: &Context) -> Result<Vec<Check>> {
    let k = ctx.pair.k();
    ctx.inner_disks()?
        .into_iter()
        .map(|j| {
            let r = re_r_monotonicity(ctx.pair, j, ctx.opts.grid)?;
            let (passed, margin, claim) = if k == 2 {
                (r.constant, 1e-10 - r.spread, "Re R is constant on the circle when k = 2")
            } else {
                (
                    r.max_difference < -ctx.tau,
                    -ctx.tau - r.max_difference,
                    "Re R is strictly decreasing along the upper half-circle",
                )
            };
            Ok(Check {
                name: format!("monotonicity_D{j}"),
                claim,
                passed,
                margin,
                details: serde_json::to_value(&r).expect("serializable"),
            })
        })
        .collect()
}

fn univalence_checks(ctx: &Context) -> Result<Vec<Check>> {
    let p = ctx.pair.p_roots();
    let mut out = Vec::new();
    for j in ctx.inner_disks()? {
        let disk = Disk::from_diameter(p[j - 1], p[j]);
        let own = certify_univalent(ctx.pair, &disk, ctx.opts.probes)?;
        out.push(Check {
            name: format!("univalent_D{j}"),
            claim: "R is univalent on D_j",
            passed: own.verdict == Verdict::Univalent,
            margin: 1.0 - own.max_preimage_count as f64,
            details: serde_json::to_value(&own).expect("serializable"),
        });
        let bigger = disk.inflate(1.05);
        let big = certify_univalent(ctx.pair, &bigger, ctx.opts.probes)?;
        let gap = big.witness.map_or(f64::INFINITY, |w| w.image_gap);
        out.push(Check {
            name: format!("not_univalent_inflated_D{j}"),
            claim: "R is not univalent on any larger concentric disk",
            passed: big.verdict == Verdict::NotUnivalent,
            margin: -gap,
            details: serde_json::to_value(&big).expect("serializable"),
        });
    }
    Ok(out)
}

fn hb_checks(ctx: &Context) -> Result<Vec<Check>> {
    let alpha = ctx.opts.alpha;
    let ok = hb_theorem_check(ctx.pair, alpha)?;
    let roots = hb_roots(ctx.pair, Complex64::new(0.0, alpha))?.roots;
    let sign = -alpha.signum();
    let margin = roots.iter().map(|z| sign * z.im).fold(f64::INFINITY, f64::min);
    // p + iαq = 0 ⟺ q/p = i/α: r = 1/|α|, φ = ∓π/2
    let inst = HbInstance::new(ctx.pair.clone(), 1.0 / alpha.abs(), sign * -FRAC_PI_2)?;
    let mut checks = vec![Check {
        name: "hb_half_plane".into(),
        claim: "all roots of p + i alpha q lie in one open half-plane, the upper one for alpha < 0",
        passed: ok,
        margin: margin - ctx.tau,
        details: json!({ "alpha": alpha, "roots": roots_json(&roots) }),
    }];
    checks.push(census_check(&inst)?);
    Ok(checks)
}

fn census_check(inst: &HbInstance) -> Result<Check> {
    let roots = solve_hb(inst)?;
    let (passed, details) = match census(inst) {
        Ok(c) => (true, serde_json::to_value(&c).expect("serializable")),
        Err(Error::CorollaryViolation(msg)) => (false, json!({ "violation": msg })),
        Err(e) => return Err(e),
    };
    Ok(Check {
        name: "disk_census".into(),
        claim: "each open D_j and the complement of closed D_0 contain at most one root of q/p = r e^(i phi)",
        passed,
        margin: if passed { 0.0 } else { -1.0 },
        details: json!({
            "r": inst.r(),
            "phi": inst.phi(),
            "roots": roots_json(&roots.roots),
            "census": details,
        }),
    })
}

fn census_checks(ctx: &Context) -> Result<Vec<Check>> {
    let inst = HbInstance::new(ctx.pair.clone(), ctx.opts.r, ctx.opts.phi)?;
    Ok(vec![census_check(&inst)?])
}

/// Descriptive summary of a pair: roots, residues, Wronskian and disks, and
/// the half-circle minima.
pub fn analyze(pair: &InterlacingPair) -> Result<Value> {
    let region = disks_from_roots(pair.p_roots())?;
    let mut critical = wronskian_roots(pair)?.roots;
    critical.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let minima: Vec<Value> = (1..pair.k())
        .map(|j| {
            min_modulus_on_halfcircle(pair, j).map(|m| json!({ "j": j, "m": m.m, "P": complex_json(m.point) }))
        })
        .collect::<Result<_>>()?;
    Ok(json!({
        "pair": pair,
        "k": pair.k(),
        "p_roots": pair.p_roots(),
        "q_roots": pair.q_roots(),
        "residues": pair.residues(),
        "wronskian": pair.wronskian(),
        "critical_points": roots_json(&critical),
        "disks": region,
        "halfcircle_minima": minima,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartic() -> InterlacingPair {
        InterlacingPair::from_roots(&[-4.0, -3.0, 0.0, 2.0], &[-3.5, -1.0, 1.0]).unwrap()
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn quartic_wronskian_suite_passes() {
        let rep = verify(&quartic(), Suite::Wronskian, &VerifyOptions::default()).unwrap();
        assert!(rep.passed, "{}", rep.to_json());
        assert_eq!(rep.checks[0].details["roots"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn quartic_hb_suite_with_alpha_minus_four() {
        let opts = VerifyOptions { alpha: -4.0, ..VerifyOptions::default() };
        let rep = verify(&quartic(), Suite::Hb, &opts).unwrap();
        assert!(rep.passed, "{}", rep.to_json());
        assert_eq!(rep.checks[1].details["r"], 0.25);
    }

    #[test]
    fn all_suites_pass_and_are_deterministic() {
        let opts = VerifyOptions { grid: 128, ..VerifyOptions::default() };
        let a = verify(&quartic(), Suite::All, &opts).unwrap();
        assert!(a.passed, "{}", a.to_json());
        let b = verify(&quartic(), Suite::All, &opts).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn degree_two_strip_records_im_reading_failure() {
        let pair = InterlacingPair::from_roots(&[-1.0, 1.0], &[0.0]).unwrap();
        let rep = verify(&pair, Suite::Strip, &VerifyOptions::default()).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.checks[0].details["imaginary_part_reading_holds"], false);
    }

    #[test]
    fn analyze_lists_minima() {
        let v = analyze(&quartic()).unwrap();
        assert_eq!(v["halfcircle_minima"].as_array().unwrap().len(), 3);
        assert_eq!(v["critical_points"].as_array().unwrap().len(), 6);
    }
}
