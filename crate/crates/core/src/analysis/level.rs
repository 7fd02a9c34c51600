use std::collections::VecDeque;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{inner_diameter, min_modulus_on_halfcircle};
use crate::pair::InterlacingPair;
use crate::{Error, Result};

/// Levels within `TANGENT_BAND · m` of the half-circle minimum `m` are
/// reported as tangent rather than classified.
pub const TANGENT_BAND: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// `r < m`: one closed curve around `q_j`.
    SingleOval,
    /// `r > m`: two arcs, each crossing the real axis once.
    TwoArcs,
    /// `|r − m| ≤ TANGENT_BAND · m`.
    Tangent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelCurveReport {
    pub j: usize,
    pub r: f64,
    pub m: f64,
    pub classification: Classification,
    /// Connected pieces of `{|R| > r}` inside the disk: 1 for an oval, 2 for
    /// two arcs.
    pub component_count: usize,
    /// Sign changes of `|R| − r` along the open diameter.
    pub real_crossings: usize,
}

/// Polar raster of `D_j`: `n` rings by `n` sectors. Ring `i` sits at relative
/// radius `1 − (1 − s)²`, `s = (i + ½)/n`, so rings crowd towards the circle
/// where the level set approaches it.
struct PolarGrid {
    n: usize,
    below: Vec<bool>,
}

impl PolarGrid {
    fn radius(i: usize, n: usize) -> f64 {
        let s = (i as f64 + 0.5) / n as f64;
        1.0 - (1.0 - s) * (1.0 - s)
    }

    fn idx(&self, i: usize, t: usize) -> usize {
        i * self.n + t
    }

    fn build(pair: &InterlacingPair, center: f64, radius: f64, level2: f64, n: usize) -> Self {
        let rows: Vec<Vec<bool>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let rho = radius * Self::radius(i, n);
                (0..n)
                    .map(|t| {
                        let theta = 2.0 * PI * (t as f64 + 0.5) / n as f64;
                        let z = Complex64::new(center, 0.0) + Complex64::from_polar(rho, theta);
                        pair.abs_r_squared(z) < level2
                    })
                    .collect()
            })
            .collect();
        PolarGrid { n, below: rows.concat() }
    }

    /// Cell containing the real point at signed relative offset `u ∈ (−1, 1)`.
    fn cell_of_axis_point(&self, u: f64) -> (usize, usize) {
        let s = 1.0 - (1.0 - u.abs()).max(0.0).sqrt();
        let i = ((s * self.n as f64) as usize).min(self.n - 1);
        let t = if u >= 0.0 { 0 } else { self.n / 2 };
        (i, t)
    }

    /// Labels the connected components of cells with `below == want`.
    /// Neighbours share a ring or a sector, sectors wrap around, and the
    /// innermost ring is joined through the centre.
    fn components(&self, want: bool) -> (Vec<usize>, usize) {
        let n = self.n;
        let mut label = vec![usize::MAX; n * n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..n * n {
            if self.below[start] != want || label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            let mut centre_done = false;
            while let Some(c) = queue.pop_front() {
                let (i, t) = (c / n, c % n);
                let mut visit = |cell: usize, queue: &mut VecDeque<usize>| {
                    if self.below[cell] == want && label[cell] == usize::MAX {
                        label[cell] = count;
                        queue.push_back(cell);
                    }
                };
                visit(self.idx(i, (t + 1) % n), &mut queue);
                visit(self.idx(i, (t + n - 1) % n), &mut queue);
                if i + 1 < n {
                    visit(self.idx(i + 1, t), &mut queue);
                }
                if i > 0 {
                    visit(self.idx(i - 1, t), &mut queue);
                } else if !centre_done {
                    centre_done = true;
                    for u in 0..n {
                        visit(self.idx(0, u), &mut queue);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }
}

/// Classifies the level set `|R| = r` inside the inner disk `D_j` from a
/// `grid × grid` polar raster, and checks the result against the half-circle
/// minimum `m`.
///
/// Returns [`Error::GridTooCoarse`] when the raster topology matches neither
/// picture, which happens when `r` is too close to `m` or to zero for the
/// resolution.
pub fn level_curve_classify(
    pair: &InterlacingPair,
    j: usize,
    r: f64,
    grid: usize,
) -> Result<LevelCurveReport> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidInput(format!("level must be positive, got {r}")));
    }
    if grid < 8 {
        return Err(Error::InvalidInput("grid must be at least 8".into()));
    }
    let (a, b) = inner_diameter(pair, j)?;
    let m = min_modulus_on_halfcircle(pair, j)?.m;
    let real_crossings = count_real_crossings(pair, a, b, r, 4 * grid);
    let mut report = LevelCurveReport {
        j,
        r,
        m,
        classification: Classification::Tangent,
        component_count: 0,
        real_crossings,
    };
    let center = 0.5 * (a + b);
    let radius = 0.5 * (b - a);
    let raster = PolarGrid::build(pair, center, radius, r * r, grid);
    let (_, above_count) = raster.components(false);
    report.component_count = above_count;
    if (r - m).abs() <= TANGENT_BAND * m {
        return Ok(report);
    }

    let n = grid;
    let (below, below_count) = raster.components(true);
    let qj = pair.q_roots()[j - 1];
    let (qi, qt) = raster.cell_of_axis_point((qj - center) / radius);
    let q_cell = raster.idx(qi, qt);
    if !raster.below[q_cell] {
        return Err(Error::GridTooCoarse(format!("cell of q_{j} is not below level {r}")));
    }
    let q_label = below[q_cell];
    let outer_ring = (0..n).filter(|&t| below[raster.idx(n - 1, t)] == q_label);
    let (mut upper, mut lower) = (false, false);
    for t in outer_ring {
        if t < n / 2 {
            upper = true;
        } else {
            lower = true;
        }
    }

    let classification = if below_count == 1 && !upper && !lower && above_count == 1 {
        Classification::SingleOval
    } else if below_count == 1 && upper && lower && above_count == 2 {
        Classification::TwoArcs
    } else {
        return Err(Error::GridTooCoarse(format!(
            "level {r}: {below_count} sublevel and {above_count} superlevel components"
        )));
    };
    let expected = if r < m { Classification::SingleOval } else { Classification::TwoArcs };
    if classification != expected {
        return Err(Error::GridTooCoarse(format!(
            "raster says {classification:?} but r={r} against m={m}"
        )));
    }
    report.classification = classification;
    Ok(report)
}

fn count_real_crossings(pair: &InterlacingPair, a: f64, b: f64, r: f64, samples: usize) -> usize {
    let signs: Vec<bool> = (1..samples)
        .map(|i| a + (b - a) * i as f64 / samples as f64)
        .map(|x| pair.q().eval(x).abs() > r * pair.p().eval(x).abs())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}
