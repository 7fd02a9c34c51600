//! Deterministic SVG figures: the region `Ω_p` with critical points and
//! Hermite–Biehler roots, and level curves of `|R|` in one disk.

use std::fmt::Write;

use hbdisks::analysis::min_modulus_on_halfcircle;
use hbdisks::disks::disks_from_roots;
use hbdisks::roots::{hb_roots, wronskian_roots, RootSet};
use hbdisks::{Complex64, Disk, InterlacingPair, Result};

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 0.15;

/// Maps a bounding box of the plane onto the picture, equal scale on both
/// axes, with a margin of 15% of the box size on every side.
struct Viewport {
    x0: f64,
    y1: f64,
    s: f64,
    width: f64,
    height: f64,
}

impl Viewport {
    fn new(mut x0: f64, mut x1: f64, mut y0: f64, mut y1: f64) -> Self {
        let (dx, dy) = (x1 - x0, y1 - y0);
        x0 -= MARGIN * dx;
        x1 += MARGIN * dx;
        y0 -= MARGIN * dy;
        y1 += MARGIN * dy;
        let s = WIDTH / (x1 - x0);
        Viewport { x0, y1, s, width: WIDTH, height: ((y1 - y0) * s).round() }
    }

    fn x(&self, x: f64) -> f64 {
        (x - self.x0) * self.s
    }

    fn y(&self, y: f64) -> f64 {
        (self.y1 - y) * self.s
    }

    fn header(&self, title: &str) -> String {
        let mut s = String::new();
        writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#,
            w = self.width,
            h = self.height
        )
        .unwrap();
        writeln!(s, "<title>{title}</title>").unwrap();
        writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
        writeln!(
            s,
            r##"<line x1="0" y1="{y:.2}" x2="{w:.0}" y2="{y:.2}" stroke="#999" stroke-width="0.8"/>"##,
            y = self.y(0.0),
            w = self.width
        )
        .unwrap();
        s
    }

    fn circle_path(&self, d: &Disk) -> String {
        let (cx, cy, r) = (self.x(d.center), self.y(0.0), d.radius * self.s);
        format!("M{:.2},{cy:.2} a{r:.2},{r:.2} 0 1,0 {:.2},0 a{r:.2},{r:.2} 0 1,0 {:.2},0 ", cx - r, 2.0 * r, -2.0 * r)
    }

    fn circle(&self, d: &Disk, stroke: &str) -> String {
        format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{:.2}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1.2\"/>\n",
            self.x(d.center),
            self.y(0.0),
            d.radius * self.s
        )
    }

    fn cross(&self, z: Complex64, color: &str) -> String {
        let (x, y, h) = (self.x(z.re), self.y(z.im), 5.0);
        format!(
            "<path d=\"M{:.2},{:.2} L{:.2},{:.2} M{:.2},{:.2} L{:.2},{:.2}\" stroke=\"{color}\" stroke-width=\"1.6\"/>\n",
            x - h, y - h, x + h, y + h, x - h, y + h, x + h, y - h
        )
    }

    fn dot(&self, z: Complex64, r: f64, fill: &str) -> String {
        format!("<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{r}\" fill=\"{fill}\"/>\n", self.x(z.re), self.y(z.im))
    }
}

fn sorted_roots(set: RootSet) -> Vec<Complex64> {
    let mut roots = set.roots;
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    roots
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Circles `C_0 … C_{k−1}`, `Ω_p` shaded, roots of `W(p, q)` as crosses and
/// roots of `p + iαq` as dots.
pub fn omega(pair: &InterlacingPair, alpha: f64) -> Result<String> {
    let region = disks_from_roots(pair.p_roots())?;
    let critical = sorted_roots(wronskian_roots(pair)?);
    let hb = sorted_roots(hb_roots(pair, Complex64::new(0.0, alpha))?);

    let o = region.outer;
    let (mut x0, mut x1, mut y0, mut y1) = (o.left(), o.right(), -o.radius, o.radius);
    for z in critical.iter().chain(&hb) {
        x0 = x0.min(z.re);
        x1 = x1.max(z.re);
        y0 = y0.min(z.im);
        y1 = y1.max(z.im);
    }
    let vp = Viewport::new(x0, x1, y0, y1);

    let mut s = vp.header(&format!("Omega_p, critical points of q/p and roots of p + {alpha} i q"));
    let mut shade = vp.circle_path(&o);
    for d in &region.inner {
        shade.push_str(&vp.circle_path(d));
    }
    writeln!(s, "<path d=\"{}\" fill=\"#dbe9f6\" fill-rule=\"evenodd\"/>", shade.trim_end()).unwrap();
    s.push_str(&vp.circle(&o, "#1f4e79"));
    for d in &region.inner {
        s.push_str(&vp.circle(d, "#1f4e79"));
    }
    for &x in pair.p_roots() {
        s.push_str(&vp.dot(real(x), 3.0, "black"));
    }
    for &x in pair.q_roots() {
        s.push_str(&vp.dot(real(x), 3.0, "#888"));
    }
    for z in &critical {
        s.push_str(&vp.cross(*z, "#c0392b"));
    }
    for z in &hb {
        s.push_str(&vp.dot(*z, 4.0, "#1565c0"));
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// Multiples of the half-circle minimum `m` at which contours are drawn.
const LEVELS: [f64; 9] = [0.25, 0.5, 0.75, 0.9, 1.0, 1.1, 1.5, 2.0, 4.0];

/// Contours of `|R|` at multiples of `m` over the box around `D_j`, marched
/// on an `n × n` raster.
pub fn levels(pair: &InterlacingPair, j: usize, n: usize) -> Result<String> {
    let region = disks_from_roots(pair.p_roots())?;
    let disk = region
        .disk(j)
        .filter(|_| j >= 1)
        .ok_or_else(|| hbdisks::Error::InvalidInput(format!("disk {j} out of range 1..={}", pair.k() - 1)))?;
    let n = n.max(8);
    let m = min_modulus_on_halfcircle(pair, j)?;
    let (x0, x1) = (disk.left(), disk.right());
    let (y0, y1) = (-disk.radius, disk.radius);
    let vp = Viewport::new(x0, x1, y0, y1);

    // sample the whole viewport, not only the disk
    let (bx0, by1) = (vp.x0, vp.y1);
    let (bw, bh) = (vp.width / vp.s, vp.height / vp.s);
    let at = |i: usize, k: usize| Complex64::new(bx0 + bw * i as f64 / n as f64, by1 - bh * k as f64 / n as f64);
    let values: Vec<f64> = (0..=n)
        .flat_map(|k| (0..=n).map(move |i| (i, k)))
        .map(|(i, k)| pair.r_partial_fractions(at(i, k)).norm())
        .collect();

    let mut s = vp.header(&format!("Level curves of |R| in D_{j}, m = {:.6}", m.m));
    writeln!(
        s,
        "<path d=\"{}\" fill=\"#f3f3f3\"/>",
        vp.circle_path(&disk).trim_end()
    )
    .unwrap();
    for factor in LEVELS {
        let color = if factor < 1.0 {
            "#1565c0"
        } else if factor > 1.0 {
            "#c0392b"
        } else {
            "black"
        };
        let mut d = String::new();
        for ((ax, ay), (bx, by)) in march(&values, n, factor * m.m) {
            let px = |gx: f64| gx / n as f64 * vp.width;
            let py = |gy: f64| gy / n as f64 * vp.height;
            write!(d, "M{:.2},{:.2}L{:.2},{:.2}", px(ax), py(ay), px(bx), py(by)).unwrap();
        }
        if !d.is_empty() {
            writeln!(s, "<path d=\"{d}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1\"/>").unwrap();
        }
    }
    s.push_str(&vp.circle(&disk, "#1f4e79"));
    for &x in pair.p_roots() {
        s.push_str(&vp.dot(real(x), 3.0, "black"));
    }
    for &x in pair.q_roots() {
        s.push_str(&vp.dot(real(x), 3.0, "#888"));
    }
    s.push_str(&vp.dot(m.point, 3.5, "#2e7d32"));
    s.push_str(&vp.dot(m.point.conj(), 3.5, "#2e7d32"));
    s.push_str("</svg>\n");
    Ok(s)
}

type Segment = ((f64, f64), (f64, f64));

/// Marching squares on the `(n+1) × (n+1)` row-major raster `v`; segments in
/// raster coordinates. Saddle cells are resolved by the cell-centre average.
/// Cells touching a non-finite value are skipped.
fn march(v: &[f64], n: usize, level: f64) -> Vec<Segment> {
    let at = |i: usize, k: usize| v[k * (n + 1) + i];
    let mut out = Vec::new();
    for k in 0..n {
        for i in 0..n {
            // corners counter-clockwise from (i, k)
            let c = [at(i, k), at(i + 1, k), at(i + 1, k + 1), at(i, k + 1)];
            if c.iter().any(|x| !x.is_finite()) {
                continue;
            }
            let case = c.iter().enumerate().fold(0, |acc, (b, x)| acc | (usize::from(*x > level) << b));
            let (fi, fk) = (i as f64, k as f64);
            let t = |a: f64, b: f64| if a == b { 0.5 } else { (level - a) / (b - a) };
            let edge = |e: usize| match e {
                0 => (fi + t(c[0], c[1]), fk),
                1 => (fi + 1.0, fk + t(c[1], c[2])),
                2 => (fi + t(c[3], c[2]), fk + 1.0),
                _ => (fi, fk + t(c[0], c[3])),
            };
            let centre_above = c.iter().sum::<f64>() / 4.0 > level;
            let pairs: &[(usize, usize)] = match case {
                1 | 14 => &[(3, 0)],
                2 | 13 => &[(0, 1)],
                3 | 12 => &[(3, 1)],
                4 | 11 => &[(1, 2)],
                6 | 9 => &[(0, 2)],
                7 | 8 => &[(3, 2)],
                5 if centre_above => &[(0, 1), (2, 3)],
                5 => &[(3, 0), (1, 2)],
                10 if centre_above => &[(3, 0), (1, 2)],
                10 => &[(0, 1), (2, 3)],
                _ => &[],
            };
            out.extend(pairs.iter().map(|&(a, b)| (edge(a), edge(b))));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn march_traces_a_circle() {
        let n = 64;
        let v: Vec<f64> = (0..=n)
            .flat_map(|k| (0..=n).map(move |i| (i, k)))
            .map(|(i, k)| ((i as f64 - 32.0).powi(2) + (k as f64 - 32.0).powi(2)).sqrt())
            .collect();
        let segs = march(&v, n, 20.0);
        assert!(!segs.is_empty());
        for ((ax, ay), _) in &segs {
            let r = ((ax - 32.0).powi(2) + (ay - 32.0).powi(2)).sqrt();
            assert!((r - 20.0).abs() < 0.1, "{r}");
        }
        // total length is the circumference
        let total: f64 = segs.iter().map(|((ax, ay), (bx, by))| ((ax - bx).powi(2) + (ay - by).powi(2)).sqrt()).sum();
        assert!((total - 2.0 * std::f64::consts::PI * 20.0).abs() < 1.0, "{total}");
    }

    #[test]
    fn march_skips_flat_raster() {
        assert!(march(&[1.0; 9], 2, 0.5).is_empty());
        assert!(march(&[1.0; 9], 2, 2.0).is_empty());
    }
}
