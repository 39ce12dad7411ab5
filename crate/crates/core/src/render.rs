//! Deterministic ASCII and SVG pictures of paths.
//!
//! RSOS pictures shade dark bands and mark scoring vertices; half-lattice
//! pictures mark straight vertices and can draw particle baselines.

use std::fmt::Write;

use crate::error::Result;
use crate::halfpath::HalfPath;
use crate::particles::{dissect, Particle};
use crate::rsos::{dark_floors, RsosPath};

/// What to draw, independent of the output format.
struct Scene {
    heights: Vec<i64>,
    lo: i64,
    hi: i64,
    marked: Vec<bool>,
    /// Floors `y` of shaded bands `[y, y+1]`.
    shaded: Vec<i64>,
    /// `(height, from, to)` horizontal segments.
    baselines: Vec<(i64, usize, usize)>,
}

fn rsos_scene(h: &RsosPath) -> Scene {
    let len = h.horizon() + 3;
    let heights = h.heights_through(len);
    let mut marked = vec![false; len];
    for c in h.classify() {
        marked[c.x] = c.is_scoring();
    }
    Scene { heights, lo: 1, hi: h.pp() - 1, marked, shaded: dark_floors(h.p(), h.pp()), baselines: Vec::new() }
}

fn half_scene(h: &HalfPath, baselines: bool) -> Result<Scene> {
    let len = h.horizon() + 3;
    let heights = h.heights_through(len);
    let marked = (0..len).map(|i| i <= h.horizon() && h.is_straight(i)).collect();
    let lines = if baselines {
        let dis = dissect(h)?;
        let span = |p: &Particle| (p.baseline, p.origin, p.right_end);
        dis.all().map(span).collect()
    } else {
        Vec::new()
    };
    let lo = heights.iter().copied().min().unwrap_or(2).min(2);
    Ok(Scene { heights, lo, hi: h.t2(), marked, shaded: Vec::new(), baselines: lines })
}

fn ascii(s: &Scene) -> String {
    let rows = (2 * (s.hi - s.lo) + 1) as usize;
    let cols = 2 * s.heights.len() - 1;
    let row = |v: i64| (2 * (s.hi - v)) as usize;
    let mut grid = vec![vec![' '; cols]; rows];
    for &y in &s.shaded {
        if y >= s.lo && y < s.hi {
            grid[row(y) - 1].iter_mut().for_each(|c| *c = '.');
        }
    }
    for &(y, from, to) in &s.baselines {
        for c in &mut grid[row(y)][2 * from..=(2 * to).min(cols - 1)] {
            *c = '-';
        }
    }
    for (i, w) in s.heights.windows(2).enumerate() {
        let (r, glyph) = if w[1] > w[0] { (row(w[0]) - 1, '/') } else { (row(w[1]) - 1, '\\') };
        grid[r][2 * i + 1] = glyph;
    }
    for (i, &v) in s.heights.iter().enumerate() {
        grid[row(v)][2 * i] = if s.marked[i] { '*' } else { 'o' };
    }
    let width = s.hi.to_string().len();
    let mut out = String::new();
    for (r, line) in grid.iter().enumerate() {
        let label = if r % 2 == 0 { (s.hi - (r / 2) as i64).to_string() } else { String::new() };
        let body: String = line.iter().collect();
        let _ = writeln!(out, "{label:>width$} |{}", body.trim_end());
    }
    out
}

const UNIT: i64 = 20;
const PAD: i64 = 20;

fn svg(s: &Scene) -> String {
    let w = (s.heights.len() as i64 - 1) * UNIT + 2 * PAD;
    let h = (s.hi - s.lo) * UNIT + 2 * PAD;
    let px = |i: usize| PAD + i as i64 * UNIT;
    let py = |v: i64| PAD + (s.hi - v) * UNIT;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    let right = px(s.heights.len() - 1);
    for &y in &s.shaded {
        if y >= s.lo && y < s.hi {
            let _ = writeln!(
                out,
                r##"<rect x="{PAD}" y="{}" width="{}" height="{UNIT}" fill="#d0d0d0"/>"##,
                py(y + 1),
                right - PAD
            );
        }
    }
    for v in s.lo..=s.hi {
        let _ = writeln!(
            out,
            r##"<line x1="{PAD}" y1="{0}" x2="{right}" y2="{0}" stroke="#999999" stroke-width="0.5" stroke-dasharray="2,2"/>"##,
            py(v)
        );
    }
    for &(y, from, to) in &s.baselines {
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{2}" x2="{}" y2="{2}" stroke="black" stroke-width="1.5"/>"#,
            px(from),
            px(to),
            py(y)
        );
    }
    let points: Vec<String> = s.heights.iter().enumerate().map(|(i, &v)| format!("{},{}", px(i), py(v))).collect();
    let _ = writeln!(out, r#"<polyline points="{}" fill="none" stroke="black" stroke-width="2"/>"#, points.join(" "));
    for (i, &v) in s.heights.iter().enumerate() {
        if s.marked[i] {
            let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="4" fill="black"/>"#, px(i), py(v));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// ASCII picture of an RSOS path; scoring vertices are drawn as `*` and
/// dark bands are dotted.
pub fn ascii_rsos(h: &RsosPath) -> String {
    ascii(&rsos_scene(h))
}

/// ASCII picture of a half-lattice path in doubled coordinates; straight
/// vertices are drawn as `*`. Baselines need `A = B = 2`.
pub fn ascii_half(h: &HalfPath, baselines: bool) -> Result<String> {
    Ok(ascii(&half_scene(h, baselines)?))
}

pub fn svg_rsos(h: &RsosPath) -> String {
    svg(&rsos_scene(h))
}

pub fn svg_half(h: &HalfPath, baselines: bool) -> Result<String> {
    Ok(svg(&half_scene(h, baselines)?))
}
