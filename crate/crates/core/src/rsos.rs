//! RSOS paths: unit-step height sequences in `[1, p'-1]` that end in an
//! oscillating `b`-tail, weighted through their scoring vertices.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qseries::QSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Shape {
    Peak,
    Valley,
    StraightUp,
    StraightDown,
}

impl Shape {
    pub fn of(prev: i64, cur: i64, next: i64) -> Shape {
        match (cur - prev, next - cur) {
            (1, 1) => Shape::StraightUp,
            (-1, -1) => Shape::StraightDown,
            (1, -1) => Shape::Peak,
            _ => Shape::Valley,
        }
    }

    pub fn is_straight(self) -> bool {
        matches!(self, Shape::StraightUp | Shape::StraightDown)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Scoring {
    Up,
    Down,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    pub x: usize,
    pub shape: Shape,
    pub scoring: Scoring,
}

impl VertexClass {
    pub fn is_scoring(&self) -> bool {
        self.scoring != Scoring::None
    }
}

/// Whether the band between heights `y` and `y+1` is dark, i.e.
/// `y = ⌊r p'/p⌋` for some `1 <= r < p`.
pub fn band_is_dark(p: i64, pp: i64, y: i64) -> Result<bool> {
    if !(1..=pp - 2).contains(&y) {
        return Err(Error::InvalidParameters(format!("band floor {y} outside [1, {}]", pp - 2)));
    }
    Ok(is_dark(p, pp, y))
}

fn is_dark(p: i64, pp: i64, y: i64) -> bool {
    (1..p).any(|r| r * pp / p == y)
}

/// The dark band floors `⌊r p'/p⌋`, `1 <= r < p`.
pub fn dark_floors(p: i64, pp: i64) -> Vec<i64> {
    (1..p).map(|r| r * pp / p).collect()
}

pub(crate) fn check_model(p: i64, pp: i64) -> Result<()> {
    if !(1 < p && p < pp) || p.gcd(&pp) != 1 {
        return Err(Error::InvalidParameters(format!("need coprime 1 < p < p', got ({p}, {pp})")));
    }
    Ok(())
}

fn check_endpoints(p: i64, pp: i64, a: i64, b: i64) -> Result<()> {
    check_model(p, pp)?;
    if !(1..pp).contains(&a) {
        return Err(Error::InvalidParameters(format!("start height {a} outside [1, {}]", pp - 1)));
    }
    if !(1..pp - 1).contains(&b) {
        return Err(Error::InvalidParameters(format!("tail height {b} outside [1, {}]", pp - 2)));
    }
    Ok(())
}

/// An RSOS path in `P^{p,p'}_{a,b}`, stored canonically through `L(h)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RsosPath {
    p: i64,
    pp: i64,
    a: i64,
    b: i64,
    heights: Vec<i64>,
}

impl RsosPath {
    /// Validates and canonicalizes. The heights may run past `L(h)` provided
    /// they already follow the tail, and must end in `{b, b+1}`.
    pub fn new(p: i64, pp: i64, a: i64, b: i64, heights: Vec<i64>) -> Result<Self> {
        check_endpoints(p, pp, a, b)?;
        if heights.first() != Some(&a) {
            return Err(Error::InvalidPath(format!("path must start at height {a}")));
        }
        for (x, w) in heights.windows(2).enumerate() {
            if (w[1] - w[0]).abs() != 1 {
                return Err(Error::InvalidPath(format!("non-unit step at x={x}")));
            }
        }
        if let Some(x) = heights.iter().position(|&h| !(1..pp).contains(&h)) {
            return Err(Error::InvalidPath(format!("height {} at x={x} outside [1, {}]", heights[x], pp - 1)));
        }
        let last = *heights.last().unwrap();
        if last != b && last != b + 1 {
            return Err(Error::InvalidPath(format!("path does not end in the tail {{{b}, {}}}", b + 1)));
        }
        let mut path = RsosPath { p, pp, a, b, heights };
        path.canonicalize();
        Ok(path)
    }

    fn canonicalize(&mut self) {
        let in_tail = |h: i64| h == self.b || h == self.b + 1;
        let last = self.heights.len() - 1;
        let mut start = last + 1;
        while start > 0 && in_tail(self.heights[start - 1]) {
            start -= 1;
        }
        let l = start + start % 2;
        let ext = self.height_at_unchecked(l, last);
        self.heights.truncate(l.min(last) + 1);
        if l > last {
            self.heights.push(ext);
        }
    }

    fn height_at_unchecked(&self, x: usize, last: usize) -> i64 {
        if x <= last {
            self.heights[x]
        } else {
            let h = self.heights[last];
            if (x - last).is_multiple_of(2) {
                h
            } else {
                self.tail_partner(h)
            }
        }
    }

    fn tail_partner(&self, h: i64) -> i64 {
        if h == self.b {
            self.b + 1
        } else {
            self.b
        }
    }

    pub fn p(&self) -> i64 {
        self.p
    }
    pub fn pp(&self) -> i64 {
        self.pp
    }
    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }

    /// Heights `h_0..h_{L(h)}`.
    pub fn heights(&self) -> &[i64] {
        &self.heights
    }

    /// `L(h)`.
    pub fn horizon(&self) -> usize {
        self.heights.len() - 1
    }

    /// `h_x` for any `x`, continuing into the tail.
    pub fn height_at(&self, x: usize) -> i64 {
        self.height_at_unchecked(x, self.horizon())
    }

    /// `h_0..h_len-1`, continuing into the tail as needed.
    pub fn heights_through(&self, len: usize) -> Vec<i64> {
        (0..len).map(|x| self.height_at(x)).collect()
    }

    pub fn tail_is_dark(&self) -> bool {
        is_dark(self.p, self.pp, self.b)
    }

    fn classify_vertex(&self, prev: i64, cur: i64, next: i64, x: usize) -> VertexClass {
        let shape = Shape::of(prev, cur, next);
        let dark = is_dark(self.p, self.pp, cur.min(next));
        let scoring = if shape.is_straight() == dark {
            if cur > prev {
                Scoring::Up
            } else {
                Scoring::Down
            }
        } else {
            Scoring::None
        };
        VertexClass { x, shape, scoring }
    }

    /// Classification of vertices `1..=upto`.
    pub fn classify_through(&self, upto: usize) -> Vec<VertexClass> {
        let h = self.heights_through(upto + 2);
        (1..=upto).map(|x| self.classify_vertex(h[x - 1], h[x], h[x + 1], x)).collect()
    }

    /// Classification of vertices `1..=L(h)`; beyond that the tail vertices
    /// are non-scoring exactly when the tail band is dark.
    pub fn classify(&self) -> Vec<VertexClass> {
        self.classify_through(self.horizon())
    }

    /// `u_x = (x - h_x + a)/2`.
    pub fn u(&self, x: usize) -> i64 {
        let v = x as i64 - self.height_at(x) + self.a;
        debug_assert!(v % 2 == 0);
        v / 2
    }

    /// `v_x = (x + h_x - a)/2`.
    pub fn v(&self, x: usize) -> i64 {
        let v = x as i64 + self.height_at(x) - self.a;
        debug_assert!(v % 2 == 0);
        v / 2
    }

    fn contribution(&self, c: &VertexClass) -> i64 {
        debug_assert_eq!(self.u(c.x) + self.v(c.x), c.x as i64);
        match c.scoring {
            Scoring::Up => self.u(c.x),
            Scoring::Down => self.v(c.x),
            Scoring::None => 0,
        }
    }

    /// Per-vertex contributions of the scoring vertices, left to right.
    pub fn contributions(&self) -> Result<Vec<(usize, i64)>> {
        if !self.tail_is_dark() {
            return Err(Error::InfiniteWeight(self.b));
        }
        Ok(self
            .classify()
            .iter()
            .filter(|c| c.is_scoring())
            .map(|c| (c.x, self.contribution(c)))
            .collect())
    }

    pub fn weight(&self) -> Result<i64> {
        Ok(self.contributions()?.iter().map(|&(_, w)| w).sum())
    }

    /// The weight as a sum over edges: an edge into `x` going SE (NE) counts
    /// the up- (down-) scoring vertices strictly to its right.
    pub fn weight_edgewise(&self) -> Result<i64> {
        if !self.tail_is_dark() {
            return Err(Error::InfiniteWeight(self.b));
        }
        let cls = self.classify();
        let mut ups_right = 0i64;
        let mut downs_right = 0i64;
        let mut total = 0i64;
        for c in cls.iter().rev() {
            let x = c.x;
            let se = self.height_at(x) < self.height_at(x - 1);
            total += if se { ups_right } else { downs_right };
            match c.scoring {
                Scoring::Up => ups_right += 1,
                Scoring::Down => downs_right += 1,
                Scoring::None => {}
            }
        }
        Ok(total)
    }

    /// Number of scoring vertices.
    pub fn scoring_count(&self) -> usize {
        self.classify().iter().filter(|c| c.is_scoring()).count()
    }

    pub fn to_line(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for RsosPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h: Vec<String> = self.heights.iter().map(|h| h.to_string()).collect();
        write!(f, "rsos p={} pp={} a={} b={} h={}", self.p, self.pp, self.a, self.b, h.join(","))
    }
}

/// Parses `key=value` fields of a path line after its leading tag.
pub(crate) fn parse_fields<'a>(line: &'a str, tag: &str, keys: &[&str]) -> Result<Vec<&'a str>> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some(tag) {
        return Err(Error::Parse(format!("expected a line starting with `{tag}`")));
    }
    let fields: Vec<&str> = parts.collect();
    if fields.len() != keys.len() {
        return Err(Error::Parse(format!("expected fields {}", keys.join(" "))));
    }
    keys.iter()
        .zip(fields)
        .map(|(k, f)| {
            f.strip_prefix(k)
                .and_then(|r| r.strip_prefix('='))
                .ok_or_else(|| Error::Parse(format!("expected `{k}=...`, found `{f}`")))
        })
        .collect()
}

pub(crate) fn parse_int(s: &str) -> Result<i64> {
    s.parse::<i64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

pub(crate) fn parse_list(s: &str) -> Result<Vec<i64>> {
    s.split(',').map(parse_int).collect()
}

impl FromStr for RsosPath {
    type Err = Error;
    fn from_str(line: &str) -> Result<Self> {
        let f = parse_fields(line, "rsos", &["p", "pp", "a", "b", "h"])?;
        RsosPath::new(parse_int(f[0])?, parse_int(f[1])?, parse_int(f[2])?, parse_int(f[3])?, parse_list(f[4])?)
    }
}

/// Exhaustive search for the paths of `P^{p,p'}_{a,b}` up to a weight bound.
struct Search {
    p: i64,
    pp: i64,
    a: i64,
    b: i64,
    max: i64,
    horizon: usize,
    dark: Vec<bool>,
    heights: Vec<i64>,
    out: Vec<RsosPath>,
}

impl Search {
    fn in_tail(&self, h: i64) -> bool {
        h == self.b || h == self.b + 1
    }

    fn contribution(&self, x: usize, next: i64) -> i64 {
        let (prev, cur) = (self.heights[x - 1], self.heights[x]);
        let straight = next - cur == cur - prev;
        if straight != self.dark[cur.min(next) as usize] {
            return 0;
        }
        if cur > prev {
            (x as i64 - cur + self.a) / 2
        } else {
            (x as i64 + cur - self.a) / 2
        }
    }

    /// Smallest contribution any scoring vertex at position `>= x` can make.
    fn future_floor(&self, x: usize) -> i64 {
        ((x as i64 - (self.pp - 2) + 1) / 2).max(0)
    }

    fn run(&mut self, acc: i64) {
        let x = self.heights.len() - 1;
        let h = self.heights[x];
        if x.is_multiple_of(2) && self.in_tail(h) {
            let minimal = x == 0 || !(self.in_tail(self.heights[x - 1]) && self.in_tail(self.heights[x - 2]));
            if minimal {
                let next = if h == self.b { self.b + 1 } else { self.b };
                let total = if x == 0 { acc } else { acc + self.contribution(x, next) };
                if total <= self.max {
                    self.out.push(RsosPath {
                        p: self.p,
                        pp: self.pp,
                        a: self.a,
                        b: self.b,
                        heights: self.heights.clone(),
                    });
                }
            }
        }
        if x >= self.horizon {
            return;
        }
        for next in [h - 1, h + 1] {
            if !(1..self.pp).contains(&next) {
                continue;
            }
            let acc2 = if x == 0 { acc } else { acc + self.contribution(x, next) };
            if acc2 > self.max {
                continue;
            }
            if !self.in_tail(next) && acc2 + self.future_floor(x + 2) > self.max {
                continue;
            }
            self.heights.push(next);
            self.run(acc2);
            self.heights.pop();
        }
    }
}

/// The default search horizon `2N + |a-b| + 2p'`.
pub fn default_horizon(pp: i64, a: i64, b: i64, max_weight: usize) -> usize {
    2 * max_weight + (a - b).unsigned_abs() as usize + 2 * pp as usize
}

/// All paths of weight at most `max_weight` whose canonical horizon is at
/// most `horizon`, sorted by heights.
pub fn enumerate_with_horizon(
    p: i64,
    pp: i64,
    a: i64,
    b: i64,
    max_weight: usize,
    horizon: usize,
) -> Result<Vec<RsosPath>> {
    check_endpoints(p, pp, a, b)?;
    if !is_dark(p, pp, b) {
        return Err(Error::InfiniteWeight(b));
    }
    let mut dark = vec![false; pp as usize];
    for y in 1..=pp - 2 {
        dark[y as usize] = is_dark(p, pp, y);
    }
    let mut s = Search {
        p,
        pp,
        a,
        b,
        max: max_weight as i64,
        horizon,
        dark,
        heights: vec![a],
        out: Vec::new(),
    };
    s.run(0);
    s.out.sort();
    Ok(s.out)
}

/// The complete set `{h ∈ P^{p,p'}_{a,b} : wt(h) <= max_weight}`. The search
/// is repeated with a horizon two steps longer and must give the same set.
pub fn enumerate(p: i64, pp: i64, a: i64, b: i64, max_weight: usize) -> Result<Vec<RsosPath>> {
    let horizon = default_horizon(pp, a, b, max_weight);
    let paths = enumerate_with_horizon(p, pp, a, b, max_weight, horizon)?;
    let again = enumerate_with_horizon(p, pp, a, b, max_weight, horizon + 2)?;
    if paths != again {
        return Err(Error::Corrupted(format!(
            "enumeration of P^{{{p},{pp}}}_{{{a},{b}}} did not stabilize at horizon {horizon}"
        )));
    }
    Ok(paths)
}

/// `X^{p,p'}_{a,b}` through `q^order`.
pub fn generating_function(p: i64, pp: i64, a: i64, b: i64, order: usize) -> Result<QSeries> {
    let paths = enumerate(p, pp, a, b, order)?;
    weight_series(paths.iter().map(|h| h.weight().expect("dark tail")), order)
}

pub(crate) fn weight_series(weights: impl Iterator<Item = i64>, order: usize) -> Result<QSeries> {
    let mut counts = vec![0u64; order + 1];
    for w in weights {
        let w = usize::try_from(w).map_err(|_| Error::Corrupted(format!("negative weight {w}")))?;
        if w <= order {
            counts[w] += 1;
        }
    }
    Ok(QSeries::from_coeffs(counts))
}

/// The `r` with `b = ⌊r p'/p⌋`, if any.
pub fn tail_index(p: i64, pp: i64, b: i64) -> Option<i64> {
    (1..p).find(|r| r * pp / p == b)
}
