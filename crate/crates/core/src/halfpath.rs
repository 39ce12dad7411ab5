//! Half-lattice paths in doubled coordinates.
//!
//! Position `i` and height `H_i` stand for `x = i/2` and `ĥ_x = H_i/2`, so the
//! whole model is integral. Raw weights are kept in quarter-units: a straight
//! vertex at doubled position `i` adds `i` quarters (`x/2 = i/4`).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::rsos::{parse_fields, parse_int, parse_list, weight_series};

/// First invariant violated by a candidate half-lattice path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub index: Option<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "at index {i}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

fn violation(index: Option<usize>, message: impl Into<String>) -> Violation {
    Violation { index, message: message.into() }
}

/// Checks that `(T, A, B)` lie in the domain of the half-lattice model.
pub fn check_params(t2: i64, a: i64, b: i64) -> Result<()> {
    if t2 < 4 {
        return Err(Error::InvalidParameters(format!("need T >= 4, got {t2}")));
    }
    if a % 2 != 0 || b % 2 != 0 {
        return Err(Error::InvalidParameters(format!("A={a} and B={b} must be even")));
    }
    if !(2..=t2).contains(&a) || !(2..t2).contains(&b) {
        return Err(Error::InvalidParameters(format!(
            "need 2 <= A <= {t2} and 2 <= B <= {}, got A={a}, B={b}",
            t2 - 1
        )));
    }
    Ok(())
}

/// Checks every path invariant except canonical truncation.
pub fn validate_raw(t2: i64, a: i64, b: i64, h: &[i64]) -> std::result::Result<(), Violation> {
    check_params(t2, a, b).map_err(|e| violation(None, e.to_string()))?;
    if h.first() != Some(&a) {
        return Err(violation(Some(0), format!("path must start at A={a}")));
    }
    for (i, &v) in h.iter().enumerate() {
        if !(2..=t2).contains(&v) {
            return Err(violation(Some(i), format!("height {v} outside [2, {t2}]")));
        }
        if i > 0 && (v - h[i - 1]).abs() != 1 {
            return Err(violation(Some(i), "non-unit step"));
        }
    }
    let last = *h.last().unwrap();
    if last != b && last != b + 1 {
        return Err(violation(Some(h.len() - 1), format!("path does not end in the tail {{{b}, {}}}", b + 1)));
    }
    let tail_next = if last == b { b + 1 } else { b };
    for i in 0..h.len() {
        let prev = if i == 0 { a + 1 } else { h[i - 1] };
        let next = if i + 1 < h.len() { h[i + 1] } else { tail_next };
        if prev == next && next == h[i] + 1 && h[i] % 2 != 0 {
            return Err(violation(Some(i), format!("valley at half-integer height {}", h[i])));
        }
    }
    Ok(())
}

/// A path of `H^t_{â,b̂}` stored through its canonical doubled horizon `2L̂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HalfPath {
    t2: i64,
    a: i64,
    b: i64,
    h: Vec<i64>,
}

impl HalfPath {
    /// Validates and canonicalizes doubled heights (which may run into the
    /// tail).
    pub fn new(t2: i64, a: i64, b: i64, h: Vec<i64>) -> Result<Self> {
        validate_raw(t2, a, b, &h).map_err(|v| Error::InvalidPath(v.to_string()))?;
        let mut path = HalfPath { t2, a, b, h };
        path.canonicalize();
        Ok(path)
    }

    fn canonicalize(&mut self) {
        let (b, last) = (self.b, self.h.len() - 1);
        let mut start = last + 1;
        while start > 0 && (self.h[start - 1] == b || self.h[start - 1] == b + 1) {
            start -= 1;
        }
        let l = start + start % 2;
        if l > last {
            self.h.push(self.height_at(l));
        } else {
            self.h.truncate(l + 1);
        }
    }

    /// The ground state: a straight staircase from `A` to `B`, then the tail.
    pub fn ground_state(t2: i64, a: i64, b: i64) -> Result<Self> {
        check_params(t2, a, b)?;
        let step = if b >= a { 1 } else { -1 };
        let mut h = vec![a];
        while *h.last().unwrap() != b {
            h.push(h.last().unwrap() + step);
        }
        HalfPath::new(t2, a, b, h)
    }

    pub fn t2(&self) -> i64 {
        self.t2
    }
    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }

    /// Doubled heights `H_0..H_{2L̂}`.
    pub fn heights(&self) -> &[i64] {
        &self.h
    }

    /// The doubled horizon `2L̂`.
    pub fn horizon(&self) -> usize {
        self.h.len() - 1
    }

    /// `H_i` for any `i >= 0`, continuing into the tail.
    pub fn height_at(&self, i: usize) -> i64 {
        let last = self.h.len() - 1;
        if i <= last {
            return self.h[i];
        }
        let hl = self.h[last];
        if (i - last).is_multiple_of(2) {
            hl
        } else if hl == self.b {
            self.b + 1
        } else {
            self.b
        }
    }

    /// `H_{i-1}` with the start convention `H_{-1} = A + 1`.
    fn before(&self, i: usize) -> i64 {
        if i == 0 {
            self.a + 1
        } else {
            self.height_at(i - 1)
        }
    }

    pub fn heights_through(&self, len: usize) -> Vec<i64> {
        (0..len).map(|i| self.height_at(i)).collect()
    }

    pub fn is_straight(&self, i: usize) -> bool {
        self.before(i) != self.height_at(i + 1)
    }

    pub fn is_peak(&self, i: usize) -> bool {
        let h = self.height_at(i);
        self.before(i) == h - 1 && self.height_at(i + 1) == h - 1
    }

    pub fn is_valley(&self, i: usize) -> bool {
        let h = self.height_at(i);
        self.before(i) == h + 1 && self.height_at(i + 1) == h + 1
    }

    /// Doubled positions of the straight vertices (all lie at or before `2L̂`).
    pub fn straight_vertices(&self) -> Vec<usize> {
        (0..=self.horizon()).filter(|&i| self.is_straight(i)).collect()
    }

    /// Positions of the peaks left of `2L̂`.
    pub fn peaks(&self) -> Vec<usize> {
        (0..self.horizon()).filter(|&i| self.is_peak(i)).collect()
    }

    /// `4·ŵ°`: the sum of the doubled positions of straight vertices.
    pub fn raw_weight(&self) -> i64 {
        self.straight_vertices().iter().map(|&i| i as i64).sum()
    }

    /// `ŵt = ŵ°(ĥ) - ŵ°(ground state)`.
    pub fn weight(&self) -> Result<i64> {
        let gs = HalfPath::ground_state(self.t2, self.a, self.b)?;
        normalize(self.raw_weight() - gs.raw_weight())
    }

    /// The weight computed on the path extended leftwards by a straight run
    /// from `B` to `A`, using the start convention at the extension's origin.
    pub fn weight_extended(&self) -> Result<i64> {
        let e = (self.a - self.b).abs();
        let step = if self.a >= self.b { 1 } else { -1 };
        let mut ext: Vec<i64> = (0..e).map(|k| self.b + step * k).collect();
        ext.extend(self.heights_through(self.h.len() + 1));
        let prev0 = self.b + 1;
        let mut total = 0i64;
        for j in 0..ext.len() - 1 {
            let prev = if j == 0 { prev0 } else { ext[j - 1] };
            if prev != ext[j + 1] {
                total += j as i64 - e;
            }
        }
        normalize(total)
    }

    pub fn to_line(&self) -> String {
        self.to_string()
    }
}

fn normalize(quarters: i64) -> Result<i64> {
    if quarters < 0 || quarters % 4 != 0 {
        return Err(Error::Corrupted(format!("normalized raw weight {quarters}/4 is not a nonnegative integer")));
    }
    Ok(quarters / 4)
}

impl fmt::Display for HalfPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h: Vec<String> = self.h.iter().map(|v| v.to_string()).collect();
        write!(f, "half T={} A={} B={} H={}", self.t2, self.a, self.b, h.join(","))
    }
}

impl FromStr for HalfPath {
    type Err = Error;
    fn from_str(line: &str) -> Result<Self> {
        let f = parse_fields(line, "half", &["T", "A", "B", "H"])?;
        HalfPath::new(parse_int(f[0])?, parse_int(f[1])?, parse_int(f[2])?, parse_list(f[3])?)
    }
}

struct Search {
    t2: i64,
    a: i64,
    b: i64,
    max_raw: i64,
    horizon: usize,
    h: Vec<i64>,
    out: Vec<HalfPath>,
}

impl Search {
    fn in_tail(&self, v: i64) -> bool {
        v == self.b || v == self.b + 1
    }

    fn prev(&self, i: usize) -> i64 {
        if i == 0 {
            self.a + 1
        } else {
            self.h[i - 1]
        }
    }

    fn run(&mut self, acc: i64) {
        let i = self.h.len() - 1;
        let cur = self.h[i];
        if i.is_multiple_of(2) && cur == self.b {
            let minimal = i == 0 || !(self.in_tail(self.h[i - 1]) && self.in_tail(self.h[i - 2]));
            if minimal {
                let straight = self.prev(i) != self.b + 1;
                let total = acc + if straight { i as i64 } else { 0 };
                if total <= self.max_raw {
                    self.out.push(HalfPath { t2: self.t2, a: self.a, b: self.b, h: self.h.clone() });
                }
            }
        }
        if i >= self.horizon {
            return;
        }
        let prev = self.prev(i);
        for next in [cur - 1, cur + 1] {
            if !(2..=self.t2).contains(&next) {
                continue;
            }
            if prev == next && next == cur + 1 && cur % 2 != 0 {
                continue;
            }
            let acc2 = acc + if prev != next { i as i64 } else { 0 };
            if acc2 > self.max_raw {
                continue;
            }
            // Leaving the tail band forces a later straight vertex at >= i+1.
            if !self.in_tail(next) && acc2 + i as i64 + 1 > self.max_raw {
                continue;
            }
            self.h.push(next);
            self.run(acc2);
            self.h.pop();
        }
    }
}

/// The search horizon: the larger of `4N + 2|A-B| + 8` and the bound
/// `4N + 4ŵ°(gs) + 2` implied by the last straight vertex.
pub fn default_horizon(t2: i64, a: i64, b: i64, max_weight: usize) -> Result<usize> {
    let gs = HalfPath::ground_state(t2, a, b)?.raw_weight() as usize;
    let n = max_weight;
    Ok((4 * n + 2 * (a - b).unsigned_abs() as usize + 8).max(4 * n + gs + 2))
}

pub fn enumerate_with_horizon(t2: i64, a: i64, b: i64, max_weight: usize, horizon: usize) -> Result<Vec<HalfPath>> {
    let gs = HalfPath::ground_state(t2, a, b)?;
    let mut s = Search {
        t2,
        a,
        b,
        max_raw: 4 * max_weight as i64 + gs.raw_weight(),
        horizon,
        h: vec![a],
        out: Vec::new(),
    };
    s.run(0);
    s.out.sort();
    Ok(s.out)
}

/// The complete set `{ĥ ∈ H^t_{â,b̂} : ŵt(ĥ) <= max_weight}`, checked for
/// stability under a longer horizon.
pub fn enumerate(t2: i64, a: i64, b: i64, max_weight: usize) -> Result<Vec<HalfPath>> {
    let horizon = default_horizon(t2, a, b, max_weight)?;
    let paths = enumerate_with_horizon(t2, a, b, max_weight, horizon)?;
    let again = enumerate_with_horizon(t2, a, b, max_weight, horizon + 2)?;
    if paths != again {
        return Err(Error::Corrupted(format!(
            "enumeration of H (T={t2}, A={a}, B={b}) did not stabilize at horizon {horizon}"
        )));
    }
    Ok(paths)
}

/// `Y^t_{â,b̂}` through `q^order`.
pub fn generating_function(t2: i64, a: i64, b: i64, order: usize) -> Result<QSeries> {
    let paths = enumerate(t2, a, b, order)?;
    let weights = paths.iter().map(|p| p.weight()).collect::<Result<Vec<_>>>()?;
    weight_series(weights.into_iter(), order)
}

/// All `(A, B)` pairs of the domain for a given `T`.
pub fn endpoint_pairs(t2: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for a in (2..=t2).step_by(2) {
        for b in (2..t2).step_by(2) {
            out.push((a, b));
        }
    }
    out
}
