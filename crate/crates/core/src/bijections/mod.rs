//! The two weight-preserving bijections between RSOS paths and half-lattice
//! paths:
//!
//! * [`bij1_forward`]/[`bij1_inverse`]: `P^{p,2p+1}_{a,b} ↔ H^p_{a/2,b/2}`;
//! * [`bij2_forward`]/[`bij2_inverse`]: `P^{p,2p-1}_{a,b-1} ↔ H^{p-1/2}_{b/2,a/2}`.
//!
//! Both directions expose every intermediate object in a trace.

mod bij1;
mod bij2;

pub use bij1::{bij1_forward, bij1_inverse, Bij1Trace};
pub use bij2::{accretion_vertices, bij2_forward, bij2_inverse, Bij2Trace};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::halfpath::HalfPath;
use crate::rsos::{RsosPath, VertexClass};

/// A weakly decreasing sequence of nonnegative integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<i64>);

impl Partition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.iter().any(|&x| x < 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Corrupted(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_strict(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    /// Multiplicity of each part size `j`, i.e. `f_j`.
    pub fn frequency(&self, j: i64) -> usize {
        self.0.iter().filter(|&&x| x == j).count()
    }
}

/// Which bijection applies to a path, inferred from `p'` or `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    /// `p' = 2p+1`, even `T`.
    Plus,
    /// `p' = 2p-1`, odd `T`.
    Minus,
}

impl Family {
    pub fn of_rsos(h: &RsosPath) -> Result<Family> {
        match h.pp() - 2 * h.p() {
            1 => Ok(Family::Plus),
            -1 => Ok(Family::Minus),
            _ => Err(Error::InvalidParameters(format!("p'={} is neither 2p+1 nor 2p-1 for p={}", h.pp(), h.p()))),
        }
    }

    pub fn of_half(h: &HalfPath) -> Family {
        if h.t2() % 2 == 0 {
            Family::Plus
        } else {
            Family::Minus
        }
    }
}

/// Runs of consecutive vertices satisfying `pred`, paired left to right; each
/// returned value is the first vertex of a pair.
pub(crate) fn paired_runs(cls: &[VertexClass], pred: impl Fn(&VertexClass) -> bool) -> Vec<usize> {
    let mut firsts = Vec::new();
    let mut run: Vec<usize> = Vec::new();
    let flush = |run: &mut Vec<usize>, firsts: &mut Vec<usize>| {
        firsts.extend(run.chunks_exact(2).map(|c| c[0]));
        run.clear();
    };
    for c in cls {
        if pred(c) && run.last().is_none_or(|&x| x + 1 == c.x) {
            run.push(c.x);
        } else {
            flush(&mut run, &mut firsts);
            if pred(c) {
                run.push(c.x);
            }
        }
    }
    flush(&mut run, &mut firsts);
    firsts
}

/// Removes vertices `x` and `x+1` for each listed `x`.
pub(crate) fn delete_pairs(h: &[i64], firsts: &[usize]) -> Vec<i64> {
    let mut drop = vec![false; h.len()];
    for &x in firsts {
        drop[x] = true;
        drop[x + 1] = true;
    }
    h.iter().zip(drop).filter(|(_, d)| !d).map(|(&v, _)| v).collect()
}

/// After each vertex `z`, inserts `count[z]` copies of the two entries
/// `(h_z + δ(h_z), h_z)`.
pub(crate) fn insert_pairs(h: &[i64], count: &[usize], delta: impl Fn(i64) -> i64) -> Vec<i64> {
    let mut out = Vec::with_capacity(h.len() + 2 * count.iter().sum::<usize>());
    for (z, &v) in h.iter().enumerate() {
        out.push(v);
        for _ in 0..count.get(z).copied().unwrap_or(0) {
            out.push(v + delta(v));
            out.push(v);
        }
    }
    out
}

/// The first `n` peak positions of a half-lattice path, tail peaks included.
pub(crate) fn peak_positions(h: &HalfPath, n: usize) -> Vec<usize> {
    let mut peaks = h.peaks();
    let mut i = h.horizon() + 1;
    while peaks.len() < n {
        if h.is_peak(i) {
            peaks.push(i);
        }
        i += 1;
    }
    peaks
}

/// Heightens the peaks with the given 1-based left-to-right numbers.
pub(crate) fn heighten_peaks(h: &HalfPath, numbers: &[i64]) -> Result<HalfPath> {
    let Some(&top) = numbers.iter().max() else {
        return Ok(h.clone());
    };
    if numbers.iter().any(|&m| m < 1) {
        return Err(Error::Corrupted(format!("peak numbers {numbers:?} must be positive")));
    }
    let peaks = peak_positions(h, top as usize);
    let len = peaks[top as usize - 1] + 3;
    let base = h.heights_through(len.max(h.horizon() + 3));
    let mut count = vec![0usize; base.len()];
    for &m in numbers {
        count[peaks[m as usize - 1]] += 1;
    }
    if count.iter().any(|&c| c > 1) {
        return Err(Error::Corrupted(format!("peak numbers {numbers:?} repeat")));
    }
    HalfPath::new(h.t2(), h.a(), h.b(), insert_pairs(&base, &count, |_| 1))
}

/// Deletes the insertion `(H+1, H)` around each listed peak.
pub(crate) fn lower_peaks(h: &HalfPath, peaks: &[usize]) -> Result<HalfPath> {
    let base = h.heights_through(h.horizon() + 3);
    HalfPath::new(h.t2(), h.a(), h.b(), delete_pairs(&base, peaks))
}

pub(crate) fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Corrupted(what()))
    }
}

/// Re-labels a validation failure of an internally built object as
/// structural corruption.
pub(crate) fn internal<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::InvalidPath(m) | Error::InvalidParameters(m) => Error::Corrupted(m),
        other => other,
    })
}
