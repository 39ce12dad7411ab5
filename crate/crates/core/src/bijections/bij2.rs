use serde::Serialize;

use super::{delete_pairs, ensure, heighten_peaks, insert_pairs, internal, lower_peaks, paired_runs, Partition};
use crate::error::{Error, Result};
use crate::halfpath::HalfPath;
use crate::rsos::{RsosPath, Shape};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bij2Trace {
    pub n: usize,
    /// Scoring vertices of `h^cut` (equal to those of `h`).
    pub k: usize,
    /// Scoring peaks of `h^cut`.
    pub m: usize,
    pub c: usize,
    pub d: usize,
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub h_cut: RsosPath,
    /// Straight vertices of `ĥ^cut`.
    pub ell: usize,
    pub h_hat_cut: HalfPath,
    pub h_hat_int: HalfPath,
    pub h_hat: HalfPath,
}

fn check_family(h: &RsosPath) -> Result<()> {
    let (p, a, b) = (h.p(), h.a(), h.b() + 1);
    if h.pp() != 2 * p - 1 || p < 3 {
        return Err(Error::InvalidParameters(format!("need p' = 2p-1 with p >= 3, got p={p}, p'={}", h.pp())));
    }
    let ok = |v: i64| v % 2 == 0 && 1 < v && v < 2 * p - 1;
    if !ok(a) || !ok(b) {
        return Err(Error::InvalidParameters(format!(
            "need even start and even tail+1 in (1, {}), got start {a}, tail {}",
            2 * p - 1,
            h.b()
        )));
    }
    Ok(())
}

/// Accretion vertices of a half-lattice path: even positions `i` such that
/// neither `i` nor `i+1` is a peak, listed from the right.
pub fn accretion_vertices(h: &HalfPath) -> Vec<usize> {
    (0..=h.horizon()).rev().filter(|&i| i % 2 == 0 && !h.is_peak(i) && !h.is_peak(i + 1)).collect()
}

fn interior_peaks(seq: &[i64]) -> Vec<usize> {
    (1..seq.len().saturating_sub(1)).filter(|&j| seq[j - 1] == seq[j] - 1 && seq[j + 1] == seq[j] - 1).collect()
}

/// Maps `h ∈ P^{p,2p-1}_{a,b-1}` to `ĥ ∈ H^{p-1/2}_{b/2,a/2}` of the same
/// weight.
pub fn bij2_forward(h: &RsosPath) -> Result<(HalfPath, Bij2Trace)> {
    check_family(h)?;
    let (p, a, b) = (h.p(), h.a(), h.b() + 1);
    let wt = h.weight()?;
    let cls = h.classify();
    let scoring: Vec<usize> = cls.iter().filter(|c| c.is_scoring()).map(|c| c.x).collect();
    let k = scoring.len();
    let last = scoring.last().copied().unwrap_or(0);

    // Particles: adjacent non-scoring pairs numbered from the left; those past
    // the last scoring vertex form the inert sea.
    let firsts = paired_runs(&cls[..last.saturating_sub(1)], |c| !c.is_scoring());
    for &x in &firsts {
        ensure(!cls[x - 1].shape.is_straight(), || format!("particle at x={x} does not start at a peak or valley"))?;
    }
    let n = firsts.len();
    let lambda = Partition::new(
        firsts.iter().map(|&x| scoring.iter().filter(|&&s| s > x + 1).count() as i64).collect(),
    )?;

    let cut = delete_pairs(&h.heights_through(h.horizon() + 3), &firsts);
    let h_cut = internal(RsosPath::new(p, h.pp(), a, b - 1, cut))?;
    let cut_cls = h_cut.classify();
    let k_cut = cut_cls.iter().filter(|c| c.is_scoring()).count();
    ensure(k_cut == k, || format!("removing particles changed the scoring count {k} -> {k_cut}"))?;
    let m = cut_cls.iter().filter(|c| c.is_scoring() && c.shape == Shape::Peak).count();
    let wt_cut = h_cut.weight()?;
    ensure(wt_cut == wt - lambda.sum(), || format!("wt(h^cut)={wt_cut} but wt(h)={wt}, Σλ={}", lambda.sum()))?;

    let (k_i, m_i) = (k as i64, m as i64);
    let l = lambda.parts();
    let c = (1..=n).take_while(|&i| l[i - 1] - i as i64 >= k_i - m_i).count();
    let mu = Partition::new((1..=c).map(|i| l[i - 1] - i as i64 - k_i + m_i + 1).collect())?;
    let nu = Partition::new(l[c..].to_vec())?;
    let d = nu.len();

    // Flip: reverse the truncated h^cut and heighten all of its peaks.
    let mut rev: Vec<i64> = h_cut.heights().to_vec();
    rev.reverse();
    let mut count = vec![0usize; rev.len()];
    for j in interior_peaks(&rev) {
        count[j] = 1;
    }
    let h_hat_cut = internal(HalfPath::new(2 * p - 1, b, a, insert_pairs(&rev, &count, |_| 1)))?;
    let ell = h_hat_cut.straight_vertices().len();
    ensure(ell == 2 * k - 2 * m, || format!("ĥ^cut has {ell} straight vertices, expected 2k-2m={}", 2 * k - 2 * m))?;
    let wt_hat_cut = h_hat_cut.weight()?;
    ensure(wt_hat_cut == wt_cut, || format!("ŵt(ĥ^cut)={wt_hat_cut} but wt(h^cut)={wt_cut}"))?;

    let finite_peaks = h_hat_cut.peaks().len() as i64;
    ensure(mu.parts().first().is_none_or(|&m1| m1 <= finite_peaks), || {
        format!("μ={:?} reaches past the {finite_peaks} peaks of ĥ^cut", mu.parts())
    })?;
    let h_hat_int = internal(heighten_peaks(&h_hat_cut, mu.parts()))?;
    let wt_int = h_hat_int.weight()?;
    let c_i = c as i64;
    let deeper = wt_hat_cut + c_i * (ell as i64 + c_i - 1) / 2 + mu.sum();
    ensure(wt_int == deeper, || format!("ŵt(ĥ^int)={wt_int} but the heightening formula gives {deeper}"))?;

    let accretion = accretion_vertices(&h_hat_int);
    check_accretion_counts(&h_hat_int, &accretion)?;
    ensure(nu.parts().first().is_none_or(|&v| v as usize <= accretion.len()), || {
        format!("ν={:?} exceeds the {} accretion vertices", nu.parts(), accretion.len())
    })?;
    let base = h_hat_int.heights_through(h_hat_int.horizon() + 3);
    let mut count = vec![0usize; base.len()];
    for &v in nu.parts() {
        count[accretion[v as usize - 1]] += 1;
    }
    let h_hat = internal(HalfPath::new(2 * p - 1, b, a, insert_pairs(&base, &count, |_| 1)))?;
    let wt_hat = h_hat.weight()?;
    ensure(wt_hat == wt_int + nu.sum(), || format!("ŵt(ĥ)={wt_hat} but ŵt(ĥ^int)+Σν={}", wt_int + nu.sum()))?;
    ensure(wt_hat == wt, || format!("weight not preserved: {wt} -> {wt_hat}"))?;

    let trace = Bij2Trace { n, k, m, c, d, lambda, mu, nu, h_cut, ell, h_hat_cut, h_hat_int, h_hat: h_hat.clone() };
    Ok((h_hat, trace))
}

/// The `j`-th accretion vertex from the right has `2j` straight vertices to
/// its right, or `2j-1` if it is itself straight-down.
fn check_accretion_counts(h: &HalfPath, accretion: &[usize]) -> Result<()> {
    let straight = h.straight_vertices();
    for (idx, &i) in accretion.iter().enumerate() {
        let j = idx + 1;
        let right = straight.iter().filter(|&&s| s > i).count();
        let down = h.is_straight(i) && h.height_at(i + 1) < h.height_at(i);
        let expect = if down { 2 * j - 1 } else { 2 * j };
        ensure(right == expect, || format!("accretion vertex {j} at {i} has {right} straight vertices to its right"))?;
    }
    Ok(())
}

/// Inverse of [`bij2_forward`].
pub fn bij2_inverse(h_hat: &HalfPath) -> Result<RsosPath> {
    let t2 = h_hat.t2();
    if t2 % 2 == 0 || t2 < 5 {
        return Err(Error::InvalidParameters(format!("need odd T >= 5, got {t2}")));
    }
    let (p, pp) = ((t2 + 1) / 2, t2);
    let (a, b) = (h_hat.b(), h_hat.a());

    // Insertions at accretion vertices: non-integer peaks whose neighbours
    // are not both straight, removed right to left.
    let hor = h_hat.horizon();
    let mut kept = h_hat.heights_through(hor + 3);
    let mut sites: Vec<usize> = Vec::new();
    let straight = |h: &[i64], i: usize| (h[i + 1] - h[i]) == (h[i] - h[i - 1]);
    for j in (1..hor).rev() {
        let peak = kept[j - 1] == kept[j] - 1 && kept[j + 1] == kept[j] - 1;
        let flanked = j >= 2 && straight(&kept, j - 1) && straight(&kept, j + 1);
        if kept[j] % 2 != 0 && peak && !flanked {
            kept.drain(j..j + 2);
            for s in sites.iter_mut().filter(|s| **s > j) {
                *s -= 2;
            }
            sites.push(j - 1);
        }
    }
    let h_hat_int = internal(HalfPath::new(t2, b, a, kept))?;
    let accretion = accretion_vertices(&h_hat_int);
    let mut nu = sites
        .iter()
        .map(|z| accretion.iter().position(|v| v == z).map(|j| j as i64 + 1))
        .collect::<Option<Vec<i64>>>()
        .ok_or_else(|| Error::Corrupted("an insertion does not sit at an accretion vertex".into()))?;
    nu.sort_unstable_by(|x, y| y.cmp(x));

    // Remaining non-integer peaks are the heightened ones.
    let peaks = h_hat_int.peaks();
    let heightened: Vec<(i64, usize)> = peaks
        .iter()
        .enumerate()
        .filter(|(_, &j)| h_hat_int.height_at(j) % 2 != 0)
        .map(|(idx, &j)| (idx as i64 + 1, j))
        .collect();
    let mu: Vec<i64> = heightened.iter().rev().map(|&(num, _)| num).collect();
    let c = mu.len();
    let positions: Vec<usize> = heightened.iter().map(|&(_, j)| j).collect();
    let h_hat_cut = internal(lower_peaks(&h_hat_int, &positions))?;

    // Undo the flip.
    let cut_peaks = h_hat_cut.peaks();
    ensure(cut_peaks.iter().all(|&j| h_hat_cut.height_at(j) % 2 == 0), || "ĥ^cut has a non-integer peak".into())?;
    let mut seq = delete_pairs(h_hat_cut.heights(), &cut_peaks);
    seq.reverse();
    let h_cut = internal(RsosPath::new(p, pp, a, b - 1, seq))?;
    let cls = h_cut.classify();
    let scoring: Vec<usize> = cls.iter().filter(|c| c.is_scoring()).map(|c| c.x).collect();
    let k = scoring.len() as i64;
    let m = cls.iter().filter(|c| c.is_scoring() && c.shape == Shape::Peak).count() as i64;

    let mut lambda: Vec<i64> = mu.iter().enumerate().map(|(i, &v)| v + i as i64 + 1 + k - m - 1).collect();
    lambda.extend(&nu);
    let lambda = Partition::new(lambda)?;
    ensure(lambda.parts().iter().all(|&l| 1 <= l && l <= k), || {
        format!("λ={:?} out of range for k={k} (c={c})", lambda.parts())
    })?;

    // Particle i goes right after the scoring vertex with λ_i scoring vertices
    // to its right (the startpoint when λ_i = k), in a dark band.
    let base = h_cut.heights_through(h_cut.horizon() + 3);
    let mut count = vec![0usize; base.len()];
    for &l in lambda.parts() {
        let z = if l == k { 0 } else { scoring[(k - l - 1) as usize] };
        count[z] += 1;
    }
    // Dark bands have odd floors when p' = 2p-1.
    let h = insert_pairs(&base, &count, |v| if v % 2 == 0 { -1 } else { 1 });
    internal(RsosPath::new(p, pp, a, b - 1, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn second_path() -> RsosPath {
        RsosPath::new(
            4,
            7,
            6,
            1,
            vec![
                6, 5, 6, 5, 6, 5, 4, 3, 4, 3, 4, 5, 4, 3, 2, 1, 2, 3, 2, 3, 4, 5, 6, 5, 6, 5, 4, 3, 2, 1, 2, 3, 2, 1,
                2, 1,
            ],
        )
        .unwrap()
    }

    fn half(h: &[i64]) -> HalfPath {
        HalfPath::new(7, 2, 6, h.to_vec()).unwrap()
    }

    #[test]
    fn running_example_forward() {
        let (h_hat, tr) = bij2_forward(&second_path()).unwrap();
        assert_eq!((tr.n, tr.k, tr.m, tr.c, tr.d), (8, 12, 4, 3, 5));
        assert_eq!(tr.lambda.parts(), &[12, 12, 11, 11, 8, 4, 4, 2]);
        assert_eq!(tr.mu.parts(), &[4, 3, 1]);
        assert_eq!(tr.nu.parts(), &[11, 8, 4, 4, 2]);
        assert_eq!(tr.h_cut.heights(), &[6, 5, 4, 5, 4, 3, 2, 3, 2, 3, 4, 5, 4, 3, 2, 3, 2]);
        assert_eq!(
            tr.h_hat_cut,
            half(&[2, 3, 4, 3, 2, 3, 4, 5, 6, 5, 4, 3, 2, 3, 4, 3, 2, 3, 4, 5, 6, 5, 4, 5, 6])
        );
        assert_eq!(
            tr.h_hat_int,
            half(&[2, 3, 4, 5, 4, 3, 2, 3, 4, 5, 6, 5, 4, 3, 2, 3, 4, 5, 4, 3, 2, 3, 4, 5, 6, 7, 6, 5, 4, 5, 6, 7, 6])
        );
        assert_eq!(accretion_vertices(&tr.h_hat_int), vec![28, 26, 22, 20, 18, 14, 12, 8, 6, 4, 0]);
        let expect = half(&[
            2, 3, 2, 3, 4, 5, 4, 3, 2, 3, 4, 5, 4, 5, 6, 5, 4, 3, 2, 3, 4, 5, 4, 3, 2, 3, 2, 3, 2, 3, 4, 5, 6, 7, 6,
            7, 6, 5, 4, 5, 6, 7, 6, 7, 6, 7, 6,
        ]);
        assert_eq!(h_hat, expect);
        assert_eq!(h_hat.raw_weight(), 458);
        assert_eq!(h_hat.weight().unwrap(), 112);
    }

    #[test]
    fn running_example_inverse() {
        let (h_hat, _) = bij2_forward(&second_path()).unwrap();
        assert_eq!(bij2_inverse(&h_hat).unwrap(), second_path());
    }

    #[test]
    fn sea_only_path() {
        // Start 4, tail 3: straight to the tail, nothing to remove.
        let h = RsosPath::new(4, 7, 4, 3, vec![4]).unwrap();
        let (h_hat, tr) = bij2_forward(&h).unwrap();
        assert_eq!((tr.n, tr.c, tr.d), (0, 0, 0));
        assert_eq!(bij2_inverse(&h_hat).unwrap(), h);
    }
}
