use serde::Serialize;

use super::{delete_pairs, ensure, heighten_peaks, insert_pairs, internal, lower_peaks, paired_runs, Partition};
use crate::error::{Error, Result};
use crate::halfpath::HalfPath;
use crate::rsos::RsosPath;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bij1Trace {
    /// Scoring vertices of `h`.
    pub k: usize,
    pub n: usize,
    pub lambda: Partition,
    pub mu: Partition,
    pub h_cut: RsosPath,
    /// Straight vertices of `ĥ^cut`.
    pub ell: usize,
    pub h_hat_cut: HalfPath,
    pub h_hat: HalfPath,
}

fn check_family(h: &RsosPath) -> Result<()> {
    let (p, a, b) = (h.p(), h.a(), h.b());
    if h.pp() != 2 * p + 1 {
        return Err(Error::InvalidParameters(format!("need p' = 2p+1, got p={p}, p'={}", h.pp())));
    }
    if a % 2 != 0 || b % 2 != 0 || !(2..=2 * p).contains(&a) || !(2..2 * p).contains(&b) {
        return Err(Error::InvalidParameters(format!("need even 1 < a <= {}, 1 < b < {}, got a={a}, b={b}", 2 * p, 2 * p)));
    }
    Ok(())
}

/// Maps `h ∈ P^{p,2p+1}_{a,b}` to `ĥ ∈ H^p_{a/2,b/2}` of the same weight.
pub fn bij1_forward(h: &RsosPath) -> Result<(HalfPath, Bij1Trace)> {
    check_family(h)?;
    let wt = h.weight()?;
    let cls = h.classify();
    let k = cls.iter().filter(|c| c.is_scoring()).count();

    // Particles: adjacent scoring pairs, numbered from the right.
    let mut firsts = paired_runs(&cls, |c| c.is_scoring());
    for &x in &firsts {
        ensure(!cls[x - 1].shape.is_straight(), || format!("particle at x={x} does not start at a peak or valley"))?;
    }
    let n = firsts.len();
    let non_scoring_before = |x: usize| cls[..x - 1].iter().filter(|c| !c.is_scoring()).count() as i64;
    firsts.reverse();
    let lambda = Partition::new(firsts.iter().map(|&x| non_scoring_before(x)).collect())?;

    let cut = delete_pairs(&h.heights_through(h.horizon() + 3), &firsts);
    let h_cut = internal(RsosPath::new(h.p(), h.pp(), h.a(), h.b(), cut))?;
    let cut_cls = h_cut.classify();
    let k_cut = cut_cls.iter().filter(|c| c.is_scoring()).count();
    ensure(k_cut + 2 * n == k, || format!("removing {n} particles left {k_cut} of {k} scoring vertices"))?;
    ensure(
        cut_cls.windows(2).all(|w| !(w[0].is_scoring() && w[1].is_scoring())),
        || "h^cut still has adjacent scoring vertices".into(),
    )?;
    let wt_cut = h_cut.weight()?;
    let (n_i, k_i) = (n as i64, k as i64);
    ensure(wt_cut == wt - lambda.sum() - n_i * (k_i - n_i), || {
        format!("wt(h^cut)={wt_cut} but wt(h)={wt}, Σλ={}, n={n}, k={k}", lambda.sum())
    })?;

    let h_hat_cut = internal(HalfPath::new(2 * h.p(), h.a(), h.b(), h_cut.heights().to_vec()))?;
    let ell = h_hat_cut.straight_vertices().len();
    ensure(ell == 2 * k_cut, || format!("ĥ^cut has {ell} straight vertices, expected {}", 2 * k_cut))?;
    let wt_hat_cut = h_hat_cut.weight()?;
    ensure(wt_hat_cut == wt_cut, || format!("ŵt(ĥ^cut)={wt_hat_cut} but wt(h^cut)={wt_cut}"))?;

    let mu = Partition::new(
        lambda.parts().iter().enumerate().map(|(i, &l)| l + n_i - i as i64).collect(),
    )?;
    ensure(mu.is_strict(), || format!("μ={:?} has repeated parts", mu.parts()))?;
    let h_hat = internal(heighten_peaks(&h_hat_cut, mu.parts()))?;
    let wt_hat = h_hat.weight()?;
    let deeper = wt_hat_cut + n_i * (ell as i64 + n_i - 1) / 2 + mu.sum();
    ensure(wt_hat == deeper, || format!("ŵt(ĥ)={wt_hat} but the heightening formula gives {deeper}"))?;
    ensure(wt_hat == wt, || format!("weight not preserved: {wt} -> {wt_hat}"))?;

    let trace = Bij1Trace { k, n, lambda, mu, h_cut, ell, h_hat_cut, h_hat: h_hat.clone() };
    Ok((h_hat, trace))
}

/// Inverse of [`bij1_forward`].
pub fn bij1_inverse(h_hat: &HalfPath) -> Result<RsosPath> {
    let t2 = h_hat.t2();
    if t2 % 2 != 0 {
        return Err(Error::InvalidParameters(format!("need even T, got {t2}")));
    }
    let (p, pp) = (t2 / 2, t2 + 1);

    // Integer-height peaks are the heightened ones.
    let peaks = h_hat.peaks();
    let integer: Vec<(usize, usize)> = peaks
        .iter()
        .enumerate()
        .filter(|(_, &j)| h_hat.height_at(j) % 2 == 0)
        .map(|(idx, &j)| (idx + 1, j))
        .collect();
    let n = integer.len() as i64;
    let mu: Vec<i64> = integer.iter().rev().map(|&(num, _)| num as i64).collect();
    let lambda = Partition::new(mu.iter().enumerate().map(|(i, &m)| m - n + i as i64).collect())
        .map_err(|_| Error::Corrupted(format!("μ={mu:?} gives no valid λ")))?;
    let positions: Vec<usize> = integer.iter().map(|&(_, j)| j).collect();
    let h_hat_cut = internal(lower_peaks(h_hat, &positions))?;
    let h_cut = internal(RsosPath::new(p, pp, h_hat.a(), h_hat.b(), h_hat_cut.heights().to_vec()))?;

    // Particle i goes right after the λ_i-th non-scoring vertex (vertex 0 if
    // λ_i = 0), in the light band adjacent to that vertex.
    let need = lambda.parts().first().copied().unwrap_or(0) as usize;
    let upto = h_cut.horizon() + need + 2;
    let non_scoring: Vec<usize> = h_cut.classify_through(upto).iter().filter(|c| !c.is_scoring()).map(|c| c.x).collect();
    let base = h_cut.heights_through(upto + 3);
    let mut count = vec![0usize; base.len()];
    for &l in lambda.parts() {
        let z = if l == 0 { 0 } else { non_scoring[l as usize - 1] };
        count[z] += 1;
    }
    // Light bands have odd floors when p' = 2p+1.
    let h = insert_pairs(&base, &count, |v| if v % 2 != 0 { 1 } else { -1 });
    internal(RsosPath::new(p, pp, h_hat.a(), h_hat.b(), h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running_path() -> RsosPath {
        RsosPath::new(4, 9, 8, 6, vec![8, 7, 6, 5, 6, 5, 4, 3, 2, 3, 2, 1, 2, 3, 4, 5, 4, 3, 4, 5, 6, 5, 6, 7, 6, 7, 6])
            .unwrap()
    }

    fn running_image() -> HalfPath {
        HalfPath::new(
            8,
            8,
            6,
            vec![
                8, 7, 6, 5, 4, 3, 2, 3, 2, 3, 4, 5, 6, 5, 4, 5, 6, 7, 6, 7, 6, 7, 6, 7, 6, 7, 8, 7, 6, 7, 6, 7, 6, 7,
                6, 7, 8, 7, 6, 7, 6, 7, 8, 7, 6, 7, 6,
            ],
        )
        .unwrap()
    }

    #[test]
    fn running_example_forward() {
        let (h_hat, tr) = bij1_forward(&running_path()).unwrap();
        assert_eq!(tr.n, 4);
        assert_eq!(tr.lambda.parts(), &[9, 8, 5, 1]);
        assert_eq!(tr.mu.parts(), &[13, 11, 7, 2]);
        assert_eq!(tr.h_cut.heights(), &[8, 7, 6, 5, 4, 3, 2, 3, 2, 3, 4, 5, 4, 5, 6]);
        assert_eq!(h_hat, running_image());
        assert_eq!(h_hat.raw_weight(), 297);
        assert_eq!(h_hat.weight().unwrap(), 74);
    }

    #[test]
    fn running_example_inverse() {
        assert_eq!(bij1_inverse(&running_image()).unwrap(), running_path());
    }

    #[test]
    fn particle_free_path_is_only_shrunk() {
        let h = RsosPath::new(4, 9, 8, 6, vec![8, 7, 6]).unwrap();
        let (h_hat, tr) = bij1_forward(&h).unwrap();
        assert_eq!(tr.n, 0);
        assert!(tr.lambda.is_empty());
        assert_eq!(h_hat.heights(), h.heights());
        assert_eq!(bij1_inverse(&h_hat).unwrap(), h);
    }

    #[test]
    fn family_checks() {
        let h = RsosPath::new(4, 7, 6, 1, vec![6, 5, 4, 3, 2, 1]).unwrap();
        assert!(matches!(bij1_forward(&h), Err(Error::InvalidParameters(_))));
        let odd = RsosPath::new(4, 9, 7, 6, vec![7]).unwrap();
        assert!(matches!(bij1_forward(&odd), Err(Error::InvalidParameters(_))));
    }
}
