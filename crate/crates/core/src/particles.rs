//! Particle content of half-lattice paths in `H^t_{1,1}`: dissection into
//! charged particles, minimal sector paths, particle moves and the sector
//! generating functions.
//!
//! Charges are doubled throughout: a particle of charge `d/2` has `charge = d`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::characters::{b_entry, fermionic_term, m_vector, twice_quadratic_form};
use crate::error::{Error, Result};
use crate::halfpath::{self, HalfPath};
use crate::qseries::QSeries;
use crate::rsos::weight_series;

/// Occupation numbers `n = (n_2, ..., n_{T-2})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Sector {
    t2: u32,
    n: Vec<u32>,
}

impl Sector {
    pub fn new(t2: u32, n: Vec<u32>) -> Result<Self> {
        if t2 < 4 {
            return Err(Error::InvalidParameters(format!("need T >= 4, got {t2}")));
        }
        if n.len() != (t2 - 3) as usize {
            return Err(Error::InvalidParameters(format!("T={t2} needs {} occupation numbers, got {}", t2 - 3, n.len())));
        }
        Ok(Sector { t2, n })
    }

    pub fn zero(t2: u32) -> Result<Self> {
        Sector::new(t2, vec![0; t2.saturating_sub(3) as usize])
    }

    pub fn t2(&self) -> u32 {
        self.t2
    }

    pub fn n(&self) -> &[u32] {
        &self.n
    }

    /// Number of particles of doubled charge `d`, `2 <= d <= T-2`.
    pub fn count(&self, d: usize) -> u32 {
        self.n[d - 2]
    }

    /// `½nBnᵀ`.
    pub fn minimal_weight(&self) -> i64 {
        twice_quadratic_form(&self.n) / 2
    }

    /// `m_1, ..., m_{T-3}`.
    pub fn m_vector(&self) -> Vec<u32> {
        m_vector(&self.n)
    }
}

/// The symmetric matrix `B_{ij} = (i-1) j` (`i <= j`), indexed by `2..=T-2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BMatrix {
    t2: u32,
    entries: Vec<Vec<i64>>,
}

impl BMatrix {
    pub fn new(t2: u32) -> Result<Self> {
        if t2 < 4 {
            return Err(Error::InvalidParameters(format!("need T >= 4, got {t2}")));
        }
        let dim = (t2 - 3) as usize;
        let entries = (0..dim).map(|i| (0..dim).map(|j| b_entry(i + 2, j + 2)).collect()).collect();
        Ok(BMatrix { t2, entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// `B_{ij}` with `i, j` in `2..=T-2`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i - 2][j - 2]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// `(T-2)·B⁻¹`: the type-A Cartan matrix scaled by `T-2`, except that
    /// its last diagonal entry is `T-3`.
    pub fn scaled_inverse(&self) -> Vec<Vec<i64>> {
        let dim = self.dim();
        let k = self.t2 as i64 - 2;
        (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| match i.abs_diff(j) {
                        0 if i == dim - 1 => k - 1,
                        0 => 2 * k,
                        1 => -k,
                        _ => 0,
                    })
                    .collect()
            })
            .collect()
    }

    /// Whether `B · scaled_inverse()` is `(T-2)` times the identity.
    pub fn check_inverse(&self) -> bool {
        let inv = self.scaled_inverse();
        let dim = self.dim();
        let k = self.t2 as i64 - 2;
        (0..dim).all(|i| {
            (0..dim).all(|j| {
                let v: i64 = (0..dim).map(|l| self.entries[i][l] * inv[l][j]).sum();
                v == if i == j { k } else { 0 }
            })
        })
    }
}

/// One particle: its doubled charge, peak, baseline span and baseline height
/// (doubled coordinates throughout).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Particle {
    pub charge: usize,
    pub peak: usize,
    pub origin: usize,
    pub right_end: usize,
    pub baseline: i64,
}

impl Particle {
    /// The particle is a bare triangle on its baseline.
    pub fn is_pure(&self) -> bool {
        self.right_end - self.origin == 2 * self.charge
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dissection {
    /// Particles left of the horizon, ordered by peak.
    pub particles: Vec<Particle>,
    /// The first tail peak (charge ½); the rest of the tail is implicit.
    pub tail: Particle,
    pub sector: Sector,
}

impl Dissection {
    /// Particle `id`, where `id == particles.len()` names the first tail peak.
    pub fn particle(&self, id: usize) -> Option<&Particle> {
        if id == self.particles.len() {
            Some(&self.tail)
        } else {
            self.particles.get(id)
        }
    }

    /// All particles including the first tail peak.
    pub fn all(&self) -> impl Iterator<Item = &Particle> {
        self.particles.iter().chain(std::iter::once(&self.tail))
    }

    /// Doubled charges from left to right, finite part then the first tail peak.
    pub fn charges(&self) -> Vec<usize> {
        self.all().map(|p| p.charge).collect()
    }
}

fn check_ground(h: &HalfPath) -> Result<()> {
    if h.a() != 2 || h.b() != 2 {
        return Err(Error::InvalidParameters(format!(
            "dissection needs A = B = 2, got A={}, B={}",
            h.a(),
            h.b()
        )));
    }
    if h.t2() < 4 {
        return Err(Error::InvalidParameters(format!("need T >= 4, got {}", h.t2())));
    }
    Ok(())
}

/// Assigns every peak a charge by the recursive scan from the right.
pub fn dissect(h: &HalfPath) -> Result<Dissection> {
    check_ground(h)?;
    let t2 = h.t2() as usize;
    let hz = h.horizon();
    // (original position, height) of the contracted path.
    let mut seq: Vec<(usize, i64)> = h.heights().iter().copied().enumerate().collect();
    let mut particles = Vec::new();
    for d in 1..=t2 - 2 {
        let mut j = seq.len().saturating_sub(2);
        while j >= 1 {
            let hj = seq[j].1;
            if seq[j - 1].1 == hj - 1 && seq[j + 1].1 == hj - 1 {
                let mut l = j;
                while l > 0 && seq[l - 1].1 == seq[l].1 - 1 {
                    l -= 1;
                }
                let mut r = j;
                while r + 1 < seq.len() && seq[r + 1].1 == seq[r].1 - 1 {
                    r += 1;
                }
                let (dl, dr) = (j - l, r - j);
                if dl == d || dr == d {
                    if dl < d || dr < d {
                        return Err(Error::Corrupted(format!(
                            "peak at {} has a valley closer than its charge {d}",
                            seq[j].0
                        )));
                    }
                    particles.push(Particle {
                        charge: d,
                        peak: seq[j].0,
                        origin: seq[j - d].0,
                        right_end: seq[j + d].0,
                        baseline: hj - d as i64,
                    });
                    seq.drain(j - d + 1..=j + d);
                    j -= d;
                    continue;
                }
            }
            j -= 1;
        }
    }
    if let Some(w) = seq.windows(3).find(|w| w[0].1 < w[1].1 && w[2].1 < w[1].1) {
        return Err(Error::Corrupted(format!("peak at {} has no charge below {}", w[1].0, t2 - 1)));
    }
    particles.sort_by_key(|p| p.peak);
    let mut n = vec![0u32; t2 - 3];
    for p in particles.iter().filter(|p| p.charge >= 2) {
        n[p.charge - 2] += 1;
    }
    let tail = Particle { charge: 1, peak: hz + 1, origin: hz, right_end: hz + 2, baseline: 2 };
    Ok(Dissection { particles, tail, sector: Sector::new(t2 as u32, n)? })
}

/// The unique weight-minimal path of a sector: triangles on the lowest
/// baseline, largest charge first.
pub fn minimal_path(sector: &Sector) -> HalfPath {
    let t2 = sector.t2 as usize;
    let mut h = vec![2i64];
    for d in (2..=t2 - 2).rev() {
        for _ in 0..sector.count(d) {
            h.extend((1..=d as i64).map(|k| 2 + k));
            h.extend((0..d as i64).rev().map(|k| 2 + k));
        }
    }
    HalfPath::new(sector.t2 as i64, 2, 2, h).expect("triangles on the ground level form a valid path")
}

/// `½nBnᵀ`.
pub fn minimal_weight(sector: &Sector) -> i64 {
    sector.minimal_weight()
}

/// `q^{½nBnᵀ}/(q)_{m_1} ∏_{j=2}^{T-3} [n_j+m_j, n_j]` to order `order`.
pub fn sector_gf(sector: &Sector, order: usize) -> QSeries {
    fermionic_term(&sector.n, order)
}

/// Groups the exhaustive enumeration of `H^t_{1,1}` by sector.
pub fn sector_census(t2: u32, order: usize) -> Result<BTreeMap<Sector, QSeries>> {
    let mut groups: BTreeMap<Sector, Vec<i64>> = BTreeMap::new();
    for h in halfpath::enumerate(t2 as i64, 2, 2, order)? {
        let d = dissect(&h)?;
        groups.entry(d.sector).or_default().push(h.weight()?);
    }
    groups.into_iter().map(|(s, w)| Ok((s, weight_series(w.into_iter(), order)?))).collect()
}

/// How a permitted move is enacted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MoveKind {
    /// The particle shifts left and down along an ascending slope.
    DownLeft,
    /// The particle shifts left and up along a descending slope.
    UpLeft,
    /// The particle swaps roles with the equal-height peak to its left, which
    /// then shifts.
    Exchange,
    /// The peak to the left is lowered by a half unit and the particle's peak
    /// raised by a half unit.
    Half,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Move {
    pub particle: usize,
    pub kind: MoveKind,
}

/// Removes the two edges left of the triangle at `origin` and re-adds them on
/// its right.
fn shift_left(hs: &[i64], origin: usize, charge: usize) -> Option<(MoveKind, Vec<i64>)> {
    if origin < 2 || origin + 2 * charge >= hs.len() {
        return None;
    }
    let step = hs[origin] - hs[origin - 1];
    if hs[origin - 1] - hs[origin - 2] != step {
        return None;
    }
    let base = hs[origin - 2];
    let mut out = hs[..=origin - 2].to_vec();
    out.extend((1..=charge as i64).map(|k| base + k));
    out.extend((0..charge as i64).rev().map(|k| base + k));
    out.push(base + step);
    out.push(base + 2 * step);
    out.extend_from_slice(&hs[origin + 2 * charge + 1..]);
    let kind = if step > 0 { MoveKind::DownLeft } else { MoveKind::UpLeft };
    Some((kind, out))
}

fn is_triangle(hs: &[i64], origin: usize, charge: usize) -> bool {
    let (b, d) = (hs[origin], charge);
    (0..=d).all(|k| hs[origin + k] == b + k as i64) && (0..=d).all(|k| hs[origin + d + k] == b + (d - k) as i64)
}

fn plan(h: &HalfPath, dis: &Dissection, id: usize) -> Option<(MoveKind, Vec<i64>)> {
    let p = dis.particle(id)?;
    let (o, d) = (p.origin, p.charge);
    if !p.is_pure() || o == 0 {
        return None;
    }
    // The host is the innermost particle whose baseline spans the edge
    // arriving at the origin; the origin lies on its slope.
    let host = dis
        .all()
        .filter(|s| *s != p && s.origin < o && o <= s.right_end)
        .max_by_key(|s| (s.baseline, s.origin, std::cmp::Reverse(s.right_end)))?;
    if host.charge <= d {
        return None;
    }
    let hs = h.heights_through(h.horizon().max(p.right_end) + 2 * d + 4);
    if hs[o - 1] == hs[o] - 1 {
        return shift_left(&hs, o, d);
    }
    let (x, xp) = (p.peak, host.peak);
    if x < xp {
        return shift_left(&hs, o, d);
    }
    let (hx, hxp) = (hs[x], hs[xp]);
    if hxp >= hx + 2 {
        shift_left(&hs, o, d)
    } else if hxp == hx {
        if o < 2 * d || xp != o - d || !is_triangle(&hs, o - 2 * d, d) {
            return None;
        }
        shift_left(&hs, o - 2 * d, d).map(|(_, out)| (MoveKind::Exchange, out))
    } else if hxp == hx + 1 && x == xp + 2 * d + 1 {
        let mut out = hs.clone();
        out.drain(xp..xp + 2);
        let at = x - 2;
        out.splice(at + 1..at + 1, [hx + 1, hx]);
        Some((MoveKind::Half, out))
    } else {
        None
    }
}

/// Particles of `h` with a permitted move, identified by index into
/// [`Dissection::particle`].
pub fn enumerate_moves(h: &HalfPath) -> Result<Vec<Move>> {
    let dis = dissect(h)?;
    Ok((0..=dis.particles.len())
        .filter_map(|id| {
            let (kind, out) = plan(h, &dis, id)?;
            HalfPath::new(h.t2(), 2, 2, out).ok().map(|_| Move { particle: id, kind })
        })
        .collect())
}

/// Moves particle `id`; the result has weight one higher and the same sector.
pub fn apply_move(h: &HalfPath, id: usize) -> Result<HalfPath> {
    let dis = dissect(h)?;
    let (_, out) = plan(h, &dis, id).ok_or(Error::NoMove(id))?;
    let moved = HalfPath::new(h.t2(), 2, 2, out).map_err(|_| Error::NoMove(id))?;
    let (before, after) = (h.weight()?, moved.weight()?);
    if after != before + 1 {
        return Err(Error::Corrupted(format!("move of particle {id} changed the weight {before} -> {after}")));
    }
    let sector = dissect(&moved)?.sector;
    if sector != dis.sector {
        return Err(Error::Corrupted(format!("move of particle {id} changed the sector {:?} -> {:?}", dis.sector.n, sector.n)));
    }
    Ok(moved)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Piecewise-linear path through `(position, height)` corners.
    fn corners(t2: i64, pts: &[(usize, i64)]) -> HalfPath {
        let mut h = vec![pts[0].1];
        for w in pts.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            assert_eq!(x1 - x0, y0.abs_diff(y1) as usize);
            let s = (y1 - y0).signum();
            h.extend((1..=(x1 - x0) as i64).map(|k| y0 + s * k));
        }
        HalfPath::new(t2, 2, 2, h).unwrap()
    }

    fn dissected_path() -> HalfPath {
        corners(
            10,
            &[
                (0, 2),
                (5, 7),
                (6, 6),
                (9, 9),
                (14, 4),
                (16, 6),
                (18, 4),
                (22, 8),
                (24, 6),
                (26, 8),
                (32, 2),
                (37, 7),
                (40, 4),
                (43, 7),
                (44, 6),
                (45, 7),
                (50, 2),
            ],
        )
    }

    fn minimal_example() -> HalfPath {
        corners(
            10,
            &[(0, 2), (7, 9), (14, 2), (19, 7), (24, 2), (28, 6), (32, 2), (35, 5), (38, 2), (40, 4), (42, 2), (44, 4), (46, 2)],
        )
    }

    #[test]
    fn dissection_charges() {
        let d = dissect(&dissected_path()).unwrap();
        assert_eq!(d.charges(), vec![1, 7, 2, 4, 2, 5, 3, 1, 1]);
        assert_eq!(d.sector.n(), &[2, 1, 1, 1, 0, 1, 0]);
        assert!(d.all().all(|p| p.baseline % 2 == 0));
    }

    #[test]
    fn minimal_path_matches_example() {
        let s = Sector::new(10, vec![2, 1, 1, 1, 0, 1, 0]).unwrap();
        assert_eq!(minimal_path(&s), minimal_example());
        assert_eq!(dissect(&minimal_example()).unwrap().sector, s);
        assert_eq!(minimal_weight(&s), minimal_example().weight().unwrap());
        assert_eq!(s.m_vector()[0], 17);
    }

    #[test]
    fn ground_state_is_empty() {
        let g = HalfPath::ground_state(8, 2, 2).unwrap();
        let d = dissect(&g).unwrap();
        assert!(d.particles.is_empty());
        assert_eq!(d.sector, Sector::zero(8).unwrap());
        assert_eq!(minimal_path(&d.sector), g);
        assert_eq!(sector_gf(&d.sector, 5), QSeries::one(5));
    }

    #[test]
    fn single_particle_weights() {
        for d in 2..=8usize {
            let mut n = vec![0; 7];
            n[d - 2] = 1;
            let s = Sector::new(10, n).unwrap();
            assert_eq!(minimal_weight(&s), ((d - 1) * d / 2) as i64);
            assert_eq!(minimal_path(&s).weight().unwrap(), minimal_weight(&s));
        }
    }

    #[test]
    fn b_inverse_is_nearly_cartan() {
        for t2 in 4..=12 {
            assert!(BMatrix::new(t2).unwrap().check_inverse());
        }
    }

    fn run_moves(t2: i64, frames: &[&[(usize, i64)]], id_charge: usize) {
        let mut h = corners(t2, frames[0]);
        for next in &frames[1..] {
            let dis = dissect(&h).unwrap();
            let id = (0..=dis.particles.len()).find(|&i| dis.particle(i).unwrap().charge == id_charge).unwrap();
            let w = h.weight().unwrap();
            h = apply_move(&h, id).unwrap();
            assert_eq!(h, corners(t2, next));
            assert_eq!(h.weight().unwrap(), w + 1);
        }
    }

    #[test]
    fn move_sequence_against_a_taller_particle() {
        run_moves(
            10,
            &[
                &[(0, 2), (7, 9), (14, 2), (17, 5), (20, 2)],
                &[(0, 2), (7, 9), (12, 4), (15, 7), (20, 2)],
                &[(0, 2), (7, 9), (10, 6), (13, 9), (20, 2)],
                &[(0, 2), (5, 7), (8, 4), (13, 9), (20, 2)],
                &[(0, 2), (3, 5), (6, 2), (13, 9), (20, 2)],
            ],
            3,
        );
    }

    #[test]
    fn move_sequence_with_half_move() {
        run_moves(
            8,
            &[
                &[(0, 2), (6, 8), (12, 2), (15, 5), (18, 2)],
                &[(0, 2), (6, 8), (10, 4), (13, 7), (18, 2)],
                &[(0, 2), (5, 7), (8, 4), (12, 8), (18, 2)],
                &[(0, 2), (3, 5), (6, 2), (12, 8), (18, 2)],
            ],
            3,
        );
    }

    #[test]
    fn boundary_particle_cannot_move() {
        let h = corners(8, &[(0, 2), (3, 5), (6, 2)]);
        assert!(matches!(apply_move(&h, 0), Err(Error::NoMove(0))));
    }
}
