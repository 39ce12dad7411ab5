//! Identity checks run as independent jobs, each producing a [`VerifyReport`].

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bijections::{bij1_forward, bij1_inverse, bij2_forward, bij2_inverse};
use crate::characters::{
    bosonic_character, fermionic_character_12, label_12, sectors_up_to, theorem1_label, verify_symmetries,
    CharacterLabel, ClosedForm, Mismatch,
};
use crate::error::{Error, Result};
use crate::halfpath::{self, HalfPath};
use crate::particles::{sector_census, sector_gf, Sector};
use crate::qseries::QSeries;
use crate::rsos::{self, dark_floors, tail_index, RsosPath};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub identity: String,
    pub params: String,
    pub order: usize,
    pub status: Status,
    pub mismatch: Option<Mismatch>,
    /// Extra information: path counts, or the error that stopped the check.
    pub detail: Option<String>,
    pub elapsed_ms: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Theorem1,
    Theorem2,
    Products,
    Symmetries,
    Bijections,
    Sectors,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] =
        [Suite::Theorem1, Suite::Theorem2, Suite::Products, Suite::Symmetries, Suite::Bijections, Suite::Sectors];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Products => "products",
            Suite::Symmetries => "symmetries",
            Suite::Bijections => "bijections",
            Suite::Sectors => "sectors",
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
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Options shared by all suites.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub order: usize,
    /// Largest `T` for the half-lattice suites.
    pub max_t2: u32,
    /// Largest `p'` for the symmetry suite.
    pub max_pp: i64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { order: 20, max_t2: 10, max_pp: 12 }
    }
}

/// Model pairs used for the RSOS generating-function checks.
pub const RSOS_MODELS: [(i64, i64); 7] = [(2, 5), (3, 5), (3, 7), (4, 7), (4, 9), (5, 9), (5, 11)];

/// What a single job returns: either two series to compare, or a pass/fail
/// judgement with a detail line.
enum Outcome {
    Series(QSeries, QSeries),
    Judged(std::result::Result<String, String>),
}

type Job = (String, String, Box<dyn Fn() -> Result<Outcome> + Send + Sync>);

fn run(jobs: Vec<Job>, order: usize) -> Vec<VerifyReport> {
    jobs.into_par_iter()
        .map(|(identity, params, job)| {
            let start = Instant::now();
            let result = job();
            let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            let (status, mismatch, detail) = match result {
                Ok(Outcome::Series(l, r)) => match Mismatch::between(&l, &r) {
                    None => (Status::Pass, None, None),
                    Some(m) => (Status::Fail, Some(m), None),
                },
                Ok(Outcome::Judged(Ok(d))) => (Status::Pass, None, Some(d)),
                Ok(Outcome::Judged(Err(d))) => (Status::Fail, None, Some(d)),
                Err(e) => (Status::Fail, None, Some(e.to_string())),
            };
            VerifyReport { identity, params, order, status, mismatch, detail, elapsed_ms }
        })
        .collect()
}

fn job(
    identity: &str,
    params: String,
    f: impl Fn() -> Result<Outcome> + Send + Sync + 'static,
) -> Job {
    (identity.to_string(), params, Box::new(f))
}

fn theorem1_jobs(opts: VerifyOptions) -> Vec<Job> {
    let n = opts.order;
    let mut jobs = Vec::new();
    for (p, pp) in RSOS_MODELS {
        for a in 2..pp {
            for b in dark_floors(p, pp) {
                let Some(r) = tail_index(p, pp, b) else { continue };
                jobs.push(job("rsos-gf", format!("p={p} pp={pp} a={a} b={b}"), move || {
                    let x = rsos::generating_function(p, pp, a, b, n)?;
                    let chi = bosonic_character(&CharacterLabel::new(p, pp, r, a)?, n);
                    Ok(Outcome::Series(x, chi))
                }));
            }
        }
    }
    for t2 in 4..=opts.max_t2 {
        for (a, b) in halfpath::endpoint_pairs(t2 as i64) {
            jobs.push(job("theorem1", format!("T={t2} A={a} B={b}"), move || {
                let y = halfpath::generating_function(t2 as i64, a, b, n)?;
                let chi = bosonic_character(&theorem1_label(t2, a / 2, b / 2)?, n);
                Ok(Outcome::Series(y, chi))
            }));
        }
    }
    jobs
}

fn theorem2_jobs(opts: VerifyOptions) -> Vec<Job> {
    let n = opts.order;
    (4..=opts.max_t2)
        .map(|t2| {
            job("theorem2", format!("T={t2}"), move || {
                Ok(Outcome::Series(fermionic_character_12(t2, n)?, bosonic_character(&label_12(t2)?, n)))
            })
        })
        .collect()
}

fn product_jobs(opts: VerifyOptions) -> Vec<Job> {
    let n = opts.order;
    ClosedForm::ALL
        .iter()
        .map(|&cf| {
            job(cf.name(), cf.label().to_string(), move || {
                Ok(Outcome::Series(cf.series(n), bosonic_character(&cf.label(), n)))
            })
        })
        .collect()
}

fn symmetry_jobs(opts: VerifyOptions) -> Vec<Job> {
    let n = opts.order;
    CharacterLabel::all_up_to(opts.max_pp)
        .into_iter()
        .map(|label| {
            job("symmetries", label.to_string(), move || {
                let rep = verify_symmetries(&label, n);
                Ok(Outcome::Judged(match (&rep.reflection, &rep.swap) {
                    (None, None) => Ok("reflection and swap agree".into()),
                    (Some(m), _) => Err(format!("reflection differs at q^{}: {} vs {}", m.power, m.left, m.right)),
                    (_, Some(m)) => Err(format!("swap differs at q^{}: {} vs {}", m.power, m.left, m.right)),
                }))
            })
        })
        .collect()
}

/// `(p, p', a, b)` cases of the first bijection (`b` is the tail height).
pub fn bij1_cases(max_p: i64) -> Vec<(i64, i64, i64, i64)> {
    let mut cases = Vec::new();
    for p in 2..=max_p {
        for a in (2..=2 * p).step_by(2) {
            for b in (2..2 * p).step_by(2) {
                cases.push((p, 2 * p + 1, a, b));
            }
        }
    }
    cases
}

/// `(p, p', a, b)` cases of the second bijection (the tail height is `b-1`).
pub fn bij2_cases(max_p: i64) -> Vec<(i64, i64, i64, i64)> {
    let mut cases = Vec::new();
    for p in 3..=max_p {
        for a in (2..2 * p - 1).step_by(2) {
            for b in (2..2 * p - 1).step_by(2) {
                cases.push((p, 2 * p - 1, a, b));
            }
        }
    }
    cases
}

/// Pushes every RSOS path of weight `<= n` through `forward`, checks the
/// weight, the inverse and that the images exhaust `targets`.
pub fn check_bijection(
    paths: &[RsosPath],
    targets: &[HalfPath],
    forward: impl Fn(&RsosPath) -> Result<HalfPath>,
    inverse: impl Fn(&HalfPath) -> Result<RsosPath>,
) -> std::result::Result<String, String> {
    let mut images = Vec::with_capacity(paths.len());
    for h in paths {
        let img = forward(h).map_err(|e| format!("forward failed on {h}: {e}"))?;
        let (w, wi) = (h.weight().map_err(|e| e.to_string())?, img.weight().map_err(|e| e.to_string())?);
        if w != wi {
            return Err(format!("{h} has weight {w} but its image {img} has {wi}"));
        }
        let back = inverse(&img).map_err(|e| format!("inverse failed on {img}: {e}"))?;
        if &back != h {
            return Err(format!("{h} -> {img} -> {back}"));
        }
        images.push(img);
    }
    images.sort();
    let before = images.len();
    images.dedup();
    if images.len() != before {
        return Err("forward map is not injective".into());
    }
    let mut expect = targets.to_vec();
    expect.sort();
    if images != expect {
        return Err(format!("{} images but {} target paths", images.len(), expect.len()));
    }
    Ok(format!("{} paths", paths.len()))
}

fn bijection_jobs(opts: VerifyOptions) -> Vec<Job> {
    let n = opts.order;
    let mut jobs = Vec::new();
    for (p, pp, a, b) in bij1_cases(4) {
        jobs.push(job("bijection1", format!("p={p} pp={pp} a={a} b={b}"), move || {
            let paths = rsos::enumerate(p, pp, a, b, n)?;
            let targets = halfpath::enumerate(2 * p, a, b, n)?;
            Ok(Outcome::Judged(check_bijection(&paths, &targets, |h| Ok(bij1_forward(h)?.0), bij1_inverse)))
        }));
    }
    for (p, pp, a, b) in bij2_cases(4) {
        jobs.push(job("bijection2", format!("p={p} pp={pp} a={a} b={}", b - 1), move || {
            let paths = rsos::enumerate(p, pp, a, b - 1, n)?;
            let targets = halfpath::enumerate(2 * p - 1, b, a, n)?;
            Ok(Outcome::Judged(check_bijection(&paths, &targets, |h| Ok(bij2_forward(h)?.0), bij2_inverse)))
        }));
    }
    jobs
}

fn sector_jobs(opts: VerifyOptions) -> Vec<Job> {
    let n = opts.order;
    let mut jobs = Vec::new();
    for t2 in 4..=opts.max_t2 {
        jobs.push(job("sector-sum", format!("T={t2}"), move || {
            let total = sectors_up_to(t2, n, 0)
                .into_iter()
                .map(|v| Sector::new(t2, v).map(|s| sector_gf(&s, n)))
                .try_fold(QSeries::zero(n), |acc, s| s.map(|s| &acc + &s))?;
            Ok(Outcome::Series(total, halfpath::generating_function(t2 as i64, 2, 2, n)?))
        }));
        jobs.push(job("sector-census", format!("T={t2}"), move || {
            let census = sector_census(t2, n)?;
            for (s, gf) in &census {
                let expect = sector_gf(s, n);
                if let Some(m) = Mismatch::between(gf, &expect) {
                    return Ok(Outcome::Judged(Err(format!(
                        "sector {:?}: q^{} has {} paths, formula gives {}",
                        s.n(),
                        m.power,
                        m.left,
                        m.right
                    ))));
                }
            }
            Ok(Outcome::Judged(Ok(format!("{} sectors", census.len()))))
        }));
    }
    jobs
}

/// Runs a suite; reports come back in a fixed order regardless of scheduling.
pub fn run_suite(suite: Suite, opts: VerifyOptions) -> Vec<VerifyReport> {
    let jobs = match suite {
        Suite::Theorem1 => theorem1_jobs(opts),
        Suite::Theorem2 => theorem2_jobs(opts),
        Suite::Products => product_jobs(opts),
        Suite::Symmetries => symmetry_jobs(opts),
        Suite::Bijections => bijection_jobs(opts),
        Suite::Sectors => sector_jobs(opts),
        Suite::All => return Suite::EACH.iter().flat_map(|&s| run_suite(s, opts)).collect(),
    };
    run(jobs, opts.order)
}
