use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use viracomb::bijections::{bij1_forward, bij1_inverse, bij2_forward, bij2_inverse, Family};
use viracomb::characters::{bosonic_character, fermionic_character_12, CharacterLabel};
use viracomb::particles::{dissect, sector_gf, Particle, Sector};
use viracomb::qseries::{modular_product, QSeries};
use viracomb::render::{ascii_half, ascii_rsos, svg_half, svg_rsos};
use viracomb::verify::{run_suite, Suite, VerifyOptions};
use viracomb::{halfpath, rsos, Error, HalfPath, RsosPath};

#[derive(Parser)]
#[command(name = "viracomb", version, about = "Virasoro characters, lattice paths and their bijections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a character as a truncated q-series.
    Character {
        #[command(subcommand)]
        kind: CharacterKind,
    },
    /// Enumerate paths up to a weight, or print their generating function.
    Paths {
        #[command(subcommand)]
        model: PathModel,
    },
    /// Map a path read from stdin through the bijection for its family.
    Bijection {
        direction: Direction,
        /// Also print the intermediate objects as JSON.
        #[arg(long)]
        trace: bool,
    },
    /// Run identity checks; one JSON report per line.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 20)]
        order: usize,
        #[arg(long = "max-t2", default_value_t = 10)]
        max_t2: u32,
        #[arg(long = "max-pp", default_value_t = 12)]
        max_pp: i64,
    },
    /// Draw a path read from stdin.
    Render {
        #[arg(long, value_enum, default_value_t = Picture::Ascii)]
        format: Picture,
        /// Draw particle baselines (half-lattice paths with A = B = 2).
        #[arg(long)]
        baselines: bool,
    },
    /// Dissect a half-lattice path read from stdin into particles (JSON).
    Dissect,
    /// The generating function of one particle sector.
    SectorGf {
        #[arg(long)]
        t2: u32,
        /// Occupation numbers n_2,...,n_{T-2}.
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
        #[command(flatten)]
        out: SeriesOut,
    },
}

#[derive(Args)]
struct SeriesOut {
    #[arg(long, default_value_t = 20)]
    order: usize,
    #[arg(long, value_enum, default_value_t = SeriesFormat::Csv)]
    format: SeriesFormat,
}

#[derive(Subcommand)]
enum CharacterKind {
    /// The alternating-sign sum for χ^{p,p'}_{r,s}.
    Bosonic {
        p: i64,
        pp: i64,
        r: i64,
        s: i64,
        #[command(flatten)]
        out: SeriesOut,
    },
    /// The fermionic sum for χ_{1,2} selected by T.
    Fermionic {
        #[arg(long)]
        t2: u32,
        #[command(flatten)]
        out: SeriesOut,
    },
    /// ∏ 1/(1-q^k) over k congruent to a listed residue.
    Product {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long = "res", value_delimiter = ',')]
        residues: Vec<u64>,
        #[command(flatten)]
        out: SeriesOut,
    },
}

#[derive(Subcommand)]
enum PathModel {
    /// RSOS paths in P^{p,p'}_{a,b}.
    Rsos {
        p: i64,
        pp: i64,
        a: i64,
        b: i64,
        #[arg(long = "max-weight")]
        max_weight: usize,
        /// Print the generating function instead of the paths.
        #[arg(long)]
        gf: bool,
    },
    /// Half-lattice paths with doubled parameters T, A, B.
    Half {
        #[arg(long)]
        t2: i64,
        #[arg(long = "A")]
        a: i64,
        #[arg(long = "B")]
        b: i64,
        #[arg(long = "max-weight")]
        max_weight: usize,
        #[arg(long)]
        gf: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Forward,
    Inverse,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesFormat {
    Csv,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum Picture {
    Ascii,
    Svg,
}

enum Failure {
    Invalid(String),
    Corrupt(String),
    Checks(usize),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_corruption() {
            Failure::Corrupt(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn series(s: &QSeries, f: SeriesFormat) -> String {
    match f {
        SeriesFormat::Csv => s.to_csv(),
        SeriesFormat::Pretty => s.to_pretty(),
    }
}

fn read_line() -> Result<String, Failure> {
    let mut buf = String::new();
    io::stdin().read_to_string(&mut buf)?;
    buf.lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .map(str::to_string)
        .ok_or_else(|| Failure::Invalid("expected a path line on stdin".into()))
}

enum AnyPath {
    Rsos(RsosPath),
    Half(HalfPath),
}

fn parse_path(line: &str) -> Result<AnyPath, Failure> {
    match line.split_whitespace().next() {
        Some("rsos") => Ok(AnyPath::Rsos(line.parse()?)),
        Some("half") => Ok(AnyPath::Half(line.parse()?)),
        _ => Err(Failure::Invalid("path lines start with `rsos` or `half`".into())),
    }
}

fn json_line(out: &mut impl Write, v: &impl Serialize) -> Outcome {
    serde_json::to_writer(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn character(kind: CharacterKind, out: &mut impl Write) -> Outcome {
    let (s, f) = match kind {
        CharacterKind::Bosonic { p, pp, r, s, out } => {
            (bosonic_character(&CharacterLabel::new(p, pp, r, s)?, out.order), out.format)
        }
        CharacterKind::Fermionic { t2, out } => (fermionic_character_12(t2, out.order)?, out.format),
        CharacterKind::Product { modulus, residues, out } => {
            (modular_product(modulus, &residues, out.order)?, out.format)
        }
    };
    writeln!(out, "{}", series(&s, f))?;
    Ok(())
}

fn paths(model: PathModel, out: &mut impl Write) -> Outcome {
    let lines: Vec<String> = match model {
        PathModel::Rsos { p, pp, a, b, max_weight, gf: true } => {
            vec![rsos::generating_function(p, pp, a, b, max_weight)?.to_csv()]
        }
        PathModel::Rsos { p, pp, a, b, max_weight, gf: false } => {
            rsos::enumerate(p, pp, a, b, max_weight)?.iter().map(RsosPath::to_line).collect()
        }
        PathModel::Half { t2, a, b, max_weight, gf: true } => {
            vec![halfpath::generating_function(t2, a, b, max_weight)?.to_csv()]
        }
        PathModel::Half { t2, a, b, max_weight, gf: false } => {
            halfpath::enumerate(t2, a, b, max_weight)?.iter().map(HalfPath::to_line).collect()
        }
    };
    for l in lines {
        writeln!(out, "{l}")?;
    }
    Ok(())
}

fn bijection(direction: Direction, trace: bool, out: &mut impl Write) -> Outcome {
    let path = parse_path(&read_line()?)?;
    match (direction, path) {
        (Direction::Forward, AnyPath::Rsos(h)) => match Family::of_rsos(&h)? {
            Family::Plus => {
                let (img, tr) = bij1_forward(&h)?;
                writeln!(out, "{img}")?;
                if trace {
                    json_line(out, &tr)?;
                }
            }
            Family::Minus => {
                let (img, tr) = bij2_forward(&h)?;
                writeln!(out, "{img}")?;
                if trace {
                    json_line(out, &tr)?;
                }
            }
        },
        (Direction::Inverse, AnyPath::Half(h)) => match Family::of_half(&h) {
            Family::Plus => {
                let pre = bij1_inverse(&h)?;
                writeln!(out, "{pre}")?;
                if trace {
                    json_line(out, &bij1_forward(&pre)?.1)?;
                }
            }
            Family::Minus => {
                let pre = bij2_inverse(&h)?;
                writeln!(out, "{pre}")?;
                if trace {
                    json_line(out, &bij2_forward(&pre)?.1)?;
                }
            }
        },
        (Direction::Forward, AnyPath::Half(_)) => {
            return Err(Failure::Invalid("forward maps an `rsos` line".into()));
        }
        (Direction::Inverse, AnyPath::Rsos(_)) => {
            return Err(Failure::Invalid("inverse maps a `half` line".into()));
        }
    }
    Ok(())
}

fn verify(suite: &str, opts: VerifyOptions, out: &mut impl Write) -> Outcome {
    let suite: Suite = suite.parse()?;
    let reports = run_suite(suite, opts);
    for r in &reports {
        json_line(out, r)?;
    }
    match reports.iter().filter(|r| !r.passed()).count() {
        0 => Ok(()),
        n => Err(Failure::Checks(n)),
    }
}

fn render(format: Picture, baselines: bool, out: &mut impl Write) -> Outcome {
    let pic = match (parse_path(&read_line()?)?, format) {
        (AnyPath::Rsos(_), _) if baselines => {
            return Err(Failure::Invalid("baselines are drawn for half-lattice paths only".into()));
        }
        (AnyPath::Rsos(h), Picture::Ascii) => ascii_rsos(&h),
        (AnyPath::Rsos(h), Picture::Svg) => svg_rsos(&h),
        (AnyPath::Half(h), Picture::Ascii) => ascii_half(&h, baselines)?,
        (AnyPath::Half(h), Picture::Svg) => svg_half(&h, baselines)?,
    };
    write!(out, "{pic}")?;
    Ok(())
}

#[derive(Serialize)]
struct DissectOut {
    path: String,
    weight: i64,
    charges: Vec<usize>,
    particles: Vec<Particle>,
    tail: Particle,
    sector: Vec<u32>,
    minimal_weight: i64,
    m: Vec<u32>,
}

fn dissect_cmd(out: &mut impl Write) -> Outcome {
    let AnyPath::Half(h) = parse_path(&read_line()?)? else {
        return Err(Failure::Invalid("dissect reads a `half` line".into()));
    };
    let d = dissect(&h)?;
    let report = DissectOut {
        path: h.to_line(),
        weight: h.weight()?,
        charges: d.charges(),
        particles: d.particles.clone(),
        tail: d.tail,
        sector: d.sector.n().to_vec(),
        minimal_weight: d.sector.minimal_weight(),
        m: d.sector.m_vector(),
    };
    json_line(out, &report)
}

fn run(cli: Cli) -> Outcome {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    match cli.command {
        Command::Character { kind } => character(kind, &mut out)?,
        Command::Paths { model } => paths(model, &mut out)?,
        Command::Bijection { direction, trace } => bijection(direction, trace, &mut out)?,
        Command::Verify { suite, order, max_t2, max_pp } => {
            let res = verify(&suite, VerifyOptions { order, max_t2, max_pp }, &mut out);
            out.flush()?;
            res?
        }
        Command::Render { format, baselines } => render(format, baselines, &mut out)?,
        Command::Dissect => dissect_cmd(&mut out)?,
        Command::SectorGf { t2, n, out: so } => {
            let s = Sector::new(t2, n)?;
            writeln!(out, "{}", series(&sector_gf(&s, so.order), so.format))?;
        }
    }
    out.flush()?;
    Ok(())
}

fn init_threads() {
    if let Some(n) = std::env::var("VIRACOMB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    init_threads();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks(n)) => {
            eprintln!("viracomb: {n} check(s) failed");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(m)) => {
            eprintln!("viracomb: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Corrupt(m)) => {
            eprintln!("viracomb: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("viracomb: {e}");
            ExitCode::from(2)
        }
    }
}
