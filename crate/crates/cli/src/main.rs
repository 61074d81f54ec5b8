mod svg;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tropical::cells::{self, CellOptions, DEFAULT_CAP};
use tropical::format;
use tropical::gadgets::{self, CnfFormula, Variant};
use tropical::linalg::{self, LinearTropSystem, TropicalMatrix};
use tropical::rational::fmt_rat;
use tropical::topology;
use tropical::{Error, Point, PolySystem};

use crate::svg::Viewport;

/// Exact computations on tropical polynomial systems.
///
/// Exit status: 0 for success or a yes answer, 1 for a no answer, 2 for
/// usage and input errors, 3 when the cell enumeration cap is exceeded.
#[derive(Parser, Debug)]
#[command(name = "trop", version)]
struct Cli {
    /// Maximum number of cell search nodes.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate each polynomial of a system at a point.
    Eval {
        system: PathBuf,
        /// Comma-separated rational coordinates, e.g. "1/2,0,-3".
        #[arg(short = 'x', long = "point", allow_hyphen_values = true)]
        point: String,
    },
    /// Decide whether a point lies on every hypersurface of a system.
    Member {
        system: PathBuf,
        #[arg(short = 'x', long = "point", allow_hyphen_values = true)]
        point: String,
    },
    /// Tropical determinant of a square matrix.
    Det { matrix: PathBuf },
    /// Decide whether a square matrix is tropically singular.
    Singular { matrix: PathBuf },
    /// Decide whether a linear system cuts out a tropical variety of codimension m.
    ConsistencyLinear { system: PathBuf },
    /// Decide whether the prevariety is nonempty and print a witness.
    Intersect { system: PathBuf },
    /// Count connected components of the prevariety.
    Components { system: PathBuf },
    /// Decide whether a nonempty prevariety is connected.
    Connected { system: PathBuf },
    /// Dimension of the prevariety (-1 when empty).
    Dimension { system: PathBuf },
    /// Encode a DIMACS formula as a tropical system.
    Encode {
        cnf: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::Intersection)]
        variant: VariantArg,
        /// Output path; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count satisfying assignments of a DIMACS formula by enumeration.
    CountSat { cnf: PathBuf },
    /// Render a polynomial in two variables and its dual subdivision.
    Plot {
        system: PathBuf,
        /// Curve viewport "xmin,ymin,xmax,ymax"; fitted to the vertices when omitted.
        #[arg(long, allow_hyphen_values = true)]
        viewport: Option<String>,
        /// Print the subdivision faces as text instead of SVG.
        #[arg(long)]
        faces: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Intersection,
    Consistency,
    Connectivity,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Intersection => Variant::Intersection,
            VariantArg::Consistency => Variant::Consistency,
            VariantArg::Connectivity => Variant::Connectivity,
        }
    }
}

/// Outcome of a successful run.
enum Answer {
    Done,
    Yes,
    No,
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_system(path: &Path) -> Result<PolySystem> {
    let text = read_input(path)?;
    format::parse_system(&text).with_context(|| path.display().to_string())
}

fn load_matrix(path: &Path) -> Result<TropicalMatrix> {
    let text = read_input(path)?;
    format::parse_matrix(&text).with_context(|| path.display().to_string())
}

fn load_cnf(path: &Path) -> Result<CnfFormula> {
    let text = read_input(path)?;
    CnfFormula::from_dimacs(&text).with_context(|| path.display().to_string())
}

fn load_point(s: &str, dim: usize) -> Result<Point> {
    let p = format::parse_point(s).context("point")?;
    if p.dim() != dim {
        bail!("point has {} coordinates, the system has {dim} variables", p.dim());
    }
    Ok(p)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn decision(b: bool) -> Answer {
    if b {
        Answer::Yes
    } else {
        Answer::No
    }
}

fn emit(output: Option<&Path>, text: &str, out: &mut impl Write) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => out.write_all(text.as_bytes()).context("writing output"),
    }
}

fn parse_viewport(s: &str) -> Result<Viewport> {
    let p = format::parse_point(s).context("viewport")?;
    let [xmin, ymin, xmax, ymax] = <[_; 4]>::try_from(p.0)
        .map_err(|_| anyhow::anyhow!("viewport needs four values xmin,ymin,xmax,ymax"))?;
    if xmin >= xmax || ymin >= ymax {
        bail!("viewport must satisfy xmin < xmax and ymin < ymax");
    }
    Ok(Viewport { xmin, ymin, xmax, ymax })
}

fn run(cli: Cli, out: &mut impl Write) -> Result<Answer> {
    let opts = CellOptions::with_cap(cli.cap);
    match cli.command {
        Command::Eval { system, point } => {
            let sys = load_system(&system)?;
            let x = load_point(&point, sys.dim())?;
            for (i, f) in sys.polys().iter().enumerate() {
                let e = f.eval(&x)?;
                let argmin: Vec<String> = e
                    .argmin
                    .iter()
                    .map(|a| a.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
                    .collect();
                writeln!(out, "f{}: value {} argmin [{}]", i + 1, fmt_rat(&e.value), argmin.join("; "))?;
            }
            Ok(Answer::Done)
        }
        Command::Member { system, point } => {
            let sys = load_system(&system)?;
            let x = load_point(&point, sys.dim())?;
            let member = sys.contains(&x)?;
            writeln!(out, "member: {}", yes_no(member))?;
            Ok(decision(member))
        }
        Command::Det { matrix } => {
            let m = load_matrix(&matrix)?;
            let det = linalg::trop_det(&m)?;
            writeln!(out, "det: {det}")?;
            if let Some(perm) = linalg::optimal_permutation(&m)? {
                let p: Vec<String> = perm.iter().map(|j| (j + 1).to_string()).collect();
                writeln!(out, "permutation: {}", p.join(" "))?;
            }
            Ok(Answer::Done)
        }
        Command::Singular { matrix } => {
            let m = load_matrix(&matrix)?;
            let singular = linalg::is_singular(&m)?;
            writeln!(out, "singular: {}", yes_no(singular))?;
            Ok(decision(singular))
        }
        Command::ConsistencyLinear { system } => {
            let lin = LinearTropSystem::from_polys(&load_system(&system)?)?;
            let consistent = linalg::m_consistency_linear(&lin, &opts)?;
            writeln!(out, "consistent: {}", yes_no(consistent))?;
            Ok(decision(consistent))
        }
        Command::Intersect { system } => {
            let sys = load_system(&system)?;
            let witness = topology::intersect_nonempty(&sys, &opts)?;
            writeln!(out, "nonempty: {}", yes_no(witness.is_some()))?;
            if let Some(w) = &witness {
                writeln!(out, "witness: {w}")?;
            }
            Ok(decision(witness.is_some()))
        }
        Command::Components { system } => {
            let k = topology::connected_components(&load_system(&system)?, &opts)?;
            writeln!(out, "components: {k}")?;
            Ok(Answer::Done)
        }
        Command::Connected { system } => {
            let connected = topology::is_connected(&load_system(&system)?, &opts)?;
            writeln!(out, "connected: {}", yes_no(connected))?;
            Ok(decision(connected))
        }
        Command::Dimension { system } => {
            let d = topology::prevariety_dimension(&load_system(&system)?, &opts)?;
            writeln!(out, "dimension: {d}")?;
            Ok(Answer::Done)
        }
        Command::Encode { cnf, variant, output } => {
            let f = load_cnf(&cnf)?;
            let e = gadgets::encode(&f, variant.into());
            emit(output.as_deref(), &format::write_encoding(&e), out)?;
            Ok(Answer::Done)
        }
        Command::CountSat { cnf } => {
            let count = gadgets::brute_force_count(&load_cnf(&cnf)?)?;
            writeln!(out, "models: {count}")?;
            Ok(Answer::Done)
        }
        Command::Plot { system, viewport, faces, output } => {
            let sys = load_system(&system)?;
            let [f] = sys.polys() else {
                bail!("plot expects exactly one polynomial, found {}", sys.len());
            };
            let subdivision = cells::regular_subdivision_2d(f)?;
            if faces {
                emit(output.as_deref(), &format::write_subdivision(f, &subdivision), out)?;
                return Ok(Answer::Done);
            }
            let edges = cells::curve_edges(f, &opts)?;
            let vertices = cells::curve_vertices(f)?;
            let viewport = match viewport {
                Some(v) => parse_viewport(&v)?,
                None => {
                    let mut pts = vertices.clone();
                    pts.extend(edges.iter().map(|e| e.anchor.clone()));
                    Viewport::around(&pts)
                }
            };
            let doc = svg::render(f, &edges, &vertices, &subdivision, &viewport);
            emit(output.as_deref(), &doc, out)?;
            Ok(Answer::Done)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(Answer::Done | Answer::Yes) => ExitCode::SUCCESS,
        Ok(Answer::No) => ExitCode::from(1),
        Err(err) => {
            let _ = out.flush();
            eprintln!("error: {err:#}");
            match err.downcast_ref::<Error>() {
                Some(Error::CapExceeded { .. }) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
