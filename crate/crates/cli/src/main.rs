//! Command-line front end: enumeration, verdicts, quiver extraction,
//! invariants, reconstruction, and SVG rendering.
//!
//! Exit codes: 0 success, 1 domain or validation failure, 2 usage error,
//! 3 work-bound exceeded.

mod formats;
mod render;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tilings_core::invariants::{
    ag_invariant, cluster_profile, gorenstein_dimension, is_end_algebra, ClusterOutcome,
};
use tilings_core::orbit::ext_nonzero;
use tilings_core::polygon::{Diagonal, PolygonContext};
use tilings_core::quiver::{tiling_algebra, Quiver};
use tilings_core::reconstruct::{tiling_from_gentle, AbstractTiling};
use tilings_core::rigid::{
    classify_tile, enumerate_connected_maximal_with_limit, enumerate_maximal_rigid_with_limit,
    ArcCollection, TileType, DEFAULT_ENUMERATION_LIMIT,
};
use tilings_core::Error as CoreError;

use formats::FileKind;

#[derive(Parser)]
#[command(
    name = "tilings",
    version,
    about = "Dissections of marked polygons, their quivers with relations, and derived invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the maximal rigid arc collections of the (n, m) polygon
    Enumerate {
        n: usize,
        m: usize,
        /// Keep only collections whose arc graph is connected
        #[arg(long)]
        connected: bool,
        /// Print a tile-type census under each collection
        #[arg(long)]
        census: bool,
        /// Abort when the polygon has more diagonals than this
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
        max_diagonals: usize,
        /// Report one representative per rotation class
        #[arg(long)]
        dedup_rotations: bool,
    },
    /// Report rigid / maximal / connected / theorem verdicts for a tiling
    Check {
        tiling: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Emit the quiver with relations of a tiling
    Algebra { tiling: PathBuf },
    /// Thread-walk invariant of a tiling or quiver file
    Ag { file: PathBuf },
    /// Gorenstein dimension of a tiling or quiver file
    Gorenstein { file: PathBuf },
    /// Test whether a quiver is an endomorphism algebra for degree m
    Endalg {
        quiver: PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// Tile census and cluster-tilted profile of a tiling
    Profile {
        tiling: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Rebuild a tiling from a gentle quiver
    Reconstruct { quiver: PathBuf },
    /// Degree-k extension test between two diagonals
    Ext {
        n: usize,
        m: usize,
        /// Source diagonal, e.g. 2,7
        #[arg(long)]
        from: String,
        /// Target diagonal, e.g. 1,6
        #[arg(long)]
        to: String,
        /// Extension degree, between 1 and m
        #[arg(long)]
        deg: usize,
    },
    /// Render a tiling file to SVG
    Render {
        tiling: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

enum Failure {
    Input(String),
    Core(CoreError),
    /// Output pipe closed early; not an error.
    Pipe,
}

impl Failure {
    fn message(&self) -> String {
        match self {
            Failure::Input(msg) => msg.clone(),
            Failure::Core(err) => err.to_string(),
            Failure::Pipe => String::new(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Core(CoreError::ResourceBound { .. }) => 3,
            Failure::Core(_) => 1,
            Failure::Pipe => 0,
        }
    }
}

impl From<CoreError> for Failure {
    fn from(err: CoreError) -> Self {
        Failure::Core(err)
    }
}

impl From<String> for Failure {
    fn from(msg: String) -> Self {
        Failure::Input(msg)
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        if err.kind() == io::ErrorKind::BrokenPipe {
            Failure::Pipe
        } else {
            Failure::Input(err.to_string())
        }
    }
}

type R<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) | Err(Failure::Pipe) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}

fn read(path: &Path) -> R<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_diagonal(ctx: &PolygonContext, text: &str) -> R<Diagonal> {
    let parts: Vec<&str> = text.split(',').collect();
    let [i, j] = parts.as_slice() else {
        return Err(Failure::Input(format!("expected i,j but got {text:?}")));
    };
    let parse = |s: &str| -> R<usize> {
        s.trim()
            .parse()
            .map_err(|_| Failure::Input(format!("bad vertex {s:?}")))
    };
    Ok(ctx.diagonal(parse(i)?, parse(j)?)?)
}

fn census_line(ctx: &PolygonContext, tc: &ArcCollection) -> R<String> {
    let m = ctx.degree();
    let mut regular = vec![0usize; m + 2];
    let (mut single_wide, mut short_flanked, mut double_short, mut closed, mut other) =
        (0, 0, 0, 0, 0);
    for tile in tc.extract_tiles()? {
        match classify_tile(ctx, &tile) {
            Some(TileType::Regular(k)) => regular[k] += 1,
            Some(TileType::SingleWide) => single_wide += 1,
            Some(TileType::ShortFlanked(_)) => short_flanked += 1,
            Some(TileType::DoubleShortFlanked(..)) => double_short += 1,
            Some(TileType::Closed) => closed += 1,
            None => other += 1,
        }
    }
    let mut out = String::from("census");
    for (k, &count) in regular.iter().enumerate().skip(1) {
        if count > 0 {
            write!(out, " regular{k}={count}").unwrap();
        }
    }
    for (name, count) in [
        ("single-wide", single_wide),
        ("short-flanked", short_flanked),
        ("double-short-flanked", double_short),
        ("closed", closed),
        ("unclassified", other),
    ] {
        if count > 0 {
            write!(out, " {name}={count}").unwrap();
        }
    }
    Ok(out)
}

fn arcs_line(tc: &ArcCollection) -> String {
    tc.arcs()
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn load_quiver_or_tiling_algebra(path: &Path) -> R<Quiver> {
    let text = read(path)?;
    match formats::sniff(&text) {
        Some(FileKind::Quiver) => Ok(formats::parse_quiver(&text)?),
        Some(FileKind::Tiling) => {
            let (points, arcs) = formats::parse_tiling(&text)?;
            let tiling = AbstractTiling::new(points, arcs)?;
            Ok(tiling_algebra(&tiling)?)
        }
        None => Err(Failure::Input(format!(
            "{}: expected a tiling or quiver file",
            path.display()
        ))),
    }
}

fn load_collection(path: &Path, n: usize, m: usize) -> R<ArcCollection> {
    let text = read(path)?;
    let (points, arcs) = formats::parse_tiling(&text)?;
    let ctx = PolygonContext::new(n, m)?;
    if points != ctx.vertex_count() {
        return Err(Failure::Input(format!(
            "tiling has {points} points but the ({n},{m}) polygon has {}",
            ctx.vertex_count()
        )));
    }
    Ok(ArcCollection::from_pairs(ctx, &arcs)?)
}

fn run(command: Command, out: &mut impl io::Write) -> R<()> {
    match command {
        Command::Enumerate {
            n,
            m,
            connected,
            census,
            max_diagonals,
            dedup_rotations,
        } => {
            let ctx = PolygonContext::new(n, m)?;
            let mut collections = if connected {
                enumerate_connected_maximal_with_limit(&ctx, max_diagonals)?
            } else {
                enumerate_maximal_rigid_with_limit(&ctx, max_diagonals)?
            };
            if dedup_rotations {
                collections = collections
                    .iter()
                    .map(ArcCollection::rotation_representative)
                    .collect();
                collections.sort_by(|a, b| a.arcs().cmp(b.arcs()));
                collections.dedup_by(|a, b| a.arcs() == b.arcs());
            }
            for tc in &collections {
                writeln!(out, "collection {}", arcs_line(tc))?;
                if census {
                    if tc.has_crossing() {
                        writeln!(out, "census crossing")?;
                    } else {
                        writeln!(out, "{}", census_line(&ctx, tc)?)?;
                    }
                }
            }
            writeln!(out, "total {}", collections.len())?;
            Ok(())
        }
        Command::Check { tiling, n, m } => {
            let tc = load_collection(&tiling, n, m)?;
            let rigid = tc.is_m_rigid();
            writeln!(out, "rigid {rigid}")?;
            if rigid {
                writeln!(out, "maximal {}", tc.is_maximal()?)?;
            } else {
                writeln!(out, "maximal -")?;
            }
            let connected = tc.is_connected();
            writeln!(out, "connected {connected}")?;
            if connected && !tc.has_crossing() {
                writeln!(out, "theorem {}", tc.satisfies_theorem()?)?;
            } else {
                writeln!(out, "theorem -")?;
            }
            Ok(())
        }
        Command::Algebra { tiling } => {
            let text = read(&tiling)?;
            let (points, arcs) = formats::parse_tiling(&text)?;
            let q = tiling_algebra(&AbstractTiling::new(points, arcs)?)?;
            write!(out, "{}", formats::print_quiver(&q))?;
            Ok(())
        }
        Command::Ag { file } => {
            let q = load_quiver_or_tiling_algebra(&file)?;
            for (a, b) in ag_invariant(&q)?.pairs() {
                writeln!(out, "({a},{b})")?;
            }
            Ok(())
        }
        Command::Gorenstein { file } => {
            let q = load_quiver_or_tiling_algebra(&file)?;
            writeln!(out, "{}", gorenstein_dimension(&q)?)?;
            Ok(())
        }
        Command::Endalg { quiver, m } => {
            let q = formats::parse_quiver(&read(&quiver)?)?;
            writeln!(out, "{}", is_end_algebra(&q, m)?)?;
            Ok(())
        }
        Command::Profile { tiling, n, m } => {
            let tc = load_collection(&tiling, n, m)?;
            let ctx = *tc.ctx();
            let profile = cluster_profile(&tc)?;
            writeln!(
                out,
                "{}",
                census_line(&ctx, &tc)?.replacen("census", "tiles", 1)
            )?;
            writeln!(out, "x {}", profile.x())?;
            match profile.outcome() {
                ClusterOutcome::ClusterTilted { rank, angulation } => {
                    writeln!(out, "cluster-tilted rank {rank}")?;
                    write!(
                        out,
                        "{}",
                        formats::print_tiling(angulation.point_count(), angulation.arcs())
                    )?;
                }
                ClusterOutcome::CutFrom { rank, cuts } => {
                    writeln!(out, "cut-from rank {rank}")?;
                    for (from, to) in cuts {
                        writeln!(out, "cut {from} {to}")?;
                    }
                }
            }
            Ok(())
        }
        Command::Reconstruct { quiver } => {
            let q = formats::parse_quiver(&read(&quiver)?)?;
            let tiling = tiling_from_gentle(&q)?;
            write!(
                out,
                "{}",
                formats::print_tiling(tiling.point_count(), tiling.arcs())
            )?;
            Ok(())
        }
        Command::Ext {
            n,
            m,
            from,
            to,
            deg,
        } => {
            let ctx = PolygonContext::new(n, m)?;
            let b = parse_diagonal(&ctx, &from)?;
            let a = parse_diagonal(&ctx, &to)?;
            let nonzero = ext_nonzero(&ctx, b, a, deg)?;
            writeln!(out, "{}", if nonzero { "nonzero" } else { "zero" })?;
            Ok(())
        }
        Command::Render { tiling, output } => {
            let text = read(&tiling)?;
            let (points, arcs) = formats::parse_tiling(&text)?;
            let svg = render::render_svg(points, &arcs);
            fs::write(&output, svg)
                .map_err(|e| Failure::Input(format!("{}: {e}", output.display())))?;
            Ok(())
        }
    }
}
