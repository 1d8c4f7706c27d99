//! `gosper`: sequences, coverings, plane windows, checks and SVG figures.
//!
//! Exit status is 0 on success, 1 when a check fails or a computation cannot
//! finish, 2 on usage errors and unreadable input.

mod checks;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gosper_core::curves::canonical_coverings;
use gosper_core::enumerate::{enumerate_coverings, CoveringConstraint, DEFAULT_NODE_BUDGET};
use gosper_core::lattice::{EisensteinInt, Word};
use gosper_core::plane::{
    apply_orientation, enumerate_orientations, from_tile_covering, make_x, window_assemble, window_choice_count,
    Anchor, WindowCovering, XKind,
};
use gosper_core::render::{render_svg, RenderSpec, RenderTarget};
use gosper_core::sequences::{build_seq, SequenceFile};
use gosper_core::tiling::Ambient;
use gosper_core::verify::config_census;

#[derive(Parser)]
#[command(name = "gosper", version, about = "Generalized Peano-Gosper tilings and their curve coverings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the turn sequence of a chirality word.
    Seq {
        #[arg(long, value_parser = parse_word, allow_hyphen_values = true)]
        word: Word,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the coverings of a tile by brute force.
    Enum {
        #[command(flatten)]
        tile: TileArgs,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        start: Option<EisensteinInt>,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        end: Option<EisensteinInt>,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        forbid: Option<EisensteinInt>,
    },
    /// List the canonical coverings of a tile, or write one as a window file.
    Cover {
        #[command(flatten)]
        tile: TileArgs,
        /// Write covering number INDEX as a one-region window file.
        #[arg(long, requires = "out")]
        index: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Assemble a finite window of an anchored plane covering.
    Plane {
        #[command(flatten)]
        plane: PlaneArgs,
        /// Orient the curves with the first assignment satisfying (P).
        #[arg(long)]
        oriented: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one of the mechanical checks.
    Verify {
        #[command(subcommand)]
        check: checks::Check,
    },
    /// Draw a tiling, covering, window or census as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct TileArgs {
    #[arg(long, value_parser = parse_word, allow_hyphen_values = true)]
    word: Word,
    /// Tile level; defaults to the word length.
    #[arg(long)]
    level: Option<usize>,
    #[arg(long)]
    oriented: bool,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum AnchorKind {
    Constant,
    Spiral,
    Side,
    Vertex,
}

#[derive(Args, Clone)]
pub struct PlaneArgs {
    #[arg(long, value_enum, default_value = "constant")]
    pub anchor: AnchorKind,
    /// Center (constant, spiral), first hexagon (side) or vertex (vertex).
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub at: Option<EisensteinInt>,
    /// Second hexagon of a side anchor.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub to: Option<EisensteinInt>,
    #[arg(long, value_parser = parse_word, allow_hyphen_values = true, default_value = "+-+")]
    pub word: Word,
    #[arg(long, default_value_t = 1)]
    pub depth: usize,
    #[arg(long, default_value_t = 2)]
    pub lookahead: usize,
    #[arg(long, default_value_t = 0)]
    pub choice: usize,
}

impl PlaneArgs {
    pub fn anchor(&self) -> Anchor {
        let kind = match self.anchor {
            AnchorKind::Constant => XKind::Constant,
            AnchorKind::Spiral => XKind::Spiral,
            AnchorKind::Side => XKind::SideAnchored,
            AnchorKind::Vertex => XKind::VertexAnchored,
        };
        match (Anchor::default_for(kind), self.at, self.to) {
            (Anchor::Constant(_), Some(p), _) => Anchor::Constant(p),
            (Anchor::Spiral(_), Some(p), _) => Anchor::Spiral(p),
            (Anchor::Side(a, b), p, q) => Anchor::Side(p.unwrap_or(a), q.unwrap_or(b)),
            (Anchor::Vertex(_), Some(p), _) => Anchor::Vertex(p),
            (a, _, _) => a,
        }
    }

    pub fn assemble(&self) -> Result<WindowCovering, Failure> {
        let x = make_x(self.anchor(), &self.word, self.depth + self.lookahead).map_err(Failure::run)?;
        window_assemble(&x, self.depth, self.lookahead, self.choice).map_err(Failure::run)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Tiling,
    Covering,
    Window,
    Census,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long, value_enum, default_value = "window")]
    target: Target,
    /// Window file (window and census targets).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Word for the tiling and covering targets.
    #[arg(long, value_parser = parse_word, allow_hyphen_values = true)]
    word: Option<Word>,
    /// Level of the outlined subtiles (tiling target).
    #[arg(long, default_value_t = 1)]
    outline: usize,
    /// Which canonical covering (covering target).
    #[arg(long, default_value_t = 0)]
    index: usize,
    /// Pixels per unit, as N or N/D.
    #[arg(long, value_parser = parse_scale, default_value = "20")]
    scale: (i64, i64),
    #[arg(long)]
    no_regions: bool,
    #[arg(long)]
    no_orientation: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A command outcome other than success.
#[derive(Debug)]
pub enum Failure {
    /// A check ran and did not hold; the report was already printed.
    Check,
    /// A computation failed.
    Run(String),
    /// Bad arguments or unreadable input.
    Usage(String),
}

impl Failure {
    pub fn run(e: impl std::fmt::Display) -> Self {
        Failure::Run(e.to_string())
    }

    pub fn usage(e: impl std::fmt::Display) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_word(s: &str) -> Result<Word, String> {
    Word::parse(s).map_err(|e| e.to_string())
}

fn parse_point(s: &str) -> Result<EisensteinInt, String> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected a,b, got {s:?}"))?;
    let a = a.trim().parse().map_err(|_| format!("bad coordinate {a:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad coordinate {b:?}"))?;
    Ok(EisensteinInt::new(a, b))
}

fn parse_scale(s: &str) -> Result<(i64, i64), String> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: i64 = n.trim().parse().map_err(|_| format!("bad scale {s:?}"))?;
    let d: i64 = d.trim().parse().map_err(|_| format!("bad scale {s:?}"))?;
    if n <= 0 || d <= 0 {
        return Err(format!("scale must be positive, got {s}"));
    }
    Ok((n, d))
}

/// The enumeration node budget, overridable through `GOSPER_NODE_BUDGET`.
pub fn node_budget() -> Result<u64, Failure> {
    match std::env::var("GOSPER_NODE_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::usage(format!("GOSPER_NODE_BUDGET: not a number: {v:?}"))),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes()).map_err(Failure::run)
        }
    }
}

fn read_window(p: &PathBuf) -> Result<WindowCovering, Failure> {
    let text = fs::read_to_string(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
    WindowCovering::from_json(&text).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))
}

fn origin_tile(t: &TileArgs) -> Result<(Ambient, gosper_core::TileRef), Failure> {
    let amb = Ambient::new(EisensteinInt::ZERO, t.word.clone()).map_err(Failure::run)?;
    let tile = amb.origin_tile(t.level.unwrap_or(t.word.len())).map_err(Failure::usage)?;
    Ok((amb, tile))
}

fn covering_lines<'a>(covs: impl Iterator<Item = &'a gosper_core::TileCovering>) -> String {
    let mut s = String::new();
    for c in covs {
        let (a, b) = c.endpoints();
        s.push_str(&format!(
            "{} {} {}\n",
            a,
            b,
            serde_json::to_string(&c.curve).expect("curves serialize")
        ));
    }
    s
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Seq { word, out } => {
            let seq = build_seq(&word).map_err(Failure::usage)?;
            emit(&out, &SequenceFile { word, seq }.to_string())
        }
        Command::Enum { tile, start, end, forbid } => {
            let (amb, t) = origin_tile(&tile)?;
            let c = CoveringConstraint { fixed_start: start, fixed_end: end, forbidden_endpoint: forbid };
            let covs = enumerate_coverings(&amb, t, tile.oriented, &c, node_budget()?).map_err(Failure::run)?;
            let mut text = format!("coverings={} oriented={}\n", covs.len(), tile.oriented);
            text.push_str(&covering_lines(covs.iter()));
            emit(&None, &text)
        }
        Command::Cover { tile, index, out } => {
            let (amb, t) = origin_tile(&tile)?;
            let covs = canonical_coverings(&amb, t, tile.oriented).map_err(Failure::run)?;
            match index {
                None => {
                    let mut text = format!("coverings={} oriented={}\n", covs.len(), tile.oriented);
                    text.push_str(&covering_lines(covs.iter()));
                    emit(&out, &text)
                }
                Some(i) => {
                    let c = covs
                        .get(i)
                        .ok_or_else(|| Failure::usage(format!("index {i} out of range (0..{})", covs.len())))?;
                    let w = from_tile_covering(c).map_err(Failure::run)?;
                    emit(&out, &w.to_json())
                }
            }
        }
        Command::Plane { plane, oriented, out } => {
            let x = make_x(plane.anchor(), &plane.word, plane.depth + plane.lookahead).map_err(Failure::run)?;
            let choices = window_choice_count(&x, plane.depth, plane.lookahead).map_err(Failure::run)?;
            let mut w = plane.assemble()?;
            if oriented {
                let asg = enumerate_orientations(&w);
                let first = asg.first().ok_or_else(|| Failure::Run("no orientation satisfies (P)".into()))?;
                w = apply_orientation(&w, first);
            }
            emit(&out, &w.to_json())?;
            if out.is_some() {
                println!(
                    "anchor={} choices={} regions={} curves={}",
                    plane.anchor().kind(),
                    choices,
                    w.region_count(),
                    w.curves.len()
                );
            }
            Ok(())
        }
        Command::Verify { check } => {
            if checks::run(check)? {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Render(r) => render(r),
    }
}

fn render(r: RenderArgs) -> Result<(), Failure> {
    let need_word = || r.word.clone().ok_or_else(|| Failure::usage("--word is required for this target"));
    let need_in = || r.input.as_ref().ok_or_else(|| Failure::usage("--in is required for this target"));
    let target = match r.target {
        Target::Tiling => {
            let word = need_word()?;
            let amb = Ambient::new(EisensteinInt::ZERO, word.clone()).map_err(Failure::run)?;
            let top = amb.origin_tile(word.len()).map_err(Failure::run)?;
            RenderTarget::Tiling { ambient: amb, top, outline: r.outline }
        }
        Target::Covering => {
            let word = need_word()?;
            let amb = Ambient::new(EisensteinInt::ZERO, word.clone()).map_err(Failure::run)?;
            let top = amb.origin_tile(word.len()).map_err(Failure::run)?;
            let covs = canonical_coverings(&amb, top, true).map_err(Failure::run)?;
            let c = covs
                .into_iter()
                .nth(r.index)
                .ok_or_else(|| Failure::usage(format!("index {} out of range", r.index)))?;
            RenderTarget::Covering(c)
        }
        Target::Window => RenderTarget::Window(read_window(need_in()?)?),
        Target::Census => {
            let w = read_window(need_in()?)?;
            RenderTarget::Census(config_census(&w).map_err(Failure::run)?)
        }
    };
    let mut spec = RenderSpec::new(target);
    spec.scale = r.scale;
    spec.show_regions = !r.no_regions;
    spec.show_orientation = !r.no_orientation;
    let svg = render_svg(&spec).map_err(Failure::run)?;
    emit(&r.out, &svg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Run(m)) => {
            eprintln!("gosper: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("gosper: {m}");
            ExitCode::from(2)
        }
    }
}
