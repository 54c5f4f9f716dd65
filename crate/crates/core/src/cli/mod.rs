//! The `texseg` command line.
//!
//! Every subcommand writes plain files (PGM/PNG previews, `f64raw` maps,
//! CSV tables) and prints a short CSV summary to standard output. Exit
//! codes: 0 success, 2 usage error, 3 contour vanished, 4 I/O error.

mod config;
mod run;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

use crate::Error;

pub use run::run;

#[derive(Debug, Parser)]
#[command(
    name = "texseg",
    version,
    about = "Graph-entropy texture descriptors and geodesic active contour segmentation",
    args_override_self = true
)]
pub struct Cli {
    /// Worker threads for data-parallel stages (default: all cores). Results
    /// do not depend on this value.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,

    /// TOML file of `key = value` defaults for the subcommand's flags. Keys
    /// are flag names without dashes; explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic test image and its ground-truth mask.
    Synth(SynthArgs),
    /// Compute a per-pixel descriptor map.
    Descriptor(DescriptorArgs),
    /// Segment with a geodesic active contour.
    Segment(SegmentArgs),
    /// Dimension curves and sphere-growth dimension estimates.
    Fractal {
        #[command(subcommand)]
        mode: FractalMode,
    },
    /// Score a mask against a ground truth.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SynthKind {
    /// Smooth blobs inside a letter 'E', jittered waves around it.
    ECompose,
    /// Black and white stripes inside a letter 'E' on uniform noise.
    EStripes,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(value_enum)]
    pub kind: SynthKind,
    /// Output directory; receives image.pgm, image.f64 and mask.pgm.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Width in pixels, at least 40 [default: 160 for e-compose, 80 for e-stripes].
    #[arg(long)]
    pub width: Option<usize>,
    /// Height in pixels, at least 40 [default: as width].
    #[arg(long)]
    pub height: Option<usize>,
}

/// Patch and index parameters shared by `descriptor`.
#[derive(Debug, Args)]
pub struct IndexArgs {
    /// Graph setting: GwE, GwA, TwE, TwA, TuE or TuA.
    #[arg(long, default_value = "TwA")]
    pub setting: String,
    /// Entropy index: IfV, IfP or IDE (IDE needs TuE or TuA).
    #[arg(long, default_value = "IfV")]
    pub kind: String,
    /// Patch radius, > 0.
    #[arg(long, default_value_t = 5.0)]
    pub rho: f64,
    /// Contrast scale of the edge weights, > 0.
    #[arg(long, default_value_t = 0.1)]
    pub beta: f64,
    /// Weighting parameter q in (0, 1).
    #[arg(long, default_value_t = 0.1)]
    pub q: f64,
    /// Prefactor M > 0 of the Dehmer functionals [default: 1/(1-q)].
    #[arg(long = "M", value_name = "M")]
    pub m: Option<f64>,
    /// Pixel neighbourhood: 4 or 8.
    #[arg(long, default_value = "8")]
    pub nbhd: String,
}

#[derive(Debug, Args)]
pub struct DescriptorArgs {
    /// Input image (pgm, png or f64raw; RGB is converted to luma).
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    #[command(flatten)]
    pub index: IndexArgs,
    /// Output prefix; writes PREFIX.f64 and a rescaled PREFIX.pgm preview.
    #[arg(long, value_name = "PREFIX")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SegmentArgs {
    /// Input channels: descriptor maps (f64raw) or images; each is normalized to [0, 1].
    #[arg(long, value_name = "PATH", required = true, value_delimiter = ',', action = ArgAction::Set)]
    pub input: Vec<PathBuf>,
    /// Channel weights, one per input [default: all 1].
    #[arg(long, value_delimiter = ',', action = ArgAction::Set)]
    pub weights: Option<Vec<f64>>,
    /// Initial circle `cx,cy,r` [default: centered, radius a tenth of the smaller side].
    #[arg(long, value_name = "CX,CY,R", value_delimiter = ',', action = ArgAction::Set, conflicts_with = "rect")]
    pub circle: Option<Vec<f64>>,
    /// Initial rectangle `x0,y0,x1,y1` (inclusive pixel corners).
    #[arg(long, value_name = "X0,Y0,X1,Y1", value_delimiter = ',', action = ArgAction::Set)]
    pub rect: Option<Vec<usize>>,
    /// Gaussian pre-smoothing of the edge map, >= 0.
    #[arg(long, default_value_t = 2.0)]
    pub sigma: f64,
    /// Perona-Malik contrast parameter, > 0.
    #[arg(long, default_value_t = 0.1)]
    pub lambda: f64,
    /// Force weight; negative values inflate the contour.
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub nu: f64,
    /// Time step in (0, 0.25].
    #[arg(long, default_value_t = 0.1)]
    pub tau: f64,
    /// Reinitialize to a signed distance every N iterations.
    #[arg(long, default_value_t = 100)]
    pub reinit_every: usize,
    /// Reinitialization: `subpixel` keeps the interpolated zero crossings,
    /// `pixel` snaps the interface to pixel edges.
    #[arg(long, default_value = "subpixel", value_parser = ["subpixel", "pixel"])]
    pub reinit: String,
    /// Iterations without mask change that count as steady state.
    #[arg(long, default_value_t = 100)]
    pub steady_window: usize,
    #[arg(long, default_value_t = 20000)]
    pub max_iters: usize,
    /// Write an overlay PNG every N iterations (0 disables).
    #[arg(long, default_value_t = 0)]
    pub snapshot_every: usize,
    /// Output directory; receives mask.pgm, log.csv and snapshots.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum FractalMode {
    /// Tabulate ln f^V and ln f^P against the dimension, one CSV per q.
    Curves(CurvesArgs),
    /// Pooled sphere-growth volumes of amoebas and the fitted dimension.
    Growth(GrowthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    /// Numerical integral (reference values).
    Integral,
    /// Closed form with the positive exponent of -ln q.
    Printed,
}

#[derive(Debug, Args)]
pub struct CurvesArgs {
    /// Comma-separated weighting parameters in (0, 1).
    #[arg(long, value_delimiter = ',', action = ArgAction::Set, default_value = "0.1,0.5,0.7")]
    pub q: Vec<f64>,
    /// Prefactor M > 0.
    #[arg(long = "M", value_name = "M", default_value_t = 1.0)]
    pub m: f64,
    /// Dimension step; the grid runs from 0 to 2.
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    #[arg(long, value_enum, default_value_t = Convention::Integral)]
    pub convention: Convention,
    /// Output directory; receives curve_q<q>.csv per q.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GrowthArgs {
    /// Input image.
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    /// Amoeba radius, > 0.
    #[arg(long, default_value_t = 12.0)]
    pub rho: f64,
    /// Contrast scale, > 0.
    #[arg(long, default_value_t = 0.1)]
    pub beta: f64,
    /// Pixel neighbourhood: 4 or 8.
    #[arg(long, default_value = "8")]
    pub nbhd: String,
    /// Single center `x,y` [default: pool all pixels at least rho from the border].
    #[arg(long, value_name = "X,Y", value_delimiter = ',', action = ArgAction::Set)]
    pub center: Option<Vec<usize>>,
    /// Largest integer radius sampled (radii 1..=N).
    #[arg(long, default_value_t = 12)]
    pub max_radius: usize,
    /// Fit range `dmin,dmax`.
    #[arg(long, value_delimiter = ',', action = ArgAction::Set, default_value = "3,10")]
    pub fit: Vec<f64>,
    /// Output CSV of `d,volume`.
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Segmentation mask (pgm or png; > 127.5 is inside).
    #[arg(long, value_name = "PATH")]
    pub mask: PathBuf,
    /// Ground-truth mask.
    #[arg(long, value_name = "PATH")]
    pub truth: PathBuf,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ContourVanished { .. } => 3,
        Error::Io { .. }
        | Error::MalformedHeader(_)
        | Error::MalformedPayload
        | Error::UnsupportedFormat(_)
        | Error::ValueOutOfRange(_)
        | Error::Codec(_) => 4,
        _ => 2,
    }
}

/// Parses `args` (including the program name), applying `--config`.
pub fn parse_from(args: Vec<OsString>) -> Result<Cli, clap::Error> {
    let first = Cli::try_parse_from(&args)?;
    match &first.config {
        None => Ok(first),
        Some(path) => {
            let merged = config::inject(&args, path, &first.command)?;
            Cli::try_parse_from(merged)
        }
    }
}

/// Entry point of the binary.
pub fn main() -> ExitCode {
    let cli = match parse_from(std::env::args_os().collect()) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                clap::error::ErrorKind::Io => 4,
                _ if e.use_stderr() => 2,
                _ => 0,
            };
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("texseg: cannot size thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let mut stdout = std::io::stdout().lock();
    match run(&cli.command, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("texseg: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
