//! The `skelgraph` command line.
//!
//! Exit codes: 0 success, 1 runtime or I/O failure, 2 invalid arguments,
//! 3 `compare` found different topologies. Standard output carries at most
//! one JSON document; diagnostics go to standard error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use skelgraph_core::pipeline::{skeletonize_with, PipelineConfig};
use skelgraph_core::{
    binarize, inject_noise, signature, signature_distance, Error, GngParams, GrayImage, NoiseSpec, Polarity,
    RewireMode, RewireParams, SkeletonGraph, DEFAULT_CORNER_THRESHOLD,
};

use crate::{dot, idx, json, pgm, svg};

#[derive(Debug, Parser)]
#[command(
    name = "skelgraph",
    version,
    about = "Skeleton graphs of character images via growing neural gas"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Learn and rewire the skeleton graph of one image.
    Skeletonize(SkeletonizeArgs),
    /// Delete a random fraction of an image's character pixels.
    Noise(NoiseArgs),
    /// Print the topology signature of a graph file.
    Features(FeaturesArgs),
    /// Compare the signatures of two graph files.
    Compare(CompareArgs),
    /// Extract one image from an MNIST IDX file.
    Mnist(MnistArgs),
}

#[derive(Debug, Args)]
pub struct SkeletonizeArgs {
    /// PGM image (P2 or P5).
    #[arg(long, required_unless_present = "mnist", conflicts_with = "mnist")]
    pub input: Option<PathBuf>,
    /// MNIST IDX image file; use with --index.
    #[arg(long, requires = "index")]
    pub mnist: Option<PathBuf>,
    #[arg(long, requires = "mnist")]
    pub index: Option<usize>,
    /// Where to write the graph JSON.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub run: RunOptions,
}

/// Options shared by `skeletonize` and `mnist --skeletonize`.
#[derive(Debug, Args, Default)]
pub struct RunOptions {
    /// Also write an SVG overlay.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Also write Graphviz DOT.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Also write the graph as learned, before rewiring.
    #[arg(long, value_name = "JSON")]
    pub keep_gng: Option<PathBuf>,
    /// Write an SVG of the network every N signals.
    #[arg(long, value_name = "N", requires = "checkpoint_dir", value_parser = clap::value_parser!(u64).range(1..))]
    pub checkpoint_every: Option<u64>,
    #[arg(long, value_name = "DIR")]
    pub checkpoint_dir: Option<PathBuf>,

    /// Training parameters as JSON; individual flags below override it.
    #[arg(long, value_name = "JSON")]
    pub params: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of training signals.
    #[arg(long)]
    pub steps: Option<u64>,
    #[arg(long)]
    pub lambda0: Option<f64>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub a_max: Option<u32>,
    #[arg(long)]
    pub error0: Option<f64>,
    #[arg(long)]
    pub insert_interval: Option<u64>,
    #[arg(long)]
    pub reset_interval: Option<u64>,
    #[arg(long)]
    pub neighbor_scale: Option<f64>,

    /// Rewiring distance cap as a fraction of the image diagonal.
    #[arg(long)]
    pub cap_factor: Option<f64>,
    #[arg(long, value_enum)]
    pub rewire_mode: Option<RewireModeArg>,

    #[arg(long, default_value_t = 128)]
    pub threshold: u8,
    /// Defaults to dark for PGM input and light for MNIST.
    #[arg(long, value_enum)]
    pub polarity: Option<PolarityArg>,
    /// Blank border kept when trimming.
    #[arg(long, default_value_t = 1)]
    pub margin: u32,
    /// Delete this fraction of character pixels before training.
    #[arg(long, value_parser = parse_fraction)]
    pub xi: Option<f64>,
    /// Sample pixels in proportion to their gray level.
    #[arg(long)]
    pub gray: bool,
    /// Degree-2 nodes with a sharper angle than this count as corners.
    #[arg(long, default_value_t = DEFAULT_CORNER_THRESHOLD)]
    pub corner_threshold: f64,
}

#[derive(Debug, Args)]
pub struct NoiseArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Fraction of character pixels to delete, in [0, 1].
    #[arg(long, value_parser = parse_fraction)]
    pub xi: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 128)]
    pub threshold: u8,
    #[arg(long, value_enum, default_value_t = PolarityArg::Dark)]
    pub polarity: PolarityArg,
    /// Write ASCII P2 instead of binary P5.
    #[arg(long)]
    pub plain: bool,
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    /// Graph JSON file.
    pub graph: PathBuf,
    #[arg(long, default_value_t = DEFAULT_CORNER_THRESHOLD)]
    pub corner_threshold: f64,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    /// Compare endpoints, junctions, cycles and components only.
    #[arg(long)]
    pub ignore_corners: bool,
    #[arg(long, default_value_t = DEFAULT_CORNER_THRESHOLD)]
    pub corner_threshold: f64,
}

#[derive(Debug, Args)]
pub struct MnistArgs {
    /// IDX image file (magic 2051).
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long)]
    pub index: usize,
    /// PGM output, or graph JSON with --skeletonize.
    #[arg(long)]
    pub out: PathBuf,
    /// Skeletonize the digit instead of writing it as PGM.
    #[arg(long)]
    pub skeletonize: bool,
    /// Write ASCII P2 instead of binary P5.
    #[arg(long, conflicts_with = "skeletonize")]
    pub plain: bool,
    #[command(flatten)]
    pub run: RunOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolarityArg {
    /// Ink darker than the threshold (scanned paper).
    Dark,
    /// Ink at or above the threshold (MNIST).
    Light,
}

impl From<PolarityArg> for Polarity {
    fn from(p: PolarityArg) -> Self {
        match p {
            PolarityArg::Dark => Polarity::DarkIsForeground,
            PolarityArg::Light => Polarity::LightIsForeground,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RewireModeArg {
    Recompute,
    Prune,
}

impl From<RewireModeArg> for RewireMode {
    fn from(m: RewireModeArg) -> Self {
        match m {
            RewireModeArg::Recompute => RewireMode::Recompute,
            RewireModeArg::Prune => RewireMode::Prune,
        }
    }
}

fn parse_fraction(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is not in [0, 1]"))
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Invalid arguments or parameter values.
    Usage(String),
    /// I/O, format or pipeline failures.
    Runtime(String),
    /// `compare` found different signatures.
    Mismatch,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
            CliError::Mismatch => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParam { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

fn write(path: &Path, bytes: impl AsRef<[u8]>) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<SkeletonGraph, CliError> {
    json::from_json(&read(path)?).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

fn read_gray(path: &Path) -> Result<GrayImage, CliError> {
    pgm::read_pgm(&read(path)?).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

fn read_mnist(path: &Path, index: usize) -> Result<GrayImage, CliError> {
    idx::read_idx_images(&read(path)?, index).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

/// Runs a parsed command, printing any JSON result to `stdout`.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Skeletonize(args) => {
            let (image, polarity) = match (&args.input, &args.mnist, args.index) {
                (Some(path), _, _) => (read_gray(path)?, Polarity::DarkIsForeground),
                (None, Some(path), Some(index)) => (read_mnist(path, index)?, Polarity::LightIsForeground),
                _ => return Err(CliError::Usage("give --input or --mnist with --index".into())),
            };
            skeletonize_to_files(&image, polarity, &args.run, &args.out, stdout)
        }
        Command::Noise(args) => noise(&args),
        Command::Features(args) => {
            let sig = signature(&read_graph(&args.graph)?, args.corner_threshold);
            print_json(stdout, &json::signature_to_json(&sig))
        }
        Command::Compare(args) => {
            let a = signature(&read_graph(&args.a)?, args.corner_threshold);
            let b = signature(&read_graph(&args.b)?, args.corner_threshold);
            let same = a.matches(&b, !args.ignore_corners);
            let doc = format!(
                "{{\"a\":{},\"b\":{},\"same\":{same},\"distance\":{}}}",
                json::signature_to_json(&a),
                json::signature_to_json(&b),
                signature_distance(&a, &b)
            );
            print_json(stdout, &doc)?;
            if same {
                Ok(())
            } else {
                Err(CliError::Mismatch)
            }
        }
        Command::Mnist(args) => {
            let image = read_mnist(&args.file, args.index)?;
            if args.skeletonize {
                return skeletonize_to_files(&image, Polarity::LightIsForeground, &args.run, &args.out, stdout);
            }
            let r = &args.run;
            if r.svg.is_some() || r.dot.is_some() || r.keep_gng.is_some() || r.checkpoint_every.is_some() {
                return Err(CliError::Usage("graph outputs need --skeletonize".into()));
            }
            let encoding = if args.plain {
                pgm::Encoding::Plain
            } else {
                pgm::Encoding::Binary
            };
            write(&args.out, pgm::write_pgm(&image, encoding))
        }
    }
}

fn print_json(stdout: &mut dyn Write, doc: &str) -> Result<(), CliError> {
    writeln!(stdout, "{doc}").map_err(|e| CliError::Runtime(format!("stdout: {e}")))
}

/// Builds the pipeline configuration from flags over an optional manifest.
pub fn pipeline_config(opts: &RunOptions, default_polarity: Polarity) -> Result<PipelineConfig, CliError> {
    let mut gng = match &opts.params {
        Some(path) => {
            json::params_from_json(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        }
        None => GngParams::default(),
    };
    macro_rules! set {
        ($($flag:ident => $field:ident),*) => {
            $(if let Some(v) = opts.$flag { gng.$field = v; })*
        };
    }
    set!(seed => seed, steps => max_steps, lambda0 => lambda0, n_max => n_max, a_max => a_max,
        error0 => error0, insert_interval => insert_interval, reset_interval => reset_interval,
        neighbor_scale => neighbor_scale);
    let mut rewire = RewireParams::default();
    if let Some(c) = opts.cap_factor {
        rewire.cap_factor = c;
    }
    if let Some(m) = opts.rewire_mode {
        rewire.mode = m.into();
    }
    let cfg = PipelineConfig {
        threshold: opts.threshold,
        polarity: opts.polarity.map(Polarity::from).unwrap_or(default_polarity),
        margin: opts.margin,
        intensity_weighted: opts.gray,
        noise_rate: opts.xi,
        gng,
        rewire,
        corner_threshold: opts.corner_threshold,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn skeletonize_to_files(
    image: &GrayImage,
    default_polarity: Polarity,
    opts: &RunOptions,
    out: &Path,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let cfg = pipeline_config(opts, default_polarity)?;
    let mut checkpoints = Vec::new();
    let result = skeletonize_with(image, &cfg, |state| {
        if let Some(n) = opts.checkpoint_every {
            if state.t() % n == 0 {
                checkpoints.push((state.t(), state.to_graph()));
            }
        }
    })?;
    write(out, json::to_json(&result.skeleton))?;
    if let Some(path) = &opts.svg {
        write(path, svg::render_svg(&result.skeleton, Some(&result.image)))?;
    }
    if let Some(path) = &opts.dot {
        write(path, dot::to_dot(&result.skeleton))?;
    }
    if let Some(path) = &opts.keep_gng {
        write(path, json::to_json(&result.learned))?;
    }
    if let Some(dir) = &opts.checkpoint_dir {
        fs::create_dir_all(dir).map_err(|e| CliError::Runtime(format!("{}: {e}", dir.display())))?;
        for (t, graph) in &checkpoints {
            write(
                &dir.join(format!("gng_{t:08}.svg")),
                svg::render_svg(graph, Some(&result.image)),
            )?;
        }
    }
    eprintln!(
        "{} nodes, {} edges ({} learned edges) on a {}x{} character of {} pixels",
        result.skeleton.node_count(),
        result.skeleton.edge_count(),
        result.learned.edge_count(),
        result.image.width(),
        result.image.height(),
        result.image.count()
    );
    print_json(stdout, &json::signature_to_json(&result.signature))
}

fn noise(args: &NoiseArgs) -> Result<(), CliError> {
    let mut image = read_gray(&args.input)?;
    let polarity = Polarity::from(args.polarity);
    let binary = binarize(&image, args.threshold, polarity);
    let kept = inject_noise(&binary, &NoiseSpec::new(args.xi, args.seed)?);
    for &(x, y) in binary.foreground().difference(kept.foreground()) {
        image.set(x, y, polarity.background());
    }
    eprintln!("kept {} of {} character pixels", kept.count(), binary.count());
    let encoding = if args.plain {
        pgm::Encoding::Plain
    } else {
        pgm::Encoding::Binary
    };
    write(&args.out, pgm::write_pgm(&image, encoding))
}
