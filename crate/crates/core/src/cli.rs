//! Command-line front end. `run` parses arguments, executes one subcommand
//! and returns the process exit code.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::complexes::Flavor;
use crate::error::{Error, Result};
use crate::explorer::{scan_alpha_section, section_properties, GridSpec, ScanRequest};
use crate::geometry::{generate_sample, hausdorff, Noise, Point, Sample, StratifiedShape};
use crate::io::{read_json, read_sample, to_json_string, write_json, write_sample, write_scan_csv};
use crate::pipeline::{classify, default_sweep, group_strata, infer_all, report, ReportContext};
use crate::plot::{report_svg, scan_svg};
use crate::relhom::{cross_validate, image_rank, image_rank_oracle, Level, QuerySpec};
use crate::scales::{
    select_bounded, select_manifold, select_strong, validate_manual, Ambient, Choice, ReachBound, ScaleConstants,
    SeemlinessBound, SelectedScales,
};

pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_INFEASIBLE: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "localhom", version, about = "Local homology estimation from point samples")]
pub struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a verified ε-sample of an analytic shape (CSV plus JSON sidecar).
    Generate(GenerateArgs),
    /// Select scales and print them with any warnings.
    Scales(ScaleArgs),
    /// Estimate local homology at every sample point.
    Infer(InferArgs),
    /// Like `infer`, and score the estimates against the sample's shape.
    Classify(ClassifyArgs),
    /// Group sample points whose local homology images agree.
    Group(InferArgs),
    /// Scan admissible radii at one point of a shape.
    Scan(ScanArgs),
    /// Cross-validate the two image-rank routes.
    Check(CheckArgs),
    /// Draw a report as SVG.
    Plot(PlotArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShapeName {
    Circle,
    CircleChord,
    Segment,
}

#[derive(Args, Debug)]
pub struct ShapeArgs {
    #[arg(long, value_enum)]
    pub shape: ShapeName,
    /// Circle radius.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Segment endpoints as x0,y0,x1,y1.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.0, 0.0, 1.0, 0.0])]
    pub endpoints: Vec<f64>,
}

impl ShapeArgs {
    fn build(&self) -> Result<StratifiedShape> {
        match self.shape {
            ShapeName::Circle => StratifiedShape::circle(self.radius),
            ShapeName::CircleChord => Ok(StratifiedShape::circle_chord()),
            ShapeName::Segment => match self.endpoints[..] {
                [x0, y0, x1, y1] => StratifiedShape::segment([x0, y0], [x1, y1]),
                _ => Err(Error::InvalidArgument("--endpoints needs x0,y0,x1,y1".into())),
            },
        }
    }
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long)]
    pub eps: f64,
    #[arg(long)]
    pub n: usize,
    /// Radius of the uniform disc noise; 0 for a noise-free sample.
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Regime {
    Manual,
    Strong,
    Bounded,
    Manifold,
}

/// Multiplier of the complex scale: 1 (Čech), sqrt2 (Rips, Euclidean) or 2 (Rips, general metric).
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CFactor {
    #[value(name = "1")]
    One,
    #[value(name = "sqrt2")]
    Sqrt2,
    #[value(name = "2")]
    Two,
}

#[derive(Args, Debug, Default)]
pub struct ScaleArgs {
    #[arg(long, value_enum, default_value = "manual")]
    pub select: Option<Regime>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, value_enum, default_value = "sqrt2")]
    pub c: Option<CFactor>,
    /// 1 for noisy samples; defaults to the sample's own flag.
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub t: Option<u8>,
    #[arg(long)]
    pub scale1: Option<f64>,
    #[arg(long)]
    pub scale2: Option<f64>,
    #[arg(long = "ball-R")]
    pub ball_big: Option<f64>,
    #[arg(long = "ball-r")]
    pub ball_small: Option<f64>,
    /// strong regime: r̄(β)
    #[arg(long)]
    pub rbar: Option<f64>,
    /// strong regime: R̄(β)
    #[arg(long)]
    pub rbar_outer: Option<f64>,
    /// bounded regime: r̄(β) ≤ coef·β^exponent, R̄ ≥ outer
    #[arg(long)]
    pub coef: Option<f64>,
    #[arg(long)]
    pub exponent: Option<f64>,
    #[arg(long)]
    pub outer: Option<f64>,
    #[arg(long)]
    pub nu: Option<f64>,
    /// distance from the boundary beyond which interior points are evaluated
    #[arg(long)]
    pub margin: Option<f64>,
    /// explicit outer radius instead of the interval midpoint
    #[arg(long)]
    pub pick_outer: Option<f64>,
    #[arg(long)]
    pub pick_inner: Option<f64>,
}

fn need(v: Option<f64>, flag: &str) -> Result<f64> {
    v.ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required here")))
}

impl ScaleArgs {
    fn constants(&self, noisy_default: bool) -> ScaleConstants {
        let noisy = self.t.map_or(noisy_default, |t| t == 1);
        match self.c.unwrap_or(CFactor::Sqrt2) {
            CFactor::One => ScaleConstants::new(noisy, Ambient::Euclidean, Flavor::Cech),
            CFactor::Sqrt2 => ScaleConstants::new(noisy, Ambient::Euclidean, Flavor::Rips),
            CFactor::Two => ScaleConstants::new(noisy, Ambient::General, Flavor::Rips),
        }
    }

    fn choice(&self) -> Result<Choice> {
        match (self.pick_outer, self.pick_inner) {
            (None, None) => Ok(Choice::Midpoint),
            (Some(outer), Some(inner)) => Ok(Choice::Explicit { outer, inner }),
            _ => Err(Error::InvalidArgument("--pick-outer and --pick-inner go together".into())),
        }
    }

    /// Scales and the epsilon they were checked against.
    fn select(&self, cc: ScaleConstants, sample_eps: Option<f64>) -> Result<(SelectedScales, f64)> {
        let eps = self.eps.or(sample_eps).ok_or_else(|| Error::InvalidArgument("--eps is required".into()))?;
        let mut scales = match self.select.unwrap_or(Regime::Manual) {
            Regime::Manual => SelectedScales::manual(
                need(self.scale1, "scale1")?,
                need(self.scale2, "scale2")?,
                need(self.ball_big, "ball-R")?,
                need(self.ball_small, "ball-r")?,
            )?,
            Regime::Strong => {
                select_strong(cc, eps, need(self.rbar, "rbar")?, need(self.rbar_outer, "rbar-outer")?, self.choice()?)?
            }
            Regime::Bounded => {
                let bound = SeemlinessBound::new(
                    need(self.coef, "coef")?,
                    need(self.exponent, "exponent")?,
                    need(self.outer, "outer")?,
                )?;
                select_bounded(cc, eps, bound, self.choice()?)?
            }
            Regime::Manifold => {
                select_manifold(cc, eps, ReachBound::new(need(self.nu, "nu")?, self.margin)?, self.choice()?)?
            }
        };
        scales.warnings = validate_manual(cc, eps, &scales)?;
        Ok((scales, eps))
    }
}

#[derive(Args, Debug)]
pub struct InferArgs {
    #[arg(long)]
    pub sample: PathBuf,
    #[command(flatten)]
    pub scales: ScaleArgs,
    /// Prime field size.
    #[arg(long, default_value_t = 2)]
    pub field: u32,
    /// Highest homology degree.
    #[arg(long, default_value_t = 1)]
    pub maxdim: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub infer: InferArgs,
    /// Restricted-accuracy thresholds; defaults to 0, 0.05, ..., 0.5.
    #[arg(long, value_delimiter = ',')]
    pub sweep: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Center as x,y; must lie on the shape.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub center: Vec<f64>,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub eps: f64,
    /// Radius axis as lo,hi,steps.
    #[arg(long, value_delimiter = ',', required = true)]
    pub grid: Vec<f64>,
    #[arg(long, default_value_t = 2000)]
    pub dense_n: usize,
    #[arg(long, value_enum, default_value = "cech")]
    pub flavor: FlavorArg,
    /// CSV of evaluated cells; the summary goes next to it as JSON.
    #[arg(short, long)]
    pub output: PathBuf,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Rips,
    Cech,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long, default_value_t = 0)]
    pub random: usize,
    #[arg(long, default_value_t = 10)]
    pub max_pts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also run the hand-checked fixtures.
    #[arg(long)]
    pub fixtures: bool,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    #[arg(long)]
    pub report: PathBuf,
    #[arg(short, long)]
    pub output: PathBuf,
    /// Leave out misclassified points.
    #[arg(long)]
    pub only_correct: bool,
    /// Skip the outline of the analytic shape.
    #[arg(long)]
    pub no_shape: bool,
}

fn emit<T: Serialize>(value: &T, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => write_json(p, value),
        None => {
            print!("{}", to_json_string(value)?);
            Ok(())
        }
    }
}

fn cmd_generate(a: &GenerateArgs) -> Result<()> {
    let shape = a.shape.build()?;
    let noise = if a.noise > 0.0 { Noise::UniformDisc { radius: a.noise } } else { Noise::None };
    let sample = generate_sample(&shape, a.eps, a.n, noise, a.seed)?;
    write_sample(&a.output, &sample)?;
    let est = hausdorff(&sample.points, &shape, ((8.0 / a.eps).ceil() as usize).max(1))?;
    eprintln!(
        "wrote {} points to {} (Hausdorff distance {:.6} + {:.6} < {})",
        sample.len(),
        a.output.display(),
        est.value,
        est.discretization_bound,
        a.eps
    );
    Ok(())
}

fn cmd_scales(a: &ScaleArgs) -> Result<()> {
    let cc = a.constants(false);
    let (scales, _) = a.select(cc, None)?;
    emit(&scales, None)
}

struct Prepared {
    sample: Sample,
    scales: SelectedScales,
    cc: ScaleConstants,
}

fn prepare(a: &InferArgs) -> Result<Prepared> {
    let sample = read_sample(&a.sample, a.scales.eps)?;
    let cc = a.scales.constants(sample.noisy);
    let (scales, _) = a.scales.select(cc, Some(sample.epsilon))?;
    for w in &scales.warnings {
        eprintln!("warning: {w}");
    }
    Ok(Prepared { sample, scales, cc })
}

fn cmd_infer(a: &InferArgs, truth: Option<&[f64]>) -> Result<()> {
    let Prepared { sample, scales, cc } = prepare(a)?;
    let results = infer_all(&sample, &scales, cc, a.field, a.maxdim)?;
    let ctx =
        ReportContext { sample: &sample, scales: &scales, flavor: cc.flavor, modulus: a.field, max_degree: a.maxdim };
    let rep = match truth {
        None => report(&ctx, &results),
        Some(sweep) => {
            let kind =
                sample.shape.clone().ok_or_else(|| Error::InvalidArgument("sample sidecar records no shape".into()))?;
            let shape = StratifiedShape::new(kind)?;
            let rep = classify(&ctx, &results, &shape, sweep)?;
            if let Some(acc) = rep.accuracy.overall {
                eprintln!("overall accuracy {acc:.4}");
            }
            rep
        }
    };
    emit(&rep, a.output.as_deref())
}

fn cmd_group(a: &InferArgs) -> Result<()> {
    let Prepared { sample, scales, cc } = prepare(a)?;
    let groups = group_strata(&sample, &scales, cc.flavor, a.field, a.maxdim, sample.epsilon)?;
    eprintln!("{} groups (heuristic)", groups.groups.len());
    emit(&groups, a.output.as_deref())
}

fn cmd_scan(a: &ScanArgs) -> Result<()> {
    let shape = a.shape.build()?;
    let [lo, hi, steps] = a.grid[..] else {
        return Err(Error::InvalidArgument("--grid needs lo,hi,steps".into()));
    };
    if steps < 1.0 || steps.fract() != 0.0 {
        return Err(Error::InvalidArgument(format!("grid steps must be a positive integer, got {steps}")));
    }
    let [cx, cy] = a.center[..] else {
        return Err(Error::InvalidArgument("--center needs x,y".into()));
    };
    let req = ScanRequest {
        center: Point::xy(cx, cy),
        alpha: a.alpha,
        eps: a.eps,
        grid: GridSpec { lo, hi, steps: steps as usize },
        dense_n: a.dense_n,
        flavor: match a.flavor {
            FlavorArg::Rips => Flavor::Rips,
            FlavorArg::Cech => Flavor::Cech,
        },
    };
    let scan = scan_alpha_section(&shape, &req)?;
    write_scan_csv(&a.output, &scan)?;
    #[derive(Serialize)]
    struct Summary<'a> {
        request: &'a ScanRequest,
        target_ranks: &'a [usize],
        dense_hausdorff: f64,
        summary: &'a crate::explorer::SectionSummary,
        properties: crate::explorer::PropertyReport,
    }
    let summary = Summary {
        request: &req,
        target_ranks: &scan.target_ranks,
        dense_hausdorff: scan.dense_hausdorff,
        summary: &scan.summary,
        properties: section_properties(&scan),
    };
    write_json(&a.output.with_extension("json"), &summary)?;
    if let Some(svg) = &a.svg {
        std::fs::write(svg, scan_svg(&scan))?;
    }
    Ok(())
}

/// Hand-checked instances: (name, points, query, expected ranks).
pub fn fixtures() -> Vec<(&'static str, Vec<Point>, QuerySpec, Vec<usize>)> {
    let circle: Vec<Point> = (0..12)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / 12.0;
            Point::xy(t.cos(), t.sin())
        })
        .collect();
    let line: Vec<Point> = (0..11).map(|k| Point::xy(k as f64 * 0.1, 0.0)).collect();
    let q = |center, l1: (f64, f64), l2: (f64, f64), flavor| QuerySpec {
        center,
        level1: Level::new(l1.0, l1.1),
        level2: Level::new(l2.0, l2.1),
        flavor,
        modulus: 2,
        max_degree: 1,
    };
    let gap = vec![Point::xy(0.0, 0.0), Point::xy(1.0, 0.0), Point::xy(2.5, 0.0), Point::xy(3.5, 0.0)];
    vec![
        ("circle point", circle.clone(), q(0, (0.3, 0.9), (0.4, 0.6), Flavor::Rips), vec![0, 1]),
        ("circle point, Čech", circle, q(5, (0.3, 0.9), (0.3, 0.6), Flavor::Cech), vec![0, 1]),
        ("segment interior", line.clone(), q(5, (0.06, 0.35), (0.08, 0.2), Flavor::Rips), vec![0, 1]),
        ("segment endpoint", line, q(0, (0.06, 0.35), (0.08, 0.2), Flavor::Rips), vec![0, 0]),
        ("components merge", gap, q(0, (0.5, 100.0), (0.75, 100.0), Flavor::Rips), vec![1, 0]),
    ]
}

#[derive(Serialize)]
struct CheckOutput {
    fixtures_passed: usize,
    fixtures_total: usize,
    random: crate::relhom::CrossValidation,
}

fn cmd_check(a: &CheckArgs) -> Result<bool> {
    let mut fixtures_passed = 0;
    let mut fixtures_total = 0;
    if a.fixtures {
        for (name, points, spec, expected) in fixtures() {
            fixtures_total += 1;
            let direct = image_rank(&spec, &points)?.ranks;
            let coned = image_rank_oracle(&spec, &points)?.ranks;
            let ok = direct == expected && coned == expected;
            fixtures_passed += usize::from(ok);
            eprintln!(
                "{} {name}: direct {direct:?}, coned {coned:?}, expected {expected:?}",
                if ok { "ok  " } else { "FAIL" }
            );
        }
    }
    let random = cross_validate(a.random, a.max_pts, a.seed)?;
    println!("{}/{} direct==coned", random.agreed, random.instances);
    if a.fixtures {
        println!("{fixtures_passed}/{fixtures_total} fixtures");
    }
    let ok = random.disagreements.is_empty() && fixtures_passed == fixtures_total;
    if !ok {
        eprint!("{}", to_json_string(&CheckOutput { fixtures_passed, fixtures_total, random })?);
    }
    Ok(ok)
}

fn cmd_plot(a: &PlotArgs) -> Result<()> {
    let rep: crate::pipeline::RunReport = read_json(&a.report)?;
    let shape = match (&rep.sample.shape, a.no_shape) {
        (Some(kind), false) => Some(StratifiedShape::new(kind.clone())?),
        _ => None,
    };
    std::fs::write(&a.output, report_svg(&rep, shape.as_ref(), a.only_correct))?;
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Infeasible { .. } => EXIT_INFEASIBLE,
        _ => EXIT_VALIDATION,
    }
}

fn dispatch(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Generate(a) => cmd_generate(a)?,
        Command::Scales(a) => cmd_scales(a)?,
        Command::Infer(a) => cmd_infer(a, None)?,
        Command::Classify(a) => {
            let sweep = a.sweep.clone().unwrap_or_else(default_sweep);
            cmd_infer(&a.infer, Some(&sweep))?
        }
        Command::Group(a) => cmd_group(a)?,
        Command::Scan(a) => cmd_scan(a)?,
        Command::Check(a) => {
            if !cmd_check(a)? {
                return Ok(EXIT_MISMATCH);
            }
        }
        Command::Plot(a) => cmd_plot(a)?,
    }
    Ok(0)
}

/// Entry point for the binary.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_VALIDATION } else { 0 });
        }
    };
    let outcome = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::InvalidArgument(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
