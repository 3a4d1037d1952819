//! Command-line front end. [`run`] parses arguments, writes JSON to `out`
//! and returns the process exit code: 0 on success, 1 when a verification
//! suite fails, 2 on bad input.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::batch::{run_batch, write_lines, BatchOptions, Cache};
use crate::error::{Error, Result};
use crate::eta::{self, correction_term, BundleGeometry, CorrectionInput};
use crate::knots::{
    corpus, parse_braid, parse_seifert, read_knot_table, KnotPresentation, NormalizedAlexander,
};
use crate::lambda::{lambda_sw, LambdaInput};
use crate::rational::{self, Rational};
use crate::spectral::{parse_grid_file, DEFAULT_DIGITS};
use crate::sw3d::{SWSeries, Sw3dReport};
use crate::verify::{self, SuiteOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "lambda-sw",
    version,
    about = "Seiberg-Witten-Casson invariants of circle bundles over 0-surgeries"
)]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normalized Alexander polynomial.
    Alex(KnotArgs),
    /// Chamber Seiberg-Witten invariants of the 0-surgery.
    Sw(KnotArgs),
    /// Dirac and signature eta invariants of a circle bundle.
    Eta(GeometryArgs),
    /// The correction term.
    Omega {
        #[command(flatten)]
        geometry: GeometryArgs,
        /// Kernel dimension of the boundary Dirac operator.
        #[arg(long = "hd", default_value_t = 0)]
        h_dirac: u64,
    },
    /// The full invariant report.
    Lambda {
        #[command(flatten)]
        knot: KnotArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Evaluate every row of a knot table.
    Batch {
        /// CSV table with header `name,type,payload,strands`.
        #[arg(long)]
        input: PathBuf,
        /// Output file, one JSON object per line.
        #[arg(long)]
        out: PathBuf,
        /// Cache directory (defaults to $LAMBDA_SW_CACHE or the user cache dir).
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, conflicts_with = "cache")]
        no_cache: bool,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Args, Debug)]
struct KnotArgs {
    /// Seifert matrix file (JSON rows or CSV).
    #[arg(long, conflicts_with_all = ["braid", "knot"])]
    seifert: Option<PathBuf>,
    /// Braid word, e.g. "1 -2 1 -2".
    #[arg(
        long,
        requires = "strands",
        allow_hyphen_values = true,
        conflicts_with = "knot"
    )]
    braid: Option<String>,
    #[arg(long)]
    strands: Option<usize>,
    /// A built-in knot: unknot, trefoil, figure-eight, 5_2.
    #[arg(long)]
    knot: Option<String>,
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long = "hd", default_value_t = 0)]
    h_dirac: u64,
    #[arg(long = "h-half", default_value_t = 0)]
    h_half: u64,
    /// Fiber radius, e.g. 1/2.
    #[arg(long, default_value = "1", value_parser = parse_rational)]
    r: Rational,
    /// Euler characteristic of the base surface.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    chi: i64,
}

#[derive(Args, Debug)]
struct GeometryArgs {
    /// Euler number of the bundle.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    l: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    chi: i64,
    #[arg(long, default_value = "1", value_parser = parse_rational)]
    r: Rational,
    #[arg(long = "h-half", default_value_t = 0)]
    h_half: u64,
}

#[derive(Subcommand, Debug)]
enum Suite {
    /// Transgression lemma on seeded random connections.
    Transgression {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        /// Restrict the chart dimension (2, 3 or 4); repeatable.
        #[arg(long = "dim", value_parser = clap::value_parser!(u8).range(2..=4))]
        dims: Vec<u8>,
    },
    /// Difference of the Dirac operators along the connection path.
    DiracPath,
    /// Torsion of the three-dimensional connection matrix.
    Eq1Torsion,
    /// Operator-norm bound chains and the adiabatic threshold.
    Spectral {
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        precision: u32,
        #[arg(long)]
        grid_file: Option<PathBuf>,
    },
    /// Exact r-independence of the correction term.
    CorrectionRIndependence,
    /// sw_sum against Σ j²a_j and wall crossing.
    SwIdentity {
        /// `builtin` or a knot-table CSV.
        #[arg(long, default_value = "builtin")]
        corpus: String,
    },
    /// Compatibility of d + iη with the fiber metric.
    FiberMetric,
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

fn builtin_knot(name: &str) -> Result<KnotPresentation> {
    corpus::builtin()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, k)| k)
        .ok_or_else(|| Error::Parse(format!("unknown built-in knot {name:?}")))
}

impl KnotArgs {
    fn presentation(&self) -> Result<KnotPresentation> {
        match (&self.seifert, &self.braid, &self.knot) {
            (Some(path), None, None) => {
                let text =
                    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                Ok(KnotPresentation::Seifert(parse_seifert(&text)?))
            }
            (None, Some(word), None) => {
                let strands = self
                    .strands
                    .ok_or_else(|| Error::Parse("--braid needs --strands".into()))?;
                Ok(KnotPresentation::Braid(parse_braid(word, strands)?))
            }
            (None, None, Some(name)) => builtin_knot(name),
            _ => Err(Error::Parse(
                "give exactly one of --seifert, --braid or --knot".into(),
            )),
        }
    }
}

impl GeometryArgs {
    fn geometry(&self) -> Result<BundleGeometry> {
        BundleGeometry::new(self.l, self.chi, self.r.clone(), self.h_half)
    }
}

impl ParamArgs {
    fn input(&self, knot: KnotPresentation) -> LambdaInput {
        LambdaInput {
            knot,
            h_dirac: self.h_dirac,
            h_half: self.h_half,
            r: self.r.clone(),
            chi: self.chi,
        }
    }
}

impl Error {
    /// 1 for internal consistency failures, 2 for everything caused by input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) => EXIT_VERIFY,
            _ => EXIT_INPUT,
        }
    }
}

#[derive(Serialize)]
struct SwOutput {
    #[serde(flatten)]
    report: Sw3dReport,
    series: SWSeries,
}

#[derive(Serialize)]
struct EtaOutput {
    geometry: BundleGeometry,
    #[serde(with = "rational::serde_str")]
    eta_dirac: Rational,
    #[serde(with = "rational::serde_str")]
    eta_signature: Rational,
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T, pretty: bool) -> Result<()> {
    let text = if pretty {
        serde_json::to_string_pretty(value)?
    } else {
        serde_json::to_string(value)?
    };
    writeln!(out, "{text}")?;
    Ok(())
}

fn knot_label(args: &KnotArgs) -> String {
    if let Some(k) = &args.knot {
        k.clone()
    } else if let Some(p) = &args.seifert {
        p.display().to_string()
    } else {
        args.braid.clone().unwrap_or_default()
    }
}

fn run_suite(suite: &Suite) -> Result<SuiteOutcome> {
    match suite {
        Suite::Transgression { seed, trials, dims } => {
            let dims: Vec<usize> = if dims.is_empty() {
                vec![2, 3, 4]
            } else {
                dims.iter().map(|&d| d as usize).collect()
            };
            verify::transgression(*seed, *trials, &dims)
        }
        Suite::DiracPath => verify::dirac_path(),
        Suite::Eq1Torsion => verify::eq1_torsion(),
        Suite::Spectral { precision, grid_file } => {
            let samples = grid_file
                .as_ref()
                .map(|p| {
                    let text =
                        fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
                    parse_grid_file(&text)
                })
                .transpose()?;
            verify::spectral(*precision, samples)
        }
        Suite::CorrectionRIndependence => Ok(verify::correction_r_independence()),
        Suite::SwIdentity { corpus } => {
            let knots = if corpus == "builtin" {
                verify::sw_corpus()
            } else {
                let file = fs::File::open(corpus).map_err(|e| Error::Parse(format!("{corpus}: {e}")))?;
                read_knot_table(file)?
                    .into_iter()
                    .map(|(label, row)| row.map(|r| (label, r.presentation)))
                    .collect::<Result<Vec<_>>>()?
            };
            verify::sw_identity(&knots)
        }
        Suite::FiberMetric => Ok(verify::fiber_metric()),
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let pretty = cli.pretty;
    match &cli.command {
        Command::Alex(k) => {
            let alex: NormalizedAlexander = k.presentation()?.alexander()?;
            emit(out, &alex, pretty)?;
        }
        Command::Sw(k) => {
            let alex = k.presentation()?.alexander()?;
            let out_value = SwOutput {
                report: Sw3dReport::new(knot_label(k), &alex),
                series: SWSeries::compute(&alex),
            };
            emit(out, &out_value, pretty)?;
        }
        Command::Eta(g) => {
            let geometry = g.geometry()?;
            let value = EtaOutput {
                eta_dirac: eta::eta_dirac(&geometry)?,
                eta_signature: eta::eta_signature(&geometry)?,
                geometry,
            };
            emit(out, &value, pretty)?;
        }
        Command::Omega { geometry, h_dirac } => {
            let result = correction_term(&CorrectionInput {
                geometry: geometry.geometry()?,
                h_dirac: *h_dirac,
            })?;
            emit(out, &result, pretty)?;
        }
        Command::Lambda { knot, params } => {
            let report = lambda_sw(&params.input(knot.presentation()?))?;
            emit(out, &report, pretty)?;
        }
        Command::Verify { suite } => {
            let outcome = run_suite(suite)?;
            emit(out, &outcome, pretty)?;
            return Ok(if outcome.passed { EXIT_OK } else { EXIT_VERIFY });
        }
        Command::Batch {
            input,
            out: out_path,
            cache,
            no_cache,
            params,
        } => {
            let table =
                fs::File::open(input).map_err(|e| Error::Parse(format!("{}: {e}", input.display())))?;
            let cache = if *no_cache {
                None
            } else {
                cache
                    .clone()
                    .or_else(Cache::default_dir)
                    .map(Cache::new)
                    .transpose()?
            };
            let options = BatchOptions {
                h_dirac: params.h_dirac,
                h_half: params.h_half,
                r: params.r.clone(),
                chi: params.chi,
            };
            let (lines, summary) = run_batch(table, &options, cache.as_ref())?;
            write_lines(out_path, &lines)?;
            for l in lines.iter().filter(|l| !l.ok) {
                writeln!(err, "row error: {}", l.json)?;
            }
            emit(out, &summary, pretty)?;
        }
    }
    Ok(EXIT_OK)
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
