//! The `onion` command line: instance generation, convex layers, tour
//! construction and improvement, exact optima, and the seeded benchmark.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use onion_core::io::{
    parse_instance, render_csv, write_svg, LayersOutput, PipelineDescriptor, SolveResult,
};
use onion_core::{
    brute_force, convex_layers_fast, convex_layers_naive, gen_circle, gen_random, held_karp,
    run_experiment, BenchConfig, Construction, Error, ImproveConfig, Improvement, Instance,
    MergeOrder, Pipeline,
};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "onion",
    version,
    about = "Convex-layer tours for the planar TSP"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a seeded random instance as CSV.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Sample on a circle (convex position) instead of the square.
        #[arg(long)]
        circle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Peel an instance into convex layers.
    Layers {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = LayersAlgo::Hullgraph)]
        algo: LayersAlgo,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a tour and optionally improve it.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Construct::Layers)]
        construct: Construct,
        /// Merge order for layer construction.
        #[arg(long, value_enum)]
        order: Option<Order>,
        #[arg(long, value_enum, default_value_t = Improve::None)]
        improve: Improve,
        /// Also improve after every layer merge.
        #[arg(long)]
        improve_each_merge: bool,
        /// Start city for nearest neighbour.
        #[arg(long)]
        start: Option<usize>,
        /// Compute the Held-Karp optimum and the gap.
        #[arg(long)]
        with_optimum: bool,
        /// Record wall-clock time in the result.
        #[arg(long)]
        timings: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve exactly (small instances only).
    Exact {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ExactAlgo::HeldKarp)]
        algo: ExactAlgo,
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run pipelines over seeded instances and report gaps to the optimum.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Comma-separated labels such as `nn,nn+2opt,layers+3opt`.
        #[arg(long, value_delimiter = ',', value_parser = parse_pipeline)]
        pipelines: Option<Vec<Pipeline>>,
        #[arg(long)]
        circle: bool,
        /// Skip the exact optimum (allows n above the Held-Karp cap).
        #[arg(long)]
        no_gaps: bool,
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LayersAlgo {
    Naive,
    Hullgraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construct {
    Layers,
    Nn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Outer,
    Inner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Improve {
    None,
    #[value(name = "2opt")]
    TwoOpt,
    #[value(name = "3opt")]
    ThreeOpt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExactAlgo {
    Brute,
    HeldKarp,
}

fn parse_pipeline(s: &str) -> Result<Pipeline, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Cap(_) => EXIT_CAP,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Cap(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_cap() {
            CliError::Cap(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

/// What a command produced and where it should go.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub path: Option<PathBuf>,
}

impl Output {
    pub fn emit(&self) -> Result<(), CliError> {
        match &self.path {
            Some(p) => fs::write(p, &self.text)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display()))),
            None => {
                print!("{}", self.text);
                Ok(())
            }
        }
    }
}

fn load(path: &Path) -> Result<Instance, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_instance(&text, &stem).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn millis(start: Instant, timings: bool) -> Option<f64> {
    timings.then(|| start.elapsed().as_secs_f64() * 1e3)
}

pub fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Gen {
            n,
            seed,
            circle,
            out,
        } => {
            if n == 0 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            let inst = if circle {
                gen_circle(n, seed)?
            } else {
                gen_random(n, seed)?
            };
            Ok(Output {
                text: render_csv(&inst),
                path: out,
            })
        }

        Command::Layers {
            file,
            algo,
            format,
            out,
        } => {
            let inst = load(&file)?;
            let (layers, name) = match algo {
                LayersAlgo::Naive => (convex_layers_naive(&inst.points)?, "naive"),
                LayersAlgo::Hullgraph => (convex_layers_fast(&inst.points)?, "hullgraph"),
            };
            let text = match format {
                Format::Json => LayersOutput::new(&inst.name, name, &layers).to_json(),
                Format::Svg => write_svg(&inst, Some(&layers), None),
            };
            Ok(Output { text, path: out })
        }

        Command::Solve {
            file,
            construct,
            order,
            improve,
            improve_each_merge,
            start,
            with_optimum,
            timings,
            format,
            out,
        } => {
            let construct = match (construct, order, start) {
                (Construct::Layers, _, Some(_)) => {
                    return Err(CliError::Usage(
                        "--start only applies to --construct nn".into(),
                    ))
                }
                (Construct::Nn, Some(_), _) => {
                    return Err(CliError::Usage(
                        "--order only applies to --construct layers".into(),
                    ))
                }
                (Construct::Layers, order, None) => Construction::Layers {
                    order: match order.unwrap_or(Order::Outer) {
                        Order::Outer => MergeOrder::OutermostFirst,
                        Order::Inner => MergeOrder::InnermostFirst,
                    },
                },
                (Construct::Nn, None, start) => Construction::NearestNeighbor {
                    start: start.unwrap_or(0),
                },
            };
            if improve_each_merge && !matches!(construct, Construction::Layers { .. }) {
                return Err(CliError::Usage(
                    "--improve-each-merge only applies to --construct layers".into(),
                ));
            }
            let improve = match improve {
                Improve::None => Improvement::None,
                Improve::TwoOpt => Improvement::TwoOpt,
                Improve::ThreeOpt => Improvement::ThreeOpt,
            };
            let pipeline = Pipeline {
                construct,
                improve,
                improve_each_merge: improve_each_merge && improve != Improvement::None,
            };

            let inst = load(&file)?;
            let clock = Instant::now();
            let run = pipeline.run(&inst, &ImproveConfig::default())?;
            let wall_time_ms = millis(clock, timings);
            let optimum = if with_optimum {
                Some(held_karp(&inst)?.length)
            } else {
                None
            };

            let text = match format {
                Format::Json => SolveResult {
                    gap_percent: optimum
                        .and_then(|o| onion_core::bench::gap_percent(run.tour.length, o)),
                    instance_name: inst.name.clone(),
                    layer_count: run.layer_count,
                    length: run.tour.length,
                    optimum,
                    pipeline: PipelineDescriptor {
                        construct: pipeline.construct_name().to_string(),
                        improve: pipeline.improve.to_string(),
                        improve_each_merge: pipeline.improve_each_merge,
                        order: pipeline.merge_order().map(|o| o.to_string()),
                        seed: None,
                        start: pipeline.start(),
                    },
                    tour: run.tour.order.clone(),
                    wall_time_ms,
                }
                .to_json(),
                Format::Svg => {
                    let layers = match construct {
                        Construction::Layers { .. } => Some(convex_layers_fast(&inst.points)?),
                        Construction::NearestNeighbor { .. } => None,
                    };
                    write_svg(&inst, layers.as_ref(), Some(&run.tour))
                }
            };
            Ok(Output { text, path: out })
        }

        Command::Exact {
            file,
            algo,
            timings,
            out,
        } => {
            let inst = load(&file)?;
            let clock = Instant::now();
            let (tour, name) = match algo {
                ExactAlgo::Brute => (brute_force(&inst)?, "brute"),
                ExactAlgo::HeldKarp => (held_karp(&inst)?, "held-karp"),
            };
            let wall_time_ms = millis(clock, timings);
            let layer_count = convex_layers_fast(&inst.points)?.len();
            let result = SolveResult {
                gap_percent: Some(0.0),
                instance_name: inst.name.clone(),
                layer_count,
                length: tour.length,
                optimum: Some(tour.length),
                pipeline: PipelineDescriptor {
                    construct: name.to_string(),
                    improve: "none".to_string(),
                    improve_each_merge: false,
                    order: None,
                    seed: None,
                    start: None,
                },
                tour: tour.order,
                wall_time_ms,
            };
            Ok(Output {
                text: result.to_json(),
                path: out,
            })
        }

        Command::Bench {
            n,
            instances,
            seed,
            pipelines,
            circle,
            no_gaps,
            timings,
            threads,
            out,
        } => {
            if n == 0 || instances == 0 {
                return Err(CliError::Usage(
                    "--n and --instances must be at least 1".into(),
                ));
            }
            if threads == Some(0) {
                return Err(CliError::Usage("--threads must be at least 1".into()));
            }
            let mut cfg = BenchConfig::new(n, instances, seed);
            if let Some(p) = pipelines {
                cfg.pipelines = p;
            }
            cfg.circle = circle;
            cfg.gaps = !no_gaps;
            cfg.timings = timings;
            cfg.threads = threads;
            Ok(Output {
                text: run_experiment(&cfg)?.to_json(),
                path: out,
            })
        }
    }
}

/// Parses `args`, runs the command and writes its output. Returns the
/// process exit code; diagnostics go to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli).and_then(|out| out.emit()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_exit_codes() {
        let cap: CliError = Error::BruteForceCap { cap: 10, n: 20 }.into();
        assert_eq!(cap.exit_code(), EXIT_CAP);
        let input: CliError = Error::UnsupportedMetric("GEO".into()).into();
        assert_eq!(input.exit_code(), EXIT_INPUT);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(main_with_args(["onion", "frobnicate"]), EXIT_USAGE);
        assert_eq!(main_with_args(["onion", "bench", "--n", "x"]), EXIT_USAGE);
        assert_eq!(
            main_with_args(["onion", "bench", "--n", "5", "--pipelines", "nn+4opt"]),
            EXIT_USAGE
        );
        assert_eq!(main_with_args(["onion", "--help"]), 0);
    }

    #[test]
    fn pipeline_list_parses() {
        let cli = Cli::try_parse_from([
            "onion",
            "bench",
            "--n",
            "5",
            "--pipelines",
            "nn,layers+3opt",
        ])
        .unwrap();
        match cli.command {
            Command::Bench {
                pipelines: Some(p), ..
            } => {
                assert_eq!(p.len(), 2);
                assert_eq!(p[1].to_string(), "layers-outer+3opt");
            }
            other => panic!("{other:?}"),
        }
    }
}
