mod commands;
mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use doublept::circle_maps::Endpoint;
use doublept::sweeps::{load_movie, BUNDLED_MOVIE};
use doublept::unfolding::UnfoldMode;
use serde_json::{json, Value};

use report::{digest, InputError, Outcome, Report};

#[derive(Parser)]
#[command(
    name = "dpl",
    version,
    about = "Double points of piecewise-linear circle maps"
)]
struct Cli {
    /// Output format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Plain,
    OpenSubset,
    RegularValue,
}

#[derive(Clone, Copy, ValueEnum)]
enum Keep {
    Lo,
    Hi,
}

#[derive(Subcommand)]
enum Command {
    /// Double-point curve, Hopf invariants and realizability of a map.
    Analyze { map: PathBuf },
    /// Grow an arc until its preimage has no negative arcs.
    Unfold {
        map: PathBuf,
        /// Start and end of the arc, as fractions.
        #[arg(long, num_args = 2, value_names = ["A", "B"], required = true, allow_hyphen_values = true)]
        arc: Vec<String>,
        #[arg(long, value_enum, default_value_t = Mode::Plain)]
        mode: Mode,
        /// Endpoint held fixed in open-subset mode.
        #[arg(long, value_enum, default_value_t = Keep::Lo)]
        keep: Keep,
        /// Lifted regular value for regular-value mode.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
    },
    /// Stable Hopf invariant of a map, or of a closed planar polygon.
    #[command(group(ArgGroup::new("source").required(true).args(["map", "polygon"])))]
    Hopf {
        map: Option<PathBuf>,
        #[arg(long)]
        polygon: Option<PathBuf>,
    },
    /// Verdicts for the universal covering of a spherical space form.
    #[command(group(ArgGroup::new("source").required(true).args(["family", "table"])))]
    Group {
        #[arg(long)]
        family: Option<String>,
        #[arg(long, requires = "family", allow_hyphen_values = true)]
        parameter: Option<i64>,
        /// Group spec file: a family and parameter, or a multiplication table.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        dimension: u32,
    },
    /// Compare the circle d-covers with the cyclic group model.
    DcoverCheck {
        #[arg(long, default_value_t = 2)]
        from: u32,
        #[arg(long, default_value_t = 12)]
        to: u32,
    },
    /// Disk placement, embedding certificate and census of a sweep movie.
    Sweep {
        /// Movie file; the bundled movie when absent.
        movie: Option<PathBuf>,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
    },
    /// Run the invariant suite on seeded random instances.
    Selftest {
        #[arg(long, default_value_t = 200)]
        cases: u64,
        #[arg(long, env = "DPL_SEED", default_value_t = 0)]
        seed: u64,
    },
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn echo(cmd: &Command) -> Value {
    let (name, args) = match cmd {
        Command::Analyze { map } => ("analyze", json!({ "map": path_str(map) })),
        Command::Unfold {
            map,
            arc,
            mode,
            keep,
            z,
        } => (
            "unfold",
            json!({
                "map": path_str(map),
                "arc": arc,
                "mode": mode.to_possible_value().unwrap().get_name(),
                "keep": keep.to_possible_value().unwrap().get_name(),
                "z": z,
            }),
        ),
        Command::Hopf { map, polygon } => (
            "hopf",
            json!({ "map": map.as_deref().map(path_str), "polygon": polygon.as_deref().map(path_str) }),
        ),
        Command::Group {
            family,
            parameter,
            table,
            dimension,
        } => (
            "group",
            json!({
                "family": family,
                "parameter": parameter,
                "table": table.as_deref().map(path_str),
                "dimension": dimension,
            }),
        ),
        Command::DcoverCheck { from, to } => ("dcover-check", json!({ "from": from, "to": to })),
        Command::Sweep { movie, samples } => (
            "sweep",
            json!({ "movie": movie.as_deref().map(path_str), "samples": samples }),
        ),
        Command::Selftest { cases, seed } => ("selftest", json!({ "cases": cases, "seed": seed })),
    };
    json!({ "name": name, "args": args })
}

fn execute(cmd: &Command, echo: &Value) -> Result<(String, Outcome), InputError> {
    let echo_digest = || digest([echo.to_string().as_bytes()]);
    match cmd {
        Command::Analyze { map } => {
            let bytes = input::read_file(map)?;
            let f = input::parse_map(&bytes)?;
            Ok((digest([bytes.as_slice()]), commands::analyze::run(&f)))
        }
        Command::Unfold {
            map,
            arc,
            mode,
            keep,
            z,
        } => {
            let bytes = input::read_file(map)?;
            let f = input::parse_map(&bytes)?;
            let start = input::parse_rational(&arc[0])?;
            let end = input::parse_rational(&arc[1])?;
            let mode = match mode {
                Mode::Plain => UnfoldMode::Plain,
                Mode::OpenSubset => UnfoldMode::OpenSubset {
                    keep: match keep {
                        Keep::Lo => Endpoint::Lo,
                        Keep::Hi => Endpoint::Hi,
                    },
                },
                Mode::RegularValue => {
                    let z = z
                        .as_deref()
                        .ok_or_else(|| InputError::new("usage", "regular-value mode needs --z"))?;
                    UnfoldMode::RegularValue(input::parse_rational(z)?)
                }
            };
            let outcome = commands::unfold::run(&f, start, end, &mode)?;
            Ok((digest([bytes.as_slice()]), outcome))
        }
        Command::Hopf { map: Some(map), .. } => {
            let bytes = input::read_file(map)?;
            let f = input::parse_map(&bytes)?;
            Ok((digest([bytes.as_slice()]), commands::hopf::of_map(&f)))
        }
        Command::Hopf { polygon, .. } => {
            let path = polygon.as_ref().expect("clap requires a source");
            let bytes = input::read_file(path)?;
            let vertices = input::parse_polygon(&bytes)?;
            Ok((
                digest([bytes.as_slice()]),
                commands::hopf::of_polygon(&vertices)?,
            ))
        }
        Command::Group {
            family,
            parameter,
            table,
            dimension,
        } => {
            let (g, d) = match table {
                Some(path) => {
                    let bytes = input::read_file(path)?;
                    (input::parse_group_spec(&bytes)?, digest([bytes.as_slice()]))
                }
                None => {
                    let name = family.as_deref().expect("clap requires a source");
                    (input::group_from_family(name, *parameter)?, echo_digest())
                }
            };
            Ok((d, commands::group::run(&g, *dimension)?))
        }
        Command::DcoverCheck { from, to } => {
            Ok((echo_digest(), commands::group::dcover(*from, *to)?))
        }
        Command::Sweep { movie, samples } => {
            let (text, bundled) = match movie {
                Some(path) => {
                    let bytes = input::read_file(path)?;
                    let text = String::from_utf8(bytes)
                        .map_err(|_| InputError::new("io", "movie file is not UTF-8"))?;
                    (text, false)
                }
                None => (BUNDLED_MOVIE.to_string(), true),
            };
            let m = load_movie(&text).map_err(|e| InputError::new("validation", e))?;
            let outcome = commands::sweep::run(&m, *samples as usize, bundled);
            Ok((digest([text.as_bytes()]), outcome))
        }
        Command::Selftest { cases, seed } => {
            Ok((echo_digest(), commands::selftest::run(*cases, *seed)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = echo(&cli.command);
    match execute(&cli.command, &echo) {
        Ok((d, outcome)) => {
            let report = Report::new(echo, d, outcome);
            let json = report.to_json();
            if let Some(out) = &cli.out {
                if let Err(e) = std::fs::write(out, &json) {
                    eprintln!("error: io: {}: {e}", out.display());
                    return ExitCode::from(2);
                }
            }
            match cli.format {
                Format::Json => print!("{json}"),
                Format::Text => print!("{}", report.to_text()),
            }
            ExitCode::from(report.status.exit_code())
        }
        Err(e) => {
            match cli.format {
                Format::Json => eprint!("{}", e.to_json(&echo)),
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(2)
        }
    }
}
