//! Batch front end: arguments or a JSON job file become a [`JobConfig`],
//! which is executed into JSON, CSV and SVG artifacts.
//!
//! Exit codes: 0 success, 2 invalid input, 3 inconclusive numerical verdict,
//! 1 for I/O failures while writing outputs.

mod commands;
pub mod render;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

pub use render::{render_svg, Artifact};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

pub const THREADS_ENV: &str = "HORN_AMOEBA_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Horn,
    Supports,
    Fan,
    Symbols,
    Resultant,
    Discriminant,
    Bergman,
    Mellin,
    Verify,
    Screens,
    Amoeba,
    Spine,
    Render,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Horn => "horn",
            Command::Supports => "supports",
            Command::Fan => "fan",
            Command::Symbols => "symbols",
            Command::Resultant => "resultant",
            Command::Discriminant => "discriminant",
            Command::Bergman => "bergman",
            Command::Mellin => "mellin",
            Command::Verify => "verify",
            Command::Screens => "screens",
            Command::Amoeba => "amoeba",
            Command::Spine => "spine",
            Command::Render => "render",
        }
    }
}

/// A JSON input given either as a file path or inline.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Source {
    Path(PathBuf),
    Inline(serde_json::Value),
}

impl Source {
    /// Inline when the text starts with `{`, a path otherwise.
    pub fn from_arg(s: &str) -> Result<Source, CliError> {
        if s.trim_start().starts_with('{') {
            serde_json::from_str(s)
                .map(Source::Inline)
                .map_err(|e| CliError::invalid(format!("inline JSON: {}", e)))
        } else {
            Ok(Source::Path(PathBuf::from(s)))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Solution {
    pub num: String,
    #[serde(default)]
    pub den: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridOverrides {
    /// One bound per axis, or a single bound for all axes.
    pub lo: Option<Vec<f64>>,
    pub hi: Option<Vec<f64>>,
    pub resolution: Option<usize>,
    pub max_unknown: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    pub n_angle: Option<usize>,
    pub n_circle: Option<usize>,
    pub n_fiber: Option<usize>,
    pub tol: Option<f64>,
    pub refine_samples: Option<usize>,
}

/// Everything one run needs. Unknown keys are rejected when read from JSON.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub command: Command,
    #[serde(default)]
    pub ore_sato: Option<Source>,
    #[serde(default)]
    pub system: Option<Source>,
    /// Polynomial text, or a path to a file holding it.
    #[serde(default)]
    pub poly: Option<String>,
    #[serde(default)]
    pub equation: Option<String>,
    #[serde(default)]
    pub var: Option<String>,
    #[serde(default)]
    pub p: Option<Vec<i64>>,
    #[serde(default)]
    pub m: Option<i64>,
    #[serde(default)]
    pub exps: Option<Vec<i64>>,
    /// Rationals as strings or numbers.
    #[serde(default)]
    pub gamma: Option<Vec<serde_json::Value>>,
    #[serde(default)]
    pub window: Option<i64>,
    #[serde(default)]
    pub solution: Option<Solution>,
    #[serde(default)]
    pub census: bool,
    #[serde(default)]
    pub artifact: Option<Source>,
    /// Render target; stdout when absent.
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
    #[serde(default)]
    pub grid: GridOverrides,
    #[serde(default)]
    pub tolerance: ToleranceOverrides,
    #[serde(default)]
    pub seed: u64,
}

impl JobConfig {
    pub fn new(command: Command) -> Self {
        JobConfig {
            command,
            ore_sato: None,
            system: None,
            poly: None,
            equation: None,
            var: None,
            p: None,
            m: None,
            exps: None,
            gamma: None,
            window: None,
            solution: None,
            census: false,
            artifact: None,
            output: None,
            out_dir: None,
            grid: GridOverrides::default(),
            tolerance: ToleranceOverrides::default(),
            seed: 0,
        }
    }

    /// Parse a job file, naming the offending field on failure.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::invalid(format!("job config at '{}': {}", path, e.inner()))
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INVALID,
            message: msg.into(),
        }
    }

    pub fn io(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_IO,
            message: msg.into(),
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        let code = match e {
            crate::Error::Numerical(_) => EXIT_INCONCLUSIVE,
            _ => EXIT_INVALID,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Files produced by one command, plus the JSON printed on stdout.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub files: Vec<(String, String)>,
    pub inconclusive: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.inconclusive {
            EXIT_INCONCLUSIVE
        } else {
            EXIT_OK
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "horn-amoeba", version, about = "Horn systems, supports, fans, resultants and amoeba censuses")]
struct Cli {
    /// Read the whole job from a JSON file instead of subcommand flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory receiving the JSON/CSV/SVG artifacts.
    #[arg(long = "out", global = true)]
    out_dir: Option<PathBuf>,
    /// Seed for fiber sampling.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Args, Debug, Default)]
struct CoeffArgs {
    /// Ore-Sato coefficient: JSON file or inline object.
    #[arg(long)]
    ore_sato: Option<String>,
    /// Horn system: JSON file or inline object.
    #[arg(long)]
    system: Option<String>,
}

#[derive(Args, Debug, Default)]
struct GridArgs {
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    lo: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    hi: Option<Vec<f64>>,
    #[arg(long)]
    resolution: Option<usize>,
    /// UNKNOWN fraction above which the verdict is inconclusive.
    #[arg(long)]
    max_unknown: Option<f64>,
    #[arg(long)]
    n_angle: Option<usize>,
    #[arg(long)]
    n_circle: Option<usize>,
    #[arg(long)]
    n_fiber: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    refine_samples: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Horn system of an Ore-Sato coefficient.
    Horn(CoeffArgs),
    /// Irreducible admissible supports.
    Supports {
        #[command(flatten)]
        src: CoeffArgs,
        /// Comma-separated rationals; defaults to the coefficient's gamma.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        gamma: Option<Vec<String>>,
        #[arg(long)]
        window: Option<i64>,
    },
    /// Fan of the maximal support cones.
    Fan(CoeffArgs),
    /// Principal symbols.
    Symbols(CoeffArgs),
    /// Symbol resultant, essential resultant and its Newton polytope.
    Resultant(CoeffArgs),
    /// Discriminant of a univariate equation with polynomial coefficients.
    Discriminant {
        #[arg(long)]
        equation: String,
        #[arg(long)]
        var: String,
    },
    /// Bergman kernel of a complex ellipsoid.
    Bergman {
        #[arg(long, value_delimiter = ',')]
        p: Vec<i64>,
    },
    /// Mellin system of y^m + x1 y^m1 + ... + xn y^mn - 1.
    Mellin {
        #[arg(long)]
        m: i64,
        #[arg(long, value_delimiter = ',')]
        exps: Vec<i64>,
    },
    /// Residuals of a rational function in a Horn system.
    Verify {
        #[command(flatten)]
        src: CoeffArgs,
        #[arg(long)]
        num: String,
        #[arg(long)]
        den: Option<String>,
    },
    /// Rationality obstructions.
    Screens(CoeffArgs),
    /// Complement-component census on a grid.
    Amoeba {
        /// Polynomial text or a file holding it.
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Spine of the Ronkin function.
    Spine {
        #[arg(long)]
        poly: String,
        /// Take pieces from a census instead of every Newton vertex.
        #[arg(long)]
        census: bool,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// SVG of an artifact JSON file.
    Render {
        #[arg(long)]
        artifact: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn apply_coeff(job: &mut JobConfig, a: CoeffArgs) -> Result<(), CliError> {
    job.ore_sato = a.ore_sato.as_deref().map(Source::from_arg).transpose()?;
    job.system = a.system.as_deref().map(Source::from_arg).transpose()?;
    Ok(())
}

fn apply_grid(job: &mut JobConfig, g: GridArgs) {
    job.grid = GridOverrides {
        lo: g.lo,
        hi: g.hi,
        resolution: g.resolution,
        max_unknown: g.max_unknown,
    };
    job.tolerance = ToleranceOverrides {
        n_angle: g.n_angle,
        n_circle: g.n_circle,
        n_fiber: g.n_fiber,
        tol: g.tol,
        refine_samples: g.refine_samples,
    };
}

fn job_from_cmd(cmd: Cmd) -> Result<JobConfig, CliError> {
    let job = match cmd {
        Cmd::Horn(a) => with(Command::Horn, |j| apply_coeff(j, a))?,
        Cmd::Fan(a) => with(Command::Fan, |j| apply_coeff(j, a))?,
        Cmd::Symbols(a) => with(Command::Symbols, |j| apply_coeff(j, a))?,
        Cmd::Resultant(a) => with(Command::Resultant, |j| apply_coeff(j, a))?,
        Cmd::Screens(a) => with(Command::Screens, |j| apply_coeff(j, a))?,
        Cmd::Supports { src, gamma, window } => with(Command::Supports, |j| {
            apply_coeff(j, src)?;
            j.gamma = gamma.map(|g| g.into_iter().map(serde_json::Value::String).collect());
            j.window = window;
            Ok(())
        })?,
        Cmd::Discriminant { equation, var } => with(Command::Discriminant, |j| {
            j.equation = Some(equation);
            j.var = Some(var);
            Ok(())
        })?,
        Cmd::Bergman { p } => with(Command::Bergman, |j| {
            j.p = Some(p);
            Ok(())
        })?,
        Cmd::Mellin { m, exps } => with(Command::Mellin, |j| {
            j.m = Some(m);
            j.exps = Some(exps);
            Ok(())
        })?,
        Cmd::Verify { src, num, den } => with(Command::Verify, |j| {
            apply_coeff(j, src)?;
            j.solution = Some(Solution { num, den });
            Ok(())
        })?,
        Cmd::Amoeba { poly, grid } => with(Command::Amoeba, |j| {
            j.poly = Some(poly);
            apply_grid(j, grid);
            Ok(())
        })?,
        Cmd::Spine { poly, census, grid } => with(Command::Spine, |j| {
            j.poly = Some(poly);
            j.census = census;
            apply_grid(j, grid);
            Ok(())
        })?,
        Cmd::Render { artifact, output } => with(Command::Render, |j| {
            j.artifact = Some(Source::from_arg(&artifact)?);
            j.output = output;
            Ok(())
        })?,
    };
    Ok(job)
}

fn with(c: Command, f: impl FnOnce(&mut JobConfig) -> Result<(), CliError>) -> Result<JobConfig, CliError> {
    let mut j = JobConfig::new(c);
    f(&mut j)?;
    Ok(j)
}

/// Reads a file for a validation-level error on failure.
pub(crate) fn read_input(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::invalid(format!("cannot read {}: {}", path.display(), e)))
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::invalid(format!("{}: expected a positive integer, got '{}'", THREADS_ENV, v)))?;
    // A pool that is already set up (repeated calls in one process) is kept.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn parse_args<I, T>(argv: I) -> Result<JobConfig, (i32, String)>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            return Err((code, e.to_string()));
        }
    };
    let mut job = match (cli.config, cli.cmd) {
        (Some(_), Some(_)) => {
            return Err((EXIT_INVALID, "--config cannot be combined with a subcommand".into()));
        }
        (None, None) => return Err((EXIT_INVALID, "a subcommand or --config is required".into())),
        (Some(path), None) => read_input(&path)
            .and_then(|t| JobConfig::from_json(&t))
            .map_err(|e| (e.code, e.message))?,
        (None, Some(cmd)) => job_from_cmd(cmd).map_err(|e| (e.code, e.message))?,
    };
    if let Some(d) = cli.out_dir {
        job.out_dir = Some(d);
    }
    if let Some(s) = cli.seed {
        job.seed = s;
    }
    Ok(job)
}

/// Execute a job without touching the file system for outputs.
pub fn execute(job: &JobConfig) -> Result<Outcome, CliError> {
    commands::execute(job)
}

fn write_outputs(job: &JobConfig, out: &Outcome) -> Result<(), CliError> {
    if let Some(dir) = &job.out_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(format!("{}: {}", dir.display(), e)))?;
        for (name, body) in &out.files {
            let p = dir.join(name);
            std::fs::write(&p, body).map_err(|e| CliError::io(format!("{}: {}", p.display(), e)))?;
        }
    }
    if job.command == Command::Render {
        if let Some(p) = &job.output {
            let svg = &out.files[0].1;
            std::fs::write(p, svg).map_err(|e| CliError::io(format!("{}: {}", p.display(), e)))?;
        }
    }
    Ok(())
}

/// Run the command line; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let job = match parse_args(argv) {
        Ok(j) => j,
        Err((code, msg)) => {
            if code == EXIT_OK {
                print!("{}", msg);
            } else {
                eprintln!("{}", msg.trim_end());
            }
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {}", e.message);
        return e.code;
    }
    let result = execute(&job).and_then(|out| write_outputs(&job, &out).map(|_| out));
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.inconclusive {
                eprintln!("verdict inconclusive: refine the grid or tolerances");
            }
            out.exit_code()
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn job_file_rejects_unknown_keys() {
        let e = JobConfig::from_json(r#"{"command": "fan", "ore_sato": "a.json", "bogus": 1}"#).unwrap_err();
        assert_eq!(e.code, EXIT_INVALID);
        assert!(e.message.contains("bogus"), "{}", e.message);
        let e = JobConfig::from_json(r#"{"command": "amoeba", "grid": {"resolution": "x"}}"#).unwrap_err();
        assert!(e.message.contains("grid.resolution"), "{}", e.message);
    }

    #[test]
    fn flags_and_job_files_agree() {
        let a = parse_args(["horn-amoeba", "--seed", "7", "amoeba", "--poly", "1-x1-x2", "--lo", "-3", "--resolution", "20"])
            .unwrap();
        let b = JobConfig::from_json(
            r#"{"command": "amoeba", "poly": "1-x1-x2", "grid": {"lo": [-3], "resolution": 20}, "seed": 7}"#,
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn inline_sources() {
        assert_eq!(
            Source::from_arg(r#"{"n": 1}"#).unwrap(),
            Source::Inline(serde_json::json!({"n": 1}))
        );
        assert_eq!(Source::from_arg("x.json").unwrap(), Source::Path("x.json".into()));
        assert_eq!(Source::from_arg("{oops").unwrap_err().code, EXIT_INVALID);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(parse_args(["horn-amoeba", "nosuch"]).unwrap_err().0, EXIT_INVALID);
        assert_eq!(parse_args(["horn-amoeba"]).unwrap_err().0, EXIT_INVALID);
    }
}
