//! Argument handling for the `freeloop` binary.

use clap::{Parser, Subcommand, ValueEnum};
use freeloop_core::complexes::{Complex, ComplexKind};
use freeloop_core::freehedra::face_poset;
use freeloop_core::homalg::Ring;

use crate::format::{load_space, summary_to_json_lines};
use crate::verify::{verify, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

/// Largest freehedron the `freehedron` command enumerates.
pub const MAX_FREEHEDRON: usize = 7;

#[derive(Parser, Debug)]
#[command(name = "freeloop", version, about = "Homology of based and free loop spaces of finite simplicial sets")]
#[command(args_conflicts_with_subcommands = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    /// Built-in space name or path to a JSON presentation.
    #[arg(long)]
    pub space: Option<String>,
    /// chains, cobar, hat-cobar, cohoch, hat-cohoch or hochschild-of-cobar.
    #[arg(long)]
    pub complex: Option<String>,
    /// Z, Q or Fp for a prime p.
    #[arg(long, default_value = "Z")]
    pub ring: String,
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
    /// Word-length cap, required for hat complexes of spaces with edges.
    #[arg(long)]
    pub max_word_length: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
    /// Run the verification report instead of a homology computation.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cells of the freehedron F_n.
    Freehedron {
        n: usize,
        #[arg(long, value_enum, default_value_t = FreehedronMode::Fvector)]
        mode: FreehedronMode,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FreehedronMode {
    Fvector,
    Faces,
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {}\n", msg) }
    }
}

pub fn parse_ring(s: &str) -> Result<Ring, String> {
    match s {
        "Z" => Ok(Ring::Integers),
        "Q" => Ok(Ring::Rationals),
        _ => {
            let p = s
                .strip_prefix('F')
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| format!("unknown ring {:?} (expected Z, Q or Fp)", s))?;
            Ring::prime_field(p).map_err(|e| e.to_string())
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match cli.command {
        Some(Command::Freehedron { n, mode }) => freehedron(n, mode),
        None if cli.verify => run_verify(&cli),
        None => homology(&cli),
    }
}

fn freehedron(n: usize, mode: FreehedronMode) -> Outcome {
    if n > MAX_FREEHEDRON {
        return Outcome::input_error(format!("freehedron dimension {} is above the supported maximum {}", n, MAX_FREEHEDRON));
    }
    let poset = face_poset(n);
    match mode {
        FreehedronMode::Fvector => {
            let counts = poset.f_vector().counts;
            Outcome::ok(serde_json::to_string(&counts).expect("array serializes") + "\n")
        }
        FreehedronMode::Faces => {
            let mut out = String::new();
            for l in poset.sorted_cells() {
                out.push_str(&format!("{}\t{}\n", l.dim(), l));
            }
            Outcome::ok(out)
        }
    }
}

fn homology(cli: &Cli) -> Outcome {
    let Some(space) = &cli.space else {
        return Outcome::input_error("--space is required");
    };
    let Some(kind) = &cli.complex else {
        return Outcome::input_error("--complex is required unless --verify is given");
    };
    let kind: ComplexKind = match kind.parse() {
        Ok(k) => k,
        Err(e) => return Outcome::input_error(e),
    };
    let ring = match parse_ring(&cli.ring) {
        Ok(r) => r,
        Err(e) => return Outcome::input_error(e),
    };
    let x = match load_space(space) {
        Ok(x) => x,
        Err(e) => return Outcome::input_error(e),
    };
    let c = match Complex::new(&x, kind) {
        Ok(c) => c,
        Err(e) => return Outcome::input_error(e),
    };
    let cap = if c.needs_truncation() { cli.max_word_length } else { None };
    let h = match c.homology(cli.max_degree, ring, cli.max_word_length) {
        Ok(h) => h,
        Err(e) => return Outcome::input_error(e),
    };
    let out = match cli.format {
        OutputFormat::Json => summary_to_json_lines(&h, cap),
        OutputFormat::Table => {
            let mut out = format!("{} of {}\n", kind, x.name());
            if let Some(l) = cap {
                out.push_str(&format!("truncated at word length {}\n", l));
            }
            out + &h.table(ring)
        }
    };
    Outcome::ok(out)
}

fn run_verify(cli: &Cli) -> Outcome {
    let Some(space) = &cli.space else {
        return Outcome::input_error("--space is required");
    };
    let x = match load_space(space) {
        Ok(x) => x,
        Err(e) => return Outcome::input_error(e),
    };
    let cfg = VerifyConfig { max_degree: cli.max_degree, max_word_length: cli.max_word_length, ..VerifyConfig::default() };
    let report = verify(&x, &cfg);
    let stdout = match cli.format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Table => report.to_text(),
    };
    let code = if report.passed() { EXIT_OK } else { EXIT_VERIFY };
    Outcome { code, stdout, stderr: String::new() }
}
