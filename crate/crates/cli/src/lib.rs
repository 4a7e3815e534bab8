//! Argument handling and dispatch for the `mulaut` binary.
//!
//! Exit codes: 0 success (for `verify`, the decomposition holds), 1 parse
//! or configuration error, 2 size cap or search budget exceeded, 3 the
//! decomposition fails and witnesses were found.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mulaut_core::catalog::catalog;
use mulaut_core::matrix::sample_psi_checks;
use mulaut_core::report::{self, *};
use mulaut_core::{construct_ring, parse_spec_with_cap, verify_decomposition, Config, Error, Execution, RingSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;
pub const EXIT_DECOMPOSITION_FAILS: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "mulaut", version, about = "Multiplicative monoids of finite commutative rings")]
struct Args {
    #[command(subcommand)]
    verb: VerbArgs,
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Largest ring or product carrier that may be built.
    #[arg(long, global = true)]
    max_size: Option<usize>,
    /// Backtracking node budget per search.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Run every search on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Debug, Subcommand)]
enum VerbArgs {
    /// Profile a ring and classify its elements.
    Classify { spec: String },
    /// List homomorphisms between the multiplicative monoids of two rings.
    Homs { source: String, target: String },
    /// List automorphisms of the multiplicative monoid of a ring.
    Aut { spec: String },
    /// Check whether every automorphism of the product monoid acts factor-wise.
    Verify {
        #[arg(required = true, num_args = 2..)]
        specs: Vec<String>,
        /// Random matrix pairs for the sampled product checks (0 disables).
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Locality versus D-ring agreement over the built-in ring families.
    Catalog {
        #[arg(long, default_value_t = 32)]
        max_order: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    Classify,
    Homs,
    Aut,
    Verify,
    Catalog,
}

/// A parsed invocation.
#[derive(Debug, Clone)]
pub struct CliCommand {
    pub verb: Verb,
    pub ring_specs: Vec<RingSpec>,
    pub format: Format,
    pub config: Config,
    pub max_order: u64,
    pub seed: u64,
    pub samples: usize,
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: &Error) -> Self {
        Outcome {
            code: exit_code_for(e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    if e.is_resource_limit() {
        EXIT_LIMIT
    } else {
        EXIT_ERROR
    }
}

impl CliCommand {
    /// Parses arguments (including the program name). Help and version
    /// requests come back as an `Outcome` with code 0.
    pub fn from_args<I, T>(args: I) -> Result<CliCommand, Outcome>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let args = Args::try_parse_from(args).map_err(|e| {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        })?;
        let mut config = Config::default();
        if let Some(m) = args.max_size {
            config.max_size = m;
        }
        if let Some(b) = args.budget {
            config.budget = b;
        }
        if args.sequential {
            config.execution = Execution::Sequential;
        }
        let parse = |s: &str| parse_spec_with_cap(s, config.max_size).map_err(|e| Outcome::error(&e));
        let (verb, raw, max_order, samples): (Verb, Vec<String>, u64, usize) = match args.verb {
            VerbArgs::Classify { spec } => (Verb::Classify, vec![spec], 0, 0),
            VerbArgs::Homs { source, target } => (Verb::Homs, vec![source, target], 0, 0),
            VerbArgs::Aut { spec } => (Verb::Aut, vec![spec], 0, 0),
            VerbArgs::Verify { specs, samples } => (Verb::Verify, specs, 0, samples),
            VerbArgs::Catalog { max_order } => (Verb::Catalog, vec![], max_order, 0),
        };
        let ring_specs = raw.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(CliCommand {
            verb,
            ring_specs,
            format: args.format,
            config,
            max_order,
            seed: args.seed,
            samples,
        })
    }
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => text(value),
    }
}

fn run_inner(cmd: &CliCommand) -> Result<(i32, String), Error> {
    let cfg = &cmd.config;
    let fmt = cmd.format;
    match cmd.verb {
        Verb::Classify => {
            let ring = construct_ring(&cmd.ring_specs[0], cfg)?;
            Ok((EXIT_OK, emit(fmt, &classify_report(&ring), render_classify)))
        }
        Verb::Homs => {
            let a = construct_ring(&cmd.ring_specs[0], cfg)?;
            let b = construct_ring(&cmd.ring_specs[1], cfg)?;
            Ok((EXIT_OK, emit(fmt, &homs_report(&a, &b, cfg)?, render_homs)))
        }
        Verb::Aut => {
            let ring = construct_ring(&cmd.ring_specs[0], cfg)?;
            Ok((EXIT_OK, emit(fmt, &aut_report(&ring, cfg)?, render_aut)))
        }
        Verb::Verify => {
            let r = verify_decomposition(&cmd.ring_specs, cfg)?;
            let sample = if cmd.samples > 0 {
                Some(sample_psi_checks(&r.context, cmd.samples, cmd.seed, cfg)?)
            } else {
                None
            };
            if let Some(s) = &sample {
                if s.violations > 0 {
                    return Err(Error::SelfCheckFailed(format!(
                        "{} of {} sampled matrix pairs violate the product correspondence",
                        s.violations, s.pairs
                    )));
                }
            }
            let code = if r.decomposition_holds {
                EXIT_OK
            } else {
                EXIT_DECOMPOSITION_FAILS
            };
            Ok((code, emit(fmt, &report::verify_report(&r, sample), render_verify)))
        }
        Verb::Catalog => {
            let rows = catalog(cmd.max_order, cfg)?;
            Ok((EXIT_OK, emit(fmt, &catalog_report(cmd.max_order, rows), render_catalog)))
        }
    }
}

pub fn run(cmd: &CliCommand) -> Outcome {
    match run_inner(cmd) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome::error(&e),
    }
}

/// Parses and runs in one step.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match CliCommand::from_args(args) {
        Ok(cmd) => run(&cmd),
        Err(out) => out,
    }
}
