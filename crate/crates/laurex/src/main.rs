use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use laurex_core::invariants::Hypotheses;
use laurex_core::ratfun::Center;

use laurex::runner::{Invocation, ModeFlag, RunOptions};
use laurex::session::parse_session;
use laurex::{corpus, execute, LaurexError};

/// Exact calculator for Hilbert series, Laurent expansions, Ext/Tor tables
/// and Laurent-coefficient identities of finite graded modules.
#[derive(Parser)]
#[command(name = "laurex", version, about)]
struct Cli {
    /// Declaration file to load (may be combined with --corpus).
    #[arg(long, global = true)]
    session: Option<std::path::PathBuf>,

    /// Built-in corpus entry to load.
    #[arg(long, global = true)]
    corpus: Option<String>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Exit non-zero when a verification fails.
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum CenterFlag {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
    #[value(name = "inf")]
    Infinity,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    FiniteLength,
    Periodic,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert series of a module (canonical reduced form).
    Hilbert { module: String },
    /// Laurent expansion of the Hilbert series around a center.
    Expand {
        module: String,
        /// Expansion center.
        #[arg(long, value_enum, default_value = "0")]
        center: CenterFlag,
        /// Number of coefficients, starting at the true order.
        #[arg(long, default_value_t = laurex_core::ratfun::DEFAULT_TERMS)]
        terms: usize,
    },
    /// Laurent coefficients of the expansion around 1 (ring calibration).
    Coeffs {
        module: String,
        /// Highest coefficient index.
        #[arg(long, default_value_t = 8)]
        count: i64,
    },
    /// Hilbert series of Ext^i(first, second) for i = 0..max-i.
    Ext {
        first: String,
        second: String,
        #[arg(long = "max-i", default_value_t = 6)]
        max_i: usize,
    },
    /// Hilbert series of Tor_i(first, second) for i = 0..max-i.
    Tor {
        first: String,
        second: String,
        #[arg(long = "max-i", default_value_t = 6)]
        max_i: usize,
    },
    /// Bass numbers of a module at the irrelevant maximal ideal.
    Bass {
        module: String,
        #[arg(long = "max-i", default_value_t = 6)]
        max_i: usize,
    },
    /// Verify an identity: ext-sum, ext-expansion, eq4.0, eq4.1,
    /// eq4.2, eq6.1, eq6.2, or bc1.
    Verify {
        identity: String,
        first: String,
        second: Option<String>,
        #[arg(long = "max-i")]
        max_i: Option<usize>,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        /// Expansion comparison depth for the infinity-side checks.
        #[arg(long, default_value_t = 8)]
        trunc: i64,
        /// Comma-separated asserted hypotheses: domain, ufd, cm,
        /// reg-codim=c, gor-codim=c.
        #[arg(long = "assert")]
        assertions: Option<String>,
    },
    /// Largest level through which the expansion of phi agrees with the
    /// alternating Ext coefficients.
    Agreement {
        first: String,
        second: String,
        #[arg(long = "max-level", default_value_t = 4)]
        max_level: i64,
        #[arg(long = "max-i")]
        max_i: Option<usize>,
    },
    /// Multiplicity divisibility test and the Bass-number lower bound.
    BassBound {
        module: String,
        /// Prime for the bound.
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
    /// Canonical-module Hilbert series of a ring.
    Canonical {
        ring: String,
        /// Recompute the series independently through the ambient ring and
        /// check the free-module duality instances.
        #[arg(long)]
        verify: bool,
    },
    /// List built-in corpus entries, or print one.
    Corpus { name: Option<String> },
}

fn parse_assertions(s: &str) -> Result<Hypotheses, String> {
    let mut h = Hypotheses::default();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part == "domain" {
            h.domain = true;
        } else if part == "ufd" {
            h.ufd = true;
        } else if part == "cm" || part == "cohen-macaulay" {
            h.cohen_macaulay = true;
        } else if let Some(c) = part.strip_prefix("reg-codim=") {
            h.regular_in_codim = Some(c.parse().map_err(|_| format!("bad codimension '{c}'"))?);
        } else if let Some(c) = part.strip_prefix("gor-codim=") {
            h.gorenstein_in_codim =
                Some(c.parse().map_err(|_| format!("bad codimension '{c}'"))?);
        } else {
            return Err(format!("unknown assertion '{part}'"));
        }
    }
    Ok(h)
}

fn build(cli: &Cli) -> Result<(Invocation, RunOptions), String> {
    let mut options = RunOptions::default();
    let invocation = match &cli.command {
        Command::Hilbert { module } => Invocation::Hilbert {
            module: module.clone(),
        },
        Command::Expand {
            module,
            center,
            terms,
        } => {
            options.center = match center {
                CenterFlag::Zero => Center::Zero,
                CenterFlag::One => Center::One,
                CenterFlag::Infinity => Center::Infinity,
            };
            options.terms = *terms;
            Invocation::Expand {
                module: module.clone(),
            }
        }
        Command::Coeffs { module, count } => {
            options.count = *count;
            Invocation::Coeffs {
                module: module.clone(),
            }
        }
        Command::Ext {
            first,
            second,
            max_i,
        } => {
            options.max_i = Some(*max_i);
            Invocation::Ext {
                first: first.clone(),
                second: second.clone(),
            }
        }
        Command::Tor {
            first,
            second,
            max_i,
        } => {
            options.max_i = Some(*max_i);
            Invocation::Tor {
                first: first.clone(),
                second: second.clone(),
            }
        }
        Command::Bass { module, max_i } => {
            options.max_i = Some(*max_i);
            Invocation::Bass {
                module: module.clone(),
            }
        }
        Command::Verify {
            identity,
            first,
            second,
            max_i,
            mode,
            trunc,
            assertions,
        } => {
            options.max_i = *max_i;
            options.mode = match mode {
                ModeArg::Exact => ModeFlag::Exact,
                ModeArg::FiniteLength => ModeFlag::FiniteLength,
                ModeArg::Periodic => ModeFlag::Periodic,
            };
            options.truncation = *trunc;
            if let Some(s) = assertions {
                options.hypotheses = parse_assertions(s)?;
            }
            Invocation::Verify {
                identity: identity.clone(),
                first: first.clone(),
                second: second.clone(),
            }
        }
        Command::Agreement {
            first,
            second,
            max_level,
            max_i,
        } => {
            options.max_level = *max_level;
            options.max_i = *max_i;
            Invocation::Agreement {
                first: first.clone(),
                second: second.clone(),
            }
        }
        Command::BassBound { module, p } => {
            options.prime = *p;
            Invocation::BassBound {
                module: module.clone(),
            }
        }
        Command::Canonical { ring, verify } => {
            options.verify_canonical = *verify;
            Invocation::Canonical { ring: ring.clone() }
        }
        Command::Corpus { name } => Invocation::Corpus { name: name.clone() },
    };
    Ok((invocation, options))
}

fn run(cli: &Cli) -> Result<ExitCode, LaurexError> {
    let mut text = String::new();
    if let Some(name) = &cli.corpus {
        let entry = corpus::find(name).ok_or_else(|| {
            LaurexError::Run(laurex::runner::RunError::UnknownCorpusEntry(name.clone()))
        })?;
        text.push_str(entry.declarations);
    }
    if let Some(path) = &cli.session {
        let file = std::fs::read_to_string(path).map_err(LaurexError::Io)?;
        text.push_str(&file);
    }
    let parsed = parse_session(&text)?;
    let (invocation, options) = build(cli).map_err(|m| {
        LaurexError::Run(laurex::runner::RunError::Core(m))
    })?;
    let output = execute(&parsed, &invocation, &options)?;
    match cli.format {
        Format::Text => println!("{}", output.render_text()),
        Format::Structured => println!("{}", output.render_json()),
    }
    if cli.strict && output.verdicts().contains(&"fails") {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
