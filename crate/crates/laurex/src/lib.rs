//! Session parsing, built-in example corpus, and command execution for the
//! exact graded-module calculator. The binary in this crate wires these
//! pieces to a command line; the mathematical kernel lives in
//! `laurex-core`.

pub mod corpus;
pub mod runner;
pub mod session;

use laurex_core::polyring::Fp;
use num_rational::BigRational;

use runner::{run_command, Invocation, Output, RunError, RunOptions};
use session::{instantiate, FieldChoice, ParsedSession, SessionError};

#[derive(Debug)]
pub enum LaurexError {
    Session(SessionError),
    Run(RunError),
    UnsupportedPrime(u64),
    Io(std::io::Error),
}

impl std::fmt::Display for LaurexError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LaurexError::Session(e) => write!(f, "{e}"),
            LaurexError::Run(e) => write!(f, "{e}"),
            LaurexError::UnsupportedPrime(p) => write!(
                f,
                "prime field GF({p}) is not in the built-in menu (supported: 2, 3, 5, 7, 101, 32003)"
            ),
            LaurexError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LaurexError {}

impl From<SessionError> for LaurexError {
    fn from(e: SessionError) -> Self {
        LaurexError::Session(e)
    }
}

impl From<RunError> for LaurexError {
    fn from(e: RunError) -> Self {
        LaurexError::Run(e)
    }
}

/// Parses, instantiates over the declared field, and runs one command.
/// The prime-field menu is fixed because moduli are compile-time choices.
pub fn execute(
    parsed: &ParsedSession,
    invocation: &Invocation,
    options: &RunOptions,
) -> Result<Output, LaurexError> {
    match parsed.field() {
        FieldChoice::Rationals => {
            let session = instantiate::<BigRational>(parsed)?;
            Ok(run_command(&session, invocation, options)?)
        }
        FieldChoice::PrimeField(2) => run_prime::<2>(parsed, invocation, options),
        FieldChoice::PrimeField(3) => run_prime::<3>(parsed, invocation, options),
        FieldChoice::PrimeField(5) => run_prime::<5>(parsed, invocation, options),
        FieldChoice::PrimeField(7) => run_prime::<7>(parsed, invocation, options),
        FieldChoice::PrimeField(101) => run_prime::<101>(parsed, invocation, options),
        FieldChoice::PrimeField(32003) => run_prime::<32003>(parsed, invocation, options),
        FieldChoice::PrimeField(p) => Err(LaurexError::UnsupportedPrime(p)),
    }
}

fn run_prime<const P: u64>(
    parsed: &ParsedSession,
    invocation: &Invocation,
    options: &RunOptions,
) -> Result<Output, LaurexError> {
    let session = instantiate::<Fp<P>>(parsed)?;
    Ok(run_command(&session, invocation, options)?)
}
