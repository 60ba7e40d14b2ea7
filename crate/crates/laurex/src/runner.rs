//! Command execution over an instantiated session, producing typed outputs
//! that render identically into text and structured form.

use std::fmt;

use laurex_core::homalg::{
    bass_numbers, ext_table, module_hilbert, ring_hilbert, tor_table_from_resolution,
};
use laurex_core::invariants::{
    agreement_level, bass_bound, canonical_hilbert, check_identity, check_ext_expansion, check_ext_sum,
    laurent_coeffs, multiplicity_poly, ring_dimension, Hypotheses, IdentityKind, ReportValue,
    ExtSumMode, VerificationReport,
};
use laurex_core::polyring::Field;
use laurex_core::ratfun::Center;
use laurex_core::resolve::minimal_resolution;
use serde::Serialize;

use crate::corpus;
use crate::session::Session;

#[derive(Clone, Debug)]
pub enum RunError {
    UnknownModule(String),
    UnknownRing(String),
    UnknownCorpusEntry(String),
    UnknownIdentity(String),
    MissingArgument(&'static str),
    Core(String),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::UnknownModule(n) => write!(f, "unknown module name '{n}'"),
            RunError::UnknownRing(n) => write!(f, "unknown ring name '{n}'"),
            RunError::UnknownCorpusEntry(n) => write!(f, "unknown corpus entry '{n}'"),
            RunError::UnknownIdentity(n) => write!(
                f,
                "unknown identity '{n}' (expected ext-sum, ext-expansion, eq4.0, eq4.1, eq4.2, eq6.1, eq6.2, or bc1)"
            ),
            RunError::MissingArgument(what) => write!(f, "missing argument: {what}"),
            RunError::Core(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for RunError {}

fn core_err(e: impl fmt::Display) -> RunError {
    RunError::Core(format!("{e}"))
}

/// Comparison mode selector for `verify thm1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ModeFlag {
    #[default]
    Exact,
    FiniteLength,
    Periodic,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub center: Center,
    pub terms: usize,
    pub max_i: Option<usize>,
    pub mode: ModeFlag,
    pub truncation: i64,
    pub count: i64,
    pub max_level: i64,
    pub prime: u64,
    pub hypotheses: Hypotheses,
    pub verify_canonical: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            center: Center::Zero,
            terms: laurex_core::ratfun::DEFAULT_TERMS,
            max_i: None,
            mode: ModeFlag::Exact,
            truncation: 8,
            count: 8,
            max_level: 4,
            prime: 2,
            hypotheses: Hypotheses::default(),
            verify_canonical: false,
        }
    }
}

/// A single command invocation.
#[derive(Clone, Debug)]
pub enum Invocation {
    Hilbert { module: String },
    Expand { module: String },
    Coeffs { module: String },
    Ext { first: String, second: String },
    Tor { first: String, second: String },
    Bass { module: String },
    Verify { identity: String, first: String, second: Option<String> },
    Agreement { first: String, second: String },
    BassBound { module: String },
    Canonical { ring: String },
    Corpus { name: Option<String> },
}

/// Structured verification report with stable field names.
#[derive(Clone, Debug, Serialize)]
pub struct ReportJson {
    pub identity: String,
    pub lhs: String,
    pub rhs: String,
    pub verdict: String,
    pub hypotheses: Vec<String>,
    pub caveats: Vec<String>,
}

impl ReportJson {
    fn from_report(r: &VerificationReport) -> Self {
        ReportJson {
            identity: r.identity.clone(),
            lhs: render_value(&r.lhs),
            rhs: render_value(&r.rhs),
            verdict: r.verdict.to_string(),
            hypotheses: r.hypotheses.clone(),
            caveats: r.caveats.clone(),
        }
    }
}

fn render_value(v: &ReportValue) -> String {
    format!("{v}")
}

#[derive(Clone, Debug, Serialize)]
pub struct BassValue {
    pub i: usize,
    pub mu: String,
}

/// Typed command output; the structured format serializes this directly,
/// and the text rendering prints the same payloads.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Output {
    Hilbert {
        module: String,
        series: String,
    },
    Expand {
        module: String,
        center: String,
        order: Option<i64>,
        truncation: usize,
        coefficients: Vec<String>,
        display: String,
    },
    Coeffs {
        module: String,
        ring_dimension: i64,
        coefficients: Vec<String>,
    },
    Ext {
        first: String,
        second: String,
        max_i: usize,
        vanishing_certified: bool,
        entries: Vec<String>,
    },
    Tor {
        first: String,
        second: String,
        max_i: usize,
        entries: Vec<String>,
    },
    Bass {
        module: String,
        values: Vec<BassValue>,
    },
    Verify {
        report: ReportJson,
    },
    Agreement {
        first: String,
        second: String,
        max_level: i64,
        level: i64,
        full_agreement: bool,
    },
    BassBound {
        module: String,
        p: u64,
        ring_dimension: i64,
        module_dimension: i64,
        divisible: bool,
        q: Option<u64>,
        bound_exponent: Option<String>,
        bound_value: Option<String>,
        quotient: Option<String>,
        caveats: Vec<String>,
    },
    Canonical {
        ring: String,
        series: String,
        reports: Vec<ReportJson>,
    },
    CorpusList {
        entries: Vec<String>,
    },
    CorpusShow {
        name: String,
        description: String,
        declarations: String,
    },
}

impl Output {
    /// Human-readable rendering; numeric payloads match the structured
    /// output exactly.
    pub fn render_text(&self) -> String {
        match self {
            Output::Hilbert { module, series } => format!("hilbert {module} = {series}"),
            Output::Expand {
                module,
                center,
                order,
                truncation,
                display,
                ..
            } => {
                let ord = order.map_or("+inf".to_string(), |o| o.to_string());
                format!(
                    "expand {module} around {center}: {display}\norder {ord}, {truncation} coefficients"
                )
            }
            Output::Coeffs {
                module,
                ring_dimension,
                coefficients,
            } => {
                let mut out = format!("laurent coefficients of {module} (d = {ring_dimension})");
                for (j, c) in coefficients.iter().enumerate() {
                    out.push_str(&format!("\nf^{j} = {c}"));
                }
                out
            }
            Output::Ext {
                first,
                second,
                max_i,
                vanishing_certified,
                entries,
            } => {
                let mut out = format!("Ext^i({first}, {second}) for i = 0..{max_i}");
                for (i, e) in entries.iter().enumerate() {
                    out.push_str(&format!("\nExt^{i} = {e}"));
                }
                out.push_str(&format!(
                    "\nhigher vanishing certified: {vanishing_certified}"
                ));
                out
            }
            Output::Tor {
                first,
                second,
                max_i,
                entries,
            } => {
                let mut out = format!("Tor_i({first}, {second}) for i = 0..{max_i}");
                for (i, e) in entries.iter().enumerate() {
                    out.push_str(&format!("\nTor_{i} = {e}"));
                }
                out
            }
            Output::Bass { module, values } => {
                let mut out = format!("Bass numbers of {module} at the irrelevant ideal");
                for v in values {
                    out.push_str(&format!("\nmu^{} = {}", v.i, v.mu));
                }
                out
            }
            Output::Verify { report } => {
                let mut out = format!(
                    "identity: {}\nlhs: {}\nrhs: {}\nverdict: {}",
                    report.identity, report.lhs, report.rhs, report.verdict
                );
                if !report.hypotheses.is_empty() {
                    out.push_str(&format!("\nhypotheses: {}", report.hypotheses.join(", ")));
                }
                for c in &report.caveats {
                    out.push_str(&format!("\ncaveat: {c}"));
                }
                out
            }
            Output::Agreement {
                first,
                second,
                max_level,
                level,
                full_agreement,
            } => {
                if *full_agreement {
                    format!(
                        "agreement level of ({first}, {second}): full through level {max_level} (reported {level})"
                    )
                } else {
                    format!("agreement level of ({first}, {second}): {level} (tested through {max_level})")
                }
            }
            Output::BassBound {
                module,
                p,
                ring_dimension,
                module_dimension,
                divisible,
                q,
                bound_exponent,
                bound_value,
                quotient,
                caveats,
            } => {
                let mut out = format!(
                    "bass-bound for {module}: p = {p}, d = {ring_dimension}, n = {module_dimension}"
                );
                out.push_str(&format!("\ndivisible: {divisible}"));
                if let Some(quotient) = quotient {
                    out.push_str(&format!("\nquotient: {quotient}"));
                }
                if let Some(q) = q {
                    out.push_str(&format!("\nq = {q}"));
                }
                match (bound_exponent, bound_value) {
                    (Some(e), Some(v)) => out.push_str(&format!("\nbound: {p}^{e} = {v}")),
                    (Some(e), None) => out.push_str(&format!("\nbound: {p}^{e}")),
                    _ => {}
                }
                for c in caveats {
                    out.push_str(&format!("\ncaveat: {c}"));
                }
                out
            }
            Output::Canonical {
                ring,
                series,
                reports,
            } => {
                let mut out = format!("canonical series of {ring} = {series}");
                for r in reports {
                    out.push_str(&format!("\ncheck {}: {}", r.identity, r.verdict));
                }
                out
            }
            Output::CorpusList { entries } => {
                let mut out = String::from("built-in corpus entries:");
                for e in entries {
                    out.push_str(&format!("\n{e}"));
                }
                out
            }
            Output::CorpusShow {
                name,
                description,
                declarations,
            } => format!("# {name}: {description}\n{declarations}"),
        }
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("output serializes")
    }

    /// The verdicts carried by this output, for exit-status decisions.
    pub fn verdicts(&self) -> Vec<&str> {
        match self {
            Output::Verify { report } => vec![report.verdict.as_str()],
            Output::Canonical { reports, .. } => {
                reports.iter().map(|r| r.verdict.as_str()).collect()
            }
            _ => Vec::new(),
        }
    }
}

fn resolve_module<F: Field>(
    session: &Session<F>,
    name: &str,
) -> Result<laurex_core::polyring::ModulePresentation<F>, RunError> {
    session
        .module(name)
        .ok_or_else(|| RunError::UnknownModule(name.to_string()))
}

/// Executes one command against a session.
pub fn run_command<F: Field>(
    session: &Session<F>,
    invocation: &Invocation,
    options: &RunOptions,
) -> Result<Output, RunError> {
    match invocation {
        Invocation::Hilbert { module } => {
            let m = resolve_module(session, module)?;
            let h = module_hilbert(&m).map_err(core_err)?;
            Ok(Output::Hilbert {
                module: module.clone(),
                series: h.reduce().to_string(),
            })
        }
        Invocation::Expand { module } => {
            let m = resolve_module(session, module)?;
            let h = module_hilbert(&m).map_err(core_err)?;
            let e = h.expand(options.center, options.terms.max(1));
            Ok(Output::Expand {
                module: module.clone(),
                center: options.center.to_string(),
                order: e.order(),
                truncation: e.truncation(),
                coefficients: e.coefficients().iter().map(|c| c.to_string()).collect(),
                display: e.to_string(),
            })
        }
        Invocation::Coeffs { module } => {
            let m = resolve_module(session, module)?;
            let f = laurent_coeffs(&m, options.count).map_err(core_err)?;
            Ok(Output::Coeffs {
                module: module.clone(),
                ring_dimension: f.ring_dimension(),
                coefficients: f.coefficients().iter().map(|c| c.to_string()).collect(),
            })
        }
        Invocation::Ext { first, second } => {
            let m = resolve_module(session, first)?;
            let n = resolve_module(session, second)?;
            let max_i = options.max_i.unwrap_or(6);
            let table = ext_table(&m, &n, max_i).map_err(core_err)?;
            Ok(Output::Ext {
                first: first.clone(),
                second: second.clone(),
                max_i,
                vanishing_certified: table.vanishing_certified(),
                entries: table
                    .entries()
                    .iter()
                    .map(|h| h.reduce().to_string())
                    .collect(),
            })
        }
        Invocation::Tor { first, second } => {
            let m = resolve_module(session, first)?;
            let n = resolve_module(session, second)?;
            let max_i = options.max_i.unwrap_or(6);
            let res = minimal_resolution(&m, max_i + 1).map_err(core_err)?;
            let entries = tor_table_from_resolution(&res, &n, max_i).map_err(core_err)?;
            Ok(Output::Tor {
                first: first.clone(),
                second: second.clone(),
                max_i,
                entries: entries.iter().map(|h| h.reduce().to_string()).collect(),
            })
        }
        Invocation::Bass { module } => {
            let n = resolve_module(session, module)?;
            let max_i = options.max_i.unwrap_or(6);
            let values = bass_numbers(&n, max_i).map_err(core_err)?;
            Ok(Output::Bass {
                module: module.clone(),
                values: values
                    .into_iter()
                    .map(|(i, mu)| BassValue {
                        i,
                        mu: mu.to_string(),
                    })
                    .collect(),
            })
        }
        Invocation::Verify {
            identity,
            first,
            second,
        } => {
            let m = resolve_module(session, first)?;
            let second_name = second.as_deref().unwrap_or(first.as_str());
            let n = resolve_module(session, second_name)?;
            let report = match identity.as_str() {
                "ext-sum" => {
                    let max_i = options.max_i.unwrap_or(6);
                    let table = ext_table(&m, &n, max_i).map_err(core_err)?;
                    let mode = match options.mode {
                        ModeFlag::Exact => ExtSumMode::Exact,
                        ModeFlag::FiniteLength => ExtSumMode::FiniteLength {
                            truncation: options.truncation,
                        },
                        ModeFlag::Periodic => ExtSumMode::PeriodicTail,
                    };
                    check_ext_sum(&m, &n, &table, mode).map_err(core_err)?
                }
                "ext-expansion" => {
                    let max_i = options.max_i.unwrap_or(8);
                    check_ext_expansion(&m, &n, max_i, options.truncation).map_err(core_err)?
                }
                other => {
                    let kind = IdentityKind::parse(other)
                        .ok_or_else(|| RunError::UnknownIdentity(other.to_string()))?;
                    let needed = match kind {
                        IdentityKind::Eq40 => 0,
                        IdentityKind::Eq41 | IdentityKind::Eq61 | IdentityKind::Bc1 => 1,
                        IdentityKind::Eq42 | IdentityKind::Eq62 => 2,
                    };
                    let depth = options.max_i.unwrap_or(needed).max(needed);
                    let table = ext_table(&m, &n, depth).map_err(core_err)?;
                    check_identity(&m, &n, kind, &table, &options.hypotheses).map_err(core_err)?
                }
            };
            Ok(Output::Verify {
                report: ReportJson::from_report(&report),
            })
        }
        Invocation::Agreement { first, second } => {
            let m = resolve_module(session, first)?;
            let n = resolve_module(session, second)?;
            let depth = options
                .max_i
                .unwrap_or((options.max_level.max(0) as usize) + 1);
            let table = ext_table(&m, &n, depth).map_err(core_err)?;
            let level = agreement_level(&m, &n, &table, options.max_level).map_err(core_err)?;
            Ok(Output::Agreement {
                first: first.clone(),
                second: second.clone(),
                max_level: options.max_level,
                level,
                full_agreement: level == options.max_level + 1,
            })
        }
        Invocation::BassBound { module } => {
            let n = resolve_module(session, module)?;
            let ring = n.ring().clone();
            let r_mod = laurex_core::polyring::ModulePresentation::ring_module(ring.clone());
            let e_n = multiplicity_poly(&n).map_err(core_err)?;
            let e_r = multiplicity_poly(&r_mod).map_err(core_err)?;
            let d = ring_dimension(&ring).map_err(core_err)?;
            let report = bass_bound(&e_n.e, &e_r.e, options.prime, d, e_n.dim);
            let (bound_exponent, bound_value) = match &report.bound {
                Some(b) => (
                    Some(if b.exponent_den == 1 {
                        b.exponent_num.to_string()
                    } else {
                        format!("({}/{})", b.exponent_num, b.exponent_den)
                    }),
                    b.value.as_ref().map(|v| v.to_string()),
                ),
                None => (None, None),
            };
            Ok(Output::BassBound {
                module: module.clone(),
                p: options.prime,
                ring_dimension: d,
                module_dimension: e_n.dim,
                divisible: report.divisible,
                q: report.q,
                bound_exponent,
                bound_value,
                quotient: report.quotient.map(|q| q.to_string()),
                caveats: report.caveats,
            })
        }
        Invocation::Canonical { ring } => {
            let r = session
                .ring(ring)
                .ok_or_else(|| RunError::UnknownRing(ring.to_string()))?;
            let (series, reports) =
                canonical_hilbert(r, options.verify_canonical).map_err(core_err)?;
            Ok(Output::Canonical {
                ring: ring.clone(),
                series: series.reduce().to_string(),
                reports: reports.iter().map(ReportJson::from_report).collect(),
            })
        }
        Invocation::Corpus { name } => match name {
            None => Ok(Output::CorpusList {
                entries: corpus::list_corpus().iter().map(|s| s.to_string()).collect(),
            }),
            Some(name) => {
                let entry = corpus::find(name)
                    .ok_or_else(|| RunError::UnknownCorpusEntry(name.to_string()))?;
                Ok(Output::CorpusShow {
                    name: entry.name.to_string(),
                    description: entry.description.to_string(),
                    declarations: entry.declarations.to_string(),
                })
            }
        },
    }
}

/// Convenience: ring Hilbert series used by tests.
pub fn ring_series<F: Field>(
    session: &Session<F>,
    name: &str,
) -> Result<laurex_core::ratfun::HilbertRational, RunError> {
    let ring = session
        .ring(name)
        .ok_or_else(|| RunError::UnknownRing(name.to_string()))?;
    ring_hilbert(ring).map_err(core_err)
}
