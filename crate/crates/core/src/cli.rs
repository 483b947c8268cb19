//! Command-line front end.
//!
//! Exit codes: 0 when the check is verified, 1 when it is violated (or a
//! bounded search found nothing), 2 on bad arguments, 3 on an internal
//! consistency failure.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::ideal::{
    acc_chain_experiment, audit_stages, degree2_slice_membership, irreducibility_scan,
    lemma34_verify, run_shuffle, ShuffleBounds,
};
use crate::poly::DiffPoly;
use crate::report::{Report, Status};
use crate::witness::{
    eord_distinctness_scan, make_a, make_u, monomial_injectivity_scan, remark32_scan,
};

pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sigmapoly",
    version,
    about = "Difference polynomial witness checks"
)]
pub struct Cli {
    /// Write the JSON report to this path, or to stdout with `-`.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a witness polynomial.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: u32,
    },
    /// Run a verification check.
    #[command(subcommand)]
    Check(Check),
    /// Certify the strict chain of witness ideals for m = 1..=m_max.
    Acc {
        #[arg(long)]
        m_max: u32,
    },
    /// Iterate the mixed-closure shuffle and audit its degree-2 elements.
    Shuffle {
        #[command(flatten)]
        run: ShuffleArgs,
        #[arg(long, default_value_t = 1)]
        iters: usize,
        /// Also write one `stage-<n>.txt` snapshot per stage here.
        #[arg(long, value_name = "DIR")]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(name = "u")]
    U,
    #[value(name = "A")]
    A,
}

#[derive(Debug, Args)]
pub struct ShuffleArgs {
    #[arg(long)]
    m: u32,
    #[arg(long, default_value_t = 40)]
    max_index: usize,
    #[arg(long, default_value_t = 1)]
    extra_degree: u64,
    /// Default witnesses use shifts of each generator up to this amount.
    #[arg(long, default_value_t = 0)]
    max_shift: usize,
}

impl ShuffleArgs {
    fn bounds(&self) -> ShuffleBounds {
        ShuffleBounds {
            max_index: self.max_index,
            extra_degree: self.extra_degree,
            max_shift: self.max_shift,
        }
    }

    fn params(&self, iters: usize) -> Value {
        json!({
            "m": self.m,
            "iters": iters,
            "max_index": self.max_index,
            "extra_degree": self.extra_degree,
            "max_shift": self.max_shift,
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// Power-of-two coincidences over distinct exponent 4-tuples.
    Remark32 {
        #[arg(long)]
        max: u32,
    },
    /// Measured effective orders of u(0..=max).
    Eords {
        #[arg(long)]
        max: u32,
    },
    /// Collisions among shifted witness terms.
    Injectivity {
        #[arg(long)]
        k_max: u32,
        #[arg(long)]
        j_max: usize,
    },
    /// Gram rank of random slice elements.
    Irreducible {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        shifts: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Exact membership of a quadratic in the degree-2 slice.
    Slice {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        m: u32,
    },
    /// Bounded shuffle audit of the degree-2 elements.
    Lemma34 {
        #[command(flatten)]
        run: ShuffleArgs,
        #[arg(long, default_value_t = 2)]
        iters: usize,
    },
}

/// Result of one invocation. `stdout` holds the human-readable output, or the
/// JSON report when `--json -` was given.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

impl Outcome {
    fn usage(message: String) -> Self {
        Outcome {
            exit_code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message,
            report: None,
        }
    }
}

fn error_exit(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn status_of(ok: bool) -> Status {
    if ok {
        Status::Verified
    } else {
        Status::Violated
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_VERIFIED
            };
            let text = e.render().to_string();
            Outcome {
                exit_code: code,
                stdout: if code == EXIT_VERIFIED {
                    text.clone()
                } else {
                    String::new()
                },
                stderr: if code == EXIT_VERIFIED {
                    String::new()
                } else {
                    text
                },
                report: None,
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let (report, text) = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                exit_code: error_exit(&e),
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
                report: None,
            }
        }
    };
    let report = if report.elapsed_ms == 0 {
        report.with_elapsed(start.elapsed())
    } else {
        report
    };
    let mut stdout = text;
    match cli.json.as_deref() {
        Some(p) if p == Path::new("-") => stdout = report.to_json() + "\n",
        Some(p) => {
            if let Err(e) = std::fs::write(p, report.to_json() + "\n") {
                return Outcome::usage(format!("error: cannot write {}: {e}\n", p.display()));
            }
        }
        None => {}
    }
    Outcome {
        exit_code: report.status.exit_code(),
        stdout,
        stderr: String::new(),
        report: Some(report),
    }
}

fn scan_line(r: &Report, detail: &str) -> String {
    let status = match r.status {
        Status::Verified => "verified",
        Status::Violated => "VIOLATED",
        Status::NotFoundWithinBounds => "not found within bounds",
    };
    format!("{}: {status} ({detail})\n", r.check)
}

fn dispatch(cmd: &Command) -> crate::Result<(Report, String)> {
    match cmd {
        Command::Gen { family, n } => {
            let p = match family {
                Family::U => make_u(*n)?,
                Family::A => make_a(*n)?,
            };
            let name = match family {
                Family::U => "u",
                Family::A => "A",
            };
            let report = Report::new(
                "gen",
                json!({ "family": name, "n": n }),
                Status::Verified,
                vec![json!({ "poly": p.to_string() })],
            );
            Ok((report, format!("{p}\n")))
        }
        Command::Check(c) => check(c),
        Command::Acc { m_max } => {
            let certs = acc_chain_experiment(*m_max)?;
            let ok = certs.iter().all(|c| c.matches_expected());
            let mut text = String::new();
            for c in &certs {
                text += &format!(
                    "m={}: bound {} (expected {}), separator {} Eords {:?}, {}\n",
                    c.m,
                    c.max_eord_bound,
                    c.expected_bound(),
                    c.separator,
                    c.separator_eords,
                    if c.is_strict() {
                        "strict"
                    } else {
                        "NOT STRICT"
                    },
                );
            }
            let report = Report::new(
                "acc",
                json!({ "m_max": m_max }),
                status_of(ok),
                certs.iter().map(to_value).collect(),
            );
            text += &scan_line(&report, &format!("{} links", certs.len()));
            Ok((report, text))
        }
        Command::Shuffle {
            run,
            iters,
            out_dir,
        } => {
            let stages = run_shuffle(run.m, *iters, run.bounds())?;
            let audit = audit_stages(run.m, &stages)?;
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir).map_err(|e| {
                    Error::Contract(format!("cannot create {}: {e}", dir.display()))
                })?;
                for s in &stages {
                    let path = dir.join(format!("stage-{}.txt", s.stage()));
                    let mut body = s.snapshot().join("\n");
                    body.push('\n');
                    std::fs::write(&path, body).map_err(|e| {
                        Error::Contract(format!("cannot write {}: {e}", path.display()))
                    })?;
                }
            }
            let mut payload: Vec<Value> = stages
                .iter()
                .map(|s| {
                    json!({
                        "stage": s.stage(),
                        "size": s.generators().len(),
                        "generators": s.snapshot(),
                    })
                })
                .collect();
            payload.push(to_value(&audit));
            let mut text = String::new();
            for s in &stages {
                text += &format!("S[{}]: {} generators\n", s.stage(), s.generators().len());
                if s.generators().len() <= 8 {
                    for g in s.generators() {
                        text += &format!("  {g}\n");
                    }
                }
            }
            let report = Report::new(
                "shuffle",
                run.params(*iters),
                status_of(audit.is_clean()),
                payload,
            );
            text += &scan_line(
                &report,
                &format!(
                    "{} elements audited, {} violations",
                    audit.checked, audit.violation_count
                ),
            );
            Ok((report, text))
        }
    }
}

fn check(c: &Check) -> crate::Result<(Report, String)> {
    let (report, detail) = match c {
        Check::Remark32 { max } => {
            let s = remark32_scan(*max)?;
            let d = format!("{} tuples, {} violations", s.checked, s.violation_count);
            (Report::from_scan("remark32", json!({ "max": max }), &s), d)
        }
        Check::Eords { max } => {
            let s = eord_distinctness_scan(*max)?;
            let d = format!(
                "measured Eords {}, {} violations",
                s.summary["measured_eords"], s.violation_count
            );
            (Report::from_scan("eords", json!({ "max": max }), &s), d)
        }
        Check::Injectivity { k_max, j_max } => {
            let s = monomial_injectivity_scan(*k_max, *j_max)?;
            let d = format!("{} terms, {} collisions", s.checked, s.violation_count);
            (
                Report::from_scan("injectivity", json!({ "k_max": k_max, "j_max": j_max }), &s),
                d,
            )
        }
        Check::Irreducible {
            m,
            shifts,
            samples,
            seed,
        } => {
            let s = irreducibility_scan(*m, *shifts, *samples, *seed)?;
            let d = format!(
                "{} samples, minimum Gram rank {}, {} violations",
                s.checked, s.summary["min_rank"], s.violation_count
            );
            let params = json!({ "m": m, "shifts": shifts, "samples": samples });
            (
                Report::from_scan("irreducible", params, &s).with_seed(*seed),
                d,
            )
        }
        Check::Slice { poly, m } => {
            let q: DiffPoly = poly.parse()?;
            let cert = degree2_slice_membership(&q, *m)?;
            let d = match &cert.verdict {
                crate::ideal::SliceVerdict::Member { coefficients } => {
                    format!("member with {} basis coefficients", coefficients.len())
                }
                crate::ideal::SliceVerdict::NonMember { refutation } => {
                    format!("non-member: {refutation}")
                }
            };
            (
                Report::new(
                    "slice",
                    json!({ "poly": poly, "m": m }),
                    status_of(cert.is_member()),
                    vec![to_value(&cert)],
                ),
                d,
            )
        }
        Check::Lemma34 { run, iters } => {
            let s = lemma34_verify(run.m, *iters, run.bounds())?;
            let d = format!(
                "stage sizes {}, {} degree-2 elements, {} violations",
                s.summary["stage_sizes"],
                s.summary["degree2_elements"]
                    .as_array()
                    .map_or(0, |a| a.len()),
                s.violation_count
            );
            (Report::from_scan("lemma34", run.params(*iters), &s), d)
        }
    };
    let line = scan_line(&report, &detail);
    Ok((report, line))
}
