// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

//! `swm`: exact committee-selection queries over uncertain approval ballots.
//!
//! Exit codes: 0 success, 1 internal error, 2 usage, 3 invalid instance,
//! 4 resource limit, 5 oracle disagreement.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use swm_core::Caps;

use report::{ExitKind, Failure, Format};

#[derive(Debug, Parser)]
#[command(
    name = "swm",
    version,
    about = "Welfare-maximizing committees under uncertain approval ballots"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,

    /// Maximum number of plausible profiles to enumerate.
    #[arg(long, global = true, default_value_t = Caps::default().max_profiles)]
    pub cap_profiles: u64,

    /// Maximum number of uncertain cells per voter when expanding a matrix.
    #[arg(long, global = true, default_value_t = Caps::default().max_uncertain_per_voter)]
    pub cap_uncertain: usize,

    /// Maximum number of committees to enumerate.
    #[arg(long, global = true, default_value_t = Caps::default().max_committees)]
    pub cap_committees: u64,
}

impl Cli {
    pub fn caps(&self) -> Caps {
        Caps {
            max_profiles: self.cap_profiles,
            max_uncertain_per_voter: self.cap_uncertain,
            max_committees: self.cap_committees,
        }
    }
}

#[derive(Debug, Args)]
pub struct Target {
    /// Instance file.
    pub instance: PathBuf,
    /// Committee as comma-separated candidate indices, e.g. `3,4`.
    #[arg(long, value_delimiter = ',')]
    pub committee: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct Sized {
    /// Instance file.
    pub instance: PathBuf,
    /// Committee size; defaults to the instance's `k`.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Query {
    CheckPoss,
    CheckNec,
    ExistsNec,
    Dist,
    Prob,
    Maxswm,
    Maxexpsw,
    Expected,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Is the committee welfare maximizing in some plausible profile?
    CheckPoss(Target),
    /// Is the committee welfare maximizing in every plausible profile?
    CheckNec(Target),
    /// Find a committee that is welfare maximizing in every plausible profile.
    ExistsNec(Sized),
    /// Distribution of the committee's social welfare.
    Dist {
        #[command(flatten)]
        target: Target,
        /// Report only `Pr[SW = tau]` and `Pr[SW >= tau]`.
        #[arg(long)]
        tau: Option<usize>,
    },
    /// Probability that the committee is welfare maximizing.
    Prob(Target),
    /// Committee most likely to be welfare maximizing.
    Maxswm(Sized),
    /// Committee with the largest expected social welfare.
    Maxexpsw(Sized),
    /// Expected social welfare of the committee.
    Expected(Target),
    /// Exact (alpha, beta)-robustness of the committee.
    Robust {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Run a query through the fast path and the enumeration oracle and
    /// compare the answers exactly.
    OracleVerify {
        #[arg(value_enum)]
        query: Query,
        #[command(flatten)]
        target: Target,
        /// Committee size for size-scoped queries and for committee-scoped
        /// queries without `--committee`.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Write a random instance, or the unrobust single-voter family.
    Gen(GenArgs),
    /// Time every query on every instance in a directory.
    Bench { dir: PathBuf },
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Model kind: joint, lottery, candidate_prob or 3va.
    #[arg(long, default_value = "lottery", conflicts_with = "unrobust")]
    pub kind: String,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub m: usize,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Maximum sets per voter (lottery) or profiles (joint).
    #[arg(long)]
    pub support: Option<usize>,
    /// Chance that a candidate joins a random approval set.
    #[arg(long)]
    pub density: Option<f64>,
    /// Comma-separated probabilities for candidate_prob cells.
    #[arg(long, value_delimiter = ',')]
    pub menu: Option<Vec<String>>,
    /// One voter, `m` candidates each approved with probability `--p`, `k = 1`.
    #[arg(long, requires_all = ["p", "beta"])]
    pub unrobust: bool,
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    /// Write the instance here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or_default();
            let message = first.strip_prefix("error: ").unwrap_or(first);
            return fail(&Failure::usage(message));
        }
    };
    match commands::run(&cli) {
        Ok(output) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(output.text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(ExitKind::Internal.code());
            }
            match output.failure {
                Some(f) => fail(&f),
                None => ExitCode::SUCCESS,
            }
        }
        Err(f) => fail(&f),
    }
}

fn fail(f: &Failure) -> ExitCode {
    eprintln!("{}", f.record());
    ExitCode::from(f.kind.code())
}
