// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

//! Uncertain approval preferences.
//!
//! * [`JointProbabilityModel`]: an explicit distribution over whole profiles.
//! * [`LotteryModel`]: each voter independently draws an approval set from
//!   their own distribution.
//! * [`CandidateProbabilityModel`]: voter `i` approves candidate `c`
//!   independently with probability `p[i][c]`; the three-valued variant
//!   restricts every entry to `{0, 1/2, 1}`.
//!
//! Constructors only canonicalize; [`UncertaintyModel::validate`] reports
//! every violated invariant at once.

mod convert;
mod enumerate;
mod sample;

use std::collections::HashSet;
use std::fmt;

use num::{Signed, Zero};

pub use convert::{cp_to_lottery, lottery_to_joint};
pub use enumerate::{enumerate_plausible, plausible_count, plausible_profiles, PlausibleProfiles};
pub use sample::{sample, Sampler};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::welfare::{ApprovalProfile, CandidateSet, Instance};

/// A distribution over whole approval profiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointProbabilityModel {
    instance: Instance,
    entries: Vec<(Rational, ApprovalProfile)>,
}

impl JointProbabilityModel {
    pub fn new(instance: Instance, entries: Vec<(Rational, ApprovalProfile)>) -> Self {
        JointProbabilityModel { instance, entries }
    }

    pub fn instance(&self) -> Instance {
        self.instance
    }

    pub fn entries(&self) -> &[(Rational, ApprovalProfile)] {
        &self.entries
    }

    fn violations(&self, out: &mut Vec<Violation>) {
        let (n, m) = (self.instance.voters(), self.instance.candidates());
        if self.entries.is_empty() {
            out.push(Violation::EmptyDistribution {
                owner: "joint model".into(),
            });
            return;
        }
        let mut sum = rational::zero();
        let mut seen = HashSet::new();
        for (r, (lambda, profile)) in self.entries.iter().enumerate() {
            let location = format!("profile {}", r + 1);
            if !lambda.is_positive() {
                out.push(Violation::NonPositive {
                    location: location.clone(),
                    value: lambda.clone(),
                });
            }
            if profile.voters() != n {
                out.push(Violation::VoterCount {
                    location: location.clone(),
                    expected: n,
                    found: profile.voters(),
                });
            }
            if profile.candidates() != m {
                out.push(Violation::CandidateCount {
                    location: location.clone(),
                    expected: m,
                    found: profile.candidates(),
                });
            }
            if let Some(&c) = profile.sets().iter().flatten().find(|&&c| c == 0 || c > m) {
                out.push(Violation::CandidateOutOfRange {
                    location: location.clone(),
                    candidate: c,
                    m,
                });
            }
            if !seen.insert(profile) {
                out.push(Violation::Duplicate { location });
            }
            sum += lambda;
        }
        if sum != rational::one() {
            out.push(Violation::SumNotOne {
                owner: "joint distribution".into(),
                sum,
            });
        }
    }
}

/// Per-voter distributions over approval sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LotteryModel {
    instance: Instance,
    voters: Vec<Vec<(Rational, CandidateSet)>>,
}

impl LotteryModel {
    /// Repeated sets within one voter's lottery are merged into the first
    /// occurrence by summing their probabilities.
    pub fn new(instance: Instance, voters: Vec<Vec<(Rational, CandidateSet)>>) -> Self {
        let voters = voters
            .into_iter()
            .map(|lottery| {
                let mut merged: Vec<(Rational, CandidateSet)> = Vec::with_capacity(lottery.len());
                for (lambda, set) in lottery {
                    match merged.iter_mut().find(|(_, s)| *s == set) {
                        Some((acc, _)) => *acc += lambda,
                        None => merged.push((lambda, set)),
                    }
                }
                merged
            })
            .collect();
        LotteryModel { instance, voters }
    }

    pub fn instance(&self) -> Instance {
        self.instance
    }

    /// Voter `i`'s lottery is `voters()[i - 1]`.
    pub fn voters(&self) -> &[Vec<(Rational, CandidateSet)>] {
        &self.voters
    }

    fn violations(&self, out: &mut Vec<Violation>) {
        let (n, m) = (self.instance.voters(), self.instance.candidates());
        if self.voters.len() != n {
            out.push(Violation::VoterCount {
                location: "lottery model".into(),
                expected: n,
                found: self.voters.len(),
            });
        }
        for (i, lottery) in self.voters.iter().enumerate() {
            let voter = i + 1;
            if lottery.is_empty() {
                out.push(Violation::EmptyDistribution {
                    owner: format!("voter {voter}"),
                });
                continue;
            }
            let mut sum = rational::zero();
            for (r, (lambda, set)) in lottery.iter().enumerate() {
                let location = format!("voter {voter} entry {}", r + 1);
                if !lambda.is_positive() {
                    out.push(Violation::NonPositive {
                        location: location.clone(),
                        value: lambda.clone(),
                    });
                }
                if let Some(&c) = set.iter().find(|&&c| c == 0 || c > m) {
                    out.push(Violation::CandidateOutOfRange {
                        location: location.clone(),
                        candidate: c,
                        m,
                    });
                }
                if lottery[..r].iter().any(|(_, s)| s == set) {
                    out.push(Violation::Duplicate { location });
                }
                sum += lambda;
            }
            if sum != rational::one() {
                out.push(Violation::SumNotOne {
                    owner: format!("voter {voter} distribution"),
                    sum,
                });
            }
        }
    }
}

/// Independent approval probabilities `p[i][c]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateProbabilityModel {
    instance: Instance,
    p: Vec<Vec<Rational>>,
    three_valued: bool,
}

impl CandidateProbabilityModel {
    /// `rows[i - 1][c - 1]` is the probability voter `i` approves `c`.
    pub fn new(instance: Instance, rows: Vec<Vec<Rational>>) -> Self {
        CandidateProbabilityModel {
            instance,
            p: rows,
            three_valued: false,
        }
    }

    /// A candidate-probability model whose entries must all be 0, 1/2 or 1.
    pub fn three_valued(instance: Instance, rows: Vec<Vec<Rational>>) -> Self {
        CandidateProbabilityModel {
            instance,
            p: rows,
            three_valued: true,
        }
    }

    pub fn instance(&self) -> Instance {
        self.instance
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.p
    }

    /// `p[i][c]` with 1-based voter and candidate.
    pub fn prob(&self, voter: usize, candidate: usize) -> &Rational {
        &self.p[voter - 1][candidate - 1]
    }

    pub fn is_three_valued(&self) -> bool {
        self.three_valued
    }

    fn violations(&self, out: &mut Vec<Violation>) {
        let (n, m) = (self.instance.voters(), self.instance.candidates());
        if self.p.len() != n {
            out.push(Violation::VoterCount {
                location: "probability matrix".into(),
                expected: n,
                found: self.p.len(),
            });
        }
        let half = rational::ratio(1, 2);
        for (i, row) in self.p.iter().enumerate() {
            if row.len() != m {
                out.push(Violation::CandidateCount {
                    location: format!("row of voter {}", i + 1),
                    expected: m,
                    found: row.len(),
                });
            }
            for (c, value) in row.iter().enumerate() {
                if !rational::is_probability(value) {
                    out.push(Violation::ProbabilityOutOfRange {
                        voter: i + 1,
                        candidate: c + 1,
                        value: value.clone(),
                    });
                } else if self.three_valued && !(value.is_zero() || *value == half || *value == rational::one()) {
                    out.push(Violation::NotThreeValued {
                        voter: i + 1,
                        candidate: c + 1,
                        value: value.clone(),
                    });
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UncertaintyModel {
    Joint(JointProbabilityModel),
    Lottery(LotteryModel),
    /// Covers the three-valued model via [`CandidateProbabilityModel::is_three_valued`].
    CandidateProb(CandidateProbabilityModel),
}

impl UncertaintyModel {
    pub fn instance(&self) -> Instance {
        match self {
            UncertaintyModel::Joint(j) => j.instance(),
            UncertaintyModel::Lottery(l) => l.instance(),
            UncertaintyModel::CandidateProb(c) => c.instance(),
        }
    }

    /// Name used in instance files: `joint`, `lottery`, `candidate_prob` or `3va`.
    pub fn kind_name(&self) -> &'static str {
        match self {
            UncertaintyModel::Joint(_) => "joint",
            UncertaintyModel::Lottery(_) => "lottery",
            UncertaintyModel::CandidateProb(c) if c.is_three_valued() => "3va",
            UncertaintyModel::CandidateProb(_) => "candidate_prob",
        }
    }

    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        match self {
            UncertaintyModel::Joint(j) => j.violations(&mut out),
            UncertaintyModel::Lottery(l) => l.violations(&mut out),
            UncertaintyModel::CandidateProb(c) => c.violations(&mut out),
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub fn validated(self) -> Result<Self> {
        self.validate().map_err(Error::Validation)?;
        Ok(self)
    }
}

impl From<JointProbabilityModel> for UncertaintyModel {
    fn from(m: JointProbabilityModel) -> Self {
        UncertaintyModel::Joint(m)
    }
}

impl From<LotteryModel> for UncertaintyModel {
    fn from(m: LotteryModel) -> Self {
        UncertaintyModel::Lottery(m)
    }
}

impl From<CandidateProbabilityModel> for UncertaintyModel {
    fn from(m: CandidateProbabilityModel) -> Self {
        UncertaintyModel::CandidateProb(m)
    }
}

/// One violated model invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    VoterCount {
        location: String,
        expected: usize,
        found: usize,
    },
    CandidateCount {
        location: String,
        expected: usize,
        found: usize,
    },
    CandidateOutOfRange {
        location: String,
        candidate: usize,
        m: usize,
    },
    NonPositive {
        location: String,
        value: Rational,
    },
    SumNotOne {
        owner: String,
        sum: Rational,
    },
    Duplicate {
        location: String,
    },
    EmptyDistribution {
        owner: String,
    },
    ProbabilityOutOfRange {
        voter: usize,
        candidate: usize,
        value: Rational,
    },
    NotThreeValued {
        voter: usize,
        candidate: usize,
        value: Rational,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VoterCount {
                location,
                expected,
                found,
            } => write!(f, "{location} has {found} voters, expected {expected}"),
            Violation::CandidateCount {
                location,
                expected,
                found,
            } => write!(f, "{location} covers {found} candidates, expected {expected}"),
            Violation::CandidateOutOfRange { location, candidate, m } => {
                write!(f, "{location} names candidate {candidate} outside 1..={m}")
            }
            Violation::NonPositive { location, value } => {
                write!(f, "{location} has non-positive probability {value}")
            }
            Violation::SumNotOne { owner, sum } => write!(f, "{owner} sums to {sum}"),
            Violation::Duplicate { location } => {
                write!(f, "{location} repeats an earlier entry")
            }
            Violation::EmptyDistribution { owner } => write!(f, "{owner} has no entries"),
            Violation::ProbabilityOutOfRange {
                voter,
                candidate,
                value,
            } => write!(f, "probability out of range: p[{voter}][{candidate}] = {value}"),
            Violation::NotThreeValued {
                voter,
                candidate,
                value,
            } => write!(f, "p[{voter}][{candidate}] = {value} is not one of 0, 1/2, 1"),
        }
    }
}
