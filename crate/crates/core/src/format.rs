// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON instance files.
//!
//! ```json
//! { "model": "lottery", "n": 2, "m": 3, "k": 1,
//!   "voters": [[{"prob": "0.3", "set": [1, 2]}, {"prob": "7/10", "set": [3]}],
//!              [{"prob": "1", "set": []}]] }
//! ```
//!
//! `model` is one of `joint` (payload `entries: [{prob, profile}]`),
//! `lottery` (`voters: [[{prob, set}]]`), `candidate_prob` or `3va`
//! (`matrix: [[prob]]`). Probabilities are strings holding a decimal or a
//! fraction and are parsed exactly; plain JSON numbers are read through their
//! decimal text.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{CandidateProbabilityModel, JointProbabilityModel, LotteryModel, UncertaintyModel};
use crate::rational::{self, Rational};
use crate::welfare::{ApprovalProfile, CandidateSet, Instance};

#[derive(Serialize, Deserialize)]
#[serde(tag = "model")]
enum Document {
    #[serde(rename = "joint")]
    Joint {
        n: usize,
        m: usize,
        k: usize,
        entries: Vec<JointEntry>,
    },
    #[serde(rename = "lottery")]
    Lottery {
        n: usize,
        m: usize,
        k: usize,
        voters: Vec<Vec<LotteryEntry>>,
    },
    #[serde(rename = "candidate_prob")]
    CandidateProb {
        n: usize,
        m: usize,
        k: usize,
        matrix: Vec<Vec<Prob>>,
    },
    #[serde(rename = "3va")]
    ThreeValued {
        n: usize,
        m: usize,
        k: usize,
        matrix: Vec<Vec<Prob>>,
    },
}

#[derive(Serialize, Deserialize)]
struct JointEntry {
    prob: Prob,
    profile: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct LotteryEntry {
    prob: Prob,
    set: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Prob {
    Text(String),
    Number(serde_json::Number),
}

impl Prob {
    fn value(&self) -> Result<Rational> {
        match self {
            Prob::Text(s) => rational::parse(s),
            Prob::Number(n) => rational::parse(&n.to_string()),
        }
    }

    fn of(r: &Rational) -> Self {
        Prob::Text(rational::to_fraction_string(r))
    }
}

fn matrix(rows: &[Vec<Prob>]) -> Result<Vec<Vec<Rational>>> {
    rows.iter().map(|row| row.iter().map(Prob::value).collect()).collect()
}

/// Reads a model without validating it.
pub fn parse_unvalidated(text: &str) -> Result<UncertaintyModel> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))?;
    Ok(match doc {
        Document::Joint { n, m, k, entries } => {
            let entries = entries
                .into_iter()
                .map(|e| {
                    let sets = e.profile.into_iter().map(|s| s.into_iter().collect()).collect();
                    Ok((e.prob.value()?, ApprovalProfile::new_unchecked(m, sets)))
                })
                .collect::<Result<Vec<_>>>()?;
            JointProbabilityModel::new(Instance::new(n, m, k)?, entries).into()
        }
        Document::Lottery { n, m, k, voters } => {
            let voters = voters
                .into_iter()
                .map(|lottery| {
                    lottery
                        .into_iter()
                        .map(|e| Ok((e.prob.value()?, e.set.into_iter().collect::<CandidateSet>())))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            LotteryModel::new(Instance::new(n, m, k)?, voters).into()
        }
        Document::CandidateProb { n, m, k, matrix: rows } => {
            CandidateProbabilityModel::new(Instance::new(n, m, k)?, matrix(&rows)?).into()
        }
        Document::ThreeValued { n, m, k, matrix: rows } => {
            CandidateProbabilityModel::three_valued(Instance::new(n, m, k)?, matrix(&rows)?).into()
        }
    })
}

/// Reads and validates a model.
pub fn parse_instance(text: &str) -> Result<UncertaintyModel> {
    parse_unvalidated(text)?.validated()
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<UncertaintyModel> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text)
}

/// Canonical JSON: fractions in lowest terms, sets sorted, duplicate lottery
/// sets merged.
pub fn to_json(model: &UncertaintyModel) -> String {
    let inst = model.instance();
    let (n, m, k) = (inst.voters(), inst.candidates(), inst.committee_size());
    let doc = match model {
        UncertaintyModel::Joint(j) => Document::Joint {
            n,
            m,
            k,
            entries: j
                .entries()
                .iter()
                .map(|(p, profile)| JointEntry {
                    prob: Prob::of(p),
                    profile: profile.sets().iter().map(|s| s.iter().copied().collect()).collect(),
                })
                .collect(),
        },
        UncertaintyModel::Lottery(l) => Document::Lottery {
            n,
            m,
            k,
            voters: l
                .voters()
                .iter()
                .map(|lottery| {
                    lottery
                        .iter()
                        .map(|(p, s)| LotteryEntry {
                            prob: Prob::of(p),
                            set: s.iter().copied().collect(),
                        })
                        .collect()
                })
                .collect(),
        },
        UncertaintyModel::CandidateProb(c) => {
            let rows = c.rows().iter().map(|row| row.iter().map(Prob::of).collect()).collect();
            if c.is_three_valued() {
                Document::ThreeValued { n, m, k, matrix: rows }
            } else {
                Document::CandidateProb { n, m, k, matrix: rows }
            }
        }
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("instance documents always serialize");
    text.push('\n');
    text
}
