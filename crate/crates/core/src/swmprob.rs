// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

//! Probability that a committee maximizes social welfare.
//!
//! For candidate-probability models the approval scores of different
//! candidates are independent, so
//!
//! ```text
//! Pr[W is SWM] = Σ_t Pr[min_{c∈W} AS(c) = t] · Π_{c∉W} Pr[AS(c) <= t]
//! Pr[min_{c∈W} AS(c) = t] = Π_{c∈W} Pr[AS(c) >= t] - Π_{c∈W} Pr[AS(c) >= t+1]
//! ```
//!
//! Joint models are summed directly. Lottery models have no known
//! polynomial method (the problem is #P-complete there) and go through the
//! oracle under the enumeration caps.

use crate::distribution::{as_dist, WelfareDistribution};
use crate::error::Result;
use crate::limits::Caps;
use crate::models::UncertaintyModel;
use crate::oracle::Oracle;
use crate::rational::{self, Rational};
use crate::welfare::{self, Committee};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwmProbMethod {
    JointSum,
    CpDecomposition,
    OracleEnumeration,
}

impl SwmProbMethod {
    pub fn tag(self) -> &'static str {
        match self {
            SwmProbMethod::JointSum => "joint-sum",
            SwmProbMethod::CpDecomposition => "cp-decomposition",
            SwmProbMethod::OracleEnumeration => "oracle-enumeration",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwmProbReport {
    pub probability: Rational,
    pub method: SwmProbMethod,
    /// Profiles summed (joint, oracle) or score levels combined (CP).
    pub terms: u64,
}

pub fn swm_prob(model: &UncertaintyModel, w: &Committee, caps: &Caps) -> Result<SwmProbReport> {
    let m = model.instance().candidates();
    w.check_against(m)?;
    match model {
        UncertaintyModel::Joint(j) => {
            let mut probability = rational::zero();
            for (lambda, profile) in j.entries() {
                if welfare::is_swm(w, profile)? {
                    probability += lambda;
                }
            }
            Ok(SwmProbReport {
                probability,
                method: SwmProbMethod::JointSum,
                terms: j.entries().len() as u64,
            })
        }
        UncertaintyModel::Lottery(_) => {
            let oracle = Oracle::new(model, caps).map_err(|e| {
                e.with_limit_reason("SWM-Prob is #P-complete for lottery models, so only enumeration is exact")
            })?;
            Ok(SwmProbReport {
                probability: oracle.swm_prob(w)?,
                method: SwmProbMethod::OracleEnumeration,
                terms: oracle.profiles_enumerated(),
            })
        }
        UncertaintyModel::CandidateProb(_) => {
            let dists = (1..=m).map(|c| as_dist(model, c)).collect::<Result<Vec<_>>>()?;
            let n = model.instance().voters();
            Ok(SwmProbReport {
                probability: cp_swm_prob(&dists, w, n),
                method: SwmProbMethod::CpDecomposition,
                terms: n as u64 + 1,
            })
        }
    }
}

/// Combines per-candidate score distributions; `dists[c - 1]` is `AS(c)`.
pub(crate) fn cp_swm_prob(dists: &[WelfareDistribution], w: &Committee, n: usize) -> Rational {
    let inside_tail = |t: usize| -> Rational { w.members().iter().map(|&c| dists[c - 1].tail(t)).product() };
    let mut total = rational::zero();
    for t in 0..=n {
        let min_is_t = inside_tail(t) - inside_tail(t + 1);
        if min_is_t == rational::zero() {
            continue;
        }
        let outside: Rational = w.complement(dists.len()).map(|c| dists[c - 1].cdf(t)).product();
        total += min_is_t * outside;
    }
    total
}
