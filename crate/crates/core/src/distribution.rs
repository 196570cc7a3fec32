// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact distributions of social welfare and approval scores.
//!
//! * Lottery model: each voter contributes `|W ∩ A_i|` independently, so the
//!   distribution is the convolution of the rows of a [`ContributionTable`].
//! * Candidate-probability model: `SW(W)` is the number of successes among
//!   the independent cells `(i, c)` with `c ∈ W`. Certain approvals shift the
//!   result and the uncertain cells form a Poisson binomial.
//! * Joint model: direct summation over the entries.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::models::{CandidateProbabilityModel, LotteryModel, UncertaintyModel};
use crate::rational::{self, Rational};
use crate::welfare::{self, Committee};

/// Probability of each welfare value, stored between the smallest and the
/// largest value with positive probability.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WelfareDistribution {
    min: usize,
    probs: Vec<Rational>,
}

impl WelfareDistribution {
    /// `dense[t]` is `Pr[X = t]`. Zeros at either end are dropped.
    pub fn from_dense(mut dense: Vec<Rational>) -> Self {
        while dense.last().is_some_and(Zero::is_zero) {
            dense.pop();
        }
        let min = dense.iter().position(|p| !p.is_zero()).unwrap_or(0);
        dense.drain(..min);
        WelfareDistribution { min, probs: dense }
    }

    /// All mass on `value`.
    pub fn point(value: usize) -> Self {
        WelfareDistribution {
            min: value,
            probs: vec![rational::one()],
        }
    }

    pub fn support_min(&self) -> usize {
        self.min
    }

    pub fn support_max(&self) -> usize {
        (self.min + self.probs.len()).saturating_sub(1)
    }

    /// `Pr[X = value]`.
    pub fn prob(&self, value: usize) -> Rational {
        value
            .checked_sub(self.min)
            .and_then(|j| self.probs.get(j))
            .cloned()
            .unwrap_or_else(rational::zero)
    }

    /// `(value, probability)` pairs in increasing value order, including any
    /// interior zeros.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.probs.iter().enumerate().map(move |(j, p)| (self.min + j, p))
    }

    /// `Pr[X >= value]`.
    pub fn tail(&self, value: usize) -> Rational {
        let skip = value.saturating_sub(self.min);
        self.probs.iter().skip(skip).sum()
    }

    /// `Pr[X <= value]`.
    pub fn cdf(&self, value: usize) -> Rational {
        match value.checked_sub(self.min) {
            Some(j) => self.probs.iter().take(j + 1).sum(),
            None => rational::zero(),
        }
    }

    pub fn total(&self) -> Rational {
        self.probs.iter().sum()
    }

    pub fn mean(&self) -> Rational {
        self.iter().map(|(t, p)| p * rational::from_usize(t)).sum()
    }

    /// Distribution of `X + Y` for independent `X` and `Y`.
    pub fn convolve(&self, other: &WelfareDistribution) -> WelfareDistribution {
        let mut dense = vec![rational::zero(); self.probs.len() + other.probs.len() - 1];
        for (a, pa) in self.probs.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for (b, pb) in other.probs.iter().enumerate() {
                dense[a + b] += pa * pb;
            }
        }
        let mut out = WelfareDistribution::from_dense(dense);
        out.min += self.min + other.min;
        out
    }
}

/// `f[i][j] = Pr[|W ∩ A_i| = j]` for a lottery model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContributionTable {
    rows: Vec<Vec<Rational>>,
}

impl ContributionTable {
    /// Row `i - 1` holds voter `i`; each row has `|W| + 1` entries.
    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }
}

pub fn contribution_table(model: &LotteryModel, w: &Committee) -> Result<ContributionTable> {
    w.check_against(model.instance().candidates())?;
    let rows = model
        .voters()
        .iter()
        .map(|lottery| {
            let mut row = vec![rational::zero(); w.len() + 1];
            for (lambda, set) in lottery {
                let overlap = w.members().iter().filter(|c| set.contains(c)).count();
                row[overlap] += lambda;
            }
            row
        })
        .collect();
    Ok(ContributionTable { rows })
}

/// Distribution of the number of successes among independent trials with the
/// given success probabilities, over `0..=ps.len()`.
pub fn poisson_binomial(ps: &[Rational]) -> Vec<Rational> {
    let mut dp = vec![rational::zero(); ps.len() + 1];
    dp[0] = rational::one();
    for (i, p) in ps.iter().enumerate() {
        let q = rational::one() - p;
        for j in (0..=i + 1).rev() {
            let stay = &dp[j] * &q;
            dp[j] = if j > 0 { stay + &dp[j - 1] * p } else { stay };
        }
    }
    dp
}

/// Exact distribution of `SW(W)`.
pub fn sw_dist(model: &UncertaintyModel, w: &Committee) -> Result<WelfareDistribution> {
    let m = model.instance().candidates();
    w.check_against(m)?;
    match model {
        UncertaintyModel::Joint(j) => {
            let mut dense = vec![rational::zero(); model.instance().voters() * w.len() + 1];
            for (lambda, profile) in j.entries() {
                dense[welfare::social_welfare(w, profile)?] += lambda;
            }
            Ok(WelfareDistribution::from_dense(dense))
        }
        UncertaintyModel::Lottery(l) => {
            let table = contribution_table(l, w)?;
            let mut dp = vec![rational::one()];
            for row in table.rows() {
                let mut next = vec![rational::zero(); dp.len() + row.len() - 1];
                for (t, pt) in dp.iter().enumerate() {
                    if pt.is_zero() {
                        continue;
                    }
                    for (j, f) in row.iter().enumerate() {
                        next[t + j] += pt * f;
                    }
                }
                dp = next;
            }
            Ok(WelfareDistribution::from_dense(dp))
        }
        UncertaintyModel::CandidateProb(c) => Ok(cp_dist(c, w.members())),
    }
}

fn cp_dist(model: &CandidateProbabilityModel, members: &[usize]) -> WelfareDistribution {
    let mut certain = 0;
    let mut uncertain = Vec::new();
    for row in model.rows() {
        for &c in members {
            let p = &row[c - 1];
            if p.is_one() {
                certain += 1;
            } else if !p.is_zero() {
                uncertain.push(p.clone());
            }
        }
    }
    let mut dense = vec![rational::zero(); certain];
    dense.extend(poisson_binomial(&uncertain));
    WelfareDistribution::from_dense(dense)
}

/// Exact distribution of the approval score `AS(c)`.
pub fn as_dist(model: &UncertaintyModel, c: usize) -> Result<WelfareDistribution> {
    let m = model.instance().candidates();
    if c == 0 || c > m {
        return Err(Error::invalid(format!("candidate {c} outside 1..={m}")));
    }
    sw_dist(model, &Committee::from_sorted(vec![c]))
}

/// `Pr[SW(W) >= tau]`.
pub fn sw_tail(model: &UncertaintyModel, w: &Committee, tau: usize) -> Result<Rational> {
    Ok(sw_dist(model, w)?.tail(tau))
}
