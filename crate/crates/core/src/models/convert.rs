// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

use num::{BigUint, One, Zero};

use super::{enumerate, CandidateProbabilityModel, JointProbabilityModel, LotteryModel};
use crate::error::Result;
use crate::limits::Caps;
use crate::rational::{self, Rational};
use crate::welfare::CandidateSet;

/// Joint distribution of a lottery model: one entry per choice of a set for
/// every voter, weighted by the product of the chosen probabilities.
pub fn lottery_to_joint(model: &LotteryModel, caps: &Caps) -> Result<JointProbabilityModel> {
    let count: BigUint = model.voters().iter().map(|l| BigUint::from(l.len())).product();
    caps.check_profiles(&count)?;
    let entries = enumerate::LotteryProduct::new(model.voters().to_vec(), model.instance().candidates()).collect();
    Ok(JointProbabilityModel::new(model.instance(), entries))
}

/// Expands each voter's row into a lottery over every set consistent with it:
/// all certain approvals plus any subset of the uncertain ones.
pub fn cp_to_lottery(model: &CandidateProbabilityModel, caps: &Caps) -> Result<LotteryModel> {
    let voters = model
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| expand_row(i + 1, row, caps))
        .collect::<Result<Vec<_>>>()?;
    Ok(LotteryModel::new(model.instance(), voters))
}

pub(crate) fn expand_row(voter: usize, row: &[Rational], caps: &Caps) -> Result<Vec<(Rational, CandidateSet)>> {
    let certain: CandidateSet = (1..=row.len()).filter(|&c| row[c - 1].is_one()).collect();
    let uncertain: Vec<usize> = (1..=row.len())
        .filter(|&c| rational::is_uncertain(&row[c - 1]))
        .collect();
    caps.check_uncertain(voter, uncertain.len())?;
    let mut lottery = Vec::with_capacity(1 << uncertain.len());
    for mask in 0u64..(1u64 << uncertain.len()) {
        let mut set = certain.clone();
        let mut prob = rational::one();
        for (bit, &c) in uncertain.iter().enumerate() {
            let p = &row[c - 1];
            if mask >> bit & 1 == 1 {
                set.insert(c);
                prob *= p;
            } else {
                prob *= rational::one() - p;
            }
        }
        debug_assert!(!prob.is_zero());
        lottery.push((prob, set));
    }
    Ok(lottery)
}
