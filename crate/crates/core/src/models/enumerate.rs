// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

use num::BigUint;

use super::{convert, UncertaintyModel};
use crate::error::Result;
use crate::limits::Caps;
use crate::rational::{self, Rational};
use crate::welfare::{ApprovalProfile, CandidateSet};

/// Number of profiles with positive probability, computed without
/// enumerating them.
pub fn plausible_count(model: &UncertaintyModel) -> BigUint {
    match model {
        UncertaintyModel::Joint(j) => BigUint::from(j.entries().len()),
        UncertaintyModel::Lottery(l) => l.voters().iter().map(|v| BigUint::from(v.len())).product(),
        UncertaintyModel::CandidateProb(c) => {
            let uncertain = c.rows().iter().flatten().filter(|p| rational::is_uncertain(p)).count();
            BigUint::from(1u8) << uncertain
        }
    }
}

/// Lazily enumerates every plausible profile with its probability.
///
/// Fails with a resource-limit error before producing anything if the
/// number of profiles exceeds `caps.max_profiles`.
pub fn plausible_profiles(model: &UncertaintyModel, caps: &Caps) -> Result<PlausibleProfiles> {
    caps.check_profiles(&plausible_count(model))?;
    let inner = match model {
        UncertaintyModel::Joint(j) => Inner::Joint(j.entries().to_vec().into_iter()),
        UncertaintyModel::Lottery(l) => {
            Inner::Product(LotteryProduct::new(l.voters().to_vec(), l.instance().candidates()))
        }
        UncertaintyModel::CandidateProb(c) => {
            let voters = c
                .rows()
                .iter()
                .enumerate()
                .map(|(i, row)| convert::expand_row(i + 1, row, caps))
                .collect::<Result<Vec<_>>>()?;
            Inner::Product(LotteryProduct::new(voters, c.instance().candidates()))
        }
    };
    Ok(PlausibleProfiles { inner })
}

/// Collects [`plausible_profiles`] into a vector.
pub fn enumerate_plausible(model: &UncertaintyModel, caps: &Caps) -> Result<Vec<(Rational, ApprovalProfile)>> {
    Ok(plausible_profiles(model, caps)?.collect())
}

pub struct PlausibleProfiles {
    inner: Inner,
}

enum Inner {
    Joint(std::vec::IntoIter<(Rational, ApprovalProfile)>),
    Product(LotteryProduct),
}

impl Iterator for PlausibleProfiles {
    type Item = (Rational, ApprovalProfile);

    fn next(&mut self) -> Option<Self::Item> {
        match &mut self.inner {
            Inner::Joint(it) => it.next(),
            Inner::Product(it) => it.next(),
        }
    }
}

/// Odometer over one set choice per voter.
pub(crate) struct LotteryProduct {
    voters: Vec<Vec<(Rational, CandidateSet)>>,
    m: usize,
    index: Vec<usize>,
    /// `prefix[i]` is the probability of the current picks of voters `0..i`.
    prefix: Vec<Rational>,
    sets: Vec<CandidateSet>,
    done: bool,
}

impl LotteryProduct {
    pub(crate) fn new(voters: Vec<Vec<(Rational, CandidateSet)>>, m: usize) -> Self {
        let done = voters.iter().any(|v| v.is_empty());
        let n = voters.len();
        let mut product = LotteryProduct {
            voters,
            m,
            index: vec![0; n],
            prefix: vec![rational::one(); n + 1],
            sets: vec![CandidateSet::new(); n],
            done,
        };
        if !done {
            product.refresh(0);
        }
        product
    }

    /// Recomputes cached products and sets for voters `from..`.
    fn refresh(&mut self, from: usize) {
        for i in from..self.voters.len() {
            let (p, set) = &self.voters[i][self.index[i]];
            self.prefix[i + 1] = &self.prefix[i] * p;
            self.sets[i].clone_from(set);
        }
    }
}

impl Iterator for LotteryProduct {
    type Item = (Rational, ApprovalProfile);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = (
            self.prefix[self.voters.len()].clone(),
            ApprovalProfile::new_unchecked(self.m, self.sets.clone()),
        );
        self.done = true;
        for pos in (0..self.voters.len()).rev() {
            self.index[pos] += 1;
            if self.index[pos] < self.voters[pos].len() {
                self.done = false;
                self.refresh(pos);
                break;
            }
            self.index[pos] = 0;
        }
        Some(item)
    }
}
