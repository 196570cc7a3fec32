// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

use num::{BigInt, BigUint, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::UncertaintyModel;
use crate::rational::{self, Rational};
use crate::welfare::{ApprovalProfile, CandidateSet};

/// Draws profiles by inverse transform over exact cumulative probabilities.
///
/// Each cumulative probability `q` is stored as `floor(q * 2^64)` and a
/// uniform 64-bit draw `u` selects the first outcome with `u < threshold`,
/// so every outcome's sampling probability is within `2^-64` of exact.
#[derive(Debug, Clone)]
pub struct Sampler {
    m: usize,
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    Joint(Categorical<ApprovalProfile>),
    Lottery(Vec<Categorical<CandidateSet>>),
    /// Per-cell approval thresholds.
    Cells(Vec<Vec<u128>>),
}

#[derive(Debug, Clone)]
struct Categorical<T> {
    thresholds: Vec<u128>,
    outcomes: Vec<T>,
}

impl<T: Clone> Categorical<T> {
    fn new<'a>(entries: impl IntoIterator<Item = (&'a Rational, &'a T)>) -> Self
    where
        T: 'a,
    {
        let mut cumulative = rational::zero();
        let mut thresholds = Vec::new();
        let mut outcomes = Vec::new();
        for (p, outcome) in entries {
            cumulative += p;
            thresholds.push(threshold(&cumulative));
            outcomes.push(outcome.clone());
        }
        // Absorb any shortfall so that every draw lands somewhere.
        if let Some(last) = thresholds.last_mut() {
            *last = 1u128 << 64;
        }
        Categorical { thresholds, outcomes }
    }

    fn draw(&self, u: u64) -> &T {
        let u = u as u128;
        let idx = self.thresholds.partition_point(|&t| t <= u);
        &self.outcomes[idx.min(self.outcomes.len() - 1)]
    }
}

fn threshold(q: &Rational) -> u128 {
    let scaled: BigInt = (q * Rational::from_integer(BigInt::from(BigUint::from(1u8) << 64)))
        .floor()
        .to_integer();
    scaled.to_u128().unwrap_or(0).min(1u128 << 64)
}

impl Sampler {
    /// Expects a validated model.
    pub fn new(model: &UncertaintyModel) -> Self {
        let m = model.instance().candidates();
        let kind = match model {
            UncertaintyModel::Joint(j) => Kind::Joint(Categorical::new(j.entries().iter().map(|(p, x)| (p, x)))),
            UncertaintyModel::Lottery(l) => Kind::Lottery(
                l.voters()
                    .iter()
                    .map(|lottery| Categorical::new(lottery.iter().map(|(p, s)| (p, s))))
                    .collect(),
            ),
            UncertaintyModel::CandidateProb(c) => {
                Kind::Cells(c.rows().iter().map(|row| row.iter().map(threshold).collect()).collect())
            }
        };
        Sampler { m, kind }
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> ApprovalProfile {
        match &self.kind {
            Kind::Joint(cat) => cat.draw(rng.random()).clone(),
            Kind::Lottery(voters) => {
                let sets = voters.iter().map(|cat| cat.draw(rng.random()).clone()).collect();
                ApprovalProfile::new_unchecked(self.m, sets)
            }
            Kind::Cells(rows) => {
                let sets = rows
                    .iter()
                    .map(|row| {
                        (1..=row.len())
                            .filter(|&c| (rng.random::<u64>() as u128) < row[c - 1])
                            .collect()
                    })
                    .collect();
                ApprovalProfile::new_unchecked(self.m, sets)
            }
        }
    }
}

/// One profile drawn from `model`, determined entirely by `seed`.
pub fn sample(model: &UncertaintyModel, seed: u64) -> ApprovalProfile {
    Sampler::new(model).draw(&mut ChaCha8Rng::seed_from_u64(seed))
}
