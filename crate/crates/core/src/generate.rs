// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded random instances.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::models::{CandidateProbabilityModel, JointProbabilityModel, LotteryModel, UncertaintyModel};
use crate::rational::{self, Rational};
use crate::welfare::{ApprovalProfile, CandidateSet, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Joint,
    Lottery,
    CandidateProb,
    ThreeValued,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::Joint,
        ModelKind::Lottery,
        ModelKind::CandidateProb,
        ModelKind::ThreeValued,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Joint => "joint",
            ModelKind::Lottery => "lottery",
            ModelKind::CandidateProb => "candidate_prob",
            ModelKind::ThreeValued => "3va",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown model kind {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorParams {
    pub kind: ModelKind,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    /// Maximum number of sets per voter (lottery) or profiles (joint).
    pub support: usize,
    /// Values drawn for candidate-probability cells.
    pub menu: Vec<Rational>,
    /// Chance that a candidate is included in a random approval set.
    pub density: f64,
}

impl GeneratorParams {
    pub fn new(kind: ModelKind, n: usize, m: usize, k: usize) -> Self {
        GeneratorParams {
            kind,
            n,
            m,
            k,
            support: 3,
            menu: [(0, 1), (1, 4), (1, 2), (3, 4), (1, 1)]
                .into_iter()
                .map(|(a, b)| rational::ratio(a, b))
                .collect(),
            density: 0.5,
        }
    }
}

/// Deterministic in `(params, seed)`; the result always validates.
pub fn generate(params: &GeneratorParams, seed: u64) -> Result<UncertaintyModel> {
    let inst = Instance::new(params.n, params.m, params.k)?;
    if params.support == 0 {
        return Err(Error::invalid("support must be at least 1"));
    }
    if !(0.0..=1.0).contains(&params.density) {
        return Err(Error::invalid(format!("density {} must lie in [0, 1]", params.density)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let model: UncertaintyModel = match params.kind {
        ModelKind::Lottery => {
            let max_sets = distinct_limit(params.m, 1);
            let voters = (0..params.n)
                .map(|_| {
                    let s = rng.random_range(1..=params.support.min(max_sets));
                    let sets = distinct(&mut rng, s, |r| random_set(r, params.m, params.density));
                    weighted(&mut rng, sets)
                })
                .collect();
            LotteryModel::new(inst, voters).into()
        }
        ModelKind::Joint => {
            let max_profiles = distinct_limit(params.m, params.n);
            let s = rng.random_range(1..=params.support.min(max_profiles));
            let profiles = distinct(&mut rng, s, |r| {
                let sets = (0..params.n).map(|_| random_set(r, params.m, params.density)).collect();
                ApprovalProfile::new_unchecked(params.m, sets)
            });
            JointProbabilityModel::new(inst, weighted(&mut rng, profiles)).into()
        }
        ModelKind::CandidateProb => {
            if params.menu.is_empty() || !params.menu.iter().all(rational::is_probability) {
                return Err(Error::invalid(
                    "the probability menu must be non-empty and within [0, 1]",
                ));
            }
            CandidateProbabilityModel::new(inst, matrix(&mut rng, params, &params.menu)).into()
        }
        ModelKind::ThreeValued => {
            let menu = [rational::ratio(0, 1), rational::ratio(1, 2), rational::ratio(1, 1)];
            CandidateProbabilityModel::three_valued(inst, matrix(&mut rng, params, &menu)).into()
        }
    };
    model.validated()
}

/// How many distinct outcomes exist, saturating well above any support.
fn distinct_limit(m: usize, voters: usize) -> usize {
    let bits = m.saturating_mul(voters);
    if bits >= 16 {
        usize::MAX
    } else {
        1 << bits
    }
}

fn random_set(rng: &mut ChaCha8Rng, m: usize, density: f64) -> CandidateSet {
    (1..=m).filter(|_| rng.random_bool(density)).collect()
}

/// Draws up to `count` distinct values, keeping first-seen order. Extreme
/// densities repeat the same draw, so give up after a bounded number of
/// attempts once at least one value exists.
fn distinct<T: Ord + Clone>(rng: &mut ChaCha8Rng, count: usize, mut draw: impl FnMut(&mut ChaCha8Rng) -> T) -> Vec<T> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count && (out.is_empty() || attempts < 64 * count) {
        let value = draw(rng);
        attempts += 1;
        if seen.insert(value.clone()) {
            out.push(value);
        }
    }
    out
}

/// Attaches random positive weights `w_j / Σ w` with `w_j ∈ 1..=4`.
fn weighted<T>(rng: &mut ChaCha8Rng, items: Vec<T>) -> Vec<(Rational, T)> {
    let weights: Vec<i64> = items.iter().map(|_| rng.random_range(1..=4)).collect();
    let total: i64 = weights.iter().sum();
    items
        .into_iter()
        .zip(weights)
        .map(|(item, w)| (rational::ratio(w, total), item))
        .collect()
}

fn matrix(rng: &mut ChaCha8Rng, params: &GeneratorParams, menu: &[Rational]) -> Vec<Vec<Rational>> {
    (0..params.n)
        .map(|_| {
            (0..params.m)
                .map(|_| menu.choose(rng).expect("menu is non-empty").clone())
                .collect()
        })
        .collect()
}
