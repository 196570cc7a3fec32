// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

//! Brute-force reference answers.
//!
//! The oracle lists every plausible profile, then answers each question by
//! direct enumeration. A committee counts as welfare maximizing in a profile
//! when no committee of the same size has larger welfare, found by trying
//! them all; none of the score-threshold shortcuts used elsewhere are
//! involved. Profiles with identical approval scores are merged since every
//! quantity here depends on the scores alone.
//!
//! Cost is exponential. Every entry point checks [`Caps`] first.

use std::collections::HashMap;
use std::sync::OnceLock;

use num::BigUint;

use crate::distribution::WelfareDistribution;
use crate::error::{Error, Result};
use crate::limits::Caps;
use crate::models::{plausible_count, plausible_profiles, UncertaintyModel};
use crate::rational::{self, Rational};
use crate::welfare::{self, committee_count, committees, Committee};

/// Enumerated plausible profiles of one model.
#[derive(Debug)]
pub struct Oracle {
    n: usize,
    m: usize,
    caps: Caps,
    profiles_enumerated: u64,
    /// Distinct approval-score vectors with their total probability.
    groups: Vec<(Vec<usize>, Rational)>,
    /// `best[k]`: per group, the largest welfare of any size-`k` committee.
    best: Vec<OnceLock<Vec<usize>>>,
}

/// An oracle answer with the amount of enumeration behind it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport<T> {
    pub quantity: &'static str,
    pub value: T,
    pub profiles_enumerated: u64,
    pub committees_enumerated: u64,
}

impl Oracle {
    pub fn new(model: &UncertaintyModel, caps: &Caps) -> Result<Self> {
        let inst = model.instance();
        let (n, m) = (inst.voters(), inst.candidates());
        let mut merged: HashMap<Vec<usize>, Rational> = HashMap::new();
        let mut count = 0u64;
        for (p, profile) in plausible_profiles(model, caps)? {
            count += 1;
            *merged.entry(profile.approval_scores()).or_insert_with(rational::zero) += p;
        }
        let mut groups: Vec<_> = merged.into_iter().collect();
        groups.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(Oracle {
            n,
            m,
            caps: *caps,
            profiles_enumerated: count,
            groups,
            best: (0..=m).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn profiles_enumerated(&self) -> u64 {
        self.profiles_enumerated
    }

    /// Number of distinct approval-score vectors among the plausible profiles.
    pub fn score_vectors(&self) -> usize {
        self.groups.len()
    }

    fn best(&self, k: usize) -> Result<&[usize]> {
        if k == 0 || k > self.m {
            return Err(Error::invalid(format!("committee size {k} must lie in 1..={}", self.m)));
        }
        if let Some(best) = self.best[k].get() {
            return Ok(best);
        }
        self.caps.check_committees(&committee_count(self.m, k))?;
        let best = self
            .groups
            .iter()
            .map(|(scores, _)| committees(self.m, k).map(|w| welfare_of(&w, scores)).max().unwrap_or(0))
            .collect();
        Ok(self.best[k].get_or_init(|| best))
    }

    fn check(&self, w: &Committee) -> Result<()> {
        w.check_against(self.m)
    }

    /// Probability mass of the profiles where `w` attains the best welfare.
    pub fn swm_prob(&self, w: &Committee) -> Result<Rational> {
        self.check(w)?;
        let best = self.best(w.len())?;
        Ok(self
            .groups
            .iter()
            .zip(best)
            .filter(|((scores, _), &b)| welfare_of(w, scores) == b)
            .map(|((_, p), _)| p)
            .sum())
    }

    pub fn is_poss_swm(&self, w: &Committee) -> Result<bool> {
        self.check(w)?;
        let best = self.best(w.len())?;
        Ok(self.groups.iter().zip(best).any(|((s, _), &b)| welfare_of(w, s) == b))
    }

    pub fn is_nec_swm(&self, w: &Committee) -> Result<bool> {
        self.check(w)?;
        let best = self.best(w.len())?;
        Ok(self.groups.iter().zip(best).all(|((s, _), &b)| welfare_of(w, s) == b))
    }

    pub fn sw_dist(&self, w: &Committee) -> Result<WelfareDistribution> {
        self.check(w)?;
        let mut dense = vec![rational::zero(); self.n * w.len() + 1];
        for (scores, p) in &self.groups {
            dense[welfare_of(w, scores)] += p;
        }
        Ok(WelfareDistribution::from_dense(dense))
    }

    pub fn expected_sw(&self, w: &Committee) -> Result<Rational> {
        self.check(w)?;
        Ok(self
            .groups
            .iter()
            .map(|(scores, p)| p * rational::from_usize(welfare_of(w, scores)))
            .sum())
    }

    /// `Pr[SW(W) >= alpha * max_{|W'| = |W|} SW(W')]`, compared exactly.
    pub fn robustness(&self, w: &Committee, alpha: &Rational) -> Result<Rational> {
        self.check(w)?;
        let best = self.best(w.len())?;
        Ok(self
            .groups
            .iter()
            .zip(best)
            .filter(|((s, _), &b)| rational::from_usize(welfare_of(w, s)) >= alpha * rational::from_usize(b))
            .map(|((_, p), _)| p)
            .sum())
    }

    fn all_committees(&self, k: usize) -> Result<impl Iterator<Item = Committee>> {
        welfare::check_k(self.m, k)?;
        self.caps.check_committees(&committee_count(self.m, k))?;
        Ok(committees(self.m, k))
    }

    /// Lexicographically first committee of size `k` with the largest
    /// welfare-maximization probability.
    pub fn max_swm(&self, k: usize) -> Result<(Committee, Rational)> {
        let mut best: Option<(Committee, Rational)> = None;
        for w in self.all_committees(k)? {
            let p = self.swm_prob(&w)?;
            if best.as_ref().is_none_or(|(_, q)| p > *q) {
                best = Some((w, p));
            }
        }
        Ok(best.expect("at least one committee exists"))
    }

    /// Every size-`k` committee that maximizes welfare in every plausible profile.
    pub fn nec_swm_committees(&self, k: usize) -> Result<Vec<Committee>> {
        let mut out = Vec::new();
        for w in self.all_committees(k)? {
            if self.is_nec_swm(&w)? {
                out.push(w);
            }
        }
        Ok(out)
    }

    fn report<T>(&self, quantity: &'static str, value: T, committees_enumerated: u64) -> OracleReport<T> {
        OracleReport {
            quantity,
            value,
            profiles_enumerated: self.profiles_enumerated,
            committees_enumerated,
        }
    }
}

fn welfare_of(w: &Committee, scores: &[usize]) -> usize {
    w.members().iter().map(|&c| scores[c - 1]).sum()
}

fn committees_for(m: usize, k: usize) -> u64 {
    u64::try_from(committee_count(m, k)).unwrap_or(u64::MAX)
}

/// Number of plausible profiles the oracle would enumerate.
pub fn oracle_profile_count(model: &UncertaintyModel) -> BigUint {
    plausible_count(model)
}

pub fn oracle_swm_prob(model: &UncertaintyModel, w: &Committee, caps: &Caps) -> Result<OracleReport<Rational>> {
    let o = Oracle::new(model, caps)?;
    let value = o.swm_prob(w)?;
    Ok(o.report("swm_prob", value, committees_for(o.m, w.len())))
}

pub fn oracle_sw_dist(
    model: &UncertaintyModel,
    w: &Committee,
    caps: &Caps,
) -> Result<OracleReport<WelfareDistribution>> {
    let o = Oracle::new(model, caps)?;
    let value = o.sw_dist(w)?;
    Ok(o.report("sw_dist", value, 0))
}

pub fn oracle_is_poss_swm(model: &UncertaintyModel, w: &Committee, caps: &Caps) -> Result<OracleReport<bool>> {
    let o = Oracle::new(model, caps)?;
    let value = o.is_poss_swm(w)?;
    Ok(o.report("is_poss_swm", value, committees_for(o.m, w.len())))
}

pub fn oracle_is_nec_swm(model: &UncertaintyModel, w: &Committee, caps: &Caps) -> Result<OracleReport<bool>> {
    let o = Oracle::new(model, caps)?;
    let value = o.is_nec_swm(w)?;
    Ok(o.report("is_nec_swm", value, committees_for(o.m, w.len())))
}

pub fn oracle_exists_nec_swm(
    model: &UncertaintyModel,
    k: usize,
    caps: &Caps,
) -> Result<OracleReport<Option<Committee>>> {
    let o = Oracle::new(model, caps)?;
    let value = o.nec_swm_committees(k)?.into_iter().next();
    Ok(o.report("exists_nec_swm", value, committees_for(o.m, k)))
}

pub fn oracle_max_swm(model: &UncertaintyModel, k: usize, caps: &Caps) -> Result<OracleReport<(Committee, Rational)>> {
    let o = Oracle::new(model, caps)?;
    let value = o.max_swm(k)?;
    Ok(o.report("max_swm", value, committees_for(o.m, k)))
}

pub fn oracle_expected_sw(model: &UncertaintyModel, w: &Committee, caps: &Caps) -> Result<OracleReport<Rational>> {
    let o = Oracle::new(model, caps)?;
    let value = o.expected_sw(w)?;
    Ok(o.report("expected_sw", value, 0))
}
