// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

//! Possible and necessary welfare maximization.
//!
//! `W` is necessarily SWM iff every member scores at least as high as every
//! outsider in every plausible profile, so each check reduces to pairwise
//! worst cases:
//!
//! * Candidate-probability models have a single worst profile for `W`
//!   (members only where certain, outsiders wherever possible) and a single
//!   best one (the reverse).
//! * Lottery models have a worst profile per pair `(c, c')`: every voter
//!   picks the set that favours `c'` over `c` the most.
//! * Joint models are checked entry by entry.
//!
//! Possible SWM is NP-complete for lottery models and is answered by
//! enumeration under the caps.

use std::collections::BTreeSet;

use num::{One, Zero};

use crate::error::Result;
use crate::limits::Caps;
use crate::models::{CandidateProbabilityModel, LotteryModel, UncertaintyModel};
use crate::oracle::Oracle;
use crate::rational::Rational;
use crate::welfare::{self, ApprovalProfile, CandidateSet, Committee};

/// Whether `W` is SWM in at least one plausible profile.
pub fn is_poss_swm(model: &UncertaintyModel, w: &Committee, caps: &Caps) -> Result<bool> {
    w.check_against(model.instance().candidates())?;
    match model {
        UncertaintyModel::Joint(j) => {
            for (_, profile) in j.entries() {
                if welfare::is_swm(w, profile)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        UncertaintyModel::Lottery(_) => {
            let oracle = Oracle::new(model, caps).map_err(|e| {
                e.with_limit_reason("IsPossSWM is NP-complete for lottery models, so only enumeration is exact")
            })?;
            oracle.is_poss_swm(w)
        }
        UncertaintyModel::CandidateProb(c) => {
            let best_case = cp_extreme_profile(c, w, |p, inside| if inside { !p.is_zero() } else { p.is_one() });
            welfare::is_swm(w, &best_case)
        }
    }
}

/// Whether `W` is SWM in every plausible profile.
pub fn is_nec_swm(model: &UncertaintyModel, w: &Committee) -> Result<bool> {
    let m = model.instance().candidates();
    w.check_against(m)?;
    match model {
        UncertaintyModel::Joint(j) => {
            for (_, profile) in j.entries() {
                if !welfare::is_swm(w, profile)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        UncertaintyModel::Lottery(l) => Ok(w
            .members()
            .iter()
            .all(|&c| w.complement(m).all(|out| weakly_dominates(l, c, out)))),
        UncertaintyModel::CandidateProb(c) => {
            let worst_case = cp_extreme_profile(c, w, |p, inside| if inside { p.is_one() } else { !p.is_zero() });
            welfare::is_swm(w, &worst_case)
        }
    }
}

/// Voter `i` approves `c` iff `approve(p[i][c], c ∈ W)`.
fn cp_extreme_profile(
    model: &CandidateProbabilityModel,
    w: &Committee,
    approve: impl Fn(&Rational, bool) -> bool,
) -> ApprovalProfile {
    let mask = w.mask(model.instance().candidates());
    let sets = model
        .rows()
        .iter()
        .map(|row| (1..=row.len()).filter(|&c| approve(&row[c - 1], mask[c - 1])).collect())
        .collect();
    ApprovalProfile::new_unchecked(model.instance().candidates(), sets)
}

/// Relation between the approval scores of two candidates across all
/// plausible profiles of a lottery model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    /// `AS(a) >= AS(b)` always, and not the reverse.
    Dominates,
    /// `AS(b) >= AS(a)` always, and not the reverse.
    Dominated,
    /// `AS(a) = AS(b)` always.
    Tied,
    Incomparable,
}

/// The plausible profile maximizing `AS(rival) - AS(c)`.
///
/// Each voter prefers a set with `rival` but not `c`, then one with both,
/// then one with neither, then one with only `c`. Within a class the first
/// set in the voter's lottery wins.
pub fn adversarial_profile(model: &LotteryModel, c: usize, rival: usize) -> ApprovalProfile {
    let class = |s: &CandidateSet| match (s.contains(&rival), s.contains(&c)) {
        (true, false) => 0,
        (true, true) => 1,
        (false, false) => 2,
        (false, true) => 3,
    };
    let sets = model
        .voters()
        .iter()
        .map(|lottery| {
            lottery
                .iter()
                .map(|(_, s)| s)
                .min_by_key(|s| class(s))
                .cloned()
                .unwrap_or_default()
        })
        .collect();
    ApprovalProfile::new_unchecked(model.instance().candidates(), sets)
}

/// `AS(c) >= AS(rival)` in every plausible profile.
pub fn weakly_dominates(model: &LotteryModel, c: usize, rival: usize) -> bool {
    let profile = adversarial_profile(model, c, rival);
    let scores = profile.approval_scores();
    scores[c - 1] >= scores[rival - 1]
}

pub fn dominates(model: &LotteryModel, a: usize, b: usize) -> Dominance {
    match (weakly_dominates(model, a, b), weakly_dominates(model, b, a)) {
        (true, true) => Dominance::Tied,
        (true, false) => Dominance::Dominates,
        (false, true) => Dominance::Dominated,
        (false, false) => Dominance::Incomparable,
    }
}

/// Edge `(a, b)` means `a` weakly dominates `b`. Tied pairs keep only the
/// edge from the smaller to the larger index, which makes the graph acyclic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceGraph {
    m: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl DominanceGraph {
    pub fn build(model: &LotteryModel) -> Self {
        let m = model.instance().candidates();
        let mut edges = BTreeSet::new();
        for a in 1..=m {
            for b in a + 1..=m {
                match dominates(model, a, b) {
                    Dominance::Dominates | Dominance::Tied => {
                        edges.insert((a, b));
                    }
                    Dominance::Dominated => {
                        edges.insert((b, a));
                    }
                    Dominance::Incomparable => {}
                }
            }
        }
        DominanceGraph { m, edges }
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a, b))
    }

    pub fn is_acyclic(&self) -> bool {
        let mut indegree = vec![0usize; self.m + 1];
        for &(_, b) in &self.edges {
            indegree[b] += 1;
        }
        let mut ready: Vec<usize> = (1..=self.m).filter(|&c| indegree[c] == 0).collect();
        let mut seen = 0;
        while let Some(a) = ready.pop() {
            seen += 1;
            for &(_, b) in self.edges.range((a, 0)..(a + 1, 0)) {
                indegree[b] -= 1;
                if indegree[b] == 0 {
                    ready.push(b);
                }
            }
        }
        seen == self.m
    }

    /// Repeatedly takes the smallest candidate with no incoming edge from the
    /// remaining candidates until `k` are chosen. Returns `None` if the graph
    /// runs out of such candidates first.
    pub fn select(&self, k: usize) -> Option<Committee> {
        let mut indegree = vec![0usize; self.m + 1];
        for &(_, b) in &self.edges {
            indegree[b] += 1;
        }
        let mut taken = vec![false; self.m + 1];
        let mut chosen = Vec::with_capacity(k);
        while chosen.len() < k {
            let next = (1..=self.m).find(|&c| !taken[c] && indegree[c] == 0)?;
            taken[next] = true;
            chosen.push(next);
            for &(_, b) in self.edges.range((next, 0)..(next + 1, 0)) {
                indegree[b] -= 1;
            }
        }
        chosen.sort_unstable();
        Some(Committee::from_sorted(chosen))
    }

    /// Every member has an edge to every outsider.
    pub fn separates(&self, w: &Committee) -> bool {
        w.members()
            .iter()
            .all(|&c| w.complement(self.m).all(|out| self.has_edge(c, out)))
    }
}

/// A committee of size `k` that is SWM in every plausible profile, if any.
pub fn exists_nec_swm(model: &UncertaintyModel, k: usize) -> Result<Option<Committee>> {
    let m = model.instance().candidates();
    welfare::check_k(m, k)?;
    let candidate = match model {
        UncertaintyModel::Joint(j) => {
            // Members must include everyone strictly above the k-th highest
            // score of some profile and only candidates reaching it in all.
            let mut forced: BTreeSet<usize> = BTreeSet::new();
            let mut allowed: BTreeSet<usize> = (1..=m).collect();
            for (_, profile) in j.entries() {
                let scores = profile.approval_scores();
                let mut sorted = scores.clone();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                let threshold = sorted[k - 1];
                forced.extend((1..=m).filter(|&c| scores[c - 1] > threshold));
                allowed.retain(|&c| scores[c - 1] >= threshold);
            }
            if !forced.is_subset(&allowed) || forced.len() > k || allowed.len() < k {
                return Ok(None);
            }
            let fill = allowed.difference(&forced).copied().take(k - forced.len());
            let members: BTreeSet<usize> = forced.iter().copied().chain(fill).collect();
            Committee::from_sorted(members.into_iter().collect())
        }
        UncertaintyModel::Lottery(l) => {
            let graph = DominanceGraph::build(l);
            return Ok(graph.select(k).filter(|w| graph.separates(w)));
        }
        UncertaintyModel::CandidateProb(c) => {
            let mut keys = vec![(0usize, 0usize); m];
            for row in c.rows() {
                for (j, p) in row.iter().enumerate() {
                    if p.is_one() {
                        keys[j].0 += 1;
                    }
                    if !p.is_zero() {
                        keys[j].1 += 1;
                    }
                }
            }
            welfare::top_k(&keys, k)
        }
    };
    Ok(is_nec_swm(model, &candidate)?.then_some(candidate))
}
