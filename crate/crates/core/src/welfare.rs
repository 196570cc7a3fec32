// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

//! Deterministic approval voting: instances, profiles, committees, social
//! welfare and approval scores.
//!
//! Voters and candidates are numbered from 1. A committee is welfare
//! maximizing (SWM) when no committee of the same size has strictly larger
//! social welfare; ties count.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num::BigUint;

use crate::error::{Error, Result};

/// A set of candidate indices (1-based).
pub type CandidateSet = BTreeSet<usize>;

/// Voter count `n`, candidate count `m` and default committee size `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Instance {
    n: usize,
    m: usize,
    k: usize,
}

impl Instance {
    pub fn new(n: usize, m: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("an instance needs at least one voter"));
        }
        if m == 0 {
            return Err(Error::invalid("an instance needs at least one candidate"));
        }
        check_k(m, k)?;
        Ok(Instance { n, m, k })
    }

    pub fn voters(&self) -> usize {
        self.n
    }

    pub fn candidates(&self) -> usize {
        self.m
    }

    pub fn committee_size(&self) -> usize {
        self.k
    }
}

pub(crate) fn check_k(m: usize, k: usize) -> Result<()> {
    if k == 0 || k > m {
        return Err(Error::invalid(format!("committee size {k} must lie in 1..={m}")));
    }
    Ok(())
}

/// One approval set per voter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ApprovalProfile {
    m: usize,
    sets: Vec<CandidateSet>,
}

impl ApprovalProfile {
    pub fn new(m: usize, sets: Vec<CandidateSet>) -> Result<Self> {
        for (i, set) in sets.iter().enumerate() {
            if let Some(&c) = set.iter().find(|&&c| c == 0 || c > m) {
                return Err(Error::invalid(format!(
                    "voter {} approves candidate {c}, outside 1..={m}",
                    i + 1
                )));
            }
        }
        Ok(ApprovalProfile { m, sets })
    }

    /// Builds a profile from slices, e.g. `&[&[1, 2], &[3], &[]]`.
    pub fn from_slices(m: usize, sets: &[&[usize]]) -> Result<Self> {
        Self::new(m, sets.iter().map(|s| s.iter().copied().collect()).collect())
    }

    pub(crate) fn new_unchecked(m: usize, sets: Vec<CandidateSet>) -> Self {
        ApprovalProfile { m, sets }
    }

    pub fn voters(&self) -> usize {
        self.sets.len()
    }

    pub fn candidates(&self) -> usize {
        self.m
    }

    pub fn sets(&self) -> &[CandidateSet] {
        &self.sets
    }

    /// Approval score of every candidate; entry `c - 1` holds `AS(c)`.
    pub fn approval_scores(&self) -> Vec<usize> {
        let mut scores = vec![0; self.m];
        for set in &self.sets {
            for &c in set {
                scores[c - 1] += 1;
            }
        }
        scores
    }
}

/// A set of distinct candidates, stored in increasing order.
///
/// Committees order lexicographically by their sorted members, which is the
/// tie-break used wherever several committees are optimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Committee {
    members: Vec<usize>,
}

impl Committee {
    pub fn new(members: impl IntoIterator<Item = usize>, m: usize) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        if members.is_empty() {
            return Err(Error::invalid("a committee needs at least one member"));
        }
        if let Some(&c) = members.iter().find(|&&c| c == 0 || c > m) {
            return Err(Error::invalid(format!("committee member {c} outside 1..={m}")));
        }
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("committee lists a candidate twice"));
        }
        Ok(Committee { members })
    }

    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Committee { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, c: usize) -> bool {
        self.members.binary_search(&c).is_ok()
    }

    /// Candidates of `1..=m` outside the committee.
    pub fn complement(&self, m: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=m).filter(move |&c| !self.contains(c))
    }

    /// Membership mask indexed by `c - 1`.
    pub(crate) fn mask(&self, m: usize) -> Vec<bool> {
        let mut mask = vec![false; m];
        for &c in &self.members {
            mask[c - 1] = true;
        }
        mask
    }

    pub(crate) fn check_against(&self, m: usize) -> Result<()> {
        match self.members.last() {
            Some(&c) if c > m => Err(Error::invalid(format!("committee member {c} outside 1..={m}"))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Committee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members.iter().join(","))
    }
}

/// All `C(m, k)` committees in lexicographic order.
pub fn committees(m: usize, k: usize) -> impl Iterator<Item = Committee> {
    (1..=m).combinations(k).map(Committee::from_sorted)
}

pub fn committee_count(m: usize, k: usize) -> BigUint {
    if k > m {
        return BigUint::from(0u32);
    }
    let k = k.min(m - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= BigUint::from(m - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

fn check_dims(w: &Committee, p: &ApprovalProfile) -> Result<()> {
    w.check_against(p.candidates())?;
    if w.len() > p.candidates() {
        return Err(Error::invalid("committee larger than the candidate set"));
    }
    Ok(())
}

/// `SW(W, P) = Σ_i |W ∩ A_i|`.
pub fn social_welfare(w: &Committee, p: &ApprovalProfile) -> Result<usize> {
    check_dims(w, p)?;
    Ok(p.sets()
        .iter()
        .map(|a| w.members().iter().filter(|c| a.contains(c)).count())
        .sum())
}

/// Number of voters approving `c`.
pub fn approval_score(c: usize, p: &ApprovalProfile) -> Result<usize> {
    if c == 0 || c > p.candidates() {
        return Err(Error::invalid(format!("candidate {c} outside 1..={}", p.candidates())));
    }
    Ok(p.sets().iter().filter(|a| a.contains(&c)).count())
}

/// Whether `w` attains the maximum social welfare among committees of its
/// size under `p`.
pub fn is_swm(w: &Committee, p: &ApprovalProfile) -> Result<bool> {
    check_dims(w, p)?;
    Ok(is_swm_scores(w, &p.approval_scores()))
}

/// SW is additive over members, so `w` is SWM exactly when its weakest
/// member scores at least as high as the strongest outsider.
pub(crate) fn is_swm_scores<T: Ord>(w: &Committee, scores: &[T]) -> bool {
    let mask = w.mask(scores.len());
    let weakest_in = w.members().iter().map(|&c| &scores[c - 1]).min();
    let strongest_out = scores
        .iter()
        .zip(&mask)
        .filter(|(_, &inside)| !inside)
        .map(|(s, _)| s)
        .max();
    match (weakest_in, strongest_out) {
        (Some(lo), Some(hi)) => lo >= hi,
        _ => true,
    }
}

/// The `k` candidates with the highest approval scores, ties broken towards
/// smaller indices.
pub fn greedy_swm(p: &ApprovalProfile, k: usize) -> Result<Committee> {
    check_k(p.candidates(), k)?;
    Ok(top_k(&p.approval_scores(), k))
}

/// Picks the `k` largest keys, preferring smaller candidate indices on ties.
pub(crate) fn top_k<K: Ord>(keys: &[K], k: usize) -> Committee {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    // Stable sort keeps index order among equal keys.
    order.sort_by(|&a, &b| keys[b].cmp(&keys[a]));
    let mut members: Vec<usize> = order[..k].iter().map(|&i| i + 1).collect();
    members.sort_unstable();
    Committee::from_sorted(members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Sum of the `k` largest scores: the optimal social welfare.
    fn best_welfare(scores: &[usize], k: usize) -> usize {
        let mut sorted = scores.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        sorted[..k].iter().sum()
    }

    fn profile(m: usize, sets: &[&[usize]]) -> ApprovalProfile {
        ApprovalProfile::from_slices(m, sets).unwrap()
    }

    fn committee(members: &[usize], m: usize) -> Committee {
        Committee::new(members.iter().copied(), m).unwrap()
    }

    #[test]
    fn social_welfare_examples() {
        let p = profile(3, &[&[1, 2], &[3], &[2, 3]]);
        assert_eq!(social_welfare(&committee(&[2, 3], 3), &p).unwrap(), 4);

        let empty = profile(3, &[&[], &[], &[]]);
        for w in committees(3, 2) {
            assert_eq!(social_welfare(&w, &empty).unwrap(), 0);
        }

        // Certain ballots of the three-valued counterexample.
        let certain = profile(4, &[&[2, 3, 4], &[3], &[]]);
        assert_eq!(social_welfare(&committee(&[1, 3], 4), &certain).unwrap(), 2);
    }

    #[test]
    fn approval_score_examples() {
        let p = profile(3, &[&[1, 2], &[3], &[2, 3]]);
        assert_eq!(approval_score(3, &p).unwrap(), 2);
        assert_eq!(approval_score(1, &p).unwrap(), 1);
        let empty = profile(3, &[&[], &[]]);
        assert_eq!(approval_score(2, &empty).unwrap(), 0);
        assert!(approval_score(0, &p).is_err());
        assert!(approval_score(4, &p).is_err());
    }

    #[test]
    fn is_swm_examples() {
        let p = profile(3, &[&[1, 2], &[3], &[2, 3]]);
        assert!(is_swm(&committee(&[2, 3], 3), &p).unwrap());
        assert!(!is_swm(&committee(&[1, 2], 3), &p).unwrap());

        let full = committee(&[1, 2, 3], 3);
        assert!(is_swm(&full, &p).unwrap());

        let threes = profile(3, &[&[3], &[3], &[3]]);
        assert!(!is_swm(&committee(&[1, 2], 3), &threes).unwrap());
        assert!(is_swm(&committee(&[1, 3], 3), &threes).unwrap());
    }

    #[test]
    fn greedy_examples() {
        let p = profile(3, &[&[1, 2], &[3], &[2, 3]]);
        assert_eq!(greedy_swm(&p, 2).unwrap(), committee(&[2, 3], 3));
        let empty = profile(3, &[&[], &[], &[]]);
        assert_eq!(greedy_swm(&empty, 2).unwrap(), committee(&[1, 2], 3));
        assert_eq!(greedy_swm(&p, 3).unwrap(), committee(&[1, 2, 3], 3));
        assert!(greedy_swm(&p, 0).is_err());
        assert!(greedy_swm(&p, 4).is_err());
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let p = profile(3, &[&[1]]);
        let w = committee(&[4], 5);
        assert!(social_welfare(&w, &p).is_err());
        assert!(is_swm(&w, &p).is_err());
        assert!(ApprovalProfile::from_slices(2, &[&[3]]).is_err());
        assert!(Committee::new([1, 1], 3).is_err());
        assert!(Committee::new([], 3).is_err());
        assert!(Instance::new(1, 3, 4).is_err());
        assert!(Instance::new(0, 3, 1).is_err());
    }

    #[test]
    fn committee_counts() {
        assert_eq!(committee_count(5, 2), BigUint::from(10u32));
        assert_eq!(committee_count(4, 4), BigUint::from(1u32));
        assert_eq!(committees(5, 2).count(), 10);
        assert_eq!(committee_count(60, 30).to_string(), "118264581564861424");
    }

    fn arb_profile() -> impl Strategy<Value = (ApprovalProfile, usize)> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(n, m)| {
            (
                proptest::collection::vec(proptest::collection::btree_set(1..=m, 0..=m), n),
                1..=m,
            )
                .prop_map(move |(sets, k)| (ApprovalProfile::new(m, sets).unwrap(), k))
        })
    }

    proptest! {
        #[test]
        fn welfare_is_additive_and_bounded((p, k) in arb_profile()) {
            let n = p.voters();
            for w in committees(p.candidates(), k) {
                let sw = social_welfare(&w, &p).unwrap();
                let by_scores: usize = w.members().iter()
                    .map(|&c| approval_score(c, &p).unwrap()).sum();
                prop_assert_eq!(sw, by_scores);
                prop_assert!(sw <= n * k);
            }
        }

        #[test]
        fn is_swm_agrees_with_brute_force((p, k) in arb_profile()) {
            let m = p.candidates();
            let best = committees(m, k).map(|w| social_welfare(&w, &p).unwrap()).max().unwrap();
            for w in committees(m, k) {
                let brute = social_welfare(&w, &p).unwrap() == best;
                prop_assert_eq!(is_swm(&w, &p).unwrap(), brute);
            }
            prop_assert_eq!(best_welfare(&p.approval_scores(), k), best);
        }

        #[test]
        fn greedy_is_swm((p, k) in arb_profile()) {
            let w = greedy_swm(&p, k).unwrap();
            prop_assert_eq!(w.len(), k);
            prop_assert!(is_swm(&w, &p).unwrap());
        }
    }
}
