// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

//! Committee selection under uncertainty.
//!
//! * [`max_exp_sw`]: expected welfare is additive over members, so the top
//!   `k` candidates by expected approval score are optimal.
//! * [`max_swm`]: maximizes the probability of being welfare maximizing.
//!   NP-hard in general, even for one voter under lottery models. A single
//!   voter with independent approvals is solved by taking the `k` most
//!   likely candidates; everything else is exhaustive under [`Caps`].
//! * [`robust_check`]: `W` is `(α, β)`-robust if
//!   `Pr[SW(W) >= α · SW(W*)] >= β`, where `W*` is optimal in each profile.

use num::{BigUint, One};

use crate::distribution::as_dist;
use crate::error::{Error, Result};
use crate::limits::Caps;
use crate::models::{CandidateProbabilityModel, UncertaintyModel};
use crate::oracle::Oracle;
use crate::rational::{self, Rational};
use crate::swmprob::cp_swm_prob;
use crate::welfare::{self, committee_count, committees, Committee, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimizationMethod {
    /// Top `k` by expected approval score.
    ExpectedScoreRanking,
    /// Top `k` by approval probability of the only voter.
    SingleVoterTopK,
    /// Every committee scored with the candidate-probability formula.
    CpExhaustive,
    /// Every committee scored over the entries of a joint model.
    JointExhaustive,
    /// Every committee scored over enumerated plausible profiles.
    OracleExhaustive,
}

impl OptimizationMethod {
    pub fn tag(self) -> &'static str {
        match self {
            OptimizationMethod::ExpectedScoreRanking => "expected-score-ranking",
            OptimizationMethod::SingleVoterTopK => "single-voter-top-k",
            OptimizationMethod::CpExhaustive => "cp-exhaustive",
            OptimizationMethod::JointExhaustive => "joint-exhaustive",
            OptimizationMethod::OracleExhaustive => "oracle-exhaustive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimizationResult {
    /// Lexicographically least optimal committee.
    pub committee: Committee,
    pub objective: Rational,
    /// Optimal committees in lexicographic order.
    pub co_optima: Vec<Committee>,
    /// False when `co_optima` may omit some optimal committees, either
    /// because listing them would exceed the committee cap or because the
    /// method never examines them.
    pub co_optima_complete: bool,
    pub method: OptimizationMethod,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobustnessQuery {
    alpha: Rational,
    beta: Rational,
}

impl RobustnessQuery {
    /// Both parameters must lie in `(0, 1]`.
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self> {
        for (name, v) in [("alpha", &alpha), ("beta", &beta)] {
            if *v <= rational::zero() || *v > rational::one() {
                return Err(Error::invalid(format!("{name} = {v} must lie in (0, 1]")));
            }
        }
        Ok(RobustnessQuery { alpha, beta })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobustnessOutcome {
    pub robust: bool,
    /// `Pr[SW(W) >= α · SW(W*)]`.
    pub probability: Rational,
    pub profiles_enumerated: u64,
}

/// `E[AS(c)]` for every candidate; entry `c - 1` belongs to `c`.
pub fn expected_scores(model: &UncertaintyModel) -> Vec<Rational> {
    let m = model.instance().candidates();
    let mut out = vec![rational::zero(); m];
    match model {
        UncertaintyModel::Joint(j) => {
            for (lambda, profile) in j.entries() {
                for (c, s) in profile.approval_scores().into_iter().enumerate() {
                    out[c] += lambda * rational::from_usize(s);
                }
            }
        }
        UncertaintyModel::Lottery(l) => {
            for (lambda, set) in l.voters().iter().flatten() {
                for &c in set {
                    out[c - 1] += lambda;
                }
            }
        }
        UncertaintyModel::CandidateProb(c) => {
            for row in c.rows() {
                for (j, p) in row.iter().enumerate() {
                    out[j] += p;
                }
            }
        }
    }
    out
}

/// `E[SW(W)]`.
pub fn expected_sw(model: &UncertaintyModel, w: &Committee) -> Result<Rational> {
    w.check_against(model.instance().candidates())?;
    let scores = expected_scores(model);
    Ok(w.members().iter().map(|&c| &scores[c - 1]).sum())
}

/// Committee of size `k` with the largest expected social welfare.
pub fn max_exp_sw(model: &UncertaintyModel, k: usize, caps: &Caps) -> Result<OptimizationResult> {
    let m = model.instance().candidates();
    welfare::check_k(m, k)?;
    let scores = expected_scores(model);
    let committee = welfare::top_k(&scores, k);
    let objective: Rational = committee.members().iter().map(|&c| &scores[c - 1]).sum();

    // Optimal committees take everyone above the k-th largest score and fill
    // up with any candidates equal to it.
    let threshold = committee
        .members()
        .iter()
        .map(|&c| &scores[c - 1])
        .min()
        .expect("k >= 1")
        .clone();
    let above: Vec<usize> = (1..=m).filter(|&c| scores[c - 1] > threshold).collect();
    let level: Vec<usize> = (1..=m).filter(|&c| scores[c - 1] == threshold).collect();
    let fill = k - above.len();
    let count = committee_count(level.len(), fill);
    let complete = count <= BigUint::from(caps.max_committees);
    let mut co_optima: Vec<Committee> = if complete {
        committees(level.len(), fill)
            .map(|pick| {
                let mut members = above.clone();
                members.extend(pick.members().iter().map(|&j| level[j - 1]));
                members.sort_unstable();
                Committee::from_sorted(members)
            })
            .collect()
    } else {
        vec![committee.clone()]
    };
    co_optima.sort();
    Ok(OptimizationResult {
        committee,
        objective,
        co_optima,
        co_optima_complete: complete,
        method: OptimizationMethod::ExpectedScoreRanking,
    })
}

const MAX_SWM_HARDNESS: &str = "MaxSWM is NP-hard, so only exhaustive search is exact";

/// Committee of size `k` most likely to maximize social welfare.
pub fn max_swm(model: &UncertaintyModel, k: usize, caps: &Caps) -> Result<OptimizationResult> {
    let inst = model.instance();
    let m = inst.candidates();
    welfare::check_k(m, k)?;
    if let UncertaintyModel::CandidateProb(c) = model {
        if inst.voters() == 1 {
            return Ok(single_voter_max_swm(c, k));
        }
    }
    caps.check_committees(&committee_count(m, k))
        .map_err(|e| e.with_limit_reason(MAX_SWM_HARDNESS))?;
    let scored: Vec<(Committee, Rational)> = match model {
        UncertaintyModel::CandidateProb(_) => {
            let dists = (1..=m).map(|c| as_dist(model, c)).collect::<Result<Vec<_>>>()?;
            committees(m, k)
                .map(|w| {
                    let p = cp_swm_prob(&dists, &w, inst.voters());
                    (w, p)
                })
                .collect()
        }
        UncertaintyModel::Joint(j) => {
            let entries: Vec<(&Rational, Vec<usize>)> =
                j.entries().iter().map(|(p, a)| (p, a.approval_scores())).collect();
            committees(m, k)
                .map(|w| {
                    let p = entries
                        .iter()
                        .filter(|(_, s)| welfare::is_swm_scores(&w, s))
                        .map(|(p, _)| *p)
                        .sum();
                    (w, p)
                })
                .collect()
        }
        UncertaintyModel::Lottery(_) => {
            let oracle = Oracle::new(model, caps).map_err(|e| e.with_limit_reason(MAX_SWM_HARDNESS))?;
            committees(m, k)
                .map(|w| {
                    let p = oracle.swm_prob(&w)?;
                    Ok((w, p))
                })
                .collect::<Result<_>>()?
        }
    };
    let method = match model {
        UncertaintyModel::CandidateProb(_) => OptimizationMethod::CpExhaustive,
        UncertaintyModel::Joint(_) => OptimizationMethod::JointExhaustive,
        UncertaintyModel::Lottery(_) => OptimizationMethod::OracleExhaustive,
    };
    let objective = scored.iter().map(|(_, p)| p).max().expect("k <= m").clone();
    let co_optima: Vec<Committee> = scored
        .into_iter()
        .filter(|(_, p)| *p == objective)
        .map(|(w, _)| w)
        .collect();
    Ok(OptimizationResult {
        committee: co_optima[0].clone(),
        objective,
        co_optima,
        co_optima_complete: true,
        method,
    })
}

/// With one voter, `W` is SWM iff the voter approves all of `W` or none of
/// the outsiders (or both), so
/// `Pr = a + b - ab` with `a = Π_{c∈W} p_c` and `b = Π_{c∉W} (1 - p_c)`.
/// Taking the `k` largest `p_c` maximizes `a` and `b` together.
fn single_voter_max_swm(c: &CandidateProbabilityModel, k: usize) -> OptimizationResult {
    let m = c.instance().candidates();
    let row = &c.rows()[0];
    let committee = welfare::top_k(row, k);
    let a: Rational = committee.members().iter().map(|&j| &row[j - 1]).product();
    let b: Rational = committee.complement(m).map(|j| rational::one() - &row[j - 1]).product();
    let objective = &a + &b - &a * &b;
    OptimizationResult {
        co_optima: vec![committee.clone()],
        committee,
        objective,
        co_optima_complete: false,
        method: OptimizationMethod::SingleVoterTopK,
    }
}

/// Exact `(α, β)`-robustness of `W` by enumeration; `W*` ranges over
/// committees of size `|W|`.
pub fn robust_check(
    model: &UncertaintyModel,
    w: &Committee,
    query: &RobustnessQuery,
    caps: &Caps,
) -> Result<RobustnessOutcome> {
    w.check_against(model.instance().candidates())?;
    let oracle = Oracle::new(model, caps)?;
    let probability = oracle.robustness(w, query.alpha())?;
    Ok(RobustnessOutcome {
        robust: probability >= *query.beta(),
        probability,
        profiles_enumerated: oracle.profiles_enumerated(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnrobustOutcome {
    /// No committee of this instance is `(α, β)`-robust for any `α`.
    Instance {
        model: CandidateProbabilityModel,
        /// Robustness probability of every committee: `p + (1 - p)^m`.
        probability: Rational,
    },
    Infeasible {
        probability: Rational,
    },
}

/// One voter approving each of `m` candidates with probability `p`, `k = 1`.
///
/// Whatever the committee `{c}`, `SW({c}) >= α · SW(W*)` holds exactly when
/// the voter approves `c` or approves nobody, which has probability
/// `p + (1 - p)^m`. The instance is returned when that is below `β`.
pub fn gen_unrobust_instance(m: usize, p: &Rational, beta: &Rational) -> Result<UnrobustOutcome> {
    if m == 0 {
        return Err(Error::invalid("m must be at least 1"));
    }
    if !rational::is_probability(p) {
        return Err(Error::invalid(format!("p = {p} must lie in [0, 1]")));
    }
    if *beta <= rational::zero() || *beta > rational::one() {
        return Err(Error::invalid(format!("beta = {beta} must lie in (0, 1]")));
    }
    let q = rational::one() - p;
    let mut miss_all = Rational::one();
    for _ in 0..m {
        miss_all *= &q;
    }
    let probability = p + miss_all;
    if probability < *beta {
        let model = CandidateProbabilityModel::new(Instance::new(1, m, 1)?, vec![vec![p.clone(); m]]);
        Ok(UnrobustOutcome::Instance { model, probability })
    } else {
        Ok(UnrobustOutcome::Infeasible { probability })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_max_swm;
    use crate::rational::{parse, ratio};
    use num::Zero;

    fn cp(rows: &[&[&str]], k: usize) -> UncertaintyModel {
        let (n, m) = (rows.len(), rows[0].len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse(s).unwrap()).collect())
            .collect();
        CandidateProbabilityModel::new(Instance::new(n, m, k).unwrap(), rows).into()
    }

    #[test]
    fn expected_sw_closed_form() {
        let model = cp(&[&["1", "0.5"], &["0.6", "0.8"]], 2);
        let w = Committee::new([1, 2], 2).unwrap();
        assert_eq!(expected_sw(&model, &w).unwrap(), ratio(29, 10));
        let zero = cp(&[&["0", "0"]], 1);
        assert!(expected_sw(&zero, &Committee::new([2], 2).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn uniform_matrix_returns_first_k() {
        let model = cp(&[&["1/4"; 4], &["1/4"; 4]], 2);
        let result = max_exp_sw(&model, 2, &Caps::default()).unwrap();
        assert_eq!(result.committee, Committee::new([1, 2], 4).unwrap());
        assert_eq!(result.co_optima.len(), 6);
        assert!(result.co_optima_complete);
    }

    #[test]
    fn co_optima_beyond_the_cap_are_flagged() {
        let model = cp(&[&["1/2"; 6]], 3);
        let caps = Caps {
            max_committees: 10,
            ..Caps::default()
        };
        let result = max_exp_sw(&model, 3, &caps).unwrap();
        assert!(!result.co_optima_complete);
        assert_eq!(result.co_optima, vec![result.committee.clone()]);
    }

    #[test]
    fn single_voter_fast_path() {
        let model = cp(&[&["0.9", "0.2", "0.7"]], 2);
        let fast = max_swm(&model, 2, &Caps::default()).unwrap();
        assert_eq!(fast.committee, Committee::new([1, 3], 3).unwrap());
        assert_eq!(fast.method, OptimizationMethod::SingleVoterTopK);
        let slow = oracle_max_swm(&model, 2, &Caps::default()).unwrap().value;
        assert_eq!(fast.objective, slow.1);
    }

    #[test]
    fn general_cp_matches_oracle() {
        let model = cp(&[&["1", "1/2", "1/4", "0"], &["3/4", "1/2", "1", "1/4"]], 2);
        let fast = max_swm(&model, 2, &Caps::default()).unwrap();
        let slow = oracle_max_swm(&model, 2, &Caps::default()).unwrap().value;
        assert_eq!((fast.committee.clone(), fast.objective.clone()), slow);
        assert_eq!(fast.method, OptimizationMethod::CpExhaustive);
    }

    #[test]
    fn committee_cap_cites_hardness() {
        let model = cp(&[&["1/2"; 6], &["1/2"; 6]], 3);
        let caps = Caps {
            max_committees: 10,
            ..Caps::default()
        };
        match max_swm(&model, 3, &caps) {
            Err(Error::ResourceLimit { reason, .. }) => assert_eq!(reason, MAX_SWM_HARDNESS),
            other => panic!("expected resource limit, got {other:?}"),
        }
    }

    #[test]
    fn unrobust_family() {
        let outcome = gen_unrobust_instance(20, &ratio(1, 10), &ratio(1, 2)).unwrap();
        let UnrobustOutcome::Instance { model, probability } = outcome else {
            panic!("expected an instance")
        };
        assert!((rational::to_f64(&probability) - 0.2216).abs() < 1e-4);
        assert_eq!(model.instance().voters(), 1);

        assert_eq!(
            gen_unrobust_instance(1, &ratio(1, 2), &ratio(1, 2)).unwrap(),
            UnrobustOutcome::Infeasible {
                probability: rational::one()
            }
        );
        assert!(matches!(
            gen_unrobust_instance(5, &ratio(3, 5), &ratio(1, 2)).unwrap(),
            UnrobustOutcome::Infeasible { .. }
        ));
    }

    #[test]
    fn unrobust_probability_matches_enumeration() {
        let model = cp(&[&["1/2", "1/2", "1/2"]], 1);
        let query = RobustnessQuery::new(ratio(1, 2), ratio(1, 2)).unwrap();
        for c in 1..=3 {
            let w = Committee::new([c], 3).unwrap();
            let outcome = robust_check(&model, &w, &query, &Caps::default()).unwrap();
            assert_eq!(outcome.probability, ratio(5, 8));
            assert_eq!(outcome.profiles_enumerated, 8);
        }
    }

    #[test]
    fn query_range() {
        assert!(RobustnessQuery::new(ratio(0, 1), ratio(1, 2)).is_err());
        assert!(RobustnessQuery::new(ratio(1, 2), ratio(3, 2)).is_err());
        assert!(RobustnessQuery::new(ratio(1, 1), ratio(1, 1)).is_ok());
    }
}
