// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use num::{ToPrimitive, Zero};
use proptest::collection::vec;
use proptest::prelude::*;
use swm_core::distribution::{as_dist, contribution_table, sw_dist, sw_tail};
use swm_core::format::{parse_instance, to_json};
use swm_core::generate::{generate, GeneratorParams, ModelKind};
use swm_core::models::enumerate_plausible;
use swm_core::necessity::{
    dominates, exists_nec_swm, is_nec_swm, is_poss_swm, weakly_dominates, Dominance, DominanceGraph,
};
use swm_core::optimize::max_exp_sw;
use swm_core::oracle::Oracle;
use swm_core::rational::{self, ratio};
use swm_core::swmprob::swm_prob;
use swm_core::welfare::{approval_score, committees, greedy_swm, is_swm, social_welfare};
use swm_core::{ApprovalProfile, CandidateSet, Caps, JointProbabilityModel, LotteryModel, Rational, UncertaintyModel};

fn profile_strategy() -> impl Strategy<Value = (ApprovalProfile, usize)> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(n, m)| {
        (vec(0u32..(1 << m), n), 1..=m).prop_map(move |(masks, k)| {
            let sets: Vec<CandidateSet> = masks
                .iter()
                .map(|mask| (1..=m).filter(|c| mask >> (c - 1) & 1 == 1).collect())
                .collect();
            (ApprovalProfile::new(m, sets).unwrap(), k)
        })
    })
}

fn model_of(kinds: &'static [ModelKind], max: usize) -> impl Strategy<Value = UncertaintyModel> {
    (0..kinds.len(), 1..=max, 1..=max, any::<u64>()).prop_flat_map(move |(i, n, m, seed)| {
        (1..=m).prop_map(move |k| generate(&GeneratorParams::new(kinds[i], n, m, k), seed).unwrap())
    })
}

fn any_model() -> impl Strategy<Value = UncertaintyModel> {
    model_of(&ModelKind::ALL, 4)
}

fn lottery() -> impl Strategy<Value = LotteryModel> {
    model_of(&[ModelKind::Lottery], 5).prop_map(|m| match m {
        UncertaintyModel::Lottery(l) => l,
        _ => unreachable!(),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn welfare_is_additive_and_bounded((p, k) in profile_strategy()) {
        for w in committees(p.candidates(), k) {
            let sw = social_welfare(&w, &p).unwrap();
            let sum: usize = w.members().iter().map(|&c| approval_score(c, &p).unwrap()).sum();
            prop_assert_eq!(sw, sum);
            prop_assert!(sw <= p.voters() * k);
        }
    }

    #[test]
    fn greedy_is_welfare_maximizing((p, k) in profile_strategy()) {
        let w = greedy_swm(&p, k).unwrap();
        prop_assert_eq!(w.len(), k);
        prop_assert!(is_swm(&w, &p).unwrap());
    }

    #[test]
    fn is_swm_matches_brute_force((p, k) in profile_strategy()) {
        let m = p.candidates();
        let best = committees(m, k).map(|w| social_welfare(&w, &p).unwrap()).max().unwrap();
        for w in committees(m, k) {
            prop_assert_eq!(is_swm(&w, &p).unwrap(), social_welfare(&w, &p).unwrap() == best);
        }
    }

    #[test]
    fn enumeration_is_normalized(model in any_model()) {
        let profiles = enumerate_plausible(&model, &Caps::default()).unwrap();
        prop_assert_eq!(profiles.iter().map(|(p, _)| p).sum::<Rational>(), rational::one());
        prop_assert!(profiles.iter().all(|(p, _)| *p > Rational::zero()));
    }

    #[test]
    fn three_valued_profiles_are_equiprobable(model in model_of(&[ModelKind::ThreeValued], 4)) {
        let UncertaintyModel::CandidateProb(c) = &model else { unreachable!() };
        let u = c.rows().iter().flatten().filter(|p| rational::is_uncertain(p)).count();
        let profiles = enumerate_plausible(&model, &Caps::default()).unwrap();
        prop_assert_eq!(profiles.len(), 1 << u);
        prop_assert!(profiles.iter().all(|(p, _)| *p == ratio(1, 1 << u)));
    }

    #[test]
    fn oracle_ignores_entry_order(model in model_of(&[ModelKind::Joint, ModelKind::Lottery], 4)) {
        let reordered: UncertaintyModel = match &model {
            UncertaintyModel::Joint(j) => {
                JointProbabilityModel::new(j.instance(), j.entries().iter().rev().cloned().collect()).into()
            }
            UncertaintyModel::Lottery(l) => LotteryModel::new(
                l.instance(),
                l.voters().iter().map(|v| v.iter().rev().cloned().collect()).collect(),
            )
            .into(),
            UncertaintyModel::CandidateProb(_) => unreachable!(),
        };
        let caps = Caps::default();
        let (a, b) = (Oracle::new(&model, &caps).unwrap(), Oracle::new(&reordered, &caps).unwrap());
        let inst = model.instance();
        for w in committees(inst.candidates(), inst.committee_size()) {
            prop_assert_eq!(a.swm_prob(&w).unwrap(), b.swm_prob(&w).unwrap());
            prop_assert_eq!(a.sw_dist(&w).unwrap(), b.sw_dist(&w).unwrap());
        }
    }

    #[test]
    fn distributions_sum_to_one(model in any_model()) {
        let inst = model.instance();
        for w in committees(inst.candidates(), inst.committee_size()) {
            prop_assert_eq!(sw_dist(&model, &w).unwrap().total(), rational::one());
            if let UncertaintyModel::Lottery(l) = &model {
                for row in contribution_table(l, &w).unwrap().rows() {
                    prop_assert_eq!(row.iter().sum::<Rational>(), rational::one());
                }
            }
        }
    }

    #[test]
    fn expectation_is_linear(model in any_model()) {
        let inst = model.instance();
        for w in committees(inst.candidates(), inst.committee_size()) {
            let whole = sw_dist(&model, &w).unwrap().mean();
            let parts: Rational = w.members().iter().map(|&c| as_dist(&model, c).unwrap().mean()).sum();
            prop_assert_eq!(whole, parts);
        }
    }

    #[test]
    fn fair_coins_give_symmetric_welfare(model in model_of(&[ModelKind::ThreeValued], 4)) {
        let UncertaintyModel::CandidateProb(c) = &model else { unreachable!() };
        let inst = model.instance();
        for w in committees(inst.candidates(), inst.committee_size()) {
            let cells = c.rows().iter().flat_map(|row| w.members().iter().map(move |&j| &row[j - 1]));
            let (mut certain, mut uncertain) = (0, 0);
            for p in cells {
                if *p == rational::one() {
                    certain += 1;
                } else if rational::is_uncertain(p) {
                    uncertain += 1;
                }
            }
            let d = sw_dist(&model, &w).unwrap();
            prop_assert_eq!(d.support_min(), certain);
            prop_assert_eq!(d.support_max(), certain + uncertain);
            for j in 0..=uncertain {
                prop_assert_eq!(d.prob(certain + j), d.prob(certain + uncertain - j));
            }
        }
    }

    #[test]
    fn swm_probabilities_cover_every_profile(model in any_model()) {
        let caps = Caps::default();
        let inst = model.instance();
        let mut total = Rational::zero();
        for w in committees(inst.candidates(), inst.committee_size()) {
            let p = swm_prob(&model, &w, &caps).unwrap().probability;
            prop_assert!(rational::is_probability(&p));
            total += p;
        }
        prop_assert!(total >= rational::one());
    }

    #[test]
    fn necessary_implies_possible(model in any_model()) {
        let caps = Caps::default();
        let inst = model.instance();
        for k in 1..=inst.candidates() {
            for w in committees(inst.candidates(), k) {
                if is_nec_swm(&model, &w).unwrap() {
                    prop_assert!(is_poss_swm(&model, &w, &caps).unwrap());
                }
            }
        }
    }

    #[test]
    fn dominance_graph_is_acyclic_and_transitive(l in lottery()) {
        let m = l.instance().candidates();
        let graph = DominanceGraph::build(&l);
        prop_assert!(graph.is_acyclic());
        for (a, b) in graph.edges() {
            prop_assert!(!graph.has_edge(*b, *a));
        }
        for a in 1..=m {
            for b in 1..=m {
                for c in 1..=m {
                    let strict = |x, y| dominates(&l, x, y) == Dominance::Dominates;
                    if a != c && strict(a, b) && strict(b, c) {
                        prop_assert!(weakly_dominates(&l, a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn incomparable_pairs_stay_together(l in lottery()) {
        let m = l.instance().candidates();
        let model: UncertaintyModel = l.clone().into();
        for k in 1..=m {
            for w in committees(m, k).filter(|w| is_nec_swm(&model, w).unwrap()) {
                for a in 1..=m {
                    for b in a + 1..=m {
                        if dominates(&l, a, b) == Dominance::Incomparable {
                            prop_assert_eq!(w.contains(a), w.contains(b), "{} with {} and {}", w, a, b);
                        }
                    }
                }
            }
            if let Some(w) = exists_nec_swm(&model, k).unwrap() {
                prop_assert!(is_nec_swm(&model, &w).unwrap());
            }
        }
    }

    #[test]
    fn canonical_json_round_trips(model in any_model()) {
        let text = to_json(&model);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(to_json(&back), text);
        prop_assert_eq!(back, model);
    }

    #[test]
    fn expectation_optima_reach_their_mean_half_the_time(model in model_of(&[ModelKind::ThreeValued], 5)) {
        let k = model.instance().committee_size();
        let result = max_exp_sw(&model, k, &Caps::default()).unwrap();
        for w in &result.co_optima {
            let mean = sw_dist(&model, w).unwrap().mean();
            let tau = mean.ceil().to_integer().to_usize().unwrap();
            prop_assert!(sw_tail(&model, w, tau).unwrap() >= ratio(1, 2));
        }
    }
}
