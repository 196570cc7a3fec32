// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

//! Social welfare maximization for approval-based committee voting when the
//! voters' approval ballots are uncertain.
//!
//! Four preference models are supported: an explicit joint distribution over
//! whole profiles, independent per-voter lotteries over approval sets,
//! independent per-(voter, candidate) approval probabilities, and the
//! three-valued special case of the latter. On top of them the crate answers:
//!
//! * whether a committee is possibly / necessarily welfare maximizing
//!   ([`necessity`]),
//! * the exact distribution of a committee's social welfare
//!   ([`distribution`]),
//! * the probability that a committee is welfare maximizing ([`swmprob`]),
//! * probability- and expectation-maximizing committees and robustness
//!   ([`optimize`]).
//!
//! All probabilities are exact [`Rational`]s. Every fast path is checked
//! against the brute-force [`oracle`], which is also the only algorithm
//! offered where the underlying problem is intractable.
//!
//! ```
//! use swm_core::{format, swmprob, Caps, Committee};
//!
//! let model = format::parse_instance(r#"{
//!     "model": "3va", "n": 2, "m": 2, "k": 1,
//!     "matrix": [["1", "1/2"], ["0", "1/2"]]
//! }"#).unwrap();
//! let w = Committee::new([1], 2).unwrap();
//! let report = swmprob::swm_prob(&model, &w, &Caps::default()).unwrap();
//! assert_eq!(report.probability.to_string(), "3/4");
//! ```

pub mod distribution;
pub mod error;
pub mod format;
pub mod generate;
pub mod limits;
pub mod models;
pub mod necessity;
pub mod optimize;
pub mod oracle;
pub mod rational;
pub mod swmprob;
pub mod welfare;

pub use distribution::{ContributionTable, WelfareDistribution};
pub use error::{Error, Result};
pub use limits::Caps;
pub use models::{CandidateProbabilityModel, JointProbabilityModel, LotteryModel, UncertaintyModel, Violation};
pub use rational::Rational;
pub use welfare::{ApprovalProfile, CandidateSet, Committee, Instance};
