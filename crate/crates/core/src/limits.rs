// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

//! Caps on exhaustive enumeration.
//!
//! Several problems here are NP-hard or #P-hard for some models, so the only
//! exact method is enumeration. Exceeding a cap is always reported as
//! [`Error::ResourceLimit`]; no path silently truncates.

use num::BigUint;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of plausible profiles to enumerate.
    pub max_profiles: u64,
    /// Maximum number of uncertain cells (0 < p < 1) in one voter's row when
    /// expanding a candidate-probability model into lotteries.
    pub max_uncertain_per_voter: usize,
    /// Maximum number of committees to enumerate.
    pub max_committees: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_profiles: 1_000_000,
            max_uncertain_per_voter: 20,
            max_committees: 1_000_000,
        }
    }
}

impl Caps {
    pub(crate) fn check_profiles(&self, required: &BigUint) -> Result<u64> {
        check(required, self.max_profiles, "plausible-profile enumeration")
    }

    pub(crate) fn check_committees(&self, required: &BigUint) -> Result<u64> {
        check(required, self.max_committees, "committee enumeration")
    }

    pub(crate) fn check_uncertain(&self, voter: usize, uncertain: usize) -> Result<()> {
        if uncertain > self.max_uncertain_per_voter {
            return Err(Error::ResourceLimit {
                what: "expanding a voter's uncertain approvals",
                required: format!("{uncertain} uncertain cells for voter {voter}"),
                cap: self.max_uncertain_per_voter as u64,
                reason: "the number of approval sets grows as 2^cells",
            });
        }
        Ok(())
    }
}

fn check(required: &BigUint, cap: u64, what: &'static str) -> Result<u64> {
    match u64::try_from(required) {
        Ok(count) if count <= cap => Ok(count),
        _ => Err(Error::ResourceLimit {
            what,
            required: required.to_string(),
            cap,
            reason: "exhaustive enumeration is exponential in the instance size",
        }),
    }
}
