// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use crate::models::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Arguments do not fit the instance (committee out of range, bad `k`, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A model failed validation; every violated invariant is listed.
    #[error("validation failed: {}", ViolationList(.0))]
    Validation(Vec<Violation>),
    /// An instance document could not be read.
    #[error("parse error: {0}")]
    Parse(String),
    /// An exhaustive computation would exceed its configured cap.
    #[error("resource limit: {what} needs {required} but the cap is {cap}; {reason}")]
    ResourceLimit {
        what: &'static str,
        required: String,
        cap: u64,
        reason: &'static str,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    /// Replaces the explanation attached to a resource-limit error.
    pub(crate) fn with_limit_reason(self, reason: &'static str) -> Self {
        match self {
            Error::ResourceLimit {
                what, required, cap, ..
            } => Error::ResourceLimit {
                what,
                required,
                cap,
                reason,
            },
            other => other,
        }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

struct ViolationList<'a>(&'a [Violation]);

impl fmt::Display for ViolationList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
