// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

//! Instances shared by the benchmarks.

use swm_core::generate::{generate, GeneratorParams, ModelKind};
use swm_core::UncertaintyModel;

/// A seeded random instance with `n` voters, `m` candidates and `k = m / 2`.
pub fn instance(kind: ModelKind, n: usize, m: usize, seed: u64) -> UncertaintyModel {
    let params = GeneratorParams::new(kind, n, m, (m / 2).max(1));
    generate(&params, seed).expect("benchmark parameters are valid")
}
