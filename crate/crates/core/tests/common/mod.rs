// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swm_core::generate::{generate, GeneratorParams, ModelKind};
use swm_core::{format, UncertaintyModel};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> UncertaintyModel {
    format::read_instance(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// `count` seeded instances with `n, m <= max` and random `k`, lottery
/// supports up to 3 and the default probability menu.
pub fn suite(kind: ModelKind, count: usize, max: usize, seed: u64) -> Vec<UncertaintyModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ kind as u64);
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=max);
            let m = rng.random_range(1..=max);
            let k = rng.random_range(1..=m);
            generate(&GeneratorParams::new(kind, n, m, k), rng.random()).unwrap()
        })
        .collect()
}
