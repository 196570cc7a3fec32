// Copyright 2026 The swm Authors
// SPDX-License-Identifier: Apache-2.0

//! Command dispatch.

use std::path::{Path, PathBuf};
use std::time::Instant;

use num::BigUint;
use serde_json::{json, Map, Value};
use swm_core::distribution::{sw_dist, sw_tail};
use swm_core::format::{read_instance, to_json};
use swm_core::generate::{generate, GeneratorParams, ModelKind};
use swm_core::necessity::{exists_nec_swm, is_nec_swm, is_poss_swm};
use swm_core::optimize::{
    expected_sw, gen_unrobust_instance, max_exp_sw, max_swm, robust_check, RobustnessQuery, UnrobustOutcome,
};
use swm_core::oracle::Oracle;
use swm_core::rational::{self, Rational};
use swm_core::swmprob::swm_prob;
use swm_core::welfare::{committee_count, committees};
use swm_core::{Caps, Committee, UncertaintyModel};

use crate::report::{self, committee as committee_value, exact, Document, ExitKind, Failure, Format};
use crate::{Cli, Command, GenArgs, Query, Sized, Target};

pub struct Output {
    pub text: String,
    /// Reported after `text` is written, e.g. an oracle disagreement.
    pub failure: Option<Failure>,
}

struct Answer {
    command: &'static str,
    result: Value,
    method: String,
    work: Map<String, Value>,
    failure: Option<Failure>,
}

impl Answer {
    fn new(command: &'static str, result: Value, method: impl Into<String>) -> Self {
        Answer {
            command,
            result,
            method: method.into(),
            work: Map::new(),
            failure: None,
        }
    }

    fn work(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.work.insert(key.into(), value.into());
        self
    }
}

type Run<T> = Result<T, Failure>;

pub fn run(cli: &Cli) -> Run<Output> {
    let caps = cli.caps();
    let mut request = Map::new();
    request.insert(
        "caps".into(),
        json!({
            "profiles": caps.max_profiles,
            "uncertain_per_voter": caps.max_uncertain_per_voter,
            "committees": caps.max_committees,
        }),
    );
    let start = Instant::now();
    let answer = match &cli.command {
        Command::Gen(args) => return gen(args, cli.format, request, start),
        Command::Bench { dir } => return bench(dir, &caps, cli.format),
        Command::CheckPoss(t) => {
            let (model, w) = load_target(t, &mut request)?;
            let possible = is_poss_swm(&model, &w, &caps)?;
            let method = per_model(&model, "joint-scan", "oracle-enumeration", "best-case-profile");
            Answer::new(
                "check-poss",
                json!({"committee": committee_value(&w), "possible": possible}),
                method,
            )
        }
        Command::CheckNec(t) => {
            let (model, w) = load_target(t, &mut request)?;
            let necessary = is_nec_swm(&model, &w)?;
            let method = per_model(&model, "joint-scan", "pairwise-dominance", "worst-case-profile");
            Answer::new(
                "check-nec",
                json!({"committee": committee_value(&w), "necessary": necessary}),
                method,
            )
        }
        Command::ExistsNec(s) => {
            let (model, k) = load_sized(s, &mut request)?;
            let found = exists_nec_swm(&model, k)?;
            let method = per_model(
                &model,
                "forced-allowed-scores",
                "dominance-graph",
                "certain-count-ranking",
            );
            Answer::new(
                "exists-nec",
                json!({
                    "k": k,
                    "exists": found.is_some(),
                    "committee": found.as_ref().map(committee_value),
                }),
                method,
            )
        }
        Command::Dist { target, tau } => {
            let (model, w) = load_target(target, &mut request)?;
            let dist = sw_dist(&model, &w)?;
            let method = per_model(&model, "joint-sum", "contribution-convolution", "poisson-binomial");
            let result = match tau {
                Some(tau) => {
                    request.insert("tau".into(), json!(tau));
                    json!({
                        "committee": committee_value(&w),
                        "tau": tau,
                        "probability": exact(&dist.prob(*tau)),
                        "at_least": exact(&sw_tail(&model, &w, *tau)?),
                    })
                }
                None => json!({
                    "committee": committee_value(&w),
                    "distribution": report::distribution(&dist),
                    "mean": exact(&dist.mean()),
                }),
            };
            Answer::new("dist", result, method).work("support", dist.support_max() - dist.support_min() + 1)
        }
        Command::Prob(t) => {
            let (model, w) = load_target(t, &mut request)?;
            let r = swm_prob(&model, &w, &caps)?;
            Answer::new(
                "prob",
                json!({"committee": committee_value(&w), "probability": exact(&r.probability)}),
                r.method.tag(),
            )
            .work("terms", r.terms)
        }
        Command::Maxswm(s) => {
            let (model, k) = load_sized(s, &mut request)?;
            let r = max_swm(&model, k, &caps)?;
            Answer::new(
                "maxswm",
                json!({
                    "k": k,
                    "committee": committee_value(&r.committee),
                    "probability": exact(&r.objective),
                    "co_optima": r.co_optima.iter().map(committee_value).collect::<Vec<_>>(),
                    "co_optima_complete": r.co_optima_complete,
                }),
                r.method.tag(),
            )
        }
        Command::Maxexpsw(s) => {
            let (model, k) = load_sized(s, &mut request)?;
            let r = max_exp_sw(&model, k, &caps)?;
            Answer::new(
                "maxexpsw",
                json!({
                    "k": k,
                    "committee": committee_value(&r.committee),
                    "expected_sw": exact(&r.objective),
                    "co_optima": r.co_optima.iter().map(committee_value).collect::<Vec<_>>(),
                    "co_optima_complete": r.co_optima_complete,
                }),
                r.method.tag(),
            )
        }
        Command::Expected(t) => {
            let (model, w) = load_target(t, &mut request)?;
            let e = expected_sw(&model, &w)?;
            Answer::new(
                "expected",
                json!({"committee": committee_value(&w), "expected_sw": exact(&e)}),
                "expected-scores",
            )
        }
        Command::Robust { target, alpha, beta } => {
            let alpha = parse_rational("alpha", alpha)?;
            let beta = parse_rational("beta", beta)?;
            let query = RobustnessQuery::new(alpha.clone(), beta.clone())?;
            request.insert("alpha".into(), json!(rational::to_fraction_string(&alpha)));
            request.insert("beta".into(), json!(rational::to_fraction_string(&beta)));
            let (model, w) = load_target(target, &mut request)?;
            let r = robust_check(&model, &w, &query, &caps)?;
            Answer::new(
                "robust",
                json!({"committee": committee_value(&w), "probability": exact(&r.probability), "robust": r.robust}),
                "oracle-enumeration",
            )
            .work("profiles_enumerated", r.profiles_enumerated)
        }
        Command::OracleVerify { query, target, k } => oracle_verify(*query, target, *k, &caps, &mut request)?,
    };
    let doc = Document {
        command: answer.command,
        request,
        result: answer.result,
        method: answer.method,
        work: answer.work,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(Output {
        text: doc.render(cli.format),
        failure: answer.failure,
    })
}

fn per_model(model: &UncertaintyModel, joint: &str, lottery: &str, cp: &str) -> String {
    match model {
        UncertaintyModel::Joint(_) => joint,
        UncertaintyModel::Lottery(_) => lottery,
        UncertaintyModel::CandidateProb(_) => cp,
    }
    .to_string()
}

fn parse_rational(name: &str, text: &str) -> Run<Rational> {
    rational::parse(text).map_err(|e| Failure::usage(format!("--{name}: {e}")))
}

fn load(path: &Path, request: &mut Map<String, Value>) -> Run<UncertaintyModel> {
    request.insert("instance".into(), json!(path.display().to_string()));
    let model = read_instance(path)?;
    request.insert("model".into(), json!(model.kind_name()));
    Ok(model)
}

fn load_target(t: &Target, request: &mut Map<String, Value>) -> Run<(UncertaintyModel, Committee)> {
    let model = load(&t.instance, request)?;
    let members = t
        .committee
        .clone()
        .ok_or_else(|| Failure::usage("this command needs --committee"))?;
    let w = Committee::new(members, model.instance().candidates())?;
    request.insert("committee".into(), committee_value(&w));
    Ok((model, w))
}

fn load_sized(s: &Sized, request: &mut Map<String, Value>) -> Run<(UncertaintyModel, usize)> {
    let model = load(&s.instance, request)?;
    let k = s.k.unwrap_or(model.instance().committee_size());
    request.insert("k".into(), json!(k));
    Ok((model, k))
}

struct Comparison {
    rows: Vec<Value>,
    mismatches: usize,
}

impl Comparison {
    fn push(&mut self, query: &str, committee: Option<&Committee>, fast: Value, oracle: Value, equal: bool) {
        if !equal {
            self.mismatches += 1;
        }
        self.rows.push(json!({
            "query": query,
            "committee": committee.map(committee_value),
            "fast": fast,
            "oracle": oracle,
            "verdict": if equal { "EQUAL" } else { "MISMATCH" },
        }));
    }
}

fn oracle_verify(
    query: Query,
    t: &Target,
    k: Option<usize>,
    caps: &Caps,
    request: &mut Map<String, Value>,
) -> Run<Answer> {
    let model = load(&t.instance, request)?;
    let m = model.instance().candidates();
    let k = k.unwrap_or(model.instance().committee_size());
    request.insert("k".into(), json!(k));
    let scoped: Vec<Committee> = match &t.committee {
        Some(members) => {
            let w = Committee::new(members.clone(), m)?;
            request.insert("committee".into(), committee_value(&w));
            vec![w]
        }
        None => {
            if committee_count(m, k) > BigUint::from(caps.max_committees) {
                return Err(Failure::new(
                    ExitKind::ResourceLimit,
                    format!(
                        "{} committees of size {k} exceed the committee cap",
                        committee_count(m, k)
                    ),
                ));
            }
            committees(m, k).collect()
        }
    };
    let oracle = Oracle::new(&model, caps)?;
    let wants = |q: Query| query == q || query == Query::All;
    let mut cmp = Comparison {
        rows: Vec::new(),
        mismatches: 0,
    };
    for w in &scoped {
        if wants(Query::CheckPoss) {
            let (fast, slow) = (is_poss_swm(&model, w, caps)?, oracle.is_poss_swm(w)?);
            cmp.push("check-poss", Some(w), json!(fast), json!(slow), fast == slow);
        }
        if wants(Query::CheckNec) {
            let (fast, slow) = (is_nec_swm(&model, w)?, oracle.is_nec_swm(w)?);
            cmp.push("check-nec", Some(w), json!(fast), json!(slow), fast == slow);
        }
        if wants(Query::Dist) {
            let (fast, slow) = (sw_dist(&model, w)?, oracle.sw_dist(w)?);
            cmp.push(
                "dist",
                Some(w),
                report::distribution(&fast),
                report::distribution(&slow),
                fast == slow,
            );
        }
        if wants(Query::Prob) {
            let (fast, slow) = (swm_prob(&model, w, caps)?.probability, oracle.swm_prob(w)?);
            cmp.push("prob", Some(w), exact(&fast), exact(&slow), fast == slow);
        }
        if wants(Query::Expected) {
            let (fast, slow) = (expected_sw(&model, w)?, oracle.expected_sw(w)?);
            cmp.push("expected", Some(w), exact(&fast), exact(&slow), fast == slow);
        }
    }
    if wants(Query::ExistsNec) {
        let fast = exists_nec_swm(&model, k)?;
        let all = oracle.nec_swm_committees(k)?;
        let equal = match &fast {
            Some(w) => all.contains(w),
            None => all.is_empty(),
        };
        let slow: Vec<Value> = all.iter().map(committee_value).collect();
        cmp.push(
            "exists-nec",
            None,
            json!(fast.as_ref().map(committee_value)),
            json!(slow),
            equal,
        );
    }
    if wants(Query::Maxswm) {
        let fast = max_swm(&model, k, caps)?;
        let (best, objective) = oracle.max_swm(k)?;
        let equal = fast.objective == objective && oracle.swm_prob(&fast.committee)? == fast.objective;
        cmp.push(
            "maxswm",
            None,
            json!({"committee": committee_value(&fast.committee), "probability": exact(&fast.objective)}),
            json!({"committee": committee_value(&best), "probability": exact(&objective)}),
            equal,
        );
    }
    if wants(Query::Maxexpsw) {
        let fast = max_exp_sw(&model, k, caps)?;
        let mut best: Option<(Committee, Rational)> = None;
        for w in committees(m, k) {
            let e = oracle.expected_sw(&w)?;
            if best.as_ref().is_none_or(|(_, b)| e > *b) {
                best = Some((w, e));
            }
        }
        let (best, objective) = best.expect("k <= m");
        let equal = fast.objective == objective && oracle.expected_sw(&fast.committee)? == fast.objective;
        cmp.push(
            "maxexpsw",
            None,
            json!({"committee": committee_value(&fast.committee), "expected_sw": exact(&fast.objective)}),
            json!({"committee": committee_value(&best), "expected_sw": exact(&objective)}),
            equal,
        );
    }
    let verdict = if cmp.mismatches == 0 { "EQUAL" } else { "MISMATCH" };
    let mut answer = Answer::new(
        "oracle-verify",
        json!({"verdict": verdict, "comparisons": cmp.rows.len(), "mismatches": cmp.mismatches, "rows": cmp.rows}),
        "oracle-enumeration",
    )
    .work("profiles_enumerated", oracle.profiles_enumerated())
    .work("score_vectors", oracle.score_vectors());
    if cmp.mismatches > 0 {
        answer.failure = Some(Failure::new(
            ExitKind::Mismatch,
            format!(
                "{} of {} comparisons disagree with the oracle",
                cmp.mismatches,
                cmp.rows.len()
            ),
        ));
    }
    Ok(answer)
}

fn gen(args: &GenArgs, format: Format, mut request: Map<String, Value>, start: Instant) -> Run<Output> {
    let (model, result) = if args.unrobust {
        let p = parse_rational("p", args.p.as_deref().unwrap_or_default())?;
        let beta = parse_rational("beta", args.beta.as_deref().unwrap_or_default())?;
        request.insert("m".into(), json!(args.m));
        request.insert("p".into(), json!(rational::to_fraction_string(&p)));
        request.insert("beta".into(), json!(rational::to_fraction_string(&beta)));
        match gen_unrobust_instance(args.m, &p, &beta)? {
            UnrobustOutcome::Instance { model, probability } => (
                UncertaintyModel::from(model),
                json!({"robustness_probability": exact(&probability)}),
            ),
            UnrobustOutcome::Infeasible { probability } => {
                return Err(Failure::usage(format!(
                    "no unrobust instance: every committee is robust with probability {probability}, which is at least beta = {beta}"
                )));
            }
        }
    } else {
        let kind: ModelKind = args.kind.parse()?;
        let mut params = GeneratorParams::new(kind, args.n, args.m, args.k);
        if let Some(support) = args.support {
            params.support = support;
        }
        if let Some(density) = args.density {
            params.density = density;
        }
        if let Some(menu) = &args.menu {
            params.menu = menu.iter().map(|s| parse_rational("menu", s)).collect::<Run<_>>()?;
        }
        request.insert("kind".into(), json!(kind.name()));
        request.insert("seed".into(), json!(args.seed));
        (generate(&params, args.seed)?, json!({}))
    };
    let text = to_json(&model);
    let Some(path) = &args.output else {
        return Ok(Output { text, failure: None });
    };
    std::fs::write(path, &text)
        .map_err(|e| Failure::new(ExitKind::Internal, format!("cannot write {}: {e}", path.display())))?;
    let inst = model.instance();
    let mut result = result;
    result["path"] = json!(path.display().to_string());
    result["model"] = json!(model.kind_name());
    result["n"] = json!(inst.voters());
    result["m"] = json!(inst.candidates());
    result["k"] = json!(inst.committee_size());
    let doc = Document {
        command: "gen",
        request,
        result,
        method: if args.unrobust {
            "unrobust-family"
        } else {
            "seeded-random"
        }
        .into(),
        work: Map::new(),
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(Output {
        text: doc.render(format),
        failure: None,
    })
}

const BENCH_QUERIES: [&str; 7] = [
    "dist",
    "prob",
    "check-poss",
    "check-nec",
    "exists-nec",
    "maxswm",
    "maxexpsw",
];

/// Times each query once per instance, in file-name order.
fn bench(dir: &Path, caps: &Caps, format: Format) -> Run<Output> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut rows = Vec::new();
    for file in &files {
        let name = file
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_default();
        let model = match read_instance(file) {
            Ok(model) => model,
            Err(e) => {
                rows.push(json!({"file": name, "query": "parse", "status": Failure::from(e).kind.tag(), "micros": 0}));
                continue;
            }
        };
        let inst = model.instance();
        let k = inst.committee_size();
        let w = Committee::new(1..=k, inst.candidates())?;
        for query in BENCH_QUERIES {
            let start = Instant::now();
            let outcome: swm_core::Result<()> = match query {
                "dist" => sw_dist(&model, &w).map(drop),
                "prob" => swm_prob(&model, &w, caps).map(drop),
                "check-poss" => is_poss_swm(&model, &w, caps).map(drop),
                "check-nec" => is_nec_swm(&model, &w).map(drop),
                "exists-nec" => exists_nec_swm(&model, k).map(drop),
                "maxswm" => max_swm(&model, k, caps).map(drop),
                _ => max_exp_sw(&model, k, caps).map(drop),
            };
            let micros = start.elapsed().as_micros() as u64;
            let status = match outcome {
                Ok(()) => "ok",
                Err(e) => Failure::from(e).kind.tag(),
            };
            rows.push(json!({
                "file": name,
                "model": model.kind_name(),
                "n": inst.voters(),
                "m": inst.candidates(),
                "k": k,
                "query": query,
                "status": status,
                "micros": micros,
            }));
        }
    }
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json!({"command": "bench", "rows": rows})).expect("serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = format!(
                "{:<28} {:<15} {:>3} {:>3} {:>3} {:<11} {:<15} {:>12}\n",
                "file", "model", "n", "m", "k", "query", "status", "micros"
            );
            for r in &rows {
                s.push_str(&format!(
                    "{:<28} {:<15} {:>3} {:>3} {:>3} {:<11} {:<15} {:>12}\n",
                    r["file"].as_str().unwrap_or_default(),
                    r["model"].as_str().unwrap_or("-"),
                    r["n"],
                    r["m"],
                    r["k"],
                    r["query"].as_str().unwrap_or_default(),
                    r["status"].as_str().unwrap_or_default(),
                    r["micros"],
                ));
            }
            s
        }
    };
    Ok(Output { text, failure: None })
}
