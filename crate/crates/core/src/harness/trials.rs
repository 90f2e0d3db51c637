use super::record::ExperimentRecord;
use crate::error::{Error, Result};
use crate::generators::{member_labels, GenKind, GenSpec};
use crate::graph::{Adjacency, BaseGraphProfile, CollectionView, Graph, Partitioning};
use crate::testers::{derive_seed, run_tester, TesterKind, TesterParams};
use rayon::prelude::*;
use std::sync::Arc;
use std::time::Instant;

/// Where the graphs of a trial grid come from.
#[derive(Clone, Debug)]
pub enum Instance {
    /// One graph for every eps value and trial.
    Fixed(Arc<Graph>),
    /// One generated graph per eps value.
    PerEps { kind: GenKind, seed: u64 },
    /// A fresh graph per trial, seeded from the trial seed.
    PerTrial { kind: GenKind },
    /// One member per eps value kept as labels only, for very large `N`.
    ImplicitMember { seed: u64 },
}

#[derive(Clone, Debug)]
pub struct TrialConfig {
    pub tester: TesterKind,
    /// Label written to the `H` column.
    pub h_name: String,
    pub profile: BaseGraphProfile,
    pub instance: Instance,
    pub n: usize,
    pub eps: Vec<f64>,
    pub c: f64,
    pub params: TesterParams,
    pub trials: usize,
    /// Trial `i` runs with seed `base_seed + i`.
    pub base_seed: u64,
    /// Worker threads; 0 lets rayon decide.
    pub workers: usize,
    /// Fill `wall_ms`; off by default so reruns are byte-identical.
    pub timing: bool,
}

impl TrialConfig {
    pub fn new(
        tester: TesterKind,
        h_name: impl Into<String>,
        profile: BaseGraphProfile,
        instance: Instance,
        n: usize,
        eps: Vec<f64>,
    ) -> Self {
        TrialConfig {
            tester,
            h_name: h_name.into(),
            profile,
            instance,
            n,
            eps,
            c: 2.0,
            params: TesterParams::default(),
            trials: 1,
            base_seed: 0,
            workers: 0,
            timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.eps.is_empty() {
            return bad("empty eps grid".into());
        }
        if let Some(e) = self.eps.iter().find(|e| !(**e > 0.0 && **e < 1.0)) {
            return bad(format!("eps {e} outside (0, 1)"));
        }
        if self.trials == 0 {
            return bad("zero trials".into());
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return bad(format!("c = {} must be positive", self.c));
        }
        if let Instance::Fixed(g) = &self.instance {
            if g.n() != self.n {
                return bad(format!("instance has {} vertices, config says N = {}", g.n(), self.n));
            }
        }
        self.params.validate()
    }

    fn spec(&self, kind: &GenKind, eps: f64, seed: u64) -> GenSpec {
        GenSpec {
            kind: kind.clone(),
            n: self.n,
            eps,
            c: self.c,
            seed,
        }
    }
}

enum Shared {
    Graph(Arc<Graph>),
    Labels(Partitioning),
}

/// Runs `trials` seeded trials per eps value. Records come back ordered by
/// eps (as listed) and trial index regardless of the worker count. Every
/// rejection's evidence is checked against the true graph.
pub fn run_trials(config: &TrialConfig) -> Result<Vec<ExperimentRecord>> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let fp = config.params.fingerprint();
    pool.install(|| {
        let mut out = Vec::with_capacity(config.eps.len() * config.trials);
        for &eps in &config.eps {
            let shared = match &config.instance {
                Instance::Fixed(g) => Some(Shared::Graph(Arc::clone(g))),
                Instance::PerEps { kind, seed } => Some(Shared::Graph(Arc::new(
                    config.spec(kind, eps, *seed).generate(Some(&config.profile))?.graph,
                ))),
                Instance::ImplicitMember { seed } => Some(Shared::Labels(member_labels(
                    config.profile.graph(),
                    config.n,
                    eps,
                    config.c,
                    *seed,
                )?)),
                Instance::PerTrial { .. } => None,
            };
            let cell: Vec<ExperimentRecord> = (0..config.trials)
                .into_par_iter()
                .map(|trial| {
                    let seed = config.base_seed.wrapping_add(trial as u64);
                    match &shared {
                        Some(Shared::Graph(g)) => run_one(config, &**g, eps, trial, seed, &fp),
                        Some(Shared::Labels(labels)) => {
                            let view = CollectionView::new(config.profile.graph(), labels);
                            run_one(config, &view, eps, trial, seed, &fp)
                        }
                        None => {
                            let Instance::PerTrial { kind } = &config.instance else {
                                unreachable!("only per-trial instances are unshared")
                            };
                            let g = config
                                .spec(kind, eps, derive_seed(seed, 2))
                                .generate(Some(&config.profile))?
                                .graph;
                            run_one(config, &g, eps, trial, seed, &fp)
                        }
                    }
                })
                .collect::<Result<_>>()?;
            out.extend(cell);
        }
        Ok(out)
    })
}

fn run_one<A: Adjacency + ?Sized>(
    config: &TrialConfig,
    g: &A,
    eps: f64,
    trial: usize,
    seed: u64,
    fp: &str,
) -> Result<ExperimentRecord> {
    let start = Instant::now();
    let verdict = run_tester(config.tester, g, eps, &config.profile, config.c, &config.params, seed)?;
    let elapsed = start.elapsed();
    if verdict.premature_reads > 0 {
        return Err(Error::PlanNotSealed);
    }
    if !verdict.evidence_is_sound(g, &config.profile) {
        return Err(Error::UnsoundEvidence(format!(
            "{} on {} (N = {}, eps = {eps}, seed {seed}): {:?}",
            config.tester, config.h_name, config.n, verdict.evidence
        )));
    }
    Ok(ExperimentRecord {
        tester: config.tester.to_string(),
        h: config.h_name.clone(),
        n: config.n,
        eps,
        c: config.c,
        params_fp: fp.to_string(),
        seed,
        trial,
        verdict: verdict.decision.as_str().to_string(),
        evidence: verdict.evidence_kind().to_string(),
        distinct_queries: verdict.distinct_queries(),
        wall_ms: if config.timing { elapsed.as_secs_f64() * 1e3 } else { 0.0 },
    })
}
