use anyhow::{bail, Context};
use buctest_core::exact::{
    catalog_text, compute_w, distance_to_buc, distance_to_ld, is_blowup_collection, minimal_witnesses,
    ENUMERATION_CAP,
};
use buctest_core::generators::{GenKind, GenSpec};
use buctest_core::graph::{format_certificate, read_graph, write_graph, BaseGraphProfile};
use buctest_core::harness::{
    estimate_acceptance, fit_slope, median_queries_by_eps, write_csv, ExperimentRecord, Instance,
    TrialConfig,
};
use buctest_core::testers::run_tester;
use buctest_core::{Error, Evidence, Graph, TesterKind, TesterParams};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "buctest", version, about = "Testers and exact oracles for blow-up collections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded instance and write it as a graph file.
    Gen(GenArgs),
    /// Decide membership in BUC(H) and check a stored certificate.
    Check(CheckArgs),
    /// Exact distances to BUC(H) and to the low-degree class.
    Dist(DistArgs),
    /// Enumerate minimal witnesses of H and report W(H).
    Witness(WitnessArgs),
    /// Run one tester once; exits 0 on accept and 1 on reject.
    Test(TestArgs),
    /// Run a trial grid and write one CSV row per trial.
    Exp(ExpArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Member,
    FarCycleMismatch,
    PlantedEdges,
    HighDegree,
}

#[derive(Args)]
struct BaseArg {
    /// Base graph H: a graph file, or one of Kn, Cn, Pn, Sn (star with n leaves).
    #[arg(long = "h")]
    h: String,
}

#[derive(Args)]
struct ParamArgs {
    /// Override a tester constant, e.g. `--set a_iter2=8` or `--set w_override=6`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Use the reduced constants meant for large-N scaling runs.
    #[arg(long)]
    scaling_profile: bool,
    /// Vertex cap of the W(H) search.
    #[arg(long, default_value_t = ENUMERATION_CAP)]
    w_search: usize,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long = "h")]
    h: Option<String>,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 2.0)]
    c: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cycle length parameter of far-cycle-mismatch.
    #[arg(long, default_value_t = 4)]
    t: usize,
    /// Number of planted edges.
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    base: BaseArg,
}

#[derive(Args)]
struct DistArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Base graph for the BUC distance; omitted means LD only.
    #[arg(long = "h")]
    h: Option<String>,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 2.0)]
    c: f64,
}

#[derive(Args)]
struct WitnessArgs {
    #[command(flatten)]
    base: BaseArg,
    #[arg(long, default_value_t = ENUMERATION_CAP)]
    n_max: usize,
    /// Write the witness catalog here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TestArgs {
    #[arg(long, value_parser = parse_tester)]
    tester: TesterKind,
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    base: BaseArg,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 2.0)]
    c: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args)]
struct ExpArgs {
    #[arg(long, value_parser = parse_tester)]
    tester: TesterKind,
    #[command(flatten)]
    base: BaseArg,
    /// Graph file used for every trial; otherwise instances come from --family.
    #[arg(long, conflicts_with = "family")]
    graph: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Generate a fresh instance per trial instead of one per eps value.
    #[arg(long)]
    fresh: bool,
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated tolerance grid.
    #[arg(long, value_delimiter = ',', required = true)]
    eps: Vec<f64>,
    #[arg(long, default_value_t = 2.0)]
    c: f64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    base_seed: u64,
    /// Seed of the shared instances.
    #[arg(long, default_value_t = 0)]
    instance_seed: u64,
    #[arg(long, default_value_t = 4)]
    t: usize,
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Record wall time per trial (makes the CSV run-dependent).
    #[arg(long)]
    timing: bool,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
}

fn parse_tester(s: &str) -> Result<TesterKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn gen_kind(f: Family, t: usize, count: usize) -> GenKind {
    match f {
        Family::Member => GenKind::Member,
        Family::FarCycleMismatch => GenKind::FarCycleMismatch { t },
        Family::PlantedEdges => GenKind::PlantedEdges { count },
        Family::HighDegree => GenKind::HighDegree,
    }
}

/// Resolves `--h`: a named family member or a graph file.
fn load_base(spec: &str) -> anyhow::Result<Graph> {
    let named = spec.get(1..).and_then(|k| k.parse::<usize>().ok()).and_then(|k| match &spec[..1] {
        "K" if k >= 1 => Some(Graph::complete(k)),
        "C" if k >= 3 => Some(Graph::cycle(k)),
        "P" if k >= 1 => Some(Graph::path(k)),
        "S" => Some(Graph::star(k)),
        _ => None,
    });
    match named {
        Some(g) => Ok(g),
        None => Ok(read_graph(spec).with_context(|| format!("reading base graph `{spec}`"))?.graph),
    }
}

fn load_profile(spec: &str, w_search: usize) -> anyhow::Result<BaseGraphProfile> {
    let h = load_base(spec)?;
    let w = compute_w(&h, w_search)?;
    Ok(BaseGraphProfile::new(h).with_w(w))
}

fn load_params(p: &ParamArgs) -> anyhow::Result<TesterParams> {
    let mut params = if p.scaling_profile {
        TesterParams::scaling_profile()
    } else {
        TesterParams::default()
    };
    for item in &p.set {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("`--set {item}` is not KEY=VALUE")))?;
        params.set(k.trim(), v.trim())?;
    }
    params.validate()?;
    Ok(params)
}

fn gen(a: GenArgs) -> anyhow::Result<ExitCode> {
    let profile = a.h.as_deref().map(load_base).transpose()?.map(BaseGraphProfile::new);
    let spec = GenSpec {
        kind: gen_kind(a.family, a.t, a.count),
        n: a.n,
        eps: a.eps,
        c: a.c,
        seed: a.seed,
    };
    let out = spec.generate(profile.as_ref())?;
    write_graph(&a.out, &out.graph, Some(spec.kind.name()), out.certificate.as_ref())?;
    println!("wrote {} ({} vertices, {} edges)", a.out.display(), out.graph.n(), out.graph.edge_count());
    Ok(ExitCode::SUCCESS)
}

fn check(a: CheckArgs) -> anyhow::Result<ExitCode> {
    let file = read_graph(&a.graph)?;
    let h = load_base(&a.base.h)?;
    match is_blowup_collection(&file.graph, &h) {
        Some(cert) => {
            println!("member yes");
            print!("{}", format_certificate(&cert));
        }
        None => println!("member no"),
    }
    if let Some(cert) = &file.certificate {
        let ok = cert.len() == file.graph.n() && cert.verify_collection(&file.graph, &h);
        println!("stored certificate {}", if ok { "valid" } else { "invalid" });
    }
    Ok(ExitCode::SUCCESS)
}

fn dist(a: DistArgs) -> anyhow::Result<ExitCode> {
    let g = read_graph(&a.graph)?.graph;
    let n = g.n();
    if !(a.eps > 0.0 && a.c > 0.0) {
        bail!(Error::Argument("eps and c must be positive".into()));
    }
    let bound = (a.c * a.eps * n as f64).floor() as usize;
    let budget = a.eps * (n * n) as f64;
    let d_ld = distance_to_ld(&g, bound)?;
    let d_buc = match &a.h {
        Some(spec) => Some(distance_to_buc(&g, &load_base(spec)?)?),
        None => None,
    };
    println!("budget eps*N^2 {budget}");
    println!("degree bound {bound}");
    println!("dist_ld {d_ld}");
    if let Some(d) = d_buc {
        println!("dist_buc {d}");
        println!("buc_far {}", d as f64 >= budget);
    }
    Ok(ExitCode::SUCCESS)
}

fn witness(a: WitnessArgs) -> anyhow::Result<ExitCode> {
    let h = load_base(&a.base.h)?;
    let ws = minimal_witnesses(&h, a.n_max)?;
    let w = compute_w(&h, a.n_max)?;
    for size in 1..=a.n_max {
        let k = ws.iter().filter(|g| g.n() == size).count();
        if k > 0 {
            println!("size {size}: {k}");
        }
    }
    println!("W {} {}", w.value, if w.exact { "exact" } else { "not-exact" });
    if let Some(path) = a.out {
        std::fs::write(&path, catalog_text(&ws))?;
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn test(a: TestArgs) -> anyhow::Result<ExitCode> {
    let g = read_graph(&a.graph)?.graph;
    let profile = load_profile(&a.base.h, a.params.w_search)?;
    let params = load_params(&a.params)?;
    let v = run_tester(a.tester, &g, a.eps, &profile, a.c, &params, a.seed)?;
    if !v.evidence_is_sound(&g, &profile) {
        bail!(Error::UnsoundEvidence(format!("{:?}", v.evidence)));
    }
    println!("tester {}", a.tester);
    println!("verdict {}", v.decision.as_str());
    match &v.evidence {
        Some(Evidence::Witness(r)) => println!("evidence {} {r:?}", r.kind()),
        Some(Evidence::Degree(d)) => println!("evidence degree-estimate {d:?}"),
        None => println!("evidence none"),
    }
    println!("distinct_queries {}", v.distinct_queries());
    println!("params_fp {}", params.fingerprint());
    Ok(if v.is_accept() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn exp(a: ExpArgs) -> anyhow::Result<ExitCode> {
    let profile = load_profile(&a.base.h, a.params.w_search)?;
    let params = load_params(&a.params)?;
    let (instance, n) = match (&a.graph, a.family) {
        (Some(path), _) => {
            let g = read_graph(path)?.graph;
            let n = g.n();
            (Instance::Fixed(Arc::new(g)), n)
        }
        (None, Some(f)) => {
            let n = a.n.ok_or_else(|| Error::Config("--family needs --n".into()))?;
            let kind = gen_kind(f, a.t, a.count);
            let inst = if a.fresh {
                Instance::PerTrial { kind }
            } else {
                Instance::PerEps {
                    kind,
                    seed: a.instance_seed,
                }
            };
            (inst, n)
        }
        (None, None) => bail!(Error::Config("give --graph or --family".into())),
    };
    let mut cfg = TrialConfig::new(a.tester, a.base.h.clone(), profile, instance, n, a.eps.clone());
    cfg.c = a.c;
    cfg.params = params;
    cfg.trials = a.trials;
    cfg.base_seed = a.base_seed;
    cfg.workers = a.workers;
    cfg.timing = a.timing;
    let records = buctest_core::harness::run_trials(&cfg)?;
    match &a.out {
        Some(path) => write_csv(std::fs::File::create(path)?, &records)?,
        None => write_csv(std::io::stdout().lock(), &records)?,
    }
    summarize(&records);
    Ok(ExitCode::SUCCESS)
}

fn summarize(records: &[ExperimentRecord]) {
    let points = median_queries_by_eps(records);
    for &(eps, q) in &points {
        let cell: Vec<ExperimentRecord> = records.iter().filter(|r| r.eps == eps).cloned().collect();
        if let Ok(e) = estimate_acceptance(&cell) {
            eprintln!(
                "eps {eps}: accept {}/{} = {:.3} [{:.3}, {:.3}], median queries {q}",
                e.accepts, e.trials, e.p_hat, e.lo, e.hi
            );
        }
    }
    if points.len() >= 2 {
        if let Ok(s) = fit_slope(&points) {
            eprintln!("slope of median queries in 1/eps: {s:.3}");
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::Capacity { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Check(a) => check(a),
        Command::Dist(a) => dist(a),
        Command::Witness(a) => witness(a),
        Command::Test(a) => test(a),
        Command::Exp(a) => exp(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
