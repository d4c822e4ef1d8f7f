//! `hgood`: constructions, exact search, chains and engines from the shell.
//!
//! Exit codes: 0 ok, 1 invalid input, 2 guard exceeded, 3 certificate
//! invalid.

mod manifest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use hgood::chains::{spanning_path, validate_chain, CliqueChain};
use hgood::check::{check_bundle, Bundle};
use hgood::constructions::{self as cons, CycleVariant};
use hgood::engines::{loose_witness_engine, tight_witness_engine, LooseParams, TightParams};
use hgood::exact::{self, RamseyOptions, TauOptions};
use hgood::hg::{ramsey_profile, Hypergraph, Tournament, TwoColoring};
use hgood::search::{verify_free, Limits};
use hgood::table::build_table;
use hgood::Pattern;

use manifest::{hash_file, manifest_path, sha256_hex, RunManifest};

#[derive(Parser)]
#[command(name = "hgood", version, about = "Ramsey goodness for uniform hypergraphs, at desk scale")]
struct Cli {
    /// Worker threads. Output is the same for every value.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the result to FILE and a run manifest to FILE.manifest.json.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a lower-bound coloring or a τ extremal graph.
    Construct {
        #[command(subcommand)]
        which: Construction,
    },
    /// Check a coloring for a red and a blue target.
    Verify {
        #[arg(long)]
        coloring: PathBuf,
        /// Red target: a pattern spec or a hypergraph JSON file.
        #[arg(long)]
        red: String,
        #[arg(long)]
        blue: String,
    },
    /// Exact R(G, H) by exhaustive search, compared with the Burr bound.
    Ramsey {
        #[arg(long)]
        red: String,
        #[arg(long)]
        blue: String,
        /// Largest order examined.
        #[arg(long, default_value_t = 8)]
        cap: usize,
        /// Enumerate labelled colorings instead of isomorphism classes.
        #[arg(long)]
        labelled: bool,
    },
    /// τ(k, α) exactly, with the bracket when the search is capped.
    Tau {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long, default_value_t = 16)]
        cap: usize,
    },
    /// Tournament Ramsey number R(χ) by enumeration.
    Dramsey {
        #[arg(long)]
        chi: usize,
        #[arg(long, default_value_t = exact::DEFAULT_TOURNAMENT_CAP)]
        cap: usize,
        /// Also check the gap to χ−1 with the augmented witness.
        #[arg(long)]
        gap: bool,
    },
    /// Validate a clique chain and emit its spanning path.
    Chain {
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        chain: PathBuf,
    },
    /// Run a witness engine.
    Engine {
        kind: EngineKind,
        #[arg(long)]
        coloring: PathBuf,
        /// Red target: path:k:ell:n or cycle:k:ell:n.
        #[arg(long)]
        target: String,
        /// Blue target; the tight engine takes tth:chi:m.
        #[arg(long)]
        blue: String,
        /// Engine parameters as JSON; n and cycle come from the target.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The reproduction table.
    Table {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Re-validate a certificate bundle.
    Check { bundle: PathBuf },
}

#[derive(Subcommand)]
enum Construction {
    Burr {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        chi: usize,
        #[arg(long)]
        sigma: usize,
        #[arg(long)]
        vg: usize,
    },
    EllPath {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        chi: usize,
    },
    LoosePath {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        chi: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        /// (k−1)-graph J; defaults to the τ lower construction.
        #[arg(long)]
        j: Option<PathBuf>,
    },
    LooseCycle {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        chi: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = Variant::Pencil)]
        variant: Variant,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        j: Option<PathBuf>,
    },
    NonTransitive {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t: usize,
    },
    Transitive {
        /// `cyclic`, `tt:N`, or a tournament JSON file.
        #[arg(long)]
        tournament: String,
        #[arg(long)]
        n: usize,
    },
    Tau {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineKind {
    Loose,
    Tight,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Tau,
    Pencil,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A finished command: the bytes to emit and what the manifest records.
struct Done {
    body: String,
    seed: Option<u64>,
    inputs: Vec<PathBuf>,
    code: u8,
}

impl Done {
    fn json(v: &impl Serialize) -> anyhow::Result<Done> {
        let mut body = serde_json::to_string_pretty(v)?;
        body.push('\n');
        Ok(Done { body, seed: None, inputs: Vec::new(), code: 0 })
    }

    fn reading(mut self, files: &[&Path]) -> Done {
        self.inputs.extend(files.iter().map(|p| p.to_path_buf()));
        self
    }
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| hgood::Error::Invalid(format!("{}: {e}", path.display())).into())
}

fn parse<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> anyhow::Result<T> {
    serde_json::from_value(v).map_err(|e| hgood::Error::Invalid(format!("bad {what}: {e}")).into())
}

/// A bare coloring, or any object carrying one under `coloring`.
fn read_coloring(path: &Path) -> anyhow::Result<TwoColoring> {
    let mut v = read_json(path)?;
    if let Some(inner) = v.get_mut("coloring") {
        v = inner.take();
    }
    parse(v, "coloring")
}

fn read_hypergraph(path: &Path) -> anyhow::Result<Hypergraph> {
    let mut v = read_json(path)?;
    if let Some(inner) = v.get_mut("graph") {
        v = inner.take();
    }
    parse(v, "hypergraph")
}

/// Mini-language spec, or a hypergraph JSON file.
fn pattern(spec: &str) -> anyhow::Result<(Pattern, Option<PathBuf>)> {
    let p = Path::new(spec);
    if spec.ends_with(".json") || p.is_file() {
        let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| spec.into());
        return Ok((Pattern::graph(name, read_hypergraph(p)?), Some(p.to_path_buf())));
    }
    Ok((Pattern::parse(spec)?, None))
}

fn env_num<T: std::str::FromStr>(name: &str) -> anyhow::Result<Option<T>> {
    match std::env::var(name) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| hgood::Error::Invalid(format!("{name}={s:?} is not a number")).into()),
        Err(_) => Ok(None),
    }
}

/// Search guards, overridable through HGOOD_* variables.
fn limits() -> anyhow::Result<Limits> {
    let mut l = Limits::default();
    if let Some(v) = env_num("HGOOD_TIGHT_PATH")? {
        l.tight_path = v;
    }
    if let Some(v) = env_num("HGOOD_LOOSE_PATH")? {
        l.loose_path = v;
    }
    if let Some(v) = env_num("HGOOD_INDEPENDENCE")? {
        l.independence = v;
    }
    if let Some(v) = env_num("HGOOD_PROFILE")? {
        l.profile = v;
    }
    if let Some(v) = env_num("HGOOD_PATH_NODES")? {
        l.path_nodes = v;
    }
    if let Some(v) = env_num("HGOOD_EMBED_NODES")? {
        l.embed_nodes = Some(v);
    }
    if let Some(v) = env_num::<u8>("HGOOD_STRICT")? {
        l.soft = v == 0;
    }
    Ok(l)
}

fn run(cmd: &Cmd) -> anyhow::Result<Done> {
    match cmd {
        Cmd::Construct { which } => construct(which),
        Cmd::Verify { coloring, red, blue } => {
            let c = read_coloring(coloring)?;
            let (g, gf) = pattern(red)?;
            let (h, hf) = pattern(blue)?;
            let f = verify_free(&c, &g, &h.hypergraph()?, &limits()?)?;
            let out = json!({
                "red": g.descriptor(),
                "blue": h.descriptor(),
                "free": f.free,
                "exact": f.exact,
                "certificate": f.certificate(),
            });
            let mut files = vec![coloring.as_path()];
            files.extend(gf.as_deref());
            files.extend(hf.as_deref());
            Ok(Done::json(&out)?.reading(&files))
        }
        Cmd::Ramsey { red, blue, cap, labelled } => {
            let (g, gf) = pattern(red)?;
            let (h, hf) = pattern(blue)?;
            let hh = h.hypergraph()?;
            let mut opts = RamseyOptions { canonical: !labelled, ..RamseyOptions::default() };
            if let Some(v) = env_num("HGOOD_MAX_SETS")? {
                opts.max_sets = v;
            }
            let mut r = exact::ramsey_exact(&g, &hh, *cap, &opts)?;
            r.blue = h.descriptor();
            let profile = ramsey_profile(&hh, limits()?.profile)?;
            let goodness = exact::goodness_gap(g.order(), &profile, &r);
            let out = json!({ "value": r.value, "ramsey": r, "profile": profile, "goodness": goodness });
            let files: Vec<&Path> = gf.as_deref().into_iter().chain(hf.as_deref()).collect();
            Ok(Done::json(&out)?.reading(&files))
        }
        Cmd::Tau { k, alpha, cap } => {
            let opts = TauOptions { n_cap: *cap, ..TauOptions::default() };
            Done::json(&exact::tau_exact(*k, *alpha, &opts)?)
        }
        Cmd::Dramsey { chi, cap, gap } => {
            let r = exact::directed_ramsey_exact(*chi, *cap)?;
            let g = if *gap { Some(exact::consecutive_gap_check(*chi, *cap)?) } else { None };
            Done::json(&json!({ "result": r, "gap": g }))
        }
        Cmd::Chain { coloring, chain } => {
            let c = read_coloring(coloring)?;
            let ch: CliqueChain = parse(read_json(chain)?, "chain")?;
            let check = validate_chain(&ch, &c);
            let valid = check.is_valid();
            let path = if valid { Some(spanning_path(&ch)?) } else { None };
            let mut d = Done::json(&json!({ "valid": valid, "check": check, "spanning_path": path }))?
                .reading(&[coloring.as_path(), chain.as_path()]);
            if !valid {
                d.code = 3;
            }
            Ok(d)
        }
        Cmd::Engine { kind, coloring, target, blue, params, seed } => {
            let c = read_coloring(coloring)?;
            let (ell, n, cycle) = match Pattern::parse(target)? {
                Pattern::Path { ell, n, .. } => (ell, n, false),
                Pattern::Cycle { ell, n, .. } => (ell, n, true),
                _ => bail!(hgood::Error::Invalid("engine targets are path:… or cycle:…".into())),
            };
            let mut p = match params {
                Some(f) => read_json(f)?,
                None => json!({}),
            };
            let obj = p.as_object_mut().ok_or_else(|| hgood::Error::Invalid("params must be a JSON object".into()))?;
            obj.insert("n".into(), json!(n));
            obj.insert("cycle".into(), json!(cycle));
            let report = match kind {
                EngineKind::Loose => {
                    if ell != 1 {
                        bail!(hgood::Error::Invalid("the loose engine targets ell = 1".into()));
                    }
                    let lp: LooseParams = parse(p, "loose parameters")?;
                    let (h, _) = pattern(blue)?;
                    loose_witness_engine(&c, &h.hypergraph()?, &lp)?
                }
                EngineKind::Tight => {
                    if ell != 2 {
                        bail!(hgood::Error::Invalid("the tight engine targets ell = 2".into()));
                    }
                    obj_seed(&mut p, *seed);
                    let tp: TightParams = parse(p, "tight parameters")?;
                    let (chi, m) = tth(blue)?;
                    tight_witness_engine(&c, chi, m, &tp)?
                }
            };
            let mut files = vec![coloring.as_path()];
            files.extend(params.as_deref());
            let mut d = Done::json(&report)?.reading(&files);
            d.seed = Some(*seed);
            Ok(d)
        }
        Cmd::Table { seed, format } => {
            let t = build_table(*seed)?;
            let body = match format {
                Format::Text => t.to_text(),
                Format::Json => serde_json::to_string_pretty(&t)? + "\n",
            };
            Ok(Done { body, seed: Some(*seed), inputs: Vec::new(), code: if t.passed() { 0 } else { 3 } })
        }
        Cmd::Check { bundle } => {
            let b: Bundle = parse(read_json(bundle)?, "bundle")?;
            let r = check_bundle(&b, &limits()?)?;
            Ok(Done::json(&r)?.reading(&[bundle.as_path()]))
        }
    }
}

fn obj_seed(p: &mut Value, seed: u64) {
    if let Some(o) = p.as_object_mut() {
        o.insert("seed".into(), json!(seed));
    }
}

fn tth(spec: &str) -> anyhow::Result<(usize, usize)> {
    let bad = || hgood::Error::Invalid(format!("the tight engine's blue target is tth:chi:m, got {spec:?}"));
    let rest = spec.strip_prefix("tth:").ok_or_else(bad)?;
    let (a, b) = rest.split_once(':').ok_or_else(bad)?;
    Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
}

fn tournament(spec: &str) -> anyhow::Result<Tournament> {
    if spec == "cyclic" {
        return Ok(Tournament::cyclic_triangle());
    }
    if let Some(n) = spec.strip_prefix("tt:") {
        let n: usize = n.parse().map_err(|_| hgood::Error::Invalid(format!("bad tournament {spec:?}")))?;
        if n > 64 {
            bail!(hgood::Error::Invalid(format!("{n} vertices exceeds the limit of 64")));
        }
        return Ok(Tournament::transitive(n));
    }
    parse(read_json(Path::new(spec))?, "tournament")
}

fn j_graph(j: &Option<PathBuf>, k: usize, t: usize) -> anyhow::Result<Hypergraph> {
    match j {
        Some(f) => read_hypergraph(f),
        None => Ok(cons::tau_lower_construction(k - 1, t)?.graph),
    }
}

fn construct(which: &Construction) -> anyhow::Result<Done> {
    let (inst, files) = match which {
        Construction::Burr { k, chi, sigma, vg } => (cons::burr_coloring(*k, *chi, *sigma, *vg)?, vec![]),
        Construction::EllPath { k, ell, n, chi } => (cons::ell_path_lb(*k, *ell, *n, *chi)?, vec![]),
        Construction::LoosePath { k, chi, n, t, j } => {
            if *k < 3 {
                bail!(hgood::Error::Invalid("need k >= 3".into()));
            }
            (cons::loose_path_lb(*k, *chi, *n, *t, &j_graph(j, *k, *t)?)?, j.iter().cloned().collect())
        }
        Construction::LooseCycle { k, chi, n, t, variant, q, j } => {
            let v = match variant {
                Variant::Pencil => CycleVariant::Pencil {
                    q: q.ok_or_else(|| hgood::Error::Invalid("the pencil variant needs --q".into()))?,
                },
                Variant::Tau => {
                    if *k < 3 {
                        bail!(hgood::Error::Invalid("need k >= 3".into()));
                    }
                    CycleVariant::Tau(j_graph(j, *k, *t)?)
                }
            };
            (cons::loose_cycle_lb(*k, *chi, *n, *t, &v)?, j.iter().cloned().collect())
        }
        Construction::NonTransitive { m, t } => (cons::non_transitive_lb(*m, *t)?, vec![]),
        Construction::Transitive { tournament: spec, n } => {
            let file = (spec != "cyclic" && !spec.starts_with("tt:")).then(|| PathBuf::from(spec));
            (cons::transitive_lb(&tournament(spec)?, *n)?, file.into_iter().collect())
        }
        Construction::Tau { k, alpha } => return Done::json(&cons::tau_lower_construction(*k, *alpha)?),
    };
    let refs: Vec<&Path> = files.iter().map(|p| p.as_path()).collect();
    Ok(Done::json(&inst)?.reading(&refs))
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<hgood::Error>() {
        Some(hgood::Error::Invalid(_)) | None => 1,
        Some(hgood::Error::Guard(_)) => 2,
        Some(hgood::Error::Certificate(_)) => 3,
    }
}

fn emit(cli: &Cli, done: &Done, started: Instant) -> anyhow::Result<()> {
    let outputs = match &cli.out {
        Some(path) => {
            std::fs::write(path, &done.body).with_context(|| format!("writing {}", path.display()))?;
            vec![hash_file(path)?]
        }
        None => {
            print!("{}", done.body);
            vec![manifest::FileHash { path: "-".into(), sha256: sha256_hex(done.body.as_bytes()) }]
        }
    };
    let inputs = done.inputs.iter().map(|p| hash_file(p)).collect::<std::io::Result<Vec<_>>>()?;
    let args: Vec<String> = std::env::args().collect();
    let m = RunManifest {
        tool: "hgood".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command_line: args,
        seed: done.seed,
        parameters: json!({ "jobs": cli.jobs }),
        inputs,
        outputs,
        exit_code: done.code as i32,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    match &cli.out {
        Some(path) => std::fs::write(manifest_path(path), serde_json::to_string_pretty(&m)? + "\n")?,
        None => eprintln!("manifest: {}", serde_json::to_string(&m)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors are invalid input, not guard failures
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let started = Instant::now();
    let result = match cli.jobs {
        Some(0) => Err(anyhow!(hgood::Error::Invalid("--jobs must be at least 1".into()))),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| anyhow!("thread pool: {e}"))
            .and_then(|pool| pool.install(|| run(&cli.cmd))),
        None => run(&cli.cmd),
    };
    match result.and_then(|done| emit(&cli, &done, started).map(|_| done.code)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
