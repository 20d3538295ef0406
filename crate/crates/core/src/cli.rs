//! The `gc` command line: argument parsing, dispatch and output formatting.
//!
//! JSON is the canonical output; `--format table` renders the same value as
//! indented `key: value` lines. Exit status is 0 on success, 1 on a domain
//! error and 2 on a usage error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::graph::{
    all_arrow_orientations, find_arrow_orientation, ArrowGraph, ArrowJson, ClassStatus, GraphJson,
    LabelledTrivalentGraph,
};
use crate::morse::{compute_propagator, dual_propagator, surviving_indices, ComplexJson, GradedComplex, VertexType};
use crate::space::{enumerate_classes, Cache, GraphSpace, SpaceConfig};
use crate::surgery::{evaluate_full, evaluate_orbit, Mode, TypeConvention};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "GC_CACHE";

#[derive(Parser, Debug)]
#[command(name = "gc", version, about = "Trivalent graph spaces, Morse propagators and Y-link surgery counts")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Number of random primes whose ranks must agree.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(3..))]
    pub primes: u64,
    /// Cache directory (overrides GC_CACHE).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Disable the on-disk cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, value_enum, default_value_t = TypeConvention::Default)]
    pub type_convention: TypeConvention,
    /// Largest k any command will build.
    #[arg(long, global = true, default_value_t = 7)]
    pub max_k: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the isomorphism classes of connected trivalent graphs on 2k vertices.
    Enum {
        #[arg(short)]
        k: usize,
    },
    /// Dimension of the graph space modulo IHX in degree k.
    Dim {
        #[arg(short)]
        k: usize,
    },
    /// Canonical class and orientation sign of a graph file.
    Reduce { file: PathBuf },
    /// Automorphism group orders of a graph file.
    Aut { file: PathBuf },
    /// Arrow orientation (no sources or sinks) of a graph file.
    Orient {
        file: PathBuf,
        /// List every arrow orientation instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Evaluate the surgery invariant of an arrow graph (or a plain graph, oriented automatically).
    Surgery {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Orbit)]
        mode: Mode,
    },
    /// Combinatorial propagator of a graded complex file.
    MorsePropagator {
        file: PathBuf,
        /// Also print the dual complex and its propagator.
        #[arg(long)]
        dual: bool,
    },
    /// Surviving index tuples for a vertex type.
    Surviving {
        #[arg(value_enum)]
        vertex_type: VertexType,
    },
    /// Quick internal consistency checks.
    Selftest,
    /// Inspect or manage the on-disk cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CacheAction {
    /// List cached files.
    Status,
    /// Remove cached files.
    Clear {
        /// Only remove files written by other format versions.
        #[arg(long)]
        stale: bool,
    },
    /// Precompute classes, relations and the reduced form for k.
    Warm {
        #[arg(short)]
        k: usize,
    },
}

/// Domain failure: reported on stderr with exit status 1.
#[derive(Debug)]
pub struct Failure(pub String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

/// Cache directory by precedence: flag, then `GC_CACHE`, then `~/.cache/gc`.
pub fn cache_dir(flag: Option<&Path>, env: Option<String>, home: Option<String>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| env.filter(|s| !s.is_empty()).map(PathBuf::from))
        .or_else(|| home.map(|h| Path::new(&h).join(".cache").join("gc")))
}

struct Context {
    cfg: SpaceConfig,
    cache: Option<Cache>,
    convention: TypeConvention,
}

impl Context {
    fn space(&self, k: usize) -> Result<GraphSpace, Failure> {
        Ok(GraphSpace::build_cached(k, &self.cfg, self.cache.as_ref())?)
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<LabelledTrivalentGraph, Failure> {
    Ok(LabelledTrivalentGraph::from_json(&read_json::<GraphJson>(path)?)?)
}

/// An arrow graph file, or a plain graph file oriented with the first arrow orientation.
fn read_arrow(path: &Path) -> Result<ArrowGraph, Failure> {
    let v: Value = read_json(path)?;
    if v.get("directions").is_some() {
        let j: ArrowJson = serde_json::from_value(v)?;
        Ok(ArrowGraph::from_json(&j)?)
    } else {
        let j: GraphJson = serde_json::from_value(v)?;
        Ok(find_arrow_orientation(&LabelledTrivalentGraph::from_json(&j)?))
    }
}

fn status_json(s: ClassStatus) -> Value {
    match s {
        ClassStatus::Zero => json!("zero"),
        ClassStatus::Signed(x) => json!(x),
    }
}

fn dispatch(cmd: &Command, ctx: &Context) -> Result<Value, Failure> {
    match cmd {
        Command::Enum { k } => {
            if *k == 0 || *k > ctx.cfg.max_k {
                return Err(Failure(format!("k must lie in 1..={}", ctx.cfg.max_k)));
            }
            let classes: Vec<Value> = enumerate_classes(*k)
                .into_iter()
                .map(|c| json!({"key": c.key, "status": status_json(c.status)}))
                .collect();
            Ok(json!({"k": k, "count": classes.len(), "classes": classes}))
        }
        Command::Dim { k } => Ok(serde_json::to_value(ctx.space(*k)?.report())?),
        Command::Reduce { file } => {
            let c = read_graph(file)?.reduce();
            Ok(match c.status {
                ClassStatus::Zero => json!({"class": "zero"}),
                ClassStatus::Signed(s) => json!({"class": c.key, "sign": s}),
            })
        }
        Command::Aut { file } => {
            let g = read_graph(file)?;
            let a = g.automorphism_counts();
            let odd = g.automorphisms().iter().any(|x| x.edge_parity() < 0);
            Ok(json!({"aut": a.aut, "aut_e": a.aut_e, "aut_v": a.aut_v, "odd_automorphism": odd}))
        }
        Command::Orient { file, all } => {
            let g = read_graph(file)?;
            if *all {
                let list: Vec<ArrowJson> = all_arrow_orientations(&g).iter().map(ArrowGraph::to_json).collect();
                Ok(serde_json::to_value(list)?)
            } else {
                Ok(serde_json::to_value(find_arrow_orientation(&g).to_json())?)
            }
        }
        Command::Surgery { file, mode } => {
            let a = read_arrow(file)?;
            let space = ctx.space(a.graph().k())?;
            let report = match mode {
                Mode::Orbit => evaluate_orbit(&a, &space, ctx.convention)?,
                Mode::Full => evaluate_full(&a, &space, ctx.convention)?,
            };
            if let Some(cache) = &ctx.cache {
                space.store_rref(cache)?;
            }
            Ok(report.to_json())
        }
        Command::MorsePropagator { file, dual } => {
            let c = GradedComplex::from_json(&read_json::<ComplexJson>(file)?)?;
            let g = compute_propagator(&c)?;
            if *dual {
                let (dc, dg) = dual_propagator(&c, &g);
                Ok(json!({"propagator": g.to_json(), "dual": {"complex": dc.to_json(), "propagator": dg.to_json()}}))
            } else {
                Ok(serde_json::to_value(g.to_json())?)
            }
        }
        Command::Surviving { vertex_type } => {
            let tuples = surviving_indices(*vertex_type);
            Ok(json!({"type": vertex_type, "count": tuples.len(), "tuples": tuples}))
        }
        Command::Selftest => selftest(ctx),
        Command::Cache { action } => {
            let cache = ctx
                .cache
                .as_ref()
                .ok_or_else(|| Failure("no cache directory configured".into()))?;
            match action {
                CacheAction::Status => Ok(serde_json::to_value(cache.status()?)?),
                CacheAction::Clear { stale } => Ok(json!({"removed": cache.clear(*stale)?})),
                CacheAction::Warm { k } => {
                    let space = ctx.space(*k)?;
                    space.store_rref(cache)?;
                    Ok(json!({"k": k, "warmed": serde_json::to_value(cache.status()?)?
                        .as_array()
                        .map(|a| a.iter().filter(|e| e["k"] == json!(k)).count())
                        .unwrap_or(0)}))
                }
            }
        }
    }
}

fn selftest(ctx: &Context) -> Result<Value, Failure> {
    let mut checks = Vec::new();
    let mut check = |name: &str, ok: bool| checks.push(json!({"name": name, "ok": ok}));
    let cfg = SpaceConfig { max_k: 4, ..ctx.cfg.clone() };
    let dims: Result<Vec<usize>, _> = (1..=4).map(|k| GraphSpace::build(k, &cfg).map(|s| s.dimension())).collect();
    check("dimensions k=1..4 are 0,1,0,0", dims.ok() == Some(vec![0, 1, 0, 0]));
    check(
        "eleven surviving tuples per vertex type",
        surviving_indices(VertexType::I).len() == 11 && surviving_indices(VertexType::II).len() == 11,
    );
    let k4 = LabelledTrivalentGraph::k4();
    check("|Aut K4| = 24", k4.automorphism_counts().aut == 24);
    let space = GraphSpace::build(2, &cfg)?;
    let expected = space.normal_form(&space.class_of(&k4)?);
    let orbit = evaluate_orbit(&find_arrow_orientation(&k4), &space, ctx.convention)?;
    check("surgery on K4 returns [K4] ≠ 0", orbit.result == expected && !expected.is_zero());
    let ok = checks.iter().all(|c| c["ok"] == json!(true));
    if !ok {
        return Err(Failure(format!("selftest failed: {}", Value::Array(checks))));
    }
    Ok(json!({"ok": ok, "checks": checks}))
}

/// Renders a JSON value as indented `key: value` lines.
pub fn render_table(v: &Value) -> String {
    fn walk(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    if x.is_object() || x.is_array() {
                        out.push_str(&format!("{pad}{k}:\n"));
                        walk(x, indent + 1, out);
                    } else {
                        out.push_str(&format!("{pad}{k}: {}\n", scalar(x)));
                    }
                }
            }
            Value::Array(a) => {
                for x in a {
                    if x.is_object() || x.is_array() {
                        out.push_str(&format!("{pad}-\n"));
                        walk(x, indent + 1, out);
                    } else {
                        out.push_str(&format!("{pad}- {}\n", scalar(x)));
                    }
                }
            }
            x => out.push_str(&format!("{pad}{}\n", scalar(x))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            x => x.to_string(),
        }
    }
    let mut out = String::new();
    walk(v, 0, &mut out);
    out
}

/// Runs `gc` with the given arguments (program name first) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let g = &cli.global;
    let dir = if g.no_cache {
        None
    } else {
        cache_dir(g.cache.as_deref(), std::env::var(CACHE_ENV).ok(), std::env::var("HOME").ok())
    };
    let ctx = Context {
        cfg: SpaceConfig {
            max_k: g.max_k,
            primes: g.primes as usize,
            ..SpaceConfig::default()
        },
        cache: dir.map(Cache::new),
        convention: g.type_convention,
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(g.jobs as usize).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    match pool.install(|| dispatch(&cli.command, &ctx)) {
        Ok(v) => {
            let text = match g.format {
                Format::Json => format!("{v}\n"),
                Format::Table => render_table(&v),
            };
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}
