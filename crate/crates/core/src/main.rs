use std::fmt::Display;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use delune::cache::{self, Cache};
use delune::coloring::{coloring_space, count_colorings, min_palette, ColoringError};
use delune::diagram::{detect_lunes, detect_maximal_tassels, faces, parse_diagram, Diagram, DiagramError};
use delune::greyset::{grey_index_with_cap, GreyError, DEFAULT_GREY_CAP};
use delune::invariants::{determinant, load_reference, normalized_f_sweep, Fingerprint, RefError, ReferenceTable};
use delune::lowerhalf::{lh_sequence, torus_bound, LhError};
use delune::rewrite::{compare_strategies, delunify, ColoredDiagram, RewriteError, Strategy};
use delune::search::{
    algorithm1, algorithm2, enumerate_basic_polyhedra_with_cap, lfc_search, EnumError, SearchError, SweepOptions,
    DEFAULT_ENUM_CAP, DEFAULT_SWEEP_CAP,
};

#[derive(Parser, Debug)]
#[command(name = "delune", version, about = "Fox colorings and lune-free link diagrams")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Always recompute; neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Cache directory (default: $DELUNE_CACHE, else the user cache dir).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    /// Reference knot table in the JSON-lines schema, instead of the bundled one.
    #[arg(long, global = true, value_name = "PATH")]
    reference: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Validate a diagram and print its normalized form.
    Parse(Input),
    /// Faces of the underlying plane graph.
    Faces(Input),
    /// Two-sided faces.
    Lunes(Input),
    /// Maximal tassels, clasps and curls.
    Tassels(Input),
    /// Determinant, normalized bracket, Jones polynomial and recognition.
    Invariants(Input),
    /// Number of m-colorings, with a basis when m is prime.
    Color {
        #[command(flatten)]
        input: Input,
        #[arg(long = "mod", value_name = "M")]
        modulus: u64,
    },
    /// Least number of colors of a nontrivial p-coloring.
    MinPalette {
        #[command(flatten)]
        input: Input,
        #[arg(long = "mod", value_name = "P")]
        p: u64,
    },
    /// Rewrite a p-colored diagram until it has no lune.
    Delunify {
        #[command(flatten)]
        input: Input,
        #[arg(long = "mod", value_name = "P")]
        p: u64,
        /// main, tassel, teneva or truncated.
        #[arg(long, default_value = "tassel")]
        strategy: Strategy,
    },
    /// Check the chunk-plan cost against the Teneva bound for n in [12, N].
    CompareStrategies {
        #[arg(long = "max", value_name = "N")]
        n_max: u64,
    },
    /// Lower half sequence of n.
    Lh { n: u64 },
    /// Crossing bound from the (2, p) torus knot.
    TorusBound { p: u64 },
    /// Grey index and rainbow index of Z/p.
    Grey {
        p: u64,
        #[arg(long, default_value_t = DEFAULT_GREY_CAP)]
        cap: u64,
    },
    /// Basic polyhedra with n crossings.
    EnumPolyhedra {
        n: usize,
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: usize,
    },
    /// Minimal palette sweep over lune-free diagrams of a knot.
    Alg1 {
        #[arg(long)]
        knot: String,
        #[arg(long = "mod", value_name = "P")]
        p: u64,
        #[arg(long = "max-n", value_name = "N")]
        n_max: usize,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Minimal palette over the crossing-change orbit of a diagram.
    Alg2 {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        knot: String,
        #[arg(long = "mod", value_name = "P")]
        p: u64,
    },
    /// Least crossing number of a lune-free diagram of a knot.
    Lfc {
        #[arg(long)]
        knot: String,
        #[arg(long = "max-n", value_name = "N")]
        n_max: usize,
        #[command(flatten)]
        sweep: SweepArgs,
    },
}

#[derive(clap::Args, Debug)]
struct Input {
    /// Diagram file, JSON or `X e0 e1 e2 e3 s` lines; `-` reads stdin.
    #[arg(long = "in", value_name = "PATH")]
    path: PathBuf,
}

#[derive(clap::Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value_t = DEFAULT_SWEEP_CAP)]
    cap: usize,
    /// Resume from and save progress to this file.
    #[arg(long, value_name = "PATH")]
    checkpoint: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Cap(String),
    PostCheck(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 3,
            Failure::Cap(_) => 4,
            Failure::PostCheck(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Cap(m) | Failure::PostCheck(m) => m,
        }
    }
}

fn input(e: impl Display) -> Failure {
    Failure::Input(e.to_string())
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        input(e)
    }
}

impl From<ColoringError> for Failure {
    fn from(e: ColoringError) -> Self {
        input(e)
    }
}

impl From<LhError> for Failure {
    fn from(e: LhError) -> Self {
        input(e)
    }
}

impl From<RefError> for Failure {
    fn from(e: RefError) -> Self {
        input(e)
    }
}

impl From<GreyError> for Failure {
    fn from(e: GreyError) -> Self {
        match e {
            GreyError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            GreyError::BadPrime(_) => input(e),
        }
    }
}

impl From<EnumError> for Failure {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            EnumError::TooSmall => input(e),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            SearchError::Grey(g) => g.into(),
            _ => input(e),
        }
    }
}

impl From<RewriteError> for Failure {
    fn from(e: RewriteError) -> Self {
        match e {
            RewriteError::PostCheck(_) | RewriteError::NoProgress { .. } => Failure::PostCheck(e.to_string()),
            _ => input(e),
        }
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("results serialize to JSON")
}

fn read_text(path: &Path) -> Result<String, Failure> {
    let mut s = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s).map_err(input)?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

fn read_diagram(i: &Input) -> Result<Diagram, Failure> {
    Ok(parse_diagram(&read_text(&i.path)?)?)
}

/// A p-coloring to start the rewrite from: the minimal-palette witness.
fn colored(d: Diagram, p: u64) -> Result<ColoredDiagram, Failure> {
    let c = min_palette(&d, p)?.witness;
    Ok(ColoredDiagram::new(d, c)?)
}

fn sweep_options(n_max: usize, s: &SweepArgs) -> SweepOptions {
    SweepOptions { n_max, cap: s.cap, checkpoint: s.checkpoint.clone() }
}

struct Request {
    command: &'static str,
    params: Value,
    diagram: Option<Diagram>,
}

/// Parses the inputs and builds the canonical parameters the cache key is
/// computed from. Diagrams enter in normalized JSON, so formatting of the
/// input file does not matter.
fn request(cli: &Cli) -> Result<Request, Failure> {
    let reference = match &cli.reference {
        Some(p) => Value::String(hex::encode(Sha256::digest(read_text(p)?.as_bytes()))),
        None => Value::Null,
    };
    let (command, mut params, input) = match &cli.cmd {
        Cmd::Parse(i) => ("parse", json!({}), Some(i)),
        Cmd::Faces(i) => ("faces", json!({}), Some(i)),
        Cmd::Lunes(i) => ("lunes", json!({}), Some(i)),
        Cmd::Tassels(i) => ("tassels", json!({}), Some(i)),
        Cmd::Invariants(i) => ("invariants", json!({ "reference": reference }), Some(i)),
        Cmd::Color { input, modulus } => ("color", json!({ "mod": modulus }), Some(input)),
        Cmd::MinPalette { input, p } => ("min-palette", json!({ "mod": p }), Some(input)),
        Cmd::Delunify { input, p, strategy } => {
            ("delunify", json!({ "mod": p, "strategy": strategy.to_string() }), Some(input))
        }
        Cmd::CompareStrategies { n_max } => ("compare-strategies", json!({ "max": n_max }), None),
        Cmd::Lh { n } => ("lh", json!({ "n": n }), None),
        Cmd::TorusBound { p } => ("torus-bound", json!({ "p": p }), None),
        Cmd::Grey { p, cap } => ("grey", json!({ "p": p, "cap": cap }), None),
        Cmd::EnumPolyhedra { n, cap } => ("enum-polyhedra", json!({ "n": n, "cap": cap }), None),
        Cmd::Alg1 { knot, p, n_max, sweep } => (
            "alg1",
            json!({ "knot": knot, "mod": p, "max_n": n_max, "cap": sweep.cap, "reference": reference }),
            None,
        ),
        Cmd::Alg2 { input, knot, p } => ("alg2", json!({ "knot": knot, "mod": p, "reference": reference }), Some(input)),
        Cmd::Lfc { knot, n_max, sweep } => {
            ("lfc", json!({ "knot": knot, "max_n": n_max, "cap": sweep.cap, "reference": reference }), None)
        }
    };
    let diagram = input.map(read_diagram).transpose()?;
    if let Some(d) = &diagram {
        params["diagram"] = to_value(d);
    }
    Ok(Request { command, params, diagram })
}

fn table(cli: &Cli) -> Result<ReferenceTable, Failure> {
    match &cli.reference {
        Some(p) => Ok(load_reference(p)?),
        None => Ok(ReferenceTable::bundled().clone()),
    }
}

fn poly_string(p: impl Display) -> Value {
    Value::String(p.to_string())
}

fn compute(cli: &Cli, d: Option<Diagram>) -> Result<Value, Failure> {
    let d = || d.clone().expect("diagram commands read their input");
    Ok(match &cli.cmd {
        Cmd::Parse(_) => {
            let d = d();
            json!({
                "crossings": d.crossing_count(),
                "components": d.component_count(),
                "arcs": d.arcs().len(),
                "writhe": d.writhe(),
                "diagram": to_value(&d),
            })
        }
        Cmd::Faces(_) => {
            let fs = faces(&d());
            let mut degrees: Vec<usize> = fs.iter().map(|f| f.degree()).collect();
            degrees.sort_unstable();
            json!({ "count": fs.len(), "degrees": degrees, "faces": to_value(&fs) })
        }
        Cmd::Lunes(_) => {
            let ls = detect_lunes(&d());
            json!({ "count": ls.len(), "lunes": to_value(&ls) })
        }
        Cmd::Tassels(_) => {
            let ts = detect_maximal_tassels(&d());
            json!({ "count": ts.len(), "sites": to_value(&ts) })
        }
        Cmd::Invariants(_) => {
            let d = d();
            let f = normalized_f_sweep(&d);
            let jones = f.to_jones().map(|j| {
                j.iter().map(|(e, c)| json!([e, c])).collect::<Vec<_>>()
            });
            let recognition = table(cli)?.recognize_fingerprint(&Fingerprint::of(&d));
            json!({
                "crossings": d.crossing_count(),
                "components": d.component_count(),
                "writhe": d.writhe(),
                "determinant": determinant(&d),
                "normalized_f": poly_string(&f),
                "jones": jones,
                "recognition": recognition.label(),
            })
        }
        Cmd::Color { modulus, .. } => {
            let d = d();
            let basis = match coloring_space(&d, *modulus) {
                Ok(b) => Some(b),
                Err(ColoringError::NotPrime(_)) => None,
                Err(e) => return Err(e.into()),
            };
            json!({
                "mod": modulus,
                "count": count_colorings(&d, *modulus).to_string(),
                "dimension": basis.as_ref().map(Vec::len),
                "basis": basis,
            })
        }
        Cmd::MinPalette { p, .. } => {
            let r = min_palette(&d(), *p)?;
            json!({
                "mod": p,
                "size": r.size,
                "palette": r.witness.palette(),
                "witness": r.witness.colors,
                "dimension": r.dimension,
                "classes": r.classes,
            })
        }
        Cmd::Delunify { p, strategy, .. } => {
            let out = delunify(&colored(d(), *p)?, *strategy)?;
            let lunes = detect_lunes(&out.result.diagram).len();
            let mut v = to_value(&out);
            v["lunes_after"] = json!(lunes);
            v["palette"] = to_value(out.result.palette());
            v
        }
        Cmd::CompareStrategies { n_max } => to_value(compare_strategies(*n_max)?),
        Cmd::Lh { n } => to_value(lh_sequence(*n)?),
        Cmd::TorusBound { p } => json!({ "p": p, "bound": torus_bound(*p)? }),
        Cmd::Grey { p, cap } => to_value(grey_index_with_cap(*p, *cap)?),
        Cmd::EnumPolyhedra { n, cap } => {
            let ps = enumerate_basic_polyhedra_with_cap(*n, *cap)?;
            json!({ "n": n, "count": ps.len(), "polyhedra": to_value(&ps) })
        }
        Cmd::Alg1 { knot, p, n_max, sweep } => {
            to_value(algorithm1(&table(cli)?, knot, *p, &sweep_options(*n_max, sweep))?)
        }
        Cmd::Alg2 { knot, p, .. } => to_value(algorithm2(&table(cli)?, &d(), knot, *p)?),
        Cmd::Lfc { knot, n_max, sweep } => to_value(lfc_search(&table(cli)?, knot, &sweep_options(*n_max, sweep))?),
    })
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Top-level fields as `key  value` lines with the keys padded to one width;
/// nested values are printed as compact JSON.
fn render_text(v: &Value) -> String {
    let Value::Object(m) = v else {
        return scalar(v) + "\n";
    };
    let width = m.keys().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in m {
        out += &format!("{k:<width$}  {}\n", scalar(v));
    }
    out
}

fn render(v: &Value, f: Format) -> String {
    match f {
        Format::Json => serde_json::to_string_pretty(v).expect("values serialize") + "\n",
        Format::Text => render_text(v),
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let req = request(cli)?;
    let cache = if cli.no_cache {
        None
    } else {
        cli.cache_dir.clone().or_else(cache::default_dir).and_then(|dir| match Cache::open(&dir) {
            Ok(c) => Some(c),
            Err(e) => {
                eprintln!("warning: cache disabled, cannot use {}: {e}", dir.display());
                None
            }
        })
    };
    let value = match cache {
        // Checkpointed sweeps manage their own state on disk.
        Some(c) if !has_checkpoint(cli) => {
            c.get_or_compute(req.command, &req.params, || compute(cli, req.diagram.clone()))?.0
        }
        _ => compute(cli, req.diagram.clone())?,
    };
    Ok(render(&value, cli.format))
}

fn has_checkpoint(cli: &Cli) -> bool {
    matches!(&cli.cmd, Cmd::Alg1 { sweep, .. } | Cmd::Lfc { sweep, .. } if sweep.checkpoint.is_some())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
