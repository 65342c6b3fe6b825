//! The `gradalg` command line. Everything runs through [`run`], which returns
//! the output and exit code instead of printing, so tests can drive it
//! in-process.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use gradalg::ktheory::{
    cartan_matrix, cone_invariant, format_class, int_to_json, k0_db, k0_perf, k0_singularity, motive_triviality,
    projective_classes, smith_normal_form, CartanMatrix, GradedGroupSpec,
};
use gradalg::lemma::{fixture_sweep, load_manifest, ModuleSelector, SweepStatus, DEFAULT_J_CAP};
use gradalg::resolution::{ext_graded_from, minimal_graded_resolution, GradedResolution};
use gradalg::ungraded::ext_ungraded;
use gradalg::{validate_grading, Error, GradedAlgebra};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_DEPTH: u32 = 8;
pub const DEFAULT_IMAX: u32 = 4;

pub const EXIT_OK: u8 = 0;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_VALIDATION: u8 = 3;
pub const EXIT_PROPERTY: u8 = 4;
pub const EXIT_INCONCLUSIVE: u8 = 5;

#[derive(Parser, Debug, Clone)]
#[command(name = "gradalg", version, about = "Exact computations for graded basic quiver algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Resolution length for `resolve` [default: 8].
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub depth: Option<u32>,

    /// Highest cohomological degree for `ext` [default: 4] and `verify-lemma`
    /// (overrides the manifest).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub imax: Option<u32>,

    /// Twist window LO:HI, e.g. --jwindow=-8:2.
    #[arg(long, global = true, value_parser = parse_window, allow_hyphen_values = true)]
    pub jwindow: Option<(i64, i64)>,

    /// Graded group file, or the preset K0-only.
    #[arg(long, global = true)]
    pub spec: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Tree,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Dimension, basis by degree, Loewy length and grading check.
    Info { algebra: PathBuf },
    /// Validate the grading; exits 4 if it is not semi-simple.
    CheckGrading { algebra: PathBuf },
    /// Cartan matrix, computed two ways.
    Cartan { algebra: PathBuf },
    /// Smith normal form of the Cartan matrix.
    Snf { algebra: PathBuf },
    /// K0 of the singularity category and the cone table.
    #[command(name = "singularity-k0")]
    SingularityK0 { algebra: PathBuf },
    /// Whether every A1-invariant of the singularity category vanishes.
    Motive { algebra: PathBuf },
    /// Minimal graded projective resolution of a module such as S1 or P2(-1).
    Resolve { algebra: PathBuf, module: String },
    /// Graded and ungraded Ext between two modules.
    Ext { algebra: PathBuf, m: String, n: String },
    /// Run the decomposition check over a corpus manifest.
    #[command(name = "verify-lemma")]
    VerifyLemma { manifest: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Info { .. } => "info",
            Command::CheckGrading { .. } => "check-grading",
            Command::Cartan { .. } => "cartan",
            Command::Snf { .. } => "snf",
            Command::SingularityK0 { .. } => "singularity-k0",
            Command::Motive { .. } => "motive",
            Command::Resolve { .. } => "resolve",
            Command::Ext { .. } => "ext",
            Command::VerifyLemma { .. } => "verify-lemma",
        }
    }
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

struct Failure {
    code: u8,
    class: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, class) = match &e {
            Error::Parse(_) => (EXIT_PARSE, "parse"),
            Error::Validation(_) => (EXIT_VALIDATION, "validation"),
            Error::Hypothesis(_) => (EXIT_VALIDATION, "hypothesis"),
            Error::Consistency(_) => (EXIT_PROPERTY, "consistency"),
        };
        Failure { code, class, message: e.to_string() }
    }
}

fn usage(message: String) -> Failure {
    Failure { code: EXIT_PARSE, class: "usage", message }
}

/// Text rendering, tree payload and exit code of a successful command.
struct Report {
    text: String,
    result: Value,
    code: u8,
}

struct Context<'a> {
    cli: &'a Cli,
    inputs: Vec<Value>,
    options: BTreeMap<&'static str, Value>,
}

impl Context<'_> {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let bytes = fs::read(path).map_err(|e| Failure {
            code: EXIT_PARSE,
            class: "io",
            message: format!("{}: {e}", path.display()),
        })?;
        self.inputs.push(json!({ "path": path.display().to_string(), "sha256": sha256_hex(&bytes) }));
        String::from_utf8(bytes).map_err(|_| Failure {
            code: EXIT_PARSE,
            class: "parse",
            message: format!("{}: not UTF-8", path.display()),
        })
    }

    fn algebra(&mut self, path: &Path) -> Result<Arc<GradedAlgebra>, Failure> {
        let text = self.read(path)?;
        Ok(Arc::new(GradedAlgebra::from_text(&text)?))
    }

    fn spec(&mut self) -> Result<GradedGroupSpec, Failure> {
        let name = self.cli.spec.clone().unwrap_or_else(|| "K0-only".to_string());
        self.options.insert("spec", json!(name));
        if let Some(preset) = GradedGroupSpec::preset(&name) {
            return Ok(preset);
        }
        let text = self.read(Path::new(&name))?;
        Ok(GradedGroupSpec::parse(&text)?)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Runs one invocation.
pub fn run(cli: &Cli) -> Outcome {
    let mut ctx = Context { cli, inputs: Vec::new(), options: BTreeMap::new() };
    let outcome = check_flags(cli).and_then(|()| dispatch(&mut ctx));
    let command = cli.command.name();
    match outcome {
        Ok(report) => {
            let stdout = match cli.format {
                Format::Text => ensure_newline(report.text),
                Format::Tree => tree(json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": command,
                    "provenance": { "inputs": ctx.inputs, "options": ctx.options },
                    "result": report.result,
                })),
            };
            Outcome { stdout, stderr: String::new(), code: report.code }
        }
        Err(f) => {
            let stdout = match cli.format {
                Format::Text => String::new(),
                Format::Tree => tree(json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": command,
                    "provenance": { "inputs": ctx.inputs, "options": ctx.options },
                    "error": { "class": f.class, "message": f.message },
                })),
            };
            Outcome { stdout, stderr: format!("error: {}", f.message), code: f.code }
        }
    }
}

fn tree(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// Rejects flags that the chosen subcommand does not read.
fn check_flags(cli: &Cli) -> Result<(), Failure> {
    let name = cli.command.name();
    let allowed: &[&str] = match cli.command {
        Command::Info { .. } | Command::CheckGrading { .. } => &[],
        Command::Cartan { .. } | Command::Snf { .. } | Command::SingularityK0 { .. } | Command::Motive { .. } => {
            &["spec"]
        }
        Command::Resolve { .. } => &["depth"],
        Command::Ext { .. } | Command::VerifyLemma { .. } => &["imax", "jwindow"],
    };
    let given = [
        ("depth", cli.depth.is_some()),
        ("imax", cli.imax.is_some()),
        ("jwindow", cli.jwindow.is_some()),
        ("spec", cli.spec.is_some()),
    ];
    for (flag, set) in given {
        if set && !allowed.contains(&flag) {
            return Err(usage(format!("--{flag} does not apply to {name}")));
        }
    }
    Ok(())
}

fn dispatch(ctx: &mut Context) -> Result<Report, Failure> {
    match ctx.cli.command.clone() {
        Command::Info { algebra } => info(ctx, &algebra),
        Command::CheckGrading { algebra } => check_grading(ctx, &algebra),
        Command::Cartan { algebra } => cartan(ctx, &algebra),
        Command::Snf { algebra } => snf(ctx, &algebra),
        Command::SingularityK0 { algebra } => singularity(ctx, &algebra),
        Command::Motive { algebra } => motive(ctx, &algebra),
        Command::Resolve { algebra, module } => resolve(ctx, &algebra, &module),
        Command::Ext { algebra, m, n } => ext(ctx, &algebra, &m, &n),
        Command::VerifyLemma { manifest } => verify_lemma(ctx, &manifest),
    }
}

fn info(ctx: &mut Context, path: &Path) -> Result<Report, Failure> {
    let alg = ctx.algebra(path)?;
    let pres = alg.presentation();
    let grading = validate_grading(&alg);
    let radical_dim = alg.radical_power(1).dim();
    let arrows: Vec<String> = pres
        .quiver
        .arrows
        .iter()
        .map(|a| {
            format!(
                "{}: {} -> {} (deg {})",
                a.name,
                pres.quiver.vertices[a.source],
                pres.quiver.vertices[a.target],
                a.degree
            )
        })
        .collect();
    let basis: Vec<String> = (0..alg.dim()).map(|i| alg.path_name(i)).collect();
    let dims = alg.degree_dims();

    let mut t = String::new();
    writeln!(t, "field: {}", alg.field()).unwrap();
    writeln!(t, "vertices (n = {}): {}", alg.vertex_count(), pres.quiver.vertices.join(", ")).unwrap();
    if arrows.is_empty() {
        writeln!(t, "arrows: none").unwrap();
    } else {
        writeln!(t, "arrows:").unwrap();
        for a in &arrows {
            writeln!(t, "  {a}").unwrap();
        }
    }
    writeln!(t, "relations: {}", pres.relations.len()).unwrap();
    writeln!(t, "dim: {}", alg.dim()).unwrap();
    let by_degree: Vec<String> = dims.iter().enumerate().map(|(d, c)| format!("{d}:{c}")).collect();
    writeln!(t, "basis by degree: {}", by_degree.join(" ")).unwrap();
    writeln!(t, "basis: {}", basis.join(", ")).unwrap();
    writeln!(t, "radical dim: {radical_dim}").unwrap();
    writeln!(t, "Loewy length: {}", alg.loewy_length()).unwrap();
    write!(t, "grading: {}", if grading.passes() { "ok" } else { "FAILED" }).unwrap();

    let result = json!({
        "field": alg.field().to_string(),
        "vertices": pres.quiver.vertices,
        "n": alg.vertex_count(),
        "arrows": pres.quiver.arrows.iter().map(|a| json!({
            "name": a.name,
            "source": pres.quiver.vertices[a.source],
            "target": pres.quiver.vertices[a.target],
            "degree": a.degree,
        })).collect::<Vec<_>>(),
        "relations": pres.relations.len(),
        "dim": alg.dim(),
        "degree_dims": dims,
        "basis": basis,
        "radical_dim": radical_dim,
        "loewy_length": alg.loewy_length(),
        "grading_ok": grading.passes(),
    });
    Ok(Report { text: t, result, code: EXIT_OK })
}

fn check_grading(ctx: &mut Context, path: &Path) -> Result<Report, Failure> {
    let alg = ctx.algebra(path)?;
    let r = validate_grading(&alg);
    let yes = |b: bool| if b { "yes" } else { "NO" };
    let mut t = String::new();
    writeln!(t, "non-negative degrees: {}", yes(r.nonnegative)).unwrap();
    writeln!(t, "degree 0 spanned by trivial paths: {}", yes(r.degree_zero_is_trivial_paths)).unwrap();
    writeln!(t, "complete orthogonal idempotents: {}", yes(r.complete_idempotents)).unwrap();
    writeln!(t, "positive part nilpotent: {} (order {})", yes(r.positive_part_nilpotent), r.nilpotency_order).unwrap();
    writeln!(t, "quotient is k^{}: {}", r.vertex_count, yes(r.quotient_semisimple)).unwrap();
    writeln!(t, "positive part is the radical: {} (dim {})", yes(r.positive_part_is_radical), r.positive_part_dim)
        .unwrap();
    write!(t, "grading: {}", if r.passes() { "semi-simple" } else { "FAILED" }).unwrap();
    let mut result = serde_json::to_value(&r).expect("report serializes");
    result["passes"] = json!(r.passes());
    Ok(Report { text: t, result, code: if r.passes() { EXIT_OK } else { EXIT_PROPERTY } })
}

fn cartan_of(ctx: &mut Context, path: &Path) -> Result<(Arc<GradedAlgebra>, CartanMatrix), Failure> {
    let alg = ctx.algebra(path)?;
    let c = cartan_matrix(&alg)?;
    Ok((alg, c))
}

fn cartan(ctx: &mut Context, path: &Path) -> Result<Report, Failure> {
    let (alg, c) = cartan_of(ctx, path)?;
    let classes = projective_classes(&alg)?;
    let lines: Vec<String> = classes.iter().enumerate().map(|(i, cl)| format_class(&alg, i, cl)).collect();
    let mut t = String::new();
    writeln!(t, "Cartan matrix (row i = composition factors of P_i), vertices {}", c.labels().join(", ")).unwrap();
    write!(t, "{}", c.matrix()).unwrap();
    writeln!(t, "routes agree: dim e_i A e_j = composition series of P_i").unwrap();
    writeln!(t, "sum of entries = dim = {}", alg.dim()).unwrap();
    writeln!(t, "K0(Perf) basis {}, K0(Db) basis {}", k0_perf(&alg).basis.join(" "), k0_db(&alg).basis.join(" "))
        .unwrap();
    for l in &lines {
        writeln!(t, "{l}").unwrap();
    }
    let mut result = json!({
        "cartan": c.to_json(),
        "routes_agree": true,
        "dim": alg.dim(),
        "k0_perf": k0_perf(&alg).basis,
        "k0_db": k0_db(&alg).basis,
        "projective_classes": lines,
    });
    if ctx.cli.spec.is_some() {
        let spec = ctx.spec()?;
        let cone = cone_invariant(c.matrix(), &spec);
        write!(t, "{cone}").unwrap();
        result["cone"] = cone.to_json();
    }
    Ok(Report { text: t, result, code: EXIT_OK })
}

fn snf(ctx: &mut Context, path: &Path) -> Result<Report, Failure> {
    let (_, c) = cartan_of(ctx, path)?;
    let d = smith_normal_form(c.matrix());
    d.verify(c.matrix()).map_err(Error::Consistency)?;
    let factors: Vec<String> = d.diagonal().iter().map(ToString::to_string).collect();
    let mut t = String::new();
    write!(t, "C =\n{}", c.matrix()).unwrap();
    write!(t, "U =\n{}", d.u).unwrap();
    write!(t, "V =\n{}", d.v).unwrap();
    write!(t, "D = U C V =\n{}", d.d).unwrap();
    write!(t, "diagonal: {}", factors.join(" ")).unwrap();
    let mut result = json!({
        "c": c.matrix().to_json(),
        "u": d.u.to_json(),
        "v": d.v.to_json(),
        "d": d.d.to_json(),
        "diagonal": d.diagonal().iter().map(int_to_json).collect::<Vec<_>>(),
    });
    if ctx.cli.spec.is_some() {
        let cone = cone_invariant(c.matrix(), &ctx.spec()?);
        write!(t, "\n{cone}").unwrap();
        result["cone"] = cone.to_json();
    }
    Ok(Report { text: t, result, code: EXIT_OK })
}

fn singularity(ctx: &mut Context, path: &Path) -> Result<Report, Failure> {
    let (_, c) = cartan_of(ctx, path)?;
    let g = k0_singularity(c.matrix());
    let spec = ctx.spec()?;
    let cone = cone_invariant(c.matrix(), &spec);
    let text = format!("K0(Dsg) = {g}\n{cone}");
    let result = json!({
        "k0_singularity": g.to_json(),
        "spec": spec.to_json(),
        "cone": cone.to_json(),
    });
    Ok(Report { text, result, code: EXIT_OK })
}

fn motive(ctx: &mut Context, path: &Path) -> Result<Report, Failure> {
    let (_, c) = cartan_of(ctx, path)?;
    let v = motive_triviality(c.matrix());
    let spec = ctx.spec()?;
    let cone = cone_invariant(c.matrix(), &spec);
    let text = format!("{v}\n{cone}");
    let result = json!({ "verdict": v.to_json(), "spec": spec.to_json(), "cone": cone.to_json() });
    Ok(Report { text, result, code: EXIT_OK })
}

fn betti_text(res: &GradedResolution) -> String {
    let table = res.betti_table();
    let mut t = String::new();
    if table.is_empty() {
        return "Betti table: empty\n".to_string();
    }
    // columns are twists j = -degree
    let lo = table.keys().map(|&(_, d)| -d).min().unwrap();
    let hi = table.keys().map(|&(_, d)| -d).max().unwrap();
    write!(t, "{:>4} |", "i\\j").unwrap();
    for j in lo..=hi {
        write!(t, "{j:>4}").unwrap();
    }
    writeln!(t).unwrap();
    writeln!(t, "{}", "-".repeat(6 + 4 * (hi - lo + 1) as usize)).unwrap();
    for i in 0..res.term_count() {
        write!(t, "{i:>4} |").unwrap();
        for j in lo..=hi {
            match table.get(&(i, -j)) {
                Some(b) => write!(t, "{b:>4}").unwrap(),
                None => write!(t, "{:>4}", ".").unwrap(),
            }
        }
        writeln!(t).unwrap();
    }
    t
}

fn resolve(ctx: &mut Context, path: &Path, module: &str) -> Result<Report, Failure> {
    let depth = ctx.cli.depth.unwrap_or(DEFAULT_DEPTH) as usize;
    ctx.options.insert("depth", json!(depth));
    ctx.options.insert("module", json!(module));
    let alg = ctx.algebra(path)?;
    let m = module.parse::<ModuleSelector>()?.build(&alg)?;
    let res = minimal_graded_resolution(&m, depth);
    let summary = res.summary();

    let mut t = String::new();
    writeln!(t, "minimal graded resolution of {module}, depth {depth}").unwrap();
    for (i, term) in summary.terms.iter().enumerate() {
        let parts: Vec<String> = term
            .iter()
            .map(|g| if g.twist == 0 { format!("P{}", g.vertex) } else { format!("P{}({})", g.vertex, g.twist) })
            .collect();
        writeln!(t, "P^{i} = {}", if parts.is_empty() { "0".to_string() } else { parts.join(" + ") }).unwrap();
    }
    match summary.projective_dimension {
        Some(p) => writeln!(t, "projective dimension: {p}").unwrap(),
        None => writeln!(t, "projective dimension: > {depth}").unwrap(),
    }
    let yes = |b: bool| if b { "yes" } else { "NO" };
    writeln!(t, "complex: {}, exact: {}, minimal: {}", yes(summary.complex), yes(summary.exact), yes(summary.minimal))
        .unwrap();
    writeln!(t, "Betti numbers (rows i, columns twist j):").unwrap();
    t.push_str(&betti_text(&res));

    let betti: Vec<Value> =
        res.betti_table().iter().map(|(&(i, d), &b)| json!({ "i": i, "twist": -d, "count": b })).collect();
    let result = json!({
        "module": module,
        "resolution": serde_json::to_value(&summary).expect("summary serializes"),
        "betti": betti,
    });
    let certified = summary.complex && summary.exact && summary.minimal;
    Ok(Report { text: t, result, code: if certified { EXIT_OK } else { EXIT_PROPERTY } })
}

fn ext(ctx: &mut Context, path: &Path, ms: &str, ns: &str) -> Result<Report, Failure> {
    let i_max = ctx.cli.imax.unwrap_or(DEFAULT_IMAX) as usize;
    ctx.options.insert("imax", json!(i_max));
    ctx.options.insert("modules", json!([ms, ns]));
    if let Some(w) = ctx.cli.jwindow {
        ctx.options.insert("jwindow", json!([w.0, w.1]));
    }
    let alg = ctx.algebra(path)?;
    let m = ms.parse::<ModuleSelector>()?.build(&alg)?;
    let n = ns.parse::<ModuleSelector>()?.build(&alg)?;
    let res = minimal_graded_resolution(&m, i_max + 1);
    let table = ext_graded_from(&res, &n, i_max, ctx.cli.jwindow)?;
    let ungraded = ext_ungraded(&m, &n, i_max);

    let mut t = String::new();
    writeln!(t, "dim Ext^i_gr({ms}, {ns}(j)), j in [{}, {}]", table.j_window.0, table.j_window.1).unwrap();
    write!(t, "{table}").unwrap();
    for (i, u) in ungraded.iter().enumerate() {
        writeln!(t, "i = {i}: sum over window {}, ungraded {u}", table.row_sum(i)).unwrap();
    }
    let result = json!({
        "m": ms,
        "n": ns,
        "graded": serde_json::to_value(&table).expect("table serializes"),
        "row_sums": (0..=i_max).map(|i| table.row_sum(i)).collect::<Vec<_>>(),
        "ungraded": ungraded,
    });
    Ok(Report { text: t, result, code: EXIT_OK })
}

fn verify_lemma(ctx: &mut Context, path: &Path) -> Result<Report, Failure> {
    // hash the manifest itself, then each algebra it names
    ctx.read(path)?;
    let mut cases = load_manifest(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    for case in &cases {
        if let Ok(bytes) = fs::read(base.join(&case.name)) {
            ctx.inputs.push(json!({ "path": case.name, "sha256": sha256_hex(&bytes) }));
        }
    }
    if let Some(i) = ctx.cli.imax {
        ctx.options.insert("imax", json!(i));
        for c in &mut cases {
            c.i_max = i as usize;
        }
    }
    if let Some(w) = ctx.cli.jwindow {
        ctx.options.insert("jwindow", json!([w.0, w.1]));
        for c in &mut cases {
            c.j_window = Some(w);
        }
    }
    ctx.options.insert("j_cap", json!(DEFAULT_J_CAP));
    let report = fixture_sweep(&cases, DEFAULT_J_CAP);
    let code = match report.status {
        SweepStatus::Pass => EXIT_OK,
        SweepStatus::Fail => EXIT_PROPERTY,
        SweepStatus::InputError => EXIT_VALIDATION,
        SweepStatus::Inconclusive => EXIT_INCONCLUSIVE,
    };
    let result = serde_json::to_value(&report).expect("sweep report serializes");
    Ok(Report { text: report.to_string(), result, code })
}
