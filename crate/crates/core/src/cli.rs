//! Command dispatch for the `futaki` binary. `run` returns the rendered
//! output and exit status instead of printing, so it can be tested directly.
//!
//! Exit codes: 0 success, 1 mathematical failure (invalid or incomplete fan,
//! not almost Fano, self-test or expected-value mismatch), 2 I/O or parse
//! failure.

use std::ffi::OsString;
use std::fmt::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde_json::{json, Value};

use crate::catalog::{self, CatalogEntry, Expected, Orientation, Provenance};
use crate::exact::{self, QVec, Rat};
use crate::fan::{self, Fan, ValidationReport};
use crate::fano::{self, FanoError, HPolytope};
use crate::futaki::{self, EmbeddingData, FutakiError, TorusField};
use crate::geometry::{self, MomentData, VPolytope};
use crate::io::{self, Document};

pub const DEFAULT_MC_SEED: u64 = 42;
pub const MC_SEED_ENV: &str = "FUTAKI_MC_SEED";
const SELFTEST_TRIALS: usize = 100;
const SELFTEST_SEED: u64 = 7;
const CONTAINMENT_EPS: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "futaki", version, about = "Anticanonical polytopes, barycentres and Futaki invariants of toric Fano varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the fan axioms, completeness, simpliciality and smoothness.
    Validate {
        /// Catalog name or path to a fan JSON file.
        target: String,
        #[arg(long)]
        json: bool,
    },
    /// Anticanonical polytope, exact barycentre and Re F.
    Analyze {
        /// Catalog name or path to a fan or vertex JSON file.
        target: Option<String>,
        #[arg(long)]
        polytope: bool,
        #[arg(long)]
        barycentre: bool,
        /// Comma-separated torus coefficients, e.g. "1,-1/2+3i,0". Repeatable.
        #[arg(long, value_name = "ETA")]
        futaki: Vec<String>,
        #[arg(long)]
        embedding: bool,
        #[arg(long)]
        selftest: bool,
        /// Use the fan even when a printed vertex list exists.
        #[arg(long, conflicts_with = "from_vertices")]
        from_fan: bool,
        /// Vertex JSON describing the polytope directly, skipping the fan stages.
        #[arg(long, value_name = "PATH")]
        from_vertices: Option<String>,
        /// Vertex input lists conv{k_σ} rather than P_{-K}.
        #[arg(long)]
        negated: bool,
        /// Monte-Carlo cross-check with this many samples.
        #[arg(long, value_name = "SAMPLES")]
        mc: Option<u64>,
        /// Agreement threshold for Monte-Carlo checks, in standard errors.
        #[arg(long, default_value_t = 3.0)]
        tolerance: f64,
        /// Maximum gradient self-test error.
        #[arg(long, default_value_t = 1e-6)]
        selftest_tolerance: f64,
        #[arg(long)]
        json: bool,
    },
    /// List the built-in catalog.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Write a catalog entry (or file) in one of the JSON formats or as OFF.
    Export {
        target: String,
        #[arg(value_enum, default_value_t = ExportFormat::Fan)]
        format: ExportFormat,
        #[arg(long)]
        from_fan: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Fan,
    Polytope,
    Inequalities,
    Off,
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }
}

#[derive(Debug)]
enum Fail {
    /// Exit code 1.
    Math(String),
    /// Exit code 2.
    Input(String),
}

impl From<io::IoError> for Fail {
    fn from(e: io::IoError) -> Self {
        Fail::Input(e.to_string())
    }
}

impl From<FutakiError> for Fail {
    fn from(e: FutakiError) -> Self {
        match e {
            FutakiError::Parse(_) | FutakiError::RankMismatch { .. } => Fail::Input(e.to_string()),
            FutakiError::Fano(f) => f.into(),
        }
    }
}

impl From<FanoError> for Fail {
    fn from(e: FanoError) -> Self {
        match e {
            FanoError::NotAlmostFano(r) => Fail::Math(format!(
                "not almost Fano: non-extremal cones {:?}, coincident cones {:?}, non-convex (cone, ray) {:?}",
                r.non_extremal_cones, r.coincident_cones, r.non_convex
            )),
            other => Fail::Math(other.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let result = match cli.command {
        Command::Validate { target, json } => validate(&target, json),
        Command::Analyze {
            target,
            polytope,
            barycentre,
            futaki,
            embedding,
            selftest,
            from_fan,
            from_vertices,
            negated,
            mc,
            tolerance,
            selftest_tolerance,
            json,
        } => {
            let opts = AnalyzeOptions {
                polytope,
                barycentre,
                futaki,
                embedding,
                selftest,
                from_fan,
                from_vertices,
                negated,
                mc,
                tolerance,
                selftest_tolerance,
                json,
            };
            analyze(target.as_deref(), &opts)
        }
        Command::List { json } => Ok((list(json), 0)),
        Command::Export { target, format, from_fan } => export(&target, format, from_fan).map(|s| (s, 0)),
    };
    match result {
        Ok((stdout, code)) => Outcome { stdout, stderr: String::new(), code },
        Err(Fail::Math(m)) => Outcome { stdout: String::new(), stderr: format!("error: {m}\n"), code: 1 },
        Err(Fail::Input(m)) => Outcome { stdout: String::new(), stderr: format!("error: {m}\n"), code: 2 },
    }
}

/// MC seed from the environment, or the default.
pub fn mc_seed() -> Result<u64, String> {
    match std::env::var(MC_SEED_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| format!("{MC_SEED_ENV}={s:?} is not an unsigned integer")),
        Err(_) => Ok(DEFAULT_MC_SEED),
    }
}

fn fmt_vec(v: &QVec) -> String {
    v.to_string()
}

fn rat_json(r: &Rat) -> Value {
    Value::String(exact::format_rat(r))
}

fn vec_json(v: &QVec) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

enum Input {
    Fan(Fan, Option<&'static CatalogEntry>),
    Polytope(VPolytope, Option<&'static CatalogEntry>),
}

fn load_document(path: &str) -> Result<Document, Fail> {
    let text = io::read_to_string(Path::new(path))?;
    Ok(io::parse_document(&text)?)
}

fn fan_for_entry(e: &'static CatalogEntry) -> Result<&'static Fan, Fail> {
    e.fan().ok_or_else(|| Fail::Input(format!("catalog entry {} has no fan", e.name)))
}

fn unknown_target(target: &str) -> Fail {
    Fail::Input(format!("{target}: no such file or catalog entry (try `futaki list`)"))
}

// --- validate ---------------------------------------------------------------

fn validate(target: &str, json: bool) -> Result<(String, i32), Fail> {
    let fan = match catalog::entry(target) {
        Some(e) => fan_for_entry(e)?.clone(),
        None if Path::new(target).exists() => match load_document(target)? {
            Document::Fan(f) => f,
            Document::Vertices(_) => return Err(Fail::Input(format!("{target}: expected a fan, found a vertex list"))),
        },
        None => return Err(unknown_target(target)),
    };
    let report = fan::validate_fan(&fan).map_err(|e| Fail::Input(e.to_string()))?;
    let code = if report.axioms_ok && report.complete { 0 } else { 1 };
    let out = if json {
        to_json_string(&json!({
            "name": fan.name(),
            "rank": fan.rank(),
            "rays": fan.rays().len(),
            "max_cones": fan.max_cones().len(),
            "report": report,
        }))
    } else {
        render_validation(&fan, &report)
    };
    Ok((out, code))
}

fn render_validation(f: &Fan, r: &ValidationReport) -> String {
    let mut s = String::new();
    let yes = |b: bool| if b { "yes" } else { "no" };
    writeln!(s, "fan {}: rank {}, {} rays, {} maximal cones", f.name().unwrap_or("<unnamed>"), f.rank(), f.rays().len(), f.max_cones().len()).unwrap();
    writeln!(s, "axioms:     {}", if r.axioms_ok { "ok" } else { "VIOLATED" }).unwrap();
    writeln!(s, "complete:   {}", yes(r.complete)).unwrap();
    writeln!(s, "simplicial: {}", yes(r.simplicial)).unwrap();
    writeln!(s, "smooth:     {}", yes(r.smooth)).unwrap();
    for v in &r.violations {
        writeln!(s, "  - {}", describe_violation(f, v)).unwrap();
    }
    s
}

fn cone_label(f: &Fan, ci: usize) -> String {
    let rays: Vec<String> = f.max_cones()[ci].ray_indices.iter().map(|&i| fmt_vec(&f.rays()[i])).collect();
    format!("cone {ci} <{}>", rays.join(", "))
}

fn describe_violation(f: &Fan, v: &fan::Violation) -> String {
    use fan::Violation::*;
    match v {
        DuplicateRay { rays: (a, b) } => format!("rays {a} and {b} coincide"),
        UnusedRay { ray } => format!("ray {ray} lies in no maximal cone"),
        DuplicateCone { cones: (a, b) } => format!("duplicate cone: {} repeats cone {a}", cone_label(f, *b)),
        NotStronglyConvex { cone } => format!("{} contains a line", cone_label(f, *cone)),
        NonExtremalGenerator { cone, ray } => format!("ray {ray} is not extremal in {}", cone_label(f, *cone)),
        BadIntersection { cones: (a, b) } => {
            format!("{} and {} do not meet in a common face", cone_label(f, *a), cone_label(f, *b))
        }
        LowerDimensionalCone { cone, dim } => format!("{} has dimension {dim}", cone_label(f, *cone)),
        UnpairedFacet { cone, facet_rays, shared_by } => format!(
            "completeness: facet {:?} of {} is shared by cones {:?}",
            facet_rays,
            cone_label(f, *cone),
            shared_by
        ),
        SingularCone { cone, multiplicity } => format!(
            "{} is singular (multiplicity {})",
            cone_label(f, *cone),
            multiplicity.as_deref().unwrap_or("n/a, not simplicial")
        ),
    }
}

// --- analyze ----------------------------------------------------------------

struct AnalyzeOptions {
    polytope: bool,
    barycentre: bool,
    futaki: Vec<String>,
    embedding: bool,
    selftest: bool,
    from_fan: bool,
    from_vertices: Option<String>,
    negated: bool,
    mc: Option<u64>,
    tolerance: f64,
    selftest_tolerance: f64,
    json: bool,
}

fn resolve_input(target: Option<&str>, o: &AnalyzeOptions) -> Result<Input, Fail> {
    let entry = target.and_then(catalog::entry);
    let orient = |p: VPolytope| if o.negated { p.negated() } else { p };
    if let Some(path) = &o.from_vertices {
        if let (Some(t), None) = (target, entry) {
            return Err(unknown_target(t));
        }
        return match load_document(path)? {
            Document::Vertices(p) => Ok(Input::Polytope(orient(p), entry)),
            Document::Fan(_) => Err(Fail::Input(format!("{path}: expected a vertex list, found a fan"))),
        };
    }
    let target = target.ok_or_else(|| Fail::Input("analyze needs a target or --from-vertices".into()))?;
    if let Some(e) = entry {
        if !o.from_fan {
            if let Some(p) = e.anticanonical_from_vertices() {
                return Ok(Input::Polytope(p, Some(e)));
            }
        }
        return Ok(Input::Fan(fan_for_entry(e)?.clone(), Some(e)));
    }
    if !Path::new(target).exists() {
        return Err(unknown_target(target));
    }
    match load_document(target)? {
        Document::Fan(f) => Ok(Input::Fan(f, None)),
        Document::Vertices(p) => Ok(Input::Polytope(orient(p), None)),
    }
}

/// Route-independent data about `P_{-K}`.
struct Analysis {
    source: String,
    entry: Option<&'static CatalogEntry>,
    polytope: VPolytope,
    gorenstein: Option<fano::GorensteinData>,
    fan: Option<Fan>,
}

fn prepare(input: Input) -> Result<Analysis, Fail> {
    match input {
        Input::Polytope(p, entry) => Ok(Analysis {
            source: match entry {
                Some(e) if e.has_vertex_list() => format!("{}: printed vertex list", e.name),
                _ => "vertex list".into(),
            },
            entry,
            polytope: p,
            gorenstein: None,
            fan: None,
        }),
        Input::Fan(f, entry) => {
            let report = fan::validate_fan(&f).map_err(|e| Fail::Input(e.to_string()))?;
            if !report.axioms_ok {
                return Err(Fail::Math("fan axioms violated; run `futaki validate` for details".to_string()));
            }
            if !report.complete {
                return Err(Fail::Math("fan is incomplete; run `futaki validate` for details".to_string()));
            }
            let (g, p) = fano::anticanonical_data(&f)?;
            let source = match entry {
                Some(e) => match &e.fan {
                    Some((_, Provenance::Derived)) if e.printed_fan.is_some() => format!("{}: reconciled fan", e.name),
                    _ => format!("{}: fan", e.name),
                },
                None => "fan".into(),
            };
            Ok(Analysis { source, entry, polytope: p, gorenstein: Some(g), fan: Some(f) })
        }
    }
}

/// Outcome of comparing an expected barycentre with the computed moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BarycentreMatch {
    /// Equal to the Euclidean barycentre.
    Exact,
    /// Equal to `∫ y dy / degree`, i.e. the barycentre divided by `n!`.
    FirstMomentsOverDegree,
    Mismatch,
}

impl BarycentreMatch {
    fn label(self) -> &'static str {
        match self {
            BarycentreMatch::Exact => "exact match",
            BarycentreMatch::FirstMomentsOverDegree => "matches first moments / degree (barycentre / n!)",
            BarycentreMatch::Mismatch => "MISMATCH",
        }
    }
}

/// Compares `expected` against the moments of `P_{-K}`.
pub fn compare_barycentre(m: &MomentData, expected: &Expected) -> BarycentreMatch {
    let sign = match expected.orientation {
        Orientation::Anticanonical => Rat::one(),
        Orientation::Negated => -Rat::one(),
    };
    let bary = m.barycentre.scale(&sign);
    let normalized = m.first_moments.scale(&(sign / m.normalized_volume()));
    if bary == expected.barycentre {
        BarycentreMatch::Exact
    } else if normalized == expected.barycentre {
        BarycentreMatch::FirstMomentsOverDegree
    } else {
        BarycentreMatch::Mismatch
    }
}

fn expected_in_orientation(m: &MomentData, e: &Expected) -> (QVec, QVec) {
    let sign = match e.orientation {
        Orientation::Anticanonical => Rat::one(),
        Orientation::Negated => -Rat::one(),
    };
    (m.barycentre.scale(&sign), m.first_moments.scale(&(sign / m.normalized_volume())))
}

fn source_tag(p: Provenance) -> &'static str {
    match p {
        Provenance::Printed => "printed",
        Provenance::Derived => "derived",
    }
}

fn orientation_label(o: Orientation) -> &'static str {
    match o {
        Orientation::Anticanonical => "P_{-K}",
        Orientation::Negated => "conv{k_sigma} = -P_{-K}",
    }
}

/// Embedding data for the analysis: from the fan when there is one, else from
/// the smallest dilation of the polytope with integral vertices.
fn embedding_for(a: &Analysis) -> Result<EmbeddingData, Fail> {
    match &a.fan {
        Some(f) => Ok(futaki::build_embedding(f)?),
        None => {
            let k = a
                .polytope
                .vertices()
                .iter()
                .flat_map(|v| v.iter().map(|x| x.denom().clone()).collect::<Vec<_>>())
                .fold(BigInt::one(), |acc, d| acc.lcm(&d));
            Ok(EmbeddingData::from_polytope(&a.polytope, k).map_err(Fail::from)?)
        }
    }
}

fn analyze(target: Option<&str>, o: &AnalyzeOptions) -> Result<(String, i32), Fail> {
    let fields = o
        .futaki
        .iter()
        .map(|s| TorusField::parse(s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(Fail::from)?;
    let seed = if o.mc.is_some() { mc_seed().map_err(Fail::Input)? } else { DEFAULT_MC_SEED };
    let a = prepare(resolve_input(target, o)?)?;
    for eta in &fields {
        if eta.rank() != a.polytope.rank() {
            return Err(FutakiError::RankMismatch { expected: a.polytope.rank(), found: eta.rank() }.into());
        }
    }
    let report = futaki::analyze_anticanonical(&a.polytope, &fields)?;
    let m = &report.moments;
    let all = !(o.polytope || o.barycentre || !o.futaki.is_empty() || o.embedding || o.selftest || o.mc.is_some());
    let mut code = 0;
    let mut text = String::new();
    let mut js = serde_json::Map::new();
    writeln!(text, "source: {}", a.source).unwrap();
    js.insert("source".into(), json!(a.source));

    if all || o.polytope {
        let p = &a.polytope;
        writeln!(text, "P_{{-K}}: {} vertices, {} facets, volume {}, degree {}", p.vertices().len(), p.facets().len(), exact::format_rat(&m.volume), exact::format_rat(&report.degree)).unwrap();
        for v in p.vertices() {
            writeln!(text, "  vertex {}", fmt_vec(v)).unwrap();
        }
        let mut pj = json!({
            "vertices": p.vertices().iter().map(vec_json).collect::<Vec<_>>(),
            "facets": p.facets(),
            "volume": rat_json(&m.volume),
            "degree": rat_json(&report.degree),
        });
        if let Some(g) = &a.gorenstein {
            writeln!(text, "Gorenstein index {}", g.index).unwrap();
            pj["gorenstein_index"] = json!(g.index.to_string());
            pj["k_sigma"] = Value::Array(g.k_sigma.iter().map(vec_json).collect());
            if let Some(reference) = a.entry.and_then(|e| e.printed_vertices.as_ref()) {
                let b = fano::compare_k_sigma(g, reference);
                writeln!(text, "k_sigma vs printed vertex list: {} matched", b.matched).unwrap();
                for (c, k) in &b.unmatched_cones {
                    writeln!(text, "  cone {c}: k_sigma {} not in printed list", fmt_vec(k)).unwrap();
                }
                for r in &b.unmatched_reference {
                    writeln!(text, "  printed point {} has no cone", fmt_vec(r)).unwrap();
                }
                pj["k_sigma_vs_printed"] = json!(b);
            }
        }
        js.insert("polytope".into(), pj);
    }

    if all || o.barycentre {
        writeln!(text, "barycentre of P_{{-K}}: {}", fmt_vec(&m.barycentre)).unwrap();
        writeln!(text, "first moments of P_{{-K}}: {}", fmt_vec(&m.first_moments)).unwrap();
        let mut bj = json!({
            "barycentre": vec_json(&m.barycentre),
            "first_moments": vec_json(&m.first_moments),
            "volume": rat_json(&m.volume),
            "degree": rat_json(&report.degree),
        });
        if let Some(exp) = a.entry.and_then(|e| e.expected.as_ref()) {
            let verdict = compare_barycentre(m, exp);
            let (bary, normalized) = expected_in_orientation(m, exp);
            let orient = orientation_label(exp.orientation);
            if exp.orientation == Orientation::Negated {
                writeln!(text, "barycentre of {orient}: {}", fmt_vec(&bary)).unwrap();
            }
            writeln!(text, "first moments / degree of {orient}: {}", fmt_vec(&normalized)).unwrap();
            writeln!(text, "expected ({}, {orient}): {} [{}]", source_tag(exp.source), fmt_vec(&exp.barycentre), verdict.label()).unwrap();
            bj["expected"] = json!({
                "value": vec_json(&exp.barycentre),
                "orientation": exp.orientation,
                "source": exp.source,
                "verdict": format!("{verdict:?}"),
            });
            if verdict == BarycentreMatch::Mismatch {
                code = 1;
            }
        }
        js.insert("barycentre".into(), bj);
    }

    if all || !o.futaki.is_empty() {
        let n = a.polytope.rank();
        writeln!(text, "Re F(t_s d/dt_s) = (2pi)^{n} * {}", fmt_vec(&report.re_futaki_basis_factor)).unwrap();
        for v in &report.fields {
            writeln!(text, "Re F({}) = (2pi)^{n} * {} = {:.12e} [{:?}]", v.field, exact::format_rat(&v.value.rational_factor), v.value.value, v.value.sign).unwrap();
        }
        writeln!(text, "Im F = 0 on the torus").unwrap();
        js.insert(
            "futaki".into(),
            json!({
                "re_futaki_basis": report.re_futaki_basis,
                "re_futaki_basis_factor": vec_json(&report.re_futaki_basis_factor),
                "im_futaki": report.im_futaki,
                "fields": report.fields,
                "convention": report.convention,
            }),
        );
    }

    if o.embedding || o.selftest {
        let e = embedding_for(&a)?;
        writeln!(text, "embedding: k = {}, N = {}", e.k, e.ambient_dim()).unwrap();
        let mut ej = json!({ "k": e.k.to_string(), "ambient_dim": e.ambient_dim() });
        if o.embedding {
            ej["exponents"] = Value::Array(e.exponents.iter().map(vec_json).collect());
        }
        if o.selftest {
            let worst = futaki::gradient_selftest(&e, SELFTEST_TRIALS, SELFTEST_SEED);
            let slack = futaki::selftest_points(e.rank(), SELFTEST_TRIALS, SELFTEST_SEED)
                .iter()
                .map(|x| {
                    let mu = futaki::moment_map(&e, x);
                    e.facets.iter().map(|f| f.eval_f64(&mu)).fold(f64::INFINITY, f64::min)
                })
                .fold(f64::INFINITY, f64::min);
            let grad_ok = worst <= o.selftest_tolerance;
            let contained = slack >= -CONTAINMENT_EPS;
            writeln!(text, "self-test: max |df/dx - 2 mu| = {worst:.3e} ({})", if grad_ok { "ok" } else { "FAILED" }).unwrap();
            writeln!(text, "self-test: min facet slack of mu = {slack:.3e} ({})", if contained { "ok" } else { "FAILED" }).unwrap();
            ej["selftest"] = json!({
                "trials": SELFTEST_TRIALS,
                "max_gradient_error": worst,
                "min_facet_slack": slack,
                "passed": grad_ok && contained,
            });
            if !(grad_ok && contained) {
                code = 1;
            }
        }
        js.insert("embedding".into(), ej);
    }

    if let Some(samples) = o.mc {
        let est = geometry::mc_moments(&a.polytope, seed, samples).map_err(|e| Fail::Math(e.to_string()))?;
        let exact_b = m.barycentre.to_f64();
        let z: Vec<f64> = exact_b.iter().zip(&est.barycentre).zip(&est.barycentre_stderr).map(|((x, y), s)| (x - y).abs() / s).collect();
        let zmax = z.iter().copied().fold(0.0, f64::max);
        let agrees = zmax <= o.tolerance;
        writeln!(text, "monte carlo (seed {seed}, {samples} samples, {} accepted)", est.accepted).unwrap();
        writeln!(text, "  volume {:.6} +- {:.6}", est.volume, est.volume_stderr).unwrap();
        writeln!(text, "  barycentre {:?} +- {:?}", est.barycentre, est.barycentre_stderr).unwrap();
        writeln!(text, "  exact barycentre within {zmax:.2} sigma ({})", if agrees { "ok" } else { "DISAGREES" }).unwrap();
        let mut mj = json!({ "seed": seed, "estimate": est, "max_sigma_vs_exact": zmax, "agrees": agrees });
        if let Some(exp) = a.entry.and_then(|e| e.expected.as_ref()) {
            let sign = if exp.orientation == Orientation::Negated { -1.0 } else { 1.0 };
            let zexp = exp
                .barycentre
                .to_f64()
                .iter()
                .zip(&est.barycentre)
                .zip(&est.barycentre_stderr)
                .map(|((x, y), s)| (x - sign * y).abs() / s)
                .fold(0.0, f64::max);
            writeln!(text, "  expected value as barycentre: {zexp:.2} sigma ({})", if zexp <= o.tolerance { "consistent" } else { "rejected" }).unwrap();
            mj["max_sigma_vs_expected"] = json!(zexp);
        }
        if !agrees {
            code = 1;
        }
        js.insert("monte_carlo".into(), mj);
    }

    if o.json {
        js.insert("exit_code".into(), json!(code));
        Ok((to_json_string(&Value::Object(js)), code))
    } else {
        Ok((text, code))
    }
}

// --- list -------------------------------------------------------------------

fn list(json: bool) -> String {
    if json {
        let rows: Vec<Value> = catalog::all()
            .iter()
            .map(|e| {
                json!({
                    "name": e.name,
                    "description": e.description,
                    "rank": e.fan().map(Fan::rank),
                    "printed_fan": e.printed_fan.is_some(),
                    "fan": e.fan.as_ref().map(|(_, p)| source_tag(*p)),
                    "vertex_list": e.printed_vertices.as_ref().map(Vec::len),
                    "expected_barycentre": e.expected.as_ref().map(|x| json!({
                        "value": vec_json(&x.barycentre),
                        "orientation": x.orientation,
                        "source": x.source,
                    })),
                    "notes": e.notes,
                })
            })
            .collect();
        return to_json_string(&Value::Array(rows));
    }
    let mut s = String::new();
    for e in catalog::all() {
        let mut tags = Vec::new();
        if e.printed_fan.is_some() {
            tags.push("printed fan".to_string());
        }
        if let Some((_, p)) = &e.fan {
            tags.push(format!("{} fan", if e.printed_fan.is_some() { "reconciled" } else { source_tag(*p) }));
        }
        if e.has_vertex_list() {
            tags.push("vertex list".into());
        }
        if let Some(x) = &e.expected {
            tags.push(format!("expected barycentre: {}", source_tag(x.source)));
        }
        writeln!(s, "{:<11} {} [{}]", e.name, e.description, tags.join(", ")).unwrap();
        for n in &e.notes {
            writeln!(s, "{:<11}   {n}", "").unwrap();
        }
    }
    s
}

// --- export -----------------------------------------------------------------

fn export(target: &str, format: ExportFormat, from_fan: bool) -> Result<String, Fail> {
    let opts = AnalyzeOptions {
        polytope: false,
        barycentre: false,
        futaki: Vec::new(),
        embedding: false,
        selftest: false,
        from_fan,
        from_vertices: None,
        negated: false,
        mc: None,
        tolerance: 3.0,
        selftest_tolerance: 1e-6,
        json: false,
    };
    let input = resolve_input(Some(target), &opts)?;
    if format == ExportFormat::Fan {
        let f = match (catalog::entry(target), input) {
            (Some(e), _) => fan_for_entry(e)?.clone(),
            (None, Input::Fan(f, _)) => f,
            (None, Input::Polytope(..)) => return Err(Fail::Input(format!("{target} has no fan"))),
        };
        let mut s = io::fan_to_json(&f);
        s.push('\n');
        return Ok(s);
    }
    let p = prepare(input)?.polytope;
    let mut s = match format {
        ExportFormat::Polytope => io::vertices_to_json(p.vertices()),
        ExportFormat::Inequalities => io::inequalities_to_json(&HPolytope { inequalities: p.facets().to_vec() }),
        ExportFormat::Off => geometry::to_off(&p).map_err(|e| Fail::Input(e.to_string()))?,
        ExportFormat::Fan => unreachable!(),
    };
    if !s.ends_with('\n') {
        s.push('\n');
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("futaki").chain(args.iter().copied()))
    }

    #[test]
    fn validate_p3_passes() {
        let o = run_args(&["validate", "p3"]);
        assert_eq!(o.code, 0, "{o:?}");
        assert!(o.stdout.contains("axioms:     ok"));
        assert!(o.stdout.contains("complete:   yes"));
    }

    #[test]
    fn validate_printed_delta1_reports_duplicate() {
        let o = run_args(&["validate", "x1-printed"]);
        assert_eq!(o.code, 1);
        assert!(o.stdout.contains("duplicate cone"));
        assert!(o.stdout.contains("completeness"));
    }

    #[test]
    fn unknown_target_is_input_error() {
        assert_eq!(run_args(&["validate", "no-such-thing"]).code, 2);
        assert_eq!(run_args(&["frobnicate"]).code, 2);
    }

    #[test]
    fn analyze_x2_barycentre() {
        let o = run_args(&["analyze", "x2", "--barycentre"]);
        assert_eq!(o.code, 0, "{o:?}");
        assert!(o.stdout.contains("first moments / degree of conv{k_sigma} = -P_{-K}: (-1/57, -1/57, -1/57)"), "{}", o.stdout);
        assert!(o.stdout.contains("matches first moments / degree"));
    }

    #[test]
    fn analyze_p3_futaki_vanishes() {
        let o = run_args(&["analyze", "p3", "--futaki", "1,1,1"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("Re F(1,1,1) = (2pi)^3 * 0 "), "{}", o.stdout);
    }

    #[test]
    fn analyze_incomplete_is_math_failure() {
        let o = run_args(&["analyze", "x2-printed"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("incomplete"));
    }

    #[test]
    fn list_is_stable() {
        let a = run_args(&["list"]);
        assert_eq!(a, run_args(&["list"]));
        assert!(a.stdout.contains("9 vertices; printed fan lists 8 cones"));
        assert!(a.stdout.contains("derived control"));
    }

    #[test]
    fn bad_futaki_field_is_input_error() {
        assert_eq!(run_args(&["analyze", "p3", "--futaki", "1,x,1"]).code, 2);
        assert_eq!(run_args(&["analyze", "p3", "--futaki", "1,1"]).code, 2);
    }
}
