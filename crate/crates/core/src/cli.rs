//! The `peria` command line.
//!
//! Every command prints one report: the command line, a SHA-256 digest of each input file, the
//! results, the bounds used, and warnings. Exit codes: 0 success, 1 domain error, 2 usage error.

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::cayley::{
    contraction_profile, explore_ball, hyperplane_type_and_label, skewer_witness, BallOptions, GenMode, DEFAULT_MAX_VERTICES,
    DEFAULT_SAMPLE_CAP,
};
use crate::classify::{
    acylindrically_hyperbolic, centraliser_of_rot, contracting_exists, disjoint_coset_exists, element_contracting_gp,
    element_morse_gp, is_finite, omega_fibers, virtually_abelian,
};
use crate::coxeter::{classify as classify_coxeter, CoxeterDiagram};
use crate::error::{Error, Result};
use crate::graphcore::{check_axioms, qm_closure, quasi_cubulate, FiniteGraph, PartitionSpace, DEFAULT_ORIENTATION_BOUND};
use crate::growth::{
    asymptotic_diagnostic, conjugacy_growth, rate_estimate, series_product, spherical_growth, sphere_sizes_within,
    transcendence_verdict, ConjugacyMethod, GrowthSeries,
};
use crate::presentation::{gp_cox_decomposition, parse_raw, star2_decomposition, PeriagroupPresentation, VertexSet};
use crate::words::{Word, Words, DEFAULT_CLASS_BOUND};

#[derive(Debug, Parser)]
#[command(name = "peria", version, about = "Periagroups, their Cayley graphs and mediangle geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Debug, Args)]
struct Opts {
    /// Ball radius.
    #[arg(long, global = true)]
    radius: Option<usize>,
    /// Largest length for growth series.
    #[arg(long = "max-n", global = true)]
    max_n: Option<usize>,
    /// Extra radius for saturation.
    #[arg(long, global = true, default_value_t = 2)]
    slack: usize,
    /// Conjugacy counting method: exact-gp or saturation.
    #[arg(long, global = true, default_value = "saturation")]
    method: String,
    /// Generating set: full or S.
    #[arg(long, global = true)]
    gens: Option<String>,
    /// Comma-separated involutions forced into the Coxeter part.
    #[arg(long = "force-cox", global = true, default_value = "")]
    force_cox: String,
    /// Resource bound of the command (ball vertices, move-class size or orientations).
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Exponent cap for infinite cyclic groups in full mode.
    #[arg(long, global = true)]
    cap: Option<i64>,
    /// Seed for sampled centres.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Centre of the ball, as a word.
    #[arg(long, global = true)]
    center: Option<String>,
    /// Growth rate used by the asymptotic diagnostic.
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Emit JSON (default).
    #[arg(long, global = true, conflicts_with = "tsv")]
    json: bool,
    /// Emit tab-separated `key<TAB>value` lines.
    #[arg(long, global = true)]
    tsv: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a presentation file.
    Check { file: String },
    /// Canonical form of a word.
    Nf { file: String, word: String },
    /// Whether two words represent the same element.
    Eq { file: String, a: String, b: String },
    /// Syllable length and S-length of a word.
    Len { file: String, word: String },
    /// Explore a ball of the Cayley graph.
    Ball { file: String },
    /// Hyperplanes of a ball, with their types.
    Hyperplanes { file: String },
    /// Finiteness, contracting elements, acylindrical hyperbolicity.
    ClassifyGroup { file: String },
    /// Whether an element of a graph product is contracting.
    ClassifyElement { file: String, word: String },
    /// Whether an element of a graph product is Morse.
    Morse { file: String, word: String },
    /// Conjugacy growth series.
    ConjGrowth { file: String },
    /// Spherical growth series.
    Growth { file: String },
    /// Product of two series (comma-separated or files).
    SeriesProduct { a: String, b: String },
    /// Paraclique, mediangle and quasi-median checks of a `.graph` file.
    GraphCheck { file: String },
    /// Quasi-median closure of a `.graph` file.
    QmClosure { file: String },
    /// Quasi-cubulation of a `.parts` file.
    QuasiCubulate { file: String },
    /// Projections of balls onto an orbit.
    ContractionProfile { file: String, word: String },
    /// A skewering hyperplane for an element.
    SkewerWitness { file: String, word: String },
    /// Classify a `.cox` diagram or an all-involution presentation.
    CoxeterClassify { file: String },
    /// Fibers of the labelling map onto the graph-product part.
    Omega { file: String },
    /// Vertices generating the centraliser of the rotation subgroup.
    CentraliserRot { file: String },
    /// Disjoint cosets `g⟨Λ₁⟩ ∩ ⟨Λ₂⟩ = ∅` in the Coxeter part (vertex lists comma-separated, `-` for empty).
    DisjointCosets { file: String, lambda1: String, lambda2: String },
}

/// Exit code with the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Serialize)]
struct Input {
    path: String,
    sha256: String,
}

#[derive(Debug, Serialize)]
struct Report {
    command: Vec<String>,
    inputs: Vec<Input>,
    results: Value,
    certification: BTreeMap<String, Value>,
    warnings: Vec<String>,
}

struct Ctx {
    inputs: Vec<Input>,
    certification: BTreeMap<String, Value>,
    warnings: Vec<String>,
    /// Set when the results are produced but must not be accepted.
    failed: bool,
    table: Option<String>,
}

impl Ctx {
    fn read(&mut self, path: &str) -> Result<String> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Precondition(format!("cannot read `{path}`: {e}")))?;
        self.inputs.push(Input { path: path.into(), sha256: format!("{:x}", Sha256::digest(text.as_bytes())) });
        Ok(text)
    }

    fn presentation(&mut self, path: &str) -> Result<PeriagroupPresentation> {
        parse_raw(&self.read(path)?)?.build()
    }

    fn certify(&mut self, key: &str, v: impl Serialize) {
        self.certification.insert(key.into(), serde_json::to_value(v).expect("serializable"));
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn vertex_list(p: &PeriagroupPresentation, text: &str) -> Result<VertexSet> {
    text.split(',').map(str::trim).filter(|t| !t.is_empty() && *t != "-").map(|t| p.index_of(t)).collect()
}

fn words_with_bound<'p>(p: &'p PeriagroupPresentation, o: &Opts) -> Words<'p> {
    Words::with_bound(p, o.bound.unwrap_or(DEFAULT_CLASS_BOUND))
}

fn gen_mode(o: &Opts, default: GenMode) -> Result<GenMode> {
    o.gens.as_deref().map_or(Ok(default), str::parse)
}

fn series_arg(ctx: &mut Ctx, arg: &str) -> Result<GrowthSeries> {
    if std::path::Path::new(arg).is_file() {
        let text = ctx.read(arg)?;
        let line = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty()).unwrap_or("");
        GrowthSeries::parse(line)
    } else {
        GrowthSeries::parse(arg)
    }
}

fn ball_opts(ctx: &mut Ctx, o: &Opts, default_radius: usize, default_mode: GenMode) -> Result<BallOptions> {
    let opts = BallOptions {
        radius: o.radius.unwrap_or(default_radius),
        mode: gen_mode(o, default_mode)?,
        exponent_cap: o.cap,
        max_vertices: o.bound.unwrap_or(DEFAULT_MAX_VERTICES),
    };
    ctx.certify("radius", opts.radius);
    ctx.certify("gens", opts.mode);
    ctx.certify("max_vertices", opts.max_vertices);
    if let Some(c) = opts.exponent_cap {
        ctx.certify("exponent_cap", c);
    }
    Ok(opts)
}

fn execute(cmd: &Command, o: &Opts, ctx: &mut Ctx) -> Result<Value> {
    match cmd {
        Command::Check { file } => {
            let raw = parse_raw(&ctx.read(file)?)?;
            let report = raw.validate();
            if !report.ok() {
                ctx.failed = true;
                return Ok(json!({ "valid": false, "checks": report.entries }));
            }
            let p = raw.build()?;
            let all = p.vertices();
            let name = |f: &[usize]| f.iter().map(|&v| p.name(v).to_string()).collect::<Vec<_>>();
            let factors: Vec<Vec<String>> = star2_decomposition(p.graph(), &all).factors.iter().map(|f| name(f)).collect();
            let split = gp_cox_decomposition(&p, &all, &vertex_list(&p, &o.force_cox)?)?;
            Ok(json!({
                "valid": true,
                "checks": report.entries,
                "vertices": p.len(),
                "edges": p.graph().edges().len(),
                "graph_product": p.is_graph_product(),
                "coxeter": p.is_coxeter(),
                "star2_factors": factors,
                "gp_part": name(&split.gp.iter().copied().collect::<Vec<_>>()),
                "coxeter_part": name(&split.cox.iter().copied().collect::<Vec<_>>()),
            }))
        }
        Command::Nf { file, word } => {
            let p = ctx.presentation(file)?;
            let w = words_with_bound(&p, o);
            let nf = w.canonical_form(&w.parse_word(word)?)?;
            Ok(json!({
                "input": word,
                "canonical": w.format_word(nf.word()),
                "syllables": nf.len(),
                "s_length": w.word_length_s(nf.word())?,
            }))
        }
        Command::Eq { file, a, b } => {
            let p = ctx.presentation(file)?;
            let w = words_with_bound(&p, o);
            let (x, y) = (w.canonical_form(&w.parse_word(a)?)?, w.canonical_form(&w.parse_word(b)?)?);
            Ok(json!({ "equal": x == y, "canonical": [w.format_word(x.word()), w.format_word(y.word())] }))
        }
        Command::Len { file, word } => {
            let p = ctx.presentation(file)?;
            let w = words_with_bound(&p, o);
            let g = w.parse_word(word)?;
            Ok(json!({ "syllable_length": w.graphically_reduce(&g)?.len(), "s_length": w.word_length_s(&g)? }))
        }
        Command::Ball { file } => {
            let p = ctx.presentation(file)?;
            let opts = ball_opts(ctx, o, 3, GenMode::Full)?;
            let words = Words::new(&p);
            let center = o.center.as_deref().map_or(Ok(Word::empty()), |c| words.parse_word(c))?;
            let ball = explore_ball(&p, &center, opts)?;
            ctx.table = Some(ball.vertex_table(&p));
            if ball.capped {
                ctx.warnings.push("infinite vertex groups truncated to the exponent cap".into());
            }
            Ok(json!({
                "center": words.format_word(ball.center.word()),
                "vertices": ball.len(),
                "edges": ball.graph().edge_count(),
                "sphere_sizes": ball.sphere_sizes(),
                "capped": ball.capped,
            }))
        }
        Command::Hyperplanes { file } => {
            let p = ctx.presentation(file)?;
            let opts = ball_opts(ctx, o, 3, GenMode::Full)?;
            let words = Words::new(&p);
            let ball = explore_ball(&p, &Word::empty(), opts)?;
            let hs = ball.hyperplanes()?;
            let mut rows = Vec::new();
            let mut tsv = String::from("hyperplane\tlabels\tright\tcarrier_in_star_coset\tsectors\n");
            for j in 0..hs.len() {
                let t = hyperplane_type_and_label(&words, &ball, &hs, j)?;
                let labels: Vec<&str> = t.labels.iter().map(|&v| p.name(v)).collect();
                let sectors: Vec<usize> = hs.hyperplanes[j].sectors.iter().map(Vec::len).collect();
                tsv += &format!(
                    "{j}\t{}\t{}\t{}\t{}\n",
                    labels.join(","),
                    t.right,
                    t.carrier_in_star_coset.map_or("-".to_string(), |b| b.to_string()),
                    sectors.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
                );
                rows.push(json!({
                    "labels": labels,
                    "right": t.right,
                    "carrier_in_star_coset": t.carrier_in_star_coset,
                    "sector_sizes": sectors,
                }));
            }
            ctx.table = Some(tsv);
            Ok(json!({ "ball_vertices": ball.len(), "hyperplanes": rows }))
        }
        Command::ClassifyGroup { file } => {
            let p = ctx.presentation(file)?;
            let finite = is_finite(&p)?;
            let contracting = contracting_exists(&p)?;
            let acylhyp = acylindrically_hyperbolic(&p)?;
            let va = virtually_abelian(&p)?;
            let tr = transcendence_verdict(&p)?;
            ctx.certify("rate_margin", crate::growth::RATE_MARGIN);
            Ok(json!({
                "summary": {
                    "finite": finite.verdict,
                    "contracting": contracting.verdict,
                    "acylhyp": acylhyp.verdict,
                    "virtually_abelian": va.verdict,
                    "transcendental_conjugacy_growth": tr.verdict,
                },
                "finite": finite,
                "contracting": contracting,
                "acylhyp": acylhyp,
                "virtually_abelian": va,
                "transcendence": tr,
            }))
        }
        Command::ClassifyElement { file, word } | Command::Morse { file, word } => {
            let p = ctx.presentation(file)?;
            let g = Words::new(&p).parse_word(word)?;
            let r = match cmd {
                Command::Morse { .. } => element_morse_gp(&p, &g)?,
                _ => element_contracting_gp(&p, &g)?,
            };
            Ok(to_value(r))
        }
        Command::ConjGrowth { file } => {
            let p = ctx.presentation(file)?;
            let n = o.max_n.unwrap_or(6);
            let method = match o.method.parse()? {
                ConjugacyMethod::Saturation { .. } => ConjugacyMethod::Saturation { slack: o.slack },
                m => m,
            };
            ctx.certify("max_n", n);
            ctx.certify("method", method.tag());
            let r = conjugacy_growth(&p, n, method)?;
            if r.stable == Some(false) {
                ctx.failed = true;
                ctx.warnings.push(format!("unstable: slack {} and {} give different counts", o.slack, o.slack + 1));
            }
            if r.cross_checked == Some(false) {
                ctx.failed = true;
                ctx.warnings.push("exact-gp and saturation disagree".into());
            }
            if r.cross_checked.is_none() && matches!(method, ConjugacyMethod::ExactGp) {
                ctx.warnings.push("saturation cross-check skipped: ball too large".into());
            }
            ctx.table = Some(r.series.to_string() + "\n");
            let mut v = to_value(&r);
            v["series_text"] = json!(r.series.to_string());
            if let Some(alpha) = o.alpha {
                v["asymptotics"] = to_value(asymptotic_diagnostic(&r.series, alpha, 1, n));
            }
            Ok(v)
        }
        Command::Growth { file } => {
            let p = ctx.presentation(file)?;
            let n = o.max_n.unwrap_or(8);
            let mode = gen_mode(o, GenMode::S)?;
            ctx.certify("max_n", n);
            ctx.certify("gens", mode);
            let s = spherical_growth(&p, n, mode)?;
            ctx.table = Some(s.to_string() + "\n");
            let rate = match mode {
                GenMode::S => rate_estimate(&sphere_sizes_within(&p, n, o.bound.unwrap_or(DEFAULT_MAX_VERTICES))?),
                GenMode::Full => rate_estimate(&s),
            };
            Ok(json!({ "series": s, "series_text": s.to_string(), "rate": rate }))
        }
        Command::SeriesProduct { a, b } => {
            let (x, y) = (series_arg(ctx, a)?, series_arg(ctx, b)?);
            if x.coefficients.len() != y.coefficients.len() {
                ctx.warnings.push("truncations differ; the product is cut to the shorter one".into());
            }
            let s = series_product(&x, &y);
            ctx.table = Some(s.to_string() + "\n");
            Ok(json!({ "series": s, "series_text": s.to_string() }))
        }
        Command::GraphCheck { file } => {
            let g = FiniteGraph::parse(&ctx.read(file)?)?;
            Ok(to_value(check_axioms(&g)?))
        }
        Command::QmClosure { file } => {
            let g = FiniteGraph::parse(&ctx.read(file)?)?;
            let c = qm_closure(&g)?;
            if !c.checks.all() {
                ctx.failed = true;
                ctx.warnings.push("a structural check of the closure failed".into());
            }
            ctx.table = Some(c.graph.to_text());
            Ok(json!({
                "vertices": c.graph.len(),
                "edges": c.graph.edge_count(),
                "embedding": c.embedding,
                "checks": c.checks,
                "graph": c.graph.to_text(),
            }))
        }
        Command::QuasiCubulate { file } => {
            let ps = PartitionSpace::parse(&ctx.read(file)?)?;
            let bound = o.bound.unwrap_or(DEFAULT_ORIENTATION_BOUND);
            ctx.certify("orientation_bound", bound);
            let q = quasi_cubulate(&ps, bound)?;
            ctx.table = Some(q.graph.to_text());
            Ok(json!({
                "vertices": q.graph.len(),
                "edges": q.graph.edge_count(),
                "principal": q.principal,
                "hyperplane_of_partition": q.hyperplane_of_partition,
                "graph": q.graph.to_text(),
            }))
        }
        Command::ContractionProfile { file, word } => {
            let p = ctx.presentation(file)?;
            let g = Words::new(&p).parse_word(word)?;
            let radius = o.radius.unwrap_or(4);
            let cap = o.bound.unwrap_or(DEFAULT_SAMPLE_CAP);
            ctx.certify("radius", radius);
            ctx.certify("sample_cap", cap);
            ctx.certify("seed", o.seed);
            ctx.warnings.push("diagnostic on a finite ball, not a proof".into());
            Ok(to_value(contraction_profile(&p, &g, radius, cap, o.seed)?))
        }
        Command::SkewerWitness { file, word } => {
            let p = ctx.presentation(file)?;
            let g = Words::new(&p).parse_word(word)?;
            let radius = o.radius.unwrap_or(4);
            ctx.certify("radius", radius);
            let w = skewer_witness(&p, &g, radius)?;
            Ok(json!({ "found": w.is_some(), "witness": w }))
        }
        Command::CoxeterClassify { file } => {
            let text = ctx.read(file)?;
            let (d, names) = if text.lines().any(|l| l.trim_start().starts_with("coxeter")) {
                let d = CoxeterDiagram::parse(&text)?;
                let names: Vec<String> = (0..d.n).map(|i| i.to_string()).collect();
                (d, names)
            } else {
                let p = parse_raw(&text)?.build()?;
                let (d, verts) = CoxeterDiagram::from_presentation(&p, &p.vertices())?;
                (d, verts.iter().map(|&v| p.name(v).to_string()).collect())
            };
            let c = classify_coxeter(&d, true)?;
            if c.components.iter().any(|x| x.agree == Some(false)) {
                ctx.failed = true;
                ctx.warnings.push("table type and Gram signature disagree".into());
            }
            let comps: Vec<Value> = c
                .components
                .iter()
                .map(|x| {
                    json!({
                        "vertices": x.vertices.iter().map(|&v| names[v].clone()).collect::<Vec<_>>(),
                        "type": x.kind.name(),
                        "class": if x.kind.is_spherical() { "spherical" } else if x.kind.is_affine() { "affine" } else { "other" },
                        "gram": x.gram,
                        "agree": x.agree,
                    })
                })
                .collect();
            Ok(json!({ "spherical": c.is_spherical(), "components": comps }))
        }
        Command::Omega { file } => {
            let p = ctx.presentation(file)?;
            Ok(to_value(omega_fibers(&p, &vertex_list(&p, &o.force_cox)?)?))
        }
        Command::CentraliserRot { file } => {
            let p = ctx.presentation(file)?;
            Ok(to_value(centraliser_of_rot(&p, &vertex_list(&p, &o.force_cox)?)?))
        }
        Command::DisjointCosets { file, lambda1, lambda2 } => {
            let p = ctx.presentation(file)?;
            let psi = gp_cox_decomposition(&p, &p.vertices(), &vertex_list(&p, &o.force_cox)?)?.cox;
            let psi = if psi.is_empty() && p.is_coxeter() { p.vertices() } else { psi };
            let r = disjoint_coset_exists(&p, &psi, &vertex_list(&p, lambda1)?, &vertex_list(&p, lambda2)?)?;
            if r.verified == Some(false) {
                ctx.failed = true;
                ctx.warnings.push("enumeration contradicts the factor rule".into());
            }
            let psi_names: Vec<&str> = psi.iter().map(|&v| p.name(v)).collect();
            let mut v = to_value(r);
            v["psi"] = json!(psi_names);
            Ok(v)
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") }, x, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = a.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}\t{}\n", parts.join(",")));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, out);
            }
        }
        _ => out.push_str(&format!("{prefix}\t{}\n", scalar(v).replace('\n', "\\n"))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Runs one command line (including the program name) and returns what the binary would print.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut ctx = Ctx { inputs: Vec::new(), certification: BTreeMap::new(), warnings: Vec::new(), failed: false, table: None };
    let results = match execute(&cli.command, &cli.opts, &mut ctx) {
        Ok(v) => v,
        Err(e) => return Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let code = i32::from(ctx.failed);
    let stderr: String = ctx.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    if cli.opts.tsv {
        let mut out = String::new();
        match &ctx.table {
            Some(t) => out.push_str(t),
            None => flatten("", &results, &mut out),
        }
        return Outcome { code, stdout: out, stderr };
    }
    let report = Report { command: argv[1..].to_vec(), inputs: ctx.inputs, results, certification: ctx.certification, warnings: ctx.warnings };
    let mut stdout = serde_json::to_string_pretty(&report).expect("serializable");
    stdout.push('\n');
    Outcome { code, stdout, stderr }
}
