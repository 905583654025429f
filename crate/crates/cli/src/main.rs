use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Value};

use ggk_core::charideal::{
    self, char_ideal_general, classify, coefficient_assignment, complete_char_ideal, cycle_delta,
    membership_evaluations, CharIdealError, CharIdealReport, CompleteOptions, GeneralOptions, Verdict,
    K6_PRESET_ZERO, MAX_COMPLETE, MIN_COMPLETE,
};
use ggk_core::explorer::{
    self, explore_component, matches_target, parse_complex, sample_classify, standardness_report, ConcretePoly,
    ExploreOptions,
};
use ggk_core::graph::Graph;
use ggk_core::groebner::{reduced_basis, GbConfig, GroebnerBasis};
use ggk_core::poly::{parse_poly, MonomialOrder, VarUniverse};

#[derive(Parser, Debug)]
#[command(name = "ggk", version, about = "Characteristic ideals of polynomial graphs")]
struct Cli {
    /// Print the JSON report on stdout instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the report to FILE (JSON, or DOT for `explore --format dot`).
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Cap on critical pairs per Gröbner run.
    #[arg(long, global = true, value_name = "N")]
    max_pairs: Option<u64>,
    /// Wall-clock cap per Gröbner run, in seconds.
    #[arg(long, global = true, value_name = "N", env = "GGK_MAX_SECONDS")]
    max_seconds: Option<f64>,
    /// Seconds between progress lines on stderr; 0 disables them.
    #[arg(long, global = true, default_value_t = 10.0)]
    heartbeat: f64,
    /// Include wall-clock timings in JSON reports (breaks byte-identical output).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Characteristic ideal of a regular graph by the general algorithm.
    Charideal(CharidealArgs),
    /// Three-case verdict for a regular graph.
    Classify(CharidealArgs),
    /// Δ_n for the n-cycle by the rational recurrence.
    Cycles {
        #[arg(long)]
        n: usize,
    },
    /// Characteristic ideal of K_n through the symmetric reduction.
    Complete(CompleteArgs),
    /// Checks a concrete Φ against the characteristic ideal of a graph.
    Verify {
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        graph: GraphSource,
        /// Partial degree; defaults to the graph's regular degree.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Explores components of G(Φ) numerically.
    Explore(ExploreArgs),
    /// Runs a quick set of built-in checks.
    Selftest,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Graph file: vertex count, then one `i j` per edge.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    #[arg(long, value_name = "N")]
    cycle: Option<usize>,
    #[arg(long, value_name = "N")]
    complete: Option<usize>,
    #[arg(long)]
    petersen: bool,
}

#[derive(Args, Debug, Clone, Default)]
#[group(required = false, multiple = false)]
struct TargetSource {
    #[arg(long, value_name = "FILE")]
    target_graph: Option<PathBuf>,
    #[arg(long, value_name = "N")]
    target_cycle: Option<usize>,
    #[arg(long, value_name = "N")]
    target_complete: Option<usize>,
    #[arg(long)]
    target_petersen: bool,
}

#[derive(Args, Debug)]
struct CharidealArgs {
    #[command(flatten)]
    graph: GraphSource,
    /// Partial degree; defaults to the graph's regular degree.
    #[arg(long)]
    degree: Option<usize>,
    /// Add the twin equations of non-adjacent vertex pairs.
    #[arg(long)]
    twin: bool,
    /// Leave out the clique equations.
    #[arg(long)]
    no_clique: bool,
    /// Coefficients fixed to zero, e.g. `--zero a21`.
    #[arg(long, value_delimiter = ',')]
    zero: Vec<String>,
}

#[derive(Args, Debug)]
struct CompleteArgs {
    #[arg(long)]
    n: usize,
    /// Coefficients fixed to zero.
    #[arg(long, value_delimiter = ',')]
    zero: Vec<String>,
    /// For K6, fix a54 = 0.
    #[arg(long)]
    preset: bool,
    /// Re-derive the system by a linear solve and compare (n <= 4).
    #[arg(long)]
    cross_check: bool,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args, Debug)]
struct ExploreArgs {
    #[arg(long)]
    poly: String,
    /// Complex seed `a+bi`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    seed: String,
    #[command(flatten)]
    target: TargetSource,
    /// Relative residual tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    merge_tol: f64,
    /// Vertex cap; defaults to 10 |V(H)| with a target, else 256.
    #[arg(long)]
    cap: Option<usize>,
    /// Sample this many random seeds instead of exploring from --seed.
    #[arg(long)]
    seeds: Option<usize>,
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
    /// Format of the --out file.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

enum Outcome {
    Done,
    Caps,
    Negative,
}

struct Ctx {
    json: bool,
    out: Option<PathBuf>,
    timings: bool,
    gb: GbConfig,
}

impl Ctx {
    fn emit(&self, summary: &str, report: &Value, file: Option<String>) -> Result<()> {
        let pretty = serde_json::to_string_pretty(report)? + "\n";
        let mut stdout = std::io::stdout().lock();
        if self.json {
            stdout.write_all(pretty.as_bytes())?;
        } else {
            stdout.write_all(summary.as_bytes())?;
        }
        if let Some(path) = &self.out {
            write_atomic(path, file.as_deref().unwrap_or(&pretty))?;
        }
        Ok(())
    }
}

fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating file in {}", dir.display()))?;
    tmp.write_all(content.as_bytes())?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn load_graph(src: &GraphSource) -> Result<Graph> {
    if let Some(p) = &src.graph {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        return Graph::parse(&text).with_context(|| format!("parsing {}", p.display()));
    }
    if let Some(n) = src.cycle {
        return Ok(Graph::cycle(n)?);
    }
    if let Some(n) = src.complete {
        return Ok(Graph::complete(n)?);
    }
    Ok(Graph::petersen())
}

fn load_target(t: &TargetSource) -> Result<Option<Graph>> {
    let src = GraphSource {
        graph: t.target_graph.clone(),
        cycle: t.target_cycle,
        complete: t.target_complete,
        petersen: t.target_petersen,
    };
    if src.graph.is_none() && src.cycle.is_none() && src.complete.is_none() && !src.petersen {
        return Ok(None);
    }
    load_graph(&src).map(Some)
}

fn regular_degree(h: &Graph, degree: Option<usize>) -> Result<usize> {
    match (degree, h.regular_degree()) {
        (Some(d), _) => Ok(d),
        (None, Some(d)) => Ok(d),
        (None, None) => bail!("graph is not regular"),
    }
}

fn general_options(a: &CharidealArgs, gb: &GbConfig) -> GeneralOptions {
    GeneralOptions { use_clique: !a.no_clique, use_twin: a.twin, zero_vars: a.zero.clone(), gb: gb.clone() }
}

fn ideal_lines(out: &mut String, title: &str, b: &GroebnerBasis) {
    let _ = writeln!(out, "{} ({} generators):", title, b.len());
    for g in b.generators() {
        let _ = writeln!(out, "  {}", g.to_string_by(b.order()));
    }
}

fn report_summary(r: &CharIdealReport, verdict: Option<&Verdict>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph: {} vertices, {} edges, degree {}", r.graph.n(), r.graph.edge_count(), r.degree);
    let _ = writeln!(s, "pipeline: {}", r.pipeline);
    if let Some(c) = &r.caps_hit {
        let _ = writeln!(
            s,
            "caps hit: {} after {} pairs, working basis {}",
            c.kind, c.pairs_processed, c.basis_size
        );
    }
    if let Some(b) = &r.full_basis {
        let _ = writeln!(s, "full basis: {} polynomials", b.len());
    }
    if let Some(b) = &r.char_ideal {
        ideal_lines(&mut s, "characteristic ideal", b);
    }
    if let Some(b) = &r.char_ideal_x1 {
        let _ = writeln!(s, "ideal with x1: {} generators", b.len());
    }
    if let Some(f) = r.s_n_free {
        let _ = writeln!(s, "s_n free: {}", f);
    }
    if let Some(v) = verdict {
        let _ = writeln!(s, "verdict: {}", v);
    }
    s
}

fn cmd_charideal(ctx: &Ctx, a: &CharidealArgs) -> Result<Outcome> {
    let h = load_graph(&a.graph)?;
    let d = regular_degree(&h, a.degree)?;
    let r = char_ideal_general(&h, d, &general_options(a, &ctx.gb))?;
    let verdict = charideal::verdict_of(&r)?;
    ctx.emit(&report_summary(&r, Some(&verdict)), &r.to_json(Some(&verdict), ctx.timings), None)?;
    Ok(if r.caps_hit.is_some() { Outcome::Caps } else { Outcome::Done })
}

fn cmd_classify(ctx: &Ctx, a: &CharidealArgs) -> Result<Outcome> {
    let h = load_graph(&a.graph)?;
    let d = regular_degree(&h, a.degree)?;
    let c = classify(&h, d, &general_options(a, &ctx.gb))?;
    let mut s = report_summary(&c.report, Some(&c.verdict));
    let vt = match c.vertex_transitive {
        Some(b) => b.to_string(),
        None => "unknown (graph too large)".into(),
    };
    let _ = writeln!(s, "vertex-transitive: {}", vt);
    if c.inconsistent {
        s.push_str("warning: strongly polynomial verdict for a graph that is not vertex-transitive\n");
    }
    ctx.emit(&s, &c.to_json(ctx.timings), None)?;
    Ok(if c.verdict == Verdict::Inconclusive { Outcome::Caps } else { Outcome::Done })
}

fn cmd_cycles(ctx: &Ctx, n: usize) -> Result<Outcome> {
    let start = Instant::now();
    let res = match cycle_delta(n) {
        Err(CharIdealError::TooLarge(why)) => {
            let report = json!({ "n": n, "pipeline": "cycle", "caps_hit": { "kind": "size", "detail": why } });
            ctx.emit(&format!("cycle {}: too large ({})\n", n, why), &report, None)?;
            return Ok(Outcome::Caps);
        }
        other => other?,
    };
    let order = MonomialOrder::lex(res.delta.universe());
    let delta = res.delta.to_string_by(&order);
    let mut report = json!({
        "n": n,
        "pipeline": "cycle",
        "order": order.names(),
        "delta": delta,
        "terms": res.delta.len(),
        "multiplier_exponent": res.multiplier_exponent,
    });
    if ctx.timings {
        report["timings_ms"] = json!({ "total": start.elapsed().as_millis() as u64 });
    }
    let summary = format!("Delta_{} ({} terms):\n  {}\n", n, res.delta.len(), delta);
    ctx.emit(&summary, &report, None)?;
    Ok(Outcome::Done)
}

fn complete_options(a: &CompleteArgs, gb: &GbConfig) -> CompleteOptions {
    let mut zero = a.zero.clone();
    if a.preset {
        zero.extend(K6_PRESET_ZERO.iter().map(|s| s.to_string()));
    }
    CompleteOptions { gb: gb.clone(), zero_vars: zero, cross_check: a.cross_check }
}

fn cmd_complete(ctx: &Ctx, a: &CompleteArgs) -> Result<Outcome> {
    let r = complete_char_ideal(a.n, &complete_options(a, &ctx.gb))?;
    let verdict = charideal::verdict_of(&r)?;
    ctx.emit(&report_summary(&r, Some(&verdict)), &r.to_json(Some(&verdict), ctx.timings), None)?;
    Ok(if r.caps_hit.is_some() { Outcome::Caps } else { Outcome::Done })
}

/// The characteristic ideal used for membership: Δ_n for small cycles,
/// the symmetric reduction for small complete graphs, else the general
/// algorithm.
fn char_ideal_for(h: &Graph, d: usize, gb: &GbConfig) -> Result<std::result::Result<GroebnerBasis, String>> {
    let is_cycle = d == 2 && h.regular_degree() == Some(2) && h.is_connected();
    let is_complete = h.n() >= 2 && h.edge_count() == h.n() * (h.n() - 1) / 2;
    if is_complete && d + 1 == h.n() && (MIN_COMPLETE..=MAX_COMPLETE).contains(&h.n()) {
        let r = complete_char_ideal(h.n(), &CompleteOptions { gb: gb.clone(), ..Default::default() })?;
        return Ok(r.char_ideal.ok_or_else(|| "caps hit".to_string()));
    }
    if is_cycle && (3..=5).contains(&h.n()) {
        let res = cycle_delta(h.n())?;
        let order = MonomialOrder::lex(res.delta.universe());
        return Ok(Ok(reduced_basis(&[res.delta], &order, gb)?));
    }
    let r = char_ideal_general(h, d, &GeneralOptions { gb: gb.clone(), ..Default::default() })?;
    Ok(r.char_ideal.ok_or_else(|| "caps hit".to_string()))
}

fn xy_universe() -> std::sync::Arc<VarUniverse> {
    VarUniverse::new(&["x", "y"]).expect("two distinct names")
}

fn cmd_verify(ctx: &Ctx, poly: &str, src: &GraphSource, degree: Option<usize>) -> Result<Outcome> {
    let h = load_graph(src)?;
    let d = regular_degree(&h, degree)?;
    let phi = parse_poly(poly, &xy_universe()).context("parsing --poly")?;
    let coeffs = coefficient_assignment(&phi, d)?;
    let std_report = standardness_report(&phi)?;
    let ideal = match char_ideal_for(&h, d, &ctx.gb)? {
        Ok(b) => b,
        Err(why) => {
            let report = json!({ "poly": phi.to_string(), "caps_hit": why });
            ctx.emit(&format!("characteristic ideal unavailable: {}\n", why), &report, None)?;
            return Ok(Outcome::Caps);
        }
    };
    let values = membership_evaluations(&coeffs, &ideal)?;
    let member = values.iter().all(|v| v.is_zero());
    let mut s = String::new();
    for (g, v) in ideal.generators().iter().zip(&values) {
        let _ = writeln!(s, "  {} -> {}", g.to_string_by(ideal.order()), v);
    }
    let standard = std_report.is_standard();
    let verdict = match (member, standard) {
        (true, true) => "pass",
        (true, false) => "in variety, but standardness check failed",
        (false, _) => "fail",
    };
    let _ = writeln!(
        s,
        "standardness: square_free={} diagonal_nonzero={} no_univariate_factor={}",
        std_report.square_free, std_report.diagonal_nonzero, std_report.no_univariate_factor
    );
    let _ = writeln!(s, "{}", verdict);
    let report = json!({
        "poly": phi.to_string(),
        "graph": h,
        "degree": d,
        "order": ideal.order().names(),
        "evaluations": ideal.generators().iter().zip(&values).map(|(g, v)| json!({
            "generator": g.to_string_by(ideal.order()),
            "value": v.to_string(),
        })).collect::<Vec<_>>(),
        "member": member,
        "standardness": {
            "square_free": std_report.square_free,
            "diagonal_nonzero": std_report.diagonal_nonzero,
            "no_univariate_factor": std_report.no_univariate_factor,
        },
        "verdict": verdict,
    });
    ctx.emit(&s, &report, None)?;
    Ok(if member { Outcome::Done } else { Outcome::Negative })
}

fn cmd_explore(ctx: &Ctx, a: &ExploreArgs) -> Result<Outcome> {
    let phi = parse_poly(&a.poly, &xy_universe()).context("parsing --poly")?;
    let p = ConcretePoly::from_mpoly(&phi)?;
    let target = load_target(&a.target)?;
    let mut opts = match &target {
        Some(h) => ExploreOptions::for_target(h),
        None => ExploreOptions::default(),
    };
    opts.tol = a.tol;
    opts.merge_tol = a.merge_tol;
    if let Some(c) = a.cap {
        if c == 0 {
            bail!("--cap must be at least 1");
        }
        opts.cap = c;
    }
    if let Some(n) = a.seeds {
        let Some(h) = &target else {
            bail!("--seeds needs a target graph");
        };
        if n == 0 {
            bail!("--seeds must be at least 1");
        }
        let rep = sample_classify(&p, h, n, a.rng_seed, &opts)?;
        let rate = rep.match_rate.map(|r| format!("{}", r)).unwrap_or_else(|| "n/a".into());
        let s = format!(
            "seeds: {}\nclean: {}\nmatches: {}\nmatch rate: {}\nsingular: {}\ntruncated: {}\nseeds near singular locus: {}\n",
            rep.n_seeds, rep.clean, rep.matches, rate, rep.singular_count, rep.truncated_count, rep.seeds_near_singular
        );
        ctx.emit(&s, &rep.to_json(), None)?;
        return Ok(Outcome::Done);
    }
    let seed: Complex64 = parse_complex(&a.seed)?;
    let c = explore_component(&p, seed, &opts)?;
    let matched = match &target {
        Some(h) => Some(match matches_target(&c, h) {
            Ok(b) => json!(b),
            Err(explorer::ExplorerError::NotComparable(why)) => json!(format!("not comparable: {}", why)),
            Err(e) => return Err(e.into()),
        }),
        None => None,
    };
    let mut report = c.to_json();
    report["max_relative_residual"] = json!(c.max_relative_residual(&p));
    if let Some(m) = &matched {
        report["match"] = m.clone();
    }
    let dot = c.to_dot();
    let mut s = dot.clone();
    let _ = writeln!(s, "vertices: {}, edges: {}, truncated: {}", c.vertices.len(), c.edges.len(), c.truncated);
    if let Some(m) = &matched {
        let _ = writeln!(s, "match: {}", m.as_str().map(str::to_string).unwrap_or_else(|| m.to_string()));
    }
    let file = match a.format {
        Format::Dot => Some(dot),
        Format::Text => Some(s.clone()),
        Format::Json => None,
    };
    ctx.emit(&s, &report, file)?;
    Ok(Outcome::Done)
}

fn cmd_selftest(ctx: &Ctx) -> Result<Outcome> {
    let mut checks: Vec<(&str, bool)> = Vec::new();
    let gb = GbConfig { heartbeat_secs: 0.0, ..ctx.gb.clone() };

    let d3 = cycle_delta(3)?;
    let k3 = complete_char_ideal(3, &CompleteOptions { gb: gb.clone(), ..Default::default() })?;
    let same = match k3.char_ideal() {
        Ok(ci) => {
            let delta = d3.delta.transfer(ci.universe())?;
            let b = reduced_basis(&[delta], ci.order(), &gb)?;
            b.ideal_equal(ci)?
        }
        Err(_) => false,
    };
    checks.push(("cycle and complete pipelines agree on the triangle", same));

    let c3 = classify(&Graph::cycle(3)?, 2, &GeneralOptions { gb: gb.clone(), ..Default::default() })?;
    checks.push(("triangle is strongly polynomial", c3.verdict == Verdict::StronglyPolynomial));

    let u = xy_universe();
    let phi = parse_poly("x^2*y^2+x^2+y^2-x*y+2", &u)?;
    let member = match k3.char_ideal() {
        Ok(ci) => charideal::verify_membership(&coefficient_assignment(&phi, 2)?, ci)?,
        Err(_) => false,
    };
    checks.push(("triangle table polynomial lies in the variety", member));

    let p = ConcretePoly::from_mpoly(&phi)?;
    let comp = explore_component(&p, Complex64::new(0.0, 0.0), &ExploreOptions::default())?;
    let tri = matches_target(&comp, &Graph::cycle(3)?).unwrap_or(false);
    checks.push(("component of 0 is a triangle", tri));

    let mut s = String::new();
    for (name, ok) in &checks {
        let _ = writeln!(s, "{} {}", if *ok { "pass" } else { "FAIL" }, name);
    }
    let all = checks.iter().all(|c| c.1);
    let report = json!({
        "checks": checks.iter().map(|(n, ok)| json!({ "name": n, "pass": ok })).collect::<Vec<_>>(),
        "pass": all,
    });
    ctx.emit(&s, &report, None)?;
    Ok(if all { Outcome::Done } else { Outcome::Negative })
}

fn run(cli: Cli) -> Result<Outcome> {
    if cli.max_pairs == Some(0) {
        bail!("--max-pairs must be positive");
    }
    if let Some(s) = cli.max_seconds {
        if !(s > 0.0) {
            bail!("--max-seconds must be positive");
        }
    }
    let ctx = Ctx {
        json: cli.json,
        out: cli.out.clone(),
        timings: cli.timings,
        gb: GbConfig {
            max_pairs: cli.max_pairs,
            max_seconds: cli.max_seconds,
            heartbeat_secs: cli.heartbeat,
            ..Default::default()
        },
    };
    match &cli.command {
        Command::Charideal(a) => cmd_charideal(&ctx, a),
        Command::Classify(a) => cmd_classify(&ctx, a),
        Command::Cycles { n } => cmd_cycles(&ctx, *n),
        Command::Complete(a) => cmd_complete(&ctx, a),
        Command::Verify { poly, graph, degree } => cmd_verify(&ctx, poly, graph, *degree),
        Command::Explore(a) => cmd_explore(&ctx, a),
        Command::Selftest => cmd_selftest(&ctx),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Caps) => ExitCode::from(2),
        Ok(Outcome::Negative) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(1)
        }
    }
}
