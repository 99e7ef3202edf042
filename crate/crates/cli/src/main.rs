use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use lmc_core::facets::{self, Verdict, VwCutContext};
use lmc_core::generate::{self, GenSpec};
use lmc_core::io::{self as lio, PairJson};
use lmc_core::lifting::{self, EdgeLabeling, LiftedPair};
use lmc_core::polytope::{self, FaceOracle, InequalityTag, LinearInequality, VectorSet};
use lmc_core::solver::{self, CostFunction, Solution};
use lmc_core::verify::{self, Suite};
use lmc_core::{EdgeSubset, Error};

#[derive(Parser)]
#[command(
    name = "lmc",
    version,
    about = "Lifted multicuts: feasibility, polytope dimension, facets and solving"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for generators and random costs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run enumeration on inputs above the node guard (see LMC_MAX_NODES).
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Bnb,
    Greedy,
}

/// Where the pair comes from. Exactly one of FILE, --fixture, --gen.
#[derive(Args, Clone, Debug)]
struct Input {
    /// Pair or instance JSON file; `-` reads stdin.
    file: Option<PathBuf>,
    /// A shipped fixture by name.
    #[arg(long, conflicts_with = "file")]
    fixture: Option<String>,
    /// A generator spec, e.g. "random n=5 p=0.6 lift=0.5".
    #[arg(long, conflicts_with_all = ["file", "fixture"])]
    gen: Option<String>,
}

#[derive(Args, Clone, Debug)]
struct InequalityArg {
    /// Canonical tag, e.g. "path(f=1,2;P=1-0-2)".
    #[arg(long)]
    tag: Option<String>,
    /// Inequality JSON file.
    #[arg(long, conflicts_with = "tag")]
    inequality: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a 0/1 labeling of E' is a lifted multicut.
    Check {
        #[command(flatten)]
        input: Input,
        /// Bitstring over E' in canonical edge order.
        #[arg(short = 'x', long)]
        labeling: String,
    },
    /// Lift a multicut of G to G'.
    Lift {
        #[command(flatten)]
        input: Input,
        /// Bitstring over E in canonical edge order.
        #[arg(short = 'm', long)]
        multicut: String,
    },
    /// List every lifted multicut.
    Enumerate {
        #[command(flatten)]
        input: Input,
    },
    /// Affine dimension of the polytope, or of the face of an inequality.
    Dim {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        ineq: InequalityArg,
    },
    /// Compare the predicate verdict for an inequality with the brute-force oracle.
    FacetCheck {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        ineq: InequalityArg,
    },
    /// Minimum cost lifted multicut.
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
    },
    /// Emit a generated pair.
    Gen {
        spec: String,
        /// Attach random integer costs in [-N, N].
        #[arg(long)]
        costs: Option<i64>,
    },
    /// Predicate-versus-oracle suites. Without an input, runs the shipped fixtures.
    Verify {
        #[command(flatten)]
        input: Input,
        /// One suite; all suites when omitted.
        #[arg(long)]
        suite: Option<String>,
        /// Seeded random pairs added to the shipped set.
        #[arg(long, default_value_t = 50)]
        random: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InstanceTooLarge { .. } => Failure::Guard(format!(
                "{e}; pass --force or raise {}",
                solver::MAX_NODES_ENV
            )),
            other => Failure::Input(other.to_string()),
        }
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

struct Loaded {
    pair: LiftedPair,
    costs: Option<CostFunction>,
    /// Shipped fixtures skip the node guard.
    shipped: bool,
}

struct Output {
    result: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    negative: bool,
    extra_timing: Option<(&'static str, f64)>,
}

impl Output {
    fn new(result: Value) -> Self {
        Output {
            result,
            header: Vec::new(),
            rows: Vec::new(),
            negative: false,
            extra_timing: None,
        }
    }

    fn table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.header = header;
        self.rows = rows;
        self
    }

    fn negative(mut self, yes: bool) -> Self {
        self.negative = yes;
        self
    }
}

struct Ctx {
    seed: u64,
    force: bool,
    hasher: Sha256,
}

impl Ctx {
    fn read(&mut self, path: &PathBuf) -> CmdResult<String> {
        let mut text = String::new();
        if path.as_os_str() == "-" {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        } else {
            text = fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        }
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn load(&mut self, input: &Input) -> CmdResult<Loaded> {
        if let Some(name) = &input.fixture {
            self.hasher.update(format!("fixture:{name}").as_bytes());
            let fx = generate::fixture(name)?;
            return Ok(Loaded {
                pair: fx.pair,
                costs: fx.costs,
                shipped: true,
            });
        }
        if let Some(spec) = &input.gen {
            self.hasher.update(format!("gen:{spec}").as_bytes());
            let spec: GenSpec = spec.parse()?;
            return Ok(Loaded {
                pair: spec.generate(self.seed)?,
                costs: None,
                shipped: false,
            });
        }
        let path = input
            .file
            .as_ref()
            .ok_or_else(|| Failure::Input("no input: give FILE, --fixture or --gen".into()))?;
        let text = self.read(path)?;
        let raw: PairJson = serde_json::from_value(unwrap_report(&text)?)
            .map_err(|e| Failure::Input(e.to_string()))?;
        let pair = raw.build()?;
        let costs = raw.build_costs(&pair)?;
        Ok(Loaded {
            pair,
            costs,
            shipped: false,
        })
    }

    fn guard(&self, loaded: &Loaded) -> CmdResult<()> {
        let limit = solver::node_limit_from_env();
        if !self.force && !loaded.shipped && loaded.pair.node_count() > limit {
            return Err(Error::InstanceTooLarge {
                nodes: loaded.pair.node_count(),
                limit,
            }
            .into());
        }
        Ok(())
    }

    fn inequality(
        &mut self,
        pair: &LiftedPair,
        arg: &InequalityArg,
    ) -> CmdResult<Option<LinearInequality>> {
        if let Some(tag) = &arg.tag {
            self.hasher.update(format!("tag:{tag}").as_bytes());
            let tag: InequalityTag = tag.parse()?;
            return Ok(Some(LinearInequality::from_tag(pair, &tag)?));
        }
        if let Some(path) = &arg.inequality {
            let text = self.read(path)?;
            return Ok(Some(lio::parse_inequality(pair, &text)?));
        }
        Ok(None)
    }

    fn random_costs(&self, pair: &LiftedPair, bound: i64) -> CostFunction {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        generate::random_costs(pair, -bound, bound, &mut rng)
    }
}

/// Accepts either a bare JSON document or a report whose `result` holds it.
fn unwrap_report(text: &str) -> CmdResult<Value> {
    let v: Value = serde_json::from_str(text).map_err(|e| Failure::Input(e.to_string()))?;
    match v {
        Value::Object(ref m) if m.contains_key("input_digest") && m.contains_key("result") => {
            Ok(m["result"].clone())
        }
        other => Ok(other),
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Facet => "facet",
        Verdict::NotFacet => "not-facet",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn cmd_check(ctx: &mut Ctx, input: &Input, labeling: &str) -> CmdResult<Output> {
    let loaded = ctx.load(input)?;
    let pair = &loaded.pair;
    let x = EdgeLabeling::parse(labeling, pair.dim())?;
    let feasible = lifting::is_lifted_multicut(pair, &x);
    let violated = lifting::violated_inequalities(pair, &x);
    let items: Vec<Value> = violated
        .iter()
        .map(|q| lio::inequality_to_json(pair, q))
        .collect();
    let rows = violated
        .iter()
        .map(|q| {
            vec![
                q.tag().map(|t| t.family().to_string()).unwrap_or_default(),
                q.tag().map(|t| t.to_string()).unwrap_or_default(),
            ]
        })
        .collect();
    let result = json!({
        "labeling": x.to_string(),
        "feasible": feasible,
        "violated": items,
    });
    Ok(Output::new(result)
        .table(vec!["family", "tag"], rows)
        .negative(!feasible))
}

fn cmd_lift(ctx: &mut Ctx, input: &Input, multicut: &str) -> CmdResult<Output> {
    let loaded = ctx.load(input)?;
    let pair = &loaded.pair;
    let m = EdgeSubset::from_bitstring(pair.base(), multicut)?;
    let lifted = lifting::lift(pair, &m)?;
    let bits = lifted.to_bitstring(pair.lifted());
    let result = json!({ "multicut": m.to_bitstring(pair.base()), "labeling": bits });
    Ok(Output::new(result).table(
        vec!["multicut", "labeling"],
        vec![vec![multicut.to_string(), bits]],
    ))
}

fn cmd_enumerate(ctx: &mut Ctx, input: &Input) -> CmdResult<Output> {
    let loaded = ctx.load(input)?;
    ctx.guard(&loaded)?;
    let xs = lifting::enumerate_lifted_multicuts(&loaded.pair);
    let labels: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    let edges: Vec<String> = loaded.pair.edges().iter().map(|e| e.to_string()).collect();
    let rows = labels
        .iter()
        .enumerate()
        .map(|(i, l)| vec![i.to_string(), l.clone()])
        .collect();
    let result = json!({ "edges": edges, "count": labels.len(), "labelings": labels });
    Ok(Output::new(result).table(vec!["index", "labeling"], rows))
}

fn cmd_dim(ctx: &mut Ctx, input: &Input, arg: &InequalityArg) -> CmdResult<Output> {
    let loaded = ctx.load(input)?;
    ctx.guard(&loaded)?;
    let pair = &loaded.pair;
    match ctx.inequality(pair, arg)? {
        None => {
            let xs = VectorSet::new(lifting::enumerate_lifted_multicuts(pair))?;
            let d = polytope::affine_dimension(&xs);
            let result = json!({ "edges": pair.dim(), "vertices": xs.len(), "dimension": d });
            let rows = vec![vec![
                pair.dim().to_string(),
                xs.len().to_string(),
                d.to_string(),
            ]];
            Ok(Output::new(result).table(vec!["edges", "vertices", "dimension"], rows))
        }
        Some(q) => {
            let oracle = FaceOracle::new(pair);
            if let Some(w) = oracle.violator(&q) {
                let result = json!({ "inequality": lio::inequality_to_json(pair, &q), "valid": false, "witness": w.to_string() });
                let rows = vec![vec![
                    tag_text(&q),
                    "false".into(),
                    String::new(),
                    w.to_string(),
                ]];
                return Ok(Output::new(result)
                    .table(vec!["tag", "valid", "face_dimension", "witness"], rows)
                    .negative(true));
            }
            let face = oracle.face(&q)?;
            let fd = polytope::affine_dimension(&face);
            let result = json!({
                "inequality": lio::inequality_to_json(pair, &q),
                "valid": true,
                "face_vertices": face.len(),
                "face_dimension": fd,
                "polytope_dimension": pair.dim(),
            });
            let rows = vec![vec![
                tag_text(&q),
                "true".into(),
                fd.to_string(),
                String::new(),
            ]];
            Ok(Output::new(result).table(vec!["tag", "valid", "face_dimension", "witness"], rows))
        }
    }
}

fn tag_text(q: &LinearInequality) -> String {
    q.tag().map(|t| t.to_string()).unwrap_or_default()
}

/// Predicate verdict, violated conditions and witnesses for a tagged inequality.
fn predicate(
    pair: &LiftedPair,
    tag: Option<&InequalityTag>,
) -> CmdResult<(Verdict, Vec<String>, Value)> {
    let Some(tag) = tag else {
        return Ok((Verdict::Inconclusive, Vec::new(), json!({})));
    };
    Ok(match tag {
        InequalityTag::Cycle { .. } | InequalityTag::Path { .. } => {
            let v = facets::check_cycle_path_facet(pair, tag)?;
            let violated = if v.facet {
                vec![]
            } else {
                vec!["chordless".to_string()]
            };
            (
                Verdict::from_bool(v.facet),
                violated,
                json!({ "chords": v.chords }),
            )
        }
        InequalityTag::Cut { lifted, cut } => {
            let ctx = VwCutContext::new(pair, *lifted, cut.clone())?;
            let report = facets::check_cut_conditions(&ctx);
            let mut violated = report.violated();
            let mut witnesses = serde_json::to_value(&report).expect("plain data");
            let verdict = if cut.len() == 1 {
                let single = facets::check_single_edge_cut_facet(&ctx)?;
                if !single.violations_a.is_empty() {
                    violated.push("single-edge-a".into());
                }
                if !single.violations_b.is_empty() {
                    violated.push("single-edge-b".into());
                }
                witnesses["single_edge"] = serde_json::to_value(&single).expect("plain data");
                Verdict::from_bool(single.facet)
            } else if violated.is_empty() {
                Verdict::Inconclusive
            } else {
                Verdict::NotFacet
            };
            (verdict, violated, witnesses)
        }
        InequalityTag::BoxUpper(e) => {
            let v = facets::check_box_upper(pair, *e)?;
            let violated = if v.facet {
                vec![]
            } else {
                vec!["cut-vertices".to_string()]
            };
            (
                Verdict::from_bool(v.facet),
                violated,
                json!({ "lifted_edge": v.witness }),
            )
        }
        InequalityTag::BoxLower(e) => {
            let v = facets::check_box_lower(pair, *e)?;
            let mut violated = Vec::new();
            if v.triangle.is_some() {
                violated.push("triangle".to_string());
            }
            if v.close_cut_vertices.is_some() {
                violated.push("close-cut-vertices".to_string());
            }
            if v.separating_triangle.is_some() {
                violated.push("separating-triangle".to_string());
            }
            (
                v.verdict,
                violated,
                serde_json::to_value(&v).expect("plain data"),
            )
        }
    })
}

fn cmd_facet_check(ctx: &mut Ctx, input: &Input, arg: &InequalityArg) -> CmdResult<Output> {
    let loaded = ctx.load(input)?;
    ctx.guard(&loaded)?;
    let pair = &loaded.pair;
    let q = ctx
        .inequality(pair, arg)?
        .ok_or_else(|| Failure::Input("facet-check needs --tag or --inequality".into()))?;
    let (verdict, violated, witnesses) = predicate(pair, q.tag())?;
    let oracle = FaceOracle::new(pair);
    let (oracle_verdict, face_dim) = match oracle.face_dimension(&q) {
        Ok(d) => (
            if d == pair.dim() as isize - 1 {
                "facet"
            } else {
                "not-facet"
            },
            Some(d),
        ),
        Err(Error::InvalidInequality { .. }) => ("invalid", None),
        Err(e) => return Err(e.into()),
    };
    let agree = match verdict {
        Verdict::Inconclusive => true,
        v => verdict_word(v) == oracle_verdict,
    };
    let result = json!({
        "inequality": lio::inequality_to_json(pair, &q),
        "theorem_verdict": verdict,
        "oracle_verdict": oracle_verdict,
        "face_dimension": face_dim,
        "violated_conditions": violated,
        "witnesses": witnesses,
    });
    let rows = vec![vec![
        tag_text(&q),
        verdict_word(verdict).to_string(),
        oracle_verdict.to_string(),
        violated.join(","),
    ]];
    Ok(Output::new(result)
        .table(
            vec![
                "tag",
                "theorem_verdict",
                "oracle_verdict",
                "violated_conditions",
            ],
            rows,
        )
        .negative(oracle_verdict != "facet" || !agree))
}

fn cmd_solve(ctx: &mut Ctx, input: &Input, method: Method) -> CmdResult<Output> {
    let loaded = ctx.load(input)?;
    let pair = &loaded.pair;
    let (costs, source) = match &loaded.costs {
        Some(c) => (c.clone(), "input"),
        None if input.file.is_some() => {
            return Err(Failure::Input("instance has no \"costs\" field".into()))
        }
        None => (ctx.random_costs(pair, 5), "random"),
    };
    let solution: Solution = match method {
        Method::Exact => {
            let limit = if ctx.force || loaded.shipped {
                None
            } else {
                Some(solver::node_limit_from_env())
            };
            solver::solve_exact_with_limit(pair, &costs, limit)?
        }
        Method::Bnb => solver::solve_branch_and_bound(pair, &costs)?,
        Method::Greedy => solver::solve_greedy(pair, &costs)?,
    };
    let mut sol = lio::solution_to_json(&solution);
    let wall = sol["stats"]
        .as_object_mut()
        .and_then(|m| m.remove("wall_time_ms"))
        .and_then(|v| v.as_f64())
        .unwrap_or(0.0);
    let cost_map: serde_json::Map<String, Value> = pair
        .edges()
        .iter()
        .zip(costs.costs())
        .map(|(e, c)| (e.to_string(), json!(c)))
        .collect();
    sol["costs"] = json!({ "source": source, "values": cost_map });
    let rows = vec![vec![
        solution.labeling.to_string(),
        solution.objective.to_string(),
        sol["certificate"].as_str().unwrap_or_default().to_string(),
        solution.stats.nodes_explored.to_string(),
    ]];
    let mut out = Output::new(sol).table(
        vec!["labeling", "objective", "certificate", "nodes_explored"],
        rows,
    );
    out.extra_timing = Some(("solve_ms", wall));
    Ok(out)
}

fn cmd_gen(ctx: &mut Ctx, spec: &str, costs: Option<i64>) -> CmdResult<Output> {
    ctx.hasher.update(format!("gen:{spec}").as_bytes());
    let parsed: GenSpec = spec.parse()?;
    let pair = parsed.generate(ctx.seed)?;
    let mut raw = PairJson::from_pair(&pair);
    if let Some(bound) = costs {
        if bound < 0 {
            return Err(Failure::Input("--costs must be non-negative".into()));
        }
        raw = raw.with_costs(&pair, &ctx.random_costs(&pair, bound));
    }
    let rows = pair
        .edges()
        .iter()
        .map(|e| {
            vec![
                e.u().to_string(),
                e.v().to_string(),
                if pair.is_lifted_only(*e) {
                    "lifted"
                } else {
                    "base"
                }
                .to_string(),
            ]
        })
        .collect();
    let result = serde_json::to_value(raw).expect("plain data");
    Ok(Output::new(result).table(vec!["u", "v", "kind"], rows))
}

fn cmd_verify(
    ctx: &mut Ctx,
    input: &Input,
    suite: Option<&str>,
    random: usize,
) -> CmdResult<Output> {
    let suites: Vec<Suite> = match suite {
        Some(name) => vec![name.parse()?],
        None => Suite::ALL.to_vec(),
    };
    let pairs = if input.file.is_none() && input.fixture.is_none() && input.gen.is_none() {
        ctx.hasher.update(format!("shipped:{random}").as_bytes());
        verify::fixture_set(random, ctx.seed)
    } else {
        let loaded = ctx.load(input)?;
        ctx.guard(&loaded)?;
        let name = input
            .fixture
            .clone()
            .or_else(|| input.gen.clone())
            .unwrap_or_else(|| "input".into());
        vec![(name, loaded.pair)]
    };
    let reports: Vec<_> = suites
        .iter()
        .map(|s| verify::run_suite(*s, &pairs))
        .collect();
    let passed = reports.iter().all(|r| r.passed());
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.suite.clone(),
                r.instances.to_string(),
                r.checks.to_string(),
                r.skipped.to_string(),
                r.disagreements.len().to_string(),
                if r.passed() { "pass" } else { "fail" }.to_string(),
            ]
        })
        .collect();
    let result = json!({ "passed": passed, "suites": reports });
    Ok(Output::new(result)
        .table(
            vec![
                "suite",
                "instances",
                "checks",
                "skipped",
                "disagreements",
                "status",
            ],
            rows,
        )
        .negative(!passed))
}

fn run(cli: &Cli, argv: &[String]) -> CmdResult<(Value, Output)> {
    let mut ctx = Ctx {
        seed: cli.seed,
        force: cli.force,
        hasher: Sha256::new(),
    };
    let start = Instant::now();
    let out = match &cli.command {
        Command::Check { input, labeling } => cmd_check(&mut ctx, input, labeling)?,
        Command::Lift { input, multicut } => cmd_lift(&mut ctx, input, multicut)?,
        Command::Enumerate { input } => cmd_enumerate(&mut ctx, input)?,
        Command::Dim { input, ineq } => cmd_dim(&mut ctx, input, ineq)?,
        Command::FacetCheck { input, ineq } => cmd_facet_check(&mut ctx, input, ineq)?,
        Command::Solve { input, method } => cmd_solve(&mut ctx, input, *method)?,
        Command::Gen { spec, costs } => cmd_gen(&mut ctx, spec, *costs)?,
        Command::Verify {
            input,
            suite,
            random,
        } => cmd_verify(&mut ctx, input, suite.as_deref(), *random)?,
    };
    let mut timing = json!({ "elapsed_ms": start.elapsed().as_secs_f64() * 1000.0 });
    if let Some((k, v)) = out.extra_timing {
        timing[k] = json!(v);
    }
    let digest: String = ctx
        .hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    let report = json!({
        "command": argv,
        "input_digest": digest,
        "seed": cli.seed,
        "result": out.result,
        "timing": timing,
    });
    Ok((report, out))
}

fn emit(format: Format, report: &Value, out: &Output) -> io::Result<()> {
    let mut stdout = io::stdout().lock();
    match format {
        Format::Json => writeln!(
            stdout,
            "{}",
            serde_json::to_string_pretty(report).expect("plain data")
        ),
        Format::Tsv => {
            writeln!(
                stdout,
                "# seed={} input_digest={}",
                report["seed"],
                report["input_digest"].as_str().unwrap_or("")
            )?;
            writeln!(stdout, "{}", out.header.join("\t"))?;
            for row in &out.rows {
                writeln!(stdout, "{}", row.join("\t"))?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli, &argv[1..]) {
        Ok((report, out)) => {
            if let Err(e) = emit(cli.format, &report, &out) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.negative { 1 } else { 0 })
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
