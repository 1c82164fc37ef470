use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use gracelab::audit;
use gracelab::canon::canonical_key;
use gracelab::census::{census_run, Property};
use gracelab::classify::is_tree;
use gracelab::conditions::{certify, critical_audit, Rule};
use gracelab::construct::{
    self, embed_graceful, embed_graceful_optimal, embed_supergraceful, EmbedStrategy, ExtremalVariant, PendantMode,
    SupergracefulMode,
};
use gracelab::enumerate::{Bounds, Universe};
use gracelab::error::Error;
use gracelab::graph::Graph;
use gracelab::graph6;
use gracelab::labeling::{check, Labeling, LabelingKind};
use gracelab::primegraph;
use gracelab::search::{self, SearchBudget, SearchOutcome, Status};
use gracelab::treegen;

use crate::catalogue::{self, CatalogueEntry};
use crate::config::{OutputFormat, RunConfig};
use crate::input::{read_graph, read_labeling};
use crate::{CliError, Exit};

#[derive(Parser, Debug)]
#[command(name = "gracelab", version, about = "Graceful, total and prime labeling workbench")]
pub struct Cli {
    /// Optional `key=value` configuration file; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads for census and audit loops.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Allow slow-tier runs.
    #[arg(long, global = true)]
    pub slow: bool,
    /// Node budget for every solver.
    #[arg(long, global = true)]
    pub max_nodes: Option<u64>,
    /// Wall-clock budget in milliseconds for every solver.
    #[arg(long, global = true)]
    pub max_wall_ms: Option<u64>,
    /// `text` or `json`.
    #[arg(long, global = true)]
    pub format: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a graph as an edge list or graph6.
    Gen {
        graph: String,
        #[arg(long = "as", default_value = "edges")]
        encoding: String,
    },
    /// Check a labeling, or decide a property with certificates attached.
    Check {
        property: String,
        graph: String,
        #[arg(long)]
        labeling: Option<String>,
        /// Slack for semitotal checks.
        #[arg(long, default_value_t = 0)]
        slack: usize,
    },
    /// Run a solver and print its outcome.
    Search {
        property: String,
        graph: String,
        /// Prime search only: put the top label on a pendant node.
        #[arg(long)]
        pendant_top: bool,
    },
    /// Optimal labeling of a graph.
    Opt { graph: String },
    /// Embed a graph into a graceful or totally labeled host.
    Embed(EmbedArgs),
    /// Labeled constructions.
    Construct {
        #[command(subcommand)]
        op: ConstructOp,
    },
    /// Run a solver over an enumerated universe and print JSONL entries.
    Census(CensusArgs),
    /// Claim audits.
    Audit(AuditArgs),
    /// Validate a catalogue file.
    Catalogue { file: PathBuf },
}

#[derive(Args, Debug)]
pub struct EmbedArgs {
    graph: String,
    /// freeLabel, completeHost or induced.
    #[arg(long, default_value = "freeLabel")]
    strategy: String,
    /// Minimal host from an optimal labeling.
    #[arg(long)]
    optimal: bool,
    #[arg(long, default_value_t = 8)]
    max_added: usize,
    /// Totally labeled host: isolated or connected.
    #[arg(long)]
    supergraceful: Option<String>,
    #[arg(long)]
    labeling: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum ConstructOp {
    /// Apex over a totally labeled graph, graceful.
    Apex {
        graph: String,
        #[arg(long)]
        labeling: Option<String>,
    },
    /// Total labeling of a tree from a graceful one.
    TreeTotal {
        graph: String,
        #[arg(long)]
        labeling: Option<String>,
    },
    /// Raise the top label of a graceful tree by `c` and complete.
    Bump {
        graph: String,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        labeling: Option<String>,
    },
    /// Graceful unicyclic graphs from a graceful tree.
    Unicyclic {
        graph: String,
        #[arg(long)]
        labeling: Option<String>,
    },
    /// Pendant growth: graceful, total or totalStep.
    Pendants {
        graph: String,
        #[arg(long)]
        mode: String,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        labeling: String,
    },
    /// Sparse non-prime graph of order `n`.
    Extremal { n: usize, variant: String },
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[arg(long, default_value = "connected")]
    universe: String,
    #[arg(long)]
    order: usize,
    /// Lowest order; defaults to `--order`.
    #[arg(long)]
    from: Option<usize>,
    #[arg(long, default_value = "graceful")]
    property: String,
    #[arg(long)]
    max_edges: Option<usize>,
    /// Append results to this JSONL catalogue.
    #[arg(long)]
    catalogue: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    target: String,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    graph: Option<String>,
}

/// A command's result before formatting.
struct Outcome {
    exit: Exit,
    json: Value,
    text: String,
    /// Print `json` (an array) as one line per element.
    jsonl: bool,
    /// Text output unless `--format json` is given on the command line.
    raw: bool,
}

impl Outcome {
    fn new(exit: Exit, json: Value, text: impl Into<String>) -> Self {
        Outcome {
            exit,
            json,
            text: text.into(),
            jsonl: false,
            raw: false,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, CliError> {
    Ok(serde_json::to_value(v)?)
}

fn status_exit(s: Status) -> Exit {
    match s {
        Status::Found => Exit::Holds,
        Status::Exhausted => Exit::Refuted,
        Status::BudgetExceeded => Exit::Budget,
    }
}

fn require_slow(cfg: &RunConfig, what: &str) -> Result<(), CliError> {
    if cfg.slow_tier {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{what} is slow-tier; pass --slow")))
    }
}

/// Parses `argv` (program name first), runs the command and writes the
/// report to `out`. Diagnostics go to `err`.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Exit::Usage } else { Exit::Holds };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code as i32;
        }
    };
    let mut notes = Vec::new();
    let result = execute(&cli, &mut notes);
    for n in notes {
        let _ = writeln!(err, "{n}");
    }
    match result {
        Ok((o, format)) => {
            let body = match format {
                OutputFormat::Text => {
                    let mut t = o.text;
                    if !t.ends_with('\n') {
                        t.push('\n');
                    }
                    t
                }
                OutputFormat::Json if o.jsonl => o
                    .json
                    .as_array()
                    .map(|a| a.iter().map(|v| v.to_string() + "\n").collect())
                    .unwrap_or_default(),
                OutputFormat::Json => serde_json::to_string_pretty(&o.json).expect("values serialize") + "\n",
            };
            if out.write_all(body.as_bytes()).is_err() {
                return Exit::Usage as i32;
            }
            o.exit as i32
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit() as i32
        }
    }
}

fn config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        cfg.merge_text(&text)?;
    }
    if let Some(j) = cli.jobs {
        cfg.jobs = j;
    }
    cfg.slow_tier |= cli.slow;
    if let Some(n) = cli.max_nodes {
        cfg.set("max_nodes", &n.to_string())?;
    }
    if let Some(w) = cli.max_wall_ms {
        cfg.set("max_wall_ms", &w.to_string())?;
    }
    if let Some(f) = &cli.format {
        cfg.output = f.parse()?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn execute(cli: &Cli, notes: &mut Vec<String>) -> Result<(Outcome, OutputFormat), CliError> {
    let cfg = config(cli)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", cfg.jobs)))?;
    let outcome = pool.install(|| dispatch(&cli.command, &cfg, notes))?;
    let format = if outcome.raw && cli.format.is_none() {
        OutputFormat::Text
    } else {
        cfg.output
    };
    Ok((outcome, format))
}

fn dispatch(cmd: &Command, cfg: &RunConfig, notes: &mut Vec<String>) -> Result<Outcome, CliError> {
    match cmd {
        Command::Gen { graph, encoding } => gen(graph, encoding),
        Command::Check {
            property,
            graph,
            labeling,
            slack,
        } => check_cmd(cfg, property, &read_graph(graph)?, labeling.as_deref(), *slack),
        Command::Search {
            property,
            graph,
            pendant_top,
        } => search_cmd(cfg, property, &read_graph(graph)?, *pendant_top),
        Command::Opt { graph } => {
            let g = read_graph(graph)?;
            let r = search::find_optimal(&g, cfg.budgets.optimal)?;
            let text = format!("opt = {} (q = {}), labeling {:?}", r.opt, g.size(), r.witness.values());
            Ok(Outcome::new(
                Exit::Holds,
                json!({"q": g.size(), "opt": r.opt, "graceful": r.opt == g.size(), "witness": r.witness, "stats": r.stats}),
                text,
            ))
        }
        Command::Embed(a) => embed_cmd(cfg, a),
        Command::Construct { op } => construct_cmd(cfg, op),
        Command::Census(a) => census_cmd(cfg, a, notes),
        Command::Audit(a) => audit_cmd(cfg, a),
        Command::Catalogue { file } => {
            let entries = catalogue::load(file)?;
            let report = catalogue::validate(&entries);
            let exit = if report.invalid.is_empty() { Exit::Holds } else { Exit::Refuted };
            let text = format!("{} entries, {} invalid", report.entries, report.invalid.len());
            Ok(Outcome::new(exit, to_value(&report)?, text))
        }
    }
}

fn gen(graph: &str, encoding: &str) -> Result<Outcome, CliError> {
    let g = read_graph(graph)?;
    let text = match encoding {
        "edges" => g.to_edge_list(),
        "graph6" => graph6::encode(&g) + "\n",
        other => return Err(CliError::Usage(format!("unknown encoding `{other}`"))),
    };
    let json = json!({
        "order": g.order(),
        "size": g.size(),
        "graph6": graph6::encode(&g),
        "edges": g.edges(),
    });
    let mut o = Outcome::new(Exit::Holds, json, text);
    o.raw = true;
    Ok(o)
}

fn labeling_kind(property: &str, slack: usize) -> Result<LabelingKind, CliError> {
    Ok(match property {
        "graceful" => LabelingKind::Graceful,
        "total" | "supergraceful" => LabelingKind::TotalLabeling,
        "semitotal" => LabelingKind::Semitotal { slack },
        "prime" => LabelingKind::Prime,
        "alpha" => LabelingKind::Alpha,
        "edgeDistinct" => LabelingKind::EdgeDistinct,
        other => return Err(CliError::Usage(format!("unknown property `{other}`"))),
    })
}

fn outcome_text(property: &str, o: &SearchOutcome) -> String {
    match &o.witness {
        Some(w) => format!("{property}: {:?}, labeling {:?}", o.status, w.values()),
        None => format!("{property}: {:?}", o.status),
    }
}

fn check_cmd(
    cfg: &RunConfig,
    property: &str,
    g: &Graph,
    labeling: Option<&str>,
    slack: usize,
) -> Result<Outcome, CliError> {
    let kind = labeling_kind(property, slack)?;
    if let Some(l) = labeling {
        let phi = read_labeling(l)?;
        let v = check(g, &phi, kind)?;
        let exit = if v.ok { Exit::Holds } else { Exit::Refuted };
        let text = if v.ok {
            format!("{property}: holds")
        } else {
            format!("{property}: fails, {} violations", v.violations.len())
        };
        return Ok(Outcome::new(exit, to_value(&v)?, text));
    }
    let (rules, budget): (&[Rule], SearchBudget) = match kind {
        LabelingKind::Graceful => (&Rule::NON_GRACEFUL, cfg.budgets.graceful),
        LabelingKind::TotalLabeling => (&[Rule::JoinEulerianNonSupergraceful], cfg.budgets.total),
        LabelingKind::Prime => (&Rule::PRIME, cfg.budgets.prime),
        LabelingKind::Semitotal { .. } => (&[], cfg.budgets.total),
        _ => {
            return Err(CliError::Usage(format!(
                "deciding `{property}` needs --labeling; only graceful, total, semitotal and prime are searched"
            )))
        }
    };
    let certificates = rules
        .iter()
        .map(|&r| certify(g, r, budget))
        .collect::<Result<Vec<_>, _>>()?;
    if let LabelingKind::Semitotal { .. } = kind {
        let r = search::find_semitotal(g, budget)?;
        let text = format!("semitotal: slack {}, labeling {:?}", r.slack, r.witness.values());
        return Ok(Outcome::new(Exit::Holds, json!({"property": property, "status": "Found", "slack": r.slack, "witness": r.witness}), text));
    }
    let o = match kind {
        LabelingKind::Graceful => search::find_graceful(g, budget)?,
        LabelingKind::TotalLabeling => search::find_total(g, budget)?,
        _ => search::find_prime(g, budget, false)?,
    };
    let mut text = outcome_text(property, &o);
    for c in certificates.iter().filter(|c| c.violated()) {
        text.push_str(&format!("\n  certificate {} violated", c.rule));
    }
    let json = json!({
        "property": property,
        "status": o.status,
        "witness": o.witness,
        "stats": o.stats,
        "certificates": certificates,
    });
    Ok(Outcome::new(status_exit(o.status), json, text))
}

fn search_cmd(cfg: &RunConfig, property: &str, g: &Graph, pendant_top: bool) -> Result<Outcome, CliError> {
    let b = &cfg.budgets;
    let o = match property {
        "graceful" => search::find_graceful(g, b.graceful)?,
        "total" | "supergraceful" => search::find_total(g, b.total)?,
        "prime" => search::find_prime(g, b.prime, pendant_top)?,
        "semitotal" => {
            let r = search::find_semitotal(g, b.total)?;
            let text = format!("semitotal: slack {}, labeling {:?}", r.slack, r.witness.values());
            return Ok(Outcome::new(Exit::Holds, to_value(&r)?, text));
        }
        "optimal" => {
            let r = search::find_optimal(g, b.optimal)?;
            let text = format!("optimal: {} labeling {:?}", r.opt, r.witness.values());
            return Ok(Outcome::new(Exit::Holds, to_value(&r)?, text));
        }
        other => return Err(CliError::Usage(format!("unknown property `{other}`"))),
    };
    Ok(Outcome::new(status_exit(o.status), to_value(&o)?, outcome_text(property, &o)))
}

/// `Infeasible` is a refutation rather than an error.
fn refutable<T>(r: gracelab::error::Result<T>) -> Result<Result<T, String>, CliError> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(Error::Infeasible(m)) => Ok(Err(m)),
        Err(e) => Err(e.into()),
    }
}

fn refuted(reason: String) -> Outcome {
    Outcome::new(Exit::Refuted, json!({"infeasible": reason}), format!("infeasible: {reason}"))
}

fn labeling_or<F>(arg: Option<&str>, search: F) -> Result<Option<Labeling>, CliError>
where
    F: FnOnce() -> Result<Option<Labeling>, CliError>,
{
    match arg {
        Some(l) => read_labeling(l).map(Some),
        None => search(),
    }
}

fn found(o: SearchOutcome) -> Result<Option<Labeling>, CliError> {
    match o.status {
        Status::BudgetExceeded => Err(Error::BudgetExceeded.into()),
        _ => Ok(o.witness),
    }
}

fn embed_cmd(cfg: &RunConfig, a: &EmbedArgs) -> Result<Outcome, CliError> {
    let g = read_graph(&a.graph)?;
    let b = &cfg.budgets;
    if let Some(mode) = &a.supergraceful {
        let mode = match mode.as_str() {
            "isolated" => SupergracefulMode::Isolated,
            "connected" => SupergracefulMode::Connected,
            other => return Err(CliError::Usage(format!("unknown supergraceful mode `{other}`"))),
        };
        let phi = labeling_or(a.labeling.as_deref(), || {
            let r = match mode {
                SupergracefulMode::Isolated => search::find_semitotal(&g, b.total)?,
                SupergracefulMode::Connected => search::find_semitotal_with_one(&g, b.total)?,
            };
            Ok(Some(r.witness))
        })?
        .expect("semitotal labelings always exist");
        return Ok(match refutable(embed_supergraceful(&g, &phi, mode))? {
            Ok(e) => {
                let text = format!("host {} ({} nodes)", graph6::encode(&e.host), e.host.order());
                Outcome::new(Exit::Holds, to_value(&e)?, text)
            }
            Err(m) => refuted(m),
        });
    }
    if a.optimal {
        let phi = labeling_or(a.labeling.as_deref(), || {
            Ok(Some(search::find_optimal(&g, b.optimal)?.witness))
        })?
        .expect("optimal labelings always exist");
        return Ok(match refutable(embed_graceful_optimal(&g, &phi, a.max_added))? {
            Ok(e) => {
                let text = format!("minimal host order {}, {} hosts", e.order, e.hosts.len());
                Outcome::new(Exit::Holds, to_value(&e)?, text)
            }
            Err(m) => refuted(m),
        });
    }
    let strategy: EmbedStrategy = a.strategy.parse()?;
    Ok(match refutable(embed_graceful(&g, strategy, b.optimal))? {
        Ok(e) => {
            let text = format!("host {} ({} nodes)", graph6::encode(&e.host), e.host.order());
            Outcome::new(Exit::Holds, to_value(&e)?, text)
        }
        Err(m) => refuted(m),
    })
}

fn labeled_graphs(list: &[(Graph, Labeling)]) -> Value {
    Value::Array(
        list.iter()
            .map(|(g, l)| json!({"graph": graph6::encode(g), "edges": g.edges(), "labeling": l}))
            .collect(),
    )
}

fn graceful_or_search(cfg: &RunConfig, g: &Graph, arg: Option<&str>) -> Result<Option<Labeling>, CliError> {
    labeling_or(arg, || found(search::find_graceful(g, cfg.budgets.graceful)?))
}

fn construct_cmd(cfg: &RunConfig, op: &ConstructOp) -> Result<Outcome, CliError> {
    let none = || refuted("no labeling of the required kind exists".into());
    let listed = |list: Vec<(Graph, Labeling)>| {
        let text = format!("{} outputs", list.len());
        let exit = if list.is_empty() { Exit::Refuted } else { Exit::Holds };
        Outcome::new(exit, labeled_graphs(&list), text)
    };
    match op {
        ConstructOp::Apex { graph, labeling } => {
            let g = read_graph(graph)?;
            let Some(mu) = labeling_or(labeling.as_deref(), || found(search::find_total(&g, cfg.budgets.total)?))? else {
                return Ok(none());
            };
            Ok(match refutable(construct::apex_graceful(&g, &mu))? {
                Ok(r) => listed(vec![r]),
                Err(m) => refuted(m),
            })
        }
        ConstructOp::TreeTotal { graph, labeling } => {
            let t = read_graph(graph)?;
            if !is_tree(&t) {
                return Err(CliError::Usage("input must be a tree".into()));
            }
            let Some(phi) = graceful_or_search(cfg, &t, labeling.as_deref())? else {
                return Ok(none());
            };
            let mu = construct::tree_total_from_graceful(&t, &phi)?;
            Ok(listed(vec![(t, mu)]))
        }
        ConstructOp::Bump { graph, c, labeling } => {
            let t = read_graph(graph)?;
            let Some(phi) = graceful_or_search(cfg, &t, labeling.as_deref())? else {
                return Ok(none());
            };
            Ok(match refutable(construct::bump_top_and_complete(&t, &phi, *c))? {
                Ok(list) => listed(list),
                Err(m) => refuted(m),
            })
        }
        ConstructOp::Unicyclic { graph, labeling } => {
            let t = read_graph(graph)?;
            let Some(phi) = graceful_or_search(cfg, &t, labeling.as_deref())? else {
                return Ok(none());
            };
            Ok(match refutable(construct::unicyclic_from_tree(&t, &phi))? {
                Ok(list) => {
                    let text = format!("{} outputs", list.len());
                    let exit = if list.is_empty() { Exit::Refuted } else { Exit::Holds };
                    Outcome::new(exit, to_value(&list)?, text)
                }
                Err(m) => refuted(m),
            })
        }
        ConstructOp::Pendants { graph, mode, t, labeling } => {
            let g = read_graph(graph)?;
            let mode = match mode.as_str() {
                "graceful" => PendantMode::Graceful,
                "total" => PendantMode::Total,
                "totalStep" => PendantMode::TotalStep,
                other => return Err(CliError::Usage(format!("unknown pendant mode `{other}`"))),
            };
            let r = construct::grow_pendants(&g, &read_labeling(labeling)?, mode, *t)?;
            Ok(listed(vec![r]))
        }
        ConstructOp::Extremal { n, variant } => {
            let v: ExtremalVariant = variant.parse()?;
            let g = construct::non_prime_extremal(*n, v)?;
            let text = format!("{} ({} nodes, {} edges)", graph6::encode(&g), g.order(), g.size());
            Ok(Outcome::new(
                Exit::Holds,
                json!({"graph": graph6::encode(&g), "edges": g.edges()}),
                text,
            ))
        }
    }
}

fn census_cmd(cfg: &RunConfig, a: &CensusArgs, notes: &mut Vec<String>) -> Result<Outcome, CliError> {
    let universe: Universe = a.universe.parse()?;
    let property: Property = a.property.parse()?;
    let from = a.from.unwrap_or(a.order);
    if from == 0 || from > a.order {
        return Err(CliError::Usage("--from must lie in 1..=--order".into()));
    }
    let heavy = match universe {
        Universe::Trees => a.order > 12,
        Universe::Unicyclic => a.order > 8,
        _ => a.order > 7,
    };
    if heavy {
        require_slow(cfg, "this census order")?;
    }
    let budget = match property {
        Property::Graceful => cfg.budgets.graceful,
        Property::Total => cfg.budgets.total,
        Property::Prime => cfg.budgets.prime,
    };
    let bounds = Bounds {
        min_edges: None,
        max_edges: a.max_edges,
    };
    let report = census_run(universe, from..=a.order, bounds, property, budget)?;
    if let Some(path) = &a.catalogue {
        let stamp = catalogue::now();
        let entries: Vec<CatalogueEntry> = report
            .entries
            .iter()
            .filter(|e| e.status != Status::BudgetExceeded)
            .map(|e| CatalogueEntry::from_census(e, stamp))
            .collect();
        let written = catalogue::append(path, &entries)?;
        notes.push(format!("catalogue {}: {written} new entries", path.display()));
    }
    let s = report.summary;
    let text = format!(
        "{}: {} classes, {} found, {} exhausted, {} over budget",
        report.universe, s.classes, s.found, s.exhausted, s.budget_exceeded
    );
    let exit = if s.budget_exceeded > 0 { Exit::Budget } else { Exit::Holds };
    let mut o = Outcome::new(exit, to_value(&report.entries)?, text);
    o.jsonl = true;
    Ok(o)
}

fn keys_text(keys: &[gracelab::canon::CanonicalKey]) -> String {
    keys.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ")
}

fn audit_cmd(cfg: &RunConfig, a: &AuditArgs) -> Result<Outcome, CliError> {
    let b = &cfg.budgets;
    let out = |json: Value, text: String| Ok(Outcome::new(Exit::Holds, json, text));
    match a.target.as_str() {
        "sp" => {
            let max = a.max_n.unwrap_or(primegraph::SP_AUDIT_CAP);
            let mut claims = Vec::new();
            for n in 1..=max {
                claims.extend(primegraph::sp_audit(n)?);
            }
            let bad: Vec<String> = claims
                .iter()
                .filter(|c| c.formula.is_some() && !c.matches)
                .map(|c| format!("n={} {} ({}): formula {} vs computed {}", c.n, c.claim, c.reading, c.formula.as_ref().expect("filtered"), c.computed))
                .collect();
            let text = format!("{} claims, {} mismatches\n{}", claims.len(), bad.len(), bad.join("\n"));
            out(to_value(&claims)?, text)
        }
        "table2" => {
            let max = a.max_n.unwrap_or(20);
            if max == 0 || max > primegraph::PRINTED_EDGE_COUNTS.len() {
                return Err(CliError::Usage(format!("--max-n must lie in 1..={}", primegraph::PRINTED_EDGE_COUNTS.len())));
            }
            let rows: Vec<Value> = primegraph::printed_edge_counts()?
                .into_iter()
                .take(max)
                .map(|(n, printed, computed)| json!({"n": n, "printed": printed, "computed": computed, "matches": printed == computed}))
                .collect();
            let text = rows
                .iter()
                .map(|r| format!("n={:<3} printed={:<4} computed={:<4} {}", r["n"], r["printed"], r["computed"], if r["matches"] == true { "ok" } else { "MISMATCH" }))
                .collect::<Vec<_>>()
                .join("\n");
            out(Value::Array(rows), text)
        }
        "prop63" => {
            let max = a.max_n.unwrap_or(7);
            let mut rows = Vec::new();
            for p in 2..=max {
                let c = treegen::labeling_count_audit(p)?;
                rows.push(json!({"p": p, "selections": c.selections, "treeSelections": c.tree_selections, "agree": c.agree}));
            }
            let text = rows
                .iter()
                .map(|r| format!("p={} selections={} trees={}", r["p"], r["selections"], r["treeSelections"]))
                .collect::<Vec<_>>()
                .join("\n");
            out(Value::Array(rows), text)
        }
        "mu" => {
            let max = a.max_n.unwrap_or(if cfg.slow_tier { 7 } else { 6 });
            if max > 6 {
                require_slow(cfg, "the order-7 minimum")?;
            }
            let mut rows = Vec::new();
            let mut text = String::new();
            for n in 1..=max {
                for connected in [true, false] {
                    let r = primegraph::mu_compute(n, connected, b.prime)?;
                    text += &format!("n={n} connected={connected} value={:?} witnesses={}\n", r.value, keys_text(&r.witnesses));
                    rows.push(to_value(&r)?);
                }
            }
            let emin = primegraph::e_minimal_non_prime(max.min(primegraph::E_MINIMAL_CAP), b.prime)?;
            text += &format!("e-minimal non-prime: {}", keys_text(&emin));
            out(json!({"mu": rows, "eMinimal": emin}), text)
        }
        "tree-complete" => {
            let max = a.max_n.unwrap_or(12);
            if max > 12 {
                require_slow(cfg, "tree completeness above order 12")?;
            }
            let mut verdicts = Vec::new();
            let mut verified = BTreeSet::new();
            let mut text = String::new();
            for n in 1..=max {
                let v = primegraph::tree_complete_check(n, b.prime)?;
                if v.complete {
                    verified.insert(n);
                }
                text += &format!("n={n} trees={} complete={}\n", v.trees, v.complete);
                verdicts.push(v);
            }
            let chain = primegraph::inference_chain(&verified, 40);
            let hypothetical = primegraph::inference_chain(&BTreeSet::from([16]), 21);
            text += &format!(
                "derived from verified orders: {:?}\nderived from order 16: {:?}",
                chain.iter().map(|d| d.order).collect::<Vec<_>>(),
                hypothetical.iter().map(|d| d.order).collect::<Vec<_>>()
            );
            out(json!({"verdicts": verdicts, "chain": chain, "fromSixteen": hypothetical}), text)
        }
        "rrk" => {
            let max = a.max_n.unwrap_or(9);
            let mut rows = Vec::new();
            let mut text = String::new();
            for p in 1..=max {
                let c = treegen::graceful_tree_census(p)?;
                text += &format!("p={p} covered {}/{}\n", c.covered, c.total);
                rows.push(c);
            }
            out(to_value(&rows)?, text)
        }
        "unicyclic" => {
            let graceful = audit::unicyclic_census(Property::Graceful, a.max_n.unwrap_or(8), b.graceful)?;
            let total = audit::unicyclic_census(Property::Total, 6, b.total)?;
            let text = format!(
                "graceful: {} classes, exhausted {}\ntotal (order <= 6): {} classes, exhausted {}",
                graceful.classes,
                keys_text(&graceful.exhausted),
                total.classes,
                keys_text(&total.exhausted)
            );
            out(json!({"graceful": graceful, "total": total}), text)
        }
        "attract" => {
            let path = match &a.graph {
                Some(g) => read_graph(g)?,
                None => gracelab::families::path(8)?,
            };
            let table = audit::attract_table(&path, b.graceful)?;
            let (first, endnodes) = treegen::repelling_threshold(a.max_n.unwrap_or(9), b.graceful)?;
            let text = format!(
                "all nodes attract 1..q: {}\nsmallest tree order with a 0-repelling node: {:?}\nevery tree has a 0-attractive endnode: {endnodes}",
                table.all_attractive, first
            );
            out(json!({"table": table, "firstRepellingOrder": first, "attractiveEndnodes": endnodes}), text)
        }
        "order6-nongraceful" => {
            let r = audit::small_non_graceful(a.max_n.unwrap_or(6), b.graceful)?;
            let text = format!(
                "{} classes, non-graceful: {}\nnamed all non-graceful: {}\nunnamed: {}\nH(2,2,2) join: {:?}",
                r.classes,
                keys_text(&r.non_graceful),
                r.named_all_non_graceful,
                keys_text(&r.unnamed),
                r.h_join.status
            );
            out(to_value(&r)?, text)
        }
        "supergraceful-catalogue" => {
            let max = a.max_n.unwrap_or(5);
            let connected = audit::supergraceful_catalogue(Universe::ConnectedGraphs, max, b.total)?;
            let all = audit::supergraceful_catalogue(Universe::AllGraphs, max, b.total)?;
            let text = format!(
                "connected: exhausted {}\nall graphs: exhausted {}",
                keys_text(&connected.exhausted),
                keys_text(&all.exhausted)
            );
            out(json!({"connected": connected, "all": all}), text)
        }
        "critical" => {
            let g = match &a.graph {
                Some(g) => read_graph(g)?,
                None => audit::bowtie(),
            };
            let r = critical_audit(&g, b.graceful)?;
            let text = format!("{}: critical = {}", graph6::encode(&g), r.holds);
            out(json!({"graph": canonical_key(&g)?, "audit": r}), text)
        }
        "rg-eulerian" => {
            let mut orders = vec![(5, 10), (6, 15), (7, 21)];
            if cfg.slow_tier {
                orders.push((8, 10));
            }
            let mut minima = Vec::new();
            let mut text = String::new();
            for (p, m) in orders {
                let e = audit::eulerian_minimum(p, m, b.graceful)?;
                text += &format!("p={p} claimed={:?} computed={:?}\n", e.claimed, e.computed);
                minima.push(e);
            }
            let crit = audit::eulerian_critical(7, b.graceful)?;
            text += &format!(
                "order 7: {} eulerian, {} non-graceful, {} without C5/C6/bowtie, {} critical",
                crit.eulerian,
                crit.non_graceful,
                crit.pattern_free.len(),
                crit.critical.len()
            );
            out(json!({"minima": minima, "orderSeven": crit}), text)
        }
        other => Err(CliError::Usage(format!("unknown audit target `{other}`"))),
    }
}
