//! Command implementations behind the `shortness` binary. Each `cmd_*`
//! function reads its inputs from disk and returns a [`Report`]; the binary
//! only parses flags and prints.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use shortness::bounds::{self, ScanCriteria, ScanOptions};
use shortness::cycles::{self, SurveyReport};
use shortness::longcycle::{self, SubgraphMode};
use shortness::substitution::{self, BlockMap, LinkingPolicy};
use shortness::{factors, format, structure, Edge, Graph, MultiGraph};

pub const SCHEMA: &str = "shortness-report/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}, line {line}: {source}")]
    Input { path: PathBuf, line: usize, source: shortness::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Core(#[from] shortness::Error),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
    pub bytes: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub command: &'static str,
    pub inputs: Vec<InputDigest>,
    pub parameters: Value,
    pub results: Value,
    /// Requested checks that did not run, such as those over a size cap.
    pub skipped: Vec<String>,
    pub errors: Vec<String>,
    pub timing: Timing,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.errors.is_empty() && self.skipped.is_empty()
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok() {
            0
        } else {
            1
        }
    }

    /// The report as JSON with the timing field removed.
    pub fn stable_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serialises");
        v.as_object_mut().expect("report is an object").remove("timing");
        v
    }
}

/// Flags shared by every verb.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Common {
    /// Worker threads; 0 means one per available core.
    pub jobs: usize,
    pub cap_circ: usize,
    pub cap_odd: usize,
    pub seed: Option<u64>,
}

impl Default for Common {
    fn default() -> Self {
        Common { jobs: 0, cap_circ: 60, cap_odd: 40, seed: None }
    }
}

impl Common {
    fn workers(&self) -> usize {
        if self.jobs > 0 {
            self.jobs
        } else {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        }
    }
}

struct Run {
    command: &'static str,
    start: Instant,
    inputs: Vec<InputDigest>,
    skipped: Vec<String>,
    errors: Vec<String>,
}

/// A graph read from a multi-record file.
pub struct Subject {
    pub id: String,
    pub graph6: String,
    pub graph: Graph,
}

impl Run {
    fn new(command: &'static str) -> Self {
        Run { command, start: Instant::now(), inputs: Vec::new(), skipped: Vec::new(), errors: Vec::new() }
    }

    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = fs::read(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
            bytes: bytes.len(),
        });
        String::from_utf8(bytes).map_err(|e| CliError::Input {
            path: path.into(),
            line: 0,
            source: shortness::Error::Parse { offset: e.utf8_error().valid_up_to(), msg: "input is not UTF-8".into() },
        })
    }

    fn graphs(&mut self, path: &Path) -> Result<Vec<Subject>> {
        let text = self.read(path)?;
        let records = format::parse_graph6_file(&text)
            .map_err(|(line, source)| CliError::Input { path: path.into(), line, source })?;
        if records.is_empty() {
            return Err(CliError::Input { path: path.into(), line: 0, source: shortness::Error::EmptyInput });
        }
        let stem = path.file_stem().map_or("graph".into(), |s| s.to_string_lossy().into_owned());
        Ok(records
            .into_iter()
            .enumerate()
            .map(|(i, r)| Subject { id: format!("{stem}#{i}"), graph6: format::serialize_graph6(&r.value), graph: r.value })
            .collect())
    }

    fn graph(&mut self, path: &Path, index: usize) -> Result<Subject> {
        let mut all = self.graphs(path)?;
        if index >= all.len() {
            return Err(CliError::Usage(format!("{} has {} graphs, index {index} is out of range", path.display(), all.len())));
        }
        Ok(all.swap_remove(index))
    }

    fn frame(&mut self, path: &Path) -> Result<MultiGraph> {
        let text = self.read(path)?;
        format::parse_any_multigraph(&text).map_err(|source| CliError::Input { path: path.into(), line: 1, source })
    }

    fn finish(self, parameters: Value, results: Value) -> Report {
        Report {
            schema: SCHEMA,
            tool_version: VERSION,
            command: self.command,
            inputs: self.inputs,
            parameters,
            results,
            skipped: self.skipped,
            errors: self.errors,
            timing: Timing { elapsed_ms: self.start.elapsed().as_millis() as u64 },
        }
    }
}

fn circumference_entry(run: &mut Run, s: &Subject, cap: usize) -> Value {
    if s.graph.n() > cap {
        run.skipped.push(format!("{}: circumference skipped, {} vertices exceeds cap {cap}", s.id, s.graph.n()));
        return json!({ "skipped": format!("n > {cap}") });
    }
    match cycles::circumference(&s.graph) {
        Ok((len, c)) => json!({ "length": len, "cycle": c }),
        Err(e) => {
            run.errors.push(format!("{}: circumference: {e}", s.id));
            json!({ "error": e.to_string() })
        }
    }
}

fn oddness_entry(run: &mut Run, s: &Subject, cap: usize, edge: Option<Edge>) -> Value {
    if s.graph.n() > cap {
        run.skipped.push(format!("{}: oddness skipped, {} vertices exceeds cap {cap}", s.id, s.graph.n()));
        return json!({ "skipped": format!("n > {cap}") });
    }
    match factors::oddness_with_edge(&s.graph, edge) {
        Ok(r) => serde_json::to_value(r).expect("oddness report serialises"),
        Err(e) => {
            run.errors.push(format!("{}: oddness: {e}", s.id));
            json!({ "error": e.to_string() })
        }
    }
}

/// Classification, girth, cyclic connectivity, and (under the caps)
/// circumference and oddness of every graph in the file.
pub fn cmd_analyze(path: &Path, common: &Common) -> Result<Report> {
    let mut run = Run::new("analyze");
    let subjects = run.graphs(path)?;
    let mut out = Vec::new();
    for s in &subjects {
        let class = match structure::classify(&s.graph) {
            Ok(c) => serde_json::to_value(c).expect("class serialises"),
            Err(e) => {
                run.errors.push(format!("{}: {e}", s.id));
                out.push(json!({ "id": s.id, "graph6": s.graph6, "error": e.to_string() }));
                continue;
            }
        };
        let circ = circumference_entry(&mut run, s, common.cap_circ);
        let odd = oddness_entry(&mut run, s, common.cap_odd, None);
        out.push(json!({
            "id": s.id,
            "graph6": s.graph6,
            "vertices": s.graph.n(),
            "edges": s.graph.m(),
            "structure": class,
            "circumference": circ,
            "oddness": odd,
        }));
    }
    Ok(run.finish(json!({ "common": common }), Value::Array(out)))
}

pub fn cmd_circ(path: &Path, common: &Common) -> Result<Report> {
    let mut run = Run::new("circ");
    let subjects = run.graphs(path)?;
    let out: Vec<Value> = subjects
        .iter()
        .map(|s| json!({ "id": s.id, "graph6": s.graph6, "circumference": circumference_entry(&mut run, s, common.cap_circ) }))
        .collect();
    Ok(run.finish(json!({ "common": common }), Value::Array(out)))
}

/// Oddness of every graph; with `edge`, also the forced odd-cycle count
/// away from that edge.
pub fn cmd_oddness(path: &Path, edge: Option<Edge>, common: &Common) -> Result<Report> {
    let mut run = Run::new("oddness");
    let subjects = run.graphs(path)?;
    let out: Vec<Value> = subjects
        .iter()
        .map(|s| json!({ "id": s.id, "graph6": s.graph6, "oddness": oddness_entry(&mut run, s, common.cap_odd, edge) }))
        .collect();
    Ok(run.finish(json!({ "common": common, "edge": edge }), Value::Array(out)))
}

pub fn cmd_bound(path: &Path, edge: Edge, index: usize, common: &Common) -> Result<Report> {
    let mut run = Run::new("bound");
    let s = run.graph(path, index)?;
    let report = bounds::shortness_report(&s.graph, edge, &s.id)?;
    let results = json!({ "id": s.id, "graph6": s.graph6, "bound": report });
    Ok(run.finish(json!({ "common": common, "edge": edge, "index": index }), results))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructArgs {
    pub host: PathBuf,
    pub frame: PathBuf,
    pub out: PathBuf,
    /// Defaults to `<out>.blockmap.json`.
    pub blockmap: Option<PathBuf>,
    pub edge: Edge,
    pub index: usize,
    pub policy: LinkingPolicy,
    pub check_cyclic: bool,
}

impl ConstructArgs {
    pub fn blockmap_path(&self) -> PathBuf {
        self.blockmap.clone().unwrap_or_else(|| {
            let mut p = self.out.clone().into_os_string();
            p.push(".blockmap.json");
            p.into()
        })
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

/// Builds the substitution, validates it, and only then writes the graph6
/// file and its block-map sidecar.
pub fn cmd_construct(args: &ConstructArgs, common: &Common) -> Result<Report> {
    let mut run = Run::new("construct");
    let h = run.graph(&args.host, args.index)?;
    let f = run.frame(&args.frame)?;
    let (g, bm) = substitution::substitute(&h.graph, args.edge, &f, args.policy)?;
    let validation = substitution::validate_substitution(&g, &bm, &h.graph, args.edge, &f, args.check_cyclic)?;
    let graph6 = format::serialize_graph6(&g);
    let sidecar = args.blockmap_path();
    write(&args.out, &format!("{graph6}\n"))?;
    let bm_json = serde_json::to_string_pretty(&bm).expect("block map serialises");
    write(&sidecar, &format!("{bm_json}\n"))?;
    let results = json!({
        "host": { "id": h.id, "graph6": h.graph6 },
        "frame": { "sparse6": format::serialize_sparse6(&f) },
        "graph6": graph6,
        "vertices": g.n(),
        "validation": validation,
        "outputs": { "graph": args.out.display().to_string(), "blockmap": sidecar.display().to_string() },
    });
    Ok(run.finish(json!({ "common": common, "construct": args }), results))
}

#[derive(Clone, Debug, Serialize)]
pub struct LongCycleArgs {
    pub graph: PathBuf,
    pub blockmap: PathBuf,
    pub frame: PathBuf,
    pub mode: SubgraphMode,
    /// Also compute the exact circumference (subject to `cap_circ`).
    pub compare_exact: bool,
}

pub fn read_blockmap(path: &Path) -> Result<BlockMap> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
}

pub fn cmd_longcycle(args: &LongCycleArgs, common: &Common) -> Result<Report> {
    let mut run = Run::new("longcycle");
    let s = run.graph(&args.graph, 0)?;
    let text = run.read(&args.blockmap)?;
    let bm: BlockMap =
        serde_json::from_str(&text).map_err(|source| CliError::Json { path: args.blockmap.clone(), source })?;
    let f = run.frame(&args.frame)?;
    let c = longcycle::construct_long_cycle(&s.graph, &bm, &f, args.mode)?;
    longcycle::verify_constructed(&s.graph, &bm, &c)?;
    let contraction = longcycle::contraction_sequence(&s.graph, &bm, &c.cycle)?;
    let mut visited: Vec<usize> = c.cycle.vertices().iter().map(|&v| bm.block_of[v]).collect();
    visited.sort_unstable();
    visited.dedup();
    let mut results = json!({
        "graph6": s.graph6,
        "vertices": s.graph.n(),
        "blocks": bm.blocks(),
        "blocks_visited": visited.len(),
        "length": c.length,
        "trail": c.trail,
        "contraction": contraction,
        "contraction_equals_trail": contraction == c.trail,
        "cycle": c.cycle,
        "mode": c.mode,
    });
    if args.compare_exact {
        results["exact_circumference"] = circumference_entry(&mut run, &s, common.cap_circ);
    }
    Ok(run.finish(json!({ "common": common, "longcycle": args }), results))
}

/// Runs the matching survey with the matchings split into `jobs` contiguous
/// ranges; failures come back in lexicographic matching order.
pub fn parallel_survey(g: &Graph, k: usize, jobs: usize) -> shortness::Result<SurveyReport> {
    let total = cycles::matchings_of_size(g, k).len();
    let jobs = jobs.clamp(1, total.max(1));
    let chunk = total.div_ceil(jobs);
    let parts: Vec<shortness::Result<SurveyReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> =
            (0..jobs).map(|j| scope.spawn(move || cycles::matching_survey_range(g, k, j * chunk, chunk))).collect();
        handles.into_iter().map(|h| h.join().expect("survey worker panicked")).collect()
    });
    let mut merged = SurveyReport { k, start: 0, checked: 0, total, failures: Vec::new() };
    for p in parts {
        let p = p?;
        merged.checked += p.checked;
        merged.failures.extend(p.failures);
    }
    Ok(merged)
}

/// For every graph, the size-`k` matchings contained in no dominating cycle.
pub fn cmd_dominate(path: &Path, k: usize, common: &Common) -> Result<Report> {
    let mut run = Run::new("dominate");
    let subjects = run.graphs(path)?;
    let mut out = Vec::new();
    for s in &subjects {
        match parallel_survey(&s.graph, k, common.workers()) {
            Ok(r) => out.push(json!({ "id": s.id, "graph6": s.graph6, "survey": r })),
            Err(e) => {
                run.errors.push(format!("{}: {e}", s.id));
                out.push(json!({ "id": s.id, "graph6": s.graph6, "error": e.to_string() }));
            }
        }
    }
    Ok(run.finish(json!({ "common": common, "matching_size": k }), Value::Array(out)))
}

/// Reads criteria given inline (`{"min_q":2}`) or as a path to a JSON file.
pub fn parse_criteria(arg: &str) -> Result<ScanCriteria> {
    let (text, path) = if arg.trim_start().starts_with('{') {
        (arg.to_string(), PathBuf::from("--criteria"))
    } else {
        let p = PathBuf::from(arg);
        (fs::read_to_string(&p).map_err(|source| CliError::Io { path: p.clone(), source })?, p)
    };
    serde_json::from_str(&text).map_err(|source| CliError::Json { path, source })
}

pub fn cmd_scan(path: &Path, criteria: &ScanCriteria, journal: Option<&Path>, common: &Common) -> Result<Report> {
    let mut run = Run::new("scan");
    let subjects = run.graphs(path)?;
    let hosts: Vec<(String, Graph)> = subjects.iter().map(|s| (s.id.clone(), s.graph.clone())).collect();
    let opts = ScanOptions { jobs: common.workers(), journal: journal.map(Path::to_path_buf) };
    let result = bounds::scan_candidates(&hosts, criteria, &opts)?;
    for (host, err) in &result.errors {
        run.errors.push(format!("{host}: {err}"));
    }
    let reported: Vec<Value> = result
        .distinct_hosts()
        .into_iter()
        .map(|h| {
            let s = subjects.iter().find(|s| s.id == h).expect("reported host is in the input");
            json!({ "id": s.id, "graph6": s.graph6 })
        })
        .collect();
    let results = json!({
        "hosts_scanned": subjects.len(),
        "pairs_evaluated": result.pairs_evaluated,
        "distinct_hosts": reported,
        "reports": result.reports,
        "errors": result.errors,
    });
    Ok(run.finish(json!({ "common": common, "criteria": criteria, "journal": journal }), results))
}
