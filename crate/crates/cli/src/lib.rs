//! Command-line surface of splitkit. [`run`] does everything except touch
//! the process: it returns the exit code and both output streams.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use splitkit::cylinders::{collapse_non_a, cylinder_orbits, tree_of_cylinders_quotient, NodeKind, QuotientGraph};
use splitkit::gbs::{
    ball_displacement, britton_reduce, irreducibility_witness, jsj_report, modular_homomorphism, sample,
    Elementary, GbsError, GroupWord, LabeledGraph,
};
use splitkit::io::{self, rational_string, AtlasSpec, Body, Document, GbsSpec, IoError, MasterSpec, Report};
use splitkit::lattice::{CollapseTree, MasterSplitting};
use splitkit::orbifold::{self, Orbifold2, OrbifoldError};
use splitkit::CylinderError;

/// Environment variable holding the default word-search budget.
pub const BUDGET_VAR: &str = "SPLITKIT_SEARCH_BUDGET";
pub const DEFAULT_BUDGET: usize = 8;

#[derive(Debug, Parser)]
#[command(name = "splitkit", version, about = "Splittings, length functions, trees of cylinders and 2-orbifolds")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized sample.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Word-length budget of bounded searches (default from SPLITKIT_SEARCH_BUDGET, else 8).
    #[arg(long, global = true)]
    search_budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// 2-orbifolds.
    #[command(subcommand)]
    Orbifold(OrbifoldCmd),
    /// GBS graphs of groups.
    #[command(subcommand)]
    Gbs(GbsCmd),
    /// The collapse lattice of a master splitting.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Trees of cylinders.
    #[command(subcommand)]
    Cylinders(CylindersCmd),
    /// Graph exports.
    #[command(subcommand)]
    Export(ExportCmd),
}

#[derive(Debug, Subcommand)]
enum OrbifoldCmd {
    /// Euler characteristic, hyperbolicity, smallness, mapping class group.
    Analyze { file: PathBuf },
    /// Every orbifold with at most `budget` features.
    Enumerate {
        #[arg(long)]
        budget: usize,
    },
}

#[derive(Debug, Subcommand)]
enum GbsCmd {
    /// Translation length of a word (a name from the file or a literal word).
    Length {
        file: PathBuf,
        #[arg(long)]
        word: String,
        /// Cross-check against the ball oracle of this radius.
        #[arg(long)]
        oracle: Option<u64>,
    },
    /// Elementary type, JSJ and compatibility diagnostics.
    Report { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum LatticeCmd {
    /// Lattice laws, modularity and squarefree witnesses on sampled words.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        words: usize,
        #[arg(long, default_value_t = 8)]
        maxlen: usize,
    },
}

#[derive(Debug, Subcommand)]
enum CylindersCmd {
    /// Quotient of the tree of cylinders.
    Quotient {
        file: PathBuf,
        /// Contract edges whose stabilizer is outside the admissible family.
        #[arg(long)]
        collapse: bool,
    },
}

#[derive(Debug, Subcommand)]
enum ExportCmd {
    /// DOT for the graph in a file.
    Dot {
        file: PathBuf,
        /// For atlases: export the tree-of-cylinders quotient instead.
        #[arg(long)]
        quotient: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Identity(String),
}

impl From<GbsError> for Failure {
    fn from(e: GbsError) -> Self {
        match e {
            GbsError::IdentityViolation(_) => Failure::Identity(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Gbs(g) => g.into(),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<OrbifoldError> for Failure {
    fn from(e: OrbifoldError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<CylinderError> for Failure {
    fn from(e: CylinderError) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Ctx {
    seed: u64,
    budget: usize,
}

struct Input {
    bytes: Vec<u8>,
    doc: Document,
}

fn load(path: &Path) -> Result<Input, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|_| Failure::Input(format!("{}: not UTF-8", path.display())))?;
    let doc = io::parse(text).map_err(|e| match Failure::from(e) {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        other => other,
    })?;
    Ok(Input { bytes, doc })
}

fn wrong_kind(path: &Path, wanted: &str) -> Failure {
    Failure::Input(format!("{}: expected a [{wanted}] document", path.display()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let budget = cli.search_budget.unwrap_or_else(|| {
        std::env::var(BUDGET_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET)
    });
    let ctx = Ctx { seed: cli.seed, budget };
    let result = match &cli.command {
        Command::Orbifold(OrbifoldCmd::Analyze { file }) => orbifold_analyze(file),
        Command::Orbifold(OrbifoldCmd::Enumerate { budget }) => orbifold_enumerate(*budget),
        Command::Gbs(GbsCmd::Length { file, word, oracle }) => gbs_length(file, word, *oracle),
        Command::Gbs(GbsCmd::Report { file }) => gbs_report(file, &ctx),
        Command::Lattice(LatticeCmd::Verify { file, words, maxlen }) => lattice_verify(file, *words, *maxlen, &ctx),
        Command::Cylinders(CylindersCmd::Quotient { file, collapse }) => cylinders_quotient(file, *collapse),
        Command::Export(ExportCmd::Dot { file, quotient }) => export_dot(file, *quotient),
    };
    match result {
        Ok(Output::Report(report)) => Outcome {
            code: 0,
            stdout: if cli.json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            },
            stderr: String::new(),
        },
        Ok(Output::Dot(dot, report)) => Outcome {
            code: 0,
            stdout: if cli.json { report.to_json() + "\n" } else { dot },
            stderr: String::new(),
        },
        Err(Failure::Input(m)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
        Err(Failure::Identity(m)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("internal self-check failed (this is a bug): {m}\n"),
        },
    }
}

enum Output {
    Report(Report),
    Dot(String, Report),
}

// ---------------------------------------------------------------- orbifold

fn orbifold_json(o: &Orbifold2) -> Value {
    let small = o.is_small().ok();
    let mcg = o.has_finite_mcg().ok();
    json!({
        "orbifold": o.to_string(),
        "chi": rational_string(o.euler_characteristic()),
        "hyperbolic": o.is_hyperbolic(),
        "small": small.map(|s| s.small),
        "small_family": small.and_then(|s| s.family),
        "finite_mcg": mcg.map(|m| m.finite),
        "mcg_family": mcg.and_then(|m| m.family).map(|f| f.to_string()),
    })
}

fn orbifold_analyze(path: &Path) -> Result<Output, Failure> {
    let input = load(path)?;
    let Some(Body::Orbifold(o)) = &input.doc.body else {
        return Err(wrong_kind(path, "orbifold"));
    };
    let mut r = Report::new("orbifold analyze", Some(&input.bytes), None);
    if let Value::Object(fields) = orbifold_json(o) {
        for (k, v) in fields {
            r.value(&k, v);
        }
    }
    r.value("chi_top", o.topological_euler_characteristic());
    r.value("mirrors", o.mirror_count());
    r.value(
        "boundary",
        serde_json::to_value(o.boundary_components()).expect("plain data"),
    );
    let chi = o.euler_characteristic();
    r.verdict("euler_characteristic", format!("chi = {}", rational_string(chi)));
    r.verdict(
        "is_hyperbolic",
        if o.is_hyperbolic() { "hyperbolic" } else { "not hyperbolic" },
    );
    match o.is_small() {
        Ok(v) => r.verdict(
            "is_small",
            match v.family {
                Some(f) => format!("small (family {f})"),
                None => "not small".to_string(),
            },
        ),
        Err(e) => r.verdict("is_small", format!("undefined: {e}")),
    };
    match o.has_finite_mcg() {
        Ok(v) => r.verdict(
            "has_finite_mcg",
            match v.family {
                Some(f) => format!("finite mapping class group {f}"),
                None => "infinite mapping class group".to_string(),
            },
        ),
        Err(e) => r.verdict("has_finite_mcg", format!("undefined: {e}")),
    };
    Ok(Output::Report(r))
}

fn orbifold_enumerate(budget: usize) -> Result<Output, Failure> {
    let all = orbifold::enumerate(budget);
    let mut r = Report::new("orbifold enumerate", None, None);
    let rows: Vec<Value> = all.iter().map(orbifold_json).collect();
    let count = |key: &str| rows.iter().filter(|v| v[key] == Value::Bool(true)).count();
    r.value("budget", budget)
        .value("count", all.len())
        .value("hyperbolic_count", count("hyperbolic"))
        .value("small_count", count("small"))
        .value("finite_mcg_count", count("finite_mcg"))
        .value("orbifolds", rows);
    r.verdict("enumerate", format!("{} orbifolds with at most {budget} features", all.len()));
    Ok(Output::Report(r))
}

// -------------------------------------------------------------------- gbs

fn gbs_of(path: &Path, doc: &Document) -> Result<GbsSpec, Failure> {
    match &doc.body {
        Some(Body::Gbs(g)) => Ok(g.clone()),
        Some(Body::Master(m)) => Ok(m.gbs.clone()),
        _ => Err(wrong_kind(path, "gbs")),
    }
}

fn crossing_names(g: &LabeledGraph, seq: &[usize]) -> Vec<String> {
    seq.iter().map(|&e| g.edge(e).name.clone()).collect()
}

fn gbs_length(path: &Path, word: &str, oracle: Option<u64>) -> Result<Output, Failure> {
    let input = load(path)?;
    let spec = gbs_of(path, &input.doc)?;
    let g = &spec.graph;
    let gen = match spec.word(word) {
        Some(w) => w.clone(),
        None => g.parse_word(word)?,
    };
    let w = g.expand(&gen)?;
    let nf = britton_reduce(g, &w)?;
    let length = nf.translation_length();
    let mut r = Report::new("gbs length", Some(&input.bytes), None);
    r.value("word", g.format_word(&gen))
        .value("translation_length", length)
        .value("elliptic", length == 0)
        .value("crossing_sequence", crossing_names(g, &nf.crossing_sequence()))
        .value("reduced", nf.reduced.display(g))
        .value("modular", rational_string(modular_homomorphism(g, &w)?));
    r.verdict(
        "translation_length",
        if length == 0 {
            "elliptic".to_string()
        } else {
            format!("hyperbolic, translation length {length}")
        },
    );
    if let Some(radius) = oracle {
        let o = ball_displacement(g, &w, radius)?;
        r.value("oracle", serde_json::to_value(o).expect("plain data"));
        if !o.valid {
            r.verdict("ball_displacement", format!("inconclusive at radius {radius}"));
        } else if o.length == length {
            r.verdict("ball_displacement", format!("agrees: {length}"));
        } else {
            return Err(Failure::Identity(format!(
                "normal form gives {length}, ball oracle gives {}",
                o.length
            )));
        }
    }
    Ok(Output::Report(r))
}

fn gbs_report(path: &Path, ctx: &Ctx) -> Result<Output, Failure> {
    let input = load(path)?;
    let spec = gbs_of(path, &input.doc)?;
    let g = &spec.graph;
    let rep = jsj_report(g)?;
    let mut r = Report::new("gbs report", Some(&input.bytes), None);
    r.value("elementary", rep.elementary.to_string())
        .value("reduced_edges", rep.reduced_edges.clone())
        .value("jsj_trivial", rep.jsj_trivial)
        .value("criterion_holds", rep.criterion_holds)
        .value("compatibility", rep.compatibility.to_string())
        .value("divisibility", serde_json::to_value(&rep.divisibility).expect("plain data"))
        .value("notes", rep.notes.clone())
        .value("search_budget", ctx.budget);
    r.verdict("classify_elementary", rep.elementary.to_string());
    for c in &rep.conclusions {
        r.verdict("jsj_report", c.clone());
    }
    r.verdict("compatibility", rep.compatibility.to_string());
    if matches!(rep.elementary, Elementary::Generic | Elementary::Unknown) {
        match irreducibility_witness(g, ctx.budget)? {
            Some((a, b)) => {
                r.value("irreducibility_witness", vec![g.format_word(&a), g.format_word(&b)]);
                r.verdict(
                    "irreducibility_witness",
                    format!("[{}, {}] is hyperbolic", g.format_word(&a), g.format_word(&b)),
                );
            }
            None => {
                r.value("irreducibility_witness", Value::Null);
                r.verdict(
                    "irreducibility_witness",
                    format!("no witness within word length {}", ctx.budget),
                );
            }
        }
    }
    Ok(Output::Report(r))
}

// ---------------------------------------------------------------- lattice

/// Law and identity checks over a family of collapses and sampled words;
/// returns the list of failures.
fn lattice_checks(m: &MasterSplitting, ks: &[CollapseTree], words: &[GroupWord]) -> Result<(usize, Vec<String>), GbsError> {
    let mut failures = Vec::new();
    let mut pairs = 0;
    let name = |k: &CollapseTree| m.format_collapse(k);
    for (i, a) in ks.iter().enumerate() {
        if a.gcd(a) != *a || a.lcm(a) != *a || !a.refines(a) {
            failures.push(format!("idempotence or reflexivity at {}", name(a)));
        }
        for b in &ks[i + 1..] {
            pairs += 1;
            if !m.verify_modularity(a, b, words)? {
                failures.push(format!("modularity for ({}, {})", name(a), name(b)));
            }
            if a.gcd(b) != b.gcd(a) || a.lcm(b) != b.lcm(a) {
                failures.push(format!("commutativity for ({}, {})", name(a), name(b)));
            }
            if a.gcd(&a.lcm(b)) != *a || a.lcm(&a.gcd(b)) != *a {
                failures.push(format!("absorption for ({}, {})", name(a), name(b)));
            }
            if a.refines(b) && b.refines(a) {
                failures.push(format!("antisymmetry for ({}, {})", name(a), name(b)));
            }
            for w in words {
                m.elliptic_in_lcm(w, &[a.clone(), b.clone()])?;
            }
        }
    }
    for a in ks {
        for w in words {
            let total = m.length_in_collapse(a, w)?;
            let mut parts = 0;
            for p in a.prime_factors() {
                parts += m.length_in_collapse(&p, w)?;
            }
            if parts != total {
                failures.push(format!("sum over prime factors at {}", name(a)));
                break;
            }
            for b in ks {
                if a.refines(b) && m.length_in_collapse(b, w)? > total {
                    failures.push(format!("monotonicity for ({}, {})", name(a), name(b)));
                    break;
                }
            }
        }
    }
    Ok((pairs, failures))
}

fn lattice_verify(path: &Path, n_words: usize, maxlen: usize, ctx: &Ctx) -> Result<Output, Failure> {
    let input = load(path)?;
    let Some(Body::Master(MasterSpec { gbs, kept })) = &input.doc.body else {
        return Err(wrong_kind(path, "master"));
    };
    let m = MasterSplitting::new(gbs.graph.clone());
    let g = m.graph();
    let ks: Vec<CollapseTree> = if kept.is_empty() {
        m.all_collapses()
    } else {
        let distinct: BTreeSet<CollapseTree> = kept.iter().map(|(_, k)| k.clone()).collect();
        distinct.into_iter().collect()
    };
    let words = sample::random_words(g, ctx.seed, n_words, maxlen)
        .iter()
        .map(|w| g.expand(w))
        .collect::<Result<Vec<_>, _>>()?;
    let (pairs, failures) = lattice_checks(&m, &ks, &words)?;
    if !failures.is_empty() {
        return Err(Failure::Identity(failures.join("; ")));
    }
    let sq = m.squarefree_witnesses(&m.full(), ctx.budget)?;
    let single = |e: usize| m.format_collapse(&CollapseTree::new([e]));
    let witnesses: serde_json::Map<String, Value> = sq
        .witnesses
        .iter()
        .map(|(&(a, b), w)| (format!("{} {}", single(a), single(b)), Value::from(g.format_word(w))))
        .collect();
    let unwitnessed: Vec<String> = sq
        .unwitnessed
        .iter()
        .map(|&(a, b)| format!("{} {}", single(a), single(b)))
        .collect();

    let mut r = Report::new("lattice verify", Some(&input.bytes), Some(ctx.seed));
    r.value("collapses", ks.iter().map(|k| m.format_collapse(k)).collect::<Vec<_>>())
        .value("pairs_checked", pairs)
        .value("words", n_words)
        .value("max_word_length", maxlen)
        .value("failures", 0)
        .value("squarefree_witnesses", Value::Object(witnesses))
        .value("unwitnessed", unwitnessed.clone())
        .value("search_budget", ctx.budget);
    r.verdict(
        "verify_modularity",
        format!("modularity holds on {pairs} pairs over {n_words} words"),
    );
    r.verdict("lattice_laws", "commutativity, absorption, idempotence and partial order hold");
    r.verdict("elliptic_in_lcm", "elliptic in the lcm iff elliptic in both, on every sampled word");
    r.verdict(
        "squarefree_witnesses",
        if unwitnessed.is_empty() {
            "every pair of prime factors is separated by a witness".to_string()
        } else {
            format!("{} pairs unverified within word length {}", unwitnessed.len(), ctx.budget)
        },
    );
    Ok(Output::Report(r))
}

// -------------------------------------------------------------- cylinders

fn quotient_of(path: &Path, doc: &Document, collapse: bool) -> Result<(AtlasSpec, QuotientGraph), Failure> {
    let Some(Body::Atlas(spec)) = &doc.body else {
        return Err(wrong_kind(path, "atlas"));
    };
    let mut q = tree_of_cylinders_quotient(&spec.skeleton, &spec.atlas)?;
    if collapse {
        q = collapse_non_a(&q)?;
    }
    Ok((spec.clone(), q))
}

fn cylinders_quotient(path: &Path, collapse: bool) -> Result<Output, Failure> {
    let input = load(path)?;
    let (spec, q) = quotient_of(path, &input.doc, collapse)?;
    let s = &spec.skeleton;
    let cylinders: Vec<Vec<String>> = cylinder_orbits(s, &spec.atlas)
        .iter()
        .map(|c| c.iter().map(|&e| s.edges()[e].name.clone()).collect())
        .collect();
    let nodes: Vec<Value> = q
        .nodes
        .iter()
        .map(|n| json!({"name": n.name, "kind": format!("{:?}", n.kind), "label": n.label}))
        .collect();
    let edges: Vec<Value> = q
        .edges
        .iter()
        .map(|e| json!([q.nodes[e.ends.0].name, q.nodes[e.ends.1].name]))
        .collect();
    let count = |k: NodeKind| q.nodes.iter().filter(|n| n.kind == k).count();

    let mut r = Report::new("cylinders quotient", Some(&input.bytes), None);
    r.value("collapsed", collapse)
        .value("cylinders", cylinders)
        .value("v0", count(NodeKind::V0))
        .value("v1", count(NodeKind::V1))
        .value("edge_count", q.edges.len())
        .value("nodes", nodes)
        .value("edges", edges)
        .value("bipartite", q.is_bipartite())
        .value("connected", q.is_connected());
    r.hypotheses = splitkit::cylinders::validate_atlas(s, &spec.atlas)?;
    let op = if collapse { "collapse_non_a" } else { "tree_of_cylinders_quotient" };
    r.verdict(
        op,
        format!(
            "{} V0 and {} V1 vertices, {} edges",
            count(NodeKind::V0),
            count(NodeKind::V1),
            q.edges.len()
        ),
    );
    Ok(Output::Report(r))
}

fn export_dot(path: &Path, quotient: bool) -> Result<Output, Failure> {
    let input = load(path)?;
    let dot = match &input.doc.body {
        Some(Body::Gbs(g)) => io::dot_gbs(&g.graph),
        Some(Body::Master(m)) => io::dot_gbs(&m.gbs.graph),
        Some(Body::Atlas(a)) if !quotient => io::dot_skeleton(&a.skeleton),
        Some(Body::Atlas(_)) => io::dot_quotient(&quotient_of(path, &input.doc, false)?.1),
        _ => return Err(Failure::Input(format!("{}: no graph to export", path.display()))),
    };
    let mut r = Report::new("export dot", Some(&input.bytes), None);
    r.value("dot", dot.clone());
    Ok(Output::Dot(dot, r))
}
