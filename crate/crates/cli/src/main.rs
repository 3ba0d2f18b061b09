//! Command-line surface: classify defining graphs, dump presentations,
//! enumerate maximal reducible subgraphs, push down coloured words, decide
//! the word problem, and build witness words.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use dehnscope_core::classify::{dehn_exponent, ClassificationReport, ClassifyError};
use dehnscope_core::coloured::{pushdown, ColouredWord, PushdownConfig};
use dehnscope_core::graph::{SimplicialGraph, VertexSet};
use dehnscope_core::homology::{h1_invariants, simply_connected_status, ScStatus, DEFAULT_PI1_BUDGET};
use dehnscope_core::presentation::bbg_presentation;
use dehnscope_core::reducible::maximal_reducible_subgraphs;
use dehnscope_core::witness::witness_words;
use dehnscope_core::words::{words_equal, Word};

const EXIT_PARSE: u8 = 1;
const EXIT_NOT_FP: u8 = 2;
const EXIT_UNVERIFIED: u8 = 3;
const EXIT_CAP: u8 = 4;

#[derive(Parser)]
#[command(name = "dehnscope", version, about = "Dehn function classification for Bestvina-Brady groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Graph file (or, for classify, a directory of .graph files).
    file: PathBuf,
    /// Emit a JSON report instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the Dehn function exponent of the group of a graph.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Move budget for the simple-connectivity check.
        #[arg(long)]
        pi1_budget: Option<usize>,
        /// Worker threads for directory classification.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print the finite presentation over spanning-tree generators.
    Present {
        #[command(flatten)]
        common: Common,
        /// Spanning tree strategy (only breadth-first is available).
        #[arg(long, default_value = "bfs")]
        tree: String,
    },
    /// List all maximal reducible subgraphs with their flags.
    Reducible {
        #[command(flatten)]
        common: Common,
    },
    /// Push a coloured word down to an alternating word.
    Pushdown {
        #[command(flatten)]
        common: Common,
        /// Coloured word, tokens `s:a` / `s:a'`.
        #[arg(long)]
        word: String,
        /// Starting height.
        #[arg(long, default_value_t = 0)]
        height: i64,
        /// Base generator name (default: the least vertex).
        #[arg(long)]
        base: Option<String>,
    },
    /// Decide whether two words represent the same group element.
    Wordprob {
        #[command(flatten)]
        common: Common,
        /// Exactly two words, tokens `a` / `a'`.
        #[arg(long = "word", num_args = 1, action = clap::ArgAction::Append)]
        words: Vec<String>,
    },
    /// Build the witness word family over the first essential maximal
    /// reducible subgraph.
    Witness {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
    },
    /// Check simple connectivity of the flag complex.
    Flagcheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        pi1_budget: Option<usize>,
    },
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    command: String,
    input: InputInfo,
    version: String,
    result: T,
}

#[derive(Serialize)]
struct InputInfo {
    path: String,
    sha256: String,
}

fn input_info(path: &Path, bytes: &[u8]) -> InputInfo {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    InputInfo {
        path: path.display().to_string(),
        sha256: format!("{:x}", hasher.finalize()),
    }
}

fn emit<T: Serialize>(common: &Common, command: &str, bytes: &[u8], result: T, text: String) {
    if common.json {
        let report = Report {
            command: command.to_string(),
            input: input_info(&common.file, bytes),
            version: env!("CARGO_PKG_VERSION").to_string(),
            result,
        };
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        print!("{text}");
    }
}

fn load_graph(path: &Path) -> Result<(SimplicialGraph, Vec<u8>), String> {
    let bytes = std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| "input is not UTF-8".to_string())?;
    let g = SimplicialGraph::parse(&text).map_err(|e| e.to_string())?;
    Ok((g, bytes))
}

fn pi1_budget(cli_value: Option<usize>) -> usize {
    cli_value
        .or_else(|| {
            std::env::var("DEHNSCOPE_PI1_BUDGET")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_PI1_BUDGET)
}

fn sc_status_text(s: &ScStatus) -> String {
    match s {
        ScStatus::Verified { moves_used } => format!("verified (moves: {moves_used})"),
        ScStatus::Refuted { .. } => "refuted".to_string(),
        ScStatus::Unknown { budget } => format!("unknown (budget: {budget})"),
    }
}

fn set_text(g: &SimplicialGraph, s: &VertexSet) -> String {
    s.display(g).to_string()
}

fn classification_text(g: &SimplicialGraph, path: &Path, r: &ClassificationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("graph: {}\n", path.display()));
    out.push_str(&format!("d1: {}\n", sc_status_text(&r.d1_status)));
    out.push_str(&format!("tree: {}\n", r.is_tree));
    out.push_str(&format!(
        "essential_witness: {}\n",
        r.essential_witness
            .as_ref()
            .map(|w| set_text(g, &w.vertices))
            .unwrap_or_else(|| "none".into())
    ));
    out.push_str(&format!(
        "non_simply_connected_witness: {}\n",
        r.non_simply_connected_witness
            .as_ref()
            .map(|w| set_text(g, &w.vertices))
            .unwrap_or_else(|| "none".into())
    ));
    out.push_str(&format!("exponent: {}\n", r.exponent));
    out.push_str(&format!("cat0_obstructed: {}\n", r.cat0_obstructed));
    out.push_str(&format!("cones_simply_connected: {}\n", r.cones_simply_connected));
    out
}

fn run_classify_file(common: &Common, budget: usize) -> Result<u8, String> {
    let (g, bytes) = load_graph(&common.file)?;
    match dehn_exponent(&g, budget) {
        Ok(report) => {
            let text = classification_text(&g, &common.file, &report);
            emit(common, "classify", &bytes, &report, text);
            Ok(0)
        }
        Err(ClassifyError::NotFinitelyPresented { status }) => {
            let text = format!(
                "graph: {}\nd1: refuted\nerror: not finitely presented\n",
                common.file.display()
            );
            emit(
                common,
                "classify",
                &bytes,
                serde_json::json!({"error": "not_finitely_presented", "d1_status": status}),
                text,
            );
            Ok(EXIT_NOT_FP)
        }
        Err(ClassifyError::D1Unverified { partial }) => {
            let text = format!(
                "graph: {}\nd1: unknown\nerror: simple connectivity unverified within budget\n",
                common.file.display()
            );
            emit(
                common,
                "classify",
                &bytes,
                serde_json::json!({"error": "d1_unverified", "partial": *partial}),
                text,
            );
            Ok(EXIT_UNVERIFIED)
        }
        Err(ClassifyError::Disconnected) => Err("graph is disconnected".into()),
    }
}

fn classify_directory(common: &Common, budget: usize, jobs: usize) -> Result<u8, String> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(&common.file)
        .map_err(|e| format!("cannot read directory {}: {e}", common.file.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().map(|x| x == "graph").unwrap_or(false))
        .collect();
    files.sort();
    let jobs = jobs.max(1);
    let mut results: Vec<Option<(String, u8)>> = vec![None; files.len()];
    std::thread::scope(|scope| {
        let chunks: Vec<Vec<usize>> = (0..jobs)
            .map(|j| (j..files.len()).step_by(jobs).collect())
            .collect();
        let mut handles = Vec::new();
        for chunk in chunks {
            let files = &files;
            handles.push(scope.spawn(move || {
                let mut out = Vec::new();
                for idx in chunk {
                    let entry = match load_graph(&files[idx]) {
                        Err(e) => (format!("graph: {}\nerror: {e}\n", files[idx].display()), EXIT_PARSE),
                        Ok((g, _)) => match dehn_exponent(&g, budget) {
                            Ok(r) => (classification_text(&g, &files[idx], &r), 0),
                            Err(ClassifyError::NotFinitelyPresented { .. }) => (
                                format!("graph: {}\nerror: not finitely presented\n", files[idx].display()),
                                EXIT_NOT_FP,
                            ),
                            Err(e) => (format!("graph: {}\nerror: {e}\n", files[idx].display()), EXIT_UNVERIFIED),
                        },
                    };
                    out.push((idx, entry));
                }
                out
            }));
        }
        for h in handles {
            for (idx, entry) in h.join().expect("worker panicked") {
                results[idx] = Some(entry);
            }
        }
    });
    let mut code = 0u8;
    for entry in results.into_iter().flatten() {
        print!("{}", entry.0);
        if code == 0 {
            code = entry.1;
        }
    }
    Ok(code)
}

fn run() -> Result<u8, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify {
            common,
            pi1_budget: b,
            jobs,
        } => {
            let budget = pi1_budget(b);
            if common.file.is_dir() {
                classify_directory(&common, budget, jobs)
            } else {
                run_classify_file(&common, budget)
            }
        }
        Command::Present { common, tree } => {
            if tree != "bfs" {
                return Err(format!("unknown spanning tree strategy `{tree}`"));
            }
            let (g, bytes) = load_graph(&common.file)?;
            let t = g.spanning_tree().map_err(|e| e.to_string())?;
            let pres = bbg_presentation(&g, &t).map_err(|e| e.to_string())?;
            let edge_name = |e: &(usize, usize)| format!("{}-{}", g.name(e.0), g.name(e.1));
            let mut text = String::new();
            if pres.flagged_not_simply_connected {
                text.push_str("warning: flag complex is not simply connected\n");
            }
            for gen in &pres.generators {
                text.push_str(&format!("gen: {}\n", edge_name(gen)));
            }
            for rel in &pres.relators {
                text.push_str(&format!(
                    "rel: [ {} , {} ]\n",
                    rel.left.display(&g),
                    rel.right.display(&g)
                ));
            }
            let json = serde_json::json!({
                "generators": pres.generators.iter().map(edge_name).collect::<Vec<_>>(),
                "relators": pres.relators.iter().map(|r| serde_json::json!({
                    "triangle": [g.name(r.triangle.0), g.name(r.triangle.1), g.name(r.triangle.2)],
                    "left": r.left.display(&g).to_string(),
                    "right": r.right.display(&g).to_string(),
                })).collect::<Vec<_>>(),
                "flagged_not_simply_connected": pres.flagged_not_simply_connected,
            });
            emit(&common, "present", &bytes, json, text);
            Ok(0)
        }
        Command::Reducible { common } => {
            let (g, bytes) = load_graph(&common.file)?;
            let sets = maximal_reducible_subgraphs(&g);
            let mut text = String::new();
            for s in &sets {
                let kind = if s.essential {
                    "essential"
                } else if s.cone {
                    "cone"
                } else {
                    "other"
                };
                let factors: Vec<String> =
                    s.decomposition.factors.iter().map(|f| set_text(&g, f)).collect();
                text.push_str(&format!(
                    "set={} factors={} kind={} flag_simply_connected={}\n",
                    set_text(&g, &s.vertices),
                    factors.join("*"),
                    kind,
                    s.flag_simply_connected
                ));
            }
            let json = serde_json::json!(sets);
            emit(&common, "reducible", &bytes, json, text);
            Ok(0)
        }
        Command::Pushdown {
            common,
            word,
            height,
            base,
        } => {
            let (g, bytes) = load_graph(&common.file)?;
            let cw = ColouredWord::parse(&g, &word).map_err(|e| e.to_string())?;
            let cfg = match base {
                None => PushdownConfig::new(&g),
                Some(name) => {
                    let v = g.vertex(&name).map_err(|e| e.to_string())?;
                    PushdownConfig::with_base(&g, v)
                }
            }
            .map_err(|e| e.to_string())?;
            let out = pushdown(&cfg, &g, &cw, height);
            let text = format!("pushdown: {}\nlength: {}\n", out.display(&g), out.len());
            let json = serde_json::json!({
                "word": out.display(&g).to_string(),
                "length": out.len(),
            });
            emit(&common, "pushdown", &bytes, json, text);
            Ok(0)
        }
        Command::Wordprob { common, words } => {
            if words.len() != 2 {
                return Err("wordprob needs exactly two --word arguments".into());
            }
            let (g, bytes) = load_graph(&common.file)?;
            let u = Word::parse(&g, &words[0]).map_err(|e| e.to_string())?;
            let v = Word::parse(&g, &words[1]).map_err(|e| e.to_string())?;
            let equal = words_equal(&g, &u, &v);
            let text = format!("equal: {equal}\n");
            emit(&common, "wordprob", &bytes, serde_json::json!({ "equal": equal }), text);
            Ok(0)
        }
        Command::Witness { common, n } => {
            let (g, bytes) = load_graph(&common.file)?;
            let lambda = dehnscope_core::reducible::essential_maximal_reducible(&g)
                .ok_or("graph has no essential maximal reducible subgraph")?;
            let fam = witness_words(&g, &lambda.vertices, n).map_err(|e| e.to_string())?;
            let text = format!(
                "lambda: {}\nk: {}\nl: {}\nn: {}\nw_prime: {}\nw_second: {}\nw_length: {}\nnull_homotopic: true\n",
                set_text(&g, &fam.lambda),
                fam.k(),
                fam.l(),
                fam.n,
                fam.w_prime.display(&g),
                fam.w_second.display(&g),
                fam.w.len(),
            );
            let json = serde_json::json!({
                "lambda": set_text(&g, &fam.lambda),
                "k": fam.k(),
                "l": fam.l(),
                "n": fam.n,
                "w_prime": fam.w_prime.display(&g).to_string(),
                "w_second": fam.w_second.display(&g).to_string(),
                "w": fam.w.display(&g).to_string(),
                "w_length": fam.w.len(),
                "null_homotopic": true,
            });
            emit(&common, "witness", &bytes, json, text);
            Ok(0)
        }
        Command::Flagcheck { common, pi1_budget: b } => {
            let (g, bytes) = load_graph(&common.file)?;
            let h1 = h1_invariants(&g);
            let status = simply_connected_status(&g, pi1_budget(b));
            let h1_text = if h1.is_trivial() {
                "trivial".to_string()
            } else {
                let parts: Vec<String> = h1
                    .as_list()
                    .iter()
                    .map(|d| {
                        if *d == 0.into() {
                            "Z".to_string()
                        } else {
                            format!("Z/{d}")
                        }
                    })
                    .collect();
                parts.join(" + ")
            };
            let text = format!("h1: {h1_text}\nstatus: {}\n", sc_status_text(&status));
            let json = serde_json::json!({
                "h1": h1_text,
                "status": status,
            });
            emit(&common, "flagcheck", &bytes, json, text);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            if msg.contains("cap exceeded") {
                ExitCode::from(EXIT_CAP)
            } else {
                ExitCode::from(EXIT_PARSE)
            }
        }
    }
}
