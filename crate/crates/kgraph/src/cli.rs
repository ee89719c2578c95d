//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage or parse error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::bridging::{bridging_search, coherence_check, polymorphism_from_matrix, FlipsDoc, SearchOutcome};
use crate::constructions::{parse_shift, pullback, skew_product_window, MonoidHom};
use crate::dimension::{
    dge_eq, hom_check, iso_check, parse_element, pointed_check, rank_invariant, sse_search, GeneratorMap, SseOutcome,
};
use crate::error::{KgError, Result};
use crate::fixtures::{fixture_data, fixture_names, resolve_graph_data};
use crate::format::{data_to_json, graph_to_json, GraphDoc};
use crate::graph::KGraph;
use crate::homology::{h0, h0gr_presentation};
use crate::matrix::{parse_matrix, IntMatrix};
use crate::moves::{enumerate_valid_partitions, insplit, sink_color, sink_delete, sink_deleted_set, Partition};

#[derive(Parser, Debug)]
#[command(name = "kgraph", version, about = "Compute with finite higher-rank graphs")]
struct Cli {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the k-graph axioms.
    Validate { graph: String },
    /// Summarize a graph: sizes, vertex matrices, doc string.
    Info { graph: String },
    /// Split a vertex along a partition of its incoming edges.
    Insplit {
        graph: String,
        #[arg(long)]
        vertex: String,
        /// Parts as edge ids, e.g. "h1,f2|h2,f1".
        #[arg(long, conflicts_with = "index")]
        partition: Option<String>,
        /// Use the n-th valid partition (0-based).
        #[arg(long)]
        index: Option<usize>,
        /// List the valid partitions instead of splitting.
        #[arg(long)]
        list: bool,
        /// Write the parent map here.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Delete a sink and everything it reaches.
    Sinkdelete {
        graph: String,
        #[arg(long)]
        vertex: String,
        /// Write the deleted vertex set here.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Pull a graph back along a monoid homomorphism.
    Pullback {
        graph: String,
        /// Images of the generators, e.g. "1;0" or "1,0;0,1".
        #[arg(long)]
        hom: String,
    },
    /// A finite window of the skew product by the degree map.
    SkewWindow {
        graph: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: String,
        #[arg(long, allow_hyphen_values = true)]
        hi: String,
    },
    /// Decide equality of two elements of the dimension group.
    TmEq {
        graph: String,
        /// Terms vertex:shift[:coefficient], joined by spaces or '+'.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Check that a generator map respects the defining relations.
    TmHomCheck {
        source: String,
        target: String,
        /// "v=terms;w=terms" giving the image of each v(0).
        #[arg(long, allow_hyphen_values = true, conflicts_with = "identity")]
        map: Option<String>,
        /// Send each generator to the target generator with the same id.
        #[arg(long)]
        identity: bool,
    },
    /// Check that two generator maps are mutually inverse homomorphisms.
    TmIsoCheck {
        source: String,
        target: String,
        #[arg(long, allow_hyphen_values = true, requires = "bwd", conflicts_with = "identity")]
        fwd: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "fwd")]
        bwd: Option<String>,
        #[arg(long)]
        identity: bool,
        /// Also check that the forward map preserves the order unit.
        #[arg(long)]
        pointed: bool,
    },
    /// Bounded search for matrices R, S with A_p = RS, B_p = SR intertwining both graphs.
    SseSearch {
        a: String,
        b: String,
        #[arg(long, default_value_t = 1)]
        p_max: u32,
        #[arg(long, default_value_t = 1)]
        entry_max: u32,
    },
    /// Rational rank of the dimension group.
    Rank { graph: String },
    /// Zeroth homology of the path groupoid.
    H0 { graph: String },
    /// Graded zeroth homology as presentation data.
    H0gr { graph: String },
    /// Search for coherent flips, or check a given family.
    BridgeSearch {
        lambda: String,
        omega: String,
        /// Row-major, rows split by ';'.
        #[arg(long)]
        matrix: String,
        /// A flip family document to check instead of searching.
        #[arg(long)]
        flips: Option<PathBuf>,
    },
    /// List bundled fixtures, or print one.
    Fixtures { name: Option<String> },
}

/// Result of a successful command: text and JSON renderings.
struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, code: 0 }
    }
}

/// Run with process arguments (including the program name).
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Run writing to the given streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let json = cli.json;
    match dispatch(cli.command) {
        Ok(o) => {
            if json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("values serialize"));
            } else {
                let _ = writeln!(out, "{}", o.text.trim_end());
            }
            o.code
        }
        Err(e) => {
            let code = exit_code(&e);
            if json {
                let doc = json!({"error": error_kind(&e), "message": e.to_string()});
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("values serialize"));
            }
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

fn exit_code(e: &KgError) -> i32 {
    match e {
        KgError::Parse(_) | KgError::Io(_) => 2,
        _ => 1,
    }
}

fn error_kind(e: &KgError) -> &'static str {
    match e {
        KgError::Parse(_) => "parse",
        KgError::Invalid(_) => "invalid",
        KgError::NotComposable => "not_composable",
        KgError::DegreeOutOfRange => "degree_out_of_range",
        KgError::RankMismatch { .. } => "rank_mismatch",
        KgError::DimensionMismatch(_) => "dimension_mismatch",
        KgError::UnknownVertex(_) => "unknown_vertex",
        KgError::UnknownEdge(_) => "unknown_edge",
        KgError::UnknownFixture(_) => "unknown_fixture",
        KgError::EmptyWindow => "empty_window",
        KgError::IndivisibleVertex(_) => "indivisible_vertex",
        KgError::InvalidPartition(_) => "invalid_partition",
        KgError::NotASink(_) => "not_a_sink",
        KgError::NotStrict => "not_strict",
        KgError::NotSurjective => "not_surjective",
        KgError::NotIntertwining => "not_intertwining",
        KgError::InvalidFlips(_) => "invalid_flips",
        KgError::IncoherentPair => "incoherent_pair",
        KgError::Internal(_) => "internal",
        KgError::Io(_) => "io",
    }
}

fn load(arg: &str) -> Result<KGraph> {
    resolve_graph_data(arg)?.validate()
}

fn matrix_arg(text: &str) -> Result<IntMatrix> {
    parse_matrix(text).map_err(KgError::Parse)
}

fn graph_value(g: &KGraph) -> Value {
    serde_json::to_value(GraphDoc::from(&g.to_data())).expect("graph documents serialize")
}

fn matrix_value(m: &IntMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .into_iter()
            .map(|r| Value::Array(r.into_iter().map(|x| big_value(&x)).collect()))
            .collect(),
    )
}

/// Integers as JSON numbers when they fit, strings otherwise.
fn big_value(x: &num_bigint::BigInt) -> Value {
    use num_traits::ToPrimitive;
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// Parse "v=terms;w=terms" into images over `target`, one per source vertex.
fn parse_map(source: &KGraph, target: &KGraph, text: &str) -> Result<GeneratorMap> {
    let mut images = vec![None; source.vertex_count()];
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (v, terms) = part
            .split_once('=')
            .ok_or_else(|| KgError::Parse(format!("map entry {part:?} must look like vertex=terms")))?;
        let v = source.vertex(v.trim())?;
        images[v] = Some(parse_element(target, terms)?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(v, im)| im.ok_or_else(|| KgError::Parse(format!("no image given for {}", source.vertex_id(v)))))
        .collect::<Result<Vec<_>>>()?;
    GeneratorMap::new(source, target, images)
}

fn write_sidecar(path: &Option<PathBuf>, text: &str) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, text)?;
    }
    Ok(())
}

fn dispatch(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Validate { graph } => {
            let g = load(&graph)?;
            Ok(Output::ok(
                format!("valid (k={}, |Λ⁰|={})", g.rank(), g.vertex_count()),
                json!({"valid": true, "rank": g.rank(), "vertices": g.vertex_count(), "edges": g.edges().len()}),
            ))
        }
        Command::Info { graph } => {
            let g = load(&graph)?;
            let mut text = format!(
                "rank {}\nvertices {} [{}]\nedges {}\nsquares {}\nstrict {}\n",
                g.rank(),
                g.vertex_count(),
                g.vertices().join(", "),
                g.edges().len(),
                g.squares().len(),
                g.is_strict()
            );
            let mut mats = Vec::new();
            for i in 1..=g.rank() {
                let m = g.color_matrix(i);
                text.push_str(&format!("A_e{i} = {m}\n"));
                mats.push(matrix_value(&m));
            }
            if let Some(doc) = g.doc() {
                text.push_str(&format!("doc: {doc}\n"));
            }
            Ok(Output::ok(
                text,
                json!({
                    "rank": g.rank(), "vertices": g.vertices(), "edges": g.edges().len(),
                    "squares": g.squares().len(), "strict": g.is_strict(), "matrices": mats, "doc": g.doc(),
                }),
            ))
        }
        Command::Insplit { graph, vertex, partition, index, list, sidecar } => {
            let g = load(&graph)?;
            let v = g.vertex(&vertex)?;
            if list {
                let parts = enumerate_valid_partitions(&g, v)?;
                let shown: Vec<String> = parts.iter().map(|p| p.display(&g)).collect();
                let text = shown.iter().enumerate().map(|(i, s)| format!("{i}: {s}\n")).collect::<String>();
                return Ok(Output::ok(text, json!({"vertex": vertex, "partitions": shown})));
            }
            let p = match (partition, index) {
                (Some(text), _) => Partition::parse(&g, &vertex, &text)?,
                (None, i) => {
                    let parts = enumerate_valid_partitions(&g, v)?;
                    let i = i.unwrap_or(0);
                    parts.get(i).cloned().ok_or_else(|| {
                        KgError::InvalidPartition(format!("index {i} out of range ({} partitions)", parts.len()))
                    })?
                }
            };
            let (split, parents) = insplit(&g, &p)?;
            let parents_json = parents.to_json(&g, &split);
            write_sidecar(&sidecar, &parents_json)?;
            Ok(Output::ok(
                graph_to_json(&split),
                json!({
                    "graph": graph_value(&split),
                    "parents": serde_json::from_str::<Value>(&parents_json).expect("parent map is JSON"),
                }),
            ))
        }
        Command::Sinkdelete { graph, vertex, sidecar } => {
            let g = load(&graph)?;
            let v = g.vertex(&vertex)?;
            let small = sink_delete(&g, v)?;
            let deleted: Vec<&str> = sink_deleted_set(&g, v)?.into_iter().map(|w| g.vertex_id(w)).collect();
            let side = json!({"sink": vertex, "color": sink_color(&g, v), "deleted": deleted});
            write_sidecar(&sidecar, &serde_json::to_string_pretty(&side).expect("values serialize"))?;
            Ok(Output::ok(graph_to_json(&small), json!({"graph": graph_value(&small), "sidecar": side})))
        }
        Command::Pullback { graph, hom } => {
            let g = load(&graph)?;
            let f = MonoidHom::parse(&hom)?;
            let pb = pullback(&g, &f)?;
            Ok(Output::ok(graph_to_json(&pb), graph_value(&pb)))
        }
        Command::SkewWindow { graph, lo, hi } => {
            let g = load(&graph)?;
            let w = skew_product_window(&g, &parse_shift(&lo)?, &parse_shift(&hi)?)?;
            Ok(Output::ok(data_to_json(&w.to_data()), graph_value(&w)))
        }
        Command::TmEq { graph, a, b } => {
            let g = load(&graph)?;
            let (x, y) = (parse_element(&g, &a)?, parse_element(&g, &b)?);
            let eq = dge_eq(&g, &x, &y)?;
            Ok(Output::ok(if eq { "equal" } else { "not equal" }, json!({"equal": eq})))
        }
        Command::TmHomCheck { source, target, map, identity } => {
            let (s, t) = (load(&source)?, load(&target)?);
            let m = match (map, identity) {
                (Some(text), _) => parse_map(&s, &t, &text)?,
                (None, true) => GeneratorMap::same_names(&s, &t)?,
                (None, false) => return Err(KgError::Parse("give --map or --identity".into())),
            };
            let ok = hom_check(&m)?;
            Ok(Output::ok(format!("hom {ok}"), json!({"hom": ok})))
        }
        Command::TmIsoCheck { source, target, fwd, bwd, identity, pointed } => {
            let (s, t) = (load(&source)?, load(&target)?);
            let (f, b) = match (fwd, bwd, identity) {
                (Some(f), Some(b), _) => (parse_map(&s, &t, &f)?, parse_map(&t, &s, &b)?),
                (_, _, true) => (GeneratorMap::same_names(&s, &t)?, GeneratorMap::same_names(&t, &s)?),
                _ => return Err(KgError::Parse("give --fwd and --bwd, or --identity".into())),
            };
            let iso = iso_check(&f, &b)?;
            let mut text = format!("iso {iso}");
            let mut doc = json!({"iso": iso});
            if pointed {
                let p = pointed_check(&f)?;
                text.push_str(&format!("\npointed {p}"));
                doc["pointed"] = json!(p);
            }
            Ok(Output::ok(text, doc))
        }
        Command::SseSearch { a, b, p_max, entry_max } => {
            let (ga, gb) = (load(&a)?, load(&b)?);
            match sse_search(&ga, &gb, p_max, entry_max)? {
                SseOutcome::Found(w) => Ok(Output::ok(
                    format!("found p={}\nR = {}\nS = {}", w.p, w.r, w.s),
                    json!({"found": true, "p": w.p.coords(), "r": matrix_value(&w.r), "s": matrix_value(&w.s)}),
                )),
                SseOutcome::ExhaustedBounds => Ok(Output::ok(
                    format!("exhausted bounds (p_max={p_max}, entry_max={entry_max})"),
                    json!({"found": false, "p_max": p_max, "entry_max": entry_max}),
                )),
            }
        }
        Command::Rank { graph } => {
            let r = rank_invariant(&load(&graph)?);
            Ok(Output::ok(format!("rank {r}"), json!({"rank": r})))
        }
        Command::H0 { graph } => {
            let h = h0(&load(&graph)?)?;
            let torsion: Vec<Value> = h.torsion.iter().map(big_value).collect();
            Ok(Output::ok(h.to_string(), json!({"free_rank": h.free_rank, "torsion": torsion})))
        }
        Command::H0gr { graph } => {
            let p = h0gr_presentation(&load(&graph)?);
            let mut text = String::new();
            for (i, m) in p.matrices.iter().enumerate() {
                text.push_str(&format!("A_e{} = {m}\n", i + 1));
            }
            text.push_str(&format!("rank {}", p.rank));
            let mats: Vec<Value> = p.matrices.iter().map(matrix_value).collect();
            Ok(Output::ok(text, json!({"matrices": mats, "rank": p.rank})))
        }
        Command::BridgeSearch { lambda, omega, matrix, flips } => {
            let (lam, om) = (load(&lambda)?, load(&omega)?);
            let r = matrix_arg(&matrix)?;
            let poly = polymorphism_from_matrix(&lam, &om, &r)?;
            if let Some(path) = flips {
                let fam = FlipsDoc::parse(&std::fs::read_to_string(path)?)?.to_family(&lam, &om, &poly)?;
                let report = coherence_check(&lam, &om, &r, &fam)?;
                return Ok(match report.first_failure {
                    None => Output::ok("coherent", json!({"coherent": true})),
                    Some(fail) => {
                        let shown = fail.display(&lam, &om, &poly);
                        Output::ok(format!("incoherent: {shown}"), json!({"coherent": false, "failure": shown}))
                    }
                });
            }
            match bridging_search(&lam, &om, &r)? {
                SearchOutcome::Found(fam) => {
                    let doc = FlipsDoc::from_family(&lam, &om, &poly, &fam);
                    Ok(Output::ok(
                        format!("found\n{doc}"),
                        json!({"found": true, "flips": serde_json::to_value(&doc).expect("flips serialize")}),
                    ))
                }
                SearchOutcome::Exhausted(n) => Ok(Output::ok(
                    format!("exhausted {n}"),
                    json!({"found": false, "exhausted": n.to_string()}),
                )),
            }
        }
        Command::Fixtures { name } => match name {
            None => {
                let names = fixture_names();
                Ok(Output::ok(names.join("\n"), json!({"fixtures": names})))
            }
            Some(n) => {
                let d = fixture_data(&n)?;
                let text = data_to_json(&d);
                let value: Value = serde_json::from_str(&text).expect("graph document is JSON");
                Ok(Output::ok(text, value))
            }
        },
    }
}
