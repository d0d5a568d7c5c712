//! Command-line front end. Every command writes a JSON report; exit status is
//! 0 on success, 1 when a checked bound fails and 2 on bad input.

use std::io::Write;
use std::path::{Path as FsPath, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coded::reduce_hk_canonical;
use crate::error::{Error, Result};
use crate::families::{gen_example, FamilyParams, Generated};
use crate::fixtures::run_fixtures;
use crate::folding::{displacement_bound, folding_displacement, layout_sham_report};
use crate::graph::RootedTree;
use crate::io::{
    graph_to_json, hk_to_value, parse_graph, parse_hk, parse_store, report_to_csv, report_to_value,
    sha256_hex, store_to_value,
};
use crate::jump_tree::{caterpillar_layout, linearize_decomposition, min_max_decomposition, two_hair_layout};
use crate::metrics::{evaluate, parse_rational, rational_string};
use crate::oracle::{
    exact_bandwidth, exact_jump, exact_min_max_uf, exact_stretch, exact_zero_frag_length, OracleOptions,
};
use crate::store::Store;
use crate::zero_frag::{zero_frag_general, zero_frag_t2};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BOUND: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "dedup-layout",
    version,
    about = "Chunk-store layouts for deduplicated file systems"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Write a named example graph
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "N")]
        big_n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stretch and jump metrics of a store
    Eval {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        store: PathBuf,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// also write the per-path table as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
        /// fail (exit 1) when the stretch metric exceeds this, e.g. `3/2`
        #[arg(long)]
        max_stretch: Option<String>,
        /// fail (exit 1) when the jump metric exceeds this
        #[arg(long)]
        max_jump: Option<usize>,
    },
    /// Folding-based permutation layout of a sparse Hamiltonian graph
    LayoutStretch {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Jump layout of a tree
    LayoutJump {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        root: Option<usize>,
        #[arg(long, value_enum, default_value_t = JumpLayout::Decomposition)]
        layout: JumpLayout,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Store in which every file is one contiguous window
    Zerofrag {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a one-redundant `[H;K]` code to xor-chain form
    ReduceCode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive ground truth on a small graph
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        what: OracleWhat,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        root: Option<usize>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        override_guard: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the worked-example fixture suite
    PaperExamples {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum JumpLayout {
    Decomposition,
    Caterpillar,
    TwoHair,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleWhat {
    Bandwidth,
    Stretch,
    Jump,
    Zerofrag,
    Uf,
}

struct Outcome {
    report: Value,
    /// text for stdout when the report goes to a file
    summary: String,
    ok: bool,
}

fn read(path: &FsPath) -> Result<(String, String)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let hash = sha256_hex(text.as_bytes());
    Ok((text, hash))
}

fn write_out(out: &Option<PathBuf>, body: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, body).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => {
            // a closed pipe downstream is not an error for a report writer
            let _ = writeln!(std::io::stdout(), "{body}");
            Ok(())
        }
    }
}

fn tree_of(g: Generated, root: Option<usize>) -> Result<RootedTree> {
    let t = match g {
        Generated::Tree(t) => t,
        other => {
            let fg = other.to_file_graph();
            let edges: Vec<_> = fg.edges().collect();
            RootedTree::from_edges(fg.n(), &edges, 1)?
        }
    };
    match root {
        Some(r) if r != t.root() => t.reroot(r),
        _ => Ok(t),
    }
}

fn outcome(report: Value, summary: String, ok: bool) -> Result<Outcome> {
    Ok(Outcome { report, summary, ok })
}

fn execute(cmd: Cmd) -> Result<(Outcome, Option<PathBuf>)> {
    Ok(match cmd {
        Cmd::Gen {
            family,
            n,
            k,
            big_n,
            out,
        } => {
            let g = gen_example(&family, &FamilyParams { n, k, big_n })?;
            let body = graph_to_json(&g);
            let v: Value = serde_json::from_str(&body).expect("own output parses");
            (outcome(v, format!("wrote {family}"), true)?, out)
        }
        Cmd::Eval {
            graph,
            store,
            t,
            out,
            csv,
            max_stretch,
            max_jump,
        } => {
            let (gt, gh) = read(&graph)?;
            let (st, sh) = read(&store)?;
            let g = parse_graph(&gt)?.to_file_graph();
            let s = parse_store(&st)?;
            let rep = evaluate(&s, &g, t)?;
            if let Some(p) = &csv {
                std::fs::write(p, report_to_csv(&rep))
                    .map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            }
            let cap = match &max_stretch {
                Some(text) => {
                    Some(parse_rational(text).ok_or_else(|| Error::Parse(format!("bad rational {text:?}")))?)
                }
                None => None,
            };
            let ok =
                cap.is_none_or(|c| rep.stretch_metric <= c) && max_jump.is_none_or(|j| rep.jump_metric <= j);
            let mut v = report_to_value(&rep);
            v["graph_sha256"] = json!(gh);
            v["store_sha256"] = json!(sh);
            let summary = format!(
                "stretch {} jump {}",
                rational_string(&rep.stretch_metric),
                rep.jump_metric
            );
            (outcome(v, summary, ok)?, out)
        }
        Cmd::LayoutStretch { graph, out } => {
            let (gt, gh) = read(&graph)?;
            let Generated::Sham(g) = parse_graph(&gt)? else {
                return Err(Error::InvalidGraph("layout-stretch needs a sham graph".into()));
            };
            let lay = layout_sham_report(&g)?;
            let bound = displacement_bound(g.arc_count());
            let fold_disp = folding_displacement(&lay.folding, &lay.folded)?;
            let ok = lay.displacement <= bound.max(1) && fold_disp <= lay.folding.segments();
            let v = json!({
                "input_sha256": gh,
                "store": store_to_value(&Store::Uncoded(lay.store.clone())),
                "displacement": lay.displacement,
                "bound": bound,
                "source": lay.source.as_str(),
                "doubled": lay.doubled,
                "groups": lay.groups,
                "plan": lay.plan.as_ref().map(|p| json!({"r": p.r, "d": p.d})),
                "folding": lay.folding.values(),
                "segments": lay.folding.segments(),
                "thickness": lay.folding.thickness(),
            });
            (
                outcome(
                    v,
                    format!("displacement {} (bound {bound})", lay.displacement),
                    ok,
                )?,
                out,
            )
        }
        Cmd::LayoutJump {
            tree,
            root,
            layout,
            out,
        } => {
            let (tt, th) = read(&tree)?;
            let t = tree_of(parse_graph(&tt)?, root)?;
            let (d, uf) = min_max_decomposition(&t);
            let (store, cap) = match layout {
                JumpLayout::Decomposition => (linearize_decomposition(&d), 2 * uf),
                JumpLayout::Caterpillar => (caterpillar_layout(&t)?, 3),
                JumpLayout::TwoHair => (two_hair_layout(&t)?, 2),
            };
            let jump = evaluate(&Store::Uncoded(store.clone()), &t.to_file_graph(), t.n())?.jump_metric;
            let v = json!({
                "input_sha256": th,
                "root": t.root(),
                "store": store_to_value(&Store::Uncoded(store)),
                "uf": uf,
                "decomposition": d.paths,
                "jump_metric": jump,
                "jump_bound": cap,
            });
            (
                outcome(v, format!("jump {jump} (bound {cap}), uf {uf}"), jump <= cap)?,
                out,
            )
        }
        Cmd::Zerofrag { graph, t, out } => {
            let (gt, gh) = read(&graph)?;
            let g = parse_graph(&gt)?.to_file_graph();
            if t == 2 {
                let z = zero_frag_t2(&g)?;
                let rep = evaluate(&Store::Uncoded(z.store.clone()), &g, 2)?;
                let ok = rep.stretch_metric == 1.into() && rep.jump_metric == 1;
                let v = json!({
                    "input_sha256": gh,
                    "store": store_to_value(&Store::Uncoded(z.store)),
                    "length": z.length,
                    "formula_upper_bound": z.formula_upper_bound,
                    "added_edges": z.added_edges,
                    "stretch_metric": rational_string(&rep.stretch_metric),
                    "jump_metric": rep.jump_metric,
                });
                (
                    outcome(
                        v,
                        format!("length {} (closed form {})", z.length, z.formula_upper_bound),
                        ok,
                    )?,
                    out,
                )
            } else {
                let z = zero_frag_general(&g, t)?;
                let len = z.store.m();
                let ok = z.lower_bound <= (len as u64).into() && len <= z.upper_bound;
                let v = json!({
                    "input_sha256": gh,
                    "store": store_to_value(&Store::Uncoded(z.store)),
                    "length": len,
                    "path_count": z.path_count,
                    "lower_bound": rational_string(&z.lower_bound),
                    "upper_bound": z.upper_bound,
                });
                (outcome(v, format!("length {len}"), ok)?, out)
            }
        }
        Cmd::ReduceCode { input, out } => {
            let (text, hash) = read(&input)?;
            let code = parse_hk(&text)?;
            let red = reduce_hk_canonical(&code)?;
            let v = json!({
                "input_sha256": hash,
                "code": hk_to_value(&red.code),
                "store": store_to_value(&Store::Coded(red.store.clone())),
                "audit": red.audit.iter().map(|a| json!({
                    "chunk": a.chunk,
                    "input_intervals": a.input,
                    "output_intervals": a.output,
                    "dominated": a.dominated,
                })).collect::<Vec<_>>(),
            });
            (
                outcome(v, format!("dominated: {}", red.dominated()), red.dominated())?,
                out,
            )
        }
        Cmd::Oracle {
            graph,
            what,
            t,
            m,
            root,
            jobs,
            override_guard,
            out,
        } => {
            let (gt, gh) = read(&graph)?;
            let parsed = parse_graph(&gt)?;
            let g = parsed.to_file_graph();
            let mut opts = OracleOptions::from_env();
            opts.override_guard |= override_guard;
            opts.jobs = jobs;
            let m = m.unwrap_or(g.n());
            let value = match what {
                OracleWhat::Bandwidth => json!(exact_bandwidth(&g, &opts)?),
                OracleWhat::Stretch => json!(rational_string(&exact_stretch(&g, t, m, &opts)?)),
                OracleWhat::Jump => json!(exact_jump(&g, t, m, &opts)?),
                OracleWhat::Zerofrag => json!(exact_zero_frag_length(&g, t, &opts)?),
                OracleWhat::Uf => json!(exact_min_max_uf(&tree_of(parsed, root)?, &opts)?),
            };
            let summary = match &value {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let v = json!({
                "input_sha256": gh,
                "what": format!("{what:?}").to_lowercase(),
                "t": t,
                "m": m,
                "value": value,
            });
            (outcome(v, summary, true)?, out)
        }
        Cmd::PaperExamples { max_n, jobs, out } => {
            let opts = OracleOptions {
                override_guard: false,
                jobs,
            };
            let rows = run_fixtures(max_n, &opts)?;
            let ok = rows.iter().all(|r| r.pass);
            let mut table = String::new();
            for r in &rows {
                let mark = if r.pass { "PASS" } else { "FAIL" };
                table.push_str(&format!(
                    "{mark}  {}: expected {}, got {}\n",
                    r.name, r.expected, r.observed
                ));
            }
            let v = json!({ "rows": rows, "all_pass": ok });
            (outcome(v, table.trim_end().to_string(), ok)?, out)
        }
    })
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::Consistency(_) => EXIT_BOUND,
        _ => EXIT_INPUT,
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.cmd) {
        Ok((o, out)) => {
            let body = serde_json::to_string_pretty(&o.report).expect("report serializes");
            if let Err(e) = write_out(&out, &body) {
                eprintln!("error: {e}");
                return EXIT_INPUT;
            }
            if out.is_some() {
                let _ = writeln!(std::io::stdout(), "{}", o.summary);
            }
            if o.ok {
                EXIT_OK
            } else {
                eprintln!("bound violated");
                EXIT_BOUND
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}
