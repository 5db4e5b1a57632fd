//! coxq: construct Coxeter groups from graphs, inspect their quandles and
//! root systems, and run the adjoint-group verification suite.
//!
//! Machine output is JSON on stdout (CSV for the quandle op table and the
//! cocycle listing); `--pretty` adds a human summary on stderr. Exit codes:
//! 0 pass, 1 check failure, 2 input error, 3 resource cap exceeded.

use clap::{Parser, Subcommand};
use coxeter_quandle::adjoint::AdElement;
use coxeter_quandle::checks::{self, CheckLimits, CheckStatus};
use coxeter_quandle::quandle::{conjugacy_classes, reflection_from_element, reflections};
use coxeter_quandle::rootsys::RootError;
use coxeter_quandle::{
    catalog, parse_graph, CoxeterMatrix, CoxeterSystem, EngineConfig, EngineError,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::path::Path;
use std::process::ExitCode;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "coxq", version, about = "Coxeter quandles and their adjoint groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Element cap for finite enumeration
    #[arg(long, global = true, env = "COX_MAX_ELEMENTS", default_value_t = 2_000_000)]
    max_elements: usize,

    /// Root cap when probing for a finite root system
    #[arg(long, global = true, env = "COX_MAX_ROOTS", default_value_t = 100_000)]
    max_roots: usize,

    /// Braid-orbit saturation budget for the word engine
    #[arg(long, global = true, env = "COX_WORD_BUDGET", default_value_t = 100_000)]
    word_budget: usize,

    /// Also print a human-readable summary to stderr
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Structure counts: |W|, c(W), |Q_W|, |Φ_W|, abelianizations
    Info { graph: String },
    /// Run the verification suite and emit a JSON report
    Verify {
        graph: String,
        /// Comma-separated name fragments selecting which checks run
        #[arg(long)]
        checks: Option<String>,
        /// Seed for the sampled checks
        #[arg(long, default_value_t = 0x0c0c_0c0c)]
        seed: u64,
    },
    /// Emit the quandle operation table as CSV (or classes as JSON)
    Quandle {
        graph: String,
        /// Emit conjugacy classes as JSON instead of the op table
        #[arg(long)]
        classes: bool,
    },
    /// Emit the root system as a JSON table
    Roots { graph: String },
    /// Emit cocycle values c(w1, w2) as CSV rows
    Cocycle {
        graph: String,
        /// "all" (finite groups) or "sample:N"
        #[arg(long)]
        pairs: Option<String>,
        /// Word length bound when sampling an infinite group
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 0x0c0c_0c0c)]
        seed: u64,
    },
    /// Evaluate a product of e-generators given as reflection words
    Adjoint {
        graph: String,
        /// Reflection words ("s t s"), each optionally suffixed by ^-1
        words: Vec<String>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }

    fn cap(message: impl Into<String>) -> Self {
        Failure { code: EXIT_CAP, message: message.into() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("coxq: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let config = EngineConfig {
        max_orbit_states: cli.word_budget,
        max_elements: cli.max_elements,
        max_roots: cli.max_roots,
        ..EngineConfig::default()
    };
    match &cli.command {
        Command::Info { graph } => cmd_info(cli, config, graph),
        Command::Verify { graph, checks, seed } => cmd_verify(cli, config, graph, checks, *seed),
        Command::Quandle { graph, classes } => cmd_quandle(cli, config, graph, *classes),
        Command::Roots { graph } => cmd_roots(cli, config, graph),
        Command::Cocycle { graph, pairs, max_len, seed } => {
            cmd_cocycle(cli, config, graph, pairs.as_deref(), *max_len, *seed)
        }
        Command::Adjoint { graph, words } => cmd_adjoint(cli, config, graph, words),
    }
}

/// Resolve a graph argument: a readable path, inline JSON, the `coxeter X`
/// alias, or a bare catalog name.
fn load_matrix(arg: &str) -> Result<CoxeterMatrix, Failure> {
    let text;
    let source: &str = if Path::new(arg).is_file() {
        text = std::fs::read_to_string(arg)
            .map_err(|e| Failure::input(format!("cannot read {arg}: {e}")))?;
        &text
    } else {
        arg
    };
    let trimmed = source.trim();
    if trimmed.starts_with('{') || trimmed.starts_with("coxeter") {
        parse_graph(trimmed).map_err(|e| Failure::input(e.to_string()))
    } else {
        catalog(trimmed).map_err(|e| Failure::input(e.to_string()))
    }
}

fn build_system(matrix: CoxeterMatrix, config: EngineConfig) -> Result<CoxeterSystem, Failure> {
    CoxeterSystem::new(matrix, config).map_err(|e| match e {
        RootError::CapExceeded { .. } => unreachable!("auto engine absorbs the root cap"),
        other => Failure::input(other.to_string()),
    })
}

fn emit(value: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable output"));
}

#[derive(Serialize)]
struct InfoJson {
    graph: serde_json::Value,
    order: Option<usize>,
    order_note: String,
    classes: usize,
    reflections: Option<usize>,
    roots: Option<usize>,
    w_ab: String,
    ad_ab_rank: usize,
}

fn cmd_info(cli: &Cli, config: EngineConfig, graph: &str) -> Result<u8, Failure> {
    let matrix = load_matrix(graph)?;
    let sys = build_system(matrix, config)?;
    let c = sys.odd().count;

    let mut capped = false;
    let order = if sys.engine().is_permutation_backed() {
        match sys.engine().enumerate() {
            Ok(table) => Some(table.len()),
            Err(EngineError::EnumerationCapExceeded { .. }) => {
                capped = true;
                None
            }
            Err(e) => return Err(Failure::cap(e.to_string())),
        }
    } else {
        capped = true;
        None
    };
    let roots = sys.roots().map(|phi| phi.len());
    let info = InfoJson {
        graph: sys.matrix().to_json(),
        order,
        order_note: if capped { "infinite (cap)".into() } else { "exact".into() },
        classes: c,
        reflections: roots.map(|r| r / 2),
        roots,
        w_ab: format!("(Z/2)^{c}"),
        ad_ab_rank: c,
    };
    emit(&info);
    if cli.pretty {
        eprintln!(
            "|W| = {}  c(W) = {}  |Q| = {}  |Phi| = {}  W_Ab = {}  Ad_Ab rank = {}",
            info.order.map_or_else(|| info.order_note.clone(), |o| o.to_string()),
            info.classes,
            info.reflections.map_or_else(|| "?".into(), |x| x.to_string()),
            info.roots.map_or_else(|| "?".into(), |x| x.to_string()),
            info.w_ab,
            info.ad_ab_rank,
        );
    }
    Ok(if capped { EXIT_CAP } else { 0 })
}

#[derive(Serialize)]
struct CheckJson {
    name: String,
    status: String,
    detail: String,
    ms: u64,
}

#[derive(Serialize)]
struct Summary {
    pass: usize,
    fail: usize,
    skipped: usize,
}

#[derive(Serialize)]
struct ReportJson {
    graph: serde_json::Value,
    checks: Vec<CheckJson>,
    summary: Summary,
}

fn cmd_verify(
    cli: &Cli,
    config: EngineConfig,
    graph: &str,
    filter: &Option<String>,
    seed: u64,
) -> Result<u8, Failure> {
    let matrix = load_matrix(graph)?;
    let sys = build_system(matrix, config)?;
    let limits = CheckLimits { seed, ..CheckLimits::default() };
    let tokens: Vec<String> = filter
        .as_deref()
        .map(|f| f.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect())
        .unwrap_or_default();
    let outcomes = checks::run_filtered(&sys, &limits, |name| {
        tokens.is_empty() || tokens.iter().any(|t| name.contains(t.as_str()))
    });

    let mut summary = Summary { pass: 0, fail: 0, skipped: 0 };
    let checks_json: Vec<CheckJson> = outcomes
        .iter()
        .map(|o| {
            let status = match o.status {
                CheckStatus::Pass => {
                    summary.pass += 1;
                    "pass"
                }
                CheckStatus::Fail => {
                    summary.fail += 1;
                    "fail"
                }
                CheckStatus::Skipped => {
                    summary.skipped += 1;
                    "skipped"
                }
            };
            CheckJson {
                name: o.name.to_string(),
                status: status.to_string(),
                detail: o.detail.clone(),
                ms: o.elapsed_ms,
            }
        })
        .collect();
    let report = ReportJson { graph: sys.matrix().to_json(), checks: checks_json, summary };
    emit(&report);
    if cli.pretty {
        for check in &report.checks {
            eprintln!("{:<32} {:<8} {}", check.name, check.status, check.detail);
        }
        eprintln!(
            "pass {}  fail {}  skipped {}",
            report.summary.pass, report.summary.fail, report.summary.skipped
        );
    }
    Ok(if report.summary.fail > 0 { EXIT_CHECK_FAILED } else { 0 })
}

fn enumerated(sys: &CoxeterSystem) -> Result<coxeter_quandle::GroupTable, Failure> {
    if !sys.engine().is_permutation_backed() {
        return Err(Failure::cap("group is infinite (root cap exceeded); no finite table"));
    }
    sys.engine().enumerate().map_err(|e| Failure::cap(e.to_string()))
}

#[derive(Serialize)]
struct QuandleClassesJson {
    graph: serde_json::Value,
    reflections: usize,
    classes: Vec<Vec<u32>>,
    items: Vec<QuandleItemJson>,
}

#[derive(Serialize)]
struct QuandleItemJson {
    index: u32,
    word: String,
    class: usize,
}

fn cmd_quandle(cli: &Cli, config: EngineConfig, graph: &str, classes: bool) -> Result<u8, Failure> {
    let matrix = load_matrix(graph)?;
    let sys = build_system(matrix, config)?;
    let table = enumerated(&sys)?;
    let q = reflections(&table, sys.odd());

    if classes {
        let parts = conjugacy_classes(&q);
        let items = (0..q.len() as u32)
            .map(|i| QuandleItemJson {
                index: i,
                word: sys.matrix().format_word(q.item(i).element.word()),
                class: q.item(i).class_index,
            })
            .collect();
        emit(&QuandleClassesJson {
            graph: sys.matrix().to_json(),
            reflections: q.len(),
            classes: parts,
            items,
        });
    } else {
        let mut writer = csv::Writer::from_writer(std::io::stdout());
        let mut header = vec!["x".to_string()];
        header.extend((0..q.len()).map(|i| i.to_string()));
        writer.write_record(&header).map_err(|e| Failure::input(e.to_string()))?;
        for x in 0..q.len() as u32 {
            let mut row = vec![x.to_string()];
            row.extend((0..q.len() as u32).map(|y| q.op(x, y).to_string()));
            writer.write_record(&row).map_err(|e| Failure::input(e.to_string()))?;
        }
        writer.flush().map_err(|e| Failure::input(e.to_string()))?;
    }
    if cli.pretty {
        eprintln!("|Q| = {} reflections in {} classes", q.len(), sys.odd().count);
    }
    Ok(0)
}

#[derive(Serialize)]
struct RootsJson {
    graph: serde_json::Value,
    count: usize,
    positive: usize,
    roots: Vec<RootJson>,
}

#[derive(Serialize)]
struct RootJson {
    index: u32,
    coords: Vec<f64>,
    sign: i8,
    reflection: String,
    class: usize,
}

fn cmd_roots(cli: &Cli, config: EngineConfig, graph: &str) -> Result<u8, Failure> {
    let matrix = load_matrix(graph)?;
    let sys = build_system(matrix, config)?;
    let Some(phi) = sys.roots() else {
        return Err(Failure::cap("root system is infinite (cap exceeded)"));
    };
    let round6 = |x: f64| {
        let r = (x * 1e6).round() / 1e6;
        if r == 0.0 {
            0.0
        } else {
            r
        }
    };
    let roots: Vec<RootJson> = (0..phi.len() as u32)
        .map(|i| RootJson {
            index: i,
            coords: phi.coords(i).iter().map(|&x| round6(x)).collect(),
            sign: phi.sign(i),
            reflection: sys.matrix().format_word(phi.reflection_word(i)),
            class: phi.class_of(i),
        })
        .collect();
    emit(&RootsJson {
        graph: sys.matrix().to_json(),
        count: phi.len(),
        positive: phi.positive_count(),
        roots,
    });
    if cli.pretty {
        eprintln!("|Phi| = {} roots ({} positive)", phi.len(), phi.positive_count());
    }
    Ok(0)
}

enum PairPlan {
    All,
    Sample(usize),
}

fn parse_pairs(arg: Option<&str>, finite: bool) -> Result<PairPlan, Failure> {
    match arg {
        None => Ok(if finite { PairPlan::All } else { PairPlan::Sample(1000) }),
        Some("all") => {
            if finite {
                Ok(PairPlan::All)
            } else {
                Err(Failure::cap("--pairs all needs a finite group; use sample:N"))
            }
        }
        Some(s) => match s.strip_prefix("sample:").and_then(|n| n.parse::<usize>().ok()) {
            Some(n) => Ok(PairPlan::Sample(n)),
            None => Err(Failure::input(format!("bad --pairs value {s:?}"))),
        },
    }
}

fn cmd_cocycle(
    cli: &Cli,
    config: EngineConfig,
    graph: &str,
    pairs: Option<&str>,
    max_len: usize,
    seed: u64,
) -> Result<u8, Failure> {
    let matrix = load_matrix(graph)?;
    let sys = build_system(matrix, config)?;
    let model = sys.adjoint();
    let finite = sys.engine().is_permutation_backed();
    let plan = parse_pairs(pairs, finite)?;

    let mut writer = csv::Writer::from_writer(std::io::stdout());
    writer.write_record(["w1", "w2", "c"]).map_err(|e| Failure::input(e.to_string()))?;
    let mut rows = 0usize;
    let mut write_pair = |writer: &mut csv::Writer<std::io::Stdout>,
                          a: &coxeter_quandle::GroupElement,
                          b: &coxeter_quandle::GroupElement|
     -> Result<(), Failure> {
        let c = model.cocycle(a, b).map_err(|e| Failure::cap(e.to_string()))?;
        let joined = c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let w1 = sys.matrix().format_word(a.word());
        let w2 = sys.matrix().format_word(b.word());
        rows += 1;
        writer
            .write_record(&[w1, w2, joined])
            .map_err(|e| Failure::input(e.to_string()))
    };

    match plan {
        PairPlan::All => {
            let table = enumerated(&sys)?;
            for i in 0..table.len() as u32 {
                for j in 0..table.len() as u32 {
                    write_pair(&mut writer, table.element(i), table.element(j))?;
                }
            }
        }
        PairPlan::Sample(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if finite {
                let table = enumerated(&sys)?;
                for _ in 0..n {
                    let i = rng.gen_range(0..table.len() as u32);
                    let j = rng.gen_range(0..table.len() as u32);
                    write_pair(&mut writer, table.element(i), table.element(j))?;
                }
            } else {
                let rank = sys.matrix().rank() as u8;
                for _ in 0..n {
                    let mut sample = || -> Result<coxeter_quandle::GroupElement, Failure> {
                        let len = rng.gen_range(0..=max_len);
                        let word: Vec<u8> = (0..len).map(|_| rng.gen_range(0..rank)).collect();
                        sys.engine().canonicalize(&word).map_err(|e| Failure::cap(e.to_string()))
                    };
                    let a = sample()?;
                    let b = sample()?;
                    write_pair(&mut writer, &a, &b)?;
                }
            }
        }
    }
    writer.flush().map_err(|e| Failure::input(e.to_string()))?;
    if cli.pretty {
        eprintln!("{rows} cocycle rows");
    }
    Ok(0)
}

#[derive(Serialize)]
struct AdjointJson {
    graph: serde_json::Value,
    factors: usize,
    v: Vec<i64>,
    w: String,
    length: usize,
}

fn cmd_adjoint(
    cli: &Cli,
    config: EngineConfig,
    graph: &str,
    words: &[String],
) -> Result<u8, Failure> {
    let matrix = load_matrix(graph)?;
    let sys = build_system(matrix, config)?;
    let model = sys.adjoint();
    let mut acc = model.identity();
    for raw in words {
        let (text, inverted) = match raw.strip_suffix("^-1") {
            Some(t) => (t, true),
            None => (raw.as_str(), false),
        };
        let word = sys
            .matrix()
            .parse_word(text)
            .map_err(|e| Failure::input(e.to_string()))?;
        let element = sys
            .engine()
            .canonicalize(&word)
            .map_err(|e| Failure::cap(e.to_string()))?;
        let refl = reflection_from_element(sys.engine(), sys.odd(), &element)
            .map_err(|e| Failure::cap(e.to_string()))?
            .ok_or_else(|| Failure::input(format!("{text:?} is not a reflection")))?;
        let mut factor: AdElement =
            model.embed(&refl).map_err(|e| Failure::cap(e.to_string()))?;
        if inverted {
            factor = model.inv(&factor).map_err(|e| Failure::cap(e.to_string()))?;
        }
        acc = model.mul(&acc, &factor).map_err(|e| Failure::cap(e.to_string()))?;
    }
    let out = AdjointJson {
        graph: sys.matrix().to_json(),
        factors: words.len(),
        v: acc.v.clone(),
        w: sys.matrix().format_word(acc.w.word()),
        length: acc.w.length(),
    };
    emit(&out);
    if cli.pretty {
        eprintln!("product of {} e-generators: v = {:?}, w = {:?}", out.factors, out.v, out.w);
    }
    Ok(0)
}
