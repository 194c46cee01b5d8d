//! `scoreplay` command-line front end.
//!
//! Data goes to `out`, diagnostics to `err`. [`run`] returns the process exit
//! status so the binary and the tests share one code path.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use scoreplay::octal::{
    best_moves, builtin, grundy_s, parse_rules, positions_up_to, sweep, GameExpander, GrundyCache, OctalRules,
    Position, RatedMove, RuleBook, RulesetId, DEFAULT_BUDGET,
};
use scoreplay::periodicity::{
    certify, check_lemma, conjecture_scan, detect_period, PeriodReport, ScanSpec, DEFAULT_MIN_WINDOW,
};
use scoreplay::{parse_game, Error, Game, Score};

#[derive(Parser, Debug)]
#[command(name = "scoreplay", version, about = "Impartial scoring-play game analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Structured,
    Plain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Final scores, outcome class and impartiality of a game.
    Eval {
        #[arg(long)]
        game: String,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Long-rule sum of two games.
    Sum {
        #[arg(long, num_args = 1, required = true)]
        game: Vec<String>,
        /// Also print final scores and outcome of the sum.
        #[arg(long)]
        eval: bool,
    },
    /// Indented game tree.
    Tree {
        #[arg(long)]
        game: String,
    },
    /// Scoring Grundy value of a position and its best moves.
    Gs {
        #[arg(long, num_args = 1.., required = true)]
        rules: Vec<String>,
        #[arg(long)]
        position: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Values gs(m + n) for n = 0..=max-n.
    Table {
        #[arg(long, num_args = 1.., required = true)]
        rules: Vec<String>,
        #[arg(long, default_value = "")]
        fixed: String,
        #[arg(long)]
        max_n: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Eventual period of gs(m + n), certified when provable.
    Period {
        #[arg(long, num_args = 1.., required = true)]
        rules: Vec<String>,
        #[arg(long, default_value = "")]
        fixed: String,
        #[arg(long)]
        max_n: u32,
        #[arg(long, default_value_t = DEFAULT_MIN_WINDOW)]
        min_window: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Check the alternation identity for a subtraction set with p_i = i.
    Lemma {
        /// Comma-separated subtraction set, e.g. 4,5
        #[arg(long)]
        set: String,
        #[arg(long)]
        imax: u32,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Run a conjecture scan described by a spec file.
    Scan {
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Also write scan.csv and scan.json into this directory.
        #[arg(long)]
        out_dir: Option<String>,
    },
    /// Cross-check gs against minimax on expanded game trees.
    Oracle {
        #[arg(long, num_args = 1.., required = true)]
        rules: Vec<String>,
        #[arg(long)]
        max_total: u32,
        #[arg(long, default_value_t = 5_000_000)]
        max_nodes: usize,
        /// Also require every expanded tree to be impartial.
        #[arg(long)]
        impartial: bool,
    },
}

/// A failure with a one-line diagnostic and an exit status.
struct Failure {
    msg: String,
    status: i32,
}

impl Failure {
    fn input(what: &str, value: &str, e: impl std::fmt::Display) -> Self {
        Failure { msg: format!("{what} `{value}`: {e}"), status: 1 }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { msg: e.to_string(), status: 1 }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 2;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    let mut text = String::new();
    match dispatch(cli.command, &mut text, err) {
        Ok(status) => {
            let _ = out.write_all(text.as_bytes());
            status
        }
        Err(f) => {
            let _ = out.write_all(text.as_bytes());
            let _ = writeln!(err, "error: {}", f.msg);
            f.status
        }
    }
}

fn game_arg(text: &str) -> Result<Game, Failure> {
    parse_game(text).map_err(|e| Failure::input("--game", text, e))
}

/// Loads each `--rules` argument as a file path, or as a builtin name when
/// no such file exists.
fn load_rules(args: &[String]) -> Result<RuleBook, Failure> {
    let mut book = RuleBook::new();
    for arg in args {
        let rules: Vec<OctalRules> = if Path::new(arg).is_file() {
            let text = std::fs::read_to_string(arg).map_err(|e| Failure::input("--rules", arg, e))?;
            parse_rules(&text).map_err(|e| Failure::input("--rules", arg, e))?
        } else if let Some(r) = builtin(arg) {
            vec![r]
        } else {
            return Err(Failure::input("--rules", arg, "no such file or builtin ruleset"));
        };
        for r in rules {
            book.insert(r).map_err(|e| Failure::input("--rules", arg, e))?;
        }
    }
    Ok(book)
}

fn position_arg(flag: &str, literal: &str, book: &RuleBook) -> Result<Position, Failure> {
    Position::parse(literal, book).map_err(|e| Failure::input(flag, literal, e))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct RulesMeta {
    name: String,
    digits: Vec<u8>,
    points: Vec<Score>,
    digest: String,
}

fn rules_meta(book: &RuleBook) -> Vec<RulesMeta> {
    book.iter()
        .map(|(_, r)| RulesMeta {
            name: r.name().to_string(),
            digits: r.digits().to_vec(),
            points: r.points().to_vec(),
            digest: r.digest(),
        })
        .collect()
}

fn describe_move(m: &RatedMove, book: &RuleBook) -> String {
    let name = book.get(m.mv.heap.rules).map(|r| r.name()).unwrap_or("?");
    let left = if m.mv.parts.is_empty() {
        "nothing".to_string()
    } else {
        m.mv.parts.iter().map(u32::to_string).collect::<Vec<_>>().join("+")
    };
    format!(
        "take {} from {}@{} leaving {} (points {}, value {})",
        m.mv.take, m.mv.heap.size, name, left, m.mv.points, m.value
    )
}

fn dispatch(cmd: Command, out: &mut String, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Eval { game, format } => {
            let g = game_arg(&game)?;
            let fs = g.final_scores();
            let outcome = g.outcome();
            let impartial = g.is_impartial();
            match format {
                Format::Structured => {
                    #[derive(Serialize)]
                    struct EvalOut {
                        game: String,
                        sl: Score,
                        sr: Score,
                        outcome: String,
                        impartial: bool,
                    }
                    out.push_str(&json(&EvalOut {
                        game: g.to_string(),
                        sl: fs.sl,
                        sr: fs.sr,
                        outcome: outcome.to_string(),
                        impartial,
                    }));
                }
                Format::Csv => {
                    out.push_str("sl,sr,outcome,impartial\n");
                    let _ = writeln!(out, "{},{},{},{}", fs.sl, fs.sr, outcome, impartial);
                }
                Format::Plain => {
                    let _ = writeln!(out, "sl={} sr={} outcome={} impartial={}", fs.sl, fs.sr, outcome, impartial);
                }
            }
            Ok(0)
        }
        Command::Sum { game, eval } => {
            if game.len() != 2 {
                return Err(Failure {
                    msg: format!("sum takes exactly two --game arguments, got {}", game.len()),
                    status: 2,
                });
            }
            let a = game_arg(&game[0])?;
            let b = game_arg(&game[1])?;
            let s = a.sum(&b);
            let _ = writeln!(out, "{s}");
            if eval {
                let fs = s.final_scores();
                let _ = writeln!(out, "sl={} sr={} outcome={}", fs.sl, fs.sr, s.outcome());
            }
            Ok(0)
        }
        Command::Tree { game } => {
            out.push_str(&game_arg(&game)?.render_tree());
            Ok(0)
        }
        Command::Gs { rules, position, budget, format } => {
            let book = load_rules(&rules)?;
            let p = position_arg("--position", &position, &book)?;
            let mut cache = GrundyCache::with_budget(budget);
            let value = grundy_s(&p, &book, &mut cache)?;
            let best = if p.is_empty() {
                Vec::new()
            } else {
                match best_moves(&p, &book, &mut cache) {
                    Ok(b) => b,
                    Err(Error::NoLegalMoves) => Vec::new(),
                    Err(e) => return Err(e.into()),
                }
            };
            if format == Format::Structured {
                #[derive(Serialize)]
                struct GsOut<'a> {
                    position: String,
                    value: Score,
                    best_moves: &'a [RatedMove],
                    rules: Vec<RulesMeta>,
                }
                out.push_str(&json(&GsOut {
                    position: p.render(&book),
                    value,
                    best_moves: &best,
                    rules: rules_meta(&book),
                }));
            } else {
                let _ = writeln!(out, "value={value}");
                for m in &best {
                    let _ = writeln!(out, "best: {}", describe_move(m, &book));
                }
            }
            Ok(0)
        }
        Command::Table { rules, fixed, max_n, budget, format } => {
            let book = load_rules(&rules)?;
            let base = position_arg("--fixed", &fixed, &book)?;
            let values = sweep(&book, &base, RulesetId(0), max_n, &mut GrundyCache::with_budget(budget))?;
            match format {
                Format::Csv => {
                    out.push_str("n,value\n");
                    for (n, v) in values.iter().enumerate() {
                        let _ = writeln!(out, "{n},{v}");
                    }
                }
                Format::Plain => {
                    for (n, v) in values.iter().enumerate() {
                        let _ = writeln!(out, "gs({n}) = {v}");
                    }
                }
                Format::Structured => {
                    #[derive(Serialize)]
                    struct Row {
                        n: usize,
                        value: Score,
                    }
                    #[derive(Serialize)]
                    struct TableOut {
                        version: &'static str,
                        rules: Vec<RulesMeta>,
                        fixed: String,
                        max_n: u32,
                        sequence_digest: String,
                        values: Vec<Row>,
                    }
                    out.push_str(&json(&TableOut {
                        version: env!("CARGO_PKG_VERSION"),
                        rules: rules_meta(&book),
                        fixed: base.render(&book),
                        max_n,
                        sequence_digest: scoreplay::periodicity::sequence_digest(&values),
                        values: values.iter().enumerate().map(|(n, &value)| Row { n, value }).collect(),
                    }));
                }
            }
            Ok(0)
        }
        Command::Period { rules, fixed, max_n, min_window, budget, format } => {
            let book = load_rules(&rules)?;
            let base = position_arg("--fixed", &fixed, &book)?;
            let values = sweep(&book, &base, RulesetId(0), max_n, &mut GrundyCache::with_budget(budget))?;
            let Some(report) = detect_period(&values, min_window) else {
                let _ = writeln!(out, "period=none checked_up_to={max_n}");
                return Ok(0);
            };
            let report: PeriodReport = if base.is_empty() {
                match certify(book.get(RulesetId(0))?, report.clone(), &values) {
                    Ok(r) => r,
                    Err(e) => {
                        let _ = writeln!(err, "note: not certified: {e}");
                        report
                    }
                }
            } else {
                let _ = writeln!(err, "note: fixed base position, report is empirical");
                report
            };
            match format {
                Format::Structured => out.push_str(&json(&report)),
                Format::Csv => {
                    out.push_str("preperiod,period,checked_up_to,certified,certified_from,sequence_digest\n");
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        report.preperiod,
                        report.period,
                        report.checked_up_to,
                        report.certified,
                        report.certified_from.map(|c| c.to_string()).unwrap_or_default(),
                        report.sequence_digest
                    );
                }
                Format::Plain => {
                    let _ = writeln!(
                        out,
                        "preperiod={} period={} checked_up_to={} certified={} certified_from={} digest={}",
                        report.preperiod,
                        report.period,
                        report.checked_up_to,
                        report.certified,
                        report.certified_from.map(|c| c.to_string()).unwrap_or_else(|| "-".into()),
                        report.sequence_digest
                    );
                }
            }
            Ok(0)
        }
        Command::Lemma { set, imax, format } => {
            let members: Vec<u32> = set
                .split(',')
                .map(|s| s.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|e| Failure::input("--set", &set, e))?;
            let report = check_lemma(&members, imax).map_err(|e| Failure::input("--set", &set, e))?;
            if format == Format::Structured {
                out.push_str(&json(&report));
            } else {
                let set_text: Vec<String> = report.set.iter().map(u32::to_string).collect();
                let _ = writeln!(
                    out,
                    "set={} k={} imax={} failures={} bound_failures={} result={}",
                    set_text.join(","),
                    report.k,
                    report.i_max,
                    report.failures.len(),
                    report.bound_failures.len(),
                    if report.passed() { "pass" } else { "fail" }
                );
                for f in &report.failures {
                    let _ = writeln!(out, "failure: s={} i={} lhs={} rhs={}", f.s, f.i, f.lhs, f.rhs);
                }
                for b in &report.bound_failures {
                    let _ = writeln!(
                        out,
                        "bound failure: {:?} r={} i={} value={} bound={}",
                        b.kind, b.r, b.i, b.value, b.bound
                    );
                }
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Scan { spec, format, out_dir } => {
            let text = std::fs::read_to_string(&spec).map_err(|e| Failure::input("--spec", &spec, e))?;
            let parsed = ScanSpec::parse(&text).map_err(|e| Failure::input("--spec", &spec, e))?;
            let report = conjecture_scan(&parsed).map_err(|e| Failure::input("--spec", &spec, e))?;
            let csv = report.to_csv();
            let structured = report.to_structured();
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(&dir).map_err(|e| Failure::input("--out-dir", &dir, e))?;
                for (file, body) in [("scan.csv", &csv), ("scan.json", &structured)] {
                    let path = Path::new(&dir).join(file);
                    std::fs::write(&path, body).map_err(|e| Failure::input("--out-dir", &dir, e))?;
                }
            }
            match format {
                Format::Structured => out.push_str(&structured),
                Format::Csv => out.push_str(&csv),
                Format::Plain => {
                    let certified = report.rows.iter().filter(|r| r.certified).count();
                    let flagged = report.rows.iter().filter(|r| r.counterexample).count();
                    let _ = writeln!(
                        out,
                        "instances={} certified={} counterexamples={} digest={}",
                        report.rows.len(),
                        certified,
                        flagged,
                        report.digest()
                    );
                }
            }
            Ok(0)
        }
        Command::Oracle { rules, max_total, max_nodes, impartial } => {
            let book = load_rules(&rules)?;
            let ids: Vec<RulesetId> = book.iter().map(|(id, _)| id).collect();
            let mut cache = GrundyCache::new();
            let mut expander = GameExpander::new(&book, max_nodes);
            let mut checked = 0usize;
            let mut failures = 0usize;
            for p in std::iter::once(Position::empty()).chain(positions_up_to(&ids, max_total)) {
                let value = grundy_s(&p, &book, &mut cache)?;
                let game = expander.expand(&p)?;
                let fs = game.final_scores();
                let ok = fs.sl == value && fs.sr == -value && (!impartial || game.is_impartial());
                checked += 1;
                if !ok {
                    failures += 1;
                    let _ = writeln!(out, "mismatch: {} gs={} sl={} sr={}", p.render(&book), value, fs.sl, fs.sr);
                }
            }
            let _ = writeln!(
                out,
                "checked={checked} failures={failures} result={}",
                if failures == 0 { "pass" } else { "fail" }
            );
            Ok(if failures == 0 { 0 } else { 1 })
        }
    }
}
