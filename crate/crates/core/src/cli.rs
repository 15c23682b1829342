//! The `mdeg` command-line front end.
//!
//! Exit codes: 0 for a definitive answer or computed value, 2 for an
//! `Unknown` verdict or an inconclusive search, 1 for usage and input errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::automorphism::{
    build_witness, default_support_degree, reduction_search, PolyMap, PolyMapJson,
};
use crate::bracket::bracket;
use crate::classify::{Classifier, Status, Verdict};
use crate::degree::{exclude_all, type_iii_witnesses, BracketBounds};
use crate::pairs::{su_lower_bound, SuQuery};
use crate::poly::Polynomial;
use crate::semigroup::lemma31_check;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    /// What goes to standard output; the JSON payload unless a human
    /// rendering was asked for.
    pub stdout: String,
    pub payload: Option<Value>,
    pub diagnostics: String,
}

impl CommandResult {
    fn json(exit_code: i32, payload: Value) -> Self {
        CommandResult {
            exit_code,
            stdout: payload.to_string(),
            payload: Some(payload),
            diagnostics: String::new(),
        }
    }

    fn error(msg: impl Into<String>) -> Self {
        CommandResult {
            exit_code: 1,
            stdout: String::new(),
            payload: None,
            diagnostics: msg.into(),
        }
    }

    fn note(mut self, msg: &str) -> Self {
        if !msg.is_empty() {
            if !self.diagnostics.is_empty() {
                self.diagnostics.push('\n');
            }
            self.diagnostics.push_str(msg);
        }
        self
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "mdeg",
    version,
    about = "Multidegrees of tame automorphisms of affine 3-space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a degree triple.
    Classify {
        d1: u64,
        d2: u64,
        d3: u64,
        #[arg(long)]
        json: bool,
    },
    /// Classify (a, a+d, a+2d).
    ClassifyAp {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        d: u64,
    },
    /// Classify every (a, d) with 1 <= a <= a-max, 0 <= d <= d-max as JSON lines.
    Sweep {
        #[arg(long)]
        a_max: u64,
        #[arg(long)]
        d_max: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the tame witness for a multidegree.
    Build {
        d1: u64,
        d2: u64,
        d3: u64,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Poisson bracket of two polynomials.
    Bracket {
        #[arg(short = 'f')]
        f: String,
        #[arg(short = 'g')]
        g: String,
        #[arg(long, default_value_t = 3)]
        vars: usize,
    },
    /// Lower bound on deg G(f, g) from degree data.
    SuBound {
        #[arg(long)]
        deg_f: u64,
        #[arg(long)]
        deg_g: u64,
        #[arg(long)]
        deg_y: u64,
        #[arg(long)]
        bracket: u64,
    },
    /// Try to rule out elementary reductions at each position.
    Exclude {
        d1: u64,
        d2: u64,
        d3: u64,
        /// Bracket degree lower bound for a pair, e.g. `13=5`.
        #[arg(long = "bracket-lb")]
        bracket_lb: Vec<String>,
        /// Make the bound on a pair strict, e.g. `13`.
        #[arg(long)]
        strict: Vec<String>,
    },
    /// Solve the two type III systems.
    Type3 { d1: u64, d2: u64, d3: u64 },
    /// Search for an elementary reduction of a map read from a JSON file.
    Reduce {
        #[arg(short = 'F')]
        file: PathBuf,
        #[arg(long)]
        position: usize,
        #[arg(long)]
        max_deg: Option<u32>,
    },
    /// Check the AP semigroup criterion on a grid.
    Lemma31 {
        #[arg(long)]
        a_max: u64,
        #[arg(long)]
        d_max: u64,
    },
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult::error(text)
            } else {
                CommandResult {
                    exit_code: 0,
                    stdout: text,
                    payload: None,
                    diagnostics: String::new(),
                }
            };
        }
    };
    match cli.command {
        Command::Classify { d1, d2, d3, json } => cmd_classify([d1, d2, d3], json),
        Command::ClassifyAp { a, d } => {
            if a == 0 {
                return CommandResult::error("error: a must be positive");
            }
            verdict_result(Classifier::default().classify_ap(a, d))
        }
        Command::Sweep { a_max, d_max, out } => cmd_sweep(a_max, d_max, &out),
        Command::Build { d1, d2, d3, out } => cmd_build([d1, d2, d3], out),
        Command::Bracket { f, g, vars } => cmd_bracket(&f, &g, vars),
        Command::SuBound {
            deg_f,
            deg_g,
            deg_y,
            bracket,
        } => match SuQuery::new(deg_f, deg_g, deg_y, bracket) {
            Ok(q) => CommandResult::json(0, json!({ "query": q, "bound": su_lower_bound(&q) })),
            Err(e) => CommandResult::error(format!("error: {e}")),
        },
        Command::Exclude {
            d1,
            d2,
            d3,
            bracket_lb,
            strict,
        } => cmd_exclude([d1, d2, d3], &bracket_lb, &strict),
        Command::Type3 { d1, d2, d3 } => cmd_type3([d1, d2, d3]),
        Command::Reduce {
            file,
            position,
            max_deg,
        } => cmd_reduce(&file, position, max_deg),
        Command::Lemma31 { a_max, d_max } => cmd_lemma31(a_max, d_max),
    }
}

/// Sorts a triple, returning a notice when the order changed.
fn sorted_triple(t: [u64; 3]) -> Result<([u64; 3], String), String> {
    if t.contains(&0) {
        return Err(format!("error: degrees must be positive, got {t:?}"));
    }
    let mut s = t;
    s.sort_unstable();
    let notice = if s == t {
        String::new()
    } else {
        format!("note: sorted {t:?} to {s:?}")
    };
    Ok((s, notice))
}

fn exit_for(status: Status) -> i32 {
    match status {
        Status::Unknown => 2,
        Status::In | Status::NotIn => 0,
    }
}

fn verdict_result(v: Verdict) -> CommandResult {
    let payload = serde_json::to_value(&v).expect("verdict serializes");
    CommandResult::json(exit_for(v.status), payload)
}

fn cmd_classify(t: [u64; 3], as_json: bool) -> CommandResult {
    let (t, notice) = match sorted_triple(t) {
        Ok(x) => x,
        Err(e) => return CommandResult::error(e),
    };
    let v = Classifier::default().classify_triple(t[0], t[1], t[2]);
    let mut res = verdict_result(v.clone());
    if !as_json {
        let payload = res.payload.as_ref().expect("set above");
        let rule = payload["why"]["rule"].as_str().unwrap_or("?");
        res.stdout = format!("{} {} {}: {:?} ({rule})", t[0], t[1], t[2], v.status);
    }
    res.note(&notice)
}

fn worker_pool() -> Result<rayon::ThreadPool, String> {
    let threads = match std::env::var("MDEG_THREADS") {
        Ok(s) => s.trim().parse::<usize>().map_err(|_| {
            format!("error: MDEG_THREADS must be a non-negative integer, got {s:?}")
        })?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| format!("error: cannot start worker pool: {e}"))
}

fn cmd_sweep(a_max: u64, d_max: u64, out: &PathBuf) -> CommandResult {
    let pool = match worker_pool() {
        Ok(p) => p,
        Err(e) => return CommandResult::error(e),
    };
    let grid: Vec<(u64, u64)> = (1..=a_max)
        .flat_map(|a| (0..=d_max).map(move |d| (a, d)))
        .collect();
    let classifier = Classifier::default();
    let verdicts: Vec<Verdict> = pool.install(|| {
        grid.par_iter()
            .map(|&(a, d)| classifier.classify_ap(a, d))
            .collect()
    });

    let mut body = Vec::new();
    let mut counts = [0u64; 3];
    for v in &verdicts {
        serde_json::to_writer(&mut body, v).expect("verdict serializes");
        body.push(b'\n');
        counts[v.status as usize] += 1;
    }
    let written = fs::File::create(out).and_then(|mut f| f.write_all(&body));
    if let Err(e) = written {
        return CommandResult::error(format!("error: cannot write {}: {e}", out.display()));
    }
    CommandResult::json(
        0,
        json!({
            "out": out.display().to_string(),
            "lines": verdicts.len(),
            "In": counts[Status::In as usize],
            "NotIn": counts[Status::NotIn as usize],
            "Unknown": counts[Status::Unknown as usize],
        }),
    )
}

fn cmd_build(t: [u64; 3], out: Option<PathBuf>) -> CommandResult {
    let (t, notice) = match sorted_triple(t) {
        Ok(x) => x,
        Err(e) => return CommandResult::error(e),
    };
    let res = match build_witness(t[0], t[1], t[2]) {
        Err(e) => CommandResult::error(format!("error: {e}")),
        Ok(None) => {
            CommandResult::json(2, json!({ "multidegree": t, "witness": null })).note(&format!(
                "no witness: {} is not a nonnegative combination of {} and {}",
                t[2], t[0], t[1]
            ))
        }
        Ok(Some(w)) => {
            let doc = serde_json::to_value(w.map.to_json()).expect("map serializes");
            let mut res = CommandResult::json(0, doc);
            if let Some(path) = out {
                if let Err(e) = fs::write(&path, format!("{}\n", res.stdout)) {
                    return CommandResult::error(format!(
                        "error: cannot write {}: {e}",
                        path.display()
                    ));
                }
                res = res.note(&format!("wrote {}", path.display()));
            }
            res
        }
    };
    res.note(&notice)
}

fn cmd_bracket(f: &str, g: &str, vars: usize) -> CommandResult {
    let parse = |label: &str, text: &str| {
        Polynomial::parse(text, vars).map_err(|e| format!("error in -{label}: {e}"))
    };
    let (f, g) = match (parse("f", f), parse("g", g)) {
        (Ok(f), Ok(g)) => (f, g),
        (Err(e), _) | (_, Err(e)) => return CommandResult::error(e),
    };
    match bracket(&f, &g) {
        Ok(b) => {
            let minors = serde_json::to_value(&b).expect("serializes")["minors"].take();
            CommandResult::json(
                0,
                json!({ "degree": b.degree, "independent": !b.is_zero(), "minors": minors }),
            )
        }
        Err(e) => CommandResult::error(format!("error: {e}")),
    }
}

/// `13`, `1,3`, `(1,3)` or `1-3` to `(1, 3)`.
fn parse_pair(text: &str) -> Result<(usize, usize), String> {
    let digits: Vec<usize> = text
        .chars()
        .filter(|c| !matches!(c, '(' | ')' | ',' | '-' | ' '))
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<_>>()
        .ok_or_else(|| format!("error: bad pair {text:?}"))?;
    match digits.as_slice() {
        &[u, v] if u != v && (1..=3).contains(&u) && (1..=3).contains(&v) => {
            Ok((u.min(v), u.max(v)))
        }
        _ => Err(format!(
            "error: bad pair {text:?}, expected two distinct positions in 1..3"
        )),
    }
}

fn cmd_exclude(t: [u64; 3], lbs: &[String], strict: &[String]) -> CommandResult {
    let (t, notice) = match sorted_triple(t) {
        Ok(x) => x,
        Err(e) => return CommandResult::error(e),
    };
    let mut bounds = BracketBounds::universal();
    for item in lbs {
        let Some((pair, val)) = item.split_once('=') else {
            return CommandResult::error(format!("error: expected PAIR=VAL, got {item:?}"));
        };
        let (u, v) = match parse_pair(pair) {
            Ok(p) => p,
            Err(e) => return CommandResult::error(e),
        };
        let Ok(val) = val.trim().parse::<u64>() else {
            return CommandResult::error(format!("error: bad bound value in {item:?}"));
        };
        let (_, s) = bounds.get(u, v);
        bounds.set(u, v, val, s);
    }
    for item in strict {
        let (u, v) = match parse_pair(item) {
            Ok(p) => p,
            Err(e) => return CommandResult::error(e),
        };
        let (val, _) = bounds.get(u, v);
        bounds.set(u, v, val, true);
    }
    match exclude_all(t, &bounds) {
        Ok(ex) => CommandResult::json(0, serde_json::to_value(&ex).expect("serializes")),
        Err(e) => CommandResult::error(format!("error: {e}")),
    }
    .note(&notice)
}

fn cmd_type3(t: [u64; 3]) -> CommandResult {
    let (t, notice) = match sorted_triple(t) {
        Ok(x) => x,
        Err(e) => return CommandResult::error(e),
    };
    match type_iii_witnesses(t) {
        Ok(ws) => CommandResult::json(
            0,
            json!({ "multidegree": t, "witness": ws.first(), "all": ws }),
        ),
        Err(e) => CommandResult::error(format!("error: {e}")),
    }
    .note(&notice)
}

fn cmd_reduce(file: &PathBuf, position: usize, max_deg: Option<u32>) -> CommandResult {
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            return CommandResult::error(format!("error: cannot read {}: {e}", file.display()))
        }
    };
    let doc: PolyMapJson = match serde_json::from_str(&text) {
        Ok(d) => d,
        Err(e) => return CommandResult::error(format!("error: {}: {e}", file.display())),
    };
    let map = match PolyMap::from_json(&doc) {
        Ok(m) => m,
        Err(e) => return CommandResult::error(format!("error: {}: {e}", file.display())),
    };
    let budget = match max_deg.map_or_else(|| default_support_degree(&map, position), Ok) {
        Ok(k) => k,
        Err(e) => return CommandResult::error(format!("error: {e}")),
    };
    match reduction_search(&map, position, Some(budget)) {
        Ok(Some(r)) => CommandResult::json(0, serde_json::to_value(&r).expect("serializes")),
        Ok(None) => CommandResult::json(
            2,
            json!({ "position": position, "max_deg": budget, "reduction": null }),
        )
        .note(&format!("no reduction found with deg g <= {budget}")),
        Err(e) => CommandResult::error(format!("error: {e}")),
    }
}

fn cmd_lemma31(a_max: u64, d_max: u64) -> CommandResult {
    let grid: Vec<(u64, u64)> = (1..=a_max)
        .flat_map(|a| (0..=d_max).map(move |d| (a, d)))
        .collect();
    let failures: Vec<_> = grid
        .par_iter()
        .map(|&(a, d)| lemma31_check(a, d))
        .filter(|r| !r.equal)
        .collect();
    CommandResult::json(
        0,
        json!({
            "checked": grid.len(),
            "all_equal": failures.is_empty(),
            "failures": failures,
        }),
    )
}
