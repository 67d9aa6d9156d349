//! Command-line front end. `run` parses arguments, dispatches, and returns
//! the process exit code: 0 on success, 1 when the contest has no interior
//! equilibrium candidate (the result is still printed), 2 on usage and
//! solver errors.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{
    compare, convergence_table, design_optimize, large_contest_approx, DesignOptions, Family,
    Objective,
};
use crate::equilibrium::{best_response, solve_with, EquilibriumSolution, SolveOptions, Status};
use crate::error::{Error, Result};
use crate::format::fmt_f64;
use crate::kernels::PayoffKernel;
use crate::oracle::grid_spe;
use crate::recursion::{check_conditions, info_measures, Contest, FSequence};

#[derive(Parser, Debug)]
#[command(
    name = "seqcontest",
    version,
    about = "Equilibria of sequential contests with partial disclosure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    Min,
    Max,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Seq,
    Half,
    Leader,
    Sim,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Payoff kernel: tullock, linear:a=A, exp:a=A,b=B, log, power, poly:c0,c1,...
    #[arg(long, default_value = "tullock")]
    kernel: String,
    /// Root refinement tolerance.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output to a file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Include exact rational brackets where available.
    #[arg(long)]
    exact: bool,
    /// Worker threads for design and sweep.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a contest. CSV columns: player,period,effort,payoff.
    Solve {
        /// Group sizes, e.g. 1,2,1 or 1^5.
        #[arg(long)]
        contest: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check the sufficient conditions. CSV columns: period,threshold,root_found,negative_below,increasing_above.
    Conditions {
        #[arg(long)]
        contest: String,
        #[command(flatten)]
        common: Common,
    },
    /// Information measures S_1..S_T. CSV columns: k,S_k.
    Measures {
        #[arg(long)]
        contest: String,
        #[command(flatten)]
        common: Common,
    },
    /// Compare two contests. CSV columns: contest,S,x_star.
    Compare {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[command(flatten)]
        common: Common,
    },
    /// Best disclosure structure for a number of players.
    Design {
        #[arg(long)]
        players: u32,
        #[arg(long)]
        max_periods: Option<usize>,
        #[arg(long, value_enum, default_value = "max")]
        objective: ObjectiveArg,
        /// Enumerate ordered compositions rather than partitions.
        #[arg(long)]
        compositions: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Large-contest approximation. CSV columns: period,effort_approx.
    Approx {
        #[arg(long)]
        contest: String,
        #[command(flatten)]
        common: Common,
    },
    /// Total effort along a contest family. CSV columns: n,contest,status,x_star,gap_to_one,s_weighted.
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 1)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Grid backward-induction oracle. CSV columns: period,effort.
    Oracle {
        #[arg(long)]
        contest: String,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Best-response curve of one period. CSV columns: x_prev,effort.
    Br {
        #[arg(long)]
        contest: String,
        #[arg(long)]
        period: usize,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// Rendered output of one command.
struct Output {
    text: String,
    exit: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, exit: 0 }
    }
}

/// Runs with process stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(args, &mut io::stdout().lock(), &mut io::stderr().lock())
}

/// Runs with explicit output and diagnostic streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let common = cli.command.common().clone();
    match dispatch(cli.command) {
        Ok(output) => {
            let written = match &common.output {
                Some(path) => File::create(path).and_then(|mut f| f.write_all(output.text.as_bytes())),
                None => out.write_all(output.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            output.exit
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Solve { common, .. }
            | Command::Conditions { common, .. }
            | Command::Measures { common, .. }
            | Command::Compare { common, .. }
            | Command::Design { common, .. }
            | Command::Approx { common, .. }
            | Command::Sweep { common, .. }
            | Command::Oracle { common, .. }
            | Command::Br { common, .. } => common,
        }
    }
}

fn parse_contest(s: &str) -> Result<Contest> {
    s.parse()
}

fn parse_kernel(s: &str) -> Result<PayoffKernel> {
    s.parse()
}

fn to_json<T: Serialize>(value: &T) -> Result<Value> {
    serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))
}

/// Pretty JSON with sorted keys, so that re-serializing parsed output is
/// byte-identical.
fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn render_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.write_record(row).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV of UTF-8 fields"))
}

/// Aligned plain-text columns.
fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

fn tabular(format: Format, header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    match format {
        Format::Csv => render_csv(header, rows),
        _ => Ok(render_table(header, rows)),
    }
}

fn dispatch(command: Command) -> Result<Output> {
    match command {
        Command::Solve { contest, common } => cmd_solve(&contest, &common),
        Command::Conditions { contest, common } => cmd_conditions(&contest, &common),
        Command::Measures { contest, common } => cmd_measures(&contest, &common),
        Command::Compare { a, b, common } => cmd_compare(&a, &b, &common),
        Command::Design {
            players,
            max_periods,
            objective,
            compositions,
            common,
        } => cmd_design(players, max_periods, objective, compositions, &common),
        Command::Approx { contest, common } => cmd_approx(&contest, &common),
        Command::Sweep {
            family,
            n_min,
            n_max,
            common,
        } => cmd_sweep(family, n_min, n_max, &common),
        Command::Oracle {
            contest,
            step,
            common,
        } => cmd_oracle(&contest, step, &common),
        Command::Br {
            contest,
            period,
            points,
            common,
        } => cmd_br(&contest, period, points, &common),
    }
}

fn solve_common(contest: &str, common: &Common) -> Result<EquilibriumSolution> {
    let contest = parse_contest(contest)?;
    let kernel = parse_kernel(&common.kernel)?;
    solve_with(
        &contest,
        &kernel,
        &SolveOptions {
            tol: common.tol,
            ..SolveOptions::default()
        },
    )
}

fn solution_json(s: &EquilibriumSolution, exact: bool) -> Result<Value> {
    let mut v = to_json(s)?;
    v["efforts"] = json!(s.efforts().iter().map(|x| fmt_f64(*x)).collect::<Vec<_>>());
    v["payoffs"] = json!(s.payoffs().iter().map(|x| fmt_f64(*x)).collect::<Vec<_>>());
    if exact {
        let mut e = serde_json::Map::new();
        if let Some((lo, hi)) = &s.bracket {
            e.insert("x_star_bracket".into(), json!([lo.to_string(), hi.to_string()]));
        }
        if let Some(x) = &s.exact {
            e.insert("x_star".into(), json!(x.x_star.to_string()));
            e.insert(
                "period_efforts".into(),
                json!(x.period_efforts.iter().map(|q| q.to_string()).collect::<Vec<_>>()),
            );
        }
        v["exact"] = Value::Object(e);
    }
    Ok(v)
}

fn cmd_solve(contest: &str, common: &Common) -> Result<Output> {
    let s = solve_common(contest, common)?;
    let text = match common.format.unwrap_or(Format::Json) {
        Format::Json => render_json(&solution_json(&s, common.exact)?),
        f => {
            let efforts = s.efforts();
            let payoffs = s.payoffs();
            let rows: Vec<Vec<String>> = s
                .contest
                .player_periods()
                .enumerate()
                .map(|(i, t)| {
                    vec![
                        (i + 1).to_string(),
                        t.to_string(),
                        fmt_f64(efforts[i]),
                        fmt_f64(payoffs[i]),
                    ]
                })
                .collect();
            let body = tabular(f, &["player", "period", "effort", "payoff"], &rows)?;
            if f == Format::Table {
                format!(
                    "contest {}  kernel {}  status {}\nX* = {}\n\n{body}",
                    s.contest,
                    s.kernel,
                    s.status,
                    fmt_f64(s.x_star)
                )
            } else {
                body
            }
        }
    };
    let exit = if s.status == Status::NoInteriorCandidate { 1 } else { 0 };
    Ok(Output { text, exit })
}

fn cmd_conditions(contest: &str, common: &Common) -> Result<Output> {
    let contest = parse_contest(contest)?;
    let kernel = parse_kernel(&common.kernel)?;
    let fseq = FSequence::build(&contest, &kernel)?;
    let report = check_conditions(&fseq)?;
    let text = match common.format.unwrap_or(Format::Json) {
        Format::Json => render_json(&to_json(&report)?),
        f => {
            let rows: Vec<Vec<String>> = report
                .condition1
                .periods
                .iter()
                .map(|w| {
                    vec![
                        w.period.to_string(),
                        fmt_f64(w.threshold),
                        w.root_found.to_string(),
                        w.negative_below.to_string(),
                        w.increasing_above.to_string(),
                    ]
                })
                .collect();
            tabular(
                f,
                &["period", "threshold", "root_found", "negative_below", "increasing_above"],
                &rows,
            )?
        }
    };
    Ok(Output::ok(text))
}

fn cmd_measures(contest: &str, common: &Common) -> Result<Output> {
    let contest = parse_contest(contest)?;
    let s = info_measures(&contest);
    let levels: Vec<String> = s.levels().iter().map(|x| x.to_string()).collect();
    let text = match common.format.unwrap_or(Format::Table) {
        Format::Json => render_json(&json!({
            "contest": contest.to_string(),
            "measures": levels,
            "total": s.total().to_string(),
        })),
        Format::Csv => {
            let rows: Vec<Vec<String>> = levels
                .iter()
                .enumerate()
                .map(|(k, v)| vec![(k + 1).to_string(), v.clone()])
                .collect();
            render_csv(&["k", "S_k"], &rows)?
        }
        Format::Table => format!("{}\n", levels.join(",")),
    };
    Ok(Output::ok(text))
}

fn cmd_compare(a: &str, b: &str, common: &Common) -> Result<Output> {
    let kernel = parse_kernel(&common.kernel)?;
    let r = compare(&parse_contest(a)?, &parse_contest(b)?, &kernel)?;
    let text = match common.format.unwrap_or(Format::Json) {
        Format::Json => render_json(&to_json(&r)?),
        f => {
            let row = |c: &Contest, s: &crate::recursion::InfoMeasures, x: f64| {
                let s: Vec<String> = s.levels().iter().map(|v| v.to_string()).collect();
                vec![c.to_string(), s.join(" "), fmt_f64(x)]
            };
            let rows = vec![
                row(&r.contest_a, &r.s_a, r.x_a),
                row(&r.contest_b, &r.s_b, r.x_b),
            ];
            let mut text = tabular(f, &["contest", "S", "x_star"], &rows)?;
            if f == Format::Table {
                text.push_str(&format!(
                    "dominance: {:?}, consistent: {}\n",
                    r.dominance, r.consistent_with_theorem
                ));
            }
            text
        }
    };
    Ok(Output::ok(text))
}

fn cmd_design(
    players: u32,
    max_periods: Option<usize>,
    objective: ObjectiveArg,
    compositions: bool,
    common: &Common,
) -> Result<Output> {
    let kernel = parse_kernel(&common.kernel)?;
    let objective = match objective {
        ObjectiveArg::Min => Objective::Minimize,
        ObjectiveArg::Max => Objective::Maximize,
    };
    let opts = DesignOptions {
        max_periods,
        compositions,
        jobs: common.jobs,
    };
    let r = design_optimize(players, &kernel, objective, &opts)?;
    let text = match common.format.unwrap_or(Format::Json) {
        Format::Json => render_json(&to_json(&r)?),
        f => tabular(
            f,
            &["best_contest", "best_value", "evaluated_count"],
            &[vec![
                r.best_contest.to_string(),
                fmt_f64(r.best_value),
                r.evaluated_count.to_string(),
            ]],
        )?,
    };
    Ok(Output::ok(text))
}

fn cmd_approx(contest: &str, common: &Common) -> Result<Output> {
    let kernel = parse_kernel(&common.kernel)?;
    let a = large_contest_approx(&parse_contest(contest)?, &kernel)?;
    let text = match common.format.unwrap_or(Format::Json) {
        Format::Json => render_json(&to_json(&a)?),
        f => {
            let rows: Vec<Vec<String>> = a
                .period_efforts_approx
                .iter()
                .enumerate()
                .map(|(t, x)| vec![(t + 1).to_string(), fmt_f64(*x)])
                .collect();
            tabular(f, &["period", "effort_approx"], &rows)?
        }
    };
    Ok(Output::ok(text))
}

fn cmd_sweep(family: FamilyArg, n_min: u32, n_max: u32, common: &Common) -> Result<Output> {
    let kernel = parse_kernel(&common.kernel)?;
    let family = match family {
        FamilyArg::Seq => Family::Sequential,
        FamilyArg::Half => Family::HalfAndHalf,
        FamilyArg::Leader => Family::SingleLeader,
        FamilyArg::Sim => Family::Simultaneous,
    };
    let rows = convergence_table(family, n_min, n_max, &kernel, common.jobs)?;
    let text = match common.format.unwrap_or(Format::Csv) {
        Format::Json => render_json(&to_json(&rows)?),
        f => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.contest.to_string(),
                        r.status.to_string(),
                        fmt_f64(r.x_star),
                        fmt_f64(r.gap_to_one),
                        fmt_f64(r.s_weighted),
                    ]
                })
                .collect();
            tabular(
                f,
                &["n", "contest", "status", "x_star", "gap_to_one", "s_weighted"],
                &cells,
            )?
        }
    };
    Ok(Output::ok(text))
}

fn cmd_oracle(contest: &str, step: f64, common: &Common) -> Result<Output> {
    let kernel = parse_kernel(&common.kernel)?;
    let g = grid_spe(&parse_contest(contest)?, &kernel, step)?;
    let text = match common.format.unwrap_or(Format::Json) {
        Format::Json => render_json(&to_json(&g)?),
        f => {
            let rows: Vec<Vec<String>> = g
                .period_efforts
                .iter()
                .enumerate()
                .map(|(t, x)| vec![(t + 1).to_string(), fmt_f64(*x)])
                .collect();
            tabular(f, &["period", "effort"], &rows)?
        }
    };
    Ok(Output::ok(text))
}

fn cmd_br(contest: &str, period: usize, points: usize, common: &Common) -> Result<Output> {
    let s = solve_common(contest, common)?;
    if period == 0 || period > s.contest.periods() {
        return Err(Error::InvalidContest(format!(
            "period {period} outside 1..={}",
            s.contest.periods()
        )));
    }
    if s.status != Status::Solved {
        return Err(Error::NotSolved(s.status.to_string()));
    }
    let points = points.max(2);
    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let x_prev = i as f64 / (points - 1) as f64;
        let e = best_response(s.fseq(), period, x_prev)?;
        rows.push((x_prev, e));
    }
    let text = match common.format.unwrap_or(Format::Csv) {
        Format::Json => render_json(&json!(rows
            .iter()
            .map(|(x, e)| json!({"x_prev": fmt_f64(*x), "effort": fmt_f64(*e)}))
            .collect::<Vec<_>>())),
        f => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|(x, e)| vec![fmt_f64(*x), fmt_f64(*e)])
                .collect();
            tabular(f, &["x_prev", "effort"], &cells)?
        }
    };
    Ok(Output::ok(text))
}
