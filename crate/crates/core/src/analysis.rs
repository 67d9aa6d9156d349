//! Comparative statics, contest design, large-contest approximation and
//! convergence tables.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::equilibrium::{solve_with, EquilibriumSolution, SolveOptions, Status};
use crate::error::{Error, Result};
use crate::format::{ser_f64, ser_f64_vec};
use crate::kernels::PayoffKernel;
use crate::polys::DEFAULT_TOL;
use crate::recursion::{info_measures, Condition2Verdict, Contest, Dominance, InfoMeasures};

/// Two totals closer than this are treated as equal.
pub const VALUE_TIE_TOL: f64 = 1e-12;

/// Tolerance for comparing the earlier-mover gap formula with direct
/// effort differences.
pub const GAP_FORMULA_TOL: f64 = 1e-9;

fn solve_default(contest: &Contest, kernel: &PayoffKernel) -> Result<EquilibriumSolution> {
    solve_with(contest, kernel, &SolveOptions::default())
}

/// Both information conditions hold at the solution (a Condition 2
/// boundary counts, as in the fully sequential Tullock case).
pub fn theorem_applies(s: &EquilibriumSolution) -> bool {
    s.status == Status::Solved
        && s.conditions
            .condition2
            .as_ref()
            .is_none_or(|c| c.verdict != Condition2Verdict::Fail)
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonResult {
    pub contest_a: Contest,
    pub contest_b: Contest,
    pub s_a: InfoMeasures,
    pub s_b: InfoMeasures,
    pub dominance: Dominance,
    #[serde(serialize_with = "ser_f64")]
    pub x_a: f64,
    #[serde(serialize_with = "ser_f64")]
    pub x_b: f64,
    /// `sum_k S_k` of each contest, the large-contest ordering heuristic.
    pub s_sum_a: String,
    pub s_sum_b: String,
    /// Conditions 1 and 2 hold for both contests.
    pub theorem_applies: bool,
    /// The totals are ordered as the measures predict (vacuous when the
    /// measures are incomparable or the theorem does not apply).
    pub consistent_with_theorem: bool,
}

pub fn compare(a: &Contest, b: &Contest, kernel: &PayoffKernel) -> Result<ComparisonResult> {
    let sa = solve_default(a, kernel)?;
    let sb = solve_default(b, kernel)?;
    let s_a = info_measures(a);
    let s_b = info_measures(b);
    let dominance = s_a.compare(&s_b);
    let applies = theorem_applies(&sa) && theorem_applies(&sb);
    let (x_a, x_b) = (sa.x_star, sb.x_star);
    let consistent = !applies
        || match dominance {
            Dominance::Equal => (x_a - x_b).abs() <= 1e-10,
            Dominance::ADominates => x_a > x_b,
            Dominance::BDominates => x_b > x_a,
            Dominance::Incomparable => true,
        };
    Ok(ComparisonResult {
        contest_a: a.clone(),
        contest_b: b.clone(),
        s_sum_a: s_a.total().to_string(),
        s_sum_b: s_b.total().to_string(),
        s_a,
        s_b,
        dominance,
        x_a,
        x_b,
        theorem_applies: applies,
        consistent_with_theorem: consistent,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug, Default)]
pub struct DesignOptions {
    pub max_periods: Option<usize>,
    /// Enumerate ordered compositions instead of partitions.
    pub compositions: bool,
    /// Worker threads; `None` runs serially.
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DesignResult {
    pub objective: Objective,
    pub players: u32,
    pub max_periods: Option<usize>,
    pub best_contest: Contest,
    #[serde(serialize_with = "ser_f64")]
    pub best_value: f64,
    pub evaluated_count: usize,
    /// Candidates skipped because they are not solved.
    pub unsolved_count: usize,
}

/// Integer partitions of `n` into at most `max_parts` parts, each listed
/// in ascending order.
pub fn partitions(n: u32, max_parts: usize) -> Vec<Vec<u32>> {
    fn rec(rest: u32, min: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if parts == 0 {
            return;
        }
        for p in min..=rest {
            if p > rest - p && p != rest {
                continue;
            }
            cur.push(p);
            rec(rest - p, p, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Ordered compositions of `n` into at most `max_parts` parts.
pub fn compositions(n: u32, max_parts: usize) -> Vec<Vec<u32>> {
    fn rec(rest: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if parts == 0 {
            return;
        }
        for p in 1..=rest {
            cur.push(p);
            rec(rest - p, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_parts, &mut Vec::new(), &mut out);
    out
}

fn run_parallel<T, R, F>(items: Vec<T>, jobs: Option<usize>, f: F) -> Result<Vec<R>>
where
    T: Send + Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Send + Sync,
{
    match jobs {
        Some(j) if j > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::InvalidContest(e.to_string()))?;
            pool.install(|| items.par_iter().map(&f).collect())
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Best disclosure structure for `n` players. Ties within
/// `VALUE_TIE_TOL` go to the lexicographically smallest contest.
pub fn design_optimize(
    n: u32,
    kernel: &PayoffKernel,
    objective: Objective,
    opts: &DesignOptions,
) -> Result<DesignResult> {
    if n == 0 {
        return Err(Error::InvalidContest("need at least one player".into()));
    }
    let max_parts = opts.max_periods.unwrap_or(n as usize).min(n as usize);
    let candidates = if opts.compositions {
        compositions(n, max_parts)
    } else {
        partitions(n, max_parts)
    };
    let results = run_parallel(candidates, opts.jobs, |groups| {
        let contest = Contest::new(groups.clone())?;
        let s = solve_default(&contest, kernel)?;
        Ok((contest, s.status, s.x_star))
    })?;
    let evaluated_count = results.len();
    let mut solved: Vec<(Contest, f64)> = results
        .into_iter()
        .filter(|(_, st, _)| *st == Status::Solved)
        .map(|(c, _, x)| (c, x))
        .collect();
    let unsolved_count = evaluated_count - solved.len();
    solved.sort_by(|a, b| a.0.groups().cmp(b.0.groups()));
    let target = solved
        .iter()
        .map(|(_, x)| *x)
        .fold(None, |acc: Option<f64>, x| {
            Some(match (acc, objective) {
                (None, _) => x,
                (Some(a), Objective::Maximize) => a.max(x),
                (Some(a), Objective::Minimize) => a.min(x),
            })
        })
        .ok_or_else(|| Error::NotSolved("no candidate contest is solved".into()))?;
    let (best_contest, best_value) = solved
        .into_iter()
        .find(|(_, x)| (x - target).abs() <= VALUE_TIE_TOL)
        .unwrap();
    Ok(DesignResult {
        objective,
        players: n,
        max_periods: opts.max_periods,
        best_contest,
        best_value,
        evaluated_count,
        unsolved_count,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ApproxSolution {
    pub contest: Contest,
    #[serde(serialize_with = "ser_f64")]
    pub alpha: f64,
    /// `S(n) = prod_t (1 + alpha n_t) - 1`.
    #[serde(serialize_with = "ser_f64")]
    pub s_weighted: f64,
    #[serde(serialize_with = "ser_f64")]
    pub x_star_approx: f64,
    /// `alpha / prod_{s<=t} (1 + alpha n_s)` per period.
    #[serde(serialize_with = "ser_f64_vec")]
    pub period_efforts_approx: Vec<f64>,
    /// Limit concentration `alpha^2 / ((1 + alpha)^2 - 1)` of a long
    /// sequential contest.
    #[serde(serialize_with = "ser_f64")]
    pub hhi_approx: f64,
    /// Concentration of the approximate efforts of this contest.
    #[serde(serialize_with = "ser_f64")]
    pub hhi_contest: f64,
    /// The kernel has linear `g`, for which the formulas are exact.
    pub exact: bool,
}

fn has_linear_g(kernel: &PayoffKernel) -> bool {
    match kernel {
        PayoffKernel::LinearG { .. } => true,
        PayoffKernel::PolyG { coeffs } => coeffs.iter().skip(2).all(|c| *c == 0.0),
        _ => false,
    }
}

/// Large-contest formulas with `alpha = -g'(1)`:
/// `1 - X* ~ 1 / S(n)` and `x_i ~ alpha / prod_{s<=t} (1 + alpha n_s)`.
///
/// With linear `g` every `g_k = alpha^k (1 - X)` and `f_0 = X - S(n)(1 - X)`,
/// so `X* = S / (1 + S)` exactly; that value is reported instead.
pub fn large_contest_approx(contest: &Contest, kernel: &PayoffKernel) -> Result<ApproxSolution> {
    let alpha = kernel.alpha()?;
    let s_weighted = info_measures(contest).weighted_total(alpha);
    let mut prod = 1.0;
    let period_efforts_approx: Vec<f64> = contest
        .groups()
        .iter()
        .map(|&n| {
            prod *= 1.0 + alpha * f64::from(n);
            alpha / prod
        })
        .collect();
    let exact = has_linear_g(kernel);
    let x_star_approx = if exact {
        s_weighted / (1.0 + s_weighted)
    } else {
        1.0 - 1.0 / s_weighted
    };
    let total: f64 = contest
        .groups()
        .iter()
        .zip(&period_efforts_approx)
        .map(|(&n, x)| f64::from(n) * x)
        .sum();
    let hhi_contest = contest
        .groups()
        .iter()
        .zip(&period_efforts_approx)
        .map(|(&n, x)| f64::from(n) * (x / total).powi(2))
        .sum();
    Ok(ApproxSolution {
        contest: contest.clone(),
        alpha,
        s_weighted,
        x_star_approx,
        period_efforts_approx,
        hhi_approx: alpha * alpha / ((1.0 + alpha).powi(2) - 1.0),
        hhi_contest,
        exact,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SimEquivalent {
    pub n_seq: u32,
    /// `2^n_seq`.
    #[serde(serialize_with = "ser_f64")]
    pub approx: f64,
    /// Largest `m` whose simultaneous total `(m - 1) / m` does not exceed
    /// the sequential total.
    pub exact: u64,
    #[serde(serialize_with = "ser_f64")]
    pub x_star_seq: f64,
}

/// Size of the simultaneous Tullock contest matching a fully sequential
/// one with `n_seq` players.
pub fn equivalent_sim_size(n_seq: u32) -> Result<SimEquivalent> {
    if n_seq < 2 {
        return Err(Error::InvalidContest("need at least two sequential players".into()));
    }
    let s = solve_default(&Contest::sequential(n_seq)?, &PayoffKernel::Tullock)?;
    // (m - 1) / m <= X  <=>  m <= 1 / (1 - X)
    let exact = match s.x_star_exact() {
        Some(x) => {
            let inv = (num_rational::BigRational::from_integer(1.into()) - x).recip();
            inv.floor().to_integer().to_u64().unwrap_or(u64::MAX)
        }
        None => (1.0 / s.gap_to_one).floor() as u64,
    };
    Ok(SimEquivalent {
        n_seq,
        approx: 2f64.powi(n_seq as i32),
        exact,
        x_star_seq: s.x_star,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoverVerdict {
    StrictEarlierAdvantage,
    Flat,
    LaterAdvantage,
    Mixed,
}

#[derive(Clone, Debug, Serialize)]
pub struct EarlierMoverReport {
    pub verdict: MoverVerdict,
    /// `x_t - x_{t+1}` from the solution.
    #[serde(serialize_with = "ser_f64_vec")]
    pub gaps_direct: Vec<f64>,
    /// `sum_k [S_k(n^t) - S_k(n^{t+1})] g_{k+1}(X*)`.
    #[serde(serialize_with = "ser_f64_vec")]
    pub gaps_formula: Vec<f64>,
    #[serde(serialize_with = "ser_f64")]
    pub max_formula_error: f64,
    pub formula_agrees: bool,
}

/// Compares efforts of consecutive periods. Payoffs are efforts times a
/// common `h(X*)`, so they are ordered the same way.
pub fn earlier_mover_report(solution: &EquilibriumSolution) -> Result<EarlierMoverReport> {
    if !solution.is_solved() {
        return Err(Error::NotSolved(solution.status.to_string()));
    }
    let fseq = solution.fseq();
    let periods = fseq.periods();
    let g = fseq.gseq().values_at(solution.x_star)?;
    let mut gaps_direct = Vec::new();
    let mut gaps_formula = Vec::new();
    for t in 1..periods {
        gaps_direct.push(solution.period_efforts[t - 1] - solution.period_efforts[t]);
        let (here, next) = (fseq.suffix_measures(t), fseq.suffix_measures(t + 1));
        let mut sum = 0.0;
        for (k, gk) in g.iter().enumerate().take(periods - t + 1).skip(1) {
            let diff = (here.level(k) - next.level(k)).to_f64().unwrap_or(f64::INFINITY);
            sum += diff * gk.0;
        }
        gaps_formula.push(sum);
    }
    let max_formula_error = gaps_direct
        .iter()
        .zip(&gaps_formula)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let tie = DEFAULT_TOL;
    let verdict = if gaps_direct.iter().all(|g| g.abs() <= tie) {
        MoverVerdict::Flat
    } else if gaps_direct.iter().all(|g| *g > tie) {
        MoverVerdict::StrictEarlierAdvantage
    } else if gaps_direct.iter().all(|g| *g < -tie) {
        MoverVerdict::LaterAdvantage
    } else {
        MoverVerdict::Mixed
    };
    Ok(EarlierMoverReport {
        verdict,
        gaps_direct,
        gaps_formula,
        max_formula_error,
        formula_agrees: max_formula_error <= GAP_FORMULA_TOL,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Sequential,
    HalfAndHalf,
    SingleLeader,
    Simultaneous,
}

impl Family {
    pub fn contest(self, n: u32) -> Result<Contest> {
        let groups = match self {
            Family::Sequential => vec![1; n as usize],
            Family::Simultaneous => vec![n],
            Family::HalfAndHalf if n >= 2 => vec![n.div_ceil(2), n / 2],
            Family::SingleLeader if n >= 2 => vec![1, n - 1],
            _ => vec![n],
        };
        Contest::new(groups)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "seq" | "sequential" => Ok(Family::Sequential),
            "half" | "half_and_half" => Ok(Family::HalfAndHalf),
            "leader" | "single_leader" => Ok(Family::SingleLeader),
            "sim" | "simultaneous" => Ok(Family::Simultaneous),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    pub n: u32,
    pub contest: Contest,
    pub status: Status,
    #[serde(serialize_with = "ser_f64")]
    pub x_star: f64,
    #[serde(serialize_with = "ser_f64")]
    pub gap_to_one: f64,
    #[serde(serialize_with = "ser_f64")]
    pub s_weighted: f64,
}

/// `X*` along a family of contests for `n` in `n_min..=n_max`.
pub fn convergence_table(
    family: Family,
    n_min: u32,
    n_max: u32,
    kernel: &PayoffKernel,
    jobs: Option<usize>,
) -> Result<Vec<ConvergenceRow>> {
    let alpha = kernel.alpha()?;
    let ns: Vec<u32> = (n_min.max(1)..=n_max).collect();
    run_parallel(ns, jobs, |&n| {
        let contest = family.contest(n)?;
        let s = solve_default(&contest, kernel)?;
        Ok(ConvergenceRow {
            n,
            s_weighted: info_measures(&contest).weighted_total(alpha),
            contest,
            status: s.status,
            x_star: s.x_star,
            gap_to_one: s.gap_to_one,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(g: &[u32]) -> Contest {
        Contest::new(g.to_vec()).unwrap()
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(4, 4).len(), 5);
        assert_eq!(partitions(10, 2).len(), 6);
        assert_eq!(partitions(7, 7).len(), 15);
        assert_eq!(compositions(4, 4).len(), 8);
        assert!(partitions(6, 3).iter().all(|p| p.windows(2).all(|w| w[0] <= w[1])));
    }

    #[test]
    fn design_examples() {
        let k = PayoffKernel::Tullock;
        let r = design_optimize(4, &k, Objective::Maximize, &DesignOptions::default()).unwrap();
        assert_eq!(r.best_contest, c(&[1, 1, 1, 1]));
        let r = design_optimize(4, &k, Objective::Minimize, &DesignOptions::default()).unwrap();
        assert_eq!(r.best_contest, c(&[4]));
        assert!((r.best_value - 0.75).abs() < 1e-15);
        let opts = DesignOptions {
            max_periods: Some(2),
            jobs: Some(2),
            ..DesignOptions::default()
        };
        let r = design_optimize(10, &k, Objective::Maximize, &opts).unwrap();
        assert_eq!(r.best_contest, c(&[5, 5]));
    }

    #[test]
    fn compare_examples() {
        let r = compare(&c(&[5, 5]), &c(&[8, 1, 1]), &PayoffKernel::Tullock).unwrap();
        assert_eq!(r.dominance, Dominance::Incomparable);
        assert!(r.x_a > r.x_b);
        let r = compare(&c(&[1, 1, 1]), &c(&[2, 1]), &PayoffKernel::Tullock).unwrap();
        assert_eq!(r.dominance, Dominance::ADominates);
        assert!(r.consistent_with_theorem && r.theorem_applies);
        let r = compare(&c(&[1, 3]), &c(&[3, 1]), &PayoffKernel::LogDemand).unwrap();
        assert_eq!(r.dominance, Dominance::Equal);
        assert!((r.x_a - r.x_b).abs() < 1e-10);
    }

    #[test]
    fn approx_examples() {
        let a = large_contest_approx(&c(&[1; 5]), &PayoffKernel::Tullock).unwrap();
        assert!((a.x_star_approx - 30.0 / 31.0).abs() < 1e-15);
        assert_eq!(a.period_efforts_approx[0], 0.5);
        assert!((a.hhi_approx - 1.0 / 3.0).abs() < 1e-12);
        let k = PayoffKernel::linear(0.7).unwrap();
        let g = c(&[2, 1, 3]);
        let a = large_contest_approx(&g, &k).unwrap();
        let s = solve_default(&g, &k).unwrap();
        assert!((a.x_star_approx - s.x_star).abs() < 1e-12);
        for (x, y) in a.period_efforts_approx.iter().zip(&s.period_efforts) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn sim_equivalents() {
        assert_eq!(equivalent_sim_size(2).unwrap().exact, 2);
        assert_eq!(equivalent_sim_size(5).unwrap().exact, 24);
        let e = equivalent_sim_size(14).unwrap();
        assert!((12_000..20_000).contains(&e.exact), "{}", e.exact);
    }

    #[test]
    fn mover_verdicts() {
        let k = PayoffKernel::Tullock;
        let r = earlier_mover_report(&solve_default(&c(&[1, 2, 1]), &k).unwrap()).unwrap();
        assert_eq!(r.verdict, MoverVerdict::StrictEarlierAdvantage);
        assert!(r.formula_agrees);
        let r = earlier_mover_report(&solve_default(&c(&[1, 1]), &k).unwrap()).unwrap();
        assert_eq!(r.verdict, MoverVerdict::Flat);
        let s = solve_default(&c(&[1, 2, 1]), &PayoffKernel::PowerRatio).unwrap();
        let r = earlier_mover_report(&s).unwrap();
        assert_eq!(r.verdict, MoverVerdict::LaterAdvantage);
        assert!(r.formula_agrees);
    }

    #[test]
    fn convergence_rows() {
        let k = PayoffKernel::Tullock;
        let rows = convergence_table(Family::Simultaneous, 10, 10, &k, None).unwrap();
        assert_eq!(crate::format::fmt_f64(rows[0].x_star), "0.9");
        let rows = convergence_table(Family::Sequential, 1, 10, &k, Some(2)).unwrap();
        assert!((rows[3].x_star - 0.9082).abs() < 5e-5);
        assert!((rows[4].x_star - 0.9587).abs() < 5e-5);
        assert!(rows.windows(2).all(|w| w[0].x_star < w[1].x_star));
        assert!(rows[7].x_star > 0.99);
    }
}
