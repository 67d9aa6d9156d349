//! Subgame-perfect equilibrium of a contest, on- and off-path best
//! responses, and a numeric no-deviation audit.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{ser_f64, ser_f64_vec};
use crate::kernels::PayoffKernel;
use crate::polys::{to_f64, DEFAULT_TOL};
use crate::recursion::{check_conditions, BuildPath, ConditionReport, Contest, FSequence};

/// Tolerance for declaring `X* = X_1` a boundary tie.
pub const BOUNDARY_TIE_TOL: f64 = 1e-10;

/// Width of the bracket around an irrational `X*` before efforts are
/// evaluated exactly at its midpoint.
const EVAL_BRACKET_BITS: usize = 90;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Solved,
    /// The highest root of `f_0` in `[0, 1]` is zero: no pure-strategy
    /// equilibrium with positive total effort.
    NoInteriorCandidate,
    /// An interior candidate exists but Condition 1 does not hold, so it is
    /// not known to be the equilibrium.
    ConditionsUnverified,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Solved => "Solved",
            Status::NoInteriorCandidate => "NoInteriorCandidate",
            Status::ConditionsUnverified => "ConditionsUnverified",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub tol: f64,
    pub path: BuildPath,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: DEFAULT_TOL,
            path: BuildPath::Auto,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquilibriumSolution {
    pub contest: Contest,
    #[serde(serialize_with = "ser_display")]
    pub kernel: PayoffKernel,
    pub status: Status,
    #[serde(serialize_with = "ser_f64")]
    pub x_star: f64,
    /// `1 - X*`, computed before rounding so it keeps full relative
    /// precision when `X*` is close to one.
    #[serde(serialize_with = "ser_f64")]
    pub gap_to_one: f64,
    /// `X_t* = f_t(X*)` for `t = 0..=T`.
    #[serde(serialize_with = "ser_f64_vec")]
    pub cumulative: Vec<f64>,
    /// Effort of each player in period `t = 1..=T`, one entry per period.
    #[serde(serialize_with = "ser_f64_vec")]
    pub period_efforts: Vec<f64>,
    /// `x * h(X*)` per period.
    #[serde(serialize_with = "ser_f64_vec")]
    pub period_payoffs: Vec<f64>,
    /// `X*` and per-period efforts as rationals when `X*` is rational.
    #[serde(skip)]
    pub exact: Option<ExactEfforts>,
    /// Rational bracket of `X*` (exact path only).
    #[serde(skip)]
    pub bracket: Option<(BigRational, BigRational)>,
    /// `X*` coincides with `X_1`, so first-period efforts are near zero.
    pub boundary_tie: bool,
    pub conditions: ConditionReport,
    #[serde(serialize_with = "ser_f64")]
    pub tol: f64,
    #[serde(skip)]
    fseq: Arc<FSequence>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactEfforts {
    pub x_star: BigRational,
    pub period_efforts: Vec<BigRational>,
}

fn ser_display<T: fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl EquilibriumSolution {
    pub fn fseq(&self) -> &FSequence {
        &self.fseq
    }

    pub fn is_solved(&self) -> bool {
        self.status == Status::Solved
    }

    /// Effort of every player, in period order.
    pub fn efforts(&self) -> Vec<f64> {
        self.expand(&self.period_efforts)
    }

    pub fn payoffs(&self) -> Vec<f64> {
        self.expand(&self.period_payoffs)
    }

    fn expand(&self, per_period: &[f64]) -> Vec<f64> {
        self.contest
            .player_periods()
            .map(|t| per_period[t - 1])
            .collect()
    }
}

/// Solves with default options.
pub fn solve(contest: &Contest, kernel: &PayoffKernel, tol: f64) -> Result<EquilibriumSolution> {
    solve_with(
        contest,
        kernel,
        &SolveOptions {
            tol,
            ..SolveOptions::default()
        },
    )
}

/// `X*` is the highest root of `f_0` in `[0, 1]`; each period-`t` player
/// exerts `(f_t(X*) - f_{t-1}(X*)) / n_t`.
pub fn solve_with(
    contest: &Contest,
    kernel: &PayoffKernel,
    opts: &SolveOptions,
) -> Result<EquilibriumSolution> {
    let fseq = FSequence::build_with(contest, kernel, opts.path)?;
    let periods = fseq.periods();
    let conditions = check_conditions(&fseq)?;
    let threshold = fseq.threshold(0).clone();

    let (x_star, gap_to_one, cumulative, exact, bracket) = match &threshold.root {
        Some(root) => {
            let mut root = root.clone();
            let (point, exact_x) = match root.exact_value() {
                Some(v) => (v.clone(), true),
                None => {
                    root.refine_to(&half_pow(EVAL_BRACKET_BITS));
                    (root.midpoint(), false)
                }
            };
            let mut cum: Vec<BigRational> = (0..=periods)
                .map(|t| fseq.value_exact(t, &point).unwrap())
                .collect();
            // f_0(X*) is zero up to the bracket width.
            cum[0] = BigRational::zero();
            let exact = exact_x.then(|| ExactEfforts {
                x_star: point.clone(),
                period_efforts: (1..=periods)
                    .map(|t| {
                        (&cum[t] - &cum[t - 1])
                            / BigRational::from_integer(contest.group(t).into())
                    })
                    .collect(),
            });
            let mut cum_f: Vec<f64> = cum.iter().map(to_f64).collect();
            let x = to_f64(&point);
            cum_f[periods] = x;
            (
                x,
                to_f64(&(BigRational::one() - &point)),
                cum_f,
                exact,
                Some((root.lo().clone(), root.hi().clone())),
            )
        }
        None => {
            let x = threshold.value;
            let mut cum = if x > 0.0 {
                fseq.evaluate(x)?.values
            } else {
                vec![0.0; periods + 1]
            };
            cum[0] = 0.0;
            cum[periods] = x;
            (x, 1.0 - x, cum, None, None)
        }
    };

    let interior = match &threshold.root {
        Some(r) => !r.is_zero(),
        None => x_star > 0.0,
    };
    let status = if !interior {
        Status::NoInteriorCandidate
    } else if !conditions.condition1.pass {
        Status::ConditionsUnverified
    } else {
        Status::Solved
    };

    let period_efforts: Vec<f64> = (1..=periods)
        .map(|t| match &exact {
            Some(e) => to_f64(&e.period_efforts[t - 1]),
            None => (cumulative[t] - cumulative[t - 1]) / f64::from(contest.group(t)),
        })
        .collect();
    let h = if interior { kernel.h(x_star)? } else { 0.0 };
    let period_payoffs = period_efforts.iter().map(|x| x * h).collect();
    let boundary_tie = interior
        && periods >= 1
        && (x_star - fseq.threshold(1.min(periods)).value).abs() <= BOUNDARY_TIE_TOL
        && periods > 1;

    Ok(EquilibriumSolution {
        contest: contest.clone(),
        kernel: kernel.clone(),
        status,
        x_star,
        gap_to_one,
        cumulative,
        period_efforts,
        period_payoffs,
        exact,
        bracket,
        boundary_tie,
        conditions,
        tol: opts.tol,
        fseq: Arc::new(fseq),
    })
}

/// `2^-bits`.
fn half_pow(bits: usize) -> BigRational {
    BigRational::new(num_bigint::BigInt::one(), num_bigint::BigInt::one() << bits)
}

/// The unique `X` in `[X_t, 1]` with `f_t(X) = y`, by bisection.
pub fn invert_f(fseq: &FSequence, t: usize, y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) || y.is_nan() {
        return Err(Error::OutOfRange(y));
    }
    let mut lo = fseq.threshold(t).value;
    if y == 0.0 {
        return Ok(lo);
    }
    let mut hi = 1.0;
    if y == 1.0 {
        return Ok(hi);
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = fseq.value(t, mid)?;
        if v == y {
            return Ok(mid);
        }
        if v < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Effort of each period-`t` player after cumulative effort `x_prev`:
/// `(f_t(f_{t-1}^{-1}(x_prev)) - x_prev) / n_t`, and zero once
/// `x_prev >= 1`.
pub fn best_response(fseq: &FSequence, t: usize, x_prev: f64) -> Result<f64> {
    if x_prev.is_nan() || x_prev < 0.0 {
        return Err(Error::OutOfRange(x_prev));
    }
    if x_prev >= 1.0 {
        return Ok(0.0);
    }
    let total = invert_f(fseq, t - 1, x_prev)?;
    let after = fseq.value(t, total)?;
    Ok(((after - x_prev) / f64::from(fseq.contest().group(t))).max(0.0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpeAudit {
    #[serde(serialize_with = "ser_f64")]
    pub max_gain: f64,
    /// Largest gain per period.
    #[serde(serialize_with = "ser_f64_vec")]
    pub period_gains: Vec<f64>,
    /// Period and deviation attaining `max_gain`.
    pub worst_period: usize,
    #[serde(serialize_with = "ser_f64")]
    pub worst_deviation: f64,
    pub grid: usize,
}

/// Lets one player per period deviate over `grid` points of
/// `[0, 1 - X_{t-1}*]`, propagates later periods through `best_response`,
/// and reports the largest payoff gain over the equilibrium payoff.
pub fn verify_spe(solution: &EquilibriumSolution, grid: usize) -> Result<SpeAudit> {
    if !solution.is_solved() {
        return Err(Error::NotSolved(solution.status.to_string()));
    }
    let fseq = solution.fseq();
    let kernel = &solution.kernel;
    let periods = fseq.periods();
    let grid = grid.max(2);
    let mut audit = SpeAudit {
        max_gain: f64::NEG_INFINITY,
        period_gains: Vec::with_capacity(periods),
        worst_period: 1,
        worst_deviation: 0.0,
        grid,
    };
    for t in 1..=periods {
        let before = solution.cumulative[t - 1];
        let own = solution.period_efforts[t - 1];
        let others = solution.cumulative[t] - before - own;
        let base = solution.period_payoffs[t - 1];
        let span = 1.0 - before;
        let mut best = f64::NEG_INFINITY;
        for i in 0..grid {
            let d = span * i as f64 / (grid - 1) as f64;
            let payoff = deviation_payoff(fseq, kernel, t, before + others, d)?;
            let gain = payoff - base;
            if gain > best {
                best = gain;
            }
            if gain > audit.max_gain {
                audit.max_gain = gain;
                audit.worst_period = t;
                audit.worst_deviation = d;
            }
        }
        audit.period_gains.push(best);
    }
    Ok(audit)
}

/// Payoff of a period-`t` player exerting `d` when the rest of the
/// cumulative effort through period `t` is `rest`.
fn deviation_payoff(
    fseq: &FSequence,
    kernel: &PayoffKernel,
    t: usize,
    rest: f64,
    d: f64,
) -> Result<f64> {
    if d == 0.0 {
        return Ok(0.0);
    }
    let mut total = rest + d;
    for s in t + 1..=fseq.periods() {
        if total >= 1.0 {
            break;
        }
        total += f64::from(fseq.contest().group(s)) * best_response(fseq, s, total)?;
    }
    if total >= 1.0 {
        // h(1) = 0 and h is decreasing, so the payoff is at most zero.
        return Ok(0.0);
    }
    Ok(d * kernel.h(total)?)
}

impl EquilibriumSolution {
    /// Exact `X*` as a rational, when it is one.
    pub fn x_star_exact(&self) -> Option<&BigRational> {
        self.exact.as_ref().map(|e| &e.x_star)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polys::rational;

    fn c(g: &[u32]) -> Contest {
        Contest::new(g.to_vec()).unwrap()
    }

    fn tullock(g: &[u32]) -> EquilibriumSolution {
        solve(&c(g), &PayoffKernel::Tullock, DEFAULT_TOL).unwrap()
    }

    #[test]
    fn simultaneous_closed_form() {
        for n in 2..=12u32 {
            let s = tullock(&[n]);
            let nf = f64::from(n);
            assert!((s.x_star - (nf - 1.0) / nf).abs() < 1e-14);
            assert!((s.period_efforts[0] - (nf - 1.0) / (nf * nf)).abs() < 1e-14);
            assert_eq!(s.status, Status::Solved);
        }
    }

    #[test]
    fn tullock_121() {
        let s = tullock(&[1, 2, 1]);
        assert!((s.x_star - (7.0 + 13f64.sqrt()) / 12.0).abs() < 1e-13);
        let want = [0.4180, 0.1815, 0.1815, 0.1027];
        for (x, w) in s.efforts().iter().zip(want) {
            assert!((x - w).abs() < 5e-5, "{x} vs {w}");
        }
        assert!((s.efforts().iter().sum::<f64>() - s.x_star).abs() < 1e-12);
        assert_eq!(s.cumulative[0], 0.0);
        assert_eq!(s.cumulative[3], s.x_star);
    }

    #[test]
    fn two_player_equivalence() {
        for g in [&[2u32][..], &[1, 1]] {
            let s = tullock(g);
            assert_eq!(s.x_star_exact(), Some(&rational(1, 2)));
            assert_eq!(s.efforts(), vec![0.25, 0.25]);
        }
    }

    #[test]
    fn power_ratio_cases() {
        let k = PayoffKernel::PowerRatio;
        let s = solve(&c(&[4]), &k, DEFAULT_TOL).unwrap();
        assert_eq!(s.x_star_exact(), Some(&rational(1, 2)));
        assert_eq!(s.exact.as_ref().unwrap().period_efforts, vec![rational(1, 8)]);

        let s = solve(&c(&[1, 2, 1]), &k, DEFAULT_TOL).unwrap();
        assert_eq!(s.status, Status::Solved);
        assert_eq!(
            s.exact.as_ref().unwrap().period_efforts,
            vec![rational(1, 27), rational(5, 54), rational(1, 9)]
        );
        for g in [&[2u32][..], &[1, 1, 1, 1]] {
            let s = solve(&c(g), &k, DEFAULT_TOL).unwrap();
            assert_eq!(s.status, Status::NoInteriorCandidate);
        }
    }

    #[test]
    fn invert_and_best_response() {
        let s = tullock(&[1, 2, 1]);
        let f = s.fseq();
        assert!((invert_f(f, 2, 0.25).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(invert_f(f, 1, 1.0).unwrap(), 1.0);
        assert_eq!(invert_f(f, 1, 0.0).unwrap(), f.threshold(1).value);
        assert!(matches!(invert_f(f, 1, 1.5), Err(Error::OutOfRange(_))));
        assert!((best_response(f, 3, 0.25).unwrap() - 0.25).abs() < 1e-12);
        assert_eq!(best_response(f, 2, 1.5).unwrap(), 0.0);
        for t in 1..=3 {
            let br = best_response(f, t, s.cumulative[t - 1]).unwrap();
            assert!((br - s.period_efforts[t - 1]).abs() < 1e-10, "t={t}");
        }
        let s = tullock(&[1, 1, 1]);
        assert!((invert_f(s.fseq(), 1, 0.0).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn spe_audit_small() {
        for g in [&[1u32, 2, 1][..], &[3], &[1, 1]] {
            let a = verify_spe(&tullock(g), 400).unwrap();
            assert!(a.max_gain <= 1e-6, "{g:?}: {a:?}");
        }
        let s = solve(&c(&[1, 2, 1]), &PayoffKernel::PowerRatio, DEFAULT_TOL).unwrap();
        assert!(verify_spe(&s, 400).unwrap().max_gain <= 1e-6);
        let s = solve(&c(&[2]), &PayoffKernel::PowerRatio, DEFAULT_TOL).unwrap();
        assert!(matches!(verify_spe(&s, 10), Err(Error::NotSolved(_))));
    }

    #[test]
    fn float_path_matches_exact() {
        let ex = tullock(&[2, 1, 3]);
        let opts = SolveOptions {
            path: BuildPath::Float,
            ..SolveOptions::default()
        };
        let fl = solve_with(&c(&[2, 1, 3]), &PayoffKernel::Tullock, &opts).unwrap();
        assert!((ex.x_star - fl.x_star).abs() < 1e-12);
        for (a, b) in ex.period_efforts.iter().zip(&fl.period_efforts) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}
