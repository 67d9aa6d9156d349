//! Brute-force references that do not use the inverted best-response
//! machinery: backward induction on an effort grid, and best-response
//! iteration for simultaneous contests.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{ser_f64, ser_f64_vec};
use crate::kernels::{DerivativeChain, PayoffKernel};
use crate::recursion::Contest;

pub const MAX_ORACLE_PLAYERS: u64 = 5;
pub const MAX_ORACLE_PERIODS: usize = 4;
pub const MIN_STEP: f64 = 1e-4;
pub const MAX_STEP: f64 = 1e-2;
pub const SIM_MAX_ITER: usize = 10_000;

#[derive(Clone, Debug, Serialize)]
pub struct GridSolution {
    pub contest: Contest,
    #[serde(serialize_with = "ser_f64")]
    pub step: f64,
    /// Effort of each player, by period.
    #[serde(serialize_with = "ser_f64_vec")]
    pub period_efforts: Vec<f64>,
    #[serde(serialize_with = "ser_f64")]
    pub total: f64,
    /// FNV-1a hash of the continuation tables of every period.
    pub value_tables_digest: String,
    /// States whose within-period best responses only admit an approximate
    /// symmetric fixed point (a jump in the best response).
    pub approximate_states: usize,
    /// States with no symmetric fixed point at all; their continuation is
    /// undefined and never chosen by earlier players.
    pub unresolved_states: usize,
}

impl GridSolution {
    pub fn efforts(&self) -> Vec<f64> {
        self.contest
            .player_periods()
            .map(|t| self.period_efforts[t - 1])
            .collect()
    }
}

struct Fnv(u64);

impl Fnv {
    fn new() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }

    fn write(&mut self, v: u64) {
        for b in v.to_le_bytes() {
            self.0 ^= u64::from(b);
            self.0 = self.0.wrapping_mul(0x0100_0000_01b3);
        }
    }
}

/// Final total effort as a function of the cumulative effort after some
/// period, tabulated on the state grid and linearly interpolated.
struct Continuation {
    values: Vec<f64>,
    step: f64,
}

impl Continuation {
    fn identity(size: usize, step: f64) -> Self {
        Continuation {
            values: (0..=size).map(|i| i as f64 * step).collect(),
            step,
        }
    }

    /// Cubic Hermite interpolation with central-difference slopes.
    fn at(&self, c: f64) -> f64 {
        self.eval(c).0
    }

    /// Interpolated value and derivative at `c`.
    fn eval(&self, c: f64) -> (f64, f64) {
        let last = self.values.len() - 1;
        let pos = c / self.step;
        if pos >= last as f64 {
            // Nobody adds effort once the total reaches one.
            return (c.max(self.values[last]), 1.0);
        }
        let i = pos.floor().max(0.0) as usize;
        let w = pos - i as f64;
        let y = &self.values;
        let slope = |j: usize| match j {
            0 => y[1] - y[0],
            j if j == last => y[last] - y[last - 1],
            j => 0.5 * (y[j + 1] - y[j - 1]),
        };
        let (m0, m1) = (slope(i), slope(i + 1));
        let (w2, w3) = (w * w, w * w * w);
        let value = (2.0 * w3 - 3.0 * w2 + 1.0) * y[i]
            + (w3 - 2.0 * w2 + w) * m0
            + (-2.0 * w3 + 3.0 * w2) * y[i + 1]
            + (w3 - w2) * m1;
        let d = (6.0 * w2 - 6.0 * w) * y[i]
            + (3.0 * w2 - 4.0 * w + 1.0) * m0
            + (-6.0 * w2 + 6.0 * w) * y[i + 1]
            + (3.0 * w2 - 2.0 * w) * m1;
        (value, d / self.step)
    }
}

/// Coarse points scanned before golden-section refinement of an argmax.
const ARGMAX_SCAN: usize = 64;

/// Maximizer of `x * h(F(s + x))` over `x` in `[0, 1 - s]`.
fn grid_best_response(kernel: &PayoffKernel, next: &Continuation, s: f64) -> Result<f64> {
    let span = 1.0 - s;
    if span <= 0.0 {
        return Ok(0.0);
    }
    let payoff = |x: f64| -> Result<f64> {
        if x <= 0.0 {
            return Ok(0.0);
        }
        let total = next.at(s + x);
        if total >= 1.0 {
            return Ok(0.0);
        }
        Ok(x * kernel.h(total)?)
    };
    let cell = span / ARGMAX_SCAN as f64;
    let mut best_i = 0;
    let mut best = 0.0;
    for i in 1..=ARGMAX_SCAN {
        let v = payoff(i as f64 * cell)?;
        if v > best {
            best = v;
            best_i = i;
        }
    }
    if best <= 0.0 {
        return Ok(0.0);
    }
    let (mut a, mut b) = (
        (best_i as f64 - 1.0) * cell,
        ((best_i + 1) as f64 * cell).min(span),
    );
    // Marginal payoff h(F) + x h'(F) F'(s + x).
    let marginal = |x: f64| -> Result<f64> {
        let (total, slope) = next.eval(s + x);
        if total >= 1.0 || total.is_nan() {
            return Ok(f64::NAN);
        }
        Ok(kernel.h(total)? + x * kernel.h_prime(total)? * slope)
    };
    let (da, db) = (marginal(a.max(f64::MIN_POSITIVE))?, marginal(b)?);
    if da > 0.0 && db < 0.0 {
        while b - a > 1e-15 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if marginal(mid)? > 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        return Ok(0.5 * (a + b));
    }
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let (mut f1, mut f2) = (payoff(x1)?, payoff(x2)?);
    while b - a > 1e-13 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = payoff(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = payoff(x1)?;
        }
    }
    Ok(0.5 * (a + b))
}

/// Symmetric within-period effort `e = BR(c + (n - 1) e)`, by bisection on
/// `BR(c + (n - 1) e) - e`. Returns whether the fixed point is exact to
/// `tol`; `None` when the residual stays above `max_residual`.
fn symmetric_effort(
    kernel: &PayoffKernel,
    next: &Continuation,
    c: f64,
    n: usize,
    tol: f64,
    max_residual: f64,
) -> Result<Option<(f64, bool)>> {
    let others = (n - 1) as f64;
    let respond = |e: f64| grid_best_response(kernel, next, c + others * e);
    if n == 1 {
        return Ok(Some((respond(0.0)?, true)));
    }
    let (mut lo, mut hi) = (0.0, ((1.0 - c) / others).max(0.0));
    let (mut r_lo, mut r_hi) = (respond(lo)?, respond(hi)?);
    if r_lo <= lo {
        return Ok(Some((0.0, true)));
    }
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        let r = respond(mid)?;
        if r > mid {
            lo = mid;
            r_lo = r;
        } else {
            hi = mid;
            r_hi = r;
        }
    }
    let residual = (r_lo - lo).abs().min((r_hi - hi).abs());
    if residual <= tol {
        Ok(Some((0.5 * (lo + hi), true)))
    } else if residual <= max_residual {
        Ok(Some((0.5 * (lo + hi), false)))
    } else {
        Ok(None)
    }
}

/// Subgame-perfect equilibrium by backward induction over a grid of
/// cumulative-effort states with spacing `step`.
///
/// For every state before period `t`, the period's players play the
/// symmetric equilibrium of their simultaneous subgame, each maximizing
/// `x * h(F(s + x))` where `F` maps the cumulative effort after the period
/// to the final total. `F` is tabulated on the grid and interpolated
/// linearly; efforts are not restricted to the grid.
pub fn grid_spe(contest: &Contest, kernel: &PayoffKernel, step: f64) -> Result<GridSolution> {
    if contest.players() > MAX_ORACLE_PLAYERS || contest.periods() > MAX_ORACLE_PERIODS {
        return Err(Error::TooLarge(format!(
            "grid oracle supports at most {MAX_ORACLE_PLAYERS} players and \
             {MAX_ORACLE_PERIODS} periods, got {contest}"
        )));
    }
    if !(MIN_STEP..=MAX_STEP).contains(&step) {
        return Err(Error::TooLarge(format!(
            "step {step} outside [{MIN_STEP}, {MAX_STEP}]"
        )));
    }
    let size = (1.0 / step).round() as usize;
    let step = 1.0 / size as f64;
    let periods = contest.periods();
    let mut next = Continuation::identity(size, step);
    let mut continuations = Vec::with_capacity(periods);
    let mut approximate_states = 0;
    let mut unresolved_states = 0;
    let mut digest = Fnv::new();

    for t in (1..=periods).rev() {
        let n = contest.group(t) as usize;
        if t == 1 {
            // Period 1 always starts from zero effort.
            continuations.push(next);
            break;
        }
        let mut values = Vec::with_capacity(size + 1);
        for i in 0..=size {
            let c = i as f64 * step;
            match symmetric_effort(kernel, &next, c, n, 1e-9, step)? {
                Some((e, exact)) => {
                    if !exact {
                        approximate_states += 1;
                    }
                    values.push(next.at(c + n as f64 * e));
                }
                None => {
                    unresolved_states += 1;
                    values.push(f64::NAN);
                }
            }
        }
        for v in &values {
            digest.write(v.to_bits());
        }
        continuations.push(next);
        next = Continuation { values, step };
    }
    continuations.reverse();

    // Forward pass from zero; states off the grid are solved directly
    // against the stored continuation of their period.
    let mut c = 0.0;
    let mut period_efforts = Vec::with_capacity(periods);
    for t in 1..=periods {
        let n = contest.group(t) as usize;
        let e = symmetric_effort(kernel, &continuations[t - 1], c, n, 1e-9, step)?
            .ok_or(Error::NoFixedPoint {
                period: t,
                state: c,
            })?
            .0;
        period_efforts.push(e);
        c += n as f64 * e;
    }
    Ok(GridSolution {
        contest: contest.clone(),
        step,
        period_efforts,
        total: c,
        value_tables_digest: format!("{:016x}", digest.0),
        approximate_states,
        unresolved_states,
    })
}

/// Total effort of the symmetric simultaneous equilibrium with `n`
/// players, by damped best-response iteration on the first-order
/// condition `x = g(x + Y)`.
pub fn sim_fixed_point(n: u32, kernel: &PayoffKernel, tol: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidContest("need at least two players".into()));
    }
    let others = f64::from(n - 1);
    let damping = 1.0 / f64::from(n);
    let mut x = 0.5 / f64::from(n);
    for _ in 0..SIM_MAX_ITER {
        let target = single_best_response(kernel, others * x)?;
        if (target - x).abs() <= tol {
            return Ok(f64::from(n) * target);
        }
        x += damping * (target - x);
    }
    Err(Error::NoConvergence(SIM_MAX_ITER))
}

/// Root of `x - g(x + y)` on `[0, 1 - y]`.
fn single_best_response(kernel: &PayoffKernel, y: f64) -> Result<f64> {
    if y >= 1.0 {
        return Ok(0.0);
    }
    let phi = |x: f64| -> Result<f64> { Ok(x - kernel.g_derivative(0, x + y)?) };
    let (mut lo, mut hi) = (0.0, 1.0 - y);
    if phi(lo)? >= 0.0 {
        return Ok(0.0);
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if phi(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}
