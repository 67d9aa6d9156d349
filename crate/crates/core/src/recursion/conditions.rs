//! Sufficient conditions for existence, uniqueness and the information
//! results: well-behaved inverted best responses and higher-order
//! strategic substitutes.

use std::cmp::Ordering;

use num_traits::Signed;
use serde::Serialize;

use super::sequences::{FSequence, GSequence, SCAN_POINTS};
use crate::error::Result;
use crate::format::{ser_f64, ser_indexed};
use crate::kernels::check_t_monotone;
use crate::polys::{from_f64, isolate_roots_unit, rational, to_f64, RealRoot};

/// Margin by which `g_k(X*)` must exceed zero.
pub const COND2_MARGIN: f64 = 1e-9;

/// How strongly a Condition 1 verdict is backed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    /// Exact root isolation of every `f_t` and `f_t'`.
    Certified,
    /// Sign scans on a grid; roots closer than the grid may be missed.
    VerifiedOnGrid,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodWitness {
    pub period: usize,
    #[serde(serialize_with = "ser_f64")]
    pub threshold: f64,
    /// `f_t` has a root in `[X_{t+1}, 1]`.
    pub root_found: bool,
    /// `f_t < 0` on `[X_{t+1}, X_t)`.
    pub negative_below: bool,
    /// `f_t' > 0` on `[X_t, 1]`.
    pub increasing_above: bool,
}

impl PeriodWitness {
    pub fn pass(&self) -> bool {
        self.root_found && self.negative_below && self.increasing_above
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Condition1Report {
    pub pass: bool,
    pub strength: Certification,
    pub periods: Vec<PeriodWitness>,
    /// `0 < X_0 < 1`.
    pub interior: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition2Verdict {
    Pass,
    /// Some `g_k(X*)` vanishes within the margin and none is negative.
    Boundary,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Condition2Report {
    pub verdict: Condition2Verdict,
    /// `(k, g_k(X*))` for `k = 2..=T`.
    #[serde(serialize_with = "ser_indexed")]
    pub values: Vec<(usize, f64)>,
    pub first_nonpositive: Option<usize>,
}

impl Condition2Report {
    pub fn pass(&self) -> bool {
        self.verdict == Condition2Verdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub condition1: Condition1Report,
    pub condition2: Option<Condition2Report>,
    /// `g` is T-times monotone on a 1001-point grid, which implies
    /// Conditions 1 and 2.
    pub certified_by_monotonicity: bool,
}

/// Checks Condition 1: for every `t < T`, `f_t` has a highest root
/// `X_t >= X_{t+1}`, is negative on `[X_{t+1}, X_t)`, and strictly
/// increasing on `[X_t, 1]`; and `0 < X_0 < 1`.
///
/// `f_t(0) = 0` for every `t`, so at a threshold sitting exactly at zero
/// the sign requirement is read on the open interval and `f_t'(0) = 0` is
/// allowed.
pub fn check_condition1(fseq: &FSequence) -> Result<Condition1Report> {
    if fseq.is_exact() {
        Ok(exact_condition1(fseq))
    } else {
        grid_condition1(fseq)
    }
}

fn exact_condition1(fseq: &FSequence) -> Condition1Report {
    let periods = fseq.periods();
    let mut witnesses = Vec::with_capacity(periods);
    for t in (0..periods).rev() {
        let f = fseq.poly(t).unwrap();
        let mut lower = fseq.threshold(t + 1).root.clone().unwrap();
        let roots = isolate_roots_unit(f).into_roots();
        let mut witness = PeriodWitness {
            period: t,
            threshold: fseq.threshold(t).value,
            root_found: false,
            negative_below: false,
            increasing_above: false,
        };
        let Some((highest, rest)) = roots.split_last() else {
            witnesses.push(witness);
            continue;
        };
        let mut highest = highest.clone();
        let order = highest.cmp_root(&mut lower);
        witness.root_found = order != Ordering::Less;
        if witness.root_found {
            witness.negative_below = match order {
                Ordering::Equal => true,
                _ => negative_below(f, &mut highest, rest.last().cloned(), &mut lower),
            };
            witness.increasing_above = increasing_above(f, &mut highest);
        }
        witnesses.push(witness);
    }
    witnesses.reverse();
    let x0 = &fseq.threshold(0);
    let interior = x0.root.as_ref().is_some_and(|r| !r.is_zero()) && x0.value < 1.0;
    Condition1Report {
        pass: interior && witnesses.iter().all(PeriodWitness::pass),
        strength: Certification::Certified,
        periods: witnesses,
        interior,
    }
}

/// No root of `f` in `(lower, highest)`, `f < 0` there, and `f(lower) < 0`
/// unless `lower` is exactly zero.
fn negative_below(
    f: &crate::polys::ExactPoly,
    highest: &mut RealRoot,
    second: Option<RealRoot>,
    lower: &mut RealRoot,
) -> bool {
    if let Some(mut second) = second {
        match second.cmp_root(lower) {
            Ordering::Greater => return false,
            Ordering::Equal if !lower.is_zero() => return false,
            _ => {}
        }
        separate(&mut second, highest);
    }
    separate(lower, highest);
    let probe = if highest.is_exact() {
        let bound = lower.hi().clone();
        (bound + highest.lo()) * rational(1, 2)
    } else {
        highest.lo().clone()
    };
    f.eval(&probe).is_negative()
}

/// Refines until `below.hi < above.lo`; requires `below < above`.
fn separate(below: &mut RealRoot, above: &mut RealRoot) {
    while below.hi() >= above.lo() {
        if above.is_exact() || (!below.is_exact() && below.width() >= above.width()) {
            below.refine();
        } else {
            above.refine();
        }
        if below.is_exact() && above.is_exact() {
            break;
        }
    }
}

/// `f' > 0` on `(X, 1]`, and at `X` itself unless `X` is exactly zero.
fn increasing_above(f: &crate::polys::ExactPoly, threshold: &mut RealRoot) -> bool {
    let d = f.derivative();
    if d.is_zero() {
        return false;
    }
    if !d.eval(&num_traits::One::one()).is_positive() {
        return false;
    }
    let droots = isolate_roots_unit(&d).into_roots();
    let Some(mut top) = droots.last().cloned() else {
        return true;
    };
    match top.cmp_root(threshold) {
        Ordering::Less => true,
        Ordering::Equal => threshold.is_zero(),
        Ordering::Greater => false,
    }
}

fn grid_condition1(fseq: &FSequence) -> Result<Condition1Report> {
    let periods = fseq.periods();
    let mut witnesses = Vec::with_capacity(periods);
    for t in 0..periods {
        let lower = fseq.threshold(t + 1).value;
        let th = fseq.threshold(t);
        let mut w = PeriodWitness {
            period: t,
            threshold: th.value,
            root_found: th.above_next,
            negative_below: false,
            increasing_above: false,
        };
        if w.root_found {
            w.negative_below = true;
            if th.value > lower {
                let width = th.value - lower;
                for i in 0..SCAN_POINTS {
                    let x = lower + width * i as f64 / SCAN_POINTS as f64;
                    if x <= 0.0 {
                        continue;
                    }
                    if fseq.value(t, x)? >= 0.0 {
                        w.negative_below = false;
                        break;
                    }
                }
            }
            w.increasing_above = true;
            let width = 1.0 - th.value;
            for i in 0..=SCAN_POINTS {
                let x = th.value + width * i as f64 / SCAN_POINTS as f64;
                if x <= 0.0 {
                    continue;
                }
                if fseq.slope(t, x)? <= 0.0 {
                    w.increasing_above = false;
                    break;
                }
            }
        }
        witnesses.push(w);
    }
    let x0 = fseq.threshold(0).value;
    let interior = x0 > 0.0 && x0 < 1.0;
    Ok(Condition1Report {
        pass: interior && witnesses.iter().all(PeriodWitness::pass),
        strength: Certification::VerifiedOnGrid,
        periods: witnesses,
        interior,
    })
}

/// Checks Condition 2: `g_k(X*) > 0` for `k = 2..=T`, with margin
/// `COND2_MARGIN`.
pub fn check_condition2(gseq: &GSequence, x_star: f64) -> Result<Condition2Report> {
    let mut values = Vec::new();
    if gseq.is_exact() {
        let x = from_f64(x_star);
        for k in 2..=gseq.periods() {
            values.push((k, to_f64(&gseq.exact(k).unwrap().eval(&x))));
        }
    } else if gseq.periods() >= 2 {
        let all = gseq.values_at(x_star)?;
        for (i, (v, _)) in all.iter().enumerate().skip(1) {
            values.push((i + 1, *v));
        }
    }
    let first_fail = values.iter().find(|(_, v)| *v < -COND2_MARGIN).map(|p| p.0);
    let first_nonpositive = values.iter().find(|(_, v)| *v <= COND2_MARGIN).map(|p| p.0);
    let verdict = match (first_fail, first_nonpositive) {
        (Some(_), _) => Condition2Verdict::Fail,
        (None, Some(_)) => Condition2Verdict::Boundary,
        (None, None) => Condition2Verdict::Pass,
    };
    Ok(Condition2Report {
        verdict,
        values,
        first_nonpositive,
    })
}

/// Both conditions; Condition 2 is evaluated at `X_0` when it is interior.
pub fn check_conditions(fseq: &FSequence) -> Result<ConditionReport> {
    let condition1 = check_condition1(fseq)?;
    let x0 = fseq.threshold(0).value;
    let condition2 = if x0 > 0.0 && x0 < 1.0 {
        Some(check_condition2(fseq.gseq(), x0)?)
    } else {
        None
    };
    let certified_by_monotonicity =
        check_t_monotone(fseq.kernel(), fseq.periods(), 1001, false)?.pass;
    Ok(ConditionReport {
        condition1,
        condition2,
        certified_by_monotonicity,
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::PayoffKernel;
    use crate::recursion::{BuildPath, Contest};

    fn fseq(g: &[u32], k: &PayoffKernel) -> FSequence {
        FSequence::build(&Contest::new(g.to_vec()).unwrap(), k).unwrap()
    }

    #[test]
    fn tullock_passes_condition1() {
        for g in [&[1u32, 2, 1][..], &[3], &[1, 1, 1, 1, 1], &[2, 3, 1], &[5, 5]] {
            let r = check_condition1(&fseq(g, &PayoffKernel::Tullock)).unwrap();
            assert!(r.pass, "{g:?}: {r:?}");
            assert_eq!(r.strength, Certification::Certified);
        }
    }

    #[test]
    fn power_ratio_sequential_fails() {
        let f = fseq(&[1, 1, 1, 1], &PayoffKernel::PowerRatio);
        assert_eq!(f.threshold(0).value, 0.0);
        let r = check_condition1(&f).unwrap();
        assert!(!r.pass);
        assert!(!r.interior);
    }

    #[test]
    fn power_ratio_121_passes_condition1() {
        let r = check_condition1(&fseq(&[1, 2, 1], &PayoffKernel::PowerRatio)).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn log_demand_grid_check() {
        let f = fseq(&[2, 2], &PayoffKernel::LogDemand);
        let r = check_condition1(&f).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.strength, Certification::VerifiedOnGrid);
        assert!((r.periods[1].threshold - (-0.5f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn grid_and_exact_agree_for_tullock() {
        let c = Contest::new(vec![1, 3, 2]).unwrap();
        let float = FSequence::build_with(&c, &PayoffKernel::Tullock, BuildPath::Float).unwrap();
        assert!(check_condition1(&float).unwrap().pass);
    }

    #[test]
    fn condition2_cases() {
        let gs = GSequence::build(&PayoffKernel::Tullock, 3).unwrap();
        let x = (7.0 + 13f64.sqrt()) / 12.0;
        assert!(check_condition2(&gs, x).unwrap().pass());

        // Fully sequential: g_n(X*) = 0.
        let f = fseq(&[1, 1, 1], &PayoffKernel::Tullock);
        let r = check_condition2(f.gseq(), f.threshold(0).value).unwrap();
        assert_eq!(r.verdict, Condition2Verdict::Boundary);
        assert_eq!(r.first_nonpositive, Some(3));
        assert!(r.values[1].1.abs() < 1e-12);

        let gs = GSequence::build(&PayoffKernel::PowerRatio, 2).unwrap();
        let r = check_condition2(&gs, 0.5).unwrap();
        assert_eq!(r.verdict, Condition2Verdict::Boundary);
        assert_eq!(r.first_nonpositive, Some(2));
        assert!(!r.pass());

        let gs = GSequence::build(&PayoffKernel::PowerRatio, 3).unwrap();
        let r = check_condition2(&gs, 1.0 / 3.0).unwrap();
        assert_eq!(r.verdict, Condition2Verdict::Fail);
        assert!((r.values[0].1 + 1.0 / 54.0).abs() < 1e-15);
        assert!((r.values[1].1 + 1.0 / 108.0).abs() < 1e-15);
    }
}
