use num_rational::BigRational;
use num_traits::Zero;

use super::contest::Contest;
use super::measures::{suffix_measures, InfoMeasures};
use super::taylor;
use crate::error::{Error, Result};
use crate::kernels::{DerivativeChain, PayoffKernel};
use crate::polys::{compensated_horner, from_f64, highest_root_unit, to_f64, ExactPoly, RealRoot};

/// Largest number of periods handled in exact rational arithmetic by
/// default; longer contests use the float evaluator.
pub const EXACT_PERIOD_LIMIT: usize = 25;

/// Relative tolerance for agreement of the two float constructions.
const DUAL_ROUTE_TOL: f64 = 1e-9;

/// Grid density of the float threshold scan.
pub(crate) const SCAN_POINTS: usize = 4096;

/// The discouragement sequence `g_1 = g`, `g_{k+1} = -g_k' g`.
#[derive(Clone, Debug)]
pub struct GSequence {
    kernel: PayoffKernel,
    periods: usize,
    exact: Option<ExactG>,
}

#[derive(Clone, Debug)]
struct ExactG {
    polys: Vec<ExactPoly>,
    values: Vec<Vec<f64>>,
    slopes: Vec<Vec<f64>>,
}

pub fn build_g_sequence(kernel: &PayoffKernel, periods: usize) -> Result<GSequence> {
    GSequence::build(kernel, periods)
}

impl GSequence {
    pub fn build(kernel: &PayoffKernel, periods: usize) -> Result<Self> {
        if periods > kernel.max_order() {
            return Err(Error::UnsupportedOrder {
                order: periods,
                max: kernel.max_order(),
            });
        }
        let exact = kernel.g_poly().map(|g| {
            let mut polys = Vec::with_capacity(periods);
            let mut cur = g.clone();
            for _ in 0..periods.max(1) {
                let next = -&(&cur.derivative() * &g);
                polys.push(cur);
                cur = next;
            }
            let values = polys.iter().map(ExactPoly::to_f64_coeffs).collect();
            let slopes = polys
                .iter()
                .map(|p| p.derivative().to_f64_coeffs())
                .collect();
            ExactG {
                polys,
                values,
                slopes,
            }
        });
        Ok(GSequence {
            kernel: kernel.clone(),
            periods,
            exact,
        })
    }

    pub fn kernel(&self) -> &PayoffKernel {
        &self.kernel
    }

    pub fn periods(&self) -> usize {
        self.periods
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// `g_k` as an exact polynomial, `k` 1-based.
    pub fn exact(&self, k: usize) -> Option<&ExactPoly> {
        self.exact.as_ref()?.polys.get(k.checked_sub(1)?)
    }

    /// `(g_k(x), g_k'(x))` for `k = 1..=T`.
    pub fn values_at(&self, x: f64) -> Result<Vec<(f64, f64)>> {
        if let Some(e) = &self.exact {
            return Ok(e
                .values
                .iter()
                .zip(&e.slopes)
                .map(|(v, s)| (compensated_horner(v, x), compensated_horner(s, x)))
                .collect());
        }
        let g = self.kernel.taylor(x, self.periods.max(1))?;
        let mut out = Vec::with_capacity(self.periods);
        let mut cur = g.clone();
        for _ in 0..self.periods.max(1) {
            out.push((cur[0], cur.get(1).copied().unwrap_or(0.0)));
            let d = taylor::derivative(&cur);
            let len = d.len();
            cur = taylor::mul_truncated(&d, &g, len)
                .into_iter()
                .map(|c| -c)
                .collect();
        }
        out.truncate(self.periods.max(1));
        Ok(out)
    }

    pub fn value(&self, k: usize, x: f64) -> Result<f64> {
        if let Some(p) = self.exact(k) {
            return Ok(to_f64(&p.eval(&from_f64(x))));
        }
        let all = self.values_at(x)?;
        all.get(k.wrapping_sub(1))
            .map(|v| v.0)
            .ok_or(Error::UnsupportedOrder {
                order: k,
                max: self.periods,
            })
    }
}

/// Which arithmetic backs an `FSequence`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BuildPath {
    /// Exact for polynomial kernels with at most `EXACT_PERIOD_LIMIT`
    /// periods, float otherwise.
    #[default]
    Auto,
    Exact,
    Float,
}

/// Highest root of one `f_t`.
#[derive(Clone, Debug)]
pub struct Threshold {
    pub period: usize,
    pub value: f64,
    /// Certified bracket, exact path only.
    pub root: Option<RealRoot>,
    /// Whether the root lies in `[X_{t+1}, 1]`.
    pub above_next: bool,
}

impl Threshold {
    pub fn exact(&self) -> Option<&BigRational> {
        self.root.as_ref()?.exact_value()
    }
}

/// Inverted best-response functions `f_T, ..., f_0` of a contest.
///
/// `f_t(X)` is the cumulative effort after period `t` that is consistent
/// with final total effort `X` when every later player best-responds.
/// Both the recursion `f_{t-1} = f_t - n_t f_t' g` and the measure form
/// `f_t = X - sum_k S_k(n^t) g_k` are built and cross-checked.
#[derive(Clone, Debug)]
pub struct FSequence {
    contest: Contest,
    kernel: PayoffKernel,
    gseq: GSequence,
    suffix: Vec<InfoMeasures>,
    suffix_f64: Vec<Vec<f64>>,
    exact: Option<ExactF>,
    thresholds: Vec<Threshold>,
}

#[derive(Clone, Debug)]
struct ExactF {
    polys: Vec<ExactPoly>,
    values: Vec<Vec<f64>>,
    slopes: Vec<Vec<f64>>,
}

/// Values and slopes of every `f_t` at one point, indexed by `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct FPoint {
    pub values: Vec<f64>,
    pub slopes: Vec<f64>,
}

pub fn build_f_sequence(contest: &Contest, kernel: &PayoffKernel) -> Result<FSequence> {
    FSequence::build(contest, kernel)
}

impl FSequence {
    pub fn build(contest: &Contest, kernel: &PayoffKernel) -> Result<Self> {
        Self::build_with(contest, kernel, BuildPath::Auto)
    }

    pub fn build_with(contest: &Contest, kernel: &PayoffKernel, path: BuildPath) -> Result<Self> {
        let periods = contest.periods();
        let gseq = GSequence::build(kernel, periods)?;
        let suffix = suffix_measures(contest);
        let suffix_f64 = suffix.iter().map(InfoMeasures::to_f64).collect();
        let use_exact = match path {
            BuildPath::Auto => gseq.is_exact() && periods <= EXACT_PERIOD_LIMIT,
            BuildPath::Exact if !gseq.is_exact() => {
                return Err(Error::InvalidKernel(format!(
                    "kernel {kernel} has no polynomial form for exact construction"
                )))
            }
            BuildPath::Exact => true,
            BuildPath::Float => false,
        };
        let mut fseq = FSequence {
            contest: contest.clone(),
            kernel: kernel.clone(),
            gseq,
            suffix,
            suffix_f64,
            exact: None,
            thresholds: Vec::new(),
        };
        if use_exact {
            fseq.exact = Some(fseq.build_exact()?);
        } else {
            fseq.cross_check_float()?;
        }
        fseq.thresholds = fseq.find_thresholds()?;
        Ok(fseq)
    }

    fn build_exact(&self) -> Result<ExactF> {
        let periods = self.periods();
        let g = self.gseq.exact(1).expect("polynomial kernel").clone();
        let mut recursive = vec![ExactPoly::zero(); periods + 1];
        recursive[periods] = ExactPoly::x();
        for t in (1..=periods).rev() {
            let n = ExactPoly::constant(crate::polys::integer(i64::from(self.contest.group(t))));
            let step = &(&n * &recursive[t].derivative()) * &g;
            recursive[t - 1] = &recursive[t] - &step;
        }
        for (t, rec) in recursive.iter().enumerate() {
            let mut via_measures = ExactPoly::x();
            for (k, s) in self.suffix[t].levels().iter().enumerate() {
                let s = BigRational::from_integer(s.clone().into());
                via_measures = &via_measures - &self.gseq.exact(k + 1).unwrap().scale(&s);
            }
            if &via_measures != rec {
                let x = 0.5;
                return Err(Error::ConstructionMismatch {
                    period: t,
                    x,
                    recursion: rec.eval_f64(x),
                    measures: via_measures.eval_f64(x),
                });
            }
        }
        let values = recursive.iter().map(ExactPoly::to_f64_coeffs).collect();
        let slopes = recursive
            .iter()
            .map(|p| p.derivative().to_f64_coeffs())
            .collect();
        Ok(ExactF {
            polys: recursive,
            values,
            slopes,
        })
    }

    fn cross_check_float(&self) -> Result<()> {
        let grid = 257;
        for i in 1..grid {
            let x = i as f64 / grid as f64;
            let a = self.evaluate_via_measures(x)?;
            let b = self.evaluate_via_recursion(x)?;
            for t in 0..=self.periods() {
                let scale = 1.0 + self.measure_magnitude(t, x)?;
                if (a.values[t] - b.values[t]).abs() > DUAL_ROUTE_TOL * scale {
                    return Err(Error::ConstructionMismatch {
                        period: t,
                        x,
                        recursion: b.values[t],
                        measures: a.values[t],
                    });
                }
            }
        }
        Ok(())
    }

    /// `sum_k S_k(n^t) |g_k(x)|`, the scale of rounding error in `f_t(x)`.
    fn measure_magnitude(&self, t: usize, x: f64) -> Result<f64> {
        let g = self.gseq.values_at(x)?;
        Ok(self.suffix_f64[t]
            .iter()
            .zip(&g)
            .map(|(s, (v, _))| s * v.abs())
            .sum())
    }

    pub fn contest(&self) -> &Contest {
        &self.contest
    }

    pub fn kernel(&self) -> &PayoffKernel {
        &self.kernel
    }

    pub fn gseq(&self) -> &GSequence {
        &self.gseq
    }

    pub fn periods(&self) -> usize {
        self.contest.periods()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Measures `S(n^t)` of the sub-contest after period `t`.
    pub fn suffix_measures(&self, t: usize) -> &InfoMeasures {
        &self.suffix[t]
    }

    /// `f_t` as an exact polynomial (exact path only).
    pub fn poly(&self, t: usize) -> Option<&ExactPoly> {
        self.exact.as_ref()?.polys.get(t)
    }

    pub fn thresholds(&self) -> &[Threshold] {
        &self.thresholds
    }

    /// `X_t`, the highest root of `f_t` in `[0, 1]`.
    pub fn threshold(&self, t: usize) -> &Threshold {
        &self.thresholds[t]
    }

    /// `f_t(x)` and `f_t'(x)` for every `t`.
    pub fn evaluate(&self, x: f64) -> Result<FPoint> {
        if let Some(e) = &self.exact {
            return Ok(FPoint {
                values: e.values.iter().map(|c| compensated_horner(c, x)).collect(),
                slopes: e.slopes.iter().map(|c| compensated_horner(c, x)).collect(),
            });
        }
        self.evaluate_via_measures(x)
    }

    /// Kernels with `g(0) = 0` but singular derivatives at 0 still have
    /// `f_t(0) = 0` for every t.
    fn singular_zero(&self, x: f64) -> Option<FPoint> {
        if x != 0.0 || self.gseq.is_exact() {
            return None;
        }
        let k = &self.kernel;
        let singular = k.g_derivative(0, 0.0).ok()? == 0.0 && k.g_derivative(1, 0.0).is_err();
        singular.then(|| self.at_zero())
    }

    fn at_zero(&self) -> FPoint {
        let n = self.periods() + 1;
        let mut slopes = vec![f64::NAN; n];
        slopes[n - 1] = 1.0;
        FPoint {
            values: vec![0.0; n],
            slopes,
        }
    }

    pub fn value(&self, t: usize, x: f64) -> Result<f64> {
        if let Some(e) = &self.exact {
            return Ok(compensated_horner(&e.values[t], x));
        }
        Ok(self.evaluate(x)?.values[t])
    }

    pub fn slope(&self, t: usize, x: f64) -> Result<f64> {
        if let Some(e) = &self.exact {
            return Ok(compensated_horner(&e.slopes[t], x));
        }
        Ok(self.evaluate(x)?.slopes[t])
    }

    /// Exact value at a rational point (exact path only).
    pub fn value_exact(&self, t: usize, x: &BigRational) -> Option<BigRational> {
        Some(self.poly(t)?.eval(x))
    }

    /// `f_t = X - sum_k S_k(n^t) g_k` evaluated in floats.
    pub fn evaluate_via_measures(&self, x: f64) -> Result<FPoint> {
        if let Some(p) = self.singular_zero(x) {
            return Ok(p);
        }
        let g = self.gseq.values_at(x)?;
        let mut values = Vec::with_capacity(self.periods() + 1);
        let mut slopes = Vec::with_capacity(self.periods() + 1);
        for s in &self.suffix_f64 {
            let (mut v, mut d) = (x, 1.0);
            for (sk, (gk, gk1)) in s.iter().zip(&g) {
                v -= sk * gk;
                d -= sk * gk1;
            }
            values.push(v);
            slopes.push(d);
        }
        Ok(FPoint { values, slopes })
    }

    /// `f_{t-1} = f_t - n_t f_t' g` carried out on truncated Taylor series.
    pub fn evaluate_via_recursion(&self, x: f64) -> Result<FPoint> {
        if let Some(p) = self.singular_zero(x) {
            return Ok(p);
        }
        let periods = self.periods();
        let g = self.kernel.taylor(x, periods.max(1))?;
        let mut series = vec![0.0; periods + 2];
        series[0] = x;
        series[1] = 1.0;
        let mut values = vec![0.0; periods + 1];
        let mut slopes = vec![0.0; periods + 1];
        values[periods] = x;
        slopes[periods] = 1.0;
        for t in (1..=periods).rev() {
            let n = f64::from(self.contest.group(t));
            let d = taylor::derivative(&series);
            let len = d.len();
            let prod = taylor::mul_truncated(&d, &g, len);
            series = series
                .iter()
                .take(len)
                .zip(&prod)
                .map(|(f, p)| f - n * p)
                .collect();
            values[t - 1] = series[0];
            slopes[t - 1] = series[1];
        }
        Ok(FPoint { values, slopes })
    }

    fn find_thresholds(&self) -> Result<Vec<Threshold>> {
        let periods = self.periods();
        let mut out: Vec<Threshold> = Vec::with_capacity(periods + 1);
        out.push(Threshold {
            period: periods,
            value: 0.0,
            root: self
                .exact
                .as_ref()
                .map(|_| RealRoot::exact(BigRational::zero())),
            above_next: true,
        });
        for t in (0..periods).rev() {
            let next = out.last_mut().unwrap();
            let th = if let Some(e) = &self.exact {
                let hr = highest_root_unit(&e.polys[t], crate::polys::DEFAULT_TOL)?;
                let mut root = hr.root;
                let mut next_root = next.root.clone().unwrap();
                let above = root.cmp_root(&mut next_root) != std::cmp::Ordering::Less;
                next.root = Some(next_root);
                Threshold {
                    period: t,
                    value: root.to_f64(),
                    root: Some(root),
                    above_next: above,
                }
            } else {
                let value = self.scan_highest_root(t)?;
                Threshold {
                    period: t,
                    value,
                    root: None,
                    above_next: value >= next.value - 1e-12,
                }
            };
            out.push(th);
        }
        out.reverse();
        Ok(out)
    }

    /// Highest root of `f_t` in `[0, 1]` by descending scan and bisection.
    /// Not certified: roots closer together than the grid can be missed.
    fn scan_highest_root(&self, t: usize) -> Result<f64> {
        let cell = 1.0 / SCAN_POINTS as f64;
        let mut points: Vec<f64> = (1..=60).rev().map(|j| 1.0 - cell * 0.5f64.powi(j)).collect();
        points.extend((1..=SCAN_POINTS).map(|i| 1.0 - i as f64 * cell));
        let mut above = 1.0;
        for &p in &points {
            if p >= above {
                continue;
            }
            let v = if p <= 0.0 { 0.0 } else { self.value(t, p)? };
            if v <= 0.0 {
                if v == 0.0 {
                    return Ok(p.max(0.0));
                }
                return self.bisect_root(t, p, above);
            }
            above = p;
        }
        Ok(0.0)
    }

    /// Bisection for a root of `f_t` with `f_t(lo) < 0 < f_t(hi)`.
    fn bisect_root(&self, t: usize, mut lo: f64, mut hi: f64) -> Result<f64> {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let v = self.value(t, mid)?;
            if v == 0.0 {
                return Ok(mid);
            }
            if v < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}
