//! Payoff kernels.
//!
//! A player who exerts effort `x` when total effort is `X` earns
//! `x * h(X)`. Everything the solver needs is carried by
//! `g(X) = -h(X) / h'(X)` and its derivatives. All kernels are normalized
//! so that `h(1) = 0`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polys::{from_f64, integer, isolate_roots_unit, rational, ExactPoly};

/// Highest derivative order any built-in family will evaluate. Beyond this
/// the factorials in the logarithmic chain overflow `f64`.
pub const MAX_DERIVATIVE_ORDER: usize = 160;

/// Slack absorbed by monotonicity checks in float mode.
pub const MONOTONE_SLACK: f64 = 1e-9;

/// Anything that can supply `g` and its derivatives.
pub trait DerivativeChain {
    /// `d^k g / dX^k` at `x`.
    fn g_derivative(&self, k: usize, x: f64) -> Result<f64>;

    fn max_order(&self) -> usize {
        MAX_DERIVATIVE_ORDER
    }

    /// Exact polynomial form of `g`, when there is one.
    fn g_poly(&self) -> Option<ExactPoly> {
        None
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PayoffKernel {
    /// `h = 1/X - 1`, `g = X(1 - X)`.
    Tullock,
    /// `h = (1 - X)^(1/alpha)`, `g = alpha (1 - X)`.
    LinearG { alpha: f64 },
    /// `h = (b - b^X)^(1/alpha)`, `g = alpha (b^(1-X) - 1) / ln b`.
    ExpDemand { alpha: f64, base: f64 },
    /// Oligopoly with inverse demand `1 - ln X`: `h = -ln X`, `g = -X ln X`.
    LogDemand,
    /// `h = ((1 - X)/X)^2`, `g = X(1 - X)/2`.
    PowerRatio,
    /// `g` given directly as a polynomial, lowest degree first; `h` is
    /// recovered by quadrature of `h'/h = -1/g`.
    PolyG { coeffs: Vec<f64> },
}

impl PayoffKernel {
    pub fn linear(alpha: f64) -> Result<Self> {
        let k = PayoffKernel::LinearG { alpha };
        k.validate()?;
        Ok(k)
    }

    pub fn exp_demand(alpha: f64, base: f64) -> Result<Self> {
        let k = PayoffKernel::ExpDemand { alpha, base };
        k.validate()?;
        Ok(k)
    }

    pub fn poly(coeffs: Vec<f64>) -> Result<Self> {
        let k = PayoffKernel::PolyG { coeffs };
        k.validate()?;
        Ok(k)
    }

    /// Checks the family parameters and the normalization `g(1) = 0`,
    /// `g > 0` on `(0, 1)`, `-g'(1) > 0`.
    pub fn validate(&self) -> Result<()> {
        match self {
            PayoffKernel::LinearG { alpha } if !(alpha.is_finite() && *alpha > 0.0) => Err(
                Error::InvalidKernel(format!("linear kernel needs alpha > 0, got {alpha}")),
            ),
            PayoffKernel::ExpDemand { alpha, base }
                if !(alpha.is_finite() && *alpha > 0.0 && base.is_finite() && *base > 1.0) =>
            {
                Err(Error::InvalidKernel(format!(
                    "exp kernel needs alpha > 0 and b > 1, got alpha={alpha}, b={base}"
                )))
            }
            PayoffKernel::PolyG { coeffs } => {
                if coeffs.iter().any(|c| !c.is_finite()) {
                    return Err(Error::InvalidKernel("non-finite coefficient".into()));
                }
                let g = self.g_poly().unwrap();
                if g.is_zero() {
                    return Err(Error::InvalidKernel("g is identically zero".into()));
                }
                if !g.eval(&BigRational::one()).is_zero() {
                    return Err(Error::InvalidKernel("g(1) must be 0".into()));
                }
                if !g.derivative().eval(&BigRational::one()).is_negative() {
                    return Err(Error::InvalidKernel("-g'(1) must be positive".into()));
                }
                // Only the roots at 0 and 1 are allowed in [0, 1].
                let interior = isolate_roots_unit(&g)
                    .roots()
                    .iter()
                    .filter(|r| !r.is_zero() && r.exact_value() != Some(&BigRational::one()))
                    .count();
                if interior > 0 || !g.eval(&rational(1, 2)).is_positive() {
                    return Err(Error::InvalidKernel("g must be positive on (0, 1)".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.g_poly().is_some()
    }

    /// `-g'(1)`.
    pub fn alpha(&self) -> Result<f64> {
        let a = -self.g_derivative(1, 1.0)?;
        if a > 0.0 {
            Ok(a)
        } else {
            Err(Error::InvalidKernel(format!("-g'(1) = {a} is not positive")))
        }
    }

    /// Marginal benefit per unit of effort at total effort `x`.
    pub fn h(&self, x: f64) -> Result<f64> {
        if x == 1.0 {
            return Ok(0.0);
        }
        let singular_at_zero = matches!(
            self,
            PayoffKernel::Tullock | PayoffKernel::PowerRatio | PayoffKernel::LogDemand
        );
        if x < 0.0 || (x == 0.0 && singular_at_zero) || x.is_nan() {
            return Err(Error::Domain { what: "h", x });
        }
        Ok(match self {
            PayoffKernel::Tullock => 1.0 / x - 1.0,
            PayoffKernel::LinearG { alpha } => signed_pow(1.0 - x, 1.0 / alpha),
            PayoffKernel::ExpDemand { alpha, base } => {
                signed_pow(base - base.powf(x), 1.0 / alpha)
            }
            PayoffKernel::LogDemand => -x.ln(),
            PayoffKernel::PowerRatio => {
                let r = (1.0 - x) / x;
                r * r
            }
            PayoffKernel::PolyG { .. } => self.poly_h(x)?,
        })
    }

    /// Analytic `h'`, for checking `g = -h/h'`.
    pub fn h_prime(&self, x: f64) -> Result<f64> {
        if x <= 0.0 || x.is_nan() {
            return Err(Error::Domain { what: "h'", x });
        }
        Ok(match self {
            PayoffKernel::Tullock => -1.0 / (x * x),
            PayoffKernel::LinearG { alpha } => {
                -(1.0 / alpha) * signed_pow(1.0 - x, 1.0 / alpha - 1.0)
            }
            PayoffKernel::ExpDemand { alpha, base } => {
                -(1.0 / alpha)
                    * signed_pow(base - base.powf(x), 1.0 / alpha - 1.0)
                    * base.powf(x)
                    * base.ln()
            }
            PayoffKernel::LogDemand => -1.0 / x,
            PayoffKernel::PowerRatio => -2.0 * (1.0 - x) / (x * x * x),
            PayoffKernel::PolyG { .. } => -self.poly_h(x)? / self.g_derivative(0, x)?,
        })
    }

    /// `h(x) = exp(-∫_{1/2}^{x} dt / g(t))`.
    fn poly_h(&self, x: f64) -> Result<f64> {
        if x == 0.5 {
            return Ok(1.0);
        }
        let g = |t: f64| self.g_derivative(0, t).unwrap_or(f64::NAN);
        let (a, b, sign) = if x > 0.5 { (0.5, x, 1.0) } else { (x, 0.5, -1.0) };
        let integral = adaptive_simpson(&|t| 1.0 / g(t), a, b, 1e-13, 50);
        Ok((-sign * integral).exp())
    }

    /// Short identifier, the same grammar the CLI accepts.
    pub fn id(&self) -> String {
        self.to_string()
    }

    /// Taylor coefficients `g^(j)(x) / j!` for `j = 0..=order`.
    pub fn taylor(&self, x: f64, order: usize) -> Result<Vec<f64>> {
        taylor_coefficients(self, x, order)
    }
}

/// `base^exp`, with `0^exp = 0` for positive exponents and negative bases
/// clamped to zero (they only arise from rounding at `X = 1`).
fn signed_pow(base: f64, exp: f64) -> f64 {
    if base <= 0.0 {
        0.0
    } else {
        base.powf(exp)
    }
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64, depth: u32) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * eps {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, lm, flm, left, eps / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, rm, frm, right, eps / 2.0, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, m, fm, whole, eps, depth)
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Taylor coefficients of any derivative chain.
pub fn taylor_coefficients<K: DerivativeChain + ?Sized>(
    kernel: &K,
    x: f64,
    order: usize,
) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(order + 1);
    let mut fact = 1.0;
    for j in 0..=order {
        if j > 0 {
            fact *= j as f64;
        }
        out.push(kernel.g_derivative(j, x)? / fact);
    }
    Ok(out)
}

fn poly_coeffs_f64(kernel: &PayoffKernel) -> Option<Vec<f64>> {
    match kernel {
        PayoffKernel::Tullock => Some(vec![0.0, 1.0, -1.0]),
        PayoffKernel::LinearG { alpha } => Some(vec![*alpha, -alpha]),
        PayoffKernel::PowerRatio => Some(vec![0.0, 0.5, -0.5]),
        PayoffKernel::PolyG { coeffs } => Some(coeffs.clone()),
        _ => None,
    }
}

fn poly_derivative_f64(coeffs: &[f64], k: usize, x: f64) -> f64 {
    if k >= coeffs.len() {
        return 0.0;
    }
    // Coefficients of the k-th derivative: c_i * i!/(i-k)!.
    let d: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(k)
        .map(|(i, c)| c * ((i - k + 1)..=i).map(|j| j as f64).product::<f64>())
        .collect();
    crate::polys::compensated_horner(&d, x)
}

impl DerivativeChain for PayoffKernel {
    fn g_derivative(&self, k: usize, x: f64) -> Result<f64> {
        if k > MAX_DERIVATIVE_ORDER {
            return Err(Error::UnsupportedOrder {
                order: k,
                max: MAX_DERIVATIVE_ORDER,
            });
        }
        if let Some(c) = poly_coeffs_f64(self) {
            return Ok(poly_derivative_f64(&c, k, x));
        }
        Ok(match self {
            PayoffKernel::ExpDemand { alpha, base } => {
                let lb = base.ln();
                let e = base.powf(1.0 - x);
                if k == 0 {
                    alpha * (e - 1.0) / lb
                } else {
                    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                    sign * alpha * lb.powi(k as i32 - 1) * e
                }
            }
            PayoffKernel::LogDemand => match k {
                0 if x == 0.0 => 0.0,
                0 => -x * x.ln(),
                _ if x <= 0.0 => return Err(Error::Domain { what: "g'", x }),
                1 => -x.ln() - 1.0,
                _ => {
                    // d^k/dX^k (-X ln X) = (-1)^(k-1) (k-2)! / X^(k-1)
                    let sign = if k.is_multiple_of(2) { -1.0 } else { 1.0 };
                    sign * factorial(k - 2) / x.powi(k as i32 - 1)
                }
            },
            _ => unreachable!("polynomial families handled above"),
        })
    }

    fn g_poly(&self) -> Option<ExactPoly> {
        match self {
            PayoffKernel::Tullock => Some(ExactPoly::from_integers(&[0, 1, -1])),
            PayoffKernel::LinearG { alpha } => {
                let a = from_f64(*alpha);
                Some(ExactPoly::new(vec![a.clone(), -a]))
            }
            PayoffKernel::PowerRatio => {
                Some(ExactPoly::new(vec![integer(0), rational(1, 2), rational(-1, 2)]))
            }
            PayoffKernel::PolyG { coeffs } => {
                Some(ExactPoly::new(coeffs.iter().map(|&c| from_f64(c)).collect()))
            }
            _ => None,
        }
    }
}

/// Result of a sampled multiple-monotonicity check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonotoneReport {
    pub order_checked: usize,
    pub pass: bool,
    pub first_failure: Option<MonotoneFailure>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonotoneFailure {
    pub order: usize,
    pub x: f64,
    /// `(-1)^k g^(k)(x)`, which should be nonnegative.
    pub value: f64,
}

/// Checks `(-1)^k g^(k)(X) >= 0` for `k = 0..=order` on `grid_size`
/// equally spaced points of `[0, 1]`. Orders are scanned from the highest
/// down, so a reported failure names the highest violated order.
///
/// In strict mode polynomial kernels are evaluated exactly at rational grid
/// points with zero slack; otherwise `MONOTONE_SLACK` is allowed.
pub fn check_t_monotone<K: DerivativeChain + ?Sized>(
    kernel: &K,
    order: usize,
    grid_size: usize,
    strict: bool,
) -> Result<MonotoneReport> {
    if order > kernel.max_order() {
        return Err(Error::UnsupportedOrder {
            order,
            max: kernel.max_order(),
        });
    }
    let grid_size = grid_size.max(2);
    let steps = (grid_size - 1) as i64;
    let exact = if strict { kernel.g_poly() } else { None };
    let mut derivs = Vec::new();
    if let Some(p) = &exact {
        let mut d = p.clone();
        for _ in 0..=order {
            derivs.push(d.clone());
            d = d.derivative();
        }
    }
    let slack = if strict { 0.0 } else { MONOTONE_SLACK };
    for k in (0..=order).rev() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        for i in 0..=steps {
            let x = i as f64 / steps as f64;
            let value = if let Some(d) = derivs.get(k) {
                let v = d.eval(&rational(i, steps));
                if (sign > 0.0 && v.is_negative()) || (sign < 0.0 && v.is_positive()) {
                    Some(sign * crate::polys::to_f64(&v))
                } else {
                    None
                }
            } else {
                // Singular endpoints (e.g. the log kernel at 0) are skipped.
                match kernel.g_derivative(k, x) {
                    Ok(v) if v.is_finite() => {
                        let signed = sign * v;
                        (signed < -slack).then_some(signed)
                    }
                    Ok(_) | Err(Error::Domain { .. }) => None,
                    Err(e) => return Err(e),
                }
            };
            if let Some(value) = value {
                return Ok(MonotoneReport {
                    order_checked: order,
                    pass: false,
                    first_failure: Some(MonotoneFailure { order: k, x, value }),
                });
            }
        }
    }
    Ok(MonotoneReport {
        order_checked: order,
        pass: true,
        first_failure: None,
    })
}

impl fmt::Display for PayoffKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PayoffKernel::Tullock => write!(f, "tullock"),
            PayoffKernel::LinearG { alpha } => write!(f, "linear:a={alpha}"),
            PayoffKernel::ExpDemand { alpha, base } => write!(f, "exp:a={alpha},b={base}"),
            PayoffKernel::LogDemand => write!(f, "log"),
            PayoffKernel::PowerRatio => write!(f, "power"),
            PayoffKernel::PolyG { coeffs } => {
                write!(f, "poly:")?;
                for (i, c) in coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_number(s: &str) -> Result<f64> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: f64 = n.trim().parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
        let d: f64 = d.trim().parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
        return Ok(n / d);
    }
    s.parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))
}

fn parse_params(body: &str, keys: &[&str]) -> Result<Vec<f64>> {
    let mut out = vec![None; keys.len()];
    for part in body.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
        let idx = keys
            .iter()
            .position(|key| *key == k.trim())
            .ok_or_else(|| Error::Parse(format!("unknown parameter {k:?}")))?;
        out[idx] = Some(parse_number(v)?);
    }
    out.into_iter()
        .zip(keys)
        .map(|(v, k)| v.ok_or_else(|| Error::Parse(format!("missing parameter {k}"))))
        .collect()
}

impl FromStr for PayoffKernel {
    type Err = Error;

    /// `tullock`, `linear:a=0.5`, `exp:a=0.5,b=2`, `log`, `power`,
    /// `poly:c0,c1,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, body) = s.split_once(':').unwrap_or((s, ""));
        let kernel = match name.trim().to_ascii_lowercase().as_str() {
            "tullock" => PayoffKernel::Tullock,
            "log" => PayoffKernel::LogDemand,
            "power" => PayoffKernel::PowerRatio,
            "linear" => {
                let p = parse_params(body, &["a"])?;
                PayoffKernel::LinearG { alpha: p[0] }
            }
            "exp" => {
                let p = parse_params(body, &["a", "b"])?;
                PayoffKernel::ExpDemand {
                    alpha: p[0],
                    base: p[1],
                }
            }
            "poly" => {
                let coeffs = body
                    .split(',')
                    .map(parse_number)
                    .collect::<Result<Vec<_>>>()?;
                PayoffKernel::PolyG { coeffs }
            }
            other => return Err(Error::Parse(format!("unknown kernel {other:?}"))),
        };
        kernel.validate()?;
        Ok(kernel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn builtins() -> Vec<PayoffKernel> {
        vec![
            PayoffKernel::Tullock,
            PayoffKernel::linear(0.7).unwrap(),
            PayoffKernel::exp_demand(0.5, 2.0).unwrap(),
            PayoffKernel::LogDemand,
            PayoffKernel::PowerRatio,
            PayoffKernel::poly(vec![1.0, 0.0, -1.0]).unwrap(),
        ]
    }

    #[test]
    fn g_examples() {
        assert_eq!(PayoffKernel::Tullock.g_derivative(0, 0.5).unwrap(), 0.25);
        let e = PayoffKernel::exp_demand(0.5, 2.0).unwrap();
        assert_eq!(e.g_derivative(0, 1.0).unwrap(), 0.0);
        assert_eq!(PayoffKernel::LogDemand.g_derivative(0, 1.0).unwrap(), 0.0);
        assert_eq!(PayoffKernel::LogDemand.g_derivative(1, 1.0).unwrap(), -1.0);
    }

    #[test]
    fn h_examples() {
        assert_eq!(PayoffKernel::Tullock.h(0.5).unwrap(), 1.0);
        assert_eq!(PayoffKernel::PowerRatio.h(0.5).unwrap(), 1.0);
        for k in builtins() {
            assert_eq!(k.h(1.0).unwrap(), 0.0, "{k}");
        }
        assert!(matches!(
            PayoffKernel::Tullock.h(0.0),
            Err(Error::Domain { .. })
        ));
        assert!(PayoffKernel::PowerRatio.h(-0.1).is_err());
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(PayoffKernel::Tullock.alpha().unwrap(), 1.0);
        assert_eq!(PayoffKernel::linear(0.7).unwrap().alpha().unwrap(), 0.7);
        let e = PayoffKernel::exp_demand(0.5, 2.0).unwrap();
        assert!((e.alpha().unwrap() - 0.5).abs() < 1e-15);
        for k in builtins() {
            assert_eq!(k.alpha().unwrap(), -k.g_derivative(1, 1.0).unwrap());
        }
    }

    #[test]
    fn g_is_minus_h_over_h_prime() {
        for k in builtins() {
            for i in 1..1000 {
                let x = i as f64 / 1000.0;
                let g = k.g_derivative(0, x).unwrap();
                assert!(g > 0.0, "{k} at {x}");
                let r = g + k.h(x).unwrap() / k.h_prime(x).unwrap();
                assert!(r.abs() <= 1e-10, "{k} at {x}: residual {r}");
            }
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let step = 1e-5;
        for k in builtins() {
            for order in 1..=2 {
                for i in 1..=101 {
                    let x = 0.05 + 0.9 * (i - 1) as f64 / 100.0;
                    let fd = (k.g_derivative(order - 1, x + step).unwrap()
                        - k.g_derivative(order - 1, x - step).unwrap())
                        / (2.0 * step);
                    let an = k.g_derivative(order, x).unwrap();
                    let scale = an.abs().max(1.0);
                    assert!((fd - an).abs() <= 1e-6 * scale, "{k} order {order} at {x}");
                }
            }
        }
    }

    #[test]
    fn monotonicity_examples() {
        let lin = PayoffKernel::linear(1.0).unwrap();
        assert!(check_t_monotone(&lin, 10, 101, false).unwrap().pass);
        assert!(check_t_monotone(&lin, 10, 101, true).unwrap().pass);

        let r = check_t_monotone(&PayoffKernel::Tullock, 2, 101, false).unwrap();
        assert!(!r.pass);
        let fail = r.first_failure.unwrap();
        assert_eq!(fail.order, 2);
        assert_eq!(fail.value, -2.0);

        let e = PayoffKernel::exp_demand(0.5, 2.0).unwrap();
        assert!(check_t_monotone(&e, 12, 257, false).unwrap().pass);
    }

    #[test]
    fn unsupported_order() {
        let err = PayoffKernel::Tullock
            .g_derivative(MAX_DERIVATIVE_ORDER + 1, 0.5)
            .unwrap_err();
        assert!(matches!(err, Error::UnsupportedOrder { .. }));
    }

    #[test]
    fn log_derivative_chain() {
        // g'' = -1/X, g''' = 1/X^2, g'''' = -2/X^3
        let k = PayoffKernel::LogDemand;
        assert_eq!(k.g_derivative(2, 0.5).unwrap(), -2.0);
        assert_eq!(k.g_derivative(3, 0.5).unwrap(), 4.0);
        assert_eq!(k.g_derivative(4, 0.5).unwrap(), -16.0);
    }

    #[test]
    fn parse_and_display() {
        for s in ["tullock", "linear:a=0.5", "exp:a=0.5,b=2", "log", "power", "poly:0,1,-1"] {
            let k: PayoffKernel = s.parse().unwrap();
            assert_eq!(k.to_string(), s);
        }
        assert!("linear:a=-1".parse::<PayoffKernel>().is_err());
        assert!("exp:a=1,b=0.5".parse::<PayoffKernel>().is_err());
        assert!("poly:1,1".parse::<PayoffKernel>().is_err());
        // g = X(1 - X)(X - 1/2) changes sign inside (0, 1).
        assert!("poly:0,-0.5,1.5,-1".parse::<PayoffKernel>().is_err());
        assert!("cubic".parse::<PayoffKernel>().is_err());
    }

    #[test]
    fn poly_h_normalization() {
        let k = PayoffKernel::poly(vec![1.0, -1.0]).unwrap();
        // g = 1 - X gives h = (1 - X) up to scale; h(1/2) = 1 fixes the scale.
        for x in [0.1, 0.3, 0.5, 0.8, 0.95] {
            assert!((k.h(x).unwrap() - 2.0 * (1.0 - x)).abs() < 1e-9, "{x}");
        }
    }
}
