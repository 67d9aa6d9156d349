use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Dense univariate polynomial with arbitrary-precision rational
/// coefficients, lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial has
/// an empty coefficient list and every other polynomial has a nonzero
/// leading coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExactPoly {
    coeffs: Vec<BigRational>,
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact binary value of a finite float.
pub fn from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| integer(c)).collect())
    }

    pub fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The monomial `X`.
    pub fn x() -> Self {
        Self::from_integers(&[0, 1])
    }

    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        self.eval(x).cmp(&BigRational::zero())
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    /// Float evaluation by compensated Horner's scheme.
    pub fn eval_f64(&self, x: f64) -> f64 {
        compensated_horner(&self.to_f64_coeffs(), x)
    }

    /// Number of vanishing low-order coefficients, i.e. the multiplicity of
    /// the root at zero.
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `X^k`; the low-order coefficients dropped must be zero.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(Zero::is_zero));
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Euclidean division. Panics on division by the zero polynomial.
    pub fn div_rem(&self, divisor: &ExactPoly) -> (ExactPoly, ExactPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (ExactPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (ExactPoly::new(quot), ExactPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &ExactPoly) -> ExactPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    pub fn monic(&self) -> ExactPoly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => ExactPoly::zero(),
        }
    }

    /// Polynomial divided by its squared factors.
    pub fn squarefree(&self) -> ExactPoly {
        let d = self.derivative();
        if d.is_zero() {
            return self.clone();
        }
        let g = self.gcd(&d);
        self.div_rem(&g).0
    }

    /// Integer coefficients of a positive multiple of `self` whose content
    /// is one. Signs of values are preserved.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let content = ints
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &content).collect()
    }

    pub fn primitive(&self) -> ExactPoly {
        ExactPoly::new(
            self.primitive_integer()
                .into_iter()
                .map(BigRational::from_integer)
                .collect(),
        )
    }
}

/// Sign of an integer polynomial at the rational `num / den`, `den > 0`,
/// evaluated in homogeneous form so no division happens.
pub(crate) fn integer_sign_at(coeffs: &[BigInt], num: &BigInt, den: &BigInt) -> Ordering {
    let Some((lead, rest)) = coeffs.split_last() else {
        return Ordering::Equal;
    };
    let mut acc = lead.clone();
    let mut den_pow = BigInt::one();
    for c in rest.iter().rev() {
        acc *= num;
        den_pow *= den;
        acc += c * &den_pow;
    }
    acc.sign().cmp_zero()
}

trait SignExt {
    fn cmp_zero(self) -> Ordering;
}

impl SignExt for num_bigint::Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let z = s - a;
    (s, (a - (s - z)) + (b - z))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Horner evaluation with error-free transformations; the result is as
/// accurate as if computed in twice the working precision.
pub fn compensated_horner(coeffs: &[f64], x: f64) -> f64 {
    let Some((&lead, rest)) = coeffs.split_last() else {
        return 0.0;
    };
    let mut s = lead;
    let mut c = 0.0;
    for &a in rest.iter().rev() {
        let (p, pi) = two_prod(s, x);
        let (t, sigma) = two_sum(p, a);
        s = t;
        c = c * x + (pi + sigma);
    }
    s + c
}

impl Add for &ExactPoly {
    type Output = ExactPoly;

    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ExactPoly {
    type Output = ExactPoly;

    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &ExactPoly {
    type Output = ExactPoly;

    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        if self.is_zero() || rhs.is_zero() {
            return ExactPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPoly::new(out)
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;

    fn neg(self) -> ExactPoly {
        ExactPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ExactPoly {
            type Output = ExactPoly;
            fn $m(self, rhs: ExactPoly) -> ExactPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit = mag.is_one() && i > 0;
            if !unit {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as a list of `[numerator, denominator]` decimal string pairs.
impl Serialize for ExactPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&[c.numer().to_string(), c.denom().to_string()])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ExactPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<[String; 2]> = Vec::deserialize(deserializer)?;
        let mut coeffs = Vec::with_capacity(pairs.len());
        for [n, d] in pairs {
            let n: BigInt = n.parse().map_err(serde::de::Error::custom)?;
            let d: BigInt = d.parse().map_err(serde::de::Error::custom)?;
            if d.is_zero() {
                return Err(serde::de::Error::custom("zero denominator"));
            }
            coeffs.push(BigRational::new(n, d));
        }
        Ok(ExactPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_term_by_term() {
        // X^2 (2X - 1) = 2X^3 - X^2
        let p = ExactPoly::from_integers(&[0, 0, -1, 2]);
        assert_eq!(p.derivative(), ExactPoly::from_integers(&[0, -2, 6]));
    }

    #[test]
    fn multiply_x_by_one_minus_x() {
        let one_minus_x = ExactPoly::from_integers(&[1, -1]);
        assert_eq!(
            &ExactPoly::x() * &one_minus_x,
            ExactPoly::from_integers(&[0, 1, -1])
        );
    }

    #[test]
    fn eval_at_one() {
        let p = ExactPoly::from_integers(&[0, 0, 3, -14, 12]);
        assert_eq!(p.eval(&integer(1)), integer(1));
        assert_eq!(p.eval_f64(1.0), 1.0);
    }

    #[test]
    fn add_sub_cancel_to_zero() {
        let p = ExactPoly::from_integers(&[1, 2, 3]);
        let z = &p - &p;
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(&p + &z, p);
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = ExactPoly::from_integers(&[3, 0, -14, 12, 5]);
        let b = ExactPoly::from_integers(&[1, -2, 3]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn gcd_and_squarefree() {
        // (X - 1)^2 (X + 2)
        let p = ExactPoly::from_integers(&[2, -3, 0, 1]);
        assert_eq!(p.squarefree(), ExactPoly::from_integers(&[-2, 1, 1]));
        assert_eq!(p.gcd(&p.derivative()), ExactPoly::from_integers(&[-1, 1]));
    }

    #[test]
    fn primitive_keeps_sign() {
        let p = ExactPoly::new(vec![rational(-1, 2), rational(3, 4)]);
        assert_eq!(
            p.primitive_integer(),
            vec![BigInt::from(-2), BigInt::from(3)]
        );
    }

    #[test]
    fn integer_sign_matches_rational_eval() {
        let p = ExactPoly::from_integers(&[3, -14, 12]);
        let ints = p.primitive_integer();
        for (n, d) in [(1, 4), (1, 2), (9, 10), (0, 1)] {
            let x = rational(n, d);
            assert_eq!(
                integer_sign_at(&ints, &BigInt::from(n), &BigInt::from(d)),
                p.sign_at(&x)
            );
        }
    }

    #[test]
    fn compensated_horner_beats_naive_near_multiple_root() {
        // (X - 1)^7 expanded; naive Horner loses everything near X = 1.
        let coeffs = [-1.0, 7.0, -21.0, 35.0, -35.0, 21.0, -7.0, 1.0];
        let x = 1.0 + 1.0 / 1024.0;
        let exact = (x - 1.0f64).powi(7);
        let got = compensated_horner(&coeffs, x);
        assert!((got - exact).abs() <= 1e-6 * exact.abs());
    }

    #[test]
    fn display_is_readable() {
        let p = ExactPoly::from_integers(&[0, 0, 1, -30, 150]);
        assert_eq!(p.to_string(), "150X^4 - 30X^3 + X^2");
    }

    #[test]
    fn json_roundtrip() {
        let p = ExactPoly::new(vec![rational(1, 3), integer(0), rational(-5, 2)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[["1","3"],["0","1"],["-5","2"]]"#);
        let back: ExactPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
