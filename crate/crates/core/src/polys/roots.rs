//! Real-root isolation on the unit interval.
//!
//! Roots are isolated with Sturm sequences evaluated in exact integer
//! arithmetic and refined by bisection on rational endpoints, so every
//! returned bracket is certified.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::poly::{integer_sign_at, rational, to_f64, ExactPoly};
use crate::error::{Error, Result};

/// Default refinement tolerance for reported roots.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Brackets narrower than this are probed for a rational root.
const RATIONAL_PROBE_BITS: u32 = 64;

/// Sturm sequence of the square-free part of a polynomial, each member
/// scaled by a positive constant to a primitive integer polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    members: Vec<Vec<BigInt>>,
}

impl SturmChain {
    pub fn new(p: &ExactPoly) -> Self {
        let mut members = Vec::new();
        if p.is_zero() {
            return SturmChain { members };
        }
        let sf = p.squarefree();
        let mut prev = sf.primitive();
        let mut cur = sf.derivative().primitive();
        members.push(prev.primitive_integer());
        while !cur.is_zero() {
            members.push(cur.primitive_integer());
            let (_, r) = prev.div_rem(&cur);
            prev = cur;
            cur = (-&r).primitive();
        }
        SturmChain { members }
    }

    /// Sign changes of the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for m in &self.members {
            let s = integer_sign_at(m, x.numer(), x.denom());
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Number of distinct real roots of `p` in the closed interval `[lo, hi]`.
pub fn count_roots_closed(p: &ExactPoly, lo: &BigRational, hi: &BigRational) -> usize {
    if p.is_zero() || lo > hi {
        return 0;
    }
    let sf = p.squarefree();
    let at_lo = usize::from(sf.eval(lo).is_zero());
    if lo == hi {
        return at_lo;
    }
    SturmChain::new(&sf).count(lo, hi) + at_lo
}

/// One real root, either exact or bracketed by a rational interval on
/// which a square-free polynomial changes sign strictly.
#[derive(Clone, Debug)]
pub struct RealRoot {
    lo: BigRational,
    hi: BigRational,
    /// Integer coefficients of a square-free polynomial with exactly this
    /// root in `[lo, hi]`.
    poly: Vec<BigInt>,
    sign_lo: Ordering,
}

impl RealRoot {
    pub fn exact(value: BigRational) -> Self {
        RealRoot {
            lo: value.clone(),
            hi: value,
            poly: Vec::new(),
            sign_lo: Ordering::Equal,
        }
    }

    /// `poly` must be square-free with exactly one root in `(lo, hi)` and
    /// nonzero at both endpoints.
    fn bracketed(poly: &ExactPoly, lo: BigRational, hi: BigRational) -> Self {
        let ints = poly.primitive_integer();
        let sign_lo = integer_sign_at(&ints, lo.numer(), lo.denom());
        debug_assert_ne!(sign_lo, Ordering::Equal);
        debug_assert_eq!(
            integer_sign_at(&ints, hi.numer(), hi.denom()),
            sign_lo.reverse()
        );
        RealRoot {
            lo,
            hi,
            poly: ints,
            sign_lo,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn exact_value(&self) -> Option<&BigRational> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    pub fn is_zero(&self) -> bool {
        self.exact_value().is_some_and(Zero::is_zero)
    }

    /// One bisection step.
    pub fn refine(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = self.midpoint();
        match integer_sign_at(&self.poly, mid.numer(), mid.denom()) {
            Ordering::Equal => {
                self.lo = mid.clone();
                self.hi = mid;
            }
            s if s == self.sign_lo => self.lo = mid,
            _ => self.hi = mid,
        }
    }

    pub fn refine_to(&mut self, width: &BigRational) {
        while !self.is_exact() && &self.width() >= width {
            self.refine();
        }
    }

    /// Refines the bracket and checks whether the simplest rational inside
    /// it is the root. Any rational root with a denominator below about
    /// 2^31 is found this way.
    pub fn detect_rational(&mut self) -> Option<&BigRational> {
        if !self.is_exact() {
            let width = BigRational::new(BigInt::one(), BigInt::one() << RATIONAL_PROBE_BITS);
            self.refine_to(&width);
        }
        if !self.is_exact() {
            let candidate = simplest_between(&self.lo, &self.hi);
            if integer_sign_at(&self.poly, candidate.numer(), candidate.denom())
                == Ordering::Equal
            {
                self.lo = candidate.clone();
                self.hi = candidate;
            }
        }
        self.exact_value()
    }

    /// Orders this root against a rational number, refining as needed.
    pub fn cmp_rational(&mut self, x: &BigRational) -> Ordering {
        loop {
            if self.is_exact() {
                return self.lo.cmp(x);
            }
            if &self.hi < x {
                return Ordering::Less;
            }
            if &self.lo > x {
                return Ordering::Greater;
            }
            if x != &self.lo && x != &self.hi {
                let s = integer_sign_at(&self.poly, x.numer(), x.denom());
                if s == Ordering::Equal {
                    return Ordering::Equal;
                }
                // The root sits on the side where the sign differs from `x`.
                return if s == self.sign_lo {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
            self.refine();
        }
    }

    /// Orders two real roots, refining both brackets until they separate
    /// or a common factor proves them equal.
    pub fn cmp_root(&mut self, other: &mut RealRoot) -> Ordering {
        if other.is_exact() {
            let x = other.lo.clone();
            return self.cmp_rational(&x);
        }
        if self.is_exact() {
            let x = self.lo.clone();
            return other.cmp_rational(&x).reverse();
        }
        let mut rounds = 0;
        loop {
            if self.hi < other.lo {
                return Ordering::Less;
            }
            if self.lo > other.hi {
                return Ordering::Greater;
            }
            if rounds == 8 && self.shares_root_with(other) {
                return Ordering::Equal;
            }
            rounds += 1;
            if self.width() >= other.width() {
                self.refine();
            } else {
                other.refine();
            }
            if self.is_exact() || other.is_exact() {
                return self.cmp_root(other);
            }
        }
    }

    fn shares_root_with(&self, other: &RealRoot) -> bool {
        let a = ExactPoly::new(self.poly.iter().cloned().map(BigRational::from_integer).collect());
        let b = ExactPoly::new(other.poly.iter().cloned().map(BigRational::from_integer).collect());
        let g = a.gcd(&b);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        count_roots_closed(&g, &lo, &hi) > 0
    }
}

/// The simplest rational (smallest denominator) in `[lo, hi]`, `0 <= lo <= hi`.
pub fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + BigRational::one();
    if &next <= hi {
        return next;
    }
    let a = (hi - &fl).recip();
    let b = (lo - &fl).recip();
    fl + simplest_between(&a, &b).recip()
}

/// Isolated real roots of a polynomial in `[0, 1]`.
#[derive(Clone, Debug)]
pub struct RootList {
    roots: Vec<RealRoot>,
    multiplicity_at_zero: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntervalStrings {
    pub lo: String,
    pub hi: String,
}

impl RootList {
    pub fn roots(&self) -> &[RealRoot] {
        &self.roots
    }

    pub fn into_roots(self) -> Vec<RealRoot> {
        self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn multiplicity_at_zero(&self) -> usize {
        self.multiplicity_at_zero
    }

    pub fn intervals(&self) -> Vec<(BigRational, BigRational)> {
        self.roots
            .iter()
            .map(|r| (r.lo.clone(), r.hi.clone()))
            .collect()
    }

    pub fn highest(&self) -> Option<&RealRoot> {
        self.roots.last()
    }
}

/// Isolates every real root of `p` in `[0, 1]`.
///
/// Panics if `p` is the zero polynomial.
pub fn isolate_roots_unit(p: &ExactPoly) -> RootList {
    assert!(!p.is_zero(), "cannot isolate roots of the zero polynomial");
    let zeros = p.trailing_zeros();
    let mut sf = p.shift_down(zeros).squarefree();
    let mut roots = Vec::new();
    if zeros > 0 {
        roots.push(RealRoot::exact(BigRational::zero()));
    }
    let one = BigRational::one();
    let at_one = sf.eval(&one).is_zero();
    if at_one {
        sf = sf.div_rem(&ExactPoly::from_integers(&[-1, 1])).0;
    }
    if sf.degree().unwrap_or(0) > 0 {
        let chain = SturmChain::new(&sf);
        let zero = BigRational::zero();
        let v0 = chain.variations(&zero);
        let v1 = chain.variations(&one);
        bisect_isolate(&sf, &chain, zero, one.clone(), v0, v1, &mut roots);
    }
    if at_one {
        roots.push(RealRoot::exact(one));
    }
    RootList {
        roots,
        multiplicity_at_zero: zeros,
    }
}

/// Counts the roots in `(lo, hi)` as `v_lo - v_hi`; `v_hi` is adjusted by
/// the caller when `hi` is itself a root.
fn bisect_isolate(
    sf: &ExactPoly,
    chain: &SturmChain,
    lo: BigRational,
    hi: BigRational,
    v_lo: usize,
    v_hi: usize,
    out: &mut Vec<RealRoot>,
) {
    let count = v_lo.saturating_sub(v_hi);
    if count == 0 {
        return;
    }
    if count == 1 && !sf.eval(&lo).is_zero() && !sf.eval(&hi).is_zero() {
        out.push(RealRoot::bracketed(sf, lo, hi));
        return;
    }
    let mid = (&lo + &hi) * rational(1, 2);
    let v_mid = chain.variations(&mid);
    if sf.eval(&mid).is_zero() {
        bisect_isolate(sf, chain, lo, mid.clone(), v_lo, v_mid + 1, out);
        out.push(RealRoot::exact(mid.clone()));
        bisect_isolate(sf, chain, mid, hi, v_mid, v_hi, out);
    } else {
        bisect_isolate(sf, chain, lo, mid.clone(), v_lo, v_mid, out);
        bisect_isolate(sf, chain, mid, hi, v_mid, v_hi, out);
    }
}

/// Highest root in `[0, 1]` with its certified bracket.
#[derive(Clone, Debug)]
pub struct HighestRoot {
    pub value: f64,
    pub root: RealRoot,
}

impl HighestRoot {
    pub fn exact(&self) -> Option<&BigRational> {
        self.root.exact_value()
    }
}

/// Largest root of `p` in `[0, 1]`, refined until the bracket is narrower
/// than `tol` and probed for an exact rational value.
pub fn highest_root_unit(p: &ExactPoly, tol: f64) -> Result<HighestRoot> {
    let list = isolate_roots_unit(p);
    let mut root = list.into_roots().pop().ok_or(Error::NoRootInUnit)?;
    let tol = BigRational::from_float(tol.max(f64::MIN_POSITIVE)).unwrap();
    root.refine_to(&tol);
    root.detect_rational();
    Ok(HighestRoot {
        value: root.to_f64(),
        root,
    })
}
