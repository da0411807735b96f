//! Edge-weight arithmetic. The solver is comparison-addition based, so it is
//! generic over a [`Scalar`] that is either `f64` (fast, approximate) or
//! [`Rat`] (exact rationals, used by the test oracles). Distances extend the
//! scalar with a `+inf` sentinel for unreachable vertices.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Finite real scalar used for edge weights and potentials.
///
/// Implementations must form a totally ordered additive group. `cmp_total`
/// may panic on NaN in the float implementation; the library never produces
/// NaN as long as edge weights are finite.
pub trait Scalar: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync + 'static {
    /// True when arithmetic is exact (rational mode).
    const EXACT: bool;

    fn zero() -> Self;
    fn from_int(v: i64) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn mul_int(&self, k: i64) -> Self;
    fn cmp_total(&self, other: &Self) -> Ordering;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;

    /// Parse a decimal literal like `-12`, `3.25`. Exact in rational mode.
    fn parse_decimal(s: &str) -> Option<Self>;

    /// Absolute slack used by sign filters when reweighting: zero in exact
    /// mode, `2^-32 * max_abs` in float mode to avoid sign flapping.
    fn sign_slack(max_abs: &Self) -> Self;

    fn is_negative(&self) -> bool {
        self.cmp_total(&Self::zero()) == Ordering::Less
    }

    fn is_nonneg(&self) -> bool {
        !self.is_negative()
    }

    /// `self <= other` under the total order.
    fn within(&self, other: &Self) -> bool {
        self.cmp_total(other) != Ordering::Greater
    }

    /// `self < other` under the total order.
    fn below(&self, other: &Self) -> bool {
        self.cmp_total(other) == Ordering::Less
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn negate(&self) -> Self {
        -self
    }

    fn mul_int(&self, k: i64) -> Self {
        self * k as f64
    }

    fn cmp_total(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).expect("NaN weight")
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse_decimal(s: &str) -> Option<Self> {
        let v: f64 = s.parse().ok()?;
        v.is_finite().then_some(v)
    }

    fn sign_slack(max_abs: &Self) -> Self {
        max_abs * 2.0_f64.powi(-32)
    }
}

/// Exact rational scalar backed by arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Self {
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rat(BigRational::zero())
    }

    fn from_int(v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }

    fn plus(&self, other: &Self) -> Self {
        Rat(&self.0 + &other.0)
    }

    fn minus(&self, other: &Self) -> Self {
        Rat(&self.0 - &other.0)
    }

    fn negate(&self) -> Self {
        Rat(-&self.0)
    }

    fn mul_int(&self, k: i64) -> Self {
        Rat(&self.0 * BigRational::from_integer(BigInt::from(k)))
    }

    fn cmp_total(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }

    fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(&self.0).unwrap_or(f64::NAN)
    }

    fn parse_decimal(s: &str) -> Option<Self> {
        let s = s.trim();
        let (neg, digits) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        if digits.is_empty() {
            return None;
        }
        let (int_part, frac_part) = match digits.split_once('.') {
            Some((i, f)) => (i, f),
            None => (digits, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return None;
        }
        let mut numer: BigInt = if int_part.is_empty() {
            BigInt::zero()
        } else {
            int_part.parse().ok()?
        };
        let mut denom = BigInt::one();
        for c in frac_part.chars() {
            numer = numer * 10 + (c as u8 - b'0');
            denom *= 10;
        }
        if neg {
            numer = -numer;
        }
        Some(Rat(BigRational::new(numer, denom)))
    }

    fn sign_slack(_max_abs: &Self) -> Self {
        Self::zero()
    }
}

/// A distance value: finite scalar or the `+inf` unreachable sentinel.
///
/// `inf` participates in additions (`inf + finite = inf`) and compares
/// greater than every finite value. There is no `-inf`; `inf - inf` is
/// unrepresentable by construction (subtraction only takes finite operands).
#[derive(Clone, Debug, PartialEq)]
pub enum Dist<S> {
    Finite(S),
    Inf,
}

impl<S: Scalar> Dist<S> {
    pub fn zero() -> Self {
        Dist::Finite(S::zero())
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Dist::Inf)
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            Dist::Finite(s) => Some(s),
            Dist::Inf => None,
        }
    }

    pub fn expect_finite(&self) -> &S {
        self.finite().expect("unexpected +inf distance")
    }

    pub fn plus(&self, w: &S) -> Dist<S> {
        match self {
            Dist::Finite(s) => Dist::Finite(s.plus(w)),
            Dist::Inf => Dist::Inf,
        }
    }

    pub fn minus(&self, w: &S) -> Dist<S> {
        match self {
            Dist::Finite(s) => Dist::Finite(s.minus(w)),
            Dist::Inf => Dist::Inf,
        }
    }

    pub fn add_dist(&self, other: &Dist<S>) -> Dist<S> {
        match (self, other) {
            (Dist::Finite(a), Dist::Finite(b)) => Dist::Finite(a.plus(b)),
            _ => Dist::Inf,
        }
    }

    pub fn cmp_total(&self, other: &Dist<S>) -> Ordering {
        match (self, other) {
            (Dist::Finite(a), Dist::Finite(b)) => a.cmp_total(b),
            (Dist::Finite(_), Dist::Inf) => Ordering::Less,
            (Dist::Inf, Dist::Finite(_)) => Ordering::Greater,
            (Dist::Inf, Dist::Inf) => Ordering::Equal,
        }
    }

    pub fn lt(&self, other: &Dist<S>) -> bool {
        self.cmp_total(other) == Ordering::Less
    }

    pub fn le(&self, other: &Dist<S>) -> bool {
        self.cmp_total(other) != Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Dist::Finite(s) => s.is_negative(),
            Dist::Inf => false,
        }
    }

    /// Compare against a finite scalar.
    pub fn cmp_scalar(&self, w: &S) -> Ordering {
        match self {
            Dist::Finite(s) => s.cmp_total(w),
            Dist::Inf => Ordering::Greater,
        }
    }
}

impl<S: Scalar> fmt::Display for Dist<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(s) => write!(f, "{s}"),
            Dist::Inf => write!(f, "inf"),
        }
    }
}
