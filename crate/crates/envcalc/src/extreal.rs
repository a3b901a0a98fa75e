//! Scalars and the extended real line.
//!
//! Addition follows the convention `+inf + -inf = +inf`; `sup` of nothing is
//! `-inf` and `inf` of nothing is `+inf`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{NumAssignRef, NumRef, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Exact rational scalar used by the 1D backend.
pub type Q = BigRational;

/// Which arithmetic a value was computed with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Grid,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Grid => "grid",
        })
    }
}

/// Field operations shared by the exact and floating-point backends.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Signed
    + NumRef
    + NumAssignRef
    + Send
    + Sync
    + 'static
{
    const BACKEND: Backend;

    /// `num / den`, exactly where the backend allows it.
    fn ratio(num: i64, den: i64) -> Self;

    fn from_int(v: i64) -> Self {
        Self::ratio(v, 1)
    }

    fn to_f64(&self) -> f64;

    /// Converts a finite float. Exact backends take the float's binary value.
    fn from_f64(v: f64) -> Option<Self>;

    /// Slack used when comparing derived quantities: zero when exact.
    fn tolerance() -> Self;

    /// Parses `p/q`, an integer, or a decimal literal.
    fn parse_scalar(s: &str) -> Result<Self, Error>;

    /// Lossless textual form (`p/q` for rationals).
    fn exact_string(&self) -> String;

    fn lt_tol(&self, other: &Self) -> bool {
        self.clone() + Self::tolerance() < *other
    }

    fn le_tol(&self, other: &Self) -> bool {
        *self <= other.clone() + Self::tolerance()
    }

    fn eq_tol(&self, other: &Self) -> bool {
        self.le_tol(other) && other.le_tol(self)
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }
}

impl Scalar for Q {
    const BACKEND: Backend = Backend::Exact;

    fn ratio(num: i64, den: i64) -> Self {
        Q::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    fn from_f64(v: f64) -> Option<Self> {
        Q::from_float(v)
    }

    fn tolerance() -> Self {
        Q::zero()
    }

    fn parse_scalar(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p = BigInt::from_str(p.trim()).map_err(|_| Error::parse(format!("bad numerator in `{s}`")))?;
            let q = BigInt::from_str(q.trim()).map_err(|_| Error::parse(format!("bad denominator in `{s}`")))?;
            if q.is_zero() {
                return Err(Error::parse(format!("zero denominator in `{s}`")));
            }
            return Ok(Q::new(p, q));
        }
        if let Ok(i) = BigInt::from_str(t) {
            return Ok(Q::from_integer(i));
        }
        parse_decimal(t).ok_or_else(|| Error::parse(format!("not a rational: `{s}`")))
    }

    fn exact_string(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Decimal literal such as `-0.125` or `1e-2`, read exactly.
fn parse_decimal(t: &str) -> Option<Q> {
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Q::from_integer(BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?);
    let shift = exp - frac_part.len() as i32;
    let ten = Q::from_integer(BigInt::from(10));
    for _ in 0..shift.unsigned_abs() {
        if shift > 0 {
            value *= &ten;
        } else {
            value /= &ten;
        }
    }
    Some(if neg { -value } else { value })
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Grid;

    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }

    fn tolerance() -> Self {
        1e-9
    }

    fn parse_scalar(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let p: f64 = p.trim().parse().map_err(|_| Error::parse(format!("bad numerator in `{s}`")))?;
            let q: f64 = q.trim().parse().map_err(|_| Error::parse(format!("bad denominator in `{s}`")))?;
            let v = p / q;
            return v.is_finite().then_some(v).ok_or_else(|| Error::parse(format!("not finite: `{s}`")));
        }
        match t.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(Error::parse(format!("not a finite number: `{s}`"))),
        }
    }

    fn exact_string(&self) -> String {
        format!("{self:?}")
    }
}

/// Converts between backends: exact values are rounded, floats are read exactly.
pub fn convert<A: Scalar, B: Scalar>(a: &A) -> B {
    B::from_f64(a.to_f64()).expect("finite scalar")
}

/// An element of the extended real line.
///
/// The derived order puts `NegInf` below every finite value and `PosInf`
/// above; a `Finite` payload is always a finite number.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub enum ExtReal<S> {
    NegInf,
    Finite(S),
    PosInf,
}

pub use ExtReal::{Finite, NegInf, PosInf};

impl<S: Scalar> ExtReal<S> {
    pub fn zero() -> Self {
        Finite(S::zero())
    }

    pub fn from_int(v: i64) -> Self {
        Finite(S::from_int(v))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn is_pos_inf(&self) -> bool {
        matches!(self, PosInf)
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, NegInf)
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn into_finite(self) -> Option<S> {
        match self {
            Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            NegInf => f64::NEG_INFINITY,
            Finite(v) => v.to_f64(),
            PosInf => f64::INFINITY,
        }
    }

    /// Maps `±inf` floats onto the tags; NaN is rejected.
    pub fn from_f64(v: f64) -> Option<Self> {
        if v.is_nan() {
            None
        } else if v == f64::INFINITY {
            Some(PosInf)
        } else if v == f64::NEG_INFINITY {
            Some(NegInf)
        } else {
            S::from_f64(v).map(Finite)
        }
    }

    /// Adds a finite scalar.
    pub fn plus(&self, s: &S) -> Self {
        match self {
            Finite(v) => Finite(v.clone() + s),
            other => other.clone(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        if k.is_zero() {
            return match self {
                Finite(_) => Self::zero(),
                other => other.clone(),
            };
        }
        match self {
            Finite(v) => Finite(v.clone() * k),
            PosInf if k.is_positive() => PosInf,
            NegInf if k.is_negative() => PosInf,
            _ => NegInf,
        }
    }

    /// `self <= other` up to the backend tolerance.
    pub fn le_tol(&self, other: &Self) -> bool {
        match (self, other) {
            (Finite(a), Finite(b)) => a.le_tol(b),
            _ => self <= other,
        }
    }

    pub fn eq_tol(&self, other: &Self) -> bool {
        self.le_tol(other) && other.le_tol(self)
    }

    /// `self - other` as a margin; infinite when either side is infinite.
    pub fn margin(&self, other: &Self) -> Self {
        ext_add(self, &-other.clone())
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Rendering for tables: `inf`, `-inf`, or the shortest float form.
    pub fn display_f64(&self) -> String {
        match self {
            NegInf => "-inf".into(),
            PosInf => "inf".into(),
            Finite(v) => format!("{}", v.to_f64()),
        }
    }

    pub fn exact_string(&self) -> String {
        match self {
            NegInf => "-inf".into(),
            PosInf => "inf".into(),
            Finite(v) => v.exact_string(),
        }
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "inf" | "+inf" | "infinity" | "+infinity" => Ok(PosInf),
            "-inf" | "-infinity" => Ok(NegInf),
            t => S::parse_scalar(t).map(Finite),
        }
    }
}

impl<S: Scalar> From<S> for ExtReal<S> {
    fn from(v: S) -> Self {
        Finite(v)
    }
}

impl<S: Scalar> fmt::Display for ExtReal<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => f.write_str("-inf"),
            PosInf => f.write_str("inf"),
            Finite(v) => write!(f, "{v}"),
        }
    }
}

impl<S: Scalar> Neg for ExtReal<S> {
    type Output = Self;
    fn neg(self) -> Self {
        match self {
            NegInf => PosInf,
            PosInf => NegInf,
            Finite(v) => Finite(-v),
        }
    }
}

/// Total extended addition: any `+inf` operand wins, including against `-inf`.
pub fn ext_add<S: Scalar>(a: &ExtReal<S>, b: &ExtReal<S>) -> ExtReal<S> {
    match (a, b) {
        (PosInf, _) | (_, PosInf) => PosInf,
        (NegInf, _) | (_, NegInf) => NegInf,
        (Finite(x), Finite(y)) => Finite(x.clone() + y),
    }
}

impl<S: Scalar> Add for ExtReal<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        ext_add(&self, &rhs)
    }
}

impl<S: Scalar> Sub for ExtReal<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ext_add(&self, &-rhs)
    }
}

/// Largest element; `-inf` for an empty collection.
pub fn ext_sup<'a, S: Scalar, I>(items: I) -> ExtReal<S>
where
    I: IntoIterator<Item = &'a ExtReal<S>>,
{
    let mut best = NegInf;
    for v in items {
        if *v > best {
            best = v.clone();
            if best.is_pos_inf() {
                break;
            }
        }
    }
    best
}

/// Smallest element; `+inf` for an empty collection.
pub fn ext_inf<'a, S: Scalar, I>(items: I) -> ExtReal<S>
where
    I: IntoIterator<Item = &'a ExtReal<S>>,
{
    let mut best = PosInf;
    for v in items {
        if *v < best {
            best = v.clone();
            if best.is_neg_inf() {
                break;
            }
        }
    }
    best
}

/// An extended real tagged with its backend, for callers that hold both kinds.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyExtReal {
    Exact(ExtReal<Q>),
    Grid(ExtReal<f64>),
}

impl AnyExtReal {
    pub fn backend(&self) -> Backend {
        match self {
            AnyExtReal::Exact(_) => Backend::Exact,
            AnyExtReal::Grid(_) => Backend::Grid,
        }
    }

    /// Orders two values of the same backend; mixing backends is an error.
    pub fn try_cmp(&self, other: &AnyExtReal) -> Result<Option<Ordering>, Error> {
        match (self, other) {
            (AnyExtReal::Exact(a), AnyExtReal::Exact(b)) => Ok(a.partial_cmp(b)),
            (AnyExtReal::Grid(a), AnyExtReal::Grid(b)) => Ok(a.partial_cmp(b)),
            _ => Err(Error::MixedBackends),
        }
    }

    pub fn try_add(&self, other: &AnyExtReal) -> Result<AnyExtReal, Error> {
        match (self, other) {
            (AnyExtReal::Exact(a), AnyExtReal::Exact(b)) => Ok(AnyExtReal::Exact(ext_add(a, b))),
            (AnyExtReal::Grid(a), AnyExtReal::Grid(b)) => Ok(AnyExtReal::Grid(ext_add(a, b))),
            _ => Err(Error::MixedBackends),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    #[test]
    fn opposite_infinities_sum_to_plus_infinity() {
        assert_eq!(ext_add::<Q>(&PosInf, &NegInf), PosInf);
        assert_eq!(ext_add::<Q>(&NegInf, &PosInf), PosInf);
        assert_eq!(ext_add(&Finite(q(1, 1)), &Finite(q(2, 1))), Finite(q(3, 1)));
        assert_eq!(ext_add(&NegInf, &Finite(q(5, 1))), NegInf);
    }

    #[test]
    fn empty_aggregates() {
        assert_eq!(ext_sup::<Q, _>(&[]), NegInf);
        assert_eq!(ext_inf::<Q, _>(&[]), PosInf);
        assert_eq!(ext_sup(&[Finite(1.0), PosInf]), PosInf);
        assert_eq!(ext_sup(&[Finite(-3.0), Finite(-7.0)]), Finite(-3.0));
        assert_eq!(ext_inf(&[Finite(2.0), NegInf]), NegInf);
        assert_eq!(ext_inf(&[Finite(0.0)]), Finite(0.0));
    }

    #[test]
    fn order_puts_tags_at_the_ends() {
        assert!(NegInf < Finite(q(-1000, 1)));
        assert!(Finite(q(1000, 1)) < PosInf);
        assert!(Finite(q(1, 3)) < Finite(q(1, 2)));
    }

    #[test]
    fn add_is_total_commutative_associative_on_tags() {
        let vals: Vec<ExtReal<Q>> = vec![NegInf, Finite(q(-2, 3)), Finite(q(5, 1)), PosInf];
        for a in &vals {
            for b in &vals {
                assert_eq!(ext_add(a, b), ext_add(b, a));
                for c in &vals {
                    assert_eq!(ext_add(&ext_add(a, b), c), ext_add(a, &ext_add(b, c)));
                }
            }
        }
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(Q::parse_scalar("3/6").unwrap(), q(1, 2));
        assert_eq!(Q::parse_scalar("-4").unwrap(), q(-4, 1));
        assert_eq!(Q::parse_scalar("0.125").unwrap(), q(1, 8));
        assert_eq!(Q::parse_scalar("1e-2").unwrap(), q(1, 100));
        assert_eq!(Q::parse_scalar("-2.5e1").unwrap(), q(-25, 1));
        assert!(Q::parse_scalar("1/0").is_err());
        assert!(Q::parse_scalar("abc").is_err());
        assert_eq!(q(-1, 2).exact_string(), "-1/2");
        assert_eq!(ExtReal::<Q>::parse("-inf").unwrap(), NegInf);
    }

    #[test]
    fn mixed_backends_refuse_to_compare() {
        let a = AnyExtReal::Exact(Finite(q(1, 2)));
        let b = AnyExtReal::Grid(Finite(0.5));
        assert!(matches!(a.try_cmp(&b), Err(Error::MixedBackends)));
        assert!(a.try_add(&b).is_err());
        assert_eq!(a.try_cmp(&a).unwrap(), Some(Ordering::Equal));
    }

    #[test]
    fn float_tags_round_trip() {
        assert_eq!(ExtReal::<f64>::from_f64(f64::INFINITY), Some(PosInf));
        assert_eq!(ExtReal::<f64>::from_f64(f64::NAN), None);
        assert_eq!(ExtReal::<Q>::from_f64(0.25), Some(Finite(q(1, 4))));
    }
}
