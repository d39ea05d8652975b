//! Exact p-integral scalars, valuations and gauge certificates.
//!
//! Coefficients are exact rationals. The uniformiser is the prime `p`
//! itself, so the valuation ring is the localisation of the integers at
//! `p`. Completed objects are never stored: an infinite expansion is
//! represented by finitely many explicit coefficients and a
//! [`GaugeStaircase`] that bounds the tail from below.

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `p^k` for possibly negative `k`.
pub fn q_pow(p: u64, k: i64) -> Q {
    let base = BigInt::from(p).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        Q::from_integer(base)
    } else {
        Q::new(BigInt::one(), base)
    }
}

/// Parses `"3"`, `"-1/2"` style rationals.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Renders a rational as `num/den`, always with an explicit denominator.
pub fn render_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Generalised binomial coefficient `C(x, k) = x (x-1) ... (x-k+1) / k!`
/// for an integer (possibly negative) top argument.
pub fn binomial(x: i64, k: u32) -> Q {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for l in 0..k as i64 {
        num *= BigInt::from(x - l);
        den *= BigInt::from(l + 1);
    }
    Q::new(num, den)
}

/// Valuation with a `+inf` sentinel for zero. `Finite` sorts below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    Finite(i64),
    Infinite,
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Finite(v) => Some(v),
            Val::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Val::Infinite)
    }
}

impl Add for Val {
    type Output = Val;
    fn add(self, rhs: Val) -> Val {
        match (self, rhs) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinite,
        }
    }
}

impl Add<i64> for Val {
    type Output = Val;
    fn add(self, rhs: i64) -> Val {
        match self {
            Val::Finite(a) => Val::Finite(a + rhs),
            Val::Infinite => Val::Infinite,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(v) => write!(f, "{v}"),
            Val::Infinite => write!(f, "+inf"),
        }
    }
}

impl Serialize for Val {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Val::Finite(v) => s.serialize_i64(*v),
            Val::Infinite => s.serialize_str("+inf"),
        }
    }
}

fn int_valuation(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (quot, rem) = n.div_rem(&p);
        if !rem.is_zero() {
            return v;
        }
        n = quot;
        v += 1;
    }
}

/// p-adic valuation of a rational.
pub fn valuation(x: &Q, p: u64) -> Val {
    if x.is_zero() {
        return Val::Infinite;
    }
    Val::Finite(int_valuation(x.numer(), p) - int_valuation(x.denom(), p))
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// A rational together with the prime its norm is measured against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PScalar {
    pub value: Q,
    pub prime: u64,
}

impl PScalar {
    pub fn new(value: Q, prime: u64) -> Self {
        Self { value, prime }
    }

    pub fn valuation(&self) -> Val {
        valuation(&self.value, self.prime)
    }

    /// `val(c) - n |B|`: the exponent that must diverge for an affinoid
    /// expansion to converge.
    pub fn gauge(&self, degree: u32, n: u32) -> Val {
        coefficient_gauge(self, degree, n)
    }

    pub fn render(&self) -> RenderedScalar {
        RenderedScalar::new(&self.value, self.prime)
    }
}

pub fn coefficient_gauge(c: &PScalar, degree: u32, n: u32) -> Val {
    c.valuation() + -(n as i64 * degree as i64)
}

/// Output form of a scalar: exact `num/den` plus its valuation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RenderedScalar {
    pub value: String,
    pub valuation: Val,
}

impl RenderedScalar {
    pub fn new(x: &Q, p: u64) -> Self {
        Self {
            value: render_q(x),
            valuation: valuation(x, p),
        }
    }
}

/// Lower bound for coefficient gauges as a function of height.
///
/// Between breakpoints the bound is a step function; past the last
/// breakpoint it grows linearly with `slope >= 1`, which is what makes the
/// bound certify convergence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaugeStaircase {
    breakpoints: Vec<(u32, i64)>,
    slope: i64,
}

impl GaugeStaircase {
    pub fn new(mut breakpoints: Vec<(u32, i64)>, slope: i64) -> Result<Self> {
        if slope < 1 {
            return Err(Error::Config(format!(
                "staircase slope must be at least 1, got {slope}"
            )));
        }
        breakpoints.sort_by_key(|(h, _)| *h);
        if breakpoints.is_empty() {
            breakpoints.push((0, 0));
        }
        if breakpoints.windows(2).any(|w| w[0].0 == w[1].0 || w[0].1 > w[1].1) {
            return Err(Error::Config(
                "staircase breakpoints must have distinct heights and nondecreasing gauges".into(),
            ));
        }
        Ok(Self { breakpoints, slope })
    }

    /// `offset + slope * height`.
    pub fn linear(slope: i64, offset: i64) -> Result<Self> {
        Self::new(vec![(0, offset)], slope)
    }

    pub fn slope(&self) -> i64 {
        self.slope
    }

    pub fn breakpoints(&self) -> &[(u32, i64)] {
        &self.breakpoints
    }

    pub fn value_at(&self, height: u32) -> i64 {
        let (h_last, g_last) = *self.breakpoints.last().unwrap();
        if height >= h_last {
            return g_last + self.slope * (height - h_last) as i64;
        }
        match self.breakpoints.iter().rev().find(|(h, _)| *h <= height) {
            Some((_, g)) => *g,
            // below the first breakpoint the bound is the first value
            None => self.breakpoints[0].1,
        }
    }

    /// Pointwise lower bound shifted down by `by`.
    pub fn loosened(&self, by: i64) -> Self {
        Self {
            breakpoints: self.breakpoints.iter().map(|(h, g)| (*h, g - by)).collect(),
            slope: self.slope,
        }
    }

    /// True when `self` is pointwise at most `other` on heights `0..=horizon`
    /// and its slope does not exceed the other's.
    pub fn is_looser_than(&self, other: &Self, horizon: u32) -> bool {
        self.slope <= other.slope && (0..=horizon).all(|h| self.value_at(h) <= other.value_at(h))
    }
}

/// One explicit coefficient of an expansion: the coefficient of a PBW
/// monomial of the given height and degree.
#[derive(Clone, Debug)]
pub struct CoeffSite<'a> {
    pub height: u32,
    pub degree: u32,
    pub coeff: &'a Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StaircaseViolation {
    pub height: u32,
    pub degree: u32,
    pub gauge: Val,
    pub required: i64,
}

/// Checks that every explicit coefficient meets the staircase at its height.
/// Returns the first violating coefficient (in iteration order) otherwise.
/// The staircase itself is unbounded by construction.
pub fn certify_convergence<'a, I>(
    coeffs: I,
    n: u32,
    prime: u64,
    staircase: &GaugeStaircase,
) -> std::result::Result<(), StaircaseViolation>
where
    I: IntoIterator<Item = CoeffSite<'a>>,
{
    for site in coeffs {
        let gauge = valuation(site.coeff, prime) + -(n as i64 * site.degree as i64);
        let required = staircase.value_at(site.height);
        if gauge < Val::Finite(required) {
            return Err(StaircaseViolation {
                height: site.height,
                degree: site.degree,
                gauge,
                required,
            });
        }
    }
    Ok(())
}

/// Converts a rational known to be an integer.
pub fn q_to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(valuation(&q(50), 5), Val::Finite(2));
        assert_eq!(valuation(&q(0), 5), Val::Infinite);
        assert_eq!(valuation(&q_frac(3, 25), 5), Val::Finite(-2));
        assert_eq!(valuation(&q_frac(-7, 3), 3), Val::Finite(-1));
    }

    #[test]
    fn gauges() {
        let c = PScalar::new(q_pow(5, 3), 5);
        assert_eq!(c.gauge(2, 1), Val::Finite(1));
        assert_eq!(PScalar::new(q(1), 5).gauge(0, 7), Val::Finite(0));
        for k in 0..10 {
            assert_eq!(PScalar::new(q_pow(5, k), 5).gauge(k as u32, 1), Val::Finite(0));
        }
    }

    #[test]
    fn binomials_with_negative_top() {
        assert_eq!(binomial(5, 2), q(10));
        assert_eq!(binomial(3, 3), q(1));
        assert_eq!(binomial(2, 3), q(0));
        assert_eq!(binomial(-1, 4), q(1));
        assert_eq!(binomial(-1, 3), q(-1));
        assert_eq!(binomial(-2, 2), q(3));
        assert_eq!(binomial(7, 0), q(1));
    }

    #[test]
    fn staircase_values() {
        let s = GaugeStaircase::new(vec![(0, 0), (3, 2), (5, 2)], 2).unwrap();
        assert_eq!(s.value_at(0), 0);
        assert_eq!(s.value_at(2), 0);
        assert_eq!(s.value_at(4), 2);
        assert_eq!(s.value_at(5), 2);
        assert_eq!(s.value_at(7), 6);
        assert!(GaugeStaircase::linear(0, 0).is_err());
        assert!(GaugeStaircase::new(vec![(0, 3), (2, 1)], 1).is_err());
    }

    #[test]
    fn convergence_certificates() {
        let stairs = GaugeStaircase::linear(1, 0).unwrap();
        let good: Vec<Q> = (0..12).map(|k| q_pow(5, 2 * k)).collect();
        let sites = good.iter().enumerate().map(|(k, c)| CoeffSite {
            height: k as u32,
            degree: k as u32,
            coeff: c,
        });
        assert!(certify_convergence(sites, 1, 5, &stairs).is_ok());

        let zeros = vec![q(0); 5];
        let sites = zeros.iter().enumerate().map(|(k, c)| CoeffSite {
            height: k as u32,
            degree: k as u32,
            coeff: c,
        });
        assert!(certify_convergence(sites, 1, 5, &GaugeStaircase::linear(3, 9).unwrap()).is_ok());

        let boundary: Vec<Q> = (0..8).map(|k| q_pow(5, k)).collect();
        let sites = boundary.iter().enumerate().map(|(k, c)| CoeffSite {
            height: k as u32,
            degree: k as u32,
            coeff: c,
        });
        let err = certify_convergence(sites, 1, 5, &stairs).unwrap_err();
        assert_eq!(err.height, 1);
        assert_eq!(err.gauge, Val::Finite(0));
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_q("-1/2").unwrap(), q_frac(-1, 2));
        assert_eq!(parse_q(" 4 ").unwrap(), q(4));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
        assert_eq!(render_q(&q(3)), "3/1");
        assert_eq!(render_q(&q_frac(6, -4)), "-3/2");
    }
}
