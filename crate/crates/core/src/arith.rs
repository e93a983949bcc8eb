//! Exact integers and rationals, trial-division factorization and the
//! rational square test.
//!
//! [`Rational`] is a thin wrapper over [`num_rational::BigRational`] that
//! fixes the textual form (`num/den`, always canonical) and adds the few
//! number-theoretic helpers the rest of the crate leans on.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::padic::Prime;

/// Arbitrary-size signed integer.
pub type Integer = BigInt;

/// Default trial-division bound used when callers don't pass one.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

/// Largest accepted trial-division bound; keeps `bound²` inside `u64`.
pub const MAX_FACTOR_BOUND: u64 = u32::MAX as u64;

/// Exact rational number in canonical form: positive denominator, coprime
/// parts, zero stored as `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den` in lowest terms.
    pub fn new(num: impl Into<Integer>, den: impl Into<Integer>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<Integer>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn square(&self) -> Self {
        Rational(&self.0 * &self.0)
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        if exp < 0 && self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let e = i32::try_from(exp).map_err(|_| Error::ExponentTooLarge(exp))?;
        Ok(Rational(num_traits::Pow::pow(&self.0, e)))
    }

    /// `p^k` for a prime `p` and any integer `k`.
    pub fn prime_power(p: Prime, k: i64) -> Result<Self> {
        Rational::from_integer(p.get()).pow(k)
    }

    /// The larger of the numerator and denominator bit lengths.
    pub fn bits(&self) -> u64 {
        self.numer().bits().max(self.denom().bits())
    }

    /// `max(|num|, den)`, the usual naive height.
    pub fn height(&self) -> Integer {
        let n = self.numer().abs();
        if &n > self.denom() {
            n
        } else {
            self.denom().clone()
        }
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    /// Lossy, for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n)
    }
}

impl From<Integer> for Rational {
    fn from(n: Integer) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `n` or `n/m`, where only the numerator may carry a `-` and no
/// whitespace is allowed anywhere.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let unsigned = num.strip_prefix('-').unwrap_or(num);
        if !digits(unsigned) {
            return Err(bad());
        }
        let num: Integer = num.parse().map_err(|_| bad())?;
        match den {
            None => Ok(Rational::from_integer(num)),
            Some(d) if digits(d) => {
                let d: Integer = d.parse().map_err(|_| bad())?;
                Rational::new(num, d)
            }
            Some(_) => Err(bad()),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Integer operands skip the cross-reducing gcds, which cost time linear
/// in the bit length even against a denominator of 1.
fn integral(x: &BigRational, y: &BigRational, op: Option<fn(&Integer, &Integer) -> Integer>) -> Option<BigRational> {
    let op = op?;
    (x.is_integer() && y.is_integer()).then(|| BigRational::from_integer(op(x.numer(), y.numer())))
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $int:expr) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(integral(&self.0, &rhs.0, $int).unwrap_or_else(|| (&self.0).$method(&rhs.0)))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, Some(|a, b| a + b));
forward_binop!(Sub, sub, Some(|a, b| a - b));
forward_binop!(Mul, mul, Some(|a, b| a * b));
// Panics on a zero divisor, like the integer types; use `checked_div` on
// untrusted input.
forward_binop!(Div, div, None);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Signed prime factorization `sign × ∏ pᵢ^eᵢ` with strictly increasing primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(Prime, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = Prime> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn reconstruct(&self) -> Integer {
        let mut acc = Integer::from(self.sign);
        for &(p, e) in &self.factors {
            acc *= num_traits::pow(Integer::from(p.get()), e as usize);
        }
        acc
    }
}

/// Factors `n` by trial division up to `bound`.
///
/// A cofactor left over after dividing out every candidate `≤ bound` is
/// accepted as prime when it is at most `bound²`; anything larger fails with
/// [`Error::FactorizationIncomplete`] instead of being guessed at.
pub fn factorize(n: &Integer, bound: u64) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !(2..=MAX_FACTOR_BOUND).contains(&bound) {
        return Err(Error::InvalidBound(bound));
    }
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut rest: BigUint = n.magnitude().clone();
    let mut factors = Vec::new();

    let mut push = |p: u64, e: u32| factors.push((Prime::new_unchecked(p), e));

    // Wheel over 2, 3 and then 6k ± 1.
    let mut candidate = 2u64;
    let mut step_idx = 0usize;
    const STEPS: [u64; 2] = [2, 4];
    loop {
        if rest.is_one() {
            break;
        }
        if candidate > bound {
            break;
        }
        // Once candidate² exceeds the cofactor it must be prime.
        if let Some(small) = rest.to_u64() {
            if candidate.saturating_mul(candidate) > small {
                break;
            }
            let mut r = small;
            let mut e = 0;
            while r % candidate == 0 {
                r /= candidate;
                e += 1;
            }
            if e > 0 {
                push(candidate, e);
                rest = BigUint::from(r);
            }
        } else {
            let mut e = 0;
            loop {
                let (q, r) = rest.div_rem(&BigUint::from(candidate));
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                push(candidate, e);
            }
        }
        candidate = match candidate {
            2 => 3,
            3 => 5,
            c => {
                let next = c + STEPS[step_idx];
                step_idx ^= 1;
                next
            }
        };
    }

    if !rest.is_one() {
        let limit = BigUint::from(bound) * BigUint::from(bound);
        let accept = rest <= limit
            || rest
                .to_u64()
                .is_some_and(|r| candidate.saturating_mul(candidate) > r);
        match rest.to_u64() {
            Some(r) if accept => push(r, 1),
            _ => {
                return Err(Error::FactorizationIncomplete {
                    residual: Integer::from(rest),
                    bound,
                })
            }
        }
    }
    Ok(Factorization { sign, factors })
}

/// Trial-division primality test for `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = 7u64;
    let mut steps = [4u64, 2, 4, 2, 4, 6, 2, 6].iter().cycle();
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += steps.next().unwrap();
    }
    true
}

/// All primes `≤ limit`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(limit: u64) -> Vec<Prime> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(Prime::new_unchecked(i as u64));
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Square root of a non-negative integer when it is a perfect square.
pub fn integer_sqrt_exact(n: &Integer) -> Option<Integer> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Returns `s ≥ 0` with `s² = r`, or `None` if `r` is not the square of a
/// rational. Works in lowest terms, where both parts must be squares.
pub fn is_perfect_square(r: &Rational) -> Option<Rational> {
    let num = integer_sqrt_exact(r.numer())?;
    let den = integer_sqrt_exact(r.denom())?;
    Some(Rational(BigRational::new_raw(num, den)))
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn factorization_reconstructs(n in (-1_000_000_000_000i64..1_000_000_000_000).prop_filter("nonzero", |n| *n != 0)) {
            let n = Integer::from(n);
            let f = factorize(&n, DEFAULT_FACTOR_BOUND).unwrap();
            prop_assert_eq!(f.reconstruct(), n);
            let ps: Vec<u64> = f.primes().map(Prime::get).collect();
            prop_assert!(ps.windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn square_roundtrip(t in rational()) {
            let s = is_perfect_square(&t.square()).unwrap();
            prop_assert_eq!(s, t.abs());
        }

        #[test]
        fn canonical_form_is_structural(n in -500i64..500, d in 1i64..500, k in 1i64..50) {
            let a = Rational::new(n, d).unwrap();
            let b = Rational::new(n * k, d * k).unwrap();
            prop_assert_eq!(a.numer(), b.numer());
            prop_assert_eq!(a.denom(), b.denom());
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }
    }
}
