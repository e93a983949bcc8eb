//! Valuations, norms, digit expansions and balls at the places of ℚ.
//!
//! Every norm is returned as an exact [`Rational`]; at a finite place it is
//! always `0` or a power of `p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{is_prime, Integer, Rational};
use crate::error::{Error, Result};

/// A rational prime, checked by trial division when built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p.into()))
        }
    }

    pub fn from_integer(p: &Integer) -> Result<Self> {
        p.to_u64()
            .ok_or_else(|| Error::NotPrime(p.clone()))
            .and_then(Prime::new)
    }

    /// Skips the primality check; only for values that are prime by construction.
    pub(crate) fn new_unchecked(p: u64) -> Self {
        Prime(p)
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_integer(self) -> Integer {
        Integer::from(self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Prime {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.0)
    }
}

/// The real place `∞` or a finite place `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Finite(Prime),
}

impl Place {
    pub fn prime(p: u64) -> Result<Self> {
        Prime::new(p).map(Place::Finite)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => f.write_str("real"),
            Place::Finite(p) => p.fmt(f),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    /// `real`, `inf` or `∞` for the real place, otherwise a prime.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" | "inf" | "∞" => Ok(Place::Real),
            _ => {
                let p: u64 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid place {s:?}")))?;
                Place::prime(p)
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    /// Only for zero.
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

/// Exponent of `p` in a nonzero integer, plus the cofactor.
fn split_integer(n: &BigInt, p: Prime) -> (i64, BigInt) {
    let p = BigInt::from(p.get());
    let mut rest = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return (v, rest);
        }
        rest = q;
        v += 1;
    }
}

pub fn valuation(r: &Rational, p: Prime) -> Valuation {
    if r.is_zero() {
        return Valuation::Infinite;
    }
    let (vn, _) = split_integer(r.numer(), p);
    let (vd, _) = split_integer(r.denom(), p);
    Valuation::Finite(vn - vd)
}

/// `|r|_p = p^{-ν}`, with `|0|_p = 0`.
pub fn padic_norm(r: &Rational, p: Prime) -> Rational {
    match valuation(r, p) {
        Valuation::Infinite => Rational::zero(),
        Valuation::Finite(v) => Rational::prime_power(p, -v).expect("valuation fits i32"),
    }
}

pub fn place_norm(r: &Rational, v: Place) -> Rational {
    match v {
        Place::Real => r.abs(),
        Place::Finite(p) => padic_norm(r, p),
    }
}

pub fn padic_distance(x: &Rational, y: &Rational, p: Prime) -> Rational {
    padic_norm(&(x - y), p)
}

/// `|x - y|_v` at any place.
pub fn place_distance(x: &Rational, y: &Rational, v: Place) -> Rational {
    place_norm(&(x - y), v)
}

/// Truncated canonical expansion `p^ν (x₀ + x₁p + … + x_{N-1}p^{N-1})`,
/// digits least significant first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PAdicExpansion {
    pub p: Prime,
    pub nu: i64,
    pub digits: Vec<u64>,
}

impl PAdicExpansion {
    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    /// The rational `p^ν Σ x_k p^k` represented by the truncated digits.
    pub fn partial_sum(&self) -> Rational {
        let p = BigInt::from(self.p.get());
        let mut acc = BigInt::zero();
        for &d in self.digits.iter().rev() {
            acc = acc * &p + BigInt::from(d);
        }
        Rational::from_integer(acc)
            * Rational::prime_power(self.p, self.nu).expect("valuation fits i32")
    }
}

/// Inverse of `k` modulo the prime `p`; `k` must not be divisible by `p`.
fn inverse_mod(k: &BigInt, p: u64) -> u64 {
    let k = k.mod_floor(&BigInt::from(p)).to_u64().expect("residue < p");
    let e = (k as i128).extended_gcd(&(p as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(p as i128) as u64
}

/// First `n` digits of the canonical expansion of a nonzero rational.
pub fn padic_expansion(r: &Rational, p: Prime, n: usize) -> Result<PAdicExpansion> {
    if r.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (vn, mut num) = split_integer(r.numer(), p);
    let (vd, den) = split_integer(r.denom(), p);
    let pb = BigInt::from(p.get());
    let den_inv = inverse_mod(&den, p.get());
    let mut digits = Vec::with_capacity(n);
    for _ in 0..n {
        // x_k ≡ num · den⁻¹ (mod p), then (num/den − x_k)/p keeps the same den.
        let residue = num.mod_floor(&pb).to_u64().expect("residue < p");
        let digit = ((residue as u128 * den_inv as u128) % p.get() as u128) as u64;
        num = (num - &den * BigInt::from(digit)) / &pb;
        digits.push(digit);
    }
    Ok(PAdicExpansion {
        p,
        nu: vn - vd,
        digits,
    })
}

/// Whether `x` lies in the closed ball `{ y : |y - center|_p ≤ p^μ }`.
pub fn ball_contains(center: &Rational, mu: i64, x: &Rational, p: Prime) -> bool {
    let radius = Rational::prime_power(p, mu).expect("radius exponent fits i32");
    padic_distance(x, center, p) <= radius
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 101, 65537];

    fn rational() -> impl Strategy<Value = Rational> {
        (-100_000i64..100_000, 1i64..100_000).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    fn prime() -> impl Strategy<Value = Prime> {
        prop::sample::select(PRIMES.to_vec()).prop_map(|p| Prime::new(p).unwrap())
    }

    fn place() -> impl Strategy<Value = Place> {
        prop_oneof![Just(Place::Real), prime().prop_map(Place::Finite)]
    }

    proptest! {
        #[test]
        fn multiplicative(x in rational(), y in rational(), v in place()) {
            prop_assert_eq!(place_norm(&(&x * &y), v), place_norm(&x, v) * place_norm(&y, v));
        }

        #[test]
        fn strong_triangle(x in rational(), y in rational(), p in prime()) {
            let (nx, ny) = (padic_norm(&x, p), padic_norm(&y, p));
            let sum = padic_norm(&(&x + &y), p);
            let max = if nx > ny { nx.clone() } else { ny.clone() };
            prop_assert!(sum <= max);
            if nx != ny {
                prop_assert_eq!(sum, max);
            }
        }

        #[test]
        fn integers_are_integral(m in any::<i64>(), p in prime()) {
            prop_assert!(padic_norm(&Rational::from_integer(m), p) <= Rational::one());
        }

        #[test]
        fn expansion_roundtrip(x in rational().prop_filter("nonzero", |x| !x.is_zero()),
                               p in prime(), n in 1usize..24) {
            let e = padic_expansion(&x, p, n).unwrap();
            prop_assert!(e.digits.iter().all(|&d| d < p.get()));
            prop_assert_ne!(e.digits[0], 0);
            let bound = Rational::prime_power(p, -(e.nu + n as i64)).unwrap();
            prop_assert!(padic_distance(&x, &e.partial_sum(), p) <= bound);
        }

        #[test]
        fn any_ball_point_is_a_center(a in rational(), t in any::<i32>(), mu in -4i64..4, p in prime(),
                                      offsets in prop::collection::vec((-6i64..6, any::<i32>()), 16)) {
            // b = a + p^{-μ}·t is in the ball of radius p^μ around a.
            let b = &a + Rational::prime_power(p, -mu).unwrap() * Rational::from(t);
            prop_assert!(ball_contains(&a, mu, &b, p));
            for (k, u) in offsets {
                let s = &a + Rational::prime_power(p, k).unwrap() * Rational::from(u);
                prop_assert_eq!(ball_contains(&a, mu, &s, p), ball_contains(&b, mu, &s, p));
            }
        }
    }
}
