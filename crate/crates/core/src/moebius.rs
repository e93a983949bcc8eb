//! Linear fractional maps `x ↦ (ax + b)/(cx + d)` with rational coefficients.
//!
//! A map is stored as its coefficient matrix `[[a, b], [c, d]]`; composition
//! is the matrix product and powers use repeated squaring. Nothing is
//! normalized behind the caller's back: the determinant is whatever the
//! coefficients give until [`MoebiusMap::rescale_to_unit_det`] is called.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{is_perfect_square, Integer, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MoebiusMap {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
    det: Rational,
}

impl MoebiusMap {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        let det = &a * &d - &b * &c;
        if det.is_zero() {
            return Err(Error::SingularMap);
        }
        Ok(MoebiusMap { a, b, c, d, det })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        MoebiusMap::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        MoebiusMap::from_ints(1, 0, 0, 1).expect("identity is regular")
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }
    pub fn b(&self) -> &Rational {
        &self.b
    }
    pub fn c(&self) -> &Rational {
        &self.c
    }
    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn coefficients(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// `ad − bc`, never zero.
    pub fn det(&self) -> &Rational {
        &self.det
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.d
    }

    /// `(a − d)² + 4bc`; a rational square exactly when the fixed points are rational.
    pub fn discriminant(&self) -> Rational {
        (&self.a - &self.d).square() + Rational::from(4) * &self.b * &self.c
    }

    /// `−d/c`, or `None` for affine maps.
    pub fn pole(&self) -> Option<Rational> {
        (!self.c.is_zero()).then(|| -(&self.d / &self.c))
    }

    fn denominator_at(&self, x: &Rational) -> Result<Rational> {
        let den = &self.c * x + &self.d;
        if den.is_zero() {
            Err(Error::PoleInput { x: x.clone() })
        } else {
            Ok(den)
        }
    }

    pub fn apply(&self, x: &Rational) -> Result<Rational> {
        let den = self.denominator_at(x)?;
        Ok((&self.a * x + &self.b) / den)
    }

    /// `f′(x) = (ad − bc)/(cx + d)²`.
    pub fn derivative_at(&self, x: &Rational) -> Result<Rational> {
        let den = self.denominator_at(x)?;
        Ok(&self.det / den.square())
    }

    /// `self ∘ other`, i.e. the matrix product `F·G`.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        let (f, g) = (self, other);
        MoebiusMap::new(
            &f.a * &g.a + &f.b * &g.c,
            &f.a * &g.b + &f.b * &g.d,
            &f.c * &g.a + &f.d * &g.c,
            &f.c * &g.b + &f.d * &g.d,
        )
        .expect("product of regular matrices is regular")
    }

    /// Adjugate matrix `[[d, −b], [−c, a]]`; inverse as a map, with the same determinant.
    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap::new(self.d.clone(), -&self.b, -&self.c, self.a.clone())
            .expect("adjugate of a regular matrix is regular")
    }

    /// All coefficients multiplied by a nonzero `λ`; same map pointwise.
    pub fn scale(&self, lambda: &Rational) -> Result<MoebiusMap> {
        if lambda.is_zero() {
            return Err(Error::SingularMap);
        }
        MoebiusMap::new(
            &self.a * lambda,
            &self.b * lambda,
            &self.c * lambda,
            &self.d * lambda,
        )
    }

    /// Divides by `r = √det` (taking `r > 0`) so that the determinant becomes 1.
    pub fn rescale_to_unit_det(&self) -> Result<MoebiusMap> {
        let r = is_perfect_square(&self.det).ok_or_else(|| Error::NonSquareDeterminant {
            det: self.det.clone(),
        })?;
        self.scale(&r.recip()?)
    }

    /// `n`-fold composition as a single matrix, by repeated squaring.
    pub fn power(&self, mut n: u64) -> MoebiusMap {
        let mut acc = MoebiusMap::identity();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.compose(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.compose(&base);
            }
        }
        acc
    }

    /// Same map up to a nonzero scalar (all 2×2 minors of the stacked rows vanish).
    pub fn projectively_eq(&self, other: &MoebiusMap) -> bool {
        let s = self.coefficients();
        let o = other.coefficients();
        (0..4).all(|i| (i + 1..4).all(|j| s[i] * o[j] == s[j] * o[i]))
    }

    pub fn is_fixed_point(&self, x: &Rational) -> bool {
        matches!(self.apply(x), Ok(y) if &y == x)
    }

    /// Rational roots of `cξ² + (d − a)ξ − b = 0`, from `(a − d ± √((a − d)² + 4bc))/(2c)`.
    pub fn fixed_points(&self) -> Result<FixedPoints> {
        self.roots_from(&self.discriminant())
    }

    /// Same roots through `(Tr F)² − 4 det F` under the square root.
    pub fn fixed_points_via_trace(&self) -> Result<FixedPoints> {
        let disc = self.trace().square() - Rational::from(4) * &self.det;
        self.roots_from(&disc)
    }

    fn roots_from(&self, disc: &Rational) -> Result<FixedPoints> {
        if self.c.is_zero() {
            return Err(Error::CIsZero);
        }
        let root = is_perfect_square(disc).ok_or_else(|| Error::NonRationalFixedPoints {
            discriminant: disc.clone(),
        })?;
        let two_c = Rational::from(2) * &self.c;
        let a_minus_d = &self.a - &self.d;
        if root.is_zero() {
            return Ok(FixedPoints::Fused(a_minus_d / two_c));
        }
        let x = (&a_minus_d + &root) / &two_c;
        let y = (&a_minus_d - &root) / &two_c;
        Ok(if x < y {
            FixedPoints::Distinct(x, y)
        } else {
            FixedPoints::Distinct(y, x)
        })
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MoebiusMap({self})")
    }
}

/// Parses `a,b,c,d`.
impl FromStr for MoebiusMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "map needs four comma-separated rationals, got {s:?}"
            )));
        }
        let mut it = parts.into_iter().map(str::parse::<Rational>);
        let mut next = || it.next().expect("four parts");
        MoebiusMap::new(next()?, next()?, next()?, next()?)
    }
}

impl Serialize for MoebiusMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MoebiusMap", 4)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("b", &self.b)?;
        st.serialize_field("c", &self.c)?;
        st.serialize_field("d", &self.d)?;
        st.end()
    }
}

/// Rational fixed points; distinct roots are kept in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedPoints {
    Distinct(Rational, Rational),
    Fused(Rational),
}

impl FixedPoints {
    pub fn to_vec(&self) -> Vec<Rational> {
        match self {
            FixedPoints::Distinct(x, y) => vec![x.clone(), y.clone()],
            FixedPoints::Fused(x) => vec![x.clone()],
        }
    }
}

/// `((x₁ − x₃)(x₂ − x₄)) / ((x₁ − x₄)(x₂ − x₃))`.
pub fn cross_ratio(x1: &Rational, x2: &Rational, x3: &Rational, x4: &Rational) -> Result<Rational> {
    let den = (x1 - x4) * (x2 - x3);
    if den.is_zero() {
        return Err(Error::DegeneratePoints);
    }
    Ok((x1 - x3) * (x2 - x4) / den)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("invalid sign {s:?}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Name of the free integer parameter of a modular family: `c` for 1, 3, 5
/// and `a` for 2, 4.
pub fn modular_family_parameter(family: u8) -> Result<char> {
    match family {
        1 | 3 | 5 => Ok('c'),
        2 | 4 => Ok('a'),
        _ => Err(Error::InvalidFamily(family)),
    }
}

/// The five integer families of determinant one, with upper/lower sign `s`:
///
/// | family | map |
/// |---|---|
/// | 1 | `s·x / (c x + s)` |
/// | 2 | `(a x + a − s) / ((−a + s) x − a + 2s)` |
/// | 3 | `((−c + s) x − c) / (c x + c + s)` |
/// | 4 | `(a x − a + s) / ((a − s) x − a + 2s)` |
/// | 5 | `((c + s) x − c) / (c x − c + s)` |
pub fn modular_family(family: u8, sign: Sign, param: &Integer) -> Result<MoebiusMap> {
    let s = Integer::from(sign.value());
    let t = param.clone();
    let two_s = &s * 2;
    let [a, b, c, d]: [Integer; 4] = match family {
        1 => [s.clone(), 0.into(), t, s],
        2 => [t.clone(), &t - &s, -&t + &s, -&t + &two_s],
        3 => [-&t + &s, -t.clone(), t.clone(), &t + &s],
        4 => [t.clone(), -&t + &s, &t - &s, -&t + &two_s],
        5 => [&t + &s, -t.clone(), t.clone(), -&t + &s],
        _ => return Err(Error::InvalidFamily(family)),
    };
    let map = MoebiusMap::new(a.into(), b.into(), c.into(), d.into())?;
    if !map.det().is_one() {
        return Err(Error::NotUnimodular {
            det: map.det().clone(),
        });
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn m(s: &str) -> MoebiusMap {
        s.parse().unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(m("1/2,0,1,2").det(), &q("1"));
        assert!(matches!("1,2,2,4".parse::<MoebiusMap>(), Err(Error::SingularMap)));
        assert_eq!(m("1,0,0,1"), MoebiusMap::identity());
        assert!(matches!("1,2,3".parse::<MoebiusMap>(), Err(Error::Parse(_))));
        assert!(matches!("1, 2,3,4".parse::<MoebiusMap>(), Err(Error::Parse(_))));
    }

    #[test]
    fn apply_and_pole() {
        let f = m("1/2,0,1,2");
        assert_eq!(f.apply(&q("1")).unwrap(), q("1/6"));
        assert_eq!(f.apply(&q("0")).unwrap(), q("0"));
        assert_eq!(f.apply(&q("-2")), Err(Error::PoleInput { x: q("-2") }));
        assert_eq!(f.pole(), Some(q("-2")));
    }

    #[test]
    fn derivative_examples() {
        let f = m("1/2,0,1,2");
        // Multipliers 1/d² and d² with d = 2.
        assert_eq!(f.derivative_at(&q("0")).unwrap(), q("1/4"));
        assert_eq!(f.derivative_at(&q("-3/2")).unwrap(), q("4"));
        let id = MoebiusMap::identity();
        for x in ["0", "-7/3", "1000"] {
            assert_eq!(id.derivative_at(&q(x)).unwrap(), q("1"));
        }
        assert!(f.derivative_at(&q("-2")).is_err());
    }

    #[test]
    fn compose_examples() {
        let g = m("3,-1,4,7");
        assert_eq!(MoebiusMap::identity().compose(&g), g);
        let f = m("1/2,0,1,2");
        let id = f.compose(&f.inverse());
        assert!(id.projectively_eq(&MoebiusMap::identity()));
        assert_eq!(id.b(), &q("0"));
        assert_eq!(id.a(), id.d());
        // [[1,1],[0,1]]·[[1,0],[1,1]] = [[2,1],[1,1]]
        assert_eq!(m("1,1,0,1").compose(&m("1,0,1,1")), m("2,1,1,1"));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(MoebiusMap::identity().inverse(), MoebiusMap::identity());
        assert_eq!(m("1/2,0,1,2").inverse(), m("2,0,-1,1/2"));
        assert_eq!(m("2,3,1,2").inverse().det(), &q("1"));
    }

    #[test]
    fn rescale_examples() {
        assert_eq!(m("1,0,0,4").rescale_to_unit_det().unwrap(), m("1/2,0,0,2"));
        let unit = m("1/2,0,1,2");
        assert_eq!(unit.rescale_to_unit_det().unwrap(), unit);
        assert!(matches!(
            m("1,1,1,3").rescale_to_unit_det(),
            Err(Error::NonSquareDeterminant { .. })
        ));
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(
            m("1/2,0,1,2").fixed_points().unwrap(),
            FixedPoints::Distinct(q("-3/2"), q("0"))
        );
        assert_eq!(m("3,2,-2,-1").fixed_points().unwrap(), FixedPoints::Fused(q("-1")));
        assert_eq!(
            m("1,1,1,2").fixed_points(),
            Err(Error::NonRationalFixedPoints { discriminant: q("5") })
        );
        assert_eq!(m("2,1,0,1").fixed_points(), Err(Error::CIsZero));
    }

    #[test]
    fn cross_ratio_examples() {
        let r = cross_ratio(&q("0"), &q("1"), &q("2"), &q("3")).unwrap();
        assert_eq!(r, q("4/3"));
        let swapped = cross_ratio(&q("1"), &q("0"), &q("3"), &q("2")).unwrap();
        assert_eq!(swapped, r);
        assert_eq!(
            cross_ratio(&q("1"), &q("2"), &q("3"), &q("1")),
            Err(Error::DegeneratePoints)
        );
    }

    #[test]
    fn modular_examples() {
        let one = Integer::from(1);
        assert_eq!(modular_family(1, Sign::Plus, &one).unwrap(), m("1,0,1,1"));
        assert_eq!(modular_family(3, Sign::Plus, &one).unwrap(), m("0,-1,1,2"));
        assert_eq!(modular_family(5, Sign::Plus, &2.into()).unwrap(), m("3,-2,2,-1"));
        assert_eq!(modular_family(1, Sign::Minus, &3.into()).unwrap(), m("-1,0,3,-1"));
        assert_eq!(modular_family(6, Sign::Plus, &one), Err(Error::InvalidFamily(6)));
        assert_eq!(modular_family_parameter(4), Ok('a'));
    }

    #[test]
    fn power_small() {
        let f = m("1,1,0,1");
        assert_eq!(f.power(0), MoebiusMap::identity());
        assert_eq!(f.power(5), m("1,5,0,1"));
    }
}
