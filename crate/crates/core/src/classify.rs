//! Attractive / repelling / indifferent classification of rational fixed
//! points at every place, and the six parameter families with rational
//! fixed points.
//!
//! A fixed point `ξ` of a map `f` is classified at a place `v` by comparing
//! the multiplier norm `|f′(ξ)|_v` with 1: below is attractive, above is
//! repelling, equal is indifferent. For a nonzero rational multiplier the
//! norm differs from 1 only at the primes dividing its numerator or
//! denominator, so an [`AdelicFixedPointReport`] lists those primes and
//! leaves every other prime at the indifferent default.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{factorize, Rational, DEFAULT_FACTOR_BOUND};
use crate::error::{Error, Result};
use crate::moebius::MoebiusMap;
use crate::padic::{place_norm, Place, Prime};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Attractive,
    Repelling,
    Indifferent,
}

impl Kind {
    pub fn from_multiplier_norm(norm: &Rational) -> Kind {
        match norm.cmp(&Rational::one()) {
            std::cmp::Ordering::Less => Kind::Attractive,
            std::cmp::Ordering::Greater => Kind::Repelling,
            std::cmp::Ordering::Equal => Kind::Indifferent,
        }
    }

    /// The kind of the partner fixed point, whose multiplier is the reciprocal.
    pub fn partner(self) -> Kind {
        match self {
            Kind::Attractive => Kind::Repelling,
            Kind::Repelling => Kind::Attractive,
            Kind::Indifferent => Kind::Indifferent,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Attractive => "attractive",
            Kind::Repelling => "repelling",
            Kind::Indifferent => "indifferent",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceClassification {
    pub place: Place,
    pub kind: Kind,
    /// `|f′(ξ)|_v`
    pub multiplier_norm: Rational,
}

impl PlaceClassification {
    fn from_norm(place: Place, multiplier_norm: Rational) -> Self {
        PlaceClassification {
            place,
            kind: Kind::from_multiplier_norm(&multiplier_norm),
            multiplier_norm,
        }
    }

    fn indifferent(place: Place) -> Self {
        PlaceClassification {
            place,
            kind: Kind::Indifferent,
            multiplier_norm: Rational::one(),
        }
    }
}

/// Classifies the fixed point `xi` of `m` at `place` from `|f′(ξ)|_v`.
pub fn classify_at_place(m: &MoebiusMap, xi: &Rational, place: Place) -> Result<PlaceClassification> {
    let fx = m.apply(xi)?;
    if &fx != xi {
        return Err(Error::NotAFixedPoint { xi: xi.clone() });
    }
    let multiplier = m.derivative_at(xi)?;
    Ok(PlaceClassification::from_norm(place, place_norm(&multiplier, place)))
}

/// The primes where a nonzero rational `q` has norm below one (dividing the
/// numerator) and above one (dividing the denominator).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalSets {
    pub generator: Rational,
    pub norm_below_one: BTreeSet<Prime>,
    pub norm_above_one: BTreeSet<Prime>,
}

impl ExceptionalSets {
    pub fn all(&self) -> BTreeSet<Prime> {
        self.norm_below_one
            .union(&self.norm_above_one)
            .copied()
            .collect()
    }
}

pub fn exceptional_primes(q: &Rational) -> Result<ExceptionalSets> {
    exceptional_primes_with(q, DEFAULT_FACTOR_BOUND)
}

pub fn exceptional_primes_with(q: &Rational, bound: u64) -> Result<ExceptionalSets> {
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    let below = factorize(q.numer(), bound)?.primes().collect();
    let above = factorize(q.denom(), bound)?.primes().collect();
    Ok(ExceptionalSets {
        generator: q.clone(),
        norm_below_one: below,
        norm_above_one: above,
    })
}

/// One rational fixed point seen at every place at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdelicFixedPointReport {
    pub xi: Rational,
    pub real: PlaceClassification,
    /// Every prime where the point is not indifferent. Unlisted primes are
    /// indifferent with multiplier norm 1.
    pub finite_exceptions: BTreeMap<Prime, PlaceClassification>,
}

impl AdelicFixedPointReport {
    pub fn default_kind(&self) -> Kind {
        Kind::Indifferent
    }

    pub fn at(&self, place: Place) -> PlaceClassification {
        match place {
            Place::Real => self.real.clone(),
            Place::Finite(p) => self
                .finite_exceptions
                .get(&p)
                .cloned()
                .unwrap_or_else(|| PlaceClassification::indifferent(place)),
        }
    }

    /// Real place first, then the listed primes in increasing order.
    pub fn listed(&self) -> impl Iterator<Item = &PlaceClassification> {
        std::iter::once(&self.real).chain(self.finite_exceptions.values())
    }

    pub fn is_indifferent_everywhere(&self) -> bool {
        self.listed().all(|c| c.kind == Kind::Indifferent)
    }
}

impl Serialize for AdelicFixedPointReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let places: Vec<&PlaceClassification> = self.listed().collect();
        let mut st = s.serialize_struct("AdelicFixedPointReport", 3)?;
        st.serialize_field("xi", &self.xi)?;
        st.serialize_field("places", &places)?;
        st.serialize_field("default", &self.default_kind())?;
        st.end()
    }
}

pub fn adelic_report(m: &MoebiusMap) -> Result<Vec<AdelicFixedPointReport>> {
    adelic_report_with(m, DEFAULT_FACTOR_BOUND)
}

/// Evaluates `f′` at each fixed point and classifies it at `∞` and at every
/// prime where the multiplier is not a unit.
pub fn adelic_report_with(m: &MoebiusMap, bound: u64) -> Result<Vec<AdelicFixedPointReport>> {
    m.fixed_points()?
        .to_vec()
        .into_iter()
        .map(|xi| {
            let multiplier = m.derivative_at(&xi)?;
            let real = classify_at_place(m, &xi, Place::Real)?;
            let finite_exceptions = exceptional_primes_with(&multiplier, bound)?
                .all()
                .into_iter()
                .map(|p| Ok((p, classify_at_place(m, &xi, Place::Finite(p))?)))
                .collect::<Result<_>>()?;
            Ok(AdelicFixedPointReport {
                xi,
                real,
                finite_exceptions,
            })
        })
        .collect()
}

/// The six determinant-one parameter families with rational fixed points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseTag {
    /// `b = 0`
    A,
    /// `c = b, d = a`
    B,
    /// `b = −c, d = a + 2c`
    C,
    /// `b = −c, d = a − 2c`
    D,
    /// `d = −a + 2`
    E,
    /// `d = −a − 2`
    F,
}

impl CaseTag {
    pub const ALL: [CaseTag; 6] = [CaseTag::A, CaseTag::B, CaseTag::C, CaseTag::D, CaseTag::E, CaseTag::F];

    /// Whether the determinant-one map `m` satisfies this family's constraints.
    fn holds(self, m: &MoebiusMap) -> bool {
        let [a, b, c, d] = m.coefficients();
        let one = Rational::one();
        let two = Rational::from(2);
        match self {
            CaseTag::A => b.is_zero() && (a * d).is_one(),
            CaseTag::B => c == b && d == a && (a.square() - b.square()).is_one(),
            CaseTag::C => b == &-c && d == &(a + &two * c) && (a + c).square().is_one(),
            CaseTag::D => b == &-c && d == &(a - &two * c) && (a - c).square().is_one(),
            CaseTag::E => d == &(&two - a) && ((a - &one).square() + b * c).is_zero(),
            CaseTag::F => d == &(-a - &two) && ((a + &one).square() + b * c).is_zero(),
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for CaseTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CaseTag::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("invalid case {s:?}, expected A-F")))
    }
}

/// Every family whose constraints the determinant-one map satisfies; the
/// families overlap, e.g. C and D maps always have trace ±2 and so are
/// also E or F.
pub fn recognize_case(m: &MoebiusMap) -> Result<BTreeSet<CaseTag>> {
    if !m.det().is_one() {
        return Err(Error::NotUnimodular { det: m.det().clone() });
    }
    Ok(CaseTag::ALL.into_iter().filter(|t| t.holds(m)).collect())
}

pub fn case_predicted_report(tag: CaseTag, m: &MoebiusMap) -> Result<Vec<AdelicFixedPointReport>> {
    case_predicted_report_with(tag, m, DEFAULT_FACTOR_BOUND)
}

/// Builds the reports from the family's closed-form table alone, without
/// evaluating `f′`:
///
/// * A: `ξ₁ = (1 − d²)/(cd)` with multiplier `d²`, `ξ₂ = 0` with `1/d²`;
///   fused at 0 when `d = ±1`.
/// * B: `ξ₁ = 1` with multiplier `(a − b)²`, `ξ₂ = −1` with `1/(a − b)²`.
/// * C, D, E, F: one fused point (`−1`, `1`, `(a − 1)/c`, `(a + 1)/c`)
///   with multiplier 1, indifferent everywhere.
pub fn case_predicted_report_with(
    tag: CaseTag,
    m: &MoebiusMap,
    bound: u64,
) -> Result<Vec<AdelicFixedPointReport>> {
    if !recognize_case(m)?.contains(&tag) {
        return Err(Error::CaseMismatch(tag));
    }
    let [a, b, c, d] = m.coefficients();
    if c.is_zero() {
        return Err(Error::CIsZero);
    }
    let one = Rational::one();
    let mut reports = match tag {
        CaseTag::A if d.square().is_one() => vec![fused(Rational::zero())],
        CaseTag::A => {
            let xi1 = (&one - d.square()) / (c * d);
            keyed_pair(xi1, Rational::zero(), d, bound)?
        }
        CaseTag::B => keyed_pair(one.clone(), -one, &(a - b), bound)?,
        CaseTag::C => vec![fused(-one)],
        CaseTag::D => vec![fused(one)],
        CaseTag::E => vec![fused((a - &one) / c)],
        CaseTag::F => vec![fused((a + &one) / c)],
    };
    reports.sort_by(|x, y| x.xi.cmp(&y.xi));
    Ok(reports)
}

fn fused(xi: Rational) -> AdelicFixedPointReport {
    AdelicFixedPointReport {
        xi,
        real: PlaceClassification::indifferent(Place::Real),
        finite_exceptions: BTreeMap::new(),
    }
}

/// Two fixed points whose behaviour is keyed on one generator `g`: the first
/// is attractive exactly where `|g|_v < 1` (multiplier norm `|g|_v²`), the
/// second is its mirror image.
fn keyed_pair(
    first: Rational,
    second: Rational,
    g: &Rational,
    bound: u64,
) -> Result<Vec<AdelicFixedPointReport>> {
    let sets = exceptional_primes_with(g, bound)?;
    let entry = |place: Place, flip: bool| -> PlaceClassification {
        let gn = place_norm(g, place);
        let kind = match gn.cmp(&Rational::one()) {
            std::cmp::Ordering::Less => Kind::Attractive,
            std::cmp::Ordering::Greater => Kind::Repelling,
            std::cmp::Ordering::Equal => Kind::Indifferent,
        };
        let sq = gn.square();
        if flip {
            PlaceClassification {
                place,
                kind: kind.partner(),
                multiplier_norm: sq.recip().expect("generator is nonzero"),
            }
        } else {
            PlaceClassification {
                place,
                kind,
                multiplier_norm: sq,
            }
        }
    };
    let build = |xi: Rational, flip: bool| AdelicFixedPointReport {
        xi,
        real: entry(Place::Real, flip),
        finite_exceptions: sets
            .all()
            .into_iter()
            .map(|p| (p, entry(Place::Finite(p), flip)))
            .collect(),
    };
    Ok(vec![build(first, false), build(second, true)])
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

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn classify_examples() {
        let f = m("1/2,0,1,2");
        let c = classify_at_place(&f, &q("0"), Place::Real).unwrap();
        assert_eq!((c.kind, c.multiplier_norm), (Kind::Attractive, q("1/4")));
        let c = classify_at_place(&f, &q("0"), Place::Finite(p(2))).unwrap();
        assert_eq!((c.kind, c.multiplier_norm), (Kind::Repelling, q("4")));
        let c = classify_at_place(&f, &q("0"), Place::Finite(p(7))).unwrap();
        assert_eq!((c.kind, c.multiplier_norm), (Kind::Indifferent, q("1")));

        assert_eq!(
            classify_at_place(&f, &q("1"), Place::Real),
            Err(Error::NotAFixedPoint { xi: q("1") })
        );
        assert!(matches!(
            classify_at_place(&f, &q("-2"), Place::Real),
            Err(Error::PoleInput { .. })
        ));
    }

    #[test]
    fn exceptional_examples() {
        let s = exceptional_primes(&q("2")).unwrap();
        assert_eq!(s.norm_below_one, BTreeSet::from([p(2)]));
        assert!(s.norm_above_one.is_empty());
        let s = exceptional_primes(&q("1")).unwrap();
        assert!(s.all().is_empty());
        let s = exceptional_primes(&q("10/21")).unwrap();
        assert_eq!(s.norm_below_one, BTreeSet::from([p(2), p(5)]));
        assert_eq!(s.norm_above_one, BTreeSet::from([p(3), p(7)]));
        assert_eq!(exceptional_primes(&q("0")), Err(Error::ZeroInput));
    }

    #[test]
    fn report_case_a() {
        let r = adelic_report(&m("1/2,0,1,2")).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].xi, q("-3/2"));
        assert_eq!(r[0].real.kind, Kind::Repelling);
        assert_eq!(r[0].at(Place::Finite(p(2))).kind, Kind::Attractive);
        assert_eq!(r[0].finite_exceptions.keys().copied().collect::<Vec<_>>(), vec![p(2)]);
        assert_eq!(r[1].xi, q("0"));
        assert_eq!(r[1].real.kind, Kind::Attractive);
        assert_eq!(r[1].at(Place::Finite(p(2))).kind, Kind::Repelling);
        assert_eq!(r[1].at(Place::Finite(p(3))).kind, Kind::Indifferent);
    }

    #[test]
    fn report_case_b_and_c() {
        let r = adelic_report(&m("5/3,4/3,4/3,5/3")).unwrap();
        let one = r.iter().find(|x| x.xi == q("1")).unwrap();
        assert_eq!(one.real.kind, Kind::Attractive);
        assert_eq!(one.real.multiplier_norm, q("1/9"));
        assert_eq!(one.at(Place::Finite(p(3))).kind, Kind::Repelling);
        assert_eq!(one.finite_exceptions.len(), 1);

        let r = adelic_report(&m("3,2,-2,-1")).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].xi, q("-1"));
        assert!(r[0].is_indifferent_everywhere());
        assert!(r[0].finite_exceptions.is_empty());
    }

    #[test]
    fn recognize_examples() {
        use CaseTag::*;
        assert_eq!(recognize_case(&m("1/2,0,1,2")).unwrap(), BTreeSet::from([A]));
        // Trace 2: b = 0 and d = 2 − a both hold.
        assert_eq!(recognize_case(&m("1,0,1,1")).unwrap(), BTreeSet::from([A, E]));
        assert_eq!(recognize_case(&m("3,2,-2,-1")).unwrap(), BTreeSet::from([C, E]));
        assert_eq!(recognize_case(&m("5/3,4/3,4/3,5/3")).unwrap(), BTreeSet::from([B]));
        assert!(matches!(recognize_case(&m("1,0,1,2")), Err(Error::NotUnimodular { .. })));
    }

    #[test]
    fn predicted_matches_evaluated_on_examples() {
        for (tag, map) in [
            (CaseTag::A, "1/2,0,1,2"),
            (CaseTag::A, "1,0,1,1"),
            (CaseTag::B, "5/3,4/3,4/3,5/3"),
            (CaseTag::C, "3,2,-2,-1"),
            (CaseTag::E, "3,2,-2,-1"),
            (CaseTag::D, "0,-1,1,-2"),
            (CaseTag::F, "-3,-1,4,1"),
        ] {
            let map = m(map);
            assert_eq!(case_predicted_report(tag, &map).unwrap(), adelic_report(&map).unwrap(), "{tag} {map}");
        }
        let d = case_predicted_report(CaseTag::D, &m("0,-1,1,-2")).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].xi, q("1"));
        assert_eq!(
            case_predicted_report(CaseTag::B, &m("1/2,0,1,2")),
            Err(Error::CaseMismatch(CaseTag::B))
        );
    }

    #[test]
    fn report_json_shape() {
        let r = adelic_report(&m("1/2,0,1,2")).unwrap();
        let v = serde_json::to_value(&r[1]).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "xi": "0/1",
                "places": [
                    {"place": "real", "kind": "attractive", "multiplier_norm": "1/4"},
                    {"place": "2", "kind": "repelling", "multiplier_norm": "4/1"}
                ],
                "default": "indifferent"
            })
        );
    }
}
