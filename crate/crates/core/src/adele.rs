//! Rational adeles, componentwise stepping, and the product formula.
//!
//! An [`AdelePoint`] stores a real component, finitely many listed p-adic
//! components, and one rational used at every unlisted prime. The unlisted
//! component must be a p-adic integer at each unlisted prime, which is the
//! "integral at all but finitely many places" restriction in finite form.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{factorize, Rational, DEFAULT_FACTOR_BOUND};
use crate::error::{Error, Result};
use crate::moebius::MoebiusMap;
use crate::padic::{padic_norm, place_norm, Place, Prime};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdelePoint {
    real: Rational,
    listed: BTreeMap<Prime, Rational>,
    cofinite: Rational,
}

impl AdelePoint {
    /// Validates that `cofinite` is integral at every prime not in `listed`.
    pub fn new(
        real: Rational,
        listed: BTreeMap<Prime, Rational>,
        cofinite: Rational,
        factor_bound: u64,
    ) -> Result<Self> {
        let missing: Vec<Prime> = factorize(cofinite.denom(), factor_bound)?
            .primes()
            .filter(|p| !listed.contains_key(p))
            .collect();
        if !missing.is_empty() {
            return Err(Error::InvalidAdele(format!(
                "unlisted component {cofinite} is not integral at {missing:?}"
            )));
        }
        Ok(AdelePoint {
            real,
            listed,
            cofinite,
        })
    }

    /// `(r, r, r, …)`, listing exactly the primes where `r` is not integral.
    pub fn principal(r: &Rational) -> Result<Self> {
        Self::principal_with(r, DEFAULT_FACTOR_BOUND)
    }

    pub fn principal_with(r: &Rational, factor_bound: u64) -> Result<Self> {
        let listed = factorize(r.denom(), factor_bound)?
            .primes()
            .map(|p| (p, r.clone()))
            .collect();
        Ok(AdelePoint {
            real: r.clone(),
            listed,
            cofinite: r.clone(),
        })
    }

    pub fn real(&self) -> &Rational {
        &self.real
    }

    pub fn listed(&self) -> &BTreeMap<Prime, Rational> {
        &self.listed
    }

    pub fn cofinite(&self) -> &Rational {
        &self.cofinite
    }

    pub fn component(&self, place: Place) -> &Rational {
        match place {
            Place::Real => &self.real,
            Place::Finite(p) => self.listed.get(&p).unwrap_or(&self.cofinite),
        }
    }

    /// Replaces (or adds) the component at `p`.
    pub fn with_component(mut self, p: Prime, value: Rational) -> Self {
        self.listed.insert(p, value);
        self
    }

    pub fn is_principal(&self) -> bool {
        self.listed.values().all(|x| x == &self.real) && self.cofinite == self.real
    }

    /// Primes with `|x_p|_p > 1`; always a subset of the listed primes.
    pub fn non_integral_primes(&self) -> Vec<Prime> {
        self.listed
            .iter()
            .filter(|(&p, x)| padic_norm(x, p) > Rational::one())
            .map(|(&p, _)| p)
            .collect()
    }
}

impl Serialize for AdelePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            prime: Prime,
            value: &'a Rational,
        }
        let listed: Vec<Entry> = self
            .listed
            .iter()
            .map(|(&prime, value)| Entry { prime, value })
            .collect();
        let mut st = s.serialize_struct("AdelePoint", 3)?;
        st.serialize_field("real", &self.real)?;
        st.serialize_field("listed", &listed)?;
        st.serialize_field("cofinite", &self.cofinite)?;
        st.end()
    }
}

pub fn step_adele(m: &MoebiusMap, x: &AdelePoint) -> Result<AdelePoint> {
    step_adele_with(m, x, DEFAULT_FACTOR_BOUND)
}

/// Applies `m` in every component. Primes where the new unlisted component
/// stops being integral are added to the listed set.
pub fn step_adele_with(m: &MoebiusMap, x: &AdelePoint, factor_bound: u64) -> Result<AdelePoint> {
    let pole_at = |slot: String| move |e: Error| match e {
        Error::PoleInput { .. } => Error::PoleAtPlace(slot),
        other => other,
    };
    let real = m.apply(&x.real).map_err(pole_at("real".into()))?;
    let mut listed = x
        .listed
        .iter()
        .map(|(&p, v)| Ok((p, m.apply(v).map_err(pole_at(p.to_string()))?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let cofinite = m.apply(&x.cofinite).map_err(pole_at("cofinite".into()))?;
    for p in factorize(cofinite.denom(), factor_bound)?.primes() {
        listed.entry(p).or_insert_with(|| cofinite.clone());
    }
    Ok(AdelePoint {
        real,
        listed,
        cofinite,
    })
}

/// The factors `|r|_v` of the product formula, real place first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFormula {
    pub r: Rational,
    pub factors: Vec<(Place, Rational)>,
    pub product: Rational,
}

impl ProductFormula {
    pub fn holds(&self) -> bool {
        self.product.is_one()
    }
}

impl Serialize for ProductFormula {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Factor<'a> {
            place: Place,
            norm: &'a Rational,
        }
        let factors: Vec<Factor> = self
            .factors
            .iter()
            .map(|(place, norm)| Factor { place: *place, norm })
            .collect();
        let mut st = s.serialize_struct("ProductFormula", 4)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("factors", &factors)?;
        st.serialize_field("product", &self.product)?;
        st.serialize_field("holds", &self.holds())?;
        st.end()
    }
}

/// `|r|_∞ · ∏_p |r|_p` over the primes where `|r|_p ≠ 1`.
pub fn product_norm(r: &Rational, factor_bound: u64) -> Result<Rational> {
    Ok(verify_product_formula(r, factor_bound)?.product)
}

pub fn verify_product_formula(r: &Rational, factor_bound: u64) -> Result<ProductFormula> {
    if r.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut primes: Vec<Prime> = factorize(r.numer(), factor_bound)?.primes().collect();
    primes.extend(factorize(r.denom(), factor_bound)?.primes());
    primes.sort();

    let mut factors = vec![(Place::Real, place_norm(r, Place::Real))];
    factors.extend(
        primes
            .into_iter()
            .map(|p| (Place::Finite(p), place_norm(r, Place::Finite(p)))),
    );
    let product = factors
        .iter()
        .fold(Rational::one(), |acc, (_, n)| acc * n);
    Ok(ProductFormula {
        r: r.clone(),
        factors,
        product,
    })
}
