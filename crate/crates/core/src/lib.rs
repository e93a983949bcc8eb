//! Exact real, p-adic and adelic dynamics of linear fractional maps
//!
//! ```text
//! f(x) = (a x + b) / (c x + d),    a, b, c, d ∈ ℚ,  ad − bc ≠ 0
//! ```
//!
//! Rational coefficients make the same map live at every place of ℚ at
//! once: the real line and each field of p-adic numbers. This crate computes
//! everything exactly in ℚ (no floating point anywhere) and answers, for a
//! given map:
//!
//! - where its rational fixed points are ([`MoebiusMap::fixed_points`]);
//! - at which places each of them is attractive, repelling or indifferent
//!   ([`adelic_report`]); only finitely many primes are ever non-indifferent;
//! - how individual orbits behave at a chosen place ([`iterate_at_place`],
//!   [`detect_behavior`]), including Siegel disks around indifferent points;
//! - how principal adeles move under the map ([`step_adele`]), and that the
//!   product formula `|r|_∞ ∏_p |r|_p = 1` ties it all together
//!   ([`verify_product_formula`]).
//!
//! ```
//! use adelic_moebius::{adelic_report, Kind, MoebiusMap, Place, Prime};
//!
//! let f: MoebiusMap = "1/2,0,1,2".parse()?;
//! let reports = adelic_report(&f)?;
//! let zero = &reports[1];
//! assert_eq!(zero.xi.to_string(), "0/1");
//! assert_eq!(zero.real.kind, Kind::Attractive);
//! assert_eq!(zero.at(Place::Finite(Prime::new(2)?)).kind, Kind::Repelling);
//! assert_eq!(zero.at(Place::Finite(Prime::new(7)?)).kind, Kind::Indifferent);
//! # Ok::<(), adelic_moebius::Error>(())
//! ```

pub mod adele;
pub mod arith;
pub mod classify;
pub mod dynamics;
mod error;
pub mod moebius;
pub mod padic;

pub use adele::{product_norm, step_adele, step_adele_with, verify_product_formula, AdelePoint, ProductFormula};
pub use arith::{factorize, is_perfect_square, Factorization, Integer, Rational, DEFAULT_FACTOR_BOUND};
pub use classify::{
    adelic_report, adelic_report_with, case_predicted_report, case_predicted_report_with, classify_at_place,
    exceptional_primes, exceptional_primes_with, recognize_case, AdelicFixedPointReport, CaseTag, ExceptionalSets,
    Kind, PlaceClassification,
};
pub use dynamics::{
    admissible_bound, basin_sample, detect_behavior, iterate_at_place, local_multiplier_radius, siegel_max_radius,
    AdmissibleBound, BasinPoint, Behavior, BehaviorConfig, BehaviorVerdict, IterationLimits, Termination,
    TrajectoryRecord,
};
pub use error::{Error, Result};
pub use moebius::{cross_ratio, modular_family, FixedPoints, MoebiusMap, Sign};
pub use padic::{
    ball_contains, padic_distance, padic_expansion, padic_norm, place_norm, valuation, PAdicExpansion, Place, Prime,
    Valuation,
};
