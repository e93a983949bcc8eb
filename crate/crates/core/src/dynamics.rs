//! Exact orbits at a single place and what can be said about them.
//!
//! Orbits are computed in ℚ without any rounding; the only things that stop
//! an orbit early are hitting the fixed point exactly, hitting the pole, or
//! the bit-size guard.
//!
//! Near a fixed point `ξ` with `cξ + d ≠ 0` every Möbius map satisfies
//!
//! ```text
//! f(x) − ξ = (x − ξ) · det / ((cx + d)(cξ + d))
//! ```
//!
//! so at a prime `p`, as long as `|x − ξ|_p < |cξ + d|_p / |c|_p`, the
//! ultrametric inequality forces `|cx + d|_p = |cξ + d|_p` and the distance
//! to `ξ` is multiplied by exactly `|f′(ξ)|_p`. That radius is what
//! [`local_multiplier_radius`] returns, and it drives the escape verdict and
//! the Siegel-disk radius.

use num_integer::Integer as _;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Rational;
use crate::classify::{classify_at_place, Kind};
use crate::error::{Error, Result};
use crate::moebius::MoebiusMap;
use crate::padic::{padic_norm, place_distance, place_norm, Place, Prime};

pub const DEFAULT_MAX_STEPS: usize = 10_000;
pub const DEFAULT_BIT_GUARD: u64 = 1_000_000;
pub const DEFAULT_WINDOW: usize = 16;
/// Real convergence threshold exponent: `dist < 2^-40`.
pub const DEFAULT_THRESHOLD_EXP: i64 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IterationLimits {
    pub max_steps: usize,
    /// Largest numerator/denominator bit length allowed in an orbit.
    pub bit_guard: u64,
}

impl Default for IterationLimits {
    fn default() -> Self {
        IterationLimits {
            max_steps: DEFAULT_MAX_STEPS,
            bit_guard: DEFAULT_BIT_GUARD,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BehaviorConfig {
    pub window: usize,
    pub threshold: Rational,
}

impl Default for BehaviorConfig {
    fn default() -> Self {
        BehaviorConfig {
            window: DEFAULT_WINDOW,
            threshold: Rational::from(2)
                .pow(-DEFAULT_THRESHOLD_EXP)
                .expect("nonzero base"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub n: usize,
    pub x: Rational,
    /// `|x_n − ξ|_v`
    pub dist: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    MaxSteps,
    PoleHit,
    OverflowGuard,
    /// The orbit landed exactly on the reference fixed point.
    Converged,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrajectoryRecord {
    pub place: Place,
    pub xi: Rational,
    pub steps: Vec<Step>,
    pub terminated_by: Termination,
}

impl TrajectoryRecord {
    pub fn dists(&self) -> impl Iterator<Item = &Rational> {
        self.steps.iter().map(|s| &s.dist)
    }

    /// One `{"n","x","dist"}` object per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&serde_json::to_string(s).expect("step serializes"));
            out.push('\n');
        }
        out
    }
}

/// Exact orbit of `x0` under `m`, with distances to the fixed point `xi`
/// measured at `place`. Stops after `max_steps` applications.
pub fn iterate_at_place(
    m: &MoebiusMap,
    x0: &Rational,
    xi: &Rational,
    place: Place,
    limits: IterationLimits,
) -> Result<TrajectoryRecord> {
    if !m.is_fixed_point(xi) {
        return Err(Error::NotAFixedPoint { xi: xi.clone() });
    }
    let mut steps = Vec::new();
    let mut x = x0.clone();
    let terminated_by = loop {
        let dist = place_distance(&x, xi, place);
        let n = steps.len();
        let landed = dist.is_zero();
        let too_big = x.bits() > limits.bit_guard;
        steps.push(Step {
            n,
            x: x.clone(),
            dist,
        });
        if landed {
            break Termination::Converged;
        }
        if too_big {
            break Termination::OverflowGuard;
        }
        if n >= limits.max_steps {
            break Termination::MaxSteps;
        }
        match m.apply(&x) {
            Ok(next) => x = next,
            Err(Error::PoleInput { .. }) => break Termination::PoleHit,
            Err(e) => return Err(e),
        }
    };
    Ok(TrajectoryRecord {
        place,
        xi: xi.clone(),
        steps,
        terminated_by,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Behavior {
    ConvergesToFixedPoint,
    Escapes,
    SphereInvariant,
    Undetermined,
}

impl std::fmt::Display for Behavior {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Behavior::ConvergesToFixedPoint => "converges_to_fixed_point",
            Behavior::Escapes => "escapes",
            Behavior::SphereInvariant => "sphere_invariant",
            Behavior::Undetermined => "undetermined",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub window: usize,
    pub steps_recorded: usize,
    /// Strict decreases at the tail of the distance sequence.
    pub decreasing_run: usize,
    /// Strict increases at the tail of the distance sequence.
    pub increasing_run: usize,
    /// Equal consecutive distances at the tail.
    pub constant_run: usize,
    pub final_dist: Rational,
    /// The last point lies in a region the map provably contracts towards ξ.
    pub contraction_certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BehaviorVerdict {
    pub kind: Behavior,
    pub evidence: Evidence,
}

fn tail_run(dists: &[Rational], rel: impl Fn(&Rational, &Rational) -> bool) -> usize {
    dists
        .windows(2)
        .rev()
        .take_while(|w| rel(&w[0], &w[1]))
        .count()
}

/// Whether every point within distance `r` of `ξ` is pulled strictly closer
/// by `m` at `place`.
///
/// At a prime this needs `r` inside the linearization radius and an
/// attracting multiplier. At the real place it bounds the contraction
/// factor `|det| / (|cx + d| |cξ + d|)` below one over `[ξ − r, ξ + r]`.
pub fn contraction_certified(m: &MoebiusMap, xi: &Rational, place: Place, r: &Rational) -> bool {
    match place {
        Place::Finite(p) => {
            let Ok(rho) = local_multiplier_radius(m, xi, p) else {
                return false;
            };
            let Ok(mult) = m.derivative_at(xi) else {
                return false;
            };
            r < &rho && padic_norm(&mult, p) < Rational::one()
        }
        Place::Real => {
            let at_xi = (m.c() * xi + m.d()).abs();
            let margin = &at_xi - m.c().abs() * r;
            margin > Rational::zero() && m.det().abs() < margin * at_xi
        }
    }
}

pub fn detect_behavior(
    t: &TrajectoryRecord,
    m: &MoebiusMap,
    cfg: &BehaviorConfig,
) -> Result<BehaviorVerdict> {
    let dists: Vec<Rational> = t.dists().cloned().collect();
    let final_dist = dists.last().cloned().unwrap_or_else(Rational::zero);
    let evidence = Evidence {
        window: cfg.window,
        steps_recorded: dists.len(),
        decreasing_run: tail_run(&dists, |a, b| b < a),
        increasing_run: tail_run(&dists, |a, b| b > a),
        constant_run: tail_run(&dists, |a, b| a == b),
        contraction_certified: contraction_certified(m, &t.xi, t.place, &final_dist),
        final_dist,
    };
    let verdict = |kind| Ok(BehaviorVerdict { kind, evidence: evidence.clone() });

    if t.terminated_by == Termination::Converged {
        return verdict(Behavior::ConvergesToFixedPoint);
    }
    // Leaving the linear zone is certified by the prefix alone, so it does
    // not need the window and survives a later pole.
    if let Place::Finite(p) = t.place {
        if escapes_linear_zone(&dists, m, &t.xi, p) {
            return verdict(Behavior::Escapes);
        }
    }
    if t.terminated_by == Termination::PoleHit {
        return verdict(Behavior::Undetermined);
    }
    if dists.len() < cfg.window + 1 {
        return Err(Error::TooShort {
            needed: cfg.window + 1,
            got: dists.len(),
        });
    }
    if evidence.constant_run + 1 == dists.len() {
        return verdict(Behavior::SphereInvariant);
    }
    if evidence.decreasing_run >= cfg.window
        && (evidence.final_dist < cfg.threshold || evidence.contraction_certified)
    {
        return verdict(Behavior::ConvergesToFixedPoint);
    }
    let escapes = t.place == Place::Real && evidence.increasing_run >= cfg.window;
    verdict(if escapes {
        Behavior::Escapes
    } else {
        Behavior::Undetermined
    })
}

/// The orbit starts strictly inside the linearization radius (but off ξ),
/// its distance grows strictly at every step, and it leaves the radius.
fn escapes_linear_zone(dists: &[Rational], m: &MoebiusMap, xi: &Rational, p: Prime) -> bool {
    let Ok(rho) = local_multiplier_radius(m, xi, p) else {
        return false;
    };
    if dists[0].is_zero() || dists[0] >= rho {
        return false;
    }
    let Some(exit) = dists.iter().position(|d| d >= &rho) else {
        return false;
    };
    dists[..=exit].windows(2).all(|w| w[1] > w[0])
}

/// `|cξ + d|_p / |c|_p`: inside this distance of ξ the map scales distances
/// to ξ by exactly `|f′(ξ)|_p`.
pub fn local_multiplier_radius(m: &MoebiusMap, xi: &Rational, p: Prime) -> Result<Rational> {
    if m.c().is_zero() {
        return Err(Error::CIsZero);
    }
    if !m.is_fixed_point(xi) {
        return Err(Error::NotAFixedPoint { xi: xi.clone() });
    }
    let at_xi = m.c() * xi + m.d();
    if at_xi.is_zero() {
        return Err(Error::PoleInput { x: xi.clone() });
    }
    Ok(padic_norm(&at_xi, p) / padic_norm(m.c(), p))
}

/// Radius below which every sphere around an indifferent fixed point is
/// mapped onto itself.
pub fn siegel_max_radius(m: &MoebiusMap, xi: &Rational, p: Prime) -> Result<Rational> {
    if classify_at_place(m, xi, Place::Finite(p))?.kind != Kind::Indifferent {
        return Err(Error::NotIndifferent);
    }
    local_multiplier_radius(m, xi, p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasinPoint {
    pub x0: Rational,
    pub verdict: Behavior,
    pub steps_used: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Every canonical `m/n` with `|m| ≤ height`, `1 ≤ n ≤ height`, except the
/// pole, in increasing order.
pub fn height_sample(height: u64, pole: Option<&Rational>) -> Vec<Rational> {
    let h = height as i64;
    let mut out: Vec<Rational> = (1..=h)
        .flat_map(|n| {
            (-h..=h)
                .filter(move |&m| m.gcd(&n) == 1 || (m == 0 && n == 1))
                .map(move |m| Rational::new(m, n).expect("n ≥ 1"))
        })
        .filter(|x| Some(x) != pole)
        .collect();
    out.sort();
    out
}

/// Runs every start of [`height_sample`] and records the verdict. Orbits
/// run in parallel; the output order is the sample order.
pub fn basin_sample(
    m: &MoebiusMap,
    xi: &Rational,
    place: Place,
    height: u64,
    limits: IterationLimits,
    cfg: &BehaviorConfig,
) -> Result<Vec<BasinPoint>> {
    if !m.is_fixed_point(xi) {
        return Err(Error::NotAFixedPoint { xi: xi.clone() });
    }
    let pole = m.pole();
    let sample = height_sample(height, pole.as_ref());
    sample
        .into_par_iter()
        .map(|x0| {
            let t = iterate_at_place(m, &x0, xi, place, limits)?;
            let steps_used = t.steps.len() - 1;
            let (verdict, note) = match detect_behavior(&t, m, cfg) {
                Ok(v) => (v.kind, (t.terminated_by == Termination::PoleHit).then(|| "pole hit".to_string())),
                Err(e @ Error::TooShort { .. }) => (Behavior::Undetermined, Some(e.to_string())),
                Err(e) => return Err(e),
            };
            Ok(BasinPoint {
                x0,
                verdict,
                steps_used,
                note,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibleBound {
    /// Largest exceptional prime, or 1 when there is none.
    pub q: u64,
    pub exceptional: std::collections::BTreeSet<Prime>,
}

/// Primes where `x0` or `f(x0)` fails to be a p-adic integer; above the
/// largest of them both are integral.
pub fn admissible_bound(m: &MoebiusMap, x0: &Rational, factor_bound: u64) -> Result<AdmissibleBound> {
    if m.c().is_zero() {
        return Err(Error::CIsZero);
    }
    if m.d().is_zero() {
        return Err(Error::DIsZero);
    }
    let fx = m.apply(x0)?;
    let mut exceptional = std::collections::BTreeSet::new();
    for r in [x0, &fx] {
        exceptional.extend(crate::arith::factorize(r.denom(), factor_bound)?.primes());
    }
    debug_assert!(exceptional
        .iter()
        .all(|&p| place_norm(x0, Place::Finite(p)) > Rational::one()
            || place_norm(&fx, Place::Finite(p)) > Rational::one()));
    Ok(AdmissibleBound {
        q: exceptional.iter().next_back().map_or(1, |p| p.get()),
        exceptional,
    })
}
