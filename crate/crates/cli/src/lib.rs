//! Command implementations behind the `adelic-moebius` binary.
//!
//! Every command returns an [`Output`] holding a JSON document and a flat
//! table; the binary picks one rendering and maps library errors to exit
//! codes with [`exit_code`].

use std::collections::BTreeSet;

use adelic_moebius::arith::{primes_up_to, MAX_FACTOR_BOUND};
use adelic_moebius::moebius::modular_family_parameter;
use adelic_moebius::{
    adelic_report_with, basin_sample, case_predicted_report_with, classify_at_place, cross_ratio, detect_behavior,
    iterate_at_place, modular_family, recognize_case, step_adele_with, verify_product_formula, AdelePoint,
    AdelicFixedPointReport, BehaviorConfig, BehaviorVerdict, CaseTag, Error, Integer, IterationLimits, Kind,
    MoebiusMap, Place, Prime, Rational, Sign, TrajectoryRecord,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "adelic-moebius", version, about = "Exact adelic dynamics of rational linear fractional maps")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Output format (default: csv for basin, json otherwise)
    #[arg(long, global = true, value_enum, env = "ADELIC_FORMAT")]
    pub format: Option<OutputFormat>,
    /// Trial-division bound for factorizations
    #[arg(long, global = true, default_value_t = 1_000_000, env = "ADELIC_FACTOR_BOUND")]
    pub factor_bound: u64,
    /// Default orbit length for iterate and basin
    #[arg(long, global = true, default_value_t = 10_000, env = "ADELIC_MAX_STEPS")]
    pub max_steps: usize,
    /// Abort orbits whose numerator or denominator exceeds this many bits
    #[arg(long, global = true, default_value_t = 1_000_000, env = "ADELIC_BIT_GUARD")]
    pub bit_guard: u64,
    /// Window of strictly monotone steps required for a verdict
    #[arg(long, global = true, default_value_t = 16, env = "ADELIC_WINDOW")]
    pub window: usize,
    /// Re-check indifference at every unlisted prime up to N
    #[arg(long, global = true, value_name = "N", env = "ADELIC_AUDIT_PRIMES")]
    pub audit_primes: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            format: None,
            factor_bound: 1_000_000,
            max_steps: 10_000,
            bit_guard: 1_000_000,
            window: 16,
            audit_primes: None,
        }
    }
}

impl RunConfig {
    fn validate(&self) -> Result<(), Error> {
        if !(2..=MAX_FACTOR_BOUND).contains(&self.factor_bound) {
            return Err(Error::InvalidBound(self.factor_bound));
        }
        if self.max_steps == 0 || self.bit_guard == 0 || self.window == 0 || self.audit_primes == Some(0) {
            return Err(Error::Parse("configuration values must be positive".into()));
        }
        Ok(())
    }

    fn limits(&self, steps: Option<usize>) -> IterationLimits {
        IterationLimits {
            max_steps: steps.unwrap_or(self.max_steps),
            bit_guard: self.bit_guard,
        }
    }

    fn behavior(&self) -> BehaviorConfig {
        BehaviorConfig {
            window: self.window,
            ..BehaviorConfig::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify every rational fixed point at every place
    Classify {
        #[arg(long, allow_hyphen_values = true, env = "ADELIC_MAP")]
        map: MoebiusMap,
    },
    /// Iterate one orbit exactly at a place and judge its behaviour
    Iterate {
        #[arg(long, allow_hyphen_values = true, env = "ADELIC_MAP")]
        map: MoebiusMap,
        #[arg(long, allow_hyphen_values = true, env = "ADELIC_X0")]
        x0: Rational,
        /// "real" or a prime
        #[arg(long, env = "ADELIC_PLACE")]
        place: Place,
        #[arg(long, env = "ADELIC_STEPS")]
        steps: Option<usize>,
        /// Reference fixed point (default: attractive at the place, else nearest to x0)
        #[arg(long, allow_hyphen_values = true, env = "ADELIC_XI")]
        xi: Option<Rational>,
        /// Emit the trajectory as JSON lines {n, x, dist} instead of one document
        #[arg(long, env = "ADELIC_JSON_LINES")]
        json_lines: bool,
    },
    /// Apply the map componentwise to an adele
    AdeleStep {
        #[arg(long, allow_hyphen_values = true, env = "ADELIC_MAP")]
        map: MoebiusMap,
        /// Start from the principal adele of this rational
        #[arg(long, allow_hyphen_values = true, env = "ADELIC_X0")]
        x0: Rational,
        /// Override one p-adic component, as p=value
        #[arg(long = "set", value_name = "P=VALUE", allow_hyphen_values = true)]
        set: Vec<String>,
        #[arg(long, default_value_t = 1, env = "ADELIC_STEPS")]
        steps: usize,
    },
    /// Judge every start of bounded height
    Basin {
        #[arg(long, allow_hyphen_values = true, env = "ADELIC_MAP")]
        map: MoebiusMap,
        #[arg(long, env = "ADELIC_PLACE")]
        place: Place,
        #[arg(long, env = "ADELIC_HEIGHT")]
        height: u64,
        #[arg(long, env = "ADELIC_STEPS")]
        steps: Option<usize>,
        /// Reference fixed point (default: attractive at the place, else the smallest)
        #[arg(long, allow_hyphen_values = true, env = "ADELIC_XI")]
        xi: Option<Rational>,
    },
    /// Break |r|_∞ ∏ |r|_p into its factors
    ProductFormula {
        #[arg(short = 'r', long = "rational", allow_hyphen_values = true, env = "ADELIC_R")]
        r: Rational,
    },
    /// Build a member of one of the five integer families and classify it
    Modular {
        #[arg(long, env = "ADELIC_FAMILY")]
        family: u8,
        /// "+" or "-"
        #[arg(long, allow_hyphen_values = true, env = "ADELIC_SIGN")]
        sign: Sign,
        #[arg(long, allow_hyphen_values = true, env = "ADELIC_C")]
        c: Option<Integer>,
        #[arg(long, allow_hyphen_values = true, env = "ADELIC_A")]
        a: Option<Integer>,
    },
    /// Build a map from the constraints of case A-F and compare its tables
    Case {
        #[arg(long, env = "ADELIC_TAG")]
        tag: CaseTag,
        #[arg(long, allow_hyphen_values = true, env = "ADELIC_A")]
        a: Option<Rational>,
        #[arg(long, allow_hyphen_values = true, env = "ADELIC_C")]
        c: Option<Rational>,
        #[arg(long, allow_hyphen_values = true, env = "ADELIC_D")]
        d: Option<Rational>,
        /// Case B: a − b
        #[arg(long, allow_hyphen_values = true, env = "ADELIC_T")]
        t: Option<Rational>,
        /// Cases C and D: the sign of a ± c
        #[arg(long, allow_hyphen_values = true, env = "ADELIC_SIGN")]
        sign: Option<Sign>,
    },
    /// Compare the cross-ratio of four points before and after the map
    CrossRatio {
        #[arg(long, allow_hyphen_values = true, env = "ADELIC_MAP")]
        map: MoebiusMap,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, env = "ADELIC_POINTS")]
        points: Vec<Rational>,
    },
}

/// A command's result in both renderings.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: String,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub default_format: OutputFormat,
}

impl Output {
    fn new<T: Serialize>(doc: &T, headers: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        Output {
            json: serde_json::to_string_pretty(doc).expect("documents serialize"),
            headers,
            rows,
            default_format: OutputFormat::Json,
        }
    }

    /// Bytes to print on standard output.
    pub fn render(&self, format: Option<OutputFormat>) -> String {
        match format.unwrap_or(self.default_format) {
            OutputFormat::Json => format!("{}\n", self.json),
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers).expect("in-memory write");
                for row in &self.rows {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
            }
            OutputFormat::Table => {
                let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
                for row in &self.rows {
                    for (w, cell) in widths.iter_mut().zip(row) {
                        *w = (*w).max(cell.chars().count());
                    }
                }
                let line = |cells: Vec<&str>| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect();
                    format!("{}\n", padded.join("  ").trim_end())
                };
                let mut out = line(self.headers.clone());
                for row in &self.rows {
                    out.push_str(&line(row.iter().map(String::as_str).collect()));
                }
                out
            }
        }
    }
}

/// Stable exit code for a library error: 2 bad input, 3 outside the
/// mathematics handled, 4 resource guard.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::FactorizationIncomplete { .. } | Error::ExponentTooLarge(_) => EXIT_RESOURCE,
        Error::NonRationalFixedPoints { .. }
        | Error::CIsZero
        | Error::DIsZero
        | Error::NonSquareDeterminant { .. }
        | Error::NotUnimodular { .. }
        | Error::NotIndifferent
        | Error::PoleAtPlace(_) => EXIT_DOMAIN,
        _ => EXIT_INPUT,
    }
}

pub fn run(cli: &Cli) -> Result<Output, Error> {
    let cfg = &cli.config;
    cfg.validate()?;
    match &cli.command {
        Command::Classify { map } => classify(map, cfg),
        Command::Iterate {
            map,
            x0,
            place,
            steps,
            xi,
            json_lines,
        } => iterate(map, x0, *place, *steps, xi.as_ref(), *json_lines, cfg),
        Command::AdeleStep { map, x0, set, steps } => adele_step(map, x0, set, *steps, cfg),
        Command::Basin {
            map,
            place,
            height,
            steps,
            xi,
        } => basin(map, *place, *height, *steps, xi.as_ref(), cfg),
        Command::ProductFormula { r } => product_formula(r, cfg),
        Command::Modular { family, sign, c, a } => modular(*family, *sign, c.as_ref(), a.as_ref(), cfg),
        Command::Case { tag, a, c, d, t, sign } => {
            let map = build_case(*tag, a.as_ref(), c.as_ref(), d.as_ref(), t.as_ref(), *sign)?;
            case(*tag, &map, cfg)
        }
        Command::CrossRatio { map, points } => cross_ratio_cmd(map, points),
    }
}

#[derive(Serialize)]
struct Audit {
    limit: u64,
    primes_checked: usize,
    all_indifferent: bool,
}

#[derive(Serialize)]
struct ClassifyDoc<'a> {
    map: &'a MoebiusMap,
    det: &'a Rational,
    /// Cases are recognized on the map scaled to determinant one.
    unit_det_map: Option<MoebiusMap>,
    cases: BTreeSet<CaseTag>,
    exceptional_primes: BTreeSet<Prime>,
    reports: Vec<AdelicFixedPointReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    audit: Option<Audit>,
}

fn report_rows(reports: &[AdelicFixedPointReport], prefix: Option<&str>) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for r in reports {
        for pc in r.listed() {
            rows.push(vec![
                r.xi.to_string(),
                pc.place.to_string(),
                pc.kind.to_string(),
                pc.multiplier_norm.to_string(),
            ]);
        }
        rows.push(vec![
            r.xi.to_string(),
            "other".into(),
            r.default_kind().to_string(),
            Rational::one().to_string(),
        ]);
    }
    if let Some(p) = prefix {
        for row in &mut rows {
            row.insert(0, p.to_string());
        }
    }
    rows
}

fn audit(m: &MoebiusMap, reports: &[AdelicFixedPointReport], limit: u64) -> Result<Audit, Error> {
    let mut checked = 0;
    let mut all_indifferent = true;
    for r in reports {
        for p in primes_up_to(limit) {
            if r.finite_exceptions.contains_key(&p) {
                continue;
            }
            checked += 1;
            all_indifferent &= classify_at_place(m, &r.xi, Place::Finite(p))?.kind == Kind::Indifferent;
        }
    }
    Ok(Audit {
        limit,
        primes_checked: checked,
        all_indifferent,
    })
}

fn classify_doc<'a>(m: &'a MoebiusMap, cfg: &RunConfig) -> Result<ClassifyDoc<'a>, Error> {
    let reports = adelic_report_with(m, cfg.factor_bound)?;
    let unit_det_map = match m.rescale_to_unit_det() {
        Ok(u) => Some(u),
        Err(Error::NonSquareDeterminant { .. }) => None,
        Err(e) => return Err(e),
    };
    let cases = match &unit_det_map {
        Some(u) => recognize_case(u)?,
        None => BTreeSet::new(),
    };
    let exceptional_primes = reports
        .iter()
        .flat_map(|r| r.finite_exceptions.keys().copied())
        .collect();
    let audit = cfg.audit_primes.map(|n| audit(m, &reports, n)).transpose()?;
    Ok(ClassifyDoc {
        map: m,
        det: m.det(),
        unit_det_map,
        cases,
        exceptional_primes,
        reports,
        audit,
    })
}

pub fn classify(m: &MoebiusMap, cfg: &RunConfig) -> Result<Output, Error> {
    let doc = classify_doc(m, cfg)?;
    let rows = report_rows(&doc.reports, None);
    Ok(Output::new(&doc, vec!["xi", "place", "kind", "multiplier_norm"], rows))
}

/// The fixed point attractive at `place`, or failing that the one nearest
/// to `x0` on the real line.
fn default_xi(m: &MoebiusMap, x0: &Rational, place: Place) -> Result<Rational, Error> {
    let points = m.fixed_points()?.to_vec();
    for xi in &points {
        if classify_at_place(m, xi, place)?.kind == Kind::Attractive {
            return Ok(xi.clone());
        }
    }
    Ok(points
        .into_iter()
        .min_by_key(|xi| (xi - x0).abs())
        .expect("at least one fixed point"))
}

#[derive(Serialize)]
struct IterateDoc<'a> {
    map: &'a MoebiusMap,
    x0: &'a Rational,
    trajectory: TrajectoryRecord,
    verdict: BehaviorVerdict,
}

pub fn iterate(
    m: &MoebiusMap,
    x0: &Rational,
    place: Place,
    steps: Option<usize>,
    xi: Option<&Rational>,
    json_lines: bool,
    cfg: &RunConfig,
) -> Result<Output, Error> {
    let xi = match xi {
        Some(xi) => xi.clone(),
        None => default_xi(m, x0, place)?,
    };
    let trajectory = iterate_at_place(m, x0, &xi, place, cfg.limits(steps))?;
    // Short runs are judged on all the steps they have.
    let mut behavior = cfg.behavior();
    behavior.window = behavior.window.min(trajectory.steps.len().saturating_sub(1)).max(1);
    let verdict = detect_behavior(&trajectory, m, &behavior)?;
    let rows = trajectory
        .steps
        .iter()
        .map(|s| vec![s.n.to_string(), s.x.to_string(), s.dist.to_string()])
        .collect();
    let lines = trajectory.to_json_lines();
    let mut out = Output::new(
        &IterateDoc {
            map: m,
            x0,
            trajectory,
            verdict,
        },
        vec!["n", "x", "dist"],
        rows,
    );
    if json_lines {
        out.json = lines.trim_end().to_string();
    }
    Ok(out)
}

fn parse_component(s: &str) -> Result<(Prime, Rational), Error> {
    let (p, v) = s
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("expected P=VALUE, got {s:?}")))?;
    let p: u64 = p.parse().map_err(|_| Error::Parse(format!("invalid prime {p:?}")))?;
    Ok((Prime::new(p)?, v.parse()?))
}

#[derive(Serialize)]
struct AdeleDoc<'a> {
    map: &'a MoebiusMap,
    orbit: Vec<AdelePoint>,
}

pub fn adele_step(
    m: &MoebiusMap,
    x0: &Rational,
    set: &[String],
    steps: usize,
    cfg: &RunConfig,
) -> Result<Output, Error> {
    let mut x = AdelePoint::principal_with(x0, cfg.factor_bound)?;
    for s in set {
        let (p, v) = parse_component(s)?;
        x = x.with_component(p, v);
    }
    let mut orbit = vec![x];
    for _ in 0..steps {
        let next = step_adele_with(m, orbit.last().expect("nonempty"), cfg.factor_bound)?;
        orbit.push(next);
    }
    let mut rows = Vec::new();
    for (n, a) in orbit.iter().enumerate() {
        rows.push(vec![n.to_string(), "real".into(), a.real().to_string()]);
        for (p, v) in a.listed() {
            rows.push(vec![n.to_string(), p.to_string(), v.to_string()]);
        }
        rows.push(vec![n.to_string(), "other".into(), a.cofinite().to_string()]);
    }
    Ok(Output::new(&AdeleDoc { map: m, orbit }, vec!["n", "place", "value"], rows))
}

#[derive(Serialize)]
struct BasinDoc<'a> {
    map: &'a MoebiusMap,
    xi: &'a Rational,
    place: Place,
    height: u64,
    points: Vec<adelic_moebius::BasinPoint>,
}

pub fn basin(
    m: &MoebiusMap,
    place: Place,
    height: u64,
    steps: Option<usize>,
    xi: Option<&Rational>,
    cfg: &RunConfig,
) -> Result<Output, Error> {
    let xi = match xi {
        Some(xi) => xi.clone(),
        None => default_xi(m, &Rational::zero(), place)?,
    };
    let points = basin_sample(m, &xi, place, height, cfg.limits(steps), &cfg.behavior())?;
    let rows = points
        .iter()
        .map(|b| vec![b.x0.to_string(), b.verdict.to_string(), b.steps_used.to_string()])
        .collect();
    let mut out = Output::new(
        &BasinDoc {
            map: m,
            xi: &xi,
            place,
            height,
            points,
        },
        vec!["x0", "verdict", "steps_used"],
        rows,
    );
    out.default_format = OutputFormat::Csv;
    Ok(out)
}

pub fn product_formula(r: &Rational, cfg: &RunConfig) -> Result<Output, Error> {
    let pf = verify_product_formula(r, cfg.factor_bound)?;
    let mut rows: Vec<Vec<String>> = pf
        .factors
        .iter()
        .map(|(place, norm)| vec![place.to_string(), norm.to_string()])
        .collect();
    rows.push(vec!["product".into(), pf.product.to_string()]);
    Ok(Output::new(&pf, vec!["place", "norm"], rows))
}

#[derive(Serialize)]
struct Parameter {
    name: char,
    value: String,
}

#[derive(Serialize)]
struct ModularDoc<'a> {
    family: u8,
    sign: String,
    parameter: Parameter,
    classification: ClassifyDoc<'a>,
}

pub fn modular(
    family: u8,
    sign: Sign,
    c: Option<&Integer>,
    a: Option<&Integer>,
    cfg: &RunConfig,
) -> Result<Output, Error> {
    let name = modular_family_parameter(family)?;
    let value = match (name, c, a) {
        ('c', Some(v), None) | ('a', None, Some(v)) => v,
        _ => return Err(Error::Parse(format!("family {family} takes exactly --{name}"))),
    };
    let map = modular_family(family, sign, value)?;
    let classification = classify_doc(&map, cfg)?;
    let rows = report_rows(&classification.reports, None);
    let doc = ModularDoc {
        family,
        sign: sign.to_string(),
        parameter: Parameter {
            name,
            value: value.to_string(),
        },
        classification,
    };
    Ok(Output::new(&doc, vec!["xi", "place", "kind", "multiplier_norm"], rows))
}

fn need<'a, T>(v: Option<&'a T>, tag: CaseTag, name: &str) -> Result<&'a T, Error> {
    v.ok_or_else(|| Error::Parse(format!("case {tag} needs --{name}")))
}

/// A determinant-one map satisfying the constraints of `tag`, built from
/// its free parameters: A(c, d), B(t = a − b), C and D(c, sign),
/// E and F(a, c).
pub fn build_case(
    tag: CaseTag,
    a: Option<&Rational>,
    c: Option<&Rational>,
    d: Option<&Rational>,
    t: Option<&Rational>,
    sign: Option<Sign>,
) -> Result<MoebiusMap, Error> {
    let one = Rational::one();
    let two = Rational::from(2);
    let s = || need(sign.as_ref(), tag, "sign").map(|s| Rational::from(s.value()));
    let (a, b, c, d) = match tag {
        CaseTag::A => {
            let (c, d) = (need(c, tag, "c")?, need(d, tag, "d")?);
            (d.recip()?, Rational::zero(), c.clone(), d.clone())
        }
        CaseTag::B => {
            let t = need(t, tag, "t")?;
            let inv = t.recip()?;
            let a = (t + &inv) / &two;
            let b = (&inv - t) / &two;
            (a.clone(), b.clone(), b, a)
        }
        CaseTag::C => {
            let c = need(c, tag, "c")?;
            let a = s()? - c;
            let d = &a + &two * c;
            (a, -c, c.clone(), d)
        }
        CaseTag::D => {
            let c = need(c, tag, "c")?;
            let a = s()? + c;
            let d = &a - &two * c;
            (a, -c, c.clone(), d)
        }
        CaseTag::E | CaseTag::F => {
            let (a, c) = (need(a, tag, "a")?, need(c, tag, "c")?);
            let (shift, d) = if tag == CaseTag::E {
                (a - &one, &two - a)
            } else {
                (a + &one, -a - &two)
            };
            let b = -(shift.square().checked_div(c)?);
            (a.clone(), b, c.clone(), d)
        }
    };
    MoebiusMap::new(a, b, c, d)
}

#[derive(Serialize)]
struct CaseDoc<'a> {
    tag: CaseTag,
    map: &'a MoebiusMap,
    recognized: BTreeSet<CaseTag>,
    predicted: Vec<AdelicFixedPointReport>,
    evaluated: Vec<AdelicFixedPointReport>,
    agree: bool,
}

pub fn case(tag: CaseTag, m: &MoebiusMap, cfg: &RunConfig) -> Result<Output, Error> {
    let recognized = recognize_case(m)?;
    let predicted = case_predicted_report_with(tag, m, cfg.factor_bound)?;
    let evaluated = adelic_report_with(m, cfg.factor_bound)?;
    let mut rows = report_rows(&predicted, Some("predicted"));
    rows.extend(report_rows(&evaluated, Some("evaluated")));
    let doc = CaseDoc {
        tag,
        map: m,
        recognized,
        agree: predicted == evaluated,
        predicted,
        evaluated,
    };
    Ok(Output::new(&doc, vec!["source", "xi", "place", "kind", "multiplier_norm"], rows))
}

#[derive(Serialize)]
struct CrossRatioDoc<'a> {
    map: &'a MoebiusMap,
    points: &'a [Rational],
    images: Vec<Rational>,
    before: Rational,
    after: Rational,
    equal: bool,
}

pub fn cross_ratio_cmd(m: &MoebiusMap, points: &[Rational]) -> Result<Output, Error> {
    let [x1, x2, x3, x4] = points else {
        return Err(Error::Parse(format!("expected 4 points, got {}", points.len())));
    };
    if points.iter().collect::<BTreeSet<_>>().len() != 4 {
        return Err(Error::DegeneratePoints);
    }
    let images = points.iter().map(|x| m.apply(x)).collect::<Result<Vec<_>, _>>()?;
    let before = cross_ratio(x1, x2, x3, x4)?;
    let after = cross_ratio(&images[0], &images[1], &images[2], &images[3])?;
    let rows = vec![
        vec!["before".to_string(), before.to_string()],
        vec!["after".to_string(), after.to_string()],
    ];
    let doc = CrossRatioDoc {
        map: m,
        points,
        equal: before == after,
        images,
        before,
        after,
    };
    Ok(Output::new(&doc, vec!["side", "cross_ratio"], rows))
}
