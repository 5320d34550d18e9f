//! Report assembly: each subcommand composes the core pipeline into one
//! serializable value. Nothing here depends on the clock or the thread count.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use sgb_core::bounds::{
    epicycloid_c, formula, high_eigenvalue_bounds, high_ratio_lower, BoundInputs, BoundReport, BoundValue,
    HighEigenvalueBounds, AREA_TOLERANCE,
};
use sgb_core::confmap::{
    area, boundary_length, certify_disc_containment, derivative_norm, deviation_norm_l2, inscribed_radius,
    ContainmentCertificate, ContainmentOptions, InradiusMode, MapDefinition, MapFamily, PolynomialMap,
    QuadratureOptions,
};
use sgb_core::constants::{disc_spectrum, gamma_alpha, poincare_constant_bound, Alpha, ConstantTrace, DiscConstants};
use sgb_core::eigensolver::{solve_domain, BoundaryTreatment, Domain, EigenOptions, EigenResult, SolveOptions};
use sgb_core::quasidisc::{
    log10_derivative_exponential, m_alpha, quasidisc_bounds, FeasibleAlpha, LogSlackBounds, MAlpha,
};

use crate::args::{BoundsArgs, DomainArgs, Family, QuasidiscArgs, SolveArgs, SolverArgs, SweepArgs};
use crate::UsageError;

pub const SCHEMA: &str = "sgb/1";

/// Environment variable overriding the quadrature tolerance.
pub const QUAD_TOL_VAR: &str = "SGB_QUAD_TOL";

const DISC_EIGENVALUES: usize = 12;
const PERIMETER_SAMPLES: usize = 1 << 14;

/// A number with the formula it came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quantity {
    pub value: f64,
    pub provenance: &'static str,
}

fn q(value: f64, provenance: &'static str) -> Quantity {
    Quantity { value, provenance }
}

/// A core value tagged with the formula it comes from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Traced<T> {
    #[serde(flatten)]
    pub inner: T,
    pub provenance: &'static str,
}

fn traced<T>(inner: T, provenance: &'static str) -> Traced<T> {
    Traced { inner, provenance }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub bounds: (f64, f64),
    pub provenance: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Series {
    pub values: Vec<f64>,
    pub provenance: &'static str,
}

/// Shared inputs of every command.
#[derive(Debug, Clone)]
pub struct Settings {
    pub quadrature: QuadratureOptions,
    pub disc: DiscConstants<f64>,
}

impl Settings {
    pub fn new(quad_tol: Option<&str>) -> Result<Self> {
        let quadrature = match quad_tol {
            Some(s) => {
                let tol: f64 = s
                    .trim()
                    .parse()
                    .map_err(|_| UsageError(format!("{QUAD_TOL_VAR} must be a number, got {s:?}")))?;
                QuadratureOptions::with_tolerance(tol).map_err(|e| UsageError(format!("{QUAD_TOL_VAR}: {e}")))?
            }
            None => QuadratureOptions::default(),
        };
        Ok(Self {
            quadrature,
            disc: disc_spectrum(DISC_EIGENVALUES)?,
        })
    }

    pub fn from_env() -> Result<Self> {
        Self::new(std::env::var(QUAD_TOL_VAR).ok().as_deref())
    }
}

mod provenance {
    pub const J01: &str = "first positive zero of J_0";
    pub const J11: &str = "first positive zero of J_1";
    pub const J1_AT_J01: &str = "J_1(j_{0,1})";
    pub const LAMBDA1_DISC: &str = "lambda_1(D) = j_{0,1}^2";
    pub const LAMBDA2_DISC: &str = "lambda_2(D) = j_{1,1}^2";
    pub const LAMBDA_STAR: &str = "lambda_* = j_{1,1}^2/j_{0,1}^2";
    pub const R: &str = "r = 4 alpha/(alpha - 2)";
    pub const GAMMA: &str = "gamma_alpha = inf_p of the Talenti objective";
    pub const P_OPT: &str = "minimizing p of the gamma_alpha objective";
    pub const POINCARE: &str = "A_{r,2}(D) <= inf_p of the Talenti-based objective";
    pub const AREA: &str = "|Omega| = pi sum_j j |c_j|^2";
    pub const PERIMETER: &str = "trapezoid sum of |phi'| on the unit circle";
    pub const RHO_FORMULA: &str = "rho = ((n-1)/(n+1))^(3/4)";
    pub const RHO_NUMERIC: &str = "grid scan of the distance to the boundary polygon";
    pub const RHO_DISC: &str = "inscribed radius of the unit disc";
    pub const DERIVATIVE_NORM: &str = "||phi'||_{L^alpha(D)}";
    pub const DEVIATION: &str = "||phi' - 1||_{L^2(D)}";
    pub const VARIATION: &str = "V <= (||phi'||_alpha + pi^(1/alpha)) ||phi' - 1||_2";
    pub const DILATION: &str = "t = k^2/(k-1)^2 with D inside t Omega_k";
    pub const H: &str = "grid spacing of the coarse grid";
    pub const FINE: &str = "eigenvalues on the grid of spacing h/2";
    pub const COARSE: &str = "eigenvalues on the grid of spacing h";
    pub const EXTRAPOLATED: &str = "Richardson (4 lambda(h/2) - lambda(h))/3";
    pub const BAND: &str = "|lambda(h) - lambda(h/2)|";
    pub const ESTIMATE: &str = "extrapolated value, or the h/2 value on cusped domains";
    pub const K: &str = "quasiconformality constant";
    pub const LOG10_M: &str = "log10 M_alpha(K), minimized over feasible alpha";
    pub const EXP_TERM: &str = "log10 exp{K^2 pi^2 (2+pi^2)^2/(4 ln 3)}";
    pub const CERTIFICATE: &str = "samples of the closed unit disc inside t Omega, with the least margin";
    pub const HIGH: &str = "D inside t Omega gives lambda_k(D)/t^2 scaling bounds";
    pub const FEASIBLE: &str = "largest alpha with nu(alpha) < 1, bisection on alpha - 2";
    pub const M_ALPHA: &str = "M_alpha = gamma_alpha (conformal derivative bound), minimized over feasible alpha";
    pub const QUASIDISC_BOUNDS: &str = "s = lambda1(D_rho)^2 M_alpha(K) ||phi' - 1||_2, sign and log10 magnitude";
}

// ---------------------------------------------------------------- constants

#[derive(Debug, Clone, Serialize)]
pub struct DiscSection {
    pub j01: Quantity,
    pub j11: Quantity,
    pub j1_at_j01: Quantity,
    pub lambda1_disc: Quantity,
    pub lambda2_disc: Quantity,
    pub lambda_star: Quantity,
}

impl DiscSection {
    fn new(d: &DiscConstants<f64>) -> Self {
        use provenance::*;
        Self {
            j01: q(d.j01, J01),
            j11: q(d.j11, J11),
            j1_at_j01: q(d.j1_at_j01, J1_AT_J01),
            lambda1_disc: q(d.lambda1_disc, LAMBDA1_DISC),
            lambda2_disc: q(d.lambda2_disc, LAMBDA2_DISC),
            lambda_star: q(d.lambda_star, LAMBDA_STAR),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaSection {
    pub alpha: Alpha<f64>,
    pub r: Quantity,
    pub gamma_alpha: Quantity,
    pub p_opt: Quantity,
    pub p_interval: Interval,
    pub minimum_kind: sgb_core::optimize::MinimumKind,
    pub interior_certified: bool,
    pub poincare_bound: Quantity,
}

fn gamma_section(alpha: Alpha<f64>) -> Result<GammaSection> {
    use provenance::*;
    let g = gamma_alpha(alpha)?;
    let r = alpha.sobolev_exponent();
    let a = poincare_constant_bound(r)?;
    Ok(GammaSection {
        alpha,
        r: q(r, R),
        gamma_alpha: q(g.value, GAMMA),
        p_opt: q(g.argmin, P_OPT),
        p_interval: Interval {
            bounds: g.interval,
            provenance: "admissible p in (4 alpha/(3 alpha - 2), 2)",
        },
        minimum_kind: g.kind,
        interior_certified: g.interior_certified,
        poincare_bound: q(a.value, POINCARE),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstantsReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub disc: DiscSection,
    pub alphas: Vec<GammaSection>,
}

pub fn constants(alphas: &[Alpha<f64>], settings: &Settings) -> Result<ConstantsReport> {
    Ok(ConstantsReport {
        schema: SCHEMA,
        command: "constants",
        disc: DiscSection::new(&settings.disc),
        alphas: alphas.iter().map(|&a| gamma_section(a)).collect::<Result<_>>()?,
    })
}

// ---------------------------------------------------------------- domains

/// A domain named on the command line.
#[derive(Debug, Clone)]
pub struct ResolvedDomain {
    pub family: String,
    pub parameter: Option<u32>,
    pub map: PolynomialMap<f64>,
    /// `t` with `𝔻 ⊆ tΩ`, for the section-4 family.
    pub dilation: Option<f64>,
}

pub fn read_map(path: &Path) -> Result<PolynomialMap<f64>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading map {}", path.display()))?;
    let def: MapDefinition =
        serde_json::from_str(&text).map_err(|e| UsageError(format!("map {}: {e}", path.display())))?;
    Ok(def.into_map()?)
}

pub fn resolve_domain(args: &DomainArgs) -> Result<ResolvedDomain> {
    if let Some(path) = &args.map {
        return Ok(ResolvedDomain {
            family: "custom".into(),
            parameter: None,
            map: read_map(path)?,
            dilation: None,
        });
    }
    let unused = |flag: &str| UsageError(format!("{flag} does not apply to the {} family", args.family));
    match args.family {
        Family::Disc => {
            if args.n.is_some() {
                bail!(unused("--n"));
            }
            if args.k.is_some() {
                bail!(unused("--k"));
            }
            Ok(ResolvedDomain {
                family: "disc".into(),
                parameter: None,
                map: PolynomialMap::identity(),
                dilation: None,
            })
        }
        Family::Epicycloid => {
            if args.k.is_some() {
                bail!(unused("--k"));
            }
            let n = args.n.ok_or_else(|| UsageError("the epicycloid family needs --n".into()))?;
            Ok(ResolvedDomain {
                family: "epicycloid".into(),
                parameter: Some(n),
                map: PolynomialMap::epicycloid(n).map_err(usage)?,
                dilation: None,
            })
        }
        Family::Section4 => {
            if args.n.is_some() {
                bail!(unused("--n"));
            }
            let k = args.k.ok_or_else(|| UsageError("the section4 family needs --k".into()))?;
            let (map, t) = PolynomialMap::section4(k).map_err(usage)?;
            Ok(ResolvedDomain {
                family: "section4".into(),
                parameter: Some(k),
                map,
                dilation: Some(t),
            })
        }
    }
}

/// Parameter errors of a family constructor are usage errors.
fn usage(e: sgb_core::Error) -> UsageError {
    UsageError(e.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct DomainSection {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<u32>,
    pub map: MapDefinition,
    pub provenance: &'static str,
}

impl From<&ResolvedDomain> for DomainSection {
    fn from(d: &ResolvedDomain) -> Self {
        Self {
            family: d.family.clone(),
            parameter: d.parameter,
            map: MapDefinition::from(&d.map),
            provenance: "coefficients [re, im] of phi(z) = sum_j c_j z^j",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Geometry {
    pub area: Quantity,
    pub perimeter: Quantity,
    pub rho: Quantity,
    pub derivative_norm: Quantity,
    pub deviation_l2: Quantity,
    pub variation: Quantity,
}

fn inradius(map: &PolynomialMap<f64>) -> Result<Quantity> {
    Ok(match map.family() {
        MapFamily::Identity => q(1.0, provenance::RHO_DISC),
        MapFamily::Epicycloid { .. } => q(inscribed_radius(map, InradiusMode::Formula)?, provenance::RHO_FORMULA),
        _ => q(inscribed_radius(map, InradiusMode::Numeric)?, provenance::RHO_NUMERIC),
    })
}

fn geometry(map: &PolynomialMap<f64>, alpha: Alpha<f64>, quadrature: &QuadratureOptions) -> Result<Geometry> {
    use provenance::*;
    let norm = derivative_norm(map, alpha, quadrature);
    let deviation = deviation_norm_l2(map);
    Ok(Geometry {
        area: q(area(map), AREA),
        perimeter: q(boundary_length(map, PERIMETER_SAMPLES), PERIMETER),
        rho: inradius(map)?,
        derivative_norm: q(norm, DERIVATIVE_NORM),
        deviation_l2: q(deviation, DEVIATION),
        variation: q((norm + alpha.unit_disc_norm()) * deviation, VARIATION),
    })
}

// ---------------------------------------------------------------- solver

#[derive(Debug, Clone, Serialize)]
pub struct SolverSection {
    pub h: Quantity,
    pub boundary: BoundaryTreatment,
    pub cusped: bool,
    pub unknowns: usize,
    pub iterations: usize,
    pub eigenvalues: Series,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coarse: Option<Series>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extrapolated: Option<Series>,
    pub band: Series,
    pub estimate: Series,
    pub method: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
}

impl SolverSection {
    fn new(result: &EigenResult<f64>, coarse_h: f64) -> Self {
        use provenance::*;
        let count = result.eigenvalues.len();
        Self {
            h: q(coarse_h, H),
            boundary: result.boundary,
            cusped: result.cusped,
            unknowns: result.unknowns,
            iterations: result.iterations,
            eigenvalues: Series {
                values: result.eigenvalues.clone(),
                provenance: if result.coarse.is_some() { FINE } else { COARSE },
            },
            coarse: result.coarse.as_ref().map(|c| Series {
                values: c.eigenvalues.clone(),
                provenance: COARSE,
            }),
            extrapolated: result.extrapolated.as_ref().map(|e| Series {
                values: e.clone(),
                provenance: EXTRAPOLATED,
            }),
            band: Series {
                values: (1..=count).map(|k| result.band_of(k)).collect(),
                provenance: BAND,
            },
            estimate: Series {
                values: (1..=count).filter_map(|k| result.estimate(k)).collect(),
                provenance: ESTIMATE,
            },
            method: result.provenance,
            checks: Vec::new(),
        }
    }

    fn estimate(&self, k: usize) -> f64 {
        self.estimate.values[k - 1]
    }

    fn band(&self, k: usize) -> f64 {
        self.band.values[k - 1]
    }

    fn ratio_band(&self) -> f64 {
        let (l1, l2) = (self.estimate(1), self.estimate(2));
        (self.band(2) + l2 / l1 * self.band(1)) / l1
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// One side of a sandwich: `observed <= bound + band` or `observed >= bound - band`.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub relation: &'static str,
    pub observed: f64,
    pub bound: f64,
    pub band: f64,
    pub vacuous: bool,
    pub pass: bool,
    pub provenance: &'static str,
}

impl Check {
    fn at_most(name: impl Into<String>, observed: f64, bound: f64, band: f64, provenance: &'static str) -> Self {
        Self {
            name: name.into(),
            relation: "<=",
            observed,
            bound,
            band,
            vacuous: false,
            pass: observed <= bound + band,
            provenance,
        }
    }

    fn at_least(name: impl Into<String>, observed: f64, bound: BoundValue<f64>, band: f64) -> Self {
        Self {
            name: name.into(),
            relation: ">=",
            observed,
            bound: bound.value,
            band,
            vacuous: bound.vacuous,
            pass: observed >= bound.value - band,
            provenance: bound.provenance,
        }
    }
}

pub fn solve(domain: &ResolvedDomain, solver: &SolverArgs, count: usize, refine: bool) -> Result<EigenResult<f64>> {
    if !(solver.h > 0.0) || !solver.h.is_finite() {
        bail!(UsageError(format!("--h must be positive, got {}", solver.h)));
    }
    let target = match domain.map.family() {
        MapFamily::Identity => Domain::unit_disc(),
        _ => Domain::map(domain.map.clone()),
    };
    let options = SolveOptions {
        h: solver.h,
        refine,
        boundary: if solver.staircase {
            BoundaryTreatment::Staircase
        } else {
            BoundaryTreatment::GhostFluid
        },
        eigen: EigenOptions {
            count,
            ..EigenOptions::default()
        },
        ..SolveOptions::default()
    };
    Ok(solve_domain(&target, &options)?)
}

// ---------------------------------------------------------------- bounds

#[derive(Debug, Clone, Serialize)]
pub struct DilationSection {
    pub t: Quantity,
    pub certificate: Traced<ContainmentCertificate<f64>>,
    pub eigenvalues: Vec<Traced<HighEigenvalueBounds<f64>>>,
    pub ratio_lower: BoundValue<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub domain: DomainSection,
    pub gamma_alpha: GammaSection,
    pub geometry: Geometry,
    /// The first-two-eigenvalue bounds; they need `|Ω| = π`. Their inputs
    /// are already in `geometry` and `gamma_alpha`, with provenance.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "without_inputs")]
    pub bounds: Option<BoundReport<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dilation: Option<DilationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sandwich_pass: Option<bool>,
}

fn without_inputs<S: serde::Serializer>(report: &Option<BoundReport<f64>>, s: S) -> Result<S::Ok, S::Error> {
    let mut value = serde_json::to_value(report).map_err(serde::ser::Error::custom)?;
    if let Value::Object(map) = &mut value {
        map.remove("inputs");
    }
    value.serialize(s)
}

fn gamma_trace(g: &GammaSection) -> ConstantTrace<f64> {
    ConstantTrace {
        optimizer_argument: Some(g.p_opt.value),
        admissible_interval: Some(g.p_interval.bounds),
        minimum_kind: Some(g.minimum_kind),
        ..ConstantTrace::plain("gamma_alpha", g.gamma_alpha.value, "constants.gamma_alpha")
    }
}

pub fn bounds_for(
    domain: &ResolvedDomain,
    alpha: Alpha<f64>,
    solver: Option<&SolverArgs>,
    settings: &Settings,
) -> Result<BoundsReport> {
    let disc = &settings.disc;
    let gamma = gamma_section(alpha)?;
    let geo = geometry(&domain.map, alpha, &settings.quadrature)?;

    let bounds = if (geo.area.value - std::f64::consts::PI).abs() <= AREA_TOLERANCE {
        let inputs = BoundInputs::new(disc, geo.rho.value, alpha, geo.variation.value, gamma.gamma_alpha.value, geo.area.value)
            .with_perimeter(geo.perimeter.value);
        let mut traces = disc.traces();
        traces.push(gamma_trace(&gamma));
        Some(BoundReport::build(inputs, disc, &[1, 2], traces)?)
    } else {
        None
    };

    let dilation = match domain.dilation {
        Some(t) => {
            let certificate = certify_disc_containment(&domain.map, t, &ContainmentOptions::default())?;
            let g = gamma.gamma_alpha.value;
            let v = geo.variation.value;
            Some(DilationSection {
                t: q(t, provenance::DILATION),
                certificate: traced(certificate, provenance::CERTIFICATE),
                eigenvalues: (1..=2)
                    .map(|k| high_eigenvalue_bounds(k, &certificate, disc, g, v).map(|b| traced(b, provenance::HIGH)))
                    .collect::<sgb_core::Result<_>>()?,
                ratio_lower: high_ratio_lower(1, 2, &certificate, disc, g, v)?,
            })
        }
        None => None,
    };

    if bounds.is_none() && dilation.is_none() {
        eprintln!(
            "note: area {} differs from pi, so only the geometry is reported",
            geo.area.value
        );
    }

    let solver = match solver {
        Some(args) => {
            let result = solve(domain, args, 2, true)?;
            let mut section = SolverSection::new(&result, args.h);
            section.checks = sandwich_checks(&section, bounds.as_ref(), dilation.as_ref(), disc.lambda_star);
            Some(section)
        }
        None => None,
    };
    let sandwich_pass = solver.as_ref().map(SolverSection::all_pass);
    Ok(BoundsReport {
        schema: SCHEMA,
        command: "bounds",
        domain: domain.into(),
        gamma_alpha: gamma,
        geometry: geo,
        bounds,
        dilation,
        solver,
        sandwich_pass,
    })
}

fn sandwich_checks(
    s: &SolverSection,
    bounds: Option<&BoundReport<f64>>,
    dilation: Option<&DilationSection>,
    lambda_star: f64,
) -> Vec<Check> {
    let (l1, l2) = (s.estimate(1), s.estimate(2));
    let (b1, b2, br) = (s.band(1), s.band(2), s.ratio_band());
    let mut checks = Vec::new();
    if let Some(r) = bounds {
        checks.push(Check::at_most("lambda1_upper", l1, r.lambda1_upper.value, b1, r.lambda1_upper.provenance));
        checks.push(Check::at_least("lambda2_lower", l2, r.lambda2_lower, b2));
        checks.push(Check::at_least("ppw_ratio_lower", l2 / l1, r.ratio_lower, br));
        checks.push(Check::at_least("spectral_gap_lower", l2 - l1, r.gap_lower, b1 + b2));
        checks.push(Check::at_least("faber_krahn", l1, r.fk_lower, b1));
        if let Some(pw) = r.pw_upper {
            checks.push(Check::at_most("payne_weinberger", l1, pw.value, b1, pw.provenance));
        }
    }
    if let Some(d) = dilation {
        for h in d.eigenvalues.iter().map(|h| &h.inner) {
            let (l, b) = (s.estimate(h.k), s.band(h.k));
            checks.push(Check::at_most(format!("lambda{}_upper", h.k), l, h.upper.value, b, h.upper.provenance));
            checks.push(Check::at_least(format!("lambda{}_lower", h.k), l, h.lower, b));
        }
        checks.push(Check::at_least("ratio_lower", l2 / l1, d.ratio_lower, br));
    }
    checks.push(Check::at_most(
        "ppw_inequality",
        l2 / l1,
        lambda_star,
        br,
        "lambda_2/lambda_1 <= lambda_2(D)/lambda_1(D)",
    ));
    checks
}

pub fn bounds(args: &BoundsArgs, settings: &Settings) -> Result<BoundsReport> {
    let domain = resolve_domain(&args.domain)?;
    bounds_for(&domain, args.alpha, args.with_solver.then_some(&args.solver), settings)
}

// ---------------------------------------------------------------- quasidisc

#[derive(Debug, Clone, Serialize)]
pub struct QuasidiscOutput {
    pub schema: &'static str,
    pub command: &'static str,
    #[serde(rename = "K")]
    pub k: Quantity,
    pub area: Quantity,
    pub log10_m_alpha: Quantity,
    pub exponential_term_log10: Quantity,
    pub feasible: Traced<FeasibleAlpha<f64>>,
    pub m_alpha: Traced<MAlpha<f64>>,
    pub rho: Quantity,
    pub deviation_l2: Quantity,
    /// Absent when the area is not π.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Traced<LogSlackBounds<f64>>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub constants_used: Vec<ConstantTrace<f64>>,
}

pub fn quasidisc(args: &QuasidiscArgs, settings: &Settings) -> Result<QuasidiscOutput> {
    use provenance::*;
    let (area_value, area_source, rho, deviation) = match &args.map {
        Some(path) => {
            let map = read_map(path)?;
            (area(&map), AREA, inradius(&map)?, q(deviation_norm_l2(&map), DEVIATION))
        }
        None => (
            args.area,
            "given",
            q(args.rho, "given"),
            q(args.deviation, "given"),
        ),
    };
    let k = args.k;
    let on_pi = (area_value - std::f64::consts::PI).abs() <= AREA_TOLERANCE;
    let (m, bounds, constants_used) = if on_pi {
        let r = quasidisc_bounds(&settings.disc, k, rho.value, deviation.value, area_value).map_err(k_usage)?;
        (r.m_alpha, Some(traced(r.bounds, QUASIDISC_BOUNDS)), r.constants_used)
    } else {
        (m_alpha(k, area_value).map_err(k_usage)?, None, Vec::new())
    };
    Ok(QuasidiscOutput {
        schema: SCHEMA,
        command: "quasidisc",
        k: q(k, K),
        area: q(area_value, area_source),
        log10_m_alpha: q(m.value.log10(), LOG10_M),
        exponential_term_log10: q(log10_derivative_exponential(k), EXP_TERM),
        feasible: traced(m.feasible, FEASIBLE),
        m_alpha: traced(m, M_ALPHA),
        rho,
        deviation_l2: deviation,
        bounds,
        constants_used,
    })
}

/// Out-of-range K or area is a usage error; anything else keeps its kind.
fn k_usage(e: sgb_core::Error) -> anyhow::Error {
    match e {
        sgb_core::Error::Domain { .. } | sgb_core::Error::InvalidInput(_) => UsageError(e.to_string()).into(),
        other => other.into(),
    }
}

// ---------------------------------------------------------------- sweep

#[derive(Debug, Clone, Serialize)]
pub struct Column {
    pub name: &'static str,
    pub provenance: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub family: String,
    pub alpha: Alpha<f64>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Value>>,
}

fn col(name: &'static str, provenance: &'static str) -> Column {
    Column { name, provenance }
}

fn epicycloid_columns(with_solver: bool) -> Vec<Column> {
    let mut c = vec![
        col("n", "epicycloid degree"),
        col("variation", provenance::VARIATION),
        col("rho", provenance::RHO_FORMULA),
        col("slack", formula::SLACK),
        col("c_n", formula::EPICYCLOID_C),
        col("lambda1_upper", formula::LAMBDA1_UPPER),
        col("lambda2_lower", formula::LAMBDA2_LOWER),
        col("ratio_lower", formula::RATIO_LOWER),
        col("gap_lower", formula::GAP_LOWER),
        col("lambda2_lower_vacuous", "lambda2_lower <= 0"),
        col("ratio_lower_vacuous", "ratio_lower <= 0"),
    ];
    if with_solver {
        c.extend(solver_columns());
    }
    c
}

fn section4_columns(with_solver: bool) -> Vec<Column> {
    let mut c = vec![
        col("k", "section4 parameter"),
        col("t", provenance::DILATION),
        col("variation", provenance::VARIATION),
        col("lambda1_upper", formula::HIGH_UPPER),
        col("lambda1_lower", formula::HIGH_LOWER),
        col("lambda2_upper", formula::HIGH_UPPER),
        col("lambda2_lower", formula::HIGH_LOWER),
        col("ratio_lower", formula::HIGH_RATIO),
    ];
    if with_solver {
        c.extend(solver_columns());
    }
    c
}

fn solver_columns() -> [Column; 7] {
    [
        col("lambda1", provenance::ESTIMATE),
        col("lambda2", provenance::ESTIMATE),
        col("band1", provenance::BAND),
        col("band2", provenance::BAND),
        col("lambda1_margin", "lambda1_upper - lambda1"),
        col("ratio_margin", "lambda2/lambda1 - ratio_lower"),
        col("sandwich_pass", "every solver check passes within its band"),
    ]
}

fn solver_cells(report: &BoundsReport, lambda1_upper: f64, ratio_lower: f64) -> Vec<Value> {
    match &report.solver {
        Some(s) => {
            let (l1, l2) = (s.estimate(1), s.estimate(2));
            vec![
                json!(l1),
                json!(l2),
                json!(s.band(1)),
                json!(s.band(2)),
                json!(lambda1_upper - l1),
                json!(l2 / l1 - ratio_lower),
                json!(s.all_pass()),
            ]
        }
        None => Vec::new(),
    }
}

/// The sweep row derived from a bounds report, so a one-point sweep carries
/// exactly the numbers `bounds` prints.
pub fn sweep_row(report: &BoundsReport, gamma_infinity: f64, lambda1_disc: f64) -> Result<Vec<Value>> {
    let g = &report.geometry;
    let param = report.domain.parameter.unwrap_or(0);
    if let Some(d) = &report.dilation {
        let mut row = vec![json!(param), json!(d.t.value), json!(g.variation.value)];
        for h in d.eigenvalues.iter().map(|h| &h.inner) {
            row.push(json!(h.upper.value));
            row.push(json!(h.lower.value));
        }
        row.push(json!(d.ratio_lower.value));
        let l1_upper = d.eigenvalues[0].inner.upper.value;
        row.extend(solver_cells(report, l1_upper, d.ratio_lower.value));
        return Ok(row);
    }
    let b = report
        .bounds
        .as_ref()
        .ok_or_else(|| anyhow::anyhow!("no bounds for parameter {param}"))?;
    let c_n = if report.gamma_alpha.alpha.is_infinite() {
        json!(epicycloid_c(param, lambda1_disc, gamma_infinity)?)
    } else {
        Value::Null
    };
    let mut row = vec![
        json!(param),
        json!(g.variation.value),
        json!(g.rho.value),
        json!(b.slack.value),
        c_n,
        json!(b.lambda1_upper.value),
        json!(b.lambda2_lower.value),
        json!(b.ratio_lower.value),
        json!(b.gap_lower.value),
        json!(b.lambda2_lower.vacuous),
        json!(b.ratio_lower.vacuous),
    ];
    row.extend(solver_cells(report, b.lambda1_upper.value, b.ratio_lower.value));
    Ok(row)
}

pub fn sweep(args: &SweepArgs, settings: &Settings) -> Result<SweepReport> {
    let (params, columns) = match args.family {
        Family::Epicycloid => {
            if args.k.is_some() {
                bail!(UsageError("--k does not apply to the epicycloid family".into()));
            }
            let r = args.n.ok_or_else(|| UsageError("sweep over epicycloids needs --n a..b".into()))?;
            (r.values(), epicycloid_columns(args.with_solver))
        }
        Family::Section4 => {
            if args.n.is_some() {
                bail!(UsageError("--n does not apply to the section4 family".into()));
            }
            let r = args.k.ok_or_else(|| UsageError("sweep over section4 maps needs --k a..b".into()))?;
            (r.values(), section4_columns(args.with_solver))
        }
        Family::Disc => bail!(UsageError("the disc family has no parameter to sweep".into())),
    };
    let gamma_infinity = gamma_alpha(Alpha::<f64>::infinite())?.value;
    // indexed parallel collect keeps parameter order
    let rows = params
        .par_iter()
        .map(|&p| {
            let domain = resolve_domain(&DomainArgs {
                family: args.family,
                n: (args.family == Family::Epicycloid).then_some(p),
                k: (args.family == Family::Section4).then_some(p),
                map: None,
            })?;
            let report = bounds_for(&domain, args.alpha, args.with_solver.then_some(&args.solver), settings)?;
            sweep_row(&report, gamma_infinity, settings.disc.lambda1_disc)
        })
        .collect::<Vec<Result<Vec<Value>>>>()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport {
        schema: SCHEMA,
        command: "sweep",
        family: args.family.to_string(),
        alpha: args.alpha,
        columns,
        rows,
    })
}

// ---------------------------------------------------------------- solve

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub domain: DomainSection,
    pub solver: SolverSection,
    /// `(h, λ₁, …, λ_k)`, coarse grid first.
    #[serde(skip)]
    pub convergence: Vec<Vec<f64>>,
}

pub fn solve_command(args: &SolveArgs) -> Result<SolveReport> {
    let domain = resolve_domain(&args.domain)?;
    let result = solve(&domain, &args.solver, args.count, !args.no_refine)?;
    Ok(SolveReport {
        schema: SCHEMA,
        command: "solve",
        domain: (&domain).into(),
        solver: SolverSection::new(&result, args.solver.h),
        convergence: result.convergence_rows(),
    })
}
