//! Constants for K-quasidiscs and the eigenvalue bounds built from them.
//!
//! The constants reach 10^150 and beyond, so they are carried as base-10
//! logarithms. Near-critical exponents (κ just above 1, α just above 2) are
//! passed as their excess over the critical value.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::bounds::{bounds_from_slack, formula, BoundValue, SlackBounds, AREA_TOLERANCE};
use crate::constants::{gamma_alpha, gamma_alpha_p_width, ln_gamma_alpha_objective_at, Alpha, ConstantTrace, DiscConstants};
use crate::error::{domain, Error, Result};
use crate::optimize::{minimize_open_interval, IntervalPoint, MinimumKind, ScanOptions};
use crate::scalar::Real;

/// A nonnegative real stored as its base-10 logarithm; zero is `-∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScaled<T> {
    log10: T,
}

impl<T: Real> LogScaled<T> {
    pub fn zero() -> Self {
        Self { log10: T::neg_infinity() }
    }

    pub fn one() -> Self {
        Self { log10: T::zero() }
    }

    pub fn from_log10(log10: T) -> Result<Self> {
        if log10.is_nan() || log10 == T::infinity() {
            return Err(domain("log10 value", log10.as_f64(), "finite or -inf"));
        }
        Ok(Self { log10 })
    }

    pub fn from_value(x: T) -> Result<Self> {
        if !(x >= T::zero()) || !x.is_finite() {
            return Err(domain("value", x.as_f64(), "finite x >= 0"));
        }
        Ok(Self { log10: x.log10() })
    }

    pub fn log10(&self) -> T {
        self.log10
    }

    pub fn is_zero(&self) -> bool {
        self.log10 == T::neg_infinity()
    }

    /// Linear value; `+∞` once it leaves the floating-point range.
    pub fn value(&self) -> T {
        T::lit(10.0).powf(self.log10)
    }

    /// Linear value when it is a finite float.
    pub fn to_finite(&self) -> Option<T> {
        let v = self.value();
        v.is_finite().then_some(v)
    }

    pub fn powf(self, exponent: T) -> Self {
        if self.is_zero() {
            return self;
        }
        Self { log10: self.log10 * exponent }
    }

    /// `None` when dividing by zero.
    pub fn checked_div(self, rhs: Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        Some(Self { log10: self.log10 - rhs.log10 })
    }

    /// `self - rhs`, or `None` when the difference would be negative.
    pub fn checked_sub(self, rhs: Self) -> Option<Self> {
        match self.partial_cmp(&rhs)? {
            Ordering::Less => None,
            Ordering::Equal => Some(Self::zero()),
            Ordering::Greater if rhs.is_zero() => Some(self),
            Ordering::Greater => {
                let d = (rhs.log10 - self.log10) * T::LN_10();
                Some(Self {
                    log10: self.log10 + (-d.exp_m1()).ln() / T::LN_10(),
                })
            }
        }
    }
}

impl<T: Real> Add for LogScaled<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (hi, lo) = if self.log10 >= rhs.log10 { (self, rhs) } else { (rhs, self) };
        if lo.is_zero() {
            return hi;
        }
        let d = (lo.log10 - hi.log10) * T::LN_10();
        Self {
            log10: hi.log10 + d.exp().ln_1p() / T::LN_10(),
        }
    }
}

impl<T: Real> Mul for LogScaled<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self { log10: self.log10 + rhs.log10 }
    }
}

impl<T: Real> PartialOrd for LogScaled<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.log10.partial_cmp(&other.log10)
    }
}

impl<T: Real> fmt::Display for LogScaled<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let exponent = self.log10.floor();
        let mantissa = T::lit(10.0).powf(self.log10 - exponent);
        write!(f, "{:.6}e{}", mantissa.as_f64(), exponent.as_f64())
    }
}

impl<T: Real> Serialize for LogScaled<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("LogScaled", 2)?;
        if self.is_zero() {
            s.serialize_field("log10_value", &Option::<T>::None)?;
            s.serialize_field("sign", "0")?;
        } else {
            s.serialize_field("log10_value", &self.log10)?;
            s.serialize_field("sign", "+")?;
        }
        s.end()
    }
}

/// `π²(2+π²)²/(ln 3 · ln 10)`, the shared core of both exponential factors.
fn exponential_core<T: Real>() -> T {
    let pi2 = T::PI() * T::PI();
    pi2 * (T::two() + pi2).powi(2) / (T::lit(3.0).ln() * T::LN_10())
}

/// log10 of `exp{Kπ²(2+π²)²/(2 ln 3)}` from the inverse Hölder inequality.
pub fn log10_jacobian_exponential<T: Real>(k: T) -> T {
    k * exponential_core::<T>() / T::two()
}

/// log10 of `exp{K²π²(2+π²)²/(4 ln 3)}` from the conformal-derivative bound;
/// every `M_α(K)` is at least this large.
pub fn log10_derivative_exponential<T: Real>(k: T) -> T {
    k * k * exponential_core::<T>() / T::lit(4.0)
}

fn check_k<T: Real>(k: T) -> Result<()> {
    if !(k >= T::one()) || !k.is_finite() {
        return Err(domain("K", k.as_f64(), "1 <= K < inf"));
    }
    Ok(())
}

fn check_k_strict<T: Real>(k: T) -> Result<()> {
    if !(k > T::one()) || !k.is_finite() {
        return Err(domain("K", k.as_f64(), "1 < K < inf"));
    }
    Ok(())
}

/// `1/(K-1)`, the largest admissible κ - 1; infinite for K = 1.
fn kappa_excess_ceiling<T: Real>(k: T) -> T {
    if k == T::one() {
        T::infinity()
    } else {
        T::one() / (k - T::one())
    }
}

/// `2/(K²-1) = α* - 2` with `α* = 2K²/(K²-1)`.
fn alpha_excess_ceiling<T: Real>(k: T) -> T {
    T::two() / ((k - T::one()) * (k + T::one()))
}

// log10 ν = 8κ + log10((2κ-2)/(2κ-1)) + 2κ log10(24π²K), κ = 1 + ε
fn log10_nu_unchecked<T: Real>(excess: T, k: T) -> T {
    let kappa = T::one() + excess;
    let two_eps = T::two() * excess;
    T::lit(8.0) * kappa + (two_eps / (T::one() + two_eps)).log10()
        + T::two() * kappa * (T::lit(24.0) * T::PI() * T::PI() * k).log10()
}

/// `ν` of the inverse Hölder inequality at `κ = 1 + excess`.
pub fn nu_jacobian_excess<T: Real>(excess: T, k: T) -> Result<LogScaled<T>> {
    check_k(k)?;
    if !(excess > T::zero() && excess < kappa_excess_ceiling(k)) {
        return Err(domain("kappa - 1", excess.as_f64(), "0 < kappa - 1 < 1/(K-1)"));
    }
    LogScaled::from_log10(log10_nu_unchecked(excess, k))
}

/// `ν = 10^{8κ} (2κ-2)/(2κ-1) (24π²K)^{2κ}`; the inequality needs `ν < 1`.
pub fn nu_jacobian<T: Real>(kappa: T, k: T) -> Result<LogScaled<T>> {
    nu_jacobian_excess(kappa - T::one(), k)
}

/// `ν(γ) = 10^{4γ} (γ-2)/(γ-1) (24π²K²)^γ` of the conformal-derivative bound
/// at `γ = 2 + excess`. It is the Jacobian `ν` at `κ = γ/2` with `K²`.
pub fn nu_derivative_excess<T: Real>(excess: T, k: T) -> Result<LogScaled<T>> {
    check_k(k)?;
    if !(excess > T::zero() && excess < alpha_excess_ceiling(k)) {
        return Err(domain("gamma - 2", excess.as_f64(), "2 < gamma < 2K^2/(K^2-1)"));
    }
    LogScaled::from_log10(log10_nu_unchecked(excess / T::two(), k * k))
}

/// log10 of `10⁶/P^{1/e}` for the product `P = (2κ-1)(1-ν)` and `e = 2κ`.
/// `P <= 1` gives at least 10⁶, `P > 1` less.
pub fn log10_c_from_product<T: Real>(log10_product: T, exponent: T) -> T {
    T::lit(6.0) - log10_product / exponent
}

fn infeasible<T: Real>(log10_nu: T) -> Error {
    Error::Infeasible(format!("nu >= 1 (log10 nu = {log10_nu})"))
}

/// log10 C_κ at `κ = 1 + excess`.
fn log10_c_kappa<T: Real>(excess: T, k: T) -> Result<T> {
    let nu = nu_jacobian_excess(excess, k)?;
    if !(nu.log10() < T::zero()) {
        return Err(infeasible(nu.log10()));
    }
    let one_minus_nu = LogScaled::one().checked_sub(nu).ok_or_else(|| infeasible(nu.log10()))?;
    let log10_product = (T::one() + T::two() * excess).log10() + one_minus_nu.log10();
    Ok(log10_c_from_product(log10_product, T::two() * (T::one() + excess)))
}

/// Prefactor `(C_κ² K π^{1/κ-1}/4) exp{Kπ²(2+π²)²/(2 log 3)}` of the inverse
/// Hölder inequality for Jacobians, at `κ = 1 + excess`.
pub fn inverse_holder_constant_excess<T: Real>(excess: T, k: T) -> Result<LogScaled<T>> {
    let c = log10_c_kappa(excess, k)?;
    let pi_power = -excess / (T::one() + excess);
    LogScaled::from_log10(
        T::two() * c + k.log10() + pi_power * T::PI().log10() - T::lit(4.0).log10() + log10_jacobian_exponential(k),
    )
}

pub fn inverse_holder_constant<T: Real>(kappa: T, k: T) -> Result<LogScaled<T>> {
    inverse_holder_constant_excess(kappa - T::one(), k)
}

/// Bound `(C_γ K π^{(2-γ)/(2γ)}/2) exp{K²π²(2+π²)²/(4 log 3)} |Ω|^{1/2}` on
/// `‖φ′ | L^γ(𝔻)‖` for a conformal map onto a K-quasidisc.
pub fn conformal_derivative_bound<T: Real>(gamma: Alpha<T>, k: T, area: T) -> Result<LogScaled<T>> {
    let Some(excess) = gamma.excess() else {
        return Err(domain("gamma", f64::INFINITY, "2 < gamma < 2K^2/(K^2-1)"));
    };
    if !(area > T::zero()) || !area.is_finite() {
        return Err(domain("area", area.as_f64(), "area > 0"));
    }
    nu_derivative_excess(excess, k)?;
    // C_γ is C_κ at κ = γ/2 with K²
    let c = log10_c_kappa(excess / T::two(), k * k)?;
    let pi_power = -excess / (T::two() * (T::two() + excess));
    LogScaled::from_log10(
        c + k.log10() + pi_power * T::PI().log10() - T::two().log10()
            + log10_derivative_exponential(k)
            + T::half() * area.log10(),
    )
}

/// Largest feasible `α` for a given K, as a bisection bracket on `α - 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "T: Real")]
pub struct FeasibleAlpha<T> {
    /// The certified-feasible end of the bracket.
    pub alpha: Alpha<T>,
    pub excess_lo: T,
    pub excess_hi: T,
    pub log10_nu_lo: T,
    pub log10_nu_hi: T,
    /// `α* = 2K²/(K²-1)`.
    pub alpha_star: Alpha<T>,
}

/// Relative width of the feasibility bracket.
pub const FEASIBLE_BRACKET: f64 = 1e-12;

/// Largest `α ∈ (2, α*)` with `ν(α) < 1`. `ν` is increasing in `α`, so
/// bisection in `log(α - 2)` finds a bracket `ν(lo) < 1 <= ν(hi)`.
pub fn feasible_alpha_max<T: Real>(k: T) -> Result<FeasibleAlpha<T>> {
    check_k_strict(k)?;
    let ceiling = alpha_excess_ceiling(k);
    let f = |excess: T| log10_nu_unchecked(excess / T::two(), k * k);
    let alpha_star = Alpha::from_excess(ceiling)?;
    let mut hi = ceiling;
    if f(hi) < T::zero() {
        // not reached for any K; keep a bracket just below α*
        let lo = ceiling * (T::one() - T::lit(FEASIBLE_BRACKET));
        return Ok(FeasibleAlpha {
            alpha: Alpha::from_excess(lo)?,
            excess_lo: lo,
            excess_hi: hi,
            log10_nu_lo: f(lo),
            log10_nu_hi: f(hi),
            alpha_star,
        });
    }
    let mut lo = T::min_positive_value().sqrt();
    if !(f(lo) < T::zero()) {
        return Err(Error::Infeasible(format!("nu >= 1 already at alpha - 2 = {lo}")));
    }
    for _ in 0..400 {
        if hi / lo - T::one() <= T::lit(FEASIBLE_BRACKET) {
            break;
        }
        let mid = if hi / lo < T::two() {
            lo + (hi - lo) * T::half()
        } else {
            (lo.ln() * T::half() + hi.ln() * T::half()).exp()
        };
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(FeasibleAlpha {
        alpha: Alpha::from_excess(lo)?,
        excess_lo: lo,
        excess_hi: hi,
        log10_nu_lo: f(lo),
        log10_nu_hi: f(hi),
        alpha_star,
    })
}

/// Inner infimum over `p` of the `M_α(K)` display at a fixed `α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "T: Real")]
pub struct MAlphaInner<T> {
    pub alpha: Alpha<T>,
    pub value: LogScaled<T>,
    /// `C_α K π^{(2-α)/(2α)}/2 · exp{…} |Ω|^{1/2} + π^{1/α}`.
    pub bracket: LogScaled<T>,
    pub p_opt: T,
    pub p_opt_gap: T,
}

/// Minimizes the full product objective over `p`; the bracket does not depend
/// on `p`, so this is `γ_α` times the bracket.
pub fn m_alpha_inner<T: Real>(alpha: Alpha<T>, k: T, area: T) -> Result<MAlphaInner<T>> {
    let bracket = conformal_derivative_bound(alpha, k, area)? + LogScaled::from_value(alpha.unit_disc_norm())?;
    let ln_bracket = bracket.log10() * T::LN_10();
    let objective = |pt: IntervalPoint<T>| ln_gamma_alpha_objective_at(alpha, pt) + ln_bracket;
    let min = minimize_open_interval(objective, gamma_alpha_p_width(alpha), ScanOptions::default())?;
    let (p_lo, _) = alpha.p_interval();
    Ok(MAlphaInner {
        alpha,
        value: LogScaled::from_log10(min.value / T::LN_10())?,
        bracket,
        p_opt: p_lo + min.argmin.from_lower,
        p_opt_gap: min.argmin.from_upper,
    })
}

/// Span in `ln(α - 2)` searched below the feasibility limit.
const OUTER_LOG_SPAN: f64 = 60.0;

/// `M_α(K)` with its minimizers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "T: Real")]
pub struct MAlpha<T> {
    pub value: LogScaled<T>,
    pub alpha_opt: Alpha<T>,
    pub p_opt: T,
    pub gamma_alpha_at_opt: T,
    pub conformal_bound_at_opt: LogScaled<T>,
    pub kind: MinimumKind,
    pub feasible: FeasibleAlpha<T>,
}

/// `M_α(K)`: infimum over feasible `α ∈ (2, α*)` of [`m_alpha_inner`],
/// searched in `ln(α - 2)` over a span of e^60 below the feasibility limit.
pub fn m_alpha<T: Real>(k: T, area: T) -> Result<MAlpha<T>> {
    let feasible = feasible_alpha_max(k)?;
    let top = feasible.excess_lo;
    let excess_at = |pt: IntervalPoint<T>| top * (-pt.from_upper).exp();
    let objective = |pt: IntervalPoint<T>| {
        Alpha::from_excess(excess_at(pt))
            .and_then(|a| m_alpha_inner(a, k, area))
            .map_or(T::infinity(), |m| m.value.log10())
    };
    let min = minimize_open_interval(objective, T::lit(OUTER_LOG_SPAN), ScanOptions::default())?;
    let alpha_opt = Alpha::from_excess(excess_at(min.argmin))?;
    let inner = m_alpha_inner(alpha_opt, k, area)?;
    Ok(MAlpha {
        value: inner.value,
        alpha_opt,
        p_opt: inner.p_opt,
        gamma_alpha_at_opt: gamma_alpha(alpha_opt)?.value,
        conformal_bound_at_opt: conformal_derivative_bound(alpha_opt, k, area)?,
        kind: min.kind,
        feasible,
    })
}

/// Sign of a log-domain bound value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// A bound that may be far outside floating-point range: sign and log10 of
/// its magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "T: Real")]
pub struct LogBound<T> {
    pub sign: Sign,
    pub magnitude: LogScaled<T>,
    /// The value itself when it came from ordinary arithmetic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linear: Option<T>,
    pub vacuous: bool,
    pub provenance: &'static str,
}

impl<T: Real> LogBound<T> {
    fn signed(positive: bool, magnitude: LogScaled<T>, lower: bool, provenance: &'static str) -> Self {
        let sign = if magnitude.is_zero() {
            Sign::Zero
        } else if positive {
            Sign::Positive
        } else {
            Sign::Negative
        };
        Self {
            sign,
            magnitude,
            linear: None,
            vacuous: lower && sign != Sign::Positive,
            provenance,
        }
    }

    fn from_linear(b: BoundValue<T>) -> Self {
        let magnitude = LogScaled::from_value(b.value.abs()).unwrap_or(LogScaled { log10: T::infinity() });
        Self {
            vacuous: b.vacuous,
            linear: Some(b.value),
            ..Self::signed(b.value >= T::zero(), magnitude, false, b.provenance)
        }
    }

    /// `a - b` for nonnegative log-domain operands.
    fn difference(a: LogScaled<T>, b: LogScaled<T>, provenance: &'static str) -> Self {
        match a.checked_sub(b) {
            Some(d) => Self::signed(true, d, true, provenance),
            None => Self::signed(false, b.checked_sub(a).unwrap_or(LogScaled::zero()), true, provenance),
        }
    }

    /// Linear value, `±∞` when out of range.
    pub fn value(&self) -> T {
        if let Some(v) = self.linear {
            return v;
        }
        match self.sign {
            Sign::Zero => T::zero(),
            Sign::Positive => self.magnitude.value(),
            Sign::Negative => -self.magnitude.value(),
        }
    }
}

/// The first-two-eigenvalue bounds for a slack of any size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "T: Real")]
pub struct LogSlackBounds<T> {
    pub slack: LogScaled<T>,
    pub lambda1_upper: LogBound<T>,
    pub lambda2_lower: LogBound<T>,
    pub ratio_lower: LogBound<T>,
    pub gap_lower: LogBound<T>,
    /// The same bounds in ordinary arithmetic when the slack is a moderate float.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linear: Option<SlackBounds<T>>,
}

/// Largest log10 slack that goes through the ordinary-arithmetic path.
const LINEAR_LOG10_LIMIT: f64 = 200.0;

/// Bounds from a slack term. Moderate slacks go through
/// [`bounds_from_slack`], the path the conformal bounds use.
pub fn bounds_from_log_slack<T: Real>(lambda1_disc: T, lambda2_disc: T, slack: LogScaled<T>) -> Result<LogSlackBounds<T>> {
    if slack.log10() < T::lit(LINEAR_LOG10_LIMIT) {
        return Ok(linear_bounds(bounds_from_slack(lambda1_disc, lambda2_disc, slack.value())));
    }
    let star = lambda2_disc / lambda1_disc;
    let l1 = LogScaled::from_value(lambda1_disc)?;
    let l2 = LogScaled::from_value(lambda2_disc)?;
    let star2 = LogScaled::from_value(star * star)?;
    let upper = l1 + slack;
    let lambda2_lower = LogBound::difference(l2, star2 * slack, formula::LAMBDA2_LOWER);
    let ratio_magnitude = lambda2_lower.magnitude.checked_div(upper).unwrap_or(LogScaled::zero());
    let ratio_lower = LogBound {
        magnitude: ratio_magnitude,
        provenance: formula::RATIO_LOWER,
        ..lambda2_lower
    };
    let gap = LogScaled::from_value(lambda2_disc - lambda1_disc)?;
    Ok(LogSlackBounds {
        slack,
        lambda1_upper: LogBound::signed(true, upper, false, formula::LAMBDA1_UPPER),
        lambda2_lower,
        ratio_lower,
        gap_lower: LogBound::difference(gap, (star2 + LogScaled::one()) * slack, formula::GAP_LOWER),
        linear: None,
    })
}

fn linear_bounds<T: Real>(sb: SlackBounds<T>) -> LogSlackBounds<T> {
    LogSlackBounds {
        slack: LogScaled::from_value(sb.slack).unwrap_or(LogScaled { log10: T::infinity() }),
        lambda1_upper: LogBound::from_linear(sb.lambda1_upper),
        lambda2_lower: LogBound::from_linear(sb.lambda2_lower),
        ratio_lower: LogBound::from_linear(sb.ratio_lower),
        gap_lower: LogBound::from_linear(sb.gap_lower),
        linear: Some(sb),
    }
}

/// Bounds with slack `λ₁(𝔻_ρ)² · M · ‖φ′ - 1‖₂` for any constant `M`.
/// With `M = γ_α(‖φ′‖_α + π^{1/α})` these are the conformal bounds.
pub fn bounds_with_constant<T: Real>(
    lambda1_disc: T,
    lambda2_disc: T,
    rho: T,
    constant: LogScaled<T>,
    deviation_l2: T,
) -> Result<LogSlackBounds<T>> {
    if !(rho > T::zero()) || !rho.is_finite() {
        return Err(domain("rho", rho.as_f64(), "rho > 0"));
    }
    if !(deviation_l2 >= T::zero()) || !deviation_l2.is_finite() {
        return Err(domain("deviation", deviation_l2.as_f64(), "finite deviation >= 0"));
    }
    let lr = lambda1_disc / (rho * rho);
    let linear = constant.to_finite().map(|m| lr * lr * m * deviation_l2);
    let slack = match linear {
        Some(s) if s.is_finite() => LogScaled::from_value(s)?,
        _ => LogScaled::from_value(lr * lr)? * constant * LogScaled::from_value(deviation_l2)?,
    };
    if slack.log10() < T::lit(LINEAR_LOG10_LIMIT) {
        if let Some(s) = linear {
            return Ok(linear_bounds(bounds_from_slack(lambda1_disc, lambda2_disc, s)));
        }
    }
    bounds_from_log_slack(lambda1_disc, lambda2_disc, slack)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "T: Real")]
pub struct QuasidiscParams<T> {
    pub k: T,
    pub alpha_star: Alpha<T>,
    pub feasible_alpha_max: Alpha<T>,
    pub area: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "T: Real")]
pub struct QuasidiscReport<T> {
    pub params: QuasidiscParams<T>,
    pub rho: T,
    pub deviation_l2: T,
    pub m_alpha: MAlpha<T>,
    pub bounds: LogSlackBounds<T>,
    pub constants_used: Vec<ConstantTrace<T>>,
}

/// The first-two-eigenvalue bounds for a K-quasidisc of area π.
pub fn quasidisc_bounds<T: Real>(
    disc: &DiscConstants<T>,
    k: T,
    rho: T,
    deviation_l2: T,
    area: T,
) -> Result<QuasidiscReport<T>> {
    check_k_strict(k)?;
    if (area - T::PI()).abs() > T::lit(AREA_TOLERANCE) {
        return Err(Error::InvalidInput(format!("the bounds assume |Omega| = pi, got area {area}")));
    }
    let m = m_alpha(k, area)?;
    let bounds = bounds_with_constant(disc.lambda1_disc, disc.lambda2_disc, rho, m.value, deviation_l2)?;
    let mut constants_used = disc.traces();
    constants_used.push(ConstantTrace {
        log10_value: Some(m.value.log10()),
        optimizer_argument: Some(m.alpha_opt.value()),
        minimum_kind: Some(m.kind),
        ..ConstantTrace::plain("M_alpha(K)", m.value.value(), "quasidisc.m_alpha")
    });
    constants_used.push(ConstantTrace {
        admissible_interval: Some((m.feasible.excess_lo, m.feasible.excess_hi)),
        ..ConstantTrace::plain("feasible_alpha_max", m.feasible.alpha.value(), "quasidisc.feasible_alpha_max")
    });
    constants_used.push(ConstantTrace {
        optimizer_argument: Some(m.p_opt),
        ..ConstantTrace::plain("gamma_alpha(alpha_opt)", m.gamma_alpha_at_opt, "constants.gamma_alpha")
    });
    Ok(QuasidiscReport {
        params: QuasidiscParams {
            k,
            alpha_star: m.feasible.alpha_star,
            feasible_alpha_max: m.feasible.alpha,
            area,
        },
        rho,
        deviation_l2,
        m_alpha: m,
        bounds,
        constants_used,
    })
}
