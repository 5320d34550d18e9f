//! Sobolev–Poincaré constants of the unit disc and the Dirichlet spectrum of the disc.
//!
//! The two infima over the Talenti exponent `p` are evaluated in log space in
//! the coordinate "distance from the left end of the admissible interval",
//! with `2 - p` carried separately so the singular factor `(p-1)/(2-p)` never
//! suffers cancellation.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::optimize::{minimize_open_interval, IntervalPoint, MinimumKind, ScanOptions};
use crate::scalar::Real;
use crate::specialfn::{bessel_zero, jn, ln_gamma_positive, zeros_below};

/// Integrability exponent of the conformal derivative, `α ∈ (2, ∞]`.
///
/// Finite values are stored as the excess `α - 2`, which keeps full relative
/// precision for the near-critical exponents that arise for quasidiscs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha<T> {
    Finite { excess: T },
    Infinite,
}

impl<T: Real> Alpha<T> {
    pub fn finite(alpha: T) -> Result<Self> {
        if !(alpha > T::two()) || !alpha.is_finite() {
            return Err(domain("alpha", alpha.as_f64(), "2 < alpha <= inf"));
        }
        Ok(Alpha::Finite {
            excess: alpha - T::two(),
        })
    }

    pub fn from_excess(excess: T) -> Result<Self> {
        if !(excess > T::zero()) || !excess.is_finite() {
            return Err(domain("alpha - 2", excess.as_f64(), "alpha - 2 > 0"));
        }
        Ok(Alpha::Finite { excess })
    }

    pub fn infinite() -> Self {
        Alpha::Infinite
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Alpha::Infinite)
    }

    /// `α` itself; `+∞` for the infinite exponent.
    pub fn value(&self) -> T {
        match *self {
            Alpha::Finite { excess } => T::two() + excess,
            Alpha::Infinite => T::infinity(),
        }
    }

    pub fn excess(&self) -> Option<T> {
        match *self {
            Alpha::Finite { excess } => Some(excess),
            Alpha::Infinite => None,
        }
    }

    /// `1/α`, zero at infinity.
    pub fn reciprocal(&self) -> T {
        match *self {
            Alpha::Finite { excess } => T::one() / (T::two() + excess),
            Alpha::Infinite => T::zero(),
        }
    }

    /// `r = 4α/(α-2)`, the Lebesgue exponent paired with `α`.
    pub fn sobolev_exponent(&self) -> T {
        match *self {
            Alpha::Finite { excess } => T::lit(4.0) * (T::two() + excess) / excess,
            Alpha::Infinite => T::lit(4.0),
        }
    }

    /// `‖1 | L^α(𝔻)‖ = π^{1/α}`.
    pub fn unit_disc_norm(&self) -> T {
        T::PI().powf(self.reciprocal())
    }

    /// Exponent `-(α+2)/(2α)` of π in the γ_α objective.
    fn pi_exponent(&self) -> T {
        match *self {
            Alpha::Finite { excess } => {
                -(T::lit(4.0) + excess) / (T::two() * (T::two() + excess))
            }
            Alpha::Infinite => -T::half(),
        }
    }

    /// Left end of the p-interval minus one: `4α/(3α-2) - 1 = (α+2)/(3α-2)`.
    fn p_lower_minus_one(&self) -> T {
        match *self {
            Alpha::Finite { excess } => {
                (T::lit(4.0) + excess) / (T::lit(4.0) + T::lit(3.0) * excess)
            }
            Alpha::Infinite => T::one() / T::lit(3.0),
        }
    }

    /// Width of the p-interval: `2 - 4α/(3α-2) = 2(α-2)/(3α-2)`.
    fn p_interval_width(&self) -> T {
        match *self {
            Alpha::Finite { excess } => {
                T::two() * excess / (T::lit(4.0) + T::lit(3.0) * excess)
            }
            Alpha::Infinite => T::two() / T::lit(3.0),
        }
    }

    /// Admissible open p-interval `(4α/(3α-2), 2)`.
    pub fn p_interval(&self) -> (T, T) {
        (T::one() + self.p_lower_minus_one(), T::two())
    }
}

impl<T: Real> fmt::Display for Alpha<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Finite { .. } => write!(f, "{}", self.value()),
            Alpha::Infinite => f.write_str("inf"),
        }
    }
}

impl<T: Real> FromStr for Alpha<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Alpha::Infinite),
            other => {
                let v: f64 = other
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("cannot parse alpha from {s:?}")))?;
                Alpha::finite(T::lit(v))
            }
        }
    }
}

impl<T: Real> Serialize for Alpha<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Alpha::Finite { .. } => self.value().serialize(serializer),
            Alpha::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de, T: Real> Deserialize<'de> for Alpha<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr<T> {
            Number(T),
            Text(String),
        }
        match Repr::<T>::deserialize(deserializer)? {
            Repr::Number(v) => Alpha::finite(v).map_err(de::Error::custom),
            Repr::Text(s) => s.parse().map_err(de::Error::custom),
        }
    }
}

/// Shared log-objective
/// `k(p-1)/p · ln((p-1)/(2-p)) + e·ln π - (k/p) ln 2 - (k/2)(ln Γ(2/p) + ln Γ(3-2/p))`.
/// `k = 1` is the Poincaré objective, `k = 2` its square (the γ_α objective).
fn ln_talenti_objective<T: Real>(p_minus_one: T, two_minus_p: T, power: T, pi_exponent: T) -> T {
    let p = T::one() + p_minus_one;
    power * p_minus_one / p * (p_minus_one / two_minus_p).ln() + pi_exponent * T::PI().ln()
        - power / p * T::two().ln()
        - power * T::half() * (ln_gamma_positive(T::two() / p) + ln_gamma_positive(T::lit(3.0) - T::two() / p))
}

/// Sharp Sobolev constant `A_{p,q}(ℝ²)` with `q = 2p/(2-p)`.
pub fn talenti_constant<T: Real>(p: T) -> Result<T> {
    if !(p > T::one() && p < T::two()) {
        return Err(domain("p", p.as_f64(), "1 < p < 2"));
    }
    let ln = ln_talenti_objective(p - T::one(), T::two() - p, T::one(), -T::half());
    Ok(ln.exp())
}

fn check_sobolev_exponent<T: Real>(r: T) -> Result<()> {
    if !(r >= T::two()) || !r.is_finite() {
        return Err(domain("r", r.as_f64(), "finite r >= 2"));
    }
    Ok(())
}

/// Admissible p-interval `(2r/(r+2), 2)` of the Poincaré bound.
pub fn poincare_p_interval<T: Real>(r: T) -> Result<(T, T)> {
    check_sobolev_exponent(r)?;
    Ok((T::two() * r / (r + T::two()), T::two()))
}

/// Poincaré objective at a given admissible `p`.
pub fn poincare_objective<T: Real>(r: T, p: T) -> Result<T> {
    let (lo, hi) = poincare_p_interval(r)?;
    if !(p > lo && p < hi) {
        return Err(domain("p", p.as_f64(), "2r/(r+2) < p < 2"));
    }
    let pi_exp = (T::two() - r) / (T::two() * r);
    Ok(ln_talenti_objective(p - T::one(), T::two() - p, T::one(), pi_exp).exp())
}

/// The same constant assembled from the two Hölder steps and the Talenti
/// estimate: `π^{(q-r)/(qr)} · π^{(2-p)/(2p)} · A_{p,q}(ℝ²)`, `q = 2p/(2-p)`.
pub fn poincare_proof_chain<T: Real>(r: T, p: T) -> Result<T> {
    let (lo, hi) = poincare_p_interval(r)?;
    if !(p > lo && p < hi) {
        return Err(domain("p", p.as_f64(), "2r/(r+2) < p < 2"));
    }
    let q = T::two() * p / (T::two() - p);
    let lq_to_lr = T::PI().powf((q - r) / (q * r));
    let gradient_lp_to_l2 = T::PI().powf((T::two() - p) / (T::two() * p));
    Ok(lq_to_lr * gradient_lp_to_l2 * talenti_constant(p)?)
}

/// `γ_α` objective at a given admissible `p`.
pub fn gamma_alpha_objective<T: Real>(alpha: Alpha<T>, p: T) -> Result<T> {
    let (lo, hi) = alpha.p_interval();
    if !(p > lo && p < hi) {
        return Err(domain("p", p.as_f64(), "4α/(3α-2) < p < 2"));
    }
    Ok(ln_talenti_objective(p - T::one(), T::two() - p, T::two(), alpha.pi_exponent()).exp())
}

/// Result of minimizing one of the p-objectives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Infimum<T> {
    pub value: T,
    pub ln_value: T,
    /// Minimizing `p` (strictly inside the admissible interval).
    pub argmin: T,
    /// `2 - argmin`, kept separately for near-critical intervals.
    pub argmin_gap: T,
    pub interval: (T, T),
    pub kind: MinimumKind,
    pub interior_certified: bool,
}

impl<T: Real> Infimum<T> {
    pub fn trace(&self, name: &str, formula_id: &str) -> ConstantTrace<T> {
        ConstantTrace {
            name: name.to_owned(),
            value: self.value,
            log10_value: Some(self.ln_value / T::LN_10()),
            optimizer_argument: Some(self.argmin),
            admissible_interval: Some(self.interval),
            minimum_kind: Some(self.kind),
            formula_id: formula_id.to_owned(),
        }
    }
}

fn p_infimum<T: Real>(p_lower_minus_one: T, width: T, power: T, pi_exponent: T) -> Result<Infimum<T>> {
    let objective = |pt: IntervalPoint<T>| {
        ln_talenti_objective(p_lower_minus_one + pt.from_lower, pt.from_upper, power, pi_exponent)
    };
    let min = minimize_open_interval(objective, width, ScanOptions::default())?;
    let argmin = T::one() + p_lower_minus_one + min.argmin.from_lower;
    Ok(Infimum {
        value: min.value.exp(),
        ln_value: min.value,
        argmin,
        argmin_gap: min.argmin.from_upper,
        interval: (T::one() + p_lower_minus_one, T::two()),
        kind: min.kind,
        interior_certified: min.interior_certified,
    })
}

/// Natural log of the γ_α objective at a point of the p-interval given by its
/// distances to both ends, and the interval width.
pub(crate) fn ln_gamma_alpha_objective_at<T: Real>(alpha: Alpha<T>, pt: IntervalPoint<T>) -> T {
    ln_talenti_objective(alpha.p_lower_minus_one() + pt.from_lower, pt.from_upper, T::two(), alpha.pi_exponent())
}

pub(crate) fn gamma_alpha_p_width<T: Real>(alpha: Alpha<T>) -> T {
    alpha.p_interval_width()
}

/// Upper bound for the Poincaré–Sobolev constant `A_{r,2}(𝔻)`: the infimum
/// of the Talenti-based objective over `p ∈ (2r/(r+2), 2)`.
pub fn poincare_constant_bound<T: Real>(r: T) -> Result<Infimum<T>> {
    check_sobolev_exponent(r)?;
    let p_lower_minus_one = (r - T::two()) / (r + T::two());
    let width = T::lit(4.0) / (r + T::two());
    let pi_exp = (T::two() - r) / (T::two() * r);
    p_infimum(p_lower_minus_one, width, T::one(), pi_exp)
}

/// `γ_α`, the bound on `A²_{r,2}(𝔻)` at `r = 4α/(α-2)`.
pub fn gamma_alpha<T: Real>(alpha: Alpha<T>) -> Result<Infimum<T>> {
    p_infimum(alpha.p_lower_minus_one(), alpha.p_interval_width(), T::two(), alpha.pi_exponent())
}

/// Provenance record for a constant consumed by a bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantTrace<T> {
    pub name: String,
    pub value: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log10_value: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimizer_argument: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub admissible_interval: Option<(T, T)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimum_kind: Option<MinimumKind>,
    pub formula_id: String,
}

impl<T: Real> ConstantTrace<T> {
    pub fn plain(name: &str, value: T, formula_id: &str) -> Self {
        Self {
            name: name.to_owned(),
            value,
            log10_value: None,
            optimizer_argument: None,
            admissible_interval: None,
            minimum_kind: None,
            formula_id: formula_id.to_owned(),
        }
    }
}

/// A Dirichlet mode of the unit disc, `J_m(j_{m,l} r) e^{±imθ}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiscMode {
    pub order: u32,
    pub index: u32,
}

/// Dirichlet eigenvalues of the unit disc.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscConstants<T> {
    pub j01: T,
    pub j11: T,
    /// `J_1(j_{0,1})`, used by the Payne–Weinberger estimate.
    pub j1_at_j01: T,
    pub lambda1_disc: T,
    pub lambda2_disc: T,
    pub lambda_star: T,
    /// Eigenvalues with multiplicity, non-decreasing.
    pub spectrum: Vec<T>,
    pub modes: Vec<DiscMode>,
}

pub const MAX_DISC_SPECTRUM: usize = 50;

/// First `count` Dirichlet eigenvalues `j_{m,l}²` of the unit disc, orders
/// `m >= 1` counted twice.
pub fn disc_spectrum<T: Real>(count: usize) -> Result<DiscConstants<T>> {
    if count == 0 || count > MAX_DISC_SPECTRUM {
        return Err(domain("count", count as f64, "1 <= count <= 50"));
    }
    // Weyl: λ_k ≈ 4k on the unit disc
    let mut x_max = (T::lit(4.0) * T::from_count(count) + T::lit(10.0)).sqrt();
    loop {
        let (spectrum, modes) = disc_modes_below(x_max);
        if spectrum.len() >= count && spectrum[count - 1] * T::lit(1.2) <= x_max * x_max {
            return Ok(assemble_disc_constants(count, spectrum, modes));
        }
        x_max = x_max * T::lit(1.3);
    }
}

/// Every disc eigenvalue `<= x_max²`, sorted, with multiplicity.
pub(crate) fn disc_modes_below<T: Real>(x_max: T) -> (Vec<T>, Vec<DiscMode>) {
    // j_{m,1} > m, so orders beyond x_max contribute nothing
    let max_order = x_max.floor().to_u32().unwrap_or(0);
    let tables = zeros_below(max_order, x_max);
    let mut entries: Vec<(T, DiscMode)> = Vec::new();
    for (m, table) in tables.iter().enumerate() {
        for (l, &z) in table.iter().enumerate() {
            let mode = DiscMode {
                order: m as u32,
                index: l as u32 + 1,
            };
            let copies = if m == 0 { 1 } else { 2 };
            for _ in 0..copies {
                entries.push((z * z, mode));
            }
        }
    }
    entries.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .expect("finite eigenvalues")
            .then(a.1.order.cmp(&b.1.order))
            .then(a.1.index.cmp(&b.1.index))
    });
    entries.into_iter().unzip()
}

fn assemble_disc_constants<T: Real>(count: usize, mut spectrum: Vec<T>, mut modes: Vec<DiscMode>) -> DiscConstants<T> {
    spectrum.truncate(count);
    modes.truncate(count);
    let j01: T = bessel_zero(0, 1).expect("k = 1 is valid");
    let j11: T = bessel_zero(1, 1).expect("k = 1 is valid");
    let lambda1_disc = j01 * j01;
    let lambda2_disc = j11 * j11;
    DiscConstants {
        j01,
        j11,
        j1_at_j01: jn(1, j01),
        lambda1_disc,
        lambda2_disc,
        lambda_star: lambda2_disc / lambda1_disc,
        spectrum,
        modes,
    }
}

impl<T: Real> DiscConstants<T> {
    /// k-th eigenvalue (1-based).
    pub fn eigenvalue(&self, k: usize) -> Option<T> {
        k.checked_sub(1).and_then(|i| self.spectrum.get(i).copied())
    }

    /// `λ₁(𝔻_ρ) = j²_{0,1}/ρ²`.
    pub fn lambda1_of_radius(&self, rho: T) -> T {
        self.lambda1_disc / (rho * rho)
    }

    pub fn traces(&self) -> Vec<ConstantTrace<T>> {
        vec![
            ConstantTrace::plain("lambda1_disc", self.lambda1_disc, "lambda_1(D) = j_{0,1}^2"),
            ConstantTrace::plain("lambda2_disc", self.lambda2_disc, "lambda_2(D) = j_{1,1}^2"),
            ConstantTrace::plain("lambda_star", self.lambda_star, "lambda_* = lambda_2(D)/lambda_1(D)"),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn talenti_reference_value() {
        // 30-digit reference at p = 3/2
        let v = talenti_constant(1.5_f64).unwrap();
        assert!((v - 0.395_853_998_666_190_35).abs() < 1e-14);
        let direct = 1.0 / (std::f64::consts::PI.sqrt() * 2f64.powf(2.0 / 3.0))
            / (crate::specialfn::gamma(4.0_f64 / 3.0).unwrap() * crate::specialfn::gamma(5.0_f64 / 3.0).unwrap()).sqrt();
        assert!((v - direct).abs() < 1e-14);
    }

    #[test]
    fn talenti_blows_up_near_two() {
        // grows like (2-p)^{-1/2}
        let near = talenti_constant(2.0 - 1e-9_f64).unwrap();
        assert!(near > 1e4 && near * 1e-1 < talenti_constant(2.0 - 1e-11_f64).unwrap());
        assert!(talenti_constant(1.0_f64).is_err());
        assert!(talenti_constant(2.0_f64).is_err());
    }

    #[test]
    fn talenti_at_1_9_exceeds_composite_minimum() {
        // grid scan of the r = 2 composite objective over (1.01, 1.99)
        let mut best = f64::INFINITY;
        for i in 0..=9800 {
            let p = 1.01 + 0.98 * i as f64 / 9800.0;
            best = best.min(poincare_objective(2.0, p).unwrap());
        }
        assert!(talenti_constant(1.9_f64).unwrap() > best);
    }

    #[test]
    fn poincare_r2_has_interior_minimum() {
        let inf = poincare_constant_bound(2.0_f64).unwrap();
        assert_eq!(inf.kind, MinimumKind::Interior);
        assert!(inf.interior_certified);
        // 30-digit reference: minimizer p ≈ 1.0720097653, value ≈ 0.4671552175
        assert!((inf.value - 0.467_155_217_462_895_56).abs() < 1e-12);
        assert!((inf.argmin - 1.072_009_765_301_879).abs() < 1e-6);
        let chain = poincare_proof_chain(2.0, inf.argmin).unwrap();
        assert!((chain - inf.value).abs() < 1e-12 * inf.value);
    }

    #[test]
    fn poincare_infimum_moves_to_left_endpoint_for_larger_r() {
        // the stationary point p ≈ 1.072 leaves the interval once 2r/(r+2) > 1.072
        for &r in &[3.0_f64, 4.0, 8.0, 50.0] {
            let inf = poincare_constant_bound(r).unwrap();
            assert_eq!(inf.kind, MinimumKind::LowerEndpoint, "r = {r}");
            assert!(inf.argmin > inf.interval.0 && inf.argmin < inf.interval.1);
        }
        let inf = poincare_constant_bound(4.0_f64).unwrap();
        // limit value at p = 4/3 from the 30-digit oracle
        assert!((inf.value - 0.423_777_208_123_757_6).abs() < 1e-8);
    }

    #[test]
    fn midpoint_objective_dominates_infimum() {
        for &r in &[2.0_f64, 2.5, 4.0, 10.0] {
            let inf = poincare_constant_bound(r).unwrap();
            let mid = 0.5 * (2.0 * r / (r + 2.0) + 2.0);
            assert!(poincare_objective(r, mid).unwrap() >= inf.value);
        }
    }

    #[test]
    fn gamma_infinity_below_one_fifth() {
        let g = gamma_alpha(Alpha::<f64>::infinite()).unwrap();
        assert!(g.value < 0.2);
        // limit value at p = 4/3 from the 30-digit oracle
        assert!((g.value - 0.179_587_122_125_166_56).abs() < 1e-9);
        assert!(g.argmin > 4.0 / 3.0 && g.argmin < 2.0);
    }

    #[test]
    fn gamma_alpha_is_square_of_poincare_bound() {
        for alpha in [Alpha::finite(3.0_f64).unwrap(), Alpha::finite(4.0).unwrap(), Alpha::finite(8.0).unwrap(), Alpha::finite(100.0).unwrap(), Alpha::infinite()] {
            let g = gamma_alpha(alpha).unwrap();
            let a = poincare_constant_bound(alpha.sobolev_exponent()).unwrap();
            assert!(((a.value * a.value) / g.value - 1.0).abs() < 1e-10, "alpha = {alpha}");
        }
    }

    #[test]
    fn gamma_alpha_4_matches_dense_scan() {
        let alpha = Alpha::finite(4.0_f64).unwrap();
        let g = gamma_alpha(alpha).unwrap();
        let (lo, hi) = alpha.p_interval();
        assert!((lo - 1.6).abs() < 1e-15 && hi == 2.0);
        let n = 100_000;
        let mut best = f64::INFINITY;
        for i in 1..n {
            let p = lo + (hi - lo) * i as f64 / n as f64;
            best = best.min(gamma_alpha_objective(alpha, p).unwrap());
        }
        // the scan's first node sits 4e-6 inside the interval; the objective
        // slope there bounds the discrepancy
        let slope_gap = gamma_alpha_objective(alpha, lo + 4e-6).unwrap() - g.value;
        assert!(g.value <= best + 1e-15);
        assert!((best - g.value).abs() <= slope_gap + 1e-8);
        // limit value at p = 8/5 from the 30-digit oracle
        assert!((g.value - 0.289_902_795_081_705_83).abs() < 1e-8);
    }

    #[test]
    fn gamma_alpha_converges_to_infinite_case() {
        let g_inf = gamma_alpha(Alpha::<f64>::infinite()).unwrap().value;
        let mut previous = f64::INFINITY;
        for &a in &[10.0, 1e2, 1e3, 1e4] {
            let d = (gamma_alpha(Alpha::finite(a).unwrap()).unwrap().value - g_inf).abs();
            assert!(d < previous, "alpha = {a}");
            previous = d;
        }
    }

    #[test]
    fn proof_chain_identity_on_grid() {
        for &r in &[2.0_f64, 3.0, 4.0, 7.5, 20.0] {
            let (lo, hi) = poincare_p_interval(r).unwrap();
            for i in 1..10 {
                let p = lo + (hi - lo) * i as f64 / 10.0;
                let a = poincare_objective(r, p).unwrap();
                let b = poincare_proof_chain(r, p).unwrap();
                assert!((a - b).abs() < 1e-12 * a, "r = {r}, p = {p}");
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(poincare_constant_bound(1.5_f64).is_err());
        assert!(Alpha::finite(2.0_f64).is_err());
        assert!(Alpha::finite(1.0_f64).is_err());
        assert!(Alpha::<f64>::from_excess(0.0).is_err());
        assert!(gamma_alpha_objective(Alpha::<f64>::infinite(), 1.2).is_err());
        assert!(poincare_objective(3.0_f64, 1.1).is_err());
    }

    #[test]
    fn alpha_parsing_and_serde() {
        let a: Alpha<f64> = "inf".parse().unwrap();
        assert!(a.is_infinite());
        let b: Alpha<f64> = "4".parse().unwrap();
        assert_eq!(b.value(), 4.0);
        assert_eq!(b.sobolev_exponent(), 8.0);
        assert!("2".parse::<Alpha<f64>>().is_err());
        assert!("abc".parse::<Alpha<f64>>().is_err());
        assert_eq!(serde_json::to_string(&a).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&b).unwrap(), "4.0");
        let back: Alpha<f64> = serde_json::from_str("\"inf\"").unwrap();
        assert!(back.is_infinite());
        let back: Alpha<f64> = serde_json::from_str("8.0").unwrap();
        assert_eq!(back.value(), 8.0);
    }

    #[test]
    fn disc_spectrum_leading_values() {
        let d = disc_spectrum::<f64>(3).unwrap();
        assert_eq!(d.spectrum, vec![d.j01 * d.j01, d.j11 * d.j11, d.j11 * d.j11]);
        assert_eq!(d.spectrum[0], d.lambda1_disc);
        assert!((d.spectrum[0] - 5.783).abs() < 1e-3);
        assert!((d.spectrum[1] / d.spectrum[0] - 2.539).abs() < 1e-3);
        assert!(d.lambda_star > 2.53 && d.lambda_star < 2.55);
        assert!((d.j1_at_j01 - 0.519_147_497_289_466_8).abs() < 1e-13);
    }

    #[test]
    fn disc_spectrum_guard_is_complete() {
        for count in [1, 7, 20, 50] {
            let d = disc_spectrum::<f64>(count).unwrap();
            assert_eq!(d.spectrum.len(), count);
            let (wide, _) = disc_modes_below(2.0 * d.spectrum[count - 1].sqrt());
            assert_eq!(&wide[..count], &d.spectrum[..], "count = {count}");
            for w in d.spectrum.windows(2) {
                assert!(w[0] <= w[1]);
            }
        }
        assert!(disc_spectrum::<f64>(0).is_err());
        assert!(disc_spectrum::<f64>(51).is_err());
    }

    #[test]
    fn disc_spectrum_multiplicities() {
        let d = disc_spectrum::<f64>(12).unwrap();
        // λ4 = λ5 = j_{2,1}², λ6 = j_{0,2}²
        assert_eq!(d.modes[3], DiscMode { order: 2, index: 1 });
        assert_eq!(d.spectrum[3], d.spectrum[4]);
        assert_eq!(d.modes[5], DiscMode { order: 0, index: 2 });
    }
}
