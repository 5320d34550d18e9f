//! Eigenvalue bounds for conformally regular domains, as pure functions of
//! precomputed constants.
//!
//! Everything in the first-two-eigenvalue family shares one slack term
//! `λ₁(𝔻_ρ)² γ_α V` with `λ₁(𝔻_ρ) = j₀,₁²/ρ²`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::confmap::ContainmentCertificate;
use crate::constants::{Alpha, ConstantTrace, DiscConstants};
use crate::error::{domain, Error, Result};
use crate::scalar::Real;

/// Area normalization tolerance for the bounds that assume `|Ω| = π`.
pub const AREA_TOLERANCE: f64 = 1e-6;

/// A bound together with its formula; lower bounds that come out `<= 0` are
/// kept but flagged vacuous.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValue<T> {
    pub value: T,
    pub vacuous: bool,
    pub provenance: &'static str,
}

impl<T: Real> BoundValue<T> {
    fn upper(value: T, provenance: &'static str) -> Self {
        Self {
            value,
            vacuous: !value.is_finite(),
            provenance,
        }
    }

    fn lower(value: T, provenance: &'static str) -> Self {
        Self {
            value,
            vacuous: !(value > T::zero()),
            provenance,
        }
    }
}

pub mod formula {
    pub const SLACK: &str = "lambda1(D_rho)^2 * gamma_alpha * V, lambda1(D_rho) = j01^2/rho^2";
    pub const LAMBDA1_UPPER: &str = "lambda1(Omega) <= lambda1(D) + lambda1(D_rho)^2 A_{r,2}^2 V";
    pub const LAMBDA2_LOWER: &str = "lambda2(Omega) >= lambda2(D) - lambda_*^2 lambda1(D_rho)^2 A_{r,2}^2 V";
    pub const RATIO_LOWER: &str = "lambda2/lambda1 >= (lambda2(D) - lambda_*^2 s)/(lambda1(D) + s)";
    pub const GAP_LOWER: &str = "lambda2 - lambda1 >= lambda2(D) - lambda1(D) - (lambda_*^2 + 1) s";
    pub const STABILITY: &str = "|lambda_k(Omega) - lambda_k(D)| <= max(lambda_k^2) A_{r,2}^2 V, max(lambda_k^2) <= (lambda_k(D)/rho^2)^2";
    pub const PAYNE_WEINBERGER: &str = "lambda1 <= (pi j01^2/|Omega|)[1 + (1/J1(j01)^2 - 1)(|dOmega|^2/(4 pi |Omega|) - 1)]";
    pub const FABER_KRAHN: &str = "lambda1 >= pi j01^2/|Omega|";
    pub const HIGH_LOWER: &str = "lambda_k(Omega) >= lambda_k(D) - t^4 lambda_k(D)^2 A_{r,2}^2 V";
    pub const HIGH_UPPER: &str = "lambda_k(Omega) <= t^2 lambda_k(D)";
    pub const HIGH_RATIO: &str = "lambda_n/lambda_m >= (lambda_n(D) - t^4 lambda_n(D)^2 A_{r,2}^2 V)/(t^2 lambda_m(D))";
    pub const EPICYCLOID_C: &str = "C(n) = lambda1(D_rho)^2 gamma_inf (sqrt(4n/(n+1)) + 1) sqrt(2 pi (1 - sqrt(n/(n+1))))";
}

/// Everything the first-two-eigenvalue bounds consume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "T: Real")]
pub struct BoundInputs<T> {
    /// Inscribed radius of Ω.
    pub rho: T,
    pub alpha: Alpha<T>,
    /// Upper bound on `V_α⁰(𝔻, Ω)`.
    pub variation: T,
    pub gamma_alpha_value: T,
    pub area: T,
    pub perimeter: Option<T>,
    pub lambda1_disc: T,
    pub lambda2_disc: T,
}

impl<T: Real> BoundInputs<T> {
    pub fn new(disc: &DiscConstants<T>, rho: T, alpha: Alpha<T>, variation: T, gamma_alpha_value: T, area: T) -> Self {
        Self {
            rho,
            alpha,
            variation,
            gamma_alpha_value,
            area,
            perimeter: None,
            lambda1_disc: disc.lambda1_disc,
            lambda2_disc: disc.lambda2_disc,
        }
    }

    pub fn with_perimeter(mut self, perimeter: T) -> Self {
        self.perimeter = Some(perimeter);
        self
    }

    pub fn lambda_star(&self) -> T {
        self.lambda2_disc / self.lambda1_disc
    }

    /// `λ₁(𝔻_ρ) = j₀,₁²/ρ²`.
    pub fn lambda1_inscribed(&self) -> T {
        self.lambda1_disc / (self.rho * self.rho)
    }

    fn validate(&self) -> Result<()> {
        if !(self.rho > T::zero()) || !self.rho.is_finite() {
            return Err(domain("rho", self.rho.as_f64(), "rho > 0"));
        }
        if !(self.variation >= T::zero()) {
            return Err(domain("variation", self.variation.as_f64(), "V >= 0"));
        }
        if !(self.gamma_alpha_value > T::zero()) {
            return Err(domain("gamma_alpha", self.gamma_alpha_value.as_f64(), "gamma_alpha > 0"));
        }
        if (self.area - T::PI()).abs() > T::lit(AREA_TOLERANCE) {
            return Err(Error::InvalidInput(format!(
                "the bounds assume |Omega| = pi, got area {}",
                self.area
            )));
        }
        Ok(())
    }

    /// `λ₁(𝔻_ρ)² γ_α V`.
    pub fn slack(&self) -> Result<T> {
        self.validate()?;
        let l = self.lambda1_inscribed();
        Ok(l * l * self.gamma_alpha_value * self.variation)
    }
}

/// The first-two-eigenvalue bounds built from a slack term `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlackBounds<T> {
    pub slack: T,
    pub lambda1_upper: BoundValue<T>,
    pub lambda2_lower: BoundValue<T>,
    pub ratio_lower: BoundValue<T>,
    pub gap_lower: BoundValue<T>,
}

/// Shared by the conformal and the quasidisc bounds: only the slack differs.
pub fn bounds_from_slack<T: Real>(lambda1_disc: T, lambda2_disc: T, slack: T) -> SlackBounds<T> {
    let lambda_star = lambda2_disc / lambda1_disc;
    let l1 = lambda1_disc + slack;
    let l2 = lambda2_disc - lambda_star * lambda_star * slack;
    let ratio = BoundValue {
        value: l2 / l1,
        vacuous: !(l2 > T::zero()),
        provenance: formula::RATIO_LOWER,
    };
    SlackBounds {
        slack,
        lambda1_upper: BoundValue::upper(l1, formula::LAMBDA1_UPPER),
        lambda2_lower: BoundValue::lower(l2, formula::LAMBDA2_LOWER),
        ratio_lower: ratio,
        gap_lower: BoundValue::lower(
            lambda2_disc - lambda1_disc - (lambda_star * lambda_star + T::one()) * slack,
            formula::GAP_LOWER,
        ),
    }
}

fn slack_bounds<T: Real>(inputs: &BoundInputs<T>) -> Result<SlackBounds<T>> {
    Ok(bounds_from_slack(inputs.lambda1_disc, inputs.lambda2_disc, inputs.slack()?))
}

/// `max{λ_k²(Ω), λ_k²(Ω̃)} · γ_α · V`.
pub fn stability_bound<T: Real>(k: usize, lambda_k_max_sq: T, gamma_alpha_value: T, variation: T) -> Result<T> {
    if k == 0 {
        return Err(domain("k", 0.0, "k >= 1"));
    }
    for (name, v) in [
        ("lambda_k_max_sq", lambda_k_max_sq),
        ("gamma_alpha", gamma_alpha_value),
        ("variation", variation),
    ] {
        if !(v >= T::zero()) {
            return Err(domain(name, v.as_f64(), "non-negative"));
        }
    }
    Ok(lambda_k_max_sq * gamma_alpha_value * variation)
}

pub fn lambda1_upper<T: Real>(inputs: &BoundInputs<T>) -> Result<T> {
    Ok(slack_bounds(inputs)?.lambda1_upper.value)
}

pub fn lambda2_lower<T: Real>(inputs: &BoundInputs<T>) -> Result<BoundValue<T>> {
    Ok(slack_bounds(inputs)?.lambda2_lower)
}

pub fn ppw_ratio_lower<T: Real>(inputs: &BoundInputs<T>) -> Result<BoundValue<T>> {
    Ok(slack_bounds(inputs)?.ratio_lower)
}

pub fn spectral_gap_lower<T: Real>(inputs: &BoundInputs<T>) -> Result<BoundValue<T>> {
    Ok(slack_bounds(inputs)?.gap_lower)
}

/// Payne–Weinberger upper estimate for `λ₁` from area and perimeter.
pub fn payne_weinberger_upper<T: Real>(area: T, perimeter: T, disc: &DiscConstants<T>) -> Result<T> {
    if !(area > T::zero()) || !(perimeter > T::zero()) {
        return Err(Error::InvalidInput("area and perimeter must be positive".into()));
    }
    let isoperimetric = perimeter * perimeter / (T::lit(4.0) * T::PI() * area);
    // tolerate rounding in a perimeter computed for a disc
    if isoperimetric < T::one() - T::lit(1e-12) {
        return Err(Error::InvalidInput(format!(
            "perimeter {perimeter} and area {area} violate the isoperimetric inequality"
        )));
    }
    let j = disc.j1_at_j01;
    let bracket = T::one() + (T::one() / (j * j) - T::one()) * (isoperimetric - T::one()).max(T::zero());
    Ok(T::PI() * disc.lambda1_disc / area * bracket)
}

/// Faber–Krahn: `λ₁(Ω) >= π j₀,₁²/|Ω|`.
pub fn faber_krahn_lower<T: Real>(area: T, lambda1_disc: T) -> Result<T> {
    if !(area > T::zero()) {
        return Err(domain("area", area.as_f64(), "area > 0"));
    }
    Ok(T::PI() * lambda1_disc / area)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HighEigenvalueBounds<T> {
    pub k: usize,
    pub t: T,
    pub lower: BoundValue<T>,
    pub upper: BoundValue<T>,
}

fn disc_eigenvalue<T: Real>(disc: &DiscConstants<T>, k: usize) -> Result<T> {
    disc.eigenvalue(k).ok_or_else(|| {
        Error::InvalidInput(format!(
            "k = {k} is outside the computed disc spectrum (1..={})",
            disc.spectrum.len()
        ))
    })
}

fn check_dilation<T: Real>(certificate: &ContainmentCertificate<T>, gamma_alpha_value: T, variation: T) -> Result<T> {
    let t = certificate.t;
    if !(t >= T::one()) {
        return Err(domain("t", t.as_f64(), "t >= 1"));
    }
    if !(gamma_alpha_value > T::zero()) || !(variation >= T::zero()) {
        return Err(Error::InvalidInput("gamma_alpha must be positive and V non-negative".into()));
    }
    Ok(t)
}

/// `(λ_k(𝔻) - t⁴λ_k(𝔻)²γ_αV, t²λ_k(𝔻))`, given a certificate that `𝔻 ⊆ tΩ`.
pub fn high_eigenvalue_bounds<T: Real>(
    k: usize,
    certificate: &ContainmentCertificate<T>,
    disc: &DiscConstants<T>,
    gamma_alpha_value: T,
    variation: T,
) -> Result<HighEigenvalueBounds<T>> {
    let t = check_dilation(certificate, gamma_alpha_value, variation)?;
    let lk = disc_eigenvalue(disc, k)?;
    let t2 = t * t;
    let lower = lk - t2 * t2 * lk * lk * gamma_alpha_value * variation;
    Ok(HighEigenvalueBounds {
        k,
        t,
        lower: BoundValue::lower(lower, formula::HIGH_LOWER),
        upper: BoundValue::upper(t2 * lk, formula::HIGH_UPPER),
    })
}

/// Lower bound for `λ_n(Ω)/λ_m(Ω)`, `m < n`.
pub fn high_ratio_lower<T: Real>(
    m: usize,
    n: usize,
    certificate: &ContainmentCertificate<T>,
    disc: &DiscConstants<T>,
    gamma_alpha_value: T,
    variation: T,
) -> Result<BoundValue<T>> {
    if !(m >= 1 && m < n) {
        return Err(Error::InvalidInput(format!("need 1 <= m < n, got m = {m}, n = {n}")));
    }
    let high = high_eigenvalue_bounds(n, certificate, disc, gamma_alpha_value, variation)?;
    let lm = disc_eigenvalue(disc, m)?;
    Ok(BoundValue {
        value: high.lower.value / (high.t * high.t * lm),
        vacuous: high.lower.vacuous,
        provenance: formula::HIGH_RATIO,
    })
}

/// `C(n)` of the epicycloid example, using the closed-form inradius.
pub fn epicycloid_c<T: Real>(n: u32, lambda1_disc: T, gamma_infinity: T) -> Result<T> {
    if n < 2 {
        return Err(domain("n", n, "n >= 2"));
    }
    let nf = T::from_count(n as usize);
    let rho = ((nf - T::one()) / (nf + T::one())).powf(T::lit(0.75));
    let lambda_rho = lambda1_disc / (rho * rho);
    let c = (nf / (nf + T::one())).sqrt();
    let sup = T::two() * c;
    let deviation = (T::TAU() * (T::one() - c)).sqrt();
    Ok(lambda_rho * lambda_rho * gamma_infinity * (sup + T::one()) * deviation)
}

/// All bounds for one domain, with the constants they were built from.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "T: Real")]
pub struct BoundReport<T> {
    pub inputs: BoundInputs<T>,
    pub slack: BoundValue<T>,
    pub lambda1_upper: BoundValue<T>,
    pub lambda2_lower: BoundValue<T>,
    pub ratio_lower: BoundValue<T>,
    pub gap_lower: BoundValue<T>,
    /// Bound on `|λ_k(Ω) - λ_k(𝔻)|` for each k.
    pub stability_radius: BTreeMap<usize, BoundValue<T>>,
    pub pw_upper: Option<BoundValue<T>>,
    pub fk_lower: BoundValue<T>,
    /// The variation is an upper bound witnessed by one map, not the infimum.
    pub variation_is_upper_bound: bool,
    pub constants_used: Vec<ConstantTrace<T>>,
}

impl<T: Real> BoundReport<T> {
    pub fn build(
        inputs: BoundInputs<T>,
        disc: &DiscConstants<T>,
        stability_ks: &[usize],
        constants_used: Vec<ConstantTrace<T>>,
    ) -> Result<Self> {
        let sb = slack_bounds(&inputs)?;
        let mut stability_radius = BTreeMap::new();
        for &k in stability_ks {
            let lk = disc_eigenvalue(disc, k)? / (inputs.rho * inputs.rho);
            let v = stability_bound(k, lk * lk, inputs.gamma_alpha_value, inputs.variation)?;
            stability_radius.insert(k, BoundValue::upper(v, formula::STABILITY));
        }
        let pw_upper = match inputs.perimeter {
            Some(p) => Some(BoundValue::upper(
                payne_weinberger_upper(inputs.area, p, disc)?,
                formula::PAYNE_WEINBERGER,
            )),
            None => None,
        };
        let fk = faber_krahn_lower(inputs.area, inputs.lambda1_disc)?;
        Ok(Self {
            inputs,
            slack: BoundValue::upper(sb.slack, formula::SLACK),
            lambda1_upper: sb.lambda1_upper,
            lambda2_lower: sb.lambda2_lower,
            ratio_lower: sb.ratio_lower,
            gap_lower: sb.gap_lower,
            stability_radius,
            pw_upper,
            fk_lower: BoundValue::lower(fk, formula::FABER_KRAHN),
            variation_is_upper_bound: true,
            constants_used,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::confmap::{
        boundary_length, certify_disc_containment, inscribed_radius, variation_upper_bound, ContainmentOptions,
        InradiusMode, PolynomialMap, QuadratureOptions,
    };
    use crate::constants::{disc_spectrum, gamma_alpha};
    use std::f64::consts::PI;

    fn disc() -> DiscConstants<f64> {
        disc_spectrum(12).unwrap()
    }

    fn gamma_inf() -> f64 {
        gamma_alpha(Alpha::<f64>::infinite()).unwrap().value
    }

    fn epicycloid_inputs(n: u32) -> BoundInputs<f64> {
        let map = PolynomialMap::epicycloid(n).unwrap();
        let inf = Alpha::infinite();
        let v = variation_upper_bound(&map, inf, &QuadratureOptions::default());
        let rho = inscribed_radius(&map, InradiusMode::Formula).unwrap();
        BoundInputs::new(&disc(), rho, inf, v, gamma_inf(), PI)
    }

    // closed forms, usable at degrees far beyond what sampling the map allows
    fn epicycloid_closed_inputs(n: u32) -> BoundInputs<f64> {
        let nf = n as f64;
        let c = (nf / (nf + 1.0)).sqrt();
        let v = (2.0 * c + 1.0) * (2.0 * PI * (1.0 - c)).sqrt();
        let rho = ((nf - 1.0) / (nf + 1.0)).powf(0.75);
        BoundInputs::new(&disc(), rho, Alpha::infinite(), v, gamma_inf(), PI)
    }

    fn disc_inputs() -> BoundInputs<f64> {
        BoundInputs::new(&disc(), 1.0, Alpha::infinite(), 0.0, gamma_inf(), PI)
    }

    #[test]
    fn disc_is_a_fixed_point() {
        let d = disc();
        let i = disc_inputs();
        assert_eq!(lambda1_upper(&i).unwrap(), d.lambda1_disc);
        assert_eq!(lambda2_lower(&i).unwrap().value, d.lambda2_disc);
        assert_eq!(ppw_ratio_lower(&i).unwrap().value, d.lambda_star);
        assert!((ppw_ratio_lower(&i).unwrap().value - 2.539).abs() < 1e-3);
        assert_eq!(spectral_gap_lower(&i).unwrap().value, d.lambda2_disc - d.lambda1_disc);
    }

    #[test]
    fn area_normalization_is_enforced() {
        let mut i = disc_inputs();
        i.area = PI * 1.01;
        assert!(lambda1_upper(&i).is_err());
        i.area = PI + 5e-7;
        assert!(lambda1_upper(&i).is_ok());
        let mut i = disc_inputs();
        i.rho = 0.0;
        assert!(lambda1_upper(&i).is_err());
    }

    #[test]
    fn stability_bound_properties() {
        assert_eq!(stability_bound(1, 4.0, 0.2, 0.0).unwrap(), 0.0);
        let one: f64 = stability_bound(1, 33.4, 0.18, 0.3).unwrap();
        let two = stability_bound(1, 33.4, 0.18, 0.6).unwrap();
        assert!((two - 2.0 * one).abs() < 1e-15);
        assert!(stability_bound(0, 1.0, 1.0, 1.0).is_err());
        assert!(stability_bound(1, -1.0, 1.0, 1.0).is_err());
        // disc vs epicycloid 8 at α = ∞
        let i = epicycloid_inputs(8);
        let l = disc().lambda1_disc;
        let expected = l * l * gamma_inf() * i.variation;
        assert!((stability_bound(1, l * l, gamma_inf(), i.variation).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn epicycloid_lambda1_upper_composition() {
        let i = epicycloid_inputs(5);
        let d = disc();
        let rho = (4.0_f64 / 6.0).powf(0.75);
        let lr = d.lambda1_disc / (rho * rho);
        let expected = d.lambda1_disc + lr * lr * gamma_inf() * i.variation;
        assert!((lambda1_upper(&i).unwrap() - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn lambda1_upper_decreases_in_rho() {
        let mut i = epicycloid_inputs(5);
        let mut previous = f64::INFINITY;
        for k in 1..=10 {
            i.rho = 0.1 * k as f64;
            let v = lambda1_upper(&i).unwrap();
            assert!(v < previous);
            previous = v;
        }
    }

    #[test]
    fn lambda2_lower_sharpness_and_vacuity() {
        let d = disc();
        // the slack only drops below λ₂ for n past about 207
        let v50 = lambda2_lower(&epicycloid_inputs(50)).unwrap();
        assert!(v50.vacuous && (v50.value - -17.68).abs() < 0.01);
        assert!(lambda2_lower(&epicycloid_closed_inputs(200)).unwrap().vacuous);
        assert!(!lambda2_lower(&epicycloid_closed_inputs(210)).unwrap().vacuous);
        // within 5% of j11² from n ≈ 78 638 on
        let far = lambda2_lower(&epicycloid_closed_inputs(100_000)).unwrap();
        assert!(!far.vacuous && (far.value - d.lambda2_disc).abs() / d.lambda2_disc < 0.05);
        let near = lambda2_lower(&epicycloid_closed_inputs(70_000)).unwrap();
        assert!((near.value - d.lambda2_disc).abs() / d.lambda2_disc > 0.05);
        let v2 = lambda2_lower(&epicycloid_inputs(2)).unwrap();
        assert!(v2.vacuous && v2.value <= 0.0);
    }

    #[test]
    fn ratio_is_quotient_and_below_lambda_star() {
        let d = disc();
        let mut previous = f64::NEG_INFINITY;
        for n in [10, 20, 50] {
            let i = epicycloid_inputs(n);
            let r = ppw_ratio_lower(&i).unwrap();
            let q = lambda2_lower(&i).unwrap().value / lambda1_upper(&i).unwrap();
            assert!((r.value - q).abs() <= 1e-12 * q.abs());
            assert!(r.value > previous);
            assert!(r.value <= d.lambda_star);
            previous = r.value;
        }
    }

    #[test]
    fn gap_is_difference_of_bounds() {
        for n in [3, 8, 50] {
            let i = epicycloid_inputs(n);
            let g = spectral_gap_lower(&i).unwrap().value;
            let diff = lambda2_lower(&i).unwrap().value - lambda1_upper(&i).unwrap();
            assert!((g - diff).abs() < 1e-12 * g.abs().max(1.0));
        }
        // positive only for n past about 725
        assert!(spectral_gap_lower(&epicycloid_inputs(50)).unwrap().vacuous);
        assert!(spectral_gap_lower(&epicycloid_closed_inputs(720)).unwrap().vacuous);
        assert!(!spectral_gap_lower(&epicycloid_closed_inputs(730)).unwrap().vacuous);
    }

    #[test]
    fn monotone_sharpness_along_family() {
        let d = disc();
        let ns = [5, 10, 20, 50];
        let upper: Vec<f64> = ns.iter().map(|&n| lambda1_upper(&epicycloid_inputs(n)).unwrap()).collect();
        let ratio: Vec<f64> = ns.iter().map(|&n| ppw_ratio_lower(&epicycloid_inputs(n)).unwrap().value).collect();
        for w in upper.windows(2) {
            assert!(w[1] < w[0] && w[1] > d.lambda1_disc);
        }
        for w in ratio.windows(2) {
            assert!(w[1] > w[0] && w[1] < d.lambda_star);
        }
    }

    #[test]
    fn payne_weinberger() {
        let d = disc();
        let disc_value = payne_weinberger_upper(PI, 2.0 * PI, &d).unwrap();
        assert!((disc_value - d.lambda1_disc).abs() < 1e-12);
        assert!(payne_weinberger_upper(PI, 1e8, &d).unwrap() > 1e10);
        assert!(payne_weinberger_upper(PI, 6.0, &d).is_err());
        let map = PolynomialMap::epicycloid(4).unwrap();
        let p = boundary_length(&map, 1 << 14);
        assert!(payne_weinberger_upper(PI, p, &d).unwrap() >= d.lambda1_disc);
    }

    #[test]
    fn faber_krahn() {
        let l = disc().lambda1_disc;
        assert_eq!(faber_krahn_lower(PI, l).unwrap(), l);
        assert!((faber_krahn_lower(4.0 * PI, l).unwrap() - l / 4.0).abs() < 1e-15);
        assert!(faber_krahn_lower(0.0, l).is_err());
    }

    fn trivial_certificate(t: f64) -> ContainmentCertificate<f64> {
        ContainmentCertificate {
            t,
            boundary_samples: 0,
            disc_samples: 0,
            min_margin: 0.0,
        }
    }

    #[test]
    fn high_eigenvalue_sandwich() {
        let d = disc();
        for k in 1..=6 {
            let b = high_eigenvalue_bounds(k, &trivial_certificate(1.0), &d, gamma_inf(), 0.0).unwrap();
            assert_eq!(b.lower.value, d.spectrum[k - 1]);
            assert_eq!(b.upper.value, d.spectrum[k - 1]);
        }
        let (map, t) = PolynomialMap::<f64>::section4(3).unwrap();
        assert!((t - 2.25).abs() < 1e-15);
        let cert = certify_disc_containment(&map, t, &ContainmentOptions::default()).unwrap();
        let v = variation_upper_bound(&map, Alpha::infinite(), &QuadratureOptions::default());
        let b = high_eigenvalue_bounds(1, &cert, &d, gamma_inf(), v).unwrap();
        assert!((b.upper.value - t * t * d.lambda1_disc).abs() < 1e-12);
        if !b.lower.vacuous {
            assert!(b.lower.value <= b.upper.value);
        }
        assert!(high_eigenvalue_bounds(13, &cert, &d, gamma_inf(), v).is_err());
        assert!(high_eigenvalue_bounds(1, &trivial_certificate(0.5), &d, gamma_inf(), v).is_err());
    }

    #[test]
    fn high_ratio() {
        let d = disc();
        let r = high_ratio_lower(1, 2, &trivial_certificate(1.0), &d, gamma_inf(), 0.0).unwrap();
        assert_eq!(r.value, d.spectrum[1] / d.spectrum[0]);
        let cert = trivial_certificate(1.5);
        let (g, v) = (gamma_inf(), 1e-4);
        for (m, n) in [(1, 2), (2, 6), (1, 4)] {
            let r = high_ratio_lower(m, n, &cert, &d, g, v).unwrap();
            let h = high_eigenvalue_bounds(n, &cert, &d, g, v).unwrap();
            assert_eq!(r.value, h.lower.value / (cert.t * cert.t * d.spectrum[m - 1]));
        }
        assert!(high_ratio_lower(2, 2, &cert, &d, g, v).is_err());
        assert!(high_ratio_lower(0, 2, &cert, &d, g, v).is_err());
    }

    #[test]
    fn epicycloid_c_matches_composition() {
        let d = disc();
        let g = gamma_inf();
        assert!(epicycloid_c(100, d.lambda1_disc, g).unwrap() < epicycloid_c(10, d.lambda1_disc, g).unwrap());
        for n in [2, 3, 5, 8, 20] {
            let i = epicycloid_inputs(n);
            let c = epicycloid_c(n, d.lambda1_disc, g).unwrap();
            assert!((c - i.slack().unwrap()).abs() < 1e-12 * c);
            let exact = (d.lambda2_disc - d.lambda_star.powi(2) * c) / (d.lambda1_disc + c);
            let r = ppw_ratio_lower(&i).unwrap().value;
            assert!((exact - r).abs() < 1e-12 * r.abs().max(1.0), "n = {n}");
            // with λ* rounded to 2.539
            let shown = (d.lambda2_disc - 2.539_f64.powi(2) * c) / (d.lambda1_disc + c);
            assert!((shown - r).abs() < 1e-3 * r.abs().max(1.0), "n = {n}");
        }
        assert!(epicycloid_c(1, d.lambda1_disc, g).is_err());
    }

    #[test]
    fn report_is_consistent() {
        let d = disc();
        let i = epicycloid_inputs(8).with_perimeter(boundary_length(&PolynomialMap::epicycloid(8).unwrap(), 1 << 14));
        let r = BoundReport::build(i, &d, &[1, 2, 3], d.traces()).unwrap();
        assert!(r.fk_lower.value <= r.lambda1_upper.value);
        assert!((r.ratio_lower.value - r.lambda2_lower.value / r.lambda1_upper.value).abs() < 1e-12);
        assert_eq!(r.stability_radius[&1].value, r.slack.value);
        assert!(r.stability_radius[&2].value == r.stability_radius[&3].value);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["inputs"]["alpha"], "inf");
        assert!(json["lambda1_upper"]["provenance"].as_str().unwrap().contains("lambda1"));
        assert!(r.pw_upper.unwrap().value >= d.lambda1_disc);
    }
}
