use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::Real;

use super::argument::zero_count_inside;

/// Which construction produced a map; the closed-form inradius is only
/// available for epicycloids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum MapFamily {
    Identity,
    Epicycloid { n: u32 },
    Section4 { k: u32 },
    Custom,
}

/// `φ(z) = Σ c_j z^j` on the unit disc.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialMap<T> {
    label: String,
    coefficients: Vec<Complex<T>>,
    family: MapFamily,
}

/// Radius of the circle on which the argument principle is applied; the built-in
/// families have critical points of `φ′` on the unit circle itself.
pub const CONFORMALITY_RADIUS: f64 = 1.0 - 1e-6;

impl<T: Real> PolynomialMap<T> {
    /// Builds a map from coefficients and checks that `φ′` has no zero
    /// inside `|z| = 1 - 1e-6`.
    pub fn new(label: impl Into<String>, coefficients: Vec<Complex<T>>) -> Result<Self> {
        let map = Self::unchecked(label.into(), coefficients, MapFamily::Custom)?;
        let zeros = map.critical_points_inside(T::lit(CONFORMALITY_RADIUS))?;
        if zeros != 0 {
            return Err(Error::InvalidInput(format!(
                "map {:?} is not locally conformal: φ′ has {zeros} zero(s) in the disc",
                map.label
            )));
        }
        Ok(map)
    }

    fn unchecked(label: String, mut coefficients: Vec<Complex<T>>, family: MapFamily) -> Result<Self> {
        if coefficients.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput("coefficients must be finite".into()));
        }
        while coefficients.len() > 1 && coefficients.last().is_some_and(|c| c.norm_sqr() == T::zero()) {
            coefficients.pop();
        }
        if coefficients.len() < 2 {
            return Err(Error::InvalidInput("constant map is not conformal".into()));
        }
        Ok(Self {
            label,
            coefficients,
            family,
        })
    }

    pub fn identity() -> Self {
        Self {
            label: "identity".into(),
            coefficients: vec![Complex::new(T::zero(), T::zero()), Complex::new(T::one(), T::zero())],
            family: MapFamily::Identity,
        }
    }

    /// `φ(z) = √(n/(n+1)) (z + z^n/n)`, an area-π domain bounded by an
    /// epicycloid with `n - 1` cusps.
    pub fn epicycloid(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(domain("n", n, "n >= 2"));
        }
        let nf = T::from_count(n as usize);
        let c = (nf / (nf + T::one())).sqrt();
        let mut coefficients = vec![Complex::new(T::zero(), T::zero()); n as usize + 1];
        coefficients[1] = Complex::new(c, T::zero());
        coefficients[n as usize] = coefficients[n as usize] + Complex::new(c / nf, T::zero());
        Ok(Self {
            label: format!("epicycloid(n={n})"),
            coefficients,
            family: MapFamily::Epicycloid { n },
        })
    }

    /// `ψ(z) = z + z^k/k` together with the dilation `t = k²/(k-1)²` for
    /// which `𝔻 ⊆ tΩ_k`.
    pub fn section4(k: u32) -> Result<(Self, T)> {
        if k < 2 {
            return Err(domain("k", k, "k >= 2"));
        }
        let kf = T::from_count(k as usize);
        let mut coefficients = vec![Complex::new(T::zero(), T::zero()); k as usize + 1];
        coefficients[1] = Complex::new(T::one(), T::zero());
        coefficients[k as usize] = coefficients[k as usize] + Complex::new(T::one() / kf, T::zero());
        let map = Self {
            label: format!("section4(k={k})"),
            coefficients,
            family: MapFamily::Section4 { k },
        };
        let km1 = kf - T::one();
        Ok((map, kf * kf / (km1 * km1)))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coefficients(&self) -> &[Complex<T>] {
        &self.coefficients
    }

    pub fn family(&self) -> MapFamily {
        self.family
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Coefficients of `φ′`.
    pub fn derivative_coefficients(&self) -> Vec<Complex<T>> {
        self.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &c)| c * T::from_count(j))
            .collect()
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        horner(&self.coefficients, z)
    }

    pub fn derivative(&self, z: Complex<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (j, &c) in self.coefficients.iter().enumerate().skip(1).rev() {
            acc = acc * z + c * T::from_count(j);
        }
        acc
    }

    /// Same map scaled so that the image has area π.
    pub fn normalized_to_area_pi(&self) -> Self {
        let s = (T::PI() / super::area(self)).sqrt();
        Self {
            label: format!("{} (area π)", self.label),
            coefficients: self.coefficients.iter().map(|&c| c * s).collect(),
            family: match self.family {
                f @ (MapFamily::Identity | MapFamily::Epicycloid { .. }) => f,
                _ => MapFamily::Custom,
            },
        }
    }

    /// Number of zeros of `φ′` inside `|z| = radius`, by the argument principle.
    pub fn critical_points_inside(&self, radius: T) -> Result<usize> {
        zero_count_inside(&self.derivative_coefficients(), radius)
    }
}

pub(crate) fn horner<T: Real>(coefficients: &[Complex<T>], z: Complex<T>) -> Complex<T> {
    coefficients
        .iter()
        .rev()
        .fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * z + c)
}

/// JSON form of a map: `{"label": ..., "coefficients": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapDefinition {
    pub label: String,
    pub coefficients: Vec<[f64; 2]>,
}

impl MapDefinition {
    pub fn into_map<T: Real>(self) -> Result<PolynomialMap<T>> {
        let coefficients = self
            .coefficients
            .iter()
            .map(|&[re, im]| Complex::new(T::lit(re), T::lit(im)))
            .collect();
        PolynomialMap::new(self.label, coefficients)
    }
}

impl<T: Real> From<&PolynomialMap<T>> for MapDefinition {
    fn from(map: &PolynomialMap<T>) -> Self {
        Self {
            label: map.label.clone(),
            coefficients: map.coefficients.iter().map(|c| [c.re.as_f64(), c.im.as_f64()]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn epicycloid_coefficients() {
        let m = PolynomialMap::<f64>::epicycloid(2).unwrap();
        let s = (2.0_f64 / 3.0).sqrt();
        assert_eq!(m.coefficients(), &[c(0.0, 0.0), c(s, 0.0), c(s / 2.0, 0.0)]);
        assert!(PolynomialMap::<f64>::epicycloid(1).is_err());
        assert!(PolynomialMap::<f64>::epicycloid(0).is_err());
    }

    #[test]
    fn section4_parameters() {
        let (m, t) = PolynomialMap::<f64>::section4(2).unwrap();
        assert_eq!(t, 4.0);
        assert_eq!(m.coefficients(), &[c(0.0, 0.0), c(1.0, 0.0), c(0.5, 0.0)]);
        let (_, t) = PolynomialMap::<f64>::section4(1000).unwrap();
        assert!((t - 1.0).abs() < 3e-3);
        assert!(PolynomialMap::<f64>::section4(1).is_err());
    }

    #[test]
    fn evaluation_and_derivative() {
        let (m, _) = PolynomialMap::<f64>::section4(3).unwrap();
        let z = c(0.3, -0.4);
        let expected = z + z * z * z / 3.0;
        assert!((m.eval(z) - expected).norm() < 1e-15);
        let dz = 1e-6;
        let fd = (m.eval(z + c(dz, 0.0)) - m.eval(z - c(dz, 0.0))) / (2.0 * dz);
        assert!((m.derivative(z) - fd).norm() < 1e-9);
        assert!((m.derivative(z) - horner(&m.derivative_coefficients(), z)).norm() < 1e-15);
    }

    #[test]
    fn builtin_families_are_locally_conformal() {
        for n in 2..=12 {
            let m = PolynomialMap::<f64>::epicycloid(n).unwrap();
            assert_eq!(m.critical_points_inside(CONFORMALITY_RADIUS).unwrap(), 0, "n = {n}");
        }
        for k in 2..=8 {
            let (m, _) = PolynomialMap::<f64>::section4(k).unwrap();
            assert_eq!(m.critical_points_inside(CONFORMALITY_RADIUS).unwrap(), 0, "k = {k}");
        }
    }

    #[test]
    fn rejects_folding_map() {
        // φ′(z) = 1 + 2z vanishes at -1/2
        let err = PolynomialMap::new("fold", vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(err.is_err());
        assert!(PolynomialMap::new("const", vec![c(1.0, 0.0)]).is_err());
        assert!(PolynomialMap::new("nan", vec![c(0.0, 0.0), c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let json = r#"{"label": "shifted", "coefficients": [[0.1, 0.0], [1.0, 0.0], [0.0, 0.2]]}"#;
        let def: MapDefinition = serde_json::from_str(json).unwrap();
        let m: PolynomialMap<f64> = def.clone().into_map().unwrap();
        assert_eq!(m.label(), "shifted");
        assert_eq!(m.coefficients()[2], c(0.0, 0.2));
        assert_eq!(MapDefinition::from(&m), def);
    }

    #[test]
    fn trailing_zero_coefficients_are_dropped() {
        let m = PolynomialMap::new("padded", vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(m.degree(), 1);
    }
}
