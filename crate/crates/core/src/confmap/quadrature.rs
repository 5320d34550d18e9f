use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Tensor rule on the unit disc: Gauss–Legendre in the radius (with the
/// `r dr` Jacobian) times the trapezoid rule in the angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub radial: usize,
    pub angular: usize,
    /// Successive refinements must agree to this relative tolerance.
    pub tol: f64,
    pub max_doublings: u32,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            radial: 128,
            angular: 512,
            tol: 1e-10,
            max_doublings: 4,
        }
    }
}

impl QuadratureOptions {
    pub fn with_tolerance(tol: f64) -> Result<Self> {
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(Error::InvalidInput(format!("quadrature tolerance must be positive, got {tol}")));
        }
        Ok(Self { tol, ..Self::default() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate<T> {
    pub value: T,
    /// Relative change between the last two refinements.
    pub change: T,
    pub radial: usize,
    pub angular: usize,
    pub converged: bool,
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n in f64
        let mut x = ((i as f64 + 0.75) / (nf + 0.5) * std::f64::consts::PI).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [-1, 1] to [0, 1]
        nodes[i] = T::lit(0.5 * (1.0 - x));
        nodes[n - 1 - i] = T::lit(0.5 * (1.0 + x));
        weights[i] = T::lit(0.5 * w);
        weights[n - 1 - i] = T::lit(0.5 * w);
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p, d)
}

fn integrate_once<T: Real>(f: &impl Fn(Complex<T>) -> T, radial: usize, angular: usize) -> T {
    let (nodes, weights) = gauss_legendre::<T>(radial);
    let dtheta = T::TAU() / T::from_count(angular);
    let rotations: Vec<Complex<T>> = (0..angular)
        .map(|k| Complex::from_polar(T::one(), dtheta * T::from_count(k)))
        .collect();
    let mut total = T::zero();
    for (&r, &w) in nodes.iter().zip(&weights) {
        let ring: T = rotations.iter().map(|&e| f(e * r)).sum();
        total = total + w * r * ring;
    }
    total * dtheta
}

/// `∬_𝔻 f dA`, doubling both resolutions until two successive values agree.
pub fn integrate_disc<T: Real>(f: impl Fn(Complex<T>) -> T, options: &QuadratureOptions) -> QuadratureEstimate<T> {
    let tol = T::lit(options.tol);
    let (mut radial, mut angular) = (options.radial, options.angular);
    let mut previous = integrate_once(&f, radial, angular);
    let mut change = T::infinity();
    for _ in 0..options.max_doublings {
        radial *= 2;
        angular *= 2;
        let current = integrate_once(&f, radial, angular);
        change = (current - previous).abs() / current.abs().max(T::min_positive_value());
        previous = current;
        if change <= tol {
            break;
        }
    }
    QuadratureEstimate {
        value: previous,
        change,
        radial,
        angular,
        converged: change <= tol,
    }
}
