//! Polynomial conformal maps of the unit disc and the quantities the bounds
//! consume: derivative norms, deviation from the identity, area, inscribed
//! radius and the conformal α-variation witnessed by a single map.

mod argument;
pub mod geometry;
mod map;
pub mod quadrature;

use num_complex::Complex;
use serde::Serialize;

use crate::constants::Alpha;
use crate::error::{domain, Error, Result};
use crate::scalar::Real;

pub use map::{MapDefinition, MapFamily, PolynomialMap, CONFORMALITY_RADIUS};
pub use quadrature::{gauss_legendre, integrate_disc, QuadratureEstimate, QuadratureOptions};

use geometry::{bounding_box, PolygonIndex};

/// Boundary samples used for the `L^∞` norm before local refinement.
pub const SUP_SAMPLES: usize = 8192;

/// `‖φ′ | L^α(𝔻)‖`. Finite exponents use the disc quadrature, `α = ∞` the
/// maximum of `|φ′|` on the unit circle.
pub fn derivative_norm<T: Real>(map: &PolynomialMap<T>, alpha: Alpha<T>, options: &QuadratureOptions) -> T {
    match alpha {
        Alpha::Infinite => derivative_sup(map),
        Alpha::Finite { .. } => derivative_lp_norm(map, alpha.value(), options).value,
    }
}

/// `(∬_𝔻 |φ′|^s dA)^{1/s}` for any `s ≥ 1`, with its quadrature diagnostics
/// (the value is the s-th root, `change` refers to the integral).
pub fn derivative_lp_norm<T: Real>(map: &PolynomialMap<T>, s: T, options: &QuadratureOptions) -> QuadratureEstimate<T> {
    let half_s = s * T::half();
    let d = map.derivative_coefficients();
    let mut est = integrate_disc(|z| map::horner(&d, z).norm_sqr().powf(half_s), options);
    est.value = est.value.powf(s.recip());
    est
}

/// Closed form of `‖φ′‖_{L^{2m}}`: `∬ |φ′|^{2m} = ∬ |(φ′)^m|² = π Σ_j |e_j|²/(j+1)`
/// with `e` the coefficients of `(φ′)^m`.
pub fn derivative_norm_even_closed_form<T: Real>(map: &PolynomialMap<T>, m: u32) -> Result<T> {
    if m == 0 {
        return Err(domain("m", m, "m >= 1"));
    }
    let d = map.derivative_coefficients();
    let mut power = vec![Complex::new(T::one(), T::zero())];
    for _ in 0..m {
        power = poly_mul(&power, &d);
    }
    let integral = T::PI() * weighted_square_sum(&power);
    Ok(integral.powf(T::one() / (T::two() * T::from_count(m as usize))))
}

fn poly_mul<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut out = vec![Complex::new(T::zero(), T::zero()); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = out[i + j] + x * y;
        }
    }
    out
}

/// `Σ_j |e_j|²/(j+1)`; times π this is `∬_𝔻 |Σ e_j z^j|² dA`.
fn weighted_square_sum<T: Real>(e: &[Complex<T>]) -> T {
    e.iter()
        .enumerate()
        .map(|(j, c)| c.norm_sqr() / T::from_count(j + 1))
        .sum()
}

/// `sup_{|z|=1} |φ′(z)|`: dense boundary sample, then golden-section
/// refinement around the best sample. High degrees get at least 64 samples
/// per oscillation.
pub fn derivative_sup<T: Real>(map: &PolynomialMap<T>) -> T {
    let speed2 = |theta: T| map.derivative(Complex::from_polar(T::one(), theta)).norm_sqr();
    let samples = SUP_SAMPLES.max(64 * map.degree());
    let step = T::TAU() / T::from_count(samples);
    let (best_i, best) = (0..samples)
        .map(|i| (i, speed2(step * T::from_count(i))))
        .fold((0, T::neg_infinity()), |acc, x| if x.1 > acc.1 { x } else { acc });
    let centre = step * T::from_count(best_i);
    let (mut a, mut b) = (centre - step, centre + step);
    let inv_phi = T::lit(0.618_033_988_749_894_8);
    let mut refined = best;
    for _ in 0..80 {
        let c = b - inv_phi * (b - a);
        let d = a + inv_phi * (b - a);
        let (fc, fd) = (speed2(c), speed2(d));
        refined = refined.max(fc).max(fd);
        if fc > fd {
            b = d;
        } else {
            a = c;
        }
    }
    refined.sqrt()
}

/// `‖φ′ - 1 | L²(𝔻)‖` from the coefficients.
pub fn deviation_norm_l2<T: Real>(map: &PolynomialMap<T>) -> T {
    let mut d = map.derivative_coefficients();
    d[0] = d[0] - Complex::new(T::one(), T::zero());
    (T::PI() * weighted_square_sum(&d)).sqrt()
}

/// Quadrature value of `‖φ′ - 1 | L²(𝔻)‖`, the independent check of the
/// closed form.
pub fn deviation_norm_l2_quadrature<T: Real>(map: &PolynomialMap<T>, options: &QuadratureOptions) -> QuadratureEstimate<T> {
    let one = Complex::new(T::one(), T::zero());
    let mut est = integrate_disc(|z| (map.derivative(z) - one).norm_sqr(), options);
    est.value = est.value.sqrt();
    est
}

/// `‖ |φ′| - 1 | L²(𝔻)‖`, never larger than [`deviation_norm_l2`].
///
/// `|φ′|` has a cone singularity wherever `φ′` vanishes on the circle (the
/// cusps), so the quadrature only converges algebraically there; at most two
/// refinements are spent and `converged` reports the outcome.
pub fn modulus_deviation_l2<T: Real>(map: &PolynomialMap<T>, options: &QuadratureOptions) -> QuadratureEstimate<T> {
    let options = QuadratureOptions {
        max_doublings: options.max_doublings.min(2),
        ..*options
    };
    let mut est = integrate_disc(
        |z| {
            let m = map.derivative(z).norm() - T::one();
            m * m
        },
        &options,
    );
    est.value = est.value.sqrt();
    est
}

/// `|Ω| = π Σ_j j |c_j|²`.
pub fn area<T: Real>(map: &PolynomialMap<T>) -> T {
    T::PI() * weighted_square_sum(&map.derivative_coefficients())
}

pub fn area_quadrature<T: Real>(map: &PolynomialMap<T>, options: &QuadratureOptions) -> QuadratureEstimate<T> {
    integrate_disc(|z| map.derivative(z).norm_sqr(), options)
}

/// Length of `φ(∂𝔻)` as the trapezoid sum of `|φ′|` on the circle.
pub fn boundary_length<T: Real>(map: &PolynomialMap<T>, samples: usize) -> T {
    let step = T::TAU() / T::from_count(samples);
    let total: T = (0..samples)
        .map(|i| map.derivative(Complex::from_polar(T::one(), step * T::from_count(i))).norm())
        .sum();
    total * step
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(bound = "T: Real")]
pub struct DerivativeNorms<T> {
    pub alpha: Alpha<T>,
    pub l_alpha_norm: T,
    pub deviation_l2: T,
    pub modulus_deviation_l2: T,
    pub area: T,
}

pub fn derivative_norms<T>(map: &PolynomialMap<T>, alpha: Alpha<T>, options: &QuadratureOptions) -> DerivativeNorms<T>
where
    T: Real,
{
    DerivativeNorms {
        alpha,
        l_alpha_norm: derivative_norm(map, alpha, options),
        deviation_l2: deviation_norm_l2(map),
        modulus_deviation_l2: modulus_deviation_l2(map, options).value,
        area: area(map),
    }
}

/// Upper bound for `V_α⁰(𝔻, Ω)` witnessed by `map` against the identity:
/// `(‖φ′‖_α + π^{1/α}) ‖φ′ - 1‖₂`.
pub fn variation_upper_bound<T: Real>(map: &PolynomialMap<T>, alpha: Alpha<T>, options: &QuadratureOptions) -> T {
    (derivative_norm(map, alpha, options) + alpha.unit_disc_norm()) * deviation_norm_l2(map)
}

/// `φ(e^{2πij/samples})`, `j = 0..samples`.
pub fn boundary_polygon<T: Real>(map: &PolynomialMap<T>, samples: usize) -> Result<Vec<Complex<T>>> {
    if samples < 3 {
        return Err(domain("samples", samples as f64, "samples >= 3"));
    }
    let step = T::TAU() / T::from_count(samples);
    Ok((0..samples)
        .map(|j| map.eval(Complex::from_polar(T::one(), step * T::from_count(j))))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InradiusMode {
    /// The closed form `((n-1)/(n+1))^{3/4}` for epicycloids.
    Formula,
    /// Grid scan of the distance to the boundary polygon.
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InradiusOptions {
    pub grid: usize,
    pub boundary_samples: usize,
}

impl Default for InradiusOptions {
    fn default() -> Self {
        Self {
            grid: 512,
            boundary_samples: 4096,
        }
    }
}

/// Inscribed radius of `φ(𝔻)`.
pub fn inscribed_radius<T: Real>(map: &PolynomialMap<T>, mode: InradiusMode) -> Result<T> {
    match mode {
        InradiusMode::Formula => match map.family() {
            MapFamily::Epicycloid { n } => {
                let nf = T::from_count(n as usize);
                Ok(((nf - T::one()) / (nf + T::one())).powf(T::lit(0.75)))
            }
            _ => Err(Error::InvalidInput(format!(
                "the closed-form inradius only covers epicycloids, not {:?}",
                map.label()
            ))),
        },
        InradiusMode::Numeric => {
            let polygon = boundary_polygon(map, InradiusOptions::default().boundary_samples)?;
            Ok(polygon_inradius(&polygon, InradiusOptions::default().grid).0)
        }
    }
}

/// Largest distance from an interior point to the polygon boundary, with the
/// maximizing point.
///
/// The distance is 1-Lipschitz, so coarse 8×8 blocks of the fine grid are
/// visited in order of `d(centre) + half-diagonal` and skipped once that bound
/// cannot beat the best value. A compass search polishes the best node.
pub fn polygon_inradius<T: Real>(polygon: &[Complex<T>], grid: usize) -> (T, Complex<T>) {
    const BLOCK: usize = 8;
    let (lo, hi) = bounding_box(polygon);
    let span = hi - lo;
    let cells = grid.div_ceil(BLOCK);
    let fine = Complex::new(span.re / T::from_count(grid - 1), span.im / T::from_count(grid - 1));
    let node = |i: usize, j: usize| lo + Complex::new(fine.re * T::from_count(i), fine.im * T::from_count(j));

    let block_half = Complex::new(fine.re * T::lit(BLOCK as f64 - 1.0), fine.im * T::lit(BLOCK as f64 - 1.0)) * T::half();
    let radius = block_half.norm();
    let index = PolygonIndex::new(polygon);
    let mut blocks: Vec<(T, usize, usize)> = Vec::with_capacity(cells * cells);
    for bi in 0..cells {
        for bj in 0..cells {
            let centre = node(bi * BLOCK, bj * BLOCK) + block_half;
            blocks.push((index.signed_distance(centre) + radius, bi, bj));
        }
    }
    blocks.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite distances"));

    let mut best = (T::zero(), (lo + hi) * T::half());
    for &(bound, bi, bj) in &blocks {
        if bound <= best.0 {
            break;
        }
        for i in bi * BLOCK..((bi + 1) * BLOCK).min(grid) {
            for j in bj * BLOCK..((bj + 1) * BLOCK).min(grid) {
                let p = node(i, j);
                if index.contains(p) {
                    let d = index.distance(p);
                    if d > best.0 {
                        best = (d, p);
                    }
                }
            }
        }
    }

    // the max-min distance is non-smooth along ridges; Nelder–Mead with
    // restarts follows them where a coordinate or compass search stalls
    let f = |p: Complex<T>| index.signed_distance(p);
    let (mut value, mut point) = best;
    let mut size = fine.norm();
    for _ in 0..4 {
        let (v, p) = nelder_mead_max(&f, point, size, span.norm() * T::lit(1e-13));
        if v > value {
            value = v;
            point = p;
        }
        size = size * T::lit(0.1);
    }
    (value, point)
}

fn nelder_mead_max<T: Real>(f: &impl Fn(Complex<T>) -> T, start: Complex<T>, size: T, tol: T) -> (T, Complex<T>) {
    let mut simplex: Vec<(T, Complex<T>)> = [Complex::new(T::zero(), T::zero()), Complex::new(size, T::zero()), Complex::new(T::zero(), size)]
        .into_iter()
        .map(|d| {
            let p = start + d;
            (f(p), p)
        })
        .collect();
    for _ in 0..2000 {
        simplex.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite distances"));
        let extent = (simplex[1].1 - simplex[0].1).norm().max((simplex[2].1 - simplex[0].1).norm());
        if extent < tol {
            break;
        }
        let centroid = (simplex[0].1 + simplex[1].1) * T::half();
        let worst = simplex[2];
        let reflect = centroid + (centroid - worst.1);
        let fr = f(reflect);
        if fr > simplex[0].0 {
            let expand = centroid + (centroid - worst.1) * T::two();
            let fe = f(expand);
            simplex[2] = if fe > fr { (fe, expand) } else { (fr, reflect) };
        } else if fr > simplex[1].0 {
            simplex[2] = (fr, reflect);
        } else {
            let contract = centroid + (worst.1 - centroid) * T::half();
            let fc = f(contract);
            if fc > worst.0 {
                simplex[2] = (fc, contract);
            } else {
                let best = simplex[0].1;
                for v in simplex.iter_mut().skip(1) {
                    let p = best + (v.1 - best) * T::half();
                    *v = (f(p), p);
                }
            }
        }
    }
    simplex.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite distances"));
    simplex[0]
}

/// Evidence that `𝔻 ⊆ tΩ`: every sample of the closed unit disc lies inside
/// the scaled boundary polygon, at least `min_margin` from its edges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContainmentCertificate<T> {
    pub t: T,
    pub boundary_samples: usize,
    pub disc_samples: usize,
    pub min_margin: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContainmentOptions {
    pub boundary_samples: usize,
    pub rings: usize,
    pub ring_points: usize,
}

impl Default for ContainmentOptions {
    fn default() -> Self {
        Self {
            boundary_samples: 4096,
            rings: 32,
            ring_points: 512,
        }
    }
}

fn disc_samples<T: Real>(options: &ContainmentOptions) -> Vec<Complex<T>> {
    let mut out = vec![Complex::new(T::zero(), T::zero())];
    for ring in 1..=options.rings {
        let r = T::from_count(ring) / T::from_count(options.rings);
        for k in 0..options.ring_points {
            out.push(Complex::from_polar(r, T::TAU() * T::from_count(k) / T::from_count(options.ring_points)));
        }
    }
    out
}

/// Checks `𝔻 ⊆ tΩ` on a dense sample and returns the certificate, or
/// [`Error::Uncertified`] naming the first sample outside.
pub fn certify_disc_containment<T: Real>(
    map: &PolynomialMap<T>,
    t: T,
    options: &ContainmentOptions,
) -> Result<ContainmentCertificate<T>> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(domain("t", t.as_f64(), "t > 0"));
    }
    let polygon: Vec<_> = boundary_polygon(map, options.boundary_samples)?
        .into_iter()
        .map(|p| p * t)
        .collect();
    let index = PolygonIndex::new(&polygon);
    let samples = disc_samples::<T>(options);
    let mut min_margin = T::infinity();
    for &z in &samples {
        let margin = index.signed_distance(z);
        if margin <= T::zero() {
            return Err(Error::Uncertified(format!(
                "point ({}, {}) of the unit disc is outside {} x {}",
                z.re,
                z.im,
                t,
                map.label()
            )));
        }
        min_margin = min_margin.min(margin);
    }
    Ok(ContainmentCertificate {
        t,
        boundary_samples: options.boundary_samples,
        disc_samples: samples.len(),
        min_margin,
    })
}

pub fn check_disc_containment<T: Real>(map: &PolynomialMap<T>, t: T) -> bool {
    certify_disc_containment(map, t, &ContainmentOptions::default()).is_ok()
}
