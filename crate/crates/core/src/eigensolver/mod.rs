//! Finite-difference Dirichlet eigenvalues on polygonal domains: the
//! independent reference the bounds are checked against.

mod mask;
mod sparse;
mod subspace;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::confmap::{boundary_polygon, geometry, MapFamily, PolynomialMap};
use crate::error::{domain, Result};
use crate::scalar::Real;

pub use mask::{build_mask, BoundaryTreatment, GridMask, DIRECTIONS, MIN_THETA, OUTSIDE};
pub use sparse::{assemble_laplacian, pcg, CgOutcome, CsrMatrix, IncompleteCholesky};
pub use subspace::{smallest_eigenpairs, EigenOptions, Eigenpairs, MAX_EIGENPAIRS};

/// Default number of boundary samples for map and disc domains.
pub const BOUNDARY_SAMPLES: usize = 8192;

/// A domain to discretize.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain<T> {
    Disc { radius: T },
    /// `scale · φ(𝔻)`.
    Map { map: PolynomialMap<T>, scale: T },
    Polygon(Vec<Complex<T>>),
}

impl<T: Real> Domain<T> {
    pub fn unit_disc() -> Self {
        Domain::Disc { radius: T::one() }
    }

    pub fn map(map: PolynomialMap<T>) -> Self {
        Domain::Map { map, scale: T::one() }
    }

    /// The same domain dilated by `t`.
    pub fn scaled(&self, t: T) -> Self {
        match self {
            Domain::Disc { radius } => Domain::Disc { radius: *radius * t },
            Domain::Map { map, scale } => Domain::Map {
                map: map.clone(),
                scale: *scale * t,
            },
            Domain::Polygon(p) => Domain::Polygon(p.iter().map(|&z| z * t).collect()),
        }
    }

    pub fn polygon(&self, samples: usize) -> Result<Vec<Complex<T>>> {
        match self {
            Domain::Disc { radius } => {
                if !(*radius > T::zero()) {
                    return Err(domain("radius", radius.as_f64(), "radius > 0"));
                }
                boundary_polygon(&PolynomialMap::identity(), samples).map(|p| p.into_iter().map(|z| z * *radius).collect())
            }
            Domain::Map { map, scale } => {
                if !(*scale > T::zero()) {
                    return Err(domain("scale", scale.as_f64(), "scale > 0"));
                }
                boundary_polygon(map, samples).map(|p| p.into_iter().map(|z| z * *scale).collect())
            }
            Domain::Polygon(p) => Ok(p.clone()),
        }
    }

    /// Cusps spoil the O(h²) error expansion that Richardson relies on.
    pub fn has_cusps(&self, polygon: &[Complex<T>]) -> bool {
        match self {
            Domain::Disc { .. } => false,
            Domain::Map { map, .. } => matches!(map.family(), MapFamily::Epicycloid { .. }) || geometry::cusp_count(polygon) > 0,
            Domain::Polygon(_) => geometry::cusp_count(polygon) > 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub h: f64,
    /// Also solve at `h/2` and report a two-grid band.
    pub refine: bool,
    pub boundary: BoundaryTreatment,
    pub boundary_samples: usize,
    pub eigen: EigenOptions,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            h: 1.0 / 64.0,
            refine: true,
            boundary: BoundaryTreatment::GhostFluid,
            boundary_samples: BOUNDARY_SAMPLES,
            eigen: EigenOptions::default(),
        }
    }
}

/// Solver output. With refinement, `eigenvalues` are the `h/2` values and
/// `band` is `|λ(h) - λ(h/2)|` per mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "T: Real")]
pub struct EigenResult<T> {
    pub eigenvalues: Vec<T>,
    pub residual_norms: Vec<T>,
    /// Spacing of the grid the eigenvalues come from.
    pub h: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coarse: Option<GridSolve<T>>,
    /// Richardson `(4λ(h/2) - λ(h))/3`, omitted for cusped domains.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extrapolated: Option<Vec<T>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub band: Option<Vec<T>>,
    pub unknowns: usize,
    pub mask_area: T,
    pub boundary: BoundaryTreatment,
    pub cusped: bool,
    pub iterations: usize,
    pub provenance: &'static str,
}

/// Eigenvalues on one grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct GridSolve<T> {
    pub h: T,
    pub eigenvalues: Vec<T>,
    pub residual_norms: Vec<T>,
    pub unknowns: usize,
}

pub const SOLVER_PROVENANCE: &str = "five-point finite differences for -Laplace u = lambda u, u = 0 on the boundary";

impl<T: Real> EigenResult<T> {
    /// Best available estimate of `λ_k` (1-based): extrapolated if present.
    pub fn estimate(&self, k: usize) -> Option<T> {
        let i = k.checked_sub(1)?;
        match &self.extrapolated {
            Some(e) => e.get(i).copied(),
            None => self.eigenvalues.get(i).copied(),
        }
    }

    /// Two-grid band for `λ_k`, zero without refinement.
    pub fn band_of(&self, k: usize) -> T {
        self.band
            .as_ref()
            .and_then(|b| b.get(k.wrapping_sub(1)).copied())
            .unwrap_or(T::zero())
    }

    /// Rows `(h, λ₁, …, λ_k)`, coarse grid first, for convergence tables.
    pub fn convergence_rows(&self) -> Vec<Vec<T>> {
        let mut rows = Vec::new();
        if let Some(c) = &self.coarse {
            rows.push(std::iter::once(c.h).chain(c.eigenvalues.iter().copied()).collect());
        }
        rows.push(std::iter::once(self.h).chain(self.eigenvalues.iter().copied()).collect());
        rows
    }
}

/// Eigenpairs of the masked Laplacian at one spacing.
pub fn solve_polygon<T: Real>(
    polygon: &[Complex<T>],
    h: T,
    boundary: BoundaryTreatment,
    options: &EigenOptions,
) -> Result<(GridMask<T>, Eigenpairs<T>)> {
    let mask = build_mask(polygon, h)?;
    let a = assemble_laplacian(&mask, boundary);
    let pairs = smallest_eigenpairs(&a, options)?;
    Ok((mask, pairs))
}

/// Dirichlet eigenvalues of a domain, optionally with a second grid at `h/2`.
pub fn solve_domain<T: Real>(domain_: &Domain<T>, options: &SolveOptions) -> Result<EigenResult<T>> {
    let polygon = domain_.polygon(options.boundary_samples)?;
    let cusped = domain_.has_cusps(&polygon);
    let h = T::lit(options.h);
    let (mask, pairs) = solve_polygon(&polygon, h, options.boundary, &options.eigen)?;
    let coarse = GridSolve {
        h,
        eigenvalues: pairs.values,
        residual_norms: pairs.residual_norms,
        unknowns: mask.len(),
    };
    if !options.refine {
        return Ok(EigenResult {
            eigenvalues: coarse.eigenvalues,
            residual_norms: coarse.residual_norms,
            h,
            coarse: None,
            extrapolated: None,
            band: None,
            unknowns: mask.len(),
            mask_area: mask.area(),
            boundary: options.boundary,
            cusped,
            iterations: pairs.iterations,
            provenance: SOLVER_PROVENANCE,
        });
    }
    let fine_h = h * T::half();
    let (fine_mask, fine) = solve_polygon(&polygon, fine_h, options.boundary, &options.eigen)?;
    let band = coarse
        .eigenvalues
        .iter()
        .zip(&fine.values)
        .map(|(&c, &f)| (c - f).abs())
        .collect();
    let extrapolated = (!cusped).then(|| {
        coarse
            .eigenvalues
            .iter()
            .zip(&fine.values)
            .map(|(&c, &f)| (T::lit(4.0) * f - c) / T::lit(3.0))
            .collect()
    });
    Ok(EigenResult {
        eigenvalues: fine.values,
        residual_norms: fine.residual_norms,
        h: fine_h,
        coarse: Some(coarse),
        extrapolated,
        band: Some(band),
        unknowns: fine_mask.len(),
        mask_area: fine_mask.area(),
        boundary: options.boundary,
        cusped,
        iterations: pairs.iterations + fine.iterations,
        provenance: SOLVER_PROVENANCE,
    })
}
