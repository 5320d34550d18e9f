use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::confmap::geometry::{bounding_box, signed_area, PolygonIndex};
use crate::error::{domain, Error, Result};
use crate::scalar::Real;

/// No unknown at this grid node.
pub const OUTSIDE: u32 = u32::MAX;

/// Smallest boundary fraction kept by the ghost-fluid stencil.
pub const MIN_THETA: f64 = 1e-3;

/// Neighbour offsets in the order east, west, north, south.
pub const DIRECTIONS: [(isize, isize); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// How exterior neighbours enter the stencil.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryTreatment {
    /// Exterior neighbours are zero: the staircase boundary, first order.
    Staircase,
    /// Zero is imposed at the boundary crossing a fraction θ of the way to the
    /// exterior neighbour, so `1/(θh²)` replaces `1/h²` on the diagonal. Second order and
    /// still symmetric.
    #[default]
    GhostFluid,
}

/// Grid nodes strictly inside a polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMask<T> {
    pub h: T,
    pub origin: Complex<T>,
    pub nx: usize,
    pub ny: usize,
    pub inside: Vec<bool>,
    /// Unknown number of each node, [`OUTSIDE`] for exterior nodes.
    pub node_index: Vec<u32>,
    /// `(i, j)` of each unknown, row by row.
    pub nodes: Vec<(u32, u32)>,
    /// Per unknown and direction, the fraction of `h` to the boundary when
    /// that neighbour is outside; one otherwise.
    pub boundary_fraction: Vec<[T; 4]>,
}

impl<T: Real> GridMask<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn point(&self, i: usize, j: usize) -> Complex<T> {
        self.origin + Complex::new(self.h * T::from_count(i), self.h * T::from_count(j))
    }

    /// Unknown number of the neighbour of `(i, j)` in direction `d`.
    pub fn neighbour(&self, i: u32, j: u32, d: usize) -> u32 {
        let (di, dj) = DIRECTIONS[d];
        let (ni, nj) = (i as isize + di, j as isize + dj);
        if ni < 0 || nj < 0 || ni as usize >= self.nx || nj as usize >= self.ny {
            return OUTSIDE;
        }
        self.node_index[nj as usize * self.nx + ni as usize]
    }

    /// `count · h²`, the area the mask stands for.
    pub fn area(&self) -> T {
        T::from_count(self.len()) * self.h * self.h
    }
}

/// Masks the nodes of a grid of spacing `h` that lie strictly inside the
/// polygon (even–odd rule, nodes within 1e-12 of an edge are outside).
pub fn build_mask<T: Real>(polygon: &[Complex<T>], h: T) -> Result<GridMask<T>> {
    if !(h > T::zero()) || !h.is_finite() {
        return Err(domain("h", h.as_f64(), "h > 0"));
    }
    if polygon.len() < 3 {
        return Err(Error::DegeneratePolygon(format!("{} vertices", polygon.len())));
    }
    let area = signed_area(polygon).abs();
    if !(area >= T::lit(10.0) * h * h) {
        return Err(Error::DegeneratePolygon(format!("area {area} is below 10 h^2 at h = {h}")));
    }
    let index = PolygonIndex::new(polygon);
    let (lo, hi) = bounding_box(polygon);
    let pad = T::two() * h;
    let origin = lo - Complex::new(pad, pad);
    let count = |span: T| ((span + T::two() * pad) / h).ceil().to_usize().unwrap_or(0) + 1;
    let (nx, ny) = (count(hi.re - lo.re), count(hi.im - lo.im));

    let mut inside = vec![false; nx * ny];
    let mut node_index = vec![OUTSIDE; nx * ny];
    let mut nodes = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let p = origin + Complex::new(h * T::from_count(i), h * T::from_count(j));
            if index.contains(p) {
                inside[j * nx + i] = true;
                node_index[j * nx + i] = nodes.len() as u32;
                nodes.push((i as u32, j as u32));
            }
        }
    }
    if nodes.is_empty() {
        return Err(Error::DegeneratePolygon(format!("no grid node inside at h = {h}")));
    }

    let mut mask = GridMask {
        h,
        origin,
        nx,
        ny,
        inside,
        node_index,
        nodes,
        boundary_fraction: Vec::new(),
    };
    mask.boundary_fraction = mask
        .nodes
        .iter()
        .map(|&(i, j)| {
            let mut theta = [T::one(); 4];
            for (d, t) in theta.iter_mut().enumerate() {
                if mask.neighbour(i, j, d) == OUTSIDE {
                    *t = crossing_fraction(&index, &mask, i, j, d);
                }
            }
            theta
        })
        .collect();
    Ok(mask)
}

/// Bisection for the first boundary crossing between an inside node and its
/// outside neighbour.
fn crossing_fraction<T: Real>(index: &PolygonIndex<'_, T>, mask: &GridMask<T>, i: u32, j: u32, d: usize) -> T {
    let p = mask.point(i as usize, j as usize);
    let (di, dj) = DIRECTIONS[d];
    let step = Complex::new(mask.h * T::lit(di as f64), mask.h * T::lit(dj as f64));
    let (mut a, mut b) = (T::zero(), T::one());
    for _ in 0..52 {
        let m = T::half() * (a + b);
        if index.contains(p + step * m) {
            a = m;
        } else {
            b = m;
        }
    }
    (T::half() * (a + b)).max(T::lit(MIN_THETA))
}
