//! Planar polygon helpers. Points are complex numbers `x + iy`.

use num_complex::Complex;

use crate::scalar::Real;

/// Points closer than this to an edge count as outside.
pub const EDGE_TOLERANCE: f64 = 1e-12;

/// Signed shoelace area; positive for counter-clockwise polygons.
pub fn signed_area<T: Real>(polygon: &[Complex<T>]) -> T {
    let n = polygon.len();
    let twice: T = (0..n)
        .map(|i| {
            let a = polygon[i];
            let b = polygon[(i + 1) % n];
            a.re * b.im - b.re * a.im
        })
        .sum();
    twice * T::half()
}

pub fn perimeter<T: Real>(polygon: &[Complex<T>]) -> T {
    let n = polygon.len();
    (0..n).map(|i| (polygon[(i + 1) % n] - polygon[i]).norm()).sum()
}

/// Distance from `p` to the segment `ab`.
pub fn segment_distance<T: Real>(p: Complex<T>, a: Complex<T>, b: Complex<T>) -> T {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == T::zero() {
        return (p - a).norm();
    }
    let ap = p - a;
    let s = ((ap.re * ab.re + ap.im * ab.im) / len2).max(T::zero()).min(T::one());
    (ap - ab * s).norm()
}

pub fn distance_to_polygon<T: Real>(p: Complex<T>, polygon: &[Complex<T>]) -> T {
    let n = polygon.len();
    (0..n)
        .map(|i| segment_distance(p, polygon[i], polygon[(i + 1) % n]))
        .fold(T::infinity(), T::min)
}

/// Even–odd crossing test; strict interior only.
pub fn point_in_polygon<T: Real>(p: Complex<T>, polygon: &[Complex<T>]) -> bool {
    even_odd(p, polygon) && distance_to_polygon(p, polygon) > T::lit(EDGE_TOLERANCE)
}

/// Signed distance to the polygon boundary, positive inside.
pub fn signed_distance<T: Real>(p: Complex<T>, polygon: &[Complex<T>]) -> T {
    let d = distance_to_polygon(p, polygon);
    if even_odd(p, polygon) && d > T::lit(EDGE_TOLERANCE) {
        d
    } else {
        -d
    }
}

fn even_odd<T: Real>(p: Complex<T>, polygon: &[Complex<T>]) -> bool {
    let n = polygon.len();
    let mut inside = false;
    for i in 0..n {
        let a = polygon[i];
        let b = polygon[(i + 1) % n];
        if (a.im > p.im) != (b.im > p.im) {
            let x = a.re + (p.im - a.im) / (b.im - a.im) * (b.re - a.re);
            if p.re < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Uniform bucket grid over a polygon's edges for fast distance and
/// inside queries on large polygons.
pub struct PolygonIndex<'a, T> {
    polygon: &'a [Complex<T>],
    lo: Complex<T>,
    cell: Complex<T>,
    nx: usize,
    ny: usize,
    cells: Vec<Vec<u32>>,
    rows: Vec<Vec<u32>>,
}

impl<'a, T: Real> PolygonIndex<'a, T> {
    pub fn new(polygon: &'a [Complex<T>]) -> Self {
        let n = polygon.len();
        let side = ((n as f64).sqrt().ceil() as usize).clamp(1, 256);
        let (lo, hi) = bounding_box(polygon);
        // a touch of padding keeps every vertex strictly inside the grid
        let pad = (hi - lo).norm() * T::lit(1e-9) + T::min_positive_value();
        let lo = lo - Complex::new(pad, pad);
        let hi = hi + Complex::new(pad, pad);
        let cell = Complex::new((hi.re - lo.re) / T::from_count(side), (hi.im - lo.im) / T::from_count(side));
        let mut index = Self {
            polygon,
            lo,
            cell,
            nx: side,
            ny: side,
            cells: vec![Vec::new(); side * side],
            rows: vec![Vec::new(); side],
        };
        for i in 0..n {
            let a = polygon[i];
            let b = polygon[(i + 1) % n];
            let (i0, j0) = index.cell_of(Complex::new(a.re.min(b.re), a.im.min(b.im)));
            let (i1, j1) = index.cell_of(Complex::new(a.re.max(b.re), a.im.max(b.im)));
            for j in j0..=j1 {
                index.rows[j].push(i as u32);
                for ci in i0..=i1 {
                    index.cells[j * side + ci].push(i as u32);
                }
            }
        }
        index
    }

    fn cell_of(&self, p: Complex<T>) -> (usize, usize) {
        let clamp = |v: T, n: usize| v.floor().max(T::zero()).min(T::from_count(n - 1)).to_usize().unwrap_or(0);
        (
            clamp((p.re - self.lo.re) / self.cell.re, self.nx),
            clamp((p.im - self.lo.im) / self.cell.im, self.ny),
        )
    }

    fn segment(&self, i: u32) -> (Complex<T>, Complex<T>) {
        let i = i as usize;
        (self.polygon[i], self.polygon[(i + 1) % self.polygon.len()])
    }

    /// Distance to the nearest edge.
    pub fn distance(&self, p: Complex<T>) -> T {
        let (ci, cj) = self.cell_of(p);
        let min_cell = self.cell.re.min(self.cell.im);
        let mut best = T::infinity();
        let max_ring = self.nx.max(self.ny);
        for ring in 0..=max_ring {
            if best <= T::from_count(ring.saturating_sub(1)) * min_cell {
                break;
            }
            let mut visit = |i: isize, j: isize| {
                if i < 0 || j < 0 || i as usize >= self.nx || j as usize >= self.ny {
                    return;
                }
                for &s in &self.cells[j as usize * self.nx + i as usize] {
                    let (a, b) = self.segment(s);
                    best = best.min(segment_distance(p, a, b));
                }
            };
            let (ci, cj, r) = (ci as isize, cj as isize, ring as isize);
            if r == 0 {
                visit(ci, cj);
                continue;
            }
            for d in -r..=r {
                visit(ci + d, cj - r);
                visit(ci + d, cj + r);
            }
            for d in 1 - r..r {
                visit(ci - r, cj + d);
                visit(ci + r, cj + d);
            }
        }
        best
    }

    fn even_odd(&self, p: Complex<T>) -> bool {
        let row = (p.im - self.lo.im) / self.cell.im;
        if !(row >= T::zero() && row < T::from_count(self.ny)) {
            return false;
        }
        let mut inside = false;
        for &s in &self.rows[row.to_usize().unwrap_or(0).min(self.ny - 1)] {
            let (a, b) = self.segment(s);
            if (a.im > p.im) != (b.im > p.im) {
                let x = a.re + (p.im - a.im) / (b.im - a.im) * (b.re - a.re);
                if p.re < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Strict interior test, as [`point_in_polygon`].
    pub fn contains(&self, p: Complex<T>) -> bool {
        self.even_odd(p) && self.distance(p) > T::lit(EDGE_TOLERANCE)
    }

    /// As [`signed_distance`].
    pub fn signed_distance(&self, p: Complex<T>) -> T {
        let d = self.distance(p);
        if self.even_odd(p) && d > T::lit(EDGE_TOLERANCE) {
            d
        } else {
            -d
        }
    }
}

/// `(min, max)` corners of the bounding box.
pub fn bounding_box<T: Real>(polygon: &[Complex<T>]) -> (Complex<T>, Complex<T>) {
    let mut lo = Complex::new(T::infinity(), T::infinity());
    let mut hi = Complex::new(T::neg_infinity(), T::neg_infinity());
    for p in polygon {
        lo = Complex::new(lo.re.min(p.re), lo.im.min(p.im));
        hi = Complex::new(hi.re.max(p.re), hi.im.max(p.im));
    }
    (lo, hi)
}

/// Signed exterior angle at every vertex, in `(-π, π]`.
pub fn turning_angles<T: Real>(polygon: &[Complex<T>]) -> Vec<T> {
    let n = polygon.len();
    (0..n)
        .map(|i| {
            let incoming = polygon[i] - polygon[(i + n - 1) % n];
            let outgoing = polygon[(i + 1) % n] - polygon[i];
            (outgoing * incoming.conj()).arg()
        })
        .collect()
}

/// Number of cusps: maximal runs of sharply turning vertices whose total
/// turning exceeds a right angle. A cusp lying between two samples shows up
/// as two consecutive vertices of roughly π/2 each.
pub fn cusp_count<T: Real>(polygon: &[Complex<T>]) -> usize {
    let angles = turning_angles(polygon);
    let n = angles.len();
    let sharp = |i: usize| angles[i % n].abs() > T::lit(0.1);
    let Some(start) = (0..n).find(|&i| !sharp(i)) else {
        return 0;
    };
    let mut count = 0;
    let mut run = T::zero();
    let mut in_run = false;
    for step in 1..=n {
        let i = (start + step) % n;
        if sharp(i) {
            run = run + angles[i];
            in_run = true;
        } else if in_run {
            if run.abs() > T::FRAC_PI_2() {
                count += 1;
            }
            run = T::zero();
            in_run = false;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Complex<f64> {
        Complex::new(x, y)
    }

    fn unit_square() -> Vec<Complex<f64>> {
        vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]
    }

    #[test]
    fn square_measures() {
        let sq = unit_square();
        assert_eq!(signed_area(&sq), 1.0);
        let reversed: Vec<_> = sq.iter().rev().copied().collect();
        assert_eq!(signed_area(&reversed), -1.0);
        assert_eq!(perimeter(&sq), 4.0);
        assert_eq!(bounding_box(&sq), (p(0.0, 0.0), p(1.0, 1.0)));
    }

    #[test]
    fn inside_tests() {
        let sq = unit_square();
        assert!(point_in_polygon(p(0.5, 0.5), &sq));
        assert!(!point_in_polygon(p(1.5, 0.5), &sq));
        // on an edge counts as outside
        assert!(!point_in_polygon(p(0.5, 0.0), &sq));
        assert!(!point_in_polygon(p(1.0, 1.0), &sq));
        assert!((signed_distance(p(0.5, 0.25), &sq) - 0.25).abs() < 1e-15);
        assert!((signed_distance(p(2.0, 0.5), &sq) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn segment_distance_cases() {
        let a = p(0.0, 0.0);
        let b = p(2.0, 0.0);
        assert_eq!(segment_distance(p(1.0, 3.0), a, b), 3.0);
        assert_eq!(segment_distance(p(-3.0, 4.0), a, b), 5.0);
        assert_eq!(segment_distance(p(1.0, 1.0), a, a), 2f64.sqrt());
    }

    #[test]
    fn index_agrees_with_brute_force() {
        let star: Vec<_> = (0..500)
            .map(|j| {
                let t = std::f64::consts::TAU * j as f64 / 500.0;
                Complex::from_polar(1.0 + 0.4 * (5.0 * t).cos(), t)
            })
            .collect();
        let index = PolygonIndex::new(&star);
        for i in 0..41 {
            for j in 0..41 {
                let q = p(-2.0 + 0.1 * i as f64 + 0.013, -2.0 + 0.1 * j as f64 + 0.007);
                assert_eq!(index.contains(q), point_in_polygon(q, &star), "{q}");
                assert!((index.signed_distance(q) - signed_distance(q, &star)).abs() < 1e-15, "{q}");
            }
        }
    }

    #[test]
    fn convex_polygon_has_no_cusps() {
        let circle: Vec<_> = (0..256)
            .map(|j| Complex::from_polar(1.0, std::f64::consts::TAU * j as f64 / 256.0))
            .collect();
        assert_eq!(cusp_count(&circle), 0);
        let total: f64 = turning_angles(&circle).iter().sum();
        assert!((total - std::f64::consts::TAU).abs() < 1e-12);
        // a square's right-angle corners are not cusps
        assert_eq!(cusp_count(&unit_square()), 0);
    }
}
