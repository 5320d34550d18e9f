//! One-dimensional minimization on open intervals.
//!
//! Objectives are evaluated through an [`IntervalPoint`] that carries the
//! distance to both endpoints, so functions that are singular at an endpoint
//! can be evaluated without cancellation even on very short intervals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Where the computed minimum sits relative to the open interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimumKind {
    Interior,
    /// Objective increases away from the lower endpoint; the infimum is the
    /// limit at that endpoint and is not attained inside the interval.
    LowerEndpoint,
    UpperEndpoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalPoint<T> {
    pub from_lower: T,
    pub from_upper: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub scan_points: usize,
    /// Endpoint clamp as a fraction of the interval width.
    pub clamp: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            scan_points: 1000,
            clamp: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalMinimum<T> {
    pub argmin: IntervalPoint<T>,
    pub value: T,
    pub kind: MinimumKind,
    /// One-sided differences at the minimizer have opposite signs.
    pub interior_certified: bool,
}

struct LogitCoordinate<T> {
    width: T,
}

impl<T: Real> LogitCoordinate<T> {
    // x = lower + width * sigmoid(u); both distances are computed directly
    fn point(&self, u: T) -> IntervalPoint<T> {
        IntervalPoint {
            from_lower: self.width * sigmoid(u),
            from_upper: self.width * sigmoid(-u),
        }
    }
}

fn sigmoid<T: Real>(u: T) -> T {
    if u >= T::zero() {
        T::one() / (T::one() + (-u).exp())
    } else {
        let e = u.exp();
        e / (T::one() + e)
    }
}

/// Minimizes `objective` over the open interval of the given `width`.
///
/// A scan uniform in the logit coordinate (log-spaced towards both ends)
/// locates the basin, then golden-section search refines it.
pub fn minimize_open_interval<T, F>(objective: F, width: T, options: ScanOptions) -> Result<IntervalMinimum<T>>
where
    T: Real,
    F: Fn(IntervalPoint<T>) -> T,
{
    if !(width > T::zero()) || !width.is_finite() {
        return Err(Error::InvalidInput(format!("interval width must be positive, got {width}")));
    }
    if options.scan_points < 3 {
        return Err(Error::InvalidInput("scan needs at least 3 points".into()));
    }
    let coord = LogitCoordinate { width };
    let clamp = T::lit(options.clamp);
    let u_max = ((T::one() - clamp) / clamp).ln();
    let u_min = -u_max;
    let n = options.scan_points;
    let u_at = |i: usize| u_min + (u_max - u_min) * T::from_count(i) / T::from_count(n - 1);
    let eval = |u: T| objective(coord.point(u));

    let mut best = (0usize, T::infinity());
    for i in 0..n {
        let v = eval(u_at(i));
        if v < best.1 {
            best = (i, v);
        }
    }
    if !best.1.is_finite() {
        return Err(Error::InvalidInput("objective is not finite anywhere on the scan".into()));
    }

    let spacing = (u_max - u_min) / T::from_count(n - 1);
    let (u_best, value, kind) = if best.0 == 0 {
        (u_min, best.1, MinimumKind::LowerEndpoint)
    } else if best.0 == n - 1 {
        (u_max, best.1, MinimumKind::UpperEndpoint)
    } else {
        let (u, v) = golden_section(&eval, u_at(best.0 - 1), u_at(best.0 + 1));
        (u, v.min(best.1), MinimumKind::Interior)
    };

    let step = spacing * T::lit(1e-2);
    let interior_certified = {
        let f0 = eval(u_best);
        let back = f0 - eval(u_best - step);
        let fwd = eval(u_best + step) - f0;
        back < T::zero() && fwd > T::zero() && u_best - step > u_min && u_best + step < u_max
    };

    Ok(IntervalMinimum {
        argmin: coord.point(u_best),
        value,
        kind,
        interior_certified,
    })
}

fn golden_section<T: Real>(f: &impl Fn(T) -> T, mut a: T, mut b: T) -> (T, T) {
    let inv_phi = T::lit(0.618_033_988_749_894_8);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= T::lit(1e-12) * (T::one() + a.abs().max(b.abs())) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_interior_quadratic_minimum() {
        // (x - 0.3)^2 on (0, 1)
        let m = minimize_open_interval(|p: IntervalPoint<f64>| (p.from_lower - 0.3).powi(2), 1.0, ScanOptions::default())
            .unwrap();
        assert_eq!(m.kind, MinimumKind::Interior);
        assert!(m.interior_certified);
        assert!((m.argmin.from_lower - 0.3).abs() < 1e-6);
        assert!((m.argmin.from_lower + m.argmin.from_upper - 1.0).abs() < 1e-15);
    }

    #[test]
    fn monotone_objective_reports_lower_endpoint() {
        let m = minimize_open_interval(|p: IntervalPoint<f64>| p.from_lower.exp(), 2.0, ScanOptions::default()).unwrap();
        assert_eq!(m.kind, MinimumKind::LowerEndpoint);
        assert!(!m.interior_certified);
        assert!(m.argmin.from_lower > 0.0);
        assert!((m.argmin.from_lower - 2e-9).abs() < 1e-15);
    }

    #[test]
    fn decreasing_objective_reports_upper_endpoint() {
        let m = minimize_open_interval(|p: IntervalPoint<f64>| p.from_upper, 1.0, ScanOptions::default()).unwrap();
        assert_eq!(m.kind, MinimumKind::UpperEndpoint);
        assert!(m.argmin.from_upper > 0.0 && m.argmin.from_upper < 1e-8);
    }

    #[test]
    fn tiny_interval_keeps_relative_precision() {
        let width = 1e-13;
        let m = minimize_open_interval(
            |p: IntervalPoint<f64>| (p.from_lower / width - 0.25).powi(2),
            width,
            ScanOptions::default(),
        )
        .unwrap();
        assert!((m.argmin.from_lower / width - 0.25).abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_width() {
        assert!(minimize_open_interval(|_: IntervalPoint<f64>| 0.0, 0.0, ScanOptions::default()).is_err());
        assert!(minimize_open_interval(|_: IntervalPoint<f64>| 0.0, f64::NAN, ScanOptions::default()).is_err());
    }
}
