use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::map::horner;

const MAX_DEPTH: u32 = 60;

/// Number of zeros of the polynomial with the given coefficients inside the
/// circle `|z| = radius`, from the winding number of its image.
///
/// The circle is subdivided adaptively until every sub-arc turns the image by
/// less than 0.5 rad, so near-critical points on the contour are resolved.
pub(crate) fn zero_count_inside<T: Real>(coefficients: &[Complex<T>], radius: T) -> Result<usize> {
    if !(radius > T::zero()) {
        return Err(Error::InvalidInput("contour radius must be positive".into()));
    }
    let at = |theta: T| horner(coefficients, Complex::from_polar(radius, theta));
    let scale = coefficients.iter().map(|c| c.norm()).fold(T::zero(), T::max);
    let floor = scale * T::epsilon() * T::lit(64.0);

    let base = 64;
    let mut total = T::zero();
    let mut stack: Vec<(T, T, Complex<T>, Complex<T>, u32)> = Vec::new();
    for i in 0..base {
        let a = T::TAU() * T::from_count(i) / T::from_count(base);
        let b = T::TAU() * T::from_count(i + 1) / T::from_count(base);
        stack.push((a, b, at(a), at(b), 0));
    }
    while let Some((a, b, fa, fb, depth)) = stack.pop() {
        if fa.norm() <= floor || fb.norm() <= floor {
            return Err(Error::InvalidInput("polynomial vanishes on the contour".into()));
        }
        let turn = (fb / fa).arg();
        if turn.abs() < T::half() {
            total = total + turn;
            continue;
        }
        if depth >= MAX_DEPTH {
            return Err(Error::InvalidInput("argument principle did not resolve the contour".into()));
        }
        let m = T::half() * (a + b);
        let fm = at(m);
        stack.push((a, m, fa, fm, depth + 1));
        stack.push((m, b, fm, fb, depth + 1));
    }
    let winding = (total / T::TAU()).round();
    winding
        .to_usize()
        .ok_or_else(|| Error::InvalidInput(format!("negative winding number {winding}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn counts_roots_of_known_polynomials() {
        // (z - 0.5)(z + 0.9)(z - 2) = z³ - 1.6z² - 1.25z + 0.9
        let p = [c(0.9), c(-1.25), c(-1.6), c(1.0)];
        assert_eq!(zero_count_inside(&p, 1.0).unwrap(), 2);
        assert_eq!(zero_count_inside(&p, 0.7).unwrap(), 1);
        assert_eq!(zero_count_inside(&p, 0.1).unwrap(), 0);
        assert_eq!(zero_count_inside(&p, 3.0).unwrap(), 3);
    }

    #[test]
    fn resolves_roots_just_outside_contour() {
        // 1 + z^6 has all roots on |z| = 1
        let mut p = vec![c(0.0); 7];
        p[0] = c(1.0);
        p[6] = c(1.0);
        assert_eq!(zero_count_inside(&p, 1.0 - 1e-9).unwrap(), 0);
        assert_eq!(zero_count_inside(&p, 1.0 + 1e-9).unwrap(), 6);
    }

    #[test]
    fn root_on_contour_is_an_error() {
        assert!(zero_count_inside(&[c(-1.0), c(1.0)], 1.0).is_err());
    }
}
