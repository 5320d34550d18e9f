use crate::error::{domain, Result};
use crate::scalar::Real;

// Lanczos approximation, g = 7, nine terms. Relative error below 2e-15 for x >= 0.5.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Shifted argument `x - 1`, the series sum and `t = x - 1 + g + 1/2`.
fn lanczos_parts<T: Real>(x: T) -> (T, T, T) {
    let xm1 = x - T::one();
    let mut sum = T::lit(LANCZOS_COEF[0]);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum = sum + T::lit(c) / (xm1 + T::from_count(i));
    }
    let t = xm1 + T::lit(LANCZOS_G + 0.5);
    (xm1, sum, t)
}

/// Gamma function for positive arguments.
pub fn gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(domain("x", x.as_f64(), "x > 0"));
    }
    Ok(gamma_positive(x))
}

pub(crate) fn gamma_positive<T: Real>(x: T) -> T {
    if x < T::half() {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        let pi = T::PI();
        return pi / ((pi * x).sin() * gamma_positive(T::one() - x));
    }
    let (xm1, sum, t) = lanczos_parts(x);
    (T::TAU()).sqrt() * t.powf(xm1 + T::half()) * (-t).exp() * sum
}

/// Natural logarithm of the gamma function for positive arguments.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(domain("x", x.as_f64(), "x > 0"));
    }
    Ok(ln_gamma_positive(x))
}

pub(crate) fn ln_gamma_positive<T: Real>(x: T) -> T {
    if x < T::half() {
        let pi = T::PI();
        return pi.ln() - (pi * x).sin().ln() - ln_gamma_positive(T::one() - x);
    }
    let (xm1, sum, t) = lanczos_parts(x);
    T::half() * T::TAU().ln() + (xm1 + T::half()) * t.ln() - t + sum.ln()
}
