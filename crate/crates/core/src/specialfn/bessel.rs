//! Bessel functions of the first kind for integer order and their positive zeros.
//!
//! `J_m(x)` is evaluated with one of three methods:
//!
//! * ascending power series for `x <= 4`,
//! * Hankel's asymptotic expansion for orders 0 and 1 when `x >= 25`,
//! * Miller's backward recurrence, normalized by `J_0 + 2 Σ J_{2k} = 1`, otherwise.
//!
//! The power series alone loses roughly `log10 I_0(x)` digits to cancellation,
//! which already exceeds 1e-12 absolute at `x = 12`; the recurrence keeps the
//! absolute error near machine precision over the whole middle range.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::Real;

pub(crate) const SERIES_LIMIT: f64 = 4.0;
pub(crate) const ASYMPTOTIC_LIMIT: f64 = 25.0;

/// Bessel function of the first kind `J_order(x)` for `x >= 0`.
pub fn bessel_j<T: Real>(order: u32, x: T) -> Result<T> {
    if !(x >= T::zero()) || !x.is_finite() {
        return Err(domain("x", x.as_f64(), "finite x >= 0"));
    }
    Ok(jn(order, x))
}

pub(crate) fn jn<T: Real>(order: u32, x: T) -> T {
    if x == T::zero() {
        return if order == 0 { T::one() } else { T::zero() };
    }
    if x <= T::lit(SERIES_LIMIT) {
        series(order, x)
    } else if order <= 1 && x >= T::lit(ASYMPTOTIC_LIMIT) {
        hankel(order, x)
    } else {
        miller(order, x)
    }
}

/// Derivative `J'_order(x)`.
pub(crate) fn jn_prime<T: Real>(order: u32, x: T) -> T {
    if order == 0 {
        return -jn(1, x);
    }
    if x == T::zero() {
        return if order == 1 { T::half() } else { T::zero() };
    }
    jn(order - 1, x) - T::from_count(order as usize) / x * jn(order, x)
}

pub(crate) fn series<T: Real>(order: u32, x: T) -> T {
    let half = x * T::half();
    let mut term = T::one();
    for i in 1..=order {
        term = term * half / T::from_count(i as usize);
    }
    let q = -(half * half);
    let mut sum = term;
    let m = T::from_count(order as usize);
    for k in 1..300 {
        let kf = T::from_count(k);
        term = term * q / (kf * (kf + m));
        sum = sum + term;
        if term.abs() <= T::epsilon() * sum.abs() * T::lit(0.25) {
            break;
        }
    }
    sum
}

pub(crate) fn hankel<T: Real>(order: u32, x: T) -> T {
    let nu = T::from_count(order as usize);
    let mu = T::lit(4.0) * nu * nu;
    let eight_x = T::lit(8.0) * x;
    let mut p = T::one();
    let mut q = T::zero();
    let mut term = T::one();
    for k in 1..200usize {
        let odd = T::from_count(2 * k - 1);
        let next = term * (mu - odd * odd) / (T::from_count(k) * eight_x);
        if next.abs() > term.abs() {
            // asymptotic series started to diverge
            break;
        }
        term = next;
        // a_k enters P (k even) or Q (k odd) with sign (-1)^{floor(k/2)}
        let signed = if (k / 2) % 2 == 0 { term } else { -term };
        if k % 2 == 0 {
            p = p + signed;
        } else {
            q = q + signed;
        }
        if term.abs() < T::epsilon() * T::lit(1e-2) {
            break;
        }
    }
    let chi = x - (nu * T::half() + T::lit(0.25)) * T::PI();
    (T::two() / (T::PI() * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

pub(crate) fn miller<T: Real>(order: u32, x: T) -> T {
    let top = x.max(T::from_count(order as usize)).as_f64();
    let mut start = (top + 40.0 + 2.0 * (40.0 * top).sqrt()).ceil() as usize;
    if start % 2 == 1 {
        start += 1;
    }
    let big = T::max_value().sqrt();
    let inv_big = T::one() / big;
    let two_over_x = T::two() / x;

    let mut j_next = T::zero(); // J_{k+1}
    let mut j_cur = T::one(); // J_k, unnormalized
    let mut norm = T::two() * j_cur; // start index is even
    let mut result = if order as usize == start { j_cur } else { T::zero() };
    for k in (1..=start).rev() {
        let j_prev = T::from_count(k) * two_over_x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        let index = k - 1;
        if j_cur.abs() > big {
            j_cur = j_cur * inv_big;
            j_next = j_next * inv_big;
            norm = norm * inv_big;
            result = result * inv_big;
        }
        if index == order as usize {
            result = j_cur;
        }
        if index == 0 {
            norm = norm + j_cur;
        } else if index % 2 == 0 {
            norm = norm + T::two() * j_cur;
        }
    }
    result / norm
}

/// Ordered positive zeros `j_{ν,1} < j_{ν,2} < …` of `J_ν`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BesselZeroTable<T> {
    order: u32,
    zeros: Vec<T>,
}

impl<T: Real> BesselZeroTable<T> {
    /// First `count` positive zeros of `J_order`.
    pub fn new(order: u32, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidInput("zero table needs count >= 1".into()));
        }
        let zeros = match order {
            0 | 1 => (1..=count).map(|k| mcmahon_zero(order, k)).collect(),
            _ => {
                // interlacing: j_{m-1,k} < j_{m,k} < j_{m-1,k+1}
                let mut table: Vec<T> = (1..=count + order as usize - 1)
                    .map(|k| mcmahon_zero(1, k))
                    .collect();
                for m in 2..=order {
                    table = interlaced_zeros(m, &table);
                }
                table.truncate(count);
                table
            }
        };
        Ok(Self { order, zeros })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn zeros(&self) -> &[T] {
        &self.zeros
    }

    /// k-th zero, 1-based.
    pub fn get(&self, k: usize) -> Option<T> {
        k.checked_sub(1).and_then(|i| self.zeros.get(i).copied())
    }
}

/// k-th positive zero (1-based) of `J_order`.
pub fn bessel_zero<T: Real>(order: u32, k: usize) -> Result<T> {
    if k == 0 {
        return Err(domain("k", 0.0, "k >= 1"));
    }
    match order {
        0 | 1 => Ok(mcmahon_zero(order, k)),
        _ => BesselZeroTable::new(order, k).map(|t| t.zeros[k - 1]),
    }
}

/// All zeros `j_{m,l} <= x_max` for every order `m = 0..=max_order`.
pub(crate) fn zeros_below<T: Real>(max_order: u32, x_max: T) -> Vec<Vec<T>> {
    let mut order0 = Vec::new();
    let mut k = 1;
    loop {
        let z: T = mcmahon_zero(0, k);
        if z > x_max {
            break;
        }
        order0.push(z);
        k += 1;
    }
    let mut tables = vec![order0];
    if max_order == 0 {
        return tables;
    }
    // each interlacing step consumes one zero of the previous order, so the
    // order-1 table must extend max_order zeros past x_max
    let mut order1 = Vec::new();
    let mut beyond = 0;
    let mut k = 1;
    while beyond < max_order as usize {
        let z: T = mcmahon_zero(1, k);
        if z > x_max {
            beyond += 1;
        }
        order1.push(z);
        k += 1;
    }
    let mut current = order1;
    tables.push(current.clone());
    for m in 2..=max_order {
        current = interlaced_zeros(m, &current);
        tables.push(current.clone());
    }
    for table in &mut tables {
        table.retain(|&z| z <= x_max);
    }
    tables
}

/// Zeros of `J_order` located between consecutive zeros of `J_{order-1}`.
fn interlaced_zeros<T: Real>(order: u32, previous: &[T]) -> Vec<T> {
    previous
        .windows(2)
        .map(|w| refine_zero(order, w[0], w[1], T::half() * (w[0] + w[1])))
        .collect()
}

fn mcmahon_zero<T: Real>(order: u32, k: usize) -> T {
    let nu = T::from_count(order as usize);
    let mu = T::lit(4.0) * nu * nu;
    let beta = (T::from_count(k) + nu * T::half() - T::lit(0.25)) * T::PI();
    let eight_beta = T::lit(8.0) * beta;
    let estimate = beta
        - (mu - T::one()) / eight_beta
        - T::lit(4.0) * (mu - T::one()) * (T::lit(7.0) * mu - T::lit(31.0))
            / (T::lit(3.0) * eight_beta.powi(3));

    // zeros are spaced by roughly π; a window of ±π/4 around the estimate
    // holds exactly one sign change
    let mut half_width = T::PI() * T::lit(0.25);
    let mut lo = (estimate - half_width).max(T::lit(1e-3));
    let mut hi = estimate + half_width;
    while jn(order, lo).signum() == jn(order, hi).signum() {
        half_width = half_width * T::lit(1.25);
        lo = (estimate - half_width).max(T::lit(1e-3));
        hi = estimate + half_width;
    }
    refine_zero(order, lo, hi, estimate.max(lo).min(hi))
}

/// Newton iteration on `J_order` safeguarded by the bracket `[lo, hi]`.
fn refine_zero<T: Real>(order: u32, lo: T, hi: T, start: T) -> T {
    let mut a = lo;
    let mut b = hi;
    let fa = jn(order, a);
    let mut x = start;
    for _ in 0..200 {
        let fx = jn(order, x);
        if fx == T::zero() {
            return x;
        }
        if fx.signum() == fa.signum() {
            a = x;
        } else {
            b = x;
        }
        let dfx = jn_prime(order, x);
        let newton = x - fx / dfx;
        let next = if dfx != T::zero() && newton > a && newton < b {
            newton
        } else {
            T::half() * (a + b)
        };
        let step = (next - x).abs();
        x = next;
        if step <= T::lit(4.0) * T::epsilon() * x || (b - a) <= T::lit(4.0) * T::epsilon() * x {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    // 30-digit reference values (J0, J1) at selected arguments.
    const REFERENCE: [(f64, f64, f64); 7] = [
        (0.5, 0.938_469_807_240_812_9, 0.242_268_457_674_873_9),
        (3.7, -0.399_230_203_371_191_1, 0.053_833_987_745_461_86),
        (7.5, 0.266_339_657_880_378_4, 0.135_248_427_579_705_5),
        (12.0, 0.047_689_310_796_833_54, -0.223_447_104_490_627_6),
        (20.0, 0.167_024_664_340_583_2, 0.066_833_124_175_850_05),
        (30.0, -0.086_367_983_581_040_21, -0.118_751_062_616_622_9),
        (45.0, 0.115_818_670_673_256_3, 0.028_348_854_376_424_53),
    ];

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel_j(0, 0.0_f64).unwrap(), 1.0);
        assert_eq!(bessel_j(1, 0.0_f64).unwrap(), 0.0);
        assert_eq!(bessel_j(5, 0.0_f64).unwrap(), 0.0);
    }

    #[test]
    fn matches_reference_values() {
        for &(x, j0, j1) in &REFERENCE {
            assert!((bessel_j(0, x).unwrap() - j0).abs() < 1e-13, "J0({x})");
            assert!((bessel_j(1, x).unwrap() - j1).abs() < 1e-13, "J1({x})");
        }
    }

    #[test]
    fn near_first_zero() {
        assert!(bessel_j(0, 2.4048_f64).unwrap().abs() < 1e-4);
    }

    #[test]
    fn negative_argument_is_domain_error() {
        assert!(bessel_j(0, -1.0_f64).is_err());
        assert!(bessel_j(1, f64::NAN).is_err());
    }

    #[test]
    fn regimes_agree_at_switchovers() {
        for order in 0..=1 {
            for &x in &[SERIES_LIMIT, SERIES_LIMIT + 1e-9] {
                let a = series(order, x);
                let b = miller(order, x);
                assert!((a - b).abs() < 1e-14, "series/miller order {order} at {x}");
            }
            for &x in &[ASYMPTOTIC_LIMIT, 30.0, 50.0] {
                let a = miller(order, x);
                let b = hankel(order, x);
                assert!((a - b).abs() < 1e-14, "miller/hankel order {order} at {x}");
            }
        }
        for order in 2..8 {
            let a = series(order, SERIES_LIMIT);
            let b = miller(order, SERIES_LIMIT);
            assert!((a - b).abs() < 1e-14, "order {order}");
        }
    }

    #[test]
    fn recurrence_relation_holds() {
        // J_{m-1} + J_{m+1} = (2m/x) J_m
        for m in 1..10u32 {
            for i in 1..60 {
                let x = 0.37 * i as f64;
                let lhs = jn(m - 1, x) + jn(m + 1, x);
                let rhs = 2.0 * m as f64 / x * jn(m, x);
                assert!((lhs - rhs).abs() < 1e-12, "m = {m}, x = {x}");
            }
        }
    }

    #[test]
    fn first_zeros_reference() {
        let j01: f64 = bessel_zero(0, 1).unwrap();
        let j11: f64 = bessel_zero(1, 1).unwrap();
        let j02: f64 = bessel_zero(0, 2).unwrap();
        assert!((j01 - 2.404_825_557_695_772_8).abs() < 1e-13);
        assert!((j11 - 3.831_705_970_207_512_3).abs() < 1e-13);
        assert!((j02 - 5.520_078_110_286_310_6).abs() < 1e-13);
        assert!((j01 - 2.4048).abs() < 1e-3);
        assert!(((j11 * j11) / (j01 * j01) - 2.539).abs() < 1e-3);
        assert!((bessel_zero::<f64>(0, 20).unwrap() - 62.048_469_190_227_17).abs() < 1e-11);
        assert!((bessel_zero::<f64>(1, 20).unwrap() - 63.611_356_698_481_23).abs() < 1e-11);
    }

    #[test]
    fn second_zero_of_j0_by_sign_scan() {
        // independent check: locate the sign change of J0 on a fine grid over (3.9, 6)
        let j11: f64 = bessel_zero(1, 1).unwrap();
        let j01: f64 = bessel_zero(0, 1).unwrap();
        let steps = 21_000;
        let mut bracket = None;
        for i in 0..steps {
            let a = 3.9 + 2.1 * i as f64 / steps as f64;
            let b = 3.9 + 2.1 * (i + 1) as f64 / steps as f64;
            if series_oracle(a).signum() != series_oracle(b).signum() {
                bracket = Some((a, b));
                break;
            }
        }
        let (a, b) = bracket.expect("sign change of J0 on (3.9, 6)");
        let z: f64 = bessel_zero(0, 2).unwrap();
        assert!(a <= z && z <= b);
        assert!(z > j11 && z < j01 + std::f64::consts::PI + 0.5);
    }

    // plain ascending series, independent of the production switchover logic
    fn series_oracle(x: f64) -> f64 {
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..80 {
            term *= -(x * x / 4.0) / (k as f64 * k as f64);
            sum += term;
        }
        sum
    }

    #[test]
    fn interlacing_and_residuals() {
        let t0 = BesselZeroTable::<f64>::new(0, 21).unwrap();
        let t1 = BesselZeroTable::<f64>::new(1, 21).unwrap();
        for k in 1..=20 {
            let a = t0.get(k).unwrap();
            let b = t1.get(k).unwrap();
            let c = t0.get(k + 1).unwrap();
            assert!(a < b && b < c, "k = {k}");
            assert!(bessel_j(0, a).unwrap().abs() < 1e-10);
            assert!(bessel_j(1, b).unwrap().abs() < 1e-10);
        }
        for w in t0.zeros().windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn higher_order_zeros() {
        // j_{2,1}, j_{5,3} from 30-digit references
        let j21: f64 = bessel_zero(2, 1).unwrap();
        let j53: f64 = bessel_zero(5, 3).unwrap();
        assert!((j21 - 5.135_622_301_840_682_6).abs() < 1e-12);
        assert!((j53 - 15.700_174_079_711_67).abs() < 1e-11);
        for m in 0..12u32 {
            let table = BesselZeroTable::<f64>::new(m, 6).unwrap();
            for &z in table.zeros() {
                assert!(jn(m, z).abs() < 1e-12, "m = {m}, z = {z}");
            }
        }
    }

    #[test]
    fn zeros_below_is_complete() {
        let tables: Vec<Vec<f64>> = zeros_below(6, 16.0);
        for (m, table) in tables.iter().enumerate() {
            let reference = BesselZeroTable::<f64>::new(m as u32, 8).unwrap();
            let expected: Vec<f64> = reference.zeros().iter().copied().filter(|&z| z <= 16.0).collect();
            assert_eq!(table.len(), expected.len(), "order {m}");
            for (a, b) in table.iter().zip(&expected) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }
}
