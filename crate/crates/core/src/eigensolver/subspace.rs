use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::sparse::{dot, norm, pcg, CsrMatrix, IncompleteCholesky};

/// Most eigenpairs a single solve returns.
pub const MAX_EIGENPAIRS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    pub count: usize,
    /// Bound on `‖Au - λu‖/‖u‖` for every returned pair.
    pub residual_tolerance: f64,
    /// Relative residual of the inner CG solves once the outer iteration is
    /// close (tightened for large λ so the outer tolerance stays reachable).
    /// Earlier solves only need to track the current Ritz residual.
    pub cg_tolerance: f64,
    /// Extra block vectors beyond `count`.
    pub guard: usize,
    pub seed: u64,
    /// Outer iteration cap; by default `50 + n/500`.
    pub max_iterations: Option<usize>,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self {
            count: 2,
            residual_tolerance: 1e-8,
            cg_tolerance: 1e-10,
            guard: 4,
            seed: 0x5eed,
            max_iterations: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpairs<T> {
    pub values: Vec<T>,
    /// Unit eigenvectors.
    pub vectors: Vec<Vec<T>>,
    pub residual_norms: Vec<T>,
    pub iterations: usize,
    pub cg_iterations: usize,
}

/// Orthonormalizes `v` against `basis` (two passes); `None` if it collapses.
fn orthonormalize_against<T: Real>(v: &mut [T], basis: &[Vec<T>]) -> Option<()> {
    let start = norm(v);
    for _ in 0..2 {
        for q in basis {
            let c = dot(v, q);
            for (vi, &qi) in v.iter_mut().zip(q) {
                *vi = *vi - c * qi;
            }
        }
    }
    let n = norm(v);
    if !(n > start * T::lit(1e-10)) {
        return None;
    }
    v.iter_mut().for_each(|x| *x = *x / n);
    Some(())
}

fn random_vector<T: Real>(rng: &mut ChaCha8Rng, n: usize) -> Vec<T> {
    (0..n).map(|_| T::lit(rng.gen_range(-1.0..1.0))).collect()
}

/// The `count` smallest eigenpairs of a sparse SPD matrix by block inverse
/// subspace iteration: CG solves with an IC(0) preconditioner,
/// Rayleigh–Ritz on the block, and locking of converged leading pairs.
pub fn smallest_eigenpairs<T: Real>(a: &CsrMatrix<T>, options: &EigenOptions) -> Result<Eigenpairs<T>> {
    let n = a.dim();
    let count = options.count;
    if count == 0 || count > MAX_EIGENPAIRS {
        return Err(Error::InvalidInput(format!("eigenpair count must be in 1..={MAX_EIGENPAIRS}, got {count}")));
    }
    if n < count {
        return Err(Error::InvalidInput(format!("{count} eigenpairs requested from a {n}-dimensional operator")));
    }
    let block = (count + options.guard).min(n);
    let max_iterations = options.max_iterations.unwrap_or(50 + n / 500);
    let tol = T::lit(options.residual_tolerance);
    let pre = IncompleteCholesky::new(a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let cg_cap = 1000 + n / 10;

    let mut locked: Vec<Vec<T>> = Vec::new();
    let mut locked_values: Vec<T> = Vec::new();
    let mut active: Vec<Vec<T>> = Vec::new();
    while active.len() < block {
        let mut v = random_vector(&mut rng, n);
        if orthonormalize_against(&mut v, &active).is_some() {
            active.push(v);
        }
    }
    let mut theta: Vec<T> = active
        .iter()
        .map(|v| {
            let mut av = vec![T::zero(); n];
            a.mul_vec(v, &mut av);
            dot(v, &av)
        })
        .collect();
    let mut residuals = vec![T::infinity(); block];
    let mut cg_iterations = 0;
    let mut av = vec![T::zero(); n];

    for iteration in 1..=max_iterations {
        // inverse step, warm-started at x/θ
        let mut next = Vec::with_capacity(active.len());
        for ((x, &t), &r) in active.iter().zip(&theta).zip(&residuals) {
            let mut y: Vec<T> = x.iter().map(|&v| v / t).collect();
            let floor = T::lit(options.cg_tolerance).min(T::lit(1e-2) * tol / t.max(T::one()));
            let cg_tol = (T::lit(1e-2) * r / t).min(T::lit(1e-2)).max(floor);
            cg_iterations += pcg(a, &pre, x, &mut y, cg_tol, cg_cap).iterations;
            next.push(y);
        }
        let mut basis: Vec<Vec<T>> = Vec::with_capacity(next.len());
        for mut y in next {
            let mut all = locked.clone();
            all.extend(basis.iter().cloned());
            while orthonormalize_against(&mut y, &all).is_none() {
                y = random_vector(&mut rng, n);
            }
            basis.push(y);
        }

        // Rayleigh–Ritz on the active block
        let m = basis.len();
        let images: Vec<Vec<T>> = basis
            .iter()
            .map(|y| {
                let mut ay = vec![T::zero(); n];
                a.mul_vec(y, &mut ay);
                ay
            })
            .collect();
        let h = DMatrix::from_fn(m, m, |i, j| {
            let v = (dot(&basis[i], &images[j]) + dot(&basis[j], &images[i])) * T::half();
            v.as_f64()
        });
        let eig = h.symmetric_eigen();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        active = order
            .iter()
            .map(|&c| {
                let mut x = vec![T::zero(); n];
                for (r, y) in basis.iter().enumerate() {
                    let w = T::lit(eig.eigenvectors[(r, c)]);
                    for (xi, &yi) in x.iter_mut().zip(y) {
                        *xi = *xi + w * yi;
                    }
                }
                let nx = norm(&x);
                x.iter_mut().for_each(|v| *v = *v / nx);
                x
            })
            .collect();
        theta.clear();
        residuals.clear();
        for x in &active {
            a.mul_vec(x, &mut av);
            let t = dot(x, &av);
            let r: T = av.iter().zip(x).map(|(&ax, &xi)| (ax - t * xi).powi(2)).sum::<T>().sqrt();
            theta.push(t);
            residuals.push(r);
        }

        // lock converged leading pairs in order
        while locked.len() < count && !active.is_empty() && residuals[0] < tol {
            locked.push(active.remove(0));
            locked_values.push(theta.remove(0));
            residuals.remove(0);
        }
        if locked.len() >= count {
            return Ok(finish(a, locked, locked_values, iteration, cg_iterations));
        }
    }
    let max_residual = residuals.iter().fold(T::zero(), |m, &r| m.max(r));
    Err(Error::NonConvergence {
        iterations: max_iterations,
        converged: locked.len(),
        requested: count,
        max_residual: max_residual.as_f64(),
    })
}

fn finish<T: Real>(a: &CsrMatrix<T>, vectors: Vec<Vec<T>>, values: Vec<T>, iterations: usize, cg_iterations: usize) -> Eigenpairs<T> {
    let mut pairs: Vec<(T, Vec<T>)> = values.into_iter().zip(vectors).collect();
    pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap_or(std::cmp::Ordering::Equal));
    let mut av = vec![T::zero(); a.dim()];
    let residual_norms = pairs
        .iter()
        .map(|(t, x)| {
            a.mul_vec(x, &mut av);
            av.iter().zip(x).map(|(&ax, &xi)| (ax - *t * xi).powi(2)).sum::<T>().sqrt()
        })
        .collect();
    let (values, vectors) = pairs.into_iter().unzip();
    Eigenpairs {
        values,
        vectors,
        residual_norms,
        iterations,
        cg_iterations,
    }
}
