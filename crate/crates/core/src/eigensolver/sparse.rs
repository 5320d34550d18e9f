use crate::error::{Error, Result};
use crate::scalar::Real;

use super::mask::{BoundaryTreatment, GridMask, OUTSIDE};

/// Compressed sparse rows with sorted column indices.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix<T> {
    n: usize,
    row_ptr: Vec<usize>,
    col: Vec<u32>,
    val: Vec<T>,
}

impl<T: Real> CsrMatrix<T> {
    /// From per-row `(column, value)` lists; columns are sorted here.
    pub fn from_rows(rows: Vec<Vec<(u32, T)>>) -> Self {
        let n = rows.len();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut col = Vec::new();
        let mut val = Vec::new();
        row_ptr.push(0);
        for mut row in rows {
            row.sort_by_key(|&(c, _)| c);
            for (c, v) in row {
                col.push(c);
                val.push(v);
            }
            row_ptr.push(col.len());
        }
        Self { n, row_ptr, col, val }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.val.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col[r.clone()].iter().zip(&self.val[r]).map(|(&c, &v)| (c as usize, v))
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.row(i).find(|&(c, _)| c == j).map_or(T::zero(), |(_, v)| v)
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// `y = A x`.
    pub fn mul_vec(&self, x: &[T], y: &mut [T]) {
        for (i, yi) in y[..self.n].iter_mut().enumerate() {
            let (s, e) = (self.row_ptr[i], self.row_ptr[i + 1]);
            let mut acc = T::zero();
            for (&c, &v) in self.col[s..e].iter().zip(&self.val[s..e]) {
                acc = acc + v * x[c as usize];
            }
            *yi = acc;
        }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| self.row(i).all(|(j, v)| self.get(j, i) == v))
    }
}

/// Five-point `-Δ` on the masked nodes with homogeneous Dirichlet data.
pub fn assemble_laplacian<T: Real>(mask: &GridMask<T>, boundary: BoundaryTreatment) -> CsrMatrix<T> {
    let inv_h2 = T::one() / (mask.h * mask.h);
    let rows = mask
        .nodes
        .iter()
        .zip(&mask.boundary_fraction)
        .enumerate()
        .map(|(row, (&(i, j), theta))| {
            let mut entries = Vec::with_capacity(5);
            let mut diag = T::zero();
            for (d, &t) in theta.iter().enumerate() {
                match mask.neighbour(i, j, d) {
                    // the ghost value u(1 - 1/θ) folds into the diagonal
                    OUTSIDE => match boundary {
                        BoundaryTreatment::GhostFluid => diag = diag + inv_h2 / t,
                        BoundaryTreatment::Staircase => diag = diag + inv_h2,
                    },
                    k => {
                        diag = diag + inv_h2;
                        entries.push((k, -inv_h2));
                    }
                }
            }
            entries.push((row as u32, diag));
            entries
        })
        .collect();
    CsrMatrix::from_rows(rows)
}

/// Zero-fill incomplete Cholesky factor `L` with `A ≈ LLᵀ`.
#[derive(Debug, Clone)]
pub struct IncompleteCholesky<T> {
    /// Strictly lower part of `L`.
    lower: CsrMatrix<T>,
    inv_diag: Vec<T>,
}

impl<T: Real> IncompleteCholesky<T> {
    pub fn new(a: &CsrMatrix<T>) -> Result<Self> {
        let n = a.dim();
        let mut rows: Vec<Vec<(u32, T)>> = Vec::with_capacity(n);
        let mut diag = vec![T::zero(); n];
        for i in 0..n {
            let mut row: Vec<(u32, T)> = Vec::new();
            for (j, aij) in a.row(i) {
                if j < i {
                    // sparse dot of rows i and j over columns < j
                    let lj = &rows[j];
                    let mut s = aij;
                    let (mut p, mut q) = (0, 0);
                    while p < row.len() && q < lj.len() {
                        let (cp, vp) = row[p];
                        let (cq, vq) = lj[q];
                        if cp == cq {
                            s = s - vp * vq;
                            p += 1;
                            q += 1;
                        } else if cp < cq {
                            p += 1;
                        } else {
                            q += 1;
                        }
                    }
                    row.push((j as u32, s / diag[j]));
                } else if j == i {
                    let s = row.iter().fold(aij, |acc, &(_, v)| acc - v * v);
                    if !(s > T::zero()) {
                        return Err(Error::InvalidInput(format!("incomplete Cholesky breakdown at row {i}")));
                    }
                    diag[i] = s.sqrt();
                }
            }
            rows.push(row);
        }
        Ok(Self {
            lower: CsrMatrix::from_rows(rows),
            inv_diag: diag.into_iter().map(|d| T::one() / d).collect(),
        })
    }

    /// `z = (LLᵀ)⁻¹ r`.
    pub fn apply(&self, r: &[T], z: &mut [T]) {
        let l = &self.lower;
        let n = l.dim();
        for i in 0..n {
            let (start, end) = (l.row_ptr[i], l.row_ptr[i + 1]);
            let mut s = r[i];
            for k in start..end {
                s = s - l.val[k] * z[l.col[k] as usize];
            }
            z[i] = s * self.inv_diag[i];
        }
        for i in (0..n).rev() {
            z[i] = z[i] * self.inv_diag[i];
            let zi = z[i];
            for k in l.row_ptr[i]..l.row_ptr[i + 1] {
                let c = l.col[k] as usize;
                z[c] = z[c] - l.val[k] * zi;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CgOutcome<T> {
    pub iterations: usize,
    pub relative_residual: T,
    pub converged: bool,
}

pub(crate) fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub(crate) fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// Preconditioned conjugate gradients for `A x = b`, starting from the
/// contents of `x`, until `‖b - Ax‖ <= tol ‖b‖`.
pub fn pcg<T: Real>(
    a: &CsrMatrix<T>,
    pre: &IncompleteCholesky<T>,
    b: &[T],
    x: &mut [T],
    tol: T,
    max_iterations: usize,
) -> CgOutcome<T> {
    let n = a.dim();
    let b_norm = norm(b);
    if b_norm == T::zero() {
        x.iter_mut().for_each(|v| *v = T::zero());
        return CgOutcome {
            iterations: 0,
            relative_residual: T::zero(),
            converged: true,
        };
    }
    let mut r = vec![T::zero(); n];
    a.mul_vec(x, &mut r);
    for (ri, &bi) in r.iter_mut().zip(b) {
        *ri = bi - *ri;
    }
    let mut z = vec![T::zero(); n];
    pre.apply(&r, &mut z);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![T::zero(); n];
    let mut iterations = 0;
    let mut res = norm(&r) / b_norm;
    while res > tol && iterations < max_iterations {
        a.mul_vec(&p, &mut ap);
        let alpha = rz / dot(&p, &ap);
        for k in 0..n {
            x[k] = x[k] + alpha * p[k];
            r[k] = r[k] - alpha * ap[k];
        }
        pre.apply(&r, &mut z);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for k in 0..n {
            p[k] = z[k] + beta * p[k];
        }
        iterations += 1;
        res = norm(&r) / b_norm;
    }
    CgOutcome {
        iterations,
        relative_residual: res,
        converged: res <= tol,
    }
}
