use crate::error::{Error, Result};

use super::{
    complete_basis, from_columns, numerical_rank, ComplexMatrix, C64, MAX_SWEEPS, RANK_CUTOFF,
};

/// Full singular value decomposition `A = U Σ V†`.
#[derive(Debug, Clone)]
pub struct SvdResult {
    /// `m x m` unitary.
    pub u: ComplexMatrix,
    /// `min(m, n)` singular values, non-increasing, non-negative.
    pub sigma: Vec<f64>,
    /// `n x n` unitary.
    pub v: ComplexMatrix,
}

impl SvdResult {
    /// Number of singular values above `1e-12 * sigma_max`.
    pub fn rank(&self) -> usize {
        numerical_rank(&self.sigma)
    }

    /// `U Σ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let (m, n) = (self.u.rows(), self.v.rows());
        let mut out = ComplexMatrix::zeros(m, n).into_vec();
        for (k, &s) in self.sigma.iter().enumerate() {
            if s == 0.0 {
                continue;
            }
            for i in 0..m {
                let us = self.u.get(i, k) * s;
                for j in 0..n {
                    out[i * n + j] += us * self.v.get(j, k).conj();
                }
            }
        }
        ComplexMatrix::from_vec(m, n, out)
    }
}

/// One-sided Jacobi SVD.
///
/// Columns of a working copy of `A` are rotated pairwise until mutually
/// orthogonal, with the same rotations accumulated into `V`. Singular values
/// are the final column norms and `U` is recovered by normalizing those
/// columns (completed to a unitary where the rank is deficient). Wide inputs
/// are handled through `A†`.
pub fn svd(a: &ComplexMatrix) -> Result<SvdResult> {
    if a.as_slice()
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::NonFinite);
    }
    if a.rows() < a.cols() {
        let t = tall_svd(&a.dagger())?;
        return Ok(SvdResult {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        });
    }
    tall_svd(a)
}

fn tall_svd(a: &ComplexMatrix) -> Result<SvdResult> {
    let (m, n) = a.shape();
    // column-major working storage: w[j] is column j
    let mut w: Vec<Vec<C64>> = (0..n).map(|j| a.column_vec(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            let mut e = vec![C64::new(0.0, 0.0); n];
            e[j] = C64::new(1.0, 0.0);
            e
        })
        .collect();

    let frob = a.frobenius_norm();
    // pairs whose Gram entry is below (1e-14 ‖A‖_F)² are treated as orthogonal
    let floor = 1e-14 * frob;
    let floor_sq = floor * floor;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norm_sqr(&w[p]);
                let beta = norm_sqr(&w[q]);
                let gamma = dot(&w[p], &w[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= 1e-15 * (alpha * beta).sqrt() || g <= floor_sq {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let conj_phase = phase.conj();
                rotate_columns(&mut w, p, q, c, s, conj_phase);
                rotate_columns(&mut v, p, q, c, s, conj_phase);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            routine: "svd",
            sweeps: MAX_SWEEPS,
        });
    }

    let norms: Vec<f64> = w.iter().map(|col| norm_sqr(col).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let sigma: Vec<f64> = order.iter().map(|&i| norms[i]).collect();
    let largest = sigma.first().copied().unwrap_or(0.0);

    let mut u_cols: Vec<Vec<C64>> = Vec::with_capacity(m);
    for (&idx, &s) in order.iter().zip(&sigma) {
        if s <= RANK_CUTOFF * largest || s == 0.0 {
            break;
        }
        let mut col: Vec<C64> = w[idx].iter().map(|z| z / s).collect();
        // re-orthogonalize; matters only when sigma spans many decades
        for prev in &u_cols {
            let proj = dot(prev, &col);
            for (ci, pi) in col.iter_mut().zip(prev) {
                *ci -= proj * pi;
            }
        }
        let norm = norm_sqr(&col).sqrt();
        col.iter_mut().for_each(|z| *z /= norm);
        u_cols.push(col);
    }
    let u_cols = complete_basis(u_cols, m);

    let v_sorted: Vec<Vec<C64>> = order.iter().map(|&i| v[i].clone()).collect();
    Ok(SvdResult {
        u: from_columns(&u_cols, m),
        sigma,
        v: from_columns(&v_sorted, n),
    })
}

/// Applies `[c, s; -s, c]` to columns `(p, e^{-iφ} q)`.
fn rotate_columns(cols: &mut [Vec<C64>], p: usize, q: usize, c: f64, s: f64, conj_phase: C64) {
    let (left, right) = cols.split_at_mut(q);
    let cp = &mut left[p];
    let cq = &mut right[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let yq = *y * conj_phase;
        let xp = *x;
        *x = xp * c - yq * s;
        *y = xp * s + yq * c;
    }
}

fn norm_sqr(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

/// `x† y`.
fn dot(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}
