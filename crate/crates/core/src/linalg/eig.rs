use crate::error::{Error, Result};

use super::{ComplexMatrix, C64, HERMITIAN_TOL, MAX_SWEEPS};

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigResult {
    /// Real eigenvalues, non-increasing.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl EigResult {
    pub fn min_value(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }

    pub fn max_value(&self) -> f64 {
        self.values[0]
    }
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// Input must be square with `‖A − A†‖_max ≤ 1e-10·max(1, ‖A‖_max)`; the
/// Hermitian part `(A + A†)/2` is what actually gets diagonalized.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<EigResult> {
    if !a.is_square() {
        return Err(Error::dim(
            "eig_hermitian",
            format!("expected a square matrix, got {}x{}", a.rows(), a.cols()),
        ));
    }
    let deviation = a.hermiticity_deviation();
    if deviation > HERMITIAN_TOL * a.max_abs().max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }

    let n = a.rows();
    let mut h: Vec<C64> =
        ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (a.get(i, j) + a.get(j, i).conj())).into_vec();
    let mut v = ComplexMatrix::identity(n).into_vec();

    let total = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let threshold = 1e-14 * total;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&h, n);
        if off <= threshold || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut h, &mut v, n, p, q);
            }
        }
    }
    if !converged {
        let off = off_diagonal_norm(&h, n);
        if off > threshold && off > 0.0 {
            return Err(Error::NoConvergence {
                routine: "eig_hermitian",
                sweeps: MAX_SWEEPS,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| h[j * n + j].re.total_cmp(&h[i * n + i].re));
    let values = order.iter().map(|&i| h[i * n + i].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[i * n + order[j]]);
    Ok(EigResult { values, vectors })
}

fn off_diagonal_norm(h: &[C64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += h[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One two-sided rotation annihilating `h[p][q]`.
///
/// The phase of `h[p][q]` is first moved onto column `q`, after which the
/// pair is a real symmetric 2x2 problem.
fn rotate(h: &mut [C64], v: &mut [C64], n: usize, p: usize, q: usize) {
    let hpq = h[p * n + q];
    let g = hpq.norm();
    if g == 0.0 {
        return;
    }
    let app = h[p * n + p].re;
    let aqq = h[q * n + q].re;
    // negligible relative to both diagonal entries: skip
    if g <= 1e-300 || (app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs()) {
        h[p * n + q] = C64::new(0.0, 0.0);
        h[q * n + p] = C64::new(0.0, 0.0);
        return;
    }
    let phase = hpq / g; // e^{iφ}
    let zeta = (aqq - app) / (2.0 * g);
    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = c * t;

    // J = diag(1, e^{-iφ}) · [[c, s], [-s, c]] on the (p, q) plane
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -s * phase.conj();
    let jqq = c * phase.conj();

    // H ← H J
    for k in 0..n {
        let hp = h[k * n + p];
        let hq = h[k * n + q];
        h[k * n + p] = hp * jpp + hq * jqp;
        h[k * n + q] = hp * jpq + hq * jqq;
    }
    // H ← J† H
    for k in 0..n {
        let hp = h[p * n + k];
        let hq = h[q * n + k];
        h[p * n + k] = jpp.conj() * hp + jqp.conj() * hq;
        h[q * n + k] = jpq.conj() * hp + jqq.conj() * hq;
    }
    h[p * n + q] = C64::new(0.0, 0.0);
    h[q * n + p] = C64::new(0.0, 0.0);
    h[p * n + p] = C64::new(h[p * n + p].re, 0.0);
    h[q * n + q] = C64::new(h[q * n + q].re, 0.0);

    // V ← V J
    for k in 0..n {
        let vp = v[k * n + p];
        let vq = v[k * n + q];
        v[k * n + p] = vp * jpp + vq * jqp;
        v[k * n + q] = vp * jpq + vq * jqq;
    }
}
