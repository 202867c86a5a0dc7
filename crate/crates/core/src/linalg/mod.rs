//! Dense complex matrices and the two Jacobi factorizations used throughout
//! the crate: [`svd`] and [`eig_hermitian`].

mod eig;
mod matrix;
mod svd;

pub use eig::{eig_hermitian, EigResult};
pub use matrix::ComplexMatrix;
pub use svd::{svd, SvdResult};

pub type C64 = num_complex::Complex64;

/// Maximum number of Jacobi sweeps before giving up.
pub const MAX_SWEEPS: usize = 100;

/// Singular values at or below `RANK_CUTOFF * sigma_max` count as zero.
pub const RANK_CUTOFF: f64 = 1e-12;

/// Relative tolerance used to accept a matrix as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Numerical rank of a non-increasing list of singular values.
pub fn numerical_rank(sigma: &[f64]) -> usize {
    let Some(&largest) = sigma.first() else {
        return 0;
    };
    if largest <= 0.0 {
        return 0;
    }
    sigma.iter().filter(|&&s| s > RANK_CUTOFF * largest).count()
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> crate::Result<ComplexMatrix> {
    a.matmul(b)
}

pub fn dagger(a: &ComplexMatrix) -> ComplexMatrix {
    a.dagger()
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// Gram-Schmidt completion of `basis` (orthonormal columns of length `dim`)
/// to a full orthonormal basis of `C^dim`, drawing candidates from the
/// canonical basis.
pub(crate) fn complete_basis(mut basis: Vec<Vec<C64>>, dim: usize) -> Vec<Vec<C64>> {
    let mut candidate = 0;
    while basis.len() < dim && candidate < dim {
        let mut v = vec![C64::new(0.0, 0.0); dim];
        v[candidate] = C64::new(1.0, 0.0);
        candidate += 1;
        for _ in 0..2 {
            for b in &basis {
                let proj: C64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= proj * bi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            v.iter_mut().for_each(|z| *z /= norm);
            basis.push(v);
        }
    }
    basis
}

/// Assembles a matrix from column vectors of equal length.
pub(crate) fn from_columns(columns: &[Vec<C64>], rows: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, columns.len(), |i, j| columns[j][i])
}
