//! Schmidt decomposition of bipartite vectors and operators.
//!
//! Both cases reduce to an SVD. A vector `ψ ∈ C^m ⊗ C^n` is unreshaped into
//! its `m x n` coefficient matrix; an operator on `C^m ⊗ C^n` is reshuffled
//! into its `m² x n²` coefficient matrix in the product basis of
//! `M_m ⊗ M_n`. Singular vectors become the Schmidt factors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{svd, ComplexMatrix, C64};
use crate::reorder::{reshuffle, unres, DimPair};

/// Relative cutoff used by [`schmidt_number`] and [`is_separable_pure`]
/// when callers have no better choice.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SchmidtKind {
    Vector,
    Operator,
}

/// `input = Σ_i coefficients[i] · left_factors[i] ⊗ right_factors[i]`.
#[derive(Debug, Clone)]
pub struct SchmidtResult {
    /// Strictly positive, non-increasing.
    pub coefficients: Vec<f64>,
    /// Column vectors (vector case) or `m x m` matrices (operator case).
    pub left_factors: Vec<ComplexMatrix>,
    /// Column vectors (vector case) or `n x n` matrices (operator case).
    pub right_factors: Vec<ComplexMatrix>,
    pub kind: SchmidtKind,
}

impl SchmidtResult {
    /// Number of retained terms.
    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut terms = self
            .coefficients
            .iter()
            .zip(self.left_factors.iter().zip(&self.right_factors))
            .map(|(&s, (l, r))| l.kron(r).scale_real(s));
        let first = terms.next().expect("at least one Schmidt term");
        terms.fold(first, |acc, t| &acc + &t)
    }
}

/// Schmidt decomposition of a bipartite vector.
///
/// With `C = unres(ψ)` and `C = U Σ V†`, the left factors are the columns
/// of `U`, the right factors the columns of `V*`, and the coefficients the
/// non-zero singular values. The input need not be normalized.
pub fn schmidt_vector(psi: &ComplexMatrix, dims: DimPair) -> Result<SchmidtResult> {
    let coeffs = coefficient_matrix(psi, dims)?;
    let decomposition = svd(&coeffs)?;
    let rank = decomposition.rank();

    let left_factors = (0..rank)
        .map(|k| ComplexMatrix::from_vec(dims.m, 1, decomposition.u.column_vec(k)))
        .collect();
    let right_factors = (0..rank)
        .map(|k| {
            let col = decomposition
                .v
                .column_vec(k)
                .into_iter()
                .map(|z| z.conj())
                .collect();
            ComplexMatrix::from_vec(dims.n, 1, col)
        })
        .collect();

    Ok(SchmidtResult {
        coefficients: decomposition.sigma[..rank].to_vec(),
        left_factors,
        right_factors,
        kind: SchmidtKind::Vector,
    })
}

/// Operator Schmidt decomposition `A = Σ_l σ_l E_l ⊗ F_l` with `{E_l}` and
/// `{F_l}` orthonormal under `tr(X† Y)`.
///
/// Works for any square matrix on `C^m ⊗ C^n`; positivity is not required.
pub fn schmidt_operator(a: &ComplexMatrix, dims: DimPair) -> Result<SchmidtResult> {
    dims.check("schmidt_operator")?;
    let coeffs = reshuffle(a, dims)?;
    let decomposition = svd(&coeffs)?;
    let rank = decomposition.rank();

    let (mm, nn) = (DimPair::square(dims.m), DimPair::square(dims.n));
    let mut left_factors = Vec::with_capacity(rank);
    let mut right_factors = Vec::with_capacity(rank);
    for k in 0..rank {
        let u = ComplexMatrix::from_vec(dims.m * dims.m, 1, decomposition.u.column_vec(k));
        let v: Vec<C64> = decomposition
            .v
            .column_vec(k)
            .into_iter()
            .map(|z| z.conj())
            .collect();
        let v = ComplexMatrix::from_vec(dims.n * dims.n, 1, v);
        left_factors.push(unres(&u, mm)?);
        right_factors.push(unres(&v, nn)?);
    }

    Ok(SchmidtResult {
        coefficients: decomposition.sigma[..rank].to_vec(),
        left_factors,
        right_factors,
        kind: SchmidtKind::Operator,
    })
}

/// Number of Schmidt coefficients above `tol` times the largest one.
pub fn schmidt_number(psi: &ComplexMatrix, dims: DimPair, tol: f64) -> Result<usize> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::pre(
            "schmidt_number",
            format!("tolerance {tol} must be non-negative"),
        ));
    }
    let sigma = svd(&coefficient_matrix(psi, dims)?)?.sigma;
    let largest = sigma[0];
    Ok(sigma.iter().filter(|&&s| s > tol * largest).count())
}

/// A pure state is a product state exactly when its Schmidt number is 1.
pub fn is_separable_pure(psi: &ComplexMatrix, dims: DimPair, tol: f64) -> Result<bool> {
    Ok(schmidt_number(psi, dims, tol)? == 1)
}

fn coefficient_matrix(psi: &ComplexMatrix, dims: DimPair) -> Result<ComplexMatrix> {
    dims.check("schmidt_vector")?;
    let c = unres(psi, dims)?;
    if c.max_abs() == 0.0 {
        return Err(Error::pre(
            "schmidt_vector",
            "zero vector has no Schmidt decomposition",
        ));
    }
    Ok(c)
}
