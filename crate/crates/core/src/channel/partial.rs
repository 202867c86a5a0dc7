use super::check_hermitian;
use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, ComplexMatrix, C64};
use crate::reorder::DimPair;

/// Tensor factor addressed by a partial operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    First,
    Second,
}

/// `(T ⊗ 𝟙)ρ` or `(𝟙 ⊗ T)ρ` on `C^m ⊗ C^n`.
pub fn partial_transpose(
    rho: &ComplexMatrix,
    dims: DimPair,
    which: Which,
) -> Result<ComplexMatrix> {
    check_bipartite("partial_transpose", rho, dims)?;
    let n = dims.n;
    Ok(ComplexMatrix::from_fn(rho.rows(), rho.cols(), |r, c| {
        let (a, x) = (r / n, r % n);
        let (b, y) = (c / n, c % n);
        match which {
            Which::First => rho[(b * n + x, a * n + y)],
            Which::Second => rho[(a * n + y, b * n + x)],
        }
    }))
}

/// Traces out the factor named by `which`.
pub fn partial_trace(rho: &ComplexMatrix, dims: DimPair, which: Which) -> Result<ComplexMatrix> {
    check_bipartite("partial_trace", rho, dims)?;
    let (m, n) = (dims.m, dims.n);
    Ok(match which {
        Which::Second => ComplexMatrix::from_fn(m, m, |a, b| {
            (0..n).map(|c| rho[(a * n + c, b * n + c)]).sum::<C64>()
        }),
        Which::First => ComplexMatrix::from_fn(n, n, |c, d| {
            (0..m).map(|a| rho[(a * n + c, a * n + d)]).sum::<C64>()
        }),
    })
}

/// Smallest eigenvalue of `ρ^{T_1}`.
pub fn ppt_min_eigenvalue(rho: &ComplexMatrix, dims: DimPair, tol: f64) -> Result<f64> {
    check_bipartite("ppt", rho, dims)?;
    check_hermitian(rho, tol)?;
    let pt = partial_transpose(&rho.hermitian_part(), dims, Which::First)?;
    Ok(eig_hermitian(&pt)?.min_value())
}

/// PPT test: `λ_min(ρ^{T_1}) ≥ −tol`. Necessary for separability; on two
/// qubits also sufficient.
pub fn is_ppt(rho: &ComplexMatrix, dims: DimPair, tol: f64) -> Result<bool> {
    Ok(ppt_min_eigenvalue(rho, dims, tol)? >= -tol)
}

fn check_bipartite(op: &'static str, rho: &ComplexMatrix, dims: DimPair) -> Result<()> {
    dims.check(op)?;
    let side = dims.product();
    if rho.shape() != (side, side) {
        return Err(Error::dim(
            op,
            format!(
                "expected a {side}x{side} matrix for split ({}, {}), got {}x{}",
                dims.m,
                dims.n,
                rho.rows(),
                rho.cols()
            ),
        ));
    }
    Ok(())
}
