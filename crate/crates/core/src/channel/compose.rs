use super::{ChannelRep, Superoperator};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::reorder::{reshuffle_permutation_sources, DimPair};

/// Which tensor factor an extended channel acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `Φ ⊗ 𝟙`
    Left,
    /// `𝟙 ⊗ Φ`
    Right,
}

/// Identity map on `M_m` as an `m² x m²` superoperator.
pub fn identity_superoperator(m: usize) -> Result<Superoperator> {
    if m == 0 {
        return Err(Error::dim(
            "identity_superoperator",
            "dimension must be positive",
        ));
    }
    Superoperator::new(ComplexMatrix::identity(m * m), m, m)
}

/// Superoperator of `Φ ⊗ Ψ` on `M_{ab}`.
///
/// `M_Φ ⊗ M_Ψ` acts on `res ρ_A ⊗ res ρ_B = res((ρ_A ⊗ ρ_B)^R)`, so the
/// result is `M_Rᵀ (M_Φ ⊗ M_Ψ) M_R` with `M_R` the reshuffling permutation
/// for the split `(a, b)`. The conjugation is done as an index relabeling.
pub fn compose_channels(phi: &ChannelRep, psi: &ChannelRep) -> Result<Superoperator> {
    let m_phi = phi.to_superoperator()?;
    let m_psi = psi.to_superoperator()?;
    for s in [&m_phi, &m_psi] {
        if !s.is_square() {
            return Err(Error::dim(
                "compose_channels",
                format!("channel M_{} → M_{} is not square", s.dim_in(), s.dim_out()),
            ));
        }
    }
    let (a, b) = (m_phi.dim_in(), m_psi.dim_in());
    let product = m_phi.matrix().kron(m_psi.matrix());

    // (M_R x)_k = x[sources[k]]
    let split = DimPair::new(a, b);
    let sources = reshuffle_permutation_sources(split, split);
    let side = sources.len();
    let mut inverse = vec![0; side];
    for (k, &s) in sources.iter().enumerate() {
        inverse[s] = k;
    }
    let matrix = ComplexMatrix::from_fn(side, side, |i, j| product[(inverse[i], inverse[j])]);
    Superoperator::new(matrix, a * b, a * b)
}

/// Partial application: `Φ ⊗ 𝟙_m` (`Left`) or `𝟙_m ⊗ Φ` (`Right`).
pub fn extend_channel(phi: &ChannelRep, m: usize, side: Side) -> Result<Superoperator> {
    let id = ChannelRep::Superoperator(identity_superoperator(m)?);
    match side {
        Side::Left => compose_channels(phi, &id),
        Side::Right => compose_channels(&id, phi),
    }
}
