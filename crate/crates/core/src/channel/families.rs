use std::f64::consts::PI;

use super::{superop_from_function, ChannelRep, KrausSet, Superoperator};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

const PROB_TOL: f64 = 1e-12;
const UNITARY_TOL: f64 = 1e-10;

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).expect("static")
}

pub fn pauli_y() -> ComplexMatrix {
    let i = C64::new(0.0, 1.0);
    ComplexMatrix::from_rows(&[vec![0.0.into(), -i], vec![i, 0.0.into()]]).expect("static")
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, -1.0]]).expect("static")
}

/// Shift `X_d = Σ_j |j−1 mod d⟩⟨j|`.
pub fn shift_matrix(d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |r, c| {
        if r == (c + d - 1) % d {
            1.0.into()
        } else {
            0.0.into()
        }
    })
}

/// Clock `Z_d = diag(1, ω, …, ω^{d−1})`, `ω = e^{2πi/d}`.
pub fn clock_matrix(d: usize) -> ComplexMatrix {
    let phases: Vec<C64> = (0..d)
        .map(|k| C64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64))
        .collect();
    ComplexMatrix::diag(&phases)
}

/// Identity map on `M_n` as a single Kraus operator.
pub fn identity_channel(n: usize) -> Result<ChannelRep> {
    if n == 0 {
        return Err(Error::dim("identity_channel", "dimension must be positive"));
    }
    Ok(ChannelRep::Kraus(KrausSet::new(vec![
        ComplexMatrix::identity(n),
    ])?))
}

/// Transposition `ρ ↦ ρᵀ` on `M_n`. Positive but not completely positive.
pub fn transposition_channel(n: usize) -> Result<ChannelRep> {
    Ok(ChannelRep::Superoperator(superop_from_function(
        |x| x.transpose(),
        n,
    )?))
}

/// `Δ_{n,p}(ρ) = p ρ + (1 − p) tr(ρ) 𝟙/n`, built from its action.
pub fn depolarizing_channel(n: usize, p: f64) -> Result<ChannelRep> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::pre(
            "depolarizing_channel",
            format!("p = {p} is outside [0, 1]"),
        ));
    }
    let mixing = (1.0 - p) / n.max(1) as f64;
    let s: Superoperator = superop_from_function(
        |rho| {
            let shift = rho.trace() * mixing;
            let mut out = rho.scale_real(p);
            for i in 0..n {
                out = out.try_add(&unit_diag(n, i, shift)).expect("same shape");
            }
            out
        },
        n,
    )?;
    Ok(ChannelRep::Superoperator(s))
}

fn unit_diag(n: usize, i: usize, value: C64) -> ComplexMatrix {
    ComplexMatrix::from_fn(
        n,
        n,
        |r, c| if r == i && c == i { value } else { 0.0.into() },
    )
}

/// Kraus set `{√p_ij · X_dⁱ Z_dʲ}` with zero-probability terms left out.
pub fn generalized_pauli_channel(d: usize, probs: &[Vec<f64>]) -> Result<KrausSet> {
    if d == 0 || probs.len() != d || probs.iter().any(|row| row.len() != d) {
        return Err(Error::dim(
            "generalized_pauli_channel",
            format!("probabilities must form a {d}x{d} table"),
        ));
    }
    let flat: Vec<f64> = probs.iter().flatten().copied().collect();
    check_distribution("generalized_pauli_channel", &flat)?;

    let x = shift_matrix(d);
    let z = clock_matrix(d);
    let mut x_pow = ComplexMatrix::identity(d);
    let mut operators = Vec::new();
    for row in probs {
        let mut term = x_pow.clone();
        for &p in row {
            if p > 0.0 {
                operators.push(term.scale_real(p.sqrt()));
            }
            term = &term * &z;
        }
        x_pow = &x_pow * &x;
    }
    KrausSet::new(operators)
}

/// Random-unitary channel `{√p_i · U_i}`.
pub fn random_unitary_channel(unitaries: &[ComplexMatrix], probs: &[f64]) -> Result<KrausSet> {
    if unitaries.is_empty() || unitaries.len() != probs.len() {
        return Err(Error::dim(
            "random_unitary_channel",
            format!(
                "{} unitaries but {} probabilities",
                unitaries.len(),
                probs.len()
            ),
        ));
    }
    check_distribution("random_unitary_channel", probs)?;
    for (i, u) in unitaries.iter().enumerate() {
        if !u.is_square() {
            return Err(Error::dim(
                "random_unitary_channel",
                format!("member {i} is not square"),
            ));
        }
        let deviation = (&u.dagger() * u).max_abs_diff(&ComplexMatrix::identity(u.rows()));
        if deviation > UNITARY_TOL {
            return Err(Error::pre(
                "random_unitary_channel",
                format!("member {i} is not unitary (‖U†U − 𝟙‖ = {deviation:e})"),
            ));
        }
    }
    KrausSet::new(
        unitaries
            .iter()
            .zip(probs)
            .map(|(u, &p)| u.scale_real(p.sqrt()))
            .collect(),
    )
}

fn check_distribution(op: &'static str, probs: &[f64]) -> Result<()> {
    if let Some(bad) = probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::pre(
            op,
            format!("probability {bad} is outside [0, 1]"),
        ));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > PROB_TOL {
        return Err(Error::pre(
            op,
            format!("probabilities sum to {total}, not 1"),
        ));
    }
    Ok(())
}
