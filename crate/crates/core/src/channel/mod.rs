//! Linear maps on matrix spaces and their three representations.
//!
//! A channel `Φ: M_n → M_k` is stored as one of
//!
//! * a [`KrausSet`] `{K_i}` with `Φ(ρ) = Σ K_i ρ K_i†`,
//! * a [`Superoperator`] `M_Φ` with `res Φ(ρ) = M_Φ res ρ`,
//! * a [`DynamicalMatrix`] `D_Φ = M_Φ^R = Σ_ij Φ(E_ij) ⊗ E_ij`.
//!
//! Entry conventions: `M_Φ[(a,b),(i,j)] = Φ(E_ij)[a,b]` and
//! `D_Φ[(a,i),(b,j)] = Φ(E_ij)[a,b]`, so `⟨a⊗i|D_Φ|b⊗j⟩ = ⟨a|Φ(|i⟩⟨j|)|b⟩`.

mod compose;
mod families;
mod partial;

pub use compose::{compose_channels, extend_channel, identity_superoperator, Side};
pub use families::{
    clock_matrix, depolarizing_channel, generalized_pauli_channel, identity_channel, pauli_x,
    pauli_y, pauli_z, random_unitary_channel, shift_matrix, transposition_channel,
};
pub use partial::{is_ppt, partial_trace, partial_transpose, ppt_min_eigenvalue, Which};

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, svd, ComplexMatrix, HERMITIAN_TOL};
use crate::reorder::{res, reshuffle_general, unres, DimPair};

/// Default threshold for CP, TP and PPT verdicts.
pub const VERDICT_TOL: f64 = 1e-8;

/// Dynamical-matrix eigenvalues below `-CP_TOL` make Kraus extraction fail;
/// those in `[-CP_TOL, 0)` are clamped to zero.
pub const CP_TOL: f64 = 1e-8;

/// Allowed deviation of `tr D_Φ` from `n` when forming the Jamiołkowski state.
pub const TRACE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    operators: Vec<ComplexMatrix>,
    dim_in: usize,
    dim_out: usize,
}

impl KrausSet {
    /// Operators must be non-empty and share one `dim_out x dim_in` shape.
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let Some(first) = operators.first() else {
            return Err(Error::pre(
                "KrausSet::new",
                "at least one operator is required",
            ));
        };
        let (dim_out, dim_in) = first.shape();
        if let Some(bad) = operators.iter().find(|k| k.shape() != (dim_out, dim_in)) {
            return Err(Error::dim(
                "KrausSet::new",
                format!(
                    "operators must all be {dim_out}x{dim_in}, found {}x{}",
                    bad.rows(),
                    bad.cols()
                ),
            ));
        }
        Ok(Self {
            operators,
            dim_in,
            dim_out,
        })
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn into_operators(self) -> Vec<ComplexMatrix> {
        self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator {
    matrix: ComplexMatrix,
    dim_in: usize,
    dim_out: usize,
}

impl Superoperator {
    pub fn new(matrix: ComplexMatrix, dim_in: usize, dim_out: usize) -> Result<Self> {
        if dim_in == 0 || dim_out == 0 || matrix.shape() != (dim_out * dim_out, dim_in * dim_in) {
            return Err(Error::dim(
                "Superoperator::new",
                format!(
                    "a map M_{dim_in} → M_{dim_out} needs a {}x{} matrix, got {}x{}",
                    dim_out * dim_out,
                    dim_in * dim_in,
                    matrix.rows(),
                    matrix.cols()
                ),
            ));
        }
        Ok(Self {
            matrix,
            dim_in,
            dim_out,
        })
    }

    /// Square channel on `M_n` from an `n² x n²` matrix.
    pub fn from_square(matrix: ComplexMatrix) -> Result<Self> {
        let n = perfect_square_root(matrix.rows()).filter(|_| matrix.is_square());
        match n {
            Some(n) => Self::new(matrix, n, n),
            None => Err(Error::dim(
                "Superoperator::from_square",
                format!(
                    "expected an n²xn² matrix, got {}x{}",
                    matrix.rows(),
                    matrix.cols()
                ),
            )),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn is_square(&self) -> bool {
        self.dim_in == self.dim_out
    }
}

/// Unnormalized dynamical (Choi) matrix, side `dim_out · dim_in`.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicalMatrix {
    matrix: ComplexMatrix,
    dim_in: usize,
    dim_out: usize,
}

impl DynamicalMatrix {
    pub fn new(matrix: ComplexMatrix, dim_in: usize, dim_out: usize) -> Result<Self> {
        let side = dim_in * dim_out;
        if side == 0 || matrix.shape() != (side, side) {
            return Err(Error::dim(
                "DynamicalMatrix::new",
                format!(
                    "expected a {side}x{side} matrix, got {}x{}",
                    matrix.rows(),
                    matrix.cols()
                ),
            ));
        }
        Ok(Self {
            matrix,
            dim_in,
            dim_out,
        })
    }

    pub fn from_square(matrix: ComplexMatrix) -> Result<Self> {
        let n = perfect_square_root(matrix.rows()).filter(|_| matrix.is_square());
        match n {
            Some(n) => Self::new(matrix, n, n),
            None => Err(Error::dim(
                "DynamicalMatrix::from_square",
                format!(
                    "expected an n²xn² matrix, got {}x{}",
                    matrix.rows(),
                    matrix.cols()
                ),
            )),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChannelRep {
    Kraus(KrausSet),
    Superoperator(Superoperator),
    Dynamical(DynamicalMatrix),
}

impl ChannelRep {
    /// `(dim_in, dim_out)`.
    pub fn dims(&self) -> (usize, usize) {
        match self {
            ChannelRep::Kraus(k) => (k.dim_in, k.dim_out),
            ChannelRep::Superoperator(s) => (s.dim_in, s.dim_out),
            ChannelRep::Dynamical(d) => (d.dim_in, d.dim_out),
        }
    }

    pub fn to_superoperator(&self) -> Result<Superoperator> {
        match self {
            ChannelRep::Kraus(k) => Ok(superop_from_kraus(k)),
            ChannelRep::Superoperator(s) => Ok(s.clone()),
            ChannelRep::Dynamical(d) => Ok(superop_from_dynamical(d)),
        }
    }

    pub fn to_dynamical(&self) -> Result<DynamicalMatrix> {
        match self {
            ChannelRep::Dynamical(d) => Ok(d.clone()),
            other => dynamical_from_superop(&other.to_superoperator()?),
        }
    }

    /// Canonical Kraus operators; fails for maps that are not CP.
    pub fn to_kraus(&self) -> Result<KrausSet> {
        match self {
            ChannelRep::Kraus(k) => Ok(k.clone()),
            other => kraus_from_dynamical(&other.to_dynamical()?),
        }
    }

    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        match self {
            ChannelRep::Kraus(k) => apply_kraus(k, rho),
            other => apply_superop(&other.to_superoperator()?, rho),
        }
    }
}

impl From<KrausSet> for ChannelRep {
    fn from(k: KrausSet) -> Self {
        ChannelRep::Kraus(k)
    }
}

impl From<Superoperator> for ChannelRep {
    fn from(s: Superoperator) -> Self {
        ChannelRep::Superoperator(s)
    }
}

impl From<DynamicalMatrix> for ChannelRep {
    fn from(d: DynamicalMatrix) -> Self {
        ChannelRep::Dynamical(d)
    }
}

/// `Σ K_i ρ K_i†`.
pub fn apply_kraus(k: &KrausSet, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_input("apply_kraus", rho, k.dim_in)?;
    let mut out = ComplexMatrix::zeros(k.dim_out, k.dim_out);
    for op in &k.operators {
        out = &out + &(&(op * rho) * &op.dagger());
    }
    Ok(out)
}

/// `unres(M_Φ res ρ)`.
pub fn apply_superop(s: &Superoperator, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_input("apply_superop", rho, s.dim_in)?;
    unres(&(&s.matrix * &res(rho)), DimPair::square(s.dim_out))
}

/// `M_Φ = Σ K_i ⊗ conj(K_i)`.
pub fn superop_from_kraus(k: &KrausSet) -> Superoperator {
    let matrix = k
        .operators
        .iter()
        .map(|op| op.kron(&op.conj()))
        .reduce(|acc, x| &acc + &x)
        .expect("non-empty Kraus set");
    Superoperator {
        matrix,
        dim_in: k.dim_in,
        dim_out: k.dim_out,
    }
}

/// Superoperator of a linear map on `M_n`: column `l` is `res f(ε_l)`.
///
/// Linearity of `f` is the caller's responsibility.
pub fn superop_from_function<F>(f: F, n: usize) -> Result<Superoperator>
where
    F: Fn(&ComplexMatrix) -> ComplexMatrix,
{
    if n == 0 {
        return Err(Error::dim(
            "superop_from_function",
            "dimension must be positive",
        ));
    }
    let nn = n * n;
    let mut columns = Vec::with_capacity(nn);
    for l in 0..nn {
        let mut unit = ComplexMatrix::zeros(n, n).into_vec();
        unit[l] = 1.0.into();
        let image = f(&ComplexMatrix::from_vec(n, n, unit));
        if image.shape() != (n, n) {
            return Err(Error::dim(
                "superop_from_function",
                format!(
                    "map must return {n}x{n} matrices, returned {}x{}",
                    image.rows(),
                    image.cols()
                ),
            ));
        }
        columns.push(image.into_vec());
    }
    let matrix = ComplexMatrix::new(
        nn,
        nn,
        (0..nn * nn).map(|k| columns[k % nn][k / nn]).collect(),
    )?;
    Superoperator::new(matrix, n, n)
}

/// `D_Φ = M_Φ^{R(n,n)}`. Only square channels are accepted.
pub fn dynamical_from_superop(s: &Superoperator) -> Result<DynamicalMatrix> {
    if !s.is_square() {
        return Err(Error::dim(
            "dynamical_from_superop",
            format!("channel M_{} → M_{} is not square", s.dim_in, s.dim_out),
        ));
    }
    let (k, n) = (s.dim_out, s.dim_in);
    let matrix = reshuffle_general(&s.matrix, DimPair::square(k), DimPair::square(n));
    DynamicalMatrix::new(matrix, n, k)
}

/// Inverse of [`dynamical_from_superop`].
pub fn superop_from_dynamical(d: &DynamicalMatrix) -> Superoperator {
    let split = DimPair::new(d.dim_out, d.dim_in);
    Superoperator {
        matrix: reshuffle_general(&d.matrix, split, split),
        dim_in: d.dim_in,
        dim_out: d.dim_out,
    }
}

/// Canonical Kraus operators together with the singular values of `D_Φ`.
#[derive(Debug, Clone)]
pub struct KrausDecomposition {
    pub kraus: KrausSet,
    /// All singular values of `D_Φ`, non-increasing.
    pub singular_values: Vec<f64>,
}

/// Canonical Kraus operators `K_i = √λ_i · unres(v_i)` from the spectral
/// decomposition of a positive `D_Φ`.
pub fn kraus_from_dynamical(d: &DynamicalMatrix) -> Result<KrausSet> {
    Ok(kraus_decomposition(d)?.kraus)
}

/// As [`kraus_from_dynamical`], also reporting the singular values of `D_Φ`.
pub fn kraus_decomposition(d: &DynamicalMatrix) -> Result<KrausDecomposition> {
    let eig = eig_hermitian(&d.matrix)?;
    let lowest = eig.min_value();
    if lowest < -CP_TOL {
        return Err(Error::NotCompletelyPositive { eigenvalue: lowest });
    }
    let largest = eig.max_value().max(0.0);
    let shape = DimPair::new(d.dim_out, d.dim_in);
    let mut operators = Vec::new();
    for (j, &lambda) in eig.values.iter().enumerate() {
        if largest == 0.0 || lambda <= crate::linalg::RANK_CUTOFF * largest {
            break;
        }
        let v = ComplexMatrix::column(eig.vectors.column_vec(j))?;
        operators.push(unres(&v, shape)?.scale_real(lambda.sqrt()));
    }
    if operators.is_empty() {
        operators.push(ComplexMatrix::zeros(d.dim_out, d.dim_in));
    }
    Ok(KrausDecomposition {
        kraus: KrausSet::new(operators)?,
        singular_values: svd(&d.matrix)?.sigma,
    })
}

/// Jamiołkowski state `D_Φ / n` of a CPTP map on `M_n`.
pub fn jamiolkowski_state(d: &DynamicalMatrix) -> Result<ComplexMatrix> {
    let eig = eig_hermitian(&d.matrix)?;
    if eig.min_value() < -CP_TOL {
        return Err(Error::NotCompletelyPositive {
            eigenvalue: eig.min_value(),
        });
    }
    let n = d.dim_in as f64;
    let trace = d.matrix.trace().re;
    if (trace - n).abs() > TRACE_TOL {
        return Err(Error::NotTracePreserving { trace, expected: n });
    }
    Ok(d.matrix.scale_real(1.0 / n))
}

/// Outcome of a complete-positivity test on `D_Φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpVerdict {
    pub completely_positive: bool,
    /// Smallest eigenvalue of the Hermitian part of `D_Φ`.
    pub min_eigenvalue: f64,
    /// `‖D_Φ − D_Φ†‖_max`.
    pub hermiticity_deviation: f64,
}

/// Choi test: CP iff `D_Φ` is Hermitian within `tol` and its smallest
/// eigenvalue is at least `-tol`.
pub fn cp_verdict(c: &ChannelRep, tol: f64) -> Result<CpVerdict> {
    let d = c.to_dynamical()?;
    let hermiticity_deviation = d.matrix.hermiticity_deviation();
    let min_eigenvalue = eig_hermitian(&d.matrix.hermitian_part())?.min_value();
    Ok(CpVerdict {
        completely_positive: hermiticity_deviation <= tol && min_eigenvalue >= -tol,
        min_eigenvalue,
        hermiticity_deviation,
    })
}

/// `false` also for maps whose dynamical matrix cannot be formed.
pub fn is_completely_positive(c: &ChannelRep, tol: f64) -> bool {
    cp_verdict(c, tol).is_ok_and(|v| v.completely_positive)
}

/// `‖Σ K_i† K_i − 𝟙‖_max ≤ tol`.
pub fn is_trace_preserving(k: &KrausSet, tol: f64) -> bool {
    kraus_tp_deviation(k) <= tol
}

fn kraus_tp_deviation(k: &KrausSet) -> f64 {
    let sum = k
        .operators
        .iter()
        .map(|op| &op.dagger() * op)
        .reduce(|acc, x| &acc + &x)
        .expect("non-empty Kraus set");
    sum.max_abs_diff(&ComplexMatrix::identity(k.dim_in))
}

/// `max_ij |tr Φ(E_ij) − δ_ij|`, zero exactly for trace-preserving maps.
pub fn trace_preservation_deviation(c: &ChannelRep) -> Result<f64> {
    if let ChannelRep::Kraus(k) = c {
        return Ok(kraus_tp_deviation(k));
    }
    let s = c.to_superoperator()?;
    let (k, n) = (s.dim_out, s.dim_in);
    let mut worst: f64 = 0.0;
    for col in 0..n * n {
        let trace: crate::C64 = (0..k).map(|a| s.matrix[(a * k + a, col)]).sum();
        let expected = if col / n == col % n { 1.0 } else { 0.0 };
        worst = worst.max((trace - expected).norm());
    }
    Ok(worst)
}

/// `‖Φ(𝟙) − 𝟙‖_max` for a square channel.
pub fn unital_deviation(c: &ChannelRep) -> Result<f64> {
    let (n, k) = c.dims();
    if n != k {
        return Err(Error::dim(
            "is_unital",
            format!("channel M_{n} → M_{k} is not square"),
        ));
    }
    let image = c.apply(&ComplexMatrix::identity(n))?;
    Ok(image.max_abs_diff(&ComplexMatrix::identity(n)))
}

/// `Φ(𝟙) = 𝟙` within `tol`; `false` for non-square channels.
pub fn is_unital(c: &ChannelRep, tol: f64) -> bool {
    unital_deviation(c).is_ok_and(|dev| dev <= tol)
}

/// Accepts a Hermitian matrix within the crate-wide relative tolerance.
pub(crate) fn check_hermitian(rho: &ComplexMatrix, tol: f64) -> Result<()> {
    let deviation = rho.hermiticity_deviation();
    if deviation > tol.max(HERMITIAN_TOL) * rho.max_abs().max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

fn check_input(op: &'static str, rho: &ComplexMatrix, n: usize) -> Result<()> {
    if rho.shape() != (n, n) {
        return Err(Error::dim(
            op,
            format!("input must be {n}x{n}, got {}x{}", rho.rows(), rho.cols()),
        ));
    }
    Ok(())
}

fn perfect_square_root(x: usize) -> Option<usize> {
    let r = (x as f64).sqrt().round() as usize;
    (r > 0 && r * r == x).then_some(r)
}
