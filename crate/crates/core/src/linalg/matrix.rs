use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use crate::error::{Error, Result};

use super::C64;

/// Dense complex matrix stored in row-major order.
///
/// Values are immutable once built; every operation returns a new matrix.
/// Construction through [`ComplexMatrix::new`] rejects non-finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::dim(
                "ComplexMatrix::new",
                "rows and cols must be positive",
            ));
        }
        if data.len() != rows * cols {
            return Err(Error::dim(
                "ComplexMatrix::new",
                format!("{} entries for a {rows}x{cols} matrix", data.len()),
            ));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// Unchecked constructor for internal callers that already hold a
    /// correctly sized buffer.
    pub(crate) fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_vec(rows, cols, vec![C64::new(0.0, 0.0); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// Builds a matrix entry by entry from zero-based `(row, col)` indices.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_vec(rows, cols, data)
    }

    /// Builds a matrix from nested rows of complex entries.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::dim("ComplexMatrix::from_rows", "ragged rows"));
        }
        Self::new(r, c, rows.concat())
    }

    /// Builds a matrix from nested rows of real entries.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let complex: Vec<Vec<C64>> = rows
            .iter()
            .map(|row| row.as_ref().iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    /// Column vector with the given entries.
    pub fn column(entries: Vec<C64>) -> Result<Self> {
        let n = entries.len();
        Self::new(n, 1, entries)
    }

    pub fn diag(values: &[C64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                values[i]
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_column(&self) -> bool {
        self.cols == 1
    }

    /// Row-major view of the entries.
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    pub fn column_vec(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::dim(
                "matmul",
                format!(
                    "{}x{} times {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            ));
        }
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let mut out = vec![C64::new(0.0, 0.0); m * n];
        for i in 0..m {
            let row = &mut out[i * n..(i + 1) * n];
            for l in 0..k {
                let a = self.data[i * k + l];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let b_row = &other.data[l * n..(l + 1) * n];
                for (o, b) in row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self::from_vec(m, n, out))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> ComplexMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> ComplexMatrix {
        self.map(|z| z.conj())
    }

    /// Kronecker product with block structure `self[i][j] * other`.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let (p, q) = other.shape();
        Self::from_fn(self.rows * p, self.cols * q, |i, j| {
            self.get(i / p, j / q) * other.get(i % p, j % q)
        })
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_same_shape("hadamard", other)?;
        Ok(self.zip_with(other, |a, b| a * b))
    }

    pub fn scale(&self, factor: C64) -> ComplexMatrix {
        self.map(|z| z * factor)
    }

    pub fn scale_real(&self, factor: f64) -> ComplexMatrix {
        self.map(|z| z * factor)
    }

    pub fn try_add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_same_shape("add", other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_same_shape("sub", other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Hilbert-Schmidt inner product `tr(self† other)`.
    pub fn inner(&self, other: &ComplexMatrix) -> Result<C64> {
        self.check_same_shape("inner", other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Largest entry modulus, `‖A‖_max`.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖self − other‖_max`; `f64::INFINITY` when the shapes differ.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &ComplexMatrix, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// `‖A − A†‖_max`; infinite for non-square input.
    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    /// `(A + A†)/2`, Hermitian to the last bit.
    pub fn hermitian_part(&self) -> ComplexMatrix {
        let n = self.rows;
        Self::from_fn(n, self.cols, |i, j| {
            0.5 * (self.get(i, j) + self.get(j, i).conj())
        })
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> ComplexMatrix {
        Self::from_vec(
            self.rows,
            self.cols,
            self.data.iter().map(|&z| f(z)).collect(),
        )
    }

    fn zip_with(&self, other: &ComplexMatrix, f: impl Fn(C64, C64) -> C64) -> ComplexMatrix {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self::from_vec(self.rows, self.cols, data)
    }

    fn check_same_shape(&self, op: &'static str, other: &ComplexMatrix) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::dim(
                op,
                format!(
                    "{}x{} vs {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            ));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch, like slice indexing; use the
// `try_*` / `matmul` methods where the shapes are not known to agree.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:>10.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap()
    }

    fn naive_matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(a.rows(), b.cols()).into_vec();
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                for k in 0..a.cols() {
                    out[i * b.cols() + j] += a[(i, k)] * b[(k, j)];
                }
            }
        }
        ComplexMatrix::new(a.rows(), b.cols(), out).unwrap()
    }

    fn sample(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
        // small deterministic LCG keeps this module free of rand
        let mut state = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        ComplexMatrix::from_fn(rows, cols, |_, _| c(next(), next()))
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![c(0.0, 0.0); 3]),
            Err(Error::Dimension { .. })
        ));
        assert_eq!(
            ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite)
        );
        assert!(ComplexMatrix::new(0, 1, vec![]).is_err());
        assert!(ComplexMatrix::from_real_rows(&[vec![1.0], vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn matmul_identity_and_involution() {
        let x = pauli_x();
        assert_eq!(&ComplexMatrix::identity(2) * &x, x);
        assert_eq!(&x * &x, ComplexMatrix::identity(2));
    }

    #[test]
    fn matmul_matches_triple_loop() {
        let a = sample(3, 4, 1);
        let b = sample(4, 2, 2);
        let fast = a.matmul(&b).unwrap();
        assert!(fast.max_abs_diff(&naive_matmul(&a, &b)) <= 1e-13);
    }

    #[test]
    fn matmul_shape_mismatch() {
        let err = sample(2, 3, 1).matmul(&sample(2, 3, 2)).unwrap_err();
        assert!(matches!(err, Error::Dimension { op: "matmul", .. }));
    }

    #[test]
    fn dagger_cases() {
        let sym = ComplexMatrix::from_real_rows(&[[1.0, 2.0], [2.0, 5.0]]).unwrap();
        assert_eq!(sym.dagger(), sym);
        let a = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, 1.0)], vec![c(0.0, 0.0); 2]])
            .unwrap();
        let expected =
            ComplexMatrix::from_rows(&[vec![c(0.0, 0.0); 2], vec![c(0.0, -1.0), c(0.0, 0.0)]])
                .unwrap();
        assert_eq!(a.dagger(), expected);
        let r = sample(3, 5, 9);
        assert_eq!(r.dagger().dagger(), r);
    }

    #[test]
    fn kron_cases() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));

        let e11 = ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]]).unwrap();
        let k = e11.kron(&e11);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == 0 && j == 0 { 1.0 } else { 0.0 };
                assert_eq!(k[(i, j)], c(want, 0.0));
            }
        }

        let (a, b, cc, d) = (
            sample(2, 2, 3),
            sample(2, 2, 4),
            sample(2, 2, 5),
            sample(2, 2, 6),
        );
        let lhs = &a.kron(&b) * &cc.kron(&d);
        let rhs = (&a * &cc).kron(&(&b * &d));
        assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn kron_is_associative() {
        let (a, b, cc) = (sample(2, 3, 7), sample(3, 2, 8), sample(2, 2, 9));
        let left = a.kron(&b).kron(&cc);
        let right = a.kron(&b.kron(&cc));
        assert!(left.max_abs_diff(&right) <= 1e-13);
    }

    #[test]
    fn inner_product_is_conjugate_linear_in_first_argument() {
        let (a, b) = (sample(3, 3, 10), sample(3, 3, 11));
        let alpha = c(0.3, -1.7);
        let lhs = a.scale(alpha).inner(&b).unwrap();
        let rhs = alpha.conj() * a.inner(&b).unwrap();
        assert!((lhs - rhs).norm() <= 1e-13);
        let trace_form = (&a.dagger() * &b).trace();
        assert!((a.inner(&b).unwrap() - trace_form).norm() <= 1e-13);
        // ⟨a, a⟩ is real and non-negative
        let aa = a.inner(&a).unwrap();
        assert!(aa.im.abs() <= 1e-14 && aa.re > 0.0);
    }

    #[test]
    fn hermiticity() {
        let h = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 2.0)],
            vec![c(0.0, -2.0), c(3.0, 0.0)],
        ])
        .unwrap();
        assert!(h.is_hermitian(0.0));
        assert!(!sample(2, 2, 12).is_hermitian(1e-6));
        assert_eq!(sample(2, 3, 1).hermiticity_deviation(), f64::INFINITY);
    }
}
