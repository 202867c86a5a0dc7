//! Reshaping, vectorization and reshuffling.
//!
//! Canonical bases are enumerated so that `res(ε_k) = e_k`: the `k`-th
//! (zero-based) basis matrix of `M_m` has its single 1 at row `k / m`,
//! column `k % m`. Every reshuffle below is defined relative to this
//! enumeration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

/// Sizes `(m, n)` of the two factors of a bipartite split `C^m ⊗ C^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DimPair {
    pub m: usize,
    pub n: usize,
}

impl DimPair {
    pub const fn new(m: usize, n: usize) -> Self {
        Self { m, n }
    }

    pub const fn square(k: usize) -> Self {
        Self { m: k, n: k }
    }

    /// `m · n`.
    pub const fn product(&self) -> usize {
        self.m * self.n
    }

    pub const fn swapped(&self) -> Self {
        Self {
            m: self.n,
            n: self.m,
        }
    }

    pub(crate) fn check(&self, op: &'static str) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::dim(
                op,
                format!("split ({}, {}) must be positive", self.m, self.n),
            ));
        }
        Ok(())
    }
}

impl From<(usize, usize)> for DimPair {
    fn from((m, n): (usize, usize)) -> Self {
        Self { m, n }
    }
}

/// Row-major flattening into a column vector.
pub fn res(a: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::column(a.as_slice().to_vec()).expect("non-empty matrix")
}

/// Column-major flattening into a column vector.
pub fn vec(a: &ComplexMatrix) -> ComplexMatrix {
    res(&a.transpose())
}

/// Inverse of [`res`]: refills an `m x n` matrix row by row.
pub fn unres(v: &ComplexMatrix, dims: DimPair) -> Result<ComplexMatrix> {
    check_vector("unres", v, dims)?;
    ComplexMatrix::new(dims.m, dims.n, v.as_slice().to_vec())
}

/// Inverse of [`vec`]: refills an `m x n` matrix column by column.
pub fn unvec(v: &ComplexMatrix, dims: DimPair) -> Result<ComplexMatrix> {
    check_vector("unvec", v, dims)?;
    Ok(unres(v, dims.swapped())?.transpose())
}

fn check_vector(op: &'static str, v: &ComplexMatrix, dims: DimPair) -> Result<()> {
    dims.check(op)?;
    if !v.is_column() || v.rows() != dims.product() {
        return Err(Error::dim(
            op,
            format!(
                "expected a column vector of length {}, got {}x{}",
                dims.product(),
                v.rows(),
                v.cols()
            ),
        ));
    }
    Ok(())
}

/// Source positions in `res(A)` for each position of `res(A^R)`, where `A`
/// has its rows split as `rows = (m_o, n_o)` and its columns as
/// `cols = (m_i, n_i)`:
///
/// `A^R[(r1, c1), (r2, c2)] = A[(r1, r2), (c1, c2)]`
///
/// with `r1 < m_o, r2 < n_o, c1 < m_i, c2 < n_i`. The output is
/// `(m_o m_i) x (n_o n_i)`.
fn reshuffle_sources(rows: DimPair, cols: DimPair) -> Vec<usize> {
    let (mo, no, mi, ni) = (rows.m, rows.n, cols.m, cols.n);
    let in_cols = mi * ni;
    let mut map = Vec::with_capacity(mo * no * mi * ni);
    for r1 in 0..mo {
        for c1 in 0..mi {
            for r2 in 0..no {
                for c2 in 0..ni {
                    map.push((r1 * no + r2) * in_cols + c1 * ni + c2);
                }
            }
        }
    }
    map
}

fn gather(a: &ComplexMatrix, rows: usize, cols: usize, sources: &[usize]) -> ComplexMatrix {
    let data = a.as_slice();
    ComplexMatrix::from_vec(rows, cols, sources.iter().map(|&s| data[s]).collect())
}

fn check_square_split(op: &'static str, a: &ComplexMatrix, dims: DimPair) -> Result<()> {
    dims.check(op)?;
    if !a.is_square() || a.rows() != dims.product() {
        return Err(Error::dim(
            op,
            format!(
                "expected a square matrix of side {}·{} = {}, got {}x{}",
                dims.m,
                dims.n,
                dims.product(),
                a.rows(),
                a.cols()
            ),
        ));
    }
    Ok(())
}

/// Reshuffling `A^{R(m,n)}` of a square matrix on `C^m ⊗ C^n`.
///
/// Entry `(i, j)` is the coefficient of `ε_i ⊗ ϵ_j` in `A`, with `ε_i`
/// running over the canonical basis of `M_m` and `ϵ_j` over `M_n`. The
/// result is `m² x n²`.
pub fn reshuffle(a: &ComplexMatrix, dims: DimPair) -> Result<ComplexMatrix> {
    check_square_split("reshuffle", a, dims)?;
    Ok(reshuffle_general(a, dims, dims))
}

/// Reshuffle with independent row and column splits. `a` must be
/// `(rows.m·rows.n) x (cols.m·cols.n)`; no check is performed.
pub(crate) fn reshuffle_general(a: &ComplexMatrix, rows: DimPair, cols: DimPair) -> ComplexMatrix {
    let sources = reshuffle_sources(rows, cols);
    gather(a, rows.m * cols.m, rows.n * cols.n, &sources)
}

/// Alternative reshuffling `A^{R'(m,n)}` built on the column-major basis
/// enumeration: entry `(i, j)` is `tr[(ε_j ⊗ ϵ_i) A]` with `vec(ε_jᵀ) = e_j`.
/// The result is `n² x m²`.
pub fn reshuffle_alt(a: &ComplexMatrix, dims: DimPair) -> Result<ComplexMatrix> {
    check_square_split("reshuffle_alt", a, dims)?;
    let (m, n) = (dims.m, dims.n);
    let side = m * n;
    let mut sources = Vec::with_capacity(side * side);
    for i in 0..n * n {
        let (r2, c2) = (i % n, i / n);
        for j in 0..m * m {
            let (r1, c1) = (j % m, j / m);
            sources.push((r1 * n + r2) * side + c1 * n + c2);
        }
    }
    Ok(gather(a, n * n, m * m, &sources))
}

/// Permutation matrix `M_R` with `res(A^R) = M_R · res(A)`.
///
/// `dims_out` splits the row index of `A` and `dims_in` its column index,
/// so `A ∈ M_{m_o n_o, m_i n_i}`. For a square matrix on `C^m ⊗ C^n` pass
/// the same `(m, n)` twice; for `(2, 2), (2, 2)` this is the 16x16
/// reshuffling matrix on `M_4`.
pub fn reshuffle_permutation(dims_out: DimPair, dims_in: DimPair) -> Result<ComplexMatrix> {
    dims_out.check("reshuffle_permutation")?;
    dims_in.check("reshuffle_permutation")?;
    Ok(permutation_matrix(&reshuffle_sources(dims_out, dims_in)))
}

/// Index form of [`reshuffle_permutation`]: `sources[k]` is the position in
/// `res(A)` that lands at position `k` of `res(A^R)`.
pub(crate) fn reshuffle_permutation_sources(dims_out: DimPair, dims_in: DimPair) -> Vec<usize> {
    reshuffle_sources(dims_out, dims_in)
}

/// Matrix `P` with `P[k, sources[k]] = 1`, so `(P x)_k = x[sources[k]]`.
fn permutation_matrix(sources: &[usize]) -> ComplexMatrix {
    let n = sources.len();
    let mut data = vec![C64::new(0.0, 0.0); n * n];
    for (k, &s) in sources.iter().enumerate() {
        data[k * n + s] = C64::new(1.0, 0.0);
    }
    ComplexMatrix::from_vec(n, n, data)
}

/// Permutation `P(m, n)` with `res(Aᵀ) = P(m, n) · res(A)` for every
/// `A ∈ M_{m,n}`.
pub fn transpose_permutation(dims: DimPair) -> Result<ComplexMatrix> {
    dims.check("transpose_permutation")?;
    let (m, n) = (dims.m, dims.n);
    let mut sources = vec![0; m * n];
    for i in 0..m {
        for j in 0..n {
            sources[j * m + i] = i * n + j;
        }
    }
    Ok(permutation_matrix(&sources))
}

/// Swap `S` on `C^k ⊗ C^k` for `d = k²`: `S (x ⊗ y) = y ⊗ x`.
pub fn swap_matrix(d: usize) -> Result<ComplexMatrix> {
    let k = (d as f64).sqrt().round() as usize;
    if d == 0 || k * k != d {
        return Err(Error::dim(
            "swap_matrix",
            format!("{d} is not a positive perfect square"),
        ));
    }
    transpose_permutation(DimPair::square(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn alpha_matrix() -> ComplexMatrix {
        ComplexMatrix::from_fn(4, 4, |i, j| c((10 * (i + 1) + (j + 1)) as f64))
    }

    fn ints(rows: &[[i32; 4]]) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows.len(), 4, |i, j| c(rows[i][j] as f64))
    }

    /// Definition-level oracle: B_ij = res(ε_i ⊗ ϵ_j) · res(A).
    fn reshuffle_by_trace(a: &ComplexMatrix, m: usize, n: usize) -> ComplexMatrix {
        let basis = |k: usize, d: usize| {
            ComplexMatrix::from_fn(d, d, |r, s| if r * d + s == k { c(1.0) } else { c(0.0) })
        };
        ComplexMatrix::from_fn(m * m, n * n, |i, j| {
            let e = basis(i, m).kron(&basis(j, n));
            e.inner(a).unwrap()
        })
    }

    fn sample(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
        let mut state = seed ^ 0xDEADBEEF;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        ComplexMatrix::from_fn(rows, cols, |_, _| C64::new(next(), next()))
    }

    #[test]
    fn res_and_vec_orders() {
        let a = ComplexMatrix::from_real_rows(&[[11.0, 12.0], [21.0, 22.0]]).unwrap();
        let r: Vec<f64> = res(&a).as_slice().iter().map(|z| z.re).collect();
        let v: Vec<f64> = vec(&a).as_slice().iter().map(|z| z.re).collect();
        assert_eq!(r, [11.0, 12.0, 21.0, 22.0]);
        assert_eq!(v, [11.0, 21.0, 12.0, 22.0]);
        let id = ComplexMatrix::identity(2);
        assert_eq!(res(&id), vec(&id));
        assert_eq!(res(&id).as_slice(), &[c(1.0), c(0.0), c(0.0), c(1.0)]);
    }

    #[test]
    fn unres_unvec_examples() {
        let v = ComplexMatrix::column((1..=6).map(|k| c(k as f64)).collect()).unwrap();
        let a = unres(&v, DimPair::new(2, 3)).unwrap();
        assert_eq!(
            a,
            ComplexMatrix::from_real_rows(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]).unwrap()
        );
        let v4 = ComplexMatrix::column((1..=4).map(|k| c(k as f64)).collect()).unwrap();
        assert_eq!(
            unvec(&v4, DimPair::new(2, 2)).unwrap(),
            ComplexMatrix::from_real_rows(&[[1.0, 3.0], [2.0, 4.0]]).unwrap()
        );
    }

    #[test]
    fn unres_matches_index_formula() {
        let v = sample(12, 1, 3);
        let (m, n) = (3, 4);
        let a = unres(&v, DimPair::new(m, n)).unwrap();
        for k in 0..m * n {
            assert_eq!(a[(k / n, k % n)], v[(k, 0)]);
        }
        let b = unvec(&v, DimPair::new(m, n)).unwrap();
        assert_eq!(b, unres(&v, DimPair::new(n, m)).unwrap().transpose());
    }

    #[test]
    fn length_mismatch_errors() {
        let v = sample(5, 1, 1);
        assert!(matches!(
            unres(&v, DimPair::new(2, 3)),
            Err(Error::Dimension { .. })
        ));
        assert!(matches!(
            unvec(&v, DimPair::new(2, 3)),
            Err(Error::Dimension { .. })
        ));
        let not_column = sample(2, 3, 1);
        assert!(unres(&not_column, DimPair::new(2, 3)).is_err());
        assert!(unres(&sample(1, 1, 1), DimPair::new(0, 1)).is_err());
    }

    #[test]
    fn reshuffle_alpha_fixture() {
        let r = reshuffle(&alpha_matrix(), DimPair::new(2, 2)).unwrap();
        let expected = ints(&[
            [11, 12, 21, 22],
            [13, 14, 23, 24],
            [31, 32, 41, 42],
            [33, 34, 43, 44],
        ]);
        assert_eq!(r, expected);

        let alt = reshuffle_alt(&alpha_matrix(), DimPair::new(2, 2)).unwrap();
        let expected_alt = ints(&[
            [11, 31, 13, 33],
            [21, 41, 23, 43],
            [12, 32, 14, 34],
            [22, 42, 24, 44],
        ]);
        assert_eq!(alt, expected_alt);
    }

    #[test]
    fn reshuffle_matches_trace_definition() {
        for (m, n) in [
            (1, 3),
            (2, 2),
            (2, 3),
            (3, 2),
            (3, 4),
            (4, 3),
            (2, 6),
            (6, 2),
            (3, 3),
        ] {
            let a = sample(m * n, m * n, (m * 10 + n) as u64);
            let fast = reshuffle(&a, DimPair::new(m, n)).unwrap();
            assert_eq!(fast, reshuffle_by_trace(&a, m, n), "split ({m}, {n})");
        }
    }

    #[test]
    fn reshuffle_rejects_bad_side() {
        let a = sample(3, 3, 1);
        assert!(matches!(
            reshuffle(&a, DimPair::new(2, 2)),
            Err(Error::Dimension { .. })
        ));
        assert!(reshuffle_alt(&a, DimPair::new(2, 2)).is_err());
        assert!(reshuffle(&sample(4, 2, 1), DimPair::new(2, 2)).is_err());
    }

    #[test]
    fn kron_reshuffle_identities() {
        for (m, n) in [(2, 2), (2, 3), (3, 2)] {
            let a = sample(m, m, 5);
            let b = sample(n, n, 6);
            let ab = a.kron(&b);
            let lhs = res(&reshuffle(&ab, DimPair::new(m, n)).unwrap());
            assert!(lhs.max_abs_diff(&res(&a).kron(&res(&b))) <= 1e-12);
            let lhs_alt = vec(&reshuffle_alt(&ab, DimPair::new(m, n)).unwrap());
            assert!(lhs_alt.max_abs_diff(&vec(&a).kron(&vec(&b))) <= 1e-12);
        }
    }

    #[test]
    fn alt_reshuffle_through_swap() {
        let a = sample(4, 4, 8);
        let s = swap_matrix(4).unwrap();
        let via_swap = (&(&s * &reshuffle(&a, DimPair::new(2, 2)).unwrap()) * &s).transpose();
        assert!(
            reshuffle_alt(&a, DimPair::new(2, 2))
                .unwrap()
                .max_abs_diff(&via_swap)
                <= 1e-12
        );
    }

    #[test]
    fn reshuffle_permutation_fixture() {
        let mr = reshuffle_permutation(DimPair::new(2, 2), DimPair::new(2, 2)).unwrap();
        // column of the single 1 in each row
        let ones = [0, 1, 4, 5, 2, 3, 6, 7, 8, 9, 12, 13, 10, 11, 14, 15];
        for (row, &col) in ones.iter().enumerate() {
            for j in 0..16 {
                let want = if j == col { 1.0 } else { 0.0 };
                assert_eq!(mr[(row, j)], c(want));
            }
        }
        assert_eq!(&mr * &mr, ComplexMatrix::identity(16));
    }

    #[test]
    fn reshuffle_permutation_acts_on_res() {
        for (m, n) in [(2, 3), (3, 2), (2, 2), (1, 4)] {
            let dims = DimPair::new(m, n);
            let a = sample(m * n, m * n, 31);
            let p = reshuffle_permutation(dims, dims).unwrap();
            let expected = res(&reshuffle_by_trace(&a, m, n));
            assert_eq!(&p * &res(&a), expected);
            assert_is_permutation(&p);
        }
    }

    #[test]
    fn rectangular_reshuffle_permutation() {
        // A ∈ M_{2·3, 1·2}: rows split (2,3), columns (1,2)
        let (ro, ci) = (DimPair::new(2, 3), DimPair::new(1, 2));
        let a = sample(6, 2, 4);
        let p = reshuffle_permutation(ro, ci).unwrap();
        let r = reshuffle_general(&a, ro, ci);
        assert_eq!(r.shape(), (2, 6));
        assert_eq!(&p * &res(&a), res(&r));
        // product input regroups into res ⊗ res
        let x = sample(2, 1, 1);
        let y = sample(3, 2, 2);
        let prod = reshuffle_general(&x.kron(&y), ro, ci);
        assert!(res(&prod).max_abs_diff(&res(&x).kron(&res(&y))) <= 1e-14);
    }

    fn assert_is_permutation(p: &ComplexMatrix) {
        let n = p.rows();
        for i in 0..n {
            let row_ones = (0..n).filter(|&j| p[(i, j)] == c(1.0)).count();
            let row_zeros = (0..n).filter(|&j| p[(i, j)] == c(0.0)).count();
            assert_eq!((row_ones, row_zeros), (1, n - 1));
            let col_ones = (0..n).filter(|&j| p[(j, i)] == c(1.0)).count();
            assert_eq!(col_ones, 1);
        }
    }

    #[test]
    fn transpose_permutation_cases() {
        let p22 = transpose_permutation(DimPair::new(2, 2)).unwrap();
        let swap = ComplexMatrix::from_real_rows(&[
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert_eq!(p22, swap);

        let a = sample(3, 2, 12);
        let p = transpose_permutation(DimPair::new(3, 2)).unwrap();
        assert_eq!(&p * &res(&a), res(&a.transpose()));
        let back = transpose_permutation(DimPair::new(2, 3)).unwrap();
        assert_eq!(&back * &p, ComplexMatrix::identity(6));
    }

    #[test]
    fn transpose_permutation_from_unit_matrices() {
        // Σ_ij ε_ijᵀ ⊗ ε_ij with ε_ij the m x n unit matrices
        let (m, n) = (3, 2);
        let mut sum = ComplexMatrix::zeros(m * n, m * n);
        for i in 0..m {
            for j in 0..n {
                let e =
                    ComplexMatrix::from_fn(
                        m,
                        n,
                        |r, s| if (r, s) == (i, j) { c(1.0) } else { c(0.0) },
                    );
                sum = &sum + &e.transpose().kron(&e);
            }
        }
        assert_eq!(sum, transpose_permutation(DimPair::new(m, n)).unwrap());
    }

    #[test]
    fn swap_exchanges_factors() {
        let s = swap_matrix(9).unwrap();
        let x = sample(3, 1, 1);
        let y = sample(3, 1, 2);
        assert!((&s * &x.kron(&y)).max_abs_diff(&y.kron(&x)) <= 1e-15);
        assert_eq!(&s * &s, ComplexMatrix::identity(9));
        assert!(matches!(swap_matrix(8), Err(Error::Dimension { .. })));
        assert!(swap_matrix(0).is_err());
    }

    proptest! {
        #[test]
        fn res_unres_round_trip(m in 1usize..5, n in 1usize..5, seed in any::<u64>()) {
            let a = sample(m, n, seed);
            prop_assert_eq!(unres(&res(&a), DimPair::new(m, n)).unwrap(), a.clone());
            prop_assert_eq!(unvec(&vec(&a), DimPair::new(m, n)).unwrap(), a.clone());
            prop_assert_eq!(vec(&a), res(&a.transpose()));
        }

        #[test]
        fn symmetric_reshuffle_is_an_involution(k in 1usize..4, seed in any::<u64>()) {
            let a = sample(k * k, k * k, seed);
            let dims = DimPair::square(k);
            let twice = reshuffle(&reshuffle(&a, dims).unwrap(), dims).unwrap();
            prop_assert_eq!(twice, a);
        }
    }
}
