//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls the crate's index-permutation code; every oracle is
//! written from the defining formula with explicit loops or basis matrices.

#![allow(dead_code)]

pub mod golden;

use qi_reorder::{ComplexMatrix, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

pub fn real(rows: &[&[f64]]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(rows).unwrap()
}

/// `|i⟩⟨j|` in `M_{rows, cols}`.
pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |r, s| {
        if (r, s) == (i, j) {
            c(1.0, 0.0)
        } else {
            zero()
        }
    })
}

/// Canonical basis of `M_m` ordered so that `res(ε_k) = e_k`.
pub fn basis(m: usize) -> Vec<ComplexMatrix> {
    (0..m * m).map(|k| unit(m, m, k / m, k % m)).collect()
}

pub fn ket(n: usize, i: usize) -> ComplexMatrix {
    unit(n, 1, i, 0)
}

pub fn triple_loop_matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!(a.cols(), b.rows());
    let mut out = vec![zero(); a.rows() * b.cols()];
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut acc = zero();
            for k in 0..a.cols() {
                acc += a[(i, k)] * b[(k, j)];
            }
            out[i * b.cols() + j] = acc;
        }
    }
    ComplexMatrix::new(a.rows(), b.cols(), out).unwrap()
}

/// Row-major flattening by explicit loops.
pub fn res_oracle(a: &ComplexMatrix) -> Vec<C64> {
    let mut v = Vec::new();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            v.push(a[(i, j)]);
        }
    }
    v
}

/// Column-major flattening by explicit loops.
pub fn vec_oracle(a: &ComplexMatrix) -> Vec<C64> {
    let mut v = Vec::new();
    for j in 0..a.cols() {
        for i in 0..a.rows() {
            v.push(a[(i, j)]);
        }
    }
    v
}

pub fn column(v: Vec<C64>) -> ComplexMatrix {
    ComplexMatrix::column(v).unwrap()
}

/// `A^R[i, j] = tr[(ε_i ⊗ ϵ_j)† A]`: the coefficient of `ε_i ⊗ ϵ_j` in `A`.
pub fn reshuffle_by_trace(a: &ComplexMatrix, m: usize, n: usize) -> ComplexMatrix {
    let (bm, bn) = (basis(m), basis(n));
    ComplexMatrix::from_fn(m * m, n * n, |i, j| {
        let e = bm[i].kron(&bn[j]);
        (&e.dagger() * a).trace()
    })
}

/// `(M_Φ)_{kl} = tr[ε_k† Φ(ε_l)]`.
pub fn superop_by_trace(f: impl Fn(&ComplexMatrix) -> ComplexMatrix, n: usize) -> ComplexMatrix {
    let b = basis(n);
    let images: Vec<ComplexMatrix> = b.iter().map(&f).collect();
    ComplexMatrix::from_fn(n * n, n * n, |k, l| (&b[k].dagger() * &images[l]).trace())
}

/// `Σ_c (𝟙 ⊗ ⟨c|) ρ (𝟙 ⊗ |c⟩)` and its mirror image, with explicit loops
/// over all four indices.
pub fn partial_trace_oracle(
    rho: &ComplexMatrix,
    m: usize,
    n: usize,
    trace_second: bool,
) -> ComplexMatrix {
    if trace_second {
        let mut out = vec![zero(); m * m];
        for a in 0..m {
            for b in 0..m {
                for x in 0..n {
                    for y in 0..n {
                        if x == y {
                            out[a * m + b] += rho[(a * n + x, b * n + y)];
                        }
                    }
                }
            }
        }
        ComplexMatrix::new(m, m, out).unwrap()
    } else {
        let mut out = vec![zero(); n * n];
        for x in 0..n {
            for y in 0..n {
                for a in 0..m {
                    for b in 0..m {
                        if a == b {
                            out[x * n + y] += rho[(a * n + x, b * n + y)];
                        }
                    }
                }
            }
        }
        ComplexMatrix::new(n, n, out).unwrap()
    }
}

/// `(T ⊗ 𝟙)ρ = Σ_ab (E_ab ⊗ 𝟙) ρ (E_ab ⊗ 𝟙)`, from `Xᵀ = Σ_ab E_ab X E_ab`.
pub fn partial_transpose_first_oracle(rho: &ComplexMatrix, m: usize, n: usize) -> ComplexMatrix {
    let id = ComplexMatrix::identity(n);
    let mut out = ComplexMatrix::zeros(m * n, m * n);
    for a in 0..m {
        for b in 0..m {
            let e = unit(m, m, a, b).kron(&id);
            out = &out + &(&(&e * rho) * &e);
        }
    }
    out
}

/// Largest elementwise gap between two multisets of reals after sorting.
pub fn multiset_distance(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "multisets of different size");
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter()
        .zip(&b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian 2x2 block in closed form.
pub fn eig2(a: &ComplexMatrix) -> [f64; 2] {
    let (p, q, r) = (a[(0, 0)].re, a[(1, 1)].re, a[(0, 1)].norm());
    let mean = 0.5 * (p + q);
    let gap = (0.25 * (p - q) * (p - q) + r * r).sqrt();
    [mean + gap, mean - gap]
}

pub fn bell_projector() -> ComplexMatrix {
    let s = 0.5;
    real(&[&[s, 0.0, 0.0, s], &[0.0; 4], &[0.0; 4], &[s, 0.0, 0.0, s]])
}

/// `w |ψ⁻⟩⟨ψ⁻| + (1 − w) 𝟙/4`.
pub fn werner(w: f64) -> ComplexMatrix {
    let s = 0.5f64.sqrt();
    let psi = [0.0, s, -s, 0.0];
    ComplexMatrix::from_fn(4, 4, |i, j| {
        let id = if i == j { 0.25 } else { 0.0 };
        c(w * psi[i] * psi[j] + (1.0 - w) * id, 0.0)
    })
}

/// Qubit depolarizing channel in the Pauli-mixture form.
pub fn pauli_form_depolarizing(p: f64) -> Vec<ComplexMatrix> {
    let a = ((1.0 + 3.0 * p) / 4.0).sqrt();
    let b = ((1.0 - p) / 4.0).sqrt();
    let x = real(&[&[0.0, 1.0], &[1.0, 0.0]]);
    let y =
        ComplexMatrix::from_rows(&[vec![zero(), c(0.0, -1.0)], vec![c(0.0, 1.0), zero()]]).unwrap();
    let z = real(&[&[1.0, 0.0], &[0.0, -1.0]]);
    vec![
        ComplexMatrix::identity(2).scale_real(a),
        x.scale_real(b),
        y.scale_real(b),
        z.scale_real(b),
    ]
}

/// `Σ K ⊗ conj(K)` written out entrywise: `M[(a,b),(i,j)] = Σ K_ai conj(K_bj)`.
pub fn superop_from_kraus_oracle(ops: &[ComplexMatrix]) -> ComplexMatrix {
    let n = ops[0].rows();
    ComplexMatrix::from_fn(n * n, n * n, |r, s| {
        let (a, b) = (r / n, r % n);
        let (i, j) = (s / n, s % n);
        ops.iter().map(|k| k[(a, i)] * k[(b, j)].conj()).sum()
    })
}
