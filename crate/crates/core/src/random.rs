//! Random test objects: Ginibre matrices, Haar unitaries, density matrices
//! and CPTP Kraus sets.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::channel::KrausSet;
use crate::linalg::{eig_hermitian, from_columns, ComplexMatrix, C64};

/// Matrix with i.i.d. entries `(x + iy)/√2`, `x, y ~ N(0, 1)`.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    let scale = 0.5f64.sqrt();
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * scale, im * scale)
    })
}

/// Haar-distributed unitary from the QR factorization of a Ginibre matrix.
///
/// Gram-Schmidt leaves `R` with a positive diagonal, which is the phase
/// convention that makes `Q` Haar distributed.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(n, n, rng);
    let mut columns: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.column_vec(j);
        // twice is enough for full working precision
        for _ in 0..2 {
            for q in &columns {
                let proj: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= norm);
        columns.push(v);
    }
    from_columns(&columns, n)
}

/// Density matrix `G G† / tr(G G†)` with `G` an `n x k` Ginibre matrix.
/// `rank = n` gives the Hilbert-Schmidt measure.
pub fn random_density_matrix<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(n, rank.max(1), rng);
    let rho = &g * &g.dagger();
    let tr = rho.trace().re;
    rho.scale_real(1.0 / tr)
}

/// Unit vector drawn uniformly from the sphere in `C^n`.
pub fn random_pure_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(n, 1, rng);
    let norm = g.frobenius_norm();
    g.scale_real(1.0 / norm)
}

/// Random CPTP channel on `M_n` with `k` Kraus operators.
///
/// Draws Ginibre `G_i` and rescales `K_i = G_i S^{-1/2}` with
/// `S = Σ G_i† G_i`, so that `Σ K_i† K_i = 𝟙`.
pub fn random_cptp_kraus<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> KrausSet {
    let gs: Vec<ComplexMatrix> = (0..k.max(1)).map(|_| ginibre(n, n, rng)).collect();
    let s = gs
        .iter()
        .map(|g| &g.dagger() * g)
        .reduce(|acc, x| &acc + &x)
        .expect("at least one operator");
    let eig = eig_hermitian(&s).expect("Σ G†G is Hermitian");
    let inv_sqrt: Vec<C64> = eig
        .values
        .iter()
        .map(|&l| C64::new(1.0 / l.sqrt(), 0.0))
        .collect();
    let v = &eig.vectors;
    let s_inv_sqrt = &(v * &ComplexMatrix::diag(&inv_sqrt)) * &v.dagger();
    let ops = gs.iter().map(|g| g * &s_inv_sqrt).collect();
    KrausSet::new(ops).expect("operators share one shape")
}
