//! Dense complex linear algebra helpers shared across modules.
//!
//! Hermitian eigenproblems are solved by realification: a Hermitian
//! `H = A + iB` maps to the real symmetric `[[A, -B], [B, A]]`, whose
//! spectrum is that of `H` doubled. This keeps the whole crate on
//! pure-Rust linear algebra (no external LAPACK linkage) at desk scale.

use nalgebra::{DMatrix, DVector};

use crate::C64;

/// Eigenvalues (ascending) and eigenvectors of a Hermitian complex matrix.
pub fn eigh(h: &DMatrix<C64>) -> (Vec<f64>, Vec<DVector<C64>>) {
    let n = h.nrows();
    assert_eq!(n, h.ncols(), "eigh: square matrix required");
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut big = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            big[(i, j)] = z.re;
            big[(i + n, j + n)] = z.re;
            big[(i, j + n)] = -z.im;
            big[(i + n, j)] = z.im;
        }
    }
    // Symmetrize against floating asymmetry before the solve.
    let big = (&big + big.transpose()) * 0.5;
    let se = nalgebra::SymmetricEigen::new(big);

    // Each eigenvalue of H appears twice; the realified eigenvectors
    // (x; y) and (-y; x) both map to v = x + iy up to phase. Sort, then
    // keep every other vector after Gram-Schmidt de-duplication within
    // degenerate clusters.
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&a, &b| {
        se.eigenvalues[a]
            .partial_cmp(&se.eigenvalues[b])
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let mut vals: Vec<f64> = Vec::with_capacity(n);
    let mut vecs: Vec<DVector<C64>> = Vec::with_capacity(n);
    for &idx in &order {
        if vals.len() == n {
            break;
        }
        let lambda = se.eigenvalues[idx];
        let col = se.eigenvectors.column(idx);
        let mut v = DVector::<C64>::zeros(n);
        for i in 0..n {
            v[i] = C64::new(col[i], col[i + n]);
        }
        // Project out previously accepted vectors in the same cluster.
        for (pv, &pl) in vecs.iter().zip(vals.iter()) {
            if (lambda - pl).abs() < 1e-9 {
                let overlap: C64 = pv.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
                let pv = pv.clone();
                v -= pv * overlap;
            }
        }
        let norm = v.norm();
        if norm < 1e-8 {
            continue; // duplicate realified copy
        }
        v /= C64::new(norm, 0.0);
        vals.push(lambda);
        vecs.push(v);
    }
    assert_eq!(vals.len(), n, "eigh: failed to extract a full eigenbasis");
    (vals, vecs)
}

/// Max absolute entry of a complex matrix.
pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// ‖A - A†‖_max.
pub fn hermiticity_defect(m: &DMatrix<C64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// ‖AB - BA‖_max.
pub fn commutator_norm(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    max_abs(&(a * b - b * a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigh_matches_known_pauli_y() {
        // sigma_y has eigenvalues -1, +1 and genuinely complex entries.
        let mut m = DMatrix::<C64>::zeros(2, 2);
        m[(0, 1)] = C64::new(0.0, -1.0);
        m[(1, 0)] = C64::new(0.0, 1.0);
        let (vals, vecs) = eigh(&m);
        assert!((vals[0] + 1.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
        for (lambda, v) in vals.iter().zip(vecs.iter()) {
            let mv = &m * v;
            let residual = (mv - v * C64::new(*lambda, 0.0)).norm();
            assert!(residual < 1e-10, "eigenpair residual {residual}");
        }
    }

    #[test]
    fn eigh_random_hermitian_reconstructs() {
        let n = 7;
        let mut h = DMatrix::<C64>::zeros(n, n);
        // Deterministic pseudo-random fill.
        let mut s = 1u64;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 33) as f64 / (1u64 << 31) as f64) - 1.0
        };
        for i in 0..n {
            for j in 0..=i {
                let z = C64::new(next(), if i == j { 0.0 } else { next() });
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
        let (vals, vecs) = eigh(&h);
        // Reconstruct H = V diag V†.
        let mut recon = DMatrix::<C64>::zeros(n, n);
        for (lambda, v) in vals.iter().zip(vecs.iter()) {
            recon += v * v.adjoint() * C64::new(*lambda, 0.0);
        }
        assert!(max_abs(&(recon - h)) < 1e-9);
    }
}
