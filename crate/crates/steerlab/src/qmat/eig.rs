//! Hermitian eigendecomposition by cyclic Jacobi rotations.
//!
//! Matrices here are tiny (d ≤ ~32), where Jacobi is simple, numerically
//! robust and needs no external dependency. Each rotation annihilates one
//! off-diagonal pair; sweeps repeat until the off-diagonal Frobenius norm
//! falls below `JACOBI_TOL` relative to the input norm.

use num_complex::Complex64;

use super::{CMatrix, C_ONE};
use crate::error::{Error, Result};
use crate::tol::{HERMITIAN_TOL, JACOBI_TOL};

/// Spectral decomposition M = Σ λ_i v_i v_i†, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as matrix columns, same order.
    pub eigenvectors: CMatrix,
}

impl HermitianEig {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// Rebuild Σ λ_i v_i v_i†.
    pub fn reconstruct(&self) -> CMatrix {
        let d = self.dim();
        let mut m = CMatrix::zeros(d, d);
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let v = self.eigenvector(k);
            m.add_assign(&CMatrix::outer(&v, &v).scale_re(lam));
        }
        m
    }

    /// Apply f to each eigenvalue and rebuild (used for √ρ and pseudo-inverses).
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let d = self.dim();
        let mut m = CMatrix::zeros(d, d);
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let mapped = f(lam);
            if mapped != 0.0 {
                let v = self.eigenvector(k);
                m.add_assign(&CMatrix::outer(&v, &v).scale_re(mapped));
            }
        }
        m
    }
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let d = a.rows();
    let mut s = 0.0;
    for p in 0..d {
        for q in (p + 1)..d {
            s += a[(p, q)].norm_sqr();
        }
    }
    (2.0 * s).sqrt()
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input may carry a relative Hermiticity defect up to 1e-10 (it is
/// symmetrized internally); anything larger is rejected.
pub fn hermitian_eig(m: &CMatrix) -> Result<HermitianEig> {
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NonHermitian { defect });
    }
    let d = m.rows();
    if d == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }

    // Work on the Hermitian part; removes the allowed sub-tolerance drift.
    let mut a = CMatrix::from_fn(d, d, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = CMatrix::identity(d);
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);

    const MAX_SWEEPS: usize = 60;
    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= JACOBI_TOL * scale {
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a[(p, q)];
                let abs = apq.norm();
                if abs <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / abs; // e^{iα}
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;

                // Annihilation condition (c²−s²)|a_pq| = c·s·(a_pp − a_qq),
                // solved for t = s/c with the root of smaller magnitude.
                let delta = (app - aqq) / (2.0 * abs);
                let t = if delta >= 0.0 {
                    1.0 / (delta + (delta * delta + 1.0).sqrt())
                } else {
                    -1.0 / (-delta + (delta * delta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                let sz = phase * s; // s·e^{iα}
                let szc = phase.conj() * s; // s·e^{-iα}

                // A ← U†AU with U = I except U[p,p]=U[q,q]=c,
                // U[p,q] = −s·e^{iα}, U[q,p] = s·e^{-iα}.
                for i in 0..d {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * c + aiq * szc;
                    a[(i, q)] = aiq * c - aip * sz;
                    a[(p, i)] = a[(i, p)].conj();
                    a[(q, i)] = a[(i, q)].conj();
                }
                let two_cs_abs = 2.0 * c * s * abs;
                a[(p, p)] = Complex64::new(c * c * app + s * s * aqq + two_cs_abs, 0.0);
                a[(q, q)] = Complex64::new(c * c * aqq + s * s * app - two_cs_abs, 0.0);
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);

                // V ← V·U accumulates the eigenvectors.
                for i in 0..d {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c + viq * szc;
                    v[(i, q)] = viq * c - vip * sz;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    let diag: Vec<f64> = (0..d).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = CMatrix::from_fn(d, d, |i, k| v[(i, order[k])]);

    Ok(HermitianEig { eigenvalues, eigenvectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{inner, C_ZERO};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(d: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let g = CMatrix::from_fn(d, d, |_, _| {
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        g.add(&g.adjoint()).scale_re(0.5)
    }

    #[test]
    fn diagonal_matrix() {
        let eig = hermitian_eig(&CMatrix::diag(&[0.75, 0.25])).unwrap();
        assert!((eig.eigenvalues[0] - 0.25).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 0.75).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_vec(2, 2, vec![C_ONE, C_ONE, C_ZERO, C_ONE]).unwrap();
        assert!(matches!(hermitian_eig(&m), Err(Error::NonHermitian { .. })));
    }

    #[test]
    fn two_projector_mixture_top_eigenvalue() {
        // ρ = (|e1⟩⟨e1| + |φ⟩⟨φ|)/2 with |⟨e1|φ⟩| = s has λ_max = (1+s)/2.
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let d = 3;
            let s: f64 = rng.random::<f64>();
            let e1: Vec<Complex64> = vec![C_ONE, C_ZERO, C_ZERO];
            let theta: f64 = rng.random::<f64>() * std::f64::consts::TAU;
            let phase = Complex64::from_polar(1.0, theta);
            let phi = vec![phase * s, Complex64::new((1.0 - s * s).sqrt(), 0.0), C_ZERO];
            let rho = CMatrix::outer(&e1, &e1).add(&CMatrix::outer(&phi, &phi)).scale_re(0.5);
            let eig = hermitian_eig(&rho).unwrap();
            assert!((eig.max_eigenvalue() - (1.0 + s) / 2.0).abs() < 1e-12, "d={d} s={s}");
        }
    }

    #[test]
    fn reconstruction_and_orthonormality() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for &d in &[1usize, 2, 3, 4, 6, 9, 16] {
            let m = random_hermitian(d, &mut rng);
            let eig = hermitian_eig(&m).unwrap();

            let recon = eig.reconstruct();
            let rel = recon.sub(&m).frobenius_norm() / m.frobenius_norm().max(1e-300);
            assert!(rel < 1e-10, "reconstruction defect {rel} at d={d}");

            for i in 0..d {
                for j in 0..d {
                    let g = inner(&eig.eigenvector(i), &eig.eigenvector(j));
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((g - Complex64::new(want, 0.0)).norm() < 1e-10);
                }
            }

            // ascending order
            for w in eig.eigenvalues.windows(2) {
                assert!(w[0] <= w[1] + 1e-14);
            }

            let sum: f64 = eig.eigenvalues.iter().sum();
            assert!((sum - m.trace().re).abs() < 1e-10);
        }
    }

    #[test]
    fn degenerate_spectrum() {
        // identity plus a rank-one bump
        let d = 4;
        let mut v = vec![C_ZERO; d];
        v[0] = Complex64::new(0.6, 0.0);
        v[2] = Complex64::new(0.0, 0.8);
        let m = CMatrix::identity(d).add(&CMatrix::outer(&v, &v));
        let eig = hermitian_eig(&m).unwrap();
        assert!((eig.max_eigenvalue() - 2.0).abs() < 1e-12);
        for k in 0..3 {
            assert!((eig.eigenvalues[k] - 1.0).abs() < 1e-12);
        }
    }
}
