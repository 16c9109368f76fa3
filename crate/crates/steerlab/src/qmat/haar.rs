//! Haar-distributed unitaries and pure states.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{inner, normalize, vec_norm, CMatrix};

fn gaussian(rng: &mut (impl Rng + ?Sized)) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random d×d unitary.
///
/// Ginibre matrix followed by modified Gram-Schmidt QR. MGS produces an R
/// with real positive diagonal, which is exactly the phase gauge required
/// for Q to carry the Haar measure (the Mezzadri correction); the explicit
/// diagonal-phase multiplication is therefore the identity here.
pub fn haar_unitary(d: usize, rng: &mut (impl Rng + ?Sized)) -> CMatrix {
    assert!(d >= 1, "dimension must be positive");
    let mut cols: Vec<Vec<Complex64>> = (0..d)
        .map(|_| (0..d).map(|_| gaussian(rng)).collect())
        .collect();

    for j in 0..d {
        // two orthogonalization passes keep the Gram defect near machine eps
        for _pass in 0..2 {
            for i in 0..j {
                let r = inner(&cols[i], &cols[j]);
                let qi = cols[i].clone();
                for (c, q) in cols[j].iter_mut().zip(&qi) {
                    *c -= r * q;
                }
            }
        }
        let norm = vec_norm(&cols[j]);
        debug_assert!(norm > 0.0, "Ginibre column collapsed");
        for c in cols[j].iter_mut() {
            *c /= norm;
        }
    }

    CMatrix::from_fn(d, d, |i, j| cols[j][i])
}

/// Haar-random pure state (normalized complex Gaussian vector); equals the
/// first column of a Haar unitary in distribution.
pub fn haar_state(d: usize, rng: &mut (impl Rng + ?Sized)) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..d).map(|_| gaussian(rng)).collect();
    normalize(&mut v);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::C_ZERO;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn d1_is_unit_modulus() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = haar_unitary(1, &mut rng);
        assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn columns_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = haar_unitary(4, &mut rng);
        let gram = u.adjoint().matmul(&u);
        assert!(gram.max_abs_diff(&CMatrix::identity(4)) < 1e-10);
    }

    #[test]
    fn fixed_seed_reproducible() {
        let a = haar_unitary(3, &mut ChaCha8Rng::seed_from_u64(42));
        let b = haar_unitary(3, &mut ChaCha8Rng::seed_from_u64(42));
        assert_eq!(a, b);
    }

    #[test]
    fn first_entry_second_moment() {
        // E|U_00|² = 1/d for Haar; check within 3 estimated standard errors.
        for d in [2usize, 3] {
            let mut rng = ChaCha8Rng::seed_from_u64(100 + d as u64);
            let n = 100_000;
            let mut sum = 0.0;
            let mut sumsq = 0.0;
            for _ in 0..n {
                let x = haar_state(d, &mut rng)[0].norm_sqr();
                sum += x;
                sumsq += x * x;
            }
            let mean = sum / n as f64;
            let var = (sumsq / n as f64 - mean * mean).max(0.0);
            let stderr = (var / n as f64).sqrt();
            assert!(
                (mean - 1.0 / d as f64).abs() < 3.0 * stderr,
                "d={d}: mean {mean} vs {}",
                1.0 / d as f64
            );
        }
    }

    #[test]
    fn left_invariance_statistic() {
        // Haar measure is invariant under left multiplication by a fixed
        // unitary: compare E|U_00|² with E|(VU)_00|² for a fixed V.
        let d = 2;
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let v = haar_unitary(d, &mut ChaCha8Rng::seed_from_u64(123456));
        let n = 50_000;
        let (mut plain, mut rotated) = (0.0, 0.0);
        for _ in 0..n {
            let u = haar_unitary(d, &mut rng);
            plain += u[(0, 0)].norm_sqr();
            let col0: Vec<Complex64> = (0..d).map(|i| u[(i, 0)]).collect();
            let mut rot = C_ZERO;
            for k in 0..d {
                rot += v[(0, k)] * col0[k];
            }
            rotated += rot.norm_sqr();
        }
        let diff = (plain - rotated).abs() / n as f64;
        assert!(diff < 0.01, "left-invariance defect {diff}");
    }
}
