//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Everything operates on [`CMatrix`], a row-major matrix of `Complex64`
//! entries. Dimensions stay small here (d ≤ ~32), so the implementations
//! favor clarity and numerical robustness over asymptotic speed.
//!
//! The operator/vector isomorphism used throughout maps A to
//! |A⟩⟩ = Σ_ij A_ij |ij⟩ in the fixed computational basis, so that
//! ⟨⟨A|B⟩⟩ = Tr(A†B) and |AρB⟩⟩ = (A ⊗ Bᵀ)|ρ⟩⟩.

mod bloch;
mod eig;
mod haar;

pub use bloch::BlochVector;
pub use eig::{hermitian_eig, HermitianEig};
pub use haar::{haar_state, haar_unitary};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub(crate) const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Which subsystem of a bipartite operator gets traced out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl std::fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, entries: vec![C_ZERO; rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = C_ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        CMatrix { rows, cols, entries }
    }

    pub fn from_vec(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter("matrix entries must be finite".into()));
        }
        Ok(CMatrix { rows, cols, entries })
    }

    /// Real diagonal matrix.
    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Rank-one |u⟩⟨v|.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == C_ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// ⟨u| M |v⟩.
    pub fn expectation(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        inner(u, &self.matvec(v))
    }

    /// ⟨v| M |v⟩ for Hermitian M; imaginary part discarded.
    pub fn quadratic_form(&self, v: &[Complex64]) -> f64 {
        self.expectation(v, v).re
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &CMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// ‖M − M†‖_F / max(‖M‖_F, 1).
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut defect = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self[(i, j)] - self[(j, i)].conj();
                defect += d.norm_sqr();
            }
        }
        defect.sqrt() / self.frobenius_norm().max(1.0)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Kronecker product: (a⊗b)[(i·rb+k),(j·cb+l)] = a[i,j]·b[k,l].
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (rb, cb) = (other.rows, other.cols);
        CMatrix::from_fn(self.rows * rb, self.cols * cb, |r, c| {
            self[(r / rb, c / cb)] * other[(r % rb, c % cb)]
        })
    }

    /// Trace out one subsystem of an operator on a d_a·d_b dimensional space.
    ///
    /// Tracing out `Subsystem::A` returns the d_b×d_b operator
    /// Σ_k ⟨k|⊗I · M · |k⟩⊗I, and vice versa; the total trace is preserved.
    pub fn partial_trace(&self, d_a: usize, d_b: usize, traced: Subsystem) -> Result<CMatrix> {
        if !self.is_square() || self.rows != d_a * d_b {
            return Err(Error::DimensionMismatch(format!(
                "partial trace of a {}x{} matrix with d_a={} d_b={}",
                self.rows, self.cols, d_a, d_b
            )));
        }
        let m = match traced {
            Subsystem::A => CMatrix::from_fn(d_b, d_b, |l, m| {
                (0..d_a).map(|k| self[(k * d_b + l, k * d_b + m)]).sum()
            }),
            Subsystem::B => CMatrix::from_fn(d_a, d_a, |i, j| {
                (0..d_b).map(|k| self[(i * d_b + k, j * d_b + k)]).sum()
            }),
        };
        Ok(m)
    }

    /// |A⟩⟩ = Σ_ij A_ij |ij⟩ (row-major flattening of a square matrix).
    pub fn vectorize(&self) -> Result<Vec<Complex64>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "vectorize expects a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(self.entries.clone())
    }
}

/// Transpose the B factor of an operator on a d_a·d_b dimensional space.
pub fn partial_transpose(m: &CMatrix, d_a: usize, d_b: usize) -> Result<CMatrix> {
    if !m.is_square() || m.rows() != d_a * d_b {
        return Err(Error::DimensionMismatch(format!(
            "partial transpose of a {}x{} matrix with d_a={} d_b={}",
            m.rows(),
            m.cols(),
            d_a,
            d_b
        )));
    }
    Ok(CMatrix::from_fn(d_a * d_b, d_a * d_b, |r, c| {
        let (i, k) = (r / d_b, r % d_b);
        let (j, l) = (c / d_b, c % d_b);
        m[(i * d_b + l, j * d_b + k)]
    }))
}

/// Inverse of [`CMatrix::vectorize`]; the length must be a perfect square.
pub fn devectorize(v: &[Complex64]) -> Result<CMatrix> {
    let d = (v.len() as f64).sqrt().round() as usize;
    if d * d != v.len() {
        return Err(Error::DimensionMismatch(format!(
            "devectorize expects a perfect-square length, got {}",
            v.len()
        )));
    }
    CMatrix::from_vec(d, d, v.to_vec())
}

/// Convenience alias for the free-function form of the Kronecker product.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kron(b)
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }
}

/// ⟨u|v⟩ with the physics convention (conjugate-linear in the first slot).
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalize(v: &mut [Complex64]) {
    let n = vec_norm(v);
    if n > 0.0 {
        for z in v {
            *z /= n;
        }
    }
}

/// Pauli σ_x.
pub fn sigma_x() -> CMatrix {
    CMatrix::from_vec(2, 2, vec![C_ZERO, C_ONE, C_ONE, C_ZERO]).unwrap()
}

/// Pauli σ_y.
pub fn sigma_y() -> CMatrix {
    CMatrix::from_vec(
        2,
        2,
        vec![C_ZERO, Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), C_ZERO],
    )
    .unwrap()
}

/// Pauli σ_z.
pub fn sigma_z() -> CMatrix {
    CMatrix::from_vec(2, 2, vec![C_ONE, C_ZERO, C_ZERO, -C_ONE]).unwrap()
}

pub fn paulis() -> [CMatrix; 3] {
    [sigma_x(), sigma_y(), sigma_z()]
}

// JSON form: {rows, cols, re: [...], im: [...]}.
#[derive(Serialize, Deserialize)]
struct CMatrixJson {
    rows: usize,
    cols: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CMatrixJson {
            rows: self.rows,
            cols: self.cols,
            re: self.entries.iter().map(|z| z.re).collect(),
            im: self.entries.iter().map(|z| z.im).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = CMatrixJson::deserialize(deserializer)?;
        if raw.re.len() != raw.rows * raw.cols || raw.im.len() != raw.re.len() {
            return Err(D::Error::custom("re/im length does not match rows*cols"));
        }
        let entries = raw
            .re
            .iter()
            .zip(&raw.im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect();
        CMatrix::from_vec(raw.rows, raw.cols, entries).map_err(D::Error::custom)
    }
}
