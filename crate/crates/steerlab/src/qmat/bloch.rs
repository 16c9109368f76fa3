//! Three-dimensional Bloch vectors for the qubit-specific machinery.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{paulis, CMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVector { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn scale(&self, s: f64) -> BlochVector {
        BlochVector::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn add(&self, other: &BlochVector) -> BlochVector {
        BlochVector::new(self.x + other.x, self.y + other.y, self.z + other.z)
    }

    pub fn sub(&self, other: &BlochVector) -> BlochVector {
        BlochVector::new(self.x - other.x, self.y - other.y, self.z - other.z)
    }

    /// Require ‖r‖ = 1 to 1e-12 (direction flag in the domain model).
    pub fn require_unit(&self) -> Result<()> {
        if (self.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "expected a unit Bloch vector, got norm {}",
                self.norm()
            )));
        }
        Ok(())
    }

    pub fn normalized(&self) -> Result<BlochVector> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::InvalidParameter("cannot normalize the zero vector".into()));
        }
        Ok(self.scale(1.0 / n))
    }

    /// n·σ as a 2×2 matrix.
    pub fn dot_sigma(&self) -> CMatrix {
        let [sx, sy, sz] = paulis();
        sx.scale_re(self.x).add(&sy.scale_re(self.y)).add(&sz.scale_re(self.z))
    }

    /// ±1 eigenvectors of n·σ for a unit direction, as kets (plus, minus).
    pub fn eigenkets(&self) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
        self.require_unit()?;
        let theta = self.z.clamp(-1.0, 1.0).acos();
        let phi = self.y.atan2(self.x);
        let (ct, st) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let phase = Complex64::from_polar(1.0, phi);
        let plus = vec![Complex64::new(ct, 0.0), phase * st];
        let minus = vec![Complex64::new(st, 0.0), -phase * ct];
        Ok((plus, minus))
    }

    /// Uniform direction on the unit sphere.
    pub fn random_unit(rng: &mut (impl Rng + ?Sized)) -> BlochVector {
        let z: f64 = rng.random::<f64>() * 2.0 - 1.0;
        let phi: f64 = rng.random::<f64>() * std::f64::consts::TAU;
        let r = (1.0 - z * z).sqrt();
        BlochVector::new(r * phi.cos(), r * phi.sin(), z)
    }

    /// Some unit vector orthogonal to this one (input must be unit).
    pub fn any_orthogonal(&self) -> Result<BlochVector> {
        self.require_unit()?;
        let helper = if self.z.abs() < 0.9 {
            BlochVector::new(0.0, 0.0, 1.0)
        } else {
            BlochVector::new(1.0, 0.0, 0.0)
        };
        // Gram-Schmidt against self
        helper.sub(&self.scale(helper.dot(self))).normalized()
    }
}
