//! Weighted rank-one projective measurement sets.
//!
//! A [`MeasurementSet`] is Bob's (or Alice's) side of the steering scenario:
//! N settings, each a complete orthonormal basis {|φ^a_μ⟩} of rank-one
//! projectors, chosen with probability q_μ.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{haar_unitary, inner, BlochVector, CMatrix, C_ONE, C_ZERO};
use crate::tol::{ORTHO_TOL, WEIGHT_TOL};

/// One measurement setting: a weight and a complete orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Setting {
    pub weight: f64,
    basis: Vec<Vec<Complex64>>,
}

impl Setting {
    pub fn new(weight: f64, basis: Vec<Vec<Complex64>>) -> Result<Self> {
        if weight < 0.0 || !weight.is_finite() {
            return Err(Error::InvalidParameter(format!("setting weight {weight} must be >= 0")));
        }
        let d = basis.len();
        if d == 0 || basis.iter().any(|v| v.len() != d) {
            return Err(Error::DimensionMismatch(
                "setting basis must hold d vectors of length d".into(),
            ));
        }
        for a in 0..d {
            for b in 0..d {
                let g = inner(&basis[a], &basis[b]);
                let want = if a == b { C_ONE } else { C_ZERO };
                if (g - want).norm() > ORTHO_TOL {
                    return Err(Error::InvalidParameter(format!(
                        "basis is not orthonormal: |<{a}|{b}> - δ| = {:.3e}",
                        (g - want).norm()
                    )));
                }
            }
        }
        Ok(Setting { weight, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ket(&self, a: usize) -> &[Complex64] {
        &self.basis[a]
    }

    /// Rank-one projector Φ^a = |φ^a⟩⟨φ^a|.
    pub fn projector(&self, a: usize) -> CMatrix {
        CMatrix::outer(&self.basis[a], &self.basis[a])
    }
}

/// Two rank-one qubit projectors (I ± n̂·σ)/2 packed as a setting.
pub fn bloch_measurement(n: BlochVector, weight: f64) -> Result<Setting> {
    let (plus, minus) = n.eigenkets()?;
    Setting::new(weight, vec![plus, minus])
}

/// N weighted projective bases on a d-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSet {
    dim: usize,
    settings: Vec<Setting>,
}

impl MeasurementSet {
    pub fn new(dim: usize, settings: Vec<Setting>) -> Result<Self> {
        if settings.is_empty() {
            return Err(Error::InvalidParameter("a measurement set needs >= 1 setting".into()));
        }
        if settings.iter().any(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch("settings have mixed dimensions".into()));
        }
        let total: f64 = settings.iter().map(|s| s.weight).sum();
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidParameter(format!(
                "setting weights sum to {total}, expected 1"
            )));
        }
        Ok(MeasurementSet { dim, settings })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_settings(&self) -> usize {
        self.settings.len()
    }

    pub fn setting(&self, mu: usize) -> &Setting {
        &self.settings[mu]
    }

    pub fn settings(&self) -> &[Setting] {
        &self.settings
    }

    pub fn weight(&self, mu: usize) -> f64 {
        self.settings[mu].weight
    }

    pub fn ket(&self, mu: usize, a: usize) -> &[Complex64] {
        self.settings[mu].ket(a)
    }

    pub fn projector(&self, mu: usize, a: usize) -> CMatrix {
        self.settings[mu].projector(a)
    }

    /// Computational basis as a single setting.
    pub fn computational(d: usize) -> Self {
        let basis = (0..d)
            .map(|a| {
                let mut v = vec![C_ZERO; d];
                v[a] = C_ONE;
                v
            })
            .collect();
        MeasurementSet { dim: d, settings: vec![Setting { weight: 1.0, basis }] }
    }

    /// Computational plus discrete-Fourier basis, equal weights.
    ///
    /// The two bases are mutually unbiased in every dimension d ≥ 2:
    /// |⟨φ^a_1|φ^b_2⟩|² = 1/d for all outcomes.
    pub fn mub_pair(d: usize) -> Self {
        assert!(d >= 2, "MUB pair needs d >= 2");
        let comp = MeasurementSet::computational(d).settings[0].basis.clone();
        let omega = std::f64::consts::TAU / d as f64;
        let norm = 1.0 / (d as f64).sqrt();
        let fourier: Vec<Vec<Complex64>> = (0..d)
            .map(|b| {
                (0..d)
                    .map(|a| Complex64::from_polar(norm, omega * (a * b) as f64))
                    .collect()
            })
            .collect();
        MeasurementSet {
            dim: d,
            settings: vec![
                Setting { weight: 0.5, basis: comp },
                Setting { weight: 0.5, basis: fourier },
            ],
        }
    }

    /// Qubit set from Bloch directions with explicit weights.
    pub fn from_bloch(directions: &[(BlochVector, f64)]) -> Result<Self> {
        let settings = directions
            .iter()
            .map(|&(n, q)| bloch_measurement(n, q))
            .collect::<Result<Vec<_>>>()?;
        MeasurementSet::new(2, settings)
    }

    /// N Haar-random bases with uniform weights.
    pub fn random_haar(d: usize, n_settings: usize, rng: &mut (impl Rng + ?Sized)) -> Self {
        let q = 1.0 / n_settings as f64;
        let settings = (0..n_settings)
            .map(|_| {
                let u = haar_unitary(d, rng);
                let basis = (0..d).map(|a| u.column(a)).collect();
                Setting { weight: q, basis }
            })
            .collect();
        MeasurementSet { dim: d, settings }
    }
}

/// Unitary relating the two bases of a two-setting measurement set,
/// arranged so that |φ^b_2⟩ = Σ_a U_ba |φ^a_1⟩.
#[derive(Debug, Clone)]
pub struct UnitaryRelation {
    pub u: CMatrix,
}

impl UnitaryRelation {
    /// Largest element modulus; (1 + max)/2 is the two-setting F⁺ threshold.
    pub fn max_element_modulus(&self) -> f64 {
        let d = self.u.rows();
        let mut best = 0.0f64;
        for a in 0..d {
            for b in 0..d {
                best = best.max(self.u[(a, b)].norm());
            }
        }
        best
    }
}

/// U_ba = ⟨φ^a_1|φ^b_2⟩ for a measurement set with exactly two settings.
pub fn unitary_relation(set: &MeasurementSet) -> Result<UnitaryRelation> {
    if set.n_settings() != 2 {
        return Err(Error::InvalidParameter(format!(
            "unitary relation needs exactly 2 settings, got {}",
            set.n_settings()
        )));
    }
    let d = set.dim();
    let u = CMatrix::from_fn(d, d, |b, a| inner(set.ket(0, a), set.ket(1, b)));
    Ok(UnitaryRelation { u })
}

// JSON form: {dim, settings: [{q, basis: [{re, im}...]}]}.
#[derive(Serialize, Deserialize)]
struct KetJson {
    re: Vec<f64>,
    im: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct SettingJson {
    q: f64,
    basis: Vec<KetJson>,
}

#[derive(Serialize, Deserialize)]
struct MeasurementSetJson {
    dim: usize,
    settings: Vec<SettingJson>,
}

impl Serialize for MeasurementSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = MeasurementSetJson {
            dim: self.dim,
            settings: self
                .settings
                .iter()
                .map(|s| SettingJson {
                    q: s.weight,
                    basis: s
                        .basis
                        .iter()
                        .map(|v| KetJson {
                            re: v.iter().map(|z| z.re).collect(),
                            im: v.iter().map(|z| z.im).collect(),
                        })
                        .collect(),
                })
                .collect(),
        };
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MeasurementSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MeasurementSetJson::deserialize(deserializer)?;
        let settings = raw
            .settings
            .into_iter()
            .map(|s| {
                let basis = s
                    .basis
                    .into_iter()
                    .map(|k| {
                        if k.re.len() != k.im.len() {
                            return Err(D::Error::custom("re/im length mismatch"));
                        }
                        Ok(k.re
                            .iter()
                            .zip(&k.im)
                            .map(|(&re, &im)| Complex64::new(re, im))
                            .collect())
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Setting::new(s.q, basis).map_err(D::Error::custom)
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        MeasurementSet::new(raw.dim, settings).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn mub_pair_overlaps() {
        for d in 2..=5usize {
            let set = MeasurementSet::mub_pair(d);
            for a in 0..d {
                for b in 0..d {
                    let overlap = inner(set.ket(0, a), set.ket(1, b)).norm_sqr();
                    assert!(
                        (overlap - 1.0 / d as f64).abs() < 1e-10,
                        "d={d} a={a} b={b}: overlap {overlap}"
                    );
                }
            }
        }
    }

    #[test]
    fn fourier_basis_entry_moduli() {
        let set = MeasurementSet::mub_pair(3);
        let m = 1.0 / 3.0f64.sqrt();
        for b in 0..3 {
            for entry in set.ket(1, b) {
                assert!((entry.norm() - m).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn settings_resolve_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut sets = vec![
            MeasurementSet::mub_pair(2),
            MeasurementSet::mub_pair(4),
            MeasurementSet::computational(3),
            MeasurementSet::random_haar(3, 3, &mut rng),
        ];
        sets.push(
            MeasurementSet::from_bloch(&[
                (BlochVector::new(0.0, 0.0, 1.0), 0.25),
                (BlochVector::random_unit(&mut rng), 0.75),
            ])
            .unwrap(),
        );
        for set in &sets {
            for mu in 0..set.n_settings() {
                let mut sum = CMatrix::zeros(set.dim(), set.dim());
                for a in 0..set.dim() {
                    sum.add_assign(&set.projector(mu, a));
                }
                assert!(sum.max_abs_diff(&CMatrix::identity(set.dim())) < 1e-10);
            }
        }
    }

    #[test]
    fn unitary_relation_identity_case() {
        let comp = MeasurementSet::computational(3).setting(0).clone();
        let mut second = comp.clone();
        second.weight = 0.5;
        let mut first = comp;
        first.weight = 0.5;
        let set = MeasurementSet::new(3, vec![first, second]).unwrap();
        let rel = unitary_relation(&set).unwrap();
        assert!(rel.u.max_abs_diff(&CMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn unitary_relation_mub_and_unitarity() {
        for d in [2usize, 4] {
            let set = MeasurementSet::mub_pair(d);
            let rel = unitary_relation(&set).unwrap();
            let gram = rel.u.adjoint().matmul(&rel.u);
            assert!(gram.max_abs_diff(&CMatrix::identity(d)) < 1e-12, "U not unitary at d={d}");
            let expect = 1.0 / (d as f64).sqrt();
            for a in 0..d {
                for b in 0..d {
                    assert!((rel.u[(a, b)].norm() - expect).abs() < 1e-10);
                }
            }
            // reproduces |φ^b_2⟩ = Σ_a U_ba |φ^a_1⟩
            for b in 0..d {
                let mut rebuilt = vec![C_ZERO; d];
                for a in 0..d {
                    for (r, k) in rebuilt.iter_mut().zip(set.ket(0, a)) {
                        *r += rel.u[(b, a)] * k;
                    }
                }
                let diff: f64 = rebuilt
                    .iter()
                    .zip(set.ket(1, b))
                    .map(|(x, y)| (x - y).norm())
                    .fold(0.0, f64::max);
                assert!(diff < 1e-10);
            }
        }
    }

    #[test]
    fn unitary_relation_haar_pair_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..20 {
            let set = MeasurementSet::random_haar(3, 2, &mut rng);
            let rel = unitary_relation(&set).unwrap();
            let max = rel.max_element_modulus();
            assert!(max > 1.0 / 3.0f64.sqrt() && max <= 1.0 + 1e-12, "max modulus {max}");
        }
    }

    #[test]
    fn unitary_relation_wrong_setting_count() {
        let set = MeasurementSet::computational(2);
        assert!(unitary_relation(&set).is_err());
    }

    #[test]
    fn weight_validation() {
        let s = MeasurementSet::computational(2).setting(0).clone();
        assert!(MeasurementSet::new(2, vec![s.clone(), s]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let set = MeasurementSet::mub_pair(3);
        let json = serde_json::to_string(&set).unwrap();
        let back: MeasurementSet = serde_json::from_str(&json).unwrap();
        assert_eq!(set, back);
    }
}
