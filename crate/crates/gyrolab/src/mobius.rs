//! Mobius addition on the open complex unit disk.
//!
//! For `a`, `b` in the disk,
//!
//! ```text
//! a ⊕ b = (a + b) / (1 + ā·b)
//! ```
//!
//! which is closed on the disk, and the gyration is multiplication by the
//! unimodular factor `(1 + a·b̄) / (1 + ā·b)`, so gyrations are rotations of
//! the disk. The closed form is exposed separately from the generic
//! `⊖(a⊕b) ⊕ (a ⊕ (b⊕z))` route so tests can compare the two.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::model::{BallGyroModel, DomainError, GyroModel};

/// A point of the open unit disk. Construction validates the modulus, so a
/// `DiskPoint` obtained from [`DiskPoint::new`] or
/// [`MobiusGyrogroup::point`] always satisfies `|z| < 1`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub const ZERO: DiskPoint = DiskPoint(Complex64 { re: 0.0, im: 0.0 });

    pub fn new(re: f64, im: f64) -> Result<DiskPoint, DomainError> {
        if !re.is_finite() || !im.is_finite() {
            return Err(DomainError::NotFinite);
        }
        let z = Complex64::new(re, im);
        let norm = z.norm();
        if norm < 1.0 {
            Ok(DiskPoint(z))
        } else {
            Err(DomainError::OutsideBall { norm, radius: 1.0, guard: 0.0 })
        }
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    pub fn modulus(self) -> f64 {
        self.0.norm()
    }

    pub fn as_complex(self) -> Complex64 {
        self.0
    }
}

/// `a ⊕ b = (a + b) / (1 + ā·b)`.
pub fn mobius_add(a: DiskPoint, b: DiskPoint) -> DiskPoint {
    let (a, b) = (a.0, b.0);
    DiskPoint((a + b) / (1.0 + a.conj() * b))
}

/// `⊖a = -a`.
pub fn mobius_inv(a: DiskPoint) -> DiskPoint {
    DiskPoint(-a.0)
}

/// The rotation factor `(1 + a·b̄) / (1 + ā·b)`; has modulus 1 exactly
/// (numerator and denominator are conjugates).
pub fn mobius_gyr_multiplier(a: DiskPoint, b: DiskPoint) -> Complex64 {
    (1.0 + a.0 * b.0.conj()) / (1.0 + a.0.conj() * b.0)
}

/// Closed-form gyration: `gyr[a, b](c)` as a rotation of `c`.
pub fn mobius_gyr(a: DiskPoint, b: DiskPoint, c: DiskPoint) -> DiskPoint {
    DiskPoint(mobius_gyr_multiplier(a, b) * c.0)
}

/// The Mobius gyrogroup on the unit disk.
///
/// `boundary_guard` keeps constructed points away from the boundary, where
/// `1 + ā·b` can cancel catastrophically: [`MobiusGyrogroup::point`] accepts
/// only moduli at most `1 - boundary_guard`. The guard restricts input
/// validation, not the arithmetic itself.
#[derive(Clone, Copy, Debug)]
pub struct MobiusGyrogroup {
    boundary_guard: f64,
}

pub const DEFAULT_BOUNDARY_GUARD: f64 = 1e-6;

impl Default for MobiusGyrogroup {
    fn default() -> Self {
        MobiusGyrogroup { boundary_guard: DEFAULT_BOUNDARY_GUARD }
    }
}

impl MobiusGyrogroup {
    pub fn new() -> MobiusGyrogroup {
        MobiusGyrogroup::default()
    }

    pub fn with_boundary_guard(guard: f64) -> Result<MobiusGyrogroup, DomainError> {
        if guard.is_finite() && (0.0..1.0).contains(&guard) {
            Ok(MobiusGyrogroup { boundary_guard: guard })
        } else {
            Err(DomainError::InvalidGuard(guard))
        }
    }

    pub fn boundary_guard(&self) -> f64 {
        self.boundary_guard
    }

    /// A disk point kept `boundary_guard` away from the boundary.
    pub fn point(&self, re: f64, im: f64) -> Result<DiskPoint, DomainError> {
        let p = DiskPoint::new(re, im)?;
        let norm = p.modulus();
        if norm <= 1.0 - self.boundary_guard {
            Ok(p)
        } else {
            Err(DomainError::OutsideBall { norm, radius: 1.0, guard: self.boundary_guard })
        }
    }
}

impl GyroModel for MobiusGyrogroup {
    type Elem = DiskPoint;

    fn identity(&self) -> DiskPoint {
        DiskPoint::ZERO
    }

    fn op(&self, a: DiskPoint, b: DiskPoint) -> DiskPoint {
        mobius_add(a, b)
    }

    fn inv(&self, a: DiskPoint) -> DiskPoint {
        mobius_inv(a)
    }

    fn dist(&self, a: DiskPoint, b: DiskPoint) -> f64 {
        (a.0 - b.0).norm()
    }

    fn render(&self, a: DiskPoint) -> String {
        format!("{}{:+}i", a.re(), a.im())
    }
}

impl BallGyroModel for MobiusGyrogroup {
    fn ball_radius(&self) -> f64 {
        1.0
    }

    fn norm(&self, a: DiskPoint) -> f64 {
        a.modulus()
    }

    /// Uniform angle at the given modulus. Norms are drawn uniformly by the
    /// default `sample_in`, which deliberately overweights the difficult
    /// region near the boundary compared to area-uniform sampling.
    fn sample_with_norm(&self, rng: &mut ChaCha8Rng, r: f64) -> DiskPoint {
        let theta = rng.random::<f64>() * std::f64::consts::TAU;
        DiskPoint(Complex64::from_polar(r, theta))
    }

    fn axial(&self, s: f64) -> DiskPoint {
        DiskPoint(Complex64::new(s, 0.0))
    }

    fn gyr(&self, a: DiskPoint, b: DiskPoint, z: DiskPoint) -> DiskPoint {
        mobius_gyr(a, b, z)
    }
}
