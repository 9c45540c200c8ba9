//! Einstein velocity addition on the ball of radius `c` in three dimensions.
//!
//! With `γ_u = 1 / sqrt(1 - ‖u‖²/c²)`,
//!
//! ```text
//! u ⊕ v = 1/(1 + u·v/c²) · ( u + v/γ_u + (γ_u/(c²(1 + γ_u))) (u·v) u )
//! ```
//!
//! Unlike the Mobius disk there is no closed form for gyrations here; they
//! are computed by the generic `⊖(u⊕v) ⊕ (u ⊕ (v⊕w))` route and are
//! orthogonal maps (Thomas precession), which is what the norm-preservation
//! checks in `topo` lean on.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::model::{gyr_apply, BallGyroModel, DomainError, GyroModel};

/// A velocity in the open ball `‖v‖ < c`. Only [`EinsteinGyrogroup::velocity`]
/// constructs these, so the bound (including the boundary guard) always
/// holds relative to the owning model's `c`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Velocity3 {
    x: f64,
    y: f64,
    z: f64,
}

impl Velocity3 {
    pub const ZERO: Velocity3 = Velocity3 { x: 0.0, y: 0.0, z: 0.0 };

    pub fn x(self) -> f64 {
        self.x
    }

    pub fn y(self) -> f64 {
        self.y
    }

    pub fn z(self) -> f64 {
        self.z
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn dot(self, o: Velocity3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    fn plus(self, o: Velocity3) -> Velocity3 {
        Velocity3 { x: self.x + o.x, y: self.y + o.y, z: self.z + o.z }
    }

    fn scale(self, s: f64) -> Velocity3 {
        Velocity3 { x: s * self.x, y: s * self.y, z: s * self.z }
    }
}

pub const DEFAULT_BOUNDARY_GUARD: f64 = 1e-6;

/// The Einstein gyrogroup on the ball of radius `c`.
///
/// `boundary_guard` is relative: [`EinsteinGyrogroup::velocity`] accepts
/// norms up to `c·(1 - boundary_guard)`.
#[derive(Clone, Copy, Debug)]
pub struct EinsteinGyrogroup {
    c: f64,
    boundary_guard: f64,
}

impl Default for EinsteinGyrogroup {
    fn default() -> Self {
        EinsteinGyrogroup { c: 1.0, boundary_guard: DEFAULT_BOUNDARY_GUARD }
    }
}

impl EinsteinGyrogroup {
    /// Natural units, `c = 1`.
    pub fn new() -> EinsteinGyrogroup {
        EinsteinGyrogroup::default()
    }

    pub fn with_c(c: f64) -> Result<EinsteinGyrogroup, DomainError> {
        if c.is_finite() && c > 0.0 {
            Ok(EinsteinGyrogroup { c, ..EinsteinGyrogroup::default() })
        } else {
            Err(DomainError::InvalidSpeed(c))
        }
    }

    pub fn with_c_and_guard(c: f64, guard: f64) -> Result<EinsteinGyrogroup, DomainError> {
        if !(guard.is_finite() && (0.0..1.0).contains(&guard)) {
            return Err(DomainError::InvalidGuard(guard));
        }
        let mut m = EinsteinGyrogroup::with_c(c)?;
        m.boundary_guard = guard;
        Ok(m)
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn boundary_guard(&self) -> f64 {
        self.boundary_guard
    }

    pub fn velocity(&self, x: f64, y: f64, z: f64) -> Result<Velocity3, DomainError> {
        if !x.is_finite() || !y.is_finite() || !z.is_finite() {
            return Err(DomainError::NotFinite);
        }
        let v = Velocity3 { x, y, z };
        let norm = v.norm();
        if norm < self.c && norm <= self.c * (1.0 - self.boundary_guard) {
            Ok(v)
        } else {
            Err(DomainError::OutsideBall { norm, radius: self.c, guard: self.boundary_guard })
        }
    }

    /// Lorentz factor `γ_u = 1 / sqrt(1 - ‖u‖²/c²)`; the difference of
    /// squares is factored to keep precision near the boundary.
    pub fn gamma(&self, u: Velocity3) -> f64 {
        let ratio = u.norm() / self.c;
        1.0 / ((1.0 - ratio) * (1.0 + ratio)).sqrt()
    }

    pub fn add(&self, u: Velocity3, v: Velocity3) -> Velocity3 {
        let k = u.dot(v) / (self.c * self.c);
        let gu = self.gamma(u);
        let u_coef = 1.0 + (gu / (1.0 + gu)) * k;
        u.scale(u_coef).plus(v.scale(1.0 / gu)).scale(1.0 / (1.0 + k))
    }

    pub fn neg(&self, u: Velocity3) -> Velocity3 {
        u.scale(-1.0)
    }

    /// `gyr[u, v](w)` by the generic route.
    pub fn gyr(&self, u: Velocity3, v: Velocity3, w: Velocity3) -> Velocity3 {
        gyr_apply(self, u, v, w)
    }
}

impl GyroModel for EinsteinGyrogroup {
    type Elem = Velocity3;

    fn identity(&self) -> Velocity3 {
        Velocity3::ZERO
    }

    fn op(&self, a: Velocity3, b: Velocity3) -> Velocity3 {
        self.add(a, b)
    }

    fn inv(&self, a: Velocity3) -> Velocity3 {
        self.neg(a)
    }

    fn dist(&self, a: Velocity3, b: Velocity3) -> f64 {
        a.plus(b.scale(-1.0)).norm()
    }

    fn render(&self, a: Velocity3) -> String {
        format!("({}, {}, {})", a.x, a.y, a.z)
    }
}

impl BallGyroModel for EinsteinGyrogroup {
    fn ball_radius(&self) -> f64 {
        self.c
    }

    fn norm(&self, a: Velocity3) -> f64 {
        a.norm()
    }

    /// Direction uniform on the sphere (cylinder projection), norm as given.
    fn sample_with_norm(&self, rng: &mut ChaCha8Rng, r: f64) -> Velocity3 {
        let z = 2.0 * rng.random::<f64>() - 1.0;
        let phi = rng.random::<f64>() * std::f64::consts::TAU;
        let s = (1.0 - z * z).max(0.0).sqrt();
        Velocity3 { x: r * s * phi.cos(), y: r * s * phi.sin(), z: r * z }
    }

    fn axial(&self, s: f64) -> Velocity3 {
        Velocity3 { x: s, y: 0.0, z: 0.0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_at_three_fifths_c_is_five_fourths() {
        let m = EinsteinGyrogroup::new();
        let u = m.velocity(0.6, 0.0, 0.0).unwrap();
        assert!((m.gamma(u) - 1.25).abs() < 1e-15);
    }

    #[test]
    fn collinear_halves_compose_to_four_fifths() {
        let m = EinsteinGyrogroup::new();
        let u = m.velocity(0.5, 0.0, 0.0).unwrap();
        let w = m.add(u, u);
        assert!((w.x() - 0.8).abs() < 1e-15);
        assert_eq!((w.y(), w.z()), (0.0, 0.0));
    }

    #[test]
    fn velocity_constructor_enforces_ball() {
        let m = EinsteinGyrogroup::with_c(2.0).unwrap();
        assert!(m.velocity(1.9, 0.0, 0.0).is_ok());
        assert!(m.velocity(2.0, 0.0, 0.0).is_err());
        assert!(m.velocity(0.0, 2.1, 0.0).is_err());
        assert!(EinsteinGyrogroup::with_c(0.0).is_err());
        assert!(EinsteinGyrogroup::with_c(f64::INFINITY).is_err());
    }
}
