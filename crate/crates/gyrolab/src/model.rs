//! The interface every gyrogroup model implements.

use std::fmt::Debug;

use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Rejected input to a continuous model constructor.
#[derive(Clone, Copy, PartialEq, Debug, Error)]
pub enum DomainError {
    #[error("point of norm {norm} is outside the admissible ball (radius {radius}, boundary guard {guard})")]
    OutsideBall { norm: f64, radius: f64, guard: f64 },
    #[error("coordinates must be finite")]
    NotFinite,
    #[error("speed parameter must be positive and finite, got {0}")]
    InvalidSpeed(f64),
    #[error("boundary guard must lie in [0, 1), got {0}")]
    InvalidGuard(f64),
}

/// A magma expected to satisfy the gyrogroup axioms.
///
/// The trait only promises a carrier with an operation, an identity and an
/// inverse map; whether the axioms actually hold is what
/// [`crate::axioms::check_axioms_sampled`] and friends decide. `dist` gives
/// the residual metric used for tolerance checks: exact models (finite
/// tables) return 0 or 1, continuous models return a genuine distance.
pub trait GyroModel {
    type Elem: Copy + PartialEq + Debug;

    fn identity(&self) -> Self::Elem;

    /// The gyroaddition `a ⊕ b`.
    fn op(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;

    /// The gyroinverse `⊖a`.
    fn inv(&self, a: Self::Elem) -> Self::Elem;

    /// Distance between two elements, used as the residual of an identity
    /// `lhs = rhs`.
    fn dist(&self, a: Self::Elem, b: Self::Elem) -> f64;

    /// Plain-text rendering for reports and witnesses.
    fn render(&self, a: Self::Elem) -> String;

    fn eq_within(&self, a: Self::Elem, b: Self::Elem, tol: f64) -> bool {
        self.dist(a, b) <= tol
    }
}

/// The gyration `gyr[a, b](z) = ⊖(a ⊕ b) ⊕ (a ⊕ (b ⊕ z))`, computed from the
/// model's own operation and inverse.
///
/// Every model gets its gyrations this way unless it can do better; closed
/// forms (when a model has one) are exposed on the model itself so the two
/// routes can be compared in tests.
pub fn gyr_apply<M: GyroModel + ?Sized>(m: &M, a: M::Elem, b: M::Elem, z: M::Elem) -> M::Elem {
    let ab = m.op(a, b);
    m.op(m.inv(ab), m.op(a, m.op(b, z)))
}

/// A gyrogroup model whose carrier is the open ball of some radius around the
/// identity in a normed space.
///
/// Adds the norm, deterministic sampling, and the points on the positive
/// first axis that realize extremal (collinear) configurations.
pub trait BallGyroModel: GyroModel {
    /// Radius of the carrier ball (1 for the Mobius disk, `c` for the
    /// Einstein model).
    fn ball_radius(&self) -> f64;

    fn norm(&self, a: Self::Elem) -> f64;

    /// A point with the given norm, direction chosen by the rng.
    ///
    /// pre: `0 <= r < ball_radius()`.
    fn sample_with_norm(&self, rng: &mut ChaCha8Rng, r: f64) -> Self::Elem;

    /// The point at parameter `s` on the positive first axis.
    ///
    /// pre: `|s| < ball_radius()`.
    fn axial(&self, s: f64) -> Self::Elem;

    /// A point with norm uniform in `[0, max_norm]`.
    fn sample_in(&self, rng: &mut ChaCha8Rng, max_norm: f64) -> Self::Elem {
        let r = max_norm * rand::Rng::random::<f64>(rng);
        self.sample_with_norm(rng, r)
    }

    /// `gyr[a, b](z)`; overridable with a closed form.
    fn gyr(&self, a: Self::Elem, b: Self::Elem, z: Self::Elem) -> Self::Elem {
        gyr_apply(self, a, b, z)
    }
}
