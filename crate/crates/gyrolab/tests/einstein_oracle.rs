//! Checks Einstein velocity addition against independent scalar reductions.
//!
//! On a common line the full vector formula collapses to the relativistic
//! speed sum (s + t) / (1 + s t / c^2), which is computed here directly and
//! never through the vector code path. Gyration checks use only the defining
//! composition of additions.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gyrolab::einstein::{EinsteinGyrogroup, Velocity3};
use gyrolab::model::{gyr_apply, BallGyroModel, GyroModel};

fn collinear_sum(s: f64, t: f64, c: f64) -> f64 {
    (s + t) / (1.0 + s * t / (c * c))
}

fn sample(g: &EinsteinGyrogroup, rng: &mut ChaCha8Rng) -> Velocity3 {
    let r = 0.95 * g.ball_radius() * rng.random::<f64>();
    g.sample_with_norm(rng, r)
}

#[test]
fn collinear_addition_reduces_to_scalar_velocity_sum() {
    for &c in &[1.0, 2.5] {
        let g = EinsteinGyrogroup::with_c(c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..5000 {
            let s = c * 0.95 * (2.0 * rng.random::<f64>() - 1.0);
            let t = c * 0.95 * (2.0 * rng.random::<f64>() - 1.0);
            let sum = g.add(g.velocity(s, 0.0, 0.0).unwrap(), g.velocity(t, 0.0, 0.0).unwrap());
            let expected = collinear_sum(s, t, c);
            assert!(
                (sum.x() - expected).abs() <= 1e-12 * c,
                "s={s} t={t} c={c} got={} want={expected}",
                sum.x()
            );
            assert_eq!(sum.y(), 0.0);
            assert_eq!(sum.z(), 0.0);
        }
    }
}

#[test]
fn collinear_addition_along_arbitrary_axes_matches_the_scalar_sum() {
    let g = EinsteinGyrogroup::new();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..2000 {
        let dir = sample(&g, &mut rng);
        let n = dir.norm();
        if n < 1e-3 {
            continue;
        }
        let (ux, uy, uz) = (dir.x() / n, dir.y() / n, dir.z() / n);
        let s = 0.9 * rng.random::<f64>();
        let t = 0.9 * (2.0 * rng.random::<f64>() - 1.0);
        let a = g.velocity(s * ux, s * uy, s * uz).unwrap();
        let b = g.velocity(t * ux, t * uy, t * uz).unwrap();
        let sum = g.add(a, b);
        let expected = collinear_sum(s, t, 1.0);
        let got = sum.x() * ux + sum.y() * uy + sum.z() * uz;
        assert!((got - expected).abs() < 1e-10, "s={s} t={t} got={got} want={expected}");
        // No component transverse to the line may appear.
        let transverse = (sum.norm().powi(2) - got * got).abs();
        assert!(transverse < 1e-10);
    }
}

#[test]
fn addition_stays_inside_the_ball_and_zero_is_an_identity() {
    let g = EinsteinGyrogroup::new();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..5000 {
        let (a, b) = (sample(&g, &mut rng), sample(&g, &mut rng));
        let sum = g.add(a, b);
        assert!(sum.norm() < 1.0, "a={a:?} b={b:?} escaped: {}", sum.norm());
        assert!(g.dist(g.add(Velocity3::ZERO, a), a) == 0.0);
        assert!(g.dist(g.add(a, Velocity3::ZERO), a) < 1e-15);
    }
}

#[test]
fn gyrations_preserve_norms_and_act_linearly() {
    let g = EinsteinGyrogroup::new();
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..2000 {
        let (u, v, w) = (sample(&g, &mut rng), sample(&g, &mut rng), sample(&g, &mut rng));
        let gw = gyr_apply(&g, u, v, w);
        assert!((gw.norm() - w.norm()).abs() < 1e-9, "norm drift {} vs {}", gw.norm(), w.norm());

        // gyr[u,v] extends to a linear map; probe homogeneity at two scales.
        for &alpha in &[0.5, -0.25] {
            let scaled = g.velocity(alpha * w.x(), alpha * w.y(), alpha * w.z()).unwrap();
            let g_scaled = gyr_apply(&g, u, v, scaled);
            let want = (alpha * gw.x(), alpha * gw.y(), alpha * gw.z());
            let err = (g_scaled.x() - want.0)
                .hypot(g_scaled.y() - want.1)
                .hypot(g_scaled.z() - want.2);
            assert!(err < 1e-9, "homogeneity residual {err} at alpha={alpha}");
        }
    }
}

#[test]
fn gyration_with_a_zero_argument_is_the_identity_map() {
    let g = EinsteinGyrogroup::new();
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..2000 {
        let (v, w) = (sample(&g, &mut rng), sample(&g, &mut rng));
        assert!(g.dist(gyr_apply(&g, Velocity3::ZERO, v, w), w) < 1e-12);
        assert!(g.dist(gyr_apply(&g, v, Velocity3::ZERO, w), w) < 1e-12);
    }
}

#[test]
fn gamma_factor_survives_near_the_ball_boundary() {
    let g = EinsteinGyrogroup::new();
    // 1 - r is tiny; the factored form (1 - r)(1 + r) keeps gamma finite
    // and monotone where naive 1 - r^2 would lose every significant digit.
    let mut last = 0.0;
    for k in 8..16 {
        let r = 1.0 - 2f64.powi(-k);
        let v = g.velocity(r, 0.0, 0.0).unwrap();
        let gamma = g.gamma(v);
        assert!(gamma.is_finite() && gamma > last);
        last = gamma;
    }
    // Exact rational point: gamma(3/5) = 5/4.
    assert_eq!(g.gamma(g.velocity(0.6, 0.0, 0.0).unwrap()), 1.25);
}
