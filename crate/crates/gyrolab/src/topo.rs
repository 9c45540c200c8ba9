//! Gyration invariance of balls and admissibility of radius chains.
//!
//! In a ball model, every gyration preserves the norm, so the closed ball
//! `U_r = { x : ‖x‖ ≤ r }` satisfies `gyr[x, y](U_r) = U_r` for all `x, y`.
//! A decreasing radius chain `r_0 > r_1 > ..` is admissible when each
//! `U_{r_{k+1}} ⊕ (U_{r_{k+1}} ⊕ U_{r_{k+1}}) ⊆ U_{r_k}`; that containment
//! is what lets the translates `{ x ⊕ U }` behave like a neighborhood base.
//! Both checks here are sampled, not proved: the chain check reports a
//! verdict per step with a two-sided tolerance band, and the sample set
//! always includes the aligned collinear triple `(r, r, r)` on the first
//! axis, which attains the supremum of `‖a ⊕ (b ⊕ c)‖` in the Mobius and
//! Einstein models.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::model::BallGyroModel;

#[derive(Clone, Copy, PartialEq, Debug, Error)]
pub enum TopoError {
    #[error("radius chain must contain at least {needed} radii")]
    ChainTooShort { needed: usize },
    #[error("radii must be positive, finite, and strictly decreasing (offender at index {index}: {value})")]
    NotDecreasing { index: usize, value: f64 },
    #[error("radius {radius} must lie strictly inside the carrier ball of radius {bound}")]
    RadiusOutOfRange { radius: f64, bound: f64 },
    #[error("sample count must be positive")]
    NoSamples,
}

/// Strictly decreasing positive radii.
#[derive(Clone, PartialEq, Debug)]
pub struct RadiusChain {
    radii: Vec<f64>,
}

impl RadiusChain {
    pub fn new(radii: Vec<f64>) -> Result<RadiusChain, TopoError> {
        if radii.is_empty() {
            return Err(TopoError::ChainTooShort { needed: 1 });
        }
        let mut prev = f64::INFINITY;
        for (index, &value) in radii.iter().enumerate() {
            if !(value.is_finite() && value > 0.0 && value < prev) {
                return Err(TopoError::NotDecreasing { index, value });
            }
            prev = value;
        }
        Ok(RadiusChain { radii })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The sampled estimate lies within `tol` of the containment boundary;
    /// sampling cannot distinguish the two sides.
    Inconclusive,
}

/// Sampled evidence that gyrations fix the closed ball of a radius.
#[derive(Clone, Debug, Serialize)]
pub struct BallInvariance {
    pub radius: f64,
    pub samples: u64,
    pub seed: u64,
    pub tol: f64,
    /// max over samples of `| ‖gyr[x,y](u)‖ − ‖u‖ |`.
    pub max_norm_deviation: f64,
    /// max over samples of `dist(gyr[x,y](gyr[y,x](u)), u)`; witnesses that
    /// each `u` in the ball is itself a gyration image, so the containment
    /// is not strict.
    pub max_roundtrip_residual: f64,
    pub passed: bool,
}

/// Draws norms with at least half the mass in the top decile of `[0, r]`,
/// where containment questions are decided.
fn biased_norm(rng: &mut ChaCha8Rng, r: f64, i: u64) -> f64 {
    let t = rng.random::<f64>();
    if i.is_multiple_of(2) {
        r * (0.9 + 0.1 * t)
    } else {
        r * t
    }
}

/// Samples gyrations of points of the closed ball `‖u‖ ≤ radius` and checks
/// norm preservation both ways. Gyration parameters `x, y` range over moduli
/// up to `0.95 · ball_radius`; closer to the boundary the floating-point
/// evaluation itself loses more than the tolerances ask for.
pub fn ball_gyr_invariance<M: BallGyroModel>(
    m: &M,
    radius: f64,
    samples: u64,
    seed: u64,
    tol: f64,
) -> Result<BallInvariance, TopoError> {
    if !(radius.is_finite() && radius > 0.0 && radius < m.ball_radius()) {
        return Err(TopoError::RadiusOutOfRange { radius, bound: m.ball_radius() });
    }
    if samples == 0 {
        return Err(TopoError::NoSamples);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let param_bound = 0.95 * m.ball_radius();
    let mut max_norm_deviation: f64 = 0.0;
    let mut max_roundtrip_residual: f64 = 0.0;
    for i in 0..samples {
        let x = m.sample_in(&mut rng, param_bound);
        let y = m.sample_in(&mut rng, param_bound);
        // First sample sits exactly on the sphere of the tested radius.
        let u_norm = if i == 0 { radius } else { biased_norm(&mut rng, radius, i) };
        let u = m.sample_with_norm(&mut rng, u_norm);
        let v = m.gyr(x, y, u);
        max_norm_deviation = max_norm_deviation.max((m.norm(v) - m.norm(u)).abs());
        let w = m.gyr(y, x, u);
        max_norm_deviation = max_norm_deviation.max((m.norm(w) - m.norm(u)).abs());
        max_roundtrip_residual = max_roundtrip_residual.max(m.dist(m.gyr(x, y, w), u));
    }
    let passed = max_norm_deviation <= tol && max_roundtrip_residual <= tol;
    Ok(BallInvariance {
        radius,
        samples,
        seed,
        tol,
        max_norm_deviation,
        max_roundtrip_residual,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseReport {
    pub balls: Vec<BallInvariance>,
    pub passed: bool,
}

/// Gyration invariance for every ball of a family: the sampled version of
/// the statement that the balls form a gyration-invariant neighborhood base
/// of the identity. An empty family passes vacuously.
pub fn strongly_topological_base_check<M: BallGyroModel>(
    m: &M,
    radii: &[f64],
    samples_per_ball: u64,
    seed: u64,
    tol: f64,
) -> Result<BaseReport, TopoError> {
    let balls: Vec<BallInvariance> = radii
        .iter()
        .enumerate()
        .map(|(i, &r)| ball_gyr_invariance(m, r, samples_per_ball, seed.wrapping_add(i as u64), tol))
        .collect::<Result<_, _>>()?;
    let passed = balls.iter().all(|b| b.passed);
    Ok(BaseReport { balls, passed })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub outer: f64,
    pub inner: f64,
    /// Sampled maximum of `‖a ⊕ (b ⊕ c)‖` over the inner ball, including
    /// the aligned collinear triple.
    pub estimate: f64,
    /// `outer - estimate`; positive means the triple sums stayed inside.
    pub margin: f64,
    pub verdict: Verdict,
    /// The triple attaining the estimate.
    pub argmax: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub samples: u64,
    pub seed: u64,
    pub tol: f64,
    pub steps: Vec<ChainStep>,
    pub all_pass: bool,
    pub any_fail: bool,
}

impl ChainReport {
    pub fn verdict(&self) -> Verdict {
        if self.all_pass {
            Verdict::Pass
        } else if self.any_fail {
            Verdict::Fail
        } else {
            Verdict::Inconclusive
        }
    }
}

/// Checks `U_inner ⊕ (U_inner ⊕ U_inner) ⊆ U_outer` for each consecutive
/// radius pair of the chain by sampled triples.
///
/// Verdicts use a two-sided band: `estimate > outer + tol` fails,
/// `estimate < outer - tol` passes, anything between is inconclusive. A
/// failing step's `argmax` is a concrete triple escaping the outer ball.
pub fn admissible_chain_check<M: BallGyroModel>(
    m: &M,
    chain: &RadiusChain,
    samples: u64,
    seed: u64,
    tol: f64,
) -> Result<ChainReport, TopoError> {
    if chain.len() < 2 {
        return Err(TopoError::ChainTooShort { needed: 2 });
    }
    if samples == 0 {
        return Err(TopoError::NoSamples);
    }
    for &r in chain.radii() {
        if r >= m.ball_radius() {
            return Err(TopoError::RadiusOutOfRange { radius: r, bound: m.ball_radius() });
        }
    }
    let steps = chain
        .radii()
        .windows(2)
        .enumerate()
        .map(|(k, pair)| {
            let (outer, inner) = (pair[0], pair[1]);
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
            let mut estimate = f64::NEG_INFINITY;
            let mut argmax = Vec::new();
            for i in 0..samples {
                let (a, b, c) = if i == 0 {
                    let p = m.axial(inner);
                    (p, p, p)
                } else {
                    let na = biased_norm(&mut rng, inner, i);
                    let nb = biased_norm(&mut rng, inner, i.wrapping_add(1));
                    let nc = biased_norm(&mut rng, inner, i);
                    (
                        m.sample_with_norm(&mut rng, na),
                        m.sample_with_norm(&mut rng, nb),
                        m.sample_with_norm(&mut rng, nc),
                    )
                };
                let norm = m.norm(m.op(a, m.op(b, c)));
                if norm > estimate {
                    estimate = norm;
                    argmax = vec![m.render(a), m.render(b), m.render(c)];
                }
            }
            let margin = outer - estimate;
            let verdict = if estimate > outer + tol {
                Verdict::Fail
            } else if estimate < outer - tol {
                Verdict::Pass
            } else {
                Verdict::Inconclusive
            };
            ChainStep { outer, inner, estimate, margin, verdict, argmax }
        })
        .collect::<Vec<_>>();
    let all_pass = steps.iter().all(|s| s.verdict == Verdict::Pass);
    let any_fail = steps.iter().any(|s| s.verdict == Verdict::Fail);
    Ok(ChainReport { samples, seed, tol, steps, all_pass, any_fail })
}
