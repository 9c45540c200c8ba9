//! Gyrogroup laws and the reports produced by checking them.
//!
//! Two checking modes share one report shape. Sampled mode draws tuples from
//! a caller-supplied sampler and records the maximum residual per law plus
//! the sample attaining it. Exhaustive mode sweeps every tuple over a finite
//! carrier and stops a law at its first counterexample. A law whose
//! prerequisites failed (no identity, no inverses) is reported as skipped
//! rather than evaluated on garbage.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::model::{gyr_apply, GyroModel};

/// The laws a gyrogroup model is checked against.
///
/// `Latin` (each row and column of a finite table is a permutation) only
/// applies to finite tables and is checked by
/// [`crate::finite::verify_gyrogroup`]; the remaining laws are equations
/// checked on any model. The cancellation and right-associativity laws are
/// consequences of the axioms, so a failure there witnesses a bug even when
/// the four axioms look clean.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    Latin,
    Identity,
    Inverses,
    LeftGyroassociativity,
    GyrationAutomorphism,
    LeftLoop,
    LeftCancellation,
    #[serde(rename = "right-cancellation-i")]
    RightCancellationI,
    #[serde(rename = "right-cancellation-ii")]
    RightCancellationII,
    RightGyroassociativity,
}

impl Law {
    /// The equational laws, in report order.
    pub const EQUATIONAL: [Law; 9] = [
        Law::Identity,
        Law::Inverses,
        Law::LeftGyroassociativity,
        Law::GyrationAutomorphism,
        Law::LeftLoop,
        Law::LeftCancellation,
        Law::RightCancellationI,
        Law::RightCancellationII,
        Law::RightGyroassociativity,
    ];

    /// How many sample elements the law consumes.
    pub fn arity(self) -> usize {
        match self {
            Law::Latin => 2,
            Law::Identity | Law::Inverses => 1,
            Law::LeftCancellation | Law::RightCancellationI | Law::RightCancellationII => 2,
            Law::LeftGyroassociativity | Law::LeftLoop | Law::RightGyroassociativity => 3,
            Law::GyrationAutomorphism => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Law::Latin => "latin",
            Law::Identity => "identity",
            Law::Inverses => "inverses",
            Law::LeftGyroassociativity => "left-gyroassociativity",
            Law::GyrationAutomorphism => "gyration-automorphism",
            Law::LeftLoop => "left-loop",
            Law::LeftCancellation => "left-cancellation",
            Law::RightCancellationI => "right-cancellation-i",
            Law::RightCancellationII => "right-cancellation-ii",
            Law::RightGyroassociativity => "right-gyroassociativity",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawStatus {
    Pass,
    Fail,
    /// Not evaluated because a prerequisite law failed.
    Skipped,
}

/// One evaluated tuple: the elements drawn, both sides of the equation, and
/// the distance between them.
#[derive(Clone, Debug, Serialize)]
pub struct Sample {
    pub elements: Vec<String>,
    pub lhs: String,
    pub rhs: String,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub law: Law,
    pub status: LawStatus,
    pub max_residual: f64,
    /// Sampled mode: the tuple attaining `max_residual`. Exhaustive mode:
    /// the first counterexample, present only on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst: Option<Sample>,
}

#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CheckMode {
    Sampled { count: u64, seed: u64 },
    Exhaustive { carrier: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub mode: CheckMode,
    pub tol: f64,
    pub max_residual: f64,
    pub passed: bool,
    pub laws: Vec<LawReport>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(|l| l.status == LawStatus::Pass)
    }

    pub fn law(&self, law: Law) -> Option<&LawReport> {
        self.laws.iter().find(|l| l.law == law)
    }

    /// The first failing law, if any.
    pub fn first_failure(&self) -> Option<&LawReport> {
        self.laws.iter().find(|l| l.status == LawStatus::Fail)
    }

    pub(crate) fn from_laws(mode: CheckMode, tol: f64, laws: Vec<LawReport>) -> AxiomReport {
        let max_residual = laws.iter().map(|l| l.max_residual).fold(0.0, f64::max);
        let passed = laws.iter().all(|l| l.status == LawStatus::Pass);
        AxiomReport { mode, tol, max_residual, passed, laws }
    }
}

/// Evaluates one equational law on a tuple, returning the residual and the
/// two sides attaining it. Laws of arity `k` use the first `k` entries of the
/// tuple; two-part laws (identity, inverses) report their worse part.
fn eval_law<M: GyroModel>(m: &M, law: Law, t: [M::Elem; 4]) -> (f64, M::Elem, M::Elem) {
    let [x, y, z, w] = t;
    let e = m.identity();
    let pick = |l1: M::Elem, r1: M::Elem, l2: M::Elem, r2: M::Elem| {
        let (d1, d2) = (m.dist(l1, r1), m.dist(l2, r2));
        if d1 >= d2 { (d1, l1, r1) } else { (d2, l2, r2) }
    };
    match law {
        Law::Latin => unreachable!("latin is a table-level law"),
        Law::Identity => pick(m.op(e, x), x, m.op(x, e), x),
        Law::Inverses => pick(m.op(m.inv(x), x), e, m.op(x, m.inv(x)), e),
        Law::LeftGyroassociativity => {
            let lhs = m.op(x, m.op(y, z));
            let rhs = m.op(m.op(x, y), gyr_apply(m, x, y, z));
            (m.dist(lhs, rhs), lhs, rhs)
        }
        Law::GyrationAutomorphism => {
            let lhs = gyr_apply(m, x, y, m.op(z, w));
            let rhs = m.op(gyr_apply(m, x, y, z), gyr_apply(m, x, y, w));
            (m.dist(lhs, rhs), lhs, rhs)
        }
        Law::LeftLoop => {
            let lhs = gyr_apply(m, m.op(x, y), y, z);
            let rhs = gyr_apply(m, x, y, z);
            (m.dist(lhs, rhs), lhs, rhs)
        }
        Law::LeftCancellation => {
            let lhs = m.op(m.inv(x), m.op(x, y));
            (m.dist(lhs, y), lhs, y)
        }
        Law::RightCancellationI => {
            let ny = m.inv(y);
            let lhs = m.op(m.op(x, ny), gyr_apply(m, x, ny, y));
            (m.dist(lhs, x), lhs, x)
        }
        Law::RightCancellationII => {
            let lhs = m.op(m.op(x, gyr_apply(m, x, y, m.inv(y))), y);
            (m.dist(lhs, x), lhs, x)
        }
        Law::RightGyroassociativity => {
            let lhs = m.op(m.op(x, y), z);
            let rhs = m.op(x, m.op(y, gyr_apply(m, y, x, z)));
            (m.dist(lhs, rhs), lhs, rhs)
        }
    }
}

fn render_sample<M: GyroModel>(
    m: &M,
    law: Law,
    t: [M::Elem; 4],
    lhs: M::Elem,
    rhs: M::Elem,
    residual: f64,
) -> Sample {
    Sample {
        elements: t[..law.arity()].iter().map(|e| m.render(*e)).collect(),
        lhs: m.render(lhs),
        rhs: m.render(rhs),
        residual,
    }
}

/// Checks the equational laws on `count` independently drawn tuples.
///
/// Deterministic for a fixed seed: the rng is ChaCha8 seeded with `seed` and
/// every law sees the same tuple sequence. A law passes when its maximum
/// residual over all tuples is at most `tol`.
pub fn check_axioms_sampled<M, F>(
    m: &M,
    mut draw: F,
    count: u64,
    seed: u64,
    tol: f64,
) -> AxiomReport
where
    M: GyroModel,
    F: FnMut(&mut ChaCha8Rng) -> M::Elem,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: Vec<(f64, Option<Sample>)> =
        Law::EQUATIONAL.iter().map(|_| (0.0, None)).collect();
    for _ in 0..count {
        let t = [
            draw(&mut rng),
            draw(&mut rng),
            draw(&mut rng),
            draw(&mut rng),
        ];
        for (slot, &law) in worst.iter_mut().zip(Law::EQUATIONAL.iter()) {
            let (residual, lhs, rhs) = eval_law(m, law, t);
            if residual >= slot.0 || slot.1.is_none() {
                *slot = (residual, Some(render_sample(m, law, t, lhs, rhs, residual)));
            }
        }
    }
    let laws = Law::EQUATIONAL
        .iter()
        .zip(worst)
        .map(|(&law, (max_residual, worst))| LawReport {
            law,
            status: if max_residual <= tol { LawStatus::Pass } else { LawStatus::Fail },
            max_residual,
            worst,
        })
        .collect();
    AxiomReport::from_laws(CheckMode::Sampled { count, seed }, tol, laws)
}

/// Checks the equational laws on every tuple over `elems`, stopping each law
/// at its first counterexample.
///
/// Cost is dominated by the gyration automorphism law at `|elems|^4`
/// evaluations. For Cayley tables prefer [`crate::finite::verify_gyrogroup`],
/// which also checks the Latin property and identity and inverse uniqueness;
/// this generic sweep is the slow second route used to cross-check it.
pub fn check_axioms_exhaustive<M: GyroModel>(m: &M, elems: &[M::Elem], tol: f64) -> AxiomReport {
    let laws = exhaustive_equational(m, elems, tol, &Law::EQUATIONAL);
    AxiomReport::from_laws(CheckMode::Exhaustive { carrier: elems.len() }, tol, laws)
}

pub(crate) fn exhaustive_equational<M: GyroModel>(
    m: &M,
    elems: &[M::Elem],
    tol: f64,
    laws: &[Law],
) -> Vec<LawReport> {
    laws.iter()
        .map(|&law| {
            let mut counterexample = None;
            'search: for t in tuples(elems, law.arity()) {
                let (residual, lhs, rhs) = eval_law(m, law, t);
                if residual > tol {
                    counterexample = Some(render_sample(m, law, t, lhs, rhs, residual));
                    break 'search;
                }
            }
            match counterexample {
                Some(s) => LawReport {
                    law,
                    status: LawStatus::Fail,
                    max_residual: s.residual,
                    worst: Some(s),
                },
                None => LawReport { law, status: LawStatus::Pass, max_residual: 0.0, worst: None },
            }
        })
        .collect()
}

/// All `arity`-tuples over `elems`, padded to 4 with the first element.
fn tuples<E: Copy>(elems: &[E], arity: usize) -> impl Iterator<Item = [E; 4]> + '_ {
    let n = elems.len();
    let total = n.pow(arity as u32);
    (0..total).map(move |mut i| {
        let mut t = [elems[0]; 4];
        for slot in t.iter_mut().take(arity) {
            *slot = elems[i % n];
            i /= n;
        }
        t
    })
}
