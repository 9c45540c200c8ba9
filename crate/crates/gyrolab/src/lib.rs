//! Gyrogroup models and tooling.
//!
//! A gyrogroup is a magma `(G, ⊕)` with a two-sided identity and two-sided
//! inverses in which associativity is replaced by the left gyroassociative
//! law
//!
//! ```text
//! x ⊕ (y ⊕ z) = (x ⊕ y) ⊕ gyr[x, y](z)
//! ```
//!
//! where the gyration `gyr[x, y](z) = ⊖(x ⊕ y) ⊕ (x ⊕ (y ⊕ z))` is an
//! automorphism of `(G, ⊕)` satisfying the left loop property
//! `gyr[x ⊕ y, y] = gyr[x, y]`. Groups are exactly the gyrogroups whose
//! gyrations are all trivial.
//!
//! The crate provides three concrete models behind one trait:
//!
//! * [`mobius`]: Mobius addition on the complex unit disk,
//! * [`einstein`]: Einstein velocity addition on the ball of radius `c` in
//!   three dimensions,
//! * [`finite`]: finite magmas given by Cayley tables, with exhaustive axiom
//!   verification, subgyrogroup enumeration, coset partitions, direct
//!   products, and a backtracking search for all gyrogroups of a given order
//!   up to isomorphism.
//!
//! [`axioms`] turns the axiom list into sampled or exhaustive reports,
//! [`topo`] checks gyration invariance of balls and containment properties of
//! translate covers used when a gyrogroup is given a topology, and
//! [`format`] reads and writes the plain-text `.gyro` table format.

pub mod axioms;
pub mod einstein;
pub mod finite;
pub mod format;
pub mod mobius;
pub mod model;
pub mod tables;
pub mod topo;

pub use axioms::{
    check_axioms_exhaustive, check_axioms_sampled, AxiomReport, CheckMode, Law, LawReport,
    LawStatus, Sample,
};
pub use einstein::{EinsteinGyrogroup, Velocity3};
pub use finite::{
    coset_partition, enumerate_subgyrogroups, is_l_subgyrogroup, is_subgyrogroup,
    product_gyrogroup, search_gyrogroups, set_oplus, star_of_point, translate_cover,
    verify_gyrogroup, CayleyTable, CosetPartition, FiniteError, FiniteGyrogroup, GyrationMap,
    PartitionValidation, SearchOptions, SearchOutcome, SubgyrogroupInfo, Subset,
};
pub use format::{parse_gyro, write_gyro, ParseError};
pub use mobius::{mobius_add, mobius_gyr, mobius_gyr_multiplier, mobius_inv, DiskPoint, MobiusGyrogroup};
pub use model::{gyr_apply, BallGyroModel, DomainError, GyroModel};
pub use topo::{
    admissible_chain_check, ball_gyr_invariance, strongly_topological_base_check, BallInvariance,
    BaseReport, ChainReport, ChainStep, RadiusChain, TopoError, Verdict,
};

// The sampling entry points take this RNG in their signatures, so callers
// get the exact type and the traits to seed and drive it from here.
pub use rand::Rng;
pub use rand_chacha::rand_core::SeedableRng;
pub use rand_chacha::ChaCha8Rng;
