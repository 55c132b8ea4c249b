//! Exact-arithmetic classification of degenerations of polarized Hodge
//! structures.
//!
//! The crate has two layers.  The combinatorial layer works with Hodge
//! diamonds: it validates them against a period domain, enumerates all of
//! them, converts between a diamond and its primitive tops, and decides the
//! polarized degeneracy relation between diamonds, including the full
//! relation digraph of a domain.  The linear-algebra layer works over the
//! Gaussian rationals: weight filtrations of nilpotent endomorphisms,
//! canonical splittings of mixed Hodge structures, explicit real-split
//! witnesses realizing any valid diamond, exact verification of every
//! polarization axiom, and membership probes along `exp(zN) . F`.
//!
//! Batch operations (pairwise relation checks, whole-domain witness
//! verification) are data-parallel; the default `parallel` feature runs
//! them on rayon, and disabling it falls back to sequential loops with
//! identical results.

pub mod diamond;
pub mod enumerate;
pub mod filtration;
pub mod matrix;
mod par;
pub mod realize;
pub mod relation;
pub mod scalar;
pub mod splitting;
pub mod subspace;
pub mod witness;

pub use diamond::{
    is_valid_diamond, primitive_decomposition, reconstruct, subdomain_specs,
    validate_hodge_numbers, ConditionFailure, Diamond, DiamondCondition, DiamondError,
    DiamondValidity, HodgeNumbers, HodgeNumbersViolation, PrimitiveDiamond, SubdomainSpec,
};
pub use enumerate::enumerate_diamonds;
pub use filtration::{
    weight_filtration, weight_filtration_inductive, FiltrationError, HodgeFiltration,
    IncreasingFiltration,
};
pub use matrix::Matrix;
pub use realize::{realize_diamond, verify_domain, RealizeError, RealizedCheck};
pub use relation::{
    polarized_leq, relation_digraph, RelationDigraph, RelationError, RelationResult,
    TransitivityReport,
};
pub use scalar::{ratio, GaussianRational, Rational, ScalarParseError};
pub use splitting::{deligne_splitting, DeligneSplitting, SplittingError};
pub use subspace::Subspace;
pub use witness::{
    check_pmhs, diamond_of, in_period_domain, orbit_probe, CheckItem, CheckReport, DomainError,
    PMHSWitness, PairingForm, ProbeReport, ProbeSample, WitnessError,
};
