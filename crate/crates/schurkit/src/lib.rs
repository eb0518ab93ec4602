//! Normal-form arithmetic in finite polycyclic groups, symbolic collection in
//! free nilpotent groups, and nonabelian tensor square / Schur multiplier
//! computations via coset enumeration of Rocco's nu(G) construction.
//!
//! The crate is organized around five subsystems:
//!
//! * [`pcp`] / [`catalog`] — power-commutator presentations: parsing,
//!   consistency checking, and a built-in family catalog.
//! * [`collect`] / [`group`] — collection from the left, element arithmetic,
//!   and structural invariants (central series, Frattini subgroup, exponents).
//! * [`hall`] / [`freenil`] / [`template`] — Hall bases and exact collection
//!   in free nilpotent groups, used to certify power-commutator identities
//!   with binomial-coefficient exponents.
//! * [`nu`] / [`todd_coxeter`] / [`tensor`] — the nu(G) presentation, HLT
//!   coset enumeration, and extraction of G⊗G, G∧G and M(G).
//! * [`conjectures`] — the exponent-divisibility predicates and the batch
//!   scan report.

pub mod catalog;
pub mod collect;
pub mod conjectures;
pub mod error;
pub mod fp;
pub mod freenil;
pub mod group;
pub mod hall;
pub mod magnus;
pub mod nu;
pub mod oracle;
pub mod pcp;
pub mod tensor;
pub mod template;
pub mod todd_coxeter;
pub mod word;

pub use error::SchurkitError;
pub use group::PcGroup;
pub use pcp::PcPresentation;
pub use word::Word;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, SchurkitError>;
