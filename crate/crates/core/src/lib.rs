//! Decision procedures for finite groups with operations.
//!
//! The carrier of everything here is a [`algebra::FiniteAlgebra`]: a finite
//! set with a (not necessarily commutative) group operation written
//! additively, plus any number of named extra binary operations subject to
//! declared laws. Groups, rings and non-associative rings are all instances
//! of this template.
//!
//! On top of the carriers the crate builds, in order:
//!
//! * [`algebra`]: homomorphisms, subalgebra generation, automorphism
//!   groups, pullbacks and exhaustive homomorphism enumeration;
//! * [`points`]: split epimorphisms with a chosen section ("points"),
//!   their morphisms, kernels and change of base by pullback;
//! * [`actions`]: internal actions as operation tables, validated through
//!   the split extension they generate;
//! * [`descent`]: cospans, descent data with their unit and cocycle
//!   coherence conditions, the comparison functor, and bounded searches
//!   for action extensions and reconstruction witnesses;
//! * [`congruence`]: congruences, cooperators and connectors, and the
//!   centralization check they combine into.
//!
//! All values are immutable after construction and cheap to share; every
//! enumeration emits results in a canonical deterministic order.

pub mod actions;
pub mod algebra;
pub mod bounds;
pub mod catalog;
pub mod congruence;
pub mod descent;
pub mod error;
pub mod points;
pub mod terms;

pub use error::StructureError;
