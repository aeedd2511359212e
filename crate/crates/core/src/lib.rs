//! Exact computation of toric quotients at the level of fans.
//!
//! A subtorus action on a toric variety corresponds to a primitive
//! sublattice `L` of the cocharacter lattice `N` of the acting torus.
//! This crate computes, entirely in exact integer and rational
//! arithmetic:
//!
//! * the quotient fan of a fan (or any system of cones) by `L`, together
//!   with the enlarged kernel and the canonical projection through which
//!   every `L`-invariant map of fans factors;
//! * the affine quotient of a single cone;
//! * the fan-theoretic criterion for the quotient to be good or
//!   geometric;
//! * the good model: the universal modification of the fan whose
//!   quotient is good;
//! * orbit-closure fans via stars, and an independent cross-check of the
//!   quotient construction when the quotient lattice has rank two.
//!
//! All values are immutable and all operations are pure functions, so
//! everything is safe to share across threads. Outputs are canonical:
//! identical inputs give bit-identical results and serializations.

pub mod cone;
pub mod dd;
pub mod document;
pub mod error;
pub mod fan;
pub mod good_model;
pub mod good_quotient;
pub mod linalg;
pub mod quotient;
pub mod rational;

pub use cone::Cone;
pub use error::{Error, Result};
pub use fan::{Classification, ConeSystem, Fan, Quasifan, Violation};
pub use good_model::{good_model, induced_model_map, GoodModel};
pub use good_quotient::{affine_quotient, check_good_quotient, AffineQuotient, GoodnessReport};
pub use linalg::{IntMat, SublatticeBasis};
pub use quotient::{codim2_quotient_oracle, quotient_fan, quotient_quasifan, QuotientResult};
