//! Error type shared by all modules of the crate.

use std::fmt;

/// Errors reported by lattice, cone, fan and quotient operations.
///
/// Input-level problems (rank mismatches, non-primitive sublattices,
/// malformed documents) are distinguished from `InternalInvariant`,
/// which signals a broken construction invariant and is never expected
/// on any input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Vector or matrix dimensions do not match the ambient rank.
    RankMismatch { expected: usize, found: usize },
    /// A sublattice basis is linearly dependent.
    DependentBasis,
    /// A sublattice was required to be primitive (saturated) but is not.
    NonPrimitiveSublattice,
    /// A cone was required to be strictly convex but contains a line.
    NotStrictlyConvex,
    /// `minimal_face_containing` was called with a cone not contained in the host.
    NotContained,
    /// The given cone does not belong to the fan.
    ConeNotInFan,
    /// A cone system fails the quasifan axioms where a quasifan was required.
    InvalidQuasifan,
    /// A cone system fails the fan axioms where a fan was required.
    InvalidFan,
    /// A cone system must contain at least one cone.
    EmptySystem,
    /// The codimension-2 cross-check requires rank(N/L) = 2.
    WrongCodimension { found: usize },
    /// A quotient result was paired with a fan it was not computed from.
    MismatchedQuotient,
    /// More than one inclusion-maximal face met the test subspace.
    AmbiguousMaximalFace,
    /// The map does not send the source sublattice into the target sublattice.
    NotEquivariant,
    /// A matrix fails to be a map of the given fans.
    NotAMapOfFans,
    /// A lattice map does not factor through the requested projection.
    DoesNotFactor,
    /// A construction invariant failed; indicates a bug, not bad input.
    InternalInvariant(String),
    /// A document could not be parsed or violates its schema.
    Document(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RankMismatch { expected, found } => {
                write!(f, "rank mismatch: expected {expected}, found {found}")
            }
            Error::DependentBasis => write!(f, "basis vectors are linearly dependent"),
            Error::NonPrimitiveSublattice => {
                write!(f, "sublattice is not primitive (quotient has torsion)")
            }
            Error::NotStrictlyConvex => write!(f, "cone is not strictly convex"),
            Error::NotContained => write!(f, "cone is not contained in the host cone"),
            Error::ConeNotInFan => write!(f, "cone is not a member of the fan"),
            Error::InvalidQuasifan => write!(f, "cone system is not a quasifan"),
            Error::InvalidFan => write!(f, "cone system is not a fan"),
            Error::EmptySystem => write!(f, "cone system is empty"),
            Error::WrongCodimension { found } => {
                write!(f, "quotient rank must be 2, found {found}")
            }
            Error::MismatchedQuotient => {
                write!(f, "quotient result does not belong to the given fan")
            }
            Error::AmbiguousMaximalFace => {
                write!(f, "maximal face meeting the subspace is not unique")
            }
            Error::NotEquivariant => {
                write!(
                    f,
                    "map does not send the source sublattice into the target sublattice"
                )
            }
            Error::NotAMapOfFans => write!(f, "matrix is not a map of the given fans"),
            Error::DoesNotFactor => write!(f, "map does not factor through the projection"),
            Error::InternalInvariant(msg) => write!(f, "internal invariant violated: {msg}"),
            Error::Document(msg) => write!(f, "document error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
