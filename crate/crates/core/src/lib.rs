//! Exact conductor arithmetic for character twists of irreducible admissible
//! representations of `GL(n)` over non-archimedean local fields.
//!
//! The crate has two halves that deliberately compute the same quantities in
//! different ways. The formula half ([`reps`] and [`counting`]) evaluates the
//! explicit twisted-conductor identity
//! `a(chi pi) = a(pi) + dominant - interference` together with its bounds and
//! closed-form counts. The exhaustive half ([`oracle`]) enumerates concrete
//! finite dual groups ([`characters`] over [`localfield`]), recomputes every
//! conductor from raw filtration data, and reports agreement or divergence
//! check by check. All arithmetic is exact; there is no floating point
//! anywhere.

pub mod characters;
pub mod counting;
pub mod error;
pub mod localfield;
pub mod oracle;
pub mod reps;
pub mod wire;

pub use characters::UnitCharacter;
pub use counting::{CountKind, CountReport, InterferenceStatus};
pub use error::{Error, Result};
pub use localfield::{norm_image_level, LocalFieldParams, UnitQuotientGroup};
pub use oracle::{GridConfig, Histogram, VerificationReport};
pub use reps::{
    bushnell_henniart_bound, conductor_from_level, level_from_conductor, norm_pullback_level,
    twisted_level, ConductorBounds, QuasiSquareIntegrable, Representation, TwistBreakdown,
};
