//! Exact intersection-lattice arithmetic for blown-up rational 4-manifolds.
//!
//! The lattice is H₂(ℂP² # kℂP̄²) with the diagonal form diag(1, −1, …, −1).
//! On top of the core pairing and adjunction algebra ([`lattice`]), the crate
//! provides the realized automorphism group with Cremona reduction and bounded
//! orbit search ([`weyl`]), the sign-assignment screen that decides when a
//! −4-class cannot be represented by an embedded symplectic sphere
//! ([`spheres`]), and exact (K², K·ω) bookkeeping through blow-ups, fiber sums
//! and −4-blow-downs together with a Kodaira-dimension classifier
//! ([`surgery`]).
//!
//! Everything is exact arithmetic on arbitrary-precision integers and
//! rationals; all operations are pure functions on immutable values and safe
//! to share across threads.
//!
//! The `neg4lat` binary exposes the same operations as JSON-lines subcommands;
//! see [`cli`] and the crate examples.

pub mod cli;
pub mod error;
pub mod lattice;
pub mod spheres;
pub mod surgery;
pub mod weyl;

pub use error::{Error, Result};
pub use lattice::{canonical_std, CanonicalStd, LatticeClass, RationalClass};
pub use spheres::{
    screen, value_set, verify_table, AdjunctionValueSet, ScreenOutcome, ScreenVerdict, TableEntry,
};
pub use surgery::{
    blow_down, blow_up, classify_minus4, kappa4, kappa_surface, kred_solve, minus4_blow_down,
    BlowdownScenario, InvariantState, Kappa,
};
pub use weyl::{
    enumerate_exceptional, enumerate_reduced, is_exceptional, orbit_equivalent, reduce, reflect,
    Move, OrbitStatus, OrbitVerdict, Reflection, ReflectionKind,
};
