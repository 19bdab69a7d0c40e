//! Framings of surfaces as winding-number functions, the action of Dehn twists
//! and their fractional versions, Arf invariants and orbit classification,
//! prong rotation groups and components of strata of abelian differentials,
//! curve configurations and one-cylinder translation surfaces.

pub mod arf;
pub mod configurations;
pub mod error;
pub mod flat;
pub mod strata;
pub mod surface;
pub mod twist_engine;

pub use error::{Error, Result};
pub use surface::{
    intersection, AbsoluteFraming, ClassKind, FramedSurface, HalfInt, HomologyClass,
    PartitionKappa, SurfaceType,
};
