//! Generation and certification of plane tilings by pairwise noncongruent
//! unit-area triangles with uniformly bounded perimeter.
//!
//! The tiling is grown outward from the origin by repeatedly cutting
//! unit-area triangles off, or splitting, the convex cone closest to the
//! origin. Free parameters are chosen generically by rejection sampling so
//! that no two triangles, realized or potential, are congruent.

pub mod certificate;
pub mod clip;
pub mod engine;
pub mod genericity;
pub mod geometry;
pub mod model;
pub mod svg;
pub mod verification;

pub use certificate::Certificate;
pub use engine::{Event, RunParams, RunStatus, TilingState};
pub use geometry::{Cone, CongruenceSignature, Point, Side, Triangle};
pub use model::{ConeId, LiveCone, Provenance, Tile, TriangleId};
pub use verification::{audit_state, audit_tiling, AuditConfig, AuditReport};
