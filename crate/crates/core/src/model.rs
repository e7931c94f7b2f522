//! Identified triangles and cones as they appear in a tiling.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{Cone, Side, Triangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TriangleId(pub u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConeId(pub u64);

impl fmt::Display for TriangleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.0)
    }
}

impl fmt::Display for ConeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.0)
    }
}

/// Where a realized triangle came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    /// One of the three Step-0 triangles, by angular region index.
    Initial { region: u8 },
    /// Cut from a cone on the given side.
    Cut { cone: ConeId, side: Side },
}

impl Provenance {
    pub fn is_initial(&self) -> bool {
        matches!(self, Provenance::Initial { .. })
    }
}

/// A triangle that is part of the tiling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tile {
    pub id: TriangleId,
    pub provenance: Provenance,
    pub triangle: Triangle,
}

/// A cone that is still part of the tiling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiveCone {
    pub id: ConeId,
    pub cone: Cone,
}
