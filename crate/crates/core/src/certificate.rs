//! Serialized tiling state that can be re-audited without the generator.
//!
//! The document is a single JSON object:
//!
//! | field            | content                                                  |
//! |------------------|----------------------------------------------------------|
//! | `format_version` | `1`                                                      |
//! | `params`         | run parameters (`seed`, `radius`, `max_steps`, `depth`, `margin`, `tol`, `max_attempts`) |
//! | `status`         | `"covered"` or `"step_budget_exhausted"`                 |
//! | `step_count`     | committed steps after Step 0                             |
//! | `triangles`      | `id`, `vertices` (`[[x, y]; 3]`), `provenance`, `area`, `perimeter`, `signature` |
//! | `cones`          | `id`, `base` (`[p, q]`), `directions` (`[left, right]`), `angles`, `width` |
//! | `events`         | the event log, tagged by `kind` (`init`, `cut`, `split`) |
//! | `audit`          | `samples`, `seed` and the `report` of the generating run, or `null` |
//!
//! Numbers are written in the shortest form that parses back to the same
//! `f64`, so parsing and re-serializing reproduces the document exactly.
//! Derived quantities (`area`, `angles`, ...) are informational; audits
//! recompute them from `vertices`, `base` and `directions`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{Event, RunParams, RunStatus, TilingState};
use crate::geometry::{Cone, CongruenceSignature, GeometryError, Point, Triangle};
use crate::model::{ConeId, LiveCone, Provenance, Tile, TriangleId};
use crate::verification::{audit_tiling, AuditConfig, AuditReport};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("triangle {id}: {source}")]
    Triangle {
        id: TriangleId,
        source: GeometryError,
    },
    #[error("cone {id}: {source}")]
    Cone { id: ConeId, source: GeometryError },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleRecord {
    pub id: TriangleId,
    pub vertices: [Point; 3],
    pub provenance: Provenance,
    pub area: f64,
    pub perimeter: f64,
    pub signature: CongruenceSignature,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeRecord {
    pub id: ConeId,
    pub base: [Point; 2],
    pub directions: [Point; 2],
    pub angles: [f64; 2],
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifiedAudit {
    pub samples: usize,
    pub seed: u64,
    pub report: AuditReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub format_version: u32,
    pub params: RunParams,
    pub status: RunStatus,
    pub step_count: u64,
    pub triangles: Vec<TriangleRecord>,
    pub cones: Vec<ConeRecord>,
    pub events: Vec<Event>,
    pub audit: Option<CertifiedAudit>,
}

impl TriangleRecord {
    pub fn from_tile(tile: &Tile) -> Self {
        let m = tile.triangle.metrics();
        TriangleRecord {
            id: tile.id,
            vertices: tile.triangle.vertices(),
            provenance: tile.provenance,
            area: m.area,
            perimeter: m.perimeter,
            signature: m.signature,
        }
    }

    pub fn to_tile(&self) -> Result<Tile, CertificateError> {
        let [a, b, c] = self.vertices;
        let triangle = Triangle::new(a, b, c).map_err(|source| CertificateError::Triangle {
            id: self.id,
            source,
        })?;
        Ok(Tile {
            id: self.id,
            provenance: self.provenance,
            triangle,
        })
    }
}

impl ConeRecord {
    pub fn from_live(live: &LiveCone) -> Self {
        let c = &live.cone;
        let (a, b) = c.angles();
        ConeRecord {
            id: live.id,
            base: [c.base_p(), c.base_q()],
            directions: [c.dir_p(), c.dir_q()],
            angles: [a, b],
            width: c.width(),
        }
    }

    pub fn to_live(&self) -> Result<LiveCone, CertificateError> {
        let [p, q] = self.base;
        let [dp, dq] = self.directions;
        let cone = Cone::new(p, q, dp, dq).map_err(|source| CertificateError::Cone {
            id: self.id,
            source,
        })?;
        Ok(LiveCone { id: self.id, cone })
    }
}

impl Certificate {
    /// Snapshot of `state`. Triangles and cones are listed by id.
    pub fn from_state(state: &TilingState, status: RunStatus, audit: Option<CertifiedAudit>) -> Self {
        let mut triangles: Vec<_> = state.tiles().iter().map(TriangleRecord::from_tile).collect();
        triangles.sort_by_key(|t| t.id);
        let mut cones: Vec<_> = state.cones().map(ConeRecord::from_live).collect();
        cones.sort_by_key(|c| c.id);
        Certificate {
            format_version: FORMAT_VERSION,
            params: state.params().clone(),
            status,
            step_count: state.step_count(),
            triangles,
            cones,
            events: state.events().to_vec(),
            audit,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate is always serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        let cert: Certificate = serde_json::from_str(text)?;
        if cert.format_version != FORMAT_VERSION {
            return Err(CertificateError::Version(cert.format_version));
        }
        Ok(cert)
    }

    pub fn tiles(&self) -> Result<Vec<Tile>, CertificateError> {
        self.triangles.iter().map(TriangleRecord::to_tile).collect()
    }

    pub fn live_cones(&self) -> Result<Vec<LiveCone>, CertificateError> {
        self.cones.iter().map(ConeRecord::to_live).collect()
    }

    /// Audit configuration implied by the recorded parameters.
    pub fn audit_config(&self, samples: usize, seed: u64) -> AuditConfig {
        AuditConfig {
            radius: self.params.radius,
            samples,
            tol: self.params.tol,
            margin: self.params.margin,
            seed,
        }
    }

    /// Re-audits the recorded geometry.
    pub fn verify(&self, config: &AuditConfig) -> Result<AuditReport, CertificateError> {
        Ok(audit_tiling(&self.tiles()?, &self.live_cones()?, config))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_errors_carry_location() {
        let err = Certificate::from_json("{\n  \"format_version\": 1,\n  \"params\": [}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3"), "{msg}");
    }

    #[test]
    fn version_is_checked() {
        let state = TilingState::init(RunParams { max_steps: 0, ..RunParams::default() }).unwrap();
        let mut cert = Certificate::from_state(&state, RunStatus::StepBudgetExhausted, None);
        cert.format_version = 2;
        assert!(matches!(
            Certificate::from_json(&cert.to_json()),
            Err(CertificateError::Version(2))
        ));
    }

    #[test]
    fn records_rebuild_geometry() {
        let state = TilingState::init(RunParams::default()).unwrap();
        let cert = Certificate::from_state(&state, RunStatus::StepBudgetExhausted, None);
        let tiles = cert.tiles().unwrap();
        assert_eq!(tiles, state.tiles());
        let cones = cert.live_cones().unwrap();
        let mut original: Vec<_> = state.cones().collect();
        original.sort_by_key(|c| c.id);
        for (a, b) in cones.iter().zip(original) {
            assert_eq!(a.id, b.id);
            assert!(a.cone.base_p() == b.cone.base_p() && a.cone.base_q() == b.cone.base_q());
            assert!(a.cone.dir_p().distance(b.cone.dir_p()) < 1e-15);
        }
    }
}
