//! The splitting procedure.
//!
//! Step 0 divides the plane into three 2π/3 wedges around the origin and
//! places a unit-area triangle with apex at the origin in each, leaving three
//! cones. Every later step takes the live cone closest to the origin. If it
//! is wider than 4 it is split by a generic ray into two cones of width
//! above 2; otherwise a unit-area triangle is cut off on its smaller-angle
//! side.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genericity::{
    potential_triangles, sample_generic_initial, sample_generic_split, PotentialTriangle,
    SampleError, SamplerConfig, SignatureIndex,
};
use crate::geometry::{Cone, GeometryError, Point, Side, Triangle};
use crate::model::{ConeId, LiveCone, Provenance, Tile, TriangleId};

/// Polar angles of the three Step-0 half-lines.
pub const INITIAL_RAYS: [f64; 3] = [PI / 2.0, PI / 2.0 + 2.0 * PI / 3.0, PI / 2.0 + 4.0 * PI / 3.0];

/// Smallest angle any Step-0 triangle may have.
pub const MIN_INITIAL_ANGLE: f64 = PI / 12.0;

/// Cones wider than this are split rather than cut.
pub const SPLIT_WIDTH: f64 = 4.0;

/// Cone distances to the origin are compared on this grid, so cones that
/// are equally close up to rounding noise are ordered by id.
pub const DISTANCE_RESOLUTION: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunParams {
    pub seed: u64,
    /// Stop once every live cone is farther than this from the origin.
    pub radius: f64,
    pub max_steps: u64,
    /// Potential-triangle lookahead.
    pub depth: usize,
    /// Required signature separation between non-exempt triangle pairs.
    pub margin: f64,
    /// Geometric tolerance used by audits.
    pub tol: f64,
    pub max_attempts: u32,
}

impl Default for RunParams {
    fn default() -> Self {
        RunParams {
            seed: 0,
            radius: 30.0,
            max_steps: 1_000_000,
            depth: 4,
            margin: 1e-6,
            tol: 1e-9,
            max_attempts: 64,
        }
    }
}

impl RunParams {
    pub fn validate(&self) -> Result<(), EngineError> {
        let bad = |msg: &str| Err(EngineError::InvalidParams(msg.to_owned()));
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return bad("radius must be positive and finite");
        }
        if self.depth < 1 {
            return bad("depth must be at least 1");
        }
        if !(self.tol > 0.0 && self.tol < self.margin) {
            return bad("need 0 < tol < margin");
        }
        if self.max_attempts == 0 {
            return bad("max_attempts must be positive");
        }
        Ok(())
    }

    pub fn sampler(&self) -> SamplerConfig {
        SamplerConfig {
            depth: self.depth,
            margin: self.margin,
            max_attempts: self.max_attempts,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("no live cones")]
    NoCones,
    #[error("duplicate cone id {0}")]
    DuplicateCone(ConeId),
    #[error(transparent)]
    Sampling(#[from] SampleError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// One committed change to the tiling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Event {
    Init {
        lengths: [f64; 3],
        attempts: u32,
        triangles: Vec<TriangleId>,
        cones: Vec<ConeId>,
    },
    Cut {
        step: u64,
        cone: ConeId,
        side: Side,
        triangle: TriangleId,
        residual: ConeId,
    },
    Split {
        step: u64,
        cone: ConeId,
        t: f64,
        phi: f64,
        attempts: u32,
        draws: u64,
        left: ConeId,
        right: ConeId,
    },
}

impl Event {
    pub fn kind(&self) -> &'static str {
        match self {
            Event::Init { .. } => "init",
            Event::Cut { .. } => "cut",
            Event::Split { .. } => "split",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Covered,
    StepBudgetExhausted,
}

/// Admissible range of the leg along the counterclockwise ray of a Step-0
/// wedge. At both ends one of the non-apex angles equals π/12.
pub fn feasible_leg_interval() -> (f64, f64) {
    let product = 4.0 / 3f64.sqrt();
    let ratio = MIN_INITIAL_ANGLE.sin() / (PI / 3.0 - MIN_INITIAL_ANGLE).sin();
    ((product * ratio).sqrt(), (product / ratio).sqrt())
}

/// The Step-0 tiling for the given legs: in wedge `k`, the triangle has apex
/// at the origin, leg `lengths[k]` on ray `k + 1` and the complementary leg
/// (fixing the area at 1) on ray `k`. Triangles and cones get ids `0..3`.
pub fn initial_configuration(
    lengths: [f64; 3],
) -> Result<(Vec<Tile>, Vec<LiveCone>), GeometryError> {
    let mut tiles = Vec::with_capacity(3);
    let mut cones = Vec::with_capacity(3);
    for (k, &leg) in lengths.iter().enumerate() {
        let ccw = Point::polar(INITIAL_RAYS[(k + 1) % 3]);
        let cw = Point::polar(INITIAL_RAYS[k]);
        let other = 4.0 / (3f64.sqrt() * leg);
        let far_ccw = ccw * leg;
        let far_cw = cw * other;
        tiles.push(Tile {
            id: TriangleId(k as u64),
            provenance: Provenance::Initial { region: k as u8 },
            triangle: Triangle::new(Point::ORIGIN, far_cw, far_ccw)?,
        });
        cones.push(LiveCone {
            id: ConeId(k as u64),
            cone: Cone::new(far_ccw, far_cw, ccw, cw)?,
        });
    }
    Ok((tiles, cones))
}

#[derive(Debug, Clone, Copy)]
struct QueueKey {
    distance: f64,
    id: ConeId,
}

impl QueueKey {
    fn new(cone: &LiveCone) -> Self {
        QueueKey {
            distance: cone.cone.distance_to_origin(),
            id: cone.id,
        }
    }

    fn bucket(&self) -> f64 {
        (self.distance / DISTANCE_RESOLUTION).round()
    }
}

impl PartialEq for QueueKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other).is_eq()
    }
}

impl Eq for QueueKey {}

impl PartialOrd for QueueKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QueueKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.bucket()
            .total_cmp(&other.bucket())
            .then(self.id.cmp(&other.id))
    }
}

struct Entry {
    cone: LiveCone,
    potentials: Vec<PotentialTriangle>,
}

/// A finite tiling of the plane by triangles and cones, with the generator
/// state needed to continue it.
pub struct TilingState {
    params: RunParams,
    tiles: Vec<Tile>,
    queue: BTreeMap<QueueKey, Entry>,
    rng: ChaCha8Rng,
    step_count: u64,
    events: Vec<Event>,
    next_triangle: u64,
    next_cone: u64,
}

impl TilingState {
    /// Step 0 with generically sampled leg lengths.
    pub fn init(params: RunParams) -> Result<Self, EngineError> {
        params.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let sample = sample_generic_initial(&mut rng, &params.sampler())?;
        let (tiles, cones) = initial_configuration(sample.lengths)?;
        let mut state = TilingState::from_parts(params, tiles, cones, rng)?;
        state.events.push(Event::Init {
            lengths: sample.lengths,
            attempts: sample.attempts,
            triangles: state.tiles.iter().map(|t| t.id).collect(),
            cones: state.queue.values().map(|e| e.cone.id).collect(),
        });
        Ok(state)
    }

    /// A state holding an arbitrary configuration. The caller is responsible
    /// for it being a tiling; audits will tell.
    pub fn with_configuration(
        params: RunParams,
        tiles: Vec<Tile>,
        cones: Vec<LiveCone>,
    ) -> Result<Self, EngineError> {
        params.validate()?;
        let rng = ChaCha8Rng::seed_from_u64(params.seed);
        TilingState::from_parts(params, tiles, cones, rng)
    }

    fn from_parts(
        params: RunParams,
        tiles: Vec<Tile>,
        cones: Vec<LiveCone>,
        rng: ChaCha8Rng,
    ) -> Result<Self, EngineError> {
        let next_triangle = tiles.iter().map(|t| t.id.0 + 1).max().unwrap_or(0);
        let next_cone = cones.iter().map(|c| c.id.0 + 1).max().unwrap_or(0);
        let mut state = TilingState {
            params,
            tiles,
            queue: BTreeMap::new(),
            rng,
            step_count: 0,
            events: Vec::new(),
            next_triangle,
            next_cone,
        };
        for cone in cones {
            if state.queue.values().any(|e| e.cone.id == cone.id) {
                return Err(EngineError::DuplicateCone(cone.id));
            }
            let potentials = potential_triangles(cone.id, &cone.cone, state.params.depth)?;
            state.insert(cone, potentials);
        }
        Ok(state)
    }

    fn insert(&mut self, cone: LiveCone, potentials: Vec<PotentialTriangle>) {
        let key = QueueKey::new(&cone);
        self.queue.insert(key, Entry { cone, potentials });
    }

    fn fresh_cone_id(&mut self) -> ConeId {
        let id = ConeId(self.next_cone);
        self.next_cone += 1;
        id
    }

    pub fn params(&self) -> &RunParams {
        &self.params
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    /// Live cones, closest to the origin first.
    pub fn cones(&self) -> impl Iterator<Item = &LiveCone> {
        self.queue.values().map(|e| &e.cone)
    }

    pub fn cone_count(&self) -> usize {
        self.queue.len()
    }

    pub fn step_count(&self) -> u64 {
        self.step_count
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    /// Potential triangles of every live cone at the configured depth.
    pub fn potentials(&self) -> impl Iterator<Item = &PotentialTriangle> {
        self.queue.values().flat_map(|e| e.potentials.iter())
    }

    /// The live cone closest to the origin; ties (up to
    /// [`DISTANCE_RESOLUTION`]) go to the smaller id.
    pub fn next_cone(&self) -> Result<&LiveCone, EngineError> {
        self.queue
            .values()
            .next()
            .map(|e| &e.cone)
            .ok_or(EngineError::NoCones)
    }

    /// Whether every live cone lies farther than `radius` from the origin.
    pub fn covers(&self, radius: f64) -> bool {
        !self.queue.is_empty() && self.queue.keys().all(|k| k.distance > radius)
    }

    /// Performs one step and returns its event.
    pub fn step(&mut self) -> Result<&Event, EngineError> {
        let key = *self.queue.keys().next().ok_or(EngineError::NoCones)?;
        let current = self.queue[&key].cone;
        let step = self.step_count + 1;
        let event = if current.cone.width() > SPLIT_WIDTH {
            let context = SignatureIndex::from_tiling(
                &self.tiles,
                self.queue
                    .iter()
                    .filter(|(k, _)| **k != key)
                    .flat_map(|(_, e)| e.potentials.iter()),
            );
            let ids = (ConeId(self.next_cone), ConeId(self.next_cone + 1));
            let sample = sample_generic_split(
                &current.cone,
                ids,
                &context,
                &mut self.rng,
                &self.params.sampler(),
            )?;
            self.next_cone += 2;
            self.queue.remove(&key);
            self.insert(LiveCone { id: ids.0, cone: sample.left }, sample.left_potentials);
            self.insert(LiveCone { id: ids.1, cone: sample.right }, sample.right_potentials);
            Event::Split {
                step,
                cone: current.id,
                t: sample.t,
                phi: sample.phi,
                attempts: sample.attempts,
                draws: sample.draws,
                left: ids.0,
                right: ids.1,
            }
        } else {
            let side = current.cone.cut_side();
            let (triangle, residual) = current.cone.cut(side)?;
            let residual_id = self.fresh_cone_id();
            let potentials = potential_triangles(residual_id, &residual, self.params.depth)?;
            let triangle_id = TriangleId(self.next_triangle);
            self.next_triangle += 1;
            self.tiles.push(Tile {
                id: triangle_id,
                provenance: Provenance::Cut {
                    cone: current.id,
                    side,
                },
                triangle,
            });
            self.queue.remove(&key);
            self.insert(
                LiveCone {
                    id: residual_id,
                    cone: residual,
                },
                potentials,
            );
            Event::Cut {
                step,
                cone: current.id,
                side,
                triangle: triangle_id,
                residual: residual_id,
            }
        };
        self.step_count = step;
        self.events.push(event);
        Ok(self.events.last().expect("just pushed"))
    }

    /// Steps until the disk of radius `params.radius` is covered by triangles
    /// or the step budget is spent.
    pub fn run(&mut self) -> Result<RunStatus, EngineError> {
        loop {
            if self.covers(self.params.radius) {
                return Ok(RunStatus::Covered);
            }
            if self.step_count >= self.params.max_steps {
                return Ok(RunStatus::StepBudgetExhausted);
            }
            self.step()?;
        }
    }
}
