//! Independent audits of a tiling.
//!
//! Everything here is recomputed from vertex coordinates and cone geometry;
//! nothing is taken from the generator's bookkeeping. The audits cover the
//! cone invariant (Property P), unit area, the perimeter bound, pairwise
//! noncongruence, interior-disjointness, Monte Carlo coverage of a disk, and
//! an exact area accounting of the same disk.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::clip::{convex_intersection_area, disk_area, polygon_disk_area};
use crate::engine::{feasible_leg_interval, initial_configuration, TilingState};
use crate::geometry::{Cone, Point, Triangle};
use crate::model::{ConeId, LiveCone, Tile, TriangleId};

/// Largest admissible |area - 1| of a triangle.
pub const AREA_TOLERANCE: f64 = 1e-9;

/// Largest admissible intersection area of two distinct triangles.
pub const OVERLAP_TOLERANCE: f64 = 1e-12;

/// Largest admissible relative error of the disk area accounting.
pub const ACCOUNTING_TOLERANCE: f64 = 1e-6;

/// Coverage is probed on the disk of radius `COVERAGE_FRACTION * radius`.
pub const COVERAGE_FRACTION: f64 = 0.99;

pub const MAX_CONE_ANGLE: f64 = 11.0 * PI / 12.0;
pub const MAX_CONE_ANGLE_SUM: f64 = 5.0 * PI / 3.0;
pub const MIN_CONE_WIDTH: f64 = 2.0;

/// Bound on the perimeter of every cut triangle: the base is shorter than
/// 16 and, with the apex angle at least π/12, each other side is at most
/// `base / sin(π/12)`.
pub fn perimeter_bound() -> f64 {
    16.0 + 32.0 / (PI / 12.0).sin()
}

/// Largest perimeter a Step-0 triangle can have (attained at either end of
/// the feasible leg interval).
pub fn initial_perimeter_bound() -> f64 {
    let (lo, hi) = feasible_leg_interval();
    [lo, hi]
        .into_iter()
        .map(|leg| {
            initial_configuration([leg; 3])
                .map(|(tiles, _)| tiles[0].triangle.perimeter())
                .unwrap_or(f64::INFINITY)
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", content = "value", rename_all = "snake_case")]
pub enum PropertyPViolation {
    Width(f64),
    LeftAngle(f64),
    RightAngle(f64),
    AngleSum(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyPAudit {
    pub width: f64,
    pub angles: (f64, f64),
    pub violations: Vec<PropertyPViolation>,
}

impl PropertyPAudit {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Width > 2, both angles ≤ 11π/12, angle sum ≤ 5π/3, each with slack `tol`.
pub fn audit_property_p(cone: &Cone, tol: f64) -> PropertyPAudit {
    let width = cone.width();
    let (left, right) = cone.angles();
    let mut violations = Vec::new();
    if width <= MIN_CONE_WIDTH - tol {
        violations.push(PropertyPViolation::Width(width));
    }
    if left > MAX_CONE_ANGLE + tol {
        violations.push(PropertyPViolation::LeftAngle(left));
    }
    if right > MAX_CONE_ANGLE + tol {
        violations.push(PropertyPViolation::RightAngle(right));
    }
    if left + right > MAX_CONE_ANGLE_SUM + tol {
        violations.push(PropertyPViolation::AngleSum(left + right));
    }
    PropertyPAudit {
        width,
        angles: (left, right),
        violations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditConfig {
    /// Radius the tiling claims to cover.
    pub radius: f64,
    pub samples: usize,
    pub tol: f64,
    pub margin: f64,
    pub seed: u64,
}

impl AuditConfig {
    pub fn required_separation(&self) -> f64 {
        self.margin - 2.0 * self.tol
    }

    pub fn coverage_radius(&self) -> f64 {
        COVERAGE_FRACTION * self.radius
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeViolation {
    pub cone: ConeId,
    pub violations: Vec<PropertyPViolation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapPair {
    pub first: TriangleId,
    pub second: TriangleId,
    pub area: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditChecks {
    pub area: bool,
    pub perimeter: bool,
    pub property_p: bool,
    pub noncongruence: bool,
    pub disjointness: bool,
    pub coverage: bool,
    pub area_accounting: bool,
}

impl AuditChecks {
    pub fn all(&self) -> bool {
        self.area
            && self.perimeter
            && self.property_p
            && self.noncongruence
            && self.disjointness
            && self.coverage
            && self.area_accounting
    }

    /// Names of the failed checks.
    pub fn failures(&self) -> Vec<&'static str> {
        [
            ("area", self.area),
            ("perimeter", self.perimeter),
            ("property_p", self.property_p),
            ("noncongruence", self.noncongruence),
            ("disjointness", self.disjointness),
            ("coverage", self.coverage),
            ("area_accounting", self.area_accounting),
        ]
        .into_iter()
        .filter_map(|(name, ok)| (!ok).then_some(name))
        .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub triangle_count: usize,
    pub cone_count: usize,
    pub area_max_error: f64,
    pub perimeter_max: f64,
    pub perimeter_bound: f64,
    pub initial_perimeter_max: f64,
    pub initial_perimeter_bound: f64,
    pub property_p_violations: Vec<ConeViolation>,
    /// `None` with fewer than two triangles.
    pub min_congruence_separation: Option<f64>,
    pub closest_pair: Option<(TriangleId, TriangleId)>,
    pub required_separation: f64,
    pub overlap_pairs: Vec<OverlapPair>,
    pub coverage_radius: f64,
    pub coverage_samples: usize,
    pub coverage_misses: usize,
    pub covered_area: f64,
    pub disk_area: f64,
    pub area_accounting_error: f64,
    pub checks: AuditChecks,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.all()
    }
}

/// Audits a finite tiling given by its triangles and live cones.
pub fn audit_tiling(tiles: &[Tile], cones: &[LiveCone], config: &AuditConfig) -> AuditReport {
    let mut area_max_error: f64 = 0.0;
    let mut perimeter_max: f64 = 0.0;
    let mut initial_perimeter_max: f64 = 0.0;
    for tile in tiles {
        area_max_error = area_max_error.max((tile.triangle.area() - 1.0).abs());
        let perimeter = tile.triangle.perimeter();
        if tile.provenance.is_initial() {
            initial_perimeter_max = initial_perimeter_max.max(perimeter);
        } else {
            perimeter_max = perimeter_max.max(perimeter);
        }
    }
    let perimeter_bound = perimeter_bound();
    let initial_perimeter_bound = initial_perimeter_bound();

    let property_p_violations: Vec<_> = cones
        .iter()
        .filter_map(|c| {
            let audit = audit_property_p(&c.cone, config.tol);
            (!audit.passed()).then_some(ConeViolation {
                cone: c.id,
                violations: audit.violations,
            })
        })
        .collect();

    let closest = closest_signature_pair(tiles);
    let overlap_pairs = overlapping_pairs(tiles);

    let coverage_radius = config.coverage_radius();
    let coverage_misses = coverage_misses(tiles, coverage_radius, config.samples, config.tol, config.seed);
    let covered_area: f64 = tiles
        .iter()
        .map(|t| polygon_disk_area(&t.triangle.ccw_vertices(), Point::ORIGIN, coverage_radius))
        .sum();
    let disk = disk_area(coverage_radius);
    let area_accounting_error = (covered_area - disk).abs() / disk;

    let required_separation = config.required_separation();
    let checks = AuditChecks {
        area: area_max_error <= AREA_TOLERANCE,
        perimeter: perimeter_max <= perimeter_bound
            && initial_perimeter_max <= initial_perimeter_bound + config.tol,
        property_p: property_p_violations.is_empty(),
        noncongruence: closest.is_none_or(|(_, _, d)| d >= required_separation),
        disjointness: overlap_pairs.is_empty(),
        coverage: coverage_misses == 0,
        area_accounting: area_accounting_error <= ACCOUNTING_TOLERANCE,
    };
    AuditReport {
        triangle_count: tiles.len(),
        cone_count: cones.len(),
        area_max_error,
        perimeter_max,
        perimeter_bound,
        initial_perimeter_max,
        initial_perimeter_bound,
        property_p_violations,
        min_congruence_separation: closest.map(|c| c.2),
        closest_pair: closest.map(|c| (c.0, c.1)),
        required_separation,
        overlap_pairs,
        coverage_radius,
        coverage_samples: config.samples,
        coverage_misses,
        covered_area,
        disk_area: disk,
        area_accounting_error,
        checks,
    }
}

/// Audits a generator state against its own parameters.
pub fn audit_state(state: &TilingState, samples: usize, seed: u64) -> AuditReport {
    let params = state.params();
    let cones: Vec<_> = state.cones().copied().collect();
    audit_tiling(
        state.tiles(),
        &cones,
        &AuditConfig {
            radius: params.radius,
            samples,
            tol: params.tol,
            margin: params.margin,
            seed,
        },
    )
}

/// Realized pair with the smallest signature distance.
pub fn closest_signature_pair(tiles: &[Tile]) -> Option<(TriangleId, TriangleId, f64)> {
    let mut sigs: Vec<_> = tiles.iter().map(|t| (t.triangle.signature(), t.id)).collect();
    sigs.sort_by(|a, b| a.0.sides[0].total_cmp(&b.0.sides[0]).then(a.1.cmp(&b.1)));
    let mut best: Option<(TriangleId, TriangleId, f64)> = None;
    for (i, (si, ii)) in sigs.iter().enumerate() {
        for (sj, ij) in &sigs[i + 1..] {
            let bound = best.map_or(f64::INFINITY, |b| b.2);
            if sj.sides[0] - si.sides[0] >= bound {
                break;
            }
            let d = si.distance(sj);
            if d < bound {
                best = Some(((*ii).min(*ij), (*ii).max(*ij), d));
            }
        }
    }
    best
}

/// Pairs of triangles whose interiors overlap by more than
/// [`OVERLAP_TOLERANCE`].
pub fn overlapping_pairs(tiles: &[Tile]) -> Vec<OverlapPair> {
    let mut boxes: Vec<_> = tiles
        .iter()
        .map(|t| {
            let (lo, hi) = t.triangle.bounding_box();
            (lo, hi, t)
        })
        .collect();
    boxes.sort_by(|a, b| a.0.x.total_cmp(&b.0.x).then(a.2.id.cmp(&b.2.id)));
    let mut out = Vec::new();
    for (i, (lo_i, hi_i, ti)) in boxes.iter().enumerate() {
        let poly_i = ti.triangle.ccw_vertices();
        for (lo_j, hi_j, tj) in &boxes[i + 1..] {
            if lo_j.x > hi_i.x {
                break;
            }
            if lo_j.y > hi_i.y || hi_j.y < lo_i.y {
                continue;
            }
            let area = convex_intersection_area(&tj.triangle.ccw_vertices(), &poly_i);
            if area > OVERLAP_TOLERANCE {
                let (first, second) = (ti.id.min(tj.id), ti.id.max(tj.id));
                out.push(OverlapPair { first, second, area });
            }
        }
    }
    out.sort_by_key(|p| (p.first, p.second));
    out
}

/// Uniform bucket grid over triangle bounding boxes.
struct TriangleGrid<'a> {
    origin: Point,
    cell: f64,
    cols: usize,
    rows: usize,
    buckets: Vec<Vec<&'a Triangle>>,
}

impl<'a> TriangleGrid<'a> {
    fn new(triangles: impl Iterator<Item = &'a Triangle>, half_extent: f64, cell: f64) -> Self {
        let origin = Point::new(-half_extent, -half_extent);
        let n = ((2.0 * half_extent / cell).ceil() as usize).max(1);
        let mut grid = TriangleGrid {
            origin,
            cell,
            cols: n,
            rows: n,
            buckets: vec![Vec::new(); n * n],
        };
        for t in triangles {
            let (lo, hi) = t.bounding_box();
            let (Some((c0, r0)), Some((c1, r1))) = (grid.clamped(lo), grid.clamped(hi)) else {
                continue;
            };
            for r in r0..=r1 {
                for c in c0..=c1 {
                    grid.buckets[r * grid.cols + c].push(t);
                }
            }
        }
        grid
    }

    /// Cell of `p`, clamped into the grid; `None` if the grid is missed.
    fn clamped(&self, p: Point) -> Option<(usize, usize)> {
        let fx = (p.x - self.origin.x) / self.cell;
        let fy = (p.y - self.origin.y) / self.cell;
        if !(fx.is_finite() && fy.is_finite()) {
            return None;
        }
        let clamp = |v: f64, n: usize| v.floor().clamp(0.0, (n - 1) as f64) as usize;
        Some((clamp(fx, self.cols), clamp(fy, self.rows)))
    }

    fn candidates(&self, p: Point) -> &[&'a Triangle] {
        match self.clamped(p) {
            Some((c, r)) => &self.buckets[r * self.cols + c],
            None => &[],
        }
    }
}

/// Closed point-in-triangle test with absolute slack `tol`.
pub fn contains_point(triangle: &Triangle, p: Point, tol: f64) -> bool {
    let v = triangle.ccw_vertices();
    (0..3).all(|i| {
        let a = v[i];
        let b = v[(i + 1) % 3];
        let edge = b - a;
        edge.cross(p - a) >= -tol * edge.norm()
    })
}

/// Number of `samples` uniform points of the disk of radius `radius` that
/// lie in no triangle. Deterministic in `seed`.
pub fn coverage_misses(tiles: &[Tile], radius: f64, samples: usize, tol: f64, seed: u64) -> usize {
    let grid = TriangleGrid::new(tiles.iter().map(|t| &t.triangle), radius + 1.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .filter(|_| {
            let r = radius * rng.gen::<f64>().sqrt();
            let theta = 2.0 * PI * rng.gen::<f64>();
            let p = Point::polar(theta) * r;
            !grid.candidates(p).iter().any(|t| contains_point(t, p, tol))
        })
        .count()
}
