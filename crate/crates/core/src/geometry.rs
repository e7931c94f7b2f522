//! Planar primitives: points, triangles, cones and the two cone-surgery
//! operations (cutting off a unit-area triangle, splitting by a ray).
//!
//! A [`Cone`] is stored as its embedded base segment `p -> q` together with
//! the unit directions of the two side half-lines. The region always lies to
//! the left of the directed base `p -> q`, so the side at `p` is the "left"
//! side and the side at `q` the "right" one. Angles and width are derived on
//! demand and never cached.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Shortest admissible base length and smallest admissible angle (radians)
/// between a side and the base, or between the two sides.
pub const DEGENERACY_GUARD: f64 = 1e-9;

/// Minimum |signed area| for three points to count as a triangle.
pub const MIN_TRIANGLE_AREA: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("collinear vertices (signed area {0:e})")]
    Collinear(f64),
    #[error("cone base is shorter than {DEGENERACY_GUARD:e}")]
    ShortBase,
    #[error("zero-length side direction")]
    ZeroDirection,
    #[error("side at {0} does not open into the region left of the base (angle {1})")]
    BadSideAngle(Side, f64),
    #[error("cone sides are parallel or converge (angle sum {0})")]
    NonDivergentSides(f64),
    #[error("cut distance {0} is not a positive finite number")]
    DegenerateCut(f64),
    #[error("split parameter t = {0} outside (0, 1)")]
    SplitParameter(f64),
    #[error("splitting ray is outside the recession cone")]
    OutsideRecessionCone,
    #[error("split part is too narrow (widths {left} and {right}, need > 2)")]
    SplitTooNarrow { left: f64, right: f64 },
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;

/// A point, or a free vector, of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Unit vector at polar angle `theta`.
    pub fn polar(theta: f64) -> Self {
        Point::new(theta.cos(), theta.sin())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product; positive when `other` is
    /// counterclockwise from `self`.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn normalized(self) -> Option<Point> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self * (1.0 / n))
    }

    pub fn polar_angle(self) -> f64 {
        self.y.atan2(self.x)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Unsigned angle in `[0, π]` between two nonzero vectors.
pub fn angle_between(u: Point, v: Point) -> f64 {
    u.cross(v).abs().atan2(u.dot(v))
}

/// Distance from `pt` to the closed segment `a`–`b`.
pub fn point_segment_distance(pt: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return pt.distance(a);
    }
    let t = ((pt - a).dot(ab) / len2).clamp(0.0, 1.0);
    pt.distance(a + ab * t)
}

/// Distance from `pt` to the half-line starting at `origin` with unit
/// direction `dir`. Feet behind the origin clamp to the origin.
pub fn point_ray_distance(pt: Point, origin: Point, dir: Point) -> f64 {
    let t = (pt - origin).dot(dir).max(0.0);
    pt.distance(origin + dir * t)
}

/// Which side of a cone a cut uses. `Left` is the side through the base
/// endpoint `p` and is encoded as bit 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn bit(self) -> u8 {
        match self {
            Side::Left => 0,
            Side::Right => 1,
        }
    }

    pub fn from_bit(bit: u8) -> Option<Side> {
        match bit {
            0 => Some(Side::Left),
            1 => Some(Side::Right),
            _ => None,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    /// The side with the strictly smaller angle; exact ties go left.
    pub fn smaller_angle(angle_left: f64, angle_right: f64) -> Side {
        if angle_right < angle_left {
            Side::Right
        } else {
            Side::Left
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => f.write_str("left"),
            Side::Right => f.write_str("right"),
        }
    }
}

/// Ascending side lengths. For triangles of fixed area this triple is a
/// complete congruence invariant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CongruenceSignature {
    pub sides: [f64; 3],
}

impl CongruenceSignature {
    pub fn from_lengths(mut sides: [f64; 3]) -> Self {
        sides.sort_by(f64::total_cmp);
        CongruenceSignature { sides }
    }

    /// L∞ distance between the two sorted triples.
    pub fn distance(&self, other: &CongruenceSignature) -> f64 {
        self.sides
            .iter()
            .zip(other.sides.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn longest(&self) -> f64 {
        self.sides[2]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleMetrics {
    pub area: f64,
    pub perimeter: f64,
    pub signature: CongruenceSignature,
}

/// A nondegenerate triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    vertices: [Point; 3],
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let signed = 0.5 * (b - a).cross(c - a);
        if signed.abs() <= MIN_TRIANGLE_AREA || !signed.is_finite() {
            return Err(GeometryError::Collinear(signed));
        }
        Ok(Triangle { vertices: [a, b, c] })
    }

    pub fn vertices(&self) -> [Point; 3] {
        self.vertices
    }

    pub fn signed_area(&self) -> f64 {
        let [a, b, c] = self.vertices;
        0.5 * (b - a).cross(c - a)
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    /// Side lengths in vertex order: `|v1 v2|`, `|v2 v0|`, `|v0 v1|`
    /// (the side opposite each vertex).
    pub fn side_lengths(&self) -> [f64; 3] {
        let [a, b, c] = self.vertices;
        [b.distance(c), c.distance(a), a.distance(b)]
    }

    pub fn perimeter(&self) -> f64 {
        self.side_lengths().iter().sum()
    }

    pub fn signature(&self) -> CongruenceSignature {
        CongruenceSignature::from_lengths(self.side_lengths())
    }

    pub fn diameter(&self) -> f64 {
        self.signature().longest()
    }

    /// Interior angle at each vertex.
    pub fn angles(&self) -> [f64; 3] {
        let [a, b, c] = self.vertices;
        [
            angle_between(b - a, c - a),
            angle_between(c - b, a - b),
            angle_between(a - c, b - c),
        ]
    }

    pub fn metrics(&self) -> TriangleMetrics {
        TriangleMetrics {
            area: self.area(),
            perimeter: self.perimeter(),
            signature: self.signature(),
        }
    }

    /// The vertices in counterclockwise order.
    pub fn ccw_vertices(&self) -> [Point; 3] {
        let [a, b, c] = self.vertices;
        if self.signed_area() > 0.0 {
            [a, b, c]
        } else {
            [a, c, b]
        }
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let [a, b, c] = self.vertices;
        (
            Point::new(a.x.min(b.x).min(c.x), a.y.min(b.y).min(c.y)),
            Point::new(a.x.max(b.x).max(c.x), a.y.max(b.y).max(c.y)),
        )
    }
}

/// L∞ distance between the congruence signatures of two triangles.
pub fn congruence_distance(a: &Triangle, b: &Triangle) -> f64 {
    a.signature().distance(&b.signature())
}

/// Unbounded convex region bounded by the base segment `p`–`q` and two
/// nonparallel, diverging half-lines from `p` and `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cone {
    base_p: Point,
    base_q: Point,
    dir_p: Point,
    dir_q: Point,
}

impl Cone {
    /// Builds a cone lying to the left of the directed base `p -> q`.
    /// Directions need not be normalized.
    pub fn new(base_p: Point, base_q: Point, dir_p: Point, dir_q: Point) -> Result<Self> {
        if !(base_p.is_finite() && base_q.is_finite() && dir_p.is_finite() && dir_q.is_finite())
        {
            return Err(GeometryError::NonFinite);
        }
        if base_p.distance(base_q) < DEGENERACY_GUARD {
            return Err(GeometryError::ShortBase);
        }
        let dir_p = dir_p.normalized().ok_or(GeometryError::ZeroDirection)?;
        let dir_q = dir_q.normalized().ok_or(GeometryError::ZeroDirection)?;
        let base = base_q - base_p;
        for (side, dir) in [(Side::Left, dir_p), (Side::Right, dir_q)] {
            let reference = if side == Side::Left { base } else { -base };
            let angle = angle_between(reference, dir);
            if base.cross(dir) <= 0.0 || !(DEGENERACY_GUARD..=PI - DEGENERACY_GUARD).contains(&angle)
            {
                return Err(GeometryError::BadSideAngle(side, angle));
            }
        }
        let cone = Cone {
            base_p,
            base_q,
            dir_p,
            dir_q,
        };
        let (a, b) = cone.angles();
        if dir_p.cross(dir_q) >= 0.0 || a + b - PI < DEGENERACY_GUARD {
            return Err(GeometryError::NonDivergentSides(a + b));
        }
        Ok(cone)
    }

    pub fn base_p(&self) -> Point {
        self.base_p
    }

    pub fn base_q(&self) -> Point {
        self.base_q
    }

    pub fn dir_p(&self) -> Point {
        self.dir_p
    }

    pub fn dir_q(&self) -> Point {
        self.dir_q
    }

    pub fn base_length(&self) -> f64 {
        self.base_p.distance(self.base_q)
    }

    /// Angles between the base and the left and right sides.
    pub fn angles(&self) -> (f64, f64) {
        base_side_angles(self.base_p, self.base_q, self.dir_p, self.dir_q)
    }

    pub fn angle_sum(&self) -> f64 {
        let (a, b) = self.angles();
        a + b
    }

    pub fn angle(&self, side: Side) -> f64 {
        let (a, b) = self.angles();
        match side {
            Side::Left => a,
            Side::Right => b,
        }
    }

    /// Minimum distance between a point of the left side and a point of the
    /// right side.
    pub fn width(&self) -> f64 {
        three_candidate_width(self.base_p, self.base_q, self.dir_p, self.dir_q)
    }

    /// Side carrying the apex of the next cut: the one with the smaller
    /// angle, left on ties.
    pub fn cut_side(&self) -> Side {
        let (a, b) = self.angles();
        Side::smaller_angle(a, b)
    }

    pub fn distance_to_origin(&self) -> f64 {
        point_segment_distance(Point::ORIGIN, self.base_p, self.base_q)
    }

    /// Removes the unit-area triangle with the cone's base as one side and
    /// apex on `side`, returning it together with the residual cone.
    ///
    /// The residual keeps the orientation convention, so its left side is
    /// contained in the left side of `self`.
    pub fn cut(&self, side: Side) -> Result<(Triangle, Cone)> {
        let base = self.base_length();
        let (origin, dir) = match side {
            Side::Left => (self.base_p, self.dir_p),
            Side::Right => (self.base_q, self.dir_q),
        };
        let dist = 2.0 / (base * self.angle(side).sin());
        if !(dist.is_finite() && dist > 0.0) {
            return Err(GeometryError::DegenerateCut(dist));
        }
        let apex = origin + dir * dist;
        let triangle = Triangle::new(self.base_p, self.base_q, apex)?;
        let residual = match side {
            Side::Left => Cone::new(apex, self.base_q, self.dir_p, self.dir_q)?,
            Side::Right => Cone::new(self.base_p, apex, self.dir_p, self.dir_q)?,
        };
        Ok((triangle, residual))
    }

    /// Point of the base at parameter `t` (0 at `p`, 1 at `q`).
    pub fn base_point(&self, t: f64) -> Point {
        self.base_p + (self.base_q - self.base_p) * t
    }

    /// Whether unit direction `dir` points strictly between the two sides,
    /// at least [`DEGENERACY_GUARD`] radians away from each.
    pub fn recedes_along(&self, dir: Point) -> bool {
        let guard = DEGENERACY_GUARD.sin();
        self.dir_p.cross(dir) < -guard && dir.cross(self.dir_q) < -guard
    }

    /// Splits along the ray from `base_point(t)` at polar angle `phi`,
    /// without any width requirement. Returns the part containing the left
    /// side first.
    pub fn split_parts(&self, t: f64, phi: f64) -> Result<(Cone, Cone)> {
        if !(t > 0.0 && t < 1.0) {
            return Err(GeometryError::SplitParameter(t));
        }
        let ray = Point::polar(phi);
        if !self.recedes_along(ray) {
            return Err(GeometryError::OutsideRecessionCone);
        }
        let x = self.base_point(t);
        let left = Cone::new(self.base_p, x, self.dir_p, ray)?;
        let right = Cone::new(x, self.base_q, ray, self.dir_q)?;
        Ok((left, right))
    }

    /// Polar angle of the splitting ray that makes angle `a` with the
    /// direction from the split point towards `p`.
    pub fn split_direction(&self, a: f64) -> f64 {
        (self.base_p - self.base_q).polar_angle() - a
    }

    /// Range of base parameters `t` outside which no split leaves both parts
    /// wider than 2: each part's base, and the distance from the split point
    /// to the opposite original side, must exceed 2.
    pub fn permissible_split_range(&self) -> Option<(f64, f64)> {
        let base = self.base_length();
        let (ap, aq) = self.angles();
        let reach = |angle: f64| if angle < PI / 2.0 { angle.sin() } else { 1.0 };
        let lo = 2.0 / (base * reach(ap));
        let hi = 1.0 - 2.0 / (base * reach(aq));
        (lo < hi).then_some((lo, hi))
    }

    /// Open interval of angles `a` between the direction towards `p` and the
    /// splitting ray at `base_point(t)` for which both parts are cones of
    /// width above 2. The left part's width is `min(|px|, |px| sin a,
    /// dist(x, left side))` (the middle term only for acute `a`), so it grows
    /// with `a`; symmetrically the right part's width shrinks with `a`.
    pub fn permissible_split_angles(&self, t: f64) -> Option<(f64, f64)> {
        if !(t > 0.0 && t < 1.0) {
            return None;
        }
        let x = self.base_point(t);
        let (lp, lq) = (x.distance(self.base_p), x.distance(self.base_q));
        if lp <= 2.0 || lq <= 2.0 {
            return None;
        }
        if point_ray_distance(x, self.base_p, self.dir_p) <= 2.0
            || point_ray_distance(x, self.base_q, self.dir_q) <= 2.0
        {
            return None;
        }
        let (ap, aq) = self.angles();
        let lo = (2.0 / lp).asin().max(PI - ap);
        let hi = (PI - (2.0 / lq).asin()).min(aq);
        (lo < hi).then_some((lo, hi))
    }

    /// [`Cone::split_parts`] restricted to splits whose parts both have
    /// width larger than 2.
    pub fn split(&self, t: f64, phi: f64) -> Result<(Cone, Cone)> {
        let (left, right) = self.split_parts(t, phi)?;
        let (wl, wr) = (left.width(), right.width());
        if wl > 2.0 && wr > 2.0 {
            Ok((left, right))
        } else {
            Err(GeometryError::SplitTooNarrow {
                left: wl,
                right: wr,
            })
        }
    }
}

/// Angles at `p` and `q` between the base and the side directions.
pub fn base_side_angles(p: Point, q: Point, dir_p: Point, dir_q: Point) -> (f64, f64) {
    (angle_between(q - p, dir_p), angle_between(p - q, dir_q))
}

/// `min(|pq|, dist(p, side at q), dist(q, side at p))`.
///
/// For diverging sides this is the distance between the two half-lines.
/// If the sides converge the value is only an upper bound.
pub fn three_candidate_width(p: Point, q: Point, dir_p: Point, dir_q: Point) -> f64 {
    p.distance(q)
        .min(point_ray_distance(p, q, dir_q))
        .min(point_ray_distance(q, p, dir_p))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-12;

    /// Cone with base `(0,0)-(len,0)` and the given angles at both ends.
    fn cone_with_angles(len: f64, angle_p: f64, angle_q: f64) -> Cone {
        Cone::new(
            Point::ORIGIN,
            Point::new(len, 0.0),
            Point::polar(angle_p),
            Point::polar(PI - angle_q),
        )
        .unwrap()
    }

    #[test]
    fn right_triangle_metrics() {
        let t = Triangle::new(Point::ORIGIN, Point::new(1.0, 0.0), Point::new(0.0, 2.0)).unwrap();
        let m = t.metrics();
        assert!((m.area - 1.0).abs() < EPS);
        assert!((m.perimeter - (3.0 + 5f64.sqrt())).abs() < EPS);
        let s = m.signature.sides;
        assert!((s[0] - 1.0).abs() < EPS && (s[1] - 2.0).abs() < EPS);
        assert!((s[2] - 5f64.sqrt()).abs() < EPS);
    }

    #[test]
    fn symmetric_triangle_metrics() {
        let t = Triangle::new(Point::ORIGIN, Point::new(2.0, 0.0), Point::new(1.0, 1.0)).unwrap();
        let m = t.metrics();
        assert!((m.area - 1.0).abs() < EPS);
        let r2 = 2f64.sqrt();
        assert!(m.signature.distance(&CongruenceSignature::from_lengths([r2, r2, 2.0])) < EPS);
    }

    #[test]
    fn isosceles_initial_triangle_has_unit_area() {
        // (1/2) l^2 sin(2π/3) = 1
        let leg = (4.0 / 3f64.sqrt()).sqrt();
        assert!((leg - 1.519671).abs() < 1e-6);
        let a = Point::polar(PI / 2.0) * leg;
        let b = Point::polar(PI / 2.0 + 2.0 * PI / 3.0) * leg;
        let t = Triangle::new(Point::ORIGIN, a, b).unwrap();
        // shoelace
        let shoelace = 0.5 * (a.x * b.y - b.x * a.y).abs();
        assert!((shoelace - 1.0).abs() < EPS);
        assert!((t.area() - 1.0).abs() < EPS);
        assert!((t.signature().longest() - leg * 3f64.sqrt()).abs() < EPS);
        assert!((t.signature().longest() - 2.632148).abs() < 1e-6);
    }

    #[test]
    fn collinear_triangle_is_rejected() {
        let err = Triangle::new(Point::ORIGIN, Point::new(1.0, 1.0), Point::new(2.0, 2.0));
        assert!(matches!(err, Err(GeometryError::Collinear(_))));
        assert!(Triangle::new(Point::ORIGIN, Point::new(f64::NAN, 0.0), Point::new(0.0, 1.0)).is_err());
    }

    #[test]
    fn signature_distance_by_definition() {
        let a = CongruenceSignature::from_lengths([3.0, 4.0, 5.0]);
        let b = CongruenceSignature::from_lengths([5.001, 4.0, 3.0]);
        assert!((a.distance(&b) - 0.001).abs() < 1e-12);
    }

    #[test]
    fn congruence_distance_ignores_isometries() {
        let t = Triangle::new(Point::new(0.3, 0.1), Point::new(2.0, -0.4), Point::new(0.9, 1.7)).unwrap();
        let [a, b, c] = t.vertices();
        let permuted = Triangle::new(c, a, b).unwrap();
        let reflected = Triangle::new(
            Point::new(-a.x, a.y),
            Point::new(-b.x, b.y),
            Point::new(-c.x, c.y),
        )
        .unwrap();
        let shift = Point::new(11.0, -7.5);
        let moved = Triangle::new(a + shift, b + shift, c + shift).unwrap();
        for other in [permuted, reflected, moved] {
            assert!(congruence_distance(&t, &other) <= 1e-12);
        }
    }

    #[test]
    fn right_angle_cone() {
        let c = Cone::new(Point::ORIGIN, Point::new(3.0, 0.0), Point::new(-1e-3, 1.0), Point::new(1e-3, 1.0))
            .unwrap();
        let (a, b) = c.angles();
        assert!((a - PI / 2.0).abs() < 2e-3 && (b - PI / 2.0).abs() < 2e-3);
        assert_eq!(c.width(), 3.0);
    }

    #[test]
    fn parallel_upward_sides_are_rejected() {
        let r = Cone::new(Point::ORIGIN, Point::new(3.0, 0.0), Point::new(0.0, 1.0), Point::new(0.0, 1.0));
        assert!(matches!(r, Err(GeometryError::NonDivergentSides(_))));
    }

    #[test]
    fn angles_read_off_polar_directions() {
        // The sides converge here, so this is not a valid cone; only the
        // raw angle and width formulas are exercised.
        let p = Point::ORIGIN;
        let q = Point::new(4.0, 0.0);
        let (a, b) = base_side_angles(p, q, Point::polar(PI / 3.0), Point::polar(PI / 2.0));
        assert!((a - PI / 3.0).abs() < EPS && (b - PI / 2.0).abs() < EPS);
        let w = three_candidate_width(p, q, Point::polar(PI / 3.0), Point::polar(PI / 2.0));
        assert!((w - 2.0 * 3f64.sqrt()).abs() < EPS);
        assert!(Cone::new(p, q, Point::polar(PI / 3.0), Point::polar(PI / 2.0)).is_err());
    }

    #[test]
    fn obtuse_cone_width_is_base() {
        let c = cone_with_angles(2.0, 3.0 * PI / 4.0, 3.0 * PI / 4.0);
        assert_eq!(c.width(), 2.0);
        let (a, b) = c.angles();
        assert!((a - 3.0 * PI / 4.0).abs() < EPS && (b - 3.0 * PI / 4.0).abs() < EPS);
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        let up = Point::new(0.0, 1.0);
        assert_eq!(
            Cone::new(Point::ORIGIN, Point::new(1e-10, 0.0), up, up),
            Err(GeometryError::ShortBase)
        );
        assert_eq!(
            Cone::new(Point::ORIGIN, Point::new(1.0, 0.0), Point::ORIGIN, up),
            Err(GeometryError::ZeroDirection)
        );
        // side pointing below the base
        assert!(matches!(
            Cone::new(Point::ORIGIN, Point::new(1.0, 0.0), Point::new(0.0, -1.0), up),
            Err(GeometryError::BadSideAngle(Side::Left, _))
        ));
    }

    #[test]
    fn cut_side_choice() {
        assert_eq!(Side::smaller_angle(PI / 3.0, PI / 2.0), Side::Left);
        assert_eq!(Side::smaller_angle(PI / 2.0, PI / 3.0), Side::Right);
        assert_eq!(Side::smaller_angle(5.0 * PI / 6.0, 5.0 * PI / 6.0), Side::Left);
        let c = cone_with_angles(3.0, 2.0, 1.5);
        assert_eq!(c.cut_side(), Side::Right);
    }

    #[test]
    fn cut_with_right_angle_at_p() {
        let c = cone_with_angles(4.0, PI / 2.0, 3.0 * PI / 4.0);
        let (t, rest) = c.cut(Side::Left).unwrap();
        let r = t.vertices()[2];
        assert!(r.distance(Point::new(0.0, 0.5)) < EPS);
        let [a, b, cc] = t.vertices();
        let shoelace = 0.5 * ((b.x - a.x) * (cc.y - a.y) - (cc.x - a.x) * (b.y - a.y)).abs();
        assert!((shoelace - 1.0).abs() < EPS);
        assert!(rest.base_p().distance(r) < EPS);
        assert_eq!(rest.base_q(), Point::new(4.0, 0.0));
        assert!((rest.angle_sum() - c.angle_sum()).abs() < 1e-12);
        assert!(rest.width() >= c.width());
    }

    #[test]
    fn extremal_isosceles_cut() {
        let c = cone_with_angles(2.0, PI / 12.0, 0.95 * PI);
        let (t, _) = c.cut(Side::Left).unwrap();
        let r = t.vertices()[2];
        assert!((r.distance(Point::ORIGIN) - 1.0 / (PI / 12.0).sin()).abs() < 1e-12);
        assert!((r.distance(Point::ORIGIN) - 3.8637).abs() < 1e-4);
        assert!((t.angles()[2] - PI / 12.0).abs() < 1e-12);
        assert!((t.area() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn right_cut_keeps_orientation() {
        let c = cone_with_angles(3.0, 2.0, 1.8);
        let (t, rest) = c.cut(Side::Right).unwrap();
        assert!((t.area() - 1.0).abs() < 1e-12);
        assert_eq!(rest.base_p(), c.base_p());
        assert!(rest.base_q().distance(t.vertices()[2]) < EPS);
        assert!((rest.angle(Side::Left) - c.angle(Side::Left)).abs() > 1e-6);
        assert!((rest.angle_sum() - c.angle_sum()).abs() < 1e-12);
    }

    #[test]
    fn symmetric_split() {
        let c = cone_with_angles(6.0, 5.0 * PI / 6.0, 5.0 * PI / 6.0);
        let (d, e) = c.split(0.5, PI / 2.0).unwrap();
        assert_eq!(d.base_p(), Point::ORIGIN);
        assert!(d.base_q().distance(Point::new(3.0, 0.0)) < EPS);
        let (dp, dx) = d.angles();
        assert!((dp - 5.0 * PI / 6.0).abs() < EPS && (dx - PI / 2.0).abs() < EPS);
        assert!((d.width() - 3.0).abs() < EPS);
        let (ex, eq) = e.angles();
        assert!((eq - 5.0 * PI / 6.0).abs() < EPS && (ex - PI / 2.0).abs() < EPS);
        assert!((e.width() - 3.0).abs() < EPS);
        assert!((d.angle_sum() - 4.0 * PI / 3.0).abs() < EPS);
        assert!((e.angle_sum() - 4.0 * PI / 3.0).abs() < EPS);
        assert!((dx + ex - PI).abs() < EPS);
    }

    #[test]
    fn split_rejections() {
        let c = cone_with_angles(6.0, 5.0 * PI / 6.0, 5.0 * PI / 6.0);
        assert!(matches!(c.split(0.2, PI / 2.0), Err(GeometryError::SplitTooNarrow { .. })));
        assert_eq!(c.split(0.5, -PI / 2.0), Err(GeometryError::OutsideRecessionCone));
        // along the right side exactly: not strictly inside
        assert_eq!(c.split(0.5, PI / 6.0), Err(GeometryError::OutsideRecessionCone));
        assert_eq!(c.split(1.0, PI / 2.0), Err(GeometryError::SplitParameter(1.0)));
    }

    #[test]
    fn distance_to_origin() {
        let c = Cone::new(
            Point::new(3.0, 4.0),
            Point::new(3.0, 0.0),
            Point::new(1.0, 0.5),
            Point::new(1.0, -0.5),
        )
        .unwrap();
        assert_eq!(c.distance_to_origin(), 3.0);
        let along = Point::new(-3.0, -4.0);
        let out = Point::new(4.0, -3.0);
        let c = Cone::new(Point::new(6.0, 8.0), Point::new(3.0, 4.0), out - along * 0.5, out + along * 0.5)
            .unwrap();
        assert_eq!(c.distance_to_origin(), 5.0);
    }

    #[test]
    fn ray_distance_clamps_at_endpoint() {
        let d = point_ray_distance(Point::new(-3.0, 4.0), Point::ORIGIN, Point::new(1.0, 0.0));
        assert_eq!(d, 5.0);
        let d = point_ray_distance(Point::new(3.0, 4.0), Point::ORIGIN, Point::new(1.0, 0.0));
        assert_eq!(d, 4.0);
    }
}
