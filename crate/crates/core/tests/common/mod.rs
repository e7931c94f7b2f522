//! Shared generators and oracles for the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use rand::Rng;
use tiling_core::geometry::Cone;
use tiling_core::verification::{MAX_CONE_ANGLE, MAX_CONE_ANGLE_SUM, MIN_CONE_WIDTH};
use tiling_core::Point;

/// Rotates `v` by `theta`.
pub fn rotate(v: Point, theta: f64) -> Point {
    let (s, c) = theta.sin_cos();
    Point::new(c * v.x - s * v.y, s * v.x + c * v.y)
}

/// Cone with base length `base` and base angles `(ap, aq)`, placed by a
/// rotation and a translation.
pub fn cone_from_angles(base: f64, ap: f64, aq: f64, theta: f64, shift: Point) -> Option<Cone> {
    let p = shift;
    let q = shift + rotate(Point::new(base, 0.0), theta);
    let dp = rotate(Point::polar(ap), theta);
    let dq = rotate(Point::polar(PI - aq), theta);
    Cone::new(p, q, dp, dq).ok()
}

/// Uniform random placement of a cone with the given shape.
pub fn placed<R: Rng>(rng: &mut R, base: f64, ap: f64, aq: f64) -> Option<Cone> {
    let theta = rng.gen_range(-PI..PI);
    let shift = Point::new(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
    cone_from_angles(base, ap, aq, theta, shift)
}

/// Random cone satisfying Property P with width in `(2, max_width]`.
pub fn property_p_cone<R: Rng>(rng: &mut R, max_width: f64) -> Cone {
    loop {
        let base = rng.gen_range(MIN_CONE_WIDTH..(4.0 * max_width).max(16.0));
        let ap = rng.gen_range(PI / 12.0..=MAX_CONE_ANGLE);
        let aq = rng.gen_range(PI / 12.0..=MAX_CONE_ANGLE);
        if ap + aq <= PI + 1e-6 || ap + aq > MAX_CONE_ANGLE_SUM {
            continue;
        }
        if let Some(cone) = placed(rng, base, ap, aq) {
            let w = cone.width();
            if w > MIN_CONE_WIDTH && w <= max_width {
                return cone;
            }
        }
    }
}

/// Random valid cone without Property P restrictions on the angles.
pub fn any_cone<R: Rng>(rng: &mut R) -> Cone {
    loop {
        let base = rng.gen_range(0.2..20.0);
        let ap = rng.gen_range(0.05..PI - 0.05);
        let aq = rng.gen_range(0.05..PI - 0.05);
        if ap + aq <= PI + 1e-3 {
            continue;
        }
        if let Some(cone) = placed(rng, base, ap, aq) {
            return cone;
        }
    }
}

/// Distance between `p + s·dp` and `q + u·dq`.
fn gap(cone: &Cone, s: f64, u: f64) -> f64 {
    (cone.base_p() + cone.dir_p() * s).distance(cone.base_q() + cone.dir_q() * u)
}

/// Brute-force width: the minimum distance between points of the two sides,
/// over `s, u ∈ [0, reach]`. A dense grid locates the basin and successively
/// finer grids centred on the best node refine it; the objective is convex,
/// so the refinement cannot leave the global minimum's cell.
pub fn brute_force_width(cone: &Cone, grid: usize, rounds: usize) -> f64 {
    let reach = 2.0 * cone.base_length() + 10.0;
    let (mut s0, mut s1, mut u0, mut u1) = (0.0, reach, 0.0, reach);
    let mut best = f64::INFINITY;
    for _ in 0..rounds {
        let (hs, hu) = ((s1 - s0) / grid as f64, (u1 - u0) / grid as f64);
        let mut arg = (s0, u0);
        for i in 0..=grid {
            let s = s0 + hs * i as f64;
            for j in 0..=grid {
                let u = u0 + hu * j as f64;
                let d = gap(cone, s, u);
                if d < best {
                    best = d;
                    arg = (s, u);
                }
            }
        }
        s0 = (arg.0 - 2.0 * hs).max(0.0);
        s1 = arg.0 + 2.0 * hs;
        u0 = (arg.1 - 2.0 * hu).max(0.0);
        u1 = arg.1 + 2.0 * hu;
    }
    best
}

/// Vertex of `triangle` not on the base `p`–`q`.
pub fn apex_of(vertices: [Point; 3], p: Point, q: Point) -> usize {
    (0..3)
        .max_by(|&i, &j| {
            let di = vertices[i].distance(p).min(vertices[i].distance(q));
            let dj = vertices[j].distance(p).min(vertices[j].distance(q));
            di.total_cmp(&dj)
        })
        .unwrap()
}

/// Interior angle of the triangle at vertex `i`.
pub fn angle_at(vertices: [Point; 3], i: usize) -> f64 {
    let a = vertices[i];
    let b = vertices[(i + 1) % 3];
    let c = vertices[(i + 2) % 3];
    tiling_core::geometry::angle_between(b - a, c - a)
}
