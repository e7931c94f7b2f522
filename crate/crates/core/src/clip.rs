//! Convex polygon clipping and triangle/disk intersection area.

use std::f64::consts::PI;

use crate::geometry::Point;

/// Shoelace area, positive for counterclockwise polygons.
pub fn signed_polygon_area(poly: &[Point]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    0.5 * (0..n).map(|i| poly[i].cross(poly[(i + 1) % n])).sum::<f64>()
}

/// Sutherland–Hodgman: clips `subject` against the convex counterclockwise
/// polygon `clip`.
pub fn clip_convex(subject: &[Point], clip: &[Point]) -> Vec<Point> {
    let mut output = subject.to_vec();
    let n = clip.len();
    for i in 0..n {
        if output.is_empty() {
            break;
        }
        let a = clip[i];
        let b = clip[(i + 1) % n];
        let edge = b - a;
        let inside = |p: Point| edge.cross(p - a) >= 0.0;
        let input = std::mem::take(&mut output);
        let m = input.len();
        for j in 0..m {
            let cur = input[j];
            let prev = input[(j + m - 1) % m];
            let (cur_in, prev_in) = (inside(cur), inside(prev));
            if cur_in != prev_in {
                let d = cur - prev;
                let denom = edge.cross(d);
                if denom != 0.0 {
                    let t = edge.cross(a - prev) / denom;
                    output.push(prev + d * t);
                }
            }
            if cur_in {
                output.push(cur);
            }
        }
    }
    output
}

/// Area of the intersection of two convex counterclockwise polygons.
pub fn convex_intersection_area(a: &[Point], b: &[Point]) -> f64 {
    signed_polygon_area(&clip_convex(a, b)).abs()
}

/// Signed area of the intersection of the disk of radius `r` centred at the
/// origin with the triangle `(origin, a, b)`.
fn disk_sector_triangle_area(a: Point, b: Point, r: f64) -> f64 {
    let d = b - a;
    let (qa, qb, qc) = (d.dot(d), 2.0 * a.dot(d), a.dot(a) - r * r);
    if qa == 0.0 {
        return 0.0;
    }
    // parameters in (0, 1) where segment a-b crosses the circle
    let disc = qb * qb - 4.0 * qa * qc;
    let mut cuts = vec![0.0];
    if disc > 0.0 {
        let s = disc.sqrt();
        for t in [(-qb - s) / (2.0 * qa), (-qb + s) / (2.0 * qa)] {
            if t > 0.0 && t < 1.0 {
                cuts.push(t);
            }
        }
    }
    cuts.push(1.0);
    cuts.windows(2)
        .map(|w| {
            let p = a + d * w[0];
            let q = a + d * w[1];
            let mid = a + d * (0.5 * (w[0] + w[1]));
            if mid.dot(mid) <= r * r {
                0.5 * p.cross(q)
            } else {
                0.5 * r * r * p.cross(q).atan2(p.dot(q))
            }
        })
        .sum()
}

/// Area of `polygon ∩ disk(center, r)`.
pub fn polygon_disk_area(polygon: &[Point], center: Point, r: f64) -> f64 {
    let n = polygon.len();
    (0..n)
        .map(|i| disk_sector_triangle_area(polygon[i] - center, polygon[(i + 1) % n] - center, r))
        .sum::<f64>()
        .abs()
}

pub fn disk_area(r: f64) -> f64 {
    PI * r * r
}
