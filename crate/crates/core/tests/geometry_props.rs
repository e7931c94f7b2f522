mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tiling_core::geometry::{congruence_distance, Triangle};
use tiling_core::verification::{audit_property_p, perimeter_bound};
use tiling_core::{Point, Side};

use common::{any_cone, brute_force_width, placed, property_p_cone, rotate};

const WIDTH_ORACLE_TOL: f64 = 1e-6;

#[test]
fn width_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..100 {
        let cone = if i % 2 == 0 { any_cone(&mut rng) } else { property_p_cone(&mut rng, 12.0) };
        let oracle = brute_force_width(&cone, 200, 8);
        let w = cone.width();
        assert!((w - oracle).abs() <= WIDTH_ORACLE_TOL, "cone {i}: {w} vs {oracle}");
    }
}

#[test]
fn width_is_base_when_both_angles_obtuse() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..1000 {
        let base = rng.gen_range(0.1..30.0);
        let ap = rng.gen_range(PI / 2.0..PI - 1e-3);
        let aq = rng.gen_range(PI / 2.0..PI - 1e-3);
        let Some(cone) = placed(&mut rng, base, ap, aq) else { continue };
        let (a, b) = cone.angles();
        if a >= PI / 2.0 && b >= PI / 2.0 {
            assert_eq!(cone.width(), cone.base_length());
        }
    }
}

#[test]
fn cut_of_narrow_cone_is_bounded_and_widens() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..5000 {
        let cone = property_p_cone(&mut rng, 4.0);
        let side = cone.cut_side();
        let (tri, residual) = cone.cut(side).unwrap();
        let base = cone.base_length();
        let smaller = cone.angle(side);
        assert!(base < 16.0);
        assert!(base * smaller.sin() <= cone.width() + 1e-12);
        assert!(residual.width() >= cone.width() - 1e-9, "{} < {}", residual.width(), cone.width());
        assert!((tri.area() - 1.0).abs() <= 1e-9);
        assert!(tri.perimeter() <= perimeter_bound());
        let sum = residual.angle_sum();
        assert!(sum > PI && sum <= 5.0 * PI / 3.0 + 1e-9, "angle sum {sum}");
    }
}

#[test]
fn residual_keeps_the_far_side() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..500 {
        let cone = any_cone(&mut rng);
        for side in [Side::Left, Side::Right] {
            let Ok((_, residual)) = cone.cut(side) else { continue };
            match side {
                Side::Left => {
                    assert_eq!(residual.base_q(), cone.base_q());
                    assert!((residual.angle(Side::Right) - (cone.angle(Side::Right) - angle_gain(&cone, &residual))).abs() < 1e-9);
                }
                Side::Right => assert_eq!(residual.base_p(), cone.base_p()),
            }
        }
    }
}

// Angle the base rotates by at q when the left apex replaces p.
fn angle_gain(cone: &tiling_core::Cone, residual: &tiling_core::Cone) -> f64 {
    tiling_core::geometry::angle_between(cone.base_p() - cone.base_q(), residual.base_p() - residual.base_q())
}

/// Random split of `cone` drawn from the analytic permissible region.
fn random_split(rng: &mut ChaCha8Rng, cone: &tiling_core::Cone) -> Option<(f64, f64)> {
    let (t0, t1) = cone.permissible_split_range()?;
    for _ in 0..1000 {
        let t = rng.gen_range(t0..t1);
        if let Some((a0, a1)) = cone.permissible_split_angles(t) {
            let a = rng.gen_range(a0..a1);
            return Some((t, cone.split_direction(a)));
        }
    }
    None
}

#[test]
fn accepted_splits_preserve_property_p() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut checked = 0;
    while checked < 1000 {
        let cone = property_p_cone(&mut rng, 12.0);
        if cone.width() <= 4.0 {
            continue;
        }
        let (t, phi) = random_split(&mut rng, &cone).expect("wide cone admits a split");
        let (d, e) = cone.split(t, phi).unwrap();
        assert!(audit_property_p(&d, 1e-9).passed());
        assert!(audit_property_p(&e, 1e-9).passed());
        let (cp, cq) = cone.angles();
        assert!(d.angle(Side::Right) < cq);
        assert!(e.angle(Side::Left) < cp);
        assert!((d.angle(Side::Left) - cp).abs() < 1e-9);
        assert!((e.angle(Side::Right) - cq).abs() < 1e-9);
        checked += 1;
    }
}

#[test]
fn permissible_angles_match_a_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let steps = 20_000;
    let edge = 1e-6;
    let mut nonempty = 0;
    for _ in 0..200 {
        let cone = property_p_cone(&mut rng, 12.0);
        let t = rng.gen_range(0.01..0.99);
        let interval = cone.permissible_split_angles(t);
        if interval.is_some() {
            nonempty += 1;
            let (t0, t1) = cone.permissible_split_range().unwrap();
            assert!(t > t0 && t < t1);
        }
        for k in 1..steps {
            let a = PI * k as f64 / steps as f64;
            let ok = cone.split(t, cone.split_direction(a)).is_ok();
            match interval {
                None => assert!(!ok, "t {t}, a {a} accepted with no interval"),
                Some((lo, hi)) => {
                    if (a - lo).abs() < edge || (a - hi).abs() < edge {
                        continue;
                    }
                    assert_eq!(ok, a > lo && a < hi, "t {t}, a {a}, interval ({lo}, {hi})");
                }
            }
        }
    }
    assert!(nonempty >= 50, "only {nonempty} nonempty intervals");
}

fn arb_point() -> impl Strategy<Value = Point> {
    (-20.0..20.0f64, -20.0..20.0f64).prop_map(|(x, y)| Point::new(x, y))
}

fn arb_triangle() -> impl Strategy<Value = Triangle> {
    (arb_point(), arb_point(), arb_point())
        .prop_filter_map("degenerate", |(a, b, c)| {
            Triangle::new(a, b, c).ok().filter(|t| t.area() > 1e-2)
        })
}

proptest! {
    #[test]
    fn congruence_distance_is_isometry_invariant(
        t in arb_triangle(),
        theta in -PI..PI,
        shift in arb_point(),
        mirror in any::<bool>(),
        shuffle in 0usize..3,
    ) {
        let [a, b, c] = t.vertices();
        let map = |p: Point| {
            let p = if mirror { Point::new(p.x, -p.y) } else { p };
            rotate(p, theta) + shift
        };
        let v = [map(a), map(b), map(c)];
        let moved = Triangle::new(v[shuffle], v[(shuffle + 1) % 3], v[(shuffle + 2) % 3]).unwrap();
        prop_assert!(congruence_distance(&t, &moved) < 1e-9);
    }

    #[test]
    fn congruence_distance_is_symmetric(a in arb_triangle(), b in arb_triangle()) {
        prop_assert_eq!(congruence_distance(&a, &b), congruence_distance(&b, &a));
        prop_assert_eq!(congruence_distance(&a, &a), 0.0);
    }

    #[test]
    fn cut_triangles_have_unit_area(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cone = any_cone(&mut rng);
        for side in [Side::Left, Side::Right] {
            if let Ok((tri, _)) = cone.cut(side) {
                prop_assert!((tri.area() - 1.0).abs() < 1e-9);
            }
        }
    }
}
