//! SVG 1.1 rendering of a tiling: triangles as polygons, live cone sides as
//! dashed rays, and a marker at the origin.

use std::fmt::Write;

use crate::certificate::Certificate;
use crate::geometry::Point;
use crate::model::{LiveCone, Tile};

/// Pixel size of the square output.
const CANVAS: u32 = 800;

fn coord(v: f64) -> String {
    let r = (v * 1e4).round() / 1e4;
    // avoid "-0.0000"
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r:.4}")
}

fn pt(p: Point) -> String {
    format!("{},{}", coord(p.x), coord(p.y))
}

/// Renders the square `[-r, r]²`. Elements appear in id order; coordinates
/// are rounded to 1e-4. The y axis points up.
pub fn render_svg(tiles: &[Tile], cones: &[LiveCone], viewport_radius: f64) -> String {
    let r = viewport_radius;
    let stroke = coord(r / 400.0);
    let mut tiles: Vec<_> = tiles.iter().collect();
    tiles.sort_by_key(|t| t.id);
    let mut cones: Vec<_> = cones.iter().collect();
    cones.sort_by_key(|c| c.id);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="{} {} {} {}">"#,
        coord(-r),
        coord(-r),
        coord(2.0 * r),
        coord(2.0 * r)
    );
    let _ = writeln!(out, r#"<g transform="scale(1,-1)">"#);
    let _ = writeln!(
        out,
        r##"<g id="triangles" fill="#f3efe2" stroke="#2b2b2b" stroke-width="{stroke}" stroke-linejoin="round">"##
    );
    for t in &tiles {
        let [a, b, c] = t.triangle.vertices();
        let _ = writeln!(
            out,
            r#"<polygon id="t{}" points="{} {} {}"/>"#,
            t.id.0,
            pt(a),
            pt(b),
            pt(c)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r##"<g id="cones" fill="none" stroke="#b03a2e" stroke-width="{stroke}" stroke-dasharray="{} {}">"##,
        coord(r / 80.0),
        coord(r / 120.0)
    );
    let reach = 4.0 * r;
    for c in &cones {
        let cone = &c.cone;
        for (side, origin, dir) in [("l", cone.base_p(), cone.dir_p()), ("r", cone.base_q(), cone.dir_q())] {
            let end = origin + dir * reach;
            let _ = writeln!(
                out,
                r#"<line id="c{}{side}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                c.id.0,
                coord(origin.x),
                coord(origin.y),
                coord(end.x),
                coord(end.y)
            );
        }
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r##"<circle id="origin" cx="0" cy="0" r="{}" fill="#1f4e79"/>"##,
        coord(r / 150.0)
    );
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

/// Renders the geometry recorded in a certificate. Records that do not form
/// valid triangles or cones are skipped.
pub fn render_certificate(cert: &Certificate, viewport_radius: f64) -> String {
    let tiles: Vec<_> = cert.triangles.iter().filter_map(|t| t.to_tile().ok()).collect();
    let cones: Vec<_> = cert.cones.iter().filter_map(|c| c.to_live().ok()).collect();
    render_svg(&tiles, &cones, viewport_radius)
}
