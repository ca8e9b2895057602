//! Poincare-disk figures: the fundamental-domain pictures for the three
//! hyperbolic regimes, emitted as deterministic SVG 1.1 documents.
//!
//! Boundary points of the upper half-plane map to the unit circle by the
//! Cayley transform z -> (z - i)/(z + i); geodesics become circular arcs
//! orthogonal to the unit circle (or diameters).

use std::io::Write;

use crate::error::{Error, Result};
use crate::scalar::RealScalar;

use super::pingpong::{pingpong_certificate, PingPongCertificate};
use super::{in_closed_arc, BoundaryPoint};

const VIEW: f64 = 1000.0;
const RADIUS: f64 = 470.0;

/// A geodesic side between two marked boundary points, as disk geometry.
#[derive(Debug, Clone)]
pub struct GeodesicSide {
    pub from: usize,
    pub to: usize,
    /// `Some((cx, cy, r))` for a circular arc orthogonal to the unit circle,
    /// `None` for a diameter.
    pub circle: Option<(f64, f64, f64)>,
}

/// Geometry extracted while rendering, for geometric predicates in tests.
#[derive(Debug, Clone)]
pub struct FigureGeometry {
    pub case_id: u8,
    pub certificate: PingPongCertificate,
    /// Disk coordinates of the marked points, in certificate order.
    pub disk_points: Vec<(String, f64, f64)>,
    pub sides: Vec<GeodesicSide>,
}

impl FigureGeometry {
    /// Exact predicate: no two geodesic sides cross in the open disk.
    /// Two geodesics cross iff their boundary endpoints strictly interleave.
    pub fn pairwise_non_crossing(&self) -> Result<bool> {
        let pts: Vec<&BoundaryPoint> =
            self.certificate.points.iter().map(|(_, p)| p).collect();
        for (si, s1) in self.sides.iter().enumerate() {
            for s2 in self.sides.iter().skip(si + 1) {
                // shared endpoints cannot produce an interior crossing
                if s1.from == s2.from || s1.from == s2.to || s1.to == s2.from || s1.to == s2.to {
                    continue;
                }
                let strictly_inside = |p: &BoundaryPoint| -> Result<bool> {
                    Ok(in_closed_arc(p, pts[s1.from], pts[s1.to])?
                        && !p.eq_exact(pts[s1.from])?
                        && !p.eq_exact(pts[s1.to])?)
                };
                let c_in = strictly_inside(pts[s2.from])?;
                let d_in = strictly_inside(pts[s2.to])?;
                if c_in != d_in {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Numeric predicate: sides sharing a boundary endpoint are tangent
    /// circles there (within `tol`). Diameters are skipped.
    pub fn adjacent_sides_tangent(&self, tol: f64) -> bool {
        for (si, s1) in self.sides.iter().enumerate() {
            for s2 in self.sides.iter().skip(si + 1) {
                let shares = s1.from == s2.from
                    || s1.from == s2.to
                    || s1.to == s2.from
                    || s1.to == s2.to;
                if !shares {
                    continue;
                }
                let (Some((x1, y1, r1)), Some((x2, y2, r2))) = (s1.circle, s2.circle) else {
                    continue;
                };
                let d = ((x1 - x2).powi(2) + (y1 - y2).powi(2)).sqrt();
                let external = (d - (r1 + r2)).abs();
                let internal = (d - (r1 - r2).abs()).abs();
                if external.min(internal) > tol {
                    return false;
                }
            }
        }
        true
    }
}

fn to_disk(p: &BoundaryPoint) -> (f64, f64) {
    match p {
        BoundaryPoint::Infinity => (1.0, 0.0),
        BoundaryPoint::Finite(x) => {
            let v = x.to_f64();
            let den = v * v + 1.0;
            ((v * v - 1.0) / den, -2.0 * v / den)
        }
    }
}

/// Center and radius of the circle through u, v orthogonal to the unit
/// circle; `None` when u, v are antipodal (geodesic is a diameter).
fn orthocircle(u: (f64, f64), v: (f64, f64)) -> Option<(f64, f64, f64)> {
    let det = u.0 * v.1 - u.1 * v.0;
    if det.abs() < 1e-12 {
        return None;
    }
    let cx = (v.1 - u.1) / det;
    let cy = (u.0 - v.0) / det;
    let r = (cx * cx + cy * cy - 1.0).max(0.0).sqrt();
    Some((cx, cy, r))
}

fn px(x: f64) -> f64 {
    VIEW / 2.0 + RADIUS * x
}

fn py(y: f64) -> f64 {
    VIEW / 2.0 - RADIUS * y
}

/// SVG path for the geodesic from u to v (disk coordinates).
fn geodesic_path(u: (f64, f64), v: (f64, f64)) -> String {
    match orthocircle(u, v) {
        None => format!(
            "M {:.3} {:.3} L {:.3} {:.3}",
            px(u.0),
            py(u.1),
            px(v.0),
            py(v.1)
        ),
        Some((cx, cy, r)) => {
            // pick the sweep whose midpoint lies inside the disk
            let a = (u.1 - cy).atan2(u.0 - cx);
            let b = (v.1 - cy).atan2(v.0 - cx);
            let ccw_span = (b - a).rem_euclid(2.0 * std::f64::consts::PI);
            let mid_ccw = a + ccw_span / 2.0;
            let mx = cx + r * mid_ccw.cos();
            let my = cy + r * mid_ccw.sin();
            let ccw_inside = mx * mx + my * my < 1.0;
            // math-ccw becomes sweep 0 after the y-flip into pixel space
            let sweep = if ccw_inside { 0 } else { 1 };
            format!(
                "M {:.3} {:.3} A {:.3} {:.3} 0 0 {} {:.3} {:.3}",
                px(u.0),
                py(u.1),
                RADIUS * r,
                RADIUS * r,
                sweep,
                px(v.0),
                py(v.1)
            )
        }
    }
}

/// Closed path of the crescent between the geodesic (u -> v) and the
/// counterclockwise boundary arc from u to v.
fn crescent_path(u: (f64, f64), v: (f64, f64)) -> String {
    let a = u.1.atan2(u.0);
    let b = v.1.atan2(v.0);
    let span = (b - a).rem_euclid(2.0 * std::f64::consts::PI);
    let large = if span > std::f64::consts::PI { 1 } else { 0 };
    // boundary arc u -> v counterclockwise (sweep 0 in pixel space)
    let mut path = format!(
        "M {:.3} {:.3} A {:.3} {:.3} 0 {} 0 {:.3} {:.3}",
        px(u.0),
        py(u.1),
        RADIUS,
        RADIUS,
        large,
        px(v.0),
        py(v.1)
    );
    // geodesic back v -> u
    match orthocircle(v, u) {
        None => path.push_str(&format!(" L {:.3} {:.3}", px(u.0), py(u.1))),
        Some((cx, cy, r)) => {
            let av = (v.1 - cy).atan2(v.0 - cx);
            let au = (u.1 - cy).atan2(u.0 - cx);
            let ccw_span = (au - av).rem_euclid(2.0 * std::f64::consts::PI);
            let mid = av + ccw_span / 2.0;
            let inside = {
                let mx = cx + r * mid.cos();
                let my = cy + r * mid.sin();
                mx * mx + my * my < 1.0
            };
            let sweep = if inside { 0 } else { 1 };
            path.push_str(&format!(
                " A {:.3} {:.3} 0 0 {} {:.3} {:.3}",
                RADIUS * r,
                RADIUS * r,
                sweep,
                px(u.0),
                py(u.1)
            ));
        }
    }
    path.push_str(" Z");
    path
}

/// Renders the disk figure for the given case to `out` and returns the
/// extracted geometry. Validates the regime first; nothing is written on
/// error.
pub fn render_disk_figure(
    t0: &RealScalar,
    case_id: u8,
    out: &mut dyn Write,
) -> Result<FigureGeometry> {
    let certificate = pingpong_certificate(t0, case_id)?;
    let disk_points: Vec<(String, f64, f64)> = certificate
        .points
        .iter()
        .map(|(name, p)| {
            let (x, y) = to_disk(p);
            (name.clone(), x, y)
        })
        .collect();

    // the four sides connect consecutive marked points
    let sides: Vec<GeodesicSide> = (0..4)
        .map(|i| {
            let j = (i + 1) % 4;
            let u = (disk_points[i].1, disk_points[i].2);
            let v = (disk_points[j].1, disk_points[j].2);
            GeodesicSide {
                from: i,
                to: j,
                circle: orthocircle(u, v),
            }
        })
        .collect();

    // x-paired sides drawn orange, y-paired blue
    let colors: [&str; 4] = match case_id {
        1 => ["blue", "orange", "blue", "orange"],
        _ => ["blue", "blue", "orange", "orange"],
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{VIEW}\" height=\"{VIEW}\" viewBox=\"0 0 {VIEW} {VIEW}\">\n"
    ));
    svg.push_str(&format!(
        "  <rect width=\"{VIEW}\" height=\"{VIEW}\" fill=\"white\"/>\n"
    ));

    let disk_fill = if case_id == 1 { "white" } else { "#d3d3d3" };
    let crescent_fill = if case_id == 1 { "#d3d3d3" } else { "white" };
    svg.push_str(&format!(
        "  <circle cx=\"{}\" cy=\"{}\" r=\"{RADIUS}\" fill=\"{disk_fill}\" stroke=\"none\"/>\n",
        VIEW / 2.0,
        VIEW / 2.0
    ));
    for i in 0..4 {
        let j = (i + 1) % 4;
        let u = (disk_points[i].1, disk_points[i].2);
        let v = (disk_points[j].1, disk_points[j].2);
        svg.push_str(&format!(
            "  <path d=\"{}\" fill=\"{crescent_fill}\" stroke=\"none\"/>\n",
            crescent_path(u, v)
        ));
    }
    for (i, side) in sides.iter().enumerate() {
        let u = (disk_points[side.from].1, disk_points[side.from].2);
        let v = (disk_points[side.to].1, disk_points[side.to].2);
        svg.push_str(&format!(
            "  <path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"4\"/>\n",
            geodesic_path(u, v),
            colors[i]
        ));
    }
    svg.push_str(&format!(
        "  <circle cx=\"{}\" cy=\"{}\" r=\"{RADIUS}\" fill=\"none\" stroke=\"black\" stroke-width=\"3\"/>\n",
        VIEW / 2.0,
        VIEW / 2.0
    ));
    for (name, x, y) in &disk_points {
        let (cx, cy) = (px(*x), py(*y));
        svg.push_str(&format!(
            "  <circle cx=\"{cx:.3}\" cy=\"{cy:.3}\" r=\"7\" fill=\"black\"/>\n"
        ));
        // nudge labels outward from the circle
        let (lx, ly) = (cx + 14.0 * x.signum().max(0.0) + 10.0 * x, cy + 10.0 * -y + 5.0);
        svg.push_str(&format!(
            "  <text x=\"{lx:.3}\" y=\"{ly:.3}\" font-family=\"monospace\" font-size=\"26\">{}</text>\n",
            xml_escape(name)
        ));
    }
    svg.push_str("</svg>\n");

    out.write_all(svg.as_bytes()).map_err(Error::from)?;
    Ok(FigureGeometry {
        case_id,
        certificate,
        disk_points,
        sides,
    })
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    #[test]
    fn case1_geodesics_do_not_cross() {
        let mut buf = Vec::new();
        let geom =
            render_disk_figure(&RealScalar::from_int(-2), 1, &mut buf).unwrap();
        assert!(geom.pairwise_non_crossing().unwrap());
        let svg = String::from_utf8(buf).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("</svg>"));
        assert_eq!(svg.matches("<path").count(), 8); // 4 crescents + 4 sides
    }

    #[test]
    fn case2_sides_mutually_tangent() {
        let t0 = parse_scalar("q(3/2,1/2,5)").unwrap();
        let mut buf = Vec::new();
        let geom = render_disk_figure(&t0, 2, &mut buf).unwrap();
        assert!(geom.adjacent_sides_tangent(1e-9));
        assert!(geom.pairwise_non_crossing().unwrap());
    }

    #[test]
    fn invalid_regime_writes_nothing() {
        let mut buf = Vec::new();
        let err = render_disk_figure(&RealScalar::from_int(5), 1, &mut buf);
        assert!(err.is_err());
        assert!(buf.is_empty());
    }

    #[test]
    fn deterministic_output() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        render_disk_figure(&RealScalar::from_int(-2), 1, &mut a).unwrap();
        render_disk_figure(&RealScalar::from_int(-2), 1, &mut b).unwrap();
        assert_eq!(a, b);
    }
}
