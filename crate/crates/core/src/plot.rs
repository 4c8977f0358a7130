//! SVG line plots of sampled curves in a coordinate or isometric projection.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    Xy,
    Xz,
    Yz,
    /// Orthographic view along (1,1,1)/√3.
    Iso,
}

impl FromStr for Projection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xy" => Ok(Projection::Xy),
            "xz" => Ok(Projection::Xz),
            "yz" => Ok(Projection::Yz),
            "iso" => Ok(Projection::Iso),
            other => Err(Error::InvalidArgument(format!(
                "projection must be xy, xz, yz or iso, got `{other}`"
            ))),
        }
    }
}

impl Projection {
    pub fn as_str(self) -> &'static str {
        match self {
            Projection::Xy => "xy",
            Projection::Xz => "xz",
            Projection::Yz => "yz",
            Projection::Iso => "iso",
        }
    }

    /// Screen coordinates with y pointing up.
    pub fn project(self, p: Vec3) -> (f64, f64) {
        match self {
            Projection::Xy => (p.x, p.y),
            Projection::Xz => (p.x, p.z),
            Projection::Yz => (p.y, p.z),
            Projection::Iso => {
                let e1 = Vec3::new(1.0, -1.0, 0.0) / 2f64.sqrt();
                let e2 = Vec3::new(-1.0, -1.0, 2.0) / 6f64.sqrt();
                (p.dot(&e1), p.dot(&e2))
            }
        }
    }
}

/// Points of one curve plus whether they lie on the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotData {
    pub title: String,
    pub points: Vec<Vec3>,
    pub on_sphere: bool,
}

/// Reads `x,y,z` (space curves) or `gx,gy,gz` (spherical curves) columns
/// from a CSV with a header row.
pub fn read_csv_points(text: &str, title: &str) -> Result<PlotData> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| Error::Csv(e.to_string()))?.clone();
    let find = |names: [&str; 3]| -> Option<[usize; 3]> {
        let mut idx = [0; 3];
        for (k, n) in names.iter().enumerate() {
            idx[k] = headers.iter().position(|h| h.trim() == *n)?;
        }
        Some(idx)
    };
    let (idx, on_sphere) = match (find(["gx", "gy", "gz"]), find(["x", "y", "z"])) {
        (Some(i), _) => (i, true),
        (None, Some(i)) => (i, false),
        _ => return Err(Error::Csv("header must contain x,y,z or gx,gy,gz columns".into())),
    };
    let mut points = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Csv(e.to_string()))?;
        let mut v = [0.0; 3];
        for k in 0..3 {
            let field = rec.get(idx[k]).unwrap_or("");
            v[k] = field.trim().parse::<f64>().map_err(|_| {
                Error::Csv(format!("row {}: `{field}` is not a number", row + 2))
            })?;
        }
        points.push(Vec3::new(v[0], v[1], v[2]));
    }
    if points.len() < 2 {
        return Err(Error::Csv("need at least two data rows".into()));
    }
    Ok(PlotData {
        title: title.to_string(),
        points,
        on_sphere,
    })
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Standalone SVG 1.1 document: one polyline, coordinate axes from the
/// origin, the unit-sphere outline for spherical data, and a title. The
/// viewBox is the projected bounding box with a 5% margin.
pub fn render_svg(data: &PlotData, proj: Projection) -> Result<String> {
    if let Some(p) = data.points.iter().find(|p| !p.iter().all(|x| x.is_finite())) {
        return Err(Error::NonFinite { at: p.x });
    }
    let pts: Vec<(f64, f64)> = data.points.iter().map(|&p| proj.project(p)).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if data.on_sphere {
        x0 = x0.min(-1.0);
        x1 = x1.max(1.0);
        y0 = y0.min(-1.0);
        y1 = y1.max(1.0);
    }
    let extent = (x1 - x0).max(y1 - y0).max(1e-9);
    let margin = 0.05 * extent;
    let (vx, vy) = (x0 - margin, -y1 - margin);
    let (vw, vh) = ((x1 - x0).max(1e-9) + 2.0 * margin, (y1 - y0).max(1e-9) + 2.0 * margin);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="640" height="{:.0}" viewBox="{vx:.9} {vy:.9} {vw:.9} {vh:.9}">"#,
        640.0 * vh / vw
    );
    let _ = writeln!(s, "<title>{} ({})</title>", escape(&data.title), proj.as_str());
    if data.on_sphere {
        let _ = writeln!(
            s,
            r##"<circle cx="0" cy="0" r="1" fill="none" stroke="#bbbbbb" stroke-width="1" vector-effect="non-scaling-stroke"/>"##
        );
    }
    let axis_len = 0.15 * extent;
    for (name, dir, color) in [("x", Vec3::x(), "#c0392b"), ("y", Vec3::y(), "#27ae60"), ("z", Vec3::z(), "#2e6fd1")] {
        let (ax, ay) = proj.project(dir * axis_len);
        if ax.hypot(ay) < 1e-12 * extent {
            continue;
        }
        let _ = writeln!(
            s,
            r#"<line x1="0" y1="0" x2="{ax:.9}" y2="{:.9}" stroke="{color}" stroke-width="1" vector-effect="non-scaling-stroke"/>"#,
            -ay
        );
        let _ = writeln!(
            s,
            r#"<text x="{ax:.9}" y="{:.9}" font-size="{:.9}" fill="{color}">{name}</text>"#,
            -ay,
            0.04 * extent
        );
    }
    let mut poly = String::new();
    for (i, (x, y)) in pts.iter().enumerate() {
        if i > 0 {
            poly.push(' ');
        }
        let _ = write!(poly, "{x:.9},{:.9}", -y);
    }
    let _ = writeln!(
        s,
        r##"<polyline points="{poly}" fill="none" stroke="#222222" stroke-width="1.5" vector-effect="non-scaling-stroke"/>"##
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.9}" y="{:.9}" font-size="{:.9}">{}</text>"#,
        vx + 0.5 * margin,
        vy + 0.8 * margin,
        0.04 * extent,
        escape(&data.title)
    );
    s.push_str("</svg>\n");
    Ok(s)
}

/// Projected points of the polyline in an SVG produced by [`render_svg`],
/// back in y-up screen coordinates.
pub fn polyline_points(svg: &str) -> Result<Vec<(f64, f64)>> {
    let start = svg
        .find("<polyline points=\"")
        .ok_or_else(|| Error::InvalidArgument("no polyline element".into()))?
        + "<polyline points=\"".len();
    let end = start + svg[start..].find('"').unwrap_or(0);
    svg[start..end]
        .split_whitespace()
        .map(|pair| {
            let (x, y) = pair
                .split_once(',')
                .ok_or_else(|| Error::InvalidArgument(format!("bad point `{pair}`")))?;
            let parse = |v: &str| {
                v.parse::<f64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad coordinate `{v}`")))
            };
            Ok((parse(x)?, -parse(y)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn helix_data() -> PlotData {
        PlotData {
            title: "helix <1>".into(),
            points: (0..50)
                .map(|i| {
                    let t = i as f64 * 0.2;
                    Vec3::new(t.cos(), t.sin(), t)
                })
                .collect(),
            on_sphere: false,
        }
    }

    #[test]
    fn iso_axes_are_orthonormal_to_view() {
        let (a, b) = Projection::Iso.project(Vec3::new(1.0, 1.0, 1.0));
        assert!(a.abs() < 1e-15 && b.abs() < 1e-15);
    }

    #[test]
    fn polyline_round_trip_and_escape() {
        let d = helix_data();
        let svg = render_svg(&d, Projection::Xz).unwrap();
        assert!(svg.contains("helix &lt;1&gt;"));
        let pts = polyline_points(&svg).unwrap();
        assert_eq!(pts.len(), 50);
        for (p, q) in d.points.iter().zip(&pts) {
            assert!((p.x - q.0).abs() < 1e-8 && (p.z - q.1).abs() < 1e-8);
        }
        assert_eq!(svg, render_svg(&d, Projection::Xz).unwrap());
    }

    #[test]
    fn csv_reading() {
        let d = read_csv_points("sigma,gx,gy,gz\n0,1,0,0\n1,0,1,0\n", "g").unwrap();
        assert!(d.on_sphere);
        assert!(read_csv_points("a,b\n1,2\n", "").is_err());
        assert!(matches!(
            read_csv_points("x,y,z\n1,2,oops\n3,4,5\n", ""),
            Err(Error::Csv(_))
        ));
    }

    #[test]
    fn non_finite_points_are_rejected() {
        let mut d = helix_data();
        d.points[3].y = f64::NAN;
        assert!(render_svg(&d, Projection::Iso).is_err());
    }
}
