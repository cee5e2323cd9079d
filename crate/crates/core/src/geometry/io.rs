//! Plain-text point files and edge-list output.
//!
//! A point file holds one `x y` pair per line; `#` starts a comment and
//! blank lines are ignored. Numbers are written with the shortest decimal
//! that parses back to the same `f64`.

use std::fmt::Write as _;

use super::{GeometryError, InfluenceGraph, PlanarPoint, PointSet, Variant};

pub fn parse_points(text: &str) -> Result<PointSet, GeometryError> {
    let mut pts = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(GeometryError::Parse {
                line,
                message: format!("expected 2 numbers, found {}", fields.len()),
            });
        }
        let num = |s: &str| -> Result<f64, GeometryError> {
            let v: f64 = s.parse().map_err(|_| GeometryError::Parse {
                line,
                message: format!("`{s}` is not a number"),
            })?;
            if !v.is_finite() {
                return Err(GeometryError::Parse {
                    line,
                    message: format!("`{s}` is not finite"),
                });
            }
            Ok(v)
        };
        pts.push(PlanarPoint::new(num(fields[0])?, num(fields[1])?));
        lines.push(line);
    }
    PointSet::new(pts).map_err(|e| match e {
        GeometryError::Duplicate { first, second } => GeometryError::Parse {
            line: lines[second],
            message: format!("duplicate of the point on line {}", lines[first]),
        },
        other => other,
    })
}

pub fn format_points(ps: &PointSet) -> String {
    let mut s = String::new();
    for p in ps.points() {
        let _ = writeln!(s, "{} {}", p.x, p.y);
    }
    s
}

/// Vertices with coordinates and radii, then one `e u v` line per edge.
pub fn format_graph(ps: &PointSet, graph: &InfluenceGraph) -> String {
    let mut s = String::new();
    let name = match graph.variant {
        Variant::Closed => "closed",
        Variant::Open => "open",
    };
    let _ = writeln!(s, "# {name} sphere-of-influence graph");
    let _ = writeln!(
        s,
        "# vertices {} edges {}",
        graph.vertex_count(),
        graph.edge_count()
    );
    let _ = writeln!(s, "# v index x y radius");
    for (i, (p, r)) in ps.points().iter().zip(&graph.radii).enumerate() {
        let _ = writeln!(s, "v {i} {} {} {r}", p.x, p.y);
    }
    let _ = writeln!(s, "# e u v");
    for (u, v) in &graph.edges {
        let _ = writeln!(s, "e {u} {v}");
    }
    s
}
