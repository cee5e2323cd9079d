//! Planar point sets, sphere-of-influence graphs and the weighted digraph.
//!
//! Every point `v` gets the radius `r_v` of its nearest neighbour. The closed
//! graph joins `u, v` when `|uv| <= r_u + r_v`, the open graph when the
//! inequality is strict. All algorithms are quadratic.

mod io;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{radial_project, Params, PolarPoint};

pub use io::{format_graph, format_points, parse_points};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("points {first} and {second} coincide")]
    Duplicate { first: usize, second: usize },
    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("tie tolerance must be finite and in [0, 1e-3], got {0}")]
    InvalidTolerance(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

impl PlanarPoint {
    pub fn new(x: f64, y: f64) -> Self {
        PlanarPoint { x, y }
    }

    pub fn distance(&self, other: &PlanarPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Polar coordinates about `origin`.
    pub fn polar_about(&self, origin: &PlanarPoint) -> PolarPoint {
        PolarPoint::from_cartesian(self.x - origin.x, self.y - origin.y)
    }

    pub fn scaled(&self, s: f64) -> Self {
        PlanarPoint::new(self.x * s, self.y * s)
    }
}

/// Finite, pairwise distinct points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<PlanarPoint>", into = "Vec<PlanarPoint>")]
pub struct PointSet {
    points: Vec<PlanarPoint>,
}

impl TryFrom<Vec<PlanarPoint>> for PointSet {
    type Error = GeometryError;

    fn try_from(points: Vec<PlanarPoint>) -> Result<Self, Self::Error> {
        PointSet::new(points)
    }
}

impl From<PointSet> for Vec<PlanarPoint> {
    fn from(ps: PointSet) -> Self {
        ps.points
    }
}

impl PointSet {
    pub fn new(points: Vec<PlanarPoint>) -> Result<Self, GeometryError> {
        for (i, p) in points.iter().enumerate() {
            if !(p.x.is_finite() && p.y.is_finite()) {
                return Err(GeometryError::NonFinite { index: i });
            }
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| {
            points[a]
                .x
                .total_cmp(&points[b].x)
                .then(points[a].y.total_cmp(&points[b].y))
        });
        for w in order.windows(2) {
            let (a, b) = (points[w[0]], points[w[1]]);
            if a.x == b.x && a.y == b.y {
                let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(GeometryError::Duplicate { first, second });
            }
        }
        Ok(PointSet { points })
    }

    pub fn points(&self) -> &[PlanarPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Uniformly scaled copy. `s` must be positive and finite.
    pub fn scaled(&self, s: f64) -> Result<Self, GeometryError> {
        PointSet::new(self.points.iter().map(|p| p.scaled(s)).collect())
    }
}

/// Nearest-neighbour distance of every point, by direct scan.
pub fn nn_radii(ps: &PointSet) -> Result<Vec<f64>, GeometryError> {
    let pts = ps.points();
    if pts.len() < 2 {
        return Err(GeometryError::TooFewPoints(pts.len()));
    }
    let mut radii = vec![f64::INFINITY; pts.len()];
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let d = pts[i].distance(&pts[j]);
            if d < radii[i] {
                radii[i] = d;
            }
            if d < radii[j] {
                radii[j] = d;
            }
        }
    }
    Ok(radii)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Closed,
    Open,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfluenceGraph {
    pub variant: Variant,
    pub radii: Vec<f64>,
    /// Pairs `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl InfluenceGraph {
    pub fn vertex_count(&self) -> usize {
        self.radii.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.radii.len()];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Vertex with the smallest sphere (lowest index on ties).
    pub fn smallest_ball_vertex(&self) -> usize {
        let mut best = 0;
        for (i, r) in self.radii.iter().enumerate() {
            if *r < self.radii[best] {
                best = i;
            }
        }
        best
    }
}

/// Whether spheres of radii `ru`, `rv` at distance `d` are joined.
///
/// With `tie_tol = 0` the comparison is exact. A positive relative tolerance
/// treats near-ties as ties, for inputs such as floating-point lattices whose
/// exact ties are lost to rounding.
pub fn sig_edge(d: f64, ru: f64, rv: f64, variant: Variant, tie_tol: f64) -> bool {
    let reach = ru + rv;
    match variant {
        Variant::Closed => d <= reach * (1.0 + tie_tol),
        Variant::Open => d < reach * (1.0 - tie_tol),
    }
}

pub fn build_sig(ps: &PointSet, variant: Variant) -> Result<InfluenceGraph, GeometryError> {
    build_sig_with_tolerance(ps, variant, 0.0)
}

pub fn build_sig_with_tolerance(
    ps: &PointSet,
    variant: Variant,
    tie_tol: f64,
) -> Result<InfluenceGraph, GeometryError> {
    if !(tie_tol.is_finite() && (0.0..=1e-3).contains(&tie_tol)) {
        return Err(GeometryError::InvalidTolerance(tie_tol));
    }
    let radii = nn_radii(ps)?;
    let pts = ps.points();
    let mut edges = Vec::new();
    for u in 0..pts.len() {
        for v in (u + 1)..pts.len() {
            if sig_edge(
                pts[u].distance(&pts[v]),
                radii[u],
                radii[v],
                variant,
                tie_tol,
            ) {
                edges.push((u, v));
            }
        }
    }
    Ok(InfluenceGraph {
        variant,
        radii,
        edges,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ArcWeight {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1/2")]
    Half,
    #[serde(rename = "1")]
    One,
}

impl ArcWeight {
    pub fn value(self) -> f64 {
        self.halves() as f64 / 2.0
    }

    /// The weight in units of 1/2.
    pub fn halves(self) -> u32 {
        match self {
            ArcWeight::Zero => 0,
            ArcWeight::Half => 1,
            ArcWeight::One => 2,
        }
    }
}

/// Weight of the arc `a -> b`: 1 when `r_b / r_a > p`, 0 when
/// `r_b / r_a < q`, 1/2 otherwise. Compared as products so that
/// `w(a, b) + w(b, a) = 1` holds exactly.
pub fn arc_weight(r_a: f64, r_b: f64, params: &Params) -> ArcWeight {
    let p = params.p();
    if r_b > p * r_a {
        ArcWeight::One
    } else if r_a > p * r_b {
        ArcWeight::Zero
    } else {
        ArcWeight::Half
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub weight: ArcWeight,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedDigraph {
    pub vertex_count: usize,
    pub arcs: Vec<Arc>,
}

impl WeightedDigraph {
    /// Sum of all arc weights, in units of 1/2.
    pub fn total_halves(&self) -> u64 {
        self.arcs.iter().map(|a| a.weight.halves() as u64).sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.total_halves() as f64 / 2.0
    }

    /// Out-weight of every vertex, in units of 1/2.
    pub fn out_halves(&self) -> Vec<u32> {
        let mut out = vec![0; self.vertex_count];
        for a in &self.arcs {
            out[a.from] += a.weight.halves();
        }
        out
    }
}

/// Both arcs of every edge of a closed graph.
pub fn wsig_from_graph(graph: &InfluenceGraph, params: &Params) -> WeightedDigraph {
    let r = &graph.radii;
    let mut arcs = Vec::with_capacity(2 * graph.edges.len());
    for &(u, v) in &graph.edges {
        arcs.push(Arc {
            from: u,
            to: v,
            weight: arc_weight(r[u], r[v], params),
        });
        arcs.push(Arc {
            from: v,
            to: u,
            weight: arc_weight(r[v], r[u], params),
        });
    }
    WeightedDigraph {
        vertex_count: graph.vertex_count(),
        arcs,
    }
}

pub fn wsig(ps: &PointSet, params: &Params) -> Result<WeightedDigraph, GeometryError> {
    Ok(wsig_from_graph(&build_sig(ps, Variant::Closed)?, params))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutWeightProfile {
    pub out_weight: Vec<f64>,
    pub max: f64,
    /// First vertex attaining the maximum.
    pub argmax: usize,
}

pub fn out_weight_profile_of(digraph: &WeightedDigraph) -> OutWeightProfile {
    let halves = digraph.out_halves();
    let mut argmax = 0;
    for (i, h) in halves.iter().enumerate() {
        if *h > halves[argmax] {
            argmax = i;
        }
    }
    OutWeightProfile {
        out_weight: halves.iter().map(|&h| h as f64 / 2.0).collect(),
        max: halves.get(argmax).map_or(0.0, |&h| h as f64 / 2.0),
        argmax,
    }
}

pub fn out_weight_profile(
    ps: &PointSet,
    params: &Params,
) -> Result<OutWeightProfile, GeometryError> {
    Ok(out_weight_profile_of(&wsig(ps, params)?))
}

/// Triangular lattice in row-major order; odd rows are shifted by half a
/// spacing so every point's six nearest neighbours are `spacing` away.
pub fn hex_lattice(rows: usize, cols: usize, spacing: f64) -> Result<PointSet, GeometryError> {
    if rows == 0 || cols == 0 {
        return Err(GeometryError::InvalidLattice(format!("{rows} x {cols}")));
    }
    if !(spacing.is_finite() && spacing > 0.0) {
        return Err(GeometryError::InvalidLattice(format!("spacing {spacing}")));
    }
    let h = spacing * 3f64.sqrt() / 2.0;
    let mut pts = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let shift = if i % 2 == 1 { 0.5 } else { 0.0 };
        for j in 0..cols {
            pts.push(PlanarPoint::new(spacing * (j as f64 + shift), h * i as f64));
        }
    }
    PointSet::new(pts)
}

/// Indices of lattice points at least `margin` rows and columns from the
/// boundary.
pub fn lattice_interior(rows: usize, cols: usize, margin: usize) -> Vec<usize> {
    let mut out = Vec::new();
    if rows <= 2 * margin || cols <= 2 * margin {
        return out;
    }
    for i in margin..rows - margin {
        for j in margin..cols - margin {
            out.push(i * cols + j);
        }
    }
    out
}

/// `n` points uniform in the unit square. `stream` selects an independent
/// sequence for the same seed.
pub fn random_points(n: usize, seed: u64, stream: u64) -> Result<PointSet, GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let pts = (0..n)
        .map(|_| PlanarPoint::new(rng.gen::<f64>(), rng.gen::<f64>()))
        .collect();
    PointSet::new(pts)
}

/// Neighbour centres of one vertex after translating it to the origin and
/// scaling its radius to 1, with weight-1 points beyond `1 + p` pulled onto
/// that circle.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedConfiguration {
    pub ones: Vec<PolarPoint>,
    pub halves: Vec<PolarPoint>,
}

impl ReducedConfiguration {
    pub fn weight(&self) -> f64 {
        self.ones.len() as f64 + 0.5 * self.halves.len() as f64
    }
}

pub fn reduce_at_vertex(
    ps: &PointSet,
    graph: &InfluenceGraph,
    v: usize,
    params: &Params,
) -> Result<ReducedConfiguration, crate::bounds::BoundsError> {
    let pts = ps.points();
    let r = &graph.radii;
    let scale = 1.0 / r[v];
    let mut ones = Vec::new();
    let mut halves = Vec::new();
    for &(a, b) in &graph.edges {
        let u = match (a == v, b == v) {
            (true, _) => b,
            (_, true) => a,
            _ => continue,
        };
        let local = PlanarPoint::new((pts[u].x - pts[v].x) * scale, (pts[u].y - pts[v].y) * scale);
        let polar = local.polar_about(&PlanarPoint::new(0.0, 0.0));
        match arc_weight(r[v], r[u], params) {
            ArcWeight::One => ones.push(radial_project(polar, params.outer())?),
            ArcWeight::Half => halves.push(polar),
            ArcWeight::Zero => {}
        }
    }
    Ok(ReducedConfiguration { ones, halves })
}

/// Check the annulus and separation hypotheses of the weight-15 theorem on
/// a reduced configuration, up to `tol`.
pub fn check_reduction_hypotheses(
    c: &ReducedConfiguration,
    params: &Params,
    tol: f64,
) -> Result<(), String> {
    let p = params.p();
    let q = params.q();
    let outer = params.outer();
    for x in &c.ones {
        if x.rho() < p - tol || x.rho() > outer + tol {
            return Err(format!(
                "weight-1 point at radius {} outside [p, 1+p]",
                x.rho()
            ));
        }
    }
    for x in &c.halves {
        if x.rho() < 1.0 - tol || x.rho() > outer + tol {
            return Err(format!(
                "weight-1/2 point at radius {} outside [1, 1+p]",
                x.rho()
            ));
        }
    }
    let sep = |a: &[PolarPoint], b: &[PolarPoint], same: bool, need: f64, what: &str| {
        for (i, x) in a.iter().enumerate() {
            let rest = if same { &b[i + 1..] } else { b };
            for y in rest {
                let d = x.distance(y);
                if d < need - tol {
                    return Err(format!("{what} pair at distance {d} < {need}"));
                }
            }
        }
        Ok(())
    };
    sep(&c.ones, &c.ones, true, p, "weight-1")?;
    sep(&c.ones, &c.halves, false, p, "mixed")?;
    sep(&c.halves, &c.halves, true, q, "weight-1/2")?;
    Ok(())
}

/// Per-instance statistics of a random trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialStats {
    pub trial: u64,
    pub closed_edges: usize,
    pub open_edges: usize,
    pub max_out_weight: f64,
    pub smallest_ball_degree: usize,
    pub reduction_ok: bool,
}

pub fn run_trial(
    n: usize,
    seed: u64,
    trial: u64,
    params: &Params,
) -> Result<TrialStats, GeometryError> {
    let ps = random_points(n, seed, trial)?;
    let closed = build_sig(&ps, Variant::Closed)?;
    let open = build_sig(&ps, Variant::Open)?;
    let profile = out_weight_profile_of(&wsig_from_graph(&closed, params));
    let reduced = reduce_at_vertex(&ps, &closed, profile.argmax, params);
    let reduction_ok = match reduced {
        Ok(c) => check_reduction_hypotheses(&c, params, 1e-9).is_ok(),
        Err(_) => false,
    };
    let deg = closed.degrees();
    Ok(TrialStats {
        trial,
        closed_edges: closed.edge_count(),
        open_edges: open.edge_count(),
        max_out_weight: profile.max,
        smallest_ball_degree: deg[closed.smallest_ball_vertex()],
        reduction_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> PointSet {
        PointSet::new(v.iter().map(|&(x, y)| PlanarPoint::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn two_points() {
        let ps = pts(&[(0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(nn_radii(&ps).unwrap(), vec![1.0, 1.0]);
        for v in [Variant::Closed, Variant::Open] {
            assert_eq!(build_sig(&ps, v).unwrap().edges, vec![(0, 1)]);
        }
        let prof = out_weight_profile(&ps, &Params::new(1.409).unwrap()).unwrap();
        assert_eq!(prof.out_weight, vec![0.5, 0.5]);
    }

    #[test]
    fn collinear_tie() {
        let ps = pts(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)]);
        let closed = build_sig(&ps, Variant::Closed).unwrap();
        assert_eq!(closed.radii, vec![1.0, 1.0, 2.0]);
        assert_eq!(closed.edges, vec![(0, 1), (0, 2), (1, 2)]);
        let open = build_sig(&ps, Variant::Open).unwrap();
        assert_eq!(open.edges, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn duplicates_and_small_sets_rejected() {
        let err = PointSet::new(vec![PlanarPoint::new(0.0, 0.0), PlanarPoint::new(0.0, 0.0)])
            .unwrap_err();
        assert_eq!(
            err,
            GeometryError::Duplicate {
                first: 0,
                second: 1
            }
        );
        let one = pts(&[(0.0, 0.0)]);
        assert_eq!(nn_radii(&one), Err(GeometryError::TooFewPoints(1)));
        assert!(matches!(
            PointSet::new(vec![PlanarPoint::new(f64::NAN, 0.0)]),
            Err(GeometryError::NonFinite { index: 0 })
        ));
    }

    #[test]
    fn arc_weight_rule() {
        let params = Params::new(1.409).unwrap();
        assert_eq!(arc_weight(1.0, 2.0, &params), ArcWeight::One);
        assert_eq!(arc_weight(2.0, 1.0, &params), ArcWeight::Zero);
        assert_eq!(arc_weight(1.0, 1.0, &params), ArcWeight::Half);
        assert_eq!(arc_weight(1.0, 1.409, &params), ArcWeight::Half);
    }

    #[test]
    fn lattice_shape() {
        let ps = hex_lattice(1, 2, 1.0).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps.points()[0].distance(&ps.points()[1]), 1.0);
        assert!(hex_lattice(0, 3, 1.0).is_err());
        assert!(hex_lattice(3, 3, -1.0).is_err());
        assert_eq!(lattice_interior(20, 20, 3).len(), 14 * 14);
    }

    #[test]
    fn random_points_are_seeded() {
        let a = random_points(30, 7, 0).unwrap();
        let b = random_points(30, 7, 0).unwrap();
        let c = random_points(30, 7, 1).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a
            .points()
            .iter()
            .all(|p| (0.0..1.0).contains(&p.x) && (0.0..1.0).contains(&p.y)));
    }
}
