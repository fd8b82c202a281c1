//! Polyline drawings with exact rational coordinates, and their conversion
//! into a [`TopologicalGraph`].

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::IoError;
use crate::topo::{Crossing, Edge, EdgeId, Sign, TopologicalGraph, VertexId};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point {
            x: Rational::from_integer(BigInt::from(x)),
            y: Rational::from_integer(BigInt::from(y)),
        }
    }

    pub fn frac(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Point {
            x: Rational::new(BigInt::from(xn), BigInt::from(xd)),
            y: Rational::new(BigInt::from(yn), BigInt::from(yd)),
        }
    }

    fn sub(&self, o: &Point) -> (Rational, Rational) {
        (&self.x - &o.x, &self.y - &o.y)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rational_to_f64(&self.x), rational_to_f64(&self.y))
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn cross(a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    &a.0 * &b.1 - &a.1 * &b.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyEdge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
    /// Interior bend points, tail to head.
    pub bends: Vec<Point>,
}

/// Vertices as points and edges as polylines between them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GeometricDrawing {
    pub points: BTreeMap<VertexId, Point>,
    pub edges: Vec<PolyEdge>,
}

impl GeometricDrawing {
    pub fn add_point(&mut self, id: u32, p: Point) {
        self.points.insert(VertexId(id), p);
    }

    pub fn add_edge(&mut self, id: u32, tail: u32, head: u32, bends: Vec<Point>) {
        self.edges.push(PolyEdge {
            id: EdgeId(id),
            tail: VertexId(tail),
            head: VertexId(head),
            bends,
        });
    }

    fn polyline(&self, e: &PolyEdge) -> Vec<Point> {
        let mut pts = vec![self.points[&e.tail].clone()];
        pts.extend(e.bends.iter().cloned());
        pts.push(self.points[&e.head].clone());
        pts
    }
}

/// A single proper crossing found between two polylines.
#[derive(Debug, Clone, PartialEq)]
pub struct RawCrossing {
    pub edge_a: EdgeId,
    pub edge_b: EdgeId,
    /// Position along `edge_a`: (piece index, parameter in (0,1)).
    pub at_a: (usize, Rational),
    pub at_b: (usize, Rational),
    pub point: Point,
    pub sign: Sign,
}

enum Meet {
    None,
    Proper {
        t: Rational,
        s: Rational,
        point: Point,
        sign: Sign,
    },
    Touch(Point),
    Overlap,
}

fn meet(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> Meet {
    let r = p2.sub(p1);
    let s = q2.sub(q1);
    let qp = q1.sub(p1);
    let denom = cross(&r, &s);
    if denom.is_zero() {
        if !cross(&qp, &r).is_zero() {
            return Meet::None;
        }
        // Collinear: project on r (or on the axis where it is non-degenerate).
        let rr = &r.0 * &r.0 + &r.1 * &r.1;
        let proj = |p: &Point| -> Rational {
            let d = p.sub(p1);
            (&d.0 * &r.0 + &d.1 * &r.1) / &rr
        };
        let (mut a, mut b) = (proj(q1), proj(q2));
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        let lo = if a > Rational::zero() { a } else { Rational::zero() };
        let hi = if b < Rational::one() { b } else { Rational::one() };
        return match lo.cmp(&hi) {
            Ordering::Greater => Meet::None,
            Ordering::Equal => {
                let pt = Point::new(&p1.x + &r.0 * &lo, &p1.y + &r.1 * &lo);
                Meet::Touch(pt)
            }
            Ordering::Less => Meet::Overlap,
        };
    }
    let t = cross(&qp, &s) / &denom;
    let u = cross(&qp, &r) / &denom;
    let zero = Rational::zero();
    let one = Rational::one();
    if t < zero || t > one || u < zero || u > one {
        return Meet::None;
    }
    let point = Point::new(&p1.x + &r.0 * &t, &p1.y + &r.1 * &t);
    if t == zero || t == one || u == zero || u == one {
        return Meet::Touch(point);
    }
    let sign = if denom.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    };
    Meet::Proper { t, s: u, point, sign }
}

fn degenerate(a: impl ToString, b: impl ToString, detail: impl ToString) -> IoError {
    IoError::DegenerateGeometry {
        first: a.to_string(),
        second: b.to_string(),
        detail: detail.to_string(),
    }
}

/// All proper crossings between pieces of distinct edges, checking general
/// position on the way. Simplicity is not checked here.
pub fn exact_crossings(d: &GeometricDrawing) -> Result<Vec<RawCrossing>, IoError> {
    let polys: Vec<Vec<Point>> = d.edges.iter().map(|e| d.polyline(e)).collect();

    // Vertex points must be distinct and off every piece interior.
    let mut seen: BTreeMap<&Point, VertexId> = BTreeMap::new();
    for (v, p) in &d.points {
        if let Some(u) = seen.insert(p, *v) {
            return Err(degenerate(u, v, "coincident vertex points"));
        }
    }
    for (ei, e) in d.edges.iter().enumerate() {
        for b in &e.bends {
            if let Some(v) = seen.get(b) {
                return Err(degenerate(e.id, v, "bend on a vertex point"));
            }
        }
        for w in polys[ei].windows(2) {
            if w[0] == w[1] {
                return Err(degenerate(e.id, e.id, "zero-length piece"));
            }
            for (v, p) in &d.points {
                if *p == w[0] || *p == w[1] {
                    continue;
                }
                if let Meet::Touch(_) | Meet::Proper { .. } = meet(&w[0], &w[1], p, p) {
                    return Err(degenerate(e.id, v, "vertex on edge interior"));
                }
            }
        }
    }

    let mut out: Vec<RawCrossing> = Vec::new();
    for i in 0..d.edges.len() {
        // Self-intersection of one polyline.
        let pi = &polys[i];
        for a in 0..pi.len() - 1 {
            for b in a + 1..pi.len() - 1 {
                match meet(&pi[a], &pi[a + 1], &pi[b], &pi[b + 1]) {
                    Meet::None => {}
                    Meet::Touch(_) if b == a + 1 => {}
                    _ => return Err(degenerate(d.edges[i].id, d.edges[i].id, "self-intersecting polyline")),
                }
            }
        }
        for (j, pj) in polys.iter().enumerate().skip(i + 1) {
            let (ea, eb) = (&d.edges[i], &d.edges[j]);
            for a in 0..pi.len() - 1 {
                for b in 0..pj.len() - 1 {
                    match meet(&pi[a], &pi[a + 1], &pj[b], &pj[b + 1]) {
                        Meet::None => {}
                        Meet::Overlap => return Err(degenerate(ea.id, eb.id, "overlapping pieces")),
                        Meet::Touch(pt) => {
                            let shared = [ea.tail, ea.head]
                                .iter()
                                .any(|v| (*v == eb.tail || *v == eb.head) && d.points[v] == pt);
                            if !shared {
                                return Err(degenerate(ea.id, eb.id, "touching without crossing"));
                            }
                        }
                        Meet::Proper { t, s, point, sign } => out.push(RawCrossing {
                            edge_a: ea.id,
                            edge_b: eb.id,
                            at_a: (a, t),
                            at_b: (b, s),
                            point,
                            sign,
                        }),
                    }
                }
            }
        }
    }

    let mut pts: BTreeMap<&Point, usize> = BTreeMap::new();
    for (i, c) in out.iter().enumerate() {
        if let Some(j) = pts.insert(&c.point, i) {
            let o = &out[j];
            return Err(degenerate(
                format!("{}x{}", o.edge_a, o.edge_b),
                format!("{}x{}", c.edge_a, c.edge_b),
                "three curves through one point",
            ));
        }
    }
    Ok(out)
}

/// Options for [`ingest_geometric_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct IngestOptions {
    /// Accept double crossings and crossings between adjacent edges.
    pub allow_non_simple: bool,
}

pub fn ingest_geometric(d: &GeometricDrawing) -> Result<TopologicalGraph, IoError> {
    ingest_geometric_with(d, IngestOptions::default())
}

pub fn ingest_geometric_with(d: &GeometricDrawing, opts: IngestOptions) -> Result<TopologicalGraph, IoError> {
    for e in &d.edges {
        for v in [e.tail, e.head] {
            if !d.points.contains_key(&v) {
                return Err(IoError::Build {
                    line: 0,
                    source: crate::error::BuildError::UnknownVertex { edge: e.id, vertex: v },
                });
            }
        }
    }
    let raw = exact_crossings(d)?;
    let edge_by_id: BTreeMap<EdgeId, &PolyEdge> = d.edges.iter().map(|e| (e.id, e)).collect();

    if !opts.allow_non_simple {
        let mut pairs = BTreeMap::new();
        for c in &raw {
            let (a, b) = (edge_by_id[&c.edge_a], edge_by_id[&c.edge_b]);
            if [a.tail, a.head].iter().any(|v| *v == b.tail || *v == b.head) {
                return Err(IoError::NotSimpleDrawing(format!(
                    "adjacent edges {} and {} cross",
                    c.edge_a, c.edge_b
                )));
            }
            let key = (c.edge_a.min(c.edge_b), c.edge_a.max(c.edge_b));
            if pairs.insert(key, ()).is_some() {
                return Err(IoError::NotSimpleDrawing(format!(
                    "edges {} and {} cross more than once",
                    key.0, key.1
                )));
            }
        }
    }

    // Order crossings along each edge.
    let mut along: BTreeMap<EdgeId, Vec<(usize, Rational, usize)>> = BTreeMap::new();
    for (i, c) in raw.iter().enumerate() {
        along.entry(c.edge_a).or_default().push((c.at_a.0, c.at_a.1.clone(), i));
        along.entry(c.edge_b).or_default().push((c.at_b.0, c.at_b.1.clone(), i));
    }
    let mut index_on: BTreeMap<(EdgeId, usize), usize> = BTreeMap::new();
    for (e, list) in along.iter_mut() {
        list.sort();
        for (pos, (_, _, i)) in list.iter().enumerate() {
            index_on.insert((*e, *i), pos);
        }
    }
    let crossings: Vec<Crossing> = raw
        .iter()
        .enumerate()
        .map(|(i, c)| Crossing {
            edge_a: c.edge_a,
            edge_b: c.edge_b,
            index_on_a: index_on[&(c.edge_a, i)],
            index_on_b: index_on[&(c.edge_b, i)],
            sign: c.sign,
        })
        .collect();

    // Counter-clockwise rotation from the direction of each edge's first piece.
    let mut rotations: BTreeMap<VertexId, Vec<(Direction, EdgeId)>> =
        d.points.keys().map(|&v| (v, Vec::new())).collect();
    for e in &d.edges {
        let poly = d.polyline(e);
        let n = poly.len();
        rotations
            .get_mut(&e.tail)
            .unwrap()
            .push((Direction::new(&poly[0], &poly[1]), e.id));
        rotations
            .get_mut(&e.head)
            .unwrap()
            .push((Direction::new(&poly[n - 1], &poly[n - 2]), e.id));
    }
    let rotations: BTreeMap<VertexId, Vec<EdgeId>> = rotations
        .into_iter()
        .map(|(v, mut list)| {
            list.sort_by(|a, b| a.0.angle_cmp(&b.0));
            (v, list.into_iter().map(|(_, e)| e).collect())
        })
        .collect();

    let edges = d.edges.iter().map(|e| Edge {
        id: e.id,
        tail: e.tail,
        head: e.head,
    });
    TopologicalGraph::build(d.points.keys().copied(), edges, crossings, rotations, None)
        .map_err(|source| IoError::Build { line: 0, source })
}

#[derive(Debug, Clone)]
struct Direction {
    dx: Rational,
    dy: Rational,
}

impl Direction {
    fn new(from: &Point, to: &Point) -> Self {
        Direction {
            dx: &to.x - &from.x,
            dy: &to.y - &from.y,
        }
    }

    /// Upper half-plane (angle in [0, pi)) first.
    fn half(&self) -> u8 {
        if self.dy.is_positive() || (self.dy.is_zero() && self.dx.is_positive()) {
            0
        } else {
            1
        }
    }

    fn angle_cmp(&self, o: &Direction) -> Ordering {
        self.half().cmp(&o.half()).then_with(|| {
            let c = &self.dx * &o.dy - &self.dy * &o.dx;
            Rational::zero().cmp(&c)
        })
    }
}

/// Parses `"p/q"` or an integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p.trim().parse().ok()?, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Serialize, Deserialize)]
struct GeomDoc {
    points: Vec<GeomPoint>,
    edges: Vec<GeomEdge>,
}

#[derive(Serialize, Deserialize)]
struct GeomPoint {
    id: u32,
    x: String,
    y: String,
}

#[derive(Serialize, Deserialize)]
struct GeomEdge {
    id: u32,
    tail: u32,
    head: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    bends: Vec<[String; 2]>,
}

/// Reads a `.geom` JSON document.
pub fn parse_geom(text: &str) -> Result<GeometricDrawing, IoError> {
    let doc: GeomDoc = serde_json::from_str(text).map_err(|e| IoError::Syntax {
        line: e.line(),
        message: e.to_string(),
    })?;
    let bad = |what: &str| IoError::Syntax {
        line: 0,
        message: format!("bad rational in {what}"),
    };
    let mut d = GeometricDrawing::default();
    for p in doc.points {
        let x = parse_rational(&p.x).ok_or_else(|| bad("point"))?;
        let y = parse_rational(&p.y).ok_or_else(|| bad("point"))?;
        d.add_point(p.id, Point::new(x, y));
    }
    for e in doc.edges {
        let mut bends = Vec::new();
        for [x, y] in &e.bends {
            bends.push(Point::new(
                parse_rational(x).ok_or_else(|| bad("bend"))?,
                parse_rational(y).ok_or_else(|| bad("bend"))?,
            ));
        }
        d.add_edge(e.id, e.tail, e.head, bends);
    }
    Ok(d)
}

pub fn serialize_geom(d: &GeometricDrawing) -> String {
    let doc = GeomDoc {
        points: d
            .points
            .iter()
            .map(|(v, p)| GeomPoint {
                id: v.0,
                x: format_rational(&p.x),
                y: format_rational(&p.y),
            })
            .collect(),
        edges: d
            .edges
            .iter()
            .map(|e| GeomEdge {
                id: e.id.0,
                tail: e.tail.0,
                head: e.head.0,
                bends: e
                    .bends
                    .iter()
                    .map(|p| [format_rational(&p.x), format_rational(&p.y)])
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("geom serialization")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn convex_octagon_diagonals_give_convex4() {
        let g = ingest_geometric(&fixtures::convex4_drawing()).unwrap();
        assert_eq!(g.crossings().len(), 6);
        assert_eq!(g, fixtures::convex4());
    }

    #[test]
    fn pentagram_has_five_crossings() {
        let g = ingest_geometric(&fixtures::pentagram_drawing()).unwrap();
        assert_eq!(g.crossings().len(), 5);
    }

    #[test]
    fn concurrent_hexagon_diagonals_are_degenerate() {
        let mut d = GeometricDrawing::default();
        let pts = [(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)];
        for (i, &(x, y)) in pts.iter().enumerate() {
            d.add_point(i as u32, Point::int(x, y));
        }
        for i in 0..3 {
            d.add_edge(i, i, i + 3, vec![]);
        }
        assert!(matches!(ingest_geometric(&d), Err(IoError::DegenerateGeometry { .. })));
    }

    #[test]
    fn adjacent_crossing_is_not_simple() {
        let mut d = GeometricDrawing::default();
        d.add_point(0, Point::int(0, 0));
        d.add_point(1, Point::int(4, 0));
        d.add_point(2, Point::int(4, 2));
        // Edge 1 leaves 0 upward, swings below edge 0 and back over it.
        d.add_edge(0, 0, 1, vec![]);
        d.add_edge(1, 0, 2, vec![Point::int(0, 1), Point::int(2, -1), Point::int(5, -1)]);
        assert!(matches!(ingest_geometric(&d), Err(IoError::NotSimpleDrawing(_))));
        let g = ingest_geometric_with(&d, IngestOptions { allow_non_simple: true }).unwrap();
        assert_eq!(g.crossings().len(), 1);
    }

    #[test]
    fn touching_is_degenerate() {
        let mut d = GeometricDrawing::default();
        d.add_point(0, Point::int(0, 0));
        d.add_point(1, Point::int(4, 0));
        d.add_point(2, Point::int(2, 2));
        d.add_point(3, Point::int(3, 3));
        d.add_edge(0, 0, 1, vec![]);
        d.add_edge(1, 2, 3, vec![Point::int(2, 0)]);
        assert!(matches!(ingest_geometric(&d), Err(IoError::DegenerateGeometry { .. })));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6"), Some(Rational::new(1.into(), 2.into())));
        assert_eq!(parse_rational("-4"), Some(Rational::from_integer((-4).into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&parse_rational("-6/4").unwrap()), "-3/2");
    }

    #[test]
    fn geom_document_roundtrip() {
        let d = fixtures::tangled_drawing();
        let back = parse_geom(&serialize_geom(&d)).unwrap();
        assert_eq!(back, d);
    }
}
