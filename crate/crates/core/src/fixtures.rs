//! Named drawings used by tests, benches and the `generate` command.
//!
//! Every fixture is a [`GeometricDrawing`] with exact coordinates; the
//! topological graph is obtained through [`ingest_geometric`].

use crate::io::geom::{ingest_geometric, GeometricDrawing, Point};
use crate::topo::TopologicalGraph;

fn ingest(d: &GeometricDrawing) -> TopologicalGraph {
    ingest_geometric(d).expect("fixture drawing is in general position and simple")
}

/// Slot `i` of a convex chain: the point `(i, i^2)`.
pub fn convex_slot(i: i64) -> Point {
    Point::int(i, i * i)
}

/// Vertices `slots[i]` placed on convex slot `i`; chords drawn straight and
/// numbered in the given order.
pub fn convex_chords_at_drawing(slots: &[u32], chords: &[(u32, u32)]) -> GeometricDrawing {
    let mut d = GeometricDrawing::default();
    for (i, &v) in slots.iter().enumerate() {
        d.add_point(v, convex_slot(i as i64));
    }
    for (id, &(a, b)) in chords.iter().enumerate() {
        d.add_edge(id as u32, a, b, vec![]);
    }
    d
}

pub fn convex_chords_drawing(n: u32, chords: &[(u32, u32)]) -> GeometricDrawing {
    let slots: Vec<u32> = (0..n).collect();
    convex_chords_at_drawing(&slots, chords)
}

/// `n` points in convex position with straight chords.
pub fn convex_chords(n: u32, chords: &[(u32, u32)]) -> TopologicalGraph {
    ingest(&convex_chords_drawing(n, chords))
}

pub fn convex_chords_at(slots: &[u32], chords: &[(u32, u32)]) -> TopologicalGraph {
    ingest(&convex_chords_at_drawing(slots, chords))
}

pub const CONVEX4_CHORDS: [(u32, u32); 4] = [(0, 4), (1, 5), (2, 6), (3, 7)];

pub fn convex4_drawing() -> GeometricDrawing {
    convex_chords_drawing(8, &CONVEX4_CHORDS)
}

/// Eight convex points, edges `(i, i+4)`: one untangled 4-crossing.
pub fn convex4() -> TopologicalGraph {
    ingest(&convex4_drawing())
}

/// CONVEX-4 with two extra edges at vertex 5 leaving the convex hull.
pub fn convex4_fan_drawing() -> GeometricDrawing {
    let mut d = convex4_drawing();
    d.add_point(8, Point::int(5, 20));
    d.add_point(9, Point::frac(11, 2, 22, 1));
    d.add_edge(4, 5, 8, vec![]);
    d.add_edge(5, 5, 9, vec![]);
    d
}

pub fn convex4_fan() -> TopologicalGraph {
    ingest(&convex4_fan_drawing())
}

pub fn pentagram_drawing() -> GeometricDrawing {
    let chords: Vec<(u32, u32)> = (0..5).map(|i| (i, (i + 2) % 5)).collect();
    convex_chords_drawing(5, &chords)
}

/// Five convex points, edges `(i, i+2 mod 5)`; crossing graph is a 5-cycle.
pub fn pentagram() -> TopologicalGraph {
    ingest(&pentagram_drawing())
}

/// Three long diagonals of a convex hexagon: an untangled 3-crossing.
pub fn hexagon_chords_drawing() -> GeometricDrawing {
    convex_chords_drawing(6, &[(0, 3), (1, 4), (2, 5)])
}

pub fn hexagon_chords() -> TopologicalGraph {
    ingest(&hexagon_chords_drawing())
}

/// A 3-planar graph that is not 2-planar: CONVEX-4 inside its convex hull
/// cycle. Every diagonal is crossed three times.
pub fn convex4_hull_drawing() -> GeometricDrawing {
    let mut d = convex4_drawing();
    for i in 0..7 {
        d.add_edge(4 + i, i, i + 1, vec![]);
    }
    d.add_edge(11, 0, 7, vec![]);
    d
}

pub fn convex4_hull() -> TopologicalGraph {
    ingest(&convex4_hull_drawing())
}

/// A 3-planar graph whose 4-crossing `{0,1,2,3}` is tangled: the endpoint
/// of edge 3 at vertex 6 sits in the triangle bounded by edges 0, 1, 2, and
/// the endpoint of edge 0 at vertex 0 sits in another bounded face.
pub fn tangled_drawing() -> GeometricDrawing {
    tangled_drawing_scaled(0, &Point::int(0, 0), 1)
}

/// The tangled construction with vertex and edge ids shifted by `base` and
/// coordinates mapped by `p / scale + offset`.
fn tangled_drawing_scaled(base: u32, offset: &Point, scale: i64) -> GeometricDrawing {
    let map = |x: i64, y: i64, q: i64| -> Point {
        let p = Point::frac(x, q * scale, y, q * scale);
        Point::new(p.x + &offset.x, p.y + &offset.y)
    };
    let mut d = GeometricDrawing::default();
    let pts = [
        (-8, -2, 1),
        (20, -2, 1),
        (-12, -8, 1),
        (8, 12, 1),
        (12, -8, 1),
        (-8, 12, 1),
        (0, 0, 1),
        (-6, 14, 1),
        (2, 1, 1),
        (-15, -5, 2),
    ];
    for (i, &(x, y, q)) in pts.iter().enumerate() {
        d.add_point(base + i as u32, map(x, y, q));
    }
    let e = |d: &mut GeometricDrawing, id: u32, a: u32, b: u32, bends: Vec<Point>| {
        d.add_edge(base + id, base + a, base + b, bends);
    };
    e(&mut d, 0, 0, 1, vec![]);
    e(&mut d, 1, 2, 3, vec![]);
    e(&mut d, 2, 4, 5, vec![]);
    e(&mut d, 3, 6, 7, vec![map(0, -6, 1), map(-10, -3, 1)]);
    e(&mut d, 4, 6, 8, vec![]);
    e(&mut d, 5, 0, 9, vec![]);
    e(&mut d, 6, 7, 5, vec![]);
    e(&mut d, 7, 7, 3, vec![]);
    e(&mut d, 8, 3, 1, vec![]);
    e(&mut d, 9, 1, 4, vec![]);
    e(&mut d, 10, 4, 2, vec![]);
    d
}

pub fn tangled() -> TopologicalGraph {
    ingest(&tangled_drawing())
}

/// A tangled copy nested inside the triangle face of another tangled copy,
/// joined to it by one crossing-free edge.
pub fn nested_tangled_drawing() -> GeometricDrawing {
    let mut d = tangled_drawing();
    let inner = tangled_drawing_scaled(20, &Point::frac(-3, 2, -1, 2), 20);
    d.points.extend(inner.points);
    d.edges.extend(inner.edges);
    d.add_edge(40, 6, 21, vec![]);
    d
}

pub fn nested_tangled() -> TopologicalGraph {
    ingest(&nested_tangled_drawing())
}

/// Two CONVEX-4 copies side by side joined by a crossing-free edge.
pub fn two_convex4_drawing() -> GeometricDrawing {
    let mut d = convex4_drawing();
    for i in 0..8 {
        d.add_point(8 + i, Point::int(100 + i as i64, (i * i) as i64));
    }
    for (id, (a, b)) in CONVEX4_CHORDS.iter().enumerate() {
        d.add_edge(4 + id as u32, 8 + a, 8 + b, vec![]);
    }
    d.add_edge(8, 7, 8, vec![]);
    d
}

pub fn two_convex4() -> TopologicalGraph {
    ingest(&two_convex4_drawing())
}

/// Two CONVEX-4 copies sharing vertex 7: the second copy is the mirror image
/// of the first through the vertical line `x = 7`.
pub fn shared_convex4_drawing() -> GeometricDrawing {
    let mut d = convex4_drawing();
    // Mirror slot i (0..7) gets id 8 + i; mirror slot 7 is vertex 7 itself.
    let id = |slot: u32| if slot == 7 { 7 } else { 8 + slot };
    for s in 0..7u32 {
        let x = s as i64;
        d.add_point(id(s), Point::int(14 - x, x * x));
    }
    for (k, (a, b)) in CONVEX4_CHORDS.iter().enumerate() {
        d.add_edge(4 + k as u32, id(*a), id(*b), vec![]);
    }
    d
}

pub fn shared_convex4() -> TopologicalGraph {
    ingest(&shared_convex4_drawing())
}

/// Every named fixture with its planarity parameter.
pub fn named() -> Vec<(&'static str, usize, TopologicalGraph)> {
    vec![
        ("convex4", 3, convex4()),
        ("convex4_fan", 3, convex4_fan()),
        ("pentagram", 3, pentagram()),
        ("hexagon_chords", 3, hexagon_chords()),
        ("convex4_hull", 3, convex4_hull()),
        ("tangled", 3, tangled()),
        ("nested_tangled", 3, nested_tangled()),
        ("two_convex4", 3, two_convex4()),
        ("shared_convex4", 3, shared_convex4()),
        ("mutual", 3, mutual()),
        ("adj", 3, adj()),
        ("mutual_adj", 3, mutual_adj()),
        ("two_mutual", 3, two_mutual()),
    ]
}

/// Two 4-crossings glued along a hull edge of each: the octagon of the second
/// lies outside the first's hull and shares vertices 0 and 1 with it. Ids make
/// the matching pivot on the shared vertices and reroute one member at each.
pub fn mutual_drawing() -> GeometricDrawing {
    let mut d = GeometricDrawing::default();
    // Convex slots 3 and 4 are the shared vertices 0 and 1.
    let slot_ids = [2, 3, 4, 0, 1, 5, 6, 7];
    for (slot, &v) in slot_ids.iter().enumerate() {
        d.add_point(v, convex_slot(slot as i64));
    }
    let outer = [
        Point::frac(17, 2, 45, 2),
        Point::frac(77, 4, 91, 4),
        Point::int(25, 13),
        Point::frac(89, 4, 25, 4),
        Point::int(16, 0),
        Point::int(6, 5),
    ];
    for (i, p) in outer.into_iter().enumerate() {
        d.add_point(8 + i as u32, p);
    }
    let edges = [(0, 7), (2, 1), (3, 5), (4, 6), (1, 11), (0, 10), (8, 12), (9, 13)];
    for (id, &(a, b)) in edges.iter().enumerate() {
        d.add_edge(id as u32, a, b, vec![]);
    }
    d
}

pub fn mutual() -> TopologicalGraph {
    ingest(&mutual_drawing())
}

/// MUTUAL plus a bent edge from vertex 1 to vertex 7 outside both hulls: the
/// hook of e0 around vertex 1 crosses it next to their shared vertex 7, and
/// e0 is also the edge moved by the double-crossing repair.
pub fn mutual_adj_drawing() -> GeometricDrawing {
    let mut d = mutual_drawing();
    d.add_edge(8, 1, 7, vec![Point::frac(11, 2, 29, 1), Point::frac(27, 4, 44, 1)]);
    d
}

pub fn mutual_adj() -> TopologicalGraph {
    ingest(&mutual_adj_drawing())
}

/// Two MUTUAL copies, the second shifted by `(0, -60)` with ids offset by 14
/// (vertices) and 8 (edges), joined by edge 16 between the lowest point of the
/// first and the highest point of the second.
pub fn two_mutual_drawing() -> GeometricDrawing {
    let mut d = mutual_drawing();
    let first = mutual_drawing();
    let shift = Point::int(0, -60);
    for (v, p) in &first.points {
        d.add_point(v.0 + 14, Point::new(&p.x + &shift.x, &p.y + &shift.y));
    }
    for e in &first.edges {
        d.add_edge(e.id.0 + 8, e.tail.0 + 14, e.head.0 + 14, vec![]);
    }
    d.add_edge(16, 12, 9 + 14, vec![]);
    d
}

pub fn two_mutual() -> TopologicalGraph {
    ingest(&two_mutual_drawing())
}

/// CONVEX-4 plus the hull edge between vertices 0 and 1: rerouting e1 around
/// vertex 0 makes its hook cross the new edge, which shares vertex 1 with it.
pub fn adj_drawing() -> GeometricDrawing {
    let mut d = convex4_drawing();
    d.add_edge(4, 0, 1, vec![]);
    d
}

pub fn adj() -> TopologicalGraph {
    ingest(&adj_drawing())
}
