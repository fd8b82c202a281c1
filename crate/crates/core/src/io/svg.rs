//! SVG rendering of a drawing through its planarization.
//!
//! Nodes of the outer face are pinned to a regular polygon; every other node
//! sits at the barycentre of its neighbours (Gauss-Seidel). Edges are
//! polylines through their crossing nodes in order.

use std::fmt::Write as _;

use crate::planar::{NodeId, NodeKind, Planarization};
use crate::topo::{Dart, TopologicalGraph};

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;
const SWEEPS: usize = 2000;
const TOLERANCE: f64 = 1e-9;

/// Node positions in `[MARGIN, SIZE - MARGIN]^2`, indexed by node id.
pub fn layout(g: &TopologicalGraph, p: &Planarization) -> Vec<(f64, f64)> {
    let n = p.node_count();
    let centre = SIZE / 2.0;
    let radius = SIZE / 2.0 - MARGIN;
    let on_circle = |i: usize, of: usize| {
        let a = std::f64::consts::TAU * i as f64 / of.max(1) as f64 - std::f64::consts::FRAC_PI_2;
        (centre + radius * a.cos(), centre + radius * a.sin())
    };
    let mut pos = vec![(centre, centre); n];
    let mut pinned = vec![false; n];

    let outer = g.outer_face().or_else(|| {
        g.edge_ids().next().map(|edge| Dart {
            edge,
            segment: 0,
            forward: true,
        })
    });
    let ring: Vec<NodeId> = match outer {
        Some(d) => {
            let mut ring = Vec::new();
            for &x in p.face_darts(p.face(p.dart_id(d))) {
                let o = p.origin(x);
                if !ring.contains(&o) {
                    ring.push(o);
                }
            }
            ring
        }
        None => (0..n).collect(),
    };
    for (i, &v) in ring.iter().enumerate() {
        pos[v] = on_circle(i, ring.len());
        pinned[v] = true;
    }
    // Deterministic offsets keep free nodes apart before the first sweep.
    for (v, q) in pos.iter_mut().enumerate() {
        if !pinned[v] {
            let t = v as f64 * 2.399_963;
            *q = (centre + 0.1 * radius * t.cos(), centre + 0.1 * radius * t.sin());
        }
    }

    let neighbours: Vec<Vec<NodeId>> = (0..n)
        .map(|v| p.outgoing(v).into_iter().map(|d| p.head(d)).collect())
        .collect();
    for _ in 0..SWEEPS {
        let mut moved: f64 = 0.0;
        for v in 0..n {
            if pinned[v] || neighbours[v].is_empty() {
                continue;
            }
            let k = neighbours[v].len() as f64;
            let (sx, sy) = neighbours[v]
                .iter()
                .fold((0.0, 0.0), |(x, y), &u| (x + pos[u].0, y + pos[u].1));
            let next = (sx / k, sy / k);
            moved = moved.max((next.0 - pos[v].0).abs() + (next.1 - pos[v].1).abs());
            pos[v] = next;
        }
        if moved < TOLERANCE {
            break;
        }
    }
    pos
}

/// Renders `g` as a standalone SVG document.
pub fn render_svg(g: &TopologicalGraph) -> String {
    let p = g.planarization();
    let pos = layout(g, &p);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for e in g.edges() {
        let segments = g.crossing_count(e.id) + 1;
        let mut points = vec![pos[p.vertex_node(e.tail)]];
        for segment in 0..segments {
            let d = p.dart_id(Dart {
                edge: e.id,
                segment,
                forward: true,
            });
            points.push(pos[p.head(d)]);
        }
        let coords: Vec<String> = points.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            out,
            r#"<polyline class="edge" data-edge="{}" points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
            e.id.0,
            coords.join(" ")
        );
    }
    for (v, &(x, y)) in pos.iter().enumerate() {
        match p.node(v) {
            NodeKind::Crossing(i) => {
                let _ = writeln!(
                    out,
                    r#"<circle class="crossing" data-crossing="{i}" cx="{x:.2}" cy="{y:.2}" r="3" fill="red"/>"#
                );
            }
            NodeKind::Vertex(id) => {
                let _ = writeln!(
                    out,
                    r#"<circle class="vertex" cx="{x:.2}" cy="{y:.2}" r="6" fill="steelblue"/><text x="{:.2}" y="{:.2}" font-size="12">{}</text>"#,
                    x + 8.0,
                    y - 8.0,
                    id.0
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::pipeline::rewrite;

    fn count(s: &str, pat: &str) -> usize {
        s.matches(pat).count()
    }

    #[test]
    fn single_edge_is_one_line() {
        let g = fixtures::convex_chords(2, &[(0, 1)]);
        let s = render_svg(&g);
        assert_eq!(count(&s, "<polyline"), 1);
        assert_eq!(count(&s, "class=\"crossing\""), 0);
        assert_eq!(count(&s, "class=\"vertex\""), 2);
    }

    #[test]
    fn convex4_marks_every_crossing() {
        let s = render_svg(&fixtures::convex4());
        assert_eq!(count(&s, "<polyline"), 4);
        assert_eq!(count(&s, "class=\"crossing\""), 6);
    }

    #[test]
    fn rewritten_convex4_has_five_marks() {
        let (h, _) = rewrite(&fixtures::convex4(), 3).unwrap();
        let s = render_svg(&h);
        assert_eq!(count(&s, "class=\"crossing\""), 5);
        assert!(!s.contains("NaN"));
    }

    #[test]
    fn layout_is_finite_and_deterministic() {
        for (_, _, g) in fixtures::named() {
            let p = g.planarization();
            let a = layout(&g, &p);
            assert!(a.iter().all(|(x, y)| x.is_finite() && y.is_finite()));
            assert_eq!(a, layout(&g, &p));
        }
    }
}
