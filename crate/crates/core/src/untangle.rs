//! Untangling (k+1)-crossings: the members are redrawn as chords of a circle
//! whose boundary carries the endpoint faces of the arrangement as disks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::analysis::{self, arrangement_view, tangled_crossings, KCrossing};
use crate::error::RedrawError;
use crate::io::geom::{exact_crossings, GeometricDrawing, Point};
use crate::redraw::Sketch;
use crate::topo::{Crossing, EdgeId, TopologicalGraph, VertexId};

/// One disk per arrangement face carrying endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiskPlan {
    /// Endpoints of each disk in boundary-walk order; disks in circle order.
    pub disks: Vec<Vec<VertexId>>,
    /// Counter-clockwise order of all endpoints on the circle.
    pub circle: Vec<VertexId>,
}

pub fn disk_plan(g: &TopologicalGraph, x: &KCrossing) -> DiskPlan {
    let view = arrangement_view(g, x);
    let mut disks: Vec<Vec<VertexId>> = view
        .faces
        .iter()
        .filter(|f| !f.endpoints.is_empty())
        .map(|f| f.endpoints.clone())
        .collect();
    disks.sort_by_key(|d| *d.iter().min().unwrap());
    let circle = disks.iter().flat_map(|d| d.iter().rev().copied()).collect();
    DiskPlan { disks, circle }
}

/// Member crossings for the chords of a circle visiting `circle` in
/// counter-clockwise order. Fails only if no generic placement is found.
fn chord_crossings(g: &TopologicalGraph, x: &KCrossing, circle: &[VertexId]) -> Result<Vec<Crossing>, RedrawError> {
    const PRIMES: [i64; 6] = [11, 13, 17, 19, 23, 29];
    for p in PRIMES {
        let mut d = GeometricDrawing::default();
        for (i, &v) in circle.iter().enumerate() {
            let i = i as i64;
            // Strictly increasing abscissae on the parabola y = x^2.
            let xr = BigRational::new(BigInt::from(2 * p * i + (i * i) % p), BigInt::from(2 * p));
            let yr = &xr * &xr;
            d.points.insert(v, Point::new(xr, yr));
        }
        for &e in &x.edges {
            let ed = g.edge(e);
            d.add_edge(e.0, ed.tail.0, ed.head.0, vec![]);
        }
        let Ok(raw) = exact_crossings(&d) else {
            continue;
        };
        let mut along: BTreeMap<EdgeId, Vec<(BigRational, usize)>> = BTreeMap::new();
        for (i, c) in raw.iter().enumerate() {
            along.entry(c.edge_a).or_default().push((c.at_a.1.clone(), i));
            along.entry(c.edge_b).or_default().push((c.at_b.1.clone(), i));
        }
        let mut index: BTreeMap<(EdgeId, usize), usize> = BTreeMap::new();
        for (e, list) in along.iter_mut() {
            list.sort();
            for (pos, (_, i)) in list.iter().enumerate() {
                index.insert((*e, *i), pos);
            }
        }
        return Ok(raw
            .iter()
            .enumerate()
            .map(|(i, c)| Crossing {
                edge_a: c.edge_a,
                edge_b: c.edge_b,
                index_on_a: index[&(c.edge_a, i)],
                index_on_b: index[&(c.edge_b, i)],
                sign: c.sign,
            })
            .collect());
    }
    Err(RedrawError::InvariantViolation(
        "no generic chord placement found".into(),
    ))
}

/// Redraws the members of a tangled crossing as circle chords; everything
/// else keeps its rotation and crossings.
pub fn untangle_one(g: &TopologicalGraph, x: &KCrossing) -> Result<TopologicalGraph, RedrawError> {
    if arrangement_view(g, x).common_face().is_some() {
        return Err(RedrawError::NotTangled);
    }
    if let Some(c) = g
        .crossings()
        .iter()
        .find(|c| x.contains(c.edge_a) != x.contains(c.edge_b))
    {
        return Err(RedrawError::InvariantViolation(format!(
            "member crosses a non-member: {}x{}",
            c.edge_a, c.edge_b
        )));
    }
    let plan = disk_plan(g, x);
    let mut last_err = None;
    for circle in [plan.circle.clone(), plan.circle.iter().rev().copied().collect()] {
        let chords = chord_crossings(g, x, &circle)?;
        let mut s = Sketch::from_graph(g);
        s.replace_crossings_within(&x.edges, chords);
        match s.to_graph() {
            Ok(h) => {
                check_untangled(g, &h, x)?;
                return Ok(h);
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap())
}

fn check_untangled(g: &TopologicalGraph, h: &TopologicalGraph, x: &KCrossing) -> Result<(), RedrawError> {
    let before = g.crossing_pairs();
    if !h.crossing_pairs().is_subset(&before) {
        return Err(RedrawError::InvariantViolation(
            "untangling created a crossing pair".into(),
        ));
    }
    if !analysis::is_simple(h).simple {
        return Err(RedrawError::InvariantViolation("untangling broke simplicity".into()));
    }
    let cg = analysis::crossing_graph(h);
    let still = x
        .edges
        .iter()
        .all(|&a| x.edges.iter().all(|&b| a == b || cg.crosses(a, b)));
    if still && arrangement_view(h, x).common_face().is_none() {
        return Err(RedrawError::InvariantViolation("crossing is still tangled".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct UntangleStats {
    pub iterations: usize,
    pub crossing_pairs_before: usize,
    pub crossing_pairs_after: usize,
}

/// Untangles until no tangled (k+1)-crossing remains, smallest first.
pub fn untangle_all(g: &TopologicalGraph, k: usize) -> Result<(TopologicalGraph, UntangleStats), RedrawError> {
    let mut cur = g.clone();
    let mut stats = UntangleStats {
        crossing_pairs_before: g.crossing_pairs().len(),
        ..Default::default()
    };
    let mut tangled = tangled_crossings(&cur, k)?;
    while let Some(x) = tangled.first() {
        let next = untangle_one(&cur, x)?;
        let remaining = tangled_crossings(&next, k)?;
        if remaining.len() >= tangled.len() {
            return Err(RedrawError::InvariantViolation(format!(
                "untangling {:?} did not reduce the tangled count {}",
                x.edges,
                tangled.len()
            )));
        }
        log::debug!("untangled {:?}", x.edges);
        stats.iterations += 1;
        cur = next;
        tangled = remaining;
    }
    stats.crossing_pairs_after = cur.crossing_pairs().len();
    Ok((cur, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{classify, find_k1_crossings, Tangle};
    use crate::fixtures;
    use crate::topo::same_labeled_graph;

    #[test]
    fn convex4_is_left_alone() {
        let g = fixtures::convex4();
        let (h, stats) = untangle_all(&g, 3).unwrap();
        assert_eq!(stats.iterations, 0);
        assert_eq!(h, g);
        let x = &find_k1_crossings(&g, 3).unwrap()[0];
        assert_eq!(untangle_one(&g, x), Err(RedrawError::NotTangled));
    }

    #[test]
    fn tangled_fixture_untangles_in_one_step() {
        let g = fixtures::tangled();
        let (h, stats) = untangle_all(&g, 3).unwrap();
        assert_eq!(stats.iterations, 1);
        assert!(h.crossing_pairs().is_subset(&g.crossing_pairs()));
        assert!(same_labeled_graph(&g, &h));
        for x in find_k1_crossings(&h, 3).unwrap() {
            assert_eq!(classify(&h, &x), Tangle::Untangled);
        }
    }

    #[test]
    fn nested_fixture_needs_two_steps() {
        let g = fixtures::nested_tangled();
        assert_eq!(tangled_crossings(&g, 3).unwrap().len(), 2);
        let (h, stats) = untangle_all(&g, 3).unwrap();
        assert_eq!(stats.iterations, 2);
        assert!(tangled_crossings(&h, 3).unwrap().is_empty());
    }

    #[test]
    fn interleaved_circle_keeps_all_pairs() {
        // Brute-force interleaving on the circle order 0,1,2,3,0',1',2',3'.
        let order = [0, 1, 2, 3, 0, 1, 2, 3];
        let pos = |e: usize, which: usize| order.iter().enumerate().filter(|(_, &x)| x == e).nth(which).unwrap().0;
        let mut pairs = 0;
        for a in 0..4 {
            for b in a + 1..4 {
                let (a0, a1) = (pos(a, 0), pos(a, 1));
                let inside = |p: usize| a0 < p && p < a1;
                if inside(pos(b, 0)) != inside(pos(b, 1)) {
                    pairs += 1;
                }
            }
        }
        assert_eq!(pairs, 6);
    }
}
