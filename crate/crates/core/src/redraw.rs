//! Curve surgery on a planarization: draw a new curve for an edge as a
//! sequence of crossed darts, then swap it in for the old curve.
//!
//! A route starts in the corner after a given edge (counter-clockwise) at its
//! tail vertex, crosses darts of the current planarization one by one, and
//! ends in the corner after a given edge at its head vertex. Crossing dart `d`
//! moves the curve from `face(d)` to `face(twin d)`.

use std::collections::BTreeMap;

use crate::error::RedrawError;
use crate::planar::{DartId, FaceId, Planarization};
use crate::topo::{Crossing, Dart, Edge, EdgeId, Sign, TopologicalGraph, VertexId};

/// Insertion point in the rotation at a vertex: directly counter-clockwise
/// after `after`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corner {
    pub vertex: VertexId,
    pub after: EdgeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Route {
    pub tail: Corner,
    pub head: Corner,
    /// Crossed darts, in order from tail to head.
    pub darts: Vec<Dart>,
}

impl Route {
    pub fn reversed(&self) -> Route {
        Route {
            tail: self.head,
            head: self.tail,
            darts: self
                .darts
                .iter()
                .rev()
                .map(|d| Dart {
                    forward: !d.forward,
                    ..*d
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Builds a [`Route`] step by step, checking that every crossed dart lies on
/// the face the curve is currently in.
pub struct RouteBuilder<'a> {
    g: &'a TopologicalGraph,
    p: &'a Planarization,
    tail: Corner,
    steps: Vec<DartId>,
    face: FaceId,
}

impl<'a> RouteBuilder<'a> {
    pub fn new(g: &'a TopologicalGraph, p: &'a Planarization, tail: Corner) -> Self {
        let o = p.vertex_dart(g, tail.vertex, tail.after);
        RouteBuilder {
            g,
            p,
            tail,
            steps: Vec::new(),
            face: p.face(o),
        }
    }

    /// Number of darts crossed so far.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn face(&self) -> FaceId {
        self.face
    }

    pub fn cross(&mut self, d: DartId) -> Result<(), RedrawError> {
        if self.p.face(d) != self.face {
            return Err(RedrawError::InvariantViolation(format!(
                "route crosses {} from face {} but is in face {}",
                self.p.dart(d).token(),
                self.p.face(d),
                self.face
            )));
        }
        self.steps.push(d);
        self.face = self.p.face(self.p.twin(d));
        Ok(())
    }

    /// Runs alongside a dart path on one side, crossing every branch that
    /// leaves the path on that side. The curve must already be on that side
    /// of the first dart.
    pub fn follow(&mut self, path: &[DartId], side: Side) -> Result<(), RedrawError> {
        let Some(&first) = path.first() else {
            return Ok(());
        };
        let expect = match side {
            Side::Left => self.p.face(first),
            Side::Right => self.p.face(self.p.twin(first)),
        };
        if expect != self.face {
            return Err(RedrawError::InvariantViolation(format!(
                "follow of {} starts on the wrong side",
                self.p.dart(first).token()
            )));
        }
        for w in path.windows(2) {
            let back = self.p.twin(w[0]);
            let fwd = w[1];
            if self.p.origin(fwd) != self.p.origin(back) {
                return Err(RedrawError::InvariantViolation("follow path is not contiguous".into()));
            }
            match side {
                Side::Left => {
                    let mut o = self.p.cw_next(back);
                    while o != fwd {
                        self.cross(o)?;
                        o = self.p.cw_next(o);
                    }
                }
                Side::Right => {
                    let mut o = self.p.ccw_next(back);
                    while o != fwd {
                        self.cross(self.p.twin(o))?;
                        o = self.p.ccw_next(o);
                    }
                }
            }
        }
        Ok(())
    }

    /// Ends the route in the corner after `after` at `vertex`.
    pub fn finish(self, head: Corner) -> Result<Route, RedrawError> {
        let o = self.p.vertex_dart(self.g, head.vertex, head.after);
        if self.p.face(o) != self.face {
            return Err(RedrawError::InvariantViolation(format!(
                "route ends in face {} but the corner at {} lies in face {}",
                self.face,
                head.vertex,
                self.p.face(o)
            )));
        }
        Ok(Route {
            tail: self.tail,
            head,
            darts: self.steps.iter().map(|&d| self.p.dart(d)).collect(),
        })
    }
}

/// Editable copy of a drawing.
#[derive(Debug, Clone)]
pub struct Sketch {
    edges: BTreeMap<EdgeId, Edge>,
    rotation: BTreeMap<VertexId, Vec<EdgeId>>,
    crossings: Vec<Crossing>,
}

impl Sketch {
    pub fn from_graph(g: &TopologicalGraph) -> Self {
        Sketch {
            edges: g.edges().map(|e| (e.id, *e)).collect(),
            rotation: g.rotations().clone(),
            crossings: g.crossings().to_vec(),
        }
    }

    pub fn to_graph(&self) -> Result<TopologicalGraph, RedrawError> {
        Ok(TopologicalGraph::build(
            self.rotation.keys().copied(),
            self.edges.values().copied(),
            self.crossings.iter().copied(),
            self.rotation.clone(),
            None,
        )?)
    }

    fn insert_after(&mut self, c: Corner, e: EdgeId) -> Result<(), RedrawError> {
        let rot = self.rotation.get_mut(&c.vertex).expect("corner vertex exists");
        let pos = rot
            .iter()
            .position(|&x| x == c.after)
            .ok_or_else(|| RedrawError::InvariantViolation(format!("{} not at {}", c.after, c.vertex)))?;
        rot.insert(pos + 1, e);
        Ok(())
    }

    /// Adds edge `id` drawn along `route`. Darts of the route refer to the
    /// sketch's current drawing. A segment crossed more than once takes its
    /// new crossings in the order given by `order` (route positions, from the
    /// segment's tail end); by default in route order.
    pub fn insert_route(&mut self, id: EdgeId, route: &Route) -> Result<(), RedrawError> {
        self.insert_route_ordered(id, route, &BTreeMap::new())
    }

    fn insert_route_ordered(
        &mut self,
        id: EdgeId,
        route: &Route,
        order: &BTreeMap<(EdgeId, usize), Vec<usize>>,
    ) -> Result<(), RedrawError> {
        if self.edges.contains_key(&id) {
            return Err(RedrawError::InvariantViolation(format!("edge {id} already present")));
        }
        let mut rank = vec![0; route.darts.len()];
        for list in order.values() {
            for (r, &k) in list.iter().enumerate() {
                rank[k] = r;
            }
        }

        // Re-index crossings on every crossed edge: old index i gets key
        // 2i+1, a new crossing inside segment s gets key 2s.
        let mut keys: BTreeMap<EdgeId, Vec<(usize, usize, Slot)>> = BTreeMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            keys.entry(c.edge_a)
                .or_default()
                .push((2 * c.index_on_a + 1, 0, Slot::Old(ci, true)));
            keys.entry(c.edge_b)
                .or_default()
                .push((2 * c.index_on_b + 1, 0, Slot::Old(ci, false)));
        }
        for (k, d) in route.darts.iter().enumerate() {
            keys.entry(d.edge)
                .or_default()
                .push((2 * d.segment, rank[k], Slot::New(k)));
        }
        let mut new_index_on_g = vec![0; route.darts.len()];
        for list in keys.values_mut() {
            list.sort();
            for (pos, (_, _, slot)) in list.iter().enumerate() {
                match *slot {
                    Slot::Old(ci, true) => self.crossings[ci].index_on_a = pos,
                    Slot::Old(ci, false) => self.crossings[ci].index_on_b = pos,
                    Slot::New(k) => new_index_on_g[k] = pos,
                }
            }
        }
        for (k, d) in route.darts.iter().enumerate() {
            // The new curve passes from the left of d to its right.
            let sign = if d.forward { Sign::Negative } else { Sign::Positive };
            self.crossings.push(Crossing {
                edge_a: d.edge,
                edge_b: id,
                index_on_a: new_index_on_g[k],
                index_on_b: k,
                sign,
            });
        }

        self.edges.insert(
            id,
            Edge {
                id,
                tail: route.tail.vertex,
                head: route.head.vertex,
            },
        );
        self.insert_after(route.tail, id)?;
        self.insert_after(route.head, id)?;
        Ok(())
    }

    pub fn remove_edge(&mut self, e: EdgeId) {
        self.edges.remove(&e);
        for rot in self.rotation.values_mut() {
            rot.retain(|&x| x != e);
        }
        self.crossings.retain(|c| !c.involves(e));
        self.reindex();
    }

    /// Renames edge `from` to `to`; `to` must be free.
    pub fn rename(&mut self, from: EdgeId, to: EdgeId) {
        let mut edge = self.edges.remove(&from).expect("renamed edge exists");
        edge.id = to;
        self.edges.insert(to, edge);
        for rot in self.rotation.values_mut() {
            for x in rot.iter_mut() {
                if *x == from {
                    *x = to;
                }
            }
        }
        for c in &mut self.crossings {
            if c.edge_a == from {
                c.edge_a = to;
            }
            if c.edge_b == from {
                c.edge_b = to;
            }
        }
    }

    /// Replaces every crossing between edges of `set` by `new`; crossings of
    /// `set` edges with other edges must not exist.
    pub fn replace_crossings_within(&mut self, set: &[EdgeId], new: Vec<Crossing>) {
        self.crossings
            .retain(|c| !(set.contains(&c.edge_a) && set.contains(&c.edge_b)));
        self.crossings.extend(new);
    }

    /// Compacts crossing indices along each edge after removals.
    fn reindex(&mut self) {
        let mut keys: BTreeMap<EdgeId, Vec<(usize, usize, bool)>> = BTreeMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            keys.entry(c.edge_a).or_default().push((c.index_on_a, ci, true));
            keys.entry(c.edge_b).or_default().push((c.index_on_b, ci, false));
        }
        for list in keys.values_mut() {
            list.sort();
            for (pos, &(_, ci, is_a)) in list.iter().enumerate() {
                if is_a {
                    self.crossings[ci].index_on_a = pos;
                } else {
                    self.crossings[ci].index_on_b = pos;
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    Old(usize, bool),
    New(usize),
}

/// Redraws edge `e` along `route` (drawn in the current drawing of `g`,
/// with the route's endpoints equal to `e`'s endpoints in either order).
pub fn redraw_edge(g: &TopologicalGraph, e: EdgeId, route: &Route) -> Result<TopologicalGraph, RedrawError> {
    let edge = *g.edge(e);
    let route = if route.tail.vertex == edge.tail && route.head.vertex == edge.head {
        route.clone()
    } else if route.tail.vertex == edge.head && route.head.vertex == edge.tail {
        route.reversed()
    } else {
        return Err(RedrawError::InvariantViolation(format!(
            "route endpoints do not match {e}"
        )));
    };
    if route.darts.iter().any(|d| d.edge == e) {
        return Err(RedrawError::InvariantViolation(format!(
            "route crosses the redrawn edge {e}"
        )));
    }
    replace_edge(g, e, &route)
}

/// Swaps in `route` (oriented like `e`) for edge `e`. Crossings of the route
/// with the old curve of `e` vanish with it.
pub(crate) fn replace_edge(g: &TopologicalGraph, e: EdgeId, route: &Route) -> Result<TopologicalGraph, RedrawError> {
    let tmp = g.next_edge_id();
    let mut groups: BTreeMap<(EdgeId, usize), Vec<usize>> = BTreeMap::new();
    for (k, d) in route.darts.iter().enumerate() {
        groups.entry((d.edge, d.segment)).or_default().push(k);
    }
    groups.retain(|_, v| v.len() > 1);
    let options: Vec<Vec<Vec<usize>>> = groups.values().map(|v| permutations(v)).collect();
    let total: usize = options.iter().map(Vec::len).product();
    if total > MAX_ORDERS {
        return Err(RedrawError::InvariantViolation(format!(
            "route revisits segments too often ({total} orders)"
        )));
    }
    let mut last = None;
    for combo in 0..total {
        let mut order = BTreeMap::new();
        let mut rest = combo;
        for (key, opts) in groups.keys().zip(&options) {
            order.insert(*key, opts[rest % opts.len()].clone());
            rest /= opts.len();
        }
        let mut s = Sketch::from_graph(g);
        s.insert_route_ordered(tmp, route, &order)?;
        s.remove_edge(e);
        s.rename(tmp, e);
        match s.to_graph() {
            Ok(h) => return Ok(h),
            Err(err) => last = Some(err),
        }
    }
    Err(last.expect("at least one order"))
}

/// Cap on the crossing orders tried for a route revisiting segments.
const MAX_ORDERS: usize = 720;

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Darts along edge `e` leaving vertex `from`, up to and including segment
/// offset `count - 1` counted from `from`.
pub fn tip_path(g: &TopologicalGraph, p: &Planarization, e: EdgeId, from: VertexId, count: usize) -> Vec<DartId> {
    p.edge_path_from(g, e, from, count)
}

pub fn reversed_path(p: &Planarization, path: &[DartId]) -> Vec<DartId> {
    path.iter().rev().map(|&d| p.twin(d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn redraw_along_same_curve_is_identity() {
        // Route a copy of e0 on its left: it must cross what e0 crosses.
        let g = fixtures::convex4();
        let p = g.planarization();
        let e = EdgeId(0);
        let edge = *g.edge(e);
        let path = p.edge_path_from(&g, e, edge.tail, g.crossing_count(e) + 1);
        let mut b = RouteBuilder::new(
            &g,
            &p,
            Corner {
                vertex: edge.tail,
                after: e,
            },
        );
        b.follow(&path, Side::Left).unwrap();
        let head_out = p.vertex_dart(&g, edge.head, e);
        let route = b
            .finish(Corner {
                vertex: edge.head,
                after: p.dart(p.cw_next(head_out)).edge,
            })
            .unwrap();
        let h = redraw_edge(&g, e, &route).unwrap();
        assert_eq!(h.crossing_pairs(), g.crossing_pairs());
        assert_eq!(h.planarization().face_count(), g.planarization().face_count());
    }

    #[test]
    fn route_with_wrong_face_is_rejected() {
        let g = fixtures::convex4();
        let p = g.planarization();
        let mut b = RouteBuilder::new(
            &g,
            &p,
            Corner {
                vertex: VertexId(0),
                after: EdgeId(0),
            },
        );
        let far = (0..p.dart_count()).find(|&d| p.face(d) != b.face()).unwrap();
        assert!(b.cross(far).is_err());
    }

    #[test]
    fn reversed_route_twins_darts() {
        let r = Route {
            tail: Corner {
                vertex: VertexId(0),
                after: EdgeId(1),
            },
            head: Corner {
                vertex: VertexId(2),
                after: EdgeId(3),
            },
            darts: vec![Dart {
                edge: EdgeId(4),
                segment: 1,
                forward: true,
            }],
        };
        let back = r.reversed();
        assert_eq!(back.tail.vertex, VertexId(2));
        assert!(!back.darts[0].forward);
        assert_eq!(back.reversed(), r);
    }
}
