//! Planarization of a [`TopologicalGraph`]: nodes, darts, rotations, faces.
//!
//! Conventions: rotations are counter-clockwise lists of outgoing darts; the
//! face of a dart lies on its left; the successor of a dart along its face is
//! the outgoing dart clockwise-next to its twin at the head node.

use std::collections::BTreeMap;

use crate::topo::{Dart, EdgeId, Sign, TopologicalGraph, VertexId};

pub type DartId = usize;
pub type NodeId = usize;
pub type FaceId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Vertex(VertexId),
    /// Index into [`TopologicalGraph::crossings`].
    Crossing(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    /// Darts of the boundary walk, starting at the smallest dart.
    pub darts: Vec<Dart>,
    /// Real vertices on the boundary, in walk order (repeats removed).
    pub vertices: Vec<VertexId>,
    pub is_outer: bool,
}

#[derive(Debug, Clone)]
pub struct Planarization {
    nodes: Vec<NodeKind>,
    vertex_node: BTreeMap<VertexId, NodeId>,
    seg_base: BTreeMap<EdgeId, usize>,
    dart_info: Vec<Dart>,
    origin: Vec<NodeId>,
    rot_ccw: Vec<DartId>,
    rot_cw: Vec<DartId>,
    first_out: Vec<Option<DartId>>,
    face_of: Vec<FaceId>,
    faces: Vec<Vec<DartId>>,
}

impl Planarization {
    pub(crate) fn new(g: &TopologicalGraph) -> Self {
        let mut nodes = Vec::new();
        let mut vertex_node = BTreeMap::new();
        for v in g.vertex_ids() {
            vertex_node.insert(v, nodes.len());
            nodes.push(NodeKind::Vertex(v));
        }
        let crossing_base = nodes.len();
        for i in 0..g.crossings().len() {
            nodes.push(NodeKind::Crossing(i));
        }

        let mut seg_base = BTreeMap::new();
        let mut dart_info = Vec::new();
        for e in g.edge_ids() {
            seg_base.insert(e, dart_info.len() / 2);
            for s in 0..=g.crossing_count(e) {
                dart_info.push(Dart {
                    edge: e,
                    segment: s,
                    forward: true,
                });
                dart_info.push(Dart {
                    edge: e,
                    segment: s,
                    forward: false,
                });
            }
        }

        let dart_id = |d: Dart| -> DartId { 2 * (seg_base[&d.edge] + d.segment) + usize::from(!d.forward) };

        let mut origin = vec![0; dart_info.len()];
        for (i, d) in dart_info.iter().enumerate() {
            let edge = g.edge(d.edge);
            let seq = g.sequence(d.edge);
            // Start node of the segment in the forward direction.
            let fwd_start = if d.segment == 0 {
                vertex_node[&edge.tail]
            } else {
                crossing_base + seq[d.segment - 1]
            };
            let fwd_end = if d.segment == seq.len() {
                vertex_node[&edge.head]
            } else {
                crossing_base + seq[d.segment]
            };
            origin[i] = if d.forward { fwd_start } else { fwd_end };
        }

        let mut rot_ccw = vec![0; dart_info.len()];
        let mut rot_cw = vec![0; dart_info.len()];
        let mut first_out = vec![None; nodes.len()];
        let mut link = |ring: &[DartId], node: NodeId| {
            if ring.is_empty() {
                return;
            }
            first_out[node] = Some(ring[0]);
            for (i, &d) in ring.iter().enumerate() {
                let next = ring[(i + 1) % ring.len()];
                rot_ccw[d] = next;
                rot_cw[next] = d;
            }
        };

        for (&v, &node) in &vertex_node {
            let ring: Vec<DartId> = g
                .rotation(v)
                .iter()
                .map(|&e| {
                    let edge = g.edge(e);
                    if edge.tail == v {
                        dart_id(Dart {
                            edge: e,
                            segment: 0,
                            forward: true,
                        })
                    } else {
                        dart_id(Dart {
                            edge: e,
                            segment: g.crossing_count(e),
                            forward: false,
                        })
                    }
                })
                .collect();
            link(&ring, node);
        }
        for (i, c) in g.crossings().iter().enumerate() {
            let a_fwd = dart_id(Dart {
                edge: c.edge_a,
                segment: c.index_on_a + 1,
                forward: true,
            });
            let a_back = dart_id(Dart {
                edge: c.edge_a,
                segment: c.index_on_a,
                forward: false,
            });
            let b_fwd = dart_id(Dart {
                edge: c.edge_b,
                segment: c.index_on_b + 1,
                forward: true,
            });
            let b_back = dart_id(Dart {
                edge: c.edge_b,
                segment: c.index_on_b,
                forward: false,
            });
            let ring = match c.sign {
                Sign::Positive => [a_fwd, b_fwd, a_back, b_back],
                Sign::Negative => [a_fwd, b_back, a_back, b_fwd],
            };
            link(&ring, crossing_base + i);
        }

        let mut face_of = vec![usize::MAX; dart_info.len()];
        let mut faces = Vec::new();
        for start in 0..dart_info.len() {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = id;
                walk.push(d);
                d = rot_cw[d ^ 1];
                if d == start {
                    break;
                }
                if face_of[d] != usize::MAX {
                    // A broken rotation system; Euler will reject it.
                    break;
                }
            }
            faces.push(walk);
        }

        Planarization {
            nodes,
            vertex_node,
            seg_base,
            dart_info,
            origin,
            rot_ccw,
            rot_cw,
            first_out,
            face_of,
            faces,
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn segment_count(&self) -> usize {
        self.dart_info.len() / 2
    }

    pub fn face_count(&self) -> usize {
        if self.dart_info.is_empty() {
            1
        } else {
            self.faces.len()
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.node_count() as i64 - self.segment_count() as i64 + self.face_count() as i64
    }

    pub fn node(&self, n: NodeId) -> NodeKind {
        self.nodes[n]
    }

    pub fn vertex_node(&self, v: VertexId) -> NodeId {
        self.vertex_node[&v]
    }

    pub fn dart_count(&self) -> usize {
        self.dart_info.len()
    }

    pub fn dart(&self, d: DartId) -> Dart {
        self.dart_info[d]
    }

    pub fn dart_id(&self, d: Dart) -> DartId {
        2 * (self.seg_base[&d.edge] + d.segment) + usize::from(!d.forward)
    }

    pub fn twin(&self, d: DartId) -> DartId {
        d ^ 1
    }

    pub fn origin(&self, d: DartId) -> NodeId {
        self.origin[d]
    }

    pub fn head(&self, d: DartId) -> NodeId {
        self.origin[d ^ 1]
    }

    /// Next outgoing dart counter-clockwise around the origin.
    pub fn ccw_next(&self, d: DartId) -> DartId {
        self.rot_ccw[d]
    }

    /// Next outgoing dart clockwise around the origin.
    pub fn cw_next(&self, d: DartId) -> DartId {
        self.rot_cw[d]
    }

    pub fn face(&self, d: DartId) -> FaceId {
        self.face_of[d]
    }

    pub fn face_next(&self, d: DartId) -> DartId {
        self.rot_cw[d ^ 1]
    }

    pub fn face_darts(&self, f: FaceId) -> &[DartId] {
        &self.faces[f]
    }

    /// Outgoing darts of a node, counter-clockwise.
    pub fn outgoing(&self, n: NodeId) -> Vec<DartId> {
        let Some(first) = self.first_out[n] else {
            return Vec::new();
        };
        let mut out = vec![first];
        let mut d = self.rot_ccw[first];
        while d != first {
            out.push(d);
            d = self.rot_ccw[d];
        }
        out
    }

    /// The outgoing dart of edge `e` at vertex `v`.
    pub fn vertex_dart(&self, g: &TopologicalGraph, v: VertexId, e: EdgeId) -> DartId {
        let edge = g.edge(e);
        if edge.tail == v {
            self.dart_id(Dart {
                edge: e,
                segment: 0,
                forward: true,
            })
        } else {
            self.dart_id(Dart {
                edge: e,
                segment: g.crossing_count(e),
                forward: false,
            })
        }
    }

    /// Darts along edge `e` from vertex `from` over `count` segments.
    pub fn edge_path_from(&self, g: &TopologicalGraph, e: EdgeId, from: VertexId, count: usize) -> Vec<DartId> {
        let edge = g.edge(e);
        let c = g.crossing_count(e);
        (0..count)
            .map(|i| {
                if edge.tail == from {
                    self.dart_id(Dart {
                        edge: e,
                        segment: i,
                        forward: true,
                    })
                } else {
                    self.dart_id(Dart {
                        edge: e,
                        segment: c - i,
                        forward: false,
                    })
                }
            })
            .collect()
    }

    /// Faces as public records. `outer` marks the face of that dart.
    pub fn face_list(&self, outer: Option<Dart>) -> Vec<Face> {
        if self.dart_info.is_empty() {
            return vec![Face {
                id: 0,
                darts: Vec::new(),
                vertices: self
                    .nodes
                    .iter()
                    .filter_map(|n| match n {
                        NodeKind::Vertex(v) => Some(*v),
                        NodeKind::Crossing(_) => None,
                    })
                    .collect(),
                is_outer: true,
            }];
        }
        let outer_face = outer.map(|d| self.face(self.dart_id(d)));
        self.faces
            .iter()
            .enumerate()
            .map(|(id, walk)| {
                let mut vertices = Vec::new();
                for &d in walk {
                    if let NodeKind::Vertex(v) = self.nodes[self.origin[d]] {
                        if !vertices.contains(&v) {
                            vertices.push(v);
                        }
                    }
                }
                Face {
                    id,
                    darts: walk.iter().map(|&d| self.dart_info[d]).collect(),
                    vertices,
                    is_outer: outer_face == Some(id),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn every_dart_in_exactly_one_face() {
        for g in [fixtures::convex4(), fixtures::pentagram()] {
            let p = g.planarization();
            let mut count = vec![0; p.dart_count()];
            for f in 0..p.face_count() {
                for &d in p.face_darts(f) {
                    count[d] += 1;
                }
            }
            assert!(count.iter().all(|&c| c == 1));
            assert_eq!(p.euler_characteristic(), 2);
        }
    }

    #[test]
    fn crossing_nodes_have_degree_four() {
        let g = fixtures::convex4();
        let p = g.planarization();
        for n in 0..p.node_count() {
            if let NodeKind::Crossing(_) = p.node(n) {
                assert_eq!(p.outgoing(n).len(), 4);
            }
        }
    }

    #[test]
    fn exactly_one_outer_face_flagged() {
        let g = fixtures::convex4();
        let faces = g.faces();
        assert_eq!(faces.iter().filter(|f| f.is_outer).count(), 1);
    }
}
