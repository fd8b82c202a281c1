//! Combinatorial model of a topological graph.
//!
//! A drawing is stored as its planarization: every crossing becomes a
//! degree-4 node, every edge is cut into segments by its crossings, and the
//! embedding is fixed by the counter-clockwise rotation at each vertex plus
//! the sign of each crossing. No coordinates are kept here.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::BuildError;
use crate::planar::Planarization;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
}

impl Edge {
    pub fn new(id: u32, tail: u32, head: u32) -> Self {
        Edge {
            id: EdgeId(id),
            tail: VertexId(tail),
            head: VertexId(head),
        }
    }

    pub fn is_incident(&self, v: VertexId) -> bool {
        self.tail == v || self.head == v
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.is_incident(other.tail) || self.is_incident(other.head)
    }

    /// The endpoint that is not `v`.
    pub fn opposite(&self, v: VertexId) -> VertexId {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

/// Orientation of `edge_b` relative to `edge_a` at a crossing.
///
/// `Positive` means that, travelling `edge_a` from tail to head, `edge_b`
/// passes from the right side to the left side (its head ends up on the left).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edge_a: EdgeId,
    pub edge_b: EdgeId,
    pub index_on_a: usize,
    pub index_on_b: usize,
    pub sign: Sign,
}

impl Crossing {
    pub fn involves(&self, e: EdgeId) -> bool {
        self.edge_a == e || self.edge_b == e
    }

    pub fn other(&self, e: EdgeId) -> EdgeId {
        if self.edge_a == e {
            self.edge_b
        } else {
            self.edge_a
        }
    }

    pub fn pair(&self) -> (EdgeId, EdgeId) {
        (self.edge_a, self.edge_b)
    }
}

/// A directed segment of the planarization: segment `segment` of `edge`
/// (counted from the tail, `0..=crossings`), traversed tail-to-head when
/// `forward`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub edge: EdgeId,
    pub segment: usize,
    pub forward: bool,
}

impl Dart {
    pub fn token(&self) -> String {
        format!(
            "{}:{}:{}",
            self.edge.0,
            self.segment,
            if self.forward { "f" } else { "r" }
        )
    }

    pub fn parse_token(s: &str) -> Option<Dart> {
        let mut it = s.split(':');
        let edge = it.next()?.parse().ok()?;
        let segment = it.next()?.parse().ok()?;
        let forward = match it.next()? {
            "f" => true,
            "r" => false,
            _ => return None,
        };
        if it.next().is_some() {
            return None;
        }
        Some(Dart {
            edge: EdgeId(edge),
            segment,
            forward,
        })
    }
}

/// The drawing-free part of a topological graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractGraph {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<(VertexId, VertexId)>,
}

/// A validated simple-or-not topological graph on the sphere with a marked
/// outer face. Immutable; transformations build new values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologicalGraph {
    edges: BTreeMap<EdgeId, Edge>,
    rotation: BTreeMap<VertexId, Vec<EdgeId>>,
    crossings: Vec<Crossing>,
    sequences: BTreeMap<EdgeId, Vec<usize>>,
    outer: Option<Dart>,
}

impl TopologicalGraph {
    /// Validates raw components and assembles a graph.
    ///
    /// Crossings may name their edges in either order; they are normalised so
    /// that `edge_a < edge_b` and sorted by `(edge_a, index_on_a)`.
    pub fn build(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = Edge>,
        crossings: impl IntoIterator<Item = Crossing>,
        rotations: BTreeMap<VertexId, Vec<EdgeId>>,
        outer_face: Option<Dart>,
    ) -> Result<Self, BuildError> {
        let mut rotation: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
        for v in vertices {
            if rotation.insert(v, Vec::new()).is_some() {
                return Err(BuildError::DuplicateVertex(v));
            }
        }

        let mut edge_map = BTreeMap::new();
        let mut pairs: BTreeMap<(VertexId, VertexId), EdgeId> = BTreeMap::new();
        for e in edges {
            for v in [e.tail, e.head] {
                if !rotation.contains_key(&v) {
                    return Err(BuildError::UnknownVertex { edge: e.id, vertex: v });
                }
            }
            if e.tail == e.head {
                return Err(BuildError::SelfLoop(e.id));
            }
            let key = (e.tail.min(e.head), e.tail.max(e.head));
            if let Some(&prev) = pairs.get(&key) {
                return Err(BuildError::ParallelEdge(prev, e.id));
            }
            pairs.insert(key, e.id);
            if edge_map.insert(e.id, e).is_some() {
                return Err(BuildError::DuplicateEdge(e.id));
            }
        }

        // Rotation: must be a permutation of incident edges.
        let mut incident: BTreeMap<VertexId, BTreeSet<EdgeId>> =
            rotation.keys().map(|&v| (v, BTreeSet::new())).collect();
        for e in edge_map.values() {
            incident.get_mut(&e.tail).unwrap().insert(e.id);
            incident.get_mut(&e.head).unwrap().insert(e.id);
        }
        for (v, inc) in &incident {
            let given = rotations.get(v).cloned().unwrap_or_default();
            let given_set: BTreeSet<EdgeId> = given.iter().copied().collect();
            if given_set.len() != given.len() || &given_set != inc {
                return Err(BuildError::BadRotation { vertex: *v });
            }
            rotation.insert(*v, given);
        }
        if let Some(v) = rotations.keys().find(|v| !rotation.contains_key(v)) {
            return Err(BuildError::BadRotation { vertex: *v });
        }

        // Crossings and per-edge sequences.
        let mut list: Vec<Crossing> = Vec::new();
        for (i, c) in crossings_normalised(crossings).into_iter().enumerate() {
            if c.edge_a == c.edge_b {
                return Err(BuildError::SelfCrossing(i));
            }
            for e in [c.edge_a, c.edge_b] {
                if !edge_map.contains_key(&e) {
                    return Err(BuildError::UnknownEdge(e));
                }
            }
            list.push(c);
        }
        let mut crossings = list;
        crossings.sort_by_key(|c| (c.edge_a, c.index_on_a, c.edge_b, c.index_on_b));

        let mut slots: BTreeMap<EdgeId, Vec<Option<usize>>> = BTreeMap::new();
        let mut counts: BTreeMap<EdgeId, usize> = BTreeMap::new();
        for c in &crossings {
            *counts.entry(c.edge_a).or_default() += 1;
            *counts.entry(c.edge_b).or_default() += 1;
        }
        for (&e, &n) in &counts {
            slots.insert(e, vec![None; n]);
        }
        for (i, c) in crossings.iter().enumerate() {
            for (e, idx) in [(c.edge_a, c.index_on_a), (c.edge_b, c.index_on_b)] {
                let seq = slots.get_mut(&e).unwrap();
                let n = seq.len();
                match seq.get_mut(idx) {
                    None => {
                        return Err(BuildError::InconsistentCrossingIndex {
                            edge: e,
                            detail: format!("index {idx} out of range 0..{n}"),
                        })
                    }
                    Some(Some(_)) => {
                        return Err(BuildError::InconsistentCrossingIndex {
                            edge: e,
                            detail: format!("index {idx} used twice"),
                        })
                    }
                    Some(slot) => *slot = Some(i),
                }
            }
        }
        let mut sequences: BTreeMap<EdgeId, Vec<usize>> = edge_map.keys().map(|&e| (e, Vec::new())).collect();
        for (e, seq) in slots {
            sequences.insert(e, seq.into_iter().map(Option::unwrap).collect());
        }

        check_drawing_connected(&rotation, &edge_map, &crossings)?;

        let mut g = TopologicalGraph {
            edges: edge_map,
            rotation,
            crossings,
            sequences,
            outer: None,
        };

        let plan = Planarization::new(&g);
        let euler = plan.euler_characteristic();
        if euler != 2 {
            return Err(BuildError::NonPlanarRotationSystem { euler });
        }

        g.outer = match outer_face {
            Some(d) => {
                let ok = g.sequences.get(&d.edge).is_some_and(|seq| d.segment <= seq.len());
                if !ok {
                    return Err(BuildError::BadOuterFace(d.token()));
                }
                Some(d)
            }
            None => g.default_outer(),
        };
        Ok(g)
    }

    fn default_outer(&self) -> Option<Dart> {
        self.edges.keys().next().map(|&edge| Dart {
            edge,
            segment: 0,
            forward: true,
        })
    }

    /// Same drawing with the outer face re-marked.
    pub fn with_outer_face(&self, outer: Dart) -> Result<Self, BuildError> {
        let ok = self
            .sequences
            .get(&outer.edge)
            .is_some_and(|seq| outer.segment <= seq.len());
        if !ok {
            return Err(BuildError::BadOuterFace(outer.token()));
        }
        let mut g = self.clone();
        g.outer = Some(outer);
        Ok(g)
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.rotation.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.values()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[&e]
    }

    pub fn try_edge(&self, e: EdgeId) -> Option<&Edge> {
        self.edges.get(&e)
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.rotation.contains_key(&v)
    }

    /// Counter-clockwise order of the edges around `v`.
    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        &self.rotation[&v]
    }

    pub fn rotations(&self) -> &BTreeMap<VertexId, Vec<EdgeId>> {
        &self.rotation
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, i: usize) -> &Crossing {
        &self.crossings[i]
    }

    /// Crossing indices along `e`, ordered from its tail.
    pub fn sequence(&self, e: EdgeId) -> &[usize] {
        &self.sequences[&e]
    }

    /// Edges crossing `e`, in order from its tail (with repetition).
    pub fn crossing_partners(&self, e: EdgeId) -> Vec<EdgeId> {
        self.sequences[&e].iter().map(|&i| self.crossings[i].other(e)).collect()
    }

    pub fn crossing_count(&self, e: EdgeId) -> usize {
        self.sequences[&e].len()
    }

    pub fn outer_face(&self) -> Option<Dart> {
        self.outer
    }

    pub fn planarization(&self) -> Planarization {
        Planarization::new(self)
    }

    /// Faces of the planarization; the face containing the outer dart is
    /// flagged.
    pub fn faces(&self) -> Vec<crate::planar::Face> {
        self.planarization().face_list(self.outer)
    }

    pub fn abstract_graph(&self) -> AbstractGraph {
        AbstractGraph {
            vertices: self.rotation.keys().copied().collect(),
            edges: self
                .edges
                .values()
                .map(|e| (e.tail.min(e.head), e.tail.max(e.head)))
                .collect(),
        }
    }

    /// Set of unordered crossing pairs (multiplicity dropped).
    pub fn crossing_pairs(&self) -> BTreeSet<(EdgeId, EdgeId)> {
        self.crossings.iter().map(Crossing::pair).collect()
    }

    /// Edges incident to `v`, in rotation order.
    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        self.rotation(v)
    }

    /// All edge ids one past the largest, for temporaries.
    pub(crate) fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.edges.keys().next_back().map_or(0, |e| e.0 + 1))
    }
}

/// The union of all curves must be connected: edges are linked when they
/// share an endpoint or cross.
fn check_drawing_connected(
    rotation: &BTreeMap<VertexId, Vec<EdgeId>>,
    edges: &BTreeMap<EdgeId, Edge>,
    crossings: &[Crossing],
) -> Result<(), BuildError> {
    let Some(&start) = rotation.keys().next() else {
        return Ok(());
    };
    let mut crossers: BTreeMap<EdgeId, Vec<EdgeId>> = BTreeMap::new();
    for c in crossings {
        crossers.entry(c.edge_a).or_default().push(c.edge_b);
        crossers.entry(c.edge_b).or_default().push(c.edge_a);
    }
    let mut seen_v = BTreeSet::from([start]);
    let mut seen_e = BTreeSet::new();
    let mut queue: VecDeque<EdgeId> = rotation[&start].iter().copied().collect();
    seen_e.extend(queue.iter().copied());
    while let Some(e) = queue.pop_front() {
        let edge = &edges[&e];
        for v in [edge.tail, edge.head] {
            if seen_v.insert(v) {
                for &f in &rotation[&v] {
                    if seen_e.insert(f) {
                        queue.push_back(f);
                    }
                }
            }
        }
        for &f in crossers.get(&e).into_iter().flatten() {
            if seen_e.insert(f) {
                queue.push_back(f);
            }
        }
    }
    match rotation.keys().find(|v| !seen_v.contains(v)) {
        Some(&v) => Err(BuildError::Disconnected(v)),
        None => Ok(()),
    }
}

fn crossings_normalised(raw: impl IntoIterator<Item = Crossing>) -> Vec<Crossing> {
    raw.into_iter()
        .map(|c| {
            if c.edge_a > c.edge_b {
                Crossing {
                    edge_a: c.edge_b,
                    edge_b: c.edge_a,
                    index_on_a: c.index_on_b,
                    index_on_b: c.index_on_a,
                    sign: c.sign.flip(),
                }
            } else {
                c
            }
        })
        .collect()
}

/// Labeled-graph equality: same vertex ids and same unordered edge set.
pub fn same_labeled_graph(a: &TopologicalGraph, b: &TopologicalGraph) -> bool {
    a.abstract_graph() == b.abstract_graph()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn raw(
        n: u32,
        edges: &[(u32, u32)],
        crossings: &[(u32, u32, usize, usize, i8)],
    ) -> Result<TopologicalGraph, BuildError> {
        let es: Vec<Edge> = edges
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| Edge::new(i as u32, a, b))
            .collect();
        let mut rot: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
        for v in 0..n {
            rot.insert(VertexId(v), Vec::new());
        }
        for e in &es {
            rot.get_mut(&e.tail).unwrap().push(e.id);
            rot.get_mut(&e.head).unwrap().push(e.id);
        }
        let xs = crossings.iter().map(|&(a, b, ia, ib, s)| Crossing {
            edge_a: EdgeId(a),
            edge_b: EdgeId(b),
            index_on_a: ia,
            index_on_b: ib,
            sign: Sign::from_i8(s).unwrap(),
        });
        TopologicalGraph::build((0..n).map(VertexId), es, xs, rot, None)
    }

    #[test]
    fn single_crossing_passes_euler() {
        let g = raw(4, &[(0, 1), (2, 3)], &[(0, 1, 0, 0, 1)]).unwrap();
        let p = g.planarization();
        assert_eq!(p.node_count(), 5);
        assert_eq!(p.segment_count(), 4);
        assert_eq!(p.face_count(), 1);
    }

    #[test]
    fn rejects_self_loop_and_parallel() {
        assert!(matches!(raw(2, &[(0, 0)], &[]), Err(BuildError::SelfLoop(_))));
        assert!(matches!(
            raw(2, &[(0, 1), (1, 0)], &[]),
            Err(BuildError::ParallelEdge(..))
        ));
    }

    #[test]
    fn rejects_disconnected() {
        assert!(matches!(
            raw(4, &[(0, 1), (2, 3)], &[]),
            Err(BuildError::Disconnected(_))
        ));
    }

    #[test]
    fn rejects_duplicate_crossing_index() {
        let r = raw(4, &[(0, 1), (2, 3)], &[(0, 1, 0, 0, 1), (0, 1, 0, 1, 1)]);
        assert!(matches!(r, Err(BuildError::InconsistentCrossingIndex { .. })));
    }

    #[test]
    fn rejects_bad_outer_dart() {
        let g = raw(2, &[(0, 1)], &[]).unwrap();
        let bad = Dart {
            edge: EdgeId(0),
            segment: 3,
            forward: true,
        };
        assert!(matches!(g.with_outer_face(bad), Err(BuildError::BadOuterFace(_))));
    }

    #[test]
    fn single_edge_has_one_face() {
        let g = raw(2, &[(0, 1)], &[]).unwrap();
        let faces = g.faces();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].vertices, vec![VertexId(0), VertexId(1)]);
        assert!(faces[0].is_outer);
    }

    #[test]
    fn convex4_face_count() {
        // 14 nodes, 16 segments: F = 2 - 14 + 16 = 4.
        let g = fixtures::convex4();
        let p = g.planarization();
        assert_eq!(p.node_count(), 14);
        assert_eq!(p.segment_count(), 16);
        assert_eq!(p.face_count(), 4);
        assert_eq!(g.crossings().len(), 6);
    }

    #[test]
    fn convex4_abstract_graph() {
        let a = fixtures::convex4().abstract_graph();
        assert_eq!(a.vertices.len(), 8);
        let expected: BTreeSet<_> = (0..4).map(|i| (VertexId(i), VertexId(i + 4))).collect();
        assert_eq!(a.edges, expected);
    }

    #[test]
    fn labeled_equality_ignores_drawing() {
        let g = fixtures::convex4();
        let other = fixtures::convex_chords_at(&[1, 0, 2, 3, 4, 5, 6, 7], &fixtures::CONVEX4_CHORDS);
        assert!(same_labeled_graph(&g, &other));
        assert!(!same_labeled_graph(&g, &fixtures::pentagram()));
    }

    #[test]
    fn crossing_sequence_total_is_twice_crossings() {
        for g in [fixtures::convex4(), fixtures::pentagram()] {
            let total: usize = g.edge_ids().map(|e| g.crossing_count(e)).sum();
            assert_eq!(total, 2 * g.crossings().len());
        }
    }

    #[test]
    fn dart_token_roundtrip() {
        let d = Dart {
            edge: EdgeId(7),
            segment: 2,
            forward: false,
        };
        assert_eq!(Dart::parse_token(&d.token()), Some(d));
        assert_eq!(Dart::parse_token("1:2"), None);
    }
}
