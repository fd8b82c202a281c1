//! Crossing-structure queries: simplicity, k-planarity, (k+1)-crossings,
//! tangle classification, quasi-planarity and the disk around a crossing.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::AnalysisError;
use crate::planar::Face;
use crate::topo::{Crossing, Dart, Edge, EdgeId, TopologicalGraph, VertexId};

/// Pairwise crossing multiplicities between edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrossingGraph {
    adj: BTreeMap<EdgeId, BTreeMap<EdgeId, usize>>,
}

impl CrossingGraph {
    pub fn nodes(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.adj.keys().copied()
    }

    pub fn multiplicity(&self, a: EdgeId, b: EdgeId) -> usize {
        self.adj.get(&a).and_then(|m| m.get(&b)).copied().unwrap_or(0)
    }

    pub fn neighbors(&self, e: EdgeId) -> impl Iterator<Item = EdgeId> + '_ {
        self.adj.get(&e).into_iter().flat_map(|m| m.keys().copied())
    }

    pub fn degree(&self, e: EdgeId) -> usize {
        self.adj.get(&e).map_or(0, BTreeMap::len)
    }

    pub fn crosses(&self, a: EdgeId, b: EdgeId) -> bool {
        self.multiplicity(a, b) > 0
    }

    /// Unordered pairs `(a, b)` with `a < b` and their multiplicity.
    pub fn pairs(&self) -> Vec<(EdgeId, EdgeId, usize)> {
        let mut out = Vec::new();
        for (&a, m) in &self.adj {
            for (&b, &n) in m {
                if a < b {
                    out.push((a, b, n));
                }
            }
        }
        out
    }

    /// Connected components with at least one crossing, each sorted.
    pub fn components(&self) -> Vec<Vec<EdgeId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &s in self.adj.keys() {
            if self.degree(s) == 0 || !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(e) = stack.pop() {
                for f in self.neighbors(e) {
                    if seen.insert(f) {
                        comp.push(f);
                        stack.push(f);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }
}

pub fn crossing_graph(g: &TopologicalGraph) -> CrossingGraph {
    let mut adj: BTreeMap<EdgeId, BTreeMap<EdgeId, usize>> = g.edge_ids().map(|e| (e, BTreeMap::new())).collect();
    for c in g.crossings() {
        *adj.get_mut(&c.edge_a).unwrap().entry(c.edge_b).or_default() += 1;
        *adj.get_mut(&c.edge_b).unwrap().entry(c.edge_a).or_default() += 1;
    }
    CrossingGraph { adj }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Violation {
    /// The two edges cross `count` times.
    DoubleCrossing { a: EdgeId, b: EdgeId, count: usize },
    /// The two edges share `vertex` and cross.
    AdjacentCrossing { a: EdgeId, b: EdgeId, vertex: VertexId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityReport {
    pub simple: bool,
    pub violations: Vec<Violation>,
}

pub fn is_simple(g: &TopologicalGraph) -> SimplicityReport {
    let cg = crossing_graph(g);
    let mut violations = Vec::new();
    for (a, b, n) in cg.pairs() {
        if n > 1 {
            violations.push(Violation::DoubleCrossing { a, b, count: n });
        }
        let (ea, eb) = (g.edge(a), g.edge(b));
        for v in [ea.tail, ea.head] {
            if eb.is_incident(v) {
                violations.push(Violation::AdjacentCrossing { a, b, vertex: v });
            }
        }
    }
    SimplicityReport {
        simple: violations.is_empty(),
        violations,
    }
}

/// Every pair of edges crosses at most once.
pub fn is_almost_simple(g: &TopologicalGraph) -> bool {
    crossing_graph(g).pairs().iter().all(|&(_, _, n)| n <= 1)
}

/// `(every edge has at most k crossings, largest crossing count)`.
pub fn is_k_planar(g: &TopologicalGraph, k: usize) -> (bool, usize) {
    let max = g.edge_ids().map(|e| g.crossing_count(e)).max().unwrap_or(0);
    (max <= k, max)
}

fn check_k_planar(g: &TopologicalGraph, k: usize) -> Result<(), AnalysisError> {
    for e in g.edge_ids() {
        let count = g.crossing_count(e);
        if count > k {
            return Err(AnalysisError::NotKPlanar { k, edge: e, count });
        }
    }
    Ok(())
}

/// `k+1` pairwise crossing, pairwise vertex-disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KCrossing {
    pub edges: Vec<EdgeId>,
    pub endpoints: Vec<VertexId>,
}

impl KCrossing {
    pub fn new(g: &TopologicalGraph, mut edges: Vec<EdgeId>) -> Self {
        edges.sort();
        let mut endpoints: Vec<VertexId> = edges
            .iter()
            .flat_map(|&e| {
                let ed = g.edge(e);
                [ed.tail, ed.head]
            })
            .collect();
        endpoints.sort();
        endpoints.dedup();
        KCrossing { edges, endpoints }
    }

    pub fn k_plus_1(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// The member edge incident to `v`.
    pub fn edge_at(&self, g: &TopologicalGraph, v: VertexId) -> Option<EdgeId> {
        self.edges.iter().copied().find(|&e| g.edge(e).is_incident(v))
    }
}

/// All (k+1)-crossings of a simple k-planar graph: crossing-graph components
/// that are cliques on k+1 vertex-disjoint edges.
pub fn find_k1_crossings(g: &TopologicalGraph, k: usize) -> Result<Vec<KCrossing>, AnalysisError> {
    check_k_planar(g, k)?;
    let cg = crossing_graph(g);
    let mut out = Vec::new();
    for comp in cg.components() {
        if comp.len() != k + 1 {
            continue;
        }
        let clique = comp
            .iter()
            .all(|&a| comp.iter().all(|&b| a == b || cg.multiplicity(a, b) == 1));
        let x = KCrossing::new(g, comp);
        if clique && x.endpoints.len() == 2 * (k + 1) {
            out.push(x);
        }
    }
    Ok(out)
}

/// The sub-drawing induced by an edge set, with crossings re-indexed.
pub fn restrict(g: &TopologicalGraph, edges: &[EdgeId]) -> TopologicalGraph {
    let set: BTreeSet<EdgeId> = edges.iter().copied().collect();
    let kept: Vec<Edge> = set.iter().map(|&e| *g.edge(e)).collect();
    let vertices: BTreeSet<VertexId> = kept.iter().flat_map(|e| [e.tail, e.head]).collect();
    let rotations: BTreeMap<VertexId, Vec<EdgeId>> = vertices
        .iter()
        .map(|&v| (v, g.rotation(v).iter().copied().filter(|e| set.contains(e)).collect()))
        .collect();
    let mut index: BTreeMap<(EdgeId, usize), usize> = BTreeMap::new();
    for &e in &set {
        let mut pos = 0;
        for &ci in g.sequence(e) {
            if set.contains(&g.crossing(ci).other(e)) {
                index.insert((e, ci), pos);
                pos += 1;
            }
        }
    }
    let crossings: Vec<Crossing> = g
        .crossings()
        .iter()
        .enumerate()
        .filter(|(_, c)| set.contains(&c.edge_a) && set.contains(&c.edge_b))
        .map(|(ci, c)| Crossing {
            index_on_a: index[&(c.edge_a, ci)],
            index_on_b: index[&(c.edge_b, ci)],
            ..*c
        })
        .collect();
    TopologicalGraph::build(vertices, kept, crossings, rotations, None)
        .expect("a sub-drawing of a valid connected-per-crossing edge set is valid")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViewFace {
    pub face: Face,
    /// Endpoints of the crossing on this face, in boundary-walk order.
    pub endpoints: Vec<VertexId>,
    /// Vertices of the components of `G - E(X)` attached to those endpoints.
    pub interior: BTreeSet<VertexId>,
}

/// The arrangement of a crossing's edges and the faces it cuts the plane into.
#[derive(Debug, Clone)]
pub struct ArrangementView {
    pub crossing: KCrossing,
    pub arrangement: TopologicalGraph,
    pub faces: Vec<ViewFace>,
}

impl ArrangementView {
    /// The face incident to every endpoint, if any.
    pub fn common_face(&self) -> Option<&ViewFace> {
        self.faces
            .iter()
            .find(|f| f.endpoints.len() == self.crossing.endpoints.len())
    }
}

/// Vertex sets of the components of `G - E(X)`.
pub fn components_without(g: &TopologicalGraph, removed: &[EdgeId]) -> BTreeMap<VertexId, usize> {
    let mut parent: BTreeMap<VertexId, VertexId> = g.vertex_ids().map(|v| (v, v)).collect();
    fn find(p: &mut BTreeMap<VertexId, VertexId>, v: VertexId) -> VertexId {
        let mut r = v;
        while p[&r] != r {
            r = p[&r];
        }
        let mut c = v;
        while p[&c] != r {
            let n = p[&c];
            p.insert(c, r);
            c = n;
        }
        r
    }
    for e in g.edges() {
        if removed.contains(&e.id) {
            continue;
        }
        let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
        if a != b {
            parent.insert(a.max(b), a.min(b));
        }
    }
    let mut label = BTreeMap::new();
    let mut out = BTreeMap::new();
    for v in g.vertex_ids().collect::<Vec<_>>() {
        let r = find(&mut parent, v);
        let n = label.len();
        let id = *label.entry(r).or_insert(n);
        out.insert(v, id);
    }
    out
}

pub fn arrangement_view(g: &TopologicalGraph, x: &KCrossing) -> ArrangementView {
    let arrangement = restrict(g, &x.edges);
    let comps = components_without(g, &x.edges);
    let faces = arrangement
        .faces()
        .into_iter()
        .map(|face| {
            let endpoints: Vec<VertexId> = face
                .vertices
                .iter()
                .copied()
                .filter(|v| x.endpoints.binary_search(v).is_ok())
                .collect();
            let ids: BTreeSet<usize> = endpoints.iter().map(|v| comps[v]).collect();
            let interior = comps.iter().filter(|(_, c)| ids.contains(c)).map(|(&v, _)| v).collect();
            ViewFace {
                face,
                endpoints,
                interior,
            }
        })
        .collect();
    ArrangementView {
        crossing: x.clone(),
        arrangement,
        faces,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Tangle {
    Tangled,
    Untangled,
}

pub fn classify(g: &TopologicalGraph, x: &KCrossing) -> Tangle {
    if arrangement_view(g, x).common_face().is_some() {
        Tangle::Untangled
    } else {
        Tangle::Tangled
    }
}

/// The tangled (k+1)-crossings of a simple k-planar graph.
pub fn tangled_crossings(g: &TopologicalGraph, k: usize) -> Result<Vec<KCrossing>, AnalysisError> {
    Ok(find_k1_crossings(g, k)?
        .into_iter()
        .filter(|x| classify(g, x) == Tangle::Tangled)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiPlanarity {
    /// No `q` pairwise crossing edges.
    pub quasi_planar: bool,
    pub witness: Option<Vec<EdgeId>>,
    /// No `q` pairwise crossing, pairwise vertex-disjoint edges.
    pub disjoint_quasi_planar: bool,
    pub disjoint_witness: Option<Vec<EdgeId>>,
}

pub fn is_quasi_planar(g: &TopologicalGraph, q: usize) -> QuasiPlanarity {
    let cg = crossing_graph(g);
    let witness = find_clique(g, &cg, q, false);
    let disjoint_witness = find_clique(g, &cg, q, true);
    QuasiPlanarity {
        quasi_planar: witness.is_none(),
        witness,
        disjoint_quasi_planar: disjoint_witness.is_none(),
        disjoint_witness,
    }
}

/// A `q`-clique of the crossing graph (optionally of pairwise vertex-disjoint
/// edges), searched per component in degeneracy order.
pub fn find_clique(g: &TopologicalGraph, cg: &CrossingGraph, q: usize, disjoint: bool) -> Option<Vec<EdgeId>> {
    if q == 0 {
        return Some(Vec::new());
    }
    let ok = |a: EdgeId, b: EdgeId| cg.crosses(a, b) && (!disjoint || !g.edge(a).shares_endpoint(g.edge(b)));
    if q == 1 {
        return g.edge_ids().next().map(|e| vec![e]);
    }
    for comp in cg.components() {
        if comp.len() < q {
            continue;
        }
        // Degeneracy order: repeatedly remove a minimum-degree node.
        let mut deg: BTreeMap<EdgeId, usize> = comp
            .iter()
            .map(|&e| (e, comp.iter().filter(|&&f| f != e && ok(e, f)).count()))
            .collect();
        let mut order = Vec::new();
        let mut alive: BTreeSet<EdgeId> = comp.iter().copied().collect();
        while !alive.is_empty() {
            let &v = alive.iter().min_by_key(|&&e| (deg[&e], e)).unwrap();
            alive.remove(&v);
            order.push(v);
            for &f in &alive {
                if ok(v, f) {
                    *deg.get_mut(&f).unwrap() -= 1;
                }
            }
        }
        let pos: BTreeMap<EdgeId, usize> = order.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        for &v in &order {
            let later: Vec<EdgeId> = order
                .iter()
                .copied()
                .filter(|&f| pos[&f] > pos[&v] && ok(v, f))
                .collect();
            if later.len() + 1 < q {
                continue;
            }
            let mut clique = vec![v];
            if extend(&mut clique, &later, q, &ok) {
                clique.sort();
                return Some(clique);
            }
        }
    }
    None
}

fn extend(clique: &mut Vec<EdgeId>, cand: &[EdgeId], q: usize, ok: &impl Fn(EdgeId, EdgeId) -> bool) -> bool {
    if clique.len() == q {
        return true;
    }
    if clique.len() + cand.len() < q {
        return false;
    }
    for (i, &v) in cand.iter().enumerate() {
        let next: Vec<EdgeId> = cand[i + 1..].iter().copied().filter(|&f| ok(v, f)).collect();
        clique.push(v);
        if extend(clique, &next, q, ok) {
            return true;
        }
        clique.pop();
    }
    false
}

/// The disk around an untangled crossing: where each member edge enters it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiskBoundary {
    /// For each endpoint: the dart of its edge, oriented away from it, on
    /// the segment that ends at the edge's first crossing with another member.
    pub entry: BTreeMap<VertexId, Dart>,
    /// Number of segments from the endpoint up to and including `entry`.
    pub tip_len: BTreeMap<VertexId, usize>,
    /// Endpoints in cyclic order around the disk, following the boundary
    /// walk of the common face of the arrangement.
    pub order: Vec<VertexId>,
    /// Member edge of each endpoint in `order`.
    pub edge_order: Vec<EdgeId>,
}

pub fn disk_boundary(g: &TopologicalGraph, x: &KCrossing) -> Result<DiskBoundary, AnalysisError> {
    let view = arrangement_view(g, x);
    let Some(common) = view.common_face() else {
        return Err(AnalysisError::TangledInput(format!("{:?} has no common face", x.edges)));
    };
    let mut entry = BTreeMap::new();
    let mut tip_len = BTreeMap::new();
    for &e in &x.edges {
        let edge = g.edge(e);
        let seq = g.sequence(e);
        let hits: Vec<usize> = seq
            .iter()
            .enumerate()
            .filter(|(_, &ci)| x.contains(g.crossing(ci).other(e)))
            .map(|(i, _)| i)
            .collect();
        let (Some(&first), Some(&last)) = (hits.first(), hits.last()) else {
            return Err(AnalysisError::TangledInput(format!("{e} crosses no other member")));
        };
        entry.insert(
            edge.tail,
            Dart {
                edge: e,
                segment: first,
                forward: true,
            },
        );
        tip_len.insert(edge.tail, first + 1);
        entry.insert(
            edge.head,
            Dart {
                edge: e,
                segment: last + 1,
                forward: false,
            },
        );
        tip_len.insert(edge.head, seq.len() - last);
    }
    let order = common.endpoints.clone();
    let edge_order = order.iter().map(|&v| x.edge_at(g, v).unwrap()).collect();
    Ok(DiskBoundary {
        entry,
        tip_len,
        order,
        edge_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn e(i: u32) -> EdgeId {
        EdgeId(i)
    }

    #[test]
    fn convex4_crossing_graph_is_k4() {
        let cg = crossing_graph(&fixtures::convex4());
        assert_eq!(cg.pairs().len(), 6);
        assert!(cg.pairs().iter().all(|p| p.2 == 1));
    }

    #[test]
    fn pentagram_crossing_graph_is_a_cycle() {
        let cg = crossing_graph(&fixtures::pentagram());
        assert_eq!(cg.pairs().len(), 5);
        assert!(cg.nodes().all(|n| cg.degree(n) == 2));
        assert_eq!(cg.components().len(), 1);
    }

    #[test]
    fn k_planarity() {
        let g = fixtures::convex4();
        assert_eq!(is_k_planar(&g, 3), (true, 3));
        assert!(!is_k_planar(&g, 2).0);
        let f = fixtures::convex4_hull();
        assert!(is_k_planar(&f, 3).0);
        assert!(!is_k_planar(&f, 2).0);
    }

    #[test]
    fn k1_crossings_of_fixtures() {
        let x = find_k1_crossings(&fixtures::convex4(), 3).unwrap();
        assert_eq!(x.len(), 1);
        assert_eq!(x[0].edges, vec![e(0), e(1), e(2), e(3)]);
        assert!(find_k1_crossings(&fixtures::pentagram(), 2).unwrap().is_empty());
        assert_eq!(find_k1_crossings(&fixtures::two_convex4(), 3).unwrap().len(), 2);
        assert!(matches!(
            find_k1_crossings(&fixtures::convex4(), 2),
            Err(AnalysisError::NotKPlanar { .. })
        ));
    }

    #[test]
    fn classification() {
        let g = fixtures::convex4();
        let x = &find_k1_crossings(&g, 3).unwrap()[0];
        assert_eq!(classify(&g, x), Tangle::Untangled);
        let view = arrangement_view(&g, x);
        assert_eq!(view.faces.iter().filter(|f| !f.endpoints.is_empty()).count(), 1);

        let t = fixtures::tangled();
        let x = &find_k1_crossings(&t, 3).unwrap()[0];
        assert_eq!(classify(&t, x), Tangle::Tangled);
        let view = arrangement_view(&t, x);
        assert!(view.faces.iter().filter(|f| !f.endpoints.is_empty()).count() >= 2);

        let h = fixtures::hexagon_chords();
        let x = &find_k1_crossings(&h, 2).unwrap()[0];
        assert_eq!(classify(&h, x), Tangle::Untangled);
    }

    #[test]
    fn endpoint_sets_partition() {
        let t = fixtures::tangled();
        let x = &find_k1_crossings(&t, 3).unwrap()[0];
        let mut all: Vec<VertexId> = arrangement_view(&t, x)
            .faces
            .iter()
            .flat_map(|f| f.endpoints.clone())
            .collect();
        all.sort();
        assert_eq!(all, x.endpoints);
    }

    #[test]
    fn quasi_planarity() {
        let g = fixtures::convex4();
        let r = is_quasi_planar(&g, 4);
        assert!(!r.quasi_planar);
        assert_eq!(r.witness, Some(vec![e(0), e(1), e(2), e(3)]));
        assert!(is_quasi_planar(&g, 5).quasi_planar);
        assert!(is_quasi_planar(&fixtures::pentagram(), 3).quasi_planar);
    }

    #[test]
    fn convex4_disk_order_alternates() {
        let g = fixtures::convex4();
        let x = &find_k1_crossings(&g, 3).unwrap()[0];
        let d = disk_boundary(&g, x).unwrap();
        assert_eq!(d.order.len(), 8);
        let start = d.edge_order.iter().position(|&f| f == e(0)).unwrap();
        let rotated: Vec<u32> = (0..8).map(|i| d.edge_order[(start + i) % 8].0).collect();
        // Either direction around the disk.
        assert!(rotated == [0, 1, 2, 3, 0, 1, 2, 3] || rotated == [0, 3, 2, 1, 0, 3, 2, 1]);
    }

    #[test]
    fn simplicity_of_fixtures() {
        assert!(is_simple(&fixtures::convex4()).simple);
        assert!(is_almost_simple(&fixtures::convex4()));
    }
}
