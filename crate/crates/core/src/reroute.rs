//! Rerouting one edge of an untangled (k+1)-crossing around a pivot vertex,
//! pivot assignment by bipartite matching, and the global rerouting with its
//! structural audits.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{crossing_graph, disk_boundary, find_clique, KCrossing};
use crate::error::RedrawError;
use crate::planar::DartId;
use crate::redraw::{redraw_edge, reversed_path, Corner, RouteBuilder, Side};
use crate::topo::{EdgeId, TopologicalGraph, VertexId};

/// What one reroute did.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RerouteEntry {
    pub crossing: KCrossing,
    /// The rerouted edge.
    pub edge: EdgeId,
    pub pivot: VertexId,
    /// The member edge incident to the pivot.
    pub pivot_edge: EdgeId,
    /// Edges crossed by the unchanged part at the tail, from the tail.
    pub tail_tip: Vec<EdgeId>,
    /// Edges crossed by the unchanged part at the head, from the head.
    pub head_tip: Vec<EdgeId>,
    /// Edges crossed by the new middle part, tail side first.
    pub hook: Vec<EdgeId>,
    /// Edges crossed by the edge before the reroute, from the tail.
    pub old_crossings: Vec<EdgeId>,
}

impl RerouteEntry {
    pub fn rerouted_around_endpoint_of(&self, g: &TopologicalGraph, other: EdgeId) -> bool {
        g.edge(other).is_incident(self.pivot)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RerouteLog {
    pub entries: Vec<RerouteEntry>,
}

impl RerouteLog {
    pub fn rerouted(&self) -> BTreeSet<EdgeId> {
        self.entries.iter().map(|e| e.edge).collect()
    }

    pub fn entry_for(&self, e: EdgeId) -> Option<&RerouteEntry> {
        self.entries.iter().find(|x| x.edge == e)
    }
}

fn violation(msg: impl Into<String>) -> RedrawError {
    RedrawError::InvariantViolation(msg.into())
}

fn multiset(list: impl IntoIterator<Item = EdgeId>) -> BTreeMap<EdgeId, usize> {
    let mut m = BTreeMap::new();
    for e in list {
        *m.entry(e).or_default() += 1;
    }
    m
}

/// Crossing partners of `e` in order from its tail.
pub fn crossing_sequence(g: &TopologicalGraph, e: EdgeId) -> Vec<EdgeId> {
    g.sequence(e).iter().map(|&ci| g.crossing(ci).other(e)).collect()
}

/// Redraws member `e` of the untangled crossing `x` so that it runs from its
/// tips along the disk boundary on the side of `w` and around `w`.
pub fn reroute_edge(
    g: &TopologicalGraph,
    x: &KCrossing,
    e: EdgeId,
    w: VertexId,
) -> Result<(TopologicalGraph, RerouteEntry), RedrawError> {
    if !x.contains(e) {
        return Err(violation(format!("{e} is not a member of the crossing")));
    }
    let edge = *g.edge(e);
    if edge.is_incident(w) {
        return Err(RedrawError::PivotIncident { edge: e, pivot: w });
    }
    let d = x
        .edge_at(g, w)
        .ok_or_else(|| violation(format!("{w} is not an endpoint of the crossing")))?;
    let disk = disk_boundary(g, x)?;
    let p = g.planarization();

    let n = disk.order.len();
    let pos = |v: VertexId| disk.order.iter().position(|&y| y == v).unwrap();
    let forward_arc = |from: VertexId, to: VertexId| -> Vec<VertexId> {
        let (s, t) = (pos(from), pos(to));
        let mut out = Vec::new();
        let mut i = (s + 1) % n;
        while i != t {
            out.push(disk.order[i]);
            i = (i + 1) % n;
        }
        out
    };
    let (mut start, mut end) = (edge.tail, edge.head);
    if !forward_arc(start, end).contains(&w) {
        std::mem::swap(&mut start, &mut end);
    }
    let arc = forward_arc(start, end);

    let tip = |v: VertexId| -> Vec<DartId> {
        let f = x.edge_at(g, v).unwrap();
        p.edge_path_from(g, f, v, disk.tip_len[&v])
    };

    let mut b = RouteBuilder::new(
        g,
        &p,
        Corner {
            vertex: start,
            after: e,
        },
    );
    let t_start = tip(start);
    b.follow(&t_start, Side::Left)?;
    let start_tip_steps = b.len();
    for &y in &arc {
        let t = tip(y);
        let sigma = *t.last().unwrap();
        if y == w {
            let mut around = reversed_path(&p, &t);
            around.extend(t.iter().copied());
            b.follow(&around, Side::Left)?;
        } else {
            b.cross(p.twin(sigma))?;
        }
    }
    let before_end = b.len();
    let t_end = tip(end);
    b.follow(&reversed_path(&p, &t_end), Side::Left)?;
    let end_out = p.vertex_dart(g, end, e);
    let end_after = p.dart(p.cw_next(end_out)).edge;
    let route = b.finish(Corner {
        vertex: end,
        after: end_after,
    })?;

    let names: Vec<EdgeId> = route.darts.iter().map(|d| d.edge).collect();
    let start_part = names[..start_tip_steps].to_vec();
    let mut hook = names[start_tip_steps..before_end].to_vec();
    let mut end_part: Vec<EdgeId> = names[before_end..].to_vec();
    end_part.reverse();
    let (tail_tip, head_tip) = if start == edge.tail {
        (start_part, end_part)
    } else {
        hook.reverse();
        (end_part, start_part)
    };

    let old = crossing_sequence(g, e);
    let h = redraw_edge(g, e, &route)?;

    // Contract on the new crossing multiset of e.
    let fan: Vec<EdgeId> = g.incident_edges(w).iter().copied().filter(|&f| f != d).collect();
    let members: Vec<EdgeId> = x.edges.iter().copied().filter(|&f| f != e && f != d).collect();
    let kept_tips: Vec<EdgeId> = {
        let lt = disk.tip_len[&edge.tail] - 1;
        let lh = disk.tip_len[&edge.head] - 1;
        let mut v = old[..lt].to_vec();
        v.extend_from_slice(&old[old.len() - lh..]);
        v
    };
    let mut expected = kept_tips;
    expected.extend(members);
    expected.extend(fan);
    let got = crossing_sequence(&h, e);
    if multiset(got.iter().copied()) != multiset(expected.iter().copied()) {
        return Err(violation(format!(
            "reroute of {e} around {w}: crossings {got:?}, expected {expected:?}"
        )));
    }
    if got.contains(&d) {
        return Err(violation(format!("rerouted {e} still crosses {d}")));
    }

    let entry = RerouteEntry {
        crossing: x.clone(),
        edge: e,
        pivot: w,
        pivot_edge: d,
        tail_tip,
        head_tip,
        hook,
        old_crossings: old,
    };
    Ok((h, entry))
}

/// The bipartite graph of crossings versus their endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingInstance {
    pub a: Vec<KCrossing>,
    pub b: Vec<VertexId>,
    /// Neighbours of each A node, ascending.
    pub adj: Vec<Vec<VertexId>>,
    /// Counter-clockwise rotation at each A node (endpoints around the disk).
    pub a_rotation: Vec<Vec<VertexId>>,
    /// Counter-clockwise rotation at each B node (indices into `a`).
    pub b_rotation: BTreeMap<VertexId, Vec<usize>>,
}

impl MatchingInstance {
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn b_degree(&self, v: VertexId) -> usize {
        self.adj.iter().filter(|n| n.contains(&v)).count()
    }

    /// `|N(A')|` for a subset of A indices.
    pub fn neighbourhood(&self, subset: &[usize]) -> BTreeSet<VertexId> {
        subset.iter().flat_map(|&i| self.adj[i].iter().copied()).collect()
    }
}

pub fn build_matching_instance(g: &TopologicalGraph, s: &[KCrossing]) -> Result<MatchingInstance, RedrawError> {
    let mut a: Vec<KCrossing> = s.to_vec();
    a.sort();
    let adj: Vec<Vec<VertexId>> = a.iter().map(|x| x.endpoints.clone()).collect();
    let b: Vec<VertexId> = adj
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut a_rotation = Vec::new();
    for x in &a {
        let disk = disk_boundary(g, x)?;
        a_rotation.push(disk.order.iter().rev().copied().collect());
    }
    let owner: BTreeMap<EdgeId, usize> = a
        .iter()
        .enumerate()
        .flat_map(|(i, x)| x.edges.iter().map(move |&e| (e, i)))
        .collect();
    let b_rotation = b
        .iter()
        .map(|&v| {
            let rot = g.rotation(v).iter().filter_map(|e| owner.get(e).copied()).collect();
            (v, rot)
        })
        .collect();
    Ok(MatchingInstance {
        a,
        b,
        adj,
        a_rotation,
        b_rotation,
    })
}

/// Face count of the rotation system of H; returns `(V, E, F, components)`.
pub fn matching_graph_euler(m: &MatchingInstance) -> (usize, usize, usize, usize) {
    // Node ids: A nodes 0..|A|, B nodes after.
    let na = m.a.len();
    let bidx: BTreeMap<VertexId, usize> = m.b.iter().enumerate().map(|(i, &v)| (v, na + i)).collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut dart_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, nb) in m.adj.iter().enumerate() {
        for v in nb {
            let j = bidx[v];
            dart_of.insert((i, j), 2 * edges.len());
            dart_of.insert((j, i), 2 * edges.len() + 1);
            edges.push((i, j));
        }
    }
    let nd = 2 * edges.len();
    let mut cw = vec![usize::MAX; nd];
    let mut link = |node: usize, ring: Vec<usize>| {
        for (k, &to) in ring.iter().enumerate() {
            let prev = ring[(k + ring.len() - 1) % ring.len()];
            cw[dart_of[&(node, to)]] = dart_of[&(node, prev)];
        }
    };
    for (i, rot) in m.a_rotation.iter().enumerate() {
        link(i, rot.iter().map(|v| bidx[v]).collect());
    }
    for (v, rot) in &m.b_rotation {
        link(bidx[v], rot.clone());
    }
    let mut seen = vec![false; nd];
    let mut faces = 0;
    for s in 0..nd {
        if seen[s] {
            continue;
        }
        faces += 1;
        let mut d = s;
        while !seen[d] {
            seen[d] = true;
            d = cw[d ^ 1];
        }
    }
    // Components by union-find over edges.
    let nv = na + m.b.len();
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(i, j) in &edges {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        parent[a] = b;
    }
    let comps = (0..nv).filter(|&x| find(&mut parent, x) == x).count();
    (nv, edges.len(), faces, comps)
}

/// Maximum matching by augmenting paths; A nodes in ascending order,
/// neighbours in ascending vertex id. Returns the pivot of every A node.
pub fn find_matching(m: &MatchingInstance) -> Result<Vec<VertexId>, RedrawError> {
    let mut owner: BTreeMap<VertexId, usize> = BTreeMap::new();
    fn augment(
        i: usize,
        m: &MatchingInstance,
        owner: &mut BTreeMap<VertexId, usize>,
        seen: &mut BTreeSet<VertexId>,
    ) -> bool {
        for &v in &m.adj[i] {
            if !seen.insert(v) {
                continue;
            }
            let free = match owner.get(&v) {
                None => true,
                Some(&j) => augment(j, m, owner, seen),
            };
            if free {
                owner.insert(v, i);
                return true;
            }
        }
        false
    }
    let mut matched = 0;
    for i in 0..m.a.len() {
        if augment(i, m, &mut owner, &mut BTreeSet::new()) {
            matched += 1;
        }
    }
    if matched < m.a.len() {
        return Err(RedrawError::NoMatching {
            matched,
            total: m.a.len(),
        });
    }
    let mut pivot = vec![VertexId(0); m.a.len()];
    for (v, i) in owner {
        pivot[i] = v;
    }
    Ok(pivot)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HallAudit {
    pub subsets: usize,
    pub exhaustive: bool,
    /// Smallest `|N(A')| - k|A'| - 2` over the sampled subsets.
    pub min_margin: i64,
    /// `|E(H')| <= 2(|A'| + |N(A')|) - 4` held on every sampled subset.
    pub planar_bound: bool,
}

impl HallAudit {
    pub fn passed(&self) -> bool {
        self.min_margin >= 0 && self.planar_bound
    }
}

/// Checks the neighbourhood inequality on all subsets when `|A| <= 10`,
/// otherwise on `samples` random subsets.
pub fn hall_audit(m: &MatchingInstance, k: usize, seed: u64, samples: usize) -> HallAudit {
    let na = m.a.len();
    let mut min_margin = i64::MAX;
    let mut planar_bound = true;
    let mut check = |subset: &[usize]| {
        let nb = m.neighbourhood(subset).len() as i64;
        let a = subset.len() as i64;
        min_margin = min_margin.min(nb - k as i64 * a - 2);
        let e: i64 = subset.iter().map(|&i| m.adj[i].len() as i64).sum();
        if e > 2 * (a + nb) - 4 {
            planar_bound = false;
        }
    };
    let (subsets, exhaustive) = if na <= 10 {
        for mask in 1u32..(1 << na) {
            let s: Vec<usize> = (0..na).filter(|i| mask >> i & 1 == 1).collect();
            check(&s);
        }
        ((1usize << na) - 1, true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all: Vec<usize> = (0..na).collect();
        for _ in 0..samples {
            let size = rng.gen_range(1..=na);
            let mut s: Vec<usize> = all.choose_multiple(&mut rng, size).copied().collect();
            s.sort();
            check(&s);
        }
        (samples, false)
    };
    HallAudit {
        subsets,
        exhaustive,
        min_margin: if subsets == 0 { 0 } else { min_margin },
        planar_bound,
    }
}

/// The member of `x` rerouted for pivot `w`: the smallest id not incident to `w`.
pub fn rerouted_member(g: &TopologicalGraph, x: &KCrossing, w: VertexId) -> EdgeId {
    *x.edges
        .iter()
        .find(|&&e| !g.edge(e).is_incident(w))
        .expect("k+1 >= 2 members")
}

/// Reroutes one member of every crossing around its assigned pivot, in
/// ascending crossing order, and checks that no (k+1)-crossing remains.
pub fn global_reroute(
    g: &TopologicalGraph,
    k: usize,
    assignment: &[(KCrossing, VertexId)],
) -> Result<(TopologicalGraph, RerouteLog), RedrawError> {
    let mut order: Vec<&(KCrossing, VertexId)> = assignment.iter().collect();
    order.sort();
    let mut cur = g.clone();
    let mut log = RerouteLog::default();
    for (x, w) in order {
        let e = rerouted_member(g, x, *w);
        let (next, entry) = reroute_edge(&cur, x, e, *w)?;
        log::debug!("rerouted {} around {} ({} hook crossings)", e, w, entry.hook.len());
        cur = next;
        log.entries.push(entry);
    }
    let cg = crossing_graph(&cur);
    if let Some(c) = find_clique(&cur, &cg, k + 1, true) {
        return Err(violation(format!("global rerouting left a {}-crossing {c:?}", k + 1)));
    }
    Ok((cur, log))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum AuditKind {
    DistinctPivots,
    PivotNotIncident,
    NewCrossingsExplained,
    ReroutedCrossersBound,
    AtMostOneNonRerouted,
    NoKPlusOneCrossing,
    MembersUnchanged,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditCheck {
    pub kind: AuditKind,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<AuditKind> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.kind).collect()
    }

    fn push(&mut self, kind: AuditKind, problems: Vec<String>) {
        self.checks.push(AuditCheck {
            kind,
            passed: problems.is_empty(),
            detail: problems.join("; "),
        });
    }
}

/// Re-derives the structural facts a global rerouting must satisfy from the
/// two drawings and the log.
pub fn audit_global(g: &TopologicalGraph, h: &TopologicalGraph, log: &RerouteLog, k: usize) -> AuditReport {
    let mut report = AuditReport::default();
    let rerouted = log.rerouted();

    let mut pivots = BTreeMap::new();
    let mut problems = Vec::new();
    for en in &log.entries {
        if let Some(prev) = pivots.insert(en.pivot, en.edge) {
            problems.push(format!("{} and {} share pivot {}", prev, en.edge, en.pivot));
        }
    }
    report.push(AuditKind::DistinctPivots, problems);

    let problems = log
        .entries
        .iter()
        .filter(|en| g.edge(en.edge).is_incident(en.pivot))
        .map(|en| format!("{} is incident to its pivot {}", en.edge, en.pivot))
        .collect();
    report.push(AuditKind::PivotNotIncident, problems);

    let before = g.crossing_pairs();
    let after = h.crossing_pairs();
    let around = |a: EdgeId, b: EdgeId| {
        log.entries
            .iter()
            .any(|en| en.edge == a && h.edge(b).is_incident(en.pivot))
    };
    let problems = after
        .difference(&before)
        .filter(|&&(a, b)| !(around(a, b) || around(b, a)))
        .map(|(a, b)| format!("new crossing {a}x{b} is not explained by a pivot"))
        .collect();
    report.push(AuditKind::NewCrossingsExplained, problems);

    let cg = crossing_graph(h);
    let mut problems = Vec::new();
    for f in h.edge_ids().filter(|f| !rerouted.contains(f)) {
        let crossers: Vec<EdgeId> = cg.neighbors(f).filter(|r| rerouted.contains(r)).collect();
        if crossers.len() > 3 {
            problems.push(format!("{f} is crossed by {} rerouted edges", crossers.len()));
        } else if crossers.len() == 3 {
            let at_ends: BTreeSet<VertexId> = crossers
                .iter()
                .filter_map(|r| log.entry_for(*r))
                .map(|en| en.pivot)
                .filter(|&pv| h.edge(f).is_incident(pv))
                .collect();
            if at_ends.len() < 2 {
                problems.push(format!(
                    "{f} has three rerouted crossers but {} at its endpoints",
                    at_ends.len()
                ));
            }
        }
    }
    report.push(AuditKind::ReroutedCrossersBound, problems);

    let clique = find_clique(h, &cg, k + 1, true);
    let problems = match &clique {
        Some(c) if c.iter().filter(|e| !rerouted.contains(e)).count() > 1 => {
            vec![format!("{c:?} has several non-rerouted members")]
        }
        _ => Vec::new(),
    };
    report.push(AuditKind::AtMostOneNonRerouted, problems);
    let problems = clique
        .map(|c| vec![format!("{}-crossing {c:?}", k + 1)])
        .unwrap_or_default();
    report.push(AuditKind::NoKPlusOneCrossing, problems);

    let mut problems = Vec::new();
    for en in &log.entries {
        let rest: Vec<EdgeId> = en.crossing.edges.iter().copied().filter(|&e| e != en.edge).collect();
        for (i, &a) in rest.iter().enumerate() {
            for &b in &rest[i + 1..] {
                if before.contains(&(a, b)) != after.contains(&(a, b)) {
                    problems.push(format!("crossing between {a} and {b} changed"));
                }
            }
        }
    }
    report.push(AuditKind::MembersUnchanged, problems);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::find_k1_crossings;
    use crate::fixtures;

    fn ids(v: &[u32]) -> Vec<EdgeId> {
        v.iter().map(|&i| EdgeId(i)).collect()
    }

    #[test]
    fn convex4_reroute_around_5() {
        let g = fixtures::convex4();
        let x = &find_k1_crossings(&g, 3).unwrap()[0];
        let (h, entry) = reroute_edge(&g, x, EdgeId(0), VertexId(5)).unwrap();
        let mut got = crossing_sequence(&h, EdgeId(0));
        got.sort();
        assert_eq!(got, ids(&[2, 3]));
        assert_eq!(entry.pivot_edge, EdgeId(1));
        assert!(!h.crossing_pairs().contains(&(EdgeId(0), EdgeId(1))));
    }

    #[test]
    fn fan_edges_are_crossed() {
        let g = fixtures::convex4_fan();
        let x = &find_k1_crossings(&g, 3).unwrap()[0];
        let (h, _) = reroute_edge(&g, x, EdgeId(0), VertexId(5)).unwrap();
        let mut got = crossing_sequence(&h, EdgeId(0));
        got.sort();
        assert_eq!(got, ids(&[2, 3, 4, 5]));
    }

    #[test]
    fn incident_pivot_is_rejected() {
        let g = fixtures::convex4();
        let x = &find_k1_crossings(&g, 3).unwrap()[0];
        assert!(matches!(
            reroute_edge(&g, x, EdgeId(0), VertexId(0)),
            Err(RedrawError::PivotIncident { .. })
        ));
    }

    #[test]
    fn every_pivot_choice_on_convex4() {
        let g = fixtures::convex4();
        let x = &find_k1_crossings(&g, 3).unwrap()[0];
        for &e in &x.edges {
            for &w in &x.endpoints {
                if g.edge(e).is_incident(w) {
                    continue;
                }
                let (h, _) = reroute_edge(&g, x, e, w).unwrap();
                assert!(crate::analysis::is_almost_simple(&h));
            }
        }
    }

    #[test]
    fn matching_on_convex4() {
        let g = fixtures::convex4();
        let s = find_k1_crossings(&g, 3).unwrap();
        let m = build_matching_instance(&g, &s).unwrap();
        assert_eq!((m.a.len(), m.b.len(), m.edge_count()), (1, 8, 8));
        assert_eq!(find_matching(&m).unwrap(), vec![VertexId(0)]);
        let audit = hall_audit(&m, 3, 0, 1000);
        assert_eq!(audit.min_margin, 8 - 3 - 2);
        assert!(audit.passed());
        let (v, e, f, c) = matching_graph_euler(&m);
        assert_eq!(v as i64 - e as i64 + f as i64, 1 + c as i64);
    }

    #[test]
    fn shared_endpoint_has_degree_two() {
        let g = fixtures::shared_convex4();
        let s = find_k1_crossings(&g, 3).unwrap();
        let m = build_matching_instance(&g, &s).unwrap();
        assert_eq!(m.b.len(), 15);
        assert_eq!(m.b_degree(VertexId(7)), 2);
        let (v, e, f, c) = matching_graph_euler(&m);
        assert_eq!(v as i64 - e as i64 + f as i64, 1 + c as i64);
    }

    #[test]
    fn global_reroute_convex4_pivot_0() {
        let g = fixtures::convex4();
        let x = find_k1_crossings(&g, 3).unwrap().remove(0);
        let (h, log) = global_reroute(&g, 3, &[(x, VertexId(0))]).unwrap();
        assert_eq!(log.entries[0].edge, EdgeId(1));
        let pairs: Vec<(u32, u32)> = h.crossing_pairs().iter().map(|(a, b)| (a.0, b.0)).collect();
        assert_eq!(pairs, vec![(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(audit_global(&g, &h, &log, 3).passed());
    }

    #[test]
    fn audit_detects_shared_pivot() {
        let g = fixtures::convex4();
        let x = find_k1_crossings(&g, 3).unwrap().remove(0);
        let (h, mut log) = global_reroute(&g, 3, &[(x, VertexId(0))]).unwrap();
        let dup = log.entries[0].clone();
        log.entries.push(dup);
        assert!(audit_global(&g, &h, &log, 3)
            .failed()
            .contains(&AuditKind::DistinctPivots));
    }
}
