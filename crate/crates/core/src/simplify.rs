//! Restoring simplicity after global rerouting: double crossings first, then
//! crossings between adjacent edges. Every repair replaces a window of one
//! edge (the mover) by a curve running alongside an interval of another edge
//! (the guide).
//!
//! Positions along an edge are stations: station 0 is the tail, station
//! `i + 1` is the crossing with index `i`, and station `c + 1` is the head.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::analysis::{crossing_graph, find_clique, is_simple, Violation};
use crate::error::RedrawError;
use crate::planar::{DartId, NodeId, Planarization};
use crate::redraw::{replace_edge, Corner, RouteBuilder, Side};
use crate::reroute::{crossing_sequence, RerouteLog};
use crate::topo::{Dart, EdgeId, TopologicalGraph, VertexId};

fn violation(msg: String) -> RedrawError {
    RedrawError::InvariantViolation(msg)
}

/// Station of the crossing with index `i` on its edge.
fn crossing_station(i: usize) -> usize {
    i + 1
}

fn station_node(g: &TopologicalGraph, p: &Planarization, e: EdgeId, s: usize) -> NodeId {
    let c = g.crossing_count(e);
    if s <= c {
        p.origin(p.dart_id(Dart {
            edge: e,
            segment: s,
            forward: true,
        }))
    } else {
        p.head(p.dart_id(Dart {
            edge: e,
            segment: c,
            forward: true,
        }))
    }
}

/// Darts along `e` from station `from` to station `to`.
fn interval(p: &Planarization, e: EdgeId, from: usize, to: usize) -> Vec<DartId> {
    if from <= to {
        (from..to)
            .map(|s| {
                p.dart_id(Dart {
                    edge: e,
                    segment: s,
                    forward: true,
                })
            })
            .collect()
    } else {
        (to..from)
            .rev()
            .map(|s| {
                p.dart_id(Dart {
                    edge: e,
                    segment: s,
                    forward: false,
                })
            })
            .collect()
    }
}

/// Station of vertex `v` on edge `e`.
fn vertex_station(g: &TopologicalGraph, e: EdgeId, v: VertexId) -> usize {
    if g.edge(e).tail == v {
        0
    } else {
        g.crossing_count(e) + 1
    }
}

/// Replacement of the mover's stations `mover_from..=mover_to` by a curve
/// alongside the guide from `guide_from` to `guide_to`. The window ends must
/// be the same nodes as the guide interval ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FollowPlan {
    pub mover: EdgeId,
    pub mover_from: usize,
    pub mover_to: usize,
    pub guide: EdgeId,
    pub guide_from: usize,
    pub guide_to: usize,
    #[serde(serialize_with = "ser_side")]
    pub side: Side,
    /// Whether the curve may cross the guide once where it rejoins the mover.
    pub allow_exit_crossing: bool,
}

fn ser_side<S: serde::Serializer>(side: &Side, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(match side {
        Side::Left => "left",
        Side::Right => "right",
    })
}

/// Outcome of one parallel follow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FollowRecord {
    pub plan: FollowPlan,
    /// Crossing partners of the mover before the repair.
    pub before: Vec<EdgeId>,
    /// Crossing partners of the mover after the repair.
    pub after: Vec<EdgeId>,
    /// Crossing partners of the guide interval, in travel order.
    pub inherited: Vec<EdgeId>,
    pub exit_crossing: bool,
}

/// Redraws a window of the mover alongside a guide interval on the given side.
pub fn parallel_follow(
    g: &TopologicalGraph,
    plan: FollowPlan,
) -> Result<(TopologicalGraph, FollowRecord), RedrawError> {
    let FollowPlan {
        mover,
        mover_from,
        mover_to,
        guide,
        guide_from,
        guide_to,
        side,
        allow_exit_crossing,
    } = plan;
    if mover == guide || mover_from >= mover_to || guide_from == guide_to {
        return Err(violation(format!("degenerate follow plan {plan:?}")));
    }
    let p = g.planarization();
    let mc = g.crossing_count(mover);
    if mover_to > mc + 1 || guide_from.max(guide_to) > g.crossing_count(guide) + 1 {
        return Err(violation(format!("follow plan out of range {plan:?}")));
    }
    if station_node(g, &p, mover, mover_from) != station_node(g, &p, guide, guide_from)
        || station_node(g, &p, mover, mover_to) != station_node(g, &p, guide, guide_to)
    {
        return Err(violation(format!("follow plan ends do not meet {plan:?}")));
    }

    let prefix = interval(&p, mover, 0, mover_from);
    let along = interval(&p, guide, guide_from, guide_to);
    let suffix = interval(&p, mover, mover_to, mc + 1);
    let first = *prefix.first().unwrap_or(&along[0]);
    let last = *suffix.last().unwrap_or(along.last().unwrap());
    let tail = g.edge(mover).tail;
    let head = g.edge(mover).head;
    let start_after = match side {
        Side::Left => p.dart(first).edge,
        Side::Right => p.dart(p.cw_next(first)).edge,
    };
    let out = p.twin(last);
    let end_after = match side {
        Side::Left => p.dart(p.cw_next(out)).edge,
        Side::Right => p.dart(out).edge,
    };

    let mut b = RouteBuilder::new(
        g,
        &p,
        Corner {
            vertex: tail,
            after: start_after,
        },
    );
    let mut entry: Vec<DartId> = prefix.clone();
    entry.push(along[0]);
    b.follow(&entry, side)?;
    let entry_end = b.len();
    b.follow(&along, side)?;
    let along_end = b.len();
    let mut exit = vec![*along.last().unwrap()];
    exit.extend(suffix.iter().copied());
    b.follow(&exit, side)?;
    let route = b.finish(Corner {
        vertex: head,
        after: end_after,
    })?;

    let names: Vec<EdgeId> = route.darts.iter().map(|d| d.edge).collect();
    let before = crossing_sequence(g, mover);
    let kept_prefix = &before[..mover_from.saturating_sub(1)];
    let kept_suffix = before.get(mover_to..).unwrap_or(&[]);
    // Following a path crosses exactly one dart at each interior crossing node.
    if names[..kept_prefix.len()] != *kept_prefix || names[names.len() - kept_suffix.len()..] != *kept_suffix {
        return Err(violation(format!("follow by {mover} did not keep its outer crossings")));
    }
    let entry_junction = &names[kept_prefix.len()..entry_end];
    let exit_junction = &names[along_end..names.len() - kept_suffix.len()];
    if entry_junction.iter().any(|&x| x != mover) {
        return Err(RedrawError::SideBlocked { guide });
    }
    let exit_crossing = exit_junction.contains(&guide);
    if exit_junction.iter().any(|&x| x != mover && x != guide) || (exit_crossing && !allow_exit_crossing) {
        return Err(RedrawError::SideBlocked { guide });
    }
    let inherited: Vec<EdgeId> = names[entry_end..along_end]
        .iter()
        .copied()
        .filter(|&x| x != mover)
        .collect();

    let h = replace_edge(g, mover, &route)?;
    let after = crossing_sequence(&h, mover);
    let mut expected = kept_prefix.to_vec();
    expected.extend(inherited.iter().copied());
    if exit_crossing {
        expected.push(guide);
    }
    expected.extend(kept_suffix.iter().copied());
    if after != expected {
        return Err(violation(format!(
            "follow of {guide} by {mover}: crossings {after:?}, expected {expected:?}"
        )));
    }
    Ok((
        h,
        FollowRecord {
            plan,
            before,
            after,
            inherited,
            exit_crossing,
        },
    ))
}

/// (excess crossings over pairs crossing more than once, crossings between
/// adjacent edges). Every accepted repair decreases it lexicographically.
pub fn violation_measure(g: &TopologicalGraph) -> (usize, usize) {
    let cg = crossing_graph(g);
    let mut double = 0;
    let mut adjacent = 0;
    for (a, b, n) in cg.pairs() {
        double += n - 1;
        if g.edge(a).shares_endpoint(g.edge(b)) {
            adjacent += n;
        }
    }
    (double, adjacent)
}

/// Pairs crossing at least twice, with a flag telling whether each of the two
/// was rerouted around an endpoint of the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MutualPair {
    pub a: EdgeId,
    pub b: EdgeId,
    pub count: usize,
    pub mutual: bool,
}

pub fn find_mutual_pairs(g: &TopologicalGraph, log: &RerouteLog) -> Vec<MutualPair> {
    let around = |e: EdgeId, other: EdgeId| {
        log.entry_for(e)
            .is_some_and(|x| x.rerouted_around_endpoint_of(g, other))
    };
    crossing_graph(g)
        .pairs()
        .into_iter()
        .filter(|&(_, _, n)| n > 1)
        .map(|(a, b, count)| MutualPair {
            a,
            b,
            count,
            mutual: around(a, b) && around(b, a),
        })
        .collect()
}

/// Adjacent pairs that cross, with their shared vertex.
pub fn adjacent_pairs(g: &TopologicalGraph) -> Vec<(EdgeId, EdgeId, VertexId)> {
    is_simple(g)
        .violations
        .into_iter()
        .filter_map(|v| match v {
            Violation::AdjacentCrossing { a, b, vertex } => Some((a, b, vertex)),
            Violation::DoubleCrossing { .. } => None,
        })
        .collect()
}

/// The repairs still to do, in processing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepairPlan {
    pub mutual_pairs: Vec<MutualPair>,
    pub adjacent: Vec<(EdgeId, EdgeId, VertexId)>,
}

pub fn plan_repairs(g: &TopologicalGraph, log: &RerouteLog) -> RepairPlan {
    RepairPlan {
        mutual_pairs: find_mutual_pairs(g, log),
        adjacent: adjacent_pairs(g),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RepairKind {
    Double,
    Adjacent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Repair {
    pub kind: RepairKind,
    pub pair: (EdgeId, EdgeId),
    pub follow: FollowRecord,
}

/// Stations on `e` of its crossings with `other`, ascending, with the
/// matching stations on `other`.
fn shared_stations(g: &TopologicalGraph, e: EdgeId, other: EdgeId) -> Vec<(usize, usize)> {
    g.sequence(e)
        .iter()
        .enumerate()
        .filter_map(|(i, &ci)| {
            let c = g.crossing(ci);
            if c.other(e) != other {
                return None;
            }
            let j = if c.edge_a == other { c.index_on_a } else { c.index_on_b };
            Some((crossing_station(i), crossing_station(j)))
        })
        .collect()
}

const SIDES: [Side; 2] = [Side::Left, Side::Right];

/// Lens plans: the mover's stretch between two consecutive crossings with
/// the guide runs alongside the guide instead.
fn lens_plans(g: &TopologicalGraph, mover: EdgeId, guide: EdgeId) -> Vec<FollowPlan> {
    let st = shared_stations(g, mover, guide);
    let mut out = Vec::new();
    for w in st.windows(2) {
        for side in SIDES {
            out.push(FollowPlan {
                mover,
                mover_from: w[0].0,
                mover_to: w[1].0,
                guide,
                guide_from: w[0].1,
                guide_to: w[1].1,
                side,
                allow_exit_crossing: true,
            });
        }
    }
    out
}

/// Endpoint plans: the mover's stretch between a crossing with the guide and
/// the shared vertex `u` runs alongside the guide instead.
fn endpoint_plans(g: &TopologicalGraph, mover: EdgeId, guide: EdgeId, u: VertexId) -> Vec<FollowPlan> {
    let mut out = Vec::new();
    let mu = vertex_station(g, mover, u);
    let gu = vertex_station(g, guide, u);
    for (ms, gs) in shared_stations(g, mover, guide) {
        for side in SIDES {
            let (mover_from, mover_to, guide_from, guide_to) = if mu == 0 { (0, ms, gu, gs) } else { (ms, mu, gs, gu) };
            out.push(FollowPlan {
                mover,
                mover_from,
                mover_to,
                guide,
                guide_from,
                guide_to,
                side,
                allow_exit_crossing: false,
            });
        }
    }
    out
}

/// Applies the first plan that lowers the violation measure without creating
/// a (k+1)-crossing.
fn first_improving(
    g: &TopologicalGraph,
    k: usize,
    plans: impl IntoIterator<Item = FollowPlan>,
) -> Option<(TopologicalGraph, FollowRecord)> {
    let base = violation_measure(g);
    for plan in plans {
        let Ok((h, rec)) = parallel_follow(g, plan) else {
            continue;
        };
        if violation_measure(&h) >= base {
            continue;
        }
        let cg = crossing_graph(&h);
        if find_clique(&h, &cg, k + 1, true).is_some() {
            continue;
        }
        return Some((h, rec));
    }
    None
}

/// Removes every double crossing; the result is almost simple.
pub fn remove_double_crossings(
    g: &TopologicalGraph,
    log: &RerouteLog,
    k: usize,
) -> Result<(TopologicalGraph, Vec<Repair>), RedrawError> {
    let mut cur = g.clone();
    let mut repairs = Vec::new();
    loop {
        let pairs = find_mutual_pairs(&cur, log);
        if pairs.is_empty() {
            break;
        }
        let mut done = false;
        for pair in &pairs {
            let plans = lens_plans(&cur, pair.a, pair.b)
                .into_iter()
                .chain(lens_plans(&cur, pair.b, pair.a));
            if let Some((h, rec)) = first_improving(&cur, k, plans) {
                log::debug!(
                    "double crossing {}x{} repaired by moving {}",
                    pair.a,
                    pair.b,
                    rec.plan.mover
                );
                repairs.push(Repair {
                    kind: RepairKind::Double,
                    pair: (pair.a, pair.b),
                    follow: rec,
                });
                cur = h;
                done = true;
                break;
            }
        }
        if !done {
            return Err(violation(format!("no repair removes the double crossings {pairs:?}")));
        }
    }
    Ok((cur, repairs))
}

/// Removes every crossing between adjacent edges of an almost simple drawing.
/// Pairs involving an edge moved by an earlier repair go first; within a
/// pair, the edge not rerouted follows the rerouted one first.
pub fn remove_adjacent_crossings(
    g: &TopologicalGraph,
    log: &RerouteLog,
    k: usize,
    moved: &BTreeSet<EdgeId>,
) -> Result<(TopologicalGraph, Vec<Repair>), RedrawError> {
    let rerouted = log.rerouted();
    let mut cur = g.clone();
    let mut repairs = Vec::new();
    loop {
        let mut work = adjacent_pairs(&cur);
        if work.is_empty() {
            break;
        }
        work.sort_by_key(|&(a, b, v)| (!(moved.contains(&a) || moved.contains(&b)), a, b, v));
        let mut done = false;
        for &(a, b, u) in &work {
            let (first, second) = if rerouted.contains(&a) && !rerouted.contains(&b) {
                (b, a)
            } else {
                (a, b)
            };
            let plans = endpoint_plans(&cur, first, second, u)
                .into_iter()
                .chain(endpoint_plans(&cur, second, first, u));
            if let Some((h, rec)) = first_improving(&cur, k, plans) {
                log::debug!("adjacent crossing {a}x{b} at {u} repaired by moving {}", rec.plan.mover);
                repairs.push(Repair {
                    kind: RepairKind::Adjacent,
                    pair: (a, b),
                    follow: rec,
                });
                cur = h;
                done = true;
                break;
            }
        }
        if !done {
            return Err(violation(format!("no repair removes the adjacent crossings {work:?}")));
        }
    }
    Ok((cur, repairs))
}

/// Edges moved by a list of repairs.
pub fn moved_edges(repairs: &[Repair]) -> BTreeSet<EdgeId> {
    repairs.iter().map(|r| r.follow.plan.mover).collect()
}

/// Per-edge count of repairs that moved it.
pub fn repair_counts(repairs: &[Repair]) -> BTreeMap<EdgeId, usize> {
    let mut m = BTreeMap::new();
    for r in repairs {
        *m.entry(r.follow.plan.mover).or_default() += 1;
    }
    m
}
