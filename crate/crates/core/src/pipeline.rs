//! End-to-end rewrite of a k-planar simple drawing into a simple drawing of
//! the same labeled graph with no k+1 pairwise crossing edges, plus an
//! independent certificate.

use serde::Serialize;

use crate::analysis::{self, find_k1_crossings, is_quasi_planar, Violation};
use crate::error::PipelineError;
use crate::reroute::{
    audit_global, build_matching_instance, find_matching, global_reroute, hall_audit, AuditReport, HallAudit,
};
use crate::simplify::{moved_edges, remove_adjacent_crossings, remove_double_crossings};
use crate::topo::{same_labeled_graph, EdgeId, TopologicalGraph, VertexId};
use crate::untangle::{untangle_all, UntangleStats};

/// Seed of the sampled neighbourhood audit.
pub const HALL_SEED: u64 = 0x5eed;
/// Subsets sampled by the neighbourhood audit when it is not exhaustive.
pub const HALL_SAMPLES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub input_simple: bool,
    pub input_k_planar: bool,
    pub output_simple: bool,
    pub output_quasi_planar: bool,
    pub labeled_graph_preserved: bool,
}

impl Verdicts {
    pub fn all(&self) -> bool {
        self.input_simple
            && self.input_k_planar
            && self.output_simple
            && self.output_quasi_planar
            && self.labeled_graph_preserved
    }
}

/// Evidence attached to a failing verdict.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    /// k+1 pairwise crossing edges of the output.
    pub output_clique: Option<Vec<EdgeId>>,
    pub input_violations: Vec<Violation>,
    pub output_violations: Vec<Violation>,
    /// Most crossed input edge and its crossing count.
    pub input_max_crossings: Option<(EdgeId, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RerouteDigest {
    pub crossing: Vec<EdgeId>,
    pub edge: EdgeId,
    pub pivot: VertexId,
    pub hook: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stages {
    pub untangle: UntangleStats,
    /// Member sets of the (k+1)-crossings found after untangling.
    pub crossings: Vec<Vec<EdgeId>>,
    /// Pivot assigned to each crossing, in the order of `crossings`.
    pub pivots: Vec<VertexId>,
    pub hall: Option<HallAudit>,
    pub reroutes: Vec<RerouteDigest>,
    pub audit: AuditReport,
    pub double_repairs: usize,
    pub adjacent_repairs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub k: usize,
    pub pass: bool,
    pub verdicts: Verdicts,
    pub witnesses: Witnesses,
    /// Present when produced by [`rewrite`].
    pub stages: Option<Stages>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Recomputes every verdict from the two drawings alone.
pub fn certify(input: &TopologicalGraph, output: &TopologicalGraph, k: usize) -> Certificate {
    let si = analysis::is_simple(input);
    let (kp, _) = analysis::is_k_planar(input, k);
    let so = analysis::is_simple(output);
    let qp = is_quasi_planar(output, k + 1);
    let verdicts = Verdicts {
        input_simple: si.simple,
        input_k_planar: kp,
        output_simple: so.simple,
        output_quasi_planar: qp.quasi_planar,
        labeled_graph_preserved: same_labeled_graph(input, output),
    };
    let witnesses = Witnesses {
        output_clique: qp.witness,
        input_violations: si.violations,
        output_violations: so.violations,
        input_max_crossings: if kp {
            None
        } else {
            input
                .edge_ids()
                .map(|e| (e, input.crossing_count(e)))
                .max_by_key(|&(e, c)| (c, std::cmp::Reverse(e)))
        },
    };
    Certificate {
        k,
        pass: verdicts.all(),
        verdicts,
        witnesses,
        stages: None,
    }
}

fn fail(stage: &str, detail: impl std::fmt::Display) -> PipelineError {
    PipelineError::InvariantViolation(format!("{stage}: {detail}"))
}

/// Runs untangling, global rerouting and simplicity repair, then certifies.
pub fn rewrite(g: &TopologicalGraph, k: usize) -> Result<(TopologicalGraph, Certificate), PipelineError> {
    if k < 3 {
        return Err(PipelineError::BadK(k));
    }
    let report = analysis::is_simple(g);
    if let Some(v) = report.violations.first() {
        return Err(PipelineError::NotSimpleInput(format!("{v:?}")));
    }
    if let Some(e) = g.edge_ids().find(|&e| g.crossing_count(e) > k) {
        return Err(PipelineError::NotKPlanarInput {
            k,
            edge: e,
            count: g.crossing_count(e),
        });
    }

    let (untangled, untangle) = untangle_all(g, k)?;
    log::info!("untangled in {} steps", untangle.iterations);
    let found = find_k1_crossings(&untangled, k).map_err(|e| fail("detect", e))?;
    log::info!("{} crossings of size {}", found.len(), k + 1);

    let mut stages = Stages {
        untangle,
        crossings: found.iter().map(|x| x.edges.clone()).collect(),
        pivots: Vec::new(),
        hall: None,
        reroutes: Vec::new(),
        audit: AuditReport::default(),
        double_repairs: 0,
        adjacent_repairs: 0,
    };

    let out = if found.is_empty() {
        untangled
    } else {
        let m = build_matching_instance(&untangled, &found)?;
        let hall = hall_audit(&m, k, HALL_SEED, HALL_SAMPLES);
        if !hall.passed() {
            return Err(fail("matching", format!("neighbourhood audit failed: {hall:?}")));
        }
        let pivots = find_matching(&m)?;
        let assignment: Vec<_> = found.iter().cloned().zip(pivots.iter().copied()).collect();
        let (rerouted, log) = global_reroute(&untangled, k, &assignment)?;
        let audit = audit_global(&untangled, &rerouted, &log, k);
        if !audit.passed() {
            return Err(fail("reroute audit", format!("{:?}", audit.failed())));
        }
        let (almost, doubles) = remove_double_crossings(&rerouted, &log, k)?;
        if !analysis::is_almost_simple(&almost) {
            return Err(fail("double crossings", "result is not almost simple"));
        }
        let (simple, adjacent) = remove_adjacent_crossings(&almost, &log, k, &moved_edges(&doubles))?;
        stages.pivots = pivots;
        stages.hall = Some(hall);
        stages.reroutes = log
            .entries
            .iter()
            .map(|e| RerouteDigest {
                crossing: e.crossing.edges.clone(),
                edge: e.edge,
                pivot: e.pivot,
                hook: e.hook.clone(),
            })
            .collect();
        stages.audit = audit;
        stages.double_repairs = doubles.len();
        stages.adjacent_repairs = adjacent.len();
        simple
    };

    let mut cert = certify(g, &out, k);
    if !cert.pass {
        return Err(fail("certify", format!("{:?}", cert.verdicts)));
    }
    cert.stages = Some(stages);
    Ok((out, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn convex4_passes() {
        let g = fixtures::convex4();
        let (h, cert) = rewrite(&g, 3).unwrap();
        assert!(cert.pass);
        assert_eq!(h.crossing_count(EdgeId(0)) + h.crossing_count(EdgeId(1)), 4);
        assert_eq!(h.crossing_pairs().len(), 5);
    }

    #[test]
    fn k2_is_rejected() {
        assert_eq!(rewrite(&fixtures::convex4(), 2).unwrap_err(), PipelineError::BadK(2));
    }

    #[test]
    fn certify_flags_the_input_itself() {
        let g = fixtures::convex4();
        let cert = certify(&g, &g, 3);
        assert!(!cert.pass);
        assert!(!cert.verdicts.output_quasi_planar);
        let w = cert.witnesses.output_clique.unwrap();
        assert_eq!(w, (0..4).map(EdgeId).collect::<Vec<_>>());
    }

    #[test]
    fn every_named_fixture_passes() {
        for (name, k, g) in fixtures::named() {
            let (_, cert) = rewrite(&g, k).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(cert.pass, "{name}");
        }
    }

    #[test]
    fn rewrite_is_deterministic() {
        let g = fixtures::nested_tangled();
        let a = rewrite(&g, 3).unwrap();
        let b = rewrite(&g, 3).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1.to_json(), b.1.to_json());
    }
}
