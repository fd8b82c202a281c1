//! The `.qtg` format: one JSON object per line.
//!
//! ```text
//! {"format":"qtg","version":1}
//! {"vertex":0,"rotation":[0,4]}
//! {"edge":0,"tail":0,"head":4}
//! {"crossing":0,"edge_a":0,"edge_b":1,"index_on_a":0,"index_on_b":0,"sign":1}
//! {"outer":"0:0:f"}
//! ```
//!
//! Canonical form: header first, then vertices, edges and crossings sorted by
//! id, crossings numbered by `(edge_a, index_on_a)`, then the outer face.
//! Blank lines and lines starting with `#` are ignored on input.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{BuildError, IoError};
use crate::topo::{Crossing, Dart, Edge, EdgeId, Sign, TopologicalGraph, VertexId};

pub const FORMAT: &str = "qtg";
pub const VERSION: u64 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    format: String,
    version: u64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexLine {
    vertex: u32,
    rotation: Vec<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeLine {
    edge: u32,
    tail: u32,
    head: u32,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CrossingLine {
    crossing: usize,
    edge_a: u32,
    edge_b: u32,
    index_on_a: usize,
    index_on_b: usize,
    sign: i8,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OuterLine {
    outer: String,
}

/// A parsed but unvalidated document, with the line of every record.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawDocument {
    pub vertices: Vec<(VertexId, Vec<EdgeId>, usize)>,
    pub edges: Vec<(Edge, usize)>,
    pub crossings: Vec<(usize, Crossing, usize)>,
    pub outer: Option<(Dart, usize)>,
}

fn syntax(line: usize, message: impl Into<String>) -> IoError {
    IoError::Syntax {
        line,
        message: message.into(),
    }
}

fn record<T: for<'de> Deserialize<'de>>(v: Value, line: usize, kind: &str) -> Result<T, IoError> {
    serde_json::from_value(v).map_err(|e| syntax(line, format!("bad {kind} record: {e}")))
}

/// Reads the records of a document without validating the drawing.
pub fn parse_raw(text: &str) -> Result<RawDocument, IoError> {
    let mut doc = RawDocument::default();
    let mut header = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let v: Value = serde_json::from_str(s).map_err(|e| syntax(line, format!("invalid JSON: {e}")))?;
        let Some(obj) = v.as_object() else {
            return Err(syntax(line, "expected a JSON object"));
        };
        if !header {
            let h: Header = record(v.clone(), line, "header").map_err(|_| {
                syntax(
                    line,
                    format!("expected header {{\"format\":\"{FORMAT}\",\"version\":{VERSION}}}"),
                )
            })?;
            if h.format != FORMAT {
                return Err(syntax(
                    line,
                    format!("unknown format {:?}, expected {FORMAT:?}", h.format),
                ));
            }
            if h.version != VERSION {
                return Err(syntax(
                    line,
                    format!(
                        "unsupported version {}; this reader understands version {VERSION}",
                        h.version
                    ),
                ));
            }
            header = true;
            continue;
        }
        if obj.contains_key("vertex") {
            let r: VertexLine = record(v, line, "vertex")?;
            doc.vertices
                .push((VertexId(r.vertex), r.rotation.into_iter().map(EdgeId).collect(), line));
        } else if obj.contains_key("edge") {
            let r: EdgeLine = record(v, line, "edge")?;
            doc.edges.push((Edge::new(r.edge, r.tail, r.head), line));
        } else if obj.contains_key("crossing") {
            let r: CrossingLine = record(v, line, "crossing")?;
            let sign =
                Sign::from_i8(r.sign).ok_or_else(|| syntax(line, format!("sign must be 1 or -1, got {}", r.sign)))?;
            doc.crossings.push((
                r.crossing,
                Crossing {
                    edge_a: EdgeId(r.edge_a),
                    edge_b: EdgeId(r.edge_b),
                    index_on_a: r.index_on_a,
                    index_on_b: r.index_on_b,
                    sign,
                },
                line,
            ));
        } else if obj.contains_key("outer") {
            let r: OuterLine = record(v, line, "outer")?;
            let d = Dart::parse_token(&r.outer).ok_or_else(|| syntax(line, format!("bad dart token {:?}", r.outer)))?;
            if doc.outer.is_some() {
                return Err(syntax(line, "outer face given twice"));
            }
            doc.outer = Some((d, line));
        } else {
            return Err(syntax(line, "unknown record; expected vertex, edge, crossing or outer"));
        }
    }
    if !header {
        return Err(syntax(
            1,
            format!("missing header {{\"format\":\"{FORMAT}\",\"version\":{VERSION}}}"),
        ));
    }
    let mut ids = BTreeSet::new();
    for (id, _, line) in &doc.crossings {
        if !ids.insert(*id) {
            return Err(syntax(*line, format!("duplicate crossing id {id}")));
        }
    }
    Ok(doc)
}

impl RawDocument {
    /// Line most responsible for a build error.
    fn line_of(&self, err: &BuildError) -> usize {
        let vertex_line = |v: VertexId| self.vertices.iter().find(|x| x.0 == v).map(|x| x.2);
        let edge_line = |e: EdgeId| self.edges.iter().rev().find(|x| x.0.id == e).map(|x| x.1);
        let crossing_on = |e: EdgeId| {
            self.crossings
                .iter()
                .find(|x| x.1.edge_a == e || x.1.edge_b == e)
                .map(|x| x.2)
        };
        let found = match err {
            BuildError::DuplicateVertex(v) => self.vertices.iter().filter(|x| x.0 == *v).nth(1).map(|x| x.2),
            BuildError::DuplicateEdge(e) | BuildError::SelfLoop(e) | BuildError::ParallelEdge(_, e) => edge_line(*e),
            BuildError::UnknownVertex { edge, .. } => edge_line(*edge),
            BuildError::UnknownEdge(e) => {
                crossing_on(*e).or_else(|| self.vertices.iter().find(|x| x.1.contains(e)).map(|x| x.2))
            }
            BuildError::Disconnected(v) | BuildError::BadRotation { vertex: v } => vertex_line(*v),
            BuildError::InconsistentCrossingIndex { edge, .. } => crossing_on(*edge),
            BuildError::SelfCrossing(_) | BuildError::NonPlanarRotationSystem { .. } => None,
            BuildError::BadOuterFace(_) => self.outer.map(|x| x.1),
        };
        found.unwrap_or(0)
    }

    pub fn build(&self) -> Result<TopologicalGraph, IoError> {
        let rotations: BTreeMap<VertexId, Vec<EdgeId>> =
            self.vertices.iter().map(|(v, r, _)| (*v, r.clone())).collect();
        TopologicalGraph::build(
            self.vertices.iter().map(|x| x.0),
            self.edges.iter().map(|x| x.0),
            self.crossings.iter().map(|x| x.1),
            rotations,
            self.outer.map(|x| x.0),
        )
        .map_err(|source| IoError::Build {
            line: self.line_of(&source),
            source,
        })
    }

    /// Connected components of the vertex/edge graph, as separate documents
    /// without crossings between components.
    pub fn split(&self) -> Vec<RawDocument> {
        let ids: Vec<VertexId> = self.vertices.iter().map(|x| x.0).collect();
        let mut parent: BTreeMap<VertexId, VertexId> = ids.iter().map(|&v| (v, v)).collect();
        fn find(p: &mut BTreeMap<VertexId, VertexId>, mut v: VertexId) -> VertexId {
            while p[&v] != v {
                let up = p[&p[&v]];
                p.insert(v, up);
                v = up;
            }
            v
        }
        let edge_ends: BTreeMap<EdgeId, (VertexId, VertexId)> =
            self.edges.iter().map(|(e, _)| (e.id, (e.tail, e.head))).collect();
        let mut join = |a: VertexId, b: VertexId| {
            if parent.contains_key(&a) && parent.contains_key(&b) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent.insert(ra, rb);
            }
        };
        for &(t, h) in edge_ends.values() {
            join(t, h);
        }
        for (_, c, _) in &self.crossings {
            if let (Some(&(a, _)), Some(&(b, _))) = (edge_ends.get(&c.edge_a), edge_ends.get(&c.edge_b)) {
                join(a, b);
            }
        }
        let mut parts: BTreeMap<VertexId, RawDocument> = BTreeMap::new();
        let root_of: BTreeMap<VertexId, VertexId> = ids.iter().map(|&v| (v, find(&mut parent, v))).collect();
        for x in &self.vertices {
            parts.entry(root_of[&x.0]).or_default().vertices.push(x.clone());
        }
        for x in &self.edges {
            if let Some(r) = root_of.get(&x.0.tail) {
                parts.entry(*r).or_default().edges.push(*x);
            }
        }
        for x in &self.crossings {
            if let Some(r) = edge_ends.get(&x.1.edge_a).and_then(|(t, _)| root_of.get(t)) {
                parts.entry(*r).or_default().crossings.push(*x);
            }
        }
        if let Some((d, line)) = self.outer {
            if let Some(r) = edge_ends.get(&d.edge).and_then(|(t, _)| root_of.get(t)) {
                parts.entry(*r).or_default().outer = Some((d, line));
            }
        }
        parts.into_values().collect()
    }

    /// Canonical text of the raw records (no validation).
    pub fn to_text(&self) -> String {
        let mut out = header_line();
        let mut vertices = self.vertices.clone();
        vertices.sort_by_key(|x| x.0);
        for (v, rot, _) in vertices {
            push_line(
                &mut out,
                &VertexLine {
                    vertex: v.0,
                    rotation: rot.iter().map(|e| e.0).collect(),
                },
            );
        }
        let mut edges: Vec<Edge> = self.edges.iter().map(|x| x.0).collect();
        edges.sort_by_key(|e| e.id);
        for e in edges {
            push_line(
                &mut out,
                &EdgeLine {
                    edge: e.id.0,
                    tail: e.tail.0,
                    head: e.head.0,
                },
            );
        }
        let mut crossings: Vec<Crossing> = self.crossings.iter().map(|x| normalised(x.1)).collect();
        crossings.sort_by_key(|c| (c.edge_a, c.index_on_a, c.edge_b, c.index_on_b));
        push_crossings(&mut out, &crossings);
        if let Some((d, _)) = self.outer {
            push_line(&mut out, &OuterLine { outer: d.token() });
        }
        out
    }
}

fn normalised(c: Crossing) -> Crossing {
    if c.edge_a <= c.edge_b {
        c
    } else {
        Crossing {
            edge_a: c.edge_b,
            edge_b: c.edge_a,
            index_on_a: c.index_on_b,
            index_on_b: c.index_on_a,
            sign: c.sign.flip(),
        }
    }
}

fn header_line() -> String {
    let mut out = String::new();
    push_line(
        &mut out,
        &Header {
            format: FORMAT.to_string(),
            version: VERSION,
        },
    );
    out
}

fn push_line<T: Serialize>(out: &mut String, v: &T) {
    out.push_str(&serde_json::to_string(v).expect("record serializes"));
    out.push('\n');
}

fn push_crossings(out: &mut String, crossings: &[Crossing]) {
    for (i, c) in crossings.iter().enumerate() {
        push_line(
            out,
            &CrossingLine {
                crossing: i,
                edge_a: c.edge_a.0,
                edge_b: c.edge_b.0,
                index_on_a: c.index_on_a,
                index_on_b: c.index_on_b,
                sign: c.sign.as_i8(),
            },
        );
    }
}

pub fn parse(text: &str) -> Result<TopologicalGraph, IoError> {
    parse_raw(text)?.build()
}

/// Canonical serialization; the outer face is written when it is set.
pub fn serialize(g: &TopologicalGraph) -> String {
    let mut out = header_line();
    for v in g.vertex_ids() {
        push_line(
            &mut out,
            &VertexLine {
                vertex: v.0,
                rotation: g.rotation(v).iter().map(|e| e.0).collect(),
            },
        );
    }
    for e in g.edges() {
        push_line(
            &mut out,
            &EdgeLine {
                edge: e.id.0,
                tail: e.tail.0,
                head: e.head.0,
            },
        );
    }
    push_crossings(&mut out, g.crossings());
    if let Some(d) = g.outer_face() {
        push_line(&mut out, &OuterLine { outer: d.token() });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn convex4_round_trips() {
        let g = fixtures::convex4();
        let text = serialize(&g);
        let h = parse(&text).unwrap();
        assert_eq!(h, g);
        assert_eq!(serialize(&h), text);
        assert_eq!(text.lines().count(), 1 + 8 + 4 + 6 + 1);
    }

    #[test]
    fn every_fixture_round_trips() {
        for (name, _, g) in fixtures::named() {
            assert_eq!(parse(&serialize(&g)).unwrap(), g, "{name}");
        }
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let text = serialize(&fixtures::pentagram());
        // Shuffle records and swap the sides of a crossing.
        let mut lines: Vec<&str> = text.lines().collect();
        let header = lines.remove(0);
        lines.reverse();
        let mut shuffled = vec![header.to_string()];
        shuffled.extend(lines.iter().map(|l| l.to_string()));
        let once = parse_raw(&shuffled.join("\n")).unwrap().to_text();
        assert_eq!(once, text);
        assert_eq!(parse_raw(&once).unwrap().to_text(), once);
    }

    #[test]
    fn missing_mirror_index_is_inconsistent() {
        let text = serialize(&fixtures::convex4());
        let broken = text.replacen("\"index_on_b\":0", "\"index_on_b\":7", 1);
        match parse(&broken) {
            Err(IoError::Build {
                line,
                source: BuildError::InconsistentCrossingIndex { .. },
            }) => assert!(line > 0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_version_hints_the_supported_one() {
        let err = parse("{\"format\":\"qtg\",\"version\":9}\n").unwrap_err();
        let msg = err.to_string();
        assert!(matches!(err, IoError::Syntax { line: 1, .. }));
        assert!(msg.contains("version 1"), "{msg}");
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let text = "{\"format\":\"qtg\",\"version\":1}\n{\"vertex\":0}\n";
        assert!(matches!(parse(text), Err(IoError::Syntax { line: 2, .. })));
        let text = "{\"format\":\"qtg\",\"version\":1}\n\n# note\nnot json\n";
        assert!(matches!(parse(text), Err(IoError::Syntax { line: 4, .. })));
    }

    #[test]
    fn disconnected_documents_split() {
        let text = "{\"format\":\"qtg\",\"version\":1}\n\
            {\"vertex\":0,\"rotation\":[0]}\n{\"vertex\":1,\"rotation\":[0]}\n\
            {\"vertex\":2,\"rotation\":[1]}\n{\"vertex\":3,\"rotation\":[1]}\n\
            {\"edge\":0,\"tail\":0,\"head\":1}\n{\"edge\":1,\"tail\":2,\"head\":3}\n";
        let raw = parse_raw(text).unwrap();
        assert!(matches!(
            raw.build(),
            Err(IoError::Build {
                source: BuildError::Disconnected(_),
                ..
            })
        ));
        let parts = raw.split();
        assert_eq!(parts.len(), 2);
        for p in parts {
            assert_eq!(p.build().unwrap().edge_count(), 1);
        }
    }
}
