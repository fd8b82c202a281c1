//! Seeded generators: straight-line drawings on integer points, and the named
//! fixtures.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::IoError;
use crate::fixtures;
use crate::io::geom::{ingest_geometric, GeometricDrawing, Point};
use crate::topo::TopologicalGraph;

/// Generator selection with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenKind {
    ConvexChords { n: u32, chords: Vec<(u32, u32)> },
    RandomKPlanar { n: usize, m: usize, k: usize },
    Tangled,
    Mutual,
    Adj,
}

impl FromStr for GenKind {
    type Err = IoError;

    /// Parameterless kinds only; parameters are supplied separately.
    fn from_str(s: &str) -> Result<Self, IoError> {
        match s {
            "tangled" | "tangled_fixture" => Ok(GenKind::Tangled),
            "mutual" | "mutual_fixture" => Ok(GenKind::Mutual),
            "adj" | "adj_fixture" => Ok(GenKind::Adj),
            _ => Err(IoError::UnknownKind(s.to_string())),
        }
    }
}

pub fn generate(kind: &GenKind, seed: u64) -> Result<TopologicalGraph, IoError> {
    match kind {
        GenKind::ConvexChords { n, chords } => ingest_geometric(&fixtures::convex_chords_drawing(*n, chords)),
        GenKind::RandomKPlanar { n, m, k } => random_kplanar(*n, *m, *k, seed),
        GenKind::Tangled => Ok(fixtures::tangled()),
        GenKind::Mutual => Ok(fixtures::mutual()),
        GenKind::Adj => Ok(fixtures::adj()),
    }
}

/// Outer attempts before giving up.
pub const ATTEMPTS: usize = 64;

type Q = Ratio<i128>;
type P = (i64, i64);

fn orient(a: P, b: P, c: P) -> i128 {
    let (ax, ay, bx, by, cx, cy) = (
        a.0 as i128,
        a.1 as i128,
        b.0 as i128,
        b.1 as i128,
        c.0 as i128,
        c.1 as i128,
    );
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
}

fn strictly_inside(a: P, b: P, c: P) -> bool {
    orient(a, b, c) == 0 && (c.0 - a.0) * (c.0 - b.0) + (c.1 - a.1) * (c.1 - b.1) < 0
}

enum Meet {
    Apart,
    Cross((Q, Q)),
    Degenerate,
}

/// Segments `ab` and `cd`; shared endpoints are allowed when not collinear.
fn meet(a: P, b: P, c: P, d: P) -> Meet {
    let shared = [a, b].iter().filter(|p| **p == c || **p == d).count();
    if shared > 0 {
        let (o1, o2) = (orient(a, b, c), orient(a, b, d));
        return if o1 == 0 && o2 == 0 {
            Meet::Degenerate
        } else {
            Meet::Apart
        };
    }
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    if o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0 {
        let touching = strictly_inside(a, b, c)
            || strictly_inside(a, b, d)
            || strictly_inside(c, d, a)
            || strictly_inside(c, d, b);
        let collinear = o1 == 0 && o2 == 0;
        return if touching || collinear {
            Meet::Degenerate
        } else {
            Meet::Apart
        };
    }
    if (o1 > 0) == (o2 > 0) || (o3 > 0) == (o4 > 0) {
        return Meet::Apart;
    }
    // a + t (b - a) with t = o3 / (o3 - o4).
    let t = Q::new(o3, o3 - o4);
    let x = Q::from_integer(a.0 as i128) + t * Q::from_integer((b.0 - a.0) as i128);
    let y = Q::from_integer(a.1 as i128) + t * Q::from_integer((b.1 - a.1) as i128);
    Meet::Cross((x, y))
}

/// Incremental straight-line drawing kept in general position and k-planar.
struct Builder {
    k: usize,
    points: Vec<P>,
    edges: Vec<(usize, usize)>,
    crossings: Vec<usize>,
    points_seen: BTreeSet<(Q, Q)>,
    parent: Vec<usize>,
}

impl Builder {
    fn new(k: usize, points: Vec<P>) -> Self {
        let n = points.len();
        Builder {
            k,
            points,
            edges: Vec::new(),
            crossings: Vec::new(),
            points_seen: BTreeSet::new(),
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }

    /// Adds `uv` if it keeps the drawing in general position and k-planar.
    fn try_add(&mut self, u: usize, v: usize) -> bool {
        if u == v || self.has_edge(u, v) {
            return false;
        }
        let (a, b) = (self.points[u], self.points[v]);
        if self
            .points
            .iter()
            .enumerate()
            .any(|(i, &p)| i != u && i != v && strictly_inside(a, b, p))
        {
            return false;
        }
        let mut hits = Vec::new();
        let mut at = BTreeSet::new();
        for (i, &(c, d)) in self.edges.iter().enumerate() {
            match meet(a, b, self.points[c], self.points[d]) {
                Meet::Apart => {}
                Meet::Degenerate => return false,
                Meet::Cross(pt) => {
                    if self.crossings[i] >= self.k || self.points_seen.contains(&pt) || !at.insert(pt) {
                        return false;
                    }
                    hits.push(i);
                }
            }
        }
        if hits.len() > self.k {
            return false;
        }
        for &i in &hits {
            self.crossings[i] += 1;
        }
        self.points_seen.extend(at);
        self.edges.push((u, v));
        self.crossings.push(hits.len());
        let (ru, rv) = (self.find(u), self.find(v));
        self.parent[ru] = rv;
        true
    }

    fn connected(&mut self) -> bool {
        let r = self.find(0);
        (0..self.points.len()).all(|v| self.find(v) == r)
    }

    fn drawing(&self) -> GeometricDrawing {
        let mut d = GeometricDrawing::default();
        for (i, &(x, y)) in self.points.iter().enumerate() {
            d.add_point(i as u32, Point::int(x, y));
        }
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            d.add_edge(i as u32, u as u32, v as u32, vec![]);
        }
        d
    }
}

/// One of the eight axis symmetries.
fn transform(p: P, sym: u8) -> P {
    let (x, y) = if sym & 4 != 0 { (p.1, p.0) } else { p };
    let x = if sym & 1 != 0 { -x } else { x };
    let y = if sym & 2 != 0 { -y } else { y };
    (x, y)
}

fn sq_dist(a: P, b: P) -> i64 {
    (a.0 - b.0).pow(2) + (a.1 - b.1).pow(2)
}

/// Number of planted (k+1)-crossing gadgets for `n` vertices.
pub fn gadget_count(n: usize, k: usize) -> usize {
    let size = 2 * (k + 1);
    if n < size {
        0
    } else {
        (n / (2 * size)).max(1)
    }
}

/// Parameters of [`random_kplanar_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    /// Side of the coordinate square; defaults to `40 + 12n`.
    pub side: Option<i64>,
    /// Planted gadgets; defaults to [`gadget_count`].
    pub gadgets: Option<usize>,
}

impl RandomSpec {
    pub fn new(n: usize, m: usize, k: usize) -> Self {
        RandomSpec {
            n,
            m,
            k,
            side: None,
            gadgets: None,
        }
    }
}

fn attempt(spec: &RandomSpec, rng: &mut ChaCha8Rng) -> Option<GeometricDrawing> {
    let RandomSpec { n, m, k, .. } = *spec;
    let size = 2 * (k + 1);
    let side = spec.side.unwrap_or(40 + 12 * n as i64).max(1);
    if spec.gadgets.unwrap_or(0) * size > n {
        return None;
    }
    let mut points: Vec<P> = Vec::new();
    let mut gadgets: Vec<Vec<usize>> = Vec::new();
    for _ in 0..spec.gadgets.unwrap_or_else(|| gadget_count(n, k)) {
        // Convex position on a parabola, chords joining opposite points.
        let (sx, sy) = (rng.gen_range(1..=3), rng.gen_range(1..=2));
        let sym = rng.gen_range(0..8u8);
        let (cx, cy) = (rng.gen_range(0..side), rng.gen_range(0..side));
        let ids: Vec<usize> = (0..size).map(|i| points.len() + i).collect();
        for i in 0..size as i64 {
            let (x, y) = transform((sx * i, sy * i * i), sym);
            points.push((cx + x, cy + y));
        }
        gadgets.push(ids);
    }
    let mut seen: BTreeSet<P> = points.iter().copied().collect();
    if seen.len() != points.len() {
        return None;
    }
    while points.len() < n {
        let p = (rng.gen_range(0..side), rng.gen_range(0..side));
        if seen.insert(p) {
            points.push(p);
        }
    }

    let mut b = Builder::new(k, points.clone());
    for ids in &gadgets {
        for i in 0..=k {
            if !b.try_add(ids[i], ids[i + k + 1]) {
                return None;
            }
        }
    }
    // Short edges first until connected, then random near pairs.
    let mut pairs: Vec<(i64, u32, usize, usize)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((sq_dist(points[u], points[v]), rng.gen(), u, v));
        }
    }
    pairs.sort();
    for &(_, _, u, v) in &pairs {
        if b.edges.len() >= m {
            break;
        }
        if b.find(u) != b.find(v) {
            b.try_add(u, v);
        }
    }
    if !b.connected() {
        return None;
    }
    let near = pairs.len().min(n * 8);
    let mut extra: Vec<(usize, usize)> = pairs[..near].iter().map(|&(_, _, u, v)| (u, v)).collect();
    extra.shuffle(rng);
    for (u, v) in extra {
        if b.edges.len() >= m {
            break;
        }
        b.try_add(u, v);
    }
    (b.edges.len() == m).then(|| b.drawing())
}

/// A simple k-planar straight-line drawing with `n` vertices and `m` edges,
/// connected, with planted (k+1)-crossings when `n >= 2k + 2`.
pub fn random_kplanar_drawing(n: usize, m: usize, k: usize, seed: u64) -> Result<GeometricDrawing, IoError> {
    random_kplanar_with(&RandomSpec::new(n, m, k), seed)
}

pub fn random_kplanar_with(spec: &RandomSpec, seed: u64) -> Result<GeometricDrawing, IoError> {
    let RandomSpec { n, m, .. } = *spec;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n == 0 || m + 1 < n || m > n * (n - 1) / 2 {
        return Err(IoError::GenerationExhausted(0));
    }
    for _ in 0..ATTEMPTS {
        if let Some(d) = attempt(spec, &mut rng) {
            return Ok(d);
        }
    }
    Err(IoError::GenerationExhausted(ATTEMPTS))
}

pub fn random_kplanar(n: usize, m: usize, k: usize, seed: u64) -> Result<TopologicalGraph, IoError> {
    ingest_geometric(&random_kplanar_drawing(n, m, k, seed)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{find_k1_crossings, is_k_planar, is_simple};

    #[test]
    fn random_instance_is_simple_and_k_planar() {
        let g = random_kplanar(20, 40, 3, 1).unwrap();
        assert_eq!(g.vertex_count(), 20);
        assert_eq!(g.edge_count(), 40);
        assert!(is_simple(&g).simple);
        assert!(is_k_planar(&g, 3).0);
        assert!(!find_k1_crossings(&g, 3).unwrap().is_empty());
    }

    #[test]
    fn generation_is_pure_in_the_seed() {
        assert_eq!(
            random_kplanar(16, 30, 4, 9).unwrap(),
            random_kplanar(16, 30, 4, 9).unwrap()
        );
        assert_ne!(
            random_kplanar(16, 30, 4, 9).unwrap(),
            random_kplanar(16, 30, 4, 10).unwrap()
        );
    }

    #[test]
    fn impossible_budget_is_reported() {
        assert!(matches!(
            random_kplanar(10, 3, 3, 0),
            Err(IoError::GenerationExhausted(_))
        ));
        // A spanning tree containing every gadget chord.
        assert!(random_kplanar(40, 39, 3, 0).is_ok());
        assert!(matches!(
            random_kplanar(5, 11, 3, 0),
            Err(IoError::GenerationExhausted(_))
        ));
    }

    #[test]
    fn segment_meet_cases() {
        assert!(matches!(meet((0, 0), (2, 2), (0, 2), (2, 0)), Meet::Cross(_)));
        assert!(matches!(meet((0, 0), (2, 0), (1, 0), (1, 5)), Meet::Degenerate));
        assert!(matches!(meet((0, 0), (2, 0), (0, 0), (0, 3)), Meet::Apart));
        assert!(matches!(meet((0, 0), (2, 0), (0, 0), (5, 0)), Meet::Degenerate));
        assert!(matches!(meet((0, 0), (1, 1), (3, 0), (0, 3)), Meet::Apart));
    }

    #[test]
    fn named_kinds_parse() {
        assert_eq!("tangled".parse::<GenKind>().unwrap(), GenKind::Tangled);
        assert!("nope".parse::<GenKind>().is_err());
    }
}
