//! The graphs underlying honeycombs: the triangle `Δ_n`, the infinite strip
//! `Γ̃_n` (through representatives only) and its quotient `Γ_n`.
//!
//! Vertices of `Γ̃_n` are `Ã_{i,j}` and `B̃_{i,j}` with `0 ≤ i ≤ n` and
//! `j ∈ ℤ`. Every edge runs from an `A` vertex to a `B` vertex:
//!
//! * `Ã_{i,j} → B̃_{i,j}` points north,
//! * `Ã_{i,j} → B̃_{i−1,j}` points south-west,
//! * `Ã_{i,j} → B̃_{i−1,j−1}` points south-east.
//!
//! The deck transformation `σ` sends `Ã_{i,j} ↦ B̃_{n−i, j−i+2n}` and
//! `B̃_{i,j} ↦ Ã_{n−i, j−i+2n}`; `σ²` is the shift `j ↦ j + 3n`. On vertex
//! positions `σ` acts by [`crate::plane::untwist`], so a position stored for
//! `Ã_{i,j}` determines every vertex of its orbit.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cache::{per_size, SizeCache};
use crate::error::Error;
use crate::plane::Dir;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    A,
    B,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub kind: Kind,
    pub i: i64,
    pub j: i64,
}

impl VertexId {
    pub fn a(i: i64, j: i64) -> Self {
        VertexId { kind: Kind::A, i, j }
    }

    pub fn b(i: i64, j: i64) -> Self {
        VertexId { kind: Kind::B, i, j }
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::A => "A",
            Kind::B => "B",
        };
        write!(f, "{}:{}:{}", k, self.i, self.j)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for VertexId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidInput(format!("bad vertex label `{s}`"));
        let mut it = s.split(':');
        let kind = match it.next() {
            Some("A") => Kind::A,
            Some("B") => Kind::B,
            _ => return Err(bad()),
        };
        let i = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
        let j = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
        if it.next().is_some() {
            return Err(bad());
        }
        Ok(VertexId { kind, i, j })
    }
}

impl Serialize for VertexId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DirectedEdge {
    pub tail: VertexId,
    pub head: VertexId,
    pub dir: Dir,
}

/// Head of the edge leaving `Ã_{i,j}` in direction `dir`.
pub fn head_of(i: i64, j: i64, dir: Dir) -> VertexId {
    match dir {
        Dir::North => VertexId::b(i, j),
        Dir::SouthWest => VertexId::b(i - 1, j),
        Dir::SouthEast => VertexId::b(i - 1, j - 1),
    }
}

/// Tail of the edge entering `B̃_{i,j}` in direction `dir`.
pub fn tail_into(i: i64, j: i64, dir: Dir) -> VertexId {
    match dir {
        Dir::North => VertexId::a(i, j),
        Dir::SouthWest => VertexId::a(i + 1, j),
        Dir::SouthEast => VertexId::a(i + 1, j + 1),
    }
}

/// Out-edges of `Ã_{i,j}` inside `Γ̃_n`.
pub fn strip_out_edges(n: i64, i: i64, j: i64) -> Vec<DirectedEdge> {
    if i < 0 || i > n {
        return Vec::new();
    }
    let tail = VertexId::a(i, j);
    let mut out = vec![DirectedEdge {
        tail,
        head: head_of(i, j, Dir::North),
        dir: Dir::North,
    }];
    if i >= 1 {
        for dir in [Dir::SouthWest, Dir::SouthEast] {
            out.push(DirectedEdge {
                tail,
                head: head_of(i, j, dir),
                dir,
            });
        }
    }
    out
}

/// The honeycomb tinkertoy on the triangle `Δ_n`.
#[derive(Clone, Debug)]
pub struct GlTinkertoy {
    pub n: usize,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<DirectedEdge>,
    /// `B̃_{i−1,n}` for `i = 1..n`; their x-coordinates form the first boundary vector.
    pub lambda_family: Vec<VertexId>,
    /// `B̃_{n−i,n−i+1}` for `i = 1..n`; their y-coordinates form the second.
    pub mu_family: Vec<VertexId>,
    /// `B̃_{0,i}` for `i = 1..n`; their z-coordinates form the third.
    pub nu_family: Vec<VertexId>,
}

impl GlTinkertoy {
    pub fn boundary_vertices(&self) -> BTreeSet<VertexId> {
        self.lambda_family
            .iter()
            .chain(&self.mu_family)
            .chain(&self.nu_family)
            .copied()
            .collect()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        match v.kind {
            Kind::A => 1 <= v.i && v.i < v.j && v.j <= self.n as i64,
            Kind::B => 0 <= v.i && v.i < v.j && v.j <= self.n as i64,
        }
    }
}

pub fn build_gl(n: usize) -> Result<GlTinkertoy, Error> {
    if n < 1 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let m = n as i64;
    let mut vertices = Vec::new();
    for j in 1..=m {
        for i in 0..j {
            vertices.push(VertexId::b(i, j));
            if i >= 1 {
                vertices.push(VertexId::a(i, j));
            }
        }
    }
    vertices.sort();
    let mut edges = Vec::new();
    for j in 2..=m {
        for i in 1..j {
            edges.extend(strip_out_edges(m, i, j));
        }
    }
    let lambda_family = (1..=m).map(|i| VertexId::b(i - 1, m)).collect();
    let mu_family = (1..=m).map(|i| VertexId::b(m - i, m - i + 1)).collect();
    let nu_family = (1..=m).map(|i| VertexId::b(0, i)).collect();
    Ok(GlTinkertoy {
        n,
        vertices,
        edges,
        lambda_family,
        mu_family,
        nu_family,
    })
}

/// A vertex of `Γ̃_n` written as `σ^m(Ã_{i,j})` with `1 ≤ j ≤ 3n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassRef {
    pub i: usize,
    pub j: usize,
    /// Position of the vertex is `twist_pow(position of Ã_{i,j}, −twist)`.
    pub sigma: i64,
}

/// Express any vertex of `Γ̃_n` through its quotient representative.
pub fn class_of(n: usize, v: VertexId) -> Result<ClassRef, Error> {
    let m = n as i64;
    if v.i < 0 || v.i > m {
        return Err(Error::InvalidInput(format!("{v} is outside the strip for n = {n}")));
    }
    let p = 3 * m;
    match v.kind {
        Kind::A => {
            let j0 = (v.j - 1).rem_euclid(p) + 1;
            let q = (v.j - j0) / p;
            Ok(ClassRef {
                i: v.i as usize,
                j: j0 as usize,
                sigma: 2 * q,
            })
        }
        Kind::B => {
            // B̃_{i,j} = σ(Ã_{n−i, j−i−n})
            let c = class_of(n, VertexId::a(m - v.i, v.j - v.i - m))?;
            Ok(ClassRef {
                sigma: c.sigma + 1,
                ..c
            })
        }
    }
}

/// Canonical representative `A_{i,j}` (`1 ≤ j ≤ 3n`) of the class of a vertex.
pub fn equiv_vertex(n: usize, kind: Kind, i: i64, j: i64) -> Result<VertexId, Error> {
    if n < 1 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let c = class_of(n, VertexId { kind, i, j })?;
    Ok(VertexId::a(c.i as i64, c.j as i64))
}

/// Canonical name of an edge of `Γ_n`: an out-edge of a representative `Ã_{i,j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId {
    pub i: usize,
    pub j: usize,
    pub dir: Dir,
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A:{}:{}:{}", self.i, self.j, self.dir.short())
    }
}

impl EdgeId {
    pub fn tail(&self) -> VertexId {
        VertexId::a(self.i as i64, self.j as i64)
    }

    pub fn head(&self) -> VertexId {
        head_of(self.i as i64, self.j as i64, self.dir)
    }

    pub fn edge(&self) -> DirectedEdge {
        DirectedEdge {
            tail: self.tail(),
            head: self.head(),
            dir: self.dir,
        }
    }
}

fn reduce(n: usize, i: i64, j: i64, dir: Dir) -> EdgeId {
    let p = 3 * n as i64;
    EdgeId {
        i: i as usize,
        j: ((j - 1).rem_euclid(p) + 1) as usize,
        dir,
    }
}

/// The other out-edge representative in the same `σ`-orbit.
fn partner(n: usize, e: EdgeId) -> EdgeId {
    let m = n as i64;
    let (i, j) = (e.i as i64, e.j as i64);
    match e.dir {
        Dir::North => reduce(n, m - i, j - i + 2 * m, Dir::North),
        Dir::SouthWest => reduce(n, m - i + 1, j - i + 1 + 2 * m, Dir::SouthEast),
        Dir::SouthEast => reduce(n, m - i + 1, j - i + 2 * m, Dir::SouthWest),
    }
}

/// `p_e`: the quotient edge of a directed edge of `Γ̃_n`.
pub fn quotient_edge(n: usize, e: &DirectedEdge) -> Result<EdgeId, Error> {
    let m = n as i64;
    let t = e.tail;
    let ok = t.kind == Kind::A
        && e.head.kind == Kind::B
        && (0..=m).contains(&t.i)
        && (t.i >= 1 || e.dir == Dir::North)
        && head_of(t.i, t.j, e.dir) == e.head;
    if !ok {
        return Err(Error::InvalidInput(format!(
            "{} -> {} ({:?}) is not an edge of the strip",
            e.tail, e.head, e.dir
        )));
    }
    let r = reduce(n, t.i, t.j, e.dir);
    Ok(r.min(partner(n, r)))
}

/// A face of `Γ_n` adjacent to an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Face {
    Hexagon(usize),
    Outer,
}

#[derive(Clone, Debug)]
pub struct QEdge {
    pub id: EdgeId,
    /// The second representative of the class.
    pub partner: EdgeId,
    /// Quotient vertex indices of the two endpoints (tail, head).
    pub ends: [usize; 2],
    pub positive: Face,
    pub negative: Face,
    /// Edges meeting this one at a non-boundary endpoint on the negative side.
    pub f_plus: Vec<usize>,
    /// Edges meeting this one at a non-boundary endpoint on the positive side.
    pub f_minus: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Hexagon {
    pub i: usize,
    pub j: usize,
    /// `Ã_{i,j}, B̃_{i,j}, Ã_{i+1,j+1}, B̃_{i,j+1}, Ã_{i,j+1}, B̃_{i−1,j}` in cyclic order.
    pub vertices: [VertexId; 6],
    /// Edge indices in cyclic order, starting with the edge between the
    /// first two vertices.
    pub edges: [usize; 6],
    /// `+1` when the hexagon lies on the positive side of the edge.
    pub sides: [i8; 6],
}

/// The quotient graph `Γ_n`.
#[derive(Clone, Debug)]
pub struct QuotientGraph {
    pub n: usize,
    pub edges: Vec<QEdge>,
    pub edge_index: HashMap<EdgeId, usize>,
    pub hexagons: Vec<Hexagon>,
    /// Incident edges of every quotient vertex, indexed as in [`QuotientGraph::vertex_index`].
    pub incident: Vec<Vec<usize>>,
}

impl QuotientGraph {
    pub fn vertex_count(&self) -> usize {
        3 * self.n * (self.n + 1)
    }

    pub fn vertex_index(&self, i: usize, j: usize) -> usize {
        i * 3 * self.n + (j - 1)
    }

    pub fn vertex_of_index(&self, idx: usize) -> (usize, usize) {
        (idx / (3 * self.n), idx % (3 * self.n) + 1)
    }

    pub fn is_boundary_vertex(&self, idx: usize) -> bool {
        idx < 3 * self.n
    }

    pub fn edge(&self, id: &EdgeId) -> &QEdge {
        &self.edges[self.edge_index[id]]
    }

    /// Quotient edge index of a directed edge of `Γ̃_n`.
    pub fn edge_of(&self, e: &DirectedEdge) -> Result<usize, Error> {
        Ok(self.edge_index[&quotient_edge(self.n, e)?])
    }

    /// Index of the out-edge of representative `Ã_{i,j}` in direction `dir`.
    pub fn out_edge(&self, i: usize, j: usize, dir: Dir) -> usize {
        let r = EdgeId { i, j, dir };
        self.edge_index[&r.min(partner(self.n, r))]
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.edges[e].ends;
        if a == v {
            b
        } else {
            a
        }
    }

    /// Hexagons sharing an edge with `h`, once per shared edge.
    pub fn neighbours(&self, h: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &e in &self.hexagons[h].edges {
            let q = &self.edges[e];
            for f in [q.positive, q.negative] {
                if let Face::Hexagon(g) = f {
                    if g != h {
                        out.push(g);
                    }
                }
            }
        }
        out
    }
}

/// Position of `d` relative to the constant coordinate `k`: the sign of `d[k]`.
fn side_of(d: [i64; 3], k: usize) -> i64 {
    d[k].signum()
}

/// Shared copy of [`build_quotient`].
pub fn quotient(n: usize) -> Result<Arc<QuotientGraph>, Error> {
    static CACHE: SizeCache<QuotientGraph> = SizeCache::new();
    per_size(&CACHE, n, || build_quotient(n))
}

pub fn build_quotient(n: usize) -> Result<QuotientGraph, Error> {
    if n < 1 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let m = n as i64;
    let p = 3 * n;
    let vidx = |v: VertexId| -> usize {
        let c = class_of(n, v).expect("vertex inside the strip");
        c.i * p + (c.j - 1)
    };

    let mut ids: BTreeSet<EdgeId> = BTreeSet::new();
    for i in 0..=n {
        for j in 1..=p {
            for e in strip_out_edges(m, i as i64, j as i64) {
                ids.insert(quotient_edge(n, &e)?);
            }
        }
    }
    let ids: Vec<EdgeId> = ids.into_iter().collect();
    let edge_index: HashMap<EdgeId, usize> = ids.iter().enumerate().map(|(k, e)| (*e, k)).collect();
    let mut edges: Vec<QEdge> = ids
        .iter()
        .map(|&id| QEdge {
            id,
            partner: partner(n, id),
            ends: [vidx(id.tail()), vidx(id.head())],
            positive: Face::Outer,
            negative: Face::Outer,
            f_plus: Vec::new(),
            f_minus: Vec::new(),
        })
        .collect();

    let mut incident = vec![Vec::new(); p * (n + 1)];
    for (k, e) in edges.iter().enumerate() {
        for &v in &e.ends {
            incident[v].push(k);
        }
    }

    let eid = |e: &DirectedEdge| edge_index[&quotient_edge(n, e).expect("strip edge")];

    let mut hexagons = Vec::new();
    let mut seen: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
    let mut pos_face: Vec<Option<usize>> = vec![None; edges.len()];
    let mut neg_face: Vec<Option<usize>> = vec![None; edges.len()];
    for i in 1..n {
        for j in 1..=(n + i) {
            let (a, b) = (i as i64, j as i64);
            let vertices = [
                VertexId::a(a, b),
                VertexId::b(a, b),
                VertexId::a(a + 1, b + 1),
                VertexId::b(a, b + 1),
                VertexId::a(a, b + 1),
                VertexId::b(a - 1, b),
            ];
            let strip = [
                (a, b, Dir::North),
                (a + 1, b + 1, Dir::SouthEast),
                (a + 1, b + 1, Dir::SouthWest),
                (a, b + 1, Dir::North),
                (a, b + 1, Dir::SouthEast),
                (a, b, Dir::SouthWest),
            ];
            let mut hedges = [0usize; 6];
            let mut sides = [0i8; 6];
            for (k, &(ti, tj, dir)) in strip.iter().enumerate() {
                let e = DirectedEdge {
                    tail: VertexId::a(ti, tj),
                    head: head_of(ti, tj, dir),
                    dir,
                };
                hedges[k] = eid(&e);
                // the hexagon lies on the side into which the neighbouring
                // hexagon edge at the tail points
                let tail_pos = vertices.iter().position(|v| *v == e.tail).expect("tail on hexagon");
                let prev = vertices[(tail_pos + 5) % 6];
                let next = vertices[(tail_pos + 1) % 6];
                let other = if prev == e.head { next } else { prev };
                let ray = direction_between(e.tail, other);
                sides[k] = side_of(ray, dir.const_index()) as i8;
            }
            let h = hexagons.len();
            let mut key: Vec<usize> = vertices.iter().map(|&v| vidx(v)).collect();
            key.sort_unstable();
            if let Some(prev) = seen.insert(key, (i, j)) {
                return Err(Error::Invariant(format!(
                    "hexagons {:?} and {:?} coincide in the quotient",
                    prev,
                    (i, j)
                )));
            }
            let distinct: BTreeSet<usize> = hedges.iter().copied().collect();
            if distinct.len() != 6 {
                return Err(Error::Invariant(format!("hexagon ({i},{j}) repeats an edge")));
            }
            for k in 0..6 {
                let slot = if sides[k] > 0 { &mut pos_face } else { &mut neg_face };
                if let Some(g) = slot[hedges[k]] {
                    return Err(Error::Invariant(format!(
                        "edge {} has hexagons {g} and {h} on the same side",
                        edges[hedges[k]].id
                    )));
                }
                slot[hedges[k]] = Some(h);
            }
            hexagons.push(Hexagon {
                i,
                j,
                vertices,
                edges: hedges,
                sides,
            });
        }
    }
    for (k, e) in edges.iter_mut().enumerate() {
        e.positive = pos_face[k].map_or(Face::Outer, Face::Hexagon);
        e.negative = neg_face[k].map_or(Face::Outer, Face::Hexagon);
    }

    // neighbours f± of every edge at its non-boundary endpoints
    #[allow(clippy::needless_range_loop)]
    for k in 0..edges.len() {
        let id = edges[k].id;
        let kc = id.dir.const_index();
        let mut fp = Vec::new();
        let mut fm = Vec::new();
        let tail = id.tail();
        if tail.i >= 1 {
            for dir in Dir::ALL {
                if dir == id.dir {
                    continue;
                }
                let f = DirectedEdge {
                    tail,
                    head: head_of(tail.i, tail.j, dir),
                    dir,
                };
                let ray = dir.vector();
                if side_of(ray, kc) > 0 {
                    fm.push(eid(&f));
                } else {
                    fp.push(eid(&f));
                }
            }
        }
        let head = id.head();
        if head.i < m {
            for dir in Dir::ALL {
                if dir == id.dir {
                    continue;
                }
                let t = tail_into(head.i, head.j, dir);
                let f = DirectedEdge { tail: t, head, dir };
                let v = dir.vector();
                let ray = [-v[0], -v[1], -v[2]];
                if side_of(ray, kc) > 0 {
                    fm.push(eid(&f));
                } else {
                    fp.push(eid(&f));
                }
            }
        }
        edges[k].f_plus = fp;
        edges[k].f_minus = fm;
    }

    Ok(QuotientGraph {
        n,
        edges,
        edge_index,
        hexagons,
        incident,
    })
}

/// Direction of the edge joining two adjacent strip vertices, read from `from`.
fn direction_between(from: VertexId, to: VertexId) -> [i64; 3] {
    let (a, b, sign) = match from.kind {
        Kind::A => (from, to, 1),
        Kind::B => (to, from, -1),
    };
    let dir = Dir::ALL
        .into_iter()
        .find(|&d| head_of(a.i, a.j, d) == b)
        .expect("vertices are adjacent");
    let v = dir.vector();
    [sign * v[0], sign * v[1], sign * v[2]]
}
