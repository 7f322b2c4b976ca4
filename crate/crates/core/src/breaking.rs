//! Coloring, contraction, white loops and the φ-shifts that turn a
//! largest-lift with integral boundary into an integral Möbius honeycomb.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lift::{const_coords, edge_lengths, largest_lift};
use crate::moebius::{
    boundary_mh, find_integral_mh, natural_size, split, validate_mh, MoebiusBoundary, MoebiusHoneycomb, SplitPieces,
};
use crate::partition::Partition;
use crate::plane::{BPoint, Dir};
use crate::rational::Rational;
use crate::tinkertoy::{class_of, quotient, strip_out_edges, tail_into, DirectedEdge, Face, Kind, QuotientGraph, VertexId};

/// Black/white coloring of the vertices and edges of `Γ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub vertex_white: Vec<bool>,
    pub edge_white: Vec<bool>,
}

impl Coloring {
    pub fn white_vertex_count(&self) -> usize {
        self.vertex_white.iter().filter(|&&w| w).count()
    }

    pub fn is_all_black(&self) -> bool {
        !self.vertex_white.iter().chain(&self.edge_white).any(|&w| w)
    }
}

/// White vertices are off the lattice; white edges lie on non-lattice lines.
pub fn color(h: &MoebiusHoneycomb) -> Result<Coloring, Error> {
    let reps = h.representatives()?;
    Ok(Coloring {
        vertex_white: reps.iter().map(|p| !p.is_lattice()).collect(),
        edge_white: const_coords(h)?.iter().map(|c| !c.is_integer()).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexType {
    Boundary,
    Y,
    Crossing,
    Rake,
    FiveValent,
    SixValent,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Cluster {
    /// Quotient vertices merged into this vertex.
    pub members: Vec<usize>,
    pub kind: VertexType,
    pub white: bool,
    /// Non-degenerate edges leaving the point, counted by direction:
    /// `+d_se, +d_sw, +d_n, −d_se, −d_sw, −d_n`.
    pub rays: [u32; 6],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContractedEdge {
    pub multiplicity: usize,
    pub white: bool,
    /// Quotient edges merged into this edge.
    pub members: Vec<usize>,
}

/// `Γ_n(h)`: degenerate edges contracted, parallel edges merged.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContractedGraph {
    /// `ρ_h`: quotient vertex to contracted vertex.
    pub rho: Vec<usize>,
    pub clusters: Vec<Cluster>,
    pub edges: BTreeMap<(usize, usize), ContractedEdge>,
    pub degenerate: Vec<bool>,
}

fn ray_index(dir: Dir, outgoing: bool) -> usize {
    dir.const_index() + if outgoing { 0 } else { 3 }
}

fn classify(rays: &[u32; 6], boundary: bool) -> Option<VertexType> {
    if boundary {
        return Some(VertexType::Boundary);
    }
    let support: Vec<usize> = (0..6).filter(|&k| rays[k] > 0).collect();
    let positive = support.iter().filter(|&&k| k < 3).count();
    let pairs = (0..3).filter(|&k| rays[k] > 0 && rays[k + 3] > 0).count();
    match support.len() {
        3 if positive == 3 || positive == 0 => Some(VertexType::Y),
        4 if pairs == 2 => Some(VertexType::Crossing),
        4 if positive == 3 || positive == 1 => Some(VertexType::Rake),
        5 => Some(VertexType::FiveValent),
        6 => Some(VertexType::SixValent),
        _ => None,
    }
}

/// Edges of `Γ̃_n` at a strip vertex.
fn strip_edges_at(n: usize, v: &VertexId) -> Vec<DirectedEdge> {
    let m = n as i64;
    match v.kind {
        Kind::A => strip_out_edges(m, v.i, v.j),
        Kind::B => Dir::ALL
            .into_iter()
            .filter_map(|dir| {
                let tail = tail_into(v.i, v.j, dir);
                let ok = (0..=m).contains(&tail.i) && (tail.i >= 1 || dir == Dir::North);
                ok.then_some(DirectedEdge { tail, head: *v, dir })
            })
            .collect(),
    }
}

fn other_end(e: &DirectedEdge, v: &VertexId) -> VertexId {
    if e.tail == *v {
        e.head
    } else {
        e.tail
    }
}

/// Shared data for walking a honeycomb's strip.
struct Walker {
    n: usize,
    g: Arc<QuotientGraph>,
    degenerate: Vec<bool>,
}

impl Walker {
    fn new(h: &MoebiusHoneycomb) -> Result<Self, Error> {
        let g = quotient(h.n)?;
        let degenerate = edge_lengths(h)?.iter().map(|l| l.is_zero()).collect();
        Ok(Walker {
            n: h.n,
            g,
            degenerate,
        })
    }

    fn vertex(&self, v: &VertexId) -> Result<usize, Error> {
        let c = class_of(self.n, *v)?;
        Ok(self.g.vertex_index(c.i, c.j))
    }

    fn edge(&self, e: &DirectedEdge) -> Result<usize, Error> {
        self.g.edge_of(e)
    }

    /// Strip vertices reachable from `start` along degenerate edges, with the
    /// edge used to reach each one.
    fn cluster(&self, start: VertexId) -> Result<(Vec<VertexId>, HashMap<VertexId, DirectedEdge>), Error> {
        let mut order = vec![start];
        let mut pred: HashMap<VertexId, DirectedEdge> = HashMap::new();
        let mut seen: BTreeSet<VertexId> = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for e in strip_edges_at(self.n, &v) {
                if !self.degenerate[self.edge(&e)?] {
                    continue;
                }
                let w = other_end(&e, &v);
                if seen.insert(w) {
                    pred.insert(w, e);
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        Ok((order, pred))
    }

    /// Non-degenerate edges leaving the cluster, with their ray index.
    fn rays(&self, members: &[VertexId]) -> Result<Vec<(VertexId, DirectedEdge, usize)>, Error> {
        let mut out = Vec::new();
        for v in members {
            for e in strip_edges_at(self.n, v) {
                if self.degenerate[self.edge(&e)?] {
                    continue;
                }
                out.push((*v, e, ray_index(e.dir, e.tail == *v)));
            }
        }
        Ok(out)
    }
}

/// Contract every degenerate edge and classify the resulting vertices.
pub fn contract(h: &MoebiusHoneycomb, c: &Coloring) -> Result<ContractedGraph, Error> {
    let w = Walker::new(h)?;
    let g = &w.g;
    let nv = g.vertex_count();
    let mut rho = vec![usize::MAX; nv];
    let mut clusters = Vec::new();
    for start in 0..nv {
        if rho[start] != usize::MAX {
            continue;
        }
        let (i, j) = g.vertex_of_index(start);
        let (members, _) = w.cluster(VertexId::a(i as i64, j as i64))?;
        let mut idx = Vec::with_capacity(members.len());
        for v in &members {
            let q = w.vertex(v)?;
            if rho[q] != usize::MAX {
                return Err(Error::Invariant(format!("vertex {q} lies in two contracted vertices")));
            }
            rho[q] = clusters.len();
            idx.push(q);
        }
        let mut rays = [0u32; 6];
        for (_, _, r) in w.rays(&members)? {
            rays[r] += 1;
        }
        let boundary = idx.iter().any(|&q| g.is_boundary_vertex(q));
        let kind = classify(&rays, boundary).ok_or_else(|| {
            Error::Invariant(format!("contracted vertex with rays {rays:?} matches no vertex type"))
        })?;
        let white = idx.iter().any(|&q| c.vertex_white[q]);
        if idx.iter().any(|&q| c.vertex_white[q] != white) {
            return Err(Error::Invariant("a contracted vertex mixes colors".into()));
        }
        idx.sort_unstable();
        clusters.push(Cluster {
            members: idx,
            kind,
            white,
            rays,
        });
    }
    let mut edges: BTreeMap<(usize, usize), ContractedEdge> = BTreeMap::new();
    for (k, q) in g.edges.iter().enumerate() {
        if w.degenerate[k] {
            continue;
        }
        let (a, b) = (rho[q.ends[0]], rho[q.ends[1]]);
        let key = (a.min(b), a.max(b));
        let entry = edges.entry(key).or_insert(ContractedEdge {
            multiplicity: 0,
            white: c.edge_white[k],
            members: Vec::new(),
        });
        if entry.white != c.edge_white[k] {
            return Err(Error::Invariant("parallel edges with different colors".into()));
        }
        entry.multiplicity += 1;
        entry.members.push(k);
    }
    Ok(ContractedGraph {
        rho,
        clusters,
        edges,
        degenerate: w.degenerate,
    })
}

/// A closed walk `v_0, …, v_k = v_0` in `Γ_n` through white vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhiteLoop {
    pub vertices: Vec<usize>,
    /// `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
    pub edges: Vec<usize>,
    pub canonical: bool,
    pub orientable: bool,
}

impl WhiteLoop {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    fn rotated(&self, r: usize) -> WhiteLoop {
        let k = self.edges.len();
        let mut vertices: Vec<usize> = (0..k).map(|t| self.vertices[(r + t) % k]).collect();
        vertices.push(vertices[0]);
        WhiteLoop {
            vertices,
            edges: (0..k).map(|t| self.edges[(r + t) % k]).collect(),
            ..self.clone()
        }
    }

    fn reversed(&self) -> WhiteLoop {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        WhiteLoop {
            vertices,
            edges,
            ..self.clone()
        }
    }
}

/// Orientability of a closed walk in `Γ_n`: an even number of edges.
pub fn is_orientable(g: &QuotientGraph, vertices: &[usize]) -> Result<bool, Error> {
    if vertices.len() < 2 || vertices.first() != vertices.last() {
        return Err(Error::InvalidInput("a loop must start and end at the same vertex".into()));
    }
    for w in vertices.windows(2) {
        let joined = g.incident.get(w[0]).is_some_and(|es| es.iter().any(|&e| g.other_end(e, w[0]) == w[1]));
        if !joined {
            return Err(Error::InvalidInput(format!("vertices {} and {} are not adjacent", w[0], w[1])));
        }
    }
    Ok((vertices.len() - 1).is_multiple_of(2))
}

fn check_white_vertices(cg: &ContractedGraph, c: &Coloring, w: &Walker) -> Result<(), Error> {
    for cl in cg.clusters.iter().filter(|cl| cl.white) {
        let q = cl.members[0];
        let (i, j) = w.g.vertex_of_index(q);
        let (members, _) = w.cluster(VertexId::a(i as i64, j as i64))?;
        let mut white_rays = 0;
        for (_, e, _) in w.rays(&members)? {
            if c.edge_white[w.edge(&e)?] {
                white_rays += 1;
            }
        }
        if white_rays == 3 {
            return Err(Error::Invariant(format!(
                "white vertex {q} has three non-degenerate white edges"
            )));
        }
    }
    Ok(())
}

fn trace(w: &Walker, c: &Coloring, cg: &ContractedGraph, start: usize) -> Result<WhiteLoop, Error> {
    let e0 = w.g.edges[start].id.edge();
    let mut vertices = vec![w.vertex(&e0.tail)?];
    let mut edges = vec![start];
    let mut arriving = e0;
    let mut at = e0.head;
    let limit = 4 * w.g.edges.len() + 8;
    loop {
        if edges.len() > limit {
            return Err(Error::Invariant("white loop does not close".into()));
        }
        vertices.push(w.vertex(&at)?);
        let (members, _) = w.cluster(at)?;
        let rays = w.rays(&members)?;
        let r_in = ray_index(arriving.dir, arriving.tail == at);
        let mut white = Vec::new();
        for (v, e, r) in rays {
            if c.edge_white[w.edge(&e)?] {
                white.push((v, e, r));
            }
        }
        let exit = match white.len() {
            2 => white.iter().find(|(v, e, _)| !(*v == at && *e == arriving)).copied(),
            4 => white.iter().find(|(_, _, r)| *r == (r_in + 3) % 6).copied(),
            3 => {
                return Err(Error::Invariant(format!(
                    "white vertex {} has three non-degenerate white edges",
                    w.vertex(&at)?
                )))
            }
            k => return Err(Error::Invariant(format!("white loop reaches a vertex with {k} white rays"))),
        };
        let (leave, f, _) = exit.ok_or_else(|| Error::Invariant("no way to continue a white loop".into()))?;
        // walk inside the contracted vertex from `at` to `leave`
        let (_, pred) = w.cluster(at)?;
        let mut path = Vec::new();
        let mut cur = leave;
        while cur != at {
            let e = pred[&cur];
            path.push(e);
            cur = other_end(&e, &cur);
        }
        path.reverse();
        let crossing = white.len() == 4 && cg.clusters[cg.rho[w.vertex(&at)?]].kind == VertexType::Crossing;
        let mut cur = at;
        for e in &path {
            let q = w.edge(e)?;
            if crossing && c.edge_white[q] {
                return Err(Error::Invariant(format!(
                    "white loop crosses a white degenerate edge {} at a crossing",
                    w.g.edges[q].id
                )));
            }
            edges.push(q);
            cur = other_end(e, &cur);
            vertices.push(w.vertex(&cur)?);
        }
        let qf = w.edge(&f)?;
        if qf == start {
            if vertices.last() != vertices.first() {
                return Err(Error::Invariant("white loop closes at the wrong vertex".into()));
            }
            break;
        }
        edges.push(qf);
        arriving = f;
        at = other_end(&f, &leave);
    }
    let distinct: BTreeSet<usize> = edges.iter().copied().collect();
    Ok(WhiteLoop {
        canonical: distinct.len() == edges.len(),
        orientable: edges.len() % 2 == 0,
        vertices,
        edges,
    })
}

/// Every white loop, each traced once from its first white non-degenerate edge.
pub fn white_loops(h: &MoebiusHoneycomb, c: &Coloring, cg: &ContractedGraph) -> Result<Vec<WhiteLoop>, Error> {
    let w = Walker::new(h)?;
    check_white_vertices(cg, c, &w)?;
    let mut used = vec![false; w.g.edges.len()];
    let mut loops = Vec::new();
    for k in 0..w.g.edges.len() {
        if used[k] || !c.edge_white[k] || w.degenerate[k] {
            continue;
        }
        let lp = trace(&w, c, cg, k)?;
        for &e in &lp.edges {
            if !w.degenerate[e] {
                used[e] = true;
            }
        }
        loops.push(lp);
    }
    Ok(loops)
}

/// Values on the edges of `Γ_n`, in quotient edge order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiAssignment {
    pub phi: Vec<Rational>,
}

impl PhiAssignment {
    pub fn zero(n: usize) -> Result<Self, Error> {
        Ok(PhiAssignment {
            phi: vec![Rational::zero(); quotient(n)?.edges.len()],
        })
    }

    pub fn is_zero(&self) -> bool {
        self.phi.iter().all(|v| v.is_zero())
    }

    pub fn negated(&self) -> Self {
        PhiAssignment {
            phi: self.phi.iter().map(|v| -v).collect(),
        }
    }

    /// Values keyed by edge name, zeros omitted.
    pub fn labelled(&self, g: &QuotientGraph) -> BTreeMap<String, Rational> {
        self.phi
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (g.edges[k].id.to_string(), v.clone()))
            .collect()
    }
}

/// First vertex where the values around it do not cancel.
pub fn unbalanced_vertex(g: &QuotientGraph, phi: &PhiAssignment) -> Option<usize> {
    (0..g.vertex_count()).find(|&v| !g.incident[v].iter().map(|&e| &phi.phi[e]).sum::<Rational>().is_zero())
}

/// `½ Σ (φ(f⁺) − φ(f⁻))` for an edge.
fn demand(g: &QuotientGraph, phi: &[Rational], e: usize) -> Rational {
    let q = &g.edges[e];
    let plus: Rational = q.f_plus.iter().map(|&f| &phi[f]).sum();
    let minus: Rational = q.f_minus.iter().map(|&f| &phi[f]).sum();
    (plus - minus) * Rational::half()
}

/// Edges whose length is smaller than the shift asks for.
pub fn infeasible_edges(h: &MoebiusHoneycomb, phi: &PhiAssignment) -> Result<Vec<usize>, Error> {
    let g = quotient(h.n)?;
    let lengths = edge_lengths(h)?;
    Ok((0..g.edges.len())
        .filter(|&e| lengths[e] < demand(&g, &phi.phi, e))
        .collect())
}

/// Move every line by its value of `φ`.
pub fn apply_phi(h: &MoebiusHoneycomb, phi: &PhiAssignment) -> Result<MoebiusHoneycomb, Error> {
    let g = quotient(h.n)?;
    if phi.phi.len() != g.edges.len() {
        return Err(Error::InvalidInput(format!("φ must have {} values", g.edges.len())));
    }
    if let Some(v) = unbalanced_vertex(&g, phi) {
        let (i, j) = g.vertex_of_index(v);
        return Err(Error::InvalidInput(format!("φ does not cancel at A:{i}:{j}")));
    }
    if let Some(&e) = infeasible_edges(h, phi)?.first() {
        return Err(Error::InvalidInput(format!("φ shortens edge {} below zero", g.edges[e].id)));
    }
    let n = h.n;
    let mut reps = h.representatives()?;
    for i in 1..=n {
        for j in 1..=3 * n {
            let p = &mut reps[g.vertex_index(i, j)];
            let shift = |d: Dir| phi.phi[g.out_edge(i, j, d)].clone();
            let by = BPoint {
                x: shift(Dir::SouthEast),
                y: shift(Dir::SouthWest),
                z: shift(Dir::North),
            };
            *p = &*p + &by;
        }
    }
    let out = MoebiusHoneycomb::from_representatives(n, h.delta.clone(), &reps)?;
    let before = const_coords(h)?;
    let after = const_coords(&out)?;
    for (k, ((a, b), f)) in before.iter().zip(&after).zip(&phi.phi).enumerate() {
        if &(b - a) != f {
            return Err(Error::Invariant(format!("edge {} moved by {} instead of {f}", g.edges[k].id, b - a)));
        }
    }
    if !validate_mh(&out)? {
        return Err(Error::Invariant("a feasible shift produced an invalid configuration".into()));
    }
    Ok(out)
}

/// The black degenerate edge where two loops cross, first in edge order.
pub fn shared_crossing(cg: &ContractedGraph, c: &Coloring, a: &WhiteLoop, b: &WhiteLoop) -> Option<usize> {
    let in_b: BTreeSet<usize> = b.edges.iter().copied().collect();
    a.edges
        .iter()
        .copied()
        .filter(|e| in_b.contains(e) && cg.degenerate[*e] && !c.edge_white[*e])
        .min()
}

/// The crossing used and the two loops as rotated for breaking.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DoubleBreak {
    pub crossing: usize,
    pub first: WhiteLoop,
    pub second: WhiteLoop,
}

/// Add `(−1)^i · ½` along both loops, starting after their shared crossing.
pub fn double_break(
    g: &QuotientGraph,
    cg: &ContractedGraph,
    c: &Coloring,
    a: &WhiteLoop,
    b: &WhiteLoop,
    phi: &mut PhiAssignment,
) -> Result<DoubleBreak, Error> {
    if a.orientable || b.orientable {
        return Err(Error::InvalidInput("double breaking needs two non-orientable loops".into()));
    }
    let s = shared_crossing(cg, c, a, b)
        .ok_or_else(|| Error::Invariant("two non-orientable white loops do not cross".into()))?;
    let at = |lp: &WhiteLoop| lp.rotated(lp.edges.iter().position(|&e| e == s).expect("shared edge"));
    let mut first = at(a);
    let mut second = at(b);
    if second.vertices[0] != first.vertices[1] {
        second = at(&second.reversed());
    }
    if second.vertices[0] != first.vertices[1] || second.vertices[1] != first.vertices[0] {
        return Err(Error::Invariant("loops do not pass through their crossing".into()));
    }
    let shift = |first: &WhiteLoop, second: &WhiteLoop| {
        let mut psi = vec![Rational::zero(); phi.phi.len()];
        for lp in [first, second] {
            for i in 2..=lp.edges.len() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                psi[lp.edges[i - 1]] += Rational::new(sign, 2);
            }
        }
        psi
    };
    let mut psi = shift(&first, &second);
    let total: Vec<Rational> = phi.phi.iter().zip(&psi).map(|(x, y)| x + y).collect();
    if demand(g, &total, s) > Rational::zero() {
        // reversing both loops negates the shift and opens the crossing instead
        first = at(&first.reversed());
        second = at(&second.reversed());
        psi = shift(&first, &second);
    }
    for (x, y) in phi.phi.iter_mut().zip(&psi) {
        *x += y;
    }
    Ok(DoubleBreak {
        crossing: s,
        first,
        second,
    })
}

/// Repair each edge violating the length condition by moving the lines of a
/// hexagon beside it alternately by `±½` or `±1`.
pub fn sixfold_break(h: &MoebiusHoneycomb, c: &Coloring, phi: &mut PhiAssignment) -> Result<Vec<usize>, Error> {
    let g = quotient(h.n)?;
    let lengths = edge_lengths(h)?;
    let allowed = |e: usize, v: &Rational| -> bool {
        if c.edge_white[e] {
            v.abs() == Rational::half()
        } else {
            v.is_integer() && v.abs() <= Rational::one()
        }
    };
    let violations = |phi: &[Rational]| -> Vec<usize> {
        (0..g.edges.len()).filter(|&e| lengths[e] < demand(&g, phi, e)).collect()
    };
    let mut repaired = Vec::new();
    for e in violations(&phi.phi) {
        if !violations(&phi.phi).contains(&e) {
            continue;
        }
        let q = &g.edges[e];
        let mut fixed = false;
        'search: for face in [q.positive, q.negative] {
            let Face::Hexagon(hx) = face else { continue };
            let hexagon = &g.hexagons[hx];
            for t in [Rational::half(), -Rational::half(), Rational::one(), -Rational::one()] {
                let mut trial = phi.phi.clone();
                for (&f, &side) in hexagon.edges.iter().zip(&hexagon.sides) {
                    trial[f] += &t * side as i64;
                }
                let ok_values = hexagon.edges.iter().all(|&f| allowed(f, &trial[f]));
                let before = violations(&phi.phi);
                let after = violations(&trial);
                if ok_values && !after.contains(&e) && after.iter().all(|x| before.contains(x)) {
                    phi.phi = trial;
                    repaired.push(hx);
                    fixed = true;
                    break 'search;
                }
            }
        }
        if !fixed {
            return Err(Error::Invariant(format!("no local repair for edge {}", q.id)));
        }
    }
    if let Some(&e) = violations(&phi.phi).first() {
        return Err(Error::Invariant(format!("edge {} still too short after sixfold breaking", g.edges[e].id)));
    }
    Ok(repaired)
}

/// Everything produced on the way from a largest-lift to an integral honeycomb.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Integralized {
    pub honeycomb: MoebiusHoneycomb,
    pub phi: PhiAssignment,
    pub loops: Vec<WhiteLoop>,
    pub breaks: Vec<DoubleBreak>,
    /// Hexagons moved by sixfold breaking.
    pub sixfold: Vec<usize>,
}

/// An integral Möbius honeycomb with the same boundary as a largest-lift.
pub fn integralize(h: &MoebiusHoneycomb) -> Result<Integralized, Error> {
    let xi = boundary_mh(h)?;
    if !xi.is_integral() {
        return Err(Error::InvalidInput("boundary must be integral".into()));
    }
    if !xi.sum().to_i64().is_some_and(|s| s % 2 == 0) {
        return Err(Error::InvalidInput("boundary sum must be even".into()));
    }
    let mut phi = PhiAssignment::zero(h.n)?;
    if h.is_integral() {
        return Ok(Integralized {
            honeycomb: h.clone(),
            phi,
            loops: Vec::new(),
            breaks: Vec::new(),
            sixfold: Vec::new(),
        });
    }
    let c = color(h)?;
    let cg = contract(h, &c)?;
    let loops = white_loops(h, &c, &cg)?;
    if let Some(lp) = loops.iter().find(|l| !l.canonical) {
        return Err(Error::Invariant(format!("white loop through {:?} repeats an edge", lp.vertices)));
    }
    if loops.len() % 2 != 0 {
        return Err(Error::Invariant(format!("odd number of canonical white loops: {}", loops.len())));
    }
    let g = quotient(h.n)?;
    let mut breaks = Vec::new();
    for pair in loops.chunks(2) {
        breaks.push(double_break(&g, &cg, &c, &pair[0], &pair[1], &mut phi)?);
    }
    if let Some(v) = unbalanced_vertex(&g, &phi) {
        return Err(Error::Invariant(format!("double breaking left vertex {v} unbalanced")));
    }
    let sixfold = sixfold_break(h, &c, &mut phi)?;
    let out = apply_phi(h, &phi)?;
    if !out.is_integral() {
        return Err(Error::Invariant("integralized honeycomb is not integral".into()));
    }
    if boundary_mh(&out)? != xi {
        return Err(Error::Invariant("integralizing changed the boundary".into()));
    }
    Ok(Integralized {
        honeycomb: out,
        phi,
        loops,
        breaks,
        sixfold,
    })
}

/// An integral Möbius honeycomb for `(λ, μ, ν)` built from one at scale `k`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SaturationWitness {
    pub scaled: MoebiusHoneycomb,
    pub largest_lift: MoebiusHoneycomb,
    pub result: Integralized,
    pub pieces: SplitPieces,
}

pub fn saturation_witness(lambda: &Partition, mu: &Partition, nu: &Partition, k: i64) -> Result<Option<SaturationWitness>, Error> {
    if k < 1 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    if (lambda.weight() + mu.weight() + nu.weight()) % 2 != 0 {
        return Err(Error::InvalidInput("|λ| + |μ| + |ν| must be even".into()));
    }
    let n = natural_size(lambda, mu, nu);
    let delta = lambda.largest().max(mu.largest()).max(nu.largest()).max(1);
    let xi_k = MoebiusBoundary::for_nl(&lambda.scale(k), &mu.scale(k), &nu.scale(k), k * delta, n)?;
    let Some(scaled) = find_integral_mh(n, &xi_k, &Rational::from_int(k * delta))? else {
        return Ok(None);
    };
    let shrunk = scaled.scale(&Rational::new(1, k));
    let xi = boundary_mh(&shrunk)?;
    let ll = largest_lift(&xi, &shrunk.delta, n)?;
    let result = integralize(&ll.honeycomb)?;
    let pieces = split(&result.honeycomb)?;
    Ok(Some(SaturationWitness {
        scaled,
        largest_lift: ll.honeycomb,
        result,
        pieces,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lift::largest_lift;
    use crate::moebius::nl_honeycombs;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn lift_of(l: &str, m: &str, v: &str, delta: i64) -> MoebiusHoneycomb {
        let (l, m, v) = (p(l), p(m), p(v));
        let n = natural_size(&l, &m, &v);
        let xi = MoebiusBoundary::for_nl(&l, &m, &v, delta, n).unwrap();
        largest_lift(&xi, &Rational::from_int(delta), n).unwrap().honeycomb
    }

    #[test]
    fn integral_honeycomb_is_all_black() {
        let l = p("2,1");
        for h in nl_honeycombs(&l, &l, &p("2"), 2, 2).unwrap() {
            let c = color(&h).unwrap();
            assert!(c.is_all_black());
            let cg = contract(&h, &c).unwrap();
            assert!(white_loops(&h, &c, &cg).unwrap().is_empty());
            let out = integralize(&h).unwrap();
            assert_eq!(out.honeycomb, h);
            assert!(out.phi.is_zero());
        }
    }

    #[test]
    fn zero_shift_changes_nothing() {
        let h = lift_of("2,1", "2,1", "2", 2);
        let phi = PhiAssignment::zero(2).unwrap();
        assert_eq!(apply_phi(&h, &phi).unwrap(), h);
    }

    #[test]
    fn contraction_without_degenerate_edges() {
        let h = lift_of("2,1", "2,1", "2", 2);
        let c = color(&h).unwrap();
        let cg = contract(&h, &c).unwrap();
        assert_eq!(cg.rho.len(), 18);
        let total: usize = cg.clusters.iter().map(|cl| cl.members.len()).sum();
        assert_eq!(total, 18);
        for cl in &cg.clusters {
            if cl.members.len() == 1 && !cl.members.iter().any(|&q| q < 6) {
                assert_eq!(cl.kind, VertexType::Y);
            }
        }
    }

    #[test]
    fn all_degenerate_contracts_to_one_vertex() {
        let e = Partition::empty(0);
        let h = nl_honeycombs(&e, &e, &e, 1, 1).unwrap().remove(0);
        let c = color(&h).unwrap();
        let cg = contract(&h, &c).unwrap();
        // the zero configuration still has the three boundary lengths
        assert!(cg.clusters.len() <= 6);
    }

    #[test]
    fn hexagon_boundary_is_orientable() {
        let g = quotient(3).unwrap();
        let hx = &g.hexagons[0];
        let mut vs: Vec<usize> = hx
            .vertices
            .iter()
            .map(|v| {
                let c = class_of(3, *v).unwrap();
                g.vertex_index(c.i, c.j)
            })
            .collect();
        vs.push(vs[0]);
        assert!(is_orientable(&g, &vs).unwrap());
        assert!(is_orientable(&g, &vs[..3]).is_err());
    }

    #[test]
    fn phi_and_its_negative_average_back() {
        let h = lift_of("2,1", "2,1", "2", 2);
        let g = quotient(2).unwrap();
        // move a hexagon's lines by a small alternating amount
        let eps = Rational::new(1, 1000);
        let mut phi = PhiAssignment::zero(2).unwrap();
        let hx = &g.hexagons[0];
        for (&e, &s) in hx.edges.iter().zip(&hx.sides) {
            phi.phi[e] += &eps * s as i64;
        }
        assert!(unbalanced_vertex(&g, &phi).is_none());
        let up = apply_phi(&h, &phi);
        let down = apply_phi(&h, &phi.negated());
        if let (Ok(up), Ok(down)) = (up, down) {
            let mid = crate::moebius::combine(&Rational::half(), &up, &Rational::half(), &down).unwrap();
            assert_eq!(mid.a, h.a);
            assert_eq!(mid.b, h.b);
        }
        let mut bad = PhiAssignment::zero(2).unwrap();
        bad.phi[hx.edges[0]] = Rational::one();
        assert!(matches!(apply_phi(&h, &bad), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn witness_for_small_triples() {
        for (l, m, v) in [("3,2,1", "3,2,1", "3,2,1"), ("1,1", "1", "1"), ("2", "1", "1"), ("", "", "")] {
            let (l, m, v) = (p(l), p(m), p(v));
            let expect = crate::oracle::nl_oracle(&l.scale(2), &m.scale(2), &v.scale(2)) > 0;
            let w = saturation_witness(&l, &m, &v, 2).unwrap();
            assert_eq!(w.is_some(), expect, "{l} {m} {v}");
            if let Some(w) = w {
                assert!(w.result.honeycomb.is_integral());
                assert!(validate_mh(&w.result.honeycomb).unwrap());
            }
        }
    }
}
