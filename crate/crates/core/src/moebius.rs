//! Möbius honeycombs: configurations of the strip `Γ̃_n` compatible with the
//! twist, their boundary, lattice-point counts and the glue/split
//! correspondence with triples of honeycombs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cache::{per_size, SizeCache};
use crate::error::Error;
use crate::honeycomb::{self, GlBoundary, GlHoneycomb};
use crate::partition::{dual_weight, Partition};
use crate::plane::{in_rhombus, twist_pow, BPoint};
use crate::polytope::{Col, Fiber, Lin, Reduced, System};
use crate::rational::Rational;
use crate::tinkertoy::{build_gl, class_of, quotient, DirectedEdge, Kind, VertexId};

pub use crate::oracle::nl_oracle;

/// Index `(i, j)` of a stored coordinate triple, written `"i:j"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.i, self.j)
    }
}

impl FromStr for Slot {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidInput(format!("bad slot `{s}`"));
        let (i, j) = s.split_once(':').ok_or_else(bad)?;
        Ok(Slot {
            i: i.trim().parse().map_err(|_| bad())?,
            j: j.trim().parse().map_err(|_| bad())?,
        })
    }
}

impl Serialize for Slot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Slot {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

mod delta_repr {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::rational::Rational;

    pub fn serialize<S: Serializer>(d: &Rational, s: S) -> Result<S::Ok, S::Error> {
        match d.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&d.to_string()),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(i64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Rational::from_int(v)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Positions of `Ã_{i,j}` and `B̃_{i,j}` for `0 ≤ i ≤ n`, `1 ≤ j ≤ n + i`.
///
/// Every vertex class of `Γ_n` appears exactly once among these, so the
/// positions of the whole strip follow from the twist.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoebiusHoneycomb {
    pub n: usize,
    #[serde(with = "delta_repr")]
    pub delta: Rational,
    pub a: BTreeMap<Slot, BPoint>,
    pub b: BTreeMap<Slot, BPoint>,
}

/// `(ξ_1, …, ξ_{3n})`: z-coordinates of the boundary vertices `Ã_{0,j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoebiusBoundary {
    pub xi: Vec<Rational>,
}

impl MoebiusBoundary {
    /// `(λ + 4δ, μ + 2δ, ν)` with every partition padded to `n` parts.
    pub fn for_nl(lambda: &Partition, mu: &Partition, nu: &Partition, delta: i64, n: usize) -> Result<Self, Error> {
        let mut xi = Vec::with_capacity(3 * n);
        for (p, shift) in [(lambda, 4), (mu, 2), (nu, 0)] {
            for &v in p.padded(n)?.parts() {
                xi.push(Rational::from_int(v + shift * delta));
            }
        }
        Ok(MoebiusBoundary { xi })
    }

    pub fn n(&self) -> usize {
        self.xi.len() / 3
    }

    /// Every `ξ_j` lies in the range of its block.
    pub fn in_range(&self, delta: &Rational) -> bool {
        let n = self.n();
        self.xi.len() == 3 * n
            && self.xi.iter().enumerate().all(|(k, x)| {
                let lo = delta * (2 * (2 - (k / n) as i64));
                let hi = &lo + delta;
                *x >= lo && *x <= hi
            })
    }

    pub fn is_integral(&self) -> bool {
        self.xi.iter().all(|x| x.is_integer())
    }

    pub fn sum(&self) -> Rational {
        self.xi.iter().sum()
    }

    pub fn scale(&self, c: &Rational) -> MoebiusBoundary {
        MoebiusBoundary {
            xi: self.xi.iter().map(|x| x * c).collect(),
        }
    }
}

/// The stored vertices, A-window first.
pub fn window(n: usize) -> Vec<VertexId> {
    let mut out = Vec::with_capacity(3 * n * (n + 1));
    for kind in [Kind::A, Kind::B] {
        for i in 0..=n {
            for j in 1..=n + i {
                out.push(VertexId {
                    kind,
                    i: i as i64,
                    j: j as i64,
                });
            }
        }
    }
    out
}

fn class_index(n: usize, i: usize, j: usize) -> usize {
    i * 3 * n + (j - 1)
}

/// Where the class `(i, j)` is stored: window vertex and its twist exponent.
struct WindowTable {
    entries: Vec<(VertexId, i64)>,
}

impl WindowTable {
    fn build(n: usize) -> Result<Self, Error> {
        let mut entries: Vec<Option<(VertexId, i64)>> = vec![None; 3 * n * (n + 1)];
        for w in window(n) {
            let c = class_of(n, w)?;
            let slot = &mut entries[class_index(n, c.i, c.j)];
            if slot.is_some() {
                return Err(Error::Invariant(format!("vertex class of {w} stored twice")));
            }
            *slot = Some((w, c.sigma));
        }
        let entries = entries
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Invariant("a vertex class has no stored representative".into()))?;
        Ok(WindowTable { entries })
    }

    fn get(n: usize) -> Result<Arc<Self>, Error> {
        static CACHE: SizeCache<WindowTable> = SizeCache::new();
        per_size(&CACHE, n, || WindowTable::build(n))
    }
}

fn block_of(n: usize, j: usize) -> i64 {
    ((j - 1) / n) as i64
}

/// `(−(2−b)δ, (2−b)δ − ξ, ξ)` for a boundary vertex in block `b`.
fn boundary_point(block: i64, xi: &Rational, delta: &Rational) -> BPoint {
    let s = delta * (2 - block);
    BPoint::from_xy(-&s, &s - xi)
}

impl MoebiusHoneycomb {
    fn stored(&self, v: &VertexId) -> Result<&BPoint, Error> {
        let slot = Slot {
            i: v.i as usize,
            j: v.j as usize,
        };
        let map = match v.kind {
            Kind::A => &self.a,
            Kind::B => &self.b,
        };
        map.get(&slot)
            .ok_or_else(|| Error::Structural(format!("missing coordinates for {v}")))
    }

    /// Positions of `Ã_{i,j}`, `1 ≤ j ≤ 3n`, indexed by class.
    pub fn representatives(&self) -> Result<Vec<BPoint>, Error> {
        if self.n < 1 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        let table = WindowTable::get(self.n)?;
        table
            .entries
            .iter()
            .map(|(w, sigma)| Ok(twist_pow(self.stored(w)?, &self.delta, *sigma)))
            .collect()
    }

    /// Build from the positions of `Ã_{i,j}`, `1 ≤ j ≤ 3n`, indexed by class.
    pub fn from_representatives(n: usize, delta: Rational, reps: &[BPoint]) -> Result<Self, Error> {
        let table = WindowTable::get(n)?;
        if reps.len() != table.entries.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} representatives, got {}",
                table.entries.len(),
                reps.len()
            )));
        }
        let mut a = BTreeMap::new();
        let mut b = BTreeMap::new();
        for ((w, sigma), p) in table.entries.iter().zip(reps) {
            let slot = Slot {
                i: w.i as usize,
                j: w.j as usize,
            };
            let q = twist_pow(p, &delta, -sigma);
            match w.kind {
                Kind::A => a.insert(slot, q),
                Kind::B => b.insert(slot, q),
            };
        }
        Ok(MoebiusHoneycomb { n, delta, a, b })
    }

    pub fn reconstruct(&self, kind: Kind, i: i64, j: i64) -> Result<BPoint, Error> {
        let c = class_of(self.n, VertexId { kind, i, j })?;
        let table = WindowTable::get(self.n)?;
        let (w, sigma) = &table.entries[class_index(self.n, c.i, c.j)];
        Ok(twist_pow(self.stored(w)?, &self.delta, sigma - c.sigma))
    }

    pub fn position(&self, v: &VertexId) -> Result<BPoint, Error> {
        self.reconstruct(v.kind, v.i, v.j)
    }

    /// All reconstructed points, window order.
    pub fn points(&self) -> impl Iterator<Item = &BPoint> {
        self.a.values().chain(self.b.values())
    }

    pub fn is_integral(&self) -> bool {
        self.points().all(|p| p.is_lattice())
    }

    /// Every vertex at a lattice or half lattice point.
    pub fn is_half_integral(&self) -> bool {
        self.points().all(|p| p.is_lattice() || p.is_half_lattice())
    }

    /// Every coordinate multiplied by `c`, at scale `c·δ`.
    pub fn scale(&self, c: &Rational) -> Self {
        let f = |m: &BTreeMap<Slot, BPoint>| m.iter().map(|(k, p)| (*k, p.scale(c))).collect();
        MoebiusHoneycomb {
            n: self.n,
            delta: &self.delta * c,
            a: f(&self.a),
            b: f(&self.b),
        }
    }

    pub fn to_json(&self) -> Result<String, Error> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(s)?)
    }
}

fn check_shape(h: &MoebiusHoneycomb) -> Result<(), Error> {
    if h.n < 1 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if !h.delta.is_positive() {
        return Err(Error::InvalidInput(format!("delta must be positive, got {}", h.delta)));
    }
    for w in window(h.n) {
        h.stored(&w)?;
    }
    let size = h.n * (h.n + 1) * 3 / 2;
    if h.a.len() != size || h.b.len() != size {
        return Err(Error::Structural("coordinates outside the index window".into()));
    }
    Ok(())
}

/// Edge directions, boundary placement and boundary ranges all hold.
pub fn validate_mh(h: &MoebiusHoneycomb) -> Result<bool, Error> {
    check_shape(h)?;
    let n = h.n;
    let reps = h.representatives()?;
    let mut xi = Vec::with_capacity(3 * n);
    for j in 1..=3 * n {
        let p = &reps[class_index(n, 0, j)];
        if *p != boundary_point(block_of(n, j), &p.z, &h.delta) {
            return Ok(false);
        }
        xi.push(p.z.clone());
    }
    if !(MoebiusBoundary { xi }).in_range(&h.delta) {
        return Ok(false);
    }
    let g = quotient(n)?;
    for q in &g.edges {
        let e = q.id.edge();
        let tail = &reps[class_index(n, q.id.i, q.id.j)];
        let head = h.position(&e.head)?;
        if !honeycomb::edge_ok(&(&head - tail), e.dir) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn boundary_mh(h: &MoebiusHoneycomb) -> Result<MoebiusBoundary, Error> {
    let xi = (1..=3 * h.n as i64)
        .map(|j| Ok(h.reconstruct(Kind::A, 0, j)?.z))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(MoebiusBoundary { xi })
}

/// Index `k` of the rhombus `D^{(k)}` that must contain a vertex.
pub fn rhombus_index(n: usize, v: &VertexId) -> i64 {
    let m = n as i64;
    match v.kind {
        Kind::A => {
            let k = (v.j - 1).div_euclid(m);
            let r = v.j - k * m;
            if r > v.i {
                2 * k - 4
            } else {
                2 * k - 5
            }
        }
        Kind::B => rhombus_index(n, &VertexId::a(m - v.i, v.j - v.i - m)) + 3,
    }
}

/// Vertices with `1 ≤ j ≤ periods·3n` outside their rhombus.
pub fn containment_violations(h: &MoebiusHoneycomb, periods: usize) -> Result<Vec<VertexId>, Error> {
    let mut bad = Vec::new();
    let m = h.n as i64;
    for kind in [Kind::A, Kind::B] {
        for i in 0..=m {
            for j in 1..=(3 * m * periods as i64) {
                let v = VertexId { kind, i, j };
                let p = h.position(&v)?;
                if !in_rhombus(&p, rhombus_index(h.n, &v), &h.delta) {
                    bad.push(v);
                }
            }
        }
    }
    Ok(bad)
}

/// `c1·h1 + c2·h2`, at scale `(c1 + c2)·δ`.
pub fn combine(c1: &Rational, h1: &MoebiusHoneycomb, c2: &Rational, h2: &MoebiusHoneycomb) -> Result<MoebiusHoneycomb, Error> {
    if c1.is_negative() || c2.is_negative() {
        return Err(Error::InvalidInput("combination coefficients must be nonnegative".into()));
    }
    if (c1 + c2).is_zero() {
        return Err(Error::InvalidInput("combination coefficients must not both vanish".into()));
    }
    if h1.n != h2.n || h1.delta != h2.delta {
        return Err(Error::InvalidInput("combined honeycombs must share n and delta".into()));
    }
    check_shape(h1)?;
    check_shape(h2)?;
    let mix = |x: &BTreeMap<Slot, BPoint>, y: &BTreeMap<Slot, BPoint>| -> BTreeMap<Slot, BPoint> {
        x.iter()
            .map(|(k, p)| (*k, &p.scale(c1) + &y[k].scale(c2)))
            .collect()
    };
    Ok(MoebiusHoneycomb {
        n: h1.n,
        delta: &h1.delta * &(c1 + c2),
        a: mix(&h1.a, &h2.a),
        b: mix(&h1.b, &h2.b),
    })
}

/// Linear model of Möbius honeycombs: the free coordinates are `x, y` of
/// `Ã_{i,j}` for `i ≥ 1`, `1 ≤ j ≤ 3n`; the parameters are `ξ_1..ξ_{3n}, δ`.
pub struct MoebiusModel {
    pub n: usize,
    pub reduced: Reduced,
}

impl MoebiusModel {
    fn delta_col(n: usize) -> usize {
        3 * n
    }

    /// Symbolic `(x, y)` of the representative `Ã_{i,j}`.
    fn rep_lin(n: usize, i: usize, j: usize) -> [Lin; 2] {
        let d = Self::delta_col(n);
        if i == 0 {
            let s = Rational::from_int(2 - block_of(n, j));
            [
                Lin::new().plus(Col::Param(d), -&s),
                Lin::new().plus(Col::Param(d), s).plus(Col::Param(j - 1), -Rational::one()),
            ]
        } else {
            let k = 2 * ((i - 1) * 3 * n + (j - 1));
            [Lin::var(k), Lin::var(k + 1)]
        }
    }

    fn twist_lin(n: usize, p: [Lin; 2], m: i64) -> [Lin; 2] {
        let d = Col::Param(Self::delta_col(n));
        let shift = Rational::from_int(-3 * m.div_euclid(2));
        let [x, y] = p;
        let x = x.plus(d, shift.clone());
        let y = y.plus(d, shift);
        if m.rem_euclid(2) == 1 {
            [y.plus(d, Rational::from_int(-2)), x.plus(d, Rational::from_int(-1))]
        } else {
            [x, y]
        }
    }

    /// Symbolic `(x, y)` of any strip vertex.
    pub fn vertex_lin(n: usize, v: &VertexId) -> Result<[Lin; 2], Error> {
        let c = class_of(n, *v)?;
        Ok(Self::twist_lin(n, Self::rep_lin(n, c.i, c.j), -c.sigma))
    }

    /// `½ (h(head) − h(tail)) · d` as a form in the model variables.
    pub fn length_lin(n: usize, e: &DirectedEdge) -> Result<Lin, Error> {
        let tail = Self::vertex_lin(n, &e.tail)?;
        let head = Self::vertex_lin(n, &e.head)?;
        let mut len = Lin::new();
        for (c, &dc) in e.dir.vector().iter().enumerate() {
            if dc != 0 {
                let diff = Self::coord(&head, c).sub(&Self::coord(&tail, c));
                len = len.add(&diff.scale(&Rational::new(dc, 2)));
            }
        }
        Ok(len)
    }

    fn coord(p: &[Lin; 2], k: usize) -> Lin {
        match k {
            0 => p[0].clone(),
            1 => p[1].clone(),
            _ => p[0].add(&p[1]).scale(&Rational::from_int(-1)),
        }
    }

    fn build(n: usize) -> Result<Self, Error> {
        let g = quotient(n)?;
        let mut sys = System::new(2 * n * 3 * n, 3 * n + 1);
        for q in &g.edges {
            let e = q.id.edge();
            let tail = Self::rep_lin(n, q.id.i, q.id.j);
            let head = Self::vertex_lin(n, &e.head)?;
            let k = e.dir.const_index();
            sys.eqs.push(Self::coord(&head, k).sub(&Self::coord(&tail, k)));
            let mut len = Lin::new();
            for (c, &dc) in e.dir.vector().iter().enumerate() {
                if dc != 0 {
                    let diff = Self::coord(&head, c).sub(&Self::coord(&tail, c));
                    len = len.add(&diff.scale(&Rational::from_int(dc)));
                }
            }
            sys.ineqs.push(len);
        }
        Ok(MoebiusModel {
            n,
            reduced: sys.reduce(),
        })
    }

    pub fn get(n: usize) -> Result<Arc<Self>, Error> {
        if n < 1 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        static CACHE: SizeCache<MoebiusModel> = SizeCache::new();
        per_size(&CACHE, n, || MoebiusModel::build(n))
    }

    pub fn params(&self, xi: &MoebiusBoundary, delta: &Rational) -> Result<Vec<Rational>, Error> {
        if xi.xi.len() != 3 * self.n {
            return Err(Error::InvalidInput(format!("boundary must have {} entries", 3 * self.n)));
        }
        let mut p = xi.xi.clone();
        p.push(delta.clone());
        Ok(p)
    }

    /// The fiber over `ξ`, or `None` when it is empty for linear-algebra reasons.
    pub fn fiber(&self, xi: &MoebiusBoundary, delta: &Rational) -> Result<Option<Fiber>, Error> {
        if !delta.is_positive() {
            return Err(Error::InvalidInput(format!("delta must be positive, got {delta}")));
        }
        if !xi.in_range(delta) {
            return Err(Error::InvalidInput("boundary values outside their ranges".into()));
        }
        Ok(self.reduced.instantiate(&self.params(xi, delta)?))
    }

    /// The honeycomb with the given values of all model variables.
    pub fn honeycomb(&self, values: &[Rational], xi: &MoebiusBoundary, delta: &Rational) -> Result<MoebiusHoneycomb, Error> {
        let n = self.n;
        let params = self.params(xi, delta)?;
        let mut reps = Vec::with_capacity(3 * n * (n + 1));
        for i in 0..=n {
            for j in 1..=3 * n {
                let [x, y] = Self::rep_lin(n, i, j);
                reps.push(BPoint::from_xy(x.eval(values, &params), y.eval(values, &params)));
            }
        }
        MoebiusHoneycomb::from_representatives(n, delta.clone(), &reps)
    }
}

fn lattice_honeycombs(
    n: usize,
    xi: &MoebiusBoundary,
    delta: &Rational,
    limit: Option<usize>,
) -> Result<Vec<MoebiusHoneycomb>, Error> {
    let model = MoebiusModel::get(n)?;
    let Some(fiber) = model.fiber(xi, delta)? else {
        return Ok(Vec::new());
    };
    let Some(bx) = fiber.lp_box()? else {
        return Ok(Vec::new());
    };
    let prob = fiber.integer_problem()?;
    let mut points = Vec::new();
    prob.search(&bx, |s| {
        points.push(prob.outputs_at(s));
        limit.is_none_or(|l| points.len() < l)
    });
    points
        .iter()
        .map(|v| model.honeycomb(v, xi, delta))
        .collect()
}

/// Number of integral Möbius honeycombs with boundary `ξ`.
pub fn count_integral_mh(n: usize, xi: &MoebiusBoundary, delta: &Rational) -> Result<u64, Error> {
    let model = MoebiusModel::get(n)?;
    let Some(fiber) = model.fiber(xi, delta)? else {
        return Ok(0);
    };
    let Some(bx) = fiber.lp_box()? else {
        return Ok(0);
    };
    Ok(fiber.integer_problem()?.count_parallel(&bx))
}

pub fn integral_mh(n: usize, xi: &MoebiusBoundary, delta: &Rational) -> Result<Vec<MoebiusHoneycomb>, Error> {
    lattice_honeycombs(n, xi, delta, None)
}

pub fn find_integral_mh(n: usize, xi: &MoebiusBoundary, delta: &Rational) -> Result<Option<MoebiusHoneycomb>, Error> {
    Ok(lattice_honeycombs(n, xi, delta, Some(1))?.into_iter().next())
}

/// Smallest `n` holding all three partitions.
pub fn natural_size(lambda: &Partition, mu: &Partition, nu: &Partition) -> usize {
    lambda.length().max(mu.length()).max(nu.length()).max(1)
}

fn nl_boundary(lambda: &Partition, mu: &Partition, nu: &Partition, delta: i64, n: usize) -> Result<MoebiusBoundary, Error> {
    let largest = lambda.largest().max(mu.largest()).max(nu.largest());
    if delta < 1 || delta < largest {
        return Err(Error::InvalidInput(format!(
            "delta = {delta} is not admissible: it must be positive and at least the largest part {largest}"
        )));
    }
    MoebiusBoundary::for_nl(lambda, mu, nu, delta, n)
}

/// `N_{λ,μ,ν}` as the number of integral Möbius honeycombs on `Γ_n`.
pub fn count_nl_in(lambda: &Partition, mu: &Partition, nu: &Partition, delta: i64, n: usize) -> Result<u64, Error> {
    let xi = nl_boundary(lambda, mu, nu, delta, n)?;
    count_integral_mh(n, &xi, &Rational::from_int(delta))
}

pub fn count_nl(lambda: &Partition, mu: &Partition, nu: &Partition, delta: i64) -> Result<u64, Error> {
    count_nl_in(lambda, mu, nu, delta, natural_size(lambda, mu, nu))
}

/// Every integral Möbius honeycomb counted by [`count_nl_in`].
pub fn nl_honeycombs(lambda: &Partition, mu: &Partition, nu: &Partition, delta: i64, n: usize) -> Result<Vec<MoebiusHoneycomb>, Error> {
    let xi = nl_boundary(lambda, mu, nu, delta, n)?;
    integral_mh(n, &xi, &Rational::from_int(delta))
}

/// Translations placing the three honeycombs in `D^{(−4)}`, `D^{(−2)}`, `D^{(0)}`;
/// the fourth entry is the first one moved by a full turn of the strip.
fn block_shift(block: usize, delta: &Rational) -> BPoint {
    let s = delta * (block as i64 - 2);
    BPoint::from_xy(s.clone(), s)
}

/// Assemble a Möbius honeycomb from three honeycombs on `Δ_n`.
///
/// `h_l`, `h_m`, `h_n` have boundaries `(β*, γ*, λ)`, `(γ*, α*, μ)`, `(α*, β*, ν)`.
pub fn glue(h_l: &GlHoneycomb, h_m: &GlHoneycomb, h_n: &GlHoneycomb, delta: &Rational) -> Result<MoebiusHoneycomb, Error> {
    let n = h_l.n;
    if h_m.n != n || h_n.n != n {
        return Err(Error::InvalidInput("glued honeycombs must share n".into()));
    }
    let parts = [h_l, h_m, h_n];
    let bds = parts
        .iter()
        .map(|h| honeycomb::boundary(h))
        .collect::<Result<Vec<GlBoundary>, Error>>()?;
    for k in 0..3 {
        let next = (k + 1) % 3;
        if bds[k].mu != bds[next].lambda {
            return Err(Error::InvalidInput(format!(
                "boundary mismatch between glued pieces {} and {}",
                k + 1,
                next + 1
            )));
        }
    }
    let place = |block: usize, v: &VertexId| -> Result<BPoint, Error> {
        Ok(parts[block % 3].get(v)? + &block_shift(block, delta))
    };
    let m = n as i64;
    let mut reps = Vec::with_capacity(3 * n * (n + 1));
    for i in 0..=m {
        for j in 1..=3 * m {
            let block = ((j - 1) / m) as usize;
            let r = j - block as i64 * m;
            let p = if i == 0 {
                let z = &bds[block].nu[(r - 1) as usize] + &(delta * (4 - 2 * block as i64));
                boundary_point(block as i64, &z, delta)
            } else if r > i {
                place(block, &VertexId::a(i, r))?
            } else {
                let q = place(block + 1, &VertexId::b(m - i, m + r - i))?;
                twist_pow(&q, delta, 1)
            };
            reps.push(p);
        }
    }
    let h = MoebiusHoneycomb::from_representatives(n, delta.clone(), &reps)?;
    if !validate_mh(&h)? {
        return Err(Error::InvalidInput(
            "glued configuration is not a Möbius honeycomb; the pieces do not fit in their rhombi".into(),
        ));
    }
    Ok(h)
}

/// The three honeycombs and the partitions along the shared segments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPieces {
    pub h_lambda: GlHoneycomb,
    pub h_mu: GlHoneycomb,
    pub h_nu: GlHoneycomb,
    pub alpha: Partition,
    pub beta: Partition,
    pub gamma: Partition,
}

/// Cut an integral Möbius honeycomb into three honeycombs on `Δ_n`.
pub fn split(h: &MoebiusHoneycomb) -> Result<SplitPieces, Error> {
    if !h.is_integral() || !h.delta.is_integer() {
        return Err(Error::InvalidInput("split needs an integral Möbius honeycomb".into()));
    }
    if !validate_mh(h)? {
        return Err(Error::InvalidInput("split needs a valid Möbius honeycomb".into()));
    }
    let n = h.n;
    let m = n as i64;
    let t = build_gl(n)?;
    let mut pieces = Vec::with_capacity(3);
    for block in 0..3usize {
        let shift = block_shift(block, &h.delta);
        let mut pos = BTreeMap::new();
        for v in &t.vertices {
            let p = h.reconstruct(v.kind, v.i, v.j + block as i64 * m)?;
            pos.insert(*v, &p - &shift);
        }
        pieces.push(GlHoneycomb { n, pos });
    }
    let read = |slots: &[Rational]| -> Result<Partition, Error> {
        let ints = slots
            .iter()
            .map(|x| x.to_i64().ok_or_else(|| Error::Invariant(format!("non-integral boundary value {x}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(dual_weight(&ints)).map_err(|e| Error::Invariant(format!("segment is not a partition: {e}")))
    };
    let bl = honeycomb::boundary(&pieces[0])?;
    let bm = honeycomb::boundary(&pieces[1])?;
    let beta = read(&bl.lambda)?;
    let gamma = read(&bl.mu)?;
    let alpha = read(&bm.mu)?;
    let mut it = pieces.into_iter();
    Ok(SplitPieces {
        h_lambda: it.next().expect("three pieces"),
        h_mu: it.next().expect("three pieces"),
        h_nu: it.next().expect("three pieces"),
        alpha,
        beta,
        gamma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::honeycomb::lr_honeycombs;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn zero(n: usize, delta: i64) -> MoebiusHoneycomb {
        let e = Partition::empty(0);
        nl_honeycombs(&e, &e, &e, delta, n).unwrap().remove(0)
    }

    #[test]
    fn window_stores_each_class_once() {
        for n in 1..=5 {
            assert_eq!(WindowTable::get(n).unwrap().entries.len(), 3 * n * (n + 1));
        }
    }

    #[test]
    fn zero_triple_has_one_honeycomb() {
        let e = Partition::empty(0);
        for n in 1..=3 {
            assert_eq!(count_nl_in(&e, &e, &e, 1, n).unwrap(), 1);
        }
        let h = zero(2, 1);
        assert!(validate_mh(&h).unwrap());
        let xi: Vec<i64> = boundary_mh(&h).unwrap().xi.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(xi, vec![4, 4, 2, 2, 0, 0]);
    }

    #[test]
    fn figure_count() {
        let l = p("3,2,1");
        assert_eq!(count_nl(&l, &l, &l, 3).unwrap(), 20);
    }

    #[test]
    fn small_counts_match_formula() {
        for (l, m, v) in [("1", "1", ""), ("2", "1", "1"), ("1,1", "1", "1"), ("2,1", "2,1", "1,1"), ("2", "2", "2")] {
            let (l, m, v) = (p(l), p(m), p(v));
            let delta = l.largest().max(m.largest()).max(v.largest()).max(1);
            assert_eq!(count_nl(&l, &m, &v, delta).unwrap(), nl_oracle(&l, &m, &v), "{l} {m} {v}");
        }
    }

    #[test]
    fn odd_weight_counts_zero() {
        assert_eq!(count_nl(&p("1"), &p(""), &p(""), 1).unwrap(), 0);
        assert_eq!(count_nl(&p("2,1"), &p("1"), &p("1"), 2).unwrap(), 0);
    }

    #[test]
    fn small_delta_rejected() {
        assert!(matches!(count_nl(&p("3"), &p("2"), &p("1"), 2), Err(Error::InvalidInput(_))));
        assert!(matches!(count_nl(&p(""), &p(""), &p(""), 0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn enumerated_honeycombs_are_valid_and_contained() {
        let (l, m, v) = (p("2,1"), p("2,1"), p("1,1"));
        let hs = nl_honeycombs(&l, &m, &v, 2, 2).unwrap();
        assert_eq!(hs.len() as u64, nl_oracle(&l, &m, &v));
        let xi = MoebiusBoundary::for_nl(&l, &m, &v, 2, 2).unwrap();
        for h in &hs {
            assert!(validate_mh(h).unwrap());
            assert!(h.is_integral());
            assert_eq!(boundary_mh(h).unwrap(), xi);
            assert!(containment_violations(h, 2).unwrap().is_empty());
        }
    }

    #[test]
    fn reconstruction_follows_the_twist() {
        let l = p("3,2,1");
        let h = nl_honeycombs(&l, &l, &l, 3, 3).unwrap().remove(0);
        let d = h.delta.clone();
        for i in 0..=3i64 {
            for j in 1..=3 + i {
                let base = h.reconstruct(Kind::A, i, j).unwrap();
                assert_eq!(&base, &h.a[&Slot { i: i as usize, j: j as usize }]);
                let shifted = h.reconstruct(Kind::A, i, j + 9).unwrap();
                assert_eq!(shifted, &base + &BPoint::from_xy(&d * 3, &d * 3));
                let partner = h.reconstruct(Kind::B, 3 - i, j - i + 6).unwrap();
                assert_eq!(partner, crate::plane::untwist(&base, &d));
            }
        }
    }

    #[test]
    fn perturbed_edge_is_invalid() {
        let mut h = zero(2, 1);
        let s = Slot { i: 1, j: 2 };
        let q = h.b[&s].clone();
        h.b.insert(s, &q + &BPoint::ints(1, -1, 0));
        assert!(!validate_mh(&h).unwrap());
        h.b.remove(&s);
        assert!(matches!(validate_mh(&h), Err(Error::Structural(_))));
    }

    #[test]
    fn json_round_trip() {
        let h = zero(2, 3);
        let back = MoebiusHoneycomb::from_json(&h.to_json().unwrap()).unwrap();
        assert_eq!(back, h);
        let v: serde_json::Value = serde_json::from_str(&h.to_json().unwrap()).unwrap();
        assert_eq!(v["delta"], serde_json::json!(3));
        assert!(v["a"]["1:2"].is_array());
    }

    #[test]
    fn glue_split_round_trip() {
        let (l, m, v) = (p("3,2,1"), p("3,2,1"), p("3,2,1"));
        let delta = Rational::from_int(3);
        let mut glued = 0;
        for (alpha, beta, gamma) in [("2,1", "2,1", "2,1"), ("3,1", "2", "2,1,1")] {
            let (a, b, g) = (p(alpha), p(beta), p(gamma));
            let hl = lr_honeycombs(&l, &b, &g, 3).unwrap();
            let hm = lr_honeycombs(&m, &g, &a, 3).unwrap();
            let hn = lr_honeycombs(&v, &a, &b, 3).unwrap();
            for x in &hl {
                for y in &hm {
                    for z in &hn {
                        let h = glue(x, y, z, &delta).unwrap();
                        assert!(h.is_integral());
                        let xi = MoebiusBoundary::for_nl(&l, &m, &v, 3, 3).unwrap();
                        assert_eq!(boundary_mh(&h).unwrap(), xi);
                        let s = split(&h).unwrap();
                        assert_eq!((&s.h_lambda, &s.h_mu, &s.h_nu), (x, y, z));
                        assert_eq!((s.alpha.padded(3).unwrap(), s.beta.padded(3).unwrap(), s.gamma.padded(3).unwrap()),
                            (a.padded(3).unwrap(), b.padded(3).unwrap(), g.padded(3).unwrap()));
                        glued += 1;
                    }
                }
            }
        }
        assert!(glued > 0);
    }

    #[test]
    fn glue_rejects_mismatched_segments() {
        let hl = lr_honeycombs(&p("2"), &p("1"), &p("1"), 1).unwrap().remove(0);
        let hm = lr_honeycombs(&p("2"), &p("2"), &p(""), 1).unwrap().remove(0);
        let hn = lr_honeycombs(&p("1"), &p(""), &p("1"), 1).unwrap().remove(0);
        assert!(matches!(glue(&hl, &hm, &hn, &Rational::from_int(2)), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn combination_scales_delta_and_boundary() {
        let (l, m, v) = (p("2"), p("1"), p("1"));
        let h1 = nl_honeycombs(&l, &m, &v, 2, 1).unwrap().remove(0);
        let h2 = zero(1, 2);
        let c = Rational::half();
        let h = combine(&c, &h1, &c, &h2).unwrap();
        assert!(validate_mh(&h).unwrap());
        let b1 = boundary_mh(&h1).unwrap();
        let b2 = boundary_mh(&h2).unwrap();
        let expect: Vec<Rational> = b1.xi.iter().zip(&b2.xi).map(|(x, y)| (x + y) * &c).collect();
        assert_eq!(boundary_mh(&h).unwrap().xi, expect);
        let third = h1.scale(&Rational::new(1, 3));
        assert!(validate_mh(&third).unwrap());
        assert!(combine(&-Rational::one(), &h1, &Rational::one(), &h2).is_err());
    }
}
