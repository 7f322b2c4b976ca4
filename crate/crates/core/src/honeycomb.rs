//! Honeycombs on the triangle `Δ_n` and Littlewood-Richardson coefficients.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cache::{per_size, SizeCache};
use crate::error::Error;
use crate::partition::Partition;
use crate::plane::{BPoint, Dir};
use crate::polytope::{Col, Fiber, Lin, Reduced, System};
use crate::rational::Rational;
use crate::tinkertoy::{build_gl, GlTinkertoy, VertexId};

pub use crate::oracle::lr_oracle;

/// A placement of the vertices of `Δ_n` in the plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlHoneycomb {
    pub n: usize,
    pub pos: BTreeMap<VertexId, BPoint>,
}

/// Constant coordinates along the three boundary families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlBoundary {
    pub lambda: Vec<Rational>,
    pub mu: Vec<Rational>,
    pub nu: Vec<Rational>,
}

impl GlBoundary {
    pub fn from_ints(lambda: &[i64], mu: &[i64], nu: &[i64]) -> Self {
        let conv = |v: &[i64]| v.iter().map(|&x| Rational::from_int(x)).collect();
        GlBoundary {
            lambda: conv(lambda),
            mu: conv(mu),
            nu: conv(nu),
        }
    }

    /// The boundary counted by `c^λ_{μ,ν}`: `(μ*, ν*, λ)`.
    pub fn for_lr(lambda: &Partition, mu: &Partition, nu: &Partition, n: usize) -> Result<Self, Error> {
        let [l, m, v] = lr_inputs(lambda, mu, nu, n)?;
        Ok(GlBoundary::from_ints(&m.dual_weight(), &v.dual_weight(), l.parts()))
    }

    fn params(&self) -> Vec<Rational> {
        self.lambda.iter().chain(&self.mu).chain(&self.nu).cloned().collect()
    }
}

impl GlHoneycomb {
    /// Every vertex at the same point.
    pub fn constant(n: usize, p: BPoint) -> Result<Self, Error> {
        let t = build_gl(n)?;
        Ok(GlHoneycomb {
            n,
            pos: t.vertices.iter().map(|v| (*v, p.clone())).collect(),
        })
    }

    pub fn get(&self, v: &VertexId) -> Result<&BPoint, Error> {
        self.pos
            .get(v)
            .ok_or_else(|| Error::Structural(format!("honeycomb has no position for {v}")))
    }

    /// `c1·h1 + c2·h2`.
    pub fn combine(c1: &Rational, h1: &GlHoneycomb, c2: &Rational, h2: &GlHoneycomb) -> Result<Self, Error> {
        if h1.n != h2.n {
            return Err(Error::InvalidInput("honeycombs of different sizes".into()));
        }
        let mut pos = BTreeMap::new();
        for (v, p) in &h1.pos {
            let q = h2.get(v)?;
            pos.insert(*v, &p.scale(c1) + &q.scale(c2));
        }
        Ok(GlHoneycomb { n: h1.n, pos })
    }

    pub fn translate(&self, by: &BPoint) -> Self {
        GlHoneycomb {
            n: self.n,
            pos: self.pos.iter().map(|(v, p)| (*v, p + by)).collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.pos.values().all(|p| p.is_lattice())
    }
}

/// Every edge difference is a nonnegative multiple of its direction.
pub fn validate(h: &GlHoneycomb) -> Result<bool, Error> {
    let t = build_gl(h.n)?;
    for v in &t.vertices {
        h.get(v)?;
    }
    for e in &t.edges {
        let d = h.get(&e.head)? - h.get(&e.tail)?;
        if !edge_ok(&d, e.dir) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `d` is a nonnegative multiple of the direction vector.
pub fn edge_ok(d: &BPoint, dir: Dir) -> bool {
    let k = dir.const_index();
    d.coord(k).is_zero() && !d.dot(dir.vector()).is_negative()
}

pub fn boundary(h: &GlHoneycomb) -> Result<GlBoundary, Error> {
    let t = build_gl(h.n)?;
    let read = |family: &[VertexId], k: usize| -> Result<Vec<Rational>, Error> {
        family.iter().map(|v| Ok(h.get(v)?.coord(k).clone())).collect()
    };
    Ok(GlBoundary {
        lambda: read(&t.lambda_family, 0)?,
        mu: read(&t.mu_family, 1)?,
        nu: read(&t.nu_family, 2)?,
    })
}

/// Linear model of `Δ_n` honeycombs with the boundary as parameters.
pub struct GlModel {
    pub n: usize,
    pub tinkertoy: GlTinkertoy,
    index: HashMap<VertexId, usize>,
    pub reduced: Reduced,
}

impl GlModel {
    fn build(n: usize) -> Result<Self, Error> {
        let tinkertoy = build_gl(n)?;
        let index: HashMap<VertexId, usize> =
            tinkertoy.vertices.iter().enumerate().map(|(k, v)| (*v, k)).collect();
        let nv = 2 * tinkertoy.vertices.len();
        let mut sys = System::new(nv, 3 * n);
        let coord = |v: &VertexId, k: usize| -> Lin {
            let b = 2 * index[v];
            match k {
                0 => Lin::var(b),
                1 => Lin::var(b + 1),
                _ => Lin::new()
                    .plus(Col::Var(b), -Rational::one())
                    .plus(Col::Var(b + 1), -Rational::one()),
            }
        };
        for e in &tinkertoy.edges {
            let k = e.dir.const_index();
            sys.eqs.push(coord(&e.head, k).sub(&coord(&e.tail, k)));
            let dv = e.dir.vector();
            let mut len = Lin::new();
            for (c, &dc) in dv.iter().enumerate() {
                if dc != 0 {
                    let diff = coord(&e.head, c).sub(&coord(&e.tail, c));
                    len = len.add(&diff.scale(&Rational::from_int(dc)));
                }
            }
            sys.ineqs.push(len);
        }
        for (slot, (family, k)) in [
            (&tinkertoy.lambda_family, 0usize),
            (&tinkertoy.mu_family, 1),
            (&tinkertoy.nu_family, 2),
        ]
        .into_iter()
        .enumerate()
        {
            for (i, v) in family.iter().enumerate() {
                sys.eqs.push(coord(v, k).sub(&Lin::param(slot * n + i)));
            }
        }
        let reduced = sys.reduce();
        Ok(GlModel {
            n,
            tinkertoy,
            index,
            reduced,
        })
    }

    pub fn get(n: usize) -> Result<Arc<GlModel>, Error> {
        static CACHE: SizeCache<GlModel> = SizeCache::new();
        per_size(&CACHE, n, || GlModel::build(n))
    }

    pub fn fiber(&self, b: &GlBoundary) -> Result<Option<Fiber>, Error> {
        if b.lambda.len() != self.n || b.mu.len() != self.n || b.nu.len() != self.n {
            return Err(Error::InvalidInput(format!("boundary must have three vectors of length {}", self.n)));
        }
        Ok(self.reduced.instantiate(&b.params()))
    }

    pub fn honeycomb(&self, values: &[Rational]) -> GlHoneycomb {
        let pos = self
            .tinkertoy
            .vertices
            .iter()
            .map(|v| {
                let b = 2 * self.index[v];
                (*v, BPoint::from_xy(values[b].clone(), values[b + 1].clone()))
            })
            .collect();
        GlHoneycomb { n: self.n, pos }
    }
}

fn lattice_honeycombs(n: usize, b: &GlBoundary, limit: Option<usize>) -> Result<Vec<GlHoneycomb>, Error> {
    let model = GlModel::get(n)?;
    let Some(fiber) = model.fiber(b)? else {
        return Ok(Vec::new());
    };
    let Some(bx) = fiber.lp_box()? else {
        return Ok(Vec::new());
    };
    let prob = fiber.integer_problem()?;
    let mut out = Vec::new();
    prob.search(&bx, |s| {
        out.push(model.honeycomb(&prob.outputs_at(s)));
        limit.is_none_or(|l| out.len() < l)
    });
    Ok(out)
}

/// All integral honeycombs with the given boundary.
pub fn integral_honeycombs(n: usize, b: &GlBoundary) -> Result<Vec<GlHoneycomb>, Error> {
    lattice_honeycombs(n, b, None)
}

pub fn count_integral(n: usize, b: &GlBoundary) -> Result<u64, Error> {
    let model = GlModel::get(n)?;
    let Some(fiber) = model.fiber(b)? else {
        return Ok(0);
    };
    let Some(bx) = fiber.lp_box()? else {
        return Ok(0);
    };
    Ok(fiber.integer_problem()?.count_parallel(&bx))
}

fn lr_inputs(lambda: &Partition, mu: &Partition, nu: &Partition, n: usize) -> Result<[Partition; 3], Error> {
    if n < 1 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    Ok([lambda.padded(n)?, mu.padded(n)?, nu.padded(n)?])
}

/// `c^λ_{μ,ν}` as the number of integral honeycombs with boundary `(μ*, ν*, λ)`.
pub fn count_lr(lambda: &Partition, mu: &Partition, nu: &Partition, n: usize) -> Result<u64, Error> {
    count_integral(n, &GlBoundary::for_lr(lambda, mu, nu, n)?)
}

/// Every integral honeycomb counted by [`count_lr`].
pub fn lr_honeycombs(lambda: &Partition, mu: &Partition, nu: &Partition, n: usize) -> Result<Vec<GlHoneycomb>, Error> {
    integral_honeycombs(n, &GlBoundary::for_lr(lambda, mu, nu, n)?)
}

/// One integral honeycomb with the given boundary, if any.
pub fn find_integral(n: usize, b: &GlBoundary) -> Result<Option<GlHoneycomb>, Error> {
    Ok(lattice_honeycombs(n, b, Some(1))?.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn constant_map_is_valid_with_zero_boundary() {
        let h = GlHoneycomb::constant(3, BPoint::origin()).unwrap();
        assert!(validate(&h).unwrap());
        let b = boundary(&h).unwrap();
        assert!(b.lambda.iter().chain(&b.mu).chain(&b.nu).all(|x| x.is_zero()));
    }

    #[test]
    fn missing_vertex_is_structural() {
        let mut h = GlHoneycomb::constant(2, BPoint::origin()).unwrap();
        h.pos.remove(&VertexId::a(1, 2));
        assert!(matches!(validate(&h), Err(Error::Structural(_))));
    }

    #[test]
    fn broken_edge_is_invalid() {
        let mut h = GlHoneycomb::constant(2, BPoint::origin()).unwrap();
        h.pos.insert(VertexId::a(1, 2), BPoint::ints(1, -1, 0));
        assert!(!validate(&h).unwrap());
    }

    #[test]
    fn spec_examples() {
        assert_eq!(count_lr(&p("2,1"), &p("1,1"), &p("1"), 3).unwrap(), 1);
        assert_eq!(count_lr(&p("2,1"), &p("2,1"), &p(""), 3).unwrap(), 1);
        assert_eq!(count_lr(&p("2,1"), &p("2"), &p("2"), 3).unwrap(), 0);
        assert_eq!(count_lr(&p("3,2,1"), &p("2,1"), &p("2,1"), 3).unwrap(), 2);
        assert_eq!(count_lr(&p(""), &p(""), &p(""), 1).unwrap(), 1);
        assert_eq!(count_lr(&p("2"), &p("1"), &p("1"), 1).unwrap(), 1);
    }

    #[test]
    fn counted_honeycombs_have_the_right_boundary() {
        let (l, m, v) = (p("3,2,1"), p("2,1"), p("2,1"));
        let hs = lr_honeycombs(&l, &m, &v, 3).unwrap();
        assert_eq!(hs.len(), 2);
        assert_ne!(hs[0], hs[1]);
        for h in &hs {
            assert!(validate(h).unwrap());
            assert!(h.is_integral());
            assert_eq!(boundary(h).unwrap(), GlBoundary::for_lr(&l, &m, &v, 3).unwrap());
        }
        let mid = GlHoneycomb::combine(&Rational::half(), &hs[0], &Rational::half(), &hs[1]).unwrap();
        assert!(validate(&mid).unwrap());
        assert_eq!(boundary(&mid).unwrap(), GlBoundary::for_lr(&l, &m, &v, 3).unwrap());
    }

    #[test]
    fn agrees_with_tableau_count() {
        for n in 1..=3 {
            let all = Partition::all_bounded(n, 3);
            for l in &all {
                for m in &all {
                    for v in &all {
                        if l.weight() != m.weight() + v.weight() {
                            continue;
                        }
                        assert_eq!(
                            count_lr(l, m, v, n).unwrap(),
                            lr_oracle(l, m, v),
                            "{l} {m} {v}"
                        );
                    }
                }
            }
        }
    }
}
