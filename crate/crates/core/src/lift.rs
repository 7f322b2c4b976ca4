//! Edge lengths, perimeters, the injection `ι`, weighted perimeters and
//! largest-lifts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::moebius::{boundary_mh, MoebiusBoundary, MoebiusHoneycomb, MoebiusModel, Slot};
use crate::polytope::{Col, Fiber, Lin};
use crate::rational::Rational;
use crate::simplex::{self, Affine, LpOutcome};
use crate::plane::Dir;
use crate::tinkertoy::{head_of, quotient, quotient_edge, DirectedEdge, Face, Kind, QuotientGraph};

fn check_edge(h: &MoebiusHoneycomb, e: &DirectedEdge) -> Result<(), Error> {
    quotient_edge(h.n, e).map(|_| ())
}

/// `½ (h(head) − h(tail)) · d`.
pub fn edge_length(h: &MoebiusHoneycomb, e: &DirectedEdge) -> Result<Rational, Error> {
    check_edge(h, e)?;
    let d = &h.position(&e.head)? - &h.position(&e.tail)?;
    Ok(d.dot(e.dir.vector()) * Rational::half())
}

/// The coordinate that stays fixed along the edge.
pub fn const_coord(h: &MoebiusHoneycomb, e: &DirectedEdge) -> Result<Rational, Error> {
    check_edge(h, e)?;
    Ok(h.position(&e.tail)?.coord(e.dir.const_index()).clone())
}

/// Lengths of the edges of `Γ_n`, in quotient edge order.
pub fn edge_lengths(h: &MoebiusHoneycomb) -> Result<Vec<Rational>, Error> {
    let g = quotient(h.n)?;
    g.edges.iter().map(|q| edge_length(h, &q.id.edge())).collect()
}

pub fn const_coords(h: &MoebiusHoneycomb) -> Result<Vec<Rational>, Error> {
    let g = quotient(h.n)?;
    g.edges.iter().map(|q| const_coord(h, &q.id.edge())).collect()
}

/// Sum of all edge lengths of `Γ_n`.
pub fn ltotal(h: &MoebiusHoneycomb) -> Result<Rational, Error> {
    Ok(edge_lengths(h)?.iter().sum())
}

pub fn perimeter(h: &MoebiusHoneycomb, hexagon: usize) -> Result<Rational, Error> {
    let g = quotient(h.n)?;
    let hex = g
        .hexagons
        .get(hexagon)
        .ok_or_else(|| Error::InvalidInput(format!("no hexagon {hexagon} for n = {}", h.n)))?;
    hex.edges.iter().map(|&e| edge_length(h, &g.edges[e].id.edge())).sum()
}

/// The strip edges around `α̃_{i,j}`, in the order of its vertices.
pub fn hexagon_strip_edges(g: &QuotientGraph, hexagon: usize) -> Result<Vec<DirectedEdge>, Error> {
    let hx = g
        .hexagons
        .get(hexagon)
        .ok_or_else(|| Error::InvalidInput(format!("no hexagon {hexagon} for n = {}", g.n)))?;
    (0..6)
        .map(|k| {
            let (u, v) = (hx.vertices[k], hx.vertices[(k + 1) % 6]);
            let (tail, head) = if u.kind == Kind::A { (u, v) } else { (v, u) };
            Dir::ALL
                .into_iter()
                .find(|&d| head_of(tail.i, tail.j, d) == head)
                .map(|dir| DirectedEdge { tail, head, dir })
                .ok_or_else(|| Error::Invariant(format!("{u} and {v} are not adjacent")))
        })
        .collect()
}

/// `Σ ∓ const(ẽ)` around `α̃`, the sign opposite to the hexagon's side of `ẽ`.
pub fn alternating_const_sum(h: &MoebiusHoneycomb, hexagon: usize) -> Result<Rational, Error> {
    let g = quotient(h.n)?;
    let edges = hexagon_strip_edges(&g, hexagon)?;
    let mut total = Rational::zero();
    for (e, &side) in edges.iter().zip(&g.hexagons[hexagon].sides) {
        total += const_coord(h, e)? * -(side as i64);
    }
    Ok(total)
}

/// Hexagon label `(i, j)` as a map key.
pub fn hexagon_slot(g: &QuotientGraph, hexagon: usize) -> Slot {
    let hx = &g.hexagons[hexagon];
    Slot { i: hx.i, j: hx.j }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IotaImage {
    pub perimeters: BTreeMap<Slot, Rational>,
    pub xi: MoebiusBoundary,
}

impl IotaImage {
    /// Perimeters in hexagon order.
    pub fn perimeter_vec(&self) -> Vec<Rational> {
        self.perimeters.values().cloned().collect()
    }

    pub fn combine(c1: &Rational, a: &IotaImage, c2: &Rational, b: &IotaImage) -> IotaImage {
        IotaImage {
            perimeters: a
                .perimeters
                .iter()
                .map(|(k, v)| (*k, v * c1 + &b.perimeters[k] * c2))
                .collect(),
            xi: MoebiusBoundary {
                xi: a.xi.xi.iter().zip(&b.xi.xi).map(|(x, y)| x * c1 + y * c2).collect(),
            },
        }
    }
}

/// Perimeters of every hexagon together with the boundary.
pub fn iota(h: &MoebiusHoneycomb) -> Result<IotaImage, Error> {
    let g = quotient(h.n)?;
    let perimeters = (0..g.hexagons.len())
        .map(|k| Ok((hexagon_slot(&g, k), perimeter(h, k)?)))
        .collect::<Result<BTreeMap<_, _>, Error>>()?;
    Ok(IotaImage {
        perimeters,
        xi: boundary_mh(h)?,
    })
}

/// Hexagon weights, in hexagon order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HexWeights {
    pub n: usize,
    pub w: Vec<Rational>,
}

/// `i(n − i)`.
pub fn base_weights(n: usize) -> Result<HexWeights, Error> {
    let g = quotient(n)?;
    let w = g
        .hexagons
        .iter()
        .map(|hx| Rational::from_int((hx.i * (n - hx.i)) as i64))
        .collect();
    Ok(HexWeights { n, w })
}

/// `i(n − i)` plus `(k + 1) / (100 (H + 1))` on the `k`-th hexagon of `H`.
pub fn make_weights(n: usize) -> Result<HexWeights, Error> {
    let mut w = base_weights(n)?;
    let h = w.w.len() as i64;
    for (k, v) in w.w.iter_mut().enumerate() {
        *v += Rational::new(k as i64 + 1, 100 * (h + 1));
    }
    Ok(w)
}

/// Every weight exceeds a sixth of the sum over the faces across its edges,
/// the unbounded face counting as 0.
pub fn local_mean_ok(w: &HexWeights) -> Result<bool, Error> {
    let g = quotient(w.n)?;
    for (k, v) in w.w.iter().enumerate() {
        let around: Rational = g.neighbours(k).iter().map(|&m| &w.w[m]).sum();
        if v * 6 <= around {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn wperim(h: &MoebiusHoneycomb, w: &HexWeights) -> Result<Rational, Error> {
    if w.n != h.n {
        return Err(Error::InvalidInput("weights and honeycomb have different n".into()));
    }
    let mut total = Rational::zero();
    for (k, c) in w.w.iter().enumerate() {
        total += c * perimeter(h, k)?;
    }
    Ok(total)
}

/// A form in the model variables rewritten on a fiber's free variables.
fn fiber_form(fiber: &Fiber, lin: &Lin, params: &[Rational]) -> Affine {
    let mut coeffs = vec![Rational::zero(); fiber.dim];
    let mut constant = Rational::zero();
    for (col, c) in lin.terms() {
        match *col {
            Col::Var(v) => {
                let f = &fiber.vars[v];
                constant += c * &f.constant;
                for (o, a) in coeffs.iter_mut().zip(&f.coeffs) {
                    if !a.is_zero() {
                        *o += c * a;
                    }
                }
            }
            Col::Param(p) => constant += c * &params[p],
            Col::One => constant += c,
        }
    }
    Affine { coeffs, constant }
}

/// Perimeter forms of every hexagon on the fiber.
fn perimeter_forms(n: usize, fiber: &Fiber, params: &[Rational]) -> Result<Vec<Affine>, Error> {
    let g = quotient(n)?;
    let lengths = g
        .edges
        .iter()
        .map(|q| MoebiusModel::length_lin(n, &q.id.edge()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(g.hexagons
        .iter()
        .map(|hx| {
            let lin = hx.edges.iter().fold(Lin::new(), |acc, &e| acc.add(&lengths[e]));
            fiber_form(fiber, &lin, params)
        })
        .collect())
}

struct FiberSetup {
    model: std::sync::Arc<MoebiusModel>,
    fiber: Fiber,
    perimeters: Vec<Affine>,
}

fn setup(n: usize, xi: &MoebiusBoundary, delta: &Rational) -> Result<FiberSetup, Error> {
    if xi.xi.len() != 3 * n {
        return Err(Error::InvalidInput(format!("boundary must have {} entries", 3 * n)));
    }
    let model = MoebiusModel::get(n)?;
    let fiber = model
        .fiber(xi, delta)?
        .ok_or_else(|| Error::Infeasible("no Möbius honeycomb has this boundary".into()))?;
    let params = model.params(xi, delta)?;
    let perimeters = perimeter_forms(n, &fiber, &params)?;
    Ok(FiberSetup {
        model,
        fiber,
        perimeters,
    })
}

fn weighted(forms: &[Affine], w: &[Rational], dim: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dim];
    for (f, c) in forms.iter().zip(w) {
        for (o, a) in out.iter_mut().zip(&f.coeffs) {
            *o += c * a;
        }
    }
    out
}

/// The maximizer of the weighted perimeter over a boundary fiber.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LargestLift {
    pub honeycomb: MoebiusHoneycomb,
    pub iota: IotaImage,
    pub wperim: Rational,
    /// Hexagons whose perimeters break ties, in the order used.
    pub tie_break_order: Vec<Slot>,
}

/// Maximize `Σ i(n−i)·perimeter`, then each perimeter in row-major order.
pub fn largest_lift(xi: &MoebiusBoundary, delta: &Rational, n: usize) -> Result<LargestLift, Error> {
    let s = setup(n, xi, delta)?;
    let g = quotient(n)?;
    let base = base_weights(n)?;
    let mut objectives = vec![weighted(&s.perimeters, &base.w, s.fiber.dim)];
    objectives.extend(s.perimeters.iter().map(|f| f.coeffs.clone()));
    let point = match s.fiber.maximize_lex(&objectives) {
        LpOutcome::Optimal { point, .. } => point,
        LpOutcome::Infeasible => return Err(Error::Infeasible("no Möbius honeycomb has this boundary".into())),
        LpOutcome::Unbounded => return Err(Error::Invariant("weighted perimeter unbounded on a fiber".into())),
    };
    let honeycomb = s.model.honeycomb(&s.fiber.original(&point), xi, delta)?;
    Ok(LargestLift {
        iota: iota(&honeycomb)?,
        wperim: wperim(&honeycomb, &base)?,
        tie_break_order: (0..g.hexagons.len()).map(|k| hexagon_slot(&g, k)).collect(),
        honeycomb,
    })
}

/// The Möbius honeycomb with a given `ι`-image, if there is one.
pub fn from_iota(image: &IotaImage, delta: &Rational, n: usize) -> Result<Option<MoebiusHoneycomb>, Error> {
    let s = match setup(n, &image.xi, delta) {
        Ok(s) => s,
        Err(Error::Infeasible(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let targets = image.perimeter_vec();
    if targets.len() != s.perimeters.len() {
        return Err(Error::InvalidInput("wrong number of perimeters".into()));
    }
    let mut ineqs = s.fiber.ineqs.clone();
    for (f, t) in s.perimeters.iter().zip(&targets) {
        let d = Affine {
            coeffs: f.coeffs.clone(),
            constant: &f.constant - t,
        };
        ineqs.push(Affine {
            coeffs: d.coeffs.iter().map(|c| -c).collect(),
            constant: -&d.constant,
        });
        ineqs.push(d);
    }
    let Some(point) = simplex::feasible_point(s.fiber.dim, &ineqs) else {
        return Ok(None);
    };
    Ok(Some(s.model.honeycomb(&s.fiber.original(&point), &image.xi, delta)?))
}

/// Perimeter changes of inflating `hexagon` by 1: `+6` on it, `−1` across each
/// of its edges that borders another hexagon.
pub fn inflation_pattern(g: &QuotientGraph, hexagon: usize) -> Vec<i64> {
    let mut d = vec![0i64; g.hexagons.len()];
    d[hexagon] += 6;
    for &e in &g.hexagons[hexagon].edges {
        let q = &g.edges[e];
        for f in [q.positive, q.negative] {
            if let Face::Hexagon(m) = f {
                if m != hexagon {
                    d[m] -= 1;
                }
            }
        }
    }
    d
}

fn check_hexagon(g: &QuotientGraph, hexagon: usize) -> Result<(), Error> {
    if hexagon >= g.hexagons.len() {
        return Err(Error::InvalidInput(format!("no hexagon {hexagon} for n = {}", g.n)));
    }
    Ok(())
}

/// Inflate `hexagon` by `epsilon`; `None` when the result is not a Möbius honeycomb.
pub fn inflate_hexagon(h: &MoebiusHoneycomb, hexagon: usize, epsilon: &Rational) -> Result<Option<MoebiusHoneycomb>, Error> {
    if epsilon.is_negative() {
        return Err(Error::InvalidInput("epsilon must be nonnegative".into()));
    }
    let g = quotient(h.n)?;
    check_hexagon(&g, hexagon)?;
    if epsilon.is_zero() {
        return Ok(Some(h.clone()));
    }
    let mut image = iota(h)?;
    let pattern = inflation_pattern(&g, hexagon);
    for (k, d) in pattern.iter().enumerate() {
        if *d != 0 {
            let slot = hexagon_slot(&g, k);
            let p = image.perimeters.get_mut(&slot).expect("hexagon perimeter");
            *p += epsilon * *d;
        }
    }
    from_iota(&image, &h.delta, h.n)
}

/// Whether some `ε > 0` inflates `hexagon`: the largest feasible step is positive.
pub fn is_inflatable(h: &MoebiusHoneycomb, hexagon: usize) -> Result<bool, Error> {
    let g = quotient(h.n)?;
    check_hexagon(&g, hexagon)?;
    let xi = boundary_mh(h)?;
    let s = setup(h.n, &xi, &h.delta)?;
    let current: Vec<Rational> = (0..g.hexagons.len()).map(|k| perimeter(h, k)).collect::<Result<_, _>>()?;
    let pattern = inflation_pattern(&g, hexagon);
    // variables: free coordinates, then the step t
    let dim = s.fiber.dim + 1;
    let lift = |a: &Affine, t: Rational| -> Affine {
        let mut coeffs = a.coeffs.clone();
        coeffs.push(t);
        Affine {
            coeffs,
            constant: a.constant.clone(),
        }
    };
    let mut ineqs: Vec<Affine> = s.fiber.ineqs.iter().map(|a| lift(a, Rational::zero())).collect();
    for ((f, p), d) in s.perimeters.iter().zip(&current).zip(&pattern) {
        // f(s) − p − d·t = 0
        let eq = lift(
            &Affine {
                coeffs: f.coeffs.clone(),
                constant: &f.constant - p,
            },
            Rational::from_int(-d),
        );
        ineqs.push(Affine {
            coeffs: eq.coeffs.iter().map(|c| -c).collect(),
            constant: -&eq.constant,
        });
        ineqs.push(eq);
    }
    let mut cap = vec![Rational::zero(); dim];
    cap[dim - 1] = Rational::from_int(-1);
    ineqs.push(Affine {
        coeffs: cap,
        constant: Rational::one(),
    });
    let mut objective = vec![Rational::zero(); dim];
    objective[dim - 1] = Rational::one();
    match simplex::maximize(dim, &ineqs, &objective) {
        LpOutcome::Optimal { values, .. } => Ok(values[0].is_positive()),
        LpOutcome::Infeasible => Err(Error::Invariant("a honeycomb is missing from its own fiber".into())),
        LpOutcome::Unbounded => Err(Error::Invariant("capped inflation step is unbounded".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::{combine, nl_honeycombs, validate_mh};
    use crate::partition::Partition;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn sample() -> Vec<MoebiusHoneycomb> {
        let l = p("2,1");
        nl_honeycombs(&l, &l, &p("2"), 2, 2).unwrap()
    }

    #[test]
    fn weights_for_five() {
        let w = base_weights(5).unwrap();
        let g = quotient(5).unwrap();
        for (hx, v) in g.hexagons.iter().zip(&w.w) {
            assert_eq!(v.to_i64().unwrap(), [0, 4, 6, 6, 4][hx.i]);
        }
        for n in 2..=5 {
            let w = make_weights(n).unwrap();
            assert!(local_mean_ok(&w).unwrap());
            let mut seen = w.w.clone();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), w.w.len());
        }
    }

    #[test]
    fn lengths_agree_across_edge_classes() {
        for h in sample() {
            let g = quotient(h.n).unwrap();
            for q in &g.edges {
                let a = edge_length(&h, &q.id.edge()).unwrap();
                let b = edge_length(&h, &q.partner.edge()).unwrap();
                assert_eq!(a, b);
                assert!(!a.is_negative());
            }
        }
    }

    #[test]
    fn const_differences_agree_across_edge_classes() {
        let hs = sample();
        let g = quotient(2).unwrap();
        for q in &g.edges {
            let d = |e: &DirectedEdge| const_coord(&hs[0], e).unwrap() - const_coord(&hs[1], e).unwrap();
            assert_eq!(d(&q.id.edge()), d(&q.partner.edge()));
        }
    }

    #[test]
    fn total_length_is_half_the_boundary() {
        for h in sample() {
            let xi = boundary_mh(&h).unwrap();
            assert_eq!(ltotal(&h).unwrap(), xi.sum() * Rational::half());
        }
    }

    #[test]
    fn perimeter_is_alternating_const_sum() {
        for h in sample() {
            for k in 0..quotient(h.n).unwrap().hexagons.len() {
                assert_eq!(perimeter(&h, k).unwrap(), alternating_const_sum(&h, k).unwrap());
            }
        }
    }

    #[test]
    fn iota_is_linear_and_invertible() {
        let hs = sample();
        assert!(hs.len() >= 2);
        let c = Rational::half();
        let mix = combine(&c, &hs[0], &c, &hs[1]).unwrap();
        let expect = IotaImage::combine(&c, &iota(&hs[0]).unwrap(), &c, &iota(&hs[1]).unwrap());
        assert_eq!(iota(&mix).unwrap(), expect);
        assert_ne!(iota(&hs[0]).unwrap(), iota(&hs[1]).unwrap());
        for h in &hs {
            let back = from_iota(&iota(h).unwrap(), &h.delta, h.n).unwrap().unwrap();
            assert_eq!(&back, h);
        }
    }

    #[test]
    fn largest_lift_is_not_inflatable() {
        let l = p("2,1");
        let xi = MoebiusBoundary::for_nl(&l, &l, &p("2"), 2, 2).unwrap();
        let delta = Rational::from_int(2);
        let ll = largest_lift(&xi, &delta, 2).unwrap();
        assert!(validate_mh(&ll.honeycomb).unwrap());
        assert_eq!(boundary_mh(&ll.honeycomb).unwrap(), xi);
        assert!(ll.honeycomb.is_half_integral());
        let w = base_weights(2).unwrap();
        for h in nl_honeycombs(&l, &l, &p("2"), 2, 2).unwrap() {
            assert!(wperim(&h, &w).unwrap() <= ll.wperim);
        }
        for k in 0..quotient(2).unwrap().hexagons.len() {
            assert!(!is_inflatable(&ll.honeycomb, k).unwrap());
            assert!(inflate_hexagon(&ll.honeycomb, k, &Rational::new(1, 100)).unwrap().is_none());
        }
    }

    #[test]
    fn inflation_raises_weighted_perimeter() {
        let w = make_weights(2).unwrap();
        let g = quotient(2).unwrap();
        let mut inflated = 0;
        for h in sample() {
            for k in 0..g.hexagons.len() {
                let eps = Rational::new(1, 4);
                if let Some(bigger) = inflate_hexagon(&h, k, &eps).unwrap() {
                    assert!(is_inflatable(&h, k).unwrap());
                    assert!(validate_mh(&bigger).unwrap());
                    assert!(wperim(&bigger, &w).unwrap() > wperim(&h, &w).unwrap());
                    assert_eq!(perimeter(&bigger, k).unwrap(), perimeter(&h, k).unwrap() + eps * 6);
                    inflated += 1;
                }
                assert_eq!(inflate_hexagon(&h, k, &Rational::zero()).unwrap().as_ref(), Some(&h));
            }
        }
        assert!(inflated > 0);
    }
}
