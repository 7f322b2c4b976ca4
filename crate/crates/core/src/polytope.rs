//! Parametric linear systems, exact elimination and lattice-point search.
//!
//! A system lives over columns `[variables | parameters | 1]`. Equalities are
//! eliminated once, symbolically in the parameters, leaving a set of free
//! variables; instantiating the parameters yields a [`Fiber`]: a polyhedron in
//! the free variables plus affine formulas for every original variable.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::Error;
use crate::rational::{common_denominator, Rational};
use crate::simplex::{self, Affine, LpOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Col {
    Var(usize),
    Param(usize),
    One,
}

/// Sparse linear form over variables, parameters and a constant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lin {
    terms: BTreeMap<Col, Rational>,
}

impl Lin {
    pub fn new() -> Self {
        Lin::default()
    }

    pub fn var(k: usize) -> Self {
        Lin::new().plus(Col::Var(k), Rational::one())
    }

    pub fn param(k: usize) -> Self {
        Lin::new().plus(Col::Param(k), Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Lin::new().plus(Col::One, c)
    }

    pub fn plus(mut self, col: Col, c: Rational) -> Self {
        self.add_term(col, &c);
        self
    }

    pub fn add_term(&mut self, col: Col, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(col).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&col);
        }
    }

    pub fn add(&self, other: &Lin) -> Lin {
        let mut out = self.clone();
        for (col, c) in &other.terms {
            out.add_term(*col, c);
        }
        out
    }

    pub fn sub(&self, other: &Lin) -> Lin {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Lin {
        let mut out = Lin::new();
        for (col, v) in &self.terms {
            out.add_term(*col, &(v * c));
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Col, &Rational)> {
        self.terms.iter()
    }

    pub fn eval(&self, vars: &[Rational], params: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(col, c)| match col {
                Col::Var(k) => c * &vars[*k],
                Col::Param(k) => c * &params[*k],
                Col::One => c.clone(),
            })
            .sum()
    }
}

/// A linear system with equalities `= 0` and inequalities `≥ 0`.
#[derive(Clone, Debug)]
pub struct System {
    pub nvars: usize,
    pub nparams: usize,
    pub eqs: Vec<Lin>,
    pub ineqs: Vec<Lin>,
}

impl System {
    pub fn new(nvars: usize, nparams: usize) -> Self {
        System {
            nvars,
            nparams,
            eqs: Vec::new(),
            ineqs: Vec::new(),
        }
    }

    fn dense(&self, l: &Lin) -> Vec<Rational> {
        let w = self.nvars + self.nparams + 1;
        let mut row = vec![Rational::zero(); w];
        for (col, c) in l.terms() {
            let k = match col {
                Col::Var(k) => *k,
                Col::Param(k) => self.nvars + k,
                Col::One => w - 1,
            };
            row[k] += c;
        }
        row
    }

    /// Gauss-Jordan elimination of the equalities.
    pub fn reduce(&self) -> Reduced {
        let nv = self.nvars;
        let w = nv + self.nparams + 1;
        let mut rows: Vec<Vec<Rational>> = self.eqs.iter().map(|l| self.dense(l)).collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut rank = 0;
        for col in 0..nv {
            let Some(r) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, r);
            let p = rows[rank][col].clone();
            for v in rows[rank].iter_mut() {
                if !v.is_zero() {
                    *v = &*v / &p;
                }
            }
            let prow = rows[rank].clone();
            let nz: Vec<usize> = (0..w).filter(|&k| !prow[k].is_zero()).collect();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == rank || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for &k in &nz {
                    let d = &f * &prow[k];
                    row[k] -= d;
                }
            }
            pivots.push((rank, col));
            rank += 1;
        }
        let conditions: Vec<Vec<Rational>> = rows[rank..]
            .iter()
            .map(|r| r[nv..].to_vec())
            .filter(|r| r.iter().any(|c| !c.is_zero()))
            .collect();

        let pivot_of: BTreeMap<usize, usize> = pivots.iter().map(|&(r, c)| (c, r)).collect();
        let free: Vec<usize> = (0..nv).filter(|c| !pivot_of.contains_key(c)).collect();
        let d = free.len();
        let tail = self.nparams + 1;
        let mut var_forms = vec![vec![Rational::zero(); d + tail]; nv];
        for (fi, &f) in free.iter().enumerate() {
            var_forms[f][fi] = Rational::one();
        }
        for (&c, &r) in &pivot_of {
            let row = &rows[r];
            let form = &mut var_forms[c];
            for (fi, &f) in free.iter().enumerate() {
                form[fi] = -&row[f];
            }
            for k in 0..tail {
                form[d + k] = -&row[nv + k];
            }
        }
        let substitute = |l: &Lin| -> Vec<Rational> {
            let dense = self.dense(l);
            let mut out = vec![Rational::zero(); d + tail];
            for k in 0..nv {
                if dense[k].is_zero() {
                    continue;
                }
                for (o, v) in out.iter_mut().zip(&var_forms[k]) {
                    if !v.is_zero() {
                        *o += &dense[k] * v;
                    }
                }
            }
            for k in 0..tail {
                out[d + k] += &dense[nv + k];
            }
            out
        };
        let ineqs = self.ineqs.iter().map(substitute).collect();
        Reduced {
            nvars: nv,
            nparams: self.nparams,
            free,
            var_forms,
            ineqs,
            conditions,
        }
    }
}

/// Equalities eliminated, still symbolic in the parameters.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub nvars: usize,
    pub nparams: usize,
    /// Original indices of the free variables.
    pub free: Vec<usize>,
    /// Every original variable over `[free | params | 1]`.
    pub var_forms: Vec<Vec<Rational>>,
    /// Inequalities `≥ 0` over `[free | params | 1]`.
    pub ineqs: Vec<Vec<Rational>>,
    /// Forms over `[params | 1]` that must vanish for the system to be consistent.
    pub conditions: Vec<Vec<Rational>>,
}

impl Reduced {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    fn bind(&self, form: &[Rational], params: &[Rational]) -> Affine {
        let d = self.dim();
        let mut constant = form[d + self.nparams].clone();
        for (k, p) in params.iter().enumerate() {
            let c = &form[d + k];
            if !c.is_zero() {
                constant += c * p;
            }
        }
        Affine {
            coeffs: form[..d].to_vec(),
            constant,
        }
    }

    /// Substitute parameter values. `None` when the equalities are inconsistent.
    pub fn instantiate(&self, params: &[Rational]) -> Option<Fiber> {
        assert_eq!(params.len(), self.nparams, "parameter count");
        for cond in &self.conditions {
            let v: Rational = cond[..self.nparams]
                .iter()
                .zip(params)
                .map(|(a, b)| a * b)
                .sum::<Rational>()
                + &cond[self.nparams];
            if !v.is_zero() {
                return None;
            }
        }
        let ineqs: Vec<Affine> = self
            .ineqs
            .iter()
            .map(|f| self.bind(f, params))
            .filter(|a| !(a.is_constant() && !a.constant.is_negative()))
            .collect();
        if ineqs.iter().any(|a| a.is_constant() && a.constant.is_negative()) {
            return None;
        }
        Some(Fiber {
            dim: self.dim(),
            ineqs,
            vars: self.var_forms.iter().map(|f| self.bind(f, params)).collect(),
        })
    }
}

/// A polyhedron in the free variables with formulas for the original ones.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub dim: usize,
    pub ineqs: Vec<Affine>,
    pub vars: Vec<Affine>,
}

impl Fiber {
    pub fn original(&self, s: &[Rational]) -> Vec<Rational> {
        self.vars.iter().map(|a| a.eval(s)).collect()
    }

    pub fn contains(&self, s: &[Rational]) -> bool {
        self.ineqs.iter().all(|a| !a.eval(s).is_negative())
    }

    /// Linear objective on original variables rewritten on the free ones.
    pub fn pull_back(&self, objective: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (w, form) in objective.iter().zip(&self.vars) {
            if w.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(&form.coeffs) {
                if !c.is_zero() {
                    *o += w * c;
                }
            }
        }
        out
    }

    pub fn maximize_lex(&self, objectives: &[Vec<Rational>]) -> LpOutcome {
        simplex::maximize_lex(self.dim, &self.ineqs, objectives)
    }

    pub fn feasible_point(&self) -> Option<Vec<Rational>> {
        simplex::feasible_point(self.dim, &self.ineqs)
    }

    /// Integer box of every free variable from exact LP ranges.
    pub fn lp_box(&self) -> Result<Option<Vec<(i64, i64)>>, Error> {
        let Some(ranges) = simplex::coordinate_ranges(self.dim, &self.ineqs) else {
            return Ok(None);
        };
        ranges
            .into_iter()
            .map(|(lo, hi)| match (lo, hi) {
                (Some(lo), Some(hi)) => Ok((to_i64(&lo.ceil())?, to_i64(&hi.floor())?)),
                _ => Err(Error::Invariant("lattice search over an unbounded polyhedron".into())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }

    pub fn integer_problem(&self) -> Result<IntProblem, Error> {
        let mut rows = Vec::with_capacity(self.ineqs.len());
        for a in &self.ineqs {
            let (mut coeffs, mut c, _) = scale_to_integers(a)?;
            // divide by the content, rounding the constant down
            let g = coeffs.iter().fold(0i64, |g, &v| g.gcd(&v));
            if g > 1 {
                for v in coeffs.iter_mut() {
                    *v /= g;
                }
                c = c.div_euclid(g);
            }
            rows.push(IntRow { coeffs, constant: c });
        }
        let mut outputs = Vec::with_capacity(self.vars.len());
        for a in &self.vars {
            let (coeffs, constant, denom) = scale_to_integers(a)?;
            outputs.push(IntOutput {
                coeffs,
                constant,
                denom,
            });
        }
        Ok(IntProblem {
            dim: self.dim,
            rows,
            outputs,
        })
    }
}

fn to_i64(v: &Rational) -> Result<i64, Error> {
    v.to_i64()
        .ok_or_else(|| Error::Invariant(format!("value {v} does not fit a machine integer")))
}

fn big_to_i64(v: &BigInt) -> Result<i64, Error> {
    v.to_i64()
        .ok_or_else(|| Error::Invariant(format!("value {v} does not fit a machine integer")))
}

fn scale_to_integers(a: &Affine) -> Result<(Vec<i64>, i64, i64), Error> {
    let den = common_denominator(a.coeffs.iter().chain(std::iter::once(&a.constant)));
    let scaled = |v: &Rational| -> Result<i64, Error> {
        let n = v.numer() * (&den / v.denom());
        big_to_i64(&n)
    };
    let coeffs = a.coeffs.iter().map(scaled).collect::<Result<Vec<_>, _>>()?;
    let c = scaled(&a.constant)?;
    Ok((coeffs, c, big_to_i64(&den)?))
}

#[derive(Clone, Debug)]
pub struct IntRow {
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

/// `(coeffs · s + constant) / denom`.
#[derive(Clone, Debug)]
pub struct IntOutput {
    pub coeffs: Vec<i64>,
    pub constant: i64,
    pub denom: i64,
}

/// Integer points of `{ s : row(s) ≥ 0 }` whose outputs are all integers.
#[derive(Clone, Debug)]
pub struct IntProblem {
    pub dim: usize,
    pub rows: Vec<IntRow>,
    pub outputs: Vec<IntOutput>,
}

struct Plan {
    order: Vec<usize>,
    /// rows touching the variable assigned at each depth
    rows_at: Vec<Vec<usize>>,
    /// outputs completed at each depth
    outputs_at: Vec<Vec<usize>>,
    constant_outputs_ok: bool,
}

impl IntProblem {
    fn plan(&self) -> Plan {
        let d = self.dim;
        let supports: Vec<Vec<usize>> = self
            .rows
            .iter()
            .map(|r| (0..d).filter(|&k| r.coeffs[k] != 0).collect())
            .collect();
        let mut assigned = vec![false; d];
        let mut order = Vec::with_capacity(d);
        for _ in 0..d {
            let mut best = None;
            let mut best_score = (0usize, 0usize);
            for v in 0..d {
                if assigned[v] {
                    continue;
                }
                let mut closes = 0;
                let mut touches = 0;
                for s in &supports {
                    if s.contains(&v) {
                        touches += 1;
                        if s.iter().all(|&k| k == v || assigned[k]) {
                            closes += 1;
                        }
                    }
                }
                let score = (closes, touches);
                if best.is_none() || score > best_score {
                    best = Some(v);
                    best_score = score;
                }
            }
            let v = best.expect("unassigned variable");
            assigned[v] = true;
            order.push(v);
        }
        let mut depth_of = vec![0; d];
        for (depth, &v) in order.iter().enumerate() {
            depth_of[v] = depth;
        }
        let mut rows_at = vec![Vec::new(); d];
        for (r, s) in supports.iter().enumerate() {
            for &v in s {
                rows_at[depth_of[v]].push(r);
            }
        }
        let mut outputs_at = vec![Vec::new(); d];
        let mut constant_outputs_ok = true;
        for (o, out) in self.outputs.iter().enumerate() {
            let last = (0..d).filter(|&k| out.coeffs[k] != 0).map(|k| depth_of[k]).max();
            match last {
                Some(depth) => outputs_at[depth].push(o),
                None => {
                    if out.denom != 1 && out.constant.rem_euclid(out.denom) != 0 {
                        constant_outputs_ok = false;
                    }
                }
            }
        }
        Plan {
            order,
            rows_at,
            outputs_at,
            constant_outputs_ok,
        }
    }

    /// Visit every lattice point in the box; the visitor returns `false` to stop.
    pub fn search<F: FnMut(&[i64]) -> bool>(&self, bounds: &[(i64, i64)], mut visit: F) {
        let plan = self.plan();
        if !plan.constant_outputs_ok {
            return;
        }
        let d = self.dim;
        let maxc = |r: &IntRow, k: usize| -> i64 {
            let a = r.coeffs[k];
            if a > 0 {
                a * bounds[k].1
            } else {
                a * bounds[k].0
            }
        };
        // row value with unassigned variables at their most favourable end
        let mut partial: Vec<i64> = self
            .rows
            .iter()
            .map(|r| r.constant + (0..d).filter(|&k| r.coeffs[k] != 0).map(|k| maxc(r, k)).sum::<i64>())
            .collect();
        if partial.iter().any(|&p| p < 0) {
            return;
        }
        if d == 0 {
            visit(&[]);
            return;
        }
        let mut point = vec![0i64; d];
        let mut out_acc: Vec<i64> = self.outputs.iter().map(|o| o.constant).collect();
        self.descend(0, &plan, bounds, &mut partial, &mut point, &mut out_acc, &mut visit, &maxc);
    }

    #[allow(clippy::too_many_arguments)]
    fn descend<F: FnMut(&[i64]) -> bool, M: Fn(&IntRow, usize) -> i64>(
        &self,
        depth: usize,
        plan: &Plan,
        bounds: &[(i64, i64)],
        partial: &mut Vec<i64>,
        point: &mut Vec<i64>,
        out_acc: &mut Vec<i64>,
        visit: &mut F,
        maxc: &M,
    ) -> bool {
        let v = plan.order[depth];
        let (mut lo, mut hi) = bounds[v];
        for &r in &plan.rows_at[depth] {
            let row = &self.rows[r];
            let a = row.coeffs[v];
            let rest = partial[r] - maxc(row, v);
            if a > 0 {
                lo = lo.max(div_ceil(-rest, a));
            } else {
                hi = hi.min(div_floor(rest, -a));
            }
            if lo > hi {
                return true;
            }
        }
        for x in lo..=hi {
            for &r in &plan.rows_at[depth] {
                let row = &self.rows[r];
                partial[r] += row.coeffs[v] * x - maxc(row, v);
            }
            for (o, out) in self.outputs.iter().enumerate() {
                if out.coeffs[v] != 0 {
                    out_acc[o] += out.coeffs[v] * x;
                }
            }
            point[v] = x;
            let integral = plan.outputs_at[depth]
                .iter()
                .all(|&o| out_acc[o].rem_euclid(self.outputs[o].denom) == 0);
            let keep_going = if !integral {
                true
            } else if depth + 1 == self.dim {
                visit(point)
            } else {
                self.descend(depth + 1, plan, bounds, partial, point, out_acc, visit, maxc)
            };
            for &r in &plan.rows_at[depth] {
                let row = &self.rows[r];
                partial[r] -= row.coeffs[v] * x - maxc(row, v);
            }
            for (o, out) in self.outputs.iter().enumerate() {
                if out.coeffs[v] != 0 {
                    out_acc[o] -= out.coeffs[v] * x;
                }
            }
            if !keep_going {
                return false;
            }
        }
        true
    }

    pub fn count(&self, bounds: &[(i64, i64)]) -> u64 {
        let mut n = 0u64;
        self.search(bounds, |_| {
            n += 1;
            true
        });
        n
    }

    /// [`IntProblem::count`] with the widest coordinate split across threads.
    pub fn count_parallel(&self, bounds: &[(i64, i64)]) -> u64 {
        let widest = (0..self.dim).max_by_key(|&k| bounds[k].1 - bounds[k].0);
        let Some(k) = widest.filter(|&k| bounds[k].1 > bounds[k].0) else {
            return self.count(bounds);
        };
        (bounds[k].0..=bounds[k].1)
            .into_par_iter()
            .map(|x| {
                let mut b = bounds.to_vec();
                b[k] = (x, x);
                self.count(&b)
            })
            .sum()
    }

    pub fn first(&self, bounds: &[(i64, i64)]) -> Option<Vec<i64>> {
        let mut found = None;
        self.search(bounds, |p| {
            found = Some(p.to_vec());
            false
        });
        found
    }

    pub fn all(&self, bounds: &[(i64, i64)]) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        self.search(bounds, |p| {
            out.push(p.to_vec());
            true
        });
        out
    }

    /// Original-variable values of a lattice point.
    pub fn outputs_at(&self, s: &[i64]) -> Vec<Rational> {
        self.outputs
            .iter()
            .map(|o| {
                let num: i64 = o.constant + o.coeffs.iter().zip(s).map(|(a, b)| a * b).sum::<i64>();
                Rational::new(num, o.denom)
            })
            .collect()
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Exact integer box from an LP, or `None` when the fiber is empty.
pub fn integer_box(fiber: &Fiber) -> Result<Option<Vec<(i64, i64)>>, Error> {
    fiber.lp_box()
}

pub fn rational_point(s: &[i64]) -> Vec<Rational> {
    s.iter().map(|&v| Rational::from_int(v)).collect()
}
