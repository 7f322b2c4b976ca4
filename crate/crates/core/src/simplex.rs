//! Exact rational simplex with Bland's rule.
//!
//! Solves `maximize (c_1·s, c_2·s, ...)` lexicographically over
//! `{ s ∈ ℚ^d : A s + b ≥ 0 }` with `s` unrestricted in sign.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// An affine function `coeffs · s + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

impl Affine {
    pub fn zero(dim: usize) -> Self {
        Affine {
            coeffs: vec![Rational::zero(); dim],
            constant: Rational::zero(),
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Affine {
            coeffs: vec![Rational::zero(); dim],
            constant: c,
        }
    }

    pub fn eval(&self, s: &[Rational]) -> Rational {
        let mut v = self.constant.clone();
        for (a, x) in self.coeffs.iter().zip(s) {
            if !a.is_zero() {
                v += a * x;
            }
        }
        v
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        point: Vec<Rational>,
        values: Vec<Rational>,
    },
}

impl LpOutcome {
    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

type Q = BigRational;

struct Tableau {
    rows: Vec<Vec<Q>>,
    /// objective rows hold reduced costs; the last entry is the objective value
    objs: Vec<Vec<Q>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Q {
        &self.rows[r][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if p != Q::from_integer(1.into()) {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let prow = std::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..=self.ncols).filter(|&k| !prow[k].is_zero()).collect();
        let eliminate = |row: &mut Vec<Q>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for &k in &nz {
                let d = &f * &prow[k];
                row[k] -= d;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        for row in self.objs.iter_mut() {
            eliminate(row);
        }
        self.rows[r] = prow;
        self.basis[r] = c;
    }

    /// First column (Bland) whose reduced-cost vector is lexicographically negative.
    fn entering(&self, allowed: usize) -> Option<usize> {
        (0..allowed).find(|&c| {
            for o in &self.objs {
                if o[c].is_negative() {
                    return true;
                }
                if o[c].is_positive() {
                    return false;
                }
            }
            false
        })
    }

    fn leaving(&self, c: usize) -> Option<usize> {
        let mut best: Option<(Q, usize, usize)> = None;
        for r in 0..self.rows.len() {
            let a = &self.rows[r][c];
            if a.is_positive() {
                let ratio = self.rhs(r) / a;
                let better = match &best {
                    None => true,
                    Some((b, _, bv)) => ratio < *b || (ratio == *b && self.basis[r] < *bv),
                };
                if better {
                    best = Some((ratio, r, self.basis[r]));
                }
            }
        }
        best.map(|(_, r, _)| r)
    }

    /// Returns false when unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        while let Some(c) = self.entering(allowed) {
            match self.leaving(c) {
                Some(r) => self.pivot(r, c),
                None => return false,
            }
        }
        true
    }
}

/// Lexicographically maximize `objectives` over `{ s : ineq(s) ≥ 0 }`.
pub fn maximize_lex(dim: usize, ineqs: &[Affine], objectives: &[Vec<Rational>]) -> LpOutcome {
    let m = ineqs.len();
    // columns: s⁺ (dim), s⁻ (dim), slacks (m), artificials
    let nstruct = 2 * dim;
    let mut art_rows = Vec::new();
    for (r, g) in ineqs.iter().enumerate() {
        if g.constant.is_negative() {
            art_rows.push(r);
        }
    }
    let nart = art_rows.len();
    let ncols = nstruct + m + nart;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art_k = 0;
    for (r, g) in ineqs.iter().enumerate() {
        // -a·s + w = b  (from a·s + b ≥ 0)
        let mut row = vec![Q::zero(); ncols + 1];
        for k in 0..dim {
            let a = g.coeffs[k].inner();
            if !a.is_zero() {
                row[k] = -a.clone();
                row[dim + k] = a.clone();
            }
        }
        row[nstruct + r] = Q::from_integer(1.into());
        row[ncols] = g.constant.inner().clone();
        if g.constant.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            let col = nstruct + m + art_k;
            row[col] = Q::from_integer(1.into());
            basis.push(col);
            art_k += 1;
        } else {
            basis.push(nstruct + r);
        }
        rows.push(row);
    }

    let mut t = Tableau {
        rows,
        objs: Vec::new(),
        basis,
        ncols,
    };

    if nart > 0 {
        // maximize −Σ artificials
        let mut z = vec![Q::zero(); ncols + 1];
        for k in 0..nart {
            z[nstruct + m + k] = Q::from_integer(1.into());
        }
        for &r in &art_rows {
            for (zk, v) in z.iter_mut().zip(&t.rows[r]) {
                *zk -= v;
            }
        }
        t.objs = vec![z];
        t.optimize(ncols);
        if !t.objs[0][ncols].is_zero() {
            return LpOutcome::Infeasible;
        }
        // drive remaining artificials out of the basis
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= nstruct + m {
                match (0..nstruct + m).find(|&c| !t.rows[r][c].is_zero()) {
                    Some(c) => {
                        t.pivot(r, c);
                        r += 1;
                    }
                    None => {
                        t.rows.remove(r);
                        t.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
        for row in t.rows.iter_mut() {
            let rhs = row[ncols].clone();
            row.truncate(nstruct + m);
            row.push(rhs);
        }
        t.ncols = nstruct + m;
    }

    let nc = t.ncols;
    t.objs = objectives
        .iter()
        .map(|c| {
            let mut z = vec![Q::zero(); nc + 1];
            for k in 0..dim {
                let v = c[k].inner();
                if !v.is_zero() {
                    z[k] = -v.clone();
                    z[dim + k] = v.clone();
                }
            }
            for r in 0..t.rows.len() {
                let b = t.basis[r];
                let f = z[b].clone();
                if !f.is_zero() {
                    for (zk, v) in z.iter_mut().zip(&t.rows[r]) {
                        *zk -= &f * v;
                    }
                }
            }
            z
        })
        .collect();
    if !t.optimize(nc) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![Q::zero(); nc];
    for (r, &b) in t.basis.iter().enumerate() {
        x[b] = t.rows[r][nc].clone();
    }
    let point: Vec<Rational> = (0..dim)
        .map(|k| Rational::from_big_rational(&x[k] - &x[dim + k]))
        .collect();
    let values = objectives
        .iter()
        .map(|c| c.iter().zip(&point).map(|(a, b)| a * b).sum())
        .collect();
    LpOutcome::Optimal { point, values }
}

pub fn maximize(dim: usize, ineqs: &[Affine], objective: &[Rational]) -> LpOutcome {
    maximize_lex(dim, ineqs, &[objective.to_vec()])
}

/// Some feasible point, if any.
pub fn feasible_point(dim: usize, ineqs: &[Affine]) -> Option<Vec<Rational>> {
    maximize_lex(dim, ineqs, &[]).point().map(|p| p.to_vec())
}

/// Exact range of every coordinate over the polyhedron.
///
/// `None` in a slot means unbounded in that direction; the outer `None`
/// means the polyhedron is empty.
pub fn coordinate_ranges(
    dim: usize,
    ineqs: &[Affine],
) -> Option<Vec<(Option<Rational>, Option<Rational>)>> {
    feasible_point(dim, ineqs)?;
    let mut out = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut c = vec![Rational::zero(); dim];
        c[k] = Rational::one();
        let hi = match maximize(dim, ineqs, &c) {
            LpOutcome::Optimal { values, .. } => Some(values[0].clone()),
            _ => None,
        };
        c[k] = -Rational::one();
        let lo = match maximize(dim, ineqs, &c) {
            LpOutcome::Optimal { values, .. } => Some(-values[0].clone()),
            _ => None,
        };
        out.push((lo, hi));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aff(c: &[i64], k: i64) -> Affine {
        Affine {
            coeffs: c.iter().map(|&v| Rational::from_int(v)).collect(),
            constant: Rational::from_int(k),
        }
    }

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y s.t. x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18, x,y ≥ 0
        let ineqs = vec![
            aff(&[-1, 0], 4),
            aff(&[0, -2], 12),
            aff(&[-3, -2], 18),
            aff(&[1, 0], 0),
            aff(&[0, 1], 0),
        ];
        match maximize(2, &ineqs, &r(&[3, 5])) {
            LpOutcome::Optimal { point, values } => {
                assert_eq!(point, r(&[2, 6]));
                assert_eq!(values, r(&[36]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn needs_phase_one() {
        // x + y ≥ 3, x ≤ 1, y ≤ 5; minimize y
        let ineqs = vec![aff(&[1, 1], -3), aff(&[-1, 0], 1), aff(&[0, -1], 5)];
        match maximize(2, &ineqs, &r(&[0, -1])) {
            LpOutcome::Optimal { point, .. } => assert_eq!(point[1], Rational::from_int(2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let ineqs = vec![aff(&[1], -3), aff(&[-1], 1)];
        assert_eq!(maximize(1, &ineqs, &r(&[1])), LpOutcome::Infeasible);
        let ineqs = vec![aff(&[1], -3)];
        assert_eq!(maximize(1, &ineqs, &r(&[1])), LpOutcome::Unbounded);
    }

    #[test]
    fn fractional_optimum() {
        // max x + y s.t. 2x + y ≤ 2, x + 2y ≤ 2
        let ineqs = vec![aff(&[-2, -1], 2), aff(&[-1, -2], 2)];
        match maximize(2, &ineqs, &r(&[1, 1])) {
            LpOutcome::Optimal { point, .. } => {
                assert_eq!(point, vec![Rational::new(2, 3), Rational::new(2, 3)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lexicographic_tie_break() {
        // square [0,1]^2, first objective x + y ties on nothing, x alone ties on an edge
        let ineqs = vec![
            aff(&[1, 0], 0),
            aff(&[-1, 0], 1),
            aff(&[0, 1], 0),
            aff(&[0, -1], 1),
        ];
        let out = maximize_lex(2, &ineqs, &[r(&[1, 0]), r(&[0, -1])]);
        assert_eq!(out.point().unwrap(), &r(&[1, 0])[..]);
        let out = maximize_lex(2, &ineqs, &[r(&[1, 0]), r(&[0, 1])]);
        assert_eq!(out.point().unwrap(), &r(&[1, 1])[..]);
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example, which cycles under the textbook largest-coefficient rule
        let q = |a: i64, b: i64| Rational::new(a, b);
        let ineqs = vec![
            Affine {
                coeffs: vec![q(-1, 4), q(8, 1), q(1, 1), q(-9, 1)],
                constant: Rational::zero(),
            },
            Affine {
                coeffs: vec![q(-1, 2), q(12, 1), q(1, 2), q(-3, 1)],
                constant: Rational::zero(),
            },
            Affine {
                coeffs: vec![q(0, 1), q(0, 1), q(-1, 1), q(0, 1)],
                constant: Rational::one(),
            },
            aff(&[1, 0, 0, 0], 0),
            aff(&[0, 1, 0, 0], 0),
            aff(&[0, 0, 1, 0], 0),
            aff(&[0, 0, 0, 1], 0),
        ];
        let obj = vec![q(3, 4), q(-20, 1), q(1, 2), q(-6, 1)];
        match maximize(4, &ineqs, &obj) {
            LpOutcome::Optimal { values, .. } => assert_eq!(values[0], q(5, 4)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ranges() {
        let ineqs = vec![aff(&[1, 1], -3), aff(&[-1, 0], 1), aff(&[0, -1], 5)];
        let rg = coordinate_ranges(2, &ineqs).unwrap();
        assert_eq!(rg[0], (Some(Rational::from_int(-2)), Some(Rational::one())));
        assert_eq!(rg[1], (Some(Rational::from_int(2)), Some(Rational::from_int(5))));
        assert!(coordinate_ranges(1, &[aff(&[1], -3), aff(&[-1], 1)]).is_none());
    }
}
