//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Counts and rationals are compared exactly; the only tolerances are the
//! time budgets below.

use std::collections::BTreeSet;
use std::io::Write;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use mobius_honeycomb::breaking::{color, contract, integralize, saturation_witness, white_loops};
use mobius_honeycomb::honeycomb::{count_lr, lr_oracle};
use mobius_honeycomb::lift::{alternating_const_sum, is_inflatable, iota, largest_lift, ltotal, perimeter, IotaImage};
use mobius_honeycomb::moebius::{
    boundary_mh, combine, containment_violations, count_nl, natural_size, nl_honeycombs, nl_oracle, validate_mh,
    MoebiusBoundary, MoebiusHoneycomb,
};
use mobius_honeycomb::partition::Partition;
use mobius_honeycomb::rational::Rational;
use mobius_honeycomb::tinkertoy::quotient;

const FIGURE_BUDGET: Duration = Duration::from_secs(60);
const LR_BUDGET: Duration = Duration::from_secs(600);
const SEED: u64 = 20240611;
const RANDOM_BOUNDARIES: usize = 50;
const IOTA_PAIRS: usize = 200;
const CONTAINMENT_PERIODS: usize = 2;

type Triple = (Partition, Partition, Partition);

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn triples(max_len: usize, max_part: i64, even: bool) -> Vec<Triple> {
    let ps = Partition::all_bounded(max_len, max_part);
    let mut out = Vec::new();
    for l in &ps {
        for m in &ps {
            for v in &ps {
                if !even || (l.weight() + m.weight() + v.weight()) % 2 == 0 {
                    out.push((l.clone(), m.clone(), v.clone()));
                }
            }
        }
    }
    out
}

fn delta_for(t: &Triple) -> i64 {
    t.0.largest().max(t.1.largest()).max(t.2.largest()).max(1)
}

/// Honeycombs collected for the conservation and containment checks.
#[derive(Default)]
struct Touched(Mutex<Vec<MoebiusHoneycomb>>);

impl Touched {
    fn add(&self, hs: impl IntoIterator<Item = MoebiusHoneycomb>) {
        self.0.lock().unwrap().extend(hs);
    }
}

struct Report {
    failed: Vec<usize>,
}

impl Report {
    fn line(&mut self, k: usize, what: &str, ok: bool, detail: String) {
        let line = format!("criterion {k} {}: {what} ({detail})\n", if ok { "PASS" } else { "FAIL" });
        let mut out = std::io::stdout().lock();
        out.write_all(line.as_bytes()).unwrap();
        out.flush().unwrap();
        if !ok {
            self.failed.push(k);
        }
    }
}

fn figure_count(touched: &Touched) -> (bool, String) {
    let t = Instant::now();
    let l = p("3,2,1");
    let count = count_nl(&l, &l, &l, 3).unwrap();
    let oracle = nl_oracle(&l, &l, &l);
    let elapsed = t.elapsed();
    touched.add(nl_honeycombs(&l, &l, &l, 3, 3).unwrap());
    (
        count == 20 && count == oracle && elapsed < FIGURE_BUDGET,
        format!("enumerated {count}, formula {oracle}, {elapsed:.1?}"),
    )
}

fn lr_sweep() -> (bool, String) {
    let t = Instant::now();
    let all = triples(3, 3, false);
    let bad: Vec<String> = all
        .par_iter()
        .filter_map(|(l, m, v)| {
            let c = count_lr(l, m, v, 3).unwrap();
            let o = lr_oracle(l, m, v);
            (c != o).then(|| format!("{l} {m} {v}: {c} vs {o}"))
        })
        .collect();
    let elapsed = t.elapsed();
    (
        bad.is_empty() && elapsed < LR_BUDGET,
        format!("{} triples, {} mismatches {:?}, {elapsed:.1?}", all.len(), bad.len(), bad.first()),
    )
}

struct NlRow {
    triple: Triple,
    count: u64,
    oracle: u64,
}

fn nl_sweep(touched: &Touched) -> (Vec<NlRow>, bool, String) {
    let all = triples(3, 2, true);
    let rows: Vec<NlRow> = all
        .par_iter()
        .enumerate()
        .map(|(k, t)| {
            let count = count_nl(&t.0, &t.1, &t.2, 2).unwrap();
            if k % 7 == 0 {
                let n = natural_size(&t.0, &t.1, &t.2);
                touched.add(nl_honeycombs(&t.0, &t.1, &t.2, 2, n).unwrap());
            }
            NlRow {
                triple: t.clone(),
                count,
                oracle: nl_oracle(&t.0, &t.1, &t.2),
            }
        })
        .collect();
    let bad = rows.iter().filter(|r| r.count != r.oracle).count();
    let resampled: Vec<&NlRow> = rows.iter().step_by(5).collect();
    let moved = resampled
        .par_iter()
        .filter(|r| count_nl(&r.triple.0, &r.triple.1, &r.triple.2, 4).unwrap() != r.count)
        .count();
    let ok = bad == 0 && moved == 0;
    let detail = format!(
        "{} triples at δ=2, {bad} mismatches; {} re-run at δ=4, {moved} changed",
        rows.len(),
        resampled.len()
    );
    (rows, ok, detail)
}

fn lr_specialization(rows: &[NlRow]) -> (bool, String) {
    let special: Vec<&NlRow> = rows
        .iter()
        .filter(|r| r.triple.1.weight() + r.triple.2.weight() == r.triple.0.weight())
        .collect();
    let bad = special
        .iter()
        .filter(|r| r.count != lr_oracle(&r.triple.0, &r.triple.1, &r.triple.2))
        .count();
    (bad == 0 && !special.is_empty(), format!("{} triples with |μ|+|ν|=|λ|, {bad} mismatches", special.len()))
}

fn saturation(touched: &Touched) -> (bool, String) {
    let all = triples(3, 2, true);
    let jobs: Vec<(Triple, i64)> = all.iter().flat_map(|t| [(t.clone(), 2), (t.clone(), 3)]).collect();
    let outcomes: Vec<Result<bool, String>> = jobs
        .par_iter()
        .map(|((l, m, v), k)| {
            let scaled = nl_oracle(&l.scale(*k), &m.scale(*k), &v.scale(*k));
            let w = saturation_witness(l, m, v, *k).map_err(|e| format!("{l} {m} {v} k={k}: {e}"))?;
            match w {
                None => Ok(scaled == 0),
                Some(w) => {
                    let h = &w.result.honeycomb;
                    let s = &w.pieces;
                    let ok = scaled > 0
                        && h.is_integral()
                        && validate_mh(h).unwrap()
                        && boundary_mh(h).unwrap() == boundary_mh(&w.largest_lift).unwrap()
                        && lr_oracle(l, &s.beta, &s.gamma) > 0
                        && lr_oracle(m, &s.gamma, &s.alpha) > 0
                        && lr_oracle(v, &s.alpha, &s.beta) > 0
                        && nl_oracle(l, m, v) > 0;
                    touched.add([w.largest_lift.clone(), w.result.honeycomb.clone()]);
                    Ok(ok)
                }
            }
        })
        .collect();
    let errors: Vec<&String> = outcomes.iter().filter_map(|o| o.as_ref().err()).collect();
    let wrong = outcomes.iter().filter(|o| matches!(o, Ok(false))).count();
    (
        errors.is_empty() && wrong == 0,
        format!("{} instances, {wrong} wrong, {} errors {:?}", jobs.len(), errors.len(), errors.first()),
    )
}

fn random_boundaries(count: usize) -> Vec<(MoebiusBoundary, i64, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(2..=3usize);
        let mut part = || {
            let mut v: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).unwrap()
        };
        let t = (part(), part(), part());
        if (t.0.weight() + t.1.weight() + t.2.weight()) % 2 != 0 || !seen.insert(t.clone()) {
            continue;
        }
        let delta = delta_for(&t);
        let xi = MoebiusBoundary::for_nl(&t.0, &t.1, &t.2, delta, n).unwrap();
        if largest_lift(&xi, &Rational::from_int(delta), n).is_ok() {
            out.push((xi, delta, n));
        }
    }
    out
}

fn largest_lift_structure(touched: &Touched) -> (bool, String) {
    let cases = random_boundaries(RANDOM_BOUNDARIES);
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(xi, delta, n)| {
            let check = || -> Result<(), String> {
                let ll = largest_lift(xi, &Rational::from_int(*delta), *n).map_err(|e| e.to_string())?;
                let h = &ll.honeycomb;
                if !h.is_half_integral() {
                    return Err("vertex off the half-lattice".into());
                }
                let c = color(h).map_err(|e| e.to_string())?;
                let cg = contract(h, &c).map_err(|e| e.to_string())?;
                let loops = white_loops(h, &c, &cg).map_err(|e| e.to_string())?;
                if c.white_vertex_count() % 2 != 0 {
                    return Err(format!("{} white vertices", c.white_vertex_count()));
                }
                let canonical: Vec<_> = loops.iter().filter(|l| l.canonical).collect();
                if canonical.len() % 2 != 0 {
                    return Err(format!("{} canonical white loops", canonical.len()));
                }
                if canonical.iter().any(|l| l.len() % 2 == 0) {
                    return Err("canonical white loop of even length".into());
                }
                for hx in 0..quotient(*n).unwrap().hexagons.len() {
                    if is_inflatable(h, hx).map_err(|e| e.to_string())? {
                        return Err(format!("hexagon {hx} inflatable"));
                    }
                }
                let out = integralize(h).map_err(|e| e.to_string())?;
                touched.add([h.clone(), out.honeycomb]);
                Ok(())
            };
            check().err().map(|e| format!("{:?}: {e}", xi.xi))
        })
        .collect();
    (
        failures.is_empty(),
        format!("{} boundaries, {} failures {:?}", cases.len(), failures.len(), failures.first()),
    )
}

fn conservation(hs: &[MoebiusHoneycomb]) -> (bool, String) {
    let bad = hs
        .par_iter()
        .filter(|h| {
            let xi = boundary_mh(h).unwrap();
            let half_sum = xi.sum() * Rational::half();
            let hexes = quotient(h.n).unwrap().hexagons.len();
            ltotal(h).unwrap() != half_sum
                || (0..hexes).any(|k| perimeter(h, k).unwrap() != alternating_const_sum(h, k).unwrap())
        })
        .count();
    (bad == 0 && !hs.is_empty(), format!("{} honeycombs, {bad} violations", hs.len()))
}

fn iota_injective() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let families: Vec<Vec<MoebiusHoneycomb>> = triples(3, 2, true)
        .into_iter()
        .filter_map(|t| {
            let n = natural_size(&t.0, &t.1, &t.2);
            let hs = nl_honeycombs(&t.0, &t.1, &t.2, 2, n).unwrap();
            (hs.len() >= 2).then_some(hs)
        })
        .collect();
    let mut collisions = 0;
    let mut nonlinear = 0;
    let mut pairs = 0;
    while pairs < IOTA_PAIRS {
        let hs = &families[rng.gen_range(0..families.len())];
        let i = rng.gen_range(0..hs.len());
        let j = rng.gen_range(0..hs.len());
        if i == j {
            continue;
        }
        let (a, b) = (Rational::new(rng.gen_range(0..=8), 8), Rational::new(rng.gen_range(0..=8), 8));
        if a == b {
            continue;
        }
        let one = Rational::one();
        let h1 = combine(&a, &hs[i], &(&one - &a), &hs[j]).unwrap();
        let h2 = combine(&b, &hs[i], &(&one - &b), &hs[j]).unwrap();
        if h1 == h2 || boundary_mh(&h1).unwrap() != boundary_mh(&h2).unwrap() {
            continue;
        }
        pairs += 1;
        let (i1, i2) = (iota(&h1).unwrap(), iota(&h2).unwrap());
        if i1 == i2 {
            collisions += 1;
        }
        let expected = IotaImage::combine(&a, &iota(&hs[i]).unwrap(), &(&one - &a), &iota(&hs[j]).unwrap());
        if i1 != expected {
            nonlinear += 1;
        }
    }
    (
        collisions == 0 && nonlinear == 0,
        format!("{pairs} pairs, {collisions} equal images, {nonlinear} linearity failures"),
    )
}

fn containment(hs: &[MoebiusHoneycomb]) -> (bool, String) {
    let bad = hs
        .par_iter()
        .filter(|h| !containment_violations(h, CONTAINMENT_PERIODS).unwrap().is_empty())
        .count();
    (bad == 0 && !hs.is_empty(), format!("{} honeycombs over {CONTAINMENT_PERIODS} periods, {bad} outside", hs.len()))
}

#[test]
fn acceptance() {
    let touched = Touched::default();
    let mut report = Report { failed: Vec::new() };

    let (ok, d) = figure_count(&touched);
    report.line(1, "N for (3,2,1)³ at δ=3 is 20", ok, d);
    let (ok, d) = lr_sweep();
    report.line(2, "honeycomb count equals LR tableaux", ok, d);
    let (rows, ok, d) = nl_sweep(&touched);
    report.line(3, "Möbius honeycomb count equals the NL formula", ok, d);
    let (ok, d) = lr_specialization(&rows);
    report.line(4, "N equals c when |μ|+|ν|=|λ|", ok, d);
    let (ok, d) = saturation(&touched);
    report.line(5, "saturation witnesses", ok, d);
    let (ok, d) = largest_lift_structure(&touched);
    report.line(6, "largest-lift structure", ok, d);
    let hs = touched.0.into_inner().unwrap();
    let (ok, d) = conservation(&hs);
    report.line(7, "total length and hexagon perimeters", ok, d);
    let (ok, d) = iota_injective();
    report.line(8, "perimeters determine the honeycomb", ok, d);
    let (ok, d) = containment(&hs);
    report.line(9, "vertices stay in their rhombi", ok, d);

    assert!(report.failed.is_empty(), "failed criteria: {:?}", report.failed);
}
