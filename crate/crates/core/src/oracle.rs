//! Classical formulas, kept free of any honeycomb code.
//!
//! [`lr_oracle`] counts Littlewood-Richardson skew tableaux; [`nl_oracle`]
//! evaluates the Newell-Littlewood triple sum of products of them.

use crate::partition::Partition;

fn padded(p: &[i64], n: usize) -> Vec<i64> {
    let mut v: Vec<i64> = p.iter().copied().filter(|&x| x > 0).collect();
    v.resize(n.max(v.len()), 0);
    v
}

fn contains(outer: &[i64], inner: &[i64]) -> bool {
    inner.iter().enumerate().all(|(i, &x)| x <= outer.get(i).copied().unwrap_or(0))
}

/// Number of LR tableaux of shape `λ/μ` and content `ν`: semistandard fillings
/// whose reverse reading word is a lattice word.
pub fn lr_coefficient(lambda: &[i64], mu: &[i64], nu: &[i64]) -> u64 {
    let n = lambda.len().max(mu.len()).max(nu.len());
    let lam = padded(lambda, n);
    let mu = padded(mu, n);
    let nu = padded(nu, n);
    let total = |v: &[i64]| v.iter().sum::<i64>();
    if total(&lam) != total(&mu) + total(&nu) || !contains(&lam, &mu) {
        return 0;
    }
    let mut grid: Vec<Vec<u8>> = (0..n).map(|r| vec![0u8; lam[r] as usize]).collect();
    let letters = nu.iter().filter(|&&x| x > 0).count();
    let mut counts = vec![0i64; letters + 1];
    let mut found = 0u64;
    fill(&lam, &mu, &nu, letters, 0, None, &mut grid, &mut counts, &mut found);
    found
}

/// Fill cells in reading order: rows top to bottom, each row right to left.
#[allow(clippy::too_many_arguments)]
fn fill(
    lam: &[i64],
    mu: &[i64],
    nu: &[i64],
    letters: usize,
    row: usize,
    col: Option<usize>,
    grid: &mut Vec<Vec<u8>>,
    counts: &mut Vec<i64>,
    found: &mut u64,
) {
    let n = lam.len();
    let mut r = row;
    let mut c = col;
    loop {
        if r >= n {
            *found += 1;
            return;
        }
        let next = match c {
            None => (lam[r] as usize).checked_sub(1),
            Some(cc) => cc.checked_sub(1),
        };
        match next {
            Some(cc) if cc >= mu[r] as usize => {
                c = Some(cc);
                break;
            }
            _ => {
                r += 1;
                c = None;
            }
        }
    }
    let cc = c.expect("cell chosen");
    let right = grid[r].get(cc + 1).copied();
    let above = if r > 0 && cc < lam[r - 1] as usize && cc >= mu[r - 1] as usize {
        Some(grid[r - 1][cc])
    } else {
        None
    };
    let hi = right.map_or(letters as u8, |v| v);
    let lo = above.map_or(1, |v| v + 1);
    for v in lo..=hi {
        let vi = v as usize;
        if counts[vi] >= nu[vi - 1] {
            continue;
        }
        if vi > 1 && counts[vi] + 1 > counts[vi - 1] {
            continue;
        }
        counts[vi] += 1;
        grid[r][cc] = v;
        fill(lam, mu, nu, letters, r, Some(cc), grid, counts, found);
        counts[vi] -= 1;
    }
    grid[r][cc] = 0;
}

pub fn lr_oracle(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    lr_coefficient(lambda.parts(), mu.parts(), nu.parts())
}

/// Newell-Littlewood number as the sum over `α, β, γ` of
/// `c^λ_{β,γ} c^μ_{γ,α} c^ν_{α,β}`.
pub fn nl_coefficient(lambda: &[i64], mu: &[i64], nu: &[i64]) -> u64 {
    let n = lambda.len().max(mu.len()).max(nu.len()).max(1);
    let lam = padded(lambda, n);
    let mu = padded(mu, n);
    let nu = padded(nu, n);
    let (l, m, v): (i64, i64, i64) = (lam.iter().sum(), mu.iter().sum(), nu.iter().sum());
    let twice = [m + v - l, l + v - m, l + m - v];
    if twice.iter().any(|&t| t < 0 || t % 2 != 0) {
        return 0;
    }
    let [wa, wb, wc] = twice.map(|t| t / 2);
    let inside = |w: i64, a: &[i64], b: &[i64]| -> Vec<Vec<i64>> {
        Partition::of_weight(w, n)
            .into_iter()
            .map(|p| p.parts().to_vec())
            .filter(|p| contains(a, p) && contains(b, p))
            .collect()
    };
    let alphas = inside(wa, &mu, &nu);
    let betas = inside(wb, &lam, &nu);
    let gammas = inside(wc, &lam, &mu);
    let mut total = 0u64;
    for beta in &betas {
        for gamma in &gammas {
            let c1 = lr_coefficient(&lam, beta, gamma);
            if c1 == 0 {
                continue;
            }
            for alpha in &alphas {
                let c2 = lr_coefficient(&mu, gamma, alpha);
                if c2 == 0 {
                    continue;
                }
                let c3 = lr_coefficient(&nu, alpha, beta);
                total += c1 * c2 * c3;
            }
        }
    }
    total
}

pub fn nl_oracle(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    nl_coefficient(lambda.parts(), mu.parts(), nu.parts())
}
