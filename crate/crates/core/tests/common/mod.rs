//! Independent oracles shared by the integration tests and the acceptance
//! harness. None of these call into the deletion–contraction engine or the
//! factoriser.

#![allow(dead_code)]

use std::collections::HashSet;

use digreedoid::digraph::EdgeSubset;
use digreedoid::{BiPoly, RootedDigraph};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

/// Random rooted digraph on `n` vertices with at most `max_edges` edges.
pub fn random_rooted(rng: &mut impl Rng, n: usize, max_edges: usize) -> RootedDigraph {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    loop {
        let density = rng.gen_range(0.1..0.6);
        let edges: Vec<_> = pairs
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(density))
            .collect();
        if edges.len() <= max_edges {
            let root = rng.gen_range(0..n);
            return RootedDigraph::new(n, edges, root).unwrap();
        }
    }
}

/// Violations of accessibility and augmentation for the feasible sets.
pub fn greedoid_axiom_violations(d: &RootedDigraph) -> Vec<String> {
    let feasible = d.feasible_sets().unwrap();
    let set: HashSet<u64> = feasible.iter().map(|x| x.0).collect();
    let mut out = Vec::new();
    if !set.contains(&0) {
        out.push(format!("{d}: empty set not feasible"));
    }
    for &x in &feasible {
        if !x.is_empty() && !x.iter().any(|e| set.contains(&x.without(e).0)) {
            out.push(format!(
                "{d}: {:#x} has no feasible one-smaller subset",
                x.0
            ));
        }
    }
    for &x in &feasible {
        for &y in &feasible {
            if x.len() > y.len() && !x.difference(y).iter().any(|e| set.contains(&y.with(e).0)) {
                out.push(format!("{d}: cannot augment {:#x} from {:#x}", y.0, x.0));
            }
        }
    }
    out
}

/// Violations of the three rank axioms, checked over every edge subset.
pub fn rank_axiom_violations(d: &RootedDigraph) -> Vec<String> {
    let m = d.size();
    let ranks: Vec<usize> = (0..1u64 << m).map(|x| d.rank(EdgeSubset(x))).collect();
    let mut out = Vec::new();
    for x in 0..1u64 << m {
        let r = ranks[x as usize];
        if r > x.count_ones() as usize {
            out.push(format!("{d}: r({x:#x}) exceeds its size"));
        }
        for e in (0..m).filter(|&e| x & 1 << e == 0) {
            let re = ranks[(x | 1 << e) as usize];
            if re < r {
                out.push(format!("{d}: rank drops adding edge {e} to {x:#x}"));
            }
            for f in (e + 1..m).filter(|&f| x & 1 << f == 0) {
                let rf = ranks[(x | 1 << f) as usize];
                if re == r && rf == r && ranks[(x | 1 << e | 1 << f) as usize] != r {
                    out.push(format!(
                        "{d}: local submodularity fails at {x:#x}, {e}, {f}"
                    ));
                }
            }
        }
    }
    out
}

/// Exponent of `1 + z` in `p`, by repeated synthetic division in `z` at
/// `z = -1` on each `t` coefficient.
pub fn one_plus_z_valuation(p: &BiPoly) -> u32 {
    let mut rows: Vec<Vec<BigInt>> = (0..=p.deg_t())
        .map(|i| (0..=p.deg_z()).map(|j| p.coeff(i, j)).collect())
        .collect();
    let mut k = 0;
    loop {
        let divisible = rows.iter().all(|row| {
            let mut acc = BigInt::zero();
            for (j, c) in row.iter().enumerate() {
                acc += if j % 2 == 0 { c.clone() } else { -c.clone() };
            }
            acc.is_zero()
        });
        if !divisible || rows.iter().all(|r| r.iter().all(Zero::is_zero)) {
            return k;
        }
        for row in &mut rows {
            let mut q = vec![BigInt::zero(); row.len().saturating_sub(1)];
            let mut carry = BigInt::zero();
            for j in (1..row.len()).rev() {
                carry = &row[j] - &carry;
                q[j - 1] = carry.clone();
            }
            *row = q;
        }
        k += 1;
    }
}

/// Outcome of the low-degree irreducibility search.
#[derive(Debug, PartialEq, Eq)]
pub enum SpotCheck {
    NoDivisorFound,
    Divisor(BiPoly),
    TooLarge,
}

/// Searches for a proper divisor of `f` with total degree at most half of
/// `f`'s, degrees bounded by `f`'s, and every coefficient in `[-2, 2]`.
/// Candidates are screened by divisibility of values at a few integer
/// points before an exact division.
pub fn low_degree_divisor(f: &BiPoly, max_total_degree: u32) -> SpotCheck {
    let total = f.total_degree();
    if total > max_total_degree {
        return SpotCheck::TooLarge;
    }
    let half = total / 2;
    let monomials: Vec<(u32, u32)> = (0..=f.deg_t())
        .flat_map(|a| (0..=f.deg_z()).map(move |b| (a, b)))
        .filter(|&(a, b)| a + b <= half)
        .collect();
    if monomials.len() < 2 {
        return SpotCheck::NoDivisorFound;
    }
    const POINTS: [(i64, i64); 8] = [
        (0, 0),
        (1, 1),
        (1, 0),
        (0, 1),
        (2, 1),
        (1, 2),
        (-1, 2),
        (3, 2),
    ];
    let f_vals: Vec<i64> = POINTS
        .iter()
        .map(|&(t, z)| f.eval_i64(t, z).to_i64().expect("small values"))
        .collect();
    let mono_vals: Vec<Vec<i64>> = monomials
        .iter()
        .map(|&(a, b)| POINTS.iter().map(|&(t, z)| t.pow(a) * z.pow(b)).collect())
        .collect();
    let mut coeffs = vec![0i64; monomials.len()];
    let mut vals = vec![0i64; POINTS.len()];
    let mut found = None;
    search(
        f,
        &monomials,
        &mono_vals,
        &f_vals,
        0,
        &mut coeffs,
        &mut vals,
        &mut found,
    );
    match found {
        Some(g) => SpotCheck::Divisor(g),
        None => SpotCheck::NoDivisorFound,
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    f: &BiPoly,
    monomials: &[(u32, u32)],
    mono_vals: &[Vec<i64>],
    f_vals: &[i64],
    i: usize,
    coeffs: &mut Vec<i64>,
    vals: &mut Vec<i64>,
    found: &mut Option<BiPoly>,
) {
    if found.is_some() {
        return;
    }
    if i == monomials.len() {
        let nonconstant = monomials
            .iter()
            .zip(coeffs.iter())
            .any(|(&(a, b), &c)| a + b > 0 && c != 0);
        let first_positive = coeffs.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0);
        if !nonconstant || !first_positive {
            return;
        }
        let screened = vals
            .iter()
            .zip(f_vals)
            .all(|(&g, &fv)| if g == 0 { fv == 0 } else { fv % g == 0 });
        if !screened {
            return;
        }
        let g = BiPoly::from_terms(monomials.iter().zip(coeffs.iter()).map(|(&m, &c)| (m, c)));
        if f.exact_div(&g).is_ok() {
            *found = Some(g);
        }
        return;
    }
    for c in -2i64..=2 {
        coeffs[i] = c;
        for (v, mv) in vals.iter_mut().zip(&mono_vals[i]) {
            *v += c * mv;
        }
        search(f, monomials, mono_vals, f_vals, i + 1, coeffs, vals, found);
        for (v, mv) in vals.iter_mut().zip(&mono_vals[i]) {
            *v -= c * mv;
        }
    }
    coeffs[i] = 0;
}

/// Every pair `{g, h}` of database polynomials other than 1 with
/// `g * h = f`, by scanning the database.
pub fn gm_pairs_by_scan(f: &BiPoly, db: &HashSet<BiPoly>) -> HashSet<(BiPoly, BiPoly)> {
    let mut out = HashSet::new();
    for g in db {
        if g.is_one() {
            continue;
        }
        if let Ok(h) = f.exact_div(g) {
            if !h.is_one() && db.contains(&h) {
                let (a, b) = if g.to_string() <= h.to_string() {
                    (g.clone(), h)
                } else {
                    (h, g.clone())
                };
                out.insert((a, b));
            }
        }
    }
    out
}
