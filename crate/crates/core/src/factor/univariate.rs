//! Factorisation in `Z[x]`: squarefree reduction, factorisation modulo a
//! small prime, quadratic Hensel lifting and Zassenhaus recombination.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{Field, Fp};
use crate::bipoly::UniPoly;
use crate::error::{Error, Result};

type Zx = Vec<BigInt>;

fn trim(f: &mut Zx) {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
}

fn degree(f: &Zx) -> usize {
    f.len().saturating_sub(1)
}

fn add(a: &Zx, b: &Zx) -> Zx {
    let mut out: Zx = (0..a.len().max(b.len()))
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(&mut out);
    out
}

fn sub(a: &Zx, b: &Zx) -> Zx {
    let mut out: Zx = (0..a.len().max(b.len()))
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(&mut out);
    out
}

fn mul(a: &Zx, b: &Zx) -> Zx {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn scale(a: &Zx, c: &BigInt) -> Zx {
    let mut out: Zx = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

fn content(a: &Zx) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
fn primitive(a: &Zx) -> Zx {
    let mut c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    if a.last().is_some_and(Signed::is_negative) {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

fn derivative(a: &Zx) -> Zx {
    let mut out: Zx = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    trim(&mut out);
    out
}

/// Exact quotient `a / b` in `Z[x]`, or `None` when `b` does not divide `a`.
fn exact_div(a: &Zx, b: &Zx) -> Option<Zx> {
    assert!(!b.is_empty());
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    if !b[0].is_zero() && !a[0].is_zero() && !a[0].is_multiple_of(&b[0]) {
        return None;
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lc = &b[db];
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[k + j] -= &c * y;
            }
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then(|| {
        trim(&mut q);
        q
    })
}

/// Pseudo-remainder of `a` by `b`.
fn prem(a: &Zx, b: &Zx) -> Zx {
    let mut r = a.clone();
    let db = degree(b);
    let lc = b.last().unwrap();
    while !r.is_empty() && degree(&r) >= db {
        let shift = degree(&r) - db;
        let c = r.last().unwrap().clone();
        r = r.iter().map(|x| x * lc).collect();
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd by the primitive remainder sequence.
fn gcd(a: &Zx, b: &Zx) -> Zx {
    let (mut a, mut b) = (primitive(a), primitive(b));
    if degree(&a) < degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(&prem(&a, &b));
        a = b;
        b = r;
    }
    primitive(&a)
}

fn reduce(a: &Zx, p: u64) -> Fp {
    let p = BigInt::from(p);
    let mut out: Fp = a
        .iter()
        .map(|c| c.mod_floor(&p).to_u64().unwrap())
        .collect();
    Field::trim(&mut out);
    out
}

fn lift(a: &Fp) -> Zx {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Coefficients reduced into `[0, m)`.
fn modm(a: &Zx, m: &BigInt) -> Zx {
    let mut out: Zx = a.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut out);
    out
}

/// Coefficients reduced into `(-m/2, m/2]`.
fn symmetric(a: &Zx, m: &BigInt) -> Zx {
    let half = m / 2;
    let mut out: Zx = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic(a: &Zx, b: &Zx, m: &BigInt) -> (Zx, Zx) {
    let mut r = modm(a, m);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[k + j] = (&r[k + j] - &c * y).mod_floor(m);
            }
        }
        q[k] = c;
    }
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

/// One quadratic Hensel step: from `f ≡ g h` and `s g + t h ≡ 1` modulo
/// `m`, with `h` monic, produce the same relations modulo `m²`.
fn hensel_step(f: &Zx, g: &Zx, h: &Zx, s: &Zx, t: &Zx, m: &BigInt) -> (Zx, Zx, Zx, Zx) {
    let m2 = m * m;
    let e = modm(&sub(f, &mul(g, h)), &m2);
    let (q, r) = divrem_monic(&mul(s, &e), h, &m2);
    let g2 = modm(&add(&add(g, &mul(t, &e)), &mul(&q, g)), &m2);
    let h2 = modm(&add(h, &r), &m2);
    let b = modm(
        &sub(&add(&mul(s, &g2), &mul(t, &h2)), &vec![BigInt::one()]),
        &m2,
    );
    let (c, d) = divrem_monic(&mul(s, &b), &h2, &m2);
    let s2 = modm(&sub(s, &d), &m2);
    let t2 = modm(&sub(&sub(t, &mul(t, &b)), &mul(&c, &g2)), &m2);
    (g2, h2, s2, t2)
}

/// Lifts `f ≡ lc(f) · Π factors (mod p)` to modulus `p^(2^k) ≥ bound`.
/// Factors are monic; the result consists of monic factors modulo the
/// returned modulus.
fn multifactor_lift(f: &Zx, factors: &[Fp], field: Field, bound: &BigInt) -> (Vec<Zx>, BigInt) {
    let p = BigInt::from(field.p);
    let mut steps = 0;
    let mut m = p.clone();
    while &m <= bound {
        m = &m * &m;
        steps += 1;
    }
    (lift_tree(f, factors, field, steps), m)
}

fn lift_tree(f: &Zx, factors: &[Fp], field: Field, steps: u32) -> Vec<Zx> {
    let p = BigInt::from(field.p);
    if factors.len() == 1 {
        // f ≡ lc · g, so the monic lift is f / lc
        let mut m = p.clone();
        for _ in 0..steps {
            m = &m * &m;
        }
        let lc = f.last().unwrap();
        let inv = lc.modinv(&m).expect("leading coefficient invertible mod p");
        return vec![modm(&scale(f, &inv), &m)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let lc_p = reduce(&vec![f.last().unwrap().clone()], field.p);
    let g0 = left.iter().fold(lc_p, |acc, x| field.mul(&acc, x));
    let h0 = right.iter().fold(vec![1], |acc, x| field.mul(&acc, x));
    let (_, s0, t0) = field.ext_gcd(&g0, &h0);
    let (mut g, mut h, mut s, mut t) = (lift(&g0), lift(&h0), lift(&s0), lift(&t0));
    let mut m = p.clone();
    for _ in 0..steps {
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    let mut out = lift_tree(&g, left, field, steps);
    out.extend(lift_tree(&h, right, field, steps));
    out
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Coefficient bound for any factor of `f`, times the leading coefficient.
fn factor_bound(f: &Zx) -> BigInt {
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = BigInt::from_biguint(Sign::Plus, norm_sq.magnitude().sqrt() + BigUint::one());
    let lc = f.last().unwrap().abs();
    (BigInt::one() << degree(f)) * norm * lc * 2
}

/// Irreducible factors of a primitive squarefree polynomial of degree ≥ 1.
fn factor_squarefree(f: &Zx) -> Vec<Zx> {
    if degree(f) == 1 {
        return vec![primitive(f)];
    }
    let lc = f.last().unwrap().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(Field, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in (3u64..).step_by(2).filter(|&p| is_prime(p)) {
        if tried >= 4 || (best.is_some() && p > 2000) {
            break;
        }
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let field = Field::new(p);
        let fp = field.monic(&reduce(f, p));
        if !field.is_squarefree(&fp) {
            continue;
        }
        tried += 1;
        let fs = field.factor_squarefree(&fp, &mut rng);
        if fs.len() == 1 {
            return vec![primitive(f)];
        }
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((field, fs));
        }
    }
    let (field, modular) = best.expect("a prime with squarefree reduction exists");
    let bound = factor_bound(f);
    let (lifted, m) = multifactor_lift(f, &modular, field, &bound);
    recombine(f, lifted, &m)
}

fn recombine(f: &Zx, mut lifted: Vec<Zx>, m: &BigInt) -> Vec<Zx> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let k = lifted.len();
        let lc = rest.last().unwrap().clone();
        for combo in combinations(k, size) {
            let cand = combo
                .iter()
                .fold(vec![lc.clone()], |acc, &i| modm(&mul(&acc, &lifted[i]), m));
            let g = primitive(&symmetric(&cand, m));
            if let Some(q) = exact_div(&rest, &g) {
                out.push(g);
                rest = q;
                for &i in combo.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
        }
        size += 1;
    }
    if degree(&rest) > 0 {
        out.push(primitive(&rest));
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Irreducible factorisation of a primitive polynomial over the integers.
/// Factors have positive leading coefficient and are sorted by degree then
/// coefficients; constant input yields an empty list.
pub fn univariate_factorise(u: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if u.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f: Zx = u.coeffs().to_vec();
    if !content(&f).is_one() {
        return Err(Error::NotPrimitive);
    }
    let mut out = Vec::new();
    let mut rest = primitive(&f);
    // powers of x
    let zeros = rest.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        out.push((vec![BigInt::zero(), BigInt::one()], zeros as u32));
        rest.drain(..zeros);
    }
    if degree(&rest) > 0 {
        let g = gcd(&rest, &derivative(&rest));
        let sqfree = if degree(&g) == 0 {
            rest.clone()
        } else {
            exact_div(&rest, &g).expect("gcd divides")
        };
        for factor in factor_squarefree(&primitive(&sqfree)) {
            let mut mult = 0;
            while let Some(q) = exact_div(&rest, &factor) {
                rest = q;
                mult += 1;
            }
            debug_assert!(mult > 0);
            out.push((factor, mult));
        }
    }
    debug_assert!(degree(&rest) == 0);
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    Ok(out.into_iter().map(|(f, m)| (UniPoly::new(f), m)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    fn product(fs: &[(UniPoly, u32)]) -> Zx {
        fs.iter().fold(vec![BigInt::one()], |acc, (f, m)| {
            (0..*m).fold(acc, |a, _| mul(&a, &f.coeffs().to_vec()))
        })
    }

    #[test]
    fn small_examples() {
        let fs = univariate_factorise(&up(&[1, 2, 2, 1])).unwrap();
        assert_eq!(fs, vec![(up(&[1, 1]), 1), (up(&[1, 1, 1]), 1)]);
        let fs = univariate_factorise(&up(&[-1, 0, 1])).unwrap();
        assert_eq!(fs, vec![(up(&[-1, 1]), 1), (up(&[1, 1]), 1)]);
        let fs = univariate_factorise(&up(&[1, 1, 1])).unwrap();
        assert_eq!(fs, vec![(up(&[1, 1, 1]), 1)]);
        assert!(matches!(
            univariate_factorise(&up(&[2, 4])),
            Err(Error::NotPrimitive)
        ));
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 + 1 is irreducible over Z but splits modulo every prime
        let fs = univariate_factorise(&up(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(fs, vec![(up(&[1, 0, 0, 0, 1]), 1)]);
        // (x^4 + 1)(x^4 - 10x^2 + 1)
        let f = mul(
            &up(&[1, 0, 0, 0, 1]).coeffs().to_vec(),
            &up(&[1, 0, -10, 0, 1]).coeffs().to_vec(),
        );
        let fs = univariate_factorise(&UniPoly::new(f)).unwrap();
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn repeated_and_nonmonic_factors() {
        let a = up(&[3, 0, 2]).coeffs().to_vec();
        let b = up(&[1, -5]).coeffs().to_vec();
        let f = mul(&mul(&a, &a), &mul(&b, &up(&[0, 0, 1]).coeffs().to_vec()));
        let fs = univariate_factorise(&UniPoly::new(f.clone())).unwrap();
        assert_eq!(product(&fs), primitive(&f));
        assert_eq!(fs.len(), 3);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn product_of_factors_is_input(
            a in prop::collection::vec(-4i64..=4, 1..6),
            b in prop::collection::vec(-4i64..=4, 1..6),
            c in prop::collection::vec(-4i64..=4, 1..5),
        ) {
            let f = mul(&mul(&up(&a).coeffs().to_vec(), &up(&b).coeffs().to_vec()), &up(&c).coeffs().to_vec());
            prop_assume!(!f.is_empty());
            let f = primitive(&f);
            let fs = univariate_factorise(&UniPoly::new(f.clone())).unwrap();
            let prod = product(&fs);
            prop_assert!(prod == f || prod == scale(&f, &BigInt::from(-1)));
            for (g, _) in &fs {
                prop_assert!(g.degree() >= 1);
                prop_assert!(g.leading() > BigInt::zero());
            }
            // at least as many factors as nonconstant primitive inputs
            let parts = [&a, &b, &c].iter().filter(|v| primitive(&up(v).coeffs().to_vec()).len() > 1).count();
            prop_assert!(fs.iter().map(|(_, m)| *m as usize).sum::<usize>() >= parts);
        }
    }
}
