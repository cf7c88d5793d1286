//! Factorisation of greedoid polynomials over the integers and
//! classification of their irreducible factors.
//!
//! Bivariate polynomials are factored through the Kronecker substitution
//! `z ↦ x^D` with `D = deg_t + 1`: the univariate image is factored
//! completely, and sub-multisets of its irreducible factors are mapped back
//! and tested as bivariate divisors in order of increasing size.

mod modp;
mod univariate;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};

use crate::bipoly::{BiPoly, UniPoly};
use crate::error::{Error, Result};

pub use univariate::univariate_factorise;

/// Irreducible factorisation `unit · Π factor^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorisation {
    unit: i8,
    factors: Vec<(BiPoly, u32)>,
}

impl Factorisation {
    /// Builds a factorisation from parts, merging equal factors and sorting
    /// by text.
    pub fn from_parts(unit: i8, parts: impl IntoIterator<Item = (BiPoly, u32)>) -> Self {
        let mut factors: Vec<(BiPoly, u32)> = Vec::new();
        for (f, m) in parts {
            if m == 0 {
                continue;
            }
            match factors.iter_mut().find(|(g, _)| *g == f) {
                Some(slot) => slot.1 += m,
                None => factors.push((f, m)),
            }
        }
        factors.sort_by_cached_key(|(f, _)| f.to_string());
        Factorisation { unit, factors }
    }

    pub fn unit(&self) -> i8 {
        self.unit
    }

    pub fn factors(&self) -> &[(BiPoly, u32)] {
        &self.factors
    }

    /// Total number of irreducible factors counted with multiplicity.
    pub fn len(&self) -> usize {
        self.factors.iter().map(|(_, m)| *m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_irreducible(&self) -> bool {
        self.len() == 1
    }

    pub fn product(&self) -> BiPoly {
        self.factors
            .iter()
            .fold(BiPoly::constant(self.unit), |acc, (f, m)| &acc * &f.pow(*m))
    }
}

/// Renders as `(f1)^2*(f2)`, or `1` for the empty product.
impl fmt::Display for Factorisation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.unit < 0 {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, m)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "({g})")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Factorisation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (unit, body) = match s.strip_prefix('-') {
            Some(rest) => (-1, rest.trim_start()),
            None => (1, s),
        };
        if body == "1" {
            return Ok(Factorisation::from_parts(unit, []));
        }
        let mut parts = Vec::new();
        let mut rest = body;
        let offset = |r: &str| s.len() - r.len();
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::parse(offset(rest), "expected '('"))?;
            let close = inner
                .find(')')
                .ok_or_else(|| Error::parse(offset(inner), "unclosed '('"))?;
            let poly: BiPoly = inner[..close].parse().map_err(|e| match e {
                Error::Parse { pos, msg } => Error::parse(offset(inner) + pos, msg),
                other => other,
            })?;
            rest = &inner[close + 1..];
            let mut mult = 1;
            if let Some(r) = rest.strip_prefix('^') {
                let digits = r.bytes().take_while(u8::is_ascii_digit).count();
                mult = r[..digits]
                    .parse()
                    .map_err(|_| Error::parse(offset(r), "expected exponent"))?;
                rest = &r[digits..];
            }
            parts.push((poly, mult));
            rest = rest.trim_start();
            if let Some(r) = rest.strip_prefix('*') {
                rest = r.trim_start();
                if rest.is_empty() {
                    return Err(Error::parse(offset(rest), "dangling '*'"));
                }
            } else if !rest.is_empty() {
                return Err(Error::parse(offset(rest), "expected '*'"));
            }
        }
        Ok(Factorisation::from_parts(unit, parts))
    }
}

/// Classification of an irreducible factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorClass {
    /// `1 + t` or `1 + z`.
    Basic,
    /// Not basic, and already a factor at a smaller order.
    Nonbasic,
    /// Not basic, and absent from every factorisation at smaller orders.
    PrimaryCandidate,
}

impl FactorClass {
    pub fn is_basic(self) -> bool {
        self == FactorClass::Basic
    }
}

pub fn is_basic(f: &BiPoly) -> bool {
    *f == BiPoly::one_plus_t() || *f == BiPoly::one_plus_z()
}

/// Makes the leading coefficient (lexicographic, `t` before `z`) positive.
fn normalise_sign(p: BiPoly) -> BiPoly {
    match p.leading_term() {
        Some((_, c)) if c.is_negative() => -&p,
        _ => p,
    }
}

/// Complete factorisation over the integers of a polynomial with content 1.
pub fn factorise(p: &BiPoly) -> Result<Factorisation> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let content = p.content();
    if !content.is_one() {
        return Err(Error::Content(content.to_string()));
    }
    let unit: i8 = if p.leading_term().is_some_and(|(_, c)| c.is_negative()) {
        -1
    } else {
        1
    };
    let mut rest = if unit < 0 { -p } else { p.clone() };
    let mut parts = Vec::new();

    let min_t = rest.terms().map(|((i, _), _)| i).min().unwrap_or(0);
    let min_z = rest.terms().map(|((_, j), _)| j).min().unwrap_or(0);
    if min_t > 0 {
        parts.push((BiPoly::t(), min_t));
    }
    if min_z > 0 {
        parts.push((BiPoly::z(), min_z));
    }
    if min_t > 0 || min_z > 0 {
        rest = BiPoly::from_terms(
            rest.terms()
                .map(|((i, j), c)| ((i - min_t, j - min_z), c.clone())),
        );
    }
    for basic in [BiPoly::one_plus_t(), BiPoly::one_plus_z()] {
        let mut m = 0;
        while !rest.is_constant() {
            match rest.exact_div(&basic) {
                Ok(q) => {
                    rest = q;
                    m += 1;
                }
                Err(_) => break,
            }
        }
        parts.push((basic, m));
    }
    if !rest.is_constant() {
        parts.extend(factor_core(&rest)?);
    }

    let fact = Factorisation::from_parts(unit, parts);
    if fact.product() != *p {
        return Err(Error::Inconsistency(format!(
            "factor product {} differs from input {p}",
            fact.product()
        )));
    }
    Ok(fact)
}

/// Factors a primitive, positively normalised polynomial without monomial
/// factors.
fn factor_core(p: &BiPoly) -> Result<Vec<(BiPoly, u32)>> {
    let d = p.deg_t() + 1;
    let image = p.kronecker(d);
    let mut pool: Vec<(UniPoly, u32)> = univariate_factorise(&image)?;
    let mut rest = p.clone();
    let mut out: Vec<(BiPoly, u32)> = Vec::new();
    let mut size = 1;
    loop {
        let available: u32 = pool.iter().map(|(_, m)| *m).sum();
        if available == 0 || size > available {
            break;
        }
        let mut found = None;
        for_each_submultiset(&pool, size, &mut |counts| {
            let image = pool
                .iter()
                .zip(counts)
                .fold(UniPoly::one(), |acc, ((u, _), &c)| {
                    (0..c).fold(acc, |a, _| &a * u)
                });
            let prod = BiPoly::from_kronecker(&image, d);
            let cand = normalise_sign(prod.primitive_part());
            if cand.is_constant() {
                return false;
            }
            if let Ok(q) = rest.exact_div(&cand) {
                found = Some((cand, q, counts.to_vec()));
                return true;
            }
            false
        });
        match found {
            Some((g, q, counts)) => {
                rest = q;
                for ((_, m), c) in pool.iter_mut().zip(&counts) {
                    *m -= c;
                }
                match out.iter_mut().find(|(h, _)| *h == g) {
                    Some(slot) => slot.1 += 1,
                    None => out.push((g, 1)),
                }
            }
            None => size += 1,
        }
    }
    if !rest.is_one() {
        return Err(Error::Inconsistency(format!(
            "recombination left cofactor {rest} of {p}"
        )));
    }
    Ok(out)
}

/// Visits every vector `c` with `c[i] ≤ pool[i].1` and `Σ c = size`;
/// stops early when `visit` returns true.
fn for_each_submultiset<T>(
    pool: &[(T, u32)],
    size: u32,
    visit: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    fn go<T>(
        pool: &[(T, u32)],
        i: usize,
        left: u32,
        counts: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        if i == pool.len() {
            return left == 0 && visit(counts);
        }
        let tail: u32 = pool[i + 1..].iter().map(|(_, m)| *m).sum();
        let lo = left.saturating_sub(tail);
        for c in (lo..=pool[i].1.min(left)).rev() {
            counts[i] = c;
            if go(pool, i + 1, left - c, counts, visit) {
                return true;
            }
        }
        counts[i] = 0;
        false
    }
    let mut counts = vec![0; pool.len()];
    go(pool, 0, size, &mut counts, visit)
}

/// Every divisor of the factored polynomial other than the constant 1,
/// each paired with its cofactor.
fn divisor_pairs(fact: &Factorisation) -> Vec<(BiPoly, BiPoly)> {
    let total = fact.product();
    let factors = fact.factors();
    let mut out = Vec::new();
    let mut counts = vec![0u32; factors.len()];
    loop {
        let g = factors
            .iter()
            .zip(&counts)
            .fold(BiPoly::one(), |acc, ((f, _), &c)| &acc * &f.pow(c));
        let h = total.exact_div(&g).expect("divisor divides");
        out.push((g, h));
        let Some(i) = (0..factors.len()).find(|&i| counts[i] < factors[i].1) else {
            break;
        };
        counts[i] += 1;
        counts[..i].iter_mut().for_each(|c| *c = 0);
    }
    out
}

/// All unordered pairs `(g, h)` with `g · h = f`, `g, h ≠ 1` and both
/// present in `db`. Within a pair `g` has the smaller text form; pairs are
/// sorted by that text.
pub fn gm_factorise(f: &BiPoly, db: &HashSet<BiPoly>) -> Result<Vec<(BiPoly, BiPoly)>> {
    Ok(gm_factorise_with(&factorise(f)?, db))
}

/// [`gm_factorise`] for a polynomial whose factorisation is already known.
pub fn gm_factorise_with(fact: &Factorisation, db: &HashSet<BiPoly>) -> Vec<(BiPoly, BiPoly)> {
    if fact.unit() < 0 {
        return Vec::new();
    }
    let mut out: Vec<(String, BiPoly, BiPoly)> = divisor_pairs(fact)
        .into_iter()
        .filter(|(g, h)| !g.is_one() && !h.is_one())
        .filter(|(g, h)| db.contains(g) && db.contains(h))
        .filter_map(|(g, h)| {
            let (gs, hs) = (g.to_string(), h.to_string());
            (gs <= hs).then_some((gs, g, h))
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, g, h)| (g, h)).collect()
}

/// Whether some pair of database polynomials other than 1 multiplies to the
/// factored polynomial.
pub fn is_gm_factorisable(fact: &Factorisation, db: &HashSet<BiPoly>) -> bool {
    fact.unit() > 0
        && divisor_pairs(fact)
            .iter()
            .any(|(g, h)| !g.is_one() && !h.is_one() && db.contains(g) && db.contains(h))
}

/// Classifies each factor of `fact` against the set of irreducible factors
/// seen at smaller orders.
pub fn classify_factors(fact: &Factorisation, prior: &HashSet<BiPoly>) -> Vec<FactorClass> {
    fact.factors()
        .iter()
        .map(|(f, _)| {
            if is_basic(f) {
                FactorClass::Basic
            } else if prior.contains(f) {
                FactorClass::Nonbasic
            } else {
                FactorClass::PrimaryCandidate
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::tests::arb_poly;
    use proptest::prelude::*;

    fn p(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn basic_examples() {
        let f = factorise(&p("1 + t + z + t*z")).unwrap();
        assert_eq!(f.factors(), &[(p("1 + t"), 1), (p("1 + z"), 1)]);
        let g = p("3 + 2*t + t^2 + z + t^2*z");
        let row8 = &BiPoly::one_plus_z().pow(2) * &g;
        let f = factorise(&row8).unwrap();
        assert_eq!(f.factors(), &[(p("1 + z"), 2), (g, 1)]);
        let f = factorise(&p("1 + t + t^2 + t^2*z")).unwrap();
        assert!(f.is_irreducible());
        assert!(matches!(factorise(&p("2 + 2*t")), Err(Error::Content(_))));
        assert!(matches!(
            factorise(&BiPoly::zero()),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn monomials_and_signs() {
        let f = factorise(&p("-1*t^2*z - t^3*z")).unwrap();
        assert_eq!(f.unit(), -1);
        assert_eq!(f.to_string(), "-(1 + t)*(t)^2*(z)");
        let back: Factorisation = f.to_string().parse().unwrap();
        assert_eq!(back, f);
        assert_eq!(factorise(&BiPoly::one()).unwrap().to_string(), "1");
    }

    #[test]
    fn named_digraph_factors() {
        let a = p("1 + t + t^2 + t^2*z");
        let b = p("2 + 2*t + t^2 + t^3 + z + t*z + t^2*z + 3*t^3*z + 3*t^3*z^2 + t^3*z^3");
        let c = p("4 + 3*t + t^2 + t^3 + 4*z + 2*t*z + t^2*z + 4*t^3*z + z^2 + 6*t^3*z^2 + 4*t^3*z^3 + t^3*z^4");
        for big in [&b, &c] {
            let f = factorise(&(&a * big)).unwrap();
            assert_eq!(f.len(), 2);
            assert!(f.factors().iter().any(|(g, _)| g == big));
        }
    }

    #[test]
    fn factorisation_text_round_trip() {
        let f: Factorisation = "(1 + z)^3*(1 + t + t^2 + t^2*z)".parse().unwrap();
        assert_eq!(f.to_string(), "(1 + t + t^2 + t^2*z)*(1 + z)^3");
        assert!("(1 + z".parse::<Factorisation>().is_err());
        assert!("(1 + z)*".parse::<Factorisation>().is_err());
        assert!("(1 + z)x".parse::<Factorisation>().is_err());
    }

    #[test]
    fn gm_examples() {
        let db: HashSet<BiPoly> = [BiPoly::one(), p("1 + t"), p("1 + z"), p("1 + t + z + t*z")]
            .into_iter()
            .collect();
        assert_eq!(
            gm_factorise(&p("1 + t + z + t*z"), &db).unwrap(),
            vec![(p("1 + t"), p("1 + z"))]
        );
        assert!(gm_factorise(&p("1 + t"), &db).unwrap().is_empty());
    }

    #[test]
    fn classification() {
        let a = p("1 + t + t^2 + t^2*z");
        let c = p("4 + 3*t + t^2 + t^3 + 4*z + 2*t*z + t^2*z + 4*t^3*z + z^2 + 6*t^3*z^2 + 4*t^3*z^3 + t^3*z^4");
        let prior: HashSet<BiPoly> = [a.clone(), p("1 + t"), p("1 + z")].into_iter().collect();
        let f = factorise(&(&(&a * &c) * &p("1 + z"))).unwrap();
        let classes = classify_factors(&f, &prior);
        let by_factor: Vec<_> = f
            .factors()
            .iter()
            .map(|(g, _)| g.clone())
            .zip(classes)
            .collect();
        for (g, class) in by_factor {
            let expected = if g == a {
                FactorClass::Nonbasic
            } else if g == c {
                FactorClass::PrimaryCandidate
            } else {
                FactorClass::Basic
            };
            assert_eq!(class, expected);
        }
    }

    fn arb_primitive() -> impl Strategy<Value = BiPoly> {
        arb_poly().prop_filter("primitive, non-constant", |q| {
            !q.is_constant() && q.content().is_one()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn factorising_a_product_merges_multisets(a in arb_primitive(), b in arb_primitive()) {
            let fa = factorise(&a).unwrap();
            let fb = factorise(&b).unwrap();
            let fab = factorise(&(&a * &b)).unwrap();
            let merged = Factorisation::from_parts(
                fa.unit() * fb.unit(),
                fa.factors().iter().chain(fb.factors()).cloned(),
            );
            prop_assert_eq!(fab, merged);
        }
    }
}
