//! Bivariate polynomials in `t` and `z` with arbitrary-precision integer
//! coefficients.
//!
//! [`BiPoly`] is a sparse map from exponent pairs to nonzero coefficients, so
//! structural equality is polynomial equality. The text form produced by
//! `Display` lists terms by ascending `z`-degree, then ascending `t`-degree:
//!
//! ```
//! use digreedoid::BiPoly;
//! let p: BiPoly = "2 + 2*t + t^2 + z + t*z + t^2*z".parse().unwrap();
//! assert_eq!(p.to_string(), "2 + 2*t + t^2 + z + t*z + t^2*z");
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent pair `(t-degree, z-degree)`.
///
/// Tuple ordering is the lexicographic monomial order with `t > z`, which is
/// the order used for division and for leading terms.
pub type Monomial = (u32, u32);

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn t() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn z() -> Self {
        Self::monomial(0, 1, 1)
    }

    /// `1 + t`.
    pub fn one_plus_t() -> Self {
        Self::from_terms([((0, 0), 1), ((1, 0), 1)])
    }

    /// `1 + z`.
    pub fn one_plus_z() -> Self {
        Self::from_terms([((0, 0), 1), ((0, 1), 1)])
    }

    pub fn monomial(t_deg: u32, z_deg: u32, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((t_deg, z_deg), c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs; repeated
    /// monomials are summed.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c.into());
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&m| m == (0, 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic `(t, z)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &BigInt)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coeff(&self, t_deg: u32, z_deg: u32) -> BigInt {
        self.terms
            .get(&(t_deg, z_deg))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn deg_t(&self) -> u32 {
        self.terms.keys().map(|m| m.0).max().unwrap_or(0)
    }

    pub fn deg_z(&self) -> u32 {
        self.terms.keys().map(|m| m.1).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.0 + m.1).max().unwrap_or(0)
    }

    /// Leading term under lex order with `t > z`.
    pub fn leading_term(&self) -> Option<(Monomial, &BigInt)> {
        self.terms.iter().next_back().map(|(&m, c)| (m, c))
    }

    /// Positive gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            g = -g;
        }
        self.map_coeffs(|c| c / &g)
    }

    fn map_coeffs(&self, f: impl Fn(&BigInt) -> BigInt) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(&m, c)| (m, f(c))))
    }

    pub fn scale(&self, k: &BigInt) -> BiPoly {
        self.map_coeffs(|c| c * k)
    }

    /// Multiplies by `t^a z^b`.
    pub fn shift(&self, a: u32, b: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i + a, j + b), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> BiPoly {
        let mut base = self.clone();
        let mut acc = BiPoly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, t0: &BigInt, z0: &BigInt) -> BigInt {
        // Horner in t over rows grouped by t-degree.
        let mut rows: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            *rows.entry(i).or_default() += c * z0.pow(j);
        }
        let mut acc = BigInt::zero();
        let mut prev: Option<u32> = None;
        for (&i, v) in rows.iter().rev() {
            if let Some(p) = prev {
                acc *= t0.pow(p - i);
            }
            acc += v;
            prev = Some(i);
        }
        if let Some(p) = prev {
            acc *= t0.pow(p);
        }
        acc
    }

    pub fn eval_i64(&self, t0: i64, z0: i64) -> BigInt {
        self.eval(&BigInt::from(t0), &BigInt::from(z0))
    }

    /// Exact quotient `self / q`, computed by leading-term elimination under
    /// lex order with `t > z`.
    pub fn exact_div(&self, q: &BiPoly) -> Result<BiPoly> {
        let ((qa, qb), qc) = q.leading_term().ok_or(Error::DivisionByZero)?;
        if self.is_zero() {
            return Ok(BiPoly::zero());
        }
        // Degrees in each variable are additive, which bounds the quotient.
        let (pt, pz, dt, dz) = (self.deg_t(), self.deg_z(), q.deg_t(), q.deg_z());
        if pt < dt || pz < dz {
            return Err(Error::NotDivisible);
        }
        let (max_t, max_z) = (pt - dt, pz - dz);
        let qc = qc.clone();
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((&(a, b), c)) = rem.iter().next_back() {
            if a < qa || b < qb {
                return Err(Error::NotDivisible);
            }
            let (ma, mb) = (a - qa, b - qb);
            if ma > max_t || mb > max_z {
                return Err(Error::NotDivisible);
            }
            let (mc, r) = c.div_rem(&qc);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (&(i, j), qcoef) in &q.terms {
                let key = (i + ma, j + mb);
                let delta = &mc * qcoef;
                let entry = rem.entry(key).or_default();
                *entry -= delta;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert((ma, mb), mc);
        }
        Ok(BiPoly { terms: quot })
    }

    pub fn divides(&self, p: &BiPoly) -> bool {
        p.exact_div(self).is_ok()
    }

    /// Largest `k` such that `q^k` divides `self`.
    pub fn valuation(&self, q: &BiPoly) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if q.is_constant() {
            return Err(Error::ConstantBase);
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Ok(next) = cur.exact_div(q) {
            cur = next;
            k += 1;
        }
        Ok(k)
    }

    /// Kronecker image under `z -> x^d`, `t -> x`. Injective on polynomials
    /// with `deg_t < d`.
    pub fn kronecker(&self, d: u32) -> UniPoly {
        let deg = self
            .terms
            .keys()
            .map(|&(i, j)| (i + d * j) as usize)
            .max()
            .unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (&(i, j), c) in &self.terms {
            coeffs[(i + d * j) as usize] += c;
        }
        UniPoly::new(coeffs)
    }

    /// Inverse of [`BiPoly::kronecker`] by base-`d` digit extraction.
    pub fn from_kronecker(u: &UniPoly, d: u32) -> BiPoly {
        BiPoly::from_terms(
            u.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| {
                    let e = e as u32;
                    ((e % d, e / d), c.clone())
                }),
        )
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut order: Vec<_> = self.terms.iter().collect();
        order.sort_by_key(|(&(i, j), _)| (j, i));
        for (k, (&(i, j), c)) in order.into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let vars = render_vars(i, j);
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                f.write_str(&vars)?;
            } else {
                write!(f, "{c}*{vars}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

fn render_vars(i: u32, j: u32) -> String {
    let part = |name: char, e: u32| match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    };
    match (part('t', i), part('z', j)) {
        (a, b) if a.is_empty() => b,
        (a, b) if b.is_empty() => a,
        (a, b) => format!("{a}*{b}"),
    }
}

impl FromStr for BiPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser {
            s: s.as_bytes(),
            pos: 0,
        }
        .poly()
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::parse(self.pos, msg))
    }

    fn poly(mut self) -> Result<BiPoly> {
        let mut p = BiPoly::zero();
        self.skip_ws();
        if self.peek().is_none() {
            return self.err("empty input");
        }
        loop {
            let (m, c) = self.term()?;
            p.add_term(m, c);
            self.skip_ws();
            match self.peek() {
                None => return Ok(p),
                Some(b'+') => {
                    self.pos += 1;
                    self.skip_ws();
                }
                Some(b'-') => {}
                Some(_) => return self.err("expected '+' or '-' between terms"),
            }
        }
    }

    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
            self.skip_ws();
        }
        let coeff = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = self.integer()?;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                Some(c)
            } else {
                let c = if negative { -c } else { c };
                return Ok(((0, 0), c));
            }
        } else {
            None
        };
        let m = self.vars()?;
        let c = coeff.unwrap_or_else(BigInt::one);
        Ok((m, if negative { -c } else { c }))
    }

    fn vars(&mut self) -> Result<Monomial> {
        let (mut i, mut j) = (0u32, 0u32);
        loop {
            let var = match self.peek() {
                Some(c @ (b't' | b'z')) => c,
                _ => return self.err("expected variable 't' or 'z'"),
            };
            self.pos += 1;
            let mut e = 1u32;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                let at = self.pos;
                e = u32::try_from(self.integer()?)
                    .map_err(|_| Error::parse(at, "exponent out of range"))?;
            }
            if var == b't' {
                i += e;
            } else {
                j += e;
            }
            let save = self.pos;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
            } else {
                self.pos = save;
                return Ok((i, j));
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("decimal digits"))
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(mut self, rhs: BiPoly) -> BiPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &BiPoly) {
        for (&m, c) in &rhs.terms {
            self.add_term(m, c.clone());
        }
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(mut self, rhs: BiPoly) -> BiPoly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&BiPoly> for BiPoly {
    fn sub_assign(&mut self, rhs: &BiPoly) {
        for (&m, c) in &rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.map_coeffs(|c| -c)
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(i, j), d) in &rhs.terms {
                out.add_term((a + i, b + j), c * d);
            }
        }
        out
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

/// Dense univariate polynomial over the integers, lowest degree first.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    /// Trailing zero coefficients are trimmed.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}
