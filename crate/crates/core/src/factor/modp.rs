//! Dense polynomials over a small prime field `F_p`, coefficients low to high.

use num_bigint::BigUint;
use rand::Rng;

pub(crate) type Fp = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < 1 << 31);
        Field { p }
    }

    pub fn trim(f: &mut Fp) {
        while f.last() == Some(&0) {
            f.pop();
        }
    }

    pub fn inv(self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        r
    }

    #[cfg(test)]
    pub fn add(self, a: &Fp, b: &Fp) -> Fp {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0);
            *o = x % self.p;
        }
        Self::trim(&mut out);
        out
    }

    pub fn sub(self, a: &Fp, b: &Fp) -> Fp {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0);
            *o = x % self.p;
        }
        Self::trim(&mut out);
        out
    }

    pub fn mul(self, a: &Fp, b: &Fp) -> Fp {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        Self::trim(&mut out);
        out
    }

    pub fn scale(self, a: &Fp, c: u64) -> Fp {
        let mut out: Fp = a.iter().map(|&x| x * c % self.p).collect();
        Self::trim(&mut out);
        out
    }

    pub fn monic(self, a: &Fp) -> Fp {
        match a.last() {
            Some(&lc) => self.scale(a, self.inv(lc)),
            None => Vec::new(),
        }
    }

    pub fn divrem(self, a: &Fp, b: &Fp) -> (Fp, Fp) {
        assert!(!b.is_empty(), "division by zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let mut r = a.clone();
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        let mut q = vec![0u64; a.len() - db];
        for k in (0..q.len()).rev() {
            let c = r[k + db] * inv % self.p;
            q[k] = c;
            if c != 0 {
                for (j, &y) in b.iter().enumerate() {
                    r[k + j] = (r[k + j] + self.p - c * y % self.p) % self.p;
                }
            }
        }
        Self::trim(&mut q);
        Self::trim(&mut r);
        (q, r)
    }

    pub fn rem(self, a: &Fp, b: &Fp) -> Fp {
        self.divrem(a, b).1
    }

    pub fn gcd(self, a: &Fp, b: &Fp) -> Fp {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(g, s, t)` with `s a + t b = g = gcd(a, b)` monic.
    pub fn ext_gcd(self, a: &Fp, b: &Fp) -> (Fp, Fp, Fp) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv(*r0.last().expect("gcd of zero polynomials"));
        (
            self.scale(&r0, inv),
            self.scale(&s0, inv),
            self.scale(&t0, inv),
        )
    }

    pub fn derivative(self, a: &Fp) -> Fp {
        let mut out: Fp = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % self.p) * c % self.p)
            .collect();
        Self::trim(&mut out);
        out
    }

    pub fn is_squarefree(self, a: &Fp) -> bool {
        self.gcd(a, &self.derivative(a)).len() == 1
    }

    pub fn powmod(self, base: &Fp, exp: &BigUint, m: &Fp) -> Fp {
        let mut result: Fp = vec![1];
        let base = self.rem(base, m);
        for i in (0..exp.bits()).rev() {
            result = self.rem(&self.mul(&result, &result), m);
            if exp.bit(i) {
                result = self.rem(&self.mul(&result, &base), m);
            }
        }
        self.rem(&result, m)
    }

    /// Distinct-degree factorisation of a monic squarefree polynomial:
    /// pairs `(g, d)` where `g` is the product of all irreducible factors of
    /// degree `d`.
    pub fn ddf(self, f: &Fp) -> Vec<(Fp, usize)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x: Fp = vec![0, 1];
        let mut h = x.clone();
        let p = BigUint::from(self.p);
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                let deg = f.len() - 1;
                out.push((f, deg));
                break;
            }
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        out
    }

    /// Cantor–Zassenhaus splitting of a monic product of distinct
    /// irreducibles, all of degree `d`.
    pub fn edf(self, f: &Fp, d: usize, rng: &mut impl Rng) -> Vec<Fp> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.clone()];
        }
        let exp = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: Fp = {
                let mut a: Fp = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
                Self::trim(&mut a);
                a
            };
            if a.len() <= 1 {
                continue;
            }
            let b = self.sub(&self.powmod(&a, &exp, f), &vec![1]);
            let g = self.gcd(&b, f);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.divrem(f, &g).0;
                let mut out = self.edf(&g, d, rng);
                out.extend(self.edf(&self.monic(&h), d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a monic squarefree polynomial.
    pub fn factor_squarefree(self, f: &Fp, rng: &mut impl Rng) -> Vec<Fp> {
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            out.extend(self.edf(&g, d, rng));
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn splits_known_product() {
        let k = Field::new(7);
        // (x+1)(x+2)(x^2+1) mod 7, x^2+1 irreducible mod 7
        let f = k.mul(&k.mul(&vec![1, 1], &vec![2, 1]), &vec![1, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fs = k.factor_squarefree(&f, &mut rng);
        assert_eq!(fs, vec![vec![1, 0, 1], vec![1, 1], vec![2, 1]]);
    }

    #[test]
    fn ext_gcd_identity() {
        let k = Field::new(11);
        let a = vec![3, 0, 1, 5];
        let b = vec![1, 4, 1];
        let (g, s, t) = k.ext_gcd(&a, &b);
        assert_eq!(k.add(&k.mul(&s, &a), &k.mul(&t, &b)), g);
    }
}
