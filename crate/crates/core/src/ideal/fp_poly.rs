//! Dense polynomials over a prime field `F_p` (`p < 2^63`) and their
//! factorization: squarefree decomposition, distinct-degree splitting and
//! Cantor–Zassenhaus equal-degree splitting with a seeded generator.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Ascending coefficients in `[0, p)`, no trailing zeros. The zero polynomial is empty.
pub type Poly = Vec<u64>;

#[derive(Clone, Copy)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    fn mulm(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn addm(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    fn subm(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    fn powm(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mulm(r, a);
            }
            a = self.mulm(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(self, a: u64) -> u64 {
        self.powm(a, self.p - 2)
    }

    fn trim(p: &mut Poly) {
        while p.last() == Some(&0) {
            p.pop();
        }
    }

    pub fn from_signed(self, coeffs: &[i128]) -> Poly {
        let m = self.p as i128;
        let mut v: Poly = coeffs.iter().map(|&c| c.rem_euclid(m) as u64).collect();
        Self::trim(&mut v);
        v
    }

    fn sub(self, a: &Poly, b: &Poly) -> Poly {
        let n = a.len().max(b.len());
        let mut r: Poly = (0..n)
            .map(|i| self.subm(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
            .collect();
        Self::trim(&mut r);
        r
    }

    fn add(self, a: &Poly, b: &Poly) -> Poly {
        let n = a.len().max(b.len());
        let mut r: Poly = (0..n)
            .map(|i| self.addm(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
            .collect();
        Self::trim(&mut r);
        r
    }

    fn mul(self, a: &Poly, b: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = self.addm(r[i + j], self.mulm(x, y));
            }
        }
        Self::trim(&mut r);
        r
    }

    /// Quotient and remainder; `b` nonzero.
    fn divrem(self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        let db = b.len() - 1;
        let inv_lead = self.inv(b[db]);
        let mut r = a.clone();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db {
            let k = r.len() - 1;
            let c = self.mulm(r[k], inv_lead);
            q[k - db] = c;
            for i in 0..=db {
                r[k - db + i] = self.subm(r[k - db + i], self.mulm(c, b[i]));
            }
            Self::trim(&mut r);
        }
        Self::trim(&mut q);
        (q, r)
    }

    fn rem(self, a: &Poly, b: &Poly) -> Poly {
        self.divrem(a, b).1
    }

    fn div(self, a: &Poly, b: &Poly) -> Poly {
        self.divrem(a, b).0
    }

    fn monic(self, a: &Poly) -> Poly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => {
                let inv = self.inv(l);
                a.iter().map(|&c| self.mulm(c, inv)).collect()
            }
        }
    }

    pub fn gcd(self, a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    fn derivative(self, a: &Poly) -> Poly {
        let mut d: Poly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mulm(c, (i as u64) % self.p))
            .collect();
        Self::trim(&mut d);
        d
    }

    fn powmod(self, base: &Poly, exp: &BigUint, modulus: &Poly) -> Poly {
        let mut result: Poly = vec![1];
        let base = self.rem(base, modulus);
        for i in (0..exp.bits()).rev() {
            result = self.rem(&self.mul(&result, &result), modulus);
            if exp.bit(i) {
                result = self.rem(&self.mul(&result, &base), modulus);
            }
        }
        self.rem(&result, modulus)
    }

    /// `a(x)^{1/p}` for a polynomial in `x^p`; over `F_p` coefficients are fixed by Frobenius.
    fn pth_root(self, a: &Poly) -> Poly {
        let p = self.p as usize;
        a.iter().step_by(p).copied().collect()
    }

    /// Squarefree decomposition: pairs `(g, multiplicity)` with `g` monic squarefree.
    fn squarefree(self, f: &Poly) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        let f = self.monic(f);
        let d = self.derivative(&f);
        let mut c = self.gcd(&f, &d);
        let mut w = self.div(&f, &c);
        let mut i = 1u32;
        while w.len() > 1 {
            let y = self.gcd(&w, &c);
            let fac = self.div(&w, &y);
            if fac.len() > 1 {
                out.push((self.monic(&fac), i));
            }
            w = y;
            c = self.div(&c, &w);
            i += 1;
        }
        if c.len() > 1 {
            let root = self.pth_root(&c);
            for (g, j) in self.squarefree(&root) {
                out.push((g, j * self.p as u32));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    fn distinct_degree(self, f: &Poly) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x: Poly = vec![0, 1];
        let mut h = self.rem(&x, &f);
        let p = BigUint::from(self.p);
        let mut i = 1;
        while f.len() > 2 * i {
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                out.push((g.clone(), i));
                f = self.div(&f, &g);
                h = self.rem(&h, &f);
            }
            i += 1;
        }
        if f.len() > 1 {
            let d = f.len() - 1;
            out.push((f, d));
        }
        out
    }

    /// Splits a product of distinct monic irreducibles of degree `d`.
    fn equal_degree(self, f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
        let n = f.len() - 1;
        if n == d {
            out.push(f.clone());
            return;
        }
        loop {
            let mut h: Poly = (0..n).map(|_| rng.random_range(0..self.p)).collect();
            Self::trim(&mut h);
            if h.len() < 2 {
                continue;
            }
            let t = if self.p == 2 {
                // trace map h + h^2 + … + h^{2^{d-1}}
                let mut acc = h.clone();
                let mut cur = h.clone();
                for _ in 1..d {
                    cur = self.rem(&self.mul(&cur, &cur), f);
                    acc = self.add(&acc, &cur);
                }
                acc
            } else {
                let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
                self.sub(&self.powmod(&h, &e, f), &vec![1])
            };
            let g = self.gcd(&t, f);
            if g.len() > 1 && g.len() < f.len() {
                self.equal_degree(&g, d, rng, out);
                self.equal_degree(&self.div(f, &g), d, rng, out);
                return;
            }
        }
    }

    /// Monic irreducible factors with multiplicities, sorted by
    /// (degree, ascending coefficient vector).
    pub fn factor(self, f: &Poly, seed: u64) -> Vec<(Poly, u32)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for (g, mult) in self.squarefree(f) {
            for (h, d) in self.distinct_degree(&g) {
                let mut pieces = Vec::new();
                self.equal_degree(&h, d, &mut rng, &mut pieces);
                out.extend(pieces.into_iter().map(|q| (q, mult)));
            }
        }
        out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        out
    }

    /// Multiplies out a factorization; used to check `factor`.
    #[cfg(test)]
    fn expand(self, factors: &[(Poly, u32)]) -> Poly {
        let mut acc: Poly = vec![1];
        for (g, e) in factors {
            for _ in 0..*e {
                acc = self.mul(&acc, g);
            }
        }
        acc
    }
}
