//! The finite field `F_q` as `F_p[x]/(m(x))`.
//!
//! An element is stored as the integer whose base-p digits are its
//! coordinates in the basis `1, x, …, x^{f-1}`.

use crate::digits::Config;
use crate::error::{Error, Result};

/// Field element: coordinates packed as a base-p integer in `0..q`.
pub type Elem = u32;

const NO_LOG: u32 = u32::MAX;

/// Defining polynomials (little-endian, monic) used by default.
const CONWAY: &[(u64, &[u32])] = &[
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (9, &[2, 2, 1]),
    (16, &[1, 1, 0, 0, 1]),
    (25, &[2, 4, 1]),
    (27, &[1, 2, 0, 1]),
];

/// Finite field with log/antilog tables.
#[derive(Clone, Debug)]
pub struct Fq {
    cfg: Config,
    modulus: Vec<u32>,
    generator: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
    add_table: Option<Vec<Elem>>,
}

impl Fq {
    /// Largest field order with tables.
    pub const MAX_Q: u64 = 1 << 20;

    /// The field with the built-in defining polynomial for `q`, or the
    /// lexicographically first irreducible one.
    pub fn new(cfg: Config) -> Result<Self> {
        if cfg.q() > Self::MAX_Q {
            return Err(Error::BudgetExceeded(format!("F_q tables for q = {}", cfg.q())));
        }
        if cfg.f() == 1 {
            return Self::with_modulus(cfg, &[0, 1]);
        }
        if let Some((_, m)) = CONWAY.iter().find(|(q, _)| *q == cfg.q()) {
            return Self::with_modulus(cfg, m);
        }
        let p = cfg.p();
        let f = cfg.f() as usize;
        for code in 0..cfg.q() {
            let mut m: Vec<u32> = (0..f).map(|i| ((code / (p as u64).pow(i as u32)) % p as u64) as u32).collect();
            m.push(1);
            if is_irreducible(&m, p) {
                return Self::with_modulus(cfg, &m);
            }
        }
        Err(Error::Internal("no irreducible polynomial found".into()))
    }

    /// The field `F_p[x]/(m)` for a monic irreducible `m` of degree `f`.
    pub fn with_modulus(cfg: Config, modulus: &[u32]) -> Result<Self> {
        let p = cfg.p();
        let f = cfg.f() as usize;
        if modulus.len() != f + 1 || modulus[f] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidArgument("modulus must be monic of degree f over F_p".into()));
        }
        if f > 1 && !is_irreducible(modulus, p) {
            return Err(Error::InvalidArgument("modulus is reducible".into()));
        }
        let q = cfg.q() as usize;
        let slow = SlowField { p, f, modulus: modulus.to_vec() };
        let order = (q - 1) as u64;
        let primes = prime_factors(order);
        let generator = (1..q as u32)
            .find(|&g| primes.iter().all(|&r| slow.pow(g, order / r) != 1))
            .ok_or_else(|| Error::Internal("no primitive element".into()))?;
        let mut exp = vec![0; 2 * (q - 1)];
        let mut log = vec![NO_LOG; q];
        let mut x = 1u32;
        for i in 0..(q - 1) {
            exp[i] = x;
            exp[i + q - 1] = x;
            log[x as usize] = i as u32;
            x = slow.mul(x, generator);
        }
        let add_table = if p != 2 && q <= 1024 {
            let mut t = vec![0; q * q];
            for a in 0..q {
                for b in 0..q {
                    t[a * q + b] = slow.add(a as u32, b as u32);
                }
            }
            Some(t)
        } else {
            None
        };
        Ok(Fq { cfg, modulus: modulus.to_vec(), generator, exp, log, add_table })
    }

    pub fn config(&self) -> &Config {
        &self.cfg
    }

    pub fn q(&self) -> u64 {
        self.cfg.q()
    }

    pub fn p(&self) -> u32 {
        self.cfg.p()
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p() as i64) as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.cfg.p() == 2 {
            return a ^ b;
        }
        match &self.add_table {
            Some(t) => t[a as usize * self.q() as usize + b as usize],
            None => self.digit_op(a, b, |x, y, p| (x + y) % p),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.cfg.p() == 2 {
            return a;
        }
        self.digit_op(0, a, |x, y, p| (x + p - y) % p)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    fn digit_op(&self, mut a: Elem, mut b: Elem, op: fn(u32, u32, u32) -> u32) -> Elem {
        let p = self.cfg.p();
        let (mut out, mut pw) = (0, 1);
        for _ in 0..self.cfg.f() {
            out += op(a % p, b % p, p) * pw;
            a /= p;
            b /= p;
            pw *= p;
        }
        out
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.q() as u32 - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = self.q() - 1;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// `a ↦ a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p() as u64)
    }

    /// Discrete logarithm, `None` for zero.
    #[inline]
    pub(crate) fn log(&self, a: Elem) -> Option<u32> {
        let l = self.log[a as usize];
        (l != NO_LOG).then_some(l)
    }

    #[inline]
    pub(crate) fn exp(&self, i: u32) -> Elem {
        self.exp[i as usize]
    }

    pub(crate) fn is_char2(&self) -> bool {
        self.cfg.p() == 2
    }
}

// Arithmetic straight from the defining polynomial; used to build tables.
struct SlowField {
    p: u32,
    f: usize,
    modulus: Vec<u32>,
}

impl SlowField {
    fn coords(&self, mut a: u32) -> Vec<u32> {
        (0..self.f)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.coords(a), self.coords(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.pack(&s)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.coords(a), self.coords(b));
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * self.f];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u as u64 * v as u64) % p;
            }
        }
        for d in (self.f..2 * self.f).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus.iter().enumerate() {
                let idx = d - self.f + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        let low: Vec<u32> = prod[..self.f].iter().map(|&c| c as u32).collect();
        self.pack(&low)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Trial division by all monic polynomials of degree <= deg/2 over F_p.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g: Vec<u32> = (0..d).map(|i| ((code / (p as u64).pow(i as u32)) % p as u64) as u32).collect();
            g.push(1);
            if rem_fp(m, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn rem_fp(a: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    let p = p as u64;
    for d in (dg..r.len()).rev() {
        let c = r[d] % p;
        if c == 0 {
            continue;
        }
        for (i, &gc) in g.iter().enumerate() {
            let idx = d - dg + i;
            r[idx] = (r[idx] + (p - c) * gc as u64) % p;
        }
    }
    r.truncate(dg);
    r.into_iter().map(|c| c as u32).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> Fq {
        Fq::new(Config::from_q(q).unwrap()).unwrap()
    }

    #[test]
    fn f4_relation() {
        let f = field(4);
        // x^2 = x + 1 with x = 2
        assert_eq!(f.mul(2, 2), f.add(2, 1));
    }

    #[test]
    fn field_axioms_small() {
        for q in [2, 3, 4, 5, 8, 9, 16, 25, 27, 49] {
            let f = field(q);
            let q = q as u32;
            for a in 0..q {
                assert_eq!(f.pow(a, f.q()), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    for c in [0, 1, q - 1] {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn builtin_moduli_are_irreducible() {
        for (q, m) in CONWAY {
            let cfg = Config::from_q(*q).unwrap();
            assert!(is_irreducible(m, cfg.p()), "q = {q}");
        }
        assert!(!is_irreducible(&[1, 0, 1], 2));
    }

    #[test]
    fn alternative_modulus() {
        let cfg = Config::from_q(8).unwrap();
        let f = Fq::with_modulus(cfg, &[1, 0, 1, 1]).unwrap();
        assert_eq!(f.pow(f.generator(), 7), 1);
        assert!(Fq::with_modulus(cfg, &[1, 1, 1, 1]).is_err());
    }
}
