//! Dense polynomials in `T` over `F_q`.

use super::fq::{Elem, Fq};
use crate::error::{Error, Result};

/// Polynomial with little-endian coefficients and no leading zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FqPoly {
    c: Vec<Elem>,
}

impl FqPoly {
    pub fn zero() -> Self {
        FqPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        FqPoly { c: vec![1] }
    }

    pub fn constant(a: Elem) -> Self {
        FqPoly::from_coeffs(vec![a])
    }

    /// `T^n`.
    pub fn t_pow(n: usize) -> Self {
        let mut c = vec![0; n + 1];
        c[n] = 1;
        FqPoly { c }
    }

    pub fn from_coeffs(mut c: Vec<Elem>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        FqPoly { c }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &FqPoly, fq: &Fq) -> FqPoly {
        let (long, short) = if self.c.len() >= other.c.len() { (self, other) } else { (other, self) };
        let mut c = long.c.clone();
        for (x, &y) in c.iter_mut().zip(&short.c) {
            *x = fq.add(*x, y);
        }
        FqPoly::from_coeffs(c)
    }

    pub fn add_assign(&mut self, other: &FqPoly, fq: &Fq) {
        if other.c.len() > self.c.len() {
            self.c.resize(other.c.len(), 0);
        }
        for (x, &y) in self.c.iter_mut().zip(&other.c) {
            *x = fq.add(*x, y);
        }
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn neg(&self, fq: &Fq) -> FqPoly {
        FqPoly { c: self.c.iter().map(|&a| fq.neg(a)).collect() }
    }

    pub fn sub(&self, other: &FqPoly, fq: &Fq) -> FqPoly {
        self.add(&other.neg(fq), fq)
    }

    pub fn scale(&self, a: Elem, fq: &Fq) -> FqPoly {
        if a == 0 {
            return FqPoly::zero();
        }
        FqPoly { c: self.c.iter().map(|&x| fq.mul(x, a)).collect() }
    }

    /// Multiplication by `T^n`.
    pub fn shift(&self, n: usize) -> FqPoly {
        if self.is_zero() {
            return FqPoly::zero();
        }
        let mut c = vec![0; n];
        c.extend_from_slice(&self.c);
        FqPoly { c }
    }

    pub fn mul(&self, other: &FqPoly, fq: &Fq) -> FqPoly {
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero();
        }
        let (a, b) = if self.c.len() <= other.c.len() { (self, other) } else { (other, self) };
        let lb: Vec<u32> = b.c.iter().map(|&y| fq.log(y).unwrap_or(u32::MAX)).collect();
        let mut out = vec![0; a.c.len() + b.c.len() - 1];
        let char2 = fq.is_char2();
        for (i, &x) in a.c.iter().enumerate() {
            let Some(la) = fq.log(x) else { continue };
            let row = &mut out[i..i + lb.len()];
            if char2 {
                for (r, &l) in row.iter_mut().zip(&lb) {
                    if l != u32::MAX {
                        *r ^= fq.exp(la + l);
                    }
                }
            } else {
                for (r, &l) in row.iter_mut().zip(&lb) {
                    if l != u32::MAX {
                        *r = fq.add(*r, fq.exp(la + l));
                    }
                }
            }
        }
        FqPoly::from_coeffs(out)
    }

    pub fn pow(&self, mut e: u64, fq: &Fq) -> FqPoly {
        let mut base = self.clone();
        let mut acc = FqPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, fq);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, fq);
            }
        }
        acc
    }

    /// `f(T)^q = f(T^q)`, coefficients being fixed by the q-th power map.
    pub fn frobenius_q(&self, fq: &Fq) -> FqPoly {
        self.inflate(fq.q() as usize)
    }

    /// `f(T) ↦ f(T^m)`.
    pub fn inflate(&self, m: usize) -> FqPoly {
        if self.is_zero() {
            return FqPoly::zero();
        }
        let mut c = vec![0; (self.c.len() - 1) * m + 1];
        for (i, &x) in self.c.iter().enumerate() {
            c[i * m] = x;
        }
        FqPoly { c }
    }

    /// Applies `a ↦ a^(p^e)` to every coefficient and `T ↦ T^(p^e)`.
    pub fn frobenius_p(&self, e: u32, fq: &Fq) -> FqPoly {
        let pe = (fq.p() as usize).pow(e);
        let mut c = vec![0; if self.is_zero() { 0 } else { (self.c.len() - 1) * pe + 1 }];
        for (i, &x) in self.c.iter().enumerate() {
            c[i * pe] = fq.pow(x, pe as u64);
        }
        FqPoly::from_coeffs(c)
    }

    pub fn eval(&self, x: Elem, fq: &Fq) -> Elem {
        self.c.iter().rev().fold(0, |acc, &a| fq.add(fq.mul(acc, x), a))
    }

    pub fn div_rem(&self, d: &FqPoly, fq: &Fq) -> Result<(FqPoly, FqPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        if self.c.len() < d.c.len() {
            return Ok((FqPoly::zero(), self.clone()));
        }
        let inv = fq.inv(d.lead())?;
        let mut r = self.c.clone();
        let mut quot = vec![0; self.c.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            let f = fq.mul(c, inv);
            quot[i - dd] = f;
            let nf = fq.neg(f);
            for (j, &dc) in d.c.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = fq.add(r[idx], fq.mul(nf, dc));
            }
        }
        r.truncate(dd);
        Ok((FqPoly::from_coeffs(quot), FqPoly::from_coeffs(r)))
    }

    pub fn monic(&self, fq: &Fq) -> FqPoly {
        match fq.inv(self.lead()) {
            Ok(i) => self.scale(i, fq),
            Err(_) => FqPoly::zero(),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &FqPoly, fq: &Fq) -> FqPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b, fq).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic(fq)
    }

    pub fn divides(&self, other: &FqPoly, fq: &Fq) -> bool {
        match other.div_rem(self, fq) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => other.is_zero(),
        }
    }
}
