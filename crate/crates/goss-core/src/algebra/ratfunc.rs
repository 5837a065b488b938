//! The rational function field `F_q(T)`.

use super::fq::Fq;
use super::poly::FqPoly;
use crate::error::{Error, Result};

/// Reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: FqPoly,
    den: FqPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: FqPoly::zero(), den: FqPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: FqPoly::one(), den: FqPoly::one() }
    }

    pub fn from_poly(p: FqPoly) -> Self {
        RatFunc { num: p, den: FqPoly::one() }
    }

    pub fn new(num: FqPoly, den: FqPoly, fq: &Fq) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = num.gcd(&den, fq);
        let (mut n, _) = num.div_rem(&g, fq)?;
        let (mut d, _) = den.div_rem(&g, fq)?;
        let l = fq.inv(d.lead())?;
        n = n.scale(l, fq);
        d = d.scale(l, fq);
        Ok(RatFunc { num: n, den: d })
    }

    pub fn num(&self) -> &FqPoly {
        &self.num
    }

    pub fn den(&self) -> &FqPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `log_q |x| = deg(num) - deg(den)`; `None` for zero.
    pub fn val(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    pub fn add(&self, o: &RatFunc, fq: &Fq) -> RatFunc {
        let n = self.num.mul(&o.den, fq).add(&o.num.mul(&self.den, fq), fq);
        RatFunc::new(n, self.den.mul(&o.den, fq), fq).expect("nonzero denominators")
    }

    pub fn neg(&self, fq: &Fq) -> RatFunc {
        RatFunc { num: self.num.neg(fq), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc, fq: &Fq) -> RatFunc {
        self.add(&o.neg(fq), fq)
    }

    pub fn mul(&self, o: &RatFunc, fq: &Fq) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num, fq), self.den.mul(&o.den, fq), fq).expect("nonzero denominators")
    }

    pub fn inv(&self, fq: &Fq) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone(), fq)
    }

    pub fn div(&self, o: &RatFunc, fq: &Fq) -> Result<RatFunc> {
        Ok(self.mul(&o.inv(fq)?, fq))
    }

    pub fn pow(&self, e: u64, fq: &Fq) -> RatFunc {
        RatFunc { num: self.num.pow(e, fq), den: self.den.pow(e, fq) }
    }
}
