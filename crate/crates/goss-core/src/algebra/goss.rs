//! Goss polynomials of a finite lattice via
//! `G_k = X (G_{k-1} + α_1 G_{k-q} + α_2 G_{k-q²} + …)`.
//!
//! Coefficients are kept as numerators over a common power of one
//! polynomial `w`: the coefficient of `X^j` in `G_k` is
//! `N_{k,j} / w^{(k-j)/(q-1)}`.

use std::collections::VecDeque;

use super::fq::{Elem, Fq};
use super::lattice::LatticeExp;
use super::poly::FqPoly;
use super::ratfunc::RatFunc;
use crate::digits::binom_mod_p;
use crate::error::{Error, Result};

/// Largest `k` accepted by the recursion.
pub const GOSS_K_BUDGET: usize = 200;

/// `G_k` in scaled form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GossPoly {
    k: usize,
    q: usize,
    numer: Vec<FqPoly>,
    scale: FqPoly,
}

impl GossPoly {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// The common scale `w`.
    pub fn scale(&self) -> &FqPoly {
        &self.scale
    }

    pub fn numerator(&self, j: usize) -> &FqPoly {
        &self.numer[j]
    }

    fn depth(&self, j: usize) -> usize {
        (self.k - j) / (self.q - 1)
    }

    /// `log_q |c_j|`, or `None` when `c_j = 0`.
    pub fn val(&self, j: usize) -> Option<i64> {
        let d = self.numer.get(j)?.degree()? as i64;
        Some(d - self.depth(j) as i64 * self.scale.degree().unwrap() as i64)
    }

    /// The coefficient of `X^j` as a reduced fraction.
    pub fn coeff(&self, j: usize, fq: &Fq) -> RatFunc {
        if j > self.k || self.numer[j].is_zero() {
            return RatFunc::zero();
        }
        let den = self.scale.pow(self.depth(j) as u64, fq);
        RatFunc::new(self.numer[j].clone(), den, fq).expect("nonzero scale")
    }

    pub fn coefficients(&self, fq: &Fq) -> Vec<RatFunc> {
        (0..=self.k).map(|j| self.coeff(j, fq)).collect()
    }

    /// Indices of nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        (0..=self.k).filter(|&j| !self.numer[j].is_zero()).collect()
    }

    /// Image modulo the maximal ideal; `None` if some `|c_j| > 1`.
    pub fn reduction(&self, fq: &Fq) -> Option<FqPoly> {
        let lw = self.scale.lead();
        let mut c = vec![0; self.k + 1];
        for (j, slot) in c.iter_mut().enumerate() {
            match self.val(j) {
                Some(v) if v > 0 => return None,
                Some(0) => {
                    let d = fq.pow(lw, self.depth(j) as u64);
                    *slot = fq.mul(self.numer[j].lead(), fq.inv(d).ok()?);
                }
                _ => {}
            }
        }
        Some(FqPoly::from_coeffs(c))
    }
}

/// `w^{e_i} α_i` for each `i ≥ 1`, with `e_i = (q^i−1)/(q−1)`.
fn scaled_alphas(exp: &LatticeExp, q: u64, fq: &Fq) -> Result<(FqPoly, Vec<FqPoly>)> {
    let e = |i: usize| (q.pow(i as u32) - 1) / (q - 1);
    let try_scale = |w: &FqPoly| -> Option<Vec<FqPoly>> {
        let mut out = Vec::new();
        for (i, a) in exp.alphas.iter().enumerate().skip(1) {
            let wp = w.pow(e(i), fq);
            let (quo, rem) = wp.div_rem(a.den(), fq).ok()?;
            if !rem.is_zero() {
                return None;
            }
            out.push(a.num().mul(&quo, fq));
        }
        Some(out)
    };
    let first = exp.alphas.get(1).map(|a| a.den().clone()).unwrap_or_else(FqPoly::one);
    if let Some(v) = try_scale(&first) {
        return Ok((first, v));
    }
    let mut l = FqPoly::one();
    for a in &exp.alphas[1..] {
        let g = l.gcd(a.den(), fq);
        l = l.mul(a.den(), fq).div_rem(&g, fq)?.0;
    }
    let v = try_scale(&l).ok_or_else(|| Error::Internal("no common scale for the α_i".into()))?;
    Ok((l, v))
}

/// Bottom-up generator of `G_1, G_2, …`.
pub struct GossSeq<'a> {
    fq: &'a Fq,
    q: usize,
    scale: FqPoly,
    alphas: Vec<FqPoly>,
    window: VecDeque<GossPoly>,
    reach: usize,
    next_k: usize,
}

impl<'a> GossSeq<'a> {
    pub fn new(exp: &LatticeExp, fq: &'a Fq) -> Result<Self> {
        let q = fq.q() as usize;
        let (scale, alphas) = scaled_alphas(exp, q as u64, fq)?;
        let reach = q.pow(alphas.len() as u32);
        Ok(GossSeq { fq, q, scale, alphas, window: VecDeque::new(), reach, next_k: 1 })
    }

    fn get(&self, k: usize) -> Option<&GossPoly> {
        let first = self.window.front()?.k;
        if k < first {
            return None;
        }
        self.window.get(k - first)
    }

    /// Computes the next polynomial in the sequence.
    pub fn next_poly(&mut self) -> Result<GossPoly> {
        let k = self.next_k;
        if k > GOSS_K_BUDGET {
            return Err(Error::BudgetExceeded(format!("G_k for k > {GOSS_K_BUDGET}")));
        }
        let fq = self.fq;
        let mut numer = vec![FqPoly::zero(); k + 1];
        if k == 1 {
            numer[1] = FqPoly::one();
        } else {
            let prev = self.get(k - 1).expect("previous term");
            for j in 1..=k {
                numer[j] = prev.numer[j - 1].clone();
            }
            let mut qi = self.q;
            for a in &self.alphas {
                if qi >= k {
                    break;
                }
                let g = self.get(k - qi).expect("window covers q^i");
                for j in 1..=k - qi + 1 {
                    let n = &g.numer[j - 1];
                    if !n.is_zero() {
                        let t = a.mul(n, fq);
                        numer[j].add_assign(&t, fq);
                    }
                }
                qi *= self.q;
            }
        }
        let g = GossPoly { k, q: self.q, numer, scale: self.scale.clone() };
        self.window.push_back(g.clone());
        if self.window.len() > self.reach {
            self.window.pop_front();
        }
        self.next_k += 1;
        Ok(g)
    }
}

/// `G_k` of the lattice with exponential `exp`.
pub fn goss_recursion(k: usize, exp: &LatticeExp, fq: &Fq) -> Result<GossPoly> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let mut seq = GossSeq::new(exp, fq)?;
    loop {
        let g = seq.next_poly()?;
        if g.k == k {
            return Ok(g);
        }
    }
}

/// `G_{k,F}(X) = Σ_j (−1)^j binom(k−1−j(q−1), j) X^{k−j(q−1)}` over `F_q`.
pub fn goss_closed_f(k: u64, fq: &Fq) -> FqPoly {
    let qm1 = fq.q() - 1;
    let mut c: Vec<Elem> = vec![0; k as usize + 1];
    let mut j = 0u64;
    while j * qm1 < k {
        let b = binom_mod_p(k - 1 - j * qm1, j, fq.p());
        let v = fq.from_int(if j % 2 == 0 { b as i64 } else { -(b as i64) });
        c[(k - j * qm1) as usize] = v;
        j += 1;
    }
    FqPoly::from_coeffs(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lattice::{lattice_exp, Lattice};
    use crate::digits::Config;

    fn setup(q: u64, t: usize) -> (Fq, LatticeExp) {
        let fq = Fq::new(Config::from_q(q).unwrap()).unwrap();
        let e = lattice_exp(&Lattice::standard(t), &fq).unwrap();
        (fq, e)
    }

    #[test]
    fn first_terms() {
        let (fq, e) = setup(4, 1);
        let mut s = GossSeq::new(&e, &fq).unwrap();
        let g1 = s.next_poly().unwrap();
        assert_eq!(g1.support(), vec![1]);
        for _ in 2..=4 {
            let g = s.next_poly().unwrap();
            assert_eq!(g.support(), vec![g.k()]);
        }
        let g5 = s.next_poly().unwrap();
        assert_eq!(g5.support(), vec![2, 5]);
        assert_eq!(g5.coeff(2, &fq), e.alphas[1]);
        assert_eq!(g5.coeff(5, &fq), RatFunc::one());
    }

    #[test]
    fn example_21() {
        let (fq, e) = setup(4, 2);
        let g = goss_recursion(21, &e, &fq).unwrap();
        assert_eq!(g.support(), vec![6, 12, 15, 18, 21]);
        let a1 = &e.alphas[1];
        assert_eq!(g.coeff(18, &fq), *a1);
        assert_eq!(g.coeff(15, &fq), a1.pow(2, &fq));
        assert_eq!(g.coeff(12, &fq), a1.pow(3, &fq));
        assert_eq!(g.coeff(6, &fq), a1.pow(5, &fq).add(&e.alphas[2], &fq));
    }

    #[test]
    fn closed_form_and_reduction() {
        let (fq, e) = setup(4, 2);
        assert_eq!(goss_closed_f(3, &fq), FqPoly::t_pow(3));
        let f21 = goss_closed_f(21, &fq);
        assert_eq!(f21.coeffs().iter().position(|&c| c != 0), Some(6));
        let mut s = GossSeq::new(&e, &fq).unwrap();
        for k in 1..=40u64 {
            let g = s.next_poly().unwrap();
            assert_eq!(g.reduction(&fq), Some(goss_closed_f(k, &fq)), "k = {k}");
        }
    }

    #[test]
    fn scale_falls_back_when_needed() {
        let (fq, e) = setup(4, 2);
        let (w, al) = scaled_alphas(&e, 4, &fq).unwrap();
        assert!(w.degree().unwrap() > 0);
        assert_eq!(al.len(), 3);
    }
}
