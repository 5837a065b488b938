//! Finite sub-lattices of `F_q[T]` spanned by monomials and their
//! exponential polynomials.

use super::fq::Fq;
use super::poly::FqPoly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Largest number of lattice points accepted.
pub const LATTICE_BUDGET: u64 = 1024;

/// The lattice `F_q T^{r_0} + … + F_q T^{r_t}` with `0 = r_0 < … < r_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    exps: Vec<usize>,
}

impl Lattice {
    /// `A_{t+1} = F_q + F_q T + … + F_q T^t`.
    pub fn standard(t: usize) -> Self {
        Lattice { exps: (0..=t).collect() }
    }

    pub fn monomial(exps: Vec<usize>) -> Result<Self> {
        if exps.first() != Some(&0) {
            return Err(Error::InvalidArgument("the first basis element must be 1".into()));
        }
        if exps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("basis exponents must increase strictly".into()));
        }
        Ok(Lattice { exps })
    }

    pub fn exps(&self) -> &[usize] {
        &self.exps
    }

    /// Index of the top basis element.
    pub fn t(&self) -> usize {
        self.exps.len() - 1
    }

    pub fn rank(&self) -> usize {
        self.exps.len()
    }
}

/// `ẽ(z) = Σ β_i z^{q^i} = ∏_{λ}(z − λ)` and `α_i = β_i/β_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeExp {
    pub betas: Vec<FqPoly>,
    pub alphas: Vec<RatFunc>,
}

/// Builds the exponential by the tower `ẽ_{i+1} = ẽ_i^q − ẽ_i(λ_i)^{q-1} ẽ_i`.
pub fn lattice_exp(lattice: &Lattice, fq: &Fq) -> Result<LatticeExp> {
    let q = fq.q();
    let points = q.checked_pow(lattice.rank() as u32).filter(|&n| n <= LATTICE_BUDGET);
    if points.is_none() {
        return Err(Error::BudgetExceeded(format!("q^{} lattice points", lattice.rank())));
    }
    let mut beta = vec![FqPoly::one()];
    for &e in lattice.exps() {
        let mut val = FqPoly::zero();
        let mut shift = e;
        for b in &beta {
            val.add_assign(&b.shift(shift), fq);
            shift *= q as usize;
        }
        let c = val.pow(q - 1, fq);
        let mut next = Vec::with_capacity(beta.len() + 1);
        next.push(c.mul(&beta[0], fq).neg(fq));
        for m in 1..beta.len() {
            next.push(beta[m - 1].frobenius_q(fq).sub(&c.mul(&beta[m], fq), fq));
        }
        next.push(beta[beta.len() - 1].frobenius_q(fq));
        beta = next;
    }
    let alphas = beta
        .iter()
        .map(|b| RatFunc::new(b.clone(), beta[0].clone(), fq))
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeExp { betas: beta, alphas })
}
