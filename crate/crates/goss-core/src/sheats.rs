//! Sheats compositions, weights and coweights.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::{Fq, FqPoly};
use crate::digits::{self, from_pdigits, indicator_of_counts, pdigits, type_counts, Config};
use crate::error::{Error, Result};

/// The Sheats composition `(X_1, …, X_h)` of `n` and its partial sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheatsData {
    pub cfg: Config,
    pub n: BigUint,
    pub h: usize,
    pub composition: Vec<BigUint>,
    /// `n_0 = 0, n_1, …, n_h = n`.
    pub sequence: Vec<BigUint>,
}

impl SheatsData {
    /// The Sheats i-composition `Sh^{(i)}(n)`, the i-composition of
    /// dominant weight.
    pub fn truncated(&self, i: usize) -> Result<Vec<BigUint>> {
        if i == 0 || i > self.h {
            return Err(Error::InvalidArgument(format!("truncation index {i} outside 1..={}", self.h)));
        }
        if i == self.h {
            return Ok(self.composition.clone());
        }
        let parts = composition_pd(&pdigits(&self.n, &self.cfg), i, &self.cfg)?;
        Ok(parts.iter().map(|x| from_pdigits(x, &self.cfg)).collect())
    }

    /// `(X_1, …, X_{i-1}, X_i + … + X_h)`. This can differ from
    /// [`SheatsData::truncated`] when `i < h`.
    pub fn coarsened(&self, i: usize) -> Result<Vec<BigUint>> {
        if i == 0 || i > self.h {
            return Err(Error::InvalidArgument(format!("truncation index {i} outside 1..={}", self.h)));
        }
        let mut out: Vec<BigUint> = self.composition[..i - 1].to_vec();
        out.push(&self.n - &self.sequence[i - 1]);
        Ok(out)
    }

    /// `^i n = n_{h-i}`.
    pub fn pre(&self, i: usize) -> Result<&BigUint> {
        if i > self.h {
            return Err(Error::InvalidArgument(format!("^{i}n needs i <= {}", self.h)));
        }
        Ok(&self.sequence[self.h - i])
    }

    /// The largest factor `X_h`.
    pub fn largest(&self) -> &BigUint {
        self.composition.last().expect("nonempty composition")
    }
}

/// Strictly increasing log critical radii `0 = r_0 < r_1 < …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    r: Vec<BigRational>,
}

impl WeightSystem {
    pub fn new(r: Vec<BigRational>) -> Result<Self> {
        if r.first().map_or(true, |r0| !r0.is_zero()) {
            return Err(Error::InvalidArgument("weights must start with r_0 = 0".into()));
        }
        if r.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("weights must be strictly increasing".into()));
        }
        Ok(WeightSystem { r })
    }

    /// `r_j = j` for `j < len`.
    pub fn natural(len: usize) -> Self {
        WeightSystem { r: (0..len.max(1)).map(|j| BigRational::from_integer(j.into())).collect() }
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn get(&self, j: usize) -> Result<&BigRational> {
        self.r.get(j).ok_or(Error::WeightsTooShort { needed: j, have: self.r.len() })
    }

    pub fn values(&self) -> &[BigRational] {
        &self.r
    }

    /// Whether every supplied `r_j` equals `j`.
    pub fn is_natural(&self) -> bool {
        self.r.iter().enumerate().all(|(j, r)| *r == BigRational::from_integer(j.into()))
    }
}

// Picks X_h from the p-digits of an integer of height h.
pub(crate) fn largest_factor_pd(pd: &[u32], h: u64, cfg: &Config) -> Result<Vec<u32>> {
    let f = cfg.f() as usize;
    let target = cfg.q_minus_1() as u128 * (h as u128 - 1);
    let mut rest = type_counts(pd, cfg);
    let mut m_counts = vec![0u64; f];
    let mut m = vec![0u32; pd.len()];
    for j in (0..pd.len()).rev() {
        for _ in 0..pd[j] {
            rest[j % f] -= 1;
            if indicator_of_counts(&rest, cfg) >= target {
                m_counts[j % f] += 1;
                m[j] += 1;
            } else {
                rest[j % f] += 1;
            }
            if indicator_of_counts(&m_counts, cfg) >= cfg.q_minus_1() as u128 {
                return Ok(m);
            }
        }
    }
    Err(Error::Internal("largest factor search exhausted the p-parts".into()))
}

fn check_input(n: &BigUint, cfg: &Config) -> Result<()> {
    if n.is_zero() || !(n % cfg.q_minus_1()).is_zero() {
        return Err(Error::InvalidArgument(format!("{n} is not a positive multiple of q-1")));
    }
    Ok(())
}

/// The largest Sheats factor `Sh(n) = X_h`.
pub fn largest_factor(n: &BigUint, cfg: &Config) -> Result<BigUint> {
    check_input(n, cfg)?;
    let pd = pdigits(n, cfg);
    let h = digits::height(n, cfg);
    Ok(from_pdigits(&largest_factor_pd(&pd, h, cfg)?, cfg))
}

// Largest m <_p n with I(n - m) >= (q-1)(level-1), by a greedy scan of the
// p-parts in decreasing order.
fn top_part_pd(pd: &[u32], level: u64, cfg: &Config) -> Vec<u32> {
    let f = cfg.f() as usize;
    let target = cfg.q_minus_1() as u128 * (level as u128 - 1);
    let mut rest = type_counts(pd, cfg);
    let mut m = vec![0u32; pd.len()];
    for j in (0..pd.len()).rev() {
        for _ in 0..pd[j] {
            rest[j % f] -= 1;
            if indicator_of_counts(&rest, cfg) >= target {
                m[j] += 1;
            } else {
                rest[j % f] += 1;
            }
        }
    }
    m
}

/// The Sheats i-composition from p-digits, top part first extracted.
pub(crate) fn composition_pd(pd: &[u32], i: usize, cfg: &Config) -> Result<Vec<Vec<u32>>> {
    let qm1 = cfg.q_minus_1() as u128;
    let mut cur = pd.to_vec();
    let mut parts = Vec::with_capacity(i);
    for level in (1..=i as u64).rev() {
        let ind = digits::indicator_pdigits(&cur, cfg).value;
        if ind < qm1 * level as u128 {
            return Err(Error::HeightTooSmall { actual: (ind / qm1) as u64, requested: level });
        }
        let x = if ind < qm1 * (level as u128 + 1) {
            largest_factor_pd(&cur, level, cfg)?
        } else {
            top_part_pd(&cur, level, cfg)
        };
        let xv = from_pdigits(&x, cfg);
        if xv.is_zero() || !(&xv % cfg.q_minus_1()).is_zero() {
            return Err(Error::Internal(format!("part {xv} of a {i}-composition is not a positive multiple of q-1")));
        }
        for (c, d) in cur.iter_mut().zip(&x) {
            *c -= d;
        }
        parts.push(x);
    }
    if cur.iter().any(|&d| d != 0) {
        return Err(Error::Internal("composition parts do not exhaust n".into()));
    }
    parts.reverse();
    Ok(parts)
}

pub(crate) fn sheats_pd(pd: &[u32], cfg: &Config) -> Result<Vec<Vec<u32>>> {
    let ind = digits::indicator_pdigits(pd, cfg);
    let h = (ind.value / cfg.q_minus_1() as u128) as usize;
    composition_pd(pd, h, cfg)
}

/// The Sheats i-composition of `n` for `1 <= i <= ht(n)`.
pub fn sheats_i(n: &BigUint, i: usize, cfg: &Config) -> Result<Vec<BigUint>> {
    check_input(n, cfg)?;
    if i == 0 {
        return Err(Error::InvalidArgument("need i >= 1".into()));
    }
    let parts = composition_pd(&pdigits(n, cfg), i, cfg)?;
    Ok(parts.iter().map(|x| from_pdigits(x, cfg)).collect())
}

/// Full Sheats composition by repeated extraction of the largest factor.
pub fn sheats(n: &BigUint, cfg: &Config) -> Result<SheatsData> {
    check_input(n, cfg)?;
    let parts = sheats_pd(&pdigits(n, cfg), cfg)?;
    let composition: Vec<BigUint> = parts.iter().map(|x| from_pdigits(x, cfg)).collect();
    let mut sequence = vec![BigUint::zero()];
    for x in &composition {
        let next = sequence.last().unwrap() + x;
        sequence.push(next);
    }
    Ok(SheatsData { cfg: *cfg, n: n.clone(), h: composition.len(), composition, sequence })
}

/// `wt_r(X) = Σ r_{j-1} X_j`.
pub fn weight(comp: &[BigUint], ws: &WeightSystem) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for (j, x) in comp.iter().enumerate() {
        acc += ws.get(j)? * BigRational::from_integer(x.clone().into());
    }
    Ok(acc)
}

/// `wt` for the weights `r_j = j`.
pub fn weight_n0(comp: &[BigUint]) -> BigUint {
    comp.iter().enumerate().map(|(j, x)| x * j).sum()
}

/// `ct^{(i)}(n) = i·n − wt(Sh^{(i)}(n))`.
pub fn coweight_i(n: &BigUint, i: usize, cfg: &Config) -> Result<BigUint> {
    if n.is_zero() {
        return if i == 0 { Ok(BigUint::zero()) } else { Err(Error::HeightTooSmall { actual: 0, requested: i as u64 }) };
    }
    if i == 0 {
        return Err(Error::InvalidArgument("ct^(0) is only defined at 0".into()));
    }
    let sh = sheats(n, cfg)?;
    coweight_of(&sh, i)
}

pub(crate) fn coweight_of(sh: &SheatsData, i: usize) -> Result<BigUint> {
    if i > sh.h {
        return Err(Error::HeightTooSmall { actual: sh.h as u64, requested: i as u64 });
    }
    Ok(&sh.n * i - weight_n0(&sh.truncated(i)?))
}

/// `ct(n) = ct^{(h)}(n)`.
pub fn coweight(n: &BigUint, cfg: &Config) -> Result<BigUint> {
    if n.is_zero() {
        return Ok(BigUint::zero());
    }
    let sh = sheats(n, cfg)?;
    coweight_of(&sh, sh.h)
}

/// `ct_i(n) = ct^{(i)}(n) − n`.
pub fn reduced_coweight(n: &BigUint, i: usize, cfg: &Config) -> Result<BigUint> {
    if i == 0 {
        return Err(Error::InvalidArgument("reduced coweight needs i >= 1".into()));
    }
    Ok(coweight_i(n, i, cfg)? - n)
}

/// Limit on the number of p-parts accepted by the exhaustive searches.
pub const BRUTE_MAX_PARTS: u64 = 16;

struct Brute<'a> {
    cfg: &'a Config,
    pw: Vec<u128>,
    ellw: Vec<u128>,
    best: Option<(u128, Vec<u128>)>,
    tie: bool,
}

impl Brute<'_> {
    fn value(&self, d: &[u32]) -> u128 {
        d.iter().zip(&self.pw).map(|(&a, &w)| a as u128 * w).sum()
    }

    fn ell(&self, d: &[u32]) -> u128 {
        d.iter().zip(&self.ellw).map(|(&a, &w)| a as u128 * w).sum()
    }

    // Assigns the block with label `label` (weight label-1), highest first.
    fn descend(&mut self, rest: &mut Vec<u32>, label: usize, wt: u128, chosen: &mut Vec<u128>) {
        let qm1 = self.cfg.q_minus_1() as u128;
        let total = self.value(rest);
        if label == 1 {
            if total == 0 || total % qm1 != 0 {
                return;
            }
            chosen.push(total);
            let comp: Vec<u128> = chosen.iter().rev().copied().collect();
            chosen.pop();
            match &self.best {
                Some((b, _)) if wt < *b => {}
                Some((b, _)) if wt == *b => self.tie = true,
                _ => {
                    self.best = Some((wt, comp));
                    self.tie = false;
                }
            }
            return;
        }
        let mut sub = vec![0u32; rest.len()];
        loop {
            // advance odometer
            let mut j = 0;
            while j < sub.len() {
                if sub[j] < rest[j] {
                    sub[j] += 1;
                    break;
                }
                sub[j] = 0;
                j += 1;
            }
            if j == sub.len() {
                return;
            }
            let x = self.value(&sub);
            if x % qm1 != 0 {
                continue;
            }
            let bound = wt + (label as u128 - 1) * x + (label as u128 - 2) * (total - x);
            if matches!(&self.best, Some((b, _)) if bound < *b) {
                continue;
            }
            for (r, s) in rest.iter_mut().zip(&sub) {
                *r -= s;
            }
            if self.ell(rest) >= qm1 * (label as u128 - 1) {
                chosen.push(x);
                self.descend(rest, label - 1, wt + (label as u128 - 1) * x, chosen);
                chosen.pop();
            }
            for (r, s) in rest.iter_mut().zip(&sub) {
                *r += s;
            }
        }
    }
}

fn brute_setup<'a>(n: &BigUint, cfg: &'a Config) -> Result<(Vec<u32>, Brute<'a>)> {
    let pd = pdigits(n, cfg);
    let parts: u64 = pd.iter().map(|&a| a as u64).sum();
    if parts > BRUTE_MAX_PARTS || n.bits() > 120 {
        return Err(Error::BudgetExceeded(format!("{n} has {parts} p-parts")));
    }
    let f = cfg.f() as usize;
    let p = cfg.p() as u128;
    let pw: Vec<u128> = (0..pd.len()).map(|j| p.pow(j as u32)).collect();
    let ellw: Vec<u128> = (0..pd.len()).map(|j| p.pow((j % f) as u32)).collect();
    Ok((pd, Brute { cfg, pw, ellw, best: None, tie: false }))
}

/// Exhaustive search for the `i`-composition of maximal `N_0`-weight.
pub fn brute_sheats(n: &BigUint, i: usize, cfg: &Config) -> Result<Vec<BigUint>> {
    if i == 0 {
        return Err(Error::InvalidArgument("need i >= 1".into()));
    }
    let (mut pd, mut b) = brute_setup(n, cfg)?;
    b.descend(&mut pd, i, 0, &mut Vec::new());
    if b.tie {
        return Err(Error::Internal(format!("tie between {i}-compositions of {n}")));
    }
    let (_, comp) = b.best.ok_or(Error::HeightTooSmall { actual: 0, requested: i as u64 })?;
    Ok(comp.into_iter().map(BigUint::from).collect())
}

/// Every `i`-composition of `n` into carry-free positive multiples of `q-1`.
pub fn all_compositions(n: &BigUint, i: usize, cfg: &Config) -> Result<Vec<Vec<BigUint>>> {
    let (pd, b) = brute_setup(n, cfg)?;
    let mut out = Vec::new();
    let qm1 = cfg.q_minus_1() as u128;
    fn rec(b: &Brute, rest: &mut Vec<u32>, left: usize, acc: &mut Vec<u128>, out: &mut Vec<Vec<BigUint>>, qm1: u128) {
        if left == 1 {
            let v = b.value(rest);
            if v > 0 && v % qm1 == 0 {
                acc.push(v);
                out.push(acc.iter().map(|&x| BigUint::from(x)).collect());
                acc.pop();
            }
            return;
        }
        let mut sub = vec![0u32; rest.len()];
        loop {
            let mut j = 0;
            while j < sub.len() {
                if sub[j] < rest[j] {
                    sub[j] += 1;
                    break;
                }
                sub[j] = 0;
                j += 1;
            }
            if j == sub.len() {
                return;
            }
            let x = b.value(&sub);
            if x % qm1 != 0 {
                continue;
            }
            for (r, s) in rest.iter_mut().zip(&sub) {
                *r -= s;
            }
            acc.push(x);
            rec(b, rest, left - 1, acc, out, qm1);
            acc.pop();
            for (r, s) in rest.iter_mut().zip(&sub) {
                *r += s;
            }
        }
    }
    if i >= 1 {
        rec(&b, &mut pd.clone(), i, &mut Vec::new(), &mut out, qm1);
    }
    Ok(out)
}

/// Largest number of terms accepted by [`power_sum`].
pub const POWER_SUM_BUDGET: u64 = 4096;

/// `S_{i,A}(n) = Σ_{deg a < i} a^n` by direct summation over `F_q[T]`.
pub fn power_sum(i: u32, n: u64, fq: &Fq) -> Result<FqPoly> {
    let q = fq.q();
    let terms = q.checked_pow(i).filter(|&t| t <= POWER_SUM_BUDGET);
    let Some(terms) = terms else {
        return Err(Error::BudgetExceeded(format!("q^{i} terms")));
    };
    let nd = pdigits(&BigUint::from(n), fq.config());
    let mut sum = FqPoly::zero();
    let mut coeffs = vec![0u32; i as usize];
    for code in 0..terms {
        let mut c = code;
        for x in coeffs.iter_mut() {
            *x = (c % q) as u32;
            c /= q;
        }
        let a = FqPoly::from_coeffs(coeffs.clone());
        let mut acc = FqPoly::one();
        for (j, &d) in nd.iter().enumerate() {
            if d > 0 {
                acc = acc.mul(&a.frobenius_p(j as u32, fq).pow(d as u64, fq), fq);
            }
        }
        sum.add_assign(&acc, fq);
    }
    Ok(sum)
}

/// Converts an exact rational to `f64` for display only.
pub fn approx(r: &BigRational) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    if r.is_negative() && n > 0.0 {
        -n / d
    } else {
        n / d
    }
}
