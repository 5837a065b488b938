//! Approximation numbers, regularity, vanishing orders and predicted zero
//! spectra of Goss polynomials.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::digits::{self, indicator_of_counts, pdigits, rel_prec, Base, Config, DigitSeq};
use crate::error::{Error, Result};
use crate::hull::lower_hull;
use crate::sheats::{composition_pd, coweight_of, sheats, weight_n0, WeightSystem};

/// The two shapes of the vanishing order formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    One,
    Two,
}

impl Case {
    pub fn number(self) -> u8 {
        match self {
            Case::One => 1,
            Case::Two => 2,
        }
    }
}

/// `M`, `H = ht(M)`, `R`, `s̄` and the split `R = R̄ + R̲`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseData {
    pub m: BigUint,
    pub h: u64,
    pub r: u64,
    pub s_bar: u32,
    pub r_under: u64,
    pub r_over: u64,
    pub case: Case,
}

/// Everything about a single `k` that does not depend on the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KProfile {
    pub cfg: Config,
    pub k: BigUint,
    /// `deg_q(k-1)`, with `deg_q(0) = 0`.
    pub alpha: usize,
    pub kappa: DigitSeq,
    pub r: u64,
    /// `μ_0, …, μ_{i_max}`.
    pub mu: Vec<BigUint>,
    pub regular_up_to: usize,
    pub is_regular: bool,
    pub m: BigUint,
    pub h: u64,
    pub s_bar: u32,
    pub r_under: u64,
    pub r_over: u64,
    pub case: Case,
    pub jbar: BigUint,
    pub gamma0: BigUint,
    pub gamma_k: BigUint,
    /// The closed-form value of `γ(k)` read off from `κ`.
    pub gamma_closed: BigUint,
    /// Whether `gamma_closed` equals the observed limit `gamma_k`.
    pub closed_form_holds: bool,
    /// Case 2 only: whether `μ_{H-1} ≺ μ_H` was observed.
    pub case2_chain_at_h: Option<bool>,
}

fn q_pow(cfg: &Config, e: usize) -> BigUint {
    BigUint::from(cfg.q()).pow(e as u32)
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn rat(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

fn check_k(k: &BigUint) -> Result<()> {
    if k.is_zero() {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    Ok(())
}

fn alpha_of(k: &BigUint, cfg: &Config) -> usize {
    digits::expand(&(k - 1u32), Base::Q, cfg).digits().len().saturating_sub(1)
}

/// The q-digits of `κ = -k`, stored explicitly up to index `max(α, upto)`.
pub fn kappa_digits(k: &BigUint, upto: usize, cfg: &Config) -> Result<DigitSeq> {
    check_k(k)?;
    let km1 = digits::expand(&(k - 1u32), Base::Q, cfg);
    let alpha = alpha_of(k, cfg);
    let qm1 = cfg.q_minus_1();
    let d: Vec<u64> = (0..=alpha.max(upto)).map(|j| qm1 - km1.digit(j)).collect();
    DigitSeq::new(Base::Q, cfg, d, Some(qm1))
}

// p-digit `j` of κ.
fn kappa_pdigit(kappa: &DigitSeq, j: usize, cfg: &Config) -> u32 {
    let f = cfg.f() as usize;
    ((kappa.digit(j / f) / cfg.p_pow((j % f) as u32)) % cfg.p() as u64) as u32
}

fn below_kappa(pd: &[u32], kappa: &DigitSeq, cfg: &Config) -> bool {
    pd.iter().enumerate().all(|(j, &a)| a <= kappa_pdigit(kappa, j, cfg))
}

/// Conditions (a)–(c): `n ≡ 0 (q-1)`, `n <_p κ`, `ht(n) >= i`.
pub fn is_admissible(n: &BigUint, i: usize, kappa: &DigitSeq, cfg: &Config) -> bool {
    if !(n % cfg.q_minus_1()).is_zero() {
        return false;
    }
    let pd = pdigits(n, cfg);
    below_kappa(&pd, kappa, cfg) && digits::indicator_pdigits(&pd, cfg).value >= (cfg.q_minus_1() as u128) * i as u128
}

// Greedy construction of the least i-admissible integer.
fn mu_from_kappa(kappa: &DigitSeq, i: usize, cfg: &Config) -> Result<BigUint> {
    if i == 0 {
        return Ok(BigUint::zero());
    }
    let f = cfg.f() as usize;
    let target = cfg.q_minus_1() as u128 * i as u128;
    let mut parts: Vec<usize> = Vec::new();
    let mut counts = vec![0u64; f];
    let mut m: Vec<u32> = Vec::new();
    let mut j = 0usize;
    'seed: loop {
        let a = kappa_pdigit(kappa, j, cfg);
        m.push(0);
        for _ in 0..a {
            parts.push(j);
            counts[j % f] += 1;
            m[j] += 1;
            if indicator_of_counts(&counts, cfg) >= target {
                break 'seed;
            }
        }
        j += 1;
    }
    let mut nu = parts.len();
    loop {
        if indicator_of_counts(&counts, cfg) == target {
            return Ok(digits::from_pdigits(&m, cfg));
        }
        if nu <= 1 {
            return Err(Error::Internal(format!("removal for μ_{i} ran out of parts")));
        }
        nu -= 1;
        let pos = parts[nu - 1];
        counts[pos % f] -= 1;
        if indicator_of_counts(&counts, cfg) >= target {
            m[pos] -= 1;
        } else {
            counts[pos % f] += 1;
        }
    }
}

/// `μ_i(k)`, the least i-admissible integer.
pub fn mu(k: &BigUint, i: usize, cfg: &Config) -> Result<BigUint> {
    mu_from_kappa(&kappa_digits(k, 0, cfg)?, i, cfg)
}

/// Default search bound of [`mu_brute`].
pub const MU_BRUTE_BOUND: u64 = 1 << 20;

/// `μ_i(k)` by scanning the multiples of `q-1` up to `bound`.
pub fn mu_brute(k: &BigUint, i: usize, bound: u64, cfg: &Config) -> Result<BigUint> {
    let kappa = kappa_digits(k, 0, cfg)?;
    let mut n = 0u64;
    while n <= bound {
        let b = big(n);
        if is_admissible(&b, i, &kappa, cfg) {
            return Ok(b);
        }
        n += cfg.q_minus_1();
    }
    Err(Error::BudgetExceeded(format!("μ_{i} exceeds {bound}")))
}

/// `M`, `H`, `R`, `s̄`, `R̲`, `R̄` and the case tag.
pub fn case_classify(k: &BigUint, cfg: &Config) -> Result<CaseData> {
    check_k(k)?;
    let alpha = alpha_of(k, cfg);
    let kappa = kappa_digits(k, 0, cfg)?;
    let qm1 = cfg.q_minus_1();
    let r = ((k - 1u32) % qm1).to_u64().unwrap();
    let low = digits::from_radix(&kappa.truncated(alpha + 1), cfg.q());
    let m = low + big(r) * q_pow(cfg, alpha + 1);
    let ind = digits::indicator(&m, cfg);
    let h = (ind.value / qm1 as u128) as u64;
    let s_bar = ind.s_bar().0;
    let ps = cfg.p_pow(s_bar);
    let r_under = r % ps;
    let r_over = r - r_under;
    let case = if s_bar == 0 || r_under == ps - 1 || r_over == 0 { Case::One } else { Case::Two };
    Ok(CaseData { m, h, r, s_bar, r_under, r_over, case })
}

/// `γ(k)` from the closed formulas of the two cases.
pub fn gamma_closed(k: &BigUint, cd: &CaseData, cfg: &Config) -> Result<BigUint> {
    let alpha = alpha_of(k, cfg) as i64;
    let q = cfg.q();
    let (coef, e) = match cd.case {
        Case::One => (big(cd.r + 1), alpha - cd.h as i64 + 1),
        Case::Two => (big(cd.r_over + q * (cd.r_under + 1)), alpha - cd.h as i64),
    };
    if e >= 0 {
        return Ok(coef * q_pow(cfg, e as usize));
    }
    let d = q_pow(cfg, (-e) as usize);
    if !(&coef % &d).is_zero() {
        return Err(Error::Internal(format!("γ({k}) is not integral")));
    }
    Ok(coef / d)
}

/// Largest `j` with `binom(k-1-j(q-1), j) ≢ 0 (mod p)`, by exhaustive search.
pub fn jbar_brute(k: u64, cfg: &Config) -> u64 {
    assert!(k >= 1);
    let n = k - 1;
    let q = cfg.q();
    (0..=n / q)
        .rev()
        .find(|&j| digits::binom_mod_p(n - j * (q - 1), j, cfg.p()) != 0)
        .unwrap_or(0)
}

/// Largest `j` with `j` and `k-1-qj` adding without p-carry, by a digit
/// automaton over `(borrow, last f digits of j)`.
pub fn jbar(k: &BigUint, cfg: &Config) -> Result<BigUint> {
    check_k(k)?;
    let nd = pdigits(&(k - 1u32), cfg);
    let len = nd.len();
    let f = cfg.f() as usize;
    if len <= f {
        return Ok(BigUint::zero());
    }
    let p = cfg.p() as usize;
    let q = cfg.q() as usize;
    let top = cfg.p_pow(cfg.f() - 1) as usize;
    let state = |borrow: usize, w: usize| borrow * q + w;
    // One step at position m from (borrow, window) choosing digit b.
    let step = |m: usize, borrow: usize, w: usize, b: usize| -> Option<(usize, usize)> {
        let oldest = if m >= f { w % p } else { 0 };
        let mut u = nd[m] as i64 - oldest as i64 - borrow as i64;
        let mut out_borrow = 0;
        if u < 0 {
            u += p as i64;
            out_borrow = 1;
        }
        if b + u as usize > p - 1 {
            return None;
        }
        Some((out_borrow, w / p + b * top))
    };
    let max_digit = |m: usize| if m + f < len { p - 1 } else { 0 };
    let mut reach = vec![vec![false; 2 * q]; len + 1];
    reach[0][state(0, 0)] = true;
    for m in 0..len {
        for s in 0..2 * q {
            if !reach[m][s] {
                continue;
            }
            let (borrow, w) = (s / q, s % q);
            for b in 0..=max_digit(m) {
                if let Some((nb, nw)) = step(m, borrow, w, b) {
                    reach[m + 1][state(nb, nw)] = true;
                }
            }
        }
    }
    if !reach[len][state(0, 0)] {
        return Err(Error::Internal("j = 0 is not reachable".into()));
    }
    let mut jd = vec![0u32; len];
    let mut frontier = vec![state(0, 0)];
    for m in (0..len).rev() {
        let mut best: Option<usize> = None;
        let mut preds: Vec<(usize, usize)> = Vec::new();
        for &s in &frontier {
            let (nb, nw) = (s / q, s % q);
            let b = nw / top;
            let rest = (nw % top) * p;
            let oldest_range = if m >= f { 0..p } else { 0..1 };
            for oldest in oldest_range {
                let w = rest + oldest;
                for borrow in 0..2 {
                    if !reach[m][state(borrow, w)] || step(m, borrow, w, b) != Some((nb, nw)) {
                        continue;
                    }
                    if best.map_or(true, |x| oldest > x) {
                        best = Some(oldest);
                        preds.clear();
                    }
                    if best == Some(oldest) {
                        preds.push((borrow, w));
                    }
                }
            }
        }
        let best = best.ok_or_else(|| Error::Internal("broken automaton path".into()))?;
        if m >= f {
            jd[m - f] = best as u32;
        }
        preds.sort_unstable();
        preds.dedup();
        frontier = preds.into_iter().map(|(b, w)| state(b, w)).collect();
    }
    Ok(digits::from_pdigits(&jd, cfg))
}

/// `j̄` and `γ_0 = j̄(q-1)`.
pub fn jbar_gamma0(k: &BigUint, cfg: &Config) -> Result<(BigUint, BigUint)> {
    let j = jbar(k, cfg)?;
    let g = &j * cfg.q_minus_1();
    Ok((j, g))
}

impl KProfile {
    pub fn new(k: &BigUint, cfg: &Config) -> Result<Self> {
        Self::with_max_i(k, 0, cfg)
    }

    /// Computes `μ_i` at least up to `max_i` (and always up to `H + 3`).
    pub fn with_max_i(k: &BigUint, max_i: usize, cfg: &Config) -> Result<Self> {
        check_k(k)?;
        let cd = case_classify(k, cfg)?;
        let alpha = alpha_of(k, cfg);
        let i_max = max_i.max(cd.h as usize + 3);
        let kappa = kappa_digits(k, 0, cfg)?;
        let mu = (0..=i_max).map(|i| mu_from_kappa(&kappa, i, cfg)).collect::<Result<Vec<_>>>()?;
        let (regular_up_to, is_regular) = regularity(&mu, cd.h, cd.case, cfg);
        let (jbar, gamma0) = jbar_gamma0(k, cfg)?;
        let qk = k * cfg.q_minus_1();
        if qk < mu[1] || gamma0 != (&qk - &mu[1]) / cfg.q() {
            return Err(Error::Internal(format!("γ_0({k}) disagrees with μ_1")));
        }
        let start = cd.h as usize + if cd.case == Case::One { 0 } else { 1 };
        let mut limits = Vec::with_capacity(2);
        for i in [start, start + 1] {
            let num = k + &mu[i];
            let d = q_pow(cfg, i);
            if !(&num % &d).is_zero() {
                return Err(Error::Internal(format!("q^{i} does not divide k + μ_{i} for k = {k}")));
            }
            limits.push(num / d);
        }
        if limits[0] != limits[1] {
            return Err(Error::Internal(format!("(k + μ_i)/q^i has not stabilised at i = {start} for k = {k}")));
        }
        let gamma_k = limits.pop().unwrap();
        let gamma_closed = gamma_closed(k, &cd, cfg)?;
        let closed_form_holds = gamma_closed == gamma_k;
        let case2_chain_at_h = match cd.case {
            Case::Two if cd.h >= 1 => {
                let h = cd.h as usize;
                Some(rel_prec(&mu[h - 1], &mu[h], cfg))
            }
            _ => None,
        };
        Ok(KProfile {
            cfg: *cfg,
            k: k.clone(),
            alpha,
            kappa,
            r: cd.r,
            mu,
            regular_up_to,
            is_regular,
            m: cd.m,
            h: cd.h,
            s_bar: cd.s_bar,
            r_under: cd.r_under,
            r_over: cd.r_over,
            case: cd.case,
            jbar,
            gamma0,
            gamma_k,
            gamma_closed,
            closed_form_holds,
            case2_chain_at_h,
        })
    }

    pub fn case_data(&self) -> CaseData {
        CaseData {
            m: self.m.clone(),
            h: self.h,
            r: self.r,
            s_bar: self.s_bar,
            r_under: self.r_under,
            r_over: self.r_over,
            case: self.case,
        }
    }

    /// `μ_i`, computed on demand past the stored range.
    pub fn mu_at(&self, i: usize) -> Result<BigUint> {
        match self.mu.get(i) {
            Some(m) => Ok(m.clone()),
            None => mu_from_kappa(&self.kappa, i, &self.cfg),
        }
    }

    /// Last band that can carry zeros: `H-1` in Case 1, `H` in Case 2.
    pub fn cutoff(&self) -> Option<usize> {
        match self.case {
            Case::One => (self.h as usize).checked_sub(1),
            Case::Two => Some(self.h as usize),
        }
    }

    pub fn is_admissible(&self, n: &BigUint, i: usize) -> bool {
        is_admissible(n, i, &self.kappa, &self.cfg)
    }
}

fn regularity(mu: &[BigUint], h: u64, case: Case, cfg: &Config) -> (usize, bool) {
    let mut up_to = if mu.len() > 1 { 1 } else { 0 };
    while up_to >= 1 && up_to + 1 < mu.len() && rel_prec(&mu[up_to], &mu[up_to + 1], cfg) {
        up_to += 1;
    }
    let need = match case {
        Case::One => h as i64 - 1,
        Case::Two => h as i64,
    };
    (up_to, up_to as i64 >= need)
}

/// `(regular_up_to, is_regular)` of a profile.
pub fn regularity_of(profile: &KProfile) -> (usize, bool) {
    regularity(&profile.mu, profile.h, profile.case, &profile.cfg)
}

/// `γ^{(j)} = ((q-1)k + qμ_j − μ_{j+1}) / q^{j+1}`.
pub fn gamma_band(profile: &KProfile, j: usize) -> Result<BigUint> {
    let cfg = &profile.cfg;
    let num = &profile.k * cfg.q_minus_1() + profile.mu_at(j)? * cfg.q();
    let next = profile.mu_at(j + 1)?;
    let d = q_pow(cfg, j + 1);
    if num < next || !((&num - &next) % &d).is_zero() {
        return Err(Error::Internal(format!("γ^({j}) is not a non-negative integer")));
    }
    Ok((num - next) / d)
}

/// The vanishing order `γ(k)` of `G_{k,A}`.
pub fn gamma_vanishing(profile: &KProfile) -> BigUint {
    profile.gamma_k.clone()
}

/// `M^{(i)} = κ mod q^{α+1} + (q-1)(q^{α+1} + … + q^{α+i}) + R q^{α+i+1}`.
pub fn m_shifted(profile: &KProfile, i: usize) -> BigUint {
    let cfg = &profile.cfg;
    let a = profile.alpha;
    let low = digits::from_radix(&profile.kappa.truncated(a + 1), cfg.q());
    let mid = (q_pow(cfg, i) - 1u32) * q_pow(cfg, a + 1);
    low + mid + big(profile.r) * q_pow(cfg, a + i + 1)
}

/// Closed form of `Sh(M^{(i)})`; needs `i >= 1` in Case 1 and `i >= 2` in Case 2.
pub fn sheats_of_m_shifted(profile: &KProfile, i: usize) -> Result<BigUint> {
    let cfg = &profile.cfg;
    let q = cfg.q();
    let a = profile.alpha;
    let r = profile.r;
    match profile.case {
        Case::One if i >= 1 => Ok(big(q - 1 - r) * q_pow(cfg, a + i) + big(r) * q_pow(cfg, a + i + 1)),
        Case::Two if i >= 2 => Ok(big(q - profile.r_over) * q_pow(cfg, a + i - 1)
            + big(q - 2 - profile.r_under) * q_pow(cfg, a + i)
            + big(r) * q_pow(cfg, a + i + 1)),
        _ => Err(Error::InvalidArgument(format!("no closed form for i = {i} in Case {}", profile.case.number()))),
    }
}

/// Irregular zeros in band `i` of `G_{k,A}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrregularBand {
    pub i: usize,
    pub gamma_bound: BigUint,
    /// `θ(0) > θ(1) > … > θ(t) = μ_{i+1}`.
    pub thetas: Vec<BigUint>,
    /// `ρ_1 < … < ρ_t`.
    pub rhos: Vec<BigRational>,
    pub counts: Vec<BigUint>,
    /// Elements of `Θ(k,i)` visited, ascending, up to `θ(0)`.
    pub visited: Vec<(BigUint, BigUint)>,
}

impl IrregularBand {
    pub fn is_empty(&self) -> bool {
        self.rhos.is_empty()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

/// Node limit for the `Θ(k,i)` search.
pub const THETA_BUDGET: u64 = 50_000_000;

struct ThetaSearch<'a> {
    cfg: &'a Config,
    i: usize,
    /// q-digits of Γ.
    bound: Vec<u64>,
    /// Allowed q-digits per position (submasks of κ_j), ascending.
    choices: Vec<Vec<u64>>,
    /// Low q-digits forced to κ's.
    forced: Vec<u64>,
    nodes: u64,
}

impl ThetaSearch<'_> {
    fn new<'a>(profile: &'a KProfile, i: usize, gamma: &BigUint) -> ThetaSearch<'a> {
        let cfg = &profile.cfg;
        let q = cfg.q();
        let p = cfg.p() as u64;
        let bound = digits::expand(gamma, Base::Q, cfg).digits().to_vec();
        let submasks = |d: u64| -> Vec<u64> {
            (0..q)
                .filter(|&x| {
                    let (mut a, mut b) = (x, d);
                    while a > 0 {
                        if a % p > b % p {
                            return false;
                        }
                        a /= p;
                        b /= p;
                    }
                    true
                })
                .collect()
        };
        let choices = (0..bound.len().max(i + 1)).map(|j| submasks(profile.kappa.digit(j))).collect();
        let forced = profile.kappa.truncated(i + 1);
        ThetaSearch { cfg, i, bound, choices, forced, nodes: 0 }
    }

    // Visits admissible θ in ascending order; `visit` returns false to stop.
    fn run(&mut self, visit: &mut dyn FnMut(BigUint, &[u32]) -> Result<bool>) -> Result<()> {
        let len = self.bound.len().max(self.i + 1);
        let mut digits = vec![0u64; len];
        digits[..=self.i].copy_from_slice(&self.forced);
        self.descend(len, &mut digits, true, visit).map(|_| ())
    }

    fn descend(
        &mut self,
        pos: usize,
        digits: &mut Vec<u64>,
        tight: bool,
        visit: &mut dyn FnMut(BigUint, &[u32]) -> Result<bool>,
    ) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > THETA_BUDGET {
            return Err(Error::BudgetExceeded("Θ(k,i) search".into()));
        }
        let cfg = self.cfg;
        if pos == self.i + 1 {
            let theta = digits::from_radix(digits, cfg.q());
            if tight {
                let g = digits::from_radix(&self.bound, cfg.q());
                if theta > g {
                    return Ok(true);
                }
            }
            let qm1 = cfg.q_minus_1();
            let s: u64 = digits.iter().map(|d| d % qm1).sum();
            if s % qm1 != 0 {
                return Ok(true);
            }
            let pd = pdigits(&theta, cfg);
            if digits::indicator_pdigits(&pd, cfg).value < qm1 as u128 * (self.i as u128 + 1) {
                return Ok(true);
            }
            return visit(theta, &pd);
        }
        let j = pos - 1;
        let limit = if tight { self.bound.get(j).copied().unwrap_or(0) } else { u64::MAX };
        let opts = self.choices[j].clone();
        for d in opts {
            if d > limit {
                break;
            }
            digits[j] = d;
            if !self.descend(pos - 1, digits, tight && d == limit, visit)? {
                digits[j] = 0;
                return Ok(false);
            }
        }
        digits[j] = 0;
        Ok(true)
    }
}

/// `Γ(k,i) = (k − Σ_{j<i} γ^{(j)}) q^{i+1} − k`.
pub fn gamma_bound(profile: &KProfile, i: usize) -> Result<BigUint> {
    let mut rest = profile.k.clone();
    for j in 0..i {
        rest -= gamma_band(profile, j)?;
    }
    let v = rest * q_pow(&profile.cfg, i + 1);
    if v < profile.k {
        return Err(Error::Internal("negative Γ(k,i)".into()));
    }
    Ok(v - &profile.k)
}

fn ct_next(theta_pd: &[u32], i: usize, cfg: &Config) -> Result<BigUint> {
    let parts = composition_pd(theta_pd, i + 1, cfg)?;
    let comp: Vec<BigUint> = parts.iter().map(|x| digits::from_pdigits(x, cfg)).collect();
    let n: BigUint = comp.iter().sum();
    Ok(&n * i - weight_n0(&comp))
}

/// `ct_{i+1}(θ)`, the reduced `(i+1)`-th coweight.
pub fn reduced_ct(theta: &BigUint, i: usize, cfg: &Config) -> Result<BigUint> {
    ct_next(&pdigits(theta, cfg), i, cfg)
}

/// Every element of `Θ(k,i)` in ascending order.
pub fn theta_set(profile: &KProfile, i: usize) -> Result<Vec<BigUint>> {
    let gamma = gamma_bound(profile, i)?;
    let mut out = Vec::new();
    ThetaSearch::new(profile, i, &gamma).run(&mut |t, _| {
        out.push(t);
        Ok(true)
    })?;
    Ok(out)
}

fn lower_bound_ct(profile: &KProfile, i: usize) -> Result<BigUint> {
    let mi = profile.mu_at(i)?;
    if i == 0 {
        return Ok(BigUint::zero());
    }
    let sh = sheats(&mi, &profile.cfg)?;
    coweight_of(&sh, sh.h)
}

/// Irregular radii in band `i` from the lower hull of `(θ, ct_{i+1}(θ))`.
pub fn irregular_band(profile: &KProfile, i: usize) -> Result<IrregularBand> {
    let cfg = &profile.cfg;
    let gamma = gamma_bound(profile, i)?;
    let lb = lower_bound_ct(profile, i)?;
    let mut visited: Vec<(BigUint, BigUint)> = Vec::new();
    let mut reached = false;
    ThetaSearch::new(profile, i, &gamma).run(&mut |t, pd| {
        let c = ct_next(pd, i, cfg)?;
        if c < lb {
            return Err(Error::Internal(format!("ct_{}({t}) falls below ct(μ_{i})", i + 1)));
        }
        let stop = c == lb;
        visited.push((t, c));
        reached = stop;
        Ok(!stop)
    })?;
    let mu_next = profile.mu_at(i + 1)?;
    if visited.first().map(|v| &v.0) != Some(&mu_next) {
        return Err(Error::Internal(format!("least element of Θ(k,{i}) is not μ_{}", i + 1)));
    }
    if !reached {
        // θ(0) is the least minimiser over the whole set.
        let min = visited.iter().map(|v| v.1.clone()).min().unwrap();
        let pos = visited.iter().position(|v| v.1 == min).unwrap();
        visited.truncate(pos + 1);
    }
    let pts: Vec<(BigInt, BigInt)> = visited.iter().map(|(t, c)| (t.clone().into(), c.clone().into())).collect();
    let hull = lower_hull(&pts);
    let mut thetas: Vec<BigUint> = hull.iter().rev().map(|&h| visited[h].0.clone()).collect();
    let cts: Vec<BigUint> = hull.iter().rev().map(|&h| visited[h].1.clone()).collect();
    let qi = q_pow(cfg, i + 1);
    let mut rhos = Vec::new();
    let mut counts = Vec::new();
    for s in 1..thetas.len() {
        let run = &thetas[s - 1] - &thetas[s];
        let rise = BigInt::from(cts[s - 1].clone()) - BigInt::from(cts[s].clone());
        let slope = BigRational::new(rise, BigInt::from(run.clone()));
        let rho = BigRational::from_integer(i.into()) - slope;
        if rho <= BigRational::from_integer(i.into()) || rho >= BigRational::from_integer((i + 1).into()) {
            return Err(Error::Internal(format!("ρ = {rho} outside band {i}")));
        }
        if !(&run % &qi).is_zero() {
            return Err(Error::Internal("irregular zero count is not integral".into()));
        }
        rhos.push(rho);
        counts.push(run / &qi);
    }
    if thetas.is_empty() {
        thetas.push(mu_next);
    }
    Ok(IrregularBand { i, gamma_bound: gamma, thetas, rhos, counts, visited })
}

/// The map `L` from log-radii of zeros of `C_k` to log-absolute values of
/// zeros of `G_k`.
pub fn l_map(t: &BigRational, ws: &WeightSystem, cfg: &Config) -> Result<BigRational> {
    if *t < BigRational::zero() {
        return Err(Error::InvalidArgument("L is defined for t >= 0".into()));
    }
    let i = t.floor().to_integer().to_usize().ok_or_else(|| Error::InvalidArgument("t too large".into()))?;
    let a = t - BigRational::from_integer(i.into());
    let q = BigRational::from_integer(cfg.q().into());
    let qm1 = BigRational::from_integer(cfg.q_minus_1().into());
    let mut acc = BigRational::zero();
    let mut pw = BigRational::one();
    let mut pows = Vec::with_capacity(i + 2);
    for _ in 0..=i + 1 {
        pows.push(pw.clone());
        pw *= &q;
    }
    if a.is_zero() {
        for (j, pj) in pows.iter().enumerate().take(i) {
            acc += ws.get(j)? * pj;
        }
        return Ok(acc * qm1 - ws.get(i)? * &pows[i]);
    }
    for (j, pj) in pows.iter().enumerate().take(i + 1) {
        acc += ws.get(j)? * pj;
    }
    let tp = ws.get(i)? * (BigRational::one() - &a) + ws.get(i + 1)? * &a;
    Ok(acc * qm1 - tp * &pows[i + 1])
}

/// One radius of the predicted spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub band: usize,
    pub log_radius: BigRational,
    /// `L(log_radius)`, the log-absolute value of the matching zeros of `G_k`.
    pub log_abs_g: BigRational,
    pub zero_count_ck: BigUint,
    pub zero_count_gk: BigUint,
    pub irregular: bool,
}

/// Predicted zeros of `C_{k,Λ}` and `G_{k,Λ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroSpectrum {
    pub weight_system: WeightSystem,
    pub entries: Vec<SpectrumEntry>,
    /// Vertices of the Newton polygon of `G_k`, by increasing abscissa.
    pub newton_breaks: Vec<(BigRational, BigRational)>,
    /// Band totals `γ^{(0)}, γ^{(1)}, …`.
    pub gamma_list: Vec<BigUint>,
    pub gamma_k: BigUint,
    pub irregular: Vec<IrregularBand>,
    /// Case 2 only: whether band `H` carries zeros.
    pub top_band_attained: Option<bool>,
}

/// Predicted spectrum; irregular bands are only available for `r_j = j`.
pub fn predict_spectrum(profile: &KProfile, ws: &WeightSystem) -> Result<ZeroSpectrum> {
    let cfg = &profile.cfg;
    let natural = ws.is_natural();
    if !natural && !profile.is_regular {
        return Err(Error::Scope(format!("k = {} is irregular; only r_j = j is supported", profile.k)));
    }
    let bands = profile.cutoff().map_or(0, |c| c + 1);
    if ws.len() < bands {
        return Err(Error::WeightsTooShort { needed: bands - 1, have: ws.len() });
    }
    let mut entries = Vec::new();
    let mut gamma_list = Vec::new();
    let mut irregular = Vec::new();
    for i in 0..bands {
        let total = gamma_band(profile, i)?;
        let qi = q_pow(cfg, i + 1);
        let band = if natural { Some(irregular_band(profile, i)?) } else { None };
        let irr_total = band.as_ref().map_or(BigUint::zero(), |b| b.total());
        if irr_total > total {
            return Err(Error::Internal(format!("irregular zeros exceed γ^({i})")));
        }
        let regular = &total - &irr_total;
        if !regular.is_zero() {
            let r = ws.get(i)?.clone();
            entries.push(SpectrumEntry {
                band: i,
                log_abs_g: l_map(&BigRational::from_integer(i.into()), ws, cfg)?,
                log_radius: r,
                zero_count_ck: &regular * &qi,
                zero_count_gk: regular,
                irregular: false,
            });
        }
        if let Some(b) = band {
            for (rho, c) in b.rhos.iter().zip(&b.counts) {
                entries.push(SpectrumEntry {
                    band: i,
                    log_radius: rho.clone(),
                    log_abs_g: l_map(rho, ws, cfg)?,
                    zero_count_ck: c * &qi,
                    zero_count_gk: c.clone(),
                    irregular: true,
                });
            }
            if !b.is_empty() {
                irregular.push(b);
            }
        }
        gamma_list.push(total);
    }
    let sum: BigUint = gamma_list.iter().sum();
    if &profile.k < &sum || &profile.k - &sum != profile.gamma_k {
        return Err(Error::Internal(format!("band totals of k = {} do not close with γ(k)", profile.k)));
    }
    let mut x = rat(&profile.k);
    let mut y = BigRational::zero();
    let mut newton_breaks = vec![(x.clone(), y.clone())];
    for e in &entries {
        let c = rat(&e.zero_count_gk);
        x -= &c;
        y -= &e.log_abs_g * &c;
        newton_breaks.push((x.clone(), y.clone()));
    }
    newton_breaks.reverse();
    // Merge consecutive runs of equal slope so that only vertices remain.
    let mut merged: Vec<(BigRational, BigRational)> = Vec::new();
    for pt in newton_breaks {
        while merged.len() >= 2 {
            let (a, b) = (&merged[merged.len() - 2], &merged[merged.len() - 1]);
            let s1 = (&b.1 - &a.1) / (&b.0 - &a.0);
            let s2 = (&pt.1 - &b.1) / (&pt.0 - &b.0);
            if s1 == s2 {
                merged.pop();
            } else {
                break;
            }
        }
        merged.push(pt);
    }
    let top_band_attained = match profile.case {
        Case::Two => Some(entries.iter().any(|e| e.band == profile.h as usize)),
        Case::One => None,
    };
    Ok(ZeroSpectrum {
        weight_system: ws.clone(),
        entries,
        newton_breaks: merged,
        gamma_list,
        gamma_k: profile.gamma_k.clone(),
        irregular,
        top_band_attained,
    })
}

/// Predicted spectrum for `Λ = A`.
pub fn predict_spectrum_a(profile: &KProfile) -> Result<ZeroSpectrum> {
    let len = profile.cutoff().map_or(1, |c| c + 2);
    predict_spectrum(profile, &WeightSystem::natural(len))
}
