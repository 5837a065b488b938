//! Base-p and base-q digit calculus.
//!
//! Throughout, `q = p^f`. A p-digit at position `j` has *type* `j mod f`.
//! The shift `σ_s` moves the p-digit at block position `i` of every q-digit
//! to block position `(i - s) mod f`.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The characteristic `p`, the degree `f` and `q = p^f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Config {
    p: u32,
    f: u32,
    q: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Config {
    /// Largest supported `q`.
    pub const MAX_Q: u64 = 1 << 32;

    pub fn new(p: u32, f: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidConfig(format!("p = {p} is not prime")));
        }
        if f == 0 {
            return Err(Error::InvalidConfig("f must be positive".into()));
        }
        let q = (p as u64)
            .checked_pow(f)
            .filter(|&q| q <= Self::MAX_Q)
            .ok_or_else(|| Error::InvalidConfig(format!("{p}^{f} is too large")))?;
        Ok(Config { p, f, q })
    }

    /// Builds the configuration from a prime power `q`.
    pub fn from_q(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidConfig(format!("q = {q} is not a prime power")));
        }
        let mut p = 2u64;
        while p * p <= q && q % p != 0 {
            p += 1;
        }
        if q % p != 0 {
            p = q;
        }
        let mut rest = q;
        let mut f = 0;
        while rest % p == 0 {
            rest /= p;
            f += 1;
        }
        if rest != 1 {
            return Err(Error::InvalidConfig(format!("q = {q} is not a prime power")));
        }
        Config::new(p as u32, f)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn q_minus_1(&self) -> u64 {
        self.q - 1
    }

    /// `p^i` for `0 <= i <= f`.
    pub fn p_pow(&self, i: u32) -> u64 {
        (self.p as u64).pow(i)
    }

    /// The shifts `σ_0, …, σ_{f-1}`.
    pub fn shifts(&self) -> impl Iterator<Item = CyclicShift> {
        (0..self.f).map(CyclicShift)
    }
}

/// Which radix a [`DigitSeq`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    P,
    Q,
}

/// Little-endian digit expansion, optionally followed by an infinite run
/// of the digit `radix - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitSeq {
    base: Base,
    radix: u64,
    digits: Vec<u64>,
    tail: Option<u64>,
}

impl DigitSeq {
    /// Builds a sequence; trailing zeros of a finite sequence are stripped.
    pub fn new(base: Base, cfg: &Config, mut digits: Vec<u64>, tail: Option<u64>) -> Result<Self> {
        let radix = match base {
            Base::P => cfg.p() as u64,
            Base::Q => cfg.q(),
        };
        if let Some(d) = digits.iter().find(|&&d| d >= radix) {
            return Err(Error::InvalidArgument(format!("digit {d} out of range for radix {radix}")));
        }
        if let Some(t) = tail {
            if t != radix - 1 {
                return Err(Error::InvalidArgument(format!("tail digit must be {}", radix - 1)));
            }
        } else {
            while digits.last() == Some(&0) {
                digits.pop();
            }
        }
        Ok(DigitSeq { base, radix, digits, tail })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn radix(&self) -> u64 {
        self.radix
    }

    /// The explicitly stored digits.
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn tail(&self) -> Option<u64> {
        self.tail
    }

    /// Digit at position `j`, reading into the tail if needed.
    pub fn digit(&self, j: usize) -> u64 {
        match self.digits.get(j) {
            Some(&d) => d,
            None => self.tail.unwrap_or(0),
        }
    }

    /// The first `len` digits, padding from the tail.
    pub fn truncated(&self, len: usize) -> Vec<u64> {
        (0..len).map(|j| self.digit(j)).collect()
    }

    /// Value of a finite sequence; `None` when a tail is present.
    pub fn value(&self) -> Option<BigUint> {
        if self.tail.is_some() {
            return None;
        }
        Some(from_radix(&self.digits, self.radix))
    }
}

/// The shift `σ_s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicShift(pub u32);

impl CyclicShift {
    pub fn identity() -> Self {
        CyclicShift(0)
    }

    pub fn compose(self, other: CyclicShift, cfg: &Config) -> CyclicShift {
        CyclicShift((self.0 + other.0) % cfg.f())
    }

    pub fn inverse(self, cfg: &Config) -> CyclicShift {
        CyclicShift((cfg.f() - self.0 % cfg.f()) % cfg.f())
    }
}

pub(crate) fn to_radix(n: &BigUint, radix: u64) -> Vec<u64> {
    if n.is_zero() {
        return Vec::new();
    }
    if radix <= 256 {
        return n.to_radix_le(radix as u32).into_iter().map(u64::from).collect();
    }
    if let Some(mut v) = n.to_u128() {
        let mut out = Vec::new();
        while v > 0 {
            out.push((v % radix as u128) as u64);
            v /= radix as u128;
        }
        return out;
    }
    let mut out = Vec::new();
    let mut v = n.clone();
    while !v.is_zero() {
        out.push((&v % radix).to_u64().unwrap());
        v /= radix;
    }
    out
}

pub(crate) fn from_radix(digits: &[u64], radix: u64) -> BigUint {
    let mut acc = BigUint::zero();
    for &d in digits.iter().rev() {
        acc = acc * radix + d;
    }
    acc
}

/// p-digits of `n`, little-endian.
pub(crate) fn pdigits(n: &BigUint, cfg: &Config) -> Vec<u32> {
    to_radix(n, cfg.p() as u64).into_iter().map(|d| d as u32).collect()
}

pub(crate) fn from_pdigits(d: &[u32], cfg: &Config) -> BigUint {
    let mut acc = BigUint::zero();
    for &x in d.iter().rev() {
        acc = acc * cfg.p() + x;
    }
    acc
}

/// `ℓ_i` for every type `i`, read off p-digits.
pub(crate) fn type_counts(pd: &[u32], cfg: &Config) -> Vec<u64> {
    let f = cfg.f() as usize;
    let mut c = vec![0u64; f];
    for (j, &a) in pd.iter().enumerate() {
        c[j % f] += a as u64;
    }
    c
}

/// `Σ_i c_{(i+s) mod f} p^i`, i.e. `ℓ^{σ_s}` from type counts.
pub(crate) fn twisted_sum(counts: &[u64], s: u32, cfg: &Config) -> u128 {
    let f = cfg.f() as usize;
    let mut acc = 0u128;
    let mut pw = 1u128;
    for i in 0..f {
        acc += counts[(i + s as usize) % f] as u128 * pw;
        pw *= cfg.p() as u128;
    }
    acc
}

pub(crate) fn indicator_of_counts(counts: &[u64], cfg: &Config) -> u128 {
    (0..cfg.f()).map(|s| twisted_sum(counts, s, cfg)).min().unwrap()
}

/// Expansion of `n` to base p or q.
pub fn expand(n: &BigUint, base: Base, cfg: &Config) -> DigitSeq {
    let radix = match base {
        Base::P => cfg.p() as u64,
        Base::Q => cfg.q(),
    };
    DigitSeq { base, radix, digits: to_radix(n, radix), tail: None }
}

/// Number of p-parts of type `i`.
pub fn ell_i(n: &BigUint, i: u32, cfg: &Config) -> u64 {
    assert!(i < cfg.f(), "type index out of range");
    type_counts(&pdigits(n, cfg), cfg)[i as usize]
}

/// The q-adic digit sum.
pub fn ell(n: &BigUint, cfg: &Config) -> u128 {
    twisted_sum(&type_counts(&pdigits(n, cfg), cfg), 0, cfg)
}

/// `ℓ^{(i)}(n) = Σ_{j<i} ℓ_j(n) p^j` for `1 <= i <= f`.
pub fn ell_partial(n: &BigUint, i: u32, cfg: &Config) -> u128 {
    assert!(i >= 1 && i <= cfg.f(), "partial index out of range");
    let c = type_counts(&pdigits(n, cfg), cfg);
    let mut acc = 0u128;
    let mut pw = 1u128;
    for &cj in c.iter().take(i as usize) {
        acc += cj as u128 * pw;
        pw *= cfg.p() as u128;
    }
    acc
}

pub(crate) fn sigma_pdigits(pd: &[u32], s: CyclicShift, cfg: &Config) -> Vec<u32> {
    let f = cfg.f() as usize;
    let s = s.0 as usize % f;
    let blocks = pd.len().div_ceil(f);
    let mut out = vec![0u32; blocks * f];
    for (j, &a) in pd.iter().enumerate() {
        let (b, i) = (j / f, j % f);
        out[b * f + (i + f - s) % f] = a;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// The true action `n ↦ n^σ` on the canonical expansion.
pub fn sigma_act(n: &BigUint, s: CyclicShift, cfg: &Config) -> BigUint {
    from_pdigits(&sigma_pdigits(&pdigits(n, cfg), s, cfg), cfg)
}

/// The action on a finite p- or q-digit sequence.
pub fn sigma_act_seq(x: &DigitSeq, s: CyclicShift, cfg: &Config) -> Result<DigitSeq> {
    let v = x
        .value()
        .ok_or_else(|| Error::InvalidArgument("cannot act on a tailed sequence".into()))?;
    Ok(expand(&sigma_act(&v, s, cfg), x.base(), cfg))
}

/// The twisted digit sum `ℓ^σ(n) = ℓ(n^σ)`.
pub fn ell_sigma(n: &BigUint, s: CyclicShift, cfg: &Config) -> u128 {
    twisted_sum(&type_counts(&pdigits(n, cfg), cfg), s.0 % cfg.f(), cfg)
}

/// Value of the indicator function together with the shifts attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indicator {
    pub value: u128,
    pub critical: Vec<CyclicShift>,
}

impl Indicator {
    /// The minimal critical shift.
    pub fn s_bar(&self) -> CyclicShift {
        self.critical[0]
    }
}

pub(crate) fn indicator_pdigits(pd: &[u32], cfg: &Config) -> Indicator {
    let counts = type_counts(pd, cfg);
    let vals: Vec<u128> = (0..cfg.f()).map(|s| twisted_sum(&counts, s, cfg)).collect();
    let value = *vals.iter().min().unwrap();
    let critical = (0..cfg.f())
        .filter(|&s| vals[s as usize] == value)
        .map(CyclicShift)
        .collect();
    Indicator { value, critical }
}

/// `I(n) = min_σ ℓ^σ(n)` and its critical shifts.
pub fn indicator(n: &BigUint, cfg: &Config) -> Indicator {
    indicator_pdigits(&pdigits(n, cfg), cfg)
}

/// `ht(n) = ⌊I(n)/(q-1)⌋`.
pub fn height(n: &BigUint, cfg: &Config) -> u64 {
    (indicator(n, cfg).value / cfg.q_minus_1() as u128) as u64
}

/// A chain `0 ≺ n_1 ≺ … ≺ n_H <=_p n` with `ℓ(n_j^σ) = (q-1) j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainWitness {
    pub shift: CyclicShift,
    pub chain: Vec<BigUint>,
}

/// Builds a chain of length `h` below `n` by repeatedly picking p-parts
/// type by type, topping up a missing type from the smallest unused parts
/// of the lower types.
pub fn chain_witness(n: &BigUint, h: u64, cfg: &Config) -> Result<ChainWitness> {
    let pd = pdigits(n, cfg);
    let ind = indicator_pdigits(&pd, cfg);
    let actual = (ind.value / cfg.q_minus_1() as u128) as u64;
    if actual < h {
        return Err(Error::HeightTooSmall { actual, requested: h });
    }
    let shift = ind.s_bar();
    let f = cfg.f() as usize;
    let p = cfg.p() as u64;
    let mut rest = sigma_pdigits(&pd, shift, cfg);
    let mut acc = vec![0u32; rest.len()];
    let mut chain = Vec::with_capacity(h as usize);
    for _ in 0..h {
        let mut picked = vec![0u32; rest.len()];
        let avail = type_counts(&rest, cfg);
        let mut used = vec![0u64; f];
        for i in 0..f {
            let take = avail[i].min(p - 1);
            pick_smallest(&rest, &mut picked, i, take, cfg);
            used[i] += take;
            let mut want = (p - 1 - take) * cfg.p_pow(i as u32);
            for j in (0..i).rev() {
                let unit = cfg.p_pow(j as u32);
                let c = (avail[j] - used[j]).min(want / unit);
                pick_smallest(&rest, &mut picked, j, c, cfg);
                used[j] += c;
                want -= c * unit;
            }
            if want != 0 {
                return Err(Error::Internal("chain compensation ran out of p-parts".into()));
            }
        }
        for (j, &x) in picked.iter().enumerate() {
            rest[j] -= x;
            acc[j] += x;
        }
        let inv = shift.inverse(cfg);
        chain.push(from_pdigits(&sigma_pdigits(&acc, inv, cfg), cfg));
    }
    Ok(ChainWitness { shift, chain })
}

// Adds `count` more of the smallest not yet picked parts of type `ty`.
fn pick_smallest(rest: &[u32], picked: &mut [u32], ty: usize, mut count: u64, cfg: &Config) {
    let f = cfg.f() as usize;
    let mut j = ty;
    while count > 0 && j < rest.len() {
        let free = (rest[j] - picked[j]) as u64;
        let c = free.min(count);
        picked[j] += c as u32;
        count -= c;
        j += f;
    }
}

/// Digitwise domination in base p.
pub fn rel_p(a: &BigUint, b: &BigUint, cfg: &Config) -> bool {
    let (da, db) = (pdigits(a, cfg), pdigits(b, cfg));
    da.len() <= db.len() && da.iter().zip(&db).all(|(x, y)| x <= y)
}

/// `a ≺ b`: `a <_p b` and `a ≡ b (mod q-1)`.
pub fn rel_prec(a: &BigUint, b: &BigUint, cfg: &Config) -> bool {
    let m = cfg.q_minus_1();
    rel_p(a, b, cfg) && (a % m) == (b % m)
}

/// Carry-free sum of `parts`.
pub fn smooth_add(parts: &[BigUint], cfg: &Config) -> Result<BigUint> {
    let mut acc: Vec<u64> = Vec::new();
    for x in parts {
        let d = pdigits(x, cfg);
        if d.len() > acc.len() {
            acc.resize(d.len(), 0);
        }
        for (j, &a) in d.iter().enumerate() {
            acc[j] += a as u64;
            if acc[j] >= cfg.p() as u64 {
                return Err(Error::Carry { position: j });
            }
        }
    }
    Ok(from_radix(&acc, cfg.p() as u64))
}

fn digitwise(a: &BigUint, b: &BigUint, cfg: &Config, op: fn(u32, u32) -> u32) -> BigUint {
    let (mut da, mut db) = (pdigits(a, cfg), pdigits(b, cfg));
    let len = da.len().max(db.len());
    da.resize(len, 0);
    db.resize(len, 0);
    let out: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| op(x, y)).collect();
    from_pdigits(&out, cfg)
}

/// Digitwise maximum in base p.
pub fn sup_p(a: &BigUint, b: &BigUint, cfg: &Config) -> BigUint {
    digitwise(a, b, cfg, u32::max)
}

/// Digitwise minimum in base p.
pub fn inf_p(a: &BigUint, b: &BigUint, cfg: &Config) -> BigUint {
    digitwise(a, b, cfg, u32::min)
}

/// `binom(n, m) mod p` by Lucas' theorem.
pub fn binom_mod_p(mut n: u64, mut m: u64, p: u32) -> u32 {
    let p = p as u64;
    let mut acc = 1u64;
    while m > 0 {
        let (a, b) = (n % p, m % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for t in 0..b {
            c = c * ((a - t) % p) % p;
        }
        for t in 1..=b {
            c = c * modpow(t % p, p - 2, p) % p;
        }
        acc = acc * c % p;
        n /= p;
        m /= p;
    }
    acc as u32
}

fn modpow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}
