//! Serializable reports for each subcommand.

use std::fmt::Write as _;

use goss_core::algebra::{BandCheck, Segment, VerifyReport};
use goss_core::sheats::{coweight_i, weight_n0};
use goss_core::spectrum::gamma_band;
use goss_core::{BigRational, BigUint, Config, IrregularBand, KProfile, Result, SheatsData, ZeroSpectrum};
use serde::{Deserialize, Serialize};

use crate::json::{ints, Int, Rat};

pub const SCHEMA: &str = "1";

fn schema() -> String {
    SCHEMA.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Field {
    pub q: u64,
    pub p: u32,
    pub f: u32,
}

impl From<&Config> for Field {
    fn from(c: &Config) -> Self {
        Field { q: c.q(), p: c.p(), f: c.f() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub schema: String,
    pub field: Field,
    pub k: Int,
    pub alpha: usize,
    /// Base-q digits of `κ = -k` up to the stored length.
    pub kappa: Vec<u64>,
    /// The digit repeated forever after `kappa`.
    pub kappa_tail: Option<u64>,
    pub r: u64,
    pub mu: Vec<Int>,
    pub regular_up_to: usize,
    pub is_regular: bool,
    pub m: Int,
    pub h: u64,
    pub s_bar: u32,
    pub r_under: u64,
    pub r_over: u64,
    pub case: u8,
    pub jbar: Int,
    pub gamma0: Int,
    pub gamma_k: Int,
    pub gamma_closed: Int,
    pub closed_form_holds: bool,
    pub case2_chain_at_h: Option<bool>,
    /// `γ^{(i)}` for every band up to the cutoff.
    pub gamma_bands: Vec<Int>,
}

impl ProfileReport {
    pub fn new(p: &KProfile) -> Result<Self> {
        let bands = p.cutoff().map_or(0, |c| c + 1);
        let gamma_bands = (0..bands).map(|i| gamma_band(p, i).map(Int::from)).collect::<Result<_>>()?;
        Ok(ProfileReport {
            schema: schema(),
            field: (&p.cfg).into(),
            k: (&p.k).into(),
            alpha: p.alpha,
            kappa: p.kappa.digits().to_vec(),
            kappa_tail: p.kappa.tail(),
            r: p.r,
            mu: ints(&p.mu),
            regular_up_to: p.regular_up_to,
            is_regular: p.is_regular,
            m: (&p.m).into(),
            h: p.h,
            s_bar: p.s_bar,
            r_under: p.r_under,
            r_over: p.r_over,
            case: p.case.number(),
            jbar: (&p.jbar).into(),
            gamma0: (&p.gamma0).into(),
            gamma_k: (&p.gamma_k).into(),
            gamma_closed: (&p.gamma_closed).into(),
            closed_form_holds: p.closed_form_holds,
            case2_chain_at_h: p.case2_chain_at_h,
            gamma_bands,
        })
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "q           {}", self.field.q);
        let _ = writeln!(s, "k           {}", self.k);
        let _ = writeln!(s, "alpha       {}", self.alpha);
        let _ = writeln!(s, "R           {}", self.r);
        let _ = writeln!(s, "M           {}", self.m);
        let _ = writeln!(s, "H           {}", self.h);
        let _ = writeln!(s, "s_bar       {}", self.s_bar);
        let _ = writeln!(s, "R_under     {}", self.r_under);
        let _ = writeln!(s, "R_over      {}", self.r_over);
        let _ = writeln!(s, "case        {}", self.case);
        let _ = writeln!(s, "mu          {}", join(&self.mu));
        let _ = writeln!(s, "regular     {} (chain up to {})", self.is_regular, self.regular_up_to);
        let _ = writeln!(s, "gamma_0     {}", self.gamma0);
        let _ = writeln!(s, "gamma_bands {}", join(&self.gamma_bands));
        let _ = writeln!(s, "gamma_k     {}", self.gamma_k);
        if !self.closed_form_holds {
            let _ = writeln!(s, "closed form {} (does not match)", self.gamma_closed);
        }
        s
    }
}

fn join<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheatsReport {
    pub schema: String,
    pub field: Field,
    pub n: Int,
    pub h: usize,
    pub composition: Vec<Int>,
    pub sequence: Vec<Int>,
    /// `wt(Sh^{(i)}(n))` for `i = 1..=h` with `r_j = j`.
    pub weights: Vec<Int>,
    /// `ct^{(i)}(n)` for `i = 1..=h`.
    pub coweights: Vec<Int>,
}

impl SheatsReport {
    pub fn new(sh: &SheatsData) -> Result<Self> {
        let mut weights = Vec::with_capacity(sh.h);
        let mut coweights = Vec::with_capacity(sh.h);
        for i in 1..=sh.h {
            weights.push(weight_n0(&sh.truncated(i)?).into());
            coweights.push(coweight_i(&sh.n, i, &sh.cfg)?.into());
        }
        Ok(SheatsReport {
            schema: schema(),
            field: (&sh.cfg).into(),
            n: (&sh.n).into(),
            h: sh.h,
            composition: ints(&sh.composition),
            sequence: ints(&sh.sequence),
            weights,
            coweights,
        })
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n  {}  (height {})", self.n, self.h);
        let _ = writeln!(s, "{:>3}  {:>20}  {:>20}  {:>20}  {:>20}", "i", "X_i", "n_i", "wt", "ct");
        for i in 0..self.h {
            let _ = writeln!(
                s,
                "{:>3}  {:>20}  {:>20}  {:>20}  {:>20}",
                i + 1,
                self.composition[i].to_string(),
                self.sequence.get(i + 1).map_or(String::new(), |x| x.to_string()),
                self.weights[i].to_string(),
                self.coweights[i].to_string()
            );
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuReport {
    pub schema: String,
    pub field: Field,
    pub k: Int,
    pub mu: Vec<Int>,
}

impl MuReport {
    pub fn new(p: &KProfile, max_i: Option<usize>) -> Result<Self> {
        let mu = match max_i {
            Some(m) => (0..=m).map(|i| p.mu_at(i).map(Int::from)).collect::<Result<_>>()?,
            None => ints(&p.mu),
        };
        Ok(MuReport { schema: schema(), field: (&p.cfg).into(), k: (&p.k).into(), mu })
    }

    pub fn text(&self) -> String {
        self.mu.iter().enumerate().map(|(i, m)| format!("mu_{i} {m}\n")).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryOut {
    pub band: usize,
    pub log_radius: Rat,
    pub log_abs_g: Rat,
    pub zero_count_ck: Int,
    pub zero_count_gk: Int,
    pub irregular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandOut {
    pub i: usize,
    pub gamma_bound: Int,
    pub thetas: Vec<Int>,
    pub rhos: Vec<Rat>,
    pub counts: Vec<Int>,
}

impl From<&IrregularBand> for BandOut {
    fn from(b: &IrregularBand) -> Self {
        BandOut {
            i: b.i,
            gamma_bound: (&b.gamma_bound).into(),
            thetas: ints(&b.thetas),
            rhos: b.rhos.iter().map(Rat::from).collect(),
            counts: ints(&b.counts),
        }
    }
}

fn point(p: &(BigRational, BigRational)) -> [Rat; 2] {
    [(&p.0).into(), (&p.1).into()]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub schema: String,
    pub field: Field,
    pub k: Int,
    pub weight_system: Vec<Rat>,
    pub entries: Vec<EntryOut>,
    pub newton_breaks: Vec<[Rat; 2]>,
    pub gamma_list: Vec<Int>,
    pub gamma_k: Int,
    pub irregular: Vec<BandOut>,
    pub top_band_attained: Option<bool>,
}

impl SpectrumReport {
    pub fn new(p: &KProfile, s: &ZeroSpectrum) -> Self {
        SpectrumReport {
            schema: schema(),
            field: (&p.cfg).into(),
            k: (&p.k).into(),
            weight_system: s.weight_system.values().iter().map(Rat::from).collect(),
            entries: s
                .entries
                .iter()
                .map(|e| EntryOut {
                    band: e.band,
                    log_radius: (&e.log_radius).into(),
                    log_abs_g: (&e.log_abs_g).into(),
                    zero_count_ck: (&e.zero_count_ck).into(),
                    zero_count_gk: (&e.zero_count_gk).into(),
                    irregular: e.irregular,
                })
                .collect(),
            newton_breaks: s.newton_breaks.iter().map(point).collect(),
            gamma_list: ints(&s.gamma_list),
            gamma_k: (&s.gamma_k).into(),
            irregular: s.irregular.iter().map(BandOut::from).collect(),
            top_band_attained: s.top_band_attained,
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "k {}  gamma_k {}", self.k, self.gamma_k);
        let _ = writeln!(s, "{:>4}  {:>12}  {:>12}  {:>12}  {:>12}  irregular", "band", "log z", "log x", "C_k zeros", "G_k zeros");
        for e in &self.entries {
            let _ = writeln!(
                s,
                "{:>4}  {:>12}  {:>12}  {:>12}  {:>12}  {}",
                e.band,
                e.log_radius.to_string(),
                e.log_abs_g.to_string(),
                e.zero_count_ck.to_string(),
                e.zero_count_gk.to_string(),
                if e.irregular { "yes" } else { "" }
            );
        }
        let breaks: Vec<String> = self.newton_breaks.iter().map(|[x, y]| format!("({x}, {y})")).collect();
        let _ = writeln!(s, "breaks {}", breaks.join(" "));
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentOut {
    pub log_abs: Rat,
    pub count: u64,
}

impl From<&Segment> for SegmentOut {
    fn from(s: &Segment) -> Self {
        SegmentOut { log_abs: (&s.log_abs).into(), count: s.count }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandCheckOut {
    pub band: usize,
    pub expected: Vec<SegmentOut>,
    pub observed: Vec<SegmentOut>,
    pub matches: bool,
}

impl From<&BandCheck> for BandCheckOut {
    fn from(b: &BandCheck) -> Self {
        BandCheckOut {
            band: b.band,
            expected: b.expected.iter().map(SegmentOut::from).collect(),
            observed: b.observed.iter().map(SegmentOut::from).collect(),
            matches: b.matches,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOut {
    pub schema: String,
    pub field: Field,
    pub k: u64,
    pub t: usize,
    pub passed: bool,
    pub first_mismatch: Option<String>,
    pub bands: Vec<BandCheckOut>,
    pub expected_vanishing: u64,
    pub observed_vanishing: u64,
    pub gamma_a: Int,
    pub expected_breaks: Vec<[Rat; 2]>,
    pub observed_breaks: Vec<[Rat; 2]>,
    pub reduction_ok: bool,
}

impl VerifyOut {
    pub fn new(cfg: &Config, r: &VerifyReport) -> Self {
        VerifyOut {
            schema: schema(),
            field: cfg.into(),
            k: r.k,
            t: r.t,
            passed: r.passed,
            first_mismatch: r.first_mismatch.clone(),
            bands: r.bands.iter().map(BandCheckOut::from).collect(),
            expected_vanishing: r.expected_vanishing,
            observed_vanishing: r.observed_vanishing,
            gamma_a: (&r.gamma_a).into(),
            expected_breaks: r.expected_breaks.iter().map(point).collect(),
            observed_breaks: r.observed_breaks.iter().map(point).collect(),
            reduction_ok: r.reduction_ok,
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{verdict} k = {} over A_{}", self.k, self.t + 1);
        for b in &self.bands {
            let fmt = |v: &[SegmentOut]| v.iter().map(|x| format!("{}x{}", x.count, x.log_abs)).collect::<Vec<_>>().join(" ");
            let _ = writeln!(
                s,
                "band {}  expected [{}]  observed [{}]{}",
                b.band,
                fmt(&b.expected),
                fmt(&b.observed),
                if b.matches { "" } else { "  MISMATCH" }
            );
        }
        let _ = writeln!(s, "vanishing order expected {} observed {}", self.expected_vanishing, self.observed_vanishing);
        if let Some(m) = &self.first_mismatch {
            let _ = writeln!(s, "first mismatch: {m}");
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub k: u64,
    pub regular: bool,
    pub case: u8,
    pub h: u64,
    pub gamma_k: Int,
    pub irregular_rhos: Vec<Rat>,
    pub timing_us: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema: String,
    pub field: Field,
    pub from: u64,
    pub to: u64,
    pub skip_p_multiples: bool,
    pub records: Vec<ScanRecord>,
}

impl ScanReport {
    pub fn new(cfg: &Config, from: u64, to: u64, skip_p_multiples: bool, records: Vec<ScanRecord>) -> Self {
        ScanReport { schema: schema(), field: cfg.into(), from, to, skip_p_multiples, records }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:>10}  {:>7}  {:>4}  {:>4}  {:>12}  {:>10}  irregular rho", "k", "regular", "case", "H", "gamma_k", "us");
        for r in &self.records {
            let _ = writeln!(
                s,
                "{:>10}  {:>7}  {:>4}  {:>4}  {:>12}  {:>10}  {}",
                r.k,
                r.regular,
                r.case,
                r.h,
                r.gamma_k.to_string(),
                r.timing_us,
                join(&r.irregular_rhos)
            );
        }
        s
    }
}

/// Radii of the irregular zeros of `G_{k,A}`, empty when `k` is regular.
pub fn irregular_rhos(p: &KProfile) -> Result<Vec<BigRational>> {
    if p.is_regular {
        return Ok(Vec::new());
    }
    let s = goss_core::spectrum::predict_spectrum_a(p)?;
    Ok(s.irregular.iter().flat_map(|b| b.rhos.iter().cloned()).collect())
}

pub fn scan_record(k: u64, cfg: &Config) -> Result<ScanRecord> {
    let t0 = std::time::Instant::now();
    let p = KProfile::new(&BigUint::from(k), cfg)?;
    let rhos = irregular_rhos(&p)?;
    Ok(ScanRecord {
        k,
        regular: p.is_regular,
        case: p.case.number(),
        h: p.h,
        gamma_k: (&p.gamma_k).into(),
        irregular_rhos: rhos.iter().map(Rat::from).collect(),
        timing_us: t0.elapsed().as_micros() as u64,
    })
}
